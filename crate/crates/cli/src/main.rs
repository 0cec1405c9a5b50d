mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qk_core::{
    count_closed_form, count_recursive, parse_field_spec, prime_power, quadric_transport, transport_all,
    verify_homogeneous, verify_projective_space, verify_similitude_orbit, CountReport, Error, Field,
    FieldDescriptor, FieldKind, GroupContext, Guards, SpinFactor,
};

use output::{render, Format, Report};

#[derive(Parser, Debug)]
#[command(name = "qk", version, about = "Point counts, group actions and transport on split quadrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, env = "QK_JOBS")]
    jobs: Option<usize>,
    /// Ignore the size guards on exhaustive computations.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long)]
    n: u32,
    /// Field: a prime `p`, `p^k`, or `Q` for the rationals.
    #[arg(long, required_unless_present = "q", conflicts_with = "q")]
    field: Option<String>,
    /// Field size only; counts use formulas without enumeration.
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyKind {
    Homogeneous,
    Spin,
    Similitude,
    Recursion,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of points of Q_2n.
    Count(Target),
    /// Run one verification and exit 1 if it fails.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        #[command(flatten)]
        target: Target,
    },
    /// A reflection word in SO_{2n+1} carrying the base point to a point.
    Transport {
        #[command(flatten)]
        target: Target,
        /// Comma-separated ambient coordinates of length 2n+2.
        #[arg(long, required_unless_present = "all", conflicts_with = "all", allow_hyphen_values = true)]
        point: Option<String>,
        /// Every point of Q_2n(F_q).
        #[arg(long)]
        all: bool,
        /// Entry bound for candidate vectors over the rationals.
        #[arg(long, default_value_t = 5)]
        height: u32,
    },
}

/// Exit 2: the request cannot be run as given. Exit 1: it ran and a check
/// failed.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. }
            | Error::NonPrimeCharacteristic(_)
            | Error::UnsupportedSize { .. }
            | Error::NoModulusAvailable { .. }
            | Error::ReducibleModulus { .. }
            | Error::InvalidPrimePower(_)
            | Error::InvalidRank { .. }
            | Error::DimensionMismatch { .. }
            | Error::InfiniteField
            | Error::WrongShape(_) => Failure::Usage(msg),
            Error::TooLarge(_) => Failure::Usage(format!("{msg} (use --force to run anyway)")),
            _ => Failure::Check(msg),
        }
    }
}

/// The requested field. `--q` stays symbolic; it is realized as a concrete
/// field only when a command needs one.
enum FieldArg {
    Concrete(FieldDescriptor),
    Symbolic(u64),
}

fn field_arg(t: &Target) -> Result<FieldArg, Failure> {
    if let Some(q) = t.q {
        return prime_power(q)
            .map(|_| FieldArg::Symbolic(q))
            .ok_or(Failure::Usage(format!("{q} is not a prime power")));
    }
    let spec = t.field.as_deref().expect("clap requires --field or --q");
    // a bare prime power such as `4` is accepted for `2^2`
    if let Ok(q) = spec.trim().parse::<u64>() {
        if let Some((p, k)) = prime_power(q) {
            if k > 1 {
                return Ok(FieldArg::Concrete(FieldDescriptor::create(FieldKind::Extension, p as u32, k)?));
            }
        }
    }
    Ok(FieldArg::Concrete(parse_field_spec(spec)?))
}

fn concrete(t: &Target) -> Result<FieldDescriptor, Failure> {
    match field_arg(t)? {
        FieldArg::Concrete(f) => Ok(f),
        FieldArg::Symbolic(q) => {
            let (p, k) = prime_power(q).expect("checked");
            let kind = if k == 1 { FieldKind::Prime } else { FieldKind::Extension };
            Ok(FieldDescriptor::create(kind, p as u32, k)?)
        }
    }
}

fn finite(t: &Target) -> Result<qk_core::FiniteField, Failure> {
    match concrete(t)? {
        FieldDescriptor::Finite(f) => Ok(f),
        FieldDescriptor::Rational(_) => Err(Failure::Usage("this command needs a finite field".into())),
    }
}

fn group_rank(t: &Target) -> Result<usize, Failure> {
    if t.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    Ok(t.n as usize)
}

fn cmd_count(t: &Target, guards: &Guards) -> Result<Report, Failure> {
    let report = match field_arg(t)? {
        FieldArg::Symbolic(q) => serde_json::to_value(CountReport::symbolic(t.n, q)?).expect("serializable"),
        FieldArg::Concrete(FieldDescriptor::Rational(_)) => {
            return Err(Failure::Usage("point counts need a finite field".into()))
        }
        FieldArg::Concrete(FieldDescriptor::Finite(f)) => match CountReport::enumerated(&f, t.n, guards) {
            Ok(r) => serde_json::to_value(r).expect("serializable"),
            Err(Error::TooLarge(why)) => {
                let mut r = CountReport::symbolic(t.n, f.cardinality().expect("finite"))?;
                r.field = f.label();
                let mut v = serde_json::to_value(r).expect("serializable");
                v["note"] = json!(format!("not enumerated: {why}"));
                v
            }
            Err(e) => return Err(e.into()),
        },
    };
    let pass = report["match"] == json!(true);
    Ok(Report::single(report, pass, &[]))
}

fn cmd_recursion(t: &Target) -> Result<Report, Failure> {
    let q = match field_arg(t)? {
        FieldArg::Symbolic(q) => q,
        FieldArg::Concrete(f) => f
            .cardinality()
            .ok_or(Failure::Usage("the recursion needs a finite field size".into()))?,
    };
    let mut witnesses = Vec::new();
    for m in 0..=t.n {
        let (c, r) = (count_closed_form(m, q)?, count_recursive(m, q)?);
        if c != r {
            witnesses.push(format!("n={m}: closed form {c}, recursion {r}"));
        }
    }
    let closed = count_closed_form(t.n, q)?;
    let rec = count_recursive(t.n, q)?;
    let json = json!({
        "check": "recursion",
        "n": t.n,
        "q": q,
        "closed_form": qk_core::Count(closed),
        "recursive": qk_core::Count(rec),
        "checked": t.n + 1,
        "pass": witnesses.is_empty(),
        "witnesses": witnesses,
    });
    let pass = witnesses.is_empty();
    Ok(Report::single(json, pass, &[]))
}

fn cmd_verify(kind: VerifyKind, t: &Target, guards: &Guards) -> Result<Report, Failure> {
    if let VerifyKind::Recursion = kind {
        return cmd_recursion(t);
    }
    let f = finite(t)?;
    let json = match kind {
        VerifyKind::Homogeneous => serde_json::to_value(verify_homogeneous(&f, group_rank(t)?, guards)?),
        VerifyKind::Spin => serde_json::to_value(verify_projective_space(&SpinFactor::new(f, t.n as usize), guards)?),
        VerifyKind::Similitude => serde_json::to_value(verify_similitude_orbit(&f, t.n as usize, guards)?),
        VerifyKind::Recursion => unreachable!("handled above"),
    }
    .expect("serializable");
    let pass = json["pass"] == json!(true);
    Ok(Report::single(json, pass, &[]))
}

fn transport_point<F: Field>(f: F, t: &Target, point: &str, guards: &Guards, height: u32) -> Result<Report, Failure> {
    let ctx = GroupContext::new(f.clone(), group_rank(t)?)?;
    let coords = point
        .split(',')
        .map(|s| f.parse(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let p = ctx.quadric().point(coords)?;
    let cert = quadric_transport(&ctx, &p, guards, height)?;
    let mut json = json!({ "n": t.n, "field": f.label() });
    if let (Value::Object(m), Value::Object(c)) = (&mut json, cert.to_json(&f)) {
        m.extend(c);
    }
    Ok(Report::single(json, cert.verified, &[]))
}

fn transport_every_point<F: Field>(f: F, t: &Target, guards: &Guards, height: u32) -> Result<Report, Failure> {
    let ctx = GroupContext::new(f.clone(), group_rank(t)?)?;
    let summary = transport_all(&ctx, guards, height)?;
    let certs: Vec<Value> = summary.certificates.iter().map(|c| c.to_json(&f)).collect();
    let mut json = summary.to_json();
    json["certificates"] = Value::Array(certs.clone());
    Ok(Report {
        pass: summary.all_verified(),
        json,
        rows: certs,
    })
}

fn cmd_transport(t: &Target, point: Option<&str>, all: bool, guards: &Guards, height: u32) -> Result<Report, Failure> {
    let field = concrete(t)?;
    match (field, point) {
        (FieldDescriptor::Finite(f), Some(p)) => transport_point(f, t, p, guards, height),
        (FieldDescriptor::Rational(f), Some(p)) => transport_point(f, t, p, guards, height),
        (FieldDescriptor::Finite(f), None) if all => transport_every_point(f, t, guards, height),
        (FieldDescriptor::Rational(_), None) => Err(Failure::Usage("--all needs a finite field".into())),
        _ => Err(Failure::Usage("give --point or --all".into())),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let guards = Guards {
        force: cli.force,
        ..Guards::default()
    };
    match &cli.command {
        Command::Count(t) => cmd_count(t, &guards),
        Command::Verify { kind, target } => cmd_verify(*kind, target, &guards),
        Command::Transport {
            target,
            point,
            all,
            height,
        } => cmd_transport(target, point.as_deref(), *all, &guards, *height),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let bytes = match render(&report, cli.format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &bytes),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
