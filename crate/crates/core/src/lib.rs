//! Exact computations on the split quadric `Q_2n : sum x_i y_i = z(1 - z)`
//! over finite fields and the rationals: split quadratic forms, reflections
//! and the Dickson invariant, point counts, the transitive action of
//! `SO_{2n+1}` with stabilizer `SO_2n`, constructive transport by reflection
//! words, and the spin-factor description of the quadric.
//!
//! Everything is generic over a [`Field`] context; the aliases below fix the
//! two carriers shipped with the crate.

pub mod action;
pub mod algebra;
pub mod error;
pub mod guard;
pub mod linalg;
pub mod quadform;
pub mod quadric;
pub mod report;
pub mod spinfactor;
pub mod transport;

pub use action::{
    enumerate_group, group_order, verify_homogeneous, verify_similitude_orbit, EvenMember, GroupContext,
    GroupEnumeration, GroupTarget, HomogeneousReport, OddMember, OrthogonalType, Route, SimilitudeReport,
};
pub use algebra::{parse_field_spec, prime_power, Field, FieldDescriptor, FieldElement, FieldKind, FiniteField, Rationals};
pub use error::{Error, Result};
pub use guard::Guards;
pub use linalg::Matrix;
pub use quadform::{GroupElement, Shape, SplitSpace, Tags};
pub use quadric::{
    count_closed_form, count_recursive, AmbientQuadricPoint, CountReport, IntrinsicQuadricPoint, Quadric, Stratum,
};
pub use report::Count;
pub use spinfactor::{verify_projective_space, SpinFactor, SpinReport};
pub use transport::{
    quadric_transport, reflection_transport, reflection_transport_with, similitude_transport, transport_all,
    TransportCertificate, TransportOptions, TransportPath, TransportSummary,
};

/// Elements of [`FiniteField`], packed base-`p` digits.
pub type Fq = u32;
/// Elements of [`Rationals`].
pub type Rational = num_rational::BigRational;

pub type FiniteSpace = SplitSpace<FiniteField>;
pub type RationalSpace = SplitSpace<Rationals>;
pub type FiniteQuadric = Quadric<FiniteField>;
pub type RationalQuadric = Quadric<Rationals>;
pub type FiniteGroupContext = GroupContext<FiniteField>;
pub type RationalGroupContext = GroupContext<Rationals>;
pub type FiniteSpinFactor = SpinFactor<FiniteField>;
pub type FiniteMatrix = Matrix<Fq>;
pub type FiniteCertificate = TransportCertificate<FiniteField>;
