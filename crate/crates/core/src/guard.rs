use crate::error::{Error, Result};

/// Size limits for exhaustive computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Maximum number of candidate vectors swept when enumerating points.
    pub enumeration: u64,
    /// Maximum `q^(dim^2)` for direct matrix enumeration.
    pub brute_force: u64,
    /// Maximum number of group elements held by a reflection closure.
    pub group_elements: u64,
    /// Skip every limit.
    pub force: bool,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            enumeration: 100_000_000,
            brute_force: 1_000_000_000,
            group_elements: 2_000_000,
            force: false,
        }
    }
}

impl Guards {
    pub fn forced() -> Self {
        Self {
            force: true,
            ..Self::default()
        }
    }

    pub(crate) fn check_enumeration(&self, q: u64, exponent: usize) -> Result<()> {
        if self.force || fits(q, exponent, self.enumeration) {
            Ok(())
        } else {
            Err(Error::TooLarge(format!(
                "{q}^{exponent} candidates exceed the enumeration guard {}",
                self.enumeration
            )))
        }
    }

    pub(crate) fn brute_force_allowed(&self, q: u64, dim: usize) -> bool {
        fits(q, dim * dim, self.brute_force)
    }

    pub(crate) fn check_group_size(&self, size: usize) -> Result<()> {
        if self.force || (size as u64) <= self.group_elements {
            Ok(())
        } else {
            Err(Error::TooLarge(format!(
                "group closure exceeded {} elements",
                self.group_elements
            )))
        }
    }
}

/// `q^exponent <= limit` without overflow.
pub(crate) fn fits(q: u64, exponent: usize, limit: u64) -> bool {
    let mut acc: u64 = 1;
    for _ in 0..exponent {
        acc = match acc.checked_mul(q) {
            Some(v) if v <= limit => v,
            _ => return false,
        };
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits() {
        assert!(fits(3, 16, 1_000_000_000));
        assert!(!fits(4, 16, 1_000_000_000));
        assert!(!fits(2, 36, 1_000_000_000));
        assert!(fits(1000, 0, 1));
        let g = Guards::default();
        assert!(g.check_enumeration(3, 7).is_ok());
        assert!(g.check_enumeration(1000, 3).is_err());
        assert!(Guards::forced().check_enumeration(1000, 3).is_ok());
    }
}
