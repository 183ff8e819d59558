//! Exact point-level models of the Drinfeld half-space `Ω^{d-1}` over `F_q`,
//! its Deligne-Lusztig cover `DL^{d-1}`, Lusztig's unipotent quotient maps and
//! the partial compactification chart, together with the checks that certify
//! their explicit formulas on small grids.

pub mod cli;
pub mod counting;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod groups;
pub mod quotients;
pub mod report;
pub mod symbolic;

pub use error::{Error, Result};

/// Enumeration limits shared by every enumerating operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of field elements in any constructed field.
    pub field_size: u64,
    /// Maximum number of points (or group elements) an enumeration may visit.
    pub points: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { field_size: fields::DEFAULT_FIELD_CAP, points: 10_000_000 }
    }
}

impl Budget {
    pub fn check(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.points as u128 {
            return Err(Error::budget(what, needed, self.points as u128));
        }
        Ok(())
    }
}
