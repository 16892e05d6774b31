//! Classical group descriptors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// The classical families. `SOodd` of rank `n` is SO(2n+1), `SOeven` of rank `n` is SO(2n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    Sp,
    SOodd,
    SOeven,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::GL, Family::SL, Family::Sp, Family::SOodd, Family::SOeven];

    /// Weyl group contains sign changes.
    pub fn has_signs(self) -> bool {
        matches!(self, Family::Sp | Family::SOodd | Family::SOeven)
    }

    /// Families whose trace functions satisfy `τ_{-a} = τ_a`.
    pub fn is_self_dual(self) -> bool {
        self.has_signs()
    }

    /// Lowercase flag spelling used by the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::GL => "gl",
            Family::SL => "sl",
            Family::Sp => "sp",
            Family::SOodd => "so-odd",
            Family::SOeven => "so-even",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::Sp => "Sp",
            Family::SOodd => "SOodd",
            Family::SOeven => "SOeven",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "gl" => Ok(Family::GL),
            "sl" => Ok(Family::SL),
            "sp" => Ok(Family::Sp),
            "so-odd" | "soodd" | "b" => Ok(Family::SOodd),
            "so-even" | "soeven" | "d" => Ok(Family::SOeven),
            _ => Err(Error::Parse(format!("unknown family `{s}`"))),
        }
    }
}

/// A classical group together with the number `N` of ℤ-factors of the
/// abelian group whose character variety is studied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub rank: usize,
    pub factors: usize,
}

impl GroupSpec {
    pub fn new(family: Family, rank: usize, factors: usize) -> Result<Self> {
        if rank == 0 {
            return Err(domain!("rank must be at least 1"));
        }
        if factors == 0 {
            return Err(domain!("number of factors must be at least 1"));
        }
        Ok(GroupSpec { family, rank, factors })
    }

    /// Size of the defining matrices.
    pub fn matrix_size(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::GL | Family::SL => n,
            Family::Sp | Family::SOeven => 2 * n,
            Family::SOodd => 2 * n + 1,
        }
    }

    pub fn lie_dim(&self) -> usize {
        let n = self.rank;
        let m = self.matrix_size();
        match self.family {
            Family::GL => n * n,
            Family::SL => n * n - 1,
            Family::Sp => n * (2 * n + 1),
            Family::SOodd | Family::SOeven => m * (m - 1) / 2,
        }
    }

    /// Dimension of a maximal torus.
    pub fn group_rank(&self) -> usize {
        match self.family {
            Family::SL => self.rank - 1,
            _ => self.rank,
        }
    }

    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact: u128 = (1..=n).product();
        match self.family {
            Family::GL | Family::SL => fact,
            Family::Sp | Family::SOodd => fact << n,
            Family::SOeven => fact << (n - 1),
        }
    }

    pub fn with_factors(&self, factors: usize) -> Self {
        GroupSpec { factors, ..*self }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank;
        let name = match self.family {
            Family::GL => format!("GL({n})"),
            Family::SL => format!("SL({n})"),
            Family::Sp => format!("Sp({n})"),
            Family::SOodd => format!("SO({})", 2 * n + 1),
            Family::SOeven => format!("SO({})", 2 * n),
        };
        write!(f, "{name} over Z^{}", self.factors)
    }
}
