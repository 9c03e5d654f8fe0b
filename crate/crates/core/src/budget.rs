use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Caps on enumeration work. Raising them past the defaults is an explicit choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_polys: u128,
    pub max_characters: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_polys: 100_000_000, max_characters: 100_000 }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_polys: u128::MAX, max_characters: u128::MAX }
    }

    pub fn check_polys(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.max_polys {
            return Err(Error::BudgetExceeded { what: what.into(), needed, budget: self.max_polys });
        }
        Ok(())
    }

    pub fn check_characters(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.max_characters {
            return Err(Error::BudgetExceeded { what: what.into(), needed, budget: self.max_characters });
        }
        Ok(())
    }
}

/// `q^e` as u128, or an error on overflow.
pub fn qpow(q: u32, e: usize) -> Result<u128> {
    (q as u128)
        .checked_pow(e as u32)
        .ok_or_else(|| Error::InvalidParameter(format!("{q}^{e} overflows")))
}
