use crate::error::{Error, Result};

/// Upper bound on the number of candidate assignments an exhaustive search
/// may visit before it refuses to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    cap: u128,
}

impl SizeGuard {
    pub const DEFAULT_CAP: u128 = 1_000_000;

    pub const fn new(cap: u128) -> Self {
        Self { cap }
    }

    pub const fn unbounded() -> Self {
        Self { cap: u128::MAX }
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    /// Refuses a search over `base^exponent` candidates when that exceeds the cap.
    pub fn check_power(&self, base: usize, exponent: usize) -> Result<()> {
        match power(base, exponent) {
            Some(bound) if bound <= self.cap => Ok(()),
            _ => Err(Error::GuardExceeded {
                bound: format!("{base}^{exponent}"),
                cap: self.cap,
            }),
        }
    }
}

impl Default for SizeGuard {
    fn default() -> Self {
        Self::new(Self::DEFAULT_CAP)
    }
}

impl SizeGuard {
    /// Refuses a search whose candidate lists multiply out beyond the cap.
    pub fn check_product(&self, sizes: impl IntoIterator<Item = usize>, what: &str) -> Result<()> {
        let mut acc: Option<u128> = Some(1);
        for s in sizes {
            acc = acc.and_then(|a| a.checked_mul(s as u128));
            if acc == Some(0) {
                return Ok(());
            }
        }
        match acc {
            Some(bound) if bound <= self.cap => Ok(()),
            Some(bound) => Err(Error::GuardExceeded {
                bound: format!("{what}: {bound} candidate assignments"),
                cap: self.cap,
            }),
            None => Err(Error::GuardExceeded {
                bound: format!("{what}: more than 2^128 candidate assignments"),
                cap: self.cap,
            }),
        }
    }
}

fn power(base: usize, exponent: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exponent {
        acc = acc.checked_mul(base as u128)?;
        if acc == 0 {
            break;
        }
    }
    Some(acc)
}
