//! Instance-size guards for exhaustive routines.

use crate::error::{Error, Result};

/// Environment variable that overrides every default size limit.
pub const GUARD_VARIABLE: &str = "BIPTW_GUARD";

/// The effective limit: the value of [`GUARD_VARIABLE`] when it parses, otherwise `default`.
pub fn limit(default: u64) -> u64 {
    std::env::var(GUARD_VARIABLE)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

/// Fails with a size error when `amount` exceeds the effective limit.
pub fn check(what: &str, amount: u64, default: u64) -> Result<()> {
    let bound = limit(default);
    if amount > bound {
        return Err(Error::SizeGuard(format!("{what} is {amount}, above the limit {bound}")));
    }
    Ok(())
}
