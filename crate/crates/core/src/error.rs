use thiserror::Error;

/// Errors raised by series arithmetic and the generating-function routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero series has no inverse")]
    ZeroInverse,
    #[error("precision {available} does not cover {needed}")]
    Precision { needed: String, available: String },
    #[error("invalid a2 = {a2} for k = {k}: need a2 >= 0 and a2 = k (mod 2)")]
    Parity { k: u32, a2: i64 },
    #[error("{0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks the parity rule shared by every `(k, a)` routine.
pub fn check_parity(k: u32, a2: i64) -> Result<()> {
    if k == 0 || a2 < 0 || (a2 - k as i64).rem_euclid(2) != 0 {
        return Err(Error::Parity { k, a2 });
    }
    Ok(())
}
