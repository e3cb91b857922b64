//! Enumeration caps.
//!
//! Each exhaustive operation has a hard ceiling on `n`. The environment
//! variable `CODIM_MAX_N` may lower every ceiling, never raise it.

use crate::error::{Error, Result};

pub const ENV_MAX_N: &str = "CODIM_MAX_N";

pub const CAYLEY_BFS: usize = 6;
pub const COUNT_D_GOOD: usize = 9;
pub const BRUTE_FORCE_ROW: usize = 9;
pub const CLASSIC_CLOSURE: usize = 7;
pub const MAIN_CLOSURE: usize = 8;

/// The effective cap: `default`, lowered by `CODIM_MAX_N` if that is set and smaller.
pub fn cap(default: usize) -> usize {
    match std::env::var(ENV_MAX_N).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(env) => env.min(default),
        None => default,
    }
}

pub(crate) fn enforce(op: &'static str, n: usize, default: usize) -> Result<()> {
    let cap = cap(default);
    if n > cap {
        Err(Error::Scale { op, n, cap })
    } else {
        Ok(())
    }
}
