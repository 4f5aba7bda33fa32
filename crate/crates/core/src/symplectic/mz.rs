//! Conversion of temporal Y-pulse patterns into spatial sign-flip patterns.
//!
//! `M_Z(i, t)` is `1` when `Z_i`, propagated `t` steps backwards, picks up a
//! sign under conjugation by the global Y pulse. A pulse pattern
//! `c = (c_0, ..., c_N)` then flips the sign of `Z_j` for `s = M_Z c`.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

use super::pauli::check_site;
use super::transition::TransitionMap;

fn theta(x: i64) -> bool {
    x >= 0
}

/// `a_{Z_i}ᵀ C^t a_Y`: the z-component at site `i` of `C^t` applied to the
/// all-ones vector.
pub fn mz_definitional(site: usize, t: i64, map: &TransitionMap) -> Result<bool> {
    check_site(site, map.n_sites())?;
    let v = map.apply_power(&BitVec::ones(2 * map.n_sites()), t);
    Ok(v.get(site - 1))
}

/// `a_{X_i}ᵀ C^t a_Y`.
pub fn mx_definitional(site: usize, t: i64, map: &TransitionMap) -> Result<bool> {
    check_site(site, map.n_sites())?;
    let n = map.n_sites();
    let v = map.apply_power(&BitVec::ones(2 * n), t);
    Ok(v.get(n + site - 1))
}

/// Rows `C^t a_Y` for `t = t_min..=t_max`, each split into `(z, x)`.
pub fn y_orbit(map: &TransitionMap, t_min: i64, t_max: i64) -> Vec<(BitVec, BitVec)> {
    let n = map.n_sites();
    let mut v = map.apply_power(&BitVec::ones(2 * n), t_min);
    let mut out = Vec::new();
    for _ in t_min..=t_max {
        out.push((v.slice(0, n), v.slice(n, n)));
        v = map.matrix().mul_vec(&v);
    }
    out
}

/// `θ(i−t−1) + θ(t+i−N−1) mod 2`, valid for `t ∈ [−1, N]`.
pub fn mz_closed_form(site: usize, t: i64, n_sites: usize) -> Result<bool> {
    check_site(site, n_sites)?;
    let n = n_sites as i64;
    if !(-1..=n).contains(&t) {
        return Err(Error::TimeOutOfRange { t, min: -1, max: n });
    }
    let i = site as i64;
    Ok(theta(i - t - 1) ^ theta(t + i - n - 1))
}

/// The `N × (N+1)` matrix `M_Z(i, t)` for `t = 0..=N`, from the closed form.
pub fn mz_matrix(n_sites: usize) -> Result<BitMatrix> {
    if n_sites == 0 {
        return Err(Error::InvalidChainLength(0));
    }
    let mut m = BitMatrix::zeros(n_sites, n_sites + 1);
    for i in 1..=n_sites {
        for t in 0..=n_sites {
            m.set(i - 1, t, mz_closed_form(i, t as i64, n_sites)?);
        }
    }
    Ok(m)
}

/// Sites whose Z rotation is amplified by the Y-pulse pattern `c`
/// (`c_t = 1` means a Y pulse after `t` steps, `t = 0..=N`).
pub fn s_vector(c: &BitVec, n_sites: usize) -> Result<BitVec> {
    if c.len() != n_sites + 1 {
        return Err(Error::LengthMismatch {
            expected: n_sites + 1,
            actual: c.len(),
        });
    }
    Ok(mz_matrix(n_sites)?.mul_vec(c))
}
