//! Closed-form evolution of the z-part of `T^t(Z_p)` on the open chain.
//!
//! The free-space solution is a checkerboard light cone; the open-chain
//! solution is obtained by summing its mirror images with period `2(N+1)`.

use crate::error::Result;
use crate::gf2::BitVec;

use super::pauli::check_site;

fn theta(x: i64) -> bool {
    x >= 0
}

/// Free-space solution `ṽ_i(t)` of `ṽ_i(t+1) = ṽ_{i−1}(t) + ṽ_{i+1}(t) + ṽ_i(t−1)`
/// with `ṽ(−1) = 0` and `ṽ(0) = e_p`.
pub fn free_space_solution(p: i64, i: i64, t: i64) -> bool {
    let parity_ok = (p - i + t).rem_euclid(2) == 0;
    parity_ok && (theta(p - i + t) ^ theta(p - i - t - 1))
}

/// z-part `v(t)` of `T^t(Z_p)`, folded from the free-space solution.
/// Defined for `t ≥ −1`.
pub fn foldback_solution(p: usize, t: i64, n_sites: usize) -> Result<BitVec> {
    check_site(p, n_sites)?;
    let n = n_sites as i64;
    let period = 2 * (n + 1);
    let p = p as i64;
    let mut v = BitVec::zeros(n_sites);
    if t < -1 {
        return Ok(v);
    }
    // images outside |j - p| <= t vanish
    let reach = (t.max(0) + n) / period + 1;
    for i in 1..=n {
        let mut bit = false;
        for l in -reach..=reach {
            bit ^= free_space_solution(p, i + l * period, t);
            bit ^= free_space_solution(p, -i + l * period, t);
        }
        v.set((i - 1) as usize, bit);
    }
    Ok(v)
}

/// Direct iteration of the open-chain recursion
/// `v_i(t+1) = v_{i−1}(t) + v_{i+1}(t) + v_i(t−1)`, `w_i(t+1) = v_i(t)`,
/// from `v(−1) = 0`, `v(0) = e_p`.
///
/// Returns `(v(t), w(t))` for `t = 0..=t_max`, where `w(0) = v(−1) = 0`.
pub fn boundary_recursion(p: usize, t_max: usize, n_sites: usize) -> Result<Vec<(BitVec, BitVec)>> {
    check_site(p, n_sites)?;
    let mut prev = BitVec::zeros(n_sites);
    let mut cur = BitVec::unit(n_sites, p - 1);
    let mut out = Vec::with_capacity(t_max + 1);
    out.push((cur.clone(), prev.clone()));
    for _ in 0..t_max {
        let mut next = prev.clone();
        for i in 0..n_sites {
            let left = i > 0 && cur.get(i - 1);
            let right = i + 1 < n_sites && cur.get(i + 1);
            if left ^ right {
                next.flip(i);
            }
        }
        prev = cur;
        cur = next;
        out.push((cur.clone(), prev.clone()));
    }
    Ok(out)
}
