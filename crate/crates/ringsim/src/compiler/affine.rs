//! Affine simulation of a counting predicate.

use super::predicate::ReversiblePredicate;
use crate::circuits::Circuit;
use crate::error::Result;
use crate::gates::Gate;
use crate::ring::RingSpec;

/// Register layout of [`build_affine_modkp`]: `X`, `B`, `W`, `S`, `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLayout {
    pub n: usize,
    pub b: usize,
    pub m: usize,
    /// Wire of `R`'s output before the final erasures.
    pub answer: usize,
    /// Width before the erasures.
    pub width: usize,
}

/// Prepares `|ρ⟩ = (k−1)|00⟩ + |01⟩ + |11⟩` on each `(b_i, s_i)`, flips `c` when
/// every `s_i` is 1, runs `R` controlled on `c`, and erases every wire except
/// the answer. For `|A_x| mod k ∈ {0, 1}` the final one-bit state is `|L(x)⟩`.
pub fn build_affine_modkp(r: &ReversiblePredicate, ring: &RingSpec) -> Result<(Circuit, AffineLayout)> {
    let r = r.retarget(ring)?;
    let (n, b, m) = (r.n(), r.b(), r.m());
    let width = n + 2 * b + m + 1;
    let s = |i: usize| n + b + m + 1 + i;
    let ctl = width;
    let answer = n + b + m;
    let mut c = Circuit::new(ring, n);
    c.preps(width - n);
    for i in 0..b {
        c.gate("RHO", &[n + 1 + i, s(i)])?;
    }
    let mut ws: Vec<usize> = (0..b).map(s).collect();
    ws.push(ctl);
    c.apply(Gate::mcx(ring, b), &ws)?;
    for (g, w) in r.circuit().gates() {
        let mut cw = vec![ctl];
        cw.extend_from_slice(w);
        c.apply(g.controlled()?, &cw)?;
    }
    for w in (answer + 1..=width).rev().chain((1..answer).rev()) {
        c.gate("ERASE", &[w])?;
    }
    c.set_output(1)?;
    Ok((c, AffineLayout { n, b, m, answer, width }))
}
