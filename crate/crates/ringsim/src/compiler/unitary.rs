//! Unitary simulation of a counting predicate over `Z_{p^r}`.

use std::sync::Arc;

use super::predicate::ReversiblePredicate;
use crate::circuits::Circuit;
use crate::error::{Error, Result};
use crate::gates::{standard_gate, Gate};
use crate::ring::RingSpec;

/// Wire numbers of each register of [`build_unitary_modkp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryLayout {
    pub x: Vec<usize>,
    pub b: Vec<usize>,
    pub s: Vec<usize>,
    pub w: Vec<usize>,
    pub a_prime: usize,
    pub c: usize,
    pub s_prime: Vec<usize>,
    pub c_prime: usize,
    pub a: usize,
}

impl UnitaryLayout {
    fn new(n: usize, b: usize, m: usize) -> UnitaryLayout {
        let mut next = 1;
        let mut take = |count: usize| {
            let r: Vec<usize> = (next..next + count).collect();
            next += count;
            r
        };
        let x = take(n);
        let bb = take(b);
        let s = take(2 * b);
        let w = take(m - 1);
        let a_prime = take(1)[0];
        let c = take(1)[0];
        let s_prime = take(2 * (b + m - 1));
        let c_prime = take(1)[0];
        let a = take(1)[0];
        UnitaryLayout { x, b: bb, s, w, a_prime, c, s_prime, c_prime, a }
    }

    /// `n + 5B + 3m + 1`.
    pub fn width(&self) -> usize {
        self.a
    }

    pub fn describe(&self) -> Vec<(&'static str, Vec<usize>)> {
        vec![
            ("X", self.x.clone()),
            ("B", self.b.clone()),
            ("S", self.s.clone()),
            ("W", self.w.clone()),
            ("a'", vec![self.a_prime]),
            ("C", vec![self.c]),
            ("S'", self.s_prime.clone()),
            ("C'", vec![self.c_prime]),
            ("a", vec![self.a]),
        ]
    }
}

type Step = (Arc<Gate>, Vec<usize>);

/// Builds the `n + 5B + 3m + 1`-wire unitary circuit. Every gate is a
/// permutation or a (controlled) `K`/`Kᵀ`. The answer is the last wire.
pub fn build_unitary_modkp(r: &ReversiblePredicate, ring: &RingSpec) -> Result<(Circuit, UnitaryLayout)> {
    if !ring.is_cyclic() || ring.prime_power().is_none() {
        return Err(Error::UnsupportedModulus(format!(
            "the unitary construction needs Z_(p^r), got {ring}"
        )));
    }
    let r = r.retarget(ring)?;
    let (n, b, m) = (r.n(), r.b(), r.m());
    let lay = UnitaryLayout::new(n, b, m);
    let g = |name: &str| standard_gate(ring, name).map(Arc::new);
    let not = g("NOT")?;
    let k = g("K")?;
    let kt = g("KT")?;

    // Steps 2 to 7.
    let mut tilde: Vec<Step> = Vec::new();
    for j in 0..b {
        tilde.push((k.clone(), vec![lay.b[j], lay.s[2 * j], lay.s[2 * j + 1]]));
    }
    let mut ws = lay.s.clone();
    ws.push(lay.c);
    tilde.push((Arc::new(Gate::mcx(ring, 2 * b)), ws));
    let map_r = |w: usize| -> usize {
        if w <= n + b {
            w
        } else if w < n + b + m {
            lay.w[w - n - b - 1]
        } else {
            lay.a_prime
        }
    };
    for (gate, wires) in r.circuit().gates() {
        let mut cw = vec![lay.c];
        cw.extend(wires.iter().map(|&w| map_r(w)));
        tilde.push((Arc::new(gate.controlled()?), cw));
    }
    tilde.extend(lay.s_prime.iter().map(|&w| (not.clone(), vec![w])));
    let bw: Vec<usize> = lay.b.iter().chain(&lay.w).copied().collect();
    for (j, &w) in bw.iter().enumerate() {
        tilde.push((kt.clone(), vec![w, lay.s_prime[2 * j], lay.s_prime[2 * j + 1]]));
    }
    tilde.extend(bw.iter().chain(&lay.s_prime).map(|&w| (not.clone(), vec![w])));

    let mut c = Circuit::new(ring, n);
    c.preps(lay.width() - n);
    for (gate, wires) in &tilde {
        c.apply(gate.clone(), wires)?;
    }
    // Step 8.
    c.apply(not.clone(), &[lay.c_prime])?;
    let mut ws: Vec<usize> = bw.iter().chain(&lay.s_prime).copied().collect();
    ws.push(lay.a_prime);
    ws.push(lay.c_prime);
    c.apply(Gate::mcx(ring, ws.len() - 1), &ws)?;
    // Step 9.
    for (gate, wires) in tilde.iter().rev() {
        let mut cw = vec![lay.c_prime];
        cw.extend_from_slice(wires);
        c.apply(gate.inverse()?.controlled()?, &cw)?;
    }
    // Step 10.
    for w in n + 1..=lay.width() {
        if w != lay.c_prime {
            c.apply(not.clone(), &[w])?;
        }
    }
    // Step 11.
    let mut ws: Vec<usize> = (n + 1..lay.width()).collect();
    ws.push(lay.a);
    c.apply(Gate::mcx(ring, ws.len() - 1), &ws)?;
    c.set_output(lay.a)?;
    Ok((c, lay))
}
