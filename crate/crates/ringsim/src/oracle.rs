//! Brute-force ground truth: branch counting, the `UP_k` promise, prime
//! amplification and model counting.

use std::fmt;

use crate::circuits::Circuit;
use crate::compiler::{branch, Cnf, ReversiblePredicate};
use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::ring::is_prime;
use crate::states::BitString;

/// Default enumeration cap on branching bits and formula variables.
pub const DEFAULT_MAX_BRANCH_BITS: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub x: BitString,
    pub total_branches: u64,
    pub accepting: u64,
    pub accepting_mod_k: u64,
    pub k: u64,
}

impl CountReport {
    /// `key: value` lines.
    pub fn to_text(&self) -> String {
        format!(
            "x: {}\ntotal_branches: {}\naccepting: {}\naccepting_mod_k: {}\nk: {}\n",
            self.x, self.total_branches, self.accepting, self.accepting_mod_k, self.k
        )
    }

    /// One machine-readable line.
    pub fn to_record(&self) -> String {
        format!(
            "x={} total_branches={} accepting={} accepting_mod_k={} k={}",
            self.x, self.total_branches, self.accepting, self.accepting_mod_k, self.k
        )
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum UpkDecision {
    Zero,
    One,
    PromiseViolated,
}

impl fmt::Display for UpkDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpkDecision::Zero => "Zero",
            UpkDecision::One => "One",
            UpkDecision::PromiseViolated => "PromiseViolated",
        })
    }
}

pub fn count_accepting(r: &ReversiblePredicate, x: &BitString, k: u64) -> Result<CountReport> {
    count_accepting_capped(r, x, k, DEFAULT_MAX_BRANCH_BITS)
}

/// Runs `R` classically on `(x, b, 0^m)` for every `b`.
pub fn count_accepting_capped(r: &ReversiblePredicate, x: &BitString, k: u64, cap: usize) -> Result<CountReport> {
    if r.b() > cap {
        return Err(Error::TooManyBranches { b: r.b(), cap });
    }
    if x.len() != r.n() {
        return Err(Error::WidthMismatch(format!("predicate takes {} input bits, got {}", r.n(), x.len())));
    }
    if k < 2 {
        return Err(Error::InvalidModulus(format!("k = {k}")));
    }
    let total = 1u64 << r.b();
    let accepting = (0..total as usize).filter(|&i| r.eval(&x.0, &branch(i, r.b()))).count() as u64;
    Ok(CountReport { x: x.clone(), total_branches: total, accepting, accepting_mod_k: accepting % k, k })
}

pub fn upk_decide(r: &ReversiblePredicate, x: &BitString, k: u64) -> Result<UpkDecision> {
    Ok(match count_accepting(r, x, k)?.accepting_mod_k {
        0 => UpkDecision::Zero,
        1 => UpkDecision::One,
        _ => UpkDecision::PromiseViolated,
    })
}

/// `k − 1` disjoint copies of `R` with their outputs ANDed into a fresh bit,
/// so `accepting′ = accepting^(k−1)`. Layout: `X`, the `k − 1` branching
/// blocks, the `k − 1` work blocks, then the new output.
pub fn amplify_prime(r: &ReversiblePredicate, k: u64) -> Result<ReversiblePredicate> {
    if !is_prime(k) {
        return Err(Error::UnsupportedModulus(format!("amplification needs a prime, got {k}")));
    }
    let copies = (k - 1) as usize;
    let (n, b, m) = (r.n(), r.b(), r.m());
    let (b2, m2) = (copies * b, copies * m + 1);
    let width = n + b2 + m2;
    let ring = r.ring();
    let mut c = Circuit::new(ring, width);
    for i in 0..copies {
        let map = |w: usize| {
            if w <= n {
                w
            } else if w <= n + b {
                n + i * b + (w - n)
            } else {
                n + b2 + i * m + (w - n - b)
            }
        };
        for (g, wires) in r.circuit().gates() {
            let ws: Vec<usize> = wires.iter().map(|&w| map(w)).collect();
            c.apply(g.clone(), &ws)?;
        }
    }
    let mut ws: Vec<usize> = (0..copies).map(|i| n + b2 + (i + 1) * m).collect();
    ws.push(width);
    c.apply(Gate::mcx(ring, copies), &ws)?;
    ReversiblePredicate::new(n, b2, m2, c)
}

pub fn sat_count(phi: &Cnf) -> Result<u64> {
    sat_count_capped(phi, DEFAULT_MAX_BRANCH_BITS)
}

pub fn sat_count_capped(phi: &Cnf, cap: usize) -> Result<u64> {
    if phi.vars() > cap {
        return Err(Error::TooManyVariables { n: phi.vars(), cap });
    }
    Ok((0..1usize << phi.vars()).filter(|&a| phi.eval(&branch(a, phi.vars()))).count() as u64)
}
