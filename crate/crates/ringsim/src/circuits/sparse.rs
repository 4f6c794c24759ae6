//! Sparse execution for wide circuits whose states keep a small support,
//! such as the unitary constructions on basis inputs.

use std::collections::HashMap;

use num_integer::Integer;

use super::{Circuit, Decision, Op};
use crate::error::{Error, Result};
use crate::gates::{Action, Gate};
use crate::ring::{RingElem, RingSpec};
use crate::states::{BitString, ModalState, StateSpace};

/// Widest state the sparse executor indexes.
pub const MAX_SPARSE_BITS: usize = 64;
/// Default cap on the number of nonzero amplitudes.
pub const DEFAULT_MAX_SUPPORT: usize = 1 << 22;

/// A state stored as its nonzero amplitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseState {
    ring: RingSpec,
    n: usize,
    amps: HashMap<u64, RingElem>,
}

impl SparseState {
    pub fn basis(ring: &RingSpec, x: &BitString) -> Result<SparseState> {
        if x.len() > MAX_SPARSE_BITS {
            return Err(Error::WidthOverflow { bits: x.len(), cap: MAX_SPARSE_BITS });
        }
        let idx = x.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Ok(SparseState { ring: ring.clone(), n: x.len(), amps: HashMap::from([(idx, ring.one())]) })
    }

    pub fn from_dense(psi: &ModalState) -> SparseState {
        let amps = psi.support().map(|i| (i as u64, psi.amps()[i])).collect();
        SparseState { ring: psi.ring().clone(), n: psi.n(), amps }
    }

    pub fn to_dense(&self) -> Result<ModalState> {
        let mut psi = ModalState::zero(&self.ring, self.n)?;
        for (&i, &a) in &self.amps {
            psi.set_amp(&BitString::from_index(i as usize, self.n), a);
        }
        Ok(psi)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support_len(&self) -> usize {
        self.amps.len()
    }

    /// Nonzero amplitudes in increasing string order.
    pub fn entries(&self) -> Vec<(BitString, RingElem)> {
        let mut v: Vec<(u64, RingElem)> = self.amps.iter().map(|(&i, &a)| (i, a)).collect();
        v.sort_unstable_by_key(|e| e.0);
        v.into_iter().map(|(i, a)| (self.bits(i), a)).collect()
    }

    fn bits(&self, i: u64) -> BitString {
        BitString((0..self.n).map(|j| (i >> (self.n - 1 - j)) & 1 == 1).collect())
    }

    pub fn amp(&self, x: &BitString) -> RingElem {
        let idx = x.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        self.amps.get(&idx).copied().unwrap_or_default()
    }

    /// Whether the state is exactly `|x⟩`.
    pub fn is_basis(&self, x: &BitString) -> bool {
        x.len() == self.n && self.amps.len() == 1 && self.amp(x) == self.ring.one()
    }

    pub fn norm(&self) -> RingElem {
        let r = &self.ring;
        self.amps.values().fold(r.zero(), |acc, &a| r.mul_add(acc, r.conj(a), a))
    }

    pub fn sum(&self) -> RingElem {
        self.amps.values().fold(self.ring.zero(), |acc, &a| self.ring.add(acc, a))
    }

    pub fn in_space(&self, space: StateSpace) -> bool {
        match space {
            StateSpace::Generic if self.ring.is_cyclic() => {
                let k = self.ring.k();
                self.amps.values().fold(k, |g, a| g.gcd(&(a.raw()[0] as u64))) == 1
            }
            StateSpace::Generic => self.amps.values().any(|&a| self.ring.is_unit(a)),
            StateSpace::L1 => self.sum() == self.ring.one(),
            StateSpace::L2 => self.norm() == self.ring.one(),
        }
    }

    /// Decision on the 1-indexed `wire`, as for dense states.
    pub fn decide(&self, wire: usize, space: StateSpace) -> Result<Decision> {
        if wire == 0 || wire > self.n {
            return Err(Error::InvalidWire { wire, width: self.n });
        }
        let bit = self.n - wire;
        let ones = self.amps.keys().filter(|&&i| (i >> bit) & 1 == 1).count();
        let in_space = self.in_space(space);
        Ok(if in_space && ones == self.amps.len() {
            Decision::One
        } else if in_space && ones == 0 {
            Decision::Zero
        } else {
            Decision::NotNecessary
        })
    }

    fn apply(&mut self, gate: &Gate, wires: &[usize]) {
        if !gate.is_square() {
            return self.apply_rect(gate, wires);
        }
        let n = self.n;
        let pos = |w: usize| n - w;
        let c = gate.controls();
        let ctrl_mask = wires[..c].iter().fold(0u64, |m, &w| m | 1 << pos(w));
        let targets: Vec<usize> = wires[c..].iter().map(|&w| pos(w)).collect();
        let h = targets.len();
        let target_mask = targets.iter().fold(0u64, |m, &p| m | 1 << p);
        let scatter = |local: usize| -> u64 {
            targets.iter().enumerate().fold(0, |acc, (i, &p)| acc | ((((local >> (h - 1 - i)) & 1) as u64) << p))
        };
        let ring = &self.ring;
        let mut out: HashMap<u64, RingElem> = HashMap::with_capacity(self.amps.len());
        for (&idx, &a) in &self.amps {
            if idx & ctrl_mask != ctrl_mask {
                let e = out.entry(idx).or_default();
                *e = ring.add(*e, a);
                continue;
            }
            let j = targets.iter().fold(0usize, |acc, &p| (acc << 1) | ((idx >> p) & 1) as usize);
            let rest = idx & !target_mask;
            match gate.action() {
                Action::Permutation(perm) => {
                    let e = out.entry(rest | scatter(perm[j])).or_default();
                    *e = ring.add(*e, a);
                }
                Action::Dense(cols) => {
                    for &(i, coef) in &cols[j] {
                        let e = out.entry(rest | scatter(i)).or_default();
                        *e = ring.mul_add(*e, coef, a);
                    }
                }
            }
        }
        out.retain(|_, a| !a.is_zero());
        self.amps = out;
    }

    /// Same wire placement as the dense kernel: the output bits sit where the
    /// smallest selected wire was.
    fn apply_rect(&mut self, gate: &Gate, wires: &[usize]) {
        let n = self.n;
        let h_in = wires.len();
        let h_out = gate.base_out_bits();
        let first = *wires.iter().min().expect("gates have at least one wire");
        let low = n - h_in - (first - 1);
        let sel: Vec<usize> = wires.iter().map(|&w| n - w).collect();
        let Action::Dense(cols) = gate.action() else {
            unreachable!("non-square gates are never permutations")
        };
        let ring = &self.ring;
        let mut out: HashMap<u64, RingElem> = HashMap::with_capacity(self.amps.len());
        for (&x, &a) in &self.amps {
            let j = sel.iter().fold(0usize, |acc, &p| (acc << 1) | ((x >> p) & 1) as usize);
            let rest = (0..n)
                .rev()
                .filter(|b| !sel.contains(b))
                .fold(0u64, |acc, b| (acc << 1) | ((x >> b) & 1));
            let hi = (rest >> low) << (h_out + low);
            let lo = rest & ((1u64 << low) - 1);
            for &(row, coef) in &cols[j] {
                let e = out.entry(hi | ((row as u64) << low) | lo).or_default();
                *e = ring.mul_add(*e, coef, a);
            }
        }
        out.retain(|_, a| !a.is_zero());
        self.amps = out;
        self.n = n - h_in + h_out;
    }
}

impl Circuit {
    pub fn run_sparse(&self, x: &BitString) -> Result<SparseState> {
        self.run_sparse_capped(x, DEFAULT_MAX_SUPPORT)
    }

    /// Runs on `|x⟩` keeping only nonzero amplitudes.
    pub fn run_sparse_capped(&self, x: &BitString, max_support: usize) -> Result<SparseState> {
        if x.len() != self.inputs {
            return Err(Error::WidthMismatch(format!(
                "circuit takes {} input bits, got {}",
                self.inputs,
                x.len()
            )));
        }
        let peak = self.peak_width();
        if peak > MAX_SPARSE_BITS {
            return Err(Error::WidthOverflow { bits: peak, cap: MAX_SPARSE_BITS });
        }
        let mut state = SparseState::basis(&self.ring, x)?;
        for op in &self.ops {
            match op {
                Op::Prep => {
                    state.amps = state.amps.into_iter().map(|(i, a)| (i << 1, a)).collect();
                    state.n += 1;
                }
                Op::Apply { gate, wires } => {
                    state.apply(gate, wires);
                    if state.amps.len() > max_support {
                        return Err(Error::SupportOverflow { size: state.amps.len(), cap: max_support });
                    }
                }
            }
        }
        Ok(state)
    }

    /// [`Circuit::decide`] through the sparse executor.
    pub fn decide_sparse(&self, x: &BitString, space: StateSpace) -> Result<Decision> {
        self.run_sparse(x)?.decide(self.output_wire(), space)
    }
}
