//! Strided gate application on dense amplitude vectors.
//!
//! Bit position `n - w` of an index holds wire `w`, so wire 1 is the most
//! significant bit. The same kernel runs over ring amplitudes and over the
//! nonnegative integers used for path counting.

use crate::gates::{Action, Gate};
use crate::ring::{RingElem, RingSpec};

/// The arithmetic a kernel needs: zero test and `acc += c · v`.
pub(crate) trait Arith {
    type T: Clone;
    fn zero(&self) -> Self::T;
    fn is_zero(&self, v: &Self::T) -> bool;
    fn mul_add(&self, acc: &mut Self::T, c: RingElem, v: &Self::T);
}

impl Arith for RingSpec {
    type T = RingElem;

    fn zero(&self) -> RingElem {
        RingElem::ZERO
    }

    fn is_zero(&self, v: &RingElem) -> bool {
        v.is_zero()
    }

    fn mul_add(&self, acc: &mut RingElem, c: RingElem, v: &RingElem) {
        *acc = RingSpec::mul_add(self, *acc, c, *v);
    }
}

/// Integer lift of a cyclic ring: entries become their residues in `[0, k)`.
pub(crate) struct Lift;

impl Arith for Lift {
    type T = num_bigint::BigUint;

    fn zero(&self) -> Self::T {
        Self::T::default()
    }

    fn is_zero(&self, v: &Self::T) -> bool {
        *v == Self::T::default()
    }

    fn mul_add(&self, acc: &mut Self::T, c: RingElem, v: &Self::T) {
        *acc += v * c.raw()[0];
    }
}

fn bit_pos(n: usize, wire: usize) -> usize {
    n - wire
}

/// Appends `count` fresh `|0⟩` wires on the right.
pub(crate) fn prep<A: Arith>(ar: &A, amps: Vec<A::T>, count: usize) -> Vec<A::T> {
    if count == 0 {
        return amps;
    }
    let mut out = vec![ar.zero(); amps.len() << count];
    for (x, v) in amps.into_iter().enumerate() {
        out[x << count] = v;
    }
    out
}

/// Applies `gate` at 1-indexed `wires` of an `n`-bit vector. Returns the new
/// amplitudes and width (which changes only for non-square gates).
pub(crate) fn apply<A: Arith>(
    ar: &A,
    mut amps: Vec<A::T>,
    n: usize,
    gate: &Gate,
    wires: &[usize],
) -> (Vec<A::T>, usize) {
    debug_assert_eq!(wires.len(), gate.arity());
    if !gate.is_square() {
        return apply_rect(ar, &amps, n, gate, wires);
    }
    let c = gate.controls();
    let ctrl_mask = wires[..c].iter().fold(0usize, |m, &w| m | 1 << bit_pos(n, w));
    let targets = &wires[c..];
    let h = targets.len();
    let offsets: Vec<usize> = (0..1usize << h)
        .map(|local| {
            targets.iter().enumerate().fold(0, |acc, (i, &w)| {
                acc | (((local >> (h - 1 - i)) & 1) << bit_pos(n, w))
            })
        })
        .collect();
    let gate_mask = ctrl_mask | offsets[offsets.len() - 1];
    let free = !gate_mask & ((1usize << n) - 1);

    let mut buf: Vec<A::T> = vec![ar.zero(); 1 << h];
    let mut out: Vec<A::T> = vec![ar.zero(); 1 << h];
    let mut r = 0usize;
    loop {
        let base = r | ctrl_mask;
        let mut any = false;
        for (slot, &off) in buf.iter_mut().zip(&offsets) {
            let v = &amps[base | off];
            any |= !ar.is_zero(v);
            *slot = v.clone();
        }
        if any {
            match gate.action() {
                Action::Permutation(perm) => {
                    for (j, &i) in perm.iter().enumerate() {
                        amps[base | offsets[i]] = buf[j].clone();
                    }
                }
                Action::Dense(cols) => {
                    out.iter_mut().for_each(|o| *o = ar.zero());
                    for (j, col) in cols.iter().enumerate() {
                        if ar.is_zero(&buf[j]) {
                            continue;
                        }
                        for &(i, coef) in col {
                            ar.mul_add(&mut out[i], coef, &buf[j]);
                        }
                    }
                    for (o, &off) in out.iter().zip(&offsets) {
                        amps[base | off] = o.clone();
                    }
                }
            }
        }
        // Next subset of `free`.
        r = ((r | !free).wrapping_add(1)) & free;
        if r == 0 {
            break;
        }
    }
    (amps, n)
}

/// Non-square gates: the output bits replace the selected wires, placed
/// contiguously where the smallest selected wire was.
fn apply_rect<A: Arith>(
    ar: &A,
    amps: &[A::T],
    n: usize,
    gate: &Gate,
    wires: &[usize],
) -> (Vec<A::T>, usize) {
    let h_in = wires.len();
    let h_out = gate.base_out_bits();
    let new_n = n - h_in + h_out;
    let first = *wires.iter().min().expect("gates have at least one wire");
    // Remaining wires after `first` in the compacted index.
    let low = n - h_in - (first - 1);
    let low_mask = (1usize << low) - 1;
    let sel_mask = wires.iter().fold(0usize, |m, &w| m | 1 << bit_pos(n, w));
    let Action::Dense(cols) = gate.action() else {
        unreachable!("non-square gates are never permutations")
    };
    let mut out = vec![ar.zero(); 1 << new_n];
    for (x, v) in amps.iter().enumerate() {
        if ar.is_zero(v) {
            continue;
        }
        let j = wires.iter().fold(0usize, |acc, &w| (acc << 1) | ((x >> bit_pos(n, w)) & 1));
        let rest = compact(x, sel_mask, n);
        let hi = (rest >> low) << (h_out + low);
        let lo = rest & low_mask;
        for &(row, coef) in &cols[j] {
            ar.mul_add(&mut out[hi | (row << low) | lo], coef, v);
        }
    }
    (out, new_n)
}

/// Removes the bits in `mask` from `x`, keeping the others in order.
fn compact(x: usize, mask: usize, n: usize) -> usize {
    (0..n).rev().filter(|b| mask >> b & 1 == 0).fold(0, |acc, b| (acc << 1) | (x >> b & 1))
}
