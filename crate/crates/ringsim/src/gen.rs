//! Seeded random test vectors: elements, states, gates, circuits and CNFs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuits::Circuit;
use crate::compiler::Cnf;
use crate::error::Result;
use crate::gates::{standard_gate, Gate};
use crate::ring::{Matrix, RingElem, RingSpec};
use crate::states::ModalState;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Which validity class a random gate belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GateKind {
    Invertible,
    Affine,
    Unitary,
}

pub fn random_elem(rng: &mut impl Rng, ring: &RingSpec) -> RingElem {
    let k = ring.k() as i64;
    let coeffs: Vec<i64> = (0..ring.degree()).map(|_| rng.gen_range(0..k)).collect();
    ring.elem(&coeffs).expect("coefficients are in range")
}

pub fn random_unit(rng: &mut impl Rng, ring: &RingSpec) -> RingElem {
    loop {
        let a = random_elem(rng, ring);
        if ring.is_unit(a) {
            return a;
        }
    }
}

/// A random generic state: random amplitudes with at least one unit.
pub fn random_generic_state(rng: &mut impl Rng, ring: &RingSpec, n: usize) -> Result<ModalState> {
    let mut amps: Vec<RingElem> = (0..1usize << n).map(|_| random_elem(rng, ring)).collect();
    let i = rng.gen_range(0..amps.len());
    amps[i] = random_unit(rng, ring);
    ModalState::from_amps(ring, n, amps)
}

/// A random state whose amplitudes sum to 1.
pub fn random_l1_state(rng: &mut impl Rng, ring: &RingSpec, n: usize) -> Result<ModalState> {
    let mut amps: Vec<RingElem> = (0..1usize << n).map(|_| random_elem(rng, ring)).collect();
    let i = rng.gen_range(0..amps.len());
    amps[i] = ring.zero();
    let rest = amps.iter().fold(ring.zero(), |s, &a| ring.add(s, a));
    amps[i] = ring.sub(ring.one(), rest);
    ModalState::from_amps(ring, n, amps)
}

/// A random state with `⟨ψ|ψ⟩ = 1`: a random unitary circuit applied to a
/// random basis state.
pub fn random_l2_state(rng: &mut impl Rng, ring: &RingSpec, n: usize) -> Result<ModalState> {
    let x = crate::states::BitString::from_index(rng.gen_range(0..1usize << n), n);
    let mut c = Circuit::new(ring, n);
    for _ in 0..if n == 0 { 0 } else { 2 * n + 2 } {
        let h = rng.gen_range(1..=n.min(3));
        let g = random_unitary_gate(rng, ring, h)?;
        let wires = random_wires(rng, n, h);
        c.apply(g, &wires)?;
    }
    c.run(&x)
}

pub fn random_wires(rng: &mut impl Rng, n: usize, h: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (1..=n).collect();
    all.shuffle(rng);
    all.truncate(h);
    all
}

pub fn random_matrix(rng: &mut impl Rng, ring: &RingSpec, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| random_elem(rng, ring))
}

pub fn random_invertible_gate(rng: &mut impl Rng, ring: &RingSpec, h: usize) -> Result<Gate> {
    loop {
        let m = random_matrix(rng, ring, 1 << h, 1 << h);
        if m.inverse(ring).is_ok() {
            return Gate::custom(ring, m);
        }
    }
}

/// Random columns, each completed so that it sums to 1.
pub fn random_affine_gate(rng: &mut impl Rng, ring: &RingSpec, h: usize) -> Result<Gate> {
    let d = 1usize << h;
    let mut m = random_matrix(rng, ring, d, d);
    for j in 0..d {
        let i = rng.gen_range(0..d);
        m.set(i, j, ring.zero());
        let s = m.column_sums(ring)[j];
        m.set(i, j, ring.sub(ring.one(), s));
    }
    Gate::custom(ring, m)
}

pub fn random_invertible_affine_gate(rng: &mut impl Rng, ring: &RingSpec, h: usize) -> Result<Gate> {
    loop {
        let g = random_affine_gate(rng, ring, h)?;
        if g.classification().invertible {
            return Ok(g);
        }
    }
}

/// Pairs `(a, b)` with `a² + b² = 1`, excluding the trivial rotations.
fn rotation_pairs(ring: &RingSpec) -> Vec<(RingElem, RingElem)> {
    let k = ring.k() as i64;
    let mut out = Vec::new();
    for a in 0..k {
        for b in 1..k {
            let (ea, eb) = (ring.from_int(a), ring.from_int(b));
            if ring.add(ring.mul(ea, ea), ring.mul(eb, eb)) == ring.one() {
                out.push((ea, eb));
            }
        }
    }
    out
}

/// A product of random permutations, sign flips, 2×2 rotations and (for
/// `h = 3` over `Z_k`) the branching gate. Every factor is unitary.
pub fn random_unitary_gate(rng: &mut impl Rng, ring: &RingSpec, h: usize) -> Result<Gate> {
    let d = 1usize << h;
    let rotations = if ring.is_cyclic() { rotation_pairs(ring) } else { Vec::new() };
    let mut acc = Matrix::identity(ring, d);
    for _ in 0..3 {
        let factor = match rng.gen_range(0..4) {
            0 => {
                let mut perm: Vec<usize> = (0..d).collect();
                perm.shuffle(rng);
                Matrix::from_fn(d, d, |i, j| if perm[j] == i { ring.one() } else { ring.zero() })
            }
            1 => Matrix::from_fn(d, d, |i, j| match (i == j, rng.gen_bool(0.5)) {
                (true, true) => ring.one(),
                (true, false) => ring.from_int(-1),
                _ => ring.zero(),
            }),
            2 if !rotations.is_empty() => {
                let (a, b) = *rotations.choose(rng).expect("nonempty");
                let (p, q) = (rng.gen_range(0..d), rng.gen_range(0..d));
                let mut m = Matrix::identity(ring, d);
                if p != q {
                    m.set(p, p, a);
                    m.set(q, q, a);
                    m.set(p, q, ring.neg(b));
                    m.set(q, p, b);
                }
                m
            }
            3 if h == 3 && ring.is_cyclic() => standard_gate(ring, "K")?.base().clone(),
            _ => Matrix::identity(ring, d),
        };
        acc = factor.mul(ring, &acc)?;
    }
    Gate::custom(ring, acc)
}

pub fn random_gate(rng: &mut impl Rng, ring: &RingSpec, h: usize, kind: GateKind) -> Result<Gate> {
    match kind {
        GateKind::Invertible => random_invertible_gate(rng, ring, h),
        GateKind::Affine => random_affine_gate(rng, ring, h),
        GateKind::Unitary => random_unitary_gate(rng, ring, h),
    }
}

/// `gates` random gates of arity at most `max_h` on `n` wires.
pub fn random_circuit(
    rng: &mut impl Rng,
    ring: &RingSpec,
    n: usize,
    gates: usize,
    max_h: usize,
    kind: GateKind,
) -> Result<Circuit> {
    let mut c = Circuit::new(ring, n);
    for _ in 0..if n == 0 { 0 } else { gates } {
        let h = rng.gen_range(1..=max_h.min(n));
        let g = random_gate(rng, ring, h, kind)?;
        c.apply(g, &random_wires(rng, n, h))?;
    }
    Ok(c)
}

/// `clauses` clauses of `width` distinct variables with random signs.
pub fn random_cnf(rng: &mut impl Rng, vars: usize, clauses: usize, width: usize) -> Cnf {
    let width = width.min(vars);
    let cl = (0..clauses)
        .map(|_| {
            let mut vs: Vec<i32> = (1..=vars as i32).collect();
            vs.shuffle(rng);
            vs.truncate(width);
            vs.into_iter().map(|v| if rng.gen_bool(0.5) { v } else { -v }).collect()
        })
        .collect();
    Cnf::new(vars, cl).expect("literals are in range")
}
