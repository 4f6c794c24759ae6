//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use ringsim::compiler::{formula_to_reversible_with_inputs, Cnf, ReversiblePredicate};
use ringsim::gen::{random_cnf, TestRng};
use ringsim::{BitString, Circuit, Gate, Matrix, Op, RingElem, RingSpec};

use rand::Rng;

/// Kronecker product `a ⊗ b`.
pub fn kron(ring: &RingSpec, a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        ring.mul(a.get(i / b.rows(), j / b.cols()), b.get(i % b.rows(), j % b.cols()))
    })
}

/// Moves the bits of `wires` (in order) to the front, the rest after them.
fn reorder(x: usize, n: usize, wires: &[usize]) -> usize {
    let bit = |w: usize| (x >> (n - w)) & 1;
    let rest = (1..=n).filter(|w| !wires.contains(w));
    wires.iter().copied().chain(rest).fold(0, |acc, w| (acc << 1) | bit(w))
}

/// `Pᵀ (G ⊗ I) P` for a square gate at `wires` on `n` wires.
pub fn full_matrix(ring: &RingSpec, gate: &Gate, wires: &[usize], n: usize) -> Matrix {
    let g = gate.matrix().expect("small gate");
    let k = kron(ring, &g, &Matrix::identity(ring, 1 << (n - wires.len())));
    Matrix::from_fn(1 << n, 1 << n, |y, x| k.get(reorder(y, n, wires), reorder(x, n, wires)))
}

/// `|0⟩` appended as the new last wire: `I ⊗ |0⟩`.
fn prep_matrix(ring: &RingSpec, n: usize) -> Matrix {
    Matrix::from_fn(2 << n, 1 << n, |y, x| if y == x << 1 { ring.one() } else { ring.zero() })
}

/// The whole circuit as one matrix, built from Kronecker products.
pub fn circuit_matrix(c: &Circuit) -> Matrix {
    let ring = c.ring();
    let mut n = c.inputs();
    let mut acc = Matrix::identity(ring, 1 << n);
    for op in c.ops() {
        let step = match op {
            Op::Prep => {
                n += 1;
                prep_matrix(ring, n - 1)
            }
            Op::Apply { gate, wires } => full_matrix(ring, gate, wires, n),
        };
        acc = step.mul(ring, &acc).unwrap();
    }
    acc
}

/// Integer path counts `N(x, T, y)`: the product of the lifted full matrices.
pub fn lifted_path_matrix(c: &Circuit) -> Vec<Vec<u128>> {
    let ring = c.ring();
    let mut n = c.inputs();
    let dim = 1usize << n;
    let mut acc: Vec<Vec<u128>> = (0..dim).map(|i| (0..dim).map(|j| (i == j) as u128).collect()).collect();
    for op in c.ops() {
        let step = match op {
            Op::Prep => {
                n += 1;
                prep_matrix(ring, n - 1)
            }
            Op::Apply { gate, wires } => full_matrix(ring, gate, wires, n),
        };
        let cols = acc[0].len();
        acc = (0..step.rows())
            .map(|i| {
                (0..cols)
                    .map(|j| (0..step.cols()).map(|l| lift(step.get(i, l)) * acc[l][j]).sum())
                    .collect()
            })
            .collect();
    }
    acc
}

pub fn lift(a: RingElem) -> u128 {
    a.raw()[0] as u128
}

pub fn bits(s: &str) -> BitString {
    s.parse().unwrap()
}

pub fn zeros(n: usize) -> BitString {
    BitString(vec![false; n])
}

pub fn ones(n: usize) -> BitString {
    BitString(vec![true; n])
}

/// `f(x, b)` straight from the formula.
pub fn brute_count(cnf: &Cnf, x: &BitString) -> u64 {
    let n = x.len();
    let b = cnf.vars() - n;
    (0..1usize << b)
        .filter(|&i| {
            let mut a = x.0.clone();
            a.extend(BitString::from_index(i, b).0);
            cnf.eval(&a)
        })
        .count() as u64
}

/// A predicate with its formula, registers and the inputs that satisfy the
/// `count mod k ∈ {0, 1}` promise.
pub struct Instance {
    pub cnf: Cnf,
    pub pred: ReversiblePredicate,
    pub promise_inputs: Vec<(BitString, u64)>,
}

/// Random formulas on `n + B` variables whose compiled predicate has `m`
/// within bounds; keeps those with at least one promise input for `k`.
pub fn random_instance(rng: &mut TestRng, k: u64, n: usize, b: usize, max_m: usize) -> Instance {
    loop {
        let vars = n + b;
        let non_unit = rng.gen_range(0..max_m);
        let units = rng.gen_range(0..=2usize.min(vars));
        let width = rng.gen_range(2..=3).min(vars);
        let mut clauses = if vars >= 2 { random_cnf(rng, vars, non_unit, width).clauses().to_vec() } else { Vec::new() };
        clauses.extend(random_cnf(rng, vars, units, 1).clauses().iter().cloned());
        let cnf = Cnf::new(vars, clauses).unwrap();
        let pred = formula_to_reversible_with_inputs(&cnf, n).unwrap();
        if pred.m() > max_m || pred.b() != b {
            continue;
        }
        let promise_inputs: Vec<(BitString, u64)> = (0..1usize << n)
            .map(|i| BitString::from_index(i, n))
            .map(|x| {
                let c = brute_count(&cnf, &x);
                (x, c)
            })
            .filter(|(_, c)| c % k <= 1)
            .collect();
        if !promise_inputs.is_empty() {
            return Instance { cnf, pred, promise_inputs };
        }
    }
}

/// A random circuit on `n` inputs and `m` preps that decides every input
/// exactly: a permutation prefix fixes the output, then invertible dense
/// gates act on other wires. Candidates that do not decide are rejected.
pub fn exact_invertible_circuit(rng: &mut TestRng, ring: &RingSpec, n: usize, m: usize) -> Circuit {
    use ringsim::gen::{random_invertible_gate, random_wires};
    use ringsim::Decision;
    let w = n + m;
    loop {
        let mut c = Circuit::new(ring, n);
        c.preps(m);
        if rng.gen_bool(0.3) {
            let h = rng.gen_range(1..=w.min(2));
            let g = random_invertible_gate(rng, ring, h).unwrap();
            c.apply(g, &random_wires(rng, w, h)).unwrap();
        }
        for _ in 0..rng.gen_range(2..=5) {
            let (name, h) = [("NOT", 1), ("CNOT", 2), ("TOFFOLI", 3), ("SWAP", 2)][rng.gen_range(0..4)];
            if h <= w {
                c.gate(name, &random_wires(rng, w, h)).unwrap();
            }
        }
        let out = rng.gen_range(1..=w);
        let others: Vec<usize> = (1..=w).filter(|&v| v != out).collect();
        for _ in 0..rng.gen_range(1..=3) {
            if others.is_empty() {
                break;
            }
            let h = rng.gen_range(1..=others.len().min(2));
            let g = random_invertible_gate(rng, ring, h).unwrap();
            let pick: Vec<usize> = random_wires(rng, others.len(), h).iter().map(|&i| others[i - 1]).collect();
            c.apply(g, &pick).unwrap();
        }
        c.set_output(out).unwrap();
        let exact = (0..1usize << n)
            .all(|x| c.decide_default(&BitString::from_index(x, n)).unwrap() != Decision::NotNecessary);
        if exact {
            return c;
        }
    }
}
