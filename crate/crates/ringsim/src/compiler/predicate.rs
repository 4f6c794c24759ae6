//! Reversible predicates `R(x, b, 0^m) = (x, b, w(x, b), f(x, b))`.

use crate::circuits::{parse_circuit, Circuit, Op};
use crate::error::{Error, Result};
use crate::ring::RingSpec;

/// A permutation-gate circuit on `n + B + m` wires: registers `X`, `B`, `W`.
/// The last wire carries the output bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversiblePredicate {
    n: usize,
    b: usize,
    m: usize,
    circuit: Circuit,
}

impl ReversiblePredicate {
    pub fn new(n: usize, b: usize, m: usize, mut circuit: Circuit) -> Result<ReversiblePredicate> {
        if m == 0 {
            return Err(Error::Precondition("the work register needs the output bit (m >= 1)".into()));
        }
        let width = n + b + m;
        if circuit.inputs() != width || circuit.width() != width {
            return Err(Error::WidthMismatch(format!(
                "registers need {width} wires, circuit has {} -> {}",
                circuit.inputs(),
                circuit.width()
            )));
        }
        if circuit.ops().iter().any(|op| matches!(op, Op::Prep)) {
            return Err(Error::ContainsPrep);
        }
        if let Some((g, _)) = circuit.gates().find(|(g, _)| g.permutation().is_none()) {
            return Err(Error::NotPermutation(g.name()));
        }
        if circuit.explicit_output().is_some_and(|o| o != width) {
            return Err(Error::Precondition("the output must be the last wire".into()));
        }
        circuit.set_output(width).ok();
        Ok(ReversiblePredicate { n, b, m, circuit })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn width(&self) -> usize {
        self.n + self.b + self.m
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn ring(&self) -> &RingSpec {
        self.circuit.ring()
    }

    /// Classical run on `(x, b, 0^m)`; returns every final bit.
    pub fn eval_bits(&self, x: &[bool], b: &[bool]) -> Vec<bool> {
        assert_eq!((x.len(), b.len()), (self.n, self.b), "register sizes");
        let mut bits: Vec<bool> = x.iter().chain(b).copied().chain(std::iter::repeat(false).take(self.m)).collect();
        for (g, wires) in self.circuit.gates() {
            let perm = g.permutation().expect("checked at construction");
            let c = g.controls();
            if !wires[..c].iter().all(|&w| bits[w - 1]) {
                continue;
            }
            let targets = &wires[c..];
            let h = targets.len();
            let j = targets.iter().fold(0usize, |acc, &w| (acc << 1) | bits[w - 1] as usize);
            let i = perm[j];
            for (pos, &w) in targets.iter().enumerate() {
                bits[w - 1] = (i >> (h - 1 - pos)) & 1 == 1;
            }
        }
        bits
    }

    /// `f(x, b)`.
    pub fn eval(&self, x: &[bool], b: &[bool]) -> bool {
        *self.eval_bits(x, b).last().expect("m >= 1")
    }

    /// The same gates over another ring.
    pub fn retarget(&self, ring: &RingSpec) -> Result<ReversiblePredicate> {
        let mut c = Circuit::new(ring, self.width());
        for (g, wires) in self.circuit.gates() {
            c.apply(g.retarget(ring)?, wires)?;
        }
        ReversiblePredicate::new(self.n, self.b, self.m, c)
    }

    pub fn to_text(&self) -> String {
        crate::circuits::format::serialize_with_registers(&self.circuit, Some([self.n, self.b, self.m]))
    }

    /// Circuit text with a `registers n B m` line.
    pub fn parse(text: &str) -> Result<ReversiblePredicate> {
        let p = parse_circuit(text)?;
        let [n, b, m] = p
            .registers
            .ok_or_else(|| Error::parse(1, 1, "predicate files need `registers <n> <B> <m>`"))?;
        ReversiblePredicate::new(n, b, m, p.circuit).map_err(|e| Error::parse(1, 1, e.to_string()))
    }
}

/// The `B`-bit string with index `i`, most significant first.
pub(crate) fn branch(i: usize, b: usize) -> Vec<bool> {
    (0..b).map(|j| (i >> (b - 1 - j)) & 1 == 1).collect()
}
