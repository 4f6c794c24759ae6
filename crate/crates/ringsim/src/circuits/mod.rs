//! Circuits: op lists over a ring, exact execution, decisions, inversion and
//! path counting.

mod dd;
pub(crate) mod format;
pub(crate) mod kernel;
mod pathcount;
mod sparse;

use std::fmt;
use std::sync::Arc;

pub use dd::DdState;
pub use format::{parse_circuit, serialize_circuit, ParsedCircuit};
pub use pathcount::{path_count, path_counts, MAX_PATH_COUNT_BITS};
pub use sparse::{SparseState, DEFAULT_MAX_SUPPORT, MAX_SPARSE_BITS};

use crate::error::{Error, Result};
use crate::gates::{standard_gate, Gate};
use crate::ring::{RingElem, RingSpec};
use crate::states::{BitString, ModalState, StateSpace, DEFAULT_MAX_BITS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    /// Appends one `|0⟩` wire.
    Prep,
    /// A gate at 1-indexed wires; controls come first.
    Apply { gate: Arc<Gate>, wires: Vec<usize> },
}

/// Outcome of an exact decision.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Zero,
    One,
    NotNecessary,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Zero => "Zero",
            Decision::One => "One",
            Decision::NotNecessary => "NotNecessary",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    ring: RingSpec,
    inputs: usize,
    ops: Vec<Op>,
    width: usize,
    output: Option<usize>,
}

/// Gate count plus the number of base-matrix entries.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Cost {
    pub gates: usize,
    pub entries: usize,
}

impl Circuit {
    pub fn new(ring: &RingSpec, inputs: usize) -> Circuit {
        Circuit { ring: ring.clone(), inputs, ops: Vec::new(), width: inputs, output: None }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    /// Width after all ops.
    pub fn width(&self) -> usize {
        self.width
    }

    /// The explicit output wire, or the last wire.
    pub fn output_wire(&self) -> usize {
        self.output.unwrap_or(self.width)
    }

    pub fn explicit_output(&self) -> Option<usize> {
        self.output
    }

    pub fn set_output(&mut self, wire: usize) -> Result<()> {
        if wire == 0 || wire > self.width {
            return Err(Error::InvalidWire { wire, width: self.width });
        }
        self.output = Some(wire);
        Ok(())
    }

    /// Appends a `|0⟩` wire and returns its index.
    pub fn prep(&mut self) -> usize {
        self.ops.push(Op::Prep);
        self.width += 1;
        self.width
    }

    pub fn preps(&mut self, count: usize) -> Vec<usize> {
        (0..count).map(|_| self.prep()).collect()
    }

    pub fn apply(&mut self, gate: impl Into<Arc<Gate>>, wires: &[usize]) -> Result<()> {
        let gate = gate.into();
        self.ring.ensure_same(gate.ring())?;
        if wires.len() != gate.arity() {
            return Err(Error::WidthMismatch(format!(
                "{} takes {} wires, got {}",
                gate.name(),
                gate.arity(),
                wires.len()
            )));
        }
        if let Some(&w) = wires.iter().find(|&&w| w == 0 || w > self.width) {
            return Err(Error::InvalidWire { wire: w, width: self.width });
        }
        let mut sorted = wires.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::Precondition(format!("repeated wire in {wires:?}")));
        }
        self.width = self.width - gate.arity() + gate.out_arity();
        if self.output.is_some_and(|o| o > self.width) {
            self.output = None;
        }
        self.ops.push(Op::Apply { gate, wires: wires.to_vec() });
        Ok(())
    }

    /// Applies a built-in gate by name.
    pub fn gate(&mut self, name: &str, wires: &[usize]) -> Result<()> {
        let g = standard_gate(&self.ring, name)?;
        self.apply(g, wires)
    }

    /// Appends every op of `other`, which must take our current width as input.
    pub fn extend_ops(&mut self, other: &Circuit) -> Result<()> {
        if other.inputs != self.width {
            return Err(Error::WidthMismatch(format!(
                "appending a {}-input circuit at width {}",
                other.inputs, self.width
            )));
        }
        for op in &other.ops {
            match op {
                Op::Prep => {
                    self.prep();
                }
                Op::Apply { gate, wires } => self.apply(gate.clone(), wires)?,
            }
        }
        Ok(())
    }

    pub fn gates(&self) -> impl Iterator<Item = (&Arc<Gate>, &[usize])> {
        self.ops.iter().filter_map(|op| match op {
            Op::Apply { gate, wires } => Some((gate, wires.as_slice())),
            Op::Prep => None,
        })
    }

    pub fn prep_count(&self) -> usize {
        self.ops.iter().filter(|op| matches!(op, Op::Prep)).count()
    }

    pub fn all_square(&self) -> bool {
        self.gates().all(|(g, _)| g.is_square())
    }

    pub fn all_invertible(&self) -> bool {
        self.gates().all(|(g, _)| g.classification().invertible)
    }

    pub fn all_affine(&self) -> bool {
        self.gates().all(|(g, _)| g.classification().affine)
    }

    pub fn all_unitary(&self) -> bool {
        self.gates().all(|(g, _)| g.classification().unitary)
    }

    pub fn max_arity(&self) -> usize {
        self.gates().map(|(g, _)| g.arity()).max().unwrap_or(0)
    }

    pub fn cost(&self) -> Cost {
        self.gates().fold(Cost { gates: 0, entries: 0 }, |c, (g, _)| Cost {
            gates: c.gates + 1,
            entries: c.entries + g.base().rows() * g.base().cols(),
        })
    }

    /// State space used by [`Circuit::decide_default`]: l2 when every gate is
    /// unitary, l1 when every gate is affine, generic otherwise.
    pub fn default_space(&self) -> StateSpace {
        if self.all_unitary() {
            StateSpace::L2
        } else if self.all_affine() {
            StateSpace::L1
        } else {
            StateSpace::Generic
        }
    }

    /// Moves every prep to the front. Only square circuits are reordered:
    /// there a prep always creates the next wire index, so numbering is kept.
    pub fn normalized(&self) -> Circuit {
        if !self.all_square() {
            return self.clone();
        }
        let mut ops: Vec<Op> = self.ops.iter().filter(|op| matches!(op, Op::Prep)).cloned().collect();
        ops.extend(self.ops.iter().filter(|op| !matches!(op, Op::Prep)).cloned());
        Circuit { ops, ..self.clone() }
    }

    pub fn run(&self, x: &BitString) -> Result<ModalState> {
        self.run_state(&ModalState::basis(&self.ring, x)?)
    }

    pub fn run_state(&self, psi: &ModalState) -> Result<ModalState> {
        self.run_state_capped(psi, DEFAULT_MAX_BITS)
    }

    /// Runs with a width cap; consecutive preps expand the state at once.
    pub fn run_state_capped(&self, psi: &ModalState, cap: usize) -> Result<ModalState> {
        self.ring.ensure_same(psi.ring())?;
        if psi.n() != self.inputs {
            return Err(Error::WidthMismatch(format!(
                "circuit takes {} input bits, got {}",
                self.inputs,
                psi.n()
            )));
        }
        let peak = self.peak_width();
        if peak > cap {
            return Err(Error::WidthOverflow { bits: peak, cap });
        }
        let mut amps: Vec<RingElem> = psi.amps().to_vec();
        let mut n = psi.n();
        let mut pending = 0;
        for op in &self.ops {
            match op {
                Op::Prep => pending += 1,
                Op::Apply { gate, wires } => {
                    amps = kernel::prep(&self.ring, amps, pending);
                    n += pending;
                    pending = 0;
                    (amps, n) = kernel::apply(&self.ring, amps, n, gate, wires);
                }
            }
        }
        amps = kernel::prep(&self.ring, amps, pending);
        n += pending;
        ModalState::from_amps_capped(&self.ring, n, amps, cap)
    }

    /// Largest width reached during execution.
    pub fn peak_width(&self) -> usize {
        let mut w = self.inputs;
        let mut peak = w;
        for op in &self.ops {
            match op {
                Op::Prep => w += 1,
                Op::Apply { gate, .. } => w = w - gate.arity() + gate.out_arity(),
            }
            peak = peak.max(w);
        }
        peak
    }

    /// `One` iff the output wire is necessarily 1 in `space`, `Zero` iff
    /// necessarily 0.
    pub fn decide(&self, x: &BitString, space: StateSpace) -> Result<Decision> {
        let out = self.run(x)?;
        decide_state(&out, self.output_wire(), space)
    }

    pub fn decide_default(&self, x: &BitString) -> Result<Decision> {
        self.decide(x, self.default_space())
    }

    /// Reversed ops with each gate inverted.
    pub fn inverse(&self) -> Result<Circuit> {
        if self.ops.iter().any(|op| matches!(op, Op::Prep)) {
            return Err(Error::ContainsPrep);
        }
        let mut inv = Circuit::new(&self.ring, self.inputs);
        for (g, wires) in self.gates().collect::<Vec<_>>().into_iter().rev() {
            if !g.is_square() {
                return Err(Error::NotInvertible(g.name()));
            }
            inv.apply(g.inverse()?, wires)?;
        }
        inv.output = self.output;
        Ok(inv)
    }

    pub fn to_text(&self) -> String {
        serialize_circuit(self)
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        parse_circuit(text).map(|p| p.circuit)
    }
}

/// Decision on a final state's `wire`.
pub fn decide_state(state: &ModalState, wire: usize, space: StateSpace) -> Result<Decision> {
    let one: BitString = BitString(vec![true]);
    let zero: BitString = BitString(vec![false]);
    Ok(if state.is_necessary(&[wire], &one, space)? {
        Decision::One
    } else if state.is_necessary(&[wire], &zero, space)? {
        Decision::Zero
    } else {
        Decision::NotNecessary
    })
}
