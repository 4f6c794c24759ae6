//! Lowering of wide controlled gates with clean ancillas.

use std::sync::Arc;

use crate::circuits::Circuit;
use crate::error::{Error, Result};
use crate::gates::Gate;

/// Result of [`lower_to_small_gates`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lowered {
    pub circuit: Circuit,
    /// Width of the input circuit.
    pub original_width: usize,
    /// Ancilla pool size, appended after the original wires.
    pub pool: usize,
}

/// Emits Toffolis computing the AND of `controls` into `pool` wires; the last
/// pool wire used holds the result. Returns the gates in order.
fn and_ladder(controls: &[usize], pool: &[usize]) -> Vec<Vec<usize>> {
    let mut steps = vec![vec![controls[0], controls[1], pool[0]]];
    for (i, &c) in controls[2..].iter().enumerate() {
        steps.push(vec![c, pool[i], pool[i + 1]]);
    }
    steps
}

/// Replaces each `Λ^ℓX` with `ℓ >= 3` by a Toffoli ladder
/// (`2ℓ − 3` Toffolis, `ℓ − 2` ancillas), and each other gate wider than
/// `max_arity` with two or more controls by ANDing its controls into an
/// ancilla and applying the singly-controlled base. Ancillas come from one
/// shared pool, prepared after the original wires and returned to `|0⟩`.
pub fn lower_to_small_gates(c: &Circuit, max_arity: usize) -> Result<Lowered> {
    if !c.all_square() {
        return Err(Error::CannotLower("circuits with non-square gates".into()));
    }
    let c = c.normalized();
    let width = c.width();
    let toffoli = Arc::new(Gate::mcx(c.ring(), 2));
    // Pass 1: pool size.
    let mut pool = 0;
    for (g, _) in c.gates() {
        let l = g.controls();
        if g.is_mcx() && l >= 3 {
            pool = pool.max(l - 2);
        } else if g.arity() > max_arity {
            if l < 2 || 1 + g.base_in_bits() > max_arity {
                return Err(Error::CannotLower(g.name()));
            }
            pool = pool.max(l - 1);
        }
    }
    let anc: Vec<usize> = (width + 1..=width + pool).collect();
    let mut out = Circuit::new(c.ring(), c.inputs());
    out.preps(c.prep_count() + pool);
    for (g, wires) in c.gates() {
        let l = g.controls();
        if g.is_mcx() && l >= 3 {
            let controls = &wires[..l];
            let target = wires[l];
            let ladder = and_ladder(&controls[..l - 1], &anc);
            for step in &ladder {
                out.apply(toffoli.clone(), step)?;
            }
            out.apply(toffoli.clone(), &[controls[l - 1], anc[l - 3], target])?;
            for step in ladder.iter().rev() {
                out.apply(toffoli.clone(), step)?;
            }
        } else if g.arity() > max_arity {
            let ladder = and_ladder(&wires[..l], &anc);
            let flag = anc[l - 2];
            for step in &ladder {
                out.apply(toffoli.clone(), step)?;
            }
            let single = Gate::from_matrix(c.ring(), g.base_name(), g.base().clone(), 1)?;
            let mut ws = vec![flag];
            ws.extend_from_slice(&wires[l..]);
            out.apply(single, &ws)?;
            for step in ladder.iter().rev() {
                out.apply(toffoli.clone(), step)?;
            }
        } else {
            out.apply(g.clone(), wires)?;
        }
    }
    out.set_output(c.output_wire())?;
    Ok(Lowered { circuit: out, original_width: width, pool })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;
    use crate::states::{BitString, ModalState};

    #[test]
    fn lambda3_is_three_toffolis() {
        let z3 = RingSpec::cyclic(3).unwrap();
        let mut c = Circuit::new(&z3, 4);
        c.gate("CNX3", &[1, 2, 3, 4]).unwrap();
        let low = lower_to_small_gates(&c, 4).unwrap();
        assert_eq!(low.pool, 1);
        let names: Vec<String> = low.circuit.gates().map(|(g, _)| g.name()).collect();
        assert_eq!(names, ["TOFFOLI"; 3]);
        for x in 0..16 {
            let bits = BitString::from_index(x, 4);
            let expect = c.run(&bits).unwrap().tensor(&ModalState::basis(&z3, &"0".parse().unwrap()).unwrap()).unwrap();
            assert_eq!(low.circuit.run(&bits).unwrap(), expect);
        }
    }

    #[test]
    fn small_circuits_unchanged() {
        let z2 = RingSpec::cyclic(2).unwrap();
        let mut c = Circuit::new(&z2, 3);
        c.gate("TOFFOLI", &[1, 2, 3]).unwrap();
        c.gate("CSWAP", &[3, 1, 2]).unwrap();
        let low = lower_to_small_gates(&c, 4).unwrap();
        assert_eq!(low.pool, 0);
        assert_eq!(low.circuit.gates().count(), 2);
    }

    #[test]
    fn wide_controlled_k() {
        let z5 = RingSpec::cyclic(5).unwrap();
        let mut c = Circuit::new(&z5, 6);
        c.gate("CCCK", &[1, 2, 3, 4, 5, 6]).unwrap();
        let low = lower_to_small_gates(&c, 4).unwrap();
        assert_eq!(low.pool, 2);
        assert!(low.circuit.max_arity() <= 4);
        for x in [0b111000, 0b111101, 0b011111, 0b110110] {
            let bits = BitString::from_index(x, 6);
            let expect = c
                .run(&bits)
                .unwrap()
                .tensor(&ModalState::basis(&z5, &"00".parse().unwrap()).unwrap())
                .unwrap();
            assert_eq!(low.circuit.run(&bits).unwrap(), expect);
        }
    }
}
