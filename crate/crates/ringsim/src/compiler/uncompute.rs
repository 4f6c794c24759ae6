//! The `C⁻¹ · CNOT · C` wrapper.

use crate::circuits::Circuit;
use crate::error::{Error, Result};

/// Runs `c`, copies its output onto one fresh wire, then runs `c⁻¹`. On every
/// input that `c` decides exactly the result is `|x⟩|0^m⟩|L(x)⟩`.
pub fn uncompute_wrap(c: &Circuit) -> Result<Circuit> {
    let c = c.normalized();
    if let Some((g, _)) = c.gates().find(|(g, _)| !g.is_square() || !g.classification().invertible) {
        return Err(Error::NotInvertible(g.name()));
    }
    let preps = c.prep_count();
    let mut body = Circuit::new(c.ring(), c.inputs() + preps);
    for (g, w) in c.gates() {
        body.apply(g.clone(), w)?;
    }
    let inverse = body.inverse()?;
    let mut out = Circuit::new(c.ring(), c.inputs());
    out.preps(preps);
    let fresh = out.prep();
    for (g, w) in body.gates() {
        out.apply(g.clone(), w)?;
    }
    out.gate("CNOT", &[c.output_wire(), fresh])?;
    for (g, w) in inverse.gates() {
        out.apply(g.clone(), w)?;
    }
    out.set_output(fresh)?;
    Ok(out)
}
