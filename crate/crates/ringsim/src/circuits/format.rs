//! Circuit text format.
//!
//! ```text
//! ring Z 2
//! inputs 3
//! prep
//! gate CNOT 2 4
//! begin matrix 1            # <h_in> [<h_out>] [controls <c>]
//! 0 1
//! 1 0
//! end matrix
//! at 4
//! output 4
//! ```

use std::fmt::Write as _;

use super::Circuit;
use crate::error::{Error, Result};
use crate::gates::{standard_gate, Gate, MAX_BASE_ARITY};
use crate::text::{format_matrix, lines, parse_matrix_rows, parse_ring_line, Line};

/// A parsed circuit file, with the optional `registers n B m` directive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedCircuit {
    pub circuit: Circuit,
    pub registers: Option<[usize; 3]>,
}

/// Maps a builder error to a position on `line`, pointing at the offending
/// wire when there is one.
fn locate(line: &Line<'_>, first_wire: usize, e: Error) -> Error {
    let idx = match &e {
        Error::InvalidWire { wire, .. } => (first_wire..line.tokens.len())
            .find(|&i| line.tokens[i].1.parse::<usize>().ok() == Some(*wire))
            .unwrap_or(first_wire),
        _ => first_wire.min(line.tokens.len().saturating_sub(1)),
    };
    line.err(idx, e.to_string())
}

fn wires(line: &Line<'_>, from: usize) -> Result<Vec<usize>> {
    (from..line.tokens.len()).map(|i| line.int(i, "wire")).collect()
}

pub fn parse_circuit(text: &str) -> Result<ParsedCircuit> {
    let mut it = lines(text);
    let header = it.next().ok_or_else(|| Error::parse(1, 1, "empty circuit file"))?;
    let ring = parse_ring_line(&header)?;
    let mut circuit: Option<Circuit> = None;
    let mut registers = None;
    let mut output: Option<(usize, usize, usize)> = None;
    let mut last_line = header.no;
    while let Some(line) = it.next() {
        last_line = line.no;
        let kw = line.keyword();
        if kw == "inputs" {
            line.expect_len(2)?;
            if circuit.is_some() {
                return Err(line.err(0, "duplicate `inputs`"));
            }
            circuit = Some(Circuit::new(&ring, line.int(1, "input count")?));
            continue;
        }
        if kw == "ring" {
            return Err(line.err(0, "ring mismatch: second `ring` header"));
        }
        if kw == "registers" {
            line.expect_len(4)?;
            registers = Some([line.int(1, "n")?, line.int(2, "B")?, line.int(3, "m")?]);
            continue;
        }
        let c = circuit.as_mut().ok_or_else(|| line.err(0, "`inputs <n>` must come first"))?;
        match kw {
            "prep" => {
                line.expect_len(1)?;
                c.prep();
            }
            "gate" => {
                if line.tokens.len() < 2 {
                    return Err(line.err(1, "missing gate name"));
                }
                let name = line.tokens[1].1;
                let g = standard_gate(&ring, name).map_err(|e| line.err(1, e.to_string()))?;
                let w = wires(&line, 2)?;
                c.apply(g, &w).map_err(|e| locate(&line, 2, e))?;
            }
            "begin" => {
                if line.tokens.get(1).map(|t| t.1) != Some("matrix") {
                    return Err(line.err(1, "expected `begin matrix`"));
                }
                let h_in: usize = line.int(2, "arity")?;
                let mut idx = 3;
                let mut h_out = h_in;
                if line.tokens.get(idx).is_some_and(|t| t.1 != "controls") {
                    h_out = line.int(idx, "output arity")?;
                    idx += 1;
                }
                let mut controls = 0;
                if line.tokens.get(idx).is_some() {
                    if line.tokens[idx].1 != "controls" {
                        return Err(line.err(idx, "expected `controls <c>`"));
                    }
                    controls = line.int(idx + 1, "control count")?;
                    line.expect_len(idx + 2)?;
                }
                if h_in > MAX_BASE_ARITY || h_out > MAX_BASE_ARITY {
                    return Err(line.err(2, format!("arity above {MAX_BASE_ARITY}")));
                }
                let (m, last) = parse_matrix_rows(&ring, &mut it, 1 << h_out, 1 << h_in, line.no)?;
                let end = it.next().ok_or_else(|| Error::parse(last + 1, 1, "missing `end matrix`"))?;
                if end.tokens.iter().map(|t| t.1).collect::<Vec<_>>() != ["end", "matrix"] {
                    return Err(end.err(0, "expected `end matrix`"));
                }
                let at = it.next().ok_or_else(|| Error::parse(end.no + 1, 1, "missing `at`"))?;
                if at.keyword() != "at" {
                    return Err(at.err(0, "expected `at <wires>`"));
                }
                last_line = at.no;
                let g = Gate::from_matrix(&ring, "custom", m, controls)
                    .map_err(|e| line.err(0, e.to_string()))?;
                let w = wires(&at, 1)?;
                c.apply(g, &w).map_err(|e| locate(&at, 1, e))?;
            }
            "output" => {
                line.expect_len(2)?;
                output = Some((line.int(1, "wire")?, line.no, line.tokens[1].0));
            }
            other => return Err(line.err(0, format!("unknown directive `{other}`"))),
        }
    }
    let mut circuit =
        circuit.ok_or_else(|| Error::parse(last_line + 1, 1, "missing `inputs <n>`"))?;
    if let Some((w, no, col)) = output {
        circuit.set_output(w).map_err(|e| Error::parse(no, col, e.to_string()))?;
    }
    Ok(ParsedCircuit { circuit: circuit.normalized(), registers })
}

pub fn serialize_circuit(c: &Circuit) -> String {
    serialize_with_registers(c, None)
}

pub(crate) fn serialize_with_registers(c: &Circuit, registers: Option<[usize; 3]>) -> String {
    let mut out = format!("{}\ninputs {}\n", c.ring().header(), c.inputs());
    if let Some([n, b, m]) = registers {
        let _ = writeln!(out, "registers {n} {b} {m}");
    }
    for op in c.ops() {
        match op {
            super::Op::Prep => out.push_str("prep\n"),
            super::Op::Apply { gate, wires } => {
                let ws: Vec<String> = wires.iter().map(usize::to_string).collect();
                if gate.is_builtin() {
                    let _ = writeln!(out, "gate {} {}", gate.name(), ws.join(" "));
                } else {
                    let mut head = format!("begin matrix {}", gate.base_in_bits());
                    if !gate.is_square() {
                        let _ = write!(head, " {}", gate.base_out_bits());
                    }
                    if gate.controls() > 0 {
                        let _ = write!(head, " controls {}", gate.controls());
                    }
                    let _ = writeln!(out, "{head}");
                    out.push_str(&format_matrix(c.ring(), gate.base()));
                    let _ = writeln!(out, "end matrix\nat {}", ws.join(" "));
                }
            }
        }
    }
    let _ = writeln!(out, "output {}", c.output_wire());
    out
}
