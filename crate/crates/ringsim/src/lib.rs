//! Exact simulation of ring-valued ("modal") circuits over `Z_k` and Galois
//! rings, with the constructions that relate them to counting classes.

pub mod circuits;
pub mod compiler;
pub mod error;
pub mod gates;
pub mod gen;
pub mod oracle;
pub mod ring;
pub mod states;
mod text;

pub use circuits::{Circuit, Decision, Op};
pub use error::{Error, Result};
pub use gates::{standard_gate, Gate, GateClassification};
pub use ring::{Matrix, RingElem, RingSpec};
pub use states::{BitString, ModalState, StateSpace};
pub use text::{format_gate, parse_gate};
