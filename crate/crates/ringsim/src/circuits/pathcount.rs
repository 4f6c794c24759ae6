//! Branch counting over the nonnegative integers.

use num_bigint::BigUint;

use super::kernel::{self, Lift};
use super::{Circuit, Op};
use crate::error::{Error, Result};
use crate::states::BitString;

/// Width cap for the integer vector.
pub const MAX_PATH_COUNT_BITS: usize = 18;

/// `N(x, T, y)` for every output string `y`, indexed by `y`. Gate entries are
/// lifted to their residues in `[0, k)`.
pub fn path_counts(c: &Circuit, x: &BitString) -> Result<Vec<BigUint>> {
    if !c.ring().is_cyclic() {
        return Err(Error::UnsupportedRing(format!("path counting needs Z_k, not {}", c.ring())));
    }
    if x.len() != c.inputs() {
        return Err(Error::WidthMismatch(format!(
            "circuit takes {} input bits, got {}",
            c.inputs(),
            x.len()
        )));
    }
    let peak = c.peak_width();
    if peak > MAX_PATH_COUNT_BITS {
        return Err(Error::WidthOverflow { bits: peak, cap: MAX_PATH_COUNT_BITS });
    }
    let mut v = vec![BigUint::default(); 1 << x.len()];
    v[x.index()] = BigUint::from(1u8);
    let mut n = x.len();
    for op in c.ops() {
        match op {
            Op::Prep => {
                v = kernel::prep(&Lift, v, 1);
                n += 1;
            }
            Op::Apply { gate, wires } => (v, n) = kernel::apply(&Lift, v, n, gate, wires),
        }
    }
    Ok(v)
}

pub fn path_count(c: &Circuit, x: &BitString, y: &BitString) -> Result<BigUint> {
    let counts = path_counts(c, x)?;
    if y.len() != c.width() {
        return Err(Error::WidthMismatch(format!("output has {} bits, got {}", c.width(), y.len())));
    }
    Ok(counts[y.index()].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn k_over_z2_branches() {
        let z2 = RingSpec::cyclic(2).unwrap();
        let mut c = Circuit::new(&z2, 3);
        c.gate("K", &[1, 2, 3]).unwrap();
        let x: BitString = "000".parse().unwrap();
        let one = BigUint::from(1u8);
        assert_eq!(path_count(&c, &x, &"011".parse().unwrap()).unwrap(), one);
        assert_eq!(path_count(&c, &x, &"111".parse().unwrap()).unwrap(), one);
    }

    #[test]
    fn permutations_have_one_branch() {
        let z3 = RingSpec::cyclic(3).unwrap();
        let mut c = Circuit::new(&z3, 2);
        c.gate("CNOT", &[1, 2]).unwrap();
        c.gate("SWAP", &[1, 2]).unwrap();
        let counts = path_counts(&c, &"10".parse().unwrap()).unwrap();
        let ones: Vec<usize> = (0..4).filter(|&y| counts[y] == BigUint::from(1u8)).collect();
        assert_eq!(ones, vec![0b11]);
        assert_eq!(counts.iter().filter(|v| **v == BigUint::default()).count(), 3);
    }
}
