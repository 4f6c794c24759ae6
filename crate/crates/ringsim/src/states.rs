//! Ring-valued distributions over bit strings.
//!
//! Amplitude `i` belongs to the string whose binary value is `i`; wire 1 is
//! the most significant bit.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};

/// Default cap on dense state width.
pub const DEFAULT_MAX_BITS: usize = 24;

/// A string of classical bits, written most significant first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(pub Vec<bool>);

impl BitString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn from_index(index: usize, n: usize) -> BitString {
        BitString((0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect())
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        BitString(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<BitString> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidBits(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Which state space a necessity question is asked in.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum StateSpace {
    Generic,
    L1,
    L2,
}

impl FromStr for StateSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<StateSpace> {
        match s {
            "generic" => Ok(StateSpace::Generic),
            "l1" => Ok(StateSpace::L1),
            "l2" => Ok(StateSpace::L2),
            _ => Err(Error::Precondition(format!("unknown state space `{s}`"))),
        }
    }
}

impl fmt::Display for StateSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateSpace::Generic => "generic",
            StateSpace::L1 => "l1",
            StateSpace::L2 => "l2",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub generic: bool,
    pub l1: bool,
    pub l2: bool,
}

impl Membership {
    pub fn contains(&self, space: StateSpace) -> bool {
        match space {
            StateSpace::Generic => self.generic,
            StateSpace::L1 => self.l1,
            StateSpace::L2 => self.l2,
        }
    }
}

/// A dense distribution of `2^n` ring elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModalState {
    ring: RingSpec,
    n: usize,
    amps: Vec<RingElem>,
}

impl ModalState {
    pub fn zero(ring: &RingSpec, n: usize) -> Result<ModalState> {
        Self::zero_capped(ring, n, DEFAULT_MAX_BITS)
    }

    pub fn zero_capped(ring: &RingSpec, n: usize, cap: usize) -> Result<ModalState> {
        if n > cap {
            return Err(Error::WidthOverflow { bits: n, cap });
        }
        Ok(ModalState { ring: ring.clone(), n, amps: vec![RingElem::ZERO; 1 << n] })
    }

    pub fn basis(ring: &RingSpec, x: &BitString) -> Result<ModalState> {
        let mut s = ModalState::zero(ring, x.len())?;
        s.amps[x.index()] = ring.one();
        Ok(s)
    }

    pub fn from_amps(ring: &RingSpec, n: usize, amps: Vec<RingElem>) -> Result<ModalState> {
        if amps.len() != 1 << n {
            return Err(Error::WidthMismatch(format!(
                "{} amplitudes for {n} bits",
                amps.len()
            )));
        }
        Ok(ModalState { ring: ring.clone(), n, amps })
    }

    pub fn from_amps_capped(ring: &RingSpec, n: usize, amps: Vec<RingElem>, cap: usize) -> Result<ModalState> {
        if n > cap {
            return Err(Error::WidthOverflow { bits: n, cap });
        }
        Self::from_amps(ring, n, amps)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[RingElem] {
        &self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut Vec<RingElem> {
        &mut self.amps
    }

    pub fn amp(&self, x: &BitString) -> RingElem {
        self.amps[x.index()]
    }

    pub fn set_amp(&mut self, x: &BitString, v: RingElem) {
        self.amps[x.index()] = v;
    }

    /// Indices with nonzero amplitude.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.amps.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, _)| i)
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(RingElem::is_zero)
    }

    /// `(self ⊗ other)_{xy} = self_x · other_y`.
    pub fn tensor(&self, other: &ModalState) -> Result<ModalState> {
        self.ring.ensure_same(&other.ring)?;
        let n = self.n + other.n;
        if n > DEFAULT_MAX_BITS {
            return Err(Error::WidthOverflow { bits: n, cap: DEFAULT_MAX_BITS });
        }
        let mut amps = Vec::with_capacity(1 << n);
        for &a in &self.amps {
            amps.extend(other.amps.iter().map(|&b| self.ring.mul(a, b)));
        }
        Ok(ModalState { ring: self.ring.clone(), n, amps })
    }

    /// `Σ_x conj(self_x) · other_x`.
    pub fn inner_product(&self, other: &ModalState) -> Result<RingElem> {
        self.ring.ensure_same(&other.ring)?;
        if self.n != other.n {
            return Err(Error::WidthMismatch(format!("{} vs {} bits", self.n, other.n)));
        }
        let r = &self.ring;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(r.zero(), |acc, (&a, &b)| r.mul_add(acc, r.conj(a), b)))
    }

    pub fn norm(&self) -> RingElem {
        self.inner_product(self).expect("same ring and width")
    }

    pub fn sum(&self) -> RingElem {
        self.amps.iter().fold(self.ring.zero(), |acc, &a| self.ring.add(acc, a))
    }

    pub fn add(&self, other: &ModalState) -> Result<ModalState> {
        self.ring.ensure_same(&other.ring)?;
        if self.n != other.n {
            return Err(Error::WidthMismatch(format!("{} vs {} bits", self.n, other.n)));
        }
        let amps = self.amps.iter().zip(&other.amps).map(|(&a, &b)| self.ring.add(a, b)).collect();
        Ok(ModalState { ring: self.ring.clone(), n: self.n, amps })
    }

    pub fn scale(&self, s: RingElem) -> ModalState {
        let amps = self.amps.iter().map(|&a| self.ring.mul(s, a)).collect();
        ModalState { ring: self.ring.clone(), n: self.n, amps }
    }

    fn check_positions(&self, positions: &[usize], a: &BitString) -> Result<()> {
        if positions.len() != a.len() {
            return Err(Error::WidthMismatch(format!(
                "{} positions but {} bits",
                positions.len(),
                a.len()
            )));
        }
        match positions.iter().find(|&&p| p == 0 || p > self.n) {
            Some(&p) => Err(Error::InvalidWire { wire: p, width: self.n }),
            None => Ok(()),
        }
    }

    fn restricts_to(&self, x: usize, positions: &[usize], a: &BitString) -> bool {
        positions.iter().zip(&a.0).all(|(&p, &bit)| ((x >> (self.n - p)) & 1 == 1) == bit)
    }

    /// Some support string restricts to `a` on the 1-indexed `positions`.
    pub fn is_possible(&self, positions: &[usize], a: &BitString) -> Result<bool> {
        self.check_positions(positions, a)?;
        Ok(self.support().any(|x| self.restricts_to(x, positions, a)))
    }

    /// The state lies in `space` and every support string restricts to `a`.
    pub fn is_necessary(&self, positions: &[usize], a: &BitString, space: StateSpace) -> Result<bool> {
        self.check_positions(positions, a)?;
        Ok(self.in_space(space) && self.support().all(|x| self.restricts_to(x, positions, a)))
    }

    pub fn in_space(&self, space: StateSpace) -> bool {
        match space {
            StateSpace::Generic => self.is_generic(),
            StateSpace::L1 => self.sum() == self.ring.one(),
            StateSpace::L2 => self.norm() == self.ring.one(),
        }
    }

    fn is_generic(&self) -> bool {
        if self.ring.is_cyclic() {
            let k = self.ring.k();
            let g = self.amps.iter().fold(k, |g, a| g.gcd(&(a.0[0] as u64)));
            g == 1
        } else {
            self.amps.iter().any(|&a| self.ring.is_unit(a))
        }
    }

    pub fn membership(&self) -> Membership {
        Membership {
            generic: self.is_generic(),
            l1: self.in_space(StateSpace::L1),
            l2: self.in_space(StateSpace::L2),
        }
    }

    /// The state file text: header, `bits n`, then nonzero amplitudes. The
    /// empty string is written `-`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\nbits {}\n", self.ring.header(), self.n);
        for x in self.support() {
            let label = match self.n {
                0 => "-".to_string(),
                n => BitString::from_index(x, n).to_string(),
            };
            out.push_str(&format!("{label} {}\n", self.ring.format_elem(self.amps[x])));
        }
        out
    }

    pub fn parse(text: &str) -> Result<ModalState> {
        crate::text::parse_state(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn basis_examples() {
        let z5 = RingSpec::cyclic(5).unwrap();
        let s = ModalState::basis(&z5, &bits("10")).unwrap();
        let ints: Vec<u32> = s.amps().iter().map(|a| a.raw()[0]).collect();
        assert_eq!(ints, vec![0, 0, 1, 0]);
        let z2 = RingSpec::cyclic(2).unwrap();
        let empty = ModalState::basis(&z2, &bits("")).unwrap();
        assert_eq!(empty.amps(), &[z2.one()]);
        let z3 = RingSpec::cyclic(3).unwrap();
        assert_eq!(ModalState::basis(&z3, &bits("011")).unwrap().amps()[3], z3.one());
    }

    #[test]
    fn tensor_examples() {
        let z3 = RingSpec::cyclic(3).unwrap();
        let zero = ModalState::basis(&z3, &bits("0")).unwrap();
        let one = ModalState::basis(&z3, &bits("1")).unwrap();
        assert_eq!(zero.tensor(&one).unwrap(), ModalState::basis(&z3, &bits("01")).unwrap());
        let plus = zero.add(&one).unwrap();
        let t = plus.tensor(&ModalState::basis(&z3, &bits("11")).unwrap()).unwrap();
        assert_eq!(t.support().collect::<Vec<_>>(), vec![3, 7]);
    }

    #[test]
    fn inner_products() {
        let z5 = RingSpec::cyclic(5).unwrap();
        let x = ModalState::basis(&z5, &bits("01")).unwrap();
        let y = ModalState::basis(&z5, &bits("10")).unwrap();
        assert_eq!(x.inner_product(&y).unwrap(), z5.zero());
        assert_eq!(x.inner_product(&x).unwrap(), z5.one());
    }

    #[test]
    fn possibility_and_necessity() {
        let z3 = RingSpec::cyclic(3).unwrap();
        let psi = ModalState::basis(&z3, &bits("01"))
            .unwrap()
            .add(&ModalState::basis(&z3, &bits("11")).unwrap())
            .unwrap();
        assert!(psi.is_possible(&[2], &bits("1")).unwrap());
        assert!(!psi.is_possible(&[2], &bits("0")).unwrap());
        let zero = ModalState::zero(&z3, 2).unwrap();
        assert!(!zero.is_possible(&[1], &bits("0")).unwrap());
        assert!(!zero.is_possible(&[1], &bits("1")).unwrap());

        let mixed = ModalState::basis(&z3, &bits("01"))
            .unwrap()
            .add(&ModalState::basis(&z3, &bits("10")).unwrap())
            .unwrap();
        for a in ["0", "1"] {
            assert!(!mixed.is_necessary(&[1], &bits(a), StateSpace::Generic).unwrap());
        }

        let z9 = RingSpec::cyclic(9).unwrap();
        let three = ModalState::basis(&z9, &bits("0")).unwrap().scale(z9.from_int(3));
        assert!(!three.is_necessary(&[1], &bits("0"), StateSpace::Generic).unwrap());
    }

    #[test]
    fn membership_examples() {
        let z5 = RingSpec::cyclic(5).unwrap();
        let half = z5.from_int(3);
        let bell = ModalState::basis(&z5, &bits("00"))
            .unwrap()
            .add(&ModalState::basis(&z5, &bits("11")).unwrap())
            .unwrap()
            .scale(half);
        assert!(bell.membership().l1);
        let anti = ModalState::basis(&z5, &bits("01"))
            .unwrap()
            .add(&ModalState::basis(&z5, &bits("10")).unwrap().scale(z5.from_int(-1)))
            .unwrap();
        assert_eq!(anti.membership(), Membership { generic: true, l1: false, l2: false });
    }
}
