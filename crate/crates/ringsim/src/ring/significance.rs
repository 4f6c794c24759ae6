//! Significance functions on `Z_{p^r}`.

use num_rational::Ratio;

use super::{factorize, RingElem, RingSpec};
use crate::error::{Error, Result};

/// An exact significance value: 0 or `1/p^t`.
pub type SignificanceValue = Ratio<u64>;

/// `σ_k(s) = 1/p^t` where `p^t` exactly divides `s`; `σ_k(0) = 0`.
pub fn canonical_significance(ring: &RingSpec, s: RingElem) -> Result<SignificanceValue> {
    let (p, r) = match (ring.is_cyclic(), ring.prime_power()) {
        (true, Some(pr)) => pr,
        _ => return Err(Error::UnsupportedRing(format!("{ring} is not Z_(p^r)"))),
    };
    if s.is_zero() {
        return Ok(Ratio::from_integer(0));
    }
    let t = ring.valuation(s).unwrap_or(r);
    Ok(Ratio::new(1, p.pow(t)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignificanceViolation {
    ZeroNotZero,
    OneNotOne,
    /// `σ(u) <= σ(t)` but `σ(su) > σ(st)`.
    NotMonotone { s: u64, t: u64, u: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignificanceCheck {
    pub valid: bool,
    /// Smallest `τ` with `σ(p^τ) = 0`, when valid.
    pub threshold: Option<u32>,
    /// Whether the table is a nondecreasing function of `σ_{p^τ}(s mod p^τ)`.
    pub factors_through_canonical: bool,
    pub violation: Option<SignificanceViolation>,
}

impl SignificanceCheck {
    fn invalid(v: SignificanceViolation) -> Self {
        SignificanceCheck {
            valid: false,
            threshold: None,
            factors_through_canonical: false,
            violation: Some(v),
        }
    }
}

/// Exhaustively checks the significance-function axioms for a table on `Z_k`.
pub fn check_significance_table(k: u64, table: &[SignificanceValue]) -> Result<SignificanceCheck> {
    let (p, r) = match factorize(k).as_slice() {
        [(p, r)] => (*p as u64, *r),
        _ => return Err(Error::UnsupportedRing(format!("Z_{k} is not a prime-power ring"))),
    };
    if table.len() as u64 != k {
        return Err(Error::DimensionMismatch(format!(
            "table has {} entries, expected {k}",
            table.len()
        )));
    }
    let zero = Ratio::from_integer(0);
    if table[0] != zero {
        return Ok(SignificanceCheck::invalid(SignificanceViolation::ZeroNotZero));
    }
    if table[1 % k as usize] != Ratio::from_integer(1) {
        return Ok(SignificanceCheck::invalid(SignificanceViolation::OneNotOne));
    }
    for t in 0..k {
        for u in 0..k {
            if table[u as usize] > table[t as usize] {
                continue;
            }
            for s in 0..k {
                if table[(s * u % k) as usize] > table[(s * t % k) as usize] {
                    return Ok(SignificanceCheck::invalid(SignificanceViolation::NotMonotone {
                        s,
                        t,
                        u,
                    }));
                }
            }
        }
    }
    let tau = (1..=r).find(|&t| table[(p.pow(t) % k) as usize] == zero).unwrap_or(r);
    // Factoring: σ is constant on each valuation class below τ, zero from τ
    // on, and nonincreasing in the valuation.
    let valuation = |s: u64| -> u32 {
        let mut s = s;
        let mut v = 0;
        while s != 0 && s % p == 0 {
            s /= p;
            v += 1;
        }
        if s == 0 {
            r
        } else {
            v
        }
    };
    let mut class_value: Vec<Option<SignificanceValue>> = vec![None; tau as usize + 1];
    let mut factors = true;
    for s in 0..k {
        let v = valuation(s).min(tau) as usize;
        let val = table[s as usize];
        match class_value[v] {
            None => class_value[v] = Some(val),
            Some(prev) if prev != val => factors = false,
            _ => {}
        }
    }
    factors &= class_value[tau as usize].map_or(true, |v| v == zero);
    factors &= class_value.windows(2).all(|w| match (w[0], w[1]) {
        (Some(a), Some(b)) => a >= b,
        _ => true,
    });
    Ok(SignificanceCheck {
        valid: true,
        threshold: Some(tau),
        factors_through_canonical: factors,
        violation: None,
    })
}
