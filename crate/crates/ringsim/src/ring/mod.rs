//! Cyclic rings `Z_k` and Galois rings `GR(p^r, p^{re})`.
//!
//! Elements are stored as fixed arrays of canonical residues; the owning
//! [`RingSpec`] knows how many of them are meaningful.

mod matrix;
mod octonion;
mod poly;
mod significance;

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

pub use matrix::Matrix;
pub use octonion::{four_squares, octonion_conj, octonion_mul, octonion_norm};
pub use significance::{
    canonical_significance, check_significance_table, SignificanceCheck, SignificanceValue,
    SignificanceViolation,
};

/// Largest supported characteristic.
pub const MAX_MODULUS: u64 = 1 << 31;
/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 4;

/// An element `a0 + a1 τ + … + a_{e-1} τ^{e-1}`; unused slots are zero.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem(pub(crate) [u32; MAX_DEGREE]);

impl RingElem {
    pub const ZERO: RingElem = RingElem([0; MAX_DEGREE]);

    pub fn is_zero(&self) -> bool {
        self.0 == [0; MAX_DEGREE]
    }

    /// All coefficient slots, including the unused ones.
    pub fn raw(&self) -> [u32; MAX_DEGREE] {
        self.0
    }
}

/// The self-inverse automorphism used for adjoints and inner products.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Conjugation {
    Trivial,
    /// `τ ↦ tau_bar`, the second root of the modulus polynomial.
    Quadratic { tau_bar: RingElem },
}

/// A cyclic ring `Z_k` (`e = 1`) or a Galois ring `Z_{p^r}[τ]/f(τ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    k: u32,
    factors: Vec<(u32, u32)>,
    e: usize,
    /// `f0 … fe` with `fe = 1`; empty when `e = 1`.
    modulus: Vec<u32>,
    /// `τ^e = Σ reduce[i] τ^i`.
    reduce: [u32; MAX_DEGREE],
    conj: Conjugation,
}

pub(crate) fn factorize(mut k: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= k {
        if k % d == 0 {
            let mut r = 0;
            while k % d == 0 {
                k /= d;
                r += 1;
            }
            out.push((d as u32, r));
        }
        d += 1;
    }
    if k > 1 {
        out.push((k as u32, 1));
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && factorize(p) == vec![(p as u32, 1)]
}

impl RingSpec {
    /// `Z_k` for `2 <= k <= 2^31`.
    pub fn cyclic(k: u64) -> Result<RingSpec> {
        if k < 2 {
            return Err(Error::InvalidModulus(format!("k = {k} is below 2")));
        }
        if k > MAX_MODULUS {
            return Err(Error::InvalidModulus(format!("k = {k} exceeds 2^31")));
        }
        Ok(RingSpec {
            k: k as u32,
            factors: factorize(k),
            e: 1,
            modulus: Vec::new(),
            reduce: [0; MAX_DEGREE],
            conj: Conjugation::Trivial,
        })
    }

    /// `GR(p^r, p^{re})`. Without `f`, the first valid monic polynomial in
    /// lexicographic order of `(f0, …, f_{e-1})` is used. `f` may list `e`
    /// coefficients (monic term implied) or `e + 1` ending in 1.
    pub fn galois(p: u64, r: u32, e: usize, f: Option<&[i64]>) -> Result<RingSpec> {
        if !is_prime(p) {
            return Err(Error::InvalidModulus(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidModulus("r must be at least 1".into()));
        }
        let k = p
            .checked_pow(r)
            .filter(|&k| k <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidModulus(format!("{p}^{r} exceeds 2^31")))?;
        if e == 0 || e > MAX_DEGREE {
            return Err(Error::UnsupportedRing(format!("extension degree {e} not in 1..=4")));
        }
        if e == 1 {
            return RingSpec::cyclic(k);
        }
        let coeffs: Vec<u64> = match f {
            Some(f) => {
                let f: Vec<u64> = f.iter().map(|&c| c.rem_euclid(k as i64) as u64).collect();
                match f.len() {
                    n if n == e => f,
                    n if n == e + 1 && f[e] == 1 => f[..e].to_vec(),
                    _ => {
                        return Err(Error::InvalidPolynomial(format!(
                            "expected {e} or {} coefficients of a monic polynomial",
                            e + 1
                        )))
                    }
                }
            }
            None => search_modulus(p, k, e)?,
        };
        if coeffs[0] % p == 0 {
            return Err(Error::InvalidPolynomial("constant term is not a unit".into()));
        }
        let mut monic_mod_p: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
        monic_mod_p.push(1);
        if !poly::is_irreducible(&monic_mod_p, p) {
            return Err(Error::InvalidPolynomial("not irreducible modulo p".into()));
        }
        let mut reduce = [0u32; MAX_DEGREE];
        for (i, &c) in coeffs.iter().enumerate() {
            reduce[i] = ((k - c) % k) as u32;
        }
        let mut modulus: Vec<u32> = coeffs.iter().map(|&c| c as u32).collect();
        modulus.push(1);
        let mut ring = RingSpec {
            k: k as u32,
            factors: vec![(p as u32, r)],
            e,
            modulus,
            reduce,
            conj: Conjugation::Trivial,
        };
        if e == 2 {
            // The roots of x^2 + f1 x + f0 sum to -f1.
            let mut tau_bar = RingElem::ZERO;
            tau_bar.0[0] = ((k - coeffs[1]) % k) as u32;
            tau_bar.0[1] = (k - 1) as u32;
            if !ring.eval_modulus(tau_bar).is_zero() {
                return Err(Error::ConstructionFailure("second root of f not found".into()));
            }
            ring.conj = Conjugation::Quadratic { tau_bar };
        }
        Ok(ring)
    }

    pub fn k(&self) -> u64 {
        self.k as u64
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    /// `f0 … fe`; empty for cyclic rings.
    pub fn modulus_poly(&self) -> &[u32] {
        &self.modulus
    }

    pub fn conjugation(&self) -> &Conjugation {
        &self.conj
    }

    pub fn is_cyclic(&self) -> bool {
        self.e == 1
    }

    /// `(p, r)` when the characteristic is a prime power.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [(p, r)] => Some((*p as u64, *r)),
            _ => None,
        }
    }

    /// Number of elements, `k^e`.
    pub fn order(&self) -> u128 {
        (self.k as u128).pow(self.e as u32)
    }

    /// The text header line, e.g. `ring Z 5` or `ring GR 5 1 2 2 0 1`.
    pub fn header(&self) -> String {
        if self.e == 1 {
            format!("ring Z {}", self.k)
        } else {
            let (p, r) = self.factors[0];
            let f: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
            format!("ring GR {p} {r} {} {}", self.e, f.join(" "))
        }
    }

    pub fn zero(&self) -> RingElem {
        RingElem::ZERO
    }

    pub fn one(&self) -> RingElem {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> RingElem {
        let mut out = RingElem::ZERO;
        out.0[0] = v.rem_euclid(self.k as i64) as u32;
        out
    }

    /// Builds an element from up to `e` integer coefficients.
    pub fn elem(&self, coeffs: &[i64]) -> Result<RingElem> {
        if coeffs.is_empty() || coeffs.len() > self.e {
            return Err(Error::DimensionMismatch(format!(
                "element needs 1..={} coefficients, got {}",
                self.e,
                coeffs.len()
            )));
        }
        let mut out = RingElem::ZERO;
        for (slot, &c) in out.0.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(self.k as i64) as u32;
        }
        Ok(out)
    }

    /// The generator `τ` (or 0 in a cyclic ring).
    pub fn tau(&self) -> RingElem {
        let mut out = RingElem::ZERO;
        if self.e > 1 {
            out.0[1] = 1;
        }
        out
    }

    pub fn coeffs<'a>(&self, a: &'a RingElem) -> &'a [u32] {
        &a.0[..self.e]
    }

    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        let k = self.k as u64;
        let mut out = RingElem::ZERO;
        for i in 0..self.e {
            out.0[i] = ((a.0[i] as u64 + b.0[i] as u64) % k) as u32;
        }
        out
    }

    pub fn neg(&self, a: RingElem) -> RingElem {
        let k = self.k as u64;
        let mut out = RingElem::ZERO;
        for i in 0..self.e {
            out.0[i] = ((k - a.0[i] as u64) % k) as u32;
        }
        out
    }

    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        let k = self.k as u64;
        if self.e == 1 {
            let mut out = RingElem::ZERO;
            out.0[0] = (a.0[0] as u64 * b.0[0] as u64 % k) as u32;
            return out;
        }
        let e = self.e;
        let mut t = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..e {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..e {
                t[i + j] = (t[i + j] + a.0[i] as u64 * b.0[j] as u64) % k;
            }
        }
        for d in (e..2 * e - 1).rev() {
            let c = std::mem::take(&mut t[d]);
            if c == 0 {
                continue;
            }
            for i in 0..e {
                t[d - e + i] = (t[d - e + i] + c * self.reduce[i] as u64) % k;
            }
        }
        let mut out = RingElem::ZERO;
        for i in 0..e {
            out.0[i] = t[i] as u32;
        }
        out
    }

    /// `acc + m * x`, the inner step of every matrix kernel.
    #[inline]
    pub fn mul_add(&self, acc: RingElem, m: RingElem, x: RingElem) -> RingElem {
        if self.e == 1 {
            let k = self.k as u64;
            let mut out = RingElem::ZERO;
            out.0[0] = ((acc.0[0] as u64 + m.0[0] as u64 * x.0[0] as u64) % k) as u32;
            out
        } else {
            self.add(acc, self.mul(m, x))
        }
    }

    pub fn pow(&self, a: RingElem, mut exp: u128) -> RingElem {
        let mut base = a;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: RingElem) -> bool {
        match self.prime_power() {
            Some((p, _)) => self.coeffs(&a).iter().any(|&c| c as u64 % p != 0),
            None => (a.0[0] as u64).gcd(&(self.k as u64)) == 1,
        }
    }

    pub fn inv(&self, a: RingElem) -> Result<RingElem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        if self.e == 1 {
            let k = self.k as i64;
            let g = (a.0[0] as i64).extended_gcd(&k);
            return Ok(self.from_int(g.x));
        }
        let (p, r) = self.prime_power().expect("Galois rings have prime-power characteristic");
        let e = self.e as u32;
        let units = (p as u128).pow(e).saturating_sub(1) * (p as u128).pow(e * (r - 1));
        Ok(self.pow(a, units - 1))
    }

    pub fn conj(&self, a: RingElem) -> RingElem {
        match &self.conj {
            Conjugation::Trivial => a,
            Conjugation::Quadratic { tau_bar } => {
                let mut re = RingElem::ZERO;
                re.0[0] = a.0[0];
                let mut im = RingElem::ZERO;
                im.0[0] = a.0[1];
                self.add(re, self.mul(im, *tau_bar))
            }
        }
    }

    /// `f(x)` evaluated in the ring.
    pub fn eval_modulus(&self, x: RingElem) -> RingElem {
        let mut acc = RingElem::ZERO;
        for &c in self.modulus.iter().rev() {
            acc = self.add(self.mul(acc, x), self.from_int(c as i64));
        }
        acc
    }

    /// Largest `t` with `p^t` dividing every coefficient, capped at `r`.
    /// Prime-power rings only.
    pub fn valuation(&self, a: RingElem) -> Option<u32> {
        let (p, r) = self.prime_power()?;
        let mut best = r;
        for &c in self.coeffs(&a) {
            let mut c = c as u64;
            let mut t = 0;
            while c != 0 && c % p == 0 && t < r {
                c /= p;
                t += 1;
            }
            if c != 0 {
                best = best.min(t);
            }
        }
        Some(best)
    }

    /// The ring `Z_{p^t}` (or the matching Galois ring) and the reduction map.
    pub fn projected(&self, t: u32) -> Result<RingSpec> {
        let (p, r) = self
            .prime_power()
            .ok_or_else(|| Error::UnsupportedRing(format!("{} is not a prime power", self.k)))?;
        if t == 0 || t > r {
            return Err(Error::InvalidThreshold { t, r });
        }
        if self.e == 1 {
            RingSpec::cyclic(p.pow(t))
        } else {
            let f: Vec<i64> = self.modulus.iter().map(|&c| c as i64).collect();
            RingSpec::galois(p, t, self.e, Some(&f))
        }
    }

    /// Reduces an element of `self` into `target`, coefficient-wise.
    pub fn project(&self, target: &RingSpec, a: RingElem) -> RingElem {
        let mut out = RingElem::ZERO;
        for i in 0..self.e {
            out.0[i] = a.0[i] % target.k;
        }
        out
    }

    /// Comma-joined residues.
    pub fn format_elem(&self, a: RingElem) -> String {
        let parts: Vec<String> = self.coeffs(&a).iter().map(u32::to_string).collect();
        parts.join(",")
    }

    /// Parses comma-joined integers (missing high coefficients are zero).
    pub fn parse_elem(&self, s: &str) -> Result<RingElem> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse { line: 0, col: 0, msg: format!("bad ring element `{s}`") })?;
        self.elem(&coeffs)
            .map_err(|e| Error::Parse { line: 0, col: 0, msg: e.to_string() })
    }

    /// Every element, in lexicographic coefficient order. Small rings only.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let total = self.order() as u64;
        (0..total).map(move |mut i| {
            let mut out = RingElem::ZERO;
            for slot in out.0.iter_mut().take(self.e) {
                *slot = (i % self.k as u64) as u32;
                i /= self.k as u64;
            }
            out
        })
    }

    pub(crate) fn ensure_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.header(), other.header()))
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "Z_{}", self.k)
        } else {
            let (p, r) = self.factors[0];
            write!(f, "GR({p}^{r}, e={})", self.e)
        }
    }
}

fn search_modulus(p: u64, k: u64, e: usize) -> Result<Vec<u64>> {
    const BUDGET: u64 = 1 << 22;
    let mut digits = vec![0u64; e];
    for _ in 0..BUDGET {
        if digits[0] % p != 0 {
            let mut f: Vec<u64> = digits.iter().map(|c| c % p).collect();
            f.push(1);
            if poly::is_irreducible(&f, p) {
                return Ok(digits);
            }
        }
        // Odometer with f0 as the most significant digit.
        let mut i = e;
        loop {
            if i == 0 {
                return Err(Error::ConstructionFailure("search space exhausted".into()));
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
        }
    }
    Err(Error::ConstructionFailure("no irreducible modulus within the search budget".into()))
}
