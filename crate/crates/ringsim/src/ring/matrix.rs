//! Dense matrices over a [`RingSpec`].

use super::{RingElem, RingSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RingElem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![RingElem::ZERO; rows * cols] }
    }

    pub fn identity(ring: &RingSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from integer rows, reducing into `ring` (constant elements).
    pub fn from_ints(ring: &RingSpec, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(rows.len(), cols, |i, j| ring.from_int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> RingElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<RingElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, ring: &RingSpec, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = ring.mul_add(out.data[idx], a, other.get(l, j));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, ring: &RingSpec, v: &[RingElem]) -> Vec<RingElem> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(ring.zero(), |acc, j| ring.mul_add(acc, self.get(i, j), v[j])))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self, ring: &RingSpec) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| ring.conj(self.get(j, i)))
    }

    pub fn is_identity(&self, ring: &RingSpec) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { ring.one() } else { ring.zero() })
            })
    }

    /// Column sums.
    pub fn column_sums(&self, ring: &RingSpec) -> Vec<RingElem> {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(ring.zero(), |acc, i| ring.add(acc, self.get(i, j))))
            .collect()
    }

    pub fn map(&self, f: impl Fn(RingElem) -> RingElem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.data
    }

    /// Replaces each entry by its `e × e` multiplication block over `Z_k`.
    /// Returns the matrix and the base ring `Z_k`.
    pub fn embed_to_zk_block(&self, ring: &RingSpec) -> Result<(Matrix, RingSpec)> {
        let base = RingSpec::cyclic(ring.k())?;
        let e = ring.degree();
        let powers: Vec<RingElem> = (0..e)
            .scan(ring.one(), |p, _| {
                let cur = *p;
                *p = ring.mul(*p, ring.tau());
                Some(cur)
            })
            .collect();
        let mut out = Matrix::zeros(self.rows * e, self.cols * e);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for (l, &tl) in powers.iter().enumerate() {
                    let col = ring.mul(tl, a);
                    for (row, &c) in ring.coeffs(&col).iter().enumerate() {
                        out.set(i * e + row, j * e + l, base.from_int(c as i64));
                    }
                }
            }
        }
        Ok((out, base))
    }

    /// Coefficient-wise reduction into the ring of characteristic `p^t`.
    pub fn project_mod(&self, ring: &RingSpec, t: u32) -> Result<(Matrix, RingSpec)> {
        let target = ring.projected(t)?;
        Ok((self.map(|x| ring.project(&target, x)), target))
    }

    /// Two-sided inverse by Gauss–Jordan elimination with unit pivots over each
    /// prime-power component, combined by CRT for composite `k`.
    pub fn inverse(&self, ring: &RingSpec) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible(format!("{}x{} is not square", self.rows, self.cols)));
        }
        if ring.prime_power().is_some() {
            return self.inverse_local(ring);
        }
        // Composite cyclic k: invert modulo each p^r and recombine.
        let k = ring.k();
        let mut acc = Matrix::zeros(self.rows, self.cols);
        let mut modulus = 1u64;
        for &(p, r) in ring.factors() {
            let q = (p as u64).pow(r);
            let sub = RingSpec::cyclic(q)?;
            let inv = self.map(|x| sub.from_int((x.0[0] as u64 % q) as i64)).inverse_local(&sub)?;
            let m_inv_q = inv_mod(modulus % q, q);
            for idx in 0..acc.data.len() {
                let a = acc.data[idx].0[0] as u64;
                let b = inv.data[idx].0[0] as u64;
                // x = a + modulus * ((b - a) * modulus^{-1} mod q)
                let diff = (b + q - a % q) % q;
                let t = diff * m_inv_q % q;
                acc.data[idx] = ring.from_int(((a + modulus * t) % k) as i64);
            }
            modulus *= q;
        }
        Ok(acc)
    }

    fn inverse_local(&self, ring: &RingSpec) -> Result<Matrix> {
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(ring, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| ring.is_unit(a.get(r, col)))
                .ok_or_else(|| Error::NotInvertible(format!("no unit pivot in column {col}")))?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let pinv = ring.inv(a.get(col, col))?;
            a.scale_row(ring, col, pinv);
            inv.scale_row(ring, col, pinv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                let neg = ring.neg(factor);
                a.add_row_multiple(ring, r, col, neg);
                inv.add_row_multiple(ring, r, col, neg);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, ring: &RingSpec, r: usize, s: RingElem) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = ring.mul(self.data[idx], s);
        }
    }

    /// `row[dst] += s * row[src]`.
    fn add_row_multiple(&mut self, ring: &RingSpec, dst: usize, src: usize, s: RingElem) {
        for j in 0..self.cols {
            let v = self.get(src, j);
            let idx = dst * self.cols + j;
            self.data[idx] = ring.mul_add(self.data[idx], s, v);
        }
    }
}

fn inv_mod(a: u64, m: u64) -> u64 {
    use num_integer::Integer;
    if m == 1 {
        return 0;
    }
    let g = (a as i64).extended_gcd(&(m as i64));
    g.x.rem_euclid(m as i64) as u64
}
