//! Gates: standard matrices, the branching gate `K`, controlled forms,
//! adjoints, inverses and validity classification.
//!
//! A gate is a base matrix (rows indexed by output strings, columns by input
//! strings) plus a number of leading control bits. Controlled gates act as the
//! identity unless every control is 1, so wide multi-controlled flips never
//! need a dense matrix.

use crate::error::{Error, Result};
use crate::ring::{four_squares, octonion_mul, Matrix, RingElem, RingSpec};
use crate::states::{BitString, ModalState};

/// Largest base matrix arity accepted from user input.
pub const MAX_BASE_ARITY: usize = 8;
/// Largest arity [`Gate::matrix`] will materialize.
pub const MAX_DENSE_ARITY: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateClassification {
    pub invertible: bool,
    /// Every column sums to 1.
    pub affine: bool,
    /// `M†M = I` (square matrices only).
    pub unitary: bool,
    /// Per prime-power component `(p, t)`: the largest `t <= r` with
    /// `M†M ≡ I (mod p^t)`.
    pub s2_threshold: Vec<(u64, u32)>,
    /// For prime-power rings: unit diagonal of `M†M` and the congruence
    /// `M†M ≡ I` modulo `p^⌈r/2⌉` (odd `p`) or `2^⌈(r-1)/2⌉`.
    pub s2_congruence: Option<bool>,
}

/// How the base matrix is applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Action {
    /// Column `j` maps to basis row `perm[j]`.
    Permutation(Vec<usize>),
    /// Nonzero entries of each column.
    Dense(Vec<Vec<(usize, RingElem)>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    ring: RingSpec,
    base_name: String,
    controls: usize,
    base: Matrix,
    in_bits: usize,
    out_bits: usize,
    action: Action,
    class: GateClassification,
}

fn log2_exact(n: usize) -> Option<usize> {
    n.is_power_of_two().then(|| n.trailing_zeros() as usize)
}

/// Exponent needed by the S₂ congruence for `p^r`.
pub fn s2_required_exponent(p: u64, r: u32) -> u32 {
    if p == 2 {
        r / 2
    } else {
        r.div_ceil(2)
    }
}

fn classify_matrix(ring: &RingSpec, m: &Matrix) -> GateClassification {
    let affine = m.column_sums(ring).iter().all(|&s| s == ring.one());
    let gram = m.adjoint(ring).mul(ring, m).expect("adjoint dimensions agree");
    let unitary = m.is_square() && gram.is_identity(ring);
    let invertible = m.is_square() && (unitary || m.inverse(ring).is_ok());
    let id = Matrix::identity(ring, gram.rows());
    let diff: Vec<RingElem> =
        gram.entries().iter().zip(id.entries()).map(|(&a, &b)| ring.sub(a, b)).collect();
    let s2_threshold: Vec<(u64, u32)> = ring
        .factors()
        .iter()
        .map(|&(p, r)| {
            let (p, q) = (p as u64, (p as u64).pow(r));
            let t = diff
                .iter()
                .flat_map(|d| ring.coeffs(d).iter().map(|&c| c as u64 % q))
                .map(|c| {
                    let (mut c, mut t) = (c, 0);
                    while c != 0 && c % p == 0 {
                        c /= p;
                        t += 1;
                    }
                    if c == 0 {
                        r
                    } else {
                        t
                    }
                })
                .min()
                .unwrap_or(r);
            (p, t)
        })
        .collect();
    let s2_congruence = ring.prime_power().map(|(p, r)| {
        let diag_ok = (0..gram.rows()).all(|i| gram.get(i, i) == ring.one());
        diag_ok && s2_threshold[0].1 >= s2_required_exponent(p, r)
    });
    GateClassification { invertible, affine, unitary, s2_threshold, s2_congruence }
}

fn detect_permutation(ring: &RingSpec, m: &Matrix) -> Option<Vec<usize>> {
    if !m.is_square() {
        return None;
    }
    let mut perm = Vec::with_capacity(m.cols());
    let mut seen = vec![false; m.rows()];
    for j in 0..m.cols() {
        let mut target = None;
        for i in 0..m.rows() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            if v != ring.one() || target.is_some() || seen[i] {
                return None;
            }
            target = Some(i);
        }
        let i = target?;
        seen[i] = true;
        perm.push(i);
    }
    Some(perm)
}

impl Gate {
    /// A gate from a base matrix with `controls` leading control bits.
    pub fn from_matrix(ring: &RingSpec, name: &str, base: Matrix, controls: usize) -> Result<Gate> {
        let (Some(in_bits), Some(out_bits)) = (log2_exact(base.cols()), log2_exact(base.rows()))
        else {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not 2^h_out x 2^h_in",
                base.rows(),
                base.cols()
            )));
        };
        if controls > 0 && in_bits != out_bits {
            return Err(Error::DimensionMismatch("only square gates can be controlled".into()));
        }
        let action = match detect_permutation(ring, &base) {
            Some(p) => Action::Permutation(p),
            None => Action::Dense(
                (0..base.cols())
                    .map(|j| {
                        (0..base.rows())
                            .filter_map(|i| {
                                let v = base.get(i, j);
                                (!v.is_zero()).then_some((i, v))
                            })
                            .collect()
                    })
                    .collect(),
            ),
        };
        let class = classify_matrix(ring, &base);
        Ok(Gate {
            ring: ring.clone(),
            base_name: name.to_string(),
            controls,
            base,
            in_bits,
            out_bits,
            action,
            class,
        })
    }

    /// An uncontrolled custom gate.
    pub fn custom(ring: &RingSpec, base: Matrix) -> Result<Gate> {
        Gate::from_matrix(ring, "custom", base, 0)
    }

    /// `Λ^ℓ X`: flip the last wire when the first `ℓ` are all 1.
    pub fn mcx(ring: &RingSpec, controls: usize) -> Gate {
        let not = Matrix::from_ints(ring, &[&[0, 1], &[1, 0]]);
        Gate::from_matrix(ring, "NOT", not, controls).expect("NOT is 2x2")
    }

    /// A permutation gate `col j -> row perm[j]` with `controls` controls.
    pub fn from_permutation(ring: &RingSpec, name: &str, perm: &[usize], controls: usize) -> Result<Gate> {
        let n = perm.len();
        let mut m = Matrix::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            if i >= n {
                return Err(Error::DimensionMismatch(format!("row {i} out of range")));
            }
            m.set(i, j, ring.one());
        }
        let g = Gate::from_matrix(ring, name, m, controls)?;
        if g.permutation().is_none() {
            return Err(Error::NotPermutation(name.to_string()));
        }
        Ok(g)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    /// Display name, e.g. `CNOT`, `CNX5`, `CK`, `CCSWAP`, `custom`.
    pub fn name(&self) -> String {
        match (self.base_name.as_str(), self.controls) {
            ("NOT", 0) => "NOT".into(),
            ("NOT", 1) => "CNOT".into(),
            ("NOT", 2) => "TOFFOLI".into(),
            ("NOT", l) => format!("CNX{l}"),
            (b, c) => format!("{}{b}", "C".repeat(c)),
        }
    }

    pub fn base_name(&self) -> &str {
        &self.base_name
    }

    /// True if the name can be parsed back by [`standard_gate`].
    pub fn is_builtin(&self) -> bool {
        match standard_gate(&self.ring, &self.name()) {
            Ok(g) => g == *self,
            Err(_) => false,
        }
    }

    pub fn controls(&self) -> usize {
        self.controls
    }

    pub fn base(&self) -> &Matrix {
        &self.base
    }

    /// Number of input wires.
    pub fn arity(&self) -> usize {
        self.controls + self.in_bits
    }

    /// Number of output wires.
    pub fn out_arity(&self) -> usize {
        self.controls + self.out_bits
    }

    pub fn base_in_bits(&self) -> usize {
        self.in_bits
    }

    pub fn base_out_bits(&self) -> usize {
        self.out_bits
    }

    pub fn is_square(&self) -> bool {
        self.in_bits == self.out_bits
    }

    pub fn is_mcx(&self) -> bool {
        self.base_name == "NOT"
    }

    pub(crate) fn action(&self) -> &Action {
        &self.action
    }

    /// The base permutation, if the base is a permutation matrix.
    pub fn permutation(&self) -> Option<&[usize]> {
        match &self.action {
            Action::Permutation(p) => Some(p),
            Action::Dense(_) => None,
        }
    }

    /// Cached at construction. Control blocks are identities, so the base
    /// matrix determines every flag.
    pub fn classification(&self) -> &GateClassification {
        &self.class
    }

    /// The full `2^out × 2^in` matrix including control blocks.
    pub fn matrix(&self) -> Result<Matrix> {
        if self.arity() > MAX_DENSE_ARITY {
            return Err(Error::WidthOverflow { bits: self.arity(), cap: MAX_DENSE_ARITY });
        }
        if self.controls == 0 {
            return Ok(self.base.clone());
        }
        let n = 1usize << self.arity();
        let offset = n - self.base.rows();
        Ok(Matrix::from_fn(n, n, |i, j| {
            if i >= offset && j >= offset {
                self.base.get(i - offset, j - offset)
            } else if i == j {
                self.ring.one()
            } else {
                self.ring.zero()
            }
        }))
    }

    /// One more control bit, placed first.
    pub fn controlled(&self) -> Result<Gate> {
        Gate::from_matrix(&self.ring, &self.base_name, self.base.clone(), self.controls + 1)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Result<Gate> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("adjoint of a non-square gate".into()));
        }
        let adj = self.base.adjoint(&self.ring);
        let name = self.renamed(&adj);
        Gate::from_matrix(&self.ring, &name, adj, self.controls)
    }

    pub fn inverse(&self) -> Result<Gate> {
        let inv = self
            .base
            .inverse(&self.ring)
            .map_err(|e| Error::NotInvertible(format!("{}: {e}", self.name())))?;
        let name = self.renamed(&inv);
        Gate::from_matrix(&self.ring, &name, inv, self.controls)
    }

    /// Keeps a builtin name when the new base matches one.
    fn renamed(&self, m: &Matrix) -> String {
        ["NOT", "SWAP", "K", "KT"]
            .iter()
            .find(|n| base_matrix(&self.ring, n).is_ok_and(|b| b == *m))
            .map_or_else(|| "custom".to_string(), |n| n.to_string())
    }

    /// The same permutation gate over another ring.
    pub fn retarget(&self, ring: &RingSpec) -> Result<Gate> {
        let perm = self.permutation().ok_or_else(|| Error::NotPermutation(self.name()))?;
        Gate::from_permutation(ring, &self.base_name, perm, self.controls)
    }
}

/// Integer columns of `K` for `Z_k`: column `j` is `ω_{v0} · e_j`.
pub fn k_gate_columns(k: u64) -> [[i64; 8]; 8] {
    let (a, b, c, d) = four_squares(k - 1);
    let v0 = [a as i64, 0, b as i64, 1, c as i64, 0, d as i64, 1];
    let mut cols = [[0i64; 8]; 8];
    for (j, col) in cols.iter_mut().enumerate() {
        let mut ej = [0i64; 8];
        ej[j] = 1;
        *col = octonion_mul(&v0, &ej);
    }
    cols
}

fn base_matrix(ring: &RingSpec, name: &str) -> Result<Matrix> {
    let m = match name {
        "NOT" => Matrix::from_ints(ring, &[&[0, 1], &[1, 0]]),
        "SWAP" => Matrix::from_ints(
            ring,
            &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]],
        ),
        "AND" => Matrix::from_ints(ring, &[&[1, 1, 1, 0], &[0, 0, 0, 1]]),
        "OR" => Matrix::from_ints(ring, &[&[1, 0, 0, 0], &[0, 1, 1, 1]]),
        "FANOUT" => Matrix::from_ints(ring, &[&[1, 0], &[0, 0], &[0, 0], &[0, 1]]),
        "ERASE" => Matrix::from_ints(ring, &[&[1, 1]]),
        "UNIF" => {
            let half = ring
                .inv(ring.from_int(2))
                .map_err(|_| Error::NotInvertibleModulus(ring.k()))?;
            Matrix::from_fn(2, 2, |_, _| half)
        }
        "RHO" => {
            let mut m = Matrix::identity(ring, 4);
            m.set(0, 0, ring.from_int(-1));
            m.set(1, 0, ring.one());
            m.set(3, 0, ring.one());
            m
        }
        "K" | "KT" => {
            if !ring.is_cyclic() {
                return Err(Error::UnsupportedRing(format!("K is defined over Z_k, not {ring}")));
            }
            let cols = k_gate_columns(ring.k());
            let k = Matrix::from_fn(8, 8, |i, j| ring.from_int(cols[j][i]));
            if name == "KT" {
                k.transpose()
            } else {
                k
            }
        }
        _ => return Err(Error::UnknownGate(name.to_string())),
    };
    Ok(m)
}

/// Builds a named gate: `NOT CNOT TOFFOLI SWAP FANOUT AND OR ERASE UNIF K KT
/// RHO`, `CNX<ℓ>`, and any square base prefixed by `C`s (`CK`, `CCSWAP`, …).
pub fn standard_gate(ring: &RingSpec, name: &str) -> Result<Gate> {
    let (controls, base) = if name == "TOFFOLI" {
        (2, "NOT")
    } else if let Some(l) = name.strip_prefix("CNX") {
        let l: usize = l.parse().map_err(|_| Error::UnknownGate(name.to_string()))?;
        if l == 0 {
            return Err(Error::UnknownGate(name.to_string()));
        }
        (l, "NOT")
    } else {
        let base = name.trim_start_matches('C');
        (name.len() - base.len(), base)
    };
    let m = base_matrix(ring, base).map_err(|e| match e {
        Error::UnknownGate(_) => Error::UnknownGate(name.to_string()),
        other => other,
    })?;
    if controls > 0 && !m.is_square() {
        return Err(Error::UnknownGate(name.to_string()));
    }
    Gate::from_matrix(ring, base, m, controls)
}

/// The 3-bit branching gate over `Z_k`, bit order (branch, flag, flag).
pub fn branching_gate_k(ring: &RingSpec) -> Result<Gate> {
    standard_gate(ring, "K")
}

/// Returns the state `ψ` of the S₂ argument for `T` and distinct inputs
/// `x`, `y`; when `conj(ε) ≠ -ε` the error carries the state `σ` instead.
/// Ancilla strings `|j⟩` use `⌈log2 k⌉` bits after the gate's wires.
pub fn s2_violation_witness(t: &Gate, x: &BitString, y: &BitString) -> Result<ModalState> {
    let ring = t.ring();
    if !t.is_square() || x.len() != t.arity() || y.len() != t.arity() || x == y {
        return Err(Error::Precondition("need distinct strings of the gate's arity".into()));
    }
    let m = t.matrix()?;
    let gram = m.adjoint(ring).mul(ring, &m)?;
    let (xi, yi) = (x.index(), y.index());
    if gram.get(xi, xi) != ring.one() || gram.get(yi, yi) != ring.one() {
        return Err(Error::Precondition("<x|T†T|x> and <y|T†T|y> must be 1".into()));
    }
    let eps = gram.get(yi, xi);
    let k = ring.k();
    let anc = (u64::BITS - (k - 1).leading_zeros()) as usize;
    let h = t.arity();
    let mut state = ModalState::zero(ring, h + anc)?;
    let idx = |s: usize, j: u64| (s << anc) | j as usize;
    if ring.conj(eps) != ring.neg(eps) {
        for j in 0..k {
            state.amps_mut()[idx(xi, j)] = ring.one();
        }
        state.amps_mut()[idx(yi, 0)] = ring.add(state.amps()[idx(yi, 0)], ring.one());
        return Err(Error::WitnessInapplicable { sigma: Box::new(state) });
    }
    for j in 1..k {
        state.amps_mut()[idx(xi, j)] = eps;
    }
    state.amps_mut()[idx(yi, 1)] = ring.add(ring.one(), eps);
    Ok(state)
}
