//! CNF formulas (DIMACS subset) and their reversible synthesis.

use std::fmt::Write as _;

use super::predicate::ReversiblePredicate;
use crate::circuits::Circuit;
use crate::error::{Error, Result};
use crate::gates::{standard_gate, Gate};
use crate::ring::RingSpec;

/// A CNF formula. Literals are nonzero integers: `v` or `-v` for `v` in
/// `1..=vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Cnf> {
        for c in &clauses {
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > vars) {
                return Err(Error::Precondition(format!("literal {l} out of range 1..={vars}")));
            }
        }
        Ok(Cnf { vars, clauses })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// `assign[v - 1]` is the value of variable `v`.
    pub fn eval(&self, assign: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| assign[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    pub fn parse_dimacs(text: &str) -> Result<Cnf> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            let no = i + 1;
            if line.starts_with('p') {
                let f: Vec<&str> = line.split_whitespace().collect();
                if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                    return Err(Error::parse(no, 1, "expected a single `p cnf <vars> <clauses>`"));
                }
                let v = f[2].parse().map_err(|_| Error::parse(no, 7, "bad variable count"))?;
                let c = f[3].parse().map_err(|_| Error::parse(no, 7, "bad clause count"))?;
                header = Some((v, c));
                continue;
            }
            let (vars, _) = header.ok_or_else(|| Error::parse(no, 1, "clause before `p cnf` header"))?;
            let mut col = 1;
            for tok in line.split_whitespace() {
                col += raw[col - 1..].find(tok).unwrap_or(0);
                let lit: i32 = tok.parse().map_err(|_| Error::parse(no, col, format!("bad literal `{tok}`")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else if lit.unsigned_abs() as usize > vars {
                    return Err(Error::parse(no, col, format!("variable {} exceeds {vars}", lit.abs())));
                } else {
                    current.push(lit);
                }
                col += tok.len();
            }
        }
        let (vars, count) = header.ok_or_else(|| Error::parse(1, 1, "missing `p cnf` header"))?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != count {
            return Err(Error::parse(
                text.lines().count().max(1),
                1,
                format!("header declares {count} clauses, found {}", clauses.len()),
            ));
        }
        Cnf::new(vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Clause after dropping duplicate literals; `None` for tautologies.
fn simplify(clause: &[i32]) -> Option<Vec<i32>> {
    let mut c = clause.to_vec();
    c.sort_by_key(|l| (l.abs(), *l));
    c.dedup();
    if c.windows(2).any(|w| w[0] == -w[1]) {
        return None;
    }
    Some(c)
}

/// Synthesizes `φ` with every variable as a branching bit.
pub fn formula_to_reversible(phi: &Cnf) -> ReversiblePredicate {
    formula_to_reversible_with_inputs(phi, 0).expect("zero inputs always fit")
}

/// Synthesizes `φ` over `Z_2`; the first `inputs` variables form `X`, the rest
/// form `B`. Each non-unit clause is computed into a clean work bit, unit
/// literals feed the final multi-controlled flip directly, and the work bits
/// are uncomputed afterwards.
pub fn formula_to_reversible_with_inputs(phi: &Cnf, inputs: usize) -> Result<ReversiblePredicate> {
    if inputs > phi.vars {
        return Err(Error::Precondition(format!("{inputs} inputs but {} variables", phi.vars)));
    }
    let z2 = RingSpec::cyclic(2).expect("2 is a valid modulus");
    let not = standard_gate(&z2, "NOT").expect("NOT is built in");
    let mut clauses = Vec::new();
    let mut units: Vec<i32> = Vec::new();
    let mut never = false;
    for c in phi.clauses.iter().filter_map(|c| simplify(c)) {
        match c.len() {
            0 => never = true,
            1 => units.push(c[0]),
            _ => clauses.push(c),
        }
    }
    units.sort_by_key(|l| (l.abs(), *l));
    units.dedup();
    never |= units.windows(2).any(|w| w[0] == -w[1]);
    let n = inputs;
    let b = phi.vars - inputs;
    let width_before = n + b;
    if never {
        let c = Circuit::new(&z2, width_before + 1);
        return ReversiblePredicate::new(n, b, 1, c);
    }
    let m = clauses.len() + 1;
    let out = width_before + m;
    let mut c = Circuit::new(&z2, width_before + m);
    let wire = |l: i32| l.unsigned_abs() as usize;

    // Compute gates for every clause, kept for the uncompute pass.
    let mut compute: Vec<(Gate, Vec<usize>)> = Vec::new();
    for (j, clause) in clauses.iter().enumerate() {
        let anc = width_before + 1 + j;
        let pos: Vec<usize> = clause.iter().filter(|&&l| l > 0).map(|&l| wire(l)).collect();
        compute.extend(pos.iter().map(|&w| (not.clone(), vec![w])));
        let mut ws: Vec<usize> = clause.iter().map(|&l| wire(l)).collect();
        ws.push(anc);
        compute.push((Gate::mcx(&z2, clause.len()), ws));
        compute.extend(pos.iter().map(|&w| (not.clone(), vec![w])));
        compute.push((not.clone(), vec![anc]));
    }
    for (g, ws) in &compute {
        c.apply(g.clone(), ws).expect("wires are in range");
    }
    let negs: Vec<usize> = units.iter().filter(|&&l| l < 0).map(|&l| wire(l)).collect();
    for &w in &negs {
        c.apply(not.clone(), &[w]).expect("wires are in range");
    }
    let mut controls: Vec<usize> = units.iter().map(|&l| wire(l)).collect();
    controls.extend((0..clauses.len()).map(|j| width_before + 1 + j));
    let mut ws = controls.clone();
    ws.push(out);
    c.apply(Gate::mcx(&z2, controls.len()), &ws).expect("wires are in range");
    for &w in &negs {
        c.apply(not.clone(), &[w]).expect("wires are in range");
    }
    for (g, ws) in compute.iter().rev() {
        c.apply(g.clone(), ws).expect("wires are in range");
    }
    ReversiblePredicate::new(n, b, m, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 3 2\n1 -2 0\n2 3\n0\n";
        let cnf = Cnf::parse_dimacs(text).unwrap();
        assert_eq!(cnf.clauses(), &[vec![1, -2], vec![2, 3]]);
        assert_eq!(Cnf::parse_dimacs(&cnf.to_dimacs()).unwrap(), cnf);
    }

    #[test]
    fn dimacs_errors() {
        let err = Cnf::parse_dimacs("p cnf 2 1\n1 3 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, col: 3, .. }), "{err}");
        assert!(Cnf::parse_dimacs("1 2 0\n").is_err());
        assert!(Cnf::parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
    }

    #[test]
    fn and_is_one_toffoli() {
        let cnf = Cnf::new(2, vec![vec![1], vec![2]]).unwrap();
        let r = formula_to_reversible(&cnf);
        assert_eq!((r.n(), r.b(), r.m()), (0, 2, 1));
        let names: Vec<String> = r.circuit().gates().map(|(g, _)| g.name()).collect();
        assert_eq!(names, ["TOFFOLI"]);
    }

    #[test]
    fn truth_tables_match() {
        let cases = [
            Cnf::new(3, vec![vec![2], vec![1, 3]]).unwrap(),
            Cnf::new(3, vec![vec![1, -1], vec![-2, 3, 1]]).unwrap(),
            Cnf::new(2, vec![vec![1, -1]]).unwrap(),
            Cnf::new(2, vec![vec![1], vec![-1]]).unwrap(),
            Cnf::new(2, vec![vec![]]).unwrap(),
            Cnf::new(2, vec![]).unwrap(),
            Cnf::new(4, vec![vec![-1, -2], vec![2, 3, -4], vec![-4]]).unwrap(),
        ];
        for cnf in &cases {
            let r = formula_to_reversible(cnf);
            for a in 0..1usize << cnf.vars() {
                let assign: Vec<bool> = (0..cnf.vars()).map(|i| a >> (cnf.vars() - 1 - i) & 1 == 1).collect();
                let bits = r.eval_bits(&[], &assign);
                assert_eq!(*bits.last().unwrap(), cnf.eval(&assign), "{cnf:?} at {assign:?}");
                assert_eq!(&bits[..cnf.vars()], &assign[..]);
                assert!(bits[cnf.vars()..bits.len() - 1].iter().all(|&w| !w), "dirty work bits");
            }
        }
    }
}
