//! Line-oriented text formats shared by states, gates and circuits.

use crate::error::{Error, Result};
use crate::gates::{Gate, MAX_BASE_ARITY};
use crate::ring::{Matrix, RingSpec};
use crate::states::{BitString, ModalState};

/// A non-blank line with comments stripped: (1-based line number, tokens
/// with their 1-based columns).
pub(crate) struct Line<'a> {
    pub no: usize,
    pub tokens: Vec<(usize, &'a str)>,
}

impl Line<'_> {
    pub fn err(&self, idx: usize, msg: impl Into<String>) -> Error {
        let col = self.tokens.get(idx).map_or(1, |t| t.0);
        Error::parse(self.no, col, msg)
    }

    pub fn keyword(&self) -> &str {
        self.tokens[0].1
    }

    pub fn int<T: std::str::FromStr>(&self, idx: usize, what: &str) -> Result<T> {
        let (_, tok) = self
            .tokens
            .get(idx)
            .ok_or_else(|| self.err(self.tokens.len(), format!("missing {what}")))?;
        tok.parse().map_err(|_| self.err(idx, format!("bad {what} `{tok}`")))
    }

    pub fn expect_len(&self, n: usize) -> Result<()> {
        if self.tokens.len() == n {
            Ok(())
        } else if self.tokens.len() < n {
            Err(self.err(self.tokens.len(), "too few fields"))
        } else {
            Err(self.err(n, "unexpected trailing field"))
        }
    }
}

pub(crate) fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push((s + 1, &body[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        (!tokens.is_empty()).then_some(Line { no: i + 1, tokens })
    })
}

pub(crate) fn parse_ring_line(line: &Line<'_>) -> Result<RingSpec> {
    if line.keyword() != "ring" {
        return Err(line.err(0, "expected a `ring` header"));
    }
    let kind = line.tokens.get(1).map(|t| t.1);
    let ring = match kind {
        Some("Z") => {
            line.expect_len(3)?;
            RingSpec::cyclic(line.int(2, "modulus")?)
        }
        Some("GR") => {
            if line.tokens.len() < 5 {
                return Err(line.err(line.tokens.len(), "expected `ring GR <p> <r> <e> [f0 … fe]`"));
            }
            let p = line.int(2, "prime")?;
            let r = line.int(3, "exponent")?;
            let e = line.int(4, "degree")?;
            let f = (5..line.tokens.len())
                .map(|i| line.int::<i64>(i, "coefficient"))
                .collect::<Result<Vec<_>>>()?;
            RingSpec::galois(p, r, e, (!f.is_empty()).then_some(f.as_slice()))
        }
        _ => return Err(line.err(1, "ring kind must be `Z` or `GR`")),
    };
    ring.map_err(|e| line.err(1, e.to_string()))
}

pub(crate) fn parse_elem(ring: &RingSpec, line: &Line<'_>, idx: usize) -> Result<crate::ring::RingElem> {
    let tok = line.tokens[idx].1;
    ring.parse_elem(tok).map_err(|_| line.err(idx, format!("bad ring element `{tok}`")))
}

pub(crate) fn parse_state(text: &str) -> Result<ModalState> {
    let mut it = lines(text);
    let header = it.next().ok_or_else(|| Error::parse(1, 1, "empty state file"))?;
    let ring = parse_ring_line(&header)?;
    let bits_line = it.next().ok_or_else(|| Error::parse(header.no + 1, 1, "missing `bits`"))?;
    if bits_line.keyword() != "bits" {
        return Err(bits_line.err(0, "expected `bits <n>`"));
    }
    bits_line.expect_len(2)?;
    let n: usize = bits_line.int(1, "bit count")?;
    let mut state = ModalState::zero(&ring, n).map_err(|e| bits_line.err(1, e.to_string()))?;
    let mut seen = std::collections::HashSet::new();
    for line in it {
        line.expect_len(2)?;
        let x: BitString = match line.tokens[0].1 {
            "-" => BitString::default(),
            t => t.parse().map_err(|_| line.err(0, "bad bit string"))?,
        };
        if x.len() != n {
            return Err(line.err(0, format!("expected {n} bits")));
        }
        if !seen.insert(x.clone()) {
            return Err(line.err(0, format!("duplicate string {x}")));
        }
        let v = parse_elem(&ring, &line, 1)?;
        state.set_amp(&x, v);
    }
    Ok(state)
}

/// Reads `rows` matrix rows of `cols` entries each from the iterator.
pub(crate) fn parse_matrix_rows<'a>(
    ring: &RingSpec,
    it: &mut impl Iterator<Item = Line<'a>>,
    rows: usize,
    cols: usize,
    after: usize,
) -> Result<(Matrix, usize)> {
    let mut m = Matrix::zeros(rows, cols);
    let mut last = after;
    for i in 0..rows {
        let line = it
            .next()
            .ok_or_else(|| Error::parse(last + 1, 1, format!("expected {rows} matrix rows")))?;
        line.expect_len(cols)?;
        for j in 0..cols {
            m.set(i, j, parse_elem(ring, &line, j)?);
        }
        last = line.no;
    }
    Ok((m, last))
}

/// Gate file: header, `arity h` (or `arity <in> <out>`), then the rows.
pub fn parse_gate(text: &str) -> Result<Gate> {
    let mut it = lines(text);
    let header = it.next().ok_or_else(|| Error::parse(1, 1, "empty gate file"))?;
    let ring = parse_ring_line(&header)?;
    let ar = it.next().ok_or_else(|| Error::parse(header.no + 1, 1, "missing `arity`"))?;
    if ar.keyword() != "arity" || !(2..=3).contains(&ar.tokens.len()) {
        return Err(ar.err(0, "expected `arity <h>` or `arity <in> <out>`"));
    }
    let h_in: usize = ar.int(1, "arity")?;
    let h_out: usize = if ar.tokens.len() == 3 { ar.int(2, "arity")? } else { h_in };
    if h_in > MAX_BASE_ARITY || h_out > MAX_BASE_ARITY {
        return Err(ar.err(1, format!("arity above {MAX_BASE_ARITY}")));
    }
    let (m, last) = parse_matrix_rows(&ring, &mut it, 1 << h_out, 1 << h_in, ar.no)?;
    if let Some(extra) = it.next() {
        return Err(extra.err(0, format!("unexpected content after line {last}")));
    }
    Gate::custom(&ring, m)
}

pub fn format_matrix(ring: &RingSpec, m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| ring.format_elem(m.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_gate(g: &Gate) -> Result<String> {
    let m = g.matrix()?;
    let arity = if g.is_square() {
        format!("arity {}", g.arity())
    } else {
        format!("arity {} {}", g.arity(), g.out_arity())
    };
    Ok(format!("{}\n{arity}\n{}", g.ring().header(), format_matrix(g.ring(), &m)))
}
