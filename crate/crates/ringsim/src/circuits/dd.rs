//! Decision-diagram execution. A state is a reduced ordered diagram over the
//! wires (wire 1 on top) whose leaves are ring elements. Reduced diagrams are
//! canonical, so equal states share a node id.

use std::collections::{HashMap, HashSet};

use num_integer::Integer;

use super::{Circuit, Decision, Op};
use crate::error::{Error, Result};
use crate::gates::{Action, Gate};
use crate::ring::{RingElem, RingSpec};
use crate::states::{BitString, ModalState, StateSpace};

const LEAF: u32 = u32::MAX;

/// Leaves store an index into `values` in `lo`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
struct Node {
    var: u32,
    lo: u32,
    hi: u32,
}

/// A state held as a decision diagram.
#[derive(Clone, Debug)]
pub struct DdState {
    ring: RingSpec,
    n: usize,
    nodes: Vec<Node>,
    values: Vec<RingElem>,
    unique: HashMap<Node, u32>,
    leaves: HashMap<RingElem, u32>,
    zero: u32,
    root: u32,
    /// Variable of each wire, for every wire the run will create.
    order: Vec<u32>,
}

impl DdState {
    fn empty(ring: &RingSpec, n: usize, order: Vec<u32>) -> DdState {
        let mut d = DdState {
            ring: ring.clone(),
            n,
            nodes: Vec::new(),
            values: Vec::new(),
            unique: HashMap::new(),
            leaves: HashMap::new(),
            zero: 0,
            root: 0,
            order,
        };
        d.zero = d.leaf(ring.zero());
        d.root = d.zero;
        d
    }

    pub fn basis(ring: &RingSpec, x: &BitString) -> DdState {
        DdState::basis_ordered(ring, x, (0..x.len() as u32).collect())
    }

    fn basis_ordered(ring: &RingSpec, x: &BitString, order: Vec<u32>) -> DdState {
        let mut d = DdState::empty(ring, x.len(), order);
        d.root = d.basis_node(x);
        d
    }

    pub fn from_dense(psi: &ModalState) -> DdState {
        let mut d = DdState::empty(psi.ring(), psi.n(), (0..psi.n() as u32).collect());
        let mut root = d.zero;
        for i in psi.support() {
            let x = BitString::from_index(i, psi.n());
            let b = d.basis_node(&x);
            let t = d.scale(b, psi.amps()[i], &mut HashMap::new());
            root = d.add(root, t, &mut HashMap::new());
        }
        d.root = root;
        d
    }

    fn basis_node(&mut self, x: &BitString) -> u32 {
        let one = self.leaf(self.ring.one());
        let mut bits: Vec<(u32, bool)> = x.0.iter().enumerate().map(|(w, &b)| (self.order[w], b)).collect();
        bits.sort_unstable();
        bits.into_iter().rev().fold(one, |acc, (v, bit)| {
            let z = self.zero;
            if bit {
                self.mk(v, z, acc)
            } else {
                self.mk(v, acc, z)
            }
        })
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Nodes reachable from the root, leaves included.
    pub fn node_count(&self) -> usize {
        self.reachable().len()
    }

    fn leaf(&mut self, a: RingElem) -> u32 {
        if let Some(&id) = self.leaves.get(&a) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(Node { var: LEAF, lo: self.values.len() as u32, hi: 0 });
        self.values.push(a);
        self.leaves.insert(a, id);
        id
    }

    fn mk(&mut self, var: u32, lo: u32, hi: u32) -> u32 {
        if lo == hi {
            return lo;
        }
        let node = Node { var, lo, hi };
        if let Some(&id) = self.unique.get(&node) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.unique.insert(node, id);
        id
    }

    fn var(&self, id: u32) -> u32 {
        self.nodes[id as usize].var
    }

    fn value(&self, id: u32) -> Option<RingElem> {
        let node = self.nodes[id as usize];
        (node.var == LEAF).then(|| self.values[node.lo as usize])
    }

    /// Children of `id` with respect to `var`.
    fn cof(&self, id: u32, var: u32) -> (u32, u32) {
        let node = self.nodes[id as usize];
        if node.var == var {
            (node.lo, node.hi)
        } else {
            (id, id)
        }
    }

    fn add(&mut self, a: u32, b: u32, memo: &mut HashMap<(u32, u32), u32>) -> u32 {
        if a == self.zero {
            return b;
        }
        if b == self.zero {
            return a;
        }
        let key = (a.min(b), a.max(b));
        if let Some(&r) = memo.get(&key) {
            return r;
        }
        let r = match (self.value(a), self.value(b)) {
            (Some(x), Some(y)) => self.leaf(self.ring.add(x, y)),
            _ => {
                let v = self.var(a).min(self.var(b));
                let (a0, a1) = self.cof(a, v);
                let (b0, b1) = self.cof(b, v);
                let lo = self.add(a0, b0, memo);
                let hi = self.add(a1, b1, memo);
                self.mk(v, lo, hi)
            }
        };
        memo.insert(key, r);
        r
    }

    fn scale(&mut self, a: u32, c: RingElem, memo: &mut HashMap<u32, u32>) -> u32 {
        if a == self.zero || c == self.ring.one() {
            return a;
        }
        if let Some(&r) = memo.get(&a) {
            return r;
        }
        let r = match self.value(a) {
            Some(x) => self.leaf(self.ring.mul(c, x)),
            None => {
                let Node { var, lo, hi } = self.nodes[a as usize];
                let lo = self.scale(lo, c, memo);
                let hi = self.scale(hi, c, memo);
                self.mk(var, lo, hi)
            }
        };
        memo.insert(a, r);
        r
    }

    /// Cofactor for the `(var, bit)` pairs in `assign`, sorted by variable.
    fn restrict(&mut self, a: u32, assign: &[(u32, bool)], memo: &mut HashMap<u32, u32>) -> u32 {
        let v = self.var(a);
        let skip = assign.iter().take_while(|&&(w, _)| w < v).count();
        let assign = &assign[skip..];
        if v == LEAF || assign.is_empty() {
            return a;
        }
        if let Some(&r) = memo.get(&a) {
            return r;
        }
        let Node { lo, hi, .. } = self.nodes[a as usize];
        let r = if assign[0].0 == v {
            let next = if assign[0].1 { hi } else { lo };
            self.restrict(next, &assign[1..], memo)
        } else {
            let lo = self.restrict(lo, assign, memo);
            let hi = self.restrict(hi, assign, memo);
            self.mk(v, lo, hi)
        };
        memo.insert(a, r);
        r
    }

    /// `Σ_i [T = i] · parts[i]`, where no part depends on the target
    /// variables `targets` (most significant first). `from` is the
    /// smallest variable not yet branched on.
    fn assemble(
        &mut self,
        parts: &mut Vec<u32>,
        targets: &[u32],
        from: u32,
        memo: &mut HashMap<(Vec<u32>, usize), u32>,
    ) -> u32 {
        if parts.iter().all(|&p| p == self.zero) {
            return self.zero;
        }
        let key = (parts.clone(), targets.iter().filter(|&&t| t < from).count());
        if let Some(&r) = memo.get(&key) {
            return r;
        }
        let h = targets.len();
        let top = parts.iter().map(|&p| self.var(p)).min().unwrap_or(LEAF);
        let next_t = targets.iter().enumerate().filter(|&(_, &t)| t >= from).min_by_key(|&(_, &t)| t);
        let r = match next_t {
            Some((q, &t)) if t <= top => {
                let bit = h - 1 - q;
                let mut lo: Vec<u32> =
                    parts.iter().enumerate().map(|(i, &p)| if (i >> bit) & 1 == 0 { p } else { self.zero }).collect();
                let mut hi: Vec<u32> =
                    parts.iter().enumerate().map(|(i, &p)| if (i >> bit) & 1 == 1 { p } else { self.zero }).collect();
                let lo = self.assemble(&mut lo, targets, t + 1, memo);
                let hi = self.assemble(&mut hi, targets, t + 1, memo);
                self.mk(t, lo, hi)
            }
            None if top == LEAF => {
                // Every target bit is fixed, so at most one part survives.
                *parts.iter().find(|&&p| p != self.zero).expect("not all zero")
            }
            _ => {
                let mut lo: Vec<u32> = parts.iter().map(|&p| self.cof(p, top).0).collect();
                let mut hi: Vec<u32> = parts.iter().map(|&p| self.cof(p, top).1).collect();
                let lo = self.assemble(&mut lo, targets, top + 1, memo);
                let hi = self.assemble(&mut hi, targets, top + 1, memo);
                self.mk(top, lo, hi)
            }
        };
        memo.insert(key, r);
        r
    }

    /// `a` where every control variable is 1, `b` elsewhere.
    fn select(&mut self, ctrls: &[u32], a: u32, b: u32, memo: &mut HashMap<(usize, u32, u32), u32>) -> u32 {
        if ctrls.is_empty() || a == b {
            return a;
        }
        let key = (ctrls.len(), a, b);
        if let Some(&r) = memo.get(&key) {
            return r;
        }
        let v = ctrls[0];
        let top = self.var(a).min(self.var(b));
        let r = if v <= top {
            let (b0, b1) = self.cof(b, v);
            let a1 = self.cof(a, v).1;
            let hi = self.select(&ctrls[1..], a1, b1, memo);
            self.mk(v, b0, hi)
        } else {
            let (a0, a1) = self.cof(a, top);
            let (b0, b1) = self.cof(b, top);
            let lo = self.select(ctrls, a0, b0, memo);
            let hi = self.select(ctrls, a1, b1, memo);
            self.mk(top, lo, hi)
        };
        memo.insert(key, r);
        r
    }

    fn apply(&mut self, gate: &Gate, wires: &[usize]) -> Result<()> {
        if !gate.is_square() {
            return Err(Error::UnsupportedGate(format!("{} changes the width", gate.name())));
        }
        let c = gate.controls();
        let mut ctrls: Vec<u32> = wires[..c].iter().map(|&w| self.order[w - 1]).collect();
        ctrls.sort_unstable();
        let targets: Vec<u32> = wires[c..].iter().map(|&w| self.order[w - 1]).collect();
        let h = targets.len();
        let f = self.root;
        let cofactors: Vec<u32> = (0..1usize << h)
            .map(|j| {
                let mut assign: Vec<(u32, bool)> =
                    targets.iter().enumerate().map(|(i, &t)| (t, (j >> (h - 1 - i)) & 1 == 1)).collect();
                assign.sort_unstable();
                self.restrict(f, &assign, &mut HashMap::new())
            })
            .collect();
        let mut parts = vec![self.zero; 1 << h];
        match gate.action() {
            Action::Permutation(perm) => {
                for (j, &p) in cofactors.iter().enumerate() {
                    parts[perm[j]] = p;
                }
            }
            Action::Dense(cols) => {
                let mut add_memo = HashMap::new();
                for (j, &p) in cofactors.iter().enumerate() {
                    for &(i, coef) in &cols[j] {
                        let t = self.scale(p, coef, &mut HashMap::new());
                        parts[i] = self.add(parts[i], t, &mut add_memo);
                    }
                }
            }
        }
        let active = self.assemble(&mut parts, &targets, 0, &mut HashMap::new());
        self.root = self.select(&ctrls, active, f, &mut HashMap::new());
        Ok(())
    }

    /// Appends a `|0⟩` wire.
    fn extend(&mut self) {
        let v = self.order[self.n];
        let mut parts = vec![self.root, self.zero];
        self.root = self.assemble(&mut parts, &[v], 0, &mut HashMap::new());
        self.n += 1;
    }

    fn reachable(&self) -> HashSet<u32> {
        let mut seen = HashSet::new();
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if seen.insert(id) {
                let node = self.nodes[id as usize];
                if node.var != LEAF {
                    stack.extend([node.lo, node.hi]);
                }
            }
        }
        seen
    }

    /// Copies the live diagram into fresh tables.
    fn compact(&mut self) {
        let mut fresh = DdState::empty(&self.ring, self.n, self.order.clone());
        let mut map: HashMap<u32, u32> = HashMap::new();
        fresh.root = fresh.copy_from(self, self.root, &mut map);
        *self = fresh;
    }

    fn copy_from(&mut self, src: &DdState, id: u32, map: &mut HashMap<u32, u32>) -> u32 {
        if let Some(&r) = map.get(&id) {
            return r;
        }
        let node = src.nodes[id as usize];
        let r = if node.var == LEAF {
            self.leaf(src.values[node.lo as usize])
        } else {
            let lo = self.copy_from(src, node.lo, map);
            let hi = self.copy_from(src, node.hi, map);
            self.mk(node.var, lo, hi)
        };
        map.insert(id, r);
        r
    }

    fn pow2(&self, s: u32) -> RingElem {
        (0..s).fold(self.ring.one(), |acc, _| self.ring.add(acc, acc))
    }

    /// `Σ_x w(ψ(x))` over all `2^n` strings.
    fn total(&self, w: impl Fn(RingElem) -> RingElem) -> RingElem {
        struct Walk<'a> {
            d: &'a DdState,
            vars: Vec<u32>,
            w: &'a dyn Fn(RingElem) -> RingElem,
            memo: HashMap<u32, RingElem>,
        }
        impl Walk<'_> {
            /// Depth of `id` among the live variables.
            fn level(&self, id: u32) -> u32 {
                match self.d.var(id) {
                    LEAF => self.vars.len() as u32,
                    v => self.vars.partition_point(|&u| u < v) as u32,
                }
            }

            fn go(&mut self, id: u32) -> RingElem {
                if let Some(&r) = self.memo.get(&id) {
                    return r;
                }
                let d = self.d;
                let node = d.nodes[id as usize];
                let r = if node.var == LEAF {
                    (self.w)(d.values[node.lo as usize])
                } else {
                    let here = self.level(id);
                    let lo = d.ring.mul(self.go(node.lo), d.pow2(self.level(node.lo) - here - 1));
                    let hi = d.ring.mul(self.go(node.hi), d.pow2(self.level(node.hi) - here - 1));
                    d.ring.add(lo, hi)
                };
                self.memo.insert(id, r);
                r
            }
        }
        let mut walk = Walk { d: self, vars: self.live_vars(), w: &w, memo: HashMap::new() };
        let top = walk.level(self.root);
        let r = walk.go(self.root);
        self.ring.mul(r, self.pow2(top))
    }

    /// Variables of the current wires, in diagram order.
    fn live_vars(&self) -> Vec<u32> {
        let mut v = self.order[..self.n].to_vec();
        v.sort_unstable();
        v
    }

    pub fn norm(&self) -> RingElem {
        self.total(|a| self.ring.mul(self.ring.conj(a), a))
    }

    pub fn sum(&self) -> RingElem {
        self.total(|a| a)
    }

    /// Distinct nonzero amplitudes.
    fn amplitudes(&self) -> Vec<RingElem> {
        let mut v: Vec<RingElem> = self
            .reachable()
            .into_iter()
            .filter_map(|id| self.value(id))
            .filter(|a| !a.is_zero())
            .collect();
        v.sort_unstable();
        v
    }

    pub fn in_space(&self, space: StateSpace) -> bool {
        match space {
            StateSpace::Generic if self.ring.is_cyclic() => {
                let k = self.ring.k();
                self.amplitudes().iter().fold(k, |g, a| g.gcd(&(a.raw()[0] as u64))) == 1
            }
            StateSpace::Generic => self.amplitudes().into_iter().any(|a| self.ring.is_unit(a)),
            StateSpace::L1 => self.sum() == self.ring.one(),
            StateSpace::L2 => self.norm() == self.ring.one(),
        }
    }

    pub fn amp(&self, x: &BitString) -> RingElem {
        let mut id = self.root;
        loop {
            let node = self.nodes[id as usize];
            if node.var == LEAF {
                return self.values[node.lo as usize];
            }
            let w = self.order.iter().position(|&v| v == node.var).expect("live variable");
            id = if x.0[w] { node.hi } else { node.lo };
        }
    }

    /// Whether the state is exactly `|x⟩`.
    pub fn is_basis(&self, x: &BitString) -> bool {
        if x.len() != self.n {
            return false;
        }
        let mut d = self.clone();
        d.basis_node(x) == d.root
    }

    /// Nonzero amplitudes in increasing string order; fails past `cap` entries.
    pub fn entries(&self, cap: usize) -> Result<Vec<(BitString, RingElem)>> {
        let vars = self.live_vars();
        let wire_at: Vec<usize> =
            vars.iter().map(|&v| self.order.iter().position(|&u| u == v).expect("live variable")).collect();
        let mut out = Vec::new();
        let mut stack = vec![(self.root, 0usize, Vec::<bool>::new())];
        while let Some((id, depth, prefix)) = stack.pop() {
            if id == self.zero {
                continue;
            }
            if depth == self.n {
                let mut bits = vec![false; self.n];
                for (d, &b) in prefix.iter().enumerate() {
                    bits[wire_at[d]] = b;
                }
                out.push((BitString(bits), self.value(id).expect("bottom is a leaf")));
                if out.len() > cap {
                    return Err(Error::SupportOverflow { size: out.len(), cap });
                }
                continue;
            }
            let (lo, hi) = self.cof(id, vars[depth]);
            let v = depth;
            let mut p1 = prefix.clone();
            p1.push(true);
            stack.push((hi, v + 1, p1));
            let mut p0 = prefix;
            p0.push(false);
            stack.push((lo, v + 1, p0));
        }
        out.sort_unstable_by(|a, b| a.0 .0.cmp(&b.0 .0));
        Ok(out)
    }

    pub fn to_dense(&self) -> Result<ModalState> {
        let mut psi = ModalState::zero(&self.ring, self.n)?;
        for (x, a) in self.entries(usize::MAX)? {
            psi.set_amp(&x, a);
        }
        Ok(psi)
    }

    /// Decision on the 1-indexed `wire`, as for dense states.
    pub fn decide(&self, wire: usize, space: StateSpace) -> Result<Decision> {
        if wire == 0 || wire > self.n {
            return Err(Error::InvalidWire { wire, width: self.n });
        }
        let v = self.order[wire - 1];
        let mut d = self.clone();
        let root = d.root;
        let when0 = d.restrict(root, &[(v, false)], &mut HashMap::new());
        let when1 = d.restrict(root, &[(v, true)], &mut HashMap::new());
        let in_space = self.in_space(space);
        Ok(if in_space && when0 == d.zero {
            Decision::One
        } else if in_space && when1 == d.zero {
            Decision::Zero
        } else {
            Decision::NotNecessary
        })
    }
}

impl PartialEq for DdState {
    fn eq(&self, other: &DdState) -> bool {
        self.ring == other.ring && self.n == other.n && self.entries(usize::MAX).ok() == other.entries(usize::MAX).ok()
    }
}

impl Circuit {
    /// Runs on `|x⟩` with the state held as a decision diagram. Only square
    /// gates are supported.
    pub fn run_dd(&self, x: &BitString) -> Result<DdState> {
        if x.len() != self.inputs {
            return Err(Error::WidthMismatch(format!(
                "circuit takes {} input bits, got {}",
                self.inputs,
                x.len()
            )));
        }
        let mut state = DdState::basis_ordered(&self.ring, x, self.dd_order());
        let mut live = 1usize << 16;
        for op in &self.ops {
            match op {
                Op::Prep => state.extend(),
                Op::Apply { gate, wires } => state.apply(gate, wires)?,
            }
            if state.nodes.len() > 4 * live {
                state.compact();
                live = state.nodes.len().max(1 << 16);
            }
        }
        Ok(state)
    }

    /// Wire order for the diagram: each wire is followed by the other
    /// targets of the dense gates it meets, so local blocks stay adjacent.
    fn dd_order(&self) -> Vec<u32> {
        let width = self.peak_width();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); width];
        for (g, wires) in self.gates() {
            if g.permutation().is_none() {
                let t = &wires[g.controls()..];
                for &a in t {
                    adj[a - 1].extend(t.iter().filter(|&&b| b != a).map(|&b| b - 1));
                }
            }
        }
        let mut seq = Vec::with_capacity(width);
        let mut placed = vec![false; width];
        for start in 0..width {
            let mut stack = vec![start];
            while let Some(w) = stack.pop() {
                if std::mem::replace(&mut placed[w], true) {
                    continue;
                }
                seq.push(w);
                stack.extend(adj[w].iter().rev().filter(|&&b| !placed[b]));
            }
        }
        let mut order = vec![0u32; width];
        for (v, &w) in seq.iter().enumerate() {
            order[w] = v as u32;
        }
        order
    }

    /// [`Circuit::decide`] through the decision-diagram executor.
    pub fn decide_dd(&self, x: &BitString, space: StateSpace) -> Result<Decision> {
        self.run_dd(x)?.decide(self.output_wire(), space)
    }
}
