//! Commands compiled to a node arena over numbered slots, for sweeps that
//! interpret the same command under many structures and assignments.

use std::collections::HashMap;

use crate::lattice::Elem;
use crate::structures::Structure;

use super::interp::{in_pole, pairing, Cmd, Side};
use super::syntax::{Command, Context, Name, Sort, Term};
use super::CalcError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bound {
    One,
    Two,
    Boxed,
}

#[derive(Debug, Clone)]
enum Node {
    Slot(usize),
    Const(Elem),
    Pair(usize, usize),
    Neg(usize),
    Bind { side: Side, bound: Bound, base: usize, term: usize, ctx: usize, free: Vec<usize>, memo: usize },
}

/// A command with its free names mapped to the leading slots.
#[derive(Debug, Clone)]
pub struct Compiled {
    nodes: Vec<Node>,
    term: usize,
    ctx: usize,
    inputs: Vec<Name>,
    slots: usize,
    memo_widths: Vec<usize>,
}

struct Builder {
    nodes: Vec<Node>,
    scope: Vec<Name>,
    slots: usize,
    memo_widths: Vec<usize>,
    /// Slots read by the subtree under construction.
    reads: Vec<Vec<usize>>,
}

impl Builder {
    fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    fn lookup(&mut self, sort: Sort, x: &str) -> Result<usize, CalcError> {
        let slot = self
            .scope
            .iter()
            .rposition(|(s, n)| *s == sort && n == x)
            .ok_or_else(|| CalcError::OpenSubject(format!("{x} ({sort:?})")))?;
        if let Some(r) = self.reads.last_mut() {
            r.push(slot);
        }
        Ok(slot)
    }

    fn bind(&mut self, side: Side, bound: Bound, names: &[(Sort, &str)], c: &Command) -> Result<usize, CalcError> {
        let base = self.scope.len();
        for &(s, n) in names {
            self.scope.push((s, n.to_string()));
        }
        self.slots = self.slots.max(self.scope.len());
        self.reads.push(Vec::new());
        let term = self.term(&c.term)?;
        let ctx = self.context(&c.ctx)?;
        let reads = self.reads.pop().unwrap_or_default();
        self.scope.truncate(base);
        let mut free: Vec<usize> = reads.into_iter().filter(|&r| r < base).collect();
        free.sort_unstable();
        free.dedup();
        if let Some(r) = self.reads.last_mut() {
            r.extend(&free);
        }
        let memo = self.memo_widths.len();
        self.memo_widths.push(free.len());
        Ok(self.push(Node::Bind { side, bound, base, term, ctx, free, memo }))
    }

    fn term(&mut self, t: &Term) -> Result<usize, CalcError> {
        let node = match t {
            Term::Var(x) => Node::Slot(self.lookup(Sort::Var, x)?),
            Term::Param(p) => Node::Const(*p),
            Term::Pair(a, b) => Node::Pair(self.term(a)?, self.term(b)?),
            Term::Boxed(e) => Node::Neg(self.context(e)?),
            Term::Mu(a, c) => return self.bind(Side::Term, Bound::One, &[(Sort::CoVar, a)], c),
            Term::MuPair(a, b, c) => return self.bind(Side::Term, Bound::Two, &[(Sort::CoVar, a), (Sort::CoVar, b)], c),
            Term::MuBox(x, c) => return self.bind(Side::Term, Bound::Boxed, &[(Sort::Var, x)], c),
        };
        Ok(self.push(node))
    }

    fn context(&mut self, e: &Context) -> Result<usize, CalcError> {
        let node = match e {
            Context::CoVar(a) => Node::Slot(self.lookup(Sort::CoVar, a)?),
            Context::Param(p) => Node::Const(*p),
            Context::Pair(a, b) => Node::Pair(self.context(a)?, self.context(b)?),
            Context::Boxed(t) => Node::Neg(self.term(t)?),
            Context::Mu(x, c) => return self.bind(Side::Context, Bound::One, &[(Sort::Var, x)], c),
            Context::MuPair(x, y, c) => return self.bind(Side::Context, Bound::Two, &[(Sort::Var, x), (Sort::Var, y)], c),
            Context::MuBox(a, c) => return self.bind(Side::Context, Bound::Boxed, &[(Sort::CoVar, a)], c),
        };
        Ok(self.push(node))
    }
}

impl Compiled {
    /// Compiles `c`; every free name must be among `inputs`.
    pub fn new(c: &Command, inputs: &[Name]) -> Result<Self, CalcError> {
        let mut b = Builder { nodes: Vec::new(), scope: inputs.to_vec(), slots: inputs.len(), memo_widths: Vec::new(), reads: Vec::new() };
        let term = b.term(&c.term)?;
        let ctx = b.context(&c.ctx)?;
        Ok(Compiled { nodes: b.nodes, term, ctx, inputs: inputs.to_vec(), slots: b.slots, memo_widths: b.memo_widths })
    }

    pub fn inputs(&self) -> &[Name] {
        &self.inputs
    }

    /// An evaluator for one structure. Binder values are cached on the
    /// values of their free slots for the evaluator's lifetime.
    pub fn evaluator<'s>(&'s self, s: &'s Structure) -> Evaluator<'s> {
        let n = s.lattice().size();
        let memos = self
            .memo_widths
            .iter()
            .map(|&w| match n.checked_pow(w as u32) {
                Some(size) if size <= DENSE_MEMO => Memo::Dense(vec![u32::MAX; size]),
                _ => Memo::Sparse(HashMap::new()),
            })
            .collect();
        Evaluator { code: self, s, n, memos, slots: vec![0; self.slots] }
    }
}

const DENSE_MEMO: usize = 4096;

enum Memo {
    Dense(Vec<u32>),
    Sparse(HashMap<usize, u32>),
}

impl Memo {
    fn get(&self, key: usize) -> Option<Elem> {
        match self {
            Memo::Dense(v) => v.get(key).filter(|&&x| x != u32::MAX).map(|&x| x as Elem),
            Memo::Sparse(m) => m.get(&key).map(|&x| x as Elem),
        }
    }

    fn set(&mut self, key: usize, v: Elem) {
        match self {
            Memo::Dense(t) => t[key] = v as u32,
            Memo::Sparse(m) => {
                m.insert(key, v as u32);
            }
        }
    }
}

pub struct Evaluator<'s> {
    code: &'s Compiled,
    s: &'s Structure,
    n: usize,
    memos: Vec<Memo>,
    slots: Vec<Elem>,
}

impl Evaluator<'_> {
    /// Interprets the command with `values[i]` for the `i`-th input name.
    pub fn run(&mut self, values: &[Elem]) -> Cmd {
        assert_eq!(values.len(), self.code.inputs.len(), "one value per input name");
        self.slots[..values.len()].copy_from_slice(values);
        (self.value(self.code.term), self.value(self.code.ctx))
    }

    fn value(&mut self, id: usize) -> Elem {
        let code = self.code;
        match &code.nodes[id] {
            Node::Slot(k) => self.slots[*k],
            Node::Const(p) => {
                assert!(*p < self.n, "parameter {p} outside the carrier");
                *p
            }
            Node::Pair(a, b) => {
                let (a, b) = (self.value(*a), self.value(*b));
                pairing(self.s, a, b)
            }
            Node::Neg(a) => {
                let a = self.value(*a);
                self.s.neg(a)
            }
            Node::Bind { side, bound, base, term, ctx, free, memo } => {
                let key = free.iter().fold(0, |acc, &f| acc * self.n + self.slots[f]);
                if let Some(v) = self.memos[*memo].get(key) {
                    return v;
                }
                let l = self.s.lattice();
                let mut acc = match side {
                    Side::Term => l.top(),
                    Side::Context => l.bot(),
                };
                let (outer, inner) = if *bound == Bound::Two { (self.n, self.n) } else { (self.n, 1) };
                for a in 0..outer {
                    for b in 0..inner {
                        self.slots[*base] = a;
                        if *bound == Bound::Two {
                            self.slots[*base + 1] = b;
                        }
                        let c = (self.value(*term), self.value(*ctx));
                        if !in_pole(l, c) {
                            continue;
                        }
                        let item = match bound {
                            Bound::One => a,
                            Bound::Two => pairing(self.s, a, b),
                            Bound::Boxed => self.s.neg(a),
                        };
                        acc = match side {
                            Side::Term => l.meet(acc, item),
                            Side::Context => l.join(acc, item),
                        };
                    }
                }
                self.memos[*memo].set(key, acc);
                acc
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::corpus;
    use crate::calculi::interp::Interpreter;
    use crate::calculi::Polarity;
    use crate::catalog::{enumerate_conjunctive, enumerate_disjunctive};
    use crate::lattice::enumerate_lattices;

    #[test]
    fn agrees_with_the_tree_interpreter() {
        for pol in [Polarity::Par, Polarity::Tens] {
            let pairs = corpus::reduction_pairs(pol, 12);
            for l in enumerate_lattices(3) {
                let ss: Vec<Structure> = match pol {
                    Polarity::Par => enumerate_disjunctive(&l).into_iter().map(Into::into).collect(),
                    Polarity::Tens => enumerate_conjunctive(&l).into_iter().map(Into::into).collect(),
                };
                for s in ss.iter().step_by(7) {
                    let n = s.lattice().size();
                    for (_, _, c, _) in &pairs {
                        if c.params().iter().any(|&p| p >= n) {
                            continue;
                        }
                        let code = Compiled::new(c, &[]).unwrap();
                        let expected = Interpreter::new(s, pol).unwrap().command(c, &mut Vec::new());
                        assert_eq!(code.evaluator(s).run(&[]), expected, "{c}");
                    }
                }
            }
        }
    }
}
