//! Interpretation of L-subjects with parameters: terms and contexts become
//! carrier elements, commands become pairs, and the pole is the order.

use std::collections::HashMap;
use std::marker::PhantomData;

use crate::lattice::{Elem, FiniteLattice};
use crate::structures::{Kind, Structure};

use super::syntax::{Command, Context, Name, Sort, Subject, Term};
use super::{CalcError, Polarity};

/// An interpreted command `⟨t‖e⟩`.
pub type Cmd = (Elem, Elem);

pub fn in_pole(l: &FiniteLattice, c: Cmd) -> bool {
    l.le(c.0, c.1)
}

/// `c1 ⊴ c2`: whenever `c2` is in the pole so is `c1` (closure under
/// anti-reduction).
pub fn command_order(l: &FiniteLattice, c1: Cmd, c2: Cmd) -> bool {
    !in_pole(l, c2) || in_pole(l, c1)
}

/// Binders on the term side are meets, binders on the context side joins,
/// in both calculi.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Term,
    Context,
}

fn gather(l: &FiniteLattice, side: Side, items: impl Iterator<Item = Elem>) -> Elem {
    match side {
        Side::Term => l.meet_all(items),
        Side::Context => l.join_all(items),
    }
}

/// The pairing law of the structure: `⅋` or `⊗`.
pub fn pairing(s: &Structure, a: Elem, b: Elem) -> Elem {
    match s {
        Structure::Disjunctive(d) => d.par(a, b),
        Structure::Conjunctive(c) => c.tensor(a, b),
        Structure::Implicative(_) => panic!("implicative structures have no pairing"),
    }
}

/// `{a : c(a) ∈ ⊥⊥}` gathered by the side's operation.
pub fn bind_mu(l: &FiniteLattice, side: Side, c: impl Fn(Elem) -> Cmd) -> Elem {
    gather(l, side, l.elements().filter(|&a| in_pole(l, c(a))))
}

/// `{(a,b) : c(a,b) ∈ ⊥⊥}` mapped through the pairing and gathered.
pub fn bind_pair(s: &Structure, side: Side, c: impl Fn(Elem, Elem) -> Cmd) -> Elem {
    let l = s.lattice();
    let items: Vec<Elem> = l
        .elements()
        .flat_map(|a| l.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| in_pole(l, c(a, b)))
        .map(|(a, b)| pairing(s, a, b))
        .collect();
    gather(l, side, items.into_iter())
}

/// `{¬a : c(a) ∈ ⊥⊥}` gathered.
pub fn bind_box(s: &Structure, side: Side, c: impl Fn(Elem) -> Cmd) -> Elem {
    let l = s.lattice();
    let items: Vec<Elem> = l.elements().filter(|&a| in_pole(l, c(a))).map(|a| s.neg(a)).collect();
    gather(l, side, items.into_iter())
}

pub fn expected_kind(pol: Polarity) -> Kind {
    match pol {
        Polarity::Par => Kind::Disjunctive,
        Polarity::Tens => Kind::Conjunctive,
    }
}

/// Values of free names.
pub type Env = Vec<(Sort, String, Elem)>;

fn env_get(env: &Env, s: Sort, n: &str) -> Option<Elem> {
    env.iter().rev().find(|(s2, n2, _)| *s2 == s && n2 == n).map(|(_, _, v)| *v)
}

/// Memoizing interpreter. Binder nodes are cached on the values of their
/// free names, so nested binders cost the size of their own free scope.
pub struct Interpreter<'s, 'a> {
    s: &'s Structure,
    free: HashMap<usize, Vec<Name>>,
    memo: HashMap<(usize, Vec<Elem>), Elem>,
    _ast: PhantomData<&'a ()>,
}

impl<'s, 'a> Interpreter<'s, 'a> {
    pub fn new(s: &'s Structure, pol: Polarity) -> Result<Self, CalcError> {
        let want = expected_kind(pol);
        if s.kind() != want {
            return Err(CalcError::KindMismatch { wanted: want, found: s.kind() });
        }
        Ok(Interpreter { s, free: HashMap::new(), memo: HashMap::new(), _ast: PhantomData })
    }

    fn param(&self, p: Elem) -> Elem {
        assert!(p < self.s.lattice().size(), "parameter {p} outside the carrier");
        p
    }

    fn key(&mut self, addr: usize, free: impl FnOnce() -> Vec<Name>, env: &Env) -> (usize, Vec<Elem>) {
        let names = self.free.entry(addr).or_insert_with(free);
        let vals = names.iter().map(|(s, n)| env_get(env, *s, n).expect("free name bound in env")).collect();
        (addr, vals)
    }

    fn binder(
        &mut self,
        addr: usize,
        free: impl FnOnce() -> Vec<Name>,
        env: &mut Env,
        compute: impl FnOnce(&mut Self, &mut Env) -> Elem,
    ) -> Elem {
        let key = self.key(addr, free, env);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = compute(self, env);
        self.memo.insert(key, v);
        v
    }

    fn hits1(&mut self, sort: Sort, x: &str, body: &'a Command, env: &mut Env) -> Vec<Elem> {
        let l = self.s.lattice();
        let mut hits = Vec::new();
        for a in l.elements() {
            env.push((sort, x.to_string(), a));
            let c = self.command(body, env);
            env.pop();
            if in_pole(l, c) {
                hits.push(a);
            }
        }
        hits
    }

    fn hits2(&mut self, sort: Sort, x: &str, y: &str, body: &'a Command, env: &mut Env) -> Vec<(Elem, Elem)> {
        let l = self.s.lattice();
        let mut hits = Vec::new();
        for a in l.elements() {
            for b in l.elements() {
                env.push((sort, x.to_string(), a));
                env.push((sort, y.to_string(), b));
                let c = self.command(body, env);
                env.pop();
                env.pop();
                if in_pole(l, c) {
                    hits.push((a, b));
                }
            }
        }
        hits
    }

    pub fn term(&mut self, t: &'a Term, env: &mut Env) -> Elem {
        let s = self.s;
        let l = s.lattice();
        let addr = t as *const Term as usize;
        let free = || t.free().into_iter().collect();
        match t {
            Term::Var(x) => env_get(env, Sort::Var, x).expect("free variable bound in env"),
            Term::Param(p) => self.param(*p),
            Term::Pair(a, b) => {
                let (a, b) = (self.term(a, env), self.term(b, env));
                pairing(s, a, b)
            }
            Term::Boxed(e) => {
                let v = self.context(e, env);
                s.neg(v)
            }
            Term::Mu(a, c) => self.binder(addr, free, env, |me, env| {
                let hits = me.hits1(Sort::CoVar, a, c, env);
                gather(l, Side::Term, hits.into_iter())
            }),
            Term::MuPair(a1, a2, c) => self.binder(addr, free, env, |me, env| {
                let hits = me.hits2(Sort::CoVar, a1, a2, c, env);
                gather(l, Side::Term, hits.into_iter().map(|(a, b)| pairing(s, a, b)))
            }),
            Term::MuBox(x, c) => self.binder(addr, free, env, |me, env| {
                let hits = me.hits1(Sort::Var, x, c, env);
                gather(l, Side::Term, hits.into_iter().map(|a| s.neg(a)))
            }),
        }
    }

    pub fn context(&mut self, e: &'a Context, env: &mut Env) -> Elem {
        let s = self.s;
        let l = s.lattice();
        let addr = e as *const Context as usize;
        let free = || e.free().into_iter().collect();
        match e {
            Context::CoVar(a) => env_get(env, Sort::CoVar, a).expect("free covariable bound in env"),
            Context::Param(p) => self.param(*p),
            Context::Pair(a, b) => {
                let (a, b) = (self.context(a, env), self.context(b, env));
                pairing(s, a, b)
            }
            Context::Boxed(t) => {
                let v = self.term(t, env);
                s.neg(v)
            }
            Context::Mu(x, c) => self.binder(addr, free, env, |me, env| {
                let hits = me.hits1(Sort::Var, x, c, env);
                gather(l, Side::Context, hits.into_iter())
            }),
            Context::MuPair(x, y, c) => self.binder(addr, free, env, |me, env| {
                let hits = me.hits2(Sort::Var, x, y, c, env);
                gather(l, Side::Context, hits.into_iter().map(|(a, b)| pairing(s, a, b)))
            }),
            Context::MuBox(a, c) => self.binder(addr, free, env, |me, env| {
                let hits = me.hits1(Sort::CoVar, a, c, env);
                gather(l, Side::Context, hits.into_iter().map(|v| s.neg(v)))
            }),
        }
    }

    pub fn command(&mut self, c: &'a Command, env: &mut Env) -> Cmd {
        (self.term(&c.term, env), self.context(&c.ctx, env))
    }

    pub fn subject(&mut self, x: &'a Subject, env: &mut Env) -> Interpretation {
        match x {
            Subject::Term(t) => Interpretation::Element(self.term(t, env)),
            Subject::Context(e) => Interpretation::Element(self.context(e, env)),
            Subject::Command(c) => Interpretation::Command(self.command(c, env)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpretation {
    Element(Elem),
    Command(Cmd),
}

fn validate(s: &Structure, pol: Polarity, x: &Subject, env: &Env) -> Result<(), CalcError> {
    x.check_polarity(pol)?;
    if let Some((sort, n)) = x.free().into_iter().find(|(s2, n)| env_get(env, *s2, n).is_none()) {
        return Err(CalcError::OpenSubject(format!("{n} ({sort:?})")));
    }
    if let Some(&p) = x.params().iter().find(|&&p| p >= s.lattice().size()) {
        return Err(CalcError::BadParameter(p));
    }
    Ok(())
}

/// Interprets a subject whose free names are all given by `env`.
pub fn interpret_in(s: &Structure, pol: Polarity, x: &Subject, env: &Env) -> Result<Interpretation, CalcError> {
    validate(s, pol, x, env)?;
    let mut it = Interpreter::new(s, pol)?;
    let mut env = env.clone();
    Ok(it.subject(x, &mut env))
}

/// Interprets a closed subject.
pub fn interpret(s: &Structure, pol: Polarity, x: &Subject) -> Result<Interpretation, CalcError> {
    interpret_in(s, pol, x, &Vec::new())
}

pub fn interpret_command(s: &Structure, pol: Polarity, c: &Command) -> Result<Cmd, CalcError> {
    match interpret(s, pol, &Subject::Command(c.clone()))? {
        Interpretation::Command(v) => Ok(v),
        Interpretation::Element(_) => unreachable!("commands interpret as pairs"),
    }
}

pub fn interpret_term(s: &Structure, pol: Polarity, t: &Term) -> Result<Elem, CalcError> {
    match interpret(s, pol, &Subject::Term(t.clone()))? {
        Interpretation::Element(v) => Ok(v),
        Interpretation::Command(_) => unreachable!("terms interpret as elements"),
    }
}

pub fn interpret_context(s: &Structure, pol: Polarity, e: &Context) -> Result<Elem, CalcError> {
    match interpret(s, pol, &Subject::Context(e.clone()))? {
        Interpretation::Element(v) => Ok(v),
        Interpretation::Command(_) => unreachable!("contexts interpret as elements"),
    }
}
