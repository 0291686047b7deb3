use std::collections::BTreeSet;
use std::fmt;

use crate::encodings::{fresh_name, Formula};
use crate::lattice::Elem;

use super::{CalcError, Polarity};

/// Variables live on the term side, covariables on the context side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Var,
    CoVar,
}

pub type Name = (Sort, String);

/// Terms of both calculi. `Pair` and `Boxed` are L⊗ only, `MuPair` and
/// `MuBox` L⅋ only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Param(Elem),
    /// `μα.c`
    Mu(String, Box<Command>),
    Pair(Box<Term>, Box<Term>),
    Boxed(Box<Context>),
    /// `μ(α1,α2).c`
    MuPair(String, String, Box<Command>),
    /// `μ[x].c`
    MuBox(String, Box<Command>),
}

/// Contexts of both calculi. `Pair` and `Boxed` are L⅋ only, `MuPair` and
/// `MuBox` L⊗ only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Context {
    CoVar(String),
    Param(Elem),
    /// `μx.c`
    Mu(String, Box<Command>),
    Pair(Box<Context>, Box<Context>),
    Boxed(Box<Term>),
    /// `μ(x,y).c`
    MuPair(String, String, Box<Command>),
    /// `μ[α].c`
    MuBox(String, Box<Command>),
}

/// `⟨t‖e⟩`, optionally annotated with its cut formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Command {
    pub term: Term,
    pub ctx: Context,
    pub cut: Option<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Subject {
    Term(Term),
    Context(Context),
    Command(Command),
}

pub fn cmd(term: Term, ctx: Context) -> Command {
    Command { term, ctx, cut: None }
}

impl Term {
    pub fn var(x: &str) -> Self {
        Term::Var(x.into())
    }
    pub fn mu(a: &str, c: Command) -> Self {
        Term::Mu(a.into(), Box::new(c))
    }
    pub fn pair(t: Term, u: Term) -> Self {
        Term::Pair(Box::new(t), Box::new(u))
    }
    pub fn boxed(e: Context) -> Self {
        Term::Boxed(Box::new(e))
    }
    pub fn mu_pair(a1: &str, a2: &str, c: Command) -> Self {
        Term::MuPair(a1.into(), a2.into(), Box::new(c))
    }
    pub fn mu_box(x: &str, c: Command) -> Self {
        Term::MuBox(x.into(), Box::new(c))
    }

    /// L⊗ values: variables, parameters, pairs of values and boxes.
    pub fn is_value(&self) -> bool {
        match self {
            Term::Var(_) | Term::Param(_) | Term::Boxed(_) => true,
            Term::Pair(t, u) => t.is_value() && u.is_value(),
            _ => false,
        }
    }

    pub fn free(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                out.insert((Sort::Var, x.clone()));
            }
            Term::Param(_) => {}
            Term::Mu(a, c) => collect_bound(c, &[(Sort::CoVar, a)], out),
            Term::Pair(t, u) => {
                t.collect_free(out);
                u.collect_free(out);
            }
            Term::Boxed(e) => e.collect_free(out),
            Term::MuPair(a1, a2, c) => collect_bound(c, &[(Sort::CoVar, a1), (Sort::CoVar, a2)], out),
            Term::MuBox(x, c) => collect_bound(c, &[(Sort::Var, x)], out),
        }
    }

    pub fn check_polarity(&self, pol: Polarity) -> Result<(), CalcError> {
        match (self, pol) {
            (Term::Var(_) | Term::Param(_), _) => Ok(()),
            (Term::Mu(_, c), _) => c.check_polarity(pol),
            (Term::Pair(t, u), Polarity::Tens) => {
                t.check_polarity(pol)?;
                u.check_polarity(pol)
            }
            (Term::Boxed(e), Polarity::Tens) => e.check_polarity(pol),
            (Term::MuPair(_, _, c) | Term::MuBox(_, c), Polarity::Par) => c.check_polarity(pol),
            _ => Err(CalcError::Polarity { polarity: pol, construct: self.head().into() }),
        }
    }

    pub fn head(&self) -> &'static str {
        match self {
            Term::Var(_) => "variable",
            Term::Param(_) => "parameter",
            Term::Mu(..) => "mu",
            Term::Pair(..) => "pair",
            Term::Boxed(_) => "box",
            Term::MuPair(..) => "mupair",
            Term::MuBox(..) => "mubox",
        }
    }
}

impl Context {
    pub fn covar(a: &str) -> Self {
        Context::CoVar(a.into())
    }
    pub fn mu(x: &str, c: Command) -> Self {
        Context::Mu(x.into(), Box::new(c))
    }
    pub fn pair(e1: Context, e2: Context) -> Self {
        Context::Pair(Box::new(e1), Box::new(e2))
    }
    pub fn boxed(t: Term) -> Self {
        Context::Boxed(Box::new(t))
    }
    pub fn mu_pair(x: &str, y: &str, c: Command) -> Self {
        Context::MuPair(x.into(), y.into(), Box::new(c))
    }
    pub fn mu_box(a: &str, c: Command) -> Self {
        Context::MuBox(a.into(), Box::new(c))
    }

    /// L⅋ values: covariables, parameters, pairs of values and boxes.
    pub fn is_value(&self) -> bool {
        match self {
            Context::CoVar(_) | Context::Param(_) | Context::Boxed(_) => true,
            Context::Pair(e1, e2) => e1.is_value() && e2.is_value(),
            _ => false,
        }
    }

    pub fn free(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            Context::CoVar(a) => {
                out.insert((Sort::CoVar, a.clone()));
            }
            Context::Param(_) => {}
            Context::Mu(x, c) => collect_bound(c, &[(Sort::Var, x)], out),
            Context::Pair(e1, e2) => {
                e1.collect_free(out);
                e2.collect_free(out);
            }
            Context::Boxed(t) => t.collect_free(out),
            Context::MuPair(x, y, c) => collect_bound(c, &[(Sort::Var, x), (Sort::Var, y)], out),
            Context::MuBox(a, c) => collect_bound(c, &[(Sort::CoVar, a)], out),
        }
    }

    pub fn check_polarity(&self, pol: Polarity) -> Result<(), CalcError> {
        match (self, pol) {
            (Context::CoVar(_) | Context::Param(_), _) => Ok(()),
            (Context::Mu(_, c), _) => c.check_polarity(pol),
            (Context::Pair(e1, e2), Polarity::Par) => {
                e1.check_polarity(pol)?;
                e2.check_polarity(pol)
            }
            (Context::Boxed(t), Polarity::Par) => t.check_polarity(pol),
            (Context::MuPair(_, _, c) | Context::MuBox(_, c), Polarity::Tens) => c.check_polarity(pol),
            _ => Err(CalcError::Polarity { polarity: pol, construct: self.head().into() }),
        }
    }

    pub fn head(&self) -> &'static str {
        match self {
            Context::CoVar(_) => "covariable",
            Context::Param(_) => "parameter",
            Context::Mu(..) => "mut",
            Context::Pair(..) => "pair",
            Context::Boxed(_) => "box",
            Context::MuPair(..) => "mupair",
            Context::MuBox(..) => "mubox",
        }
    }
}

fn collect_bound(c: &Command, bound: &[(Sort, &String)], out: &mut BTreeSet<Name>) {
    let mut inner = BTreeSet::new();
    c.collect_free(&mut inner);
    for (s, n) in bound {
        inner.remove(&(*s, (*n).clone()));
    }
    out.extend(inner);
}

impl Command {
    pub fn with_cut(mut self, a: Formula) -> Self {
        self.cut = Some(a);
        self
    }

    pub fn free(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        self.term.collect_free(out);
        self.ctx.collect_free(out);
    }

    pub fn is_closed(&self) -> bool {
        self.free().is_empty()
    }

    pub fn check_polarity(&self, pol: Polarity) -> Result<(), CalcError> {
        self.term.check_polarity(pol)?;
        self.ctx.check_polarity(pol)
    }

    /// Equality up to renaming of bound names, ignoring cut annotations.
    pub fn alpha_eq(&self, other: &Command) -> bool {
        alpha_cmd(self, other, &mut Vec::new())
    }
}

impl Subject {
    pub fn free(&self) -> BTreeSet<Name> {
        match self {
            Subject::Term(t) => t.free(),
            Subject::Context(e) => e.free(),
            Subject::Command(c) => c.free(),
        }
    }

    pub fn check_polarity(&self, pol: Polarity) -> Result<(), CalcError> {
        match self {
            Subject::Term(t) => t.check_polarity(pol),
            Subject::Context(e) => e.check_polarity(pol),
            Subject::Command(c) => c.check_polarity(pol),
        }
    }
}

// ---------------------------------------------------------------------------
// substitution

/// What a name is replaced by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Replacement {
    Term(Term),
    Context(Context),
}

impl Replacement {
    fn free(&self) -> BTreeSet<Name> {
        match self {
            Replacement::Term(t) => t.free(),
            Replacement::Context(e) => e.free(),
        }
    }
}

pub type Substitution = Vec<(Name, Replacement)>;

fn lookup<'a>(sub: &'a Substitution, s: Sort, n: &str) -> Option<&'a Replacement> {
    sub.iter().find(|((s2, n2), _)| *s2 == s && n2 == n).map(|(_, r)| r)
}

/// Drops shadowed entries and renames binders that would capture.
/// Returns the adjusted substitution and the (possibly renamed) binder names.
fn enter_binder(sub: &Substitution, binders: &[(Sort, &String)], body: &Command) -> (Substitution, Vec<String>, Command) {
    let inner: Substitution =
        sub.iter().filter(|((s, n), _)| !binders.iter().any(|(bs, bn)| bs == s && *bn == n)).cloned().collect();
    let repl_free: BTreeSet<Name> = inner.iter().flat_map(|(_, r)| r.free()).collect();
    let mut body = body.clone();
    let mut names = Vec::new();
    let mut avoid: Vec<String> = repl_free.iter().map(|(_, n)| n.clone()).collect();
    avoid.extend(body.free().into_iter().map(|(_, n)| n));
    avoid.extend(binders.iter().map(|(_, n)| (*n).clone()));
    for (s, n) in binders {
        if repl_free.contains(&(*s, (*n).clone())) {
            let fresh = fresh_name(n, &avoid);
            avoid.push(fresh.clone());
            let rename = match s {
                Sort::Var => Replacement::Term(Term::Var(fresh.clone())),
                Sort::CoVar => Replacement::Context(Context::CoVar(fresh.clone())),
            };
            body = body.subst(&vec![((*s, (*n).clone()), rename)]);
            names.push(fresh);
        } else {
            names.push((*n).clone());
        }
    }
    (inner, names, body)
}

impl Term {
    pub fn subst(&self, sub: &Substitution) -> Term {
        if sub.is_empty() {
            return self.clone();
        }
        match self {
            Term::Var(x) => match lookup(sub, Sort::Var, x) {
                Some(Replacement::Term(t)) => t.clone(),
                Some(Replacement::Context(_)) => panic!("variable {x} replaced by a context"),
                None => self.clone(),
            },
            Term::Param(_) => self.clone(),
            Term::Mu(a, c) => {
                let (inner, names, body) = enter_binder(sub, &[(Sort::CoVar, a)], c);
                Term::Mu(names[0].clone(), Box::new(body.subst(&inner)))
            }
            Term::Pair(t, u) => Term::pair(t.subst(sub), u.subst(sub)),
            Term::Boxed(e) => Term::boxed(e.subst(sub)),
            Term::MuPair(a1, a2, c) => {
                let (inner, names, body) = enter_binder(sub, &[(Sort::CoVar, a1), (Sort::CoVar, a2)], c);
                Term::MuPair(names[0].clone(), names[1].clone(), Box::new(body.subst(&inner)))
            }
            Term::MuBox(x, c) => {
                let (inner, names, body) = enter_binder(sub, &[(Sort::Var, x)], c);
                Term::MuBox(names[0].clone(), Box::new(body.subst(&inner)))
            }
        }
    }
}

impl Context {
    pub fn subst(&self, sub: &Substitution) -> Context {
        if sub.is_empty() {
            return self.clone();
        }
        match self {
            Context::CoVar(a) => match lookup(sub, Sort::CoVar, a) {
                Some(Replacement::Context(e)) => e.clone(),
                Some(Replacement::Term(_)) => panic!("covariable {a} replaced by a term"),
                None => self.clone(),
            },
            Context::Param(_) => self.clone(),
            Context::Mu(x, c) => {
                let (inner, names, body) = enter_binder(sub, &[(Sort::Var, x)], c);
                Context::Mu(names[0].clone(), Box::new(body.subst(&inner)))
            }
            Context::Pair(e1, e2) => Context::pair(e1.subst(sub), e2.subst(sub)),
            Context::Boxed(t) => Context::boxed(t.subst(sub)),
            Context::MuPair(x, y, c) => {
                let (inner, names, body) = enter_binder(sub, &[(Sort::Var, x), (Sort::Var, y)], c);
                Context::MuPair(names[0].clone(), names[1].clone(), Box::new(body.subst(&inner)))
            }
            Context::MuBox(a, c) => {
                let (inner, names, body) = enter_binder(sub, &[(Sort::CoVar, a)], c);
                Context::MuBox(names[0].clone(), Box::new(body.subst(&inner)))
            }
        }
    }
}

impl Command {
    /// Simultaneous capture-avoiding substitution.
    pub fn subst(&self, sub: &Substitution) -> Command {
        Command { term: self.term.subst(sub), ctx: self.ctx.subst(sub), cut: self.cut.clone() }
    }

    pub fn subst_var(&self, x: &str, t: &Term) -> Command {
        self.subst(&vec![((Sort::Var, x.to_string()), Replacement::Term(t.clone()))])
    }

    pub fn subst_covar(&self, a: &str, e: &Context) -> Command {
        self.subst(&vec![((Sort::CoVar, a.to_string()), Replacement::Context(e.clone()))])
    }
}

// ---------------------------------------------------------------------------
// alpha equivalence

type Renaming = Vec<(Sort, String, String)>;

fn same_name(env: &Renaming, s: Sort, l: &str, r: &str) -> bool {
    for (es, el, er) in env.iter().rev() {
        if *es == s && (el == l || er == r) {
            return el == l && er == r;
        }
    }
    l == r
}

fn alpha_under(env: &mut Renaming, pairs: &[(Sort, &String, &String)], c1: &Command, c2: &Command) -> bool {
    for (s, l, r) in pairs {
        env.push((*s, (*l).clone(), (*r).clone()));
    }
    let ok = alpha_cmd(c1, c2, env);
    for _ in pairs {
        env.pop();
    }
    ok
}

fn alpha_cmd(c1: &Command, c2: &Command, env: &mut Renaming) -> bool {
    alpha_term(&c1.term, &c2.term, env) && alpha_ctx(&c1.ctx, &c2.ctx, env)
}

fn alpha_term(t1: &Term, t2: &Term, env: &mut Renaming) -> bool {
    match (t1, t2) {
        (Term::Var(x), Term::Var(y)) => same_name(env, Sort::Var, x, y),
        (Term::Param(p), Term::Param(q)) => p == q,
        (Term::Mu(a, c), Term::Mu(b, d)) => alpha_under(env, &[(Sort::CoVar, a, b)], c, d),
        (Term::Pair(a1, a2), Term::Pair(b1, b2)) => alpha_term(a1, b1, env) && alpha_term(a2, b2, env),
        (Term::Boxed(e), Term::Boxed(f)) => alpha_ctx(e, f, env),
        (Term::MuPair(a1, a2, c), Term::MuPair(b1, b2, d)) => {
            alpha_under(env, &[(Sort::CoVar, a1, b1), (Sort::CoVar, a2, b2)], c, d)
        }
        (Term::MuBox(x, c), Term::MuBox(y, d)) => alpha_under(env, &[(Sort::Var, x, y)], c, d),
        _ => false,
    }
}

fn alpha_ctx(e1: &Context, e2: &Context, env: &mut Renaming) -> bool {
    match (e1, e2) {
        (Context::CoVar(a), Context::CoVar(b)) => same_name(env, Sort::CoVar, a, b),
        (Context::Param(p), Context::Param(q)) => p == q,
        (Context::Mu(x, c), Context::Mu(y, d)) => alpha_under(env, &[(Sort::Var, x, y)], c, d),
        (Context::Pair(a1, a2), Context::Pair(b1, b2)) => alpha_ctx(a1, b1, env) && alpha_ctx(a2, b2, env),
        (Context::Boxed(t), Context::Boxed(u)) => alpha_term(t, u, env),
        (Context::MuPair(x1, x2, c), Context::MuPair(y1, y2, d)) => {
            alpha_under(env, &[(Sort::Var, x1, y1), (Sort::Var, x2, y2)], c, d)
        }
        (Context::MuBox(a, c), Context::MuBox(b, d)) => alpha_under(env, &[(Sort::CoVar, a, b)], c, d),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// printing, in the s-expression syntax accepted by the parser

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::Param(p) => write!(f, "(par {p})"),
            Term::Mu(a, c) => write!(f, "(mu {a} {c})"),
            Term::Pair(t, u) => write!(f, "(pair {t} {u})"),
            Term::Boxed(e) => write!(f, "(box {e})"),
            Term::MuPair(a1, a2, c) => write!(f, "(mupair {a1} {a2} {c})"),
            Term::MuBox(x, c) => write!(f, "(mubox {x} {c})"),
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::CoVar(a) => write!(f, "{a}"),
            Context::Param(p) => write!(f, "(par {p})"),
            Context::Mu(x, c) => write!(f, "(mut {x} {c})"),
            Context::Pair(e1, e2) => write!(f, "(pair {e1} {e2})"),
            Context::Boxed(t) => write!(f, "(box {t})"),
            Context::MuPair(x, y, c) => write!(f, "(mupair {x} {y} {c})"),
            Context::MuBox(a, c) => write!(f, "(mubox {a} {c})"),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.cut {
            Some(a) => write!(f, "(cmd {} {} {a})", self.term, self.ctx),
            None => write!(f, "(cmd {} {})", self.term, self.ctx),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Term(t) => t.fmt(f),
            Subject::Context(e) => e.fmt(f),
            Subject::Command(c) => c.fmt(f),
        }
    }
}

// ---------------------------------------------------------------------------
// parameters

impl Term {
    pub fn map_params(&self, f: &impl Fn(Elem) -> Elem) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::Param(p) => Term::Param(f(*p)),
            Term::Mu(a, c) => Term::Mu(a.clone(), Box::new(c.map_params(f))),
            Term::Pair(t, u) => Term::pair(t.map_params(f), u.map_params(f)),
            Term::Boxed(e) => Term::boxed(e.map_params(f)),
            Term::MuPair(a, b, c) => Term::MuPair(a.clone(), b.clone(), Box::new(c.map_params(f))),
            Term::MuBox(x, c) => Term::MuBox(x.clone(), Box::new(c.map_params(f))),
        }
    }

    fn collect_params(&self, out: &mut Vec<Elem>) {
        match self {
            Term::Var(_) => {}
            Term::Param(p) => out.push(*p),
            Term::Pair(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            Term::Boxed(e) => e.collect_params(out),
            Term::Mu(_, c) | Term::MuPair(_, _, c) | Term::MuBox(_, c) => c.collect_params(out),
        }
    }
}

impl Context {
    pub fn map_params(&self, f: &impl Fn(Elem) -> Elem) -> Context {
        match self {
            Context::CoVar(_) => self.clone(),
            Context::Param(p) => Context::Param(f(*p)),
            Context::Mu(x, c) => Context::Mu(x.clone(), Box::new(c.map_params(f))),
            Context::Pair(a, b) => Context::pair(a.map_params(f), b.map_params(f)),
            Context::Boxed(t) => Context::boxed(t.map_params(f)),
            Context::MuPair(x, y, c) => Context::MuPair(x.clone(), y.clone(), Box::new(c.map_params(f))),
            Context::MuBox(a, c) => Context::MuBox(a.clone(), Box::new(c.map_params(f))),
        }
    }

    fn collect_params(&self, out: &mut Vec<Elem>) {
        match self {
            Context::CoVar(_) => {}
            Context::Param(p) => out.push(*p),
            Context::Pair(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            Context::Boxed(t) => t.collect_params(out),
            Context::Mu(_, c) | Context::MuPair(_, _, c) | Context::MuBox(_, c) => c.collect_params(out),
        }
    }
}

impl Command {
    /// Renames every parameter through `f`, e.g. to instantiate a fixture
    /// on a smaller carrier.
    pub fn map_params(&self, f: &impl Fn(Elem) -> Elem) -> Command {
        Command { term: self.term.map_params(f), ctx: self.ctx.map_params(f), cut: self.cut.clone() }
    }

    fn collect_params(&self, out: &mut Vec<Elem>) {
        self.term.collect_params(out);
        self.ctx.collect_params(out);
    }

    /// Parameters occurring in the command, sorted and deduplicated.
    pub fn params(&self) -> Vec<Elem> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl Subject {
    /// Parameter ids occurring in the subject, with repetitions.
    pub fn params(&self) -> Vec<Elem> {
        let mut out = Vec::new();
        match self {
            Subject::Term(t) => t.collect_params(&mut out),
            Subject::Context(e) => e.collect_params(&mut out),
            Subject::Command(c) => c.collect_params(&mut out),
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl Command {
    /// Replaces parameter `p` by the variable `name` in term positions and
    /// the covariable `name` in context positions.
    pub fn subst_param(&self, p: Elem, name: &str) -> Command {
        Command { term: self.term.subst_param(p, name), ctx: self.ctx.subst_param(p, name), cut: self.cut.clone() }
    }
}

impl Term {
    fn subst_param(&self, p: Elem, name: &str) -> Term {
        match self {
            Term::Param(q) if *q == p => Term::var(name),
            Term::Var(_) | Term::Param(_) => self.clone(),
            Term::Mu(a, c) => Term::Mu(a.clone(), Box::new(c.subst_param(p, name))),
            Term::Pair(t, u) => Term::pair(t.subst_param(p, name), u.subst_param(p, name)),
            Term::Boxed(e) => Term::boxed(e.subst_param(p, name)),
            Term::MuPair(a, b, c) => Term::MuPair(a.clone(), b.clone(), Box::new(c.subst_param(p, name))),
            Term::MuBox(x, c) => Term::MuBox(x.clone(), Box::new(c.subst_param(p, name))),
        }
    }
}

impl Context {
    fn subst_param(&self, p: Elem, name: &str) -> Context {
        match self {
            Context::Param(q) if *q == p => Context::covar(name),
            Context::CoVar(_) | Context::Param(_) => self.clone(),
            Context::Mu(x, c) => Context::Mu(x.clone(), Box::new(c.subst_param(p, name))),
            Context::Pair(a, b) => Context::pair(a.subst_param(p, name), b.subst_param(p, name)),
            Context::Boxed(t) => Context::boxed(t.subst_param(p, name)),
            Context::MuPair(x, y, c) => Context::MuPair(x.clone(), y.clone(), Box::new(c.subst_param(p, name))),
            Context::MuBox(a, c) => Context::MuBox(a.clone(), Box::new(c.subst_param(p, name))),
        }
    }
}
