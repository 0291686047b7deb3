//! Meet encodings of λ-terms, named combinators, formulas, entailment and the
//! derived connectives.

use std::fmt;

use thiserror::Error;

use crate::lattice::{Elem, FiniteLattice};
use crate::separators::Algebra;
use crate::structures::{ConjunctiveStructure, DisjunctiveStructure, ImplicativeStructure, Kind, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("term has a free de Bruijn index {0}")]
    OpenTerm(usize),
    #[error("formula has a free type variable `{0}`")]
    OpenFormula(String),
    #[error("{what} is not available in a {kind} structure")]
    KindMismatch { what: String, kind: Kind },
    #[error("parameter {0} is outside the carrier")]
    BadParameter(Elem),
}

/// λ-terms with de Bruijn indices and carrier parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LambdaTerm {
    Var(usize),
    Lam(Box<LambdaTerm>),
    App(Box<LambdaTerm>, Box<LambdaTerm>),
    Param(Elem),
}

impl LambdaTerm {
    pub fn lam(body: LambdaTerm) -> Self {
        LambdaTerm::Lam(Box::new(body))
    }

    pub fn app(f: LambdaTerm, x: LambdaTerm) -> Self {
        LambdaTerm::App(Box::new(f), Box::new(x))
    }

    /// `λx.x`
    pub fn identity() -> Self {
        Self::lam(LambdaTerm::Var(0))
    }

    /// `λxy.x`
    pub fn k() -> Self {
        Self::lam(Self::lam(LambdaTerm::Var(1)))
    }

    /// `λxyz.xz(yz)`
    pub fn s() -> Self {
        use LambdaTerm::Var;
        Self::lam(Self::lam(Self::lam(Self::app(
            Self::app(Var(2), Var(0)),
            Self::app(Var(1), Var(0)),
        ))))
    }

    /// Smallest binder depth needed to close the term (0 when closed).
    pub fn free_depth(&self) -> usize {
        match self {
            LambdaTerm::Var(i) => i + 1,
            LambdaTerm::Lam(b) => b.free_depth().saturating_sub(1),
            LambdaTerm::App(f, x) => f.free_depth().max(x.free_depth()),
            LambdaTerm::Param(_) => 0,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_depth() == 0
    }

    pub fn params(&self, out: &mut Vec<Elem>) {
        match self {
            LambdaTerm::Var(_) => {}
            LambdaTerm::Lam(b) => b.params(out),
            LambdaTerm::App(f, x) => {
                f.params(out);
                x.params(out);
            }
            LambdaTerm::Param(p) => out.push(*p),
        }
    }
}

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &LambdaTerm, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                LambdaTerm::Var(i) if *i < depth => write!(f, "x{}", depth - 1 - i),
                LambdaTerm::Var(i) => write!(f, "#{i}"),
                LambdaTerm::Lam(b) => {
                    write!(f, "(lam x{depth} ")?;
                    go(b, depth + 1, f)?;
                    write!(f, ")")
                }
                LambdaTerm::App(a, b) => {
                    write!(f, "(app ")?;
                    go(a, depth, f)?;
                    write!(f, " ")?;
                    go(b, depth, f)?;
                    write!(f, ")")
                }
                LambdaTerm::Param(p) => write!(f, "(par {p})"),
            }
        }
        go(self, 0, f)
    }
}

/// A structure in which λ-terms can be interpreted.
pub trait Applicative {
    fn carrier(&self) -> &FiniteLattice;
    fn imp(&self, a: Elem, b: Elem) -> Elem;
    fn app(&self, a: Elem, b: Elem) -> Elem;

    /// `λf = ⋀_a (a → f(a))`.
    fn abs(&self, f: &dyn Fn(Elem) -> Elem) -> Elem {
        let l = self.carrier();
        l.meet_all(l.elements().map(|a| self.imp(a, f(a))))
    }

    /// The upper bound β-soundness guarantees for `(λf)a`.
    fn beta_bound(&self, fa: Elem) -> Elem;
}

fn implicative_app(l: &FiniteLattice, imp: impl Fn(Elem, Elem) -> Elem, a: Elem, b: Elem) -> Elem {
    l.meet_all(l.elements().filter(|&c| l.le(a, imp(b, c))))
}

impl Applicative for ImplicativeStructure {
    fn carrier(&self) -> &FiniteLattice {
        self.lattice()
    }
    fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.arrow(a, b)
    }
    fn app(&self, a: Elem, b: Elem) -> Elem {
        implicative_app(self.lattice(), |x, y| self.arrow(x, y), a, b)
    }
    fn beta_bound(&self, fa: Elem) -> Elem {
        fa
    }
}

impl Applicative for DisjunctiveStructure {
    fn carrier(&self) -> &FiniteLattice {
        self.lattice()
    }
    fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.arrow(a, b)
    }
    fn app(&self, a: Elem, b: Elem) -> Elem {
        implicative_app(self.lattice(), |x, y| self.arrow(x, y), a, b)
    }
    fn beta_bound(&self, fa: Elem) -> Elem {
        fa
    }
}

impl Applicative for ConjunctiveStructure {
    fn carrier(&self) -> &FiniteLattice {
        self.lattice()
    }
    fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.arrow(a, b)
    }
    /// `ab = ⋀{¬¬c : a ≤ b → c}`.
    fn app(&self, a: Elem, b: Elem) -> Elem {
        let l = self.lattice();
        l.meet_all(l.elements().filter(|&c| l.le(a, self.arrow(b, c))).map(|c| self.neg(self.neg(c))))
    }
    fn beta_bound(&self, fa: Elem) -> Elem {
        self.neg(self.neg(fa))
    }
}

impl Applicative for Structure {
    fn carrier(&self) -> &FiniteLattice {
        self.lattice()
    }
    fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.arrow(a, b)
    }
    fn app(&self, a: Elem, b: Elem) -> Elem {
        match self {
            Structure::Implicative(s) => s.app(a, b),
            Structure::Disjunctive(s) => s.app(a, b),
            Structure::Conjunctive(s) => s.app(a, b),
        }
    }
    fn beta_bound(&self, fa: Elem) -> Elem {
        match self {
            Structure::Conjunctive(s) => s.beta_bound(fa),
            _ => fa,
        }
    }
}

/// Interprets a closed term; abstractions range over the whole carrier.
pub fn interpret_lambda<A: Applicative + ?Sized>(s: &A, t: &LambdaTerm) -> Result<Elem, EncodingError> {
    if !t.is_closed() {
        return Err(EncodingError::OpenTerm(t.free_depth() - 1));
    }
    let mut ps = Vec::new();
    t.params(&mut ps);
    if let Some(&bad) = ps.iter().find(|&&p| p >= s.carrier().size()) {
        return Err(EncodingError::BadParameter(bad));
    }
    let mut env = Vec::new();
    Ok(eval_lambda(s, t, &mut env))
}

fn eval_lambda<A: Applicative + ?Sized>(s: &A, t: &LambdaTerm, env: &mut Vec<Elem>) -> Elem {
    match t {
        LambdaTerm::Var(i) => env[env.len() - 1 - i],
        LambdaTerm::Param(p) => *p,
        LambdaTerm::App(f, x) => {
            let fv = eval_lambda(s, f, env);
            let xv = eval_lambda(s, x, env);
            s.app(fv, xv)
        }
        LambdaTerm::Lam(body) => {
            let l = s.carrier();
            let mut acc = l.top();
            for a in l.elements() {
                env.push(a);
                let v = eval_lambda(s, body, env);
                env.pop();
                acc = l.meet(acc, s.imp(a, v));
            }
            acc
        }
    }
}

pub fn interpret_lambda_implicative(s: &ImplicativeStructure, t: &LambdaTerm) -> Result<Elem, EncodingError> {
    interpret_lambda(s, t)
}

pub fn interpret_lambda_conjunctive(c: &ConjunctiveStructure, t: &LambdaTerm) -> Result<Elem, EncodingError> {
    interpret_lambda(c, t)
}

/// First argument at which `(λf)a ≤ bound(f(a))` fails, for `f` given as a table.
pub fn beta_violation<A: Applicative + ?Sized>(s: &A, f: &[Elem]) -> Option<Elem> {
    let l = s.carrier();
    let lam = s.abs(&|a| f[a]);
    l.elements().find(|&a| !l.le(s.app(lam, a), s.beta_bound(f[a])))
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combinator {
    K,
    S,
    Cc,
    Ps(u8),
    Ts(u8),
}

impl Combinator {
    pub const ALL: [Combinator; 13] = [
        Combinator::K,
        Combinator::S,
        Combinator::Cc,
        Combinator::Ps(1),
        Combinator::Ps(2),
        Combinator::Ps(3),
        Combinator::Ps(4),
        Combinator::Ps(5),
        Combinator::Ts(1),
        Combinator::Ts(2),
        Combinator::Ts(3),
        Combinator::Ts(4),
        Combinator::Ts(5),
    ];

    pub fn ps() -> [Combinator; 5] {
        [1, 2, 3, 4, 5].map(Combinator::Ps)
    }

    pub fn ts() -> [Combinator; 5] {
        [1, 2, 3, 4, 5].map(Combinator::Ts)
    }
}

impl fmt::Display for Combinator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Combinator::K => write!(f, "K"),
            Combinator::S => write!(f, "S"),
            Combinator::Cc => write!(f, "cc"),
            Combinator::Ps(i) => write!(f, "PS{i}"),
            Combinator::Ts(i) => write!(f, "TS{i}"),
        }
    }
}

impl std::str::FromStr for Combinator {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let idx = |rest: &str| rest.parse::<u8>().ok().filter(|i| (1..=5).contains(i));
        match s {
            "K" => Ok(Combinator::K),
            "S" => Ok(Combinator::S),
            "cc" => Ok(Combinator::Cc),
            _ if s.starts_with("PS") => idx(&s[2..]).map(Combinator::Ps).ok_or(format!("unknown combinator `{s}`")),
            _ if s.starts_with("TS") => idx(&s[2..]).map(Combinator::Ts).ok_or(format!("unknown combinator `{s}`")),
            _ => Err(format!("unknown combinator `{s}`")),
        }
    }
}

fn meet1(l: &FiniteLattice, f: impl Fn(Elem) -> Elem) -> Elem {
    l.meet_all(l.elements().map(f))
}

fn meet2(l: &FiniteLattice, f: impl Fn(Elem, Elem) -> Elem) -> Elem {
    l.meet_all(l.elements().flat_map(|a| l.elements().map(move |b| (a, b))).map(|(a, b)| f(a, b)))
}

fn meet3(l: &FiniteLattice, f: impl Fn(Elem, Elem, Elem) -> Elem) -> Elem {
    let mut acc = l.top();
    for a in l.elements() {
        for b in l.elements() {
            for c in l.elements() {
                acc = l.meet(acc, f(a, b, c));
            }
        }
    }
    acc
}

/// `cc = ⋀_{a,b} (((a→b)→a)→a)` for any arrow.
pub fn peirce<A: Applicative + ?Sized>(s: &A) -> Elem {
    meet2(s.carrier(), |a, b| s.imp(s.imp(s.imp(a, b), a), a))
}

/// Principal type of K: `⋀_{a,b} (a → b → a)`.
pub fn k_type<A: Applicative + ?Sized>(s: &A) -> Elem {
    meet2(s.carrier(), |a, b| s.imp(a, s.imp(b, a)))
}

/// Principal type of S: `⋀_{a,b,c} ((a→b→c) → (a→b) → a → c)`.
pub fn s_type<A: Applicative + ?Sized>(s: &A) -> Elem {
    meet3(s.carrier(), |a, b, c| s.imp(s.imp(a, s.imp(b, c)), s.imp(s.imp(a, b), s.imp(a, c))))
}

fn ps(d: &DisjunctiveStructure, i: u8) -> Elem {
    let l = d.lattice();
    let imp = |a, b| d.arrow(a, b);
    let par = |a, b| d.par(a, b);
    match i {
        1 => meet1(l, |a| imp(par(a, a), a)),
        2 => meet2(l, |a, b| imp(a, par(a, b))),
        3 => meet2(l, |a, b| imp(par(a, b), par(b, a))),
        4 => meet3(l, |a, b, c| imp(imp(a, b), imp(par(c, a), par(c, b)))),
        5 => meet3(l, |a, b, c| imp(par(a, par(b, c)), par(par(a, b), c))),
        _ => unreachable!("PS index checked on construction"),
    }
}

fn ts(c: &ConjunctiveStructure, i: u8) -> Elem {
    let l = c.lattice();
    let neg = |a| c.neg(a);
    let t = |a, b| c.tensor(a, b);
    match i {
        1 => meet1(l, |a| neg(t(neg(t(a, a)), a))),
        2 => meet2(l, |a, b| neg(t(neg(a), t(a, b)))),
        3 => meet2(l, |a, b| neg(t(neg(t(a, b)), t(b, a)))),
        4 => meet3(l, |a, b, x| neg(t(neg(t(neg(a), b)), t(neg(t(x, a)), t(x, b))))),
        5 => meet3(l, |a, b, x| neg(t(neg(t(a, t(b, x))), t(t(a, b), x)))),
        _ => unreachable!("TS index checked on construction"),
    }
}

/// Value of a named combinator. PS* need a disjunctive structure, TS* a
/// conjunctive one; K, S and cc use the kind's arrow and application.
pub fn combinator(s: &Structure, name: Combinator) -> Result<Elem, EncodingError> {
    let mismatch = || EncodingError::KindMismatch { what: name.to_string(), kind: s.kind() };
    match (name, s) {
        (Combinator::K, _) => interpret_lambda(s, &LambdaTerm::k()),
        (Combinator::S, _) => interpret_lambda(s, &LambdaTerm::s()),
        (Combinator::Cc, _) => Ok(peirce(s)),
        (Combinator::Ps(i), Structure::Disjunctive(d)) if (1..=5).contains(&i) => Ok(ps(d, i)),
        (Combinator::Ts(i), Structure::Conjunctive(c)) if (1..=5).contains(&i) => Ok(ts(c, i)),
        _ => Err(mismatch()),
    }
}

// ---------------------------------------------------------------------------

/// Second-order formulas with parameters. Type variables are named.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Param(Elem),
    Var(String),
    Neg(Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    Tens(Box<Formula>, Box<Formula>),
    Arrow(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn var(x: &str) -> Self {
        Formula::Var(x.to_string())
    }
    pub fn neg(a: Formula) -> Self {
        Formula::Neg(Box::new(a))
    }
    pub fn par(a: Formula, b: Formula) -> Self {
        Formula::Par(Box::new(a), Box::new(b))
    }
    pub fn tens(a: Formula, b: Formula) -> Self {
        Formula::Tens(Box::new(a), Box::new(b))
    }
    pub fn arrow(a: Formula, b: Formula) -> Self {
        Formula::Arrow(Box::new(a), Box::new(b))
    }
    pub fn forall(x: &str, a: Formula) -> Self {
        Formula::Forall(x.to_string(), Box::new(a))
    }
    pub fn exists(x: &str, a: Formula) -> Self {
        Formula::Exists(x.to_string(), Box::new(a))
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula::Param(_) => {}
            Formula::Var(x) => {
                if !bound.contains(x) {
                    out.push(x.clone());
                }
            }
            Formula::Neg(a) => a.collect_free(bound, out),
            Formula::Par(a, b) | Formula::Tens(a, b) | Formula::Arrow(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn mentions_free(&self, x: &str) -> bool {
        self.free_vars().iter().any(|v| v == x)
    }

    /// Capture-avoiding `self[b/x]`.
    pub fn subst(&self, x: &str, b: &Formula) -> Formula {
        match self {
            Formula::Param(_) => self.clone(),
            Formula::Var(y) if y == x => b.clone(),
            Formula::Var(_) => self.clone(),
            Formula::Neg(a) => Formula::neg(a.subst(x, b)),
            Formula::Par(l, r) => Formula::par(l.subst(x, b), r.subst(x, b)),
            Formula::Tens(l, r) => Formula::tens(l.subst(x, b), r.subst(x, b)),
            Formula::Arrow(l, r) => Formula::arrow(l.subst(x, b), r.subst(x, b)),
            Formula::Forall(y, a) | Formula::Exists(y, a) => {
                let rebuild = |y: &str, a: Formula| match self {
                    Formula::Forall(..) => Formula::forall(y, a),
                    _ => Formula::exists(y, a),
                };
                if y == x {
                    self.clone()
                } else if b.mentions_free(y) {
                    let avoid: Vec<String> = b.free_vars().into_iter().chain(a.free_vars()).collect();
                    let fresh = fresh_name(y, &avoid);
                    let renamed = a.subst(y, &Formula::Var(fresh.clone()));
                    rebuild(&fresh, renamed.subst(x, b))
                } else {
                    rebuild(y, a.subst(x, b))
                }
            }
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn go(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>) -> bool {
            match (a, b) {
                (Formula::Param(x), Formula::Param(y)) => x == y,
                (Formula::Var(x), Formula::Var(y)) => {
                    for (l, r) in env.iter().rev() {
                        if l == x || r == y {
                            return l == x && r == y;
                        }
                    }
                    x == y
                }
                (Formula::Neg(x), Formula::Neg(y)) => go(x, y, env),
                (Formula::Par(a1, a2), Formula::Par(b1, b2))
                | (Formula::Tens(a1, a2), Formula::Tens(b1, b2))
                | (Formula::Arrow(a1, a2), Formula::Arrow(b1, b2)) => go(a1, b1, env) && go(a2, b2, env),
                (Formula::Forall(x, a), Formula::Forall(y, b)) | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
                    env.push((x.clone(), y.clone()));
                    let r = go(a, b, env);
                    env.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }
}

pub(crate) fn fresh_name(base: &str, avoid: &[String]) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '\'');
    (0..)
        .map(|i| format!("{stem}{i}"))
        .find(|cand| !avoid.iter().any(|a| a == cand))
        .expect("infinitely many candidates")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Param(p) => write!(f, "(par {p})"),
            Formula::Var(x) => write!(f, "{x}"),
            Formula::Neg(a) => write!(f, "(neg {a})"),
            Formula::Par(a, b) => write!(f, "(parr {a} {b})"),
            Formula::Tens(a, b) => write!(f, "(tens {a} {b})"),
            Formula::Arrow(a, b) => write!(f, "(arr {a} {b})"),
            Formula::Forall(x, a) => write!(f, "(forall {x} {a})"),
            Formula::Exists(x, a) => write!(f, "(exists {x} {a})"),
        }
    }
}

/// Interprets a formula under an assignment of its free type variables.
pub fn interpret_formula_in(s: &Structure, a: &Formula, env: &mut Vec<(String, Elem)>) -> Result<Elem, EncodingError> {
    let l = s.lattice();
    let mismatch = |what: &str| EncodingError::KindMismatch { what: what.to_string(), kind: s.kind() };
    Ok(match a {
        Formula::Param(p) => {
            if *p >= l.size() {
                return Err(EncodingError::BadParameter(*p));
            }
            *p
        }
        Formula::Var(x) => env
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, v)| *v)
            .ok_or_else(|| EncodingError::OpenFormula(x.clone()))?,
        Formula::Neg(b) => s.neg(interpret_formula_in(s, b, env)?),
        Formula::Arrow(x, y) => {
            let xv = interpret_formula_in(s, x, env)?;
            let yv = interpret_formula_in(s, y, env)?;
            s.arrow(xv, yv)
        }
        Formula::Par(x, y) => {
            let Structure::Disjunctive(d) = s else { return Err(mismatch("⅋")) };
            let xv = interpret_formula_in(s, x, env)?;
            let yv = interpret_formula_in(s, y, env)?;
            d.par(xv, yv)
        }
        Formula::Tens(x, y) => {
            let Structure::Conjunctive(c) = s else { return Err(mismatch("⊗")) };
            let xv = interpret_formula_in(s, x, env)?;
            let yv = interpret_formula_in(s, y, env)?;
            c.tensor(xv, yv)
        }
        Formula::Forall(x, b) | Formula::Exists(x, b) => {
            let universal = matches!(a, Formula::Forall(..));
            let mut acc = if universal { l.top() } else { l.bot() };
            for v in l.elements() {
                env.push((x.clone(), v));
                let r = interpret_formula_in(s, b, env);
                env.pop();
                let r = r?;
                acc = if universal { l.meet(acc, r) } else { l.join(acc, r) };
            }
            acc
        }
    })
}

pub fn interpret_formula(s: &Structure, a: &Formula) -> Result<Elem, EncodingError> {
    interpret_formula_in(s, a, &mut Vec::new())
}

// ---------------------------------------------------------------------------

/// `a ⊢_S b`: the kind's arrow from a to b is in the separator.
pub fn entails(alg: &Algebra, a: Elem, b: Elem) -> bool {
    alg.contains(alg.structure.arrow(a, b))
}

/// `¬(a ⊗ b) ∈ S` in a conjunctive algebra.
pub fn entails_neg(alg: &Algebra, a: Elem, b: Elem) -> Result<bool, EncodingError> {
    match &alg.structure {
        Structure::Conjunctive(c) => Ok(alg.contains(c.neg(c.tensor(a, b)))),
        s => Err(EncodingError::KindMismatch { what: "⊢¬".into(), kind: s.kind() }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeytingOps {
    pub product: Elem,
    pub sum: Elem,
    pub arrow: Elem,
    pub negation: Elem,
}

/// Encoded product `a×b = ⋀_c((a→b→c)→c)` for arrow-based kinds.
pub fn encoded_product<A: Applicative + ?Sized>(s: &A, a: Elem, b: Elem) -> Elem {
    meet1(s.carrier(), |c| s.imp(s.imp(a, s.imp(b, c)), c))
}

/// Encoded sum `a+b = ⋀_c((a→c)→(b→c)→c)`.
pub fn encoded_sum<A: Applicative + ?Sized>(s: &A, a: Elem, b: Elem) -> Elem {
    meet1(s.carrier(), |c| s.imp(s.imp(a, c), s.imp(s.imp(b, c), c)))
}

pub fn heyting_ops(s: &Structure, a: Elem, b: Elem) -> HeytingOps {
    match s {
        Structure::Conjunctive(c) => HeytingOps {
            product: c.tensor(a, b),
            sum: c.neg(c.tensor(c.neg(a), c.neg(b))),
            arrow: c.arrow(a, b),
            negation: c.neg(a),
        },
        _ => HeytingOps {
            product: encoded_product(s, a, b),
            sum: encoded_sum(s, a, b),
            arrow: s.arrow(a, b),
            negation: s.neg(a),
        },
    }
}

/// `a ◇ b = ⋁{c : a ≤ ¬(b ⊗ c)}`.
pub fn diamond(c: &ConjunctiveStructure, a: Elem, b: Elem) -> Elem {
    let l = c.lattice();
    l.join_all(l.elements().filter(|&x| l.le(a, c.neg(c.tensor(b, x)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::boolean_algebra;
    use crate::structures::*;

    #[test]
    fn identity_is_top_in_b2() {
        let b = boolean_algebra(1).unwrap();
        let s = boolean_implicative(&b).unwrap();
        assert_eq!(interpret_lambda_implicative(&s, &LambdaTerm::identity()).unwrap(), 1);
    }

    #[test]
    fn k_is_top_in_b4() {
        let b = boolean_algebra(2).unwrap();
        let s = boolean_implicative(&b).unwrap();
        assert_eq!(interpret_lambda_implicative(&s, &LambdaTerm::k()).unwrap(), 3);
    }

    #[test]
    fn self_application_of_atom() {
        let b = boolean_algebra(2).unwrap();
        let s = boolean_implicative(&b).unwrap();
        let t = LambdaTerm::app(LambdaTerm::Param(1), LambdaTerm::Param(1));
        assert_eq!(interpret_lambda_implicative(&s, &t).unwrap(), 1);
    }

    #[test]
    fn open_term_rejected() {
        let b = boolean_algebra(1).unwrap();
        let s = boolean_implicative(&b).unwrap();
        assert_eq!(interpret_lambda_implicative(&s, &LambdaTerm::Var(0)), Err(EncodingError::OpenTerm(0)));
    }

    #[test]
    fn conjunctive_dummy_application_is_top() {
        let b = boolean_algebra(2).unwrap();
        let c = dummy_conjunctive(&b.lattice).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(c.app(x, y), 3);
            }
        }
    }

    #[test]
    fn conjunctive_identity_in_b4() {
        let b = boolean_algebra(2).unwrap();
        let c = boolean_conjunctive(&b).unwrap();
        assert_eq!(interpret_lambda_conjunctive(&c, &LambdaTerm::identity()).unwrap(), 3);
    }

    #[test]
    fn combinators_kind_checked() {
        let b = boolean_algebra(1).unwrap();
        let s: Structure = boolean_implicative(&b).unwrap().into();
        assert!(matches!(combinator(&s, Combinator::Ps(1)), Err(EncodingError::KindMismatch { .. })));
        assert_eq!(combinator(&s, Combinator::Cc).unwrap(), 1);
    }

    #[test]
    fn formula_examples() {
        let b = boolean_algebra(2).unwrap();
        let imp: Structure = boolean_implicative(&b).unwrap().into();
        let id = Formula::forall("X", Formula::arrow(Formula::var("X"), Formula::var("X")));
        assert_eq!(interpret_formula(&imp, &id).unwrap(), 3);

        let con: Structure = heyting_conjunctive(&FiniteLattice::chain(3)).unwrap().into();
        assert_eq!(interpret_formula(&con, &Formula::exists("X", Formula::var("X"))).unwrap(), 2);

        let dummy: Structure = dummy_disjunctive(&b.lattice).unwrap().into();
        let f = Formula::neg(Formula::forall("X", Formula::var("X")));
        assert_eq!(interpret_formula(&dummy, &f).unwrap(), 0);
        assert!(matches!(
            interpret_formula(&imp, &Formula::par(Formula::Param(0), Formula::Param(0))),
            Err(EncodingError::KindMismatch { .. })
        ));
        assert!(matches!(interpret_formula(&imp, &Formula::var("Y")), Err(EncodingError::OpenFormula(_))));
    }

    #[test]
    fn diamond_examples() {
        let b = boolean_algebra(2).unwrap();
        let dc = dummy_conjunctive(&b.lattice).unwrap();
        assert_eq!(diamond(&dc, 1, 2), 3);
        let c = boolean_conjunctive(&b).unwrap();
        assert_eq!(diamond(&c, 0b01, 0b10), 3);
        assert_eq!(diamond(&c, 3, 3), 0);
    }

    #[test]
    fn substitution_avoids_capture() {
        let a = Formula::forall("Y", Formula::arrow(Formula::var("X"), Formula::var("Y")));
        let r = a.subst("X", &Formula::var("Y"));
        let expected = Formula::forall("Z", Formula::arrow(Formula::var("Y"), Formula::var("Z")));
        assert!(r.alpha_eq(&expected), "{r}");
    }
}
