//! Checking-mode type system for both calculi, and the adequacy verifier.

use std::fmt;

use crate::encodings::{fresh_name, interpret_formula_in, Formula};
use crate::lattice::Elem;
use crate::structures::Structure;

use super::interp::{in_pole, Env, Interpretation, Interpreter};
use super::syntax::{Command, Context, Sort, Subject, Term};
use super::{CalcError, Polarity};

pub type Bindings = Vec<(String, Formula)>;

/// `Γ ⊢ t : A | Δ`, `Γ | e : A ⊢ Δ` or `c : (Γ ⊢ Δ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Judgment {
    pub gamma: Bindings,
    pub delta: Bindings,
    pub subject: Subject,
    /// Absent for commands.
    pub ty: Option<Formula>,
}

/// A judgment to check, with instantiation hints for the quantifier rules
/// that need a witness (`∀` on the left in L⅋, `∃` on the right in L⊗).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedSequent {
    pub polarity: Polarity,
    pub judgment: Judgment,
    pub hints: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: &'static str,
    pub judgment: Judgment,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn nodes(&self) -> Vec<&Derivation> {
        let mut out = vec![self];
        for p in &self.premises {
            out.extend(p.nodes());
        }
        out
    }

    pub fn rules(&self) -> Vec<&'static str> {
        self.nodes().into_iter().map(|d| d.rule).collect()
    }
}

fn show_bindings(b: &Bindings) -> String {
    b.iter().map(|(n, a)| format!("{n}:{a}")).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g, d) = (show_bindings(&self.gamma), show_bindings(&self.delta));
        match (&self.subject, &self.ty) {
            (Subject::Term(t), Some(a)) => write!(f, "{g} ⊢ {t} : {a} | {d}"),
            (Subject::Context(e), Some(a)) => write!(f, "{g} | {e} : {a} ⊢ {d}"),
            (s, _) => write!(f, "{s} : ({g} ⊢ {d})"),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(d: &Derivation, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            writeln!(f, "{:indent$}[{}] {}", "", d.rule, d.judgment, indent = depth * 2)?;
            for p in &d.premises {
                go(p, depth + 1, f)?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

/// Rewrites `A → B` into the polarity's primitive connectives and rejects
/// connectives of the other polarity.
pub fn desugar(pol: Polarity, a: &Formula) -> Result<Formula, CalcError> {
    let bad = |c: &str| Err(CalcError::Polarity { polarity: pol, construct: c.to_string() });
    Ok(match a {
        Formula::Param(_) | Formula::Var(_) => a.clone(),
        Formula::Neg(b) => Formula::neg(desugar(pol, b)?),
        Formula::Arrow(x, y) => {
            let (x, y) = (desugar(pol, x)?, desugar(pol, y)?);
            match pol {
                Polarity::Par => Formula::par(Formula::neg(x), y),
                Polarity::Tens => Formula::neg(Formula::tens(x, Formula::neg(y))),
            }
        }
        Formula::Par(x, y) if pol == Polarity::Par => Formula::par(desugar(pol, x)?, desugar(pol, y)?),
        Formula::Tens(x, y) if pol == Polarity::Tens => Formula::tens(desugar(pol, x)?, desugar(pol, y)?),
        Formula::Forall(x, b) if pol == Polarity::Par => Formula::forall(x, desugar(pol, b)?),
        Formula::Exists(x, b) if pol == Polarity::Tens => Formula::exists(x, desugar(pol, b)?),
        Formula::Par(..) => return bad("⅋"),
        Formula::Tens(..) => return bad("⊗"),
        Formula::Forall(..) => return bad("∀"),
        Formula::Exists(..) => return bad("∃"),
    })
}

fn find<'b>(b: &'b Bindings, n: &str) -> Option<&'b Formula> {
    b.iter().rev().find(|(m, _)| m == n).map(|(_, a)| a)
}

fn extend(b: &Bindings, n: &str, a: Formula) -> Bindings {
    let mut out = b.clone();
    out.push((n.to_string(), a));
    out
}

fn ftv(gamma: &Bindings, delta: &Bindings) -> Vec<String> {
    gamma.iter().chain(delta).flat_map(|(_, a)| a.free_vars()).collect()
}

fn ill(rule: &'static str, subject: impl fmt::Display, expected: impl fmt::Display, found: impl fmt::Display) -> CalcError {
    CalcError::IllTyped {
        rule,
        subject: subject.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

struct Checker {
    pol: Polarity,
    hints: Vec<Formula>,
}

impl Checker {
    fn node(rule: &'static str, j: Judgment, premises: Vec<Derivation>) -> Derivation {
        Derivation { rule, judgment: j, premises }
    }

    fn term_j(g: &Bindings, d: &Bindings, t: &Term, a: &Formula) -> Judgment {
        Judgment { gamma: g.clone(), delta: d.clone(), subject: Subject::Term(t.clone()), ty: Some(a.clone()) }
    }

    fn ctx_j(g: &Bindings, d: &Bindings, e: &Context, a: &Formula) -> Judgment {
        Judgment { gamma: g.clone(), delta: d.clone(), subject: Subject::Context(e.clone()), ty: Some(a.clone()) }
    }

    fn synth_term(&self, g: &Bindings, d: &Bindings, t: &Term) -> Option<Formula> {
        match (t, self.pol) {
            (Term::Var(x), _) => find(g, x).cloned(),
            (Term::Param(p), _) => Some(Formula::Param(*p)),
            (Term::Pair(a, b), Polarity::Tens) => Some(Formula::tens(self.synth_term(g, d, a)?, self.synth_term(g, d, b)?)),
            (Term::Boxed(e), Polarity::Tens) => Some(Formula::neg(self.synth_ctx(g, d, e)?)),
            _ => None,
        }
    }

    fn synth_ctx(&self, g: &Bindings, d: &Bindings, e: &Context) -> Option<Formula> {
        match (e, self.pol) {
            (Context::CoVar(a), _) => find(d, a).cloned(),
            (Context::Param(p), _) => Some(Formula::Param(*p)),
            (Context::Pair(a, b), Polarity::Par) => Some(Formula::par(self.synth_ctx(g, d, a)?, self.synth_ctx(g, d, b)?)),
            (Context::Boxed(t), Polarity::Par) => Some(Formula::neg(self.synth_term(g, d, t)?)),
            _ => None,
        }
    }

    fn command(&self, g: &Bindings, d: &Bindings, c: &Command) -> Result<Derivation, CalcError> {
        let j = Judgment { gamma: g.clone(), delta: d.clone(), subject: Subject::Command(c.clone()), ty: None };
        let a = match &c.cut {
            Some(a) => desugar(self.pol, a)?,
            None => self
                .synth_term(g, d, &c.term)
                .or_else(|| self.synth_ctx(g, d, &c.ctx))
                .ok_or_else(|| ill("Cut", c, "an inferable cut formula", "none"))?,
        };
        let left = self.term(g, d, &c.term, &a).map_err(|err| match &c.term {
            Term::Var(x) => ill("Cut", c, &a, find(g, x).map(|f| f.to_string()).unwrap_or("unbound".into())),
            _ => err,
        })?;
        let right = self.ctx(g, d, &c.ctx, &a).map_err(|err| match &c.ctx {
            Context::CoVar(x) => ill("Cut", c, &a, find(d, x).map(|f| f.to_string()).unwrap_or("unbound".into())),
            _ => err,
        })?;
        Ok(Self::node("Cut", j, vec![left, right]))
    }

    fn term(&self, g: &Bindings, d: &Bindings, t: &Term, a: &Formula) -> Result<Derivation, CalcError> {
        let j = Self::term_j(g, d, t, a);
        let direct = self.term_direct(g, d, t, a, j.clone());
        match (direct, a) {
            (Ok(der), _) => Ok(der),
            (Err(err), Formula::Forall(x, body)) if self.pol == Polarity::Par => {
                let avoid = ftv(g, d);
                let fresh = if avoid.contains(x) { fresh_name(x, &avoid) } else { x.clone() };
                let inst = body.subst(x, &Formula::Var(fresh));
                self.term(g, d, t, &inst).map(|p| Self::node("⊢∀", j, vec![p])).map_err(|_| err)
            }
            (Err(err), Formula::Exists(x, body)) if self.pol == Polarity::Tens && t.is_value() => {
                for h in &self.hints {
                    if let Ok(p) = self.term(g, d, t, &body.subst(x, h)) {
                        return Ok(Self::node("⊢∃", j, vec![p]));
                    }
                }
                Err(err)
            }
            (Err(err), _) => Err(err),
        }
    }

    fn term_direct(&self, g: &Bindings, d: &Bindings, t: &Term, a: &Formula, j: Judgment) -> Result<Derivation, CalcError> {
        match (t, self.pol, a) {
            (Term::Var(x), _, _) => match find(g, x) {
                Some(b) if b.alpha_eq(a) => Ok(Self::node("⊢ax", j, vec![])),
                Some(b) => Err(ill("⊢ax", t, a, b)),
                None => Err(ill("⊢ax", t, a, "unbound")),
            },
            (Term::Param(p), _, Formula::Param(q)) if p == q => Ok(Self::node("⊢par", j, vec![])),
            (Term::Param(_), _, _) => Err(ill("⊢par", t, a, t)),
            (Term::Mu(al, c), _, _) => {
                let p = self.command(g, &extend(d, al, a.clone()), c)?;
                Ok(Self::node("⊢μ", j, vec![p]))
            }
            (Term::MuPair(a1, a2, c), Polarity::Par, Formula::Par(x, y)) => {
                let d2 = extend(&extend(d, a1, (**x).clone()), a2, (**y).clone());
                let p = self.command(g, &d2, c)?;
                Ok(Self::node("⊢⅋", j, vec![p]))
            }
            (Term::MuBox(x, c), Polarity::Par, Formula::Neg(b)) => {
                let p = self.command(&extend(g, x, (**b).clone()), d, c)?;
                Ok(Self::node("⊢¬", j, vec![p]))
            }
            (Term::Pair(u, v), Polarity::Tens, Formula::Tens(x, y)) => {
                let p1 = self.term(g, d, u, x)?;
                let p2 = self.term(g, d, v, y)?;
                Ok(Self::node("⊢⊗", j, vec![p1, p2]))
            }
            (Term::Boxed(e), Polarity::Tens, Formula::Neg(b)) => {
                let p = self.ctx(g, d, e, b)?;
                Ok(Self::node("⊢¬", j, vec![p]))
            }
            (Term::MuPair(..), Polarity::Par, _) => Err(ill("⊢⅋", t, a, "a formula A⅋B")),
            (Term::Pair(..), Polarity::Tens, _) => Err(ill("⊢⊗", t, a, "a formula A⊗B")),
            (Term::MuBox(..) | Term::Boxed(..), _, _) => Err(ill("⊢¬", t, a, "a formula ¬A")),
            _ => Err(CalcError::Polarity { polarity: self.pol, construct: t.head().into() }),
        }
    }

    fn ctx(&self, g: &Bindings, d: &Bindings, e: &Context, a: &Formula) -> Result<Derivation, CalcError> {
        let j = Self::ctx_j(g, d, e, a);
        let direct = self.ctx_direct(g, d, e, a, j.clone());
        match (direct, a) {
            (Ok(der), _) => Ok(der),
            (Err(err), Formula::Forall(x, body)) if self.pol == Polarity::Par => {
                for h in &self.hints {
                    if let Ok(p) = self.ctx(g, d, e, &body.subst(x, h)) {
                        return Ok(Self::node("∀⊢", j, vec![p]));
                    }
                }
                Err(err)
            }
            (Err(err), Formula::Exists(x, body)) if self.pol == Polarity::Tens => {
                let avoid = ftv(g, d);
                let fresh = if avoid.contains(x) { fresh_name(x, &avoid) } else { x.clone() };
                let inst = body.subst(x, &Formula::Var(fresh));
                self.ctx(g, d, e, &inst).map(|p| Self::node("∃⊢", j, vec![p])).map_err(|_| err)
            }
            (Err(err), _) => Err(err),
        }
    }

    fn ctx_direct(&self, g: &Bindings, d: &Bindings, e: &Context, a: &Formula, j: Judgment) -> Result<Derivation, CalcError> {
        match (e, self.pol, a) {
            (Context::CoVar(x), _, _) => match find(d, x) {
                Some(b) if b.alpha_eq(a) => Ok(Self::node("ax⊢", j, vec![])),
                Some(b) => Err(ill("ax⊢", e, a, b)),
                None => Err(ill("ax⊢", e, a, "unbound")),
            },
            (Context::Param(p), _, Formula::Param(q)) if p == q => Ok(Self::node("par⊢", j, vec![])),
            (Context::Param(_), _, _) => Err(ill("par⊢", e, a, e)),
            (Context::Mu(x, c), _, _) => {
                let p = self.command(&extend(g, x, a.clone()), d, c)?;
                Ok(Self::node("μ⊢", j, vec![p]))
            }
            (Context::Pair(e1, e2), Polarity::Par, Formula::Par(x, y)) => {
                let p1 = self.ctx(g, d, e1, x)?;
                let p2 = self.ctx(g, d, e2, y)?;
                Ok(Self::node("⅋⊢", j, vec![p1, p2]))
            }
            (Context::Boxed(t), Polarity::Par, Formula::Neg(b)) => {
                let p = self.term(g, d, t, b)?;
                Ok(Self::node("¬⊢", j, vec![p]))
            }
            (Context::MuPair(x, y, c), Polarity::Tens, Formula::Tens(f1, f2)) => {
                let g2 = extend(&extend(g, x, (**f1).clone()), y, (**f2).clone());
                let p = self.command(&g2, d, c)?;
                Ok(Self::node("⊗⊢", j, vec![p]))
            }
            (Context::MuBox(al, c), Polarity::Tens, Formula::Neg(b)) => {
                let p = self.command(g, &extend(d, al, (**b).clone()), c)?;
                Ok(Self::node("¬⊢", j, vec![p]))
            }
            (Context::Pair(..), Polarity::Par, _) => Err(ill("⅋⊢", e, a, "a formula A⅋B")),
            (Context::MuPair(..), Polarity::Tens, _) => Err(ill("⊗⊢", e, a, "a formula A⊗B")),
            (Context::Boxed(..) | Context::MuBox(..), _, _) => Err(ill("¬⊢", e, a, "a formula ¬A")),
            _ => Err(CalcError::Polarity { polarity: self.pol, construct: e.head().into() }),
        }
    }
}

/// Checks a sequent, returning its derivation or the first failing rule.
pub fn typecheck(s: &TypedSequent) -> Result<Derivation, CalcError> {
    let pol = s.polarity;
    let j = &s.judgment;
    j.subject.check_polarity(pol)?;
    let ds = |b: &Bindings| -> Result<Bindings, CalcError> {
        b.iter().map(|(n, a)| Ok((n.clone(), desugar(pol, a)?))).collect()
    };
    let gamma = ds(&j.gamma)?;
    let delta = ds(&j.delta)?;
    let hints = s.hints.iter().map(|h| desugar(pol, h)).collect::<Result<Vec<_>, _>>()?;
    let ck = Checker { pol, hints };
    match (&j.subject, &j.ty) {
        (Subject::Command(c), _) => ck.command(&gamma, &delta, c),
        (Subject::Term(t), Some(a)) => ck.term(&gamma, &delta, t, &desugar(pol, a)?),
        (Subject::Context(e), Some(a)) => ck.ctx(&gamma, &delta, e, &desugar(pol, a)?),
        (_, None) => Err(ill("sequent", &j.subject, "a stated type", "none")),
    }
}

// ---------------------------------------------------------------------------
// adequacy

/// Values for term variables, covariables and type variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    pub names: Env,
    pub types: Vec<(String, Elem)>,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.names.iter().map(|(_, n, v)| format!("{n}={v}")).collect();
        parts.extend(self.types.iter().map(|(n, v)| format!("{n}={v}")));
        write!(f, "[{}]", parts.join(", "))
    }
}

fn formula_value(s: &Structure, a: &Formula, v: &Valuation) -> Result<Elem, CalcError> {
    let mut env = v.types.clone();
    interpret_formula_in(s, a, &mut env).map_err(CalcError::Encoding)
}

/// `σ ⊩ Γ` and `σ ⊩ Δ` for the names `σ` assigns.
pub fn realizes(s: &Structure, j: &Judgment, v: &Valuation) -> Result<bool, CalcError> {
    let l = s.lattice();
    for (sort, n, val) in &v.names {
        let (bind, below) = match sort {
            Sort::Var => (find(&j.gamma, n), true),
            Sort::CoVar => (find(&j.delta, n), false),
        };
        if let Some(a) = bind {
            let av = formula_value(s, a, v)?;
            if (below && !l.le(*val, av)) || (!below && !l.le(av, *val)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The adequacy conclusion for one judgment under one valuation:
/// `t[σ] ≤ A[σ]`, `e[σ] ≥ A[σ]`, or `c[σ] ∈ ⊥⊥`.
pub fn check_adequacy(s: &Structure, pol: Polarity, j: &Judgment, v: &Valuation) -> Result<bool, CalcError> {
    let mut it = Interpreter::new(s, pol)?;
    judgment_holds(&mut it, s, j, v)
}

fn judgment_holds<'a>(it: &mut Interpreter<'_, 'a>, s: &Structure, j: &'a Judgment, v: &Valuation) -> Result<bool, CalcError> {
    let l = s.lattice();
    let mut env = v.names.clone();
    let value = it.subject(&j.subject, &mut env);
    Ok(match (value, &j.subject, &j.ty) {
        (Interpretation::Command(c), _, _) => in_pole(l, c),
        (Interpretation::Element(t), Subject::Term(_), Some(a)) => l.le(t, formula_value(s, a, v)?),
        (Interpretation::Element(e), Subject::Context(_), Some(a)) => l.le(formula_value(s, a, v)?, e),
        _ => return Err(ill("sequent", &j.subject, "a stated type", "none")),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdequacyFailure {
    pub judgment: String,
    pub valuation: String,
}

impl fmt::Display for AdequacyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails under {}", self.judgment, self.valuation)
    }
}

/// Every valuation realizing a judgment's contexts, restricted to the names
/// free in its subject and the type variables free in its formulas.
pub fn valuations(s: &Structure, j: &Judgment) -> Result<Vec<Valuation>, CalcError> {
    let l = s.lattice();
    let mut tvars: Vec<String> = j.gamma.iter().chain(&j.delta).flat_map(|(_, a)| a.free_vars()).collect();
    if let Some(a) = &j.ty {
        tvars.extend(a.free_vars());
    }
    tvars.sort();
    tvars.dedup();
    let names: Vec<(Sort, String)> = j.subject.free().into_iter().collect();
    let n = l.size();
    let mut out = Vec::new();
    let type_count = n.pow(tvars.len() as u32);
    for code in 0..type_count {
        let mut c = code;
        let types: Vec<(String, Elem)> = tvars
            .iter()
            .map(|x| {
                let v = c % n;
                c /= n;
                (x.clone(), v)
            })
            .collect();
        let base = Valuation { names: Vec::new(), types };
        let mut choices: Vec<Vec<Elem>> = Vec::new();
        for (sort, name) in &names {
            let bind = match sort {
                Sort::Var => find(&j.gamma, name),
                Sort::CoVar => find(&j.delta, name),
            };
            let allowed: Vec<Elem> = match bind {
                Some(a) => {
                    let av = formula_value(s, a, &base)?;
                    match sort {
                        Sort::Var => l.elements().filter(|&x| l.le(x, av)).collect(),
                        Sort::CoVar => l.elements().filter(|&x| l.le(av, x)).collect(),
                    }
                }
                None => l.elements().collect(),
            };
            choices.push(allowed);
        }
        let mut idx = vec![0usize; names.len()];
        'outer: loop {
            let mut v = base.clone();
            for (k, (sort, name)) in names.iter().enumerate() {
                v.names.push((*sort, name.clone(), choices[k][idx[k]]));
            }
            out.push(v);
            for k in 0..names.len() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
    }
    Ok(out)
}

/// Checks the adequacy conclusion at every node of a derivation under every
/// realizing valuation. Returns the number of checks performed.
pub fn check_adequacy_all(s: &Structure, pol: Polarity, d: &Derivation) -> Result<Result<usize, AdequacyFailure>, CalcError> {
    let mut it = Interpreter::new(s, pol)?;
    let mut count = 0;
    for node in d.nodes() {
        for v in valuations(s, &node.judgment)? {
            count += 1;
            if !judgment_holds(&mut it, s, &node.judgment, &v)? {
                return Ok(Err(AdequacyFailure { judgment: node.judgment.to_string(), valuation: v.to_string() }));
            }
        }
    }
    Ok(Ok(count))
}
