//! Algebraic laws of the interpretation: binder variance, β and η,
//! subject reduction, adequacy and the call-by-name sanity identity.

use std::collections::HashMap;
use std::fmt;

use crate::encodings::LambdaTerm;
use crate::lattice::Elem;
use crate::structures::{DisjunctiveStructure, Structure};

use super::compiled::Compiled;
use super::interp::{bind_box, bind_mu, bind_pair, command_order, expected_kind, in_pole, pairing, Cmd, Side};
use super::reduce::Rule;
use super::syntax::{Command, Name, Sort, Subject};
use super::typing::{check_adequacy_all, typecheck, TypedSequent};
use super::{CalcError, Polarity};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawFailure {
    pub law: String,
    pub witness: String,
}

impl fmt::Display for LawFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.witness)
    }
}

fn fail(law: impl Into<String>, witness: impl Into<String>) -> LawFailure {
    LawFailure { law: law.into(), witness: witness.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// `μα.c` or `μx.c`, one bound name.
    Mu,
    /// Pair destructor, two bound names.
    Pair,
    /// Box destructor.
    Box,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Binder {
    pub name: &'static str,
    pub side: Side,
    pub shape: Shape,
}

/// The four binders of a calculus with the side they live on.
pub fn binders(pol: Polarity) -> [Binder; 4] {
    let (pos, neg) = match pol {
        Polarity::Par => (Side::Context, Side::Term),
        Polarity::Tens => (Side::Term, Side::Context),
    };
    [
        Binder { name: "mu+", side: pos, shape: Shape::Mu },
        Binder { name: "mu-", side: neg, shape: Shape::Mu },
        Binder { name: "mu()", side: neg, shape: Shape::Pair },
        Binder { name: "mu[]", side: neg, shape: Shape::Box },
    ]
}

fn arity(shape: Shape) -> usize {
    if shape == Shape::Pair {
        2
    } else {
        1
    }
}

/// Binder value for a command function given as a table over its
/// arguments (row-major for pairs).
fn bind(s: &Structure, b: Binder, table: &[Cmd]) -> Elem {
    let n = s.lattice().size();
    match b.shape {
        Shape::Mu => bind_mu(s.lattice(), b.side, |a| table[a]),
        Shape::Box => bind_box(s, b.side, |a| table[a]),
        Shape::Pair => bind_pair(s, b.side, |a, c| table[a * n + c]),
    }
}

/// What the binder's arguments stand for when it is cut: a context value
/// for a term-side binder, a term value for a context-side one.
fn plug(s: &Structure, b: Binder, args: &[Elem]) -> Elem {
    match b.shape {
        Shape::Mu => args[0],
        Shape::Pair => pairing(s, args[0], args[1]),
        Shape::Box => s.neg(args[0]),
    }
}

fn cut(b: Binder, binder: Elem, other: Elem) -> Cmd {
    match b.side {
        Side::Term => (binder, other),
        Side::Context => (other, binder),
    }
}

fn tuples(n: usize, k: usize) -> Vec<Vec<Elem>> {
    (0..n.pow(k as u32))
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let v = code % n;
                    code /= n;
                    v
                })
                .collect()
        })
        .collect()
}

/// Command functions to sweep. Unary functions are enumerated exhaustively
/// (`(n²)^n` of them). For pairs, a binder only sees which arguments land in
/// the pole, so one representative per pole predicate is exhaustive.
fn command_functions(s: &Structure, shape: Shape) -> Vec<Vec<Cmd>> {
    let l = s.lattice();
    let n = l.size();
    match shape {
        Shape::Mu | Shape::Box => {
            let cmds: Vec<Cmd> = tuples(n, 2).into_iter().map(|v| (v[0], v[1])).collect();
            tuples(cmds.len(), n).into_iter().map(|idx| idx.into_iter().map(|i| cmds[i]).collect()).collect()
        }
        Shape::Pair => {
            let (yes, no) = ((l.bot(), l.top()), (l.top(), l.bot()));
            if n == 1 {
                return vec![vec![yes]];
            }
            (0u64..1 << (n * n)).map(|mask| (0..n * n).map(|i| if mask >> i & 1 == 1 { yes } else { no }).collect()).collect()
        }
    }
}

/// Variance of every binder over all pointwise-⊴-ordered pairs of command
/// functions: meets are covariant, joins contravariant.
pub fn check_variance(s: &Structure, pol: Polarity) -> Result<usize, LawFailure> {
    let l = s.lattice();
    let mut count = 0;
    for b in binders(pol) {
        let fs = command_functions(s, b.shape);
        let vals: Vec<Elem> = fs.iter().map(|f| bind(s, b, f)).collect();
        for (i, f) in fs.iter().enumerate() {
            for (j, g) in fs.iter().enumerate() {
                if !f.iter().zip(g).all(|(&x, &y)| command_order(l, x, y)) {
                    continue;
                }
                count += 1;
                let ok = match b.side {
                    Side::Term => l.le(vals[i], vals[j]),
                    Side::Context => l.le(vals[j], vals[i]),
                };
                if !ok {
                    return Err(fail(format!("{pol} {} variance", b.name), format!("{f:?} ⊴ {g:?} gives {} vs {}", vals[i], vals[j])));
                }
            }
        }
    }
    Ok(count)
}

/// β: cutting a binder against an argument is ⊴ the instantiated body.
pub fn check_beta(s: &Structure, pol: Polarity) -> Result<usize, LawFailure> {
    let l = s.lattice();
    let n = l.size();
    let mut count = 0;
    for b in binders(pol) {
        let k = arity(b.shape);
        for f in command_functions(s, b.shape) {
            let v = bind(s, b, &f);
            for args in tuples(n, k) {
                count += 1;
                let idx = if k == 2 { args[0] * n + args[1] } else { args[0] };
                let lhs = cut(b, v, plug(s, b, &args));
                if !command_order(l, lhs, f[idx]) {
                    return Err(fail(format!("{pol} {} beta", b.name), format!("c = {f:?}, args {args:?}")));
                }
            }
        }
    }
    Ok(count)
}

/// η: a binder over `a ↦ ⟨x‖a⟩` (term side) or `a ↦ ⟨a‖x⟩` (context side)
/// gives back `x` for `μ`, and a bound on `x` for pairs and boxes.
pub fn check_eta(s: &Structure, pol: Polarity) -> Result<usize, LawFailure> {
    let l = s.lattice();
    let n = l.size();
    let mut count = 0;
    for b in binders(pol) {
        let k = arity(b.shape);
        for x in l.elements() {
            count += 1;
            let table: Vec<Cmd> = tuples(n, k).iter().map(|args| cut(b, x, plug(s, b, args))).collect();
            let table = if k == 2 {
                // tuples() is little-endian; the table is row-major.
                let mut t = vec![(0, 0); n * n];
                for (i, args) in tuples(n, 2).iter().enumerate() {
                    t[args[0] * n + args[1]] = table[i];
                }
                t
            } else {
                table
            };
            let v = bind(s, b, &table);
            let ok = match (b.shape, b.side) {
                (Shape::Mu, _) => v == x,
                (_, Side::Term) => l.le(x, v),
                (_, Side::Context) => l.le(v, x),
            };
            if !ok {
                return Err(fail(format!("{pol} {} eta", b.name), format!("x = {x} gives {v}")));
            }
        }
    }
    Ok(count)
}

/// Subject reduction sweep prepared once for a list of reduction steps:
/// parameters become free names, and each distinct command is compiled.
pub struct ReductionSweep {
    pol: Polarity,
    params: usize,
    steps: Vec<(String, Rule, String, String)>,
    lifted: Vec<(usize, usize)>,
    code: Vec<(Vec<usize>, Compiled)>,
}

impl ReductionSweep {
    pub fn new(pol: Polarity, pairs: &[(&str, Rule, Command, Command)], params: usize) -> Result<Self, CalcError> {
        let names: Vec<String> = (0..params).map(|p| format!("#p{p}")).collect();
        let lift = |c: &Command| -> Command {
            let mut out = c.clone();
            for (p, name) in names.iter().enumerate() {
                out = out.subst_param(p, name);
            }
            out
        };
        let mut code: Vec<(Vec<usize>, Compiled)> = Vec::new();
        let mut index: HashMap<Command, usize> = HashMap::new();
        let mut slot = |c: &Command| -> Result<usize, CalcError> {
            c.check_polarity(pol)?;
            let lifted = lift(c);
            if let Some(&i) = index.get(&lifted) {
                return Ok(i);
            }
            let used: Vec<usize> = c.params().into_iter().filter(|&p| p < params).collect();
            let inputs: Vec<Name> = used.iter().flat_map(|&p| [(Sort::Var, names[p].clone()), (Sort::CoVar, names[p].clone())]).collect();
            index.insert(lifted.clone(), code.len());
            code.push((used, Compiled::new(&lifted, &inputs)?));
            Ok(code.len() - 1)
        };
        let mut lifted = Vec::new();
        for (_, _, a, b) in pairs {
            lifted.push((slot(a)?, slot(b)?));
        }
        let steps = pairs.iter().map(|(name, rule, a, b)| (name.to_string(), *rule, a.to_string(), b.to_string())).collect();
        Ok(ReductionSweep { pol, params, steps, lifted, code })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// For every step `c1 → c2` and every assignment of the parameters,
    /// `c1 ⊴ c2`.
    pub fn check(&self, s: &Structure) -> Result<Result<usize, LawFailure>, CalcError> {
        let want = expected_kind(self.pol);
        if s.kind() != want {
            return Err(CalcError::KindMismatch { wanted: want, found: s.kind() });
        }
        let l = s.lattice();
        let n = l.size();
        // Each distinct command is tabulated over the parameters it mentions.
        let tables: Vec<Vec<Cmd>> = self
            .code
            .iter()
            .map(|(used, code)| {
                let mut ev = code.evaluator(s);
                tuples(n, used.len()).iter().map(|a| ev.run(&a.iter().flat_map(|&v| [v, v]).collect::<Vec<_>>())).collect()
            })
            .collect();
        let mut vals = vec![(0, 0); tables.len()];
        let mut count = 0;
        for assign in tuples(n, self.params) {
            for ((v, table), (used, _)) in vals.iter_mut().zip(&tables).zip(&self.code) {
                // tuples() is little-endian.
                let idx = used.iter().rev().fold(0, |acc, &p| acc * n + assign[p]);
                *v = table[idx];
            }
            for (k, &(i1, i2)) in self.lifted.iter().enumerate() {
                count += 1;
                let (v1, v2) = (vals[i1], vals[i2]);
                if !command_order(l, v1, v2) {
                    let (name, rule, c1, c2) = &self.steps[k];
                    return Ok(Err(fail(
                        format!("{} subject reduction ({rule})", self.pol),
                        format!("fixture {name}, parameters {assign:?}: {c1} ↦ {v1:?} but {c2} ↦ {v2:?}"),
                    )));
                }
            }
        }
        Ok(Ok(count))
    }
}

/// One-shot form of [`ReductionSweep`].
pub fn check_subject_reduction(
    s: &Structure,
    pol: Polarity,
    pairs: &[(&str, Rule, Command, Command)],
    params: usize,
) -> Result<Result<usize, LawFailure>, CalcError> {
    ReductionSweep::new(pol, pairs, params)?.check(s)
}

/// Adequacy at every node of every fixture derivation, under every
/// realizing valuation.
pub fn check_adequacy_fixtures(s: &Structure, pol: Polarity, fixtures: &[(&str, TypedSequent)]) -> Result<Result<usize, LawFailure>, CalcError> {
    let mut count = 0;
    for (name, seq) in fixtures {
        if seq.judgment.subject.params().iter().any(|&p| p >= s.lattice().size()) {
            continue;
        }
        let d = typecheck(seq)?;
        match check_adequacy_all(s, pol, &d)? {
            Ok(k) => count += k,
            Err(e) => return Ok(Err(fail(format!("{pol} adequacy"), format!("fixture {name}: {e}")))),
        }
    }
    Ok(Ok(count))
}

/// `ι(t)` computed with the induced arrow equals the interpretation of the
/// call-by-name embedding of `t`.
pub fn check_sanity(d: &DisjunctiveStructure, corpus: &[(&str, LambdaTerm)]) -> Result<Result<usize, LawFailure>, CalcError> {
    let s: Structure = d.clone().into();
    for (name, t) in corpus {
        let direct = crate::encodings::interpret_lambda(d, t).map_err(CalcError::Encoding)?;
        let embedded = super::embed::embed_lambda_cbn(t);
        let via = super::interp::interpret_term(&s, Polarity::Par, &embedded)?;
        if direct != via {
            return Ok(Err(fail("sanity", format!("{name}: direct {direct}, embedded {via}"))));
        }
    }
    Ok(Ok(corpus.len()))
}

/// Whether a closed command lands in the pole.
pub fn well_formed(s: &Structure, pol: Polarity, c: &Command) -> Result<bool, CalcError> {
    let v = super::interp::interpret(s, pol, &Subject::Command(c.clone()))?;
    Ok(match v {
        super::interp::Interpretation::Command(c) => in_pole(s.lattice(), c),
        _ => unreachable!("commands interpret to commands"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{enumerate_conjunctive, enumerate_disjunctive};
    use crate::lattice::enumerate_lattices;

    fn structures(pol: Polarity, max_n: usize) -> Vec<Structure> {
        let mut out: Vec<Structure> = Vec::new();
        for l in enumerate_lattices(max_n) {
            match pol {
                Polarity::Par => out.extend(enumerate_disjunctive(&l).into_iter().map(Structure::from)),
                Polarity::Tens => out.extend(enumerate_conjunctive(&l).into_iter().map(Structure::from)),
            }
        }
        out
    }

    #[test]
    fn binder_laws_on_small_carriers() {
        for pol in [Polarity::Par, Polarity::Tens] {
            for s in structures(pol, 3) {
                check_variance(&s, pol).unwrap();
                check_beta(&s, pol).unwrap();
                check_eta(&s, pol).unwrap();
            }
        }
    }

    #[test]
    fn subject_reduction_on_small_carriers() {
        for pol in [Polarity::Par, Polarity::Tens] {
            let pairs = super::super::corpus::reduction_pairs(pol, 12);
            let sweep = ReductionSweep::new(pol, &pairs, super::super::corpus::FIXTURE_PARAMS).unwrap();
            for s in structures(pol, 3) {
                sweep.check(&s).unwrap().unwrap();
            }
        }
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let l = &enumerate_lattices(2).last().unwrap();
        let s: Structure = enumerate_conjunctive(l).remove(0).into();
        assert!(matches!(check_subject_reduction(&s, Polarity::Par, &[], 1), Err(CalcError::KindMismatch { .. })));
    }
}
