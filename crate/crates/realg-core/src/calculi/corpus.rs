//! Fixture corpora for both calculi: closed commands exercising every
//! reduction rule, typed sequents, and a small λ-term corpus.

use crate::encodings::LambdaTerm;
use crate::lattice::Elem;
use crate::sexpr::{parse_calc_file, parse_command, parse_lambda};

use super::embed::{app, lam, stack, Fresh};
use super::reduce::{normalize, step_with_rule, Rule};
use super::syntax::{cmd, Command, Context, Replacement, Sort, Term};
use super::typing::TypedSequent;
use super::Polarity;

/// A closed command, the rule its first step must use and, when given, the
/// expected one-step reduct (compared up to renaming of bound names).
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub command: Command,
    pub first_rule: Option<Rule>,
    pub reduct: Option<Command>,
}

type Row = (&'static str, &'static str, Option<Rule>, Option<&'static str>);

const PAR_ROWS: &[Row] = &[
    ("box-beta", "(cmd (mubox x (cmd x (par 1))) (box (par 0)))", Some(Rule::BoxBeta), Some("(cmd (par 0) (par 1))")),
    ("mu-tilde", "(cmd (par 0) (mut x (cmd x (par 1))))", Some(Rule::MuTilde), Some("(cmd (par 0) (par 1))")),
    ("mu-tilde-any-term", "(cmd (mu a (cmd (par 0) a)) (mut x (cmd x (par 1))))", Some(Rule::MuTilde), Some("(cmd (mu a (cmd (par 0) a)) (par 1))")),
    ("mu-beta", "(cmd (mu a (cmd (par 0) a)) (par 1))", Some(Rule::MuBeta), Some("(cmd (par 0) (par 1))")),
    ("mu-beta-box", "(cmd (mu a (cmd (par 0) a)) (box (mu b (cmd (par 1) b))))", Some(Rule::MuBeta), Some("(cmd (par 0) (box (mu b (cmd (par 1) b))))")),
    ("pair-beta", "(cmd (mupair a b (cmd (par 0) b)) (pair (par 1) (par 2)))", Some(Rule::PairBeta), Some("(cmd (par 0) (par 2))")),
    ("pair-beta-swap", "(cmd (mupair a b (cmd (par 0) (pair b a))) (pair (par 1) (par 2)))", Some(Rule::PairBeta), Some("(cmd (par 0) (pair (par 2) (par 1)))")),
    (
        "pair-expand",
        "(cmd (par 0) (pair (mut x (cmd x (par 1))) (par 2)))",
        Some(Rule::PairExpand),
        Some("(cmd (mu k0 (cmd (mu k1 (cmd (par 0) (pair k0 k1))) (par 2))) (mut x (cmd x (par 1))))"),
    ),
    ("pair-expand-right", "(cmd (par 0) (pair (par 1) (mut y (cmd y (par 2)))))", Some(Rule::PairExpand), None),
    ("pair-expand-both", "(cmd (par 0) (pair (mut x (cmd x (par 1))) (mut y (cmd y (par 2)))))", Some(Rule::PairExpand), None),
    ("pair-expand-nested", "(cmd (mupair a b (cmd (par 0) a)) (pair (box (par 1)) (pair (par 2) (mut y (cmd y (par 0))))))", Some(Rule::PairExpand), None),
    ("box-of-computation", "(cmd (mubox x (cmd x (par 1))) (box (mu a (cmd (par 0) a))))", Some(Rule::BoxBeta), Some("(cmd (mu a (cmd (par 0) a)) (par 1))")),
    ("lambda-identity", "(cmd (mupair a b (cmd (mubox x (cmd x b)) a)) (pair (box (par 0)) (par 1)))", Some(Rule::PairBeta), None),
    ("mu-chain", "(cmd (mu a (cmd (mu b (cmd (par 0) a)) (par 1))) (par 2))", Some(Rule::MuBeta), None),
    ("erase", "(cmd (mu a (cmd (par 0) (par 1))) (par 2))", Some(Rule::MuBeta), Some("(cmd (par 0) (par 1))")),
    ("duplicate", "(cmd (mubox y (cmd y (mut z (cmd z (pair (par 1) (par 1)))))) (box (par 0)))", Some(Rule::BoxBeta), None),
    ("control", "(cmd (mu a (cmd (mubox x (cmd x a)) (box (mu b (cmd (par 0) a))))) (par 1))", Some(Rule::MuBeta), None),
    ("stuck", "(cmd (par 0) (par 1))", None, None),
    ("stuck-box", "(cmd (par 0) (box (par 1)))", None, None),
];

const TENS_ROWS: &[Row] = &[
    ("mu-beta", "(cmd (mu a (cmd (par 0) a)) (par 1))", Some(Rule::MuBeta), Some("(cmd (par 0) (par 1))")),
    ("mu-beta-any-context", "(cmd (mu a (cmd (par 0) a)) (mut x (cmd x (par 1))))", Some(Rule::MuBeta), Some("(cmd (par 0) (mut x (cmd x (par 1))))")),
    ("box-beta", "(cmd (box (par 0)) (mubox a (cmd (par 1) a)))", Some(Rule::BoxBeta), Some("(cmd (par 1) (par 0))")),
    ("box-of-computation", "(cmd (box (mut x (cmd x (par 1)))) (mubox a (cmd (par 0) a)))", Some(Rule::BoxBeta), Some("(cmd (par 0) (mut x (cmd x (par 1))))")),
    ("mu-tilde", "(cmd (par 0) (mut x (cmd x (par 1))))", Some(Rule::MuTilde), Some("(cmd (par 0) (par 1))")),
    ("mu-tilde-box", "(cmd (box (par 0)) (mut x (cmd x (par 1))))", Some(Rule::MuTilde), Some("(cmd (box (par 0)) (par 1))")),
    ("pair-beta", "(cmd (pair (par 0) (par 1)) (mupair x y (cmd y (par 2))))", Some(Rule::PairBeta), Some("(cmd (par 1) (par 2))")),
    ("pair-beta-swap", "(cmd (pair (par 0) (par 1)) (mupair x y (cmd (pair y x) (par 2))))", Some(Rule::PairBeta), Some("(cmd (pair (par 1) (par 0)) (par 2))")),
    (
        "pair-expand",
        "(cmd (pair (mu a (cmd (par 0) a)) (par 1)) (mupair x y (cmd x (par 2))))",
        Some(Rule::PairExpand),
        Some("(cmd (mu a (cmd (par 0) a)) (mut k0 (cmd (par 1) (mut k1 (cmd (pair k0 k1) (mupair x y (cmd x (par 2))))))))"),
    ),
    ("pair-expand-right", "(cmd (pair (par 0) (mu a (cmd (par 1) a))) (par 2))", Some(Rule::PairExpand), None),
    ("pair-expand-both", "(cmd (pair (mu a (cmd (par 0) a)) (mu b (cmd (par 1) b))) (par 2))", Some(Rule::PairExpand), None),
    (
        "pair-expand-nested",
        "(cmd (pair (pair (par 0) (mu a (cmd (par 1) a))) (par 2)) (mupair x y (cmd x (mupair u v (cmd v (par 0))))))",
        Some(Rule::PairExpand),
        None,
    ),
    ("mu-chain", "(cmd (mu a (cmd (mu b (cmd (par 0) a)) (par 1))) (par 2))", Some(Rule::MuBeta), None),
    ("erase", "(cmd (mu a (cmd (par 0) (par 1))) (par 2))", Some(Rule::MuBeta), Some("(cmd (par 0) (par 1))")),
    ("duplicate", "(cmd (par 0) (mut x (cmd (pair x x) (mupair y z (cmd z (par 1))))))", Some(Rule::MuTilde), None),
    (
        "unpack-box",
        "(cmd (pair (box (par 0)) (par 1)) (mupair x y (cmd (par 2) (mut z (cmd x (mubox a (cmd y a)))))))",
        Some(Rule::PairBeta),
        None,
    ),
    ("control", "(cmd (mu a (cmd (box a) (mubox b (cmd (par 0) b)))) (par 1))", Some(Rule::MuBeta), None),
    ("stuck", "(cmd (par 0) (par 1))", None, None),
    ("stuck-box", "(cmd (box (par 0)) (par 1))", None, None),
];

/// The number of distinct parameters used by [`fixtures`].
pub const FIXTURE_PARAMS: usize = 3;

fn lambda_fixture(pol: Polarity, name: &'static str, t: &LambdaTerm) -> Fixture {
    let term = super::embed::embed_lambda(pol, t);
    Fixture { name, command: cmd(term, Context::Param(2)), first_rule: None, reduct: None }
}

/// Reduction fixtures for one calculus: the table-driven commands plus
/// embeddings of a few λ-terms run against a parameter.
pub fn fixtures(pol: Polarity) -> Vec<Fixture> {
    let rows = match pol {
        Polarity::Par => PAR_ROWS,
        Polarity::Tens => TENS_ROWS,
    };
    let mut out: Vec<Fixture> = rows
        .iter()
        .map(|&(name, src, first_rule, reduct)| Fixture {
            name,
            command: parse_command(src).unwrap_or_else(|e| panic!("fixture {name}: {e}")),
            first_rule,
            reduct: reduct.map(|r| parse_command(r).unwrap_or_else(|e| panic!("fixture {name}: {e}"))),
        })
        .collect();
    let l = |s: &str| parse_lambda(s).expect("corpus term");
    out.push(lambda_fixture(pol, "lambda-i-applied", &l("(app (lam x x) (par 0))")));
    out.push(lambda_fixture(pol, "lambda-k-applied", &l("(app (lam x y x) (par 0) (par 1))")));
    out.push(lambda_fixture(pol, "lambda-skk", &l("(app (lam x y z (app x z (app y z))) (lam x y x) (lam x y x) (par 0))")));
    out.push(lambda_fixture(pol, "lambda-omega", &l("(app (lam x (app x x)) (lam x (app x x)))")));
    out
}

/// Closed commands for one calculus, ready to reduce.
pub fn commands(pol: Polarity) -> Vec<(&'static str, Command)> {
    fixtures(pol).into_iter().map(|f| (f.name, f.command)).collect()
}

/// Every reduction step taken from every fixture, up to `fuel` steps each.
pub fn reduction_pairs(pol: Polarity, fuel: usize) -> Vec<(&'static str, Rule, Command, Command)> {
    let mut out = Vec::new();
    for f in fixtures(pol) {
        let trace = normalize(pol, &f.command, fuel);
        for (k, r) in trace.rules.iter().enumerate() {
            out.push((f.name, *r, trace.commands[k].clone(), trace.commands[k + 1].clone()));
        }
    }
    out
}

/// Instantiates fixture parameters on a carrier through `assign`.
pub fn instantiate(c: &Command, assign: &[Elem]) -> Command {
    c.map_params(&|p| assign[p])
}

/// Checks the declared first rule and reduct of every fixture; returns the
/// failures by name.
pub fn check_fixtures(pol: Polarity) -> Vec<String> {
    let mut bad = Vec::new();
    for f in fixtures(pol) {
        let got = step_with_rule(pol, &f.command).ok();
        match (&f.first_rule, &got) {
            (None, None) => {}
            (Some(r), Some((g, _))) if r == g => {}
            _ if f.first_rule.is_none() && f.reduct.is_none() && f.name.starts_with("lambda") => {}
            _ => bad.push(format!("{}: expected {:?}, got {:?}", f.name, f.first_rule, got.as_ref().map(|g| g.0))),
        }
        if let (Some(want), Some((_, next))) = (&f.reduct, &got) {
            if !want.alpha_eq(next) {
                bad.push(format!("{}: reduct {next}, expected {want}", f.name));
            }
        }
    }
    bad
}

/// Rules exercised by the fixture corpus, in any step of any trace.
pub fn rules_covered(pol: Polarity, fuel: usize) -> Vec<Rule> {
    let mut seen: Vec<Rule> = reduction_pairs(pol, fuel).into_iter().map(|(_, r, _, _)| r).collect();
    seen.sort_by_key(|r| r.name());
    seen.dedup();
    seen
}

/// The call-by-name and call-by-value derived β-laws on fixed instances.
pub fn check_derived_laws() -> Result<usize, String> {
    let p = Term::Param;
    check_cbn_laws(&p(0), "x", &Term::var("x"), &p(1))?;
    check_cbn_laws(&Term::mu("a", cmd(p(0), Context::covar("a"))), "x", &Term::mu("b", cmd(Term::var("x"), Context::covar("b"))), &p(1))?;
    let e = Context::Param(2);
    check_cbv_law("x", &Term::var("x"), &p(1), &e, &p(0), 50)?;
    check_cbv_law("x", &Term::pair(Term::var("x"), Term::var("x")), &Term::mu("a", cmd(p(0), Context::covar("a"))), &e, &p(1), 50)?;
    Ok(4)
}

// ---------------------------------------------------------------------------
// typed fixtures

const PAR_TYPED: &[(&str, &str)] = &[
    ("axiom", "(var x X) (covar a X) (cmd x a)"),
    ("term-axiom", "(var x X) (term x X)"),
    ("identity", "(term (mupair a b (cmd (mubox x (cmd x b)) a)) (arr X X))"),
    ("identity-generic", "(term (mupair a b (cmd (mubox x (cmd x b)) a)) (forall X (arr X X)))"),
    ("double-negation", "(term (mupair a b (cmd (mubox y (cmd y (box (mubox x (cmd x b))))) a)) (arr (neg (neg X)) X))"),
    ("instantiate", "(var x (forall X X)) (covar a (par 0)) (hint (par 0)) (cmd x a)"),
    ("pair-context", "(var x X) (covar a X) (covar b Y) (cmd (mupair c d (cmd x c)) (pair a b))"),
    ("box-context", "(var y X) (covar b X) (cmd (mubox x (cmd x b)) (box y))"),
    ("annotated-cut", "(var x X) (covar b X) (cmd (mu a (cmd x a)) (mut y (cmd y b)) X)"),
    ("parameter", "(cmd (par 0) (par 0))"),
    ("mu-tilde", "(covar b Y) (context (mut y (cmd y b)) Y)"),
    ("weakening", "(var x X) (covar a X) (covar b Y) (term (mu c (cmd x a)) Y)"),
];

const TENS_TYPED: &[(&str, &str)] = &[
    ("axiom", "(var x X) (covar a X) (cmd x a)"),
    ("term-axiom", "(var x X) (term x X)"),
    ("identity", "(term (box (mupair x y (cmd y (mubox b (cmd x b))))) (arr X X))"),
    ("witness", "(var x (par 0)) (hint (par 0)) (term x (exists X X))"),
    ("unpack", "(covar a (exists Y Y)) (hint X) (context (mupair x y (cmd x a (exists Y Y))) (exists X (tens X X)))"),
    ("pair-term", "(var x X) (var y Y) (covar b Y) (cmd (pair x y) (mupair u v (cmd v b)))"),
    ("box-term", "(var x X) (covar a X) (cmd (box a) (mubox b (cmd x b)))"),
    ("parameter", "(cmd (par 0) (mut x (cmd x (par 0))))"),
    ("annotated-cut", "(var x X) (covar b X) (cmd (mu a (cmd x a)) (mut y (cmd y b)) X)"),
    ("mu-tilde", "(covar b Y) (context (mut y (cmd y b)) Y)"),
    ("weakening", "(var x X) (var z Y) (covar a X) (cmd x a)"),
    ("swap", "(var x X) (var y Y) (covar b (tens Y X)) (cmd (pair x y) (mupair u v (cmd (pair v u) b)))"),
];

/// Sequents that must typecheck, for both calculi.
pub fn typed_fixtures(pol: Polarity) -> Vec<(&'static str, TypedSequent)> {
    let rows = match pol {
        Polarity::Par => PAR_TYPED,
        Polarity::Tens => TENS_TYPED,
    };
    let mut out: Vec<(&'static str, TypedSequent)> = rows
        .iter()
        .map(|&(name, body)| {
            let text = format!("calculus {pol}\n{body}\n");
            (name, parse_calc_file(&text).unwrap_or_else(|e| panic!("typed fixture {name}: {e}")).sequent)
        })
        .collect();
    // Embedded K at its simple type.
    let k = super::embed::embed_lambda(pol, &LambdaTerm::k());
    let text = format!("calculus {pol}\n(term {k} (arr X (arr Y X)))\n");
    out.push(("embedded-k", parse_calc_file(&text).expect("embedded K").sequent));
    out
}

// ---------------------------------------------------------------------------
// λ corpus

pub const LAMBDA_CORPUS: [(&str, &str); 10] = [
    ("I", "(lam x x)"),
    ("K", "(lam x y x)"),
    ("K*", "(lam x y y)"),
    ("S", "(lam x y z (app x z (app y z)))"),
    ("delta", "(lam x (app x x))"),
    ("two", "(lam f x (app f (app f x)))"),
    ("B", "(lam f g x (app f (app g x)))"),
    ("C", "(lam f x y (app f y x))"),
    ("KI", "(app (lam x y x) (lam z z))"),
    ("omega", "(app (lam x (app x x)) (lam x (app x x)))"),
];

pub fn lambda_corpus() -> Vec<(&'static str, LambdaTerm)> {
    LAMBDA_CORPUS.iter().map(|&(n, s)| (n, parse_lambda(s).expect("corpus term"))).collect()
}

// ---------------------------------------------------------------------------
// derived laws of the embeddings

/// Call-by-name: `⟨t u‖π⟩ → ⟨t‖([u],π)⟩` in one step and
/// `⟨λx.t‖([u],π)⟩ →² ⟨t[u/x]‖π⟩`, for a covariable stack `π`.
pub fn check_cbn_laws(t: &Term, x: &str, body: &Term, u: &Term) -> Result<(), String> {
    let pol = Polarity::Par;
    let mut fresh = Fresh::default();
    let pi = Context::covar("pi");
    let applied = app(pol, t.clone(), u.clone(), &mut fresh);
    let one = super::reduce::step(pol, &cmd(applied, pi.clone())).map_err(|e| e.to_string())?;
    let want = cmd(t.clone(), stack(pol, u.clone(), pi.clone(), "unused"));
    if !one.alpha_eq(&want) {
        return Err(format!("application: got {one}, expected {want}"));
    }
    let abs = lam(pol, x, body.clone(), &mut fresh);
    let start = cmd(abs, stack(pol, u.clone(), pi.clone(), "unused"));
    let trace = normalize(pol, &start, 2);
    let want = cmd(body.clone(), pi).subst_var(x, u);
    if trace.rules.len() != 2 || !trace.last().alpha_eq(&want) {
        return Err(format!("β: got {} after {} steps, expected {want}", trace.last(), trace.rules.len()));
    }
    Ok(())
}

/// Call-by-value: `⟨λx.t‖u·e⟩ →* ⟨u‖μx.⟨t‖e⟩⟩` up to joinability. For a
/// value `u` both sides must reach the same normal form; otherwise the left
/// side must reach `⟨u‖μy.c'⟩`, and `c'` and `⟨t‖e⟩` must normalize to the
/// same command once a value is substituted for the bound variable.
pub fn check_cbv_law(x: &str, body: &Term, u: &Term, e: &Context, probe: &Term, fuel: usize) -> Result<(), String> {
    let pol = Polarity::Tens;
    let mut fresh = Fresh::default();
    let abs = lam(pol, x, body.clone(), &mut fresh);
    let beta = fresh.covar();
    let lhs = cmd(abs, stack(pol, u.clone(), e.clone(), &beta));
    let rhs = cmd(u.clone(), Context::mu(x, cmd(body.clone(), e.clone())));
    let left = normalize(pol, &lhs, fuel);
    if u.is_value() {
        let right = normalize(pol, &rhs, fuel);
        if left.out_of_fuel() || right.out_of_fuel() {
            return Err("out of fuel".into());
        }
        return if left.last().alpha_eq(right.last()) {
            Ok(())
        } else {
            Err(format!("normal forms differ: {} vs {}", left.last(), right.last()))
        };
    }
    let reached = left.commands.iter().find_map(|c| match &c.ctx {
        Context::Mu(y, inner) if c.term == *u => Some((y.clone(), (**inner).clone())),
        _ => None,
    });
    let (y, inner) = reached.ok_or_else(|| format!("left side never exposes {u} against a μ̃"))?;
    let a = normalize(pol, &inner.subst(&vec![((Sort::Var, y), Replacement::Term(probe.clone()))]), fuel);
    let b = normalize(pol, &cmd(body.clone(), e.clone()).subst_var(x, probe), fuel);
    if a.out_of_fuel() || b.out_of_fuel() {
        return Err("out of fuel".into());
    }
    if a.last().alpha_eq(b.last()) {
        Ok(())
    } else {
        Err(format!("bodies differ: {} vs {}", a.last(), b.last()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_match_tables() {
        for pol in [Polarity::Par, Polarity::Tens] {
            assert!(fixtures(pol).len() >= 20);
            assert_eq!(check_fixtures(pol), Vec::<String>::new(), "{pol}");
            assert_eq!(rules_covered(pol, 20).len(), Rule::ALL.len(), "{pol}");
        }
    }

    #[test]
    fn typed_fixtures_typecheck() {
        for pol in [Polarity::Par, Polarity::Tens] {
            for (name, s) in typed_fixtures(pol) {
                if let Err(e) = super::super::typing::typecheck(&s) {
                    panic!("{pol} {name}: {e}");
                }
            }
        }
    }

    #[test]
    fn derived_laws() {
        assert_eq!(check_derived_laws().unwrap(), 4);
    }
}
