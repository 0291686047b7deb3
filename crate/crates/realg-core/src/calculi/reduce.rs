use std::fmt;

use crate::encodings::fresh_name;

use super::syntax::{cmd, Command, Context, Replacement, Sort, Term};
use super::Polarity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Box destructor against a box.
    BoxBeta,
    /// `μx.c` catching a term.
    MuTilde,
    /// `μα.c` catching a context.
    MuBeta,
    /// Pair destructor against a pair of values.
    PairBeta,
    /// Expansion of a non-value pair.
    PairExpand,
}

impl Rule {
    pub const ALL: [Rule; 5] = [Rule::BoxBeta, Rule::MuTilde, Rule::MuBeta, Rule::PairBeta, Rule::PairExpand];

    pub fn name(self) -> &'static str {
        match self {
            Rule::BoxBeta => "box-beta",
            Rule::MuTilde => "mu-tilde",
            Rule::MuBeta => "mu-beta",
            Rule::PairBeta => "pair-beta",
            Rule::PairExpand => "pair-expand",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stuck {
    pub reason: String,
}

impl fmt::Display for Stuck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stuck: {}", self.reason)
    }
}

fn pair_sub(a: &str, va: Replacement, b: &str, vb: Replacement, sort: Sort) -> Vec<((Sort, String), Replacement)> {
    vec![((sort, a.to_string()), va), ((sort, b.to_string()), vb)]
}

fn fresh_pair(c: &Command) -> (String, String) {
    let avoid: Vec<String> = c.free().into_iter().map(|(_, n)| n).collect();
    let a = fresh_name("k", &avoid);
    let mut avoid2 = avoid;
    avoid2.push(a.clone());
    let b = fresh_name("k", &avoid2);
    (a, b)
}

fn par_candidates(c: &Command) -> Vec<(Rule, Command)> {
    let mut out = Vec::new();
    if let (Term::MuBox(x, body), Context::Boxed(t)) = (&c.term, &c.ctx) {
        out.push((Rule::BoxBeta, body.subst_var(x, t)));
    }
    if let Context::Mu(x, body) = &c.ctx {
        out.push((Rule::MuTilde, body.subst_var(x, &c.term)));
    }
    if let Term::Mu(a, body) = &c.term {
        if c.ctx.is_value() {
            out.push((Rule::MuBeta, body.subst_covar(a, &c.ctx)));
        }
    }
    if let (Term::MuPair(a1, a2, body), Context::Pair(v1, v2)) = (&c.term, &c.ctx) {
        if v1.is_value() && v2.is_value() {
            let sub = pair_sub(
                a1,
                Replacement::Context((**v1).clone()),
                a2,
                Replacement::Context((**v2).clone()),
                Sort::CoVar,
            );
            out.push((Rule::PairBeta, body.subst(&sub)));
        }
    }
    if let Context::Pair(e1, e2) = &c.ctx {
        if !c.ctx.is_value() {
            // ⟨t‖(e,e')⟩ → ⟨μα.⟨μα'.⟨t‖(α,α')⟩‖e'⟩‖e⟩
            let (a, b) = fresh_pair(c);
            let inner = cmd(c.term.clone(), Context::pair(Context::covar(&a), Context::covar(&b)));
            let mid = cmd(Term::mu(&b, inner), (**e2).clone());
            out.push((Rule::PairExpand, cmd(Term::mu(&a, mid), (**e1).clone())));
        }
    }
    out
}

fn tens_candidates(c: &Command) -> Vec<(Rule, Command)> {
    let mut out = Vec::new();
    if let Term::Mu(a, body) = &c.term {
        out.push((Rule::MuBeta, body.subst_covar(a, &c.ctx)));
    }
    if let (Term::Boxed(e), Context::MuBox(a, body)) = (&c.term, &c.ctx) {
        out.push((Rule::BoxBeta, body.subst_covar(a, e)));
    }
    if let Context::Mu(x, body) = &c.ctx {
        if c.term.is_value() {
            out.push((Rule::MuTilde, body.subst_var(x, &c.term)));
        }
    }
    if let (Term::Pair(v1, v2), Context::MuPair(x, y, body)) = (&c.term, &c.ctx) {
        if v1.is_value() && v2.is_value() {
            let sub =
                pair_sub(x, Replacement::Term((**v1).clone()), y, Replacement::Term((**v2).clone()), Sort::Var);
            out.push((Rule::PairBeta, body.subst(&sub)));
        }
    }
    if let Term::Pair(t, u) = &c.term {
        if !c.term.is_value() {
            // ⟨(t,u)‖e⟩ → ⟨t‖μx.⟨u‖μy.⟨(x,y)‖e⟩⟩⟩
            let (x, y) = fresh_pair(c);
            let inner = cmd(Term::pair(Term::var(&x), Term::var(&y)), c.ctx.clone());
            let mid = cmd((**u).clone(), Context::mu(&y, inner));
            out.push((Rule::PairExpand, cmd((**t).clone(), Context::mu(&x, mid))));
        }
    }
    out
}

/// One reduction step together with the rule that fired.
///
/// Panics if two rules apply at once: the grammar makes them disjoint.
pub fn step_with_rule(pol: Polarity, c: &Command) -> Result<(Rule, Command), Stuck> {
    let mut cands = match pol {
        Polarity::Par => par_candidates(c),
        Polarity::Tens => tens_candidates(c),
    };
    assert!(
        cands.len() <= 1,
        "overlapping reduction rules {:?} on {c}",
        cands.iter().map(|(r, _)| r.name()).collect::<Vec<_>>()
    );
    match cands.pop() {
        Some((r, mut next)) => {
            next.cut = None;
            Ok((r, next))
        }
        None => Err(Stuck { reason: format!("no rule for a {} against a {}", c.term.head(), c.ctx.head()) }),
    }
}

pub fn step(pol: Polarity, c: &Command) -> Result<Command, Stuck> {
    step_with_rule(pol, c).map(|(_, next)| next)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub commands: Vec<Command>,
    pub rules: Vec<Rule>,
    /// Why the last command does not reduce, if it is stuck.
    pub stuck: Option<Stuck>,
}

impl Trace {
    /// True when fuel ran out before a stuck command was reached.
    pub fn out_of_fuel(&self) -> bool {
        self.stuck.is_none()
    }

    pub fn last(&self) -> &Command {
        self.commands.last().expect("traces are nonempty")
    }
}

/// Iterates [`step`] at most `fuel` times.
pub fn normalize(pol: Polarity, c: &Command, fuel: usize) -> Trace {
    let mut commands = vec![c.clone()];
    let mut rules = Vec::new();
    for _ in 0..fuel {
        match step_with_rule(pol, commands.last().expect("nonempty")) {
            Ok((r, next)) => {
                rules.push(r);
                commands.push(next);
            }
            Err(s) => return Trace { commands, rules, stuck: Some(s) },
        }
    }
    let stuck = step_with_rule(pol, commands.last().expect("nonempty")).err();
    Trace { commands, rules, stuck }
}
