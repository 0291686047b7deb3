//! The ten acceptance criteria as runnable sweeps with per-check records.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::calculi::corpus;
use crate::calculi::laws::{check_adequacy_fixtures, check_sanity, ReductionSweep};
use crate::calculi::Polarity;
use crate::catalog::{catalog, enumerate_conjunctive, enumerate_disjunctive, enumerate_implicative, Instance};
use crate::duality::{double_transport, key_lemma, reverse, same_algebra, transport_separator, tripos_iso, Direction};
use crate::encodings::{beta_violation, combinator, diamond, interpret_lambda, Applicative, Combinator, LambdaTerm};
use crate::lattice::{boolean_algebra, enumerate_lattices, Elem};
use crate::separators::{all_algebras, generate_separator, is_filter, Algebra, SeparatorRules};
use crate::structures::{
    axiom_verdicts, boolean_conjunctive, boolean_disjunctive, boolean_implicative, conjunctive_arrow_gap, is_conjunctive_arrow_gap, Kind,
    Structure, SWEEP_LIMIT,
};
use crate::text::{parse_algebra, parse_structure};
use crate::tripos::{pointwise_member, uniform_gap_witness, uniform_separator_member, verify, ClauseResult, FiniteTripos, CLAUSES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Fast,
    Full,
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(Scope::Fast),
            "full" => Ok(Scope::Full),
            _ => Err(format!("unknown scope {s:?} (expected fast or full)")),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Fast => "fast",
            Scope::Full => "full",
        })
    }
}

/// One named check: how many cases it covered and, on failure, the first
/// counterexample.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Check {
    pub fn run(name: impl Into<String>, f: impl FnOnce() -> Result<u64, String>) -> Check {
        let name = name.into();
        let t0 = Instant::now();
        let result = f();
        let elapsed = t0.elapsed();
        match result {
            Ok(cases) => Check { name, passed: true, cases, witness: None, elapsed },
            Err(w) => Check { name, passed: false, cases: 0, witness: Some(w), elapsed },
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "pass  {} ({} cases)", self.name, self.cases),
            Some(w) => write!(f, "FAIL  {}: {w}", self.name),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> String {
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        if failed.is_empty() {
            format!("criterion {:>2} PASS  {} ({} checks)", self.id, self.title, self.checks.len())
        } else {
            format!("criterion {:>2} FAIL  {} (failed: {})", self.id, self.title, failed.join(", "))
        }
    }
}

pub const TITLES: [&str; 10] = [
    "structure axioms",
    "derived identities",
    "beta soundness",
    "Boolean combinators",
    "separator theorems",
    "diamond adjunction",
    "calculi",
    "duality",
    "tripos",
    "found witnesses",
];

pub fn run_criterion(id: u8, scope: Scope, seed: u64) -> CriterionReport {
    assert!((1..=10).contains(&id), "criteria are numbered 1 to 10");
    let t0 = Instant::now();
    let checks = match id {
        1 => structure_axioms(scope),
        2 => derived_identities(scope),
        3 => beta_soundness(scope, seed),
        4 => boolean_combinators(scope),
        5 => separator_theorems(scope),
        6 => diamond_adjunction(scope),
        7 => calculi(scope),
        8 => duality(scope),
        9 => tripos(scope),
        _ => found_witnesses(),
    };
    CriterionReport { id, title: TITLES[id as usize - 1], checks, elapsed: t0.elapsed() }
}

/// All ten criteria on the worker pool, reported in criterion order.
pub fn run_all(scope: Scope, seed: u64) -> Vec<CriterionReport> {
    (1..=10u8).into_par_iter().map(|id| run_criterion(id, scope, seed)).collect()
}

// ---------------------------------------------------------------------------
// instance lists

fn catalogue(scope: Scope) -> Vec<Instance> {
    match scope {
        Scope::Fast => catalog(4, 3, 2),
        Scope::Full => catalog(5, 4, 3),
    }
}

fn up_to(instances: Vec<Instance>, max: usize) -> Vec<Instance> {
    instances.into_iter().filter(|i| i.structure.lattice().size() <= max).collect()
}

fn of_kind(instances: &[Instance], kind: Kind) -> Vec<&Instance> {
    instances.iter().filter(|i| i.structure.kind() == kind).collect()
}

/// Every structure of the kind on every lattice up to `max_n` elements.
fn enumerated(kind: Kind, max_n: usize) -> Vec<Structure> {
    let mut out: Vec<Structure> = Vec::new();
    for l in enumerate_lattices(max_n) {
        match kind {
            Kind::Implicative => out.extend(enumerate_implicative(&l).into_iter().map(Structure::from)),
            Kind::Disjunctive => out.extend(enumerate_disjunctive(&l).into_iter().map(Structure::from)),
            Kind::Conjunctive => out.extend(enumerate_conjunctive(&l).into_iter().map(Structure::from)),
        }
    }
    out
}

/// Runs `f` over `items` in parallel and reports the first failure in
/// input order.
fn sweep<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<u64, String> + Sync + Send) -> Result<u64, String> {
    let results: Vec<Result<u64, String>> = items.par_iter().map(f).collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// 1, 2

fn structure_axioms(scope: Scope) -> Vec<Check> {
    let instances = catalogue(scope);
    vec![
        Check::run("every catalogued instance passes its kind checker", || {
            sweep(&instances, |inst| {
                let s = &inst.structure;
                let (binary, neg) = tables(s);
                let verdicts = axiom_verdicts(s.kind(), s.lattice().clone(), binary, neg).map_err(|e| format!("{}: {e}", inst.name))?;
                match verdicts.iter().find(|(_, w)| w.is_some()) {
                    Some((ax, w)) => Err(format!("{}: {} at {:?}", inst.name, ax.name(), w)),
                    None => Ok(verdicts.len() as u64),
                }
            })
        }),
        Check::run(format!("full-subset sweeps agree with certification (carriers ≤ {SWEEP_LIMIT})"), || {
            let small: Vec<&Instance> = instances.iter().filter(|i| i.structure.lattice().size() <= SWEEP_LIMIT).collect();
            sweep(&small, |inst| {
                inst.structure.sweep_subsets().map_err(|v| format!("{}: {v:?}", inst.name))?;
                Ok(1)
            })
        }),
    ]
}

fn tables(s: &Structure) -> (Vec<Elem>, Vec<Elem>) {
    match s {
        Structure::Implicative(i) => (i.arrow_table().to_vec(), Vec::new()),
        Structure::Disjunctive(d) => (d.par_table().to_vec(), d.neg_table().to_vec()),
        Structure::Conjunctive(c) => (c.tensor_table().to_vec(), c.neg_table().to_vec()),
    }
}

fn derived_identities(scope: Scope) -> Vec<Check> {
    let instances = catalogue(scope);
    let dis = of_kind(&instances, Kind::Disjunctive);
    let con = of_kind(&instances, Kind::Conjunctive);
    vec![
        Check::run("⊤⅋a = ⊤, a⅋⊤ = ⊤, ¬⊤ = ⊥", || {
            sweep(&dis, |inst| {
                let Structure::Disjunctive(d) = &inst.structure else { unreachable!() };
                let l = d.lattice();
                let (top, bot) = (l.top(), l.bot());
                if d.neg(top) != bot {
                    return Err(format!("{}: ¬⊤ = {}", inst.name, d.neg(top)));
                }
                match l.elements().find(|&a| d.par(top, a) != top || d.par(a, top) != top) {
                    Some(a) => Err(format!("{}: a = {a}", inst.name)),
                    None => Ok(l.size() as u64 * 2 + 1),
                }
            })
        }),
        Check::run("⊥⊗a = ⊥, a⊗⊥ = ⊥, ¬⊥ = ⊤", || {
            sweep(&con, |inst| {
                let Structure::Conjunctive(c) = &inst.structure else { unreachable!() };
                let l = c.lattice();
                let (top, bot) = (l.top(), l.bot());
                if c.neg(bot) != top {
                    return Err(format!("{}: ¬⊥ = {}", inst.name, c.neg(bot)));
                }
                match l.elements().find(|&a| c.tensor(bot, a) != bot || c.tensor(a, bot) != bot) {
                    Some(a) => Err(format!("{}: a = {a}", inst.name)),
                    None => Ok(l.size() as u64 * 2 + 1),
                }
            })
        }),
    ]
}

// ---------------------------------------------------------------------------
// 3, 4

pub const BETA_SAMPLES: usize = 10_000;

fn beta_soundness(scope: Scope, seed: u64) -> Vec<Check> {
    let exhaustive = |kind: Kind| {
        move || {
            let structures = enumerated(kind, 3);
            sweep(&structures, |s| {
                let n = s.lattice().size();
                let mut count = 0;
                for code in 0..n.pow(n as u32) {
                    let f = crate::tripos::decode(n, n, code);
                    if let Some(a) = beta_violation(s, &f) {
                        return Err(format!("f = {f:?} at {a} on {}", crate::text::write_structure(s).replace('\n', "; ")));
                    }
                    count += n as u64;
                }
                Ok(count)
            })
        }
    };
    let sampled = move || {
        let instances = up_to(catalogue(scope), 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut count = 0;
        for k in 0..BETA_SAMPLES {
            let inst = &instances[rng.random_range(0..instances.len())];
            let s = &inst.structure;
            let n = s.lattice().size();
            let f: Vec<Elem> = (0..n).map(|_| rng.random_range(0..n)).collect();
            if let Some(a) = beta_violation(s, &f) {
                return Err(format!("sample {k}: {} f = {f:?} at {a}", inst.name));
            }
            count += 1;
        }
        Ok(count)
    };
    vec![
        Check::run("(λf)a ≤ f(a), every f, implicative carriers ≤ 3", exhaustive(Kind::Implicative)),
        Check::run("(λf)a ≤ f(a), every f, disjunctive carriers ≤ 3", exhaustive(Kind::Disjunctive)),
        Check::run("(λf)a ≤ ¬¬f(a), every f, conjunctive carriers ≤ 3", exhaustive(Kind::Conjunctive)),
        Check::run(format!("{BETA_SAMPLES} seeded samples on catalogued carriers ≤ 8 (seed {seed})"), sampled),
    ]
}

fn boolean_combinators(scope: Scope) -> Vec<Check> {
    let max_atoms = if scope == Scope::Fast { 3 } else { 4 };
    let mut structures: Vec<(String, Structure)> = Vec::new();
    for k in 1..=max_atoms {
        let b = boolean_algebra(k).expect("atoms within cap");
        structures.push((format!("B{}-imp", 1 << k), boolean_implicative(&b).expect("boolean").into()));
        structures.push((format!("B{}-par", 1 << k), boolean_disjunctive(&b).expect("boolean").into()));
        structures.push((format!("B{}-tens", 1 << k), boolean_conjunctive(&b).expect("boolean").into()));
    }
    vec![Check::run(format!("K, S, cc, PS1–5, TS1–5 are ⊤ on Boolean algebras with 1–{max_atoms} atoms"), || {
        sweep(&structures, |(name, s)| {
            let mut names = vec![Combinator::K, Combinator::S, Combinator::Cc];
            match s.kind() {
                Kind::Disjunctive => names.extend(Combinator::ps()),
                Kind::Conjunctive => names.extend(Combinator::ts()),
                Kind::Implicative => {}
            }
            for c in &names {
                let v = combinator(s, *c).map_err(|e| format!("{name}: {c}: {e}"))?;
                if v != s.lattice().top() {
                    return Err(format!("{name}: {c} = {v}"));
                }
            }
            Ok(names.len() as u64)
        })
    })]
}

// ---------------------------------------------------------------------------
// 5, 6

/// Distinct separators generated from every set of generators (every
/// singleton and the empty set in the fast scope).
fn generated_separators(s: &Structure, scope: Scope) -> Result<Vec<Algebra>, String> {
    let n = s.lattice().size();
    let generator_sets: Vec<Vec<Elem>> = match scope {
        Scope::Fast => std::iter::once(Vec::new()).chain((0..n).map(|a| vec![a])).collect(),
        Scope::Full => (0u32..1 << n).map(|m| (0..n).filter(|&a| m >> a & 1 == 1).collect()).collect(),
    };
    let mut out: Vec<Algebra> = Vec::new();
    for g in generator_sets {
        let sep = generate_separator(s, &g, false).map_err(|e| format!("generators {g:?}: {e}"))?;
        if !out.iter().any(|a| a.separator.mask() == sep.mask()) {
            out.push(Algebra { structure: s.clone(), separator: sep });
        }
    }
    Ok(out)
}

fn separator_theorems(scope: Scope) -> Vec<Check> {
    let instances = up_to(catalogue(scope), 8);
    let dis: Vec<&Instance> = of_kind(&instances, Kind::Disjunctive);
    let con: Vec<&Instance> = of_kind(&instances, Kind::Conjunctive);
    let max_atoms = if scope == Scope::Fast { 3 } else { 4 };
    vec![
        Check::run("K, S, cc ∈ S on generated disjunctive separators (carriers ≤ 8)", || {
            sweep(&dis, |inst| {
                let mut count = 0;
                for alg in generated_separators(&inst.structure, scope).map_err(|e| format!("{}: {e}", inst.name))? {
                    for c in [Combinator::K, Combinator::S, Combinator::Cc] {
                        let v = combinator(&inst.structure, c).map_err(|e| e.to_string())?;
                        if !alg.contains(v) {
                            return Err(format!("{}: {c} = {v} ∉ {:?}", inst.name, alg.separator.members()));
                        }
                        count += 1;
                    }
                }
                Ok(count)
            })
        }),
        Check::run("TS1–5, application closure, K and S on generated conjunctive separators (carriers ≤ 8)", || {
            sweep(&con, |inst| {
                let s = &inst.structure;
                let l = s.lattice();
                let mut count = 0;
                for alg in generated_separators(s, scope).map_err(|e| format!("{}: {e}", inst.name))? {
                    let sep = alg.separator.members();
                    for c in Combinator::ts() {
                        let v = combinator(s, c).map_err(|e| e.to_string())?;
                        if !alg.contains(v) {
                            return Err(format!("{}: {c} = {v} ∉ {sep:?}", inst.name));
                        }
                    }
                    for t in [LambdaTerm::k(), LambdaTerm::s()] {
                        let v = interpret_lambda(s, &t).map_err(|e| e.to_string())?;
                        if !alg.contains(v) {
                            return Err(format!("{}: {t} = {v} ∉ {sep:?}", inst.name));
                        }
                    }
                    for &a in &sep {
                        for &b in &sep {
                            if !alg.contains(s.app(a, b)) {
                                return Err(format!("{}: {a}·{b} = {} ∉ {sep:?}", inst.name, s.app(a, b)));
                            }
                        }
                    }
                    count += 7 + (sep.len() * sep.len()) as u64;
                    let _ = l;
                }
                Ok(count)
            })
        }),
        Check::run(format!("filters = separators on Boolean algebras with 1–{max_atoms} atoms"), || {
            let mut cases: Vec<(String, Structure, bool)> = Vec::new();
            for k in 1..=max_atoms {
                let b = boolean_algebra(k).expect("atoms within cap");
                for classical in [false, true] {
                    cases.push((format!("B{}-imp", 1 << k), boolean_implicative(&b).expect("boolean").into(), classical));
                    cases.push((format!("B{}-par", 1 << k), boolean_disjunctive(&b).expect("boolean").into(), classical));
                    cases.push((format!("B{}-tens", 1 << k), boolean_conjunctive(&b).expect("boolean").into(), classical));
                }
            }
            sweep(&cases, |(name, s, classical)| {
                let n = s.lattice().size();
                let rules = SeparatorRules::new(s, *classical);
                for m in 0u32..1 << n {
                    let members: Vec<bool> = (0..n).map(|a| m >> a & 1 == 1).collect();
                    let filter = is_filter(s, &members);
                    let separator = rules.check(&members).is_ok();
                    if filter != separator {
                        let set: Vec<Elem> = (0..n).filter(|&a| members[a]).collect();
                        return Err(format!("{name} classical={classical}: {set:?} filter={filter} separator={separator}"));
                    }
                }
                Ok(1 << n)
            })
        }),
    ]
}

fn diamond_adjunction(scope: Scope) -> Vec<Check> {
    let mut structures: Vec<Structure> =
        of_kind(&up_to(catalogue(scope), 8), Kind::Conjunctive).into_iter().map(|i| i.structure.clone()).collect();
    structures.extend(enumerated(Kind::Conjunctive, if scope == Scope::Fast { 3 } else { 4 }));
    vec![Check::run("c ≤ a◇b ⟺ a ≤ ¬(b⊗c) on conjunctive instances ≤ 8", || {
        sweep(&structures, |s| {
            let Structure::Conjunctive(c) = s else { unreachable!() };
            let l = c.lattice();
            let n = l.size();
            for a in 0..n {
                for b in 0..n {
                    let d = diamond(c, a, b);
                    for x in 0..n {
                        if l.le(x, d) != l.le(a, c.neg(c.tensor(b, x))) {
                            return Err(format!("a={a} b={b} c={x} on {}", crate::text::write_structure(s).replace('\n', "; ")));
                        }
                    }
                }
            }
            Ok((n * n * n) as u64)
        })
    })]
}

// ---------------------------------------------------------------------------
// 7

pub const REDUCTION_FUEL: usize = 12;

fn calculi(scope: Scope) -> Vec<Check> {
    let sr_max = if scope == Scope::Fast { 3 } else { 4 };
    let mut out = Vec::new();
    for pol in [Polarity::Par, Polarity::Tens] {
        let kind = match pol {
            Polarity::Par => Kind::Disjunctive,
            Polarity::Tens => Kind::Conjunctive,
        };
        out.push(Check::run(format!("{pol}: every reduction rule reproduces on ≥ 20 fixtures"), || {
            let count = corpus::commands(pol).len();
            if count < 20 {
                return Err(format!("only {count} fixtures"));
            }
            let bad = corpus::check_fixtures(pol);
            if let Some(b) = bad.first() {
                return Err(b.clone());
            }
            let covered = corpus::rules_covered(pol, REDUCTION_FUEL);
            if let Some(r) = crate::calculi::Rule::ALL.iter().find(|r| !covered.contains(r)) {
                return Err(format!("rule {} never fires", r.name()));
            }
            Ok(count as u64)
        }));
        out.push(Check::run(format!("{pol}: subject reduction over every structure ≤ {sr_max}"), || {
            let pairs = corpus::reduction_pairs(pol, REDUCTION_FUEL);
            let sw = ReductionSweep::new(pol, &pairs, corpus::FIXTURE_PARAMS).map_err(|e| e.to_string())?;
            let structures = enumerated(kind, sr_max);
            sweep(&structures, |s| match sw.check(s) {
                Ok(Ok(k)) => Ok(k as u64),
                Ok(Err(f)) => Err(f.to_string()),
                Err(e) => Err(e.to_string()),
            })
        }));
        out.push(Check::run(format!("{pol}: adequacy of typed fixtures, every σ, carriers ≤ 3"), || {
            let fixtures = corpus::typed_fixtures(pol);
            let structures = enumerated(kind, 3);
            sweep(&structures, |s| match check_adequacy_fixtures(s, pol, &fixtures) {
                Ok(Ok(k)) => Ok(k as u64),
                Ok(Err(f)) => Err(f.to_string()),
                Err(e) => Err(e.to_string()),
            })
        }));
    }
    out.push(Check::run("call-by-name and call-by-value derived β-laws", || corpus::check_derived_laws().map(|k| k as u64)));
    out.push(Check::run("ι(t) with the induced arrow = call-by-name embedding, 10-term λ corpus", || {
        let corpus = corpus::lambda_corpus();
        let mut structures = enumerated(Kind::Disjunctive, 3);
        structures.extend(of_kind(&up_to(catalogue(scope), 5), Kind::Disjunctive).into_iter().map(|i| i.structure.clone()));
        sweep(&structures, |s| {
            let Structure::Disjunctive(d) = s else { unreachable!() };
            match check_sanity(d, &corpus) {
                Ok(Ok(k)) => Ok(k as u64),
                Ok(Err(f)) => Err(f.to_string()),
                Err(e) => Err(e.to_string()),
            }
        })
    }));
    out
}

// ---------------------------------------------------------------------------
// 8

fn duality(scope: Scope) -> Vec<Check> {
    let max_n = if scope == Scope::Fast { 3 } else { 4 };
    let mut structures = enumerated(Kind::Disjunctive, max_n);
    structures.extend(enumerated(Kind::Conjunctive, max_n));
    structures.extend(
        catalogue(scope).into_iter().filter(|i| i.structure.kind() != Kind::Implicative && i.structure.lattice().size() <= 8).map(|i| i.structure),
    );
    let algebras = |kind: Kind| -> Vec<Algebra> {
        let mut out = Vec::new();
        for s in enumerated(kind, max_n) {
            out.extend(all_algebras(&s, false));
        }
        out
    };
    vec![
        Check::run("reverse∘reverse = id", || {
            sweep(&structures, |s| {
                let back = reverse(&reverse(s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                if back != *s {
                    return Err(crate::text::write_structure(s).replace('\n', "; "));
                }
                Ok(1)
            })
        }),
        Check::run(format!("transported separators validate and the key lemma holds, disjunctive algebras ≤ {max_n}"), || {
            sweep(&algebras(Kind::Disjunctive), |a| {
                let w = transport_separator(a, Direction::Pa2Ta).map_err(|e| e.to_string())?;
                let k = key_lemma(&w).map_err(|(x, y)| format!("a={x} b={y} on {}", crate::text::write_algebra(a).replace('\n', "; ")))?;
                Ok(k as u64)
            })
        }),
        Check::run(format!("transported separators validate and the key lemma holds, conjunctive algebras ≤ {max_n}"), || {
            sweep(&algebras(Kind::Conjunctive), |a| {
                let w = transport_separator(a, Direction::Ta2Pa).map_err(|e| e.to_string())?;
                let k = key_lemma(&w).map_err(|(x, y)| format!("a={x} b={y} on {}", crate::text::write_algebra(a).replace('\n', "; ")))?;
                Ok(k as u64)
            })
        }),
        Check::run(format!("double transport = classical completion, conjunctive algebras ≤ {max_n}"), || {
            sweep(&algebras(Kind::Conjunctive), |a| {
                let (back, completion) = double_transport(a).map_err(|e| e.to_string())?;
                if !same_algebra(&back, &completion) {
                    return Err(format!(
                        "{:?} vs {:?} on {}",
                        back.separator.members(),
                        completion.separator.members(),
                        crate::text::write_algebra(a).replace('\n', "; ")
                    ));
                }
                Ok(1)
            })
        }),
    ]
}

// ---------------------------------------------------------------------------
// 9

/// Classical algebras over the catalogued instances with carrier ≤ 4.
pub fn classical_algebras(scope: Scope) -> Vec<(String, Algebra)> {
    let mut out = Vec::new();
    for inst in up_to(catalogue(scope), 4) {
        for a in all_algebras(&inst.structure, true) {
            if a.separator.is_classical() {
                out.push((format!("{} {:?}", inst.name, a.separator.members()), a));
            }
        }
    }
    out
}

fn tripos(scope: Scope) -> Vec<Check> {
    let imax = if scope == Scope::Fast { 2 } else { 3 };
    let algebras = classical_algebras(scope);
    let results: Vec<Vec<ClauseResult>> = algebras
        .par_iter()
        .map(|(_, a)| verify(&FiniteTripos::new(a).expect("classical by construction"), imax))
        .collect();
    let mut out: Vec<Check> = CLAUSES
        .iter()
        .enumerate()
        .map(|(c, clause)| {
            Check::run(format!("{clause}, index sets ≤ {imax}"), || {
                let mut total = 0;
                for ((name, _), r) in algebras.iter().zip(&results) {
                    total += *r[c].as_ref().map_err(|e| format!("{name}: {e}"))? as u64;
                }
                Ok(total)
            })
        })
        .collect();
    out.push(Check::run(format!("φ_I natural order-isomorphism, |I|,|J| ≤ {imax}"), || {
        let dis: Vec<&(String, Algebra)> = algebras.iter().filter(|(_, a)| a.kind() == Kind::Disjunctive).collect();
        sweep(&dis, |(name, a)| {
            let w = transport_separator(a, Direction::Pa2Ta).map_err(|e| format!("{name}: {e}"))?;
            let mut k = 0;
            for i in 0..=imax {
                k += tripos_iso(a, &w.target, i, imax).map_err(|e| format!("{name}: {e}"))?.checks as u64;
            }
            Ok(k)
        })
    }));
    out
}

// ---------------------------------------------------------------------------
// 10

pub const ARROW_GAP_WITNESS: &str = include_str!("../witnesses/conjunctive-arrow-gap.txt");
pub const UNIFORM_GAP_WITNESS: &str = include_str!("../witnesses/uniform-gap.txt");

/// Numbers after `# witness` on the stored file, split at the first
/// `key=` markers: `a=1 B={1,2}` gives `[[1], [1, 2]]`.
pub fn witness_numbers(text: &str) -> Vec<Vec<Elem>> {
    let line = text.lines().find_map(|l| l.strip_prefix("# witness")).unwrap_or("");
    let mut groups: Vec<Vec<Elem>> = Vec::new();
    for word in line.split_whitespace() {
        let starts_group = word.contains('=') || groups.is_empty();
        let digits: Vec<Elem> = word.split(|c: char| !c.is_ascii_digit()).filter(|d| !d.is_empty()).filter_map(|d| d.parse().ok()).collect();
        if starts_group {
            groups.push(digits);
        } else if let Some(g) = groups.last_mut() {
            g.extend(digits);
        }
    }
    groups
}

fn found_witnesses() -> Vec<Check> {
    vec![
        Check::run("search finds ⋀_b(a→b) ≰ a→⋀B for the conjunctive arrow in the catalogue", || {
            let hit = catalog(5, 3, 3).into_iter().find_map(|i| match &i.structure {
                Structure::Conjunctive(c) => conjunctive_arrow_gap(c).map(|w| (i.name.clone(), w)),
                _ => None,
            });
            hit.map(|_| 1).ok_or_else(|| "no instance found".to_string())
        }),
        Check::run("stored conjunctive-arrow witness re-verifies", || {
            let s = parse_structure(ARROW_GAP_WITNESS).map_err(|e| e.to_string())?;
            let Structure::Conjunctive(c) = &s else { return Err("stored structure is not conjunctive".into()) };
            let w = witness_numbers(ARROW_GAP_WITNESS);
            let (a, set) = match w.as_slice() {
                [a, set] if a.len() == 1 => (a[0], set.clone()),
                _ => return Err(format!("malformed witness line {w:?}")),
            };
            if is_conjunctive_arrow_gap(c, a, &set) {
                Ok(1)
            } else {
                Err(format!("a={a} B={set:?} is not a gap"))
            }
        }),
        Check::run("search finds S[I] ≠ S^I in the catalogue", || {
            for inst in catalog(4, 2, 2) {
                for a in all_algebras(&inst.structure, false) {
                    if uniform_gap_witness(&a, 2).is_some() {
                        return Ok(1);
                    }
                }
            }
            Err("no instance found".into())
        }),
        Check::run("stored S[I] ≠ S^I witness re-verifies", || {
            let a = parse_algebra(UNIFORM_GAP_WITNESS).map_err(|e| e.to_string())?;
            let fam = witness_numbers(UNIFORM_GAP_WITNESS).concat();
            if pointwise_member(&a, &fam) && !uniform_separator_member(&a, &fam) {
                Ok(1)
            } else {
                Err(format!("family {fam:?} is not a gap"))
            }
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_lines() {
        assert_eq!(witness_numbers("# witness a=1 B={1,2}\n"), vec![vec![1], vec![1, 2]]);
        assert_eq!(witness_numbers("# witness family 2 1\n").concat(), vec![2, 1]);
    }

    #[test]
    fn scope_parses() {
        assert_eq!("fast".parse::<Scope>().unwrap(), Scope::Fast);
        assert!("slow".parse::<Scope>().is_err());
    }
}
