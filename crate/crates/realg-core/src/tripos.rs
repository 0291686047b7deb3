//! Quotient Heyting algebras and the finite tripos `I ↦ A^I/S[I]`.
//!
//! Predicates over a finite index set `I` are families in `A^I`, stored as
//! vectors. Entailment between families is `⋀_i (a_i → b_i) ∈ S`, which is
//! membership of `(a_i → b_i)_i` in the uniform separator `S[I]`.

use std::fmt;

use thiserror::Error;

use crate::encodings::heyting_ops;
use crate::lattice::{Elem, FiniteLattice};
use crate::separators::Algebra;
use crate::structures::Kind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriposError {
    #[error("law {law} fails at {witness}")]
    LawViolation { law: &'static str, witness: String },
    #[error("conjunctive triposes need a classical separator")]
    NotClassical,
}

fn violation(law: &'static str, witness: impl fmt::Debug) -> TriposError {
    TriposError::LawViolation { law, witness: format!("{witness:?}") }
}

/// Tables for the entailment of one algebra.
#[derive(Debug, Clone)]
pub struct Entailment {
    lattice: FiniteLattice,
    kind: Kind,
    arrow: Vec<Elem>,
    neg: Vec<Elem>,
    member: Vec<bool>,
    product: Vec<Elem>,
    sum: Vec<Elem>,
}

impl Entailment {
    pub fn new(alg: &Algebra) -> Self {
        let s = &alg.structure;
        let l = s.lattice().clone();
        let n = l.size();
        let mut arrow = vec![0; n * n];
        let mut product = vec![0; n * n];
        let mut sum = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let ops = heyting_ops(s, a, b);
                arrow[a * n + b] = ops.arrow;
                product[a * n + b] = ops.product;
                sum[a * n + b] = ops.sum;
            }
        }
        let neg = (0..n).map(|a| s.neg(a)).collect();
        let member = alg.separator.mask().to_vec();
        Entailment { lattice: l, kind: s.kind(), arrow, neg, member, product, sum }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn arrow(&self, a: Elem, b: Elem) -> Elem {
        self.arrow[a * self.size() + b]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    pub fn product(&self, a: Elem, b: Elem) -> Elem {
        self.product[a * self.size() + b]
    }

    pub fn sum(&self, a: Elem, b: Elem) -> Elem {
        self.sum[a * self.size() + b]
    }

    pub fn member(&self, a: Elem) -> bool {
        self.member[a]
    }

    pub fn entails(&self, a: Elem, b: Elem) -> bool {
        self.member(self.arrow(a, b))
    }

    pub fn equiv(&self, a: Elem, b: Elem) -> bool {
        self.entails(a, b) && self.entails(b, a)
    }

    /// `⋀_i (a_i → b_i)`.
    pub fn family_meet_arrows(&self, a: &[Elem], b: &[Elem]) -> Elem {
        let mut m = self.lattice.top();
        for (&x, &y) in a.iter().zip(b) {
            m = self.lattice.meet(m, self.arrow(x, y));
        }
        m
    }

    /// `a ⊢_{S[I]} b` for families over the same index set.
    pub fn family_entails(&self, a: &[Elem], b: &[Elem]) -> bool {
        self.member(self.family_meet_arrows(a, b))
    }

    pub fn family_equiv(&self, a: &[Elem], b: &[Elem]) -> bool {
        self.family_entails(a, b) && self.family_entails(b, a)
    }
}

// ---------------------------------------------------------------------------
// quotient

/// `A/≃_S` with its Heyting operations, on class indices.
#[derive(Debug, Clone)]
pub struct QuotientHA {
    pub classes: Vec<Vec<Elem>>,
    pub class_of: Vec<usize>,
    le: Vec<bool>,
    pub meet: Vec<usize>,
    pub join: Vec<usize>,
    pub imp: Vec<usize>,
    pub top: usize,
    pub bot: usize,
}

impl QuotientHA {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[x * self.len() + y]
    }

    pub fn class(&self, a: Elem) -> usize {
        self.class_of[a]
    }
}

/// Builds the quotient and verifies the Heyting laws on it.
pub fn quotient(alg: &Algebra) -> Result<QuotientHA, TriposError> {
    if alg.kind() == Kind::Conjunctive && !alg.separator.is_classical() {
        return Err(TriposError::NotClassical);
    }
    quotient_of(&Entailment::new(alg))
}

pub fn quotient_of(e: &Entailment) -> Result<QuotientHA, TriposError> {
    let l = e.lattice();
    let n = l.size();
    for a in 0..n {
        if !e.entails(a, a) {
            return Err(violation("reflexivity", a));
        }
        for b in 0..n {
            for c in 0..n {
                if e.entails(a, b) && e.entails(b, c) && !e.entails(a, c) {
                    return Err(violation("transitivity", (a, b, c)));
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let k = classes.len();
        let members: Vec<Elem> = (a..n).filter(|&b| e.equiv(a, b)).collect();
        for &b in &members {
            class_of[b] = k;
        }
        classes.push(members);
    }
    let m = classes.len();
    let rep = |x: usize| classes[x][0];
    let le: Vec<bool> = (0..m * m).map(|k| e.entails(rep(k / m), rep(k % m))).collect();
    let op = |name: &'static str, f: &dyn Fn(Elem, Elem) -> Elem| -> Result<Vec<usize>, TriposError> {
        let mut table = vec![0; m * m];
        for x in 0..m {
            for y in 0..m {
                let c = class_of[f(rep(x), rep(y))];
                for &a in &classes[x] {
                    for &b in &classes[y] {
                        if class_of[f(a, b)] != c {
                            return Err(violation(name, (a, b)));
                        }
                    }
                }
                table[x * m + y] = c;
            }
        }
        Ok(table)
    };
    let meet = op("∧ well-defined", &|a, b| e.product(a, b))?;
    let join = op("∨ well-defined", &|a, b| e.sum(a, b))?;
    let imp = op("→ well-defined", &|a, b| e.arrow(a, b))?;
    let q = QuotientHA { top: class_of[l.top()], bot: class_of[l.bot()], classes, class_of, le, meet, join, imp };
    for x in 0..m {
        if !q.le(q.bot, x) || !q.le(x, q.top) {
            return Err(violation("bounds", x));
        }
        for y in 0..m {
            let (mxy, jxy) = (q.meet[x * m + y], q.join[x * m + y]);
            if !q.le(mxy, x) || !q.le(mxy, y) || !q.le(x, jxy) || !q.le(y, jxy) {
                return Err(violation("∧/∨ bounds", (x, y)));
            }
            for z in 0..m {
                if q.le(z, x) && q.le(z, y) && !q.le(z, mxy) {
                    return Err(violation("∧ greatest", (x, y, z)));
                }
                if q.le(x, z) && q.le(y, z) && !q.le(jxy, z) {
                    return Err(violation("∨ least", (x, y, z)));
                }
                if q.le(q.meet[x * m + z], y) != q.le(z, q.imp[x * m + y]) {
                    return Err(violation("Heyting adjunction", (x, y, z)));
                }
            }
        }
    }
    Ok(q)
}

// ---------------------------------------------------------------------------
// families

/// All families `A^I` in code order: entry `i` of code `c` is digit `i` of
/// `c` in base `n`.
pub fn families(n: usize, size: usize) -> impl Iterator<Item = Vec<Elem>> {
    (0..n.pow(size as u32)).map(move |c| decode(n, size, c))
}

pub fn decode(n: usize, size: usize, mut code: usize) -> Vec<Elem> {
    (0..size)
        .map(|_| {
            let v = code % n;
            code /= n;
            v
        })
        .collect()
}

pub fn encode(n: usize, fam: &[Elem]) -> usize {
    fam.iter().rev().fold(0, |acc, &x| acc * n + x)
}

/// `S[I] = {a : ∃s∈S ∀i. s ≤ a_i}`, decided by scanning the separator.
pub fn uniform_separator_member(alg: &Algebra, fam: &[Elem]) -> bool {
    let l = alg.structure.lattice();
    l.elements().any(|s| alg.contains(s) && fam.iter().all(|&a| l.le(s, a)))
}

/// `S^I`: every component in `S`.
pub fn pointwise_member(alg: &Algebra, fam: &[Elem]) -> bool {
    fam.iter().all(|&a| alg.contains(a))
}

/// `T(f)` for `f : J → I` given as its table.
pub fn reindex(f: &[usize], fam: &[Elem]) -> Vec<Elem> {
    f.iter().map(|&i| fam[i]).collect()
}

/// `I×J` is indexed by `i·|J| + j`.
fn pair_index(j_size: usize, i: usize, j: usize) -> usize {
    i * j_size + j
}

fn projection(i_size: usize, j_size: usize) -> Vec<usize> {
    (0..i_size * j_size).map(|k| k / j_size).collect()
}

/// The finite tripos of an algebra.
#[derive(Debug, Clone)]
pub struct FiniteTripos {
    pub ent: Entailment,
}

/// Predicate classes over one index set.
#[derive(Debug, Clone)]
pub struct PredicateClasses {
    pub index_size: usize,
    /// Per family code, the least code in its class.
    pub representative: Vec<usize>,
    pub count: usize,
}

impl FiniteTripos {
    pub fn new(alg: &Algebra) -> Result<Self, TriposError> {
        if alg.kind() == Kind::Conjunctive && !alg.separator.is_classical() {
            return Err(TriposError::NotClassical);
        }
        Ok(FiniteTripos { ent: Entailment::new(alg) })
    }

    pub fn size(&self) -> usize {
        self.ent.size()
    }

    pub fn entails(&self, a: &[Elem], b: &[Elem]) -> bool {
        self.ent.family_entails(a, b)
    }

    pub fn equiv(&self, a: &[Elem], b: &[Elem]) -> bool {
        self.ent.family_equiv(a, b)
    }

    /// Partition of `A^I` into classes. Each class is represented by its
    /// least family code.
    pub fn classes(&self, index_size: usize) -> PredicateClasses {
        let n = self.size();
        let total = n.pow(index_size as u32);
        let fams: Vec<Vec<Elem>> = families(n, index_size).collect();
        let mut representative = vec![usize::MAX; total];
        let mut count = 0;
        for c in 0..total {
            if representative[c] != usize::MAX {
                continue;
            }
            count += 1;
            for d in c..total {
                if representative[d] == usize::MAX && self.equiv(&fams[c], &fams[d]) {
                    representative[d] = c;
                }
            }
        }
        PredicateClasses { index_size, representative, count }
    }

    /// `∃_J` along the projection `I×J → I`: pointwise join over `j` for
    /// conjunctive algebras, otherwise `⋀_c((⋀_j(a_ij→c))→c)`.
    pub fn exists_along(&self, i_size: usize, j_size: usize, fam: &[Elem]) -> Vec<Elem> {
        let l = self.ent.lattice();
        (0..i_size)
            .map(|i| {
                let col = (0..j_size).map(|j| fam[pair_index(j_size, i, j)]);
                match self.ent.kind {
                    Kind::Conjunctive => l.join_all(col),
                    _ => l.meet_all(l.elements().map(|c| {
                        let hyp = l.meet_all(col.clone().map(|a| self.ent.arrow(a, c)));
                        self.ent.arrow(hyp, c)
                    })),
                }
            })
            .collect()
    }

    /// `∀_J`: pointwise meet over `j`, or `¬⋁_j ¬a_ij` for conjunctive
    /// algebras.
    pub fn forall_along(&self, i_size: usize, j_size: usize, fam: &[Elem]) -> Vec<Elem> {
        let l = self.ent.lattice();
        (0..i_size)
            .map(|i| {
                let col = (0..j_size).map(|j| fam[pair_index(j_size, i, j)]);
                match self.ent.kind {
                    Kind::Conjunctive => self.ent.neg(l.join_all(col.map(|a| self.ent.neg(a)))),
                    _ => l.meet_all(col),
                }
            })
            .collect()
    }

    /// `=_I` over `I×I`: `⋀_a(a→a)` on the diagonal, `⊤→⊥` off it.
    pub fn equality(&self, i_size: usize) -> Vec<Elem> {
        let l = self.ent.lattice();
        let diag = l.meet_all(l.elements().map(|a| self.ent.arrow(a, a)));
        let off = self.ent.arrow(l.top(), l.bot());
        (0..i_size * i_size).map(|k| if k / i_size == k % i_size { diag } else { off }).collect()
    }

    /// Pointwise Heyting product of families.
    pub fn and(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.ent.product(x, y)).collect()
    }

    pub fn top(&self, size: usize) -> Vec<Elem> {
        vec![self.ent.lattice().top(); size]
    }
}

/// One failed hyperdoctrine clause with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseFailure {
    pub clause: &'static str,
    pub witness: String,
}

impl fmt::Display for ClauseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.witness)
    }
}

fn clause_fail(clause: &'static str, witness: impl fmt::Debug) -> ClauseFailure {
    ClauseFailure { clause, witness: format!("{witness:?}") }
}

/// All maps `J → I` as tables.
pub fn maps(j_size: usize, i_size: usize) -> Vec<Vec<usize>> {
    if i_size == 0 {
        return if j_size == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (0..i_size.pow(j_size as u32)).map(|c| decode(i_size, j_size, c)).collect()
}

pub type ClauseResult = Result<usize, ClauseFailure>;

/// Well-definedness and monotonicity of `T(f)` for every `f : J → I`, and
/// `T(id) = id`, `T(g∘f) = T(f)∘T(g)` for every `f : K → J`, `g : J → I`.
pub fn check_functoriality(t: &FiniteTripos, i: usize, j: usize, k: usize) -> ClauseResult {
    let n = t.size();
    let fi: Vec<Vec<Elem>> = families(n, i).collect();
    let mut count = 0;
    let id: Vec<usize> = (0..i).collect();
    for a in &fi {
        count += 1;
        if reindex(&id, a) != *a {
            return Err(clause_fail("T(id) = id", a));
        }
    }
    for g in maps(j, i) {
        for a in &fi {
            for b in &fi {
                if t.entails(a, b) {
                    count += 1;
                    if !t.entails(&reindex(&g, a), &reindex(&g, b)) {
                        return Err(clause_fail("T(f) monotone", (&g, a, b)));
                    }
                }
            }
        }
        for f in maps(k, j) {
            let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
            for a in &fi {
                count += 1;
                if reindex(&gf, a) != reindex(&f, &reindex(&g, a)) {
                    return Err(clause_fail("T(g∘f) = T(f)∘T(g)", (&f, &g, a)));
                }
            }
        }
    }
    Ok(count)
}

/// Pointwise Heyting operations on `A^I` satisfy the adjunction
/// `x∧z ⊢ y ⟺ z ⊢ x→y`, and `T(f)` commutes with them.
pub fn check_heyting_families(t: &FiniteTripos, i: usize) -> ClauseResult {
    let n = t.size();
    let fi: Vec<Vec<Elem>> = families(n, i).collect();
    let imp = |a: &[Elem], b: &[Elem]| -> Vec<Elem> { a.iter().zip(b).map(|(&x, &y)| t.ent.arrow(x, y)).collect() };
    let mut count = 0;
    for x in &fi {
        for y in &fi {
            let xy = imp(x, y);
            for z in &fi {
                count += 1;
                if t.entails(&t.and(x, z), y) != t.entails(z, &xy) {
                    return Err(clause_fail("Heyting adjunction on T(I)", (x, y, z)));
                }
            }
        }
    }
    Ok(count)
}

/// [`check_quantifiers`] by enumerating every `φ` and `ψ`.
pub fn check_quantifiers_by_enumeration(t: &FiniteTripos, i: usize, j: usize) -> ClauseResult {
    let n = t.size();
    let pi = projection(i, j);
    let psis: Vec<Vec<Elem>> = families(n, i).collect();
    let pulled: Vec<Vec<Elem>> = psis.iter().map(|p| reindex(&pi, p)).collect();
    let mut count = 0;
    for phi in families(n, i * j) {
        let ex = t.exists_along(i, j, &phi);
        let all = t.forall_along(i, j, &phi);
        for (psi, pulled) in psis.iter().zip(&pulled) {
            count += 2;
            if t.entails(&ex, psi) != t.entails(&phi, pulled) {
                return Err(clause_fail("∃ ⊣ T(π)", (&phi, psi)));
            }
            if t.entails(psi, &all) != t.entails(pulled, &phi) {
                return Err(clause_fail("T(π) ⊣ ∀", (&phi, psi)));
            }
        }
    }
    Ok(count)
}

/// [`check_equality`] by enumerating every `φ` and `ψ`.
pub fn check_equality_by_enumeration(t: &FiniteTripos, i: usize) -> ClauseResult {
    let n = t.size();
    let eq = t.equality(i);
    let delta: Vec<usize> = (0..i).map(|x| x * i + x).collect();
    let p1 = projection(i, i);
    let top = t.top(i);
    let psis: Vec<Vec<Elem>> = families(n, i).collect();
    let mut count = 0;
    for phi in families(n, i * i) {
        let diag = reindex(&delta, &phi);
        count += 1;
        if t.entails(&top, &diag) != t.entails(&eq, &phi) {
            return Err(clause_fail("equality adjunction", &phi));
        }
        for psi in &psis {
            count += 1;
            let ctx = t.and(&reindex(&p1, psi), &eq);
            if t.entails(psi, &diag) != t.entails(&ctx, &phi) {
                return Err(clause_fail("equality adjunction in context", (&phi, psi)));
            }
        }
    }
    Ok(count)
}

/// [`check_beck_chevalley`] by enumerating every `φ`.
pub fn check_beck_chevalley_by_enumeration(t: &FiniteTripos, s: &[usize], i_target: usize, j: usize) -> ClauseResult {
    let n = t.size();
    let i = s.len();
    let sj: Vec<usize> = (0..i * j).map(|k| s[k / j.max(1)] * j + k % j.max(1)).collect();
    let mut count = 0;
    for phi in families(n, i_target * j) {
        count += 2;
        let left = t.exists_along(i, j, &reindex(&sj, &phi));
        let right = reindex(s, &t.exists_along(i_target, j, &phi));
        if !t.equiv(&left, &right) {
            return Err(clause_fail("Beck-Chevalley ∃", (s, &phi)));
        }
        let left = t.forall_along(i, j, &reindex(&sj, &phi));
        let right = reindex(s, &t.forall_along(i_target, j, &phi));
        if !t.equiv(&left, &right) {
            return Err(clause_fail("Beck-Chevalley ∀", (s, &phi)));
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// row-factored sweeps
//
// Each clause below compares `⋀_g u_g ∈ S` with `⋀_g v_g ∈ S` where the
// pair `(u_g, v_g)` depends only on what the family does at one index `g`.
// Sweeping the reachable pairs of meets, one group at a time, covers every
// family while visiting at most `|A|²` states per group.

/// Every pair `(⋀_g u_g, ⋀_g v_g)` reachable by picking one option per
/// group, with the option indices of one way to reach it.
fn reachable_meets(l: &FiniteLattice, groups: &[Vec<(Elem, Elem)>]) -> Vec<((Elem, Elem), Vec<usize>)> {
    let n = l.size();
    let mut reach: Vec<Option<Vec<usize>>> = vec![None; n * n];
    reach[l.top() * n + l.top()] = Some(Vec::new());
    for options in groups {
        let mut first: Vec<Option<usize>> = vec![None; n * n];
        for (k, &(u, v)) in options.iter().enumerate() {
            first[u * n + v].get_or_insert(k);
        }
        let distinct: Vec<(Elem, Elem, usize)> = first.iter().enumerate().filter_map(|(c, k)| k.map(|k| (c / n, c % n, k))).collect();
        let mut next: Vec<Option<Vec<usize>>> = vec![None; n * n];
        for (state, path) in reach.iter().enumerate() {
            let Some(path) = path else { continue };
            let (u0, v0) = (state / n, state % n);
            for &(u, v, k) in &distinct {
                let slot = &mut next[l.meet(u0, u) * n + l.meet(v0, v)];
                if slot.is_none() {
                    let mut p = path.clone();
                    p.push(k);
                    *slot = Some(p);
                }
            }
        }
        reach = next;
    }
    reach.into_iter().enumerate().filter_map(|(c, p)| p.map(|p| ((c / n, c % n), p))).collect()
}

fn cases(groups: &[Vec<(Elem, Elem)>]) -> usize {
    groups.iter().fold(1usize, |acc, g| acc.saturating_mul(g.len()))
}

/// Rows of `A^J` paired with one more element, in code order.
fn rows_with_element(n: usize, j: usize) -> Vec<(Vec<Elem>, Elem)> {
    families(n, j).flat_map(|r| (0..n).map(move |p| (r.clone(), p))).collect()
}

/// `∃_J ⊣ T(π) ⊣ ∀_J` for the projection `π : I×J → I`, over every `φ`
/// over `I×J` and `ψ` over `I`.
pub fn check_quantifiers(t: &FiniteTripos, i: usize, j: usize) -> ClauseResult {
    let e = &t.ent;
    let l = e.lattice();
    let choices = rows_with_element(t.size(), j);
    let to_all = |r: &[Elem], p: Elem| l.meet_all(r.iter().map(|&x| e.arrow(x, p)));
    let from_all = |r: &[Elem], p: Elem| l.meet_all(r.iter().map(|&x| e.arrow(p, x)));
    let left: Vec<(Elem, Elem)> = choices.iter().map(|(r, p)| (e.arrow(t.exists_along(1, j, r)[0], *p), to_all(r, *p))).collect();
    let right: Vec<(Elem, Elem)> = choices.iter().map(|(r, p)| (e.arrow(*p, t.forall_along(1, j, r)[0]), from_all(r, *p))).collect();
    let witness = |path: &[usize]| {
        let phi: Vec<Elem> = path.iter().flat_map(|&k| choices[k].0.clone()).collect();
        let psi: Vec<Elem> = path.iter().map(|&k| choices[k].1).collect();
        (phi, psi)
    };
    for (clause, options) in [("∃ ⊣ T(π)", left), ("T(π) ⊣ ∀", right)] {
        let groups = vec![options; i];
        for ((u, v), path) in reachable_meets(l, &groups) {
            if e.member(u) != e.member(v) {
                return Err(clause_fail(clause, witness(&path)));
            }
        }
    }
    Ok(2 * choices.len().saturating_pow(i as u32))
}

/// `⊤ ⊢ T(δ)(φ) ⟺ =_I ⊢ φ` for every `φ` over `I×I`, and the version with
/// a context `ψ` over `I`: `ψ ⊢ T(δ)(φ) ⟺ T(π₁)(ψ) ∧ =_I ⊢ φ`.
pub fn check_equality(t: &FiniteTripos, i: usize) -> ClauseResult {
    let e = &t.ent;
    let l = e.lattice();
    let eq = t.equality(i);
    let choices = rows_with_element(t.size(), i);
    let group = |x: usize, context: bool| -> Vec<(Elem, Elem)> {
        choices
            .iter()
            .map(|(r, p)| {
                let p = if context { *p } else { l.top() };
                let v = l.meet_all((0..i).map(|y| e.arrow(e.product(p, eq[x * i + y]), r[y])));
                (e.arrow(p, r[x]), v)
            })
            .collect()
    };
    let mut count = 0;
    for (clause, context) in [("equality adjunction", false), ("equality adjunction in context", true)] {
        let groups: Vec<Vec<(Elem, Elem)>> = (0..i).map(|x| group(x, context)).collect();
        for ((u, v), path) in reachable_meets(l, &groups) {
            if e.member(u) != e.member(v) {
                let phi: Vec<Elem> = path.iter().flat_map(|&k| choices[k].0.clone()).collect();
                let psi: Vec<Elem> = path.iter().map(|&k| choices[k].1).collect();
                return Err(clause_fail(clause, (phi, psi)));
            }
        }
        count += cases(&groups);
    }
    Ok(count)
}

/// Beck-Chevalley: for `s : I → I'`, reindexing along `s × id_J` commutes
/// with `∃_J` and `∀_J` up to `≃`, for every `φ` over `I'×J`.
pub fn check_beck_chevalley(t: &FiniteTripos, s: &[usize], i_target: usize, j: usize) -> ClauseResult {
    let e = &t.ent;
    let l = e.lattice();
    let rows: Vec<Vec<Elem>> = families(t.size(), j).collect();
    let mut count = 0;
    type Quantifier = fn(&FiniteTripos, usize, usize, &[Elem]) -> Vec<Elem>;
    let quantifiers: [(&'static str, Quantifier); 2] =
        [("Beck-Chevalley ∃", FiniteTripos::exists_along), ("Beck-Chevalley ∀", FiniteTripos::forall_along)];
    for (clause, q) in quantifiers {
        // Row `x` of `T(s×id)(φ)` is row `s(x)` of `φ`, so index `x` of both
        // sides depends on row `s(x)` only: group by `s(x)`.
        let groups: Vec<Vec<(Elem, Elem)>> = (0..i_target)
            .map(|g| {
                let pre = s.iter().filter(|&&y| y == g).count();
                let spread: Vec<usize> = (0..pre * j).map(|k| k % j).collect();
                rows.iter()
                    .map(|r| {
                        let left = q(t, pre, j, &reindex(&spread, r));
                        let right = reindex(&vec![0; pre], &q(t, 1, j, r));
                        (t.ent.family_meet_arrows(&left, &right), t.ent.family_meet_arrows(&right, &left))
                    })
                    .collect()
            })
            .collect();
        for ((u, v), path) in reachable_meets(l, &groups) {
            if !(e.member(u) && e.member(v)) {
                let phi: Vec<Elem> = path.iter().flat_map(|&k| rows[k].clone()).collect();
                return Err(clause_fail(clause, (s, phi)));
            }
        }
        count += cases(&groups);
    }
    Ok(count)
}

/// The generic predicate `tr = [id_A]` over `Prop = A`: for every family
/// `a` over `I`, `T(χ_a)(tr) ≃ a` with `χ_a = i ↦ a_i`.
pub fn generic_predicate_check(t: &FiniteTripos, i: usize) -> ClauseResult {
    let n = t.size();
    let tr: Vec<Elem> = (0..n).collect();
    let mut count = 0;
    for a in families(n, i) {
        count += 1;
        if !t.equiv(&reindex(&a, &tr), &a) {
            return Err(clause_fail("generic predicate", &a));
        }
    }
    Ok(count)
}

/// `T(1)` is order-isomorphic to the quotient algebra.
pub fn check_singleton_index(t: &FiniteTripos) -> ClauseResult {
    let q = quotient_of(&t.ent).map_err(|e| clause_fail("quotient", e.to_string()))?;
    let n = t.size();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            count += 1;
            if t.entails(&[a], &[b]) != q.le(q.class(a), q.class(b)) {
                return Err(clause_fail("T(1) ≅ A/S", (a, b)));
            }
        }
    }
    Ok(count)
}

/// Clause names reported by [`verify`], in order.
pub const CLAUSES: [&str; 5] = ["functoriality", "∃ ⊣ T(π) ⊣ ∀", "equality predicate", "Beck-Chevalley", "generic predicate"];

/// Every clause over index sets of size `0..=imax`, in [`CLAUSES`] order.
/// Functoriality also covers `T(1) ≅ A/S` and the Heyting structure of
/// `T(I)` for `|I| ≤ 2`.
pub fn verify(t: &FiniteTripos, imax: usize) -> Vec<ClauseResult> {
    let sizes = 0..=imax;
    let functoriality = || -> ClauseResult {
        let mut k = check_singleton_index(t)?;
        for i in sizes.clone() {
            k += check_heyting_families(t, i.min(2))?;
            for j in sizes.clone() {
                for m in sizes.clone() {
                    k += check_functoriality(t, i, j, m)?;
                }
            }
        }
        Ok(k)
    };
    let quantifiers = || -> ClauseResult {
        let mut k = 0;
        for i in sizes.clone() {
            for j in sizes.clone() {
                k += check_quantifiers(t, i, j)?;
            }
        }
        Ok(k)
    };
    let equality = || -> ClauseResult { sizes.clone().map(|i| check_equality(t, i)).sum() };
    let beck_chevalley = || -> ClauseResult {
        let mut k = 0;
        for i in sizes.clone() {
            for i2 in sizes.clone() {
                for s in maps(i, i2) {
                    for j in sizes.clone() {
                        k += check_beck_chevalley(t, &s, i2, j)?;
                    }
                }
            }
        }
        Ok(k)
    };
    let generic = || -> ClauseResult { sizes.clone().map(|i| generic_predicate_check(t, i)).sum() };
    vec![functoriality(), quantifiers(), equality(), beck_chevalley(), generic()]
}

/// A family in `S^I` outside `S[I]`, if one exists over index sets up to
/// `max_index`.
pub fn uniform_gap_witness(alg: &Algebra, max_index: usize) -> Option<Vec<Elem>> {
    let n = alg.size();
    (0..=max_index).find_map(|i| families(n, i).find(|f| pointwise_member(alg, f) && !uniform_separator_member(alg, f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::boolean_algebra;
    use crate::separators::algebra;
    use crate::structures::{boolean_implicative, Structure};

    fn b4() -> Algebra {
        let b = boolean_algebra(2).unwrap();
        let s: Structure = boolean_implicative(&b).unwrap().into();
        algebra(s, &[3], false).unwrap()
    }

    #[test]
    fn boolean_quotient_is_itself() {
        let q = quotient(&b4()).unwrap();
        assert_eq!(q.len(), 4);
    }

    #[test]
    fn uniform_membership() {
        let a = b4();
        assert!(uniform_separator_member(&a, &[3, 3]));
        assert!(uniform_separator_member(&a, &[]));
        assert!(!uniform_separator_member(&a, &[1, 2]));
    }

    #[test]
    fn row_factored_sweeps_match_enumeration() {
        use crate::catalog::catalog;
        use crate::separators::all_algebras;
        for inst in catalog(3, 2, 2) {
            for a in all_algebras(&inst.structure, true).into_iter().filter(|a| a.separator.is_classical()) {
                let t = FiniteTripos::new(&a).unwrap();
                for i in 0..=2 {
                    assert_eq!(check_equality(&t, i).is_ok(), check_equality_by_enumeration(&t, i).is_ok());
                    for j in 0..=2 {
                        assert_eq!(check_quantifiers(&t, i, j).is_ok(), check_quantifiers_by_enumeration(&t, i, j).is_ok());
                        for s in maps(i, j) {
                            for k in 0..=2 {
                                assert_eq!(
                                    check_beck_chevalley(&t, &s, j, k).is_ok(),
                                    check_beck_chevalley_by_enumeration(&t, &s, j, k).is_ok()
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    /// A tripos whose `∃` is the pointwise join on a disjunctive algebra
    /// where that join is not left adjoint: both sweeps must reject it.
    #[test]
    fn sweeps_reject_a_broken_quantifier() {
        use crate::catalog::catalog;
        let inst = catalog(4, 2, 2).into_iter().find(|i| i.name == "machine-par/v2#0").unwrap();
        let a = algebra(inst.structure.clone(), &[0], true).unwrap();
        let mut t = FiniteTripos::new(&a).unwrap();
        t.ent.kind = Kind::Conjunctive;
        assert!(check_quantifiers(&t, 1, 2).is_err());
        assert!(check_quantifiers_by_enumeration(&t, 1, 2).is_err());
    }

    #[test]
    fn clauses_on_b4() {
        let t = FiniteTripos::new(&b4()).unwrap();
        check_functoriality(&t, 2, 2, 2).unwrap();
        check_quantifiers(&t, 2, 2).unwrap();
        check_equality(&t, 2).unwrap();
        check_beck_chevalley(&t, &[0, 0], 2, 2).unwrap();
        generic_predicate_check(&t, 2).unwrap();
        check_singleton_index(&t).unwrap();
        assert_eq!(t.classes(2).count, 16);
    }
}
