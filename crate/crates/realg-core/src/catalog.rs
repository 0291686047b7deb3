//! Instance lists: catalogued constructors over enumerated lattices, small
//! machines, and exhaustive enumeration of every structure on a small lattice.

use crate::lattice::{boolean_algebra, enumerate_lattices, Elem, FiniteLattice};
use crate::structures::*;

/// A named structure instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub structure: Structure,
}

impl Instance {
    fn new(name: impl Into<String>, structure: impl Into<Structure>) -> Self {
        Instance { name: name.into(), structure: structure.into() }
    }
}

/// Maps `f` with `f(⊤) = ⊤` and `f(a ∧ b) = f(a) ∧ f(b)`.
pub fn meet_preserving_maps(l: &FiniteLattice) -> Vec<Vec<Elem>> {
    all_maps(l.size())
        .filter(|f| {
            f[l.top()] == l.top() && l.elements().all(|a| l.elements().all(|b| f[l.meet(a, b)] == l.meet(f[a], f[b])))
        })
        .collect()
}

/// Maps `f` with `f(⊥) = ⊥` and `f(a ∨ b) = f(a) ∨ f(b)`.
pub fn join_preserving_maps(l: &FiniteLattice) -> Vec<Vec<Elem>> {
    all_maps(l.size())
        .filter(|f| {
            f[l.bot()] == l.bot() && l.elements().all(|a| l.elements().all(|b| f[l.join(a, b)] == l.join(f[a], f[b])))
        })
        .collect()
}

fn all_maps(n: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = n.checked_pow(n as u32).expect("map space fits in usize");
    (0..total).map(move |mut code| {
        let mut f = vec![0; n];
        for slot in f.iter_mut() {
            *slot = code % n;
            code /= n;
        }
        f
    })
}

/// Negations turning meets into joins: `¬⊤ = ⊥`, `¬(a ∧ b) = ¬a ∨ ¬b`.
pub fn disjunctive_negations(l: &FiniteLattice) -> Vec<Vec<Elem>> {
    all_maps(l.size())
        .filter(|f| {
            f[l.top()] == l.bot() && l.elements().all(|a| l.elements().all(|b| f[l.meet(a, b)] == l.join(f[a], f[b])))
        })
        .collect()
}

/// Negations turning joins into meets: `¬⊥ = ⊤`, `¬(a ∨ b) = ¬a ∧ ¬b`.
pub fn conjunctive_negations(l: &FiniteLattice) -> Vec<Vec<Elem>> {
    all_maps(l.size())
        .filter(|f| {
            f[l.bot()] == l.top() && l.elements().all(|a| l.elements().all(|b| f[l.join(a, b)] == l.meet(f[a], f[b])))
        })
        .collect()
}

/// Binary tables whose rows and columns are all drawn from `maps`.
fn bilinear_tables(n: usize, maps: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut rows: Vec<usize> = Vec::with_capacity(n);
    fn go(n: usize, maps: &[Vec<Elem>], rows: &mut Vec<usize>, out: &mut Vec<Vec<Elem>>) {
        if rows.len() == n {
            let table: Vec<Elem> = rows.iter().flat_map(|&r| maps[r].iter().copied()).collect();
            let cols_ok = (0..n).all(|b| {
                let col: Vec<Elem> = (0..n).map(|a| table[a * n + b]).collect();
                maps.contains(&col)
            });
            if cols_ok {
                out.push(table);
            }
            return;
        }
        for r in 0..maps.len() {
            rows.push(r);
            go(n, maps, rows, out);
            rows.pop();
        }
    }
    go(n, maps, &mut rows, &mut out);
    out
}

/// Every disjunctive structure on `l`.
pub fn enumerate_disjunctive(l: &FiniteLattice) -> Vec<DisjunctiveStructure> {
    let pars = bilinear_tables(l.size(), &meet_preserving_maps(l));
    let negs = disjunctive_negations(l);
    let mut out = Vec::with_capacity(pars.len() * negs.len());
    for p in &pars {
        for g in &negs {
            out.push(check_disjunctive(l.clone(), p.clone(), g.clone()).expect("tables built from the axioms"));
        }
    }
    out
}

/// Every conjunctive structure on `l`.
pub fn enumerate_conjunctive(l: &FiniteLattice) -> Vec<ConjunctiveStructure> {
    let tens = bilinear_tables(l.size(), &join_preserving_maps(l));
    let negs = conjunctive_negations(l);
    let mut out = Vec::with_capacity(tens.len() * negs.len());
    for t in &tens {
        for g in &negs {
            out.push(check_conjunctive(l.clone(), t.clone(), g.clone()).expect("tables built from the axioms"));
        }
    }
    out
}

/// Every implicative structure on `l`.
pub fn enumerate_implicative(l: &FiniteLattice) -> Vec<ImplicativeStructure> {
    let maps = meet_preserving_maps(l);
    let n = l.size();
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(n);
    fn go(
        l: &FiniteLattice,
        maps: &[Vec<Elem>],
        rows: &mut Vec<usize>,
        out: &mut Vec<ImplicativeStructure>,
    ) {
        let n = l.size();
        let a = rows.len();
        if a == n {
            let table: Vec<Elem> = rows.iter().flat_map(|&r| maps[r].iter().copied()).collect();
            out.push(check_implicative(l.clone(), table).expect("rows are meet-preserving and antitone"));
            return;
        }
        for r in 0..maps.len() {
            // antitone in the first argument against earlier rows
            let ok = (0..a).all(|p| {
                let (prev, cur) = (&maps[rows[p]], &maps[r]);
                (!l.le(p, a) || (0..n).all(|b| l.le(cur[b], prev[b]))) && (!l.le(a, p) || (0..n).all(|b| l.le(prev[b], cur[b])))
            });
            if ok {
                rows.push(r);
                go(l, maps, rows, out);
                rows.pop();
            }
        }
    }
    go(l, &maps, &mut rows, &mut out);
    out
}

/// Machines with value set `V0 = {0..k}` on the given side plus one
/// non-value, `k` elements on the other side boxed bijectively, and a few
/// fixed pairings and poles.
pub fn small_machines(k: usize, side: Side) -> Vec<Machine> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let own = k + 1;
    let other = k;
    let (terms, contexts) = match side {
        Side::Terms => (own, other),
        Side::Contexts => (other, own),
    };
    let pairs: Vec<Vec<usize>> = vec![
        (0..k * k).map(|i| i / k).collect(),
        (0..k * k).map(|i| i % k).collect(),
        (0..k * k).map(|i| (i / k + i % k) % k).collect(),
    ];
    let mut boxes: Vec<Vec<usize>> = vec![(0..k).collect(), (0..k).map(|i| (i + 1) % k).collect()];
    boxes.dedup();
    let poles: Vec<Vec<bool>> = vec![
        vec![false; terms * contexts],
        vec![true; terms * contexts],
        (0..terms * contexts).map(|i| (i / contexts + i % contexts) % 2 == 0).collect(),
        (0..terms * contexts).map(|i| i / contexts <= i % contexts).collect(),
    ];
    for pair in &pairs {
        for boxing in &boxes {
            for pole in &poles {
                out.push(Machine {
                    terms,
                    contexts,
                    value_side: side,
                    values: (0..k).collect(),
                    pair: pair.clone(),
                    boxing: boxing.clone(),
                    pole: pole.clone(),
                });
            }
        }
    }
    out
}

/// Catalogued constructors applied to every lattice of `enumerate_lattices(max_n)`,
/// Boolean algebras with up to `max_atoms` atoms, and machine powersets with up
/// to `max_values` values.
pub fn catalog(max_n: usize, max_atoms: u32, max_values: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for (idx, l) in enumerate_lattices(max_n).enumerate() {
        let tag = format!("L{}#{idx}", l.size());
        out.push(Instance::new(format!("dummy-par/{tag}"), dummy_disjunctive(&l).expect("dummy")));
        out.push(Instance::new(format!("dummy-tens/{tag}"), dummy_conjunctive(&l).expect("dummy")));
        out.push(Instance::new(format!("const-top/{tag}"), constant_top_implicative(&l).expect("constant top")));
        if let Some((i, d, c)) = boolean_on(&l) {
            out.push(Instance::new(format!("boolean-imp/{tag}"), i));
            out.push(Instance::new(format!("boolean-par/{tag}"), d));
            out.push(Instance::new(format!("boolean-tens/{tag}"), c));
        }
        if l.is_distributive() {
            out.push(Instance::new(format!("heyting-imp/{tag}"), heyting_implicative(&l).expect("distributive")));
            out.push(Instance::new(format!("coheyting-par/{tag}"), coheyting_disjunctive(&l).expect("distributive")));
            out.push(Instance::new(format!("heyting-tens/{tag}"), heyting_conjunctive(&l).expect("distributive")));
        }
    }
    for k in 1..=max_atoms {
        let b = boolean_algebra(k).expect("atom count within cap");
        out.push(Instance::new(format!("B{}-imp", 1 << k), boolean_implicative(&b).expect("boolean")));
        out.push(Instance::new(format!("B{}-par", 1 << k), boolean_disjunctive(&b).expect("boolean")));
        out.push(Instance::new(format!("B{}-tens", 1 << k), boolean_conjunctive(&b).expect("boolean")));
    }
    for k in 1..=max_values {
        for (i, m) in small_machines(k, Side::Contexts).iter().enumerate() {
            out.push(Instance::new(format!("machine-par/v{k}#{i}"), machine_powerset_disjunctive(m).expect("machine")));
        }
        for (i, m) in small_machines(k, Side::Terms).iter().enumerate() {
            out.push(Instance::new(format!("machine-tens/v{k}#{i}"), machine_powerset_conjunctive(m).expect("machine")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_counts_on_small_chains() {
        for n in 1..=4 {
            for l in enumerate_lattices(n).filter(|l| l.size() == n) {
                let d = enumerate_disjunctive(&l).len();
                let c = enumerate_conjunctive(&l).len();
                let i = enumerate_implicative(&l).len();
                eprintln!("n={n} dis={d} con={c} imp={i}");
                assert!(d >= 1 && c >= 1 && i >= 1);
            }
        }
    }
}
