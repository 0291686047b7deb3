use std::sync::OnceLock;

use proptest::prelude::*;
use realg_core::calculi::syntax::{cmd, Command, Context, Term};
use realg_core::catalog::{catalog, Instance};
use realg_core::duality::reverse;
use realg_core::encodings::{beta_violation, diamond, entails};
use realg_core::lattice::{enumerate_lattices, Elem, FiniteLattice};
use realg_core::separators::{all_separators, generate_separator, generated_algebra};
use realg_core::sexpr::parse_command;
use realg_core::structures::{Kind, Structure};

fn instances() -> &'static [Instance] {
    static CELL: OnceLock<Vec<Instance>> = OnceLock::new();
    CELL.get_or_init(|| catalog(4, 3, 2).into_iter().filter(|i| i.structure.lattice().size() <= 8).collect())
}

fn lattices() -> &'static [FiniteLattice] {
    static CELL: OnceLock<Vec<FiniteLattice>> = OnceLock::new();
    CELL.get_or_init(|| enumerate_lattices(6).collect())
}

fn of_kind(kind: Kind) -> Vec<&'static Structure> {
    instances().iter().map(|i| &i.structure).filter(|s| s.kind() == kind).collect()
}

fn pick<T>(v: &[T], i: usize) -> &T {
    &v[i % v.len()]
}

#[test]
fn lattice_counts_per_size() {
    let mut counts = [0usize; 7];
    for l in lattices() {
        counts[l.size()] += 1;
    }
    assert_eq!(&counts[1..], &[1, 1, 1, 2, 5, 15]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn meet_and_join_are_bounds(idx in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let l = pick(lattices(), idx);
        let (a, b) = (a % l.size(), b % l.size());
        let lower: Vec<Elem> = l.elements().filter(|&c| l.le(c, a) && l.le(c, b)).collect();
        let upper: Vec<Elem> = l.elements().filter(|&c| l.le(a, c) && l.le(b, c)).collect();
        let glb = *lower.iter().find(|&&c| lower.iter().all(|&d| l.le(d, c))).unwrap();
        let lub = *upper.iter().find(|&&c| upper.iter().all(|&d| l.le(c, d))).unwrap();
        prop_assert_eq!(l.meet(a, b), glb);
        prop_assert_eq!(l.join(a, b), lub);
    }

    #[test]
    fn heyting_implication_is_right_adjoint(idx in any::<usize>(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let ls: Vec<&FiniteLattice> = lattices().iter().filter(|l| l.is_distributive()).collect();
        let l = *pick(&ls, idx);
        let n = l.size();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(l.le(l.meet(c, a), b), l.le(c, l.heyting_implication(a, b)));
    }

    #[test]
    fn entailment_is_a_preorder(idx in any::<usize>(), gen in any::<usize>(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let s = pick(instances(), idx).structure.clone();
        let n = s.lattice().size();
        let alg = generated_algebra(s, &[gen % n], false).unwrap();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert!(entails(&alg, a, a));
        if entails(&alg, a, b) && entails(&alg, b, c) {
            prop_assert!(entails(&alg, a, c));
        }
    }

    #[test]
    fn diamond_is_adjoint(idx in any::<usize>(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let Structure::Conjunctive(t) = *pick(&of_kind(Kind::Conjunctive), idx) else { unreachable!() };
        let l = t.lattice();
        let n = l.size();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(l.le(c, diamond(t, a, b)), l.le(a, t.neg(t.tensor(b, c))));
    }

    #[test]
    fn beta_holds_for_random_functions(idx in any::<usize>(), table in prop::collection::vec(any::<usize>(), 8)) {
        let s = &pick(instances(), idx).structure;
        let n = s.lattice().size();
        let f: Vec<Elem> = table[..n].iter().map(|&x| x % n).collect();
        prop_assert_eq!(beta_violation(s, &f), None);
    }

    #[test]
    fn generated_separator_is_least_and_idempotent(idx in any::<usize>(), gens in prop::collection::vec(any::<usize>(), 0..3), classical in any::<bool>()) {
        let all: Vec<&Instance> = instances().iter().filter(|i| i.structure.lattice().size() <= 6).collect();
        let s = &pick(&all, idx).structure;
        let n = s.lattice().size();
        let gens: Vec<Elem> = gens.iter().map(|g| g % n).collect();
        let sep = generate_separator(s, &gens, classical).unwrap();
        for &g in &gens {
            prop_assert!(sep.contains(g));
        }
        let again = generate_separator(s, &sep.members(), classical).unwrap();
        prop_assert_eq!(again.mask(), sep.mask());
        for other in all_separators(s, classical) {
            if gens.iter().all(|&g| other.contains(g)) {
                prop_assert!(sep.is_subset(&other));
            }
        }
    }

    #[test]
    fn reversing_twice_is_the_identity(idx in any::<usize>(), par in any::<bool>()) {
        let kind = if par { Kind::Disjunctive } else { Kind::Conjunctive };
        let s = *pick(&of_kind(kind), idx);
        let back = reverse(&reverse(s).unwrap()).unwrap();
        prop_assert_eq!(&back, s);
    }

    #[test]
    fn printed_commands_parse_back(c in command()) {
        let text = c.to_string();
        prop_assert_eq!(parse_command(&text).unwrap(), c);
    }
}

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "z", "k", "a1", "b2"]).prop_map(String::from)
}

fn command() -> impl Strategy<Value = Command> {
    let leaf_t = prop_oneof![name().prop_map(|x| Term::var(&x)), (0usize..4).prop_map(Term::Param)];
    let leaf_e = prop_oneof![name().prop_map(|a| Context::covar(&a)), (0usize..4).prop_map(Context::Param)];
    let leaf = (leaf_t, leaf_e).prop_map(|(t, e)| cmd(t, e));
    leaf.prop_recursive(4, 24, 2, |inner| {
        let sub = inner.clone();
        let term = prop_oneof![
            name().prop_map(|x| Term::var(&x)),
            (name(), sub.clone()).prop_map(|(a, c)| Term::mu(&a, c)),
            (name(), name(), sub.clone()).prop_map(|(a, b, c)| Term::mu_pair(&a, &b, c)),
            (name(), sub.clone()).prop_map(|(x, c)| Term::mu_box(&x, c)),
            sub.clone().prop_map(|c| Term::pair(c.term, Term::Param(1))),
            sub.clone().prop_map(|c| Term::boxed(c.ctx)),
        ];
        let ctx = prop_oneof![
            name().prop_map(|a| Context::covar(&a)),
            (name(), sub.clone()).prop_map(|(x, c)| Context::mu(&x, c)),
            (name(), name(), sub.clone()).prop_map(|(x, y, c)| Context::mu_pair(&x, &y, c)),
            (name(), sub.clone()).prop_map(|(a, c)| Context::mu_box(&a, c)),
            sub.clone().prop_map(|c| Context::pair(c.ctx, Context::Param(0))),
            sub.prop_map(|c| Context::boxed(c.term)),
        ];
        (term, ctx).prop_map(|(t, e)| cmd(t, e))
    })
}
