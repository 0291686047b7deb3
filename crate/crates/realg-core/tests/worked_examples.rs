//! Stated values on the small Boolean and dummy instances.

use realg_core::calculi::interp::{command_order, interpret_context, interpret_term};
use realg_core::calculi::reduce::step_with_rule;
use realg_core::calculi::reduce::Rule;
use realg_core::calculi::syntax::{Subject, Term};
use realg_core::calculi::typing::{typecheck, Judgment, TypedSequent};
use realg_core::calculi::Polarity;
use realg_core::encodings::{combinator, encoded_product, encoded_sum, entails, interpret_lambda, Combinator, Formula, LambdaTerm};
use realg_core::lattice::{boolean_algebra, enumerate_lattices, Elem};
use realg_core::separators::{algebra, check_separator};
use realg_core::sexpr::{parse_command, parse_context, parse_term};
use realg_core::structures::{
    boolean_conjunctive, boolean_disjunctive, boolean_implicative, dummy_conjunctive, dummy_disjunctive, Structure,
};

fn b4() -> realg_core::lattice::BooleanAlgebra {
    boolean_algebra(2).unwrap()
}

fn b4_par() -> Structure {
    boolean_disjunctive(&b4()).unwrap().into()
}

fn b4_tens() -> Structure {
    boolean_conjunctive(&b4()).unwrap().into()
}

#[test]
fn boolean_and_dummy_structures_are_valid() {
    for k in 1..=3 {
        let b = boolean_algebra(k).unwrap();
        boolean_implicative(&b).unwrap();
        boolean_disjunctive(&b).unwrap();
        boolean_conjunctive(&b).unwrap();
    }
    for n in 1..=5 {
        for l in enumerate_lattices(n) {
            dummy_disjunctive(&l).unwrap();
            dummy_conjunctive(&l).unwrap();
        }
    }
}

#[test]
fn k_is_top_on_b4() {
    let s: Structure = boolean_implicative(&b4()).unwrap().into();
    let top = s.lattice().top();
    assert_eq!(interpret_lambda(&s, &LambdaTerm::k()).unwrap(), top);
    assert_eq!(combinator(&s, Combinator::K).unwrap(), top);
}

#[test]
fn ps_and_ts_are_top_on_b4() {
    let (par, tens) = (b4_par(), b4_tens());
    for c in Combinator::ps() {
        assert_eq!(combinator(&par, c).unwrap(), par.lattice().top(), "{c}");
    }
    for c in Combinator::ts() {
        assert_eq!(combinator(&tens, c).unwrap(), tens.lattice().top(), "{c}");
    }
}

#[test]
fn boolean_separators_are_its_filters() {
    let s = b4_par();
    let top = s.lattice().top();
    check_separator(&s, &[top], false).unwrap();
    // the up-set of an atom
    let bot = s.lattice().bot();
    let atom = s.lattice().covers().into_iter().find(|&(x, _)| x == bot).unwrap().1;
    let up: Vec<Elem> = s.lattice().elements().filter(|&b| s.lattice().le(atom, b)).collect();
    check_separator(&s, &up, false).unwrap();
}

#[test]
fn entailment_facts() {
    let alg = algebra(b4_par(), &[3], false).unwrap();
    let s = &alg.structure;
    let Structure::Disjunctive(d) = s else { unreachable!() };
    for a in 0..4 {
        assert!(entails(&alg, a, a));
        for b in 0..4 {
            let (sum, par) = (encoded_sum(s, a, b), d.par(a, b));
            assert!(entails(&alg, par, sum) && entails(&alg, sum, par));
        }
    }
    let alg = algebra(b4_tens(), &[3], true).unwrap();
    for a in 0..4 {
        for b in 0..4 {
            let p = encoded_product(&alg.structure, a, b);
            assert!(entails(&alg, p, a) && entails(&alg, p, b));
        }
    }
}

#[test]
fn reduction_table_entries() {
    let par = parse_command("(cmd (mubox x (cmd x k)) (box (par 2)))").unwrap();
    let (rule, next) = step_with_rule(Polarity::Par, &par).unwrap();
    assert_eq!(rule, Rule::BoxBeta);
    assert!(next.alpha_eq(&parse_command("(cmd (par 2) k)").unwrap()));

    let tens = parse_command("(cmd (pair (par 1) (par 2)) (mupair x y (cmd x (mut z (cmd y k)))))").unwrap();
    let (rule, next) = step_with_rule(Polarity::Tens, &tens).unwrap();
    assert_eq!(rule, Rule::PairBeta);
    assert!(next.alpha_eq(&parse_command("(cmd (par 1) (mut z (cmd (par 2) k)))").unwrap()));

    let expand = parse_command("(cmd t (pair (mut x (cmd x a)) b))").unwrap();
    let (rule, _) = step_with_rule(Polarity::Par, &expand).unwrap();
    assert_eq!(rule, Rule::PairExpand);
}

#[test]
fn axiom_is_typable() {
    let x = Formula::var("X");
    let j = Judgment {
        gamma: vec![("x".into(), x.clone())],
        delta: vec![],
        subject: Subject::Term(Term::var("x")),
        ty: Some(x),
    };
    let d = typecheck(&TypedSequent { polarity: Polarity::Par, judgment: j, hints: vec![] }).unwrap();
    assert_eq!(d.rule, "⊢ax");
}

#[test]
fn pairing_boxing_and_eta() {
    let s = b4_par();
    let Structure::Disjunctive(d) = &s else { unreachable!() };
    for a in 0..4 {
        for b in 0..4 {
            let e = parse_context(&format!("(pair (par {a}) (par {b}))")).unwrap();
            assert_eq!(interpret_context(&s, Polarity::Par, &e).unwrap(), d.par(a, b));
        }
        let boxed = parse_context(&format!("(box (par {a}))")).unwrap();
        assert_eq!(interpret_context(&s, Polarity::Par, &boxed).unwrap(), d.neg(a));
        let eta = parse_term(&format!("(mu k (cmd (par {a}) k))")).unwrap();
        assert_eq!(interpret_term(&s, Polarity::Par, &eta).unwrap(), a);
        let eta = parse_context(&format!("(mut x (cmd x (par {a})))")).unwrap();
        assert_eq!(interpret_context(&s, Polarity::Par, &eta).unwrap(), a);
    }
}

#[test]
fn command_order_is_covariant_in_terms_and_contravariant_in_contexts() {
    let l = b4().lattice;
    for t in 0..4 {
        for t2 in 0..4 {
            for e in 0..4 {
                for e2 in 0..4 {
                    if l.le(t, t2) && l.le(e2, e) {
                        assert!(command_order(&l, (t, e), (t2, e2)));
                    }
                }
            }
        }
    }
}
