use std::collections::{BTreeSet, HashSet};

use ordproof::certs::{apply_conv, check_atom_proof, parse_cert, serialize_cert};
use ordproof::closure::{leq1_mapping, trancl_floyd_warshall, trancl_mapping};
use ordproof::lang::eval_formula;
use ordproof::oracle::{brute_sat, brute_sat_auto, enumerate_posets};
use ordproof::replay::{check_refutation, export, parse_gprf, serialize_gprf, Sigma};
use ordproof::rewrite::{self, is_dnf};
use ordproof::{decide, refutes, Formula, Literal, OrderAtom, Theory, Valuation, Verdict, VarId};
use proptest::prelude::*;

fn arb_lit(vars: u32) -> impl Strategy<Value = Literal> {
    (any::<bool>(), 0..3u8, 0..vars, 0..vars).prop_map(|(pos, k, x, y)| {
        let (x, y) = (VarId(x), VarId(y));
        let atom = match k {
            0 => OrderAtom::Le(x, y),
            1 => OrderAtom::Lt(x, y),
            _ => OrderAtom::Eq(x, y),
        };
        Literal::new(pos, atom)
    })
}

fn arb_fm(vars: u32) -> impl Strategy<Value = Formula> {
    arb_lit(vars).prop_map(Formula::Atom).prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            inner.prop_map(Formula::neg),
        ]
    })
}

fn theory() -> impl Strategy<Value = Theory> {
    prop_oneof![Just(Theory::Partial), Just(Theory::Linear)]
}

/// Same truth value in every poset on up to three points.
fn equivalent(a: &Formula, b: &Formula) -> bool {
    let vars: Vec<VarId> = a.vars().union(&b.vars()).copied().collect();
    (1..=3).all(|k| {
        enumerate_posets(k).unwrap().iter().all(|r| {
            (0..k.pow(vars.len() as u32)).all(|mut code| {
                let val: Valuation = vars
                    .iter()
                    .map(|&v| {
                        let e = (code % k) as u32;
                        code /= k;
                        (v, e)
                    })
                    .collect();
                eval_formula(r, &val, a) == eval_formula(r, &val, b)
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decide_matches_oracle(phi in arb_fm(3), th in theory()) {
        let v = decide(&phi, th).unwrap();
        prop_assert_eq!(v.is_unsat(), !brute_sat_auto(&phi, th).unwrap());
        if let Verdict::Unsat { certificate } = v {
            prop_assert_eq!(refutes(&phi, &certificate, th), Ok(()));
            prop_assert_eq!(check_refutation(&Sigma::new(th), &phi, &export(&certificate, &phi)), Ok(()));
        }
    }

    #[test]
    fn certificates_round_trip_as_text(phi in arb_fm(3), th in theory()) {
        if let Verdict::Unsat { certificate } = decide(&phi, th).unwrap() {
            prop_assert_eq!(parse_cert(&serialize_cert(&certificate)), Ok(certificate.clone()));
            let g = export(&certificate, &phi);
            prop_assert_eq!(parse_gprf(&serialize_gprf(&g)), Ok(g));
        }
    }

    #[test]
    fn dnf_is_equivalent_and_certified(phi in arb_fm(3)) {
        let (dnf, prf) = rewrite::to_dnf(&phi);
        prop_assert!(is_dnf(&dnf));
        prop_assert_eq!(apply_conv(&prf, &phi), Ok(dnf.clone()));
        prop_assert!(equivalent(&phi, &dnf));
    }

    #[test]
    fn partial_deless_is_equivalent(phi in arb_fm(3)) {
        let less = rewrite::amap_fm(rewrite::deless_partial, &phi);
        let prf = rewrite::amap_fm_prf(rewrite::deless_partial_prf, &phi);
        prop_assert_eq!(apply_conv(&prf, &phi), Ok(less.clone()));
        prop_assert!(equivalent(&phi, &less));
    }

    #[test]
    fn oracle_monotone(a in arb_fm(3), b in arb_fm(3), th in theory()) {
        let vars: BTreeSet<VarId> = a.vars().union(&b.vars()).copied().collect();
        let both = Formula::and(a.clone(), b);
        if brute_sat(&both, th, &vars).unwrap() {
            prop_assert!(brute_sat(&a, th, &vars).unwrap());
        }
        if brute_sat(&a, Theory::Linear, &vars).unwrap() {
            prop_assert!(brute_sat(&a, Theory::Partial, &vars).unwrap());
        }
    }

    #[test]
    fn closure_edges_carry_valid_proofs(lits in proptest::collection::vec(arb_lit(6), 0..10)) {
        let assms: HashSet<Literal> = lits.iter().copied().collect();
        let base = leq1_mapping(&lits);
        for closed in [trancl_mapping(&base), trancl_floyd_warshall(&base)] {
            prop_assert!(closed.keys().is_superset(&base.keys()));
            for ((x, y), p) in closed.entries() {
                prop_assert_eq!(check_atom_proof(&assms, p), Ok(Literal::le(x, y)));
            }
        }
    }

    #[test]
    fn closure_is_monotone(lits in proptest::collection::vec(arb_lit(6), 0..10), extra in arb_lit(6)) {
        let small = trancl_mapping(&leq1_mapping(&lits)).keys();
        let mut more = lits.clone();
        more.push(extra);
        let big = trancl_mapping(&leq1_mapping(&more)).keys();
        prop_assert!(small.is_subset(&big));
    }
}

#[test]
fn sat_models_satisfy_input() {
    let x = VarId(0);
    let y = VarId(1);
    let z = VarId(2);
    let phi = Formula::and(
        Formula::or(Formula::Atom(Literal::lt(x, y)), Formula::Atom(Literal::eq(y, z))),
        Formula::neg(Formula::Atom(Literal::le(z, x))),
    );
    for th in [Theory::Partial, Theory::Linear] {
        let Verdict::Sat { model, .. } = decide(&phi, th).unwrap() else {
            panic!("expected sat under {th}");
        };
        assert!(model.relation.props().fits(th));
        assert_eq!(eval_formula(&model.relation, &model.assignment, &phi), Ok(true));
    }
}
