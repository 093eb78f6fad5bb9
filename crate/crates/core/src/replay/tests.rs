use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use super::*;
use crate::certs::{apply_conv, refutes};
use crate::lang::{eval_literal, Relation, Theory, Valuation};
use crate::oracle::enumerate_posets;

const X: VarId = VarId(0);
const Y: VarId = VarId(1);
const Z: VarId = VarId(2);

fn at(l: Literal) -> Formula {
    Formula::Atom(l)
}

fn v(x: VarId) -> GTrm {
    GTrm::Var(x)
}

#[test]
fn refl_instance() {
    let sigma = Sigma::new(Theory::Partial);
    let p = GPrf::appt(GPrf::thm("refl"), v(X));
    assert_eq!(replay(&sigma, &Context::new(), &p), Ok(MetaProp::LitP(Literal::le(X, X))));
}

#[test]
fn trans_chain() {
    let sigma = Sigma::new(Theory::Partial);
    let mut ctx = Context::new();
    for l in [Literal::le(X, Y), Literal::le(Y, Z)] {
        ctx.insert(encode_fm(&at(l)), MetaProp::LitP(l));
    }
    let hyp = |l| GPrf::Bound(encode_fm(&at(l)));
    let p = GPrf::rule(
        "trans",
        [v(X), v(Y), v(Z)],
        [hyp(Literal::le(X, Y)), hyp(Literal::le(Y, Z))],
    );
    assert_eq!(replay(&sigma, &ctx, &p), Ok(MetaProp::LitP(Literal::le(X, Z))));

    let swapped = GPrf::rule(
        "trans",
        [v(X), v(Y), v(Z)],
        [hyp(Literal::le(Y, Z)), hyp(Literal::le(X, Y))],
    );
    assert!(matches!(
        replay(&sigma, &ctx, &swapped),
        Err(ReplayError::PremiseMismatch { .. })
    ));
}

#[test]
fn errors() {
    let sigma = Sigma::new(Theory::Partial);
    let ctx = Context::new();
    let t = encode_fm(&at(Literal::le(X, Y)));
    assert_eq!(
        replay(&sigma, &ctx, &GPrf::Bound(t.clone())),
        Err(ReplayError::Unbound(t))
    );
    assert_eq!(
        replay(&sigma, &ctx, &GPrf::thm("nle")),
        Err(ReplayError::UnknownConstant("nle".into()))
    );
    assert!(Sigma::new(Theory::Linear).get("nle").is_some());
    assert!(matches!(
        replay(&sigma, &ctx, &GPrf::appt(GPrf::appt(GPrf::thm("refl"), v(X)), v(Y))),
        Err(ReplayError::NotForall(_))
    ));
    // order binders take variables only
    assert!(matches!(
        replay(&sigma, &ctx, &GPrf::appt(GPrf::thm("refl"), GTrm::constant("le"))),
        Err(ReplayError::BadTerm(..))
    ));
}

#[test]
fn substitution_respects_shadowing_and_capture() {
    let inner = MetaProp::all(Y, MetaProp::LitP(Literal::le(X, Y)));
    assert_eq!(
        subst(&inner, X, &v(Z)),
        Ok(MetaProp::all(Y, MetaProp::LitP(Literal::le(Z, Y))))
    );
    assert_eq!(subst(&inner, Y, &v(Z)), Ok(inner.clone()));
    assert_eq!(subst(&inner, X, &v(Y)), Err(ReplayError::Capture(Y)));

    // formula binders take decoded formulas
    let a = VarId(SCHEMA_VAR_BASE + 3);
    let p = MetaProp::FmP(Formula::neg(Formula::Atom(MetaAtom::Var(a))));
    let phi = Formula::or(at(Literal::le(X, Y)), at(Literal::eq(Y, Z)));
    assert_eq!(
        subst(&p, a, &encode_fm(&phi)),
        Ok(MetaProp::formula(&Formula::neg(phi)))
    );
    // an atom instance collapses to a literal proposition
    let q = MetaProp::FmP(Formula::Atom(MetaAtom::Var(a)));
    assert_eq!(
        subst(&q, a, &encode_fm(&at(Literal::lt(X, Y)))),
        Ok(MetaProp::LitP(Literal::lt(X, Y)))
    );
}

#[test]
fn encoding_round_trips() {
    let f = Formula::and(
        Formula::neg(at(Literal::lt(X, Y).negate())),
        Formula::or(at(Literal::eq(Y, Z)), at(Literal::fls())),
    );
    assert_eq!(decode_fm(&encode_fm(&f)), Ok(f));
    assert_eq!(
        decode_lit(&GTrm::constant("fls")),
        Ok(Literal::fls())
    );
    let double_neg = GTrm::app(GTrm::constant("not"), encode_lit(Literal::le(X, Y).negate()));
    assert!(decode_lit(&double_neg).is_err());
}

#[test]
fn exported_refl_replays_to_its_literal() {
    let sigma = Sigma::new(Theory::Partial);
    let g = export(&PropProof::Lift(CertProof::ReflP(X)), &at(Literal::le(X, X)));
    assert_eq!(replay(&sigma, &Context::new(), &g), Ok(MetaProp::LitP(Literal::le(X, X))));
}

#[test]
fn exported_refutation_replays() {
    // x <= y, y <= x, x != y
    let parts = [
        at(Literal::le(X, Y)),
        at(Literal::le(Y, X)),
        at(Literal::eq(X, Y).negate()),
    ];
    let root = Formula::conj(parts.clone()).unwrap();
    let rest = Formula::and(parts[1].clone(), parts[2].clone());
    let core = PropProof::Lift(CertProof::contr(
        Literal::eq(X, Y).negate(),
        CertProof::antisym(
            CertProof::AssmP(Literal::le(X, Y)),
            CertProof::AssmP(Literal::le(Y, X)),
        ),
    ));
    let p = PropProof::conj_e(
        parts[0].clone(),
        rest.clone(),
        PropProof::conj_e(parts[1].clone(), parts[2].clone(), core),
    );
    assert_eq!(refutes(&root, &p, Theory::Partial), Ok(()));
    let g = export(&p, &root);
    let sigma = Sigma::new(Theory::Partial);
    assert_eq!(check_refutation(&sigma, &root, &g), Ok(()));
    assert_eq!(parse_gprf(&serialize_gprf(&g)), Ok(g.clone()));

    // dropping the disequality leaves the hypothesis unbound
    let weaker = Formula::and(parts[0].clone(), parts[1].clone());
    assert!(check_refutation(&sigma, &weaker, &g).is_err());
}

#[test]
fn linear_conversion_needs_linear_sigma() {
    let root = Formula::and(at(Literal::le(X, Y).negate()), at(Literal::le(Y, X).negate()));
    let cp = ConvProof::binop(ConvProof::NleConv, ConvProof::AllConv);
    let converted = apply_conv(&cp, &root).unwrap();

    let g = GPrf::conv(encode_fm(&root), export_conv(&cp), GPrf::Bound(encode_fm(&converted)));
    let lin = Sigma::new(Theory::Linear);
    assert_eq!(
        replay(&lin, &Context::with_root(&root), &g),
        Ok(MetaProp::formula(&converted))
    );
    let part = Sigma::new(Theory::Partial);
    assert_eq!(
        replay(&part, &Context::with_root(&root), &g),
        Err(ReplayError::UnknownConstant("nle".into()))
    );
}

#[test]
fn gprf_text() {
    let g = GPrf::conv(
        GTrm::constant("fls"),
        GPrf::app(GPrf::thm("atom"), GPrf::thm("lessle")),
        GPrf::abs(encode_fm(&at(Literal::le(X, Y))), GPrf::appt(GPrf::thm("refl"), v(Z))),
    );
    let text = serialize_gprf(&g);
    assert_eq!(
        text,
        "(convp fls (appp (pthm atom) (pthm lessle)) \
         (absp (app atom (app (app le v0) v1)) (appt (pthm refl) v2)))"
    );
    assert_eq!(parse_gprf(&text), Ok(g));
    assert!(parse_gprf("(pthm v0)").is_err());
    assert!(parse_gprf("(appp (pthm refl))").is_err());
    assert_eq!(parse_gtrm("v7"), Ok(v(VarId(7))));
}

// --- Σ soundness -----------------------------------------------------------

fn eval_meta_fm(r: &Relation, val: &Valuation, rho: &BTreeMap<VarId, bool>, f: &MetaFm) -> bool {
    match f {
        Formula::Atom(MetaAtom::Lit(l)) => eval_literal(r, val, *l).unwrap(),
        Formula::Atom(MetaAtom::Var(a)) => rho[a],
        Formula::And(a, b) => eval_meta_fm(r, val, rho, a) && eval_meta_fm(r, val, rho, b),
        Formula::Or(a, b) => eval_meta_fm(r, val, rho, a) || eval_meta_fm(r, val, rho, b),
        Formula::Neg(a) => !eval_meta_fm(r, val, rho, a),
    }
}

fn eval_meta(r: &Relation, val: &Valuation, rho: &BTreeMap<VarId, bool>, p: &MetaProp) -> bool {
    match p {
        MetaProp::LitP(l) => eval_literal(r, val, *l).unwrap(),
        MetaProp::FmP(f) => eval_meta_fm(r, val, rho, f),
        MetaProp::Implies(a, b) => !eval_meta(r, val, rho, a) || eval_meta(r, val, rho, b),
        MetaProp::EquivFm(a, b) => eval_meta_fm(r, val, rho, a) == eval_meta_fm(r, val, rho, b),
        MetaProp::All(..) => unreachable!("binders are stripped before evaluation"),
    }
}

fn collect(p: &MetaProp, lits: &mut BTreeSet<VarId>, fms: &mut BTreeSet<VarId>) {
    let mut fm = |f: &MetaFm| {
        for a in f.atoms() {
            match a {
                MetaAtom::Lit(l) => {
                    let (x, y) = l.vars();
                    lits.extend([x, y]);
                }
                MetaAtom::Var(v) => {
                    fms.insert(*v);
                }
            }
        }
    };
    match p {
        MetaProp::LitP(l) => fm(&Formula::Atom(MetaAtom::Lit(*l))),
        MetaProp::FmP(f) => fm(f),
        MetaProp::EquivFm(a, b) => {
            fm(a);
            fm(b);
        }
        MetaProp::Implies(a, b) => {
            collect(a, lits, fms);
            collect(b, lits, fms);
        }
        MetaProp::All(_, b) => collect(b, lits, fms),
    }
}

/// Every axiom holds in every structure of its theory up to size 3, under
/// every assignment of order variables and truth values.
#[test]
fn sigma_is_sound() {
    for theory in [Theory::Partial, Theory::Linear] {
        let sigma = Sigma::new(theory);
        for (name, ax) in sigma.iter() {
            let (_, body) = strip_binders(ax);
            let (mut lits, mut fms) = (BTreeSet::new(), BTreeSet::new());
            collect(body, &mut lits, &mut fms);
            let lits: Vec<VarId> = lits.into_iter().collect();
            let fms: Vec<VarId> = fms.into_iter().collect();
            for k in 1..=3usize {
                let structures: Vec<Relation> = enumerate_posets(k)
                    .unwrap()
                    .into_iter()
                    .filter(|r| r.props().fits(theory))
                    .collect();
                let n_vals = k.pow(lits.len() as u32);
                for r in &structures {
                    for code in 0..n_vals {
                        let mut c = code;
                        let val: Valuation = lits
                            .iter()
                            .map(|&x| {
                                let e = (c % k) as u32;
                                c /= k;
                                (x, e)
                            })
                            .collect();
                        for bits in 0u32..(1 << fms.len()) {
                            let rho = fms
                                .iter()
                                .enumerate()
                                .map(|(i, &a)| (a, bits & (1 << i) != 0))
                                .collect();
                            assert!(
                                eval_meta(r, &val, &rho, body),
                                "{name} fails under {theory}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn linear_axioms_fail_on_partial_orders() {
    let lin = Sigma::new(Theory::Linear);
    let antichain = Relation::identity([0, 1]);
    let val: Valuation = [(VarId(SCHEMA_VAR_BASE), 0), (VarId(SCHEMA_VAR_BASE + 1), 1)]
        .into_iter()
        .collect();
    let (_, body) = strip_binders(lin.get("nle").unwrap());
    assert!(!eval_meta(&antichain, &val, &BTreeMap::new(), body));
}

// --- rpc agrees with the structured conversion semantics -------------------

fn arb_lit() -> impl Strategy<Value = Literal> {
    (any::<bool>(), 0..3u8, 0..3u32, 0..3u32).prop_map(|(pos, k, x, y)| {
        let (x, y) = (VarId(x), VarId(y));
        let atom = match k {
            0 => OrderAtom::Le(x, y),
            1 => OrderAtom::Lt(x, y),
            _ => OrderAtom::Eq(x, y),
        };
        Literal::new(pos, atom)
    })
}

fn arb_fm() -> impl Strategy<Value = Formula> {
    arb_lit().prop_map(Formula::Atom).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            inner.prop_map(Formula::neg),
        ]
    })
}

fn arb_conv() -> impl Strategy<Value = ConvProof> {
    let leaf = prop_oneof![
        Just(ConvProof::LessLe),
        Just(ConvProof::NlessLe),
        Just(ConvProof::NleConv),
        Just(ConvProof::NlessConv),
        Just(ConvProof::AllConv),
        Just(ConvProof::NegAtomConv),
        Just(ConvProof::NegNegConv),
        Just(ConvProof::NegAndConv),
        Just(ConvProof::NegOrConv),
        Just(ConvProof::AndOrLConv),
        Just(ConvProof::AndOrRConv),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ConvProof::atom),
            inner.clone().prop_map(ConvProof::arg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ConvProof::binop(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| ConvProof::ThenConv(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #[test]
    fn rpc_matches_apply_conv(c in arb_conv(), f in arb_fm()) {
        let sigma = Sigma::new(Theory::Linear);
        let term = export_conv(&c);
        let rw = rpc(&sigma, &term).unwrap();
        prop_assert_eq!(rw.apply(&f).ok(), apply_conv(&c, &f).ok());
    }

    #[test]
    fn encoding_is_injective(f in arb_fm(), g in arb_fm()) {
        prop_assert_eq!(encode_fm(&f) == encode_fm(&g), f == g);
        prop_assert_eq!(decode_fm(&encode_fm(&f)), Ok(f));
    }
}
