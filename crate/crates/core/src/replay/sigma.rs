use std::collections::BTreeMap;

use super::{MetaAtom, MetaFm, MetaProp};
use crate::lang::{Formula, Literal, Theory, VarId};

/// Schema binders live at the top of the id space so they never collide
/// with variables of user formulas, including the variable inside `Fls`.
pub const SCHEMA_VAR_BASE: u32 = u32::MAX - 15;

const X: VarId = VarId(SCHEMA_VAR_BASE);
const Y: VarId = VarId(SCHEMA_VAR_BASE + 1);
const Z: VarId = VarId(SCHEMA_VAR_BASE + 2);
const A: VarId = VarId(SCHEMA_VAR_BASE + 3);
const B: VarId = VarId(SCHEMA_VAR_BASE + 4);
const C: VarId = VarId(SCHEMA_VAR_BASE + 5);
const P: VarId = VarId(SCHEMA_VAR_BASE + 6);

/// The axiom environment: named, closed meta-propositions.
#[derive(Clone, Debug)]
pub struct Sigma {
    theory: Theory,
    axioms: BTreeMap<&'static str, MetaProp>,
}

fn lit(l: Literal) -> MetaProp {
    MetaProp::LitP(l)
}

fn at(l: Literal) -> MetaFm {
    Formula::Atom(MetaAtom::Lit(l))
}

fn mv(v: VarId) -> MetaFm {
    Formula::Atom(MetaAtom::Var(v))
}

fn fm(v: VarId) -> MetaProp {
    MetaProp::FmP(mv(v))
}

fn imp(hyps: impl IntoIterator<Item = MetaProp>, concl: MetaProp) -> MetaProp {
    let hyps: Vec<_> = hyps.into_iter().collect();
    hyps.into_iter().rev().fold(concl, |acc, h| MetaProp::implies(h, acc))
}

fn forall(vs: &[VarId], body: MetaProp) -> MetaProp {
    vs.iter().rev().fold(body, |acc, &v| MetaProp::all(v, acc))
}

fn equiv(vs: &[VarId], lhs: MetaFm, rhs: MetaFm) -> MetaProp {
    forall(vs, MetaProp::EquivFm(lhs, rhs))
}

impl Sigma {
    pub fn new(theory: Theory) -> Self {
        let fls = lit(Literal::fls());
        let mut ax: BTreeMap<&'static str, MetaProp> = BTreeMap::new();

        ax.insert("refl", forall(&[X], lit(Literal::le(X, X))));
        ax.insert(
            "trans",
            forall(
                &[X, Y, Z],
                imp([lit(Literal::le(X, Y)), lit(Literal::le(Y, Z))], lit(Literal::le(X, Z))),
            ),
        );
        ax.insert(
            "antisym",
            forall(
                &[X, Y],
                imp([lit(Literal::le(X, Y)), lit(Literal::le(Y, X))], lit(Literal::eq(X, Y))),
            ),
        );
        ax.insert("eqe1", forall(&[X, Y], imp([lit(Literal::eq(X, Y))], lit(Literal::le(X, Y)))));
        ax.insert("eqe2", forall(&[X, Y], imp([lit(Literal::eq(X, Y))], lit(Literal::le(Y, X)))));
        ax.insert(
            "contr_le",
            forall(
                &[X, Y],
                imp([lit(Literal::le(X, Y).negate()), lit(Literal::le(X, Y))], fls.clone()),
            ),
        );
        ax.insert(
            "contr_eq",
            forall(
                &[X, Y],
                imp([lit(Literal::eq(X, Y).negate()), lit(Literal::eq(X, Y))], fls),
            ),
        );

        ax.insert(
            "conje",
            forall(
                &[A, B, P],
                imp(
                    [
                        MetaProp::FmP(Formula::and(mv(A), mv(B))),
                        imp([fm(A), fm(B)], fm(P)),
                    ],
                    fm(P),
                ),
            ),
        );
        ax.insert(
            "disje",
            forall(
                &[A, B, P],
                imp(
                    [
                        MetaProp::FmP(Formula::or(mv(A), mv(B))),
                        imp([fm(A)], fm(P)),
                        imp([fm(B)], fm(P)),
                    ],
                    fm(P),
                ),
            ),
        );

        ax.insert(
            "lessle",
            equiv(
                &[X, Y],
                at(Literal::lt(X, Y)),
                Formula::and(at(Literal::le(X, Y)), at(Literal::eq(X, Y).negate())),
            ),
        );
        ax.insert(
            "nlessle",
            equiv(
                &[X, Y],
                at(Literal::lt(X, Y).negate()),
                Formula::or(at(Literal::le(X, Y).negate()), at(Literal::eq(X, Y))),
            ),
        );
        ax.insert("allconv", equiv(&[A], mv(A), mv(A)));
        ax.insert(
            "negneg",
            equiv(&[A], Formula::neg(Formula::neg(mv(A))), mv(A)),
        );
        ax.insert(
            "negand",
            equiv(
                &[A, B],
                Formula::neg(Formula::and(mv(A), mv(B))),
                Formula::or(Formula::neg(mv(A)), Formula::neg(mv(B))),
            ),
        );
        ax.insert(
            "negor",
            equiv(
                &[A, B],
                Formula::neg(Formula::or(mv(A), mv(B))),
                Formula::and(Formula::neg(mv(A)), Formula::neg(mv(B))),
            ),
        );
        ax.insert(
            "andorl",
            equiv(
                &[A, B, C],
                Formula::and(Formula::or(mv(A), mv(B)), mv(C)),
                Formula::or(Formula::and(mv(A), mv(C)), Formula::and(mv(B), mv(C))),
            ),
        );
        ax.insert(
            "andorr",
            equiv(
                &[A, B, C],
                Formula::and(mv(A), Formula::or(mv(B), mv(C))),
                Formula::or(Formula::and(mv(A), mv(B)), Formula::and(mv(A), mv(C))),
            ),
        );

        if theory == Theory::Linear {
            ax.insert(
                "nle",
                equiv(
                    &[X, Y],
                    at(Literal::le(X, Y).negate()),
                    Formula::and(at(Literal::eq(X, Y).negate()), at(Literal::le(Y, X))),
                ),
            );
            ax.insert(
                "nless",
                equiv(&[X, Y], at(Literal::lt(X, Y).negate()), at(Literal::le(Y, X))),
            );
        }
        Sigma { theory, axioms: ax }
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn get(&self, name: &str) -> Option<&MetaProp> {
        self.axioms.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &MetaProp)> {
        self.axioms.iter().map(|(k, v)| (*k, v))
    }
}
