//! Certified formula rewriting: strict-literal elimination per theory,
//! negation normal form and distribution into DNF. Every rewrite comes with a
//! [`ConvProof`] that [`apply_conv`](crate::certs::apply_conv) replays.

use thiserror::Error;

use crate::certs::ConvProof;
use crate::lang::{Formula, Literal, OrderAtom, Theory};

fn atom(l: Literal) -> Formula {
    Formula::Atom(l)
}

/// Strict-literal elimination that is valid in every partial order.
pub fn deless_partial(l: &Literal) -> Formula {
    match (l.pos, l.atom) {
        (true, OrderAtom::Lt(x, y)) => {
            Formula::and(atom(Literal::le(x, y)), atom(Literal::eq(x, y).negate()))
        }
        (false, OrderAtom::Lt(x, y)) => {
            Formula::or(atom(Literal::le(x, y).negate()), atom(Literal::eq(x, y)))
        }
        _ => atom(*l),
    }
}

pub fn deless_partial_prf(l: &Literal) -> ConvProof {
    match (l.pos, l.atom) {
        (true, OrderAtom::Lt(..)) => ConvProof::LessLe,
        (false, OrderAtom::Lt(..)) => ConvProof::NlessLe,
        _ => ConvProof::AllConv,
    }
}

/// Elimination of `<` and `≰` that relies on totality. Produces no `Or`.
pub fn deless_linear(l: &Literal) -> Formula {
    match (l.pos, l.atom) {
        (true, OrderAtom::Lt(x, y)) => {
            Formula::and(atom(Literal::le(x, y)), atom(Literal::eq(x, y).negate()))
        }
        (false, OrderAtom::Le(x, y)) => {
            Formula::and(atom(Literal::eq(x, y).negate()), atom(Literal::le(y, x)))
        }
        (false, OrderAtom::Lt(x, y)) => atom(Literal::le(y, x)),
        _ => atom(*l),
    }
}

pub fn deless_linear_prf(l: &Literal) -> ConvProof {
    match (l.pos, l.atom) {
        (true, OrderAtom::Lt(..)) => ConvProof::LessLe,
        (false, OrderAtom::Le(..)) => ConvProof::NleConv,
        (false, OrderAtom::Lt(..)) => ConvProof::NlessConv,
        _ => ConvProof::AllConv,
    }
}

pub fn deless(theory: Theory) -> fn(&Literal) -> Formula {
    match theory {
        Theory::Partial => deless_partial,
        Theory::Linear => deless_linear,
    }
}

pub fn deless_prf(theory: Theory) -> fn(&Literal) -> ConvProof {
    match theory {
        Theory::Partial => deless_partial_prf,
        Theory::Linear => deless_linear_prf,
    }
}

pub fn amap_fm(f: impl Fn(&Literal) -> Formula, phi: &Formula) -> Formula {
    phi.amap(&mut |l| f(l))
}

/// Conversion proof for `amap_fm` given per-atom conversions.
pub fn amap_fm_prf(ap: impl Fn(&Literal) -> ConvProof + Copy, phi: &Formula) -> ConvProof {
    match phi {
        Formula::Atom(a) => ConvProof::atom(ap(a)),
        Formula::And(a, b) | Formula::Or(a, b) => {
            ConvProof::binop(amap_fm_prf(ap, a), amap_fm_prf(ap, b))
        }
        Formula::Neg(a) => ConvProof::arg(amap_fm_prf(ap, a)),
    }
}

/// Negation normal form. Subformulas are normalized first, then the
/// enclosing negation is pushed through the already-normal result.
pub fn to_nnf(phi: &Formula) -> (Formula, ConvProof) {
    match phi {
        Formula::Atom(_) => (phi.clone(), ConvProof::AllConv),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (a2, pa) = to_nnf(a);
            let (b2, pb) = to_nnf(b);
            let f = if matches!(phi, Formula::And(..)) {
                Formula::and(a2, b2)
            } else {
                Formula::or(a2, b2)
            };
            (f, ConvProof::binop_or_all(pa, pb))
        }
        Formula::Neg(inner) => {
            let (n, pn) = to_nnf(inner);
            let (f, push) = push_neg(&n);
            let lift = match pn {
                ConvProof::AllConv => ConvProof::AllConv,
                p => ConvProof::arg(p),
            };
            (f, ConvProof::then(lift, push))
        }
    }
}

/// Rewrites `Neg(n)` for an NNF formula `n` into NNF.
fn push_neg(n: &Formula) -> (Formula, ConvProof) {
    match n {
        Formula::Atom(l) => (atom(l.negate()), ConvProof::NegAtomConv),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (a2, pa) = push_neg(a);
            let (b2, pb) = push_neg(b);
            let (f, step) = if matches!(n, Formula::And(..)) {
                (Formula::or(a2, b2), ConvProof::NegAndConv)
            } else {
                (Formula::and(a2, b2), ConvProof::NegOrConv)
            };
            (f, ConvProof::then(step, ConvProof::binop(pa, pb)))
        }
        Formula::Neg(_) => unreachable!("push_neg expects negation normal form"),
    }
}

/// Distributes an NNF formula into DNF.
fn distribute(phi: &Formula) -> (Formula, ConvProof) {
    match phi {
        Formula::Atom(_) => (phi.clone(), ConvProof::AllConv),
        Formula::Or(a, b) => {
            let (a2, pa) = distribute(a);
            let (b2, pb) = distribute(b);
            (Formula::or(a2, b2), ConvProof::binop_or_all(pa, pb))
        }
        Formula::And(a, b) => {
            let (a2, pa) = distribute(a);
            let (b2, pb) = distribute(b);
            let (f, pd) = distribute_and(a2, b2);
            (f, ConvProof::then(ConvProof::binop_or_all(pa, pb), pd))
        }
        Formula::Neg(_) => unreachable!("distribute expects negation normal form"),
    }
}

/// `And(a, b)` for DNF operands `a` and `b`.
fn distribute_and(a: Formula, b: Formula) -> (Formula, ConvProof) {
    match (a, b) {
        (Formula::Or(a1, a2), b) => {
            let (l, pl) = distribute_and(*a1, b.clone());
            let (r, pr) = distribute_and(*a2, b);
            (
                Formula::or(l, r),
                ConvProof::then(ConvProof::AndOrLConv, ConvProof::binop_or_all(pl, pr)),
            )
        }
        (a, Formula::Or(b1, b2)) => {
            let (l, pl) = distribute_and(a.clone(), *b1);
            let (r, pr) = distribute_and(a, *b2);
            (
                Formula::or(l, r),
                ConvProof::then(ConvProof::AndOrRConv, ConvProof::binop_or_all(pl, pr)),
            )
        }
        (a, b) => (Formula::and(a, b), ConvProof::AllConv),
    }
}

/// Converts to DNF: an `Or`-tree of clauses, each an `And`-tree of atoms.
/// No clause deduplication or simplification happens.
pub fn to_dnf(phi: &Formula) -> (Formula, ConvProof) {
    let (n, pn) = to_nnf(phi);
    let (d, pd) = distribute(&n);
    (d, ConvProof::then(pn, pd))
}

pub fn is_clause(phi: &Formula) -> bool {
    match phi {
        Formula::Atom(_) => true,
        Formula::And(a, b) => is_clause(a) && is_clause(b),
        _ => false,
    }
}

pub fn is_dnf(phi: &Formula) -> bool {
    match phi {
        Formula::Or(a, b) => is_dnf(a) && is_dnf(b),
        _ => is_clause(phi),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("not a conjunction of atoms: {0}")]
pub struct NotAClause(pub Formula);

/// In-order atom leaves of a pure conjunction.
pub fn conj_list(phi: &Formula) -> Result<Vec<Literal>, NotAClause> {
    fn go(f: &Formula, out: &mut Vec<Literal>, root: &Formula) -> Result<(), NotAClause> {
        match f {
            Formula::Atom(l) => out.push(*l),
            Formula::And(a, b) => {
                go(a, out, root)?;
                go(b, out, root)?;
            }
            _ => return Err(NotAClause(root.clone())),
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(phi, &mut out, phi)?;
    Ok(out)
}

/// Maximal non-`Or` subtrees, left to right.
pub fn disj_clauses(phi: &Formula) -> Vec<&Formula> {
    fn go<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
        match f {
            Formula::Or(a, b) => {
                go(a, out);
                go(b, out);
            }
            _ => out.push(f),
        }
    }
    let mut out = Vec::new();
    go(phi, &mut out);
    out
}
