//! Structured certificates and the trusted checker.
//!
//! Three layers: [`CertProof`] proves literals from a set of literal
//! assumptions, [`ConvProof`] certifies equivalence rewrites of formulas, and
//! [`PropProof`] combines both into refutations of formulas. The checker in
//! this module is the trust root: it depends only on [`crate::lang`].

pub(crate) mod text;

use std::collections::HashSet;

use thiserror::Error;

use crate::lang::{Formula, Literal, OrderAtom, Theory, VarId};

pub use text::{parse_cert, parse_conv, parse_formula, serialize_cert, serialize_conv,
    serialize_formula, SyntaxError};

/// Atom-level proof term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CertProof {
    AssmP(Literal),
    ReflP(VarId),
    TransP(Box<CertProof>, Box<CertProof>),
    AntisymP(Box<CertProof>, Box<CertProof>),
    EQE1P(Literal),
    EQE2P(Literal),
    ContrP(Literal, Box<CertProof>),
}

impl CertProof {
    pub fn trans(p: CertProof, q: CertProof) -> Self {
        CertProof::TransP(Box::new(p), Box::new(q))
    }

    pub fn antisym(p: CertProof, q: CertProof) -> Self {
        CertProof::AntisymP(Box::new(p), Box::new(q))
    }

    pub fn contr(l: Literal, p: CertProof) -> Self {
        CertProof::ContrP(l, Box::new(p))
    }

    pub fn size(&self) -> usize {
        match self {
            CertProof::TransP(p, q) | CertProof::AntisymP(p, q) => 1 + p.size() + q.size(),
            CertProof::ContrP(_, p) => 1 + p.size(),
            _ => 1,
        }
    }

    /// The literal this proof would conclude if it were valid. Total on
    /// every input; the checker is what establishes validity.
    pub fn claimed(&self) -> Literal {
        match self {
            CertProof::AssmP(l) => *l,
            CertProof::ReflP(x) => Literal::le(*x, *x),
            CertProof::TransP(p, q) => Literal::le(p.claimed().vars().0, q.claimed().vars().1),
            CertProof::AntisymP(p, _) => {
                let (x, y) = p.claimed().vars();
                Literal::eq(x, y)
            }
            CertProof::EQE1P(l) => {
                let (x, y) = l.vars();
                Literal::le(x, y)
            }
            CertProof::EQE2P(l) => {
                let (x, y) = l.vars();
                Literal::le(y, x)
            }
            CertProof::ContrP(..) => Literal::fls(),
        }
    }
}

/// Conversion proof: certifies `φ ≡ ψ` for the `ψ` computed by [`apply_conv`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConvProof {
    LessLe,
    NlessLe,
    NleConv,
    NlessConv,
    AtomConv(Box<ConvProof>),
    AllConv,
    ArgConv(Box<ConvProof>),
    BinopConv(Box<ConvProof>, Box<ConvProof>),
    ThenConv(Box<ConvProof>, Box<ConvProof>),
    NegAtomConv,
    NegNegConv,
    NegAndConv,
    NegOrConv,
    AndOrLConv,
    AndOrRConv,
}

impl ConvProof {
    pub fn atom(p: ConvProof) -> Self {
        ConvProof::AtomConv(Box::new(p))
    }

    pub fn arg(p: ConvProof) -> Self {
        ConvProof::ArgConv(Box::new(p))
    }

    pub fn binop(p: ConvProof, q: ConvProof) -> Self {
        ConvProof::BinopConv(Box::new(p), Box::new(q))
    }

    /// Sequencing that drops identity steps.
    pub fn then(p: ConvProof, q: ConvProof) -> Self {
        match (p, q) {
            (ConvProof::AllConv, q) => q,
            (p, ConvProof::AllConv) => p,
            (p, q) => ConvProof::ThenConv(Box::new(p), Box::new(q)),
        }
    }

    /// Congruence that collapses to `AllConv` when both sides are identities.
    pub fn binop_or_all(p: ConvProof, q: ConvProof) -> Self {
        match (p, q) {
            (ConvProof::AllConv, ConvProof::AllConv) => ConvProof::AllConv,
            (p, q) => ConvProof::binop(p, q),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ConvProof::LessLe => "lessle",
            ConvProof::NlessLe => "nlessle",
            ConvProof::NleConv => "nle",
            ConvProof::NlessConv => "nless",
            ConvProof::AtomConv(_) => "atom",
            ConvProof::AllConv => "allconv",
            ConvProof::ArgConv(_) => "arg",
            ConvProof::BinopConv(..) => "binop",
            ConvProof::ThenConv(..) => "then",
            ConvProof::NegAtomConv => "negatom",
            ConvProof::NegNegConv => "negneg",
            ConvProof::NegAndConv => "negand",
            ConvProof::NegOrConv => "negor",
            ConvProof::AndOrLConv => "andorl",
            ConvProof::AndOrRConv => "andorr",
        }
    }

    /// True if some rule in the proof is only sound over linear orders.
    pub fn needs_linear(&self) -> bool {
        match self {
            ConvProof::NleConv | ConvProof::NlessConv => true,
            ConvProof::AtomConv(p) | ConvProof::ArgConv(p) => p.needs_linear(),
            ConvProof::BinopConv(p, q) | ConvProof::ThenConv(p, q) => {
                p.needs_linear() || q.needs_linear()
            }
            _ => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ConvProof::AtomConv(p) | ConvProof::ArgConv(p) => 1 + p.size(),
            ConvProof::BinopConv(p, q) | ConvProof::ThenConv(p, q) => 1 + p.size() + q.size(),
            _ => 1,
        }
    }
}

/// Propositional proof term over formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PropProof {
    Lift(CertProof),
    ConjE(Formula, Formula, Box<PropProof>),
    DisjE(Formula, Formula, Box<PropProof>, Box<PropProof>),
    ConvRule(Formula, ConvProof, Box<PropProof>),
}

impl PropProof {
    pub fn conj_e(c: Formula, d: Formula, p: PropProof) -> Self {
        PropProof::ConjE(c, d, Box::new(p))
    }

    pub fn disj_e(c: Formula, d: Formula, p: PropProof, q: PropProof) -> Self {
        PropProof::DisjE(c, d, Box::new(p), Box::new(q))
    }

    pub fn conv(src: Formula, cp: ConvProof, p: PropProof) -> Self {
        PropProof::ConvRule(src, cp, Box::new(p))
    }

    /// Node count over all embedded proof and formula trees.
    pub fn size(&self) -> usize {
        match self {
            PropProof::Lift(p) => 1 + p.size(),
            PropProof::ConjE(c, d, p) => 1 + c.size() + d.size() + p.size(),
            PropProof::DisjE(c, d, p, q) => 1 + c.size() + d.size() + p.size() + q.size(),
            PropProof::ConvRule(f, cp, p) => 1 + f.size() + cp.size() + p.size(),
        }
    }

    /// The formula this proof would conclude if valid.
    pub fn claimed(&self) -> Formula {
        match self {
            PropProof::Lift(q) => Formula::Atom(q.claimed()),
            PropProof::ConjE(_, _, p) | PropProof::ConvRule(_, _, p) => p.claimed(),
            PropProof::DisjE(_, _, p, _) => p.claimed(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("assumption {0} is not available")]
    MissingAssumption(Literal),
    #[error("{rule}: expected {expected}, found {found}")]
    WrongShape {
        rule: &'static str,
        expected: &'static str,
        found: Literal,
    },
    #[error("trans: middle variables differ ({left} vs {right})")]
    VariableMismatch { left: VarId, right: VarId },
    #[error("antisym: {first} and {second} are not converse")]
    NotConverse { first: Literal, second: Literal },
    #[error("contr: literal {0} must be negative")]
    PositiveContr(Literal),
    #[error("contr: premise proves {found}, needed {expected}")]
    PolarityMismatch { expected: Literal, found: Literal },
    #[error("formula {0} is not in the context")]
    MissingFormula(Formula),
    #[error("disje: branches prove {0} and {1}")]
    BranchMismatch(Formula, Formula),
    #[error("conversion failed: {0}")]
    Conversion(#[from] ConvError),
    #[error("conversion uses {0}, which needs the linear theory")]
    LinearOnly(&'static str),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("rule {rule} does not apply to {node}")]
pub struct ConvError {
    pub rule: &'static str,
    pub node: Formula,
}

/// Checks an atom-level proof under the literal assumptions `assms`,
/// returning the literal it proves.
pub fn check_atom_proof(assms: &HashSet<Literal>, p: &CertProof) -> Result<Literal, CheckError> {
    let require = |l: &Literal| {
        if assms.contains(l) {
            Ok(())
        } else {
            Err(CheckError::MissingAssumption(*l))
        }
    };
    match p {
        CertProof::AssmP(l) => {
            match (l.pos, l.atom) {
                (true, OrderAtom::Le(..)) => {}
                _ => {
                    return Err(CheckError::WrongShape {
                        rule: "assm",
                        expected: "a positive <= literal",
                        found: *l,
                    })
                }
            }
            require(l)?;
            Ok(*l)
        }
        CertProof::ReflP(x) => Ok(Literal::le(*x, *x)),
        CertProof::TransP(p1, p2) => {
            let (x, y) = expect_le("trans", check_atom_proof(assms, p1)?)?;
            let (y2, z) = expect_le("trans", check_atom_proof(assms, p2)?)?;
            if y != y2 {
                return Err(CheckError::VariableMismatch { left: y, right: y2 });
            }
            Ok(Literal::le(x, z))
        }
        CertProof::AntisymP(p1, p2) => {
            let first = check_atom_proof(assms, p1)?;
            let second = check_atom_proof(assms, p2)?;
            let (x, y) = expect_le("antisym", first)?;
            let (y2, x2) = expect_le("antisym", second)?;
            if (x, y) != (x2, y2) {
                return Err(CheckError::NotConverse { first, second });
            }
            Ok(Literal::eq(x, y))
        }
        CertProof::EQE1P(l) | CertProof::EQE2P(l) => {
            let (x, y) = match (l.pos, l.atom) {
                (true, OrderAtom::Eq(x, y)) => (x, y),
                _ => {
                    return Err(CheckError::WrongShape {
                        rule: "eqe",
                        expected: "a positive = literal",
                        found: *l,
                    })
                }
            };
            require(l)?;
            Ok(if matches!(p, CertProof::EQE1P(_)) {
                Literal::le(x, y)
            } else {
                Literal::le(y, x)
            })
        }
        CertProof::ContrP(l, q) => {
            if l.pos {
                return Err(CheckError::PositiveContr(*l));
            }
            require(l)?;
            let found = check_atom_proof(assms, q)?;
            let expected = l.negate();
            if found != expected {
                return Err(CheckError::PolarityMismatch { expected, found });
            }
            Ok(Literal::fls())
        }
    }
}

fn expect_le(rule: &'static str, l: Literal) -> Result<(VarId, VarId), CheckError> {
    match (l.pos, l.atom) {
        (true, OrderAtom::Le(x, y)) => Ok((x, y)),
        _ => Err(CheckError::WrongShape {
            rule,
            expected: "a positive <= conclusion",
            found: l,
        }),
    }
}

/// Rewrites `f` by the conversion `c`. The rule at the root must match the
/// shape of `f`.
pub fn apply_conv(c: &ConvProof, f: &Formula) -> Result<Formula, ConvError> {
    use Formula as F;
    let fail = || ConvError {
        rule: c.name(),
        node: f.clone(),
    };
    let lit = |l: Literal| F::Atom(l);
    match c {
        ConvProof::AllConv => Ok(f.clone()),
        ConvProof::LessLe => match f {
            F::Atom(Literal { pos: true, atom: OrderAtom::Lt(x, y) }) => Ok(F::and(
                lit(Literal::le(*x, *y)),
                lit(Literal::eq(*x, *y).negate()),
            )),
            _ => Err(fail()),
        },
        ConvProof::NlessLe => match f {
            F::Atom(Literal { pos: false, atom: OrderAtom::Lt(x, y) }) => Ok(F::or(
                lit(Literal::le(*x, *y).negate()),
                lit(Literal::eq(*x, *y)),
            )),
            _ => Err(fail()),
        },
        ConvProof::NleConv => match f {
            F::Atom(Literal { pos: false, atom: OrderAtom::Le(x, y) }) => Ok(F::and(
                lit(Literal::eq(*x, *y).negate()),
                lit(Literal::le(*y, *x)),
            )),
            _ => Err(fail()),
        },
        ConvProof::NlessConv => match f {
            F::Atom(Literal { pos: false, atom: OrderAtom::Lt(x, y) }) => {
                Ok(lit(Literal::le(*y, *x)))
            }
            _ => Err(fail()),
        },
        ConvProof::AtomConv(p) => match f {
            F::Atom(_) => apply_conv(p, f),
            _ => Err(fail()),
        },
        ConvProof::ArgConv(p) => match f {
            F::Neg(a) => Ok(F::neg(apply_conv(p, a)?)),
            _ => Err(fail()),
        },
        ConvProof::BinopConv(p, q) => match f {
            F::And(a, b) => Ok(F::and(apply_conv(p, a)?, apply_conv(q, b)?)),
            F::Or(a, b) => Ok(F::or(apply_conv(p, a)?, apply_conv(q, b)?)),
            _ => Err(fail()),
        },
        ConvProof::ThenConv(p, q) => apply_conv(q, &apply_conv(p, f)?),
        ConvProof::NegAtomConv => match f {
            F::Neg(a) => match &**a {
                F::Atom(l) => Ok(F::Atom(l.negate())),
                _ => Err(fail()),
            },
            _ => Err(fail()),
        },
        ConvProof::NegNegConv => match f {
            F::Neg(a) => match &**a {
                F::Neg(b) => Ok((**b).clone()),
                _ => Err(fail()),
            },
            _ => Err(fail()),
        },
        ConvProof::NegAndConv => match f {
            F::Neg(a) => match &**a {
                F::And(b, c) => Ok(F::or(F::neg((**b).clone()), F::neg((**c).clone()))),
                _ => Err(fail()),
            },
            _ => Err(fail()),
        },
        ConvProof::NegOrConv => match f {
            F::Neg(a) => match &**a {
                F::Or(b, c) => Ok(F::and(F::neg((**b).clone()), F::neg((**c).clone()))),
                _ => Err(fail()),
            },
            _ => Err(fail()),
        },
        ConvProof::AndOrLConv => match f {
            F::And(ab, c) => match &**ab {
                F::Or(a, b) => Ok(F::or(
                    F::and((**a).clone(), (**c).clone()),
                    F::and((**b).clone(), (**c).clone()),
                )),
                _ => Err(fail()),
            },
            _ => Err(fail()),
        },
        ConvProof::AndOrRConv => match f {
            F::And(a, bc) => match &**bc {
                F::Or(b, c) => Ok(F::or(
                    F::and((**a).clone(), (**b).clone()),
                    F::and((**a).clone(), (**c).clone()),
                )),
                _ => Err(fail()),
            },
            _ => Err(fail()),
        },
    }
}

/// Checks a propositional proof under the formula context `ctx`, returning
/// the formula it proves. Linear-only conversions are rejected unless
/// `theory` is [`Theory::Linear`].
pub fn check_prop_proof(
    ctx: &[Formula],
    p: &PropProof,
    theory: Theory,
) -> Result<Formula, CheckError> {
    let mut stack = ctx.to_vec();
    check_prop(&mut stack, p, theory)
}

/// Convenience wrapper: does `p` refute `root` on its own?
pub fn refutes(root: &Formula, p: &PropProof, theory: Theory) -> Result<(), CheckError> {
    let concl = check_prop_proof(std::slice::from_ref(root), p, theory)?;
    if concl == Formula::Atom(Literal::fls()) {
        Ok(())
    } else {
        Err(CheckError::WrongShape {
            rule: "root",
            expected: "a proof of Fls",
            found: match concl {
                Formula::Atom(l) => l,
                _ => Literal::fls().negate(),
            },
        })
    }
}

fn check_prop(
    ctx: &mut Vec<Formula>,
    p: &PropProof,
    theory: Theory,
) -> Result<Formula, CheckError> {
    let require = |ctx: &Vec<Formula>, f: Formula| {
        if ctx.contains(&f) {
            Ok(())
        } else {
            Err(CheckError::MissingFormula(f))
        }
    };
    match p {
        PropProof::Lift(q) => {
            let atoms: HashSet<Literal> = ctx
                .iter()
                .filter_map(|f| match f {
                    Formula::Atom(l) => Some(*l),
                    _ => None,
                })
                .collect();
            Ok(Formula::Atom(check_atom_proof(&atoms, q)?))
        }
        PropProof::ConjE(c, d, q) => {
            require(ctx, Formula::and(c.clone(), d.clone()))?;
            with_assumptions(ctx, [c.clone(), d.clone()], |ctx| check_prop(ctx, q, theory))
        }
        PropProof::DisjE(c, d, q1, q2) => {
            require(ctx, Formula::or(c.clone(), d.clone()))?;
            let left = with_assumptions(ctx, [c.clone()], |ctx| check_prop(ctx, q1, theory))?;
            let right = with_assumptions(ctx, [d.clone()], |ctx| check_prop(ctx, q2, theory))?;
            if left != right {
                return Err(CheckError::BranchMismatch(left, right));
            }
            Ok(left)
        }
        PropProof::ConvRule(src, cp, q) => {
            require(ctx, src.clone())?;
            if theory == Theory::Partial && cp.needs_linear() {
                let rule = if contains_rule(cp, &ConvProof::NleConv) { "nle" } else { "nless" };
                return Err(CheckError::LinearOnly(rule));
            }
            let target = apply_conv(cp, src)?;
            with_assumptions(ctx, [target], |ctx| check_prop(ctx, q, theory))
        }
    }
}

fn contains_rule(cp: &ConvProof, rule: &ConvProof) -> bool {
    if cp == rule {
        return true;
    }
    match cp {
        ConvProof::AtomConv(p) | ConvProof::ArgConv(p) => contains_rule(p, rule),
        ConvProof::BinopConv(p, q) | ConvProof::ThenConv(p, q) => {
            contains_rule(p, rule) || contains_rule(q, rule)
        }
        _ => false,
    }
}

fn with_assumptions<T, const N: usize>(
    ctx: &mut Vec<Formula>,
    extra: [Formula; N],
    body: impl FnOnce(&mut Vec<Formula>) -> T,
) -> T {
    let mark = ctx.len();
    ctx.extend(extra);
    let out = body(ctx);
    ctx.truncate(mark);
    out
}
