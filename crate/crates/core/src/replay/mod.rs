//! Generic proof terms and their replay checker.
//!
//! Certificates from [`crate::certs`] can be compiled by [`export`] into a
//! small, uniform proof-term language ([`GPrf`]) whose only inference rules
//! are implication introduction/elimination, universal instantiation,
//! hypothesis lookup, axiom lookup in an environment [`Sigma`], and
//! conversion. [`replay`] checks such terms without knowing anything about
//! the structured rule set.

mod sigma;
mod text;

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::certs::{CertProof, ConvProof, PropProof};
use crate::lang::{Formula, Literal, OrderAtom, VarId};

pub use sigma::{Sigma, SCHEMA_VAR_BASE};
pub use text::{parse_gprf, parse_gtrm, serialize_gprf, serialize_gtrm};

/// Simple terms: constants, application and object variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GTrm {
    Const(Cow<'static, str>),
    App(Box<GTrm>, Box<GTrm>),
    Var(VarId),
}

impl GTrm {
    pub fn constant(name: &'static str) -> Self {
        GTrm::Const(Cow::Borrowed(name))
    }

    pub fn app(f: GTrm, a: GTrm) -> Self {
        GTrm::App(Box::new(f), Box::new(a))
    }

    fn mentions(&self, v: VarId) -> bool {
        match self {
            GTrm::Const(_) => false,
            GTrm::Var(w) => *w == v,
            GTrm::App(f, a) => f.mentions(v) || a.mentions(v),
        }
    }
}

/// Proof terms. Bound hypotheses are referred to by their proposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GPrf {
    PThm(String),
    Bound(GTrm),
    AppP(Box<GPrf>, Box<GPrf>),
    AbsP(GTrm, Box<GPrf>),
    Appt(Box<GPrf>, GTrm),
    ConvP(GTrm, Box<GPrf>, Box<GPrf>),
}

impl GPrf {
    pub fn thm(name: &str) -> Self {
        GPrf::PThm(name.to_owned())
    }

    pub fn app(p: GPrf, q: GPrf) -> Self {
        GPrf::AppP(Box::new(p), Box::new(q))
    }

    pub fn abs(t: GTrm, p: GPrf) -> Self {
        GPrf::AbsP(t, Box::new(p))
    }

    pub fn appt(p: GPrf, t: GTrm) -> Self {
        GPrf::Appt(Box::new(p), t)
    }

    pub fn conv(t: GTrm, cp: GPrf, p: GPrf) -> Self {
        GPrf::ConvP(t, Box::new(cp), Box::new(p))
    }

    /// `name t1 .. tn` applied to hypotheses `h1 .. hm`.
    fn rule(name: &str, terms: impl IntoIterator<Item = GTrm>, hyps: impl IntoIterator<Item = GPrf>) -> Self {
        let inst = terms.into_iter().fold(GPrf::thm(name), GPrf::appt);
        hyps.into_iter().fold(inst, GPrf::app)
    }

    pub fn size(&self) -> usize {
        match self {
            GPrf::PThm(_) | GPrf::Bound(_) => 1,
            GPrf::AppP(p, q) => 1 + p.size() + q.size(),
            GPrf::AbsP(_, p) | GPrf::Appt(p, _) => 1 + p.size(),
            GPrf::ConvP(_, c, p) => 1 + c.size() + p.size(),
        }
    }
}

/// Atom of a schematic formula: a literal, or a formula-valued meta-variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MetaAtom {
    Lit(Literal),
    Var(VarId),
}

pub type MetaFm = Formula<MetaAtom>;

/// Meta-level propositions. `FmP(Atom(Lit l))` never occurs: the smart
/// constructors normalize it to `LitP(l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MetaProp {
    LitP(Literal),
    FmP(MetaFm),
    Implies(Box<MetaProp>, Box<MetaProp>),
    All(VarId, Box<MetaProp>),
    EquivFm(MetaFm, MetaFm),
}

impl MetaProp {
    pub fn fm(f: MetaFm) -> Self {
        match f {
            Formula::Atom(MetaAtom::Lit(l)) => MetaProp::LitP(l),
            f => MetaProp::FmP(f),
        }
    }

    pub fn formula(f: &Formula) -> Self {
        MetaProp::fm(lift_fm(f))
    }

    pub fn implies(a: MetaProp, b: MetaProp) -> Self {
        MetaProp::Implies(Box::new(a), Box::new(b))
    }

    pub fn all(x: VarId, body: MetaProp) -> Self {
        MetaProp::All(x, Box::new(body))
    }

    pub fn fls() -> Self {
        MetaProp::LitP(Literal::fls())
    }

    /// The ground formula this proposition denotes, if it is one.
    pub fn as_formula(&self) -> Option<Formula> {
        match self {
            MetaProp::LitP(l) => Some(Formula::Atom(*l)),
            MetaProp::FmP(f) => ground_fm(f),
            _ => None,
        }
    }

    fn occurs_free(&self, x: VarId) -> bool {
        match self {
            MetaProp::LitP(l) => lit_mentions(*l, x),
            MetaProp::FmP(f) => fm_mentions(f, x),
            MetaProp::Implies(a, b) => a.occurs_free(x) || b.occurs_free(x),
            MetaProp::All(y, body) => *y != x && body.occurs_free(x),
            MetaProp::EquivFm(a, b) => fm_mentions(a, x) || fm_mentions(b, x),
        }
    }
}

impl fmt::Display for MetaProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetaProp::LitP(l) => write!(f, "{l}"),
            MetaProp::FmP(m) => write_meta_fm(f, m),
            MetaProp::Implies(a, b) => write!(f, "({a} ==> {b})"),
            MetaProp::All(x, b) => write!(f, "(!!{x}. {b})"),
            MetaProp::EquivFm(a, b) => {
                f.write_str("(")?;
                write_meta_fm(f, a)?;
                f.write_str(" == ")?;
                write_meta_fm(f, b)?;
                f.write_str(")")
            }
        }
    }
}

fn write_meta_fm(f: &mut fmt::Formatter<'_>, m: &MetaFm) -> fmt::Result {
    match m {
        Formula::Atom(MetaAtom::Lit(l)) => write!(f, "{l}"),
        Formula::Atom(MetaAtom::Var(v)) => write!(f, "?{}", v.0),
        Formula::And(a, b) | Formula::Or(a, b) => {
            f.write_str("(")?;
            write_meta_fm(f, a)?;
            f.write_str(if matches!(m, Formula::And(..)) { " & " } else { " | " })?;
            write_meta_fm(f, b)?;
            f.write_str(")")
        }
        Formula::Neg(a) => {
            f.write_str("~")?;
            write_meta_fm(f, a)
        }
    }
}

pub fn lift_fm(f: &Formula) -> MetaFm {
    f.amap(&mut |l| Formula::Atom(MetaAtom::Lit(*l)))
}

fn ground_fm(f: &MetaFm) -> Option<Formula> {
    Some(match f {
        Formula::Atom(MetaAtom::Lit(l)) => Formula::Atom(*l),
        Formula::Atom(MetaAtom::Var(_)) => return None,
        Formula::And(a, b) => Formula::and(ground_fm(a)?, ground_fm(b)?),
        Formula::Or(a, b) => Formula::or(ground_fm(a)?, ground_fm(b)?),
        Formula::Neg(a) => Formula::neg(ground_fm(a)?),
    })
}

fn lit_mentions(l: Literal, x: VarId) -> bool {
    let (a, b) = l.vars();
    a == x || b == x
}

fn fm_mentions(f: &MetaFm, x: VarId) -> bool {
    f.atoms().into_iter().any(|a| match a {
        MetaAtom::Lit(l) => lit_mentions(*l, x),
        MetaAtom::Var(v) => *v == x,
    })
}

// ---------------------------------------------------------------------------
// term encoding

pub fn encode_lit(l: Literal) -> GTrm {
    let (x, y) = l.vars();
    let base = GTrm::app(
        GTrm::app(GTrm::constant(l.atom.kind_name()), GTrm::Var(x)),
        GTrm::Var(y),
    );
    if l.pos {
        base
    } else {
        GTrm::app(GTrm::constant("not"), base)
    }
}

pub fn encode_fm(f: &Formula) -> GTrm {
    match f {
        Formula::Atom(l) => GTrm::app(GTrm::constant("atom"), encode_lit(*l)),
        Formula::And(a, b) => GTrm::app(GTrm::app(GTrm::constant("and"), encode_fm(a)), encode_fm(b)),
        Formula::Or(a, b) => GTrm::app(GTrm::app(GTrm::constant("or"), encode_fm(a)), encode_fm(b)),
        Formula::Neg(a) => GTrm::app(GTrm::constant("not"), encode_fm(a)),
    }
}

fn as_const(t: &GTrm) -> Option<&str> {
    match t {
        GTrm::Const(c) => Some(c.as_ref()),
        _ => None,
    }
}

fn as_var(t: &GTrm) -> Option<VarId> {
    match t {
        GTrm::Var(v) => Some(*v),
        _ => None,
    }
}

/// Decodes a literal term. `fls` is accepted as the canonical false literal.
pub fn decode_lit(t: &GTrm) -> Result<Literal, ReplayError> {
    let bad = || ReplayError::BadTerm(t.clone(), "literal");
    if as_const(t) == Some("fls") {
        return Ok(Literal::fls());
    }
    let GTrm::App(f, y) = t else { return Err(bad()) };
    if as_const(f) == Some("not") {
        let inner = decode_lit(y)?;
        return if inner.pos { Ok(inner.negate()) } else { Err(bad()) };
    }
    let GTrm::App(k, x) = &**f else { return Err(bad()) };
    let (x, y) = (as_var(x).ok_or_else(bad)?, as_var(y).ok_or_else(bad)?);
    let atom = match as_const(k) {
        Some("le") => OrderAtom::Le(x, y),
        Some("lt") => OrderAtom::Lt(x, y),
        Some("eq") => OrderAtom::Eq(x, y),
        _ => return Err(bad()),
    };
    Ok(Literal::new(true, atom))
}

pub fn decode_fm(t: &GTrm) -> Result<Formula, ReplayError> {
    let bad = || ReplayError::BadTerm(t.clone(), "formula");
    let GTrm::App(f, a) = t else { return Err(bad()) };
    match as_const(f) {
        Some("atom") => return Ok(Formula::Atom(decode_lit(a)?)),
        Some("not") => return Ok(Formula::neg(decode_fm(a)?)),
        _ => {}
    }
    let GTrm::App(op, l) = &**f else { return Err(bad()) };
    match as_const(op) {
        Some("and") => Ok(Formula::and(decode_fm(l)?, decode_fm(a)?)),
        Some("or") => Ok(Formula::or(decode_fm(l)?, decode_fm(a)?)),
        _ => Err(bad()),
    }
}

// ---------------------------------------------------------------------------
// checking

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("unknown constant {0}")]
    UnknownConstant(String),
    #[error("no hypothesis for {0:?}")]
    Unbound(GTrm),
    #[error("expected an implication, found {0}")]
    NotImplication(MetaProp),
    #[error("premise mismatch: needed {expected}, got {found}")]
    PremiseMismatch { expected: MetaProp, found: MetaProp },
    #[error("term application to non-quantified {0}")]
    NotForall(MetaProp),
    #[error("term {0:?} is not a valid {1}")]
    BadTerm(GTrm, &'static str),
    #[error("substitution would capture bound variable {0}")]
    Capture(VarId),
    #[error("conversion {rule} does not apply to {node}")]
    Conversion { rule: String, node: Formula },
    #[error("{0} is not a conversion")]
    NotAConversion(String),
    #[error("replay concluded {0} instead of Fls")]
    NotARefutation(MetaProp),
}

/// Hypotheses, keyed by the formula their term decodes to, so that
/// different encodings of the same formula (`fls` vs `0 != 0`) coincide.
#[derive(Clone, Debug, Default)]
pub struct Context {
    entries: Vec<(Key, MetaProp)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Key {
    Fm(Formula),
    Raw(GTrm),
}

fn key(t: &GTrm) -> Key {
    decode_fm(t).map_or_else(|_| Key::Raw(t.clone()), Key::Fm)
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    /// Context holding the single formula `root`.
    pub fn with_root(root: &Formula) -> Self {
        let mut c = Context::new();
        c.insert_formula(root.clone());
        c
    }

    pub fn insert(&mut self, t: GTrm, prop: MetaProp) {
        self.entries.push((key(&t), prop));
    }

    fn insert_formula(&mut self, f: Formula) {
        let prop = MetaProp::formula(&f);
        self.entries.push((Key::Fm(f), prop));
    }

    pub fn lookup(&self, t: &GTrm) -> Option<&MetaProp> {
        let k = key(t);
        self.entries.iter().rev().find(|(e, _)| *e == k).map(|(_, p)| p)
    }

    fn truncate(&mut self, len: usize) {
        self.entries.truncate(len);
    }
}

/// Replays `p` under hypotheses `ctx` and axioms `sigma`, returning the
/// proposition it proves.
pub fn replay(sigma: &Sigma, ctx: &Context, p: &GPrf) -> Result<MetaProp, ReplayError> {
    let mut ctx = ctx.clone();
    replay_in(sigma, &mut ctx, p)
}

fn replay_in(sigma: &Sigma, ctx: &mut Context, p: &GPrf) -> Result<MetaProp, ReplayError> {
    match p {
        GPrf::PThm(c) => sigma
            .get(c)
            .cloned()
            .ok_or_else(|| ReplayError::UnknownConstant(c.clone())),
        GPrf::Bound(t) => ctx
            .lookup(t)
            .cloned()
            .ok_or_else(|| ReplayError::Unbound(t.clone())),
        GPrf::AbsP(t, q) => {
            let f = decode_fm(t)?;
            let hyp = MetaProp::formula(&f);
            let mark = ctx.entries.len();
            ctx.insert_formula(f);
            let body = replay_in(sigma, ctx, q);
            ctx.truncate(mark);
            Ok(MetaProp::implies(hyp, body?))
        }
        GPrf::AppP(f, a) => {
            let MetaProp::Implies(premise, concl) = replay_in(sigma, ctx, f)? else {
                return Err(ReplayError::NotImplication(replay_in(sigma, ctx, f)?));
            };
            let arg = replay_in(sigma, ctx, a)?;
            if *premise != arg {
                return Err(ReplayError::PremiseMismatch {
                    expected: *premise,
                    found: arg,
                });
            }
            Ok(*concl)
        }
        GPrf::Appt(f, t) => match replay_in(sigma, ctx, f)? {
            MetaProp::All(x, body) => subst(&body, x, t),
            other => Err(ReplayError::NotForall(other)),
        },
        GPrf::ConvP(src, cp, q) => {
            let prop = ctx
                .lookup(src)
                .ok_or_else(|| ReplayError::Unbound(src.clone()))?;
            let f = prop
                .as_formula()
                .ok_or_else(|| ReplayError::BadTerm(src.clone(), "ground formula"))?;
            let target = rpc(sigma, cp)?.apply(&f)?;
            let mark = ctx.entries.len();
            ctx.insert_formula(target);
            let out = replay_in(sigma, ctx, q);
            ctx.truncate(mark);
            out
        }
    }
}

/// Instantiates the bound variable `x` with the term `t`. Occurrences as an
/// order variable need `t` to be a variable; occurrences as a formula
/// meta-variable need `t` to decode to a formula.
pub fn subst(p: &MetaProp, x: VarId, t: &GTrm) -> Result<MetaProp, ReplayError> {
    let inst = match t {
        GTrm::Var(v) => Inst::Var(*v),
        _ => Inst::Fm(decode_fm(t).map(|g| lift_fm(&g))),
    };
    Subst { x, t, inst }.prop(p)
}

enum Inst {
    Var(VarId),
    Fm(Result<MetaFm, ReplayError>),
}

struct Subst<'a> {
    x: VarId,
    t: &'a GTrm,
    inst: Inst,
}

impl Subst<'_> {
    fn lit(&self, l: Literal) -> Result<Literal, ReplayError> {
        if !lit_mentions(l, self.x) {
            return Ok(l);
        }
        match self.inst {
            Inst::Var(v) => Ok(l.map_vars(|w| if w == self.x { v } else { w })),
            Inst::Fm(_) => Err(ReplayError::BadTerm(self.t.clone(), "variable")),
        }
    }

    fn fm(&self, f: &MetaFm) -> Result<MetaFm, ReplayError> {
        Ok(match f {
            Formula::Atom(MetaAtom::Lit(l)) => Formula::Atom(MetaAtom::Lit(self.lit(*l)?)),
            Formula::Atom(MetaAtom::Var(y)) if *y == self.x => match &self.inst {
                Inst::Fm(g) => g.clone()?,
                Inst::Var(_) => return Err(ReplayError::BadTerm(self.t.clone(), "formula")),
            },
            Formula::Atom(a) => Formula::Atom(a.clone()),
            Formula::And(a, b) => Formula::and(self.fm(a)?, self.fm(b)?),
            Formula::Or(a, b) => Formula::or(self.fm(a)?, self.fm(b)?),
            Formula::Neg(a) => Formula::neg(self.fm(a)?),
        })
    }

    fn prop(&self, p: &MetaProp) -> Result<MetaProp, ReplayError> {
        Ok(match p {
            MetaProp::LitP(l) => MetaProp::LitP(self.lit(*l)?),
            MetaProp::FmP(f) => MetaProp::fm(self.fm(f)?),
            MetaProp::Implies(a, b) => MetaProp::implies(self.prop(a)?, self.prop(b)?),
            MetaProp::All(y, _) if *y == self.x => p.clone(),
            MetaProp::All(y, body) => {
                if self.t.mentions(*y) && body.occurs_free(self.x) {
                    return Err(ReplayError::Capture(*y));
                }
                MetaProp::all(*y, self.prop(body)?)
            }
            MetaProp::EquivFm(a, b) => MetaProp::EquivFm(self.fm(a)?, self.fm(b)?),
        })
    }
}

// ---------------------------------------------------------------------------
// conversions

/// A formula rewriter built from conversion proof terms.
#[derive(Clone, Debug)]
pub enum Rewriter<'a> {
    Schema(&'a str, &'a MetaProp),
    NegAtom,
    Atom(Box<Rewriter<'a>>),
    Arg(Box<Rewriter<'a>>),
    Binop(Box<Rewriter<'a>>, Box<Rewriter<'a>>),
    Then(Box<Rewriter<'a>>, Box<Rewriter<'a>>),
}

/// Interprets a conversion proof term. Constants other than the
/// combinators `atom`, `arg`, `binop`, `then` and the polarity flip
/// `negatom` must name an equivalence schema in `sigma`.
pub fn rpc<'a>(sigma: &'a Sigma, cp: &'a GPrf) -> Result<Rewriter<'a>, ReplayError> {
    let not_conv = || ReplayError::NotAConversion(format!("{cp:?}"));
    match cp {
        GPrf::PThm(name) if name == "negatom" => Ok(Rewriter::NegAtom),
        GPrf::PThm(name) => {
            let schema = sigma
                .get(name)
                .ok_or_else(|| ReplayError::UnknownConstant(name.clone()))?;
            if matches!(strip_binders(schema).1, MetaProp::EquivFm(..)) {
                Ok(Rewriter::Schema(name, schema))
            } else {
                Err(ReplayError::NotAConversion(name.clone()))
            }
        }
        GPrf::AppP(f, a) => match &**f {
            GPrf::PThm(n) if n == "atom" => Ok(Rewriter::Atom(Box::new(rpc(sigma, a)?))),
            GPrf::PThm(n) if n == "arg" => Ok(Rewriter::Arg(Box::new(rpc(sigma, a)?))),
            GPrf::AppP(g, b) => match &**g {
                GPrf::PThm(n) if n == "binop" => Ok(Rewriter::Binop(
                    Box::new(rpc(sigma, b)?),
                    Box::new(rpc(sigma, a)?),
                )),
                GPrf::PThm(n) if n == "then" => Ok(Rewriter::Then(
                    Box::new(rpc(sigma, b)?),
                    Box::new(rpc(sigma, a)?),
                )),
                _ => Err(not_conv()),
            },
            _ => Err(not_conv()),
        },
        _ => Err(not_conv()),
    }
}

fn strip_binders(p: &MetaProp) -> (BTreeSet<VarId>, &MetaProp) {
    let mut binders = BTreeSet::new();
    let mut cur = p;
    while let MetaProp::All(x, body) = cur {
        binders.insert(*x);
        cur = body;
    }
    (binders, cur)
}

#[derive(Default)]
struct Match {
    vars: BTreeMap<VarId, VarId>,
    fms: BTreeMap<VarId, Formula>,
}

fn match_fm(pat: &MetaFm, f: &Formula, binders: &BTreeSet<VarId>, m: &mut Match) -> bool {
    match (pat, f) {
        (Formula::Atom(MetaAtom::Var(a)), _) => {
            if !binders.contains(a) {
                return false;
            }
            match m.fms.get(a) {
                Some(bound) => bound == f,
                None => {
                    m.fms.insert(*a, f.clone());
                    true
                }
            }
        }
        (Formula::Atom(MetaAtom::Lit(pl)), Formula::Atom(l)) => {
            if pl.pos != l.pos || pl.atom.kind_name() != l.atom.kind_name() {
                return false;
            }
            let (px, py) = pl.vars();
            let (x, y) = l.vars();
            match_var(px, x, binders, m) && match_var(py, y, binders, m)
        }
        (Formula::And(pa, pb), Formula::And(a, b)) | (Formula::Or(pa, pb), Formula::Or(a, b)) => {
            match_fm(pa, a, binders, m) && match_fm(pb, b, binders, m)
        }
        (Formula::Neg(pa), Formula::Neg(a)) => match_fm(pa, a, binders, m),
        _ => false,
    }
}

fn match_var(p: VarId, v: VarId, binders: &BTreeSet<VarId>, m: &mut Match) -> bool {
    if !binders.contains(&p) {
        return p == v;
    }
    *m.vars.entry(p).or_insert(v) == v
}

fn instantiate(pat: &MetaFm, m: &Match) -> Option<Formula> {
    Some(match pat {
        Formula::Atom(MetaAtom::Var(a)) => m.fms.get(a)?.clone(),
        Formula::Atom(MetaAtom::Lit(l)) => {
            Formula::Atom(l.map_vars(|v| m.vars.get(&v).copied().unwrap_or(v)))
        }
        Formula::And(a, b) => Formula::and(instantiate(a, m)?, instantiate(b, m)?),
        Formula::Or(a, b) => Formula::or(instantiate(a, m)?, instantiate(b, m)?),
        Formula::Neg(a) => Formula::neg(instantiate(a, m)?),
    })
}

impl Rewriter<'_> {
    pub fn apply(&self, f: &Formula) -> Result<Formula, ReplayError> {
        let fail = |rule: &str| ReplayError::Conversion {
            rule: rule.to_owned(),
            node: f.clone(),
        };
        match self {
            Rewriter::Schema(name, schema) => {
                let (binders, body) = strip_binders(schema);
                let MetaProp::EquivFm(lhs, rhs) = body else {
                    return Err(fail(name));
                };
                let mut m = Match::default();
                if !match_fm(lhs, f, &binders, &mut m) {
                    return Err(fail(name));
                }
                instantiate(rhs, &m).ok_or_else(|| fail(name))
            }
            Rewriter::NegAtom => match f {
                Formula::Neg(a) => match &**a {
                    Formula::Atom(l) => Ok(Formula::Atom(l.negate())),
                    _ => Err(fail("negatom")),
                },
                _ => Err(fail("negatom")),
            },
            Rewriter::Atom(c) => match f {
                Formula::Atom(_) => c.apply(f),
                _ => Err(fail("atom")),
            },
            Rewriter::Arg(c) => match f {
                Formula::Neg(a) => Ok(Formula::neg(c.apply(a)?)),
                _ => Err(fail("arg")),
            },
            Rewriter::Binop(c, d) => match f {
                Formula::And(a, b) => Ok(Formula::and(c.apply(a)?, d.apply(b)?)),
                Formula::Or(a, b) => Ok(Formula::or(c.apply(a)?, d.apply(b)?)),
                _ => Err(fail("binop")),
            },
            Rewriter::Then(c, d) => d.apply(&c.apply(f)?),
        }
    }
}

// ---------------------------------------------------------------------------
// export

pub fn export_conv(c: &ConvProof) -> GPrf {
    match c {
        ConvProof::AtomConv(p) | ConvProof::ArgConv(p) => GPrf::app(GPrf::thm(c.name()), export_conv(p)),
        ConvProof::BinopConv(p, q) | ConvProof::ThenConv(p, q) => GPrf::app(
            GPrf::app(GPrf::thm(c.name()), export_conv(p)),
            export_conv(q),
        ),
        _ => GPrf::thm(c.name()),
    }
}

fn export_atom(p: &CertProof) -> GPrf {
    let var = GTrm::Var;
    let hyp = |l: Literal| GPrf::Bound(encode_fm(&Formula::Atom(l)));
    match p {
        CertProof::AssmP(l) => hyp(*l),
        CertProof::ReflP(x) => GPrf::rule("refl", [var(*x)], []),
        CertProof::TransP(p1, p2) => {
            let (x, y) = p1.claimed().vars();
            let (_, z) = p2.claimed().vars();
            GPrf::rule("trans", [var(x), var(y), var(z)], [export_atom(p1), export_atom(p2)])
        }
        CertProof::AntisymP(p1, p2) => {
            let (x, y) = p1.claimed().vars();
            GPrf::rule("antisym", [var(x), var(y)], [export_atom(p1), export_atom(p2)])
        }
        CertProof::EQE1P(l) | CertProof::EQE2P(l) => {
            let (x, y) = l.vars();
            let name = if matches!(p, CertProof::EQE1P(_)) { "eqe1" } else { "eqe2" };
            GPrf::rule(name, [var(x), var(y)], [hyp(*l)])
        }
        CertProof::ContrP(l, q) => {
            let (x, y) = l.vars();
            let name = match l.atom {
                OrderAtom::Le(..) => "contr_le",
                OrderAtom::Eq(..) => "contr_eq",
                OrderAtom::Lt(..) => "contr_lt",
            };
            GPrf::rule(name, [var(x), var(y)], [hyp(*l), export_atom(q)])
        }
    }
}

fn export_prop(p: &PropProof) -> GPrf {
    match p {
        PropProof::Lift(q) => export_atom(q),
        PropProof::ConjE(c, d, q) => {
            let goal = encode_fm(&q.claimed());
            GPrf::rule(
                "conje",
                [encode_fm(c), encode_fm(d), goal],
                [
                    GPrf::Bound(encode_fm(&Formula::and(c.clone(), d.clone()))),
                    GPrf::abs(encode_fm(c), GPrf::abs(encode_fm(d), export_prop(q))),
                ],
            )
        }
        PropProof::DisjE(c, d, q1, q2) => {
            let goal = encode_fm(&q1.claimed());
            GPrf::rule(
                "disje",
                [encode_fm(c), encode_fm(d), goal],
                [
                    GPrf::Bound(encode_fm(&Formula::or(c.clone(), d.clone()))),
                    GPrf::abs(encode_fm(c), export_prop(q1)),
                    GPrf::abs(encode_fm(d), export_prop(q2)),
                ],
            )
        }
        PropProof::ConvRule(src, cp, q) => {
            GPrf::conv(encode_fm(src), export_conv(cp), export_prop(q))
        }
    }
}

/// Compiles a structured certificate for `root` into a generic proof term.
/// Total on every input; invalid certificates compile to terms that replay
/// rejects.
pub fn export(p: &PropProof, _root: &Formula) -> GPrf {
    export_prop(p)
}

/// Replays `g` with `root` as the only hypothesis and requires `Fls`.
pub fn check_refutation(sigma: &Sigma, root: &Formula, g: &GPrf) -> Result<(), ReplayError> {
    match replay(sigma, &Context::with_root(root), g)? {
        MetaProp::LitP(l) if l.is_fls() => Ok(()),
        other => Err(ReplayError::NotARefutation(other)),
    }
}

#[cfg(test)]
mod tests;
