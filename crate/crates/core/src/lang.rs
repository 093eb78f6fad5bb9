//! Variables, order atoms, literals, formulas, finite relations and the
//! semantic evaluator for literals and formulas.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// An interned object-level variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Bidirectional mapping between source identifiers and [`VarId`]s.
/// Ids are dense and handed out in first-seen order.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    ids: HashMap<String, VarId>,
    names: Vec<String>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> VarId {
        debug_assert!(!name.is_empty(), "interned names must be non-empty");
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = VarId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), id);
        id
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: VarId) -> Option<&str> {
        self.names.get(id.0 as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &str)> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (VarId(i as u32), n.as_str()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderAtom {
    Le(VarId, VarId),
    Lt(VarId, VarId),
    Eq(VarId, VarId),
}

impl OrderAtom {
    pub fn vars(self) -> (VarId, VarId) {
        match self {
            OrderAtom::Le(x, y) | OrderAtom::Lt(x, y) | OrderAtom::Eq(x, y) => (x, y),
        }
    }

    /// Rebuilds the atom with the same kind over new variables.
    pub fn with_vars(self, x: VarId, y: VarId) -> Self {
        match self {
            OrderAtom::Le(..) => OrderAtom::Le(x, y),
            OrderAtom::Lt(..) => OrderAtom::Lt(x, y),
            OrderAtom::Eq(..) => OrderAtom::Eq(x, y),
        }
    }

    pub fn map_vars(self, mut f: impl FnMut(VarId) -> VarId) -> Self {
        let (x, y) = self.vars();
        self.with_vars(f(x), f(y))
    }

    pub fn kind_name(self) -> &'static str {
        match self {
            OrderAtom::Le(..) => "le",
            OrderAtom::Lt(..) => "lt",
            OrderAtom::Eq(..) => "eq",
        }
    }
}

/// A polarity-tagged order atom. `pos == false` reads as the negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub pos: bool,
    pub atom: OrderAtom,
}

impl Literal {
    pub const fn new(pos: bool, atom: OrderAtom) -> Self {
        Literal { pos, atom }
    }

    pub const fn le(x: VarId, y: VarId) -> Self {
        Literal::new(true, OrderAtom::Le(x, y))
    }

    pub const fn lt(x: VarId, y: VarId) -> Self {
        Literal::new(true, OrderAtom::Lt(x, y))
    }

    pub const fn eq(x: VarId, y: VarId) -> Self {
        Literal::new(true, OrderAtom::Eq(x, y))
    }

    /// The canonical false literal `0 ≠ 0`.
    pub const fn fls() -> Self {
        Literal::new(false, OrderAtom::Eq(VarId(0), VarId(0)))
    }

    pub fn negate(self) -> Self {
        Literal::new(!self.pos, self.atom)
    }

    pub fn is_fls(self) -> bool {
        self == Literal::fls()
    }

    pub fn vars(self) -> (VarId, VarId) {
        self.atom.vars()
    }

    pub fn map_vars(self, f: impl FnMut(VarId) -> VarId) -> Self {
        Literal::new(self.pos, self.atom.map_vars(f))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.vars();
        let op = match (self.pos, self.atom) {
            (true, OrderAtom::Le(..)) => "<=",
            (true, OrderAtom::Lt(..)) => "<",
            (true, OrderAtom::Eq(..)) => "=",
            (false, OrderAtom::Le(..)) => "!<=",
            (false, OrderAtom::Lt(..)) => "!<",
            (false, OrderAtom::Eq(..)) => "!=",
        };
        write!(f, "{x} {op} {y}")
    }
}

/// Propositional formula over atoms of type `A`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula<A = Literal> {
    Atom(A),
    And(Box<Formula<A>>, Box<Formula<A>>),
    Or(Box<Formula<A>>, Box<Formula<A>>),
    Neg(Box<Formula<A>>),
}

impl<A> Formula<A> {
    pub fn and(a: Formula<A>, b: Formula<A>) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula<A>, b: Formula<A>) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula<A>) -> Self {
        Formula::Neg(Box::new(a))
    }

    /// Right-nested conjunction of the given formulas, `None` when empty.
    pub fn conj(items: impl IntoIterator<Item = Formula<A>>) -> Option<Self> {
        let items: Vec<_> = items.into_iter().collect();
        items.into_iter().rev().reduce(|acc, f| Formula::and(f, acc))
    }

    /// Replaces every atom leaf by `f(leaf)`, keeping the connectives.
    pub fn amap<B>(&self, f: &mut impl FnMut(&A) -> Formula<B>) -> Formula<B> {
        match self {
            Formula::Atom(a) => f(a),
            Formula::And(a, b) => Formula::and(a.amap(f), b.amap(f)),
            Formula::Or(a, b) => Formula::or(a.amap(f), b.amap(f)),
            Formula::Neg(a) => Formula::neg(a.amap(f)),
        }
    }

    pub fn atoms(&self) -> Vec<&A> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a A>) {
        match self {
            Formula::Atom(a) => out.push(a),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Neg(a) => a.collect_atoms(out),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
            Formula::Neg(a) => 1 + a.size(),
        }
    }
}

impl Formula<Literal> {
    pub fn lit(l: Literal) -> Self {
        Formula::Atom(l)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.atoms()
            .into_iter()
            .flat_map(|l| {
                let (x, y) = l.vars();
                [x, y]
            })
            .collect()
    }
}

impl fmt::Display for Formula<Literal> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(l) => write!(f, "{l}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Neg(a) => write!(f, "~{a}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    Partial,
    Linear,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Partial => "partial",
            Theory::Linear => "linear",
        })
    }
}

/// Element of a relation's carrier.
pub type Elem = u32;

/// A finite relation together with its explicit carrier.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Relation {
    carrier: BTreeSet<Elem>,
    pairs: BTreeSet<(Elem, Elem)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelationError {
    #[error("pair ({0}, {1}) leaves the carrier")]
    OutsideCarrier(Elem, Elem),
}

impl Relation {
    pub fn new(
        carrier: impl IntoIterator<Item = Elem>,
        pairs: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self, RelationError> {
        let carrier: BTreeSet<Elem> = carrier.into_iter().collect();
        let pairs: BTreeSet<(Elem, Elem)> = pairs.into_iter().collect();
        if let Some(&(a, b)) = pairs
            .iter()
            .find(|(a, b)| !carrier.contains(a) || !carrier.contains(b))
        {
            return Err(RelationError::OutsideCarrier(a, b));
        }
        Ok(Relation { carrier, pairs })
    }

    /// Diagonal relation on the carrier.
    pub fn identity(carrier: impl IntoIterator<Item = Elem>) -> Self {
        let carrier: BTreeSet<Elem> = carrier.into_iter().collect();
        let pairs = carrier.iter().map(|&c| (c, c)).collect();
        Relation { carrier, pairs }
    }

    pub fn carrier(&self) -> &BTreeSet<Elem> {
        &self.carrier
    }

    pub fn pairs(&self) -> &BTreeSet<(Elem, Elem)> {
        &self.pairs
    }

    pub fn contains(&self, a: Elem, b: Elem) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn is_superset_of(&self, other: &Relation) -> bool {
        self.pairs.is_superset(&other.pairs)
    }

    pub fn props(&self) -> RelationProps {
        relation_props(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationProps {
    pub refl: bool,
    pub trans: bool,
    pub antisym: bool,
    pub total: bool,
}

impl RelationProps {
    pub fn is_partial_order(self) -> bool {
        self.refl && self.trans && self.antisym
    }

    pub fn is_linear_order(self) -> bool {
        self.is_partial_order() && self.total
    }

    pub fn fits(self, theory: Theory) -> bool {
        match theory {
            Theory::Partial => self.is_partial_order(),
            Theory::Linear => self.is_linear_order(),
        }
    }
}

pub fn relation_props(r: &Relation) -> RelationProps {
    let refl = r.carrier.iter().all(|&c| r.contains(c, c));
    let trans = r.pairs.iter().all(|&(a, b)| {
        r.pairs
            .range((b, Elem::MIN)..=(b, Elem::MAX))
            .all(|&(_, c)| r.contains(a, c))
    });
    let antisym = r
        .pairs
        .iter()
        .all(|&(a, b)| a == b || !r.contains(b, a));
    let total = r
        .carrier
        .iter()
        .all(|&a| r.carrier.iter().all(|&b| r.contains(a, b) || r.contains(b, a)));
    RelationProps {
        refl,
        trans,
        antisym,
        total,
    }
}

/// Assignment of variables to carrier elements.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Valuation(BTreeMap<VarId, Elem>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity(vars: impl IntoIterator<Item = VarId>) -> Self {
        vars.into_iter().map(|v| (v, v.0)).collect()
    }

    pub fn insert(&mut self, var: VarId, value: Elem) {
        self.0.insert(var, value);
    }

    pub fn get(&self, var: VarId) -> Option<Elem> {
        self.0.get(&var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, Elem)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(VarId, Elem)> for Valuation {
    fn from_iter<T: IntoIterator<Item = (VarId, Elem)>>(iter: T) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("variable {0} has no value")]
    Unmapped(VarId),
}

pub fn eval_literal(r: &Relation, v: &Valuation, l: Literal) -> Result<bool, EvalError> {
    let (x, y) = l.vars();
    let vx = v.get(x).ok_or(EvalError::Unmapped(x))?;
    let vy = v.get(y).ok_or(EvalError::Unmapped(y))?;
    let holds = match l.atom {
        OrderAtom::Le(..) => r.contains(vx, vy),
        OrderAtom::Lt(..) => r.contains(vx, vy) && vx != vy,
        OrderAtom::Eq(..) => vx == vy,
    };
    Ok(l.pos == holds)
}

pub fn eval_formula(r: &Relation, v: &Valuation, f: &Formula) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::Atom(l) => eval_literal(r, v, *l)?,
        Formula::And(a, b) => eval_formula(r, v, a)? && eval_formula(r, v, b)?,
        Formula::Or(a, b) => eval_formula(r, v, a)? || eval_formula(r, v, b)?,
        Formula::Neg(a) => !eval_formula(r, v, a)?,
    })
}
