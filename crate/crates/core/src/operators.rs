//! Symbolic consequence-operator expressions, their exact evaluation, and the
//! passage to and from closed-set families.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sets::{mask_of_width, Element, SentenceSet, Universe};

/// Largest finite universe for which a sweep over every subset is attempted.
pub const MAX_SWEEP_BITS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Identity,
    /// The constant map to the whole universe.
    Top,
    /// `A ↦ A ∪ x` when `A` meets `y`, else `A`.
    Cxy {
        x: SentenceSet,
        y: SentenceSet,
    },
    /// `A ↦ A ∪ x` when `y ⊆ A`, else `A`.
    CPrime {
        x: SentenceSet,
        y: SentenceSet,
    },
    /// `A ↦ L` when `b ∈ A`, else `m ∪ A`.
    SExample {
        m: SentenceSet,
        b: Element,
    },
    Meet(OperatorExpr, OperatorExpr),
    NaiveJoin(OperatorExpr, OperatorExpr),
    WeakJoin(OperatorExpr, OperatorExpr),
    Compose {
        outer: OperatorExpr,
        inner: OperatorExpr,
    },
    FromSystem(ClosureSystem),
    FromTable(OperatorTable),
}

/// A validated operator expression. Cheap to clone.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorExpr {
    node: Arc<Node>,
    universe: Option<Universe>,
}

fn agree(a: Option<Universe>, b: Option<&Universe>) -> Result<Option<Universe>> {
    match (a, b) {
        (Some(a), Some(b)) if a != *b => Err(Error::UniverseMismatch),
        (Some(a), _) => Ok(Some(a)),
        (None, b) => Ok(b.cloned()),
    }
}

impl OperatorExpr {
    /// Validate a node and wrap it.
    pub fn from_node(node: Node) -> Result<Self> {
        let universe = match &node {
            Node::Identity | Node::Top => None,
            Node::Cxy { x, y } | Node::CPrime { x, y } => {
                agree(Some(x.universe().clone()), Some(y.universe()))?
            }
            Node::SExample { m, b } => {
                let u = m.universe();
                let n = u
                    .size()
                    .ok_or(Error::FiniteOnly("the s-example operator"))?;
                if *b >= n as Element {
                    return Err(Error::ElementOutOfRange(*b));
                }
                if m.is_empty() {
                    return Err(Error::SExampleConstraint("M must be nonempty".into()));
                }
                if m.contains(*b) {
                    return Err(Error::SExampleConstraint("b must lie outside M".into()));
                }
                if n - m.len().unwrap_or(n) < 2 {
                    return Err(Error::SExampleConstraint(
                        "L - M needs at least two elements".into(),
                    ));
                }
                Some(u.clone())
            }
            Node::Meet(a, b) | Node::NaiveJoin(a, b) | Node::WeakJoin(a, b) => {
                agree(a.universe.clone(), b.universe.as_ref())?
            }
            Node::Compose { outer, inner } => {
                agree(outer.universe.clone(), inner.universe.as_ref())?
            }
            Node::FromSystem(s) => Some(s.universe.clone()),
            Node::FromTable(t) => Some(t.universe.clone()),
        };
        Ok(OperatorExpr {
            node: Arc::new(node),
            universe,
        })
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    /// The universe the expression is tied to; `None` for expressions built
    /// only from `I` and `U`.
    pub fn universe(&self) -> Option<&Universe> {
        self.universe.as_ref()
    }

    pub fn identity() -> Self {
        Self::from_node(Node::Identity).expect("identity is always valid")
    }

    pub fn top() -> Self {
        Self::from_node(Node::Top).expect("top is always valid")
    }

    pub fn cxy(x: SentenceSet, y: SentenceSet) -> Result<Self> {
        Self::from_node(Node::Cxy { x, y })
    }

    pub fn cprime(x: SentenceSet, y: SentenceSet) -> Result<Self> {
        Self::from_node(Node::CPrime { x, y })
    }

    pub fn s_example(m: SentenceSet, b: Element) -> Result<Self> {
        Self::from_node(Node::SExample { m, b })
    }

    pub fn meet(a: &Self, b: &Self) -> Result<Self> {
        Self::from_node(Node::Meet(a.clone(), b.clone()))
    }

    pub fn naive_join(a: &Self, b: &Self) -> Result<Self> {
        Self::from_node(Node::NaiveJoin(a.clone(), b.clone()))
    }

    pub fn weak_join(a: &Self, b: &Self) -> Result<Self> {
        let op = Self::from_node(Node::WeakJoin(a.clone(), b.clone()))?;
        if matches!(&op.universe, Some(u) if !u.is_finite()) {
            op.weak_join_closed_form()?;
        }
        Ok(op)
    }

    /// `x ↦ outer(inner(x))`; not necessarily a consequence operator.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        Self::from_node(Node::Compose {
            outer: outer.clone(),
            inner: inner.clone(),
        })
    }

    pub fn from_system(system: ClosureSystem) -> Self {
        Self::from_node(Node::FromSystem(system)).expect("closure systems carry one universe")
    }

    pub fn from_table(table: OperatorTable) -> Self {
        Self::from_node(Node::FromTable(table)).expect("tables carry one universe")
    }

    pub fn eval(&self, a: &SentenceSet) -> Result<SentenceSet> {
        if let Some(u) = &self.universe {
            if u != a.universe() {
                return Err(Error::UniverseMismatch);
            }
        }
        match &*self.node {
            Node::Identity => Ok(a.clone()),
            Node::Top => Ok(a.universe().full()),
            Node::Cxy { x, y } => {
                if a.intersects(y)? {
                    a.union(x)
                } else {
                    Ok(a.clone())
                }
            }
            Node::CPrime { x, y } => {
                if y.is_subset(a)? {
                    a.union(x)
                } else {
                    Ok(a.clone())
                }
            }
            Node::SExample { m, b } => {
                if a.contains(*b) {
                    Ok(a.universe().full())
                } else {
                    m.union(a)
                }
            }
            Node::Meet(l, r) => l.eval(a)?.intersect(&r.eval(a)?),
            Node::NaiveJoin(l, r) => l.eval(a)?.union(&r.eval(a)?),
            Node::WeakJoin(l, r) => {
                if a.universe().is_finite() {
                    weak_join_fixpoint(l, r, a)
                } else {
                    self.weak_join_closed_form()?.eval(a)
                }
            }
            Node::Compose { outer, inner } => outer.eval(&inner.eval(a)?),
            Node::FromSystem(s) => s.closure(a),
            Node::FromTable(t) => t.image(a),
        }
    }

    /// Reduce a weak join over the primitive constructions to a primitive.
    ///
    /// Only joins with a proved closed form are reduced: `I` is a unit, `U`
    /// absorbs, and `C(A,B) ∨w C(A1,B) = C(A ∪ A1, B)`.
    pub(crate) fn weak_join_closed_form(&self) -> Result<OperatorExpr> {
        match &*self.node {
            Node::Identity | Node::Top | Node::Cxy { .. } | Node::CPrime { .. } => Ok(self.clone()),
            Node::WeakJoin(l, r) => {
                let l = l.weak_join_closed_form()?;
                let r = r.weak_join_closed_form()?;
                match (&*l.node, &*r.node) {
                    (Node::Identity, _) => Ok(r),
                    (_, Node::Identity) => Ok(l),
                    (Node::Top, _) | (_, Node::Top) => Ok(OperatorExpr::top()),
                    (Node::Cxy { x: x1, y: y1 }, Node::Cxy { x: x2, y: y2 }) if y1 == y2 => {
                        OperatorExpr::cxy(x1.union(x2)?, y1.clone())
                    }
                    _ if l == r => Ok(l),
                    _ => Err(Error::UnsupportedWeakJoin),
                }
            }
            _ => Err(Error::UnsupportedWeakJoin),
        }
    }

    pub fn to_closure_system(&self, universe: &Universe) -> Result<ClosureSystem> {
        let table = OperatorTable::tabulate(self, universe)?;
        if table.universe.size().unwrap_or(0) > 64 {
            return Err(Error::SystemTooWide);
        }
        let closed = table
            .images
            .iter()
            .enumerate()
            .filter(|&(x, &img)| img == x as u64)
            .map(|(x, _)| x as u64)
            .collect();
        Ok(ClosureSystem {
            universe: table.universe.clone(),
            closed,
        })
    }
}

/// `Y ← right(left(Y))` from `a` until it stops moving.
fn weak_join_fixpoint(
    left: &OperatorExpr,
    right: &OperatorExpr,
    a: &SentenceSet,
) -> Result<SentenceSet> {
    let mut y = a.clone();
    loop {
        let next = right.eval(&left.eval(&y)?)?;
        if next == y {
            return Ok(y);
        }
        // each round must grow, so at most |L| rounds
        if !y.is_subset(&next)? {
            return Err(Error::WeakJoinNotExtensive(a.to_string()));
        }
        y = next;
    }
}

/// Family of closed sets: contains `L`, closed under intersection.
/// Stored as bitmasks in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSystem {
    universe: Universe,
    closed: Vec<u64>,
}

impl ClosureSystem {
    pub fn new(universe: &Universe, sets: &[SentenceSet]) -> Result<Self> {
        let masks = sets
            .iter()
            .map(|s| {
                if s.universe() != universe {
                    return Err(Error::UniverseMismatch);
                }
                s.mask().ok_or(Error::SystemTooWide)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(universe, masks)
    }

    pub fn from_masks(universe: &Universe, mut masks: Vec<u64>) -> Result<Self> {
        let full = universe.full_mask().ok_or(Error::SystemTooWide)?;
        if masks.iter().any(|m| m & !full != 0) {
            return Err(Error::SetLiteral {
                literal: "closure system".into(),
                reason: "member outside the universe".into(),
            });
        }
        masks.sort_unstable();
        masks.dedup();
        if masks.binary_search(&full).is_err() {
            return Err(Error::SystemMissingUniverse);
        }
        for (i, &a) in masks.iter().enumerate() {
            for &b in &masks[i + 1..] {
                if masks.binary_search(&(a & b)).is_err() {
                    return Err(Error::SystemNotIntersectionClosed);
                }
            }
        }
        Ok(ClosureSystem {
            universe: universe.clone(),
            closed: masks,
        })
    }

    pub(crate) fn from_sorted_masks_unchecked(universe: &Universe, closed: Vec<u64>) -> Self {
        ClosureSystem {
            universe: universe.clone(),
            closed,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn masks(&self) -> &[u64] {
        &self.closed
    }

    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }

    pub fn closed_sets(&self) -> Vec<SentenceSet> {
        self.closed
            .iter()
            .map(|&m| self.universe.from_mask(m).expect("validated mask"))
            .collect()
    }

    /// The system `{L}` alone, i.e. the operator `U`.
    pub fn is_top_only(&self) -> bool {
        self.closed.len() == 1
    }

    /// Least closed superset of `x`.
    pub fn closure_mask(&self, x: u64) -> u64 {
        self.closed
            .iter()
            .filter(|&&c| x & !c == 0)
            .fold(u64::MAX, |acc, &c| acc & c)
    }

    pub fn closure(&self, x: &SentenceSet) -> Result<SentenceSet> {
        if x.universe() != &self.universe {
            return Err(Error::UniverseMismatch);
        }
        let m = x.mask().ok_or(Error::SystemTooWide)?;
        self.universe.from_mask(self.closure_mask(m))
    }

    /// Pointwise images over every subset, indexed by bitmask.
    pub fn to_table(&self) -> Result<OperatorTable> {
        let n = self.universe.size().unwrap_or(0);
        if n > MAX_SWEEP_BITS {
            return Err(Error::SweepTooLarge {
                size: n,
                limit: MAX_SWEEP_BITS,
            });
        }
        let images = (0..1u64 << n).map(|x| self.closure_mask(x)).collect();
        Ok(OperatorTable {
            universe: self.universe.clone(),
            images,
        })
    }
}

/// Explicit map from every subset (by bitmask) to its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorTable {
    universe: Universe,
    images: Vec<u64>,
}

impl OperatorTable {
    pub fn new(universe: &Universe, images: Vec<u64>) -> Result<Self> {
        let n = universe
            .size()
            .ok_or(Error::FiniteOnly("operator tables"))?;
        if n > MAX_SWEEP_BITS {
            return Err(Error::SweepTooLarge {
                size: n,
                limit: MAX_SWEEP_BITS,
            });
        }
        let expected = 1usize << n;
        if images.len() != expected {
            return Err(Error::PartialTable {
                expected,
                got: images.len(),
            });
        }
        let full = mask_of_width(n);
        if let Some(i) = images.iter().position(|m| m & !full != 0) {
            return Err(Error::TableEntryOutOfRange { input: i as u64 });
        }
        Ok(OperatorTable {
            universe: universe.clone(),
            images,
        })
    }

    /// Evaluate `op` on every subset of `universe`.
    pub fn tabulate(op: &OperatorExpr, universe: &Universe) -> Result<Self> {
        if let Some(u) = op.universe() {
            if u != universe {
                return Err(Error::UniverseMismatch);
            }
        }
        if let Node::FromTable(t) = op.node() {
            return Ok(t.clone());
        }
        if let Node::FromSystem(s) = op.node() {
            return s.to_table();
        }
        let n = universe
            .size()
            .ok_or(Error::FiniteOnly("a sweep over all subsets"))?;
        if n > MAX_SWEEP_BITS {
            return Err(Error::SweepTooLarge {
                size: n,
                limit: MAX_SWEEP_BITS,
            });
        }
        let images = (0..1u64 << n)
            .map(|x| {
                let img = op.eval(&universe.from_mask(x)?)?;
                Ok(img.mask().expect("narrow universe"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorTable {
            universe: universe.clone(),
            images,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn images(&self) -> &[u64] {
        &self.images
    }

    pub fn image_mask(&self, x: u64) -> u64 {
        self.images[x as usize]
    }

    pub fn image(&self, x: &SentenceSet) -> Result<SentenceSet> {
        if x.universe() != &self.universe {
            return Err(Error::UniverseMismatch);
        }
        let m = x.mask().ok_or(Error::FiniteOnly("operator tables"))?;
        self.universe.from_mask(self.images[m as usize])
    }

    pub fn full_mask(&self) -> u64 {
        mask_of_width(self.universe.size().unwrap_or(0))
    }

    /// Fixed points, as a mask list in ascending order.
    pub fn fixed_points(&self) -> Vec<u64> {
        (0..self.images.len() as u64)
            .filter(|&x| self.images[x as usize] == x)
            .collect()
    }
}

/// Closure operator of a family of closed sets.
pub fn from_closure_system(system: ClosureSystem) -> OperatorExpr {
    OperatorExpr::from_system(system)
}

fn write_set_list(f: &mut fmt::Formatter<'_>, u: &Universe, masks: &[u64]) -> fmt::Result {
    for (i, &m) in masks.iter().enumerate() {
        if i > 0 {
            f.write_str(";")?;
        }
        write!(f, "{}", u.from_mask(m).map_err(|_| fmt::Error)?)?;
    }
    Ok(())
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.node {
            Node::Identity => f.write_str("I"),
            Node::Top => f.write_str("U"),
            Node::Cxy { x, y } => write!(f, "cxy {x} {y}"),
            Node::CPrime { x, y } => write!(f, "cprime {x} {y}"),
            Node::SExample { m, b } => write!(f, "s {m} {}", m.universe().element_name(*b)),
            Node::Meet(a, b) => write!(f, "meet({a},{b})"),
            Node::NaiveJoin(a, b) => write!(f, "join({a},{b})"),
            Node::WeakJoin(a, b) => write!(f, "wjoin({a},{b})"),
            Node::Compose { outer, inner } => write!(f, "comp({outer},{inner})"),
            Node::FromSystem(s) => {
                f.write_str("system[")?;
                write_set_list(f, &s.universe, &s.closed)?;
                f.write_str("]")
            }
            Node::FromTable(t) => {
                f.write_str("table[")?;
                for (x, &img) in t.images.iter().enumerate() {
                    if x > 0 {
                        f.write_str(";")?;
                    }
                    let u = &t.universe;
                    let from = u.from_mask(x as u64).map_err(|_| fmt::Error)?;
                    let to = u.from_mask(img).map_err(|_| fmt::Error)?;
                    write!(f, "{from}:{to}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Members of a bitmask as a sentence set, for reporting.
pub(crate) fn mask_set(u: &Universe, m: u64) -> SentenceSet {
    u.from_mask(m).expect("mask inside universe")
}
