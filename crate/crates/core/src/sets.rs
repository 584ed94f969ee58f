//! Sentence universes and exact set algebra.
//!
//! A [`Universe`] is either an explicit finite symbol table or the countable
//! carrier of natural numbers. On the countable carrier only finite and
//! cofinite sets are representable; that class is closed under every Boolean
//! operation, so all set algebra stays exact.
//!
//! Finite-mode sets over at most 64 symbols are stored as a single machine
//! word; everything else is a sorted, duplicate-free list.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Element id: a symbol index in finite mode, a natural number in cofinite mode.
pub type Element = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    Finite,
    Cofinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Polarity {
    /// The listed elements.
    Positive,
    /// Everything except the listed elements.
    Negative,
}

#[derive(Debug)]
struct UniverseData {
    mode: Mode,
    symbols: Vec<String>,
    index: HashMap<String, Element>,
}

#[derive(Debug, Clone)]
pub struct Universe(Arc<UniverseData>);

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.mode == other.0.mode && self.0.symbols == other.0.symbols)
    }
}

impl Eq for Universe {}

impl Universe {
    pub fn new(mode: Mode, symbols: &[&str]) -> Result<Self> {
        match mode {
            Mode::Finite => Self::finite(symbols.iter().copied()),
            Mode::Cofinite => Ok(Self::cofinite()),
        }
    }

    pub fn finite<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, name) in symbols.iter().enumerate() {
            if !is_symbol_name(name) {
                return Err(Error::SetLiteral {
                    literal: name.clone(),
                    reason: "symbol names must be alphanumeric (or `_`) and not start with a digit"
                        .into(),
                });
            }
            if index.insert(name.clone(), i as Element).is_some() {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Universe(Arc::new(UniverseData {
            mode: Mode::Finite,
            symbols,
            index,
        })))
    }

    pub fn cofinite() -> Self {
        Universe(Arc::new(UniverseData {
            mode: Mode::Cofinite,
            symbols: Vec::new(),
            index: HashMap::new(),
        }))
    }

    /// Finite universe `a, b, c, ...` of the given size.
    pub fn letters(n: usize) -> Result<Self> {
        Self::finite((0..n).map(letter_name))
    }

    pub fn mode(&self) -> Mode {
        self.0.mode
    }

    pub fn is_finite(&self) -> bool {
        self.0.mode == Mode::Finite
    }

    /// Number of symbols; `None` on the countable carrier.
    pub fn size(&self) -> Option<usize> {
        self.is_finite().then_some(self.0.symbols.len())
    }

    pub fn symbols(&self) -> &[String] {
        &self.0.symbols
    }

    pub fn symbol(&self, e: Element) -> Option<&str> {
        self.0.symbols.get(e as usize).map(String::as_str)
    }

    pub fn lookup(&self, name: &str) -> Result<Element> {
        self.0
            .index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub(crate) fn uses_mask(&self) -> bool {
        self.is_finite() && self.0.symbols.len() <= 64
    }

    /// Bitmask of the whole universe (finite mode, at most 64 symbols).
    pub fn full_mask(&self) -> Option<u64> {
        self.uses_mask()
            .then(|| mask_of_width(self.0.symbols.len()))
    }

    pub fn element_name(&self, e: Element) -> String {
        match self.symbol(e) {
            Some(s) => s.to_string(),
            None => e.to_string(),
        }
    }

    pub fn empty(&self) -> SentenceSet {
        SentenceSet::from_parts(self.clone(), Polarity::Positive, Vec::new())
    }

    pub fn full(&self) -> SentenceSet {
        match self.size() {
            Some(n) => SentenceSet::from_parts(
                self.clone(),
                Polarity::Positive,
                (0..n as Element).collect(),
            ),
            None => SentenceSet::from_parts(self.clone(), Polarity::Negative, Vec::new()),
        }
    }

    /// Finite set of the given ids.
    pub fn set<I: IntoIterator<Item = Element>>(&self, ids: I) -> Result<SentenceSet> {
        let ids: Vec<Element> = ids.into_iter().collect();
        if let Some(n) = self.size() {
            if let Some(&bad) = ids.iter().find(|&&e| e >= n as Element) {
                return Err(Error::ElementOutOfRange(bad));
            }
        }
        Ok(SentenceSet::from_parts(
            self.clone(),
            Polarity::Positive,
            ids,
        ))
    }

    /// Complement of a finite set of naturals (cofinite mode only).
    pub fn cofinite_set<I: IntoIterator<Item = Element>>(
        &self,
        excluded: I,
    ) -> Result<SentenceSet> {
        if self.is_finite() {
            return Err(Error::CofiniteOnly("a cofinite set"));
        }
        Ok(SentenceSet::from_parts(
            self.clone(),
            Polarity::Negative,
            excluded.into_iter().collect(),
        ))
    }

    pub fn set_of_names(&self, names: &[&str]) -> Result<SentenceSet> {
        let ids = names
            .iter()
            .map(|n| self.lookup(n))
            .collect::<Result<Vec<_>>>()?;
        self.set(ids)
    }

    pub fn from_mask(&self, mask: u64) -> Result<SentenceSet> {
        let full = self.full_mask().ok_or(Error::FiniteOnly("bitmask sets"))?;
        if mask & !full != 0 {
            return Err(Error::ElementOutOfRange(Element::from(
                (mask & !full).trailing_zeros(),
            )));
        }
        Ok(SentenceSet {
            universe: self.clone(),
            polarity: Polarity::Positive,
            members: Members::Mask(mask),
        })
    }

    /// Parse `{a,c}`, `{1,5}`, `co{1,5}`, `{}` or `L`.
    pub fn parse_set(&self, literal: &str) -> Result<SentenceSet> {
        let bad = |reason: &str| Error::SetLiteral {
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        let text = literal.trim();
        if text == "L" {
            return Ok(self.full());
        }
        let (negative, body) = match text.strip_prefix("co") {
            Some(rest) => (true, rest.trim_start()),
            None => (false, text),
        };
        if negative && self.is_finite() {
            return Err(bad("`co{..}` needs the cofinite universe"));
        }
        let inner = body
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| bad("expected braces"))?;
        let mut ids = Vec::new();
        if !inner.trim().is_empty() {
            for item in inner.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    return Err(bad("empty item"));
                }
                let id = if self.is_finite() {
                    self.lookup(item)?
                } else {
                    item.parse::<Element>()
                        .map_err(|_| bad("cofinite-mode elements are naturals"))?
                };
                ids.push(id);
            }
        }
        if negative {
            self.cofinite_set(ids)
        } else {
            self.set(ids)
        }
    }
}

pub(crate) fn letter_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("s{i}")
    }
}

pub(crate) fn is_symbol_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
        && s != "L"
        && s != "co"
}

pub(crate) fn mask_of_width(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Members {
    Mask(u64),
    List(Vec<Element>),
}

/// A subset of a universe in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceSet {
    universe: Universe,
    polarity: Polarity,
    members: Members,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Difference,
    /// Complement of the left operand; the right operand is ignored.
    Complement,
}

impl SentenceSet {
    fn from_parts(universe: Universe, polarity: Polarity, mut ids: Vec<Element>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        let members = if universe.uses_mask() {
            Members::Mask(ids.iter().fold(0, |m, &e| m | (1 << e)))
        } else {
            Members::List(ids)
        };
        SentenceSet {
            universe,
            polarity,
            members,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    /// The explicitly listed elements, ascending. For a negative set these
    /// are the excluded elements.
    pub fn listed(&self) -> Vec<Element> {
        match &self.members {
            Members::Mask(m) => bits(*m).collect(),
            Members::List(v) => v.clone(),
        }
    }

    pub fn mask(&self) -> Option<u64> {
        match self.members {
            Members::Mask(m) => Some(m),
            Members::List(_) => None,
        }
    }

    /// Re-derive the canonical form; always the identity on valid values.
    pub fn canonicalize(&self) -> SentenceSet {
        SentenceSet::from_parts(self.universe.clone(), self.polarity, self.listed())
    }

    pub fn contains(&self, e: Element) -> bool {
        let listed = match &self.members {
            Members::Mask(m) => e < 64 && m & (1 << e) != 0,
            Members::List(v) => v.binary_search(&e).is_ok(),
        };
        match self.polarity {
            Polarity::Positive => listed,
            Polarity::Negative => !listed,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.polarity == Polarity::Positive
            && match &self.members {
                Members::Mask(m) => *m == 0,
                Members::List(v) => v.is_empty(),
            }
    }

    pub fn is_full(&self) -> bool {
        match (self.polarity, self.universe.size()) {
            (Polarity::Negative, _) => self.listed_len() == 0,
            (Polarity::Positive, Some(n)) => self.listed_len() == n,
            (Polarity::Positive, None) => false,
        }
    }

    /// True for every set except the cofinite ones.
    pub fn is_finite_set(&self) -> bool {
        self.polarity == Polarity::Positive
    }

    /// Cardinality, `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        self.is_finite_set().then(|| self.listed_len())
    }

    fn listed_len(&self) -> usize {
        match &self.members {
            Members::Mask(m) => m.count_ones() as usize,
            Members::List(v) => v.len(),
        }
    }

    /// Members in ascending order; infinite for a cofinite set.
    pub fn elements(&self) -> Box<dyn Iterator<Item = Element> + '_> {
        match self.polarity {
            Polarity::Positive => match &self.members {
                Members::Mask(m) => Box::new(bits(*m)),
                Members::List(v) => Box::new(v.iter().copied()),
            },
            Polarity::Negative => Box::new((0..).filter(move |&e| !self.contains_listed(e))),
        }
    }

    fn contains_listed(&self, e: Element) -> bool {
        match &self.members {
            Members::Mask(m) => e < 64 && m & (1 << e) != 0,
            Members::List(v) => v.binary_search(&e).is_ok(),
        }
    }

    pub fn min_element(&self) -> Option<Element> {
        self.elements().next()
    }

    fn same_universe(&self, other: &SentenceSet) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn apply(&self, other: &SentenceSet, op: SetOp) -> Result<SentenceSet> {
        match op {
            SetOp::Union => self.union(other),
            SetOp::Intersect => self.intersect(other),
            SetOp::Difference => self.difference(other),
            SetOp::Complement => Ok(self.complement()),
        }
    }

    pub fn union(&self, other: &SentenceSet) -> Result<SentenceSet> {
        self.same_universe(other)?;
        if let (Members::Mask(a), Members::Mask(b)) = (&self.members, &other.members) {
            return Ok(self.with_mask(a | b));
        }
        use Polarity::*;
        let (a, b) = (self.listed(), other.listed());
        let (pol, ids) = match (self.polarity, other.polarity) {
            (Positive, Positive) => (Positive, sorted_union(&a, &b)),
            (Negative, Negative) => (Negative, sorted_intersect(&a, &b)),
            (Positive, Negative) => (Negative, sorted_difference(&b, &a)),
            (Negative, Positive) => (Negative, sorted_difference(&a, &b)),
        };
        Ok(SentenceSet::from_parts(self.universe.clone(), pol, ids))
    }

    pub fn intersect(&self, other: &SentenceSet) -> Result<SentenceSet> {
        self.same_universe(other)?;
        if let (Members::Mask(a), Members::Mask(b)) = (&self.members, &other.members) {
            return Ok(self.with_mask(a & b));
        }
        use Polarity::*;
        let (a, b) = (self.listed(), other.listed());
        let (pol, ids) = match (self.polarity, other.polarity) {
            (Positive, Positive) => (Positive, sorted_intersect(&a, &b)),
            (Negative, Negative) => (Negative, sorted_union(&a, &b)),
            (Positive, Negative) => (Positive, sorted_difference(&a, &b)),
            (Negative, Positive) => (Positive, sorted_difference(&b, &a)),
        };
        Ok(SentenceSet::from_parts(self.universe.clone(), pol, ids))
    }

    pub fn difference(&self, other: &SentenceSet) -> Result<SentenceSet> {
        self.same_universe(other)?;
        self.intersect(&other.complement())
    }

    pub fn complement(&self) -> SentenceSet {
        match (&self.members, self.universe.size()) {
            (Members::Mask(m), _) => {
                let full = self.universe.full_mask().unwrap_or(u64::MAX);
                self.with_mask(!m & full)
            }
            (Members::List(v), Some(n)) => SentenceSet::from_parts(
                self.universe.clone(),
                Polarity::Positive,
                sorted_difference(&(0..n as Element).collect::<Vec<_>>(), v),
            ),
            (Members::List(v), None) => {
                let flipped = match self.polarity {
                    Polarity::Positive => Polarity::Negative,
                    Polarity::Negative => Polarity::Positive,
                };
                SentenceSet::from_parts(self.universe.clone(), flipped, v.clone())
            }
        }
    }

    fn with_mask(&self, mask: u64) -> SentenceSet {
        SentenceSet {
            universe: self.universe.clone(),
            polarity: Polarity::Positive,
            members: Members::Mask(mask),
        }
    }

    pub fn is_subset(&self, other: &SentenceSet) -> Result<bool> {
        self.same_universe(other)?;
        if let (Members::Mask(a), Members::Mask(b)) = (&self.members, &other.members) {
            return Ok(a & !b == 0);
        }
        use Polarity::*;
        let (a, b) = (self.listed(), other.listed());
        Ok(match (self.polarity, other.polarity) {
            (Positive, Positive) => sorted_difference(&a, &b).is_empty(),
            (Negative, Negative) => sorted_difference(&b, &a).is_empty(),
            (Positive, Negative) => sorted_intersect(&a, &b).is_empty(),
            // an infinite set is never inside a finite one
            (Negative, Positive) => false,
        })
    }

    pub fn intersects(&self, other: &SentenceSet) -> Result<bool> {
        Ok(!self.intersect(other)?.is_empty())
    }

    /// Stream of finite subsets.
    ///
    /// Finite mode: every subset (or those within `bound.max_size`) in
    /// ascending order of the sub-bitmask over this set's elements.
    /// Cofinite mode: `bound` is required; subsets of at most `max_size`
    /// elements drawn from the first `horizon` elements of this set,
    /// ordered by size and then lexicographically.
    pub fn finite_subsets(
        &self,
        bound: Option<SubsetBound>,
    ) -> Result<Box<dyn Iterator<Item = SentenceSet> + '_>> {
        if self.universe.is_finite() {
            let elems: Vec<Element> = self.listed();
            let max_size = bound.map_or(usize::MAX, |b| b.max_size);
            let n = elems.len();
            if n >= 64 {
                return Err(Error::SweepTooLarge { size: n, limit: 63 });
            }
            let iter = (0..(1u64 << n))
                .filter(move |sub| sub.count_ones() as usize <= max_size)
                .map(move |sub| {
                    let ids = bits(sub).map(|i| elems[i as usize]);
                    SentenceSet::from_parts(
                        self.universe.clone(),
                        Polarity::Positive,
                        ids.collect(),
                    )
                });
            Ok(Box::new(iter))
        } else {
            let bound = bound.ok_or(Error::MissingCap)?;
            let pool: Vec<Element> = self.elements().take(bound.horizon).collect();
            let max_size = bound.max_size.min(pool.len());
            let iter = (0..=max_size).flat_map(move |k| {
                let pool = pool.clone();
                Combinations::new(pool.len(), k).map(move |idx| {
                    SentenceSet::from_parts(
                        self.universe.clone(),
                        Polarity::Positive,
                        idx.iter().map(|&i| pool[i]).collect(),
                    )
                })
            });
            Ok(Box::new(iter))
        }
    }
}

/// Size cap and element horizon for finite-subset streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubsetBound {
    pub max_size: usize,
    pub horizon: usize,
}

impl SubsetBound {
    pub fn new(max_size: usize, horizon: usize) -> Self {
        SubsetBound { max_size, horizon }
    }
}

/// Lexicographic k-combinations of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = Element> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros();
            m &= m - 1;
            Some(Element::from(b))
        }
    })
}

fn sorted_union(a: &[Element], b: &[Element]) -> Vec<Element> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn sorted_intersect(a: &[Element], b: &[Element]) -> Vec<Element> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

fn sorted_difference(a: &[Element], b: &[Element]) -> Vec<Element> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_err())
        .collect()
}

impl fmt::Display for SentenceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.polarity == Polarity::Negative {
            f.write_str("co")?;
        }
        f.write_str("{")?;
        for (i, e) in self.listed().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&self.universe.element_name(e))?;
        }
        f.write_str("}")
    }
}

impl Serialize for SentenceSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
