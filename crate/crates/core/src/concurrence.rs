//! Concurrence of finite relations and the monotone union inclusion.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::OperatorExpr;
use crate::sets::SentenceSet;

/// Domains up to this size get a least failing subset; larger ones report
/// the whole domain.
pub const SUBSET_SWEEP_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Concurrence<T> {
    /// `bound` is related to every domain element (absent for an empty domain).
    Concurrent {
        bound: Option<T>,
    },
    NotConcurrent {
        failing: Vec<T>,
    },
}

impl<T> Concurrence<T> {
    pub fn holds(&self) -> bool {
        matches!(self, Concurrence::Concurrent { .. })
    }
}

/// Whether every nonempty subset of `domain` has a common right bound.
///
/// A bound of the whole domain bounds each of its subsets, so the whole
/// domain decides the verdict. On failure the smallest failing subset is
/// searched (by size, then lexicographically) for small domains.
pub fn is_concurrent<T: Ord + Clone>(pairs: &[(T, T)], domain: &[T]) -> Result<Concurrence<T>> {
    let relation: BTreeSet<(T, T)> = pairs.iter().cloned().collect();
    let domain: Vec<T> = domain
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let carrier: BTreeSet<T> = pairs
        .iter()
        .flat_map(|(x, y)| [x.clone(), y.clone()])
        .chain(domain.iter().cloned())
        .collect();
    let bound_of = |subset: &[&T]| {
        carrier
            .iter()
            .find(|y| {
                subset
                    .iter()
                    .all(|x| relation.contains(&((*x).clone(), (*y).clone())))
            })
            .cloned()
    };
    if domain.is_empty() {
        return Ok(Concurrence::Concurrent { bound: None });
    }
    let all: Vec<&T> = domain.iter().collect();
    if let Some(bound) = bound_of(&all) {
        return Ok(Concurrence::Concurrent { bound: Some(bound) });
    }
    if domain.len() > SUBSET_SWEEP_LIMIT {
        return Ok(Concurrence::NotConcurrent { failing: domain });
    }
    for size in 1..=domain.len() {
        for combo in crate::sets::Combinations::new(domain.len(), size) {
            let subset: Vec<&T> = combo.iter().map(|&i| &domain[i]).collect();
            if bound_of(&subset).is_none() {
                return Ok(Concurrence::NotConcurrent {
                    failing: subset.into_iter().cloned().collect(),
                });
            }
        }
    }
    unreachable!("the whole domain fails")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneUnion {
    pub holds: bool,
    pub union: SentenceSet,
    pub union_of_images: SentenceSet,
    pub image_of_union: SentenceSet,
}

/// `C(y₁) ∪ … ∪ C(yₙ) ⊆ C(y₁ ∪ … ∪ yₙ)`; a failure means `op` is not monotone.
pub fn monotone_union_check(op: &OperatorExpr, parts: &[SentenceSet]) -> Result<MonotoneUnion> {
    let (first, rest) = parts.split_first().ok_or(Error::EmptyGenerators)?;
    let mut union = first.clone();
    let mut union_of_images = op.eval(first)?;
    for y in rest {
        union = union.union(y)?;
        union_of_images = union_of_images.union(&op.eval(y)?)?;
    }
    let image_of_union = op.eval(&union)?;
    Ok(MonotoneUnion {
        holds: union_of_images.is_subset(&image_of_union)?,
        union,
        union_of_images,
        image_of_union,
    })
}
