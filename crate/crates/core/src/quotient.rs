//! Quotient algebras `A/θ` and the correspondence between congruences above
//! `θ` and congruences of the quotient.

use serde::Serialize;

use crate::algebra::{Element, FiniteAlgebra};
use crate::congruence::{is_congruence, CongruenceLattice};
use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::properties::{is_rees_block, rees_extension, Analyzer};
use crate::subuniverse::{for_each_tuple, is_subuniverse};

/// `A/θ` on the block indices of `θ` (ordered by least element).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientAlgebra {
    pub algebra: FiniteAlgebra,
    pub theta: Partition,
    pub class_of: Vec<usize>,
    pub representative_of: Vec<Element>,
}

fn require_congruence(alg: &FiniteAlgebra, theta: &Partition) -> Result<()> {
    if is_congruence(alg, theta)? {
        Ok(())
    } else {
        Err(Error::NotACongruence(theta.to_string()))
    }
}

pub fn quotient_algebra(alg: &FiniteAlgebra, theta: &Partition) -> Result<QuotientAlgebra> {
    require_congruence(alg, theta)?;
    let reps: Vec<Element> = theta
        .blocks()
        .iter()
        .map(|b| b.min().expect("non-empty block"))
        .collect();
    let mut ops = Vec::new();
    for (op, sym, _) in alg.ops() {
        let mut table = Vec::with_capacity(reps.len().pow(sym.arity as u32));
        for_each_tuple(&reps, sym.arity, |args| {
            table.push(theta.class_index(alg.apply(op, args)));
            true
        });
        ops.push((sym.name.clone(), sym.arity, table));
    }
    let algebra = FiniteAlgebra::new(format!("{}_quotient", alg.name()), reps.len(), ops)?;
    #[cfg(debug_assertions)]
    for (op, sym, _) in alg.ops() {
        let all: Vec<Element> = (0..alg.size()).collect();
        for_each_tuple(&all, sym.arity, |args| {
            let classes: Vec<usize> = args.iter().map(|&a| theta.class_index(a)).collect();
            debug_assert_eq!(
                algebra.apply(op, &classes),
                theta.class_index(alg.apply(op, args))
            );
            true
        });
    }
    Ok(QuotientAlgebra {
        algebra,
        theta: theta.clone(),
        class_of: theta.block_of().to_vec(),
        representative_of: reps,
    })
}

/// Union of the blocks with indices in `blocks`.
pub fn lift_subset(theta: &Partition, blocks: ElementSet) -> Result<ElementSet> {
    let count = theta.block_count();
    if let Some(bad) = blocks.iter().find(|&b| b >= count) {
        return Err(Error::OutOfRange {
            element: bad,
            size: count,
        });
    }
    Ok((0..theta.size())
        .filter(|&x| blocks.contains(theta.class_index(x)))
        .collect())
}

/// `φ/θ` as a partition of the block indices of `θ`.
pub fn project_congruence(alg: &FiniteAlgebra, theta: &Partition, phi: &Partition) -> Result<Partition> {
    require_congruence(alg, theta)?;
    require_congruence(alg, phi)?;
    if !theta.refines(phi) {
        return Err(Error::NotAbove {
            outer: theta.to_string(),
            inner: phi.to_string(),
        });
    }
    Ok(project_unchecked(theta, phi))
}

fn project_unchecked(theta: &Partition, phi: &Partition) -> Partition {
    let labels: Vec<usize> = theta
        .blocks()
        .iter()
        .map(|b| phi.class_index(b.min().expect("non-empty block")))
        .collect();
    Partition::normalize(&labels)
}

/// The congruence of `alg` whose quotient by `theta` is `psi`.
pub fn lift_congruence(alg: &FiniteAlgebra, theta: &Partition, psi: &Partition) -> Result<Partition> {
    let q = quotient_algebra(alg, theta)?;
    if psi.size() != q.algebra.size() {
        return Err(Error::SizeMismatch {
            left: q.algebra.size(),
            right: psi.size(),
        });
    }
    require_congruence(&q.algebra, psi)?;
    let labels: Vec<usize> = (0..alg.size())
        .map(|x| psi.class_index(theta.class_index(x)))
        .collect();
    Ok(Partition::normalize(&labels))
}

/// Both sides of the Rees correspondence for a set `B` of `θ`-blocks with
/// union `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorrespondenceCheck {
    /// `B² ∪ ω` is a congruence of `A/θ`.
    pub quotient_rees: bool,
    /// `C² ∪ θ` is a congruence of `A`.
    pub base_rees: bool,
    /// `B² ∪ ω = (C² ∪ θ)/θ`; `None` unless both sides are congruences.
    pub equality_holds: Option<bool>,
    /// `B` closed in `A/θ` exactly when `C` is closed in `A`.
    pub subuniverse_match: bool,
}

impl CorrespondenceCheck {
    pub fn consistent(&self) -> bool {
        self.quotient_rees == self.base_rees
            && self.equality_holds != Some(false)
            && self.subuniverse_match
    }
}

pub fn rees_correspondence_check(
    alg: &FiniteAlgebra,
    theta: &Partition,
    blocks: ElementSet,
) -> Result<CorrespondenceCheck> {
    let q = quotient_algebra(alg, theta)?;
    let c = lift_subset(theta, blocks)?;
    let quotient_rees = is_rees_block(&q.algebra, blocks);
    let base = theta.merge_set(c);
    let base_rees = is_congruence(alg, &base)?;
    let equality_holds = (quotient_rees && base_rees)
        .then(|| rees_extension(&q.algebra, blocks) == project_unchecked(theta, &base));
    let subuniverse_match = is_subuniverse(&q.algebra, blocks) == is_subuniverse(alg, c);
    Ok(CorrespondenceCheck {
        quotient_rees,
        base_rees,
        equality_holds,
        subuniverse_match,
    })
}

/// `A/θ` is quasi-Rees, decided on `A`: every congruence strictly above `θ`
/// has a class `C` that is a subuniverse, not a single `θ`-class, and has
/// `C² ∪ θ ∈ Con A`.
pub fn quotient_quasi_rees_via_classes(alg: &FiniteAlgebra, theta: &Partition) -> Result<bool> {
    let an = Analyzer::new(alg);
    quotient_quasi_rees_in(alg, an.lattice()?, theta)
}

pub(crate) fn quotient_quasi_rees_in(
    alg: &FiniteAlgebra,
    lat: &CongruenceLattice,
    theta: &Partition,
) -> Result<bool> {
    require_congruence(alg, theta)?;
    let theta_blocks = theta.blocks();
    for phi in lat.filter_above(theta)? {
        if phi == theta {
            continue;
        }
        let found = phi.blocks().into_iter().any(|c| {
            !theta_blocks.contains(&c)
                && is_subuniverse(alg, c)
                && is_congruence(alg, &theta.merge_set(c)).expect("sizes agree")
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A/θ` has the one-block-property, decided on `A`: every cover `Φ` of `θ`
/// equals `C² ∪ θ` for a union `C` of `θ`-blocks, i.e. `Φ/θ` has exactly one
/// non-singleton block.
pub fn quotient_obp_via_covers(alg: &FiniteAlgebra, theta: &Partition) -> Result<bool> {
    let an = Analyzer::new(alg);
    quotient_obp_in(alg, an.lattice()?, theta)
}

pub(crate) fn quotient_obp_in(alg: &FiniteAlgebra, lat: &CongruenceLattice, theta: &Partition) -> Result<bool> {
    require_congruence(alg, theta)?;
    Ok(lat
        .covers_of(theta)?
        .into_iter()
        .all(|phi| project_unchecked(theta, phi).non_singleton_blocks().len() == 1))
}
