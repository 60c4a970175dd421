//! Subuniverses: closure, enumeration, subalgebras, and closed congruence
//! classes.

use crate::algebra::{Element, FiniteAlgebra};
use crate::congruence::is_congruence;
use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::Partition;

/// Calls `f` on every tuple of length `m` over `elems`, reusing one buffer.
/// Stops early and returns `false` as soon as `f` does.
pub(crate) fn for_each_tuple(elems: &[Element], m: usize, mut f: impl FnMut(&[Element]) -> bool) -> bool {
    if m == 0 {
        return f(&[]);
    }
    if elems.is_empty() {
        return true;
    }
    let mut counter = vec![0usize; m];
    let mut tuple = vec![elems[0]; m];
    loop {
        if !f(&tuple) {
            return false;
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < elems.len() {
                tuple[pos] = elems[counter[pos]];
                break;
            }
            counter[pos] = 0;
            tuple[pos] = elems[0];
        }
    }
}

/// `s` is closed under every operation; nullary symbols must lie in `s`.
pub fn is_subuniverse(alg: &FiniteAlgebra, s: ElementSet) -> bool {
    if !s.is_subset(alg.universe()) {
        return false;
    }
    let elems = s.to_vec();
    alg.ops().all(|(op, sym, _)| {
        for_each_tuple(&elems, sym.arity, |args| s.contains(alg.apply(op, args)))
    })
}

/// Least subuniverse containing `s` (and every constant).
pub fn generated_subuniverse(alg: &FiniteAlgebra, s: ElementSet) -> ElementSet {
    let mut current = s.intersection(alg.universe()).union(alg.constants().collect());
    loop {
        let elems = current.to_vec();
        let mut next = current;
        for (op, sym, _) in alg.ops() {
            if sym.arity == 0 {
                continue;
            }
            for_each_tuple(&elems, sym.arity, |args| {
                next.insert(alg.apply(op, args));
                true
            });
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

pub fn all_subuniverses(alg: &FiniteAlgebra) -> Result<Vec<ElementSet>> {
    all_subuniverses_with(alg, &Limits::default())
}

/// Every closed subset, by size and then lexicographically. The empty set is
/// included exactly when there are no nullary symbols.
pub fn all_subuniverses_with(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<ElementSet>> {
    let n = alg.size();
    Limits::check("subuniverse enumeration size", n as u64, limits.subuniverse_size as u64)?;
    let mut out: Vec<ElementSet> = (0..1u64 << n)
        .map(ElementSet::from_bits)
        .filter(|&s| is_subuniverse(alg, s))
        .collect();
    out.sort_by(ElementSet::canonical_cmp);
    Ok(out)
}

/// The subalgebra on `s`, relabelled by ascending element. Returns the
/// algebra and the map from new labels to old elements.
pub fn subalgebra(alg: &FiniteAlgebra, s: ElementSet) -> Result<(FiniteAlgebra, Vec<Element>)> {
    if s.is_empty() || !is_subuniverse(alg, s) {
        return Err(Error::InvalidArgument(format!(
            "{s} is not a non-empty subuniverse"
        )));
    }
    let elems = s.to_vec();
    let mut label = vec![usize::MAX; alg.size()];
    for (i, &e) in elems.iter().enumerate() {
        label[e] = i;
    }
    let mut ops = Vec::new();
    for (op, sym, _) in alg.ops() {
        let mut table = Vec::with_capacity(elems.len().pow(sym.arity as u32));
        for_each_tuple(&elems, sym.arity, |args| {
            table.push(label[alg.apply(op, args)]);
            true
        });
        ops.push((sym.name.clone(), sym.arity, table));
    }
    let sub = FiniteAlgebra::new(format!("{}_sub", alg.name()), elems.len(), ops)?;
    Ok((sub, elems))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedClass {
    pub block: ElementSet,
    /// Singleton class.
    pub trivial: bool,
}

/// The classes of `theta` that are subuniverses, in block order.
pub fn classes_that_are_subuniverses(alg: &FiniteAlgebra, theta: &Partition) -> Result<Vec<ClosedClass>> {
    if !is_congruence(alg, theta)? {
        return Err(Error::NotACongruence(theta.to_string()));
    }
    Ok(closed_classes(alg, theta))
}

pub(crate) fn closed_classes(alg: &FiniteAlgebra, theta: &Partition) -> Vec<ClosedClass> {
    theta
        .blocks()
        .into_iter()
        .filter(|&b| is_subuniverse(alg, b))
        .map(|block| ClosedClass {
            block,
            trivial: block.len() < 2,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_partition;
    use crate::structures::diamond_semilattice;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn closure_on_diamond() {
        let a = diamond_semilattice();
        assert!(is_subuniverse(&a, set(&[1, 2, 3])));
        assert!(!is_subuniverse(&a, set(&[1, 2])));
        assert!(is_subuniverse(&a, a.universe()));
        assert_eq!(generated_subuniverse(&a, set(&[1, 2])), set(&[1, 2, 3]));
        assert_eq!(generated_subuniverse(&a, set(&[2, 3])), set(&[2, 3]));
        let c = a.with_constant("c", 1).unwrap();
        assert_eq!(generated_subuniverse(&c, ElementSet::EMPTY), set(&[1]));
        assert!(!is_subuniverse(&c, ElementSet::EMPTY));
        assert!(is_subuniverse(&a, ElementSet::EMPTY));
    }

    #[test]
    fn enumeration_matches_subset_filter() {
        let a = diamond_semilattice();
        let subs = all_subuniverses(&a).unwrap();
        // brute force over all 16 subsets: closed iff x∨y stays inside
        let mut expected: Vec<ElementSet> = (0..16u64)
            .map(ElementSet::from_bits)
            .filter(|s| {
                s.iter()
                    .all(|x| s.iter().all(|y| s.contains(a.eval_op("join", &[x, y]).unwrap())))
            })
            .collect();
        expected.sort_by(ElementSet::canonical_cmp);
        assert_eq!(subs, expected);
        assert!(subs.contains(&set(&[0, 1])));
        assert!(!subs.contains(&set(&[1, 2])));
        assert_eq!(subs.last(), Some(&a.universe()));

        let one = FiniteAlgebra::new("one", 1, [("f", 2, vec![0])]).unwrap();
        assert_eq!(all_subuniverses(&one).unwrap(), vec![ElementSet::EMPTY, set(&[0])]);
    }

    #[test]
    fn closed_classes_of_diamond() {
        let a = diamond_semilattice();
        let t4 = parse_partition("0|1 2 3", 4).unwrap();
        let found = classes_that_are_subuniverses(&a, &t4).unwrap();
        assert_eq!(found.len(), 2);
        assert_eq!(found[1], ClosedClass { block: set(&[1, 2, 3]), trivial: false });
        let t1 = parse_partition("0|1|2 3", 4).unwrap();
        let found = classes_that_are_subuniverses(&a, &t1).unwrap();
        assert_eq!(found.len(), 3);
        assert!(!found[2].trivial);
        let bad = parse_partition("0 3|1|2", 4).unwrap();
        assert!(matches!(
            classes_that_are_subuniverses(&a, &bad),
            Err(Error::NotACongruence(_))
        ));
    }

    #[test]
    fn subalgebra_relabels() {
        let a = diamond_semilattice();
        let (sub, map) = subalgebra(&a, set(&[1, 2, 3])).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(sub.table(0), &[0, 2, 2, 2, 1, 2, 2, 2, 2]);
    }
}
