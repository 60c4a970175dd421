//! Deciders for Rees-type congruence properties.
//!
//! [`Analyzer`] caches the congruence lattice, the subuniverses, the unary
//! polynomials and the principal congruences of one algebra, so several
//! properties can be decided without recomputing them. The free functions
//! are one-shot wrappers.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::{Element, FiniteAlgebra};
use crate::congruence::{all_congruences_with, is_congruence, CongruenceLattice, PrincipalTable};
use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::Partition;
use crate::polynomial::{unary_polynomials_with, UnaryFunction};
use crate::subuniverse::{
    all_subuniverses_with, closed_classes, generated_subuniverse, is_subuniverse, subalgebra,
};
use crate::term::{satisfies_identity_with, Compiled, Term};

/// Evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    None,
    /// A subuniverse `B` with `B² ∪ ω` not a congruence.
    FailingSubuniverse { block: ElementSet },
    /// For each non-trivial congruence, the chosen class.
    ChosenBlocks { choices: Vec<(Partition, ElementSet)> },
    /// A non-trivial congruence without a qualifying class.
    FailingCongruence { congruence: Partition },
    /// For each atom, its non-singleton blocks.
    AtomBlocks { atoms: Vec<(Partition, Vec<ElementSet>)> },
    /// An atom with zero or several non-singleton blocks.
    FailingAtom { atom: Partition, blocks: Vec<ElementSet> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub witness: Witness,
}

impl PropertyVerdict {
    fn yes(witness: Witness) -> Self {
        PropertyVerdict { holds: true, witness }
    }

    fn no(witness: Witness) -> Self {
        PropertyVerdict { holds: false, witness }
    }
}

/// `B² ∪ ω` as a partition; not necessarily a congruence.
pub fn rees_extension(alg: &FiniteAlgebra, block: ElementSet) -> Partition {
    Partition::omega(alg.size())
        .expect("non-empty universe")
        .merge_set(block)
}

/// `B² ∪ ω ∈ Con A`.
pub fn is_rees_block(alg: &FiniteAlgebra, block: ElementSet) -> bool {
    is_congruence(alg, &rees_extension(alg, block)).expect("sizes agree")
}

/// `B² ∪ ω ∈ Con A` decided through unary polynomials: for `(a, b) ∈ B²`
/// and `p ∈ P₁(A)`, `(p(a), p(b)) ∈ B² ∪ ω`.
pub fn is_rees_block_via_polynomials(polys: &[UnaryFunction], block: ElementSet) -> bool {
    let elems = block.to_vec();
    polys.iter().all(|p| {
        elems.iter().all(|&a| {
            elems.iter().all(|&b| {
                let (pa, pb) = (p.apply(a), p.apply(b));
                pa == pb || (block.contains(pa) && block.contains(pb))
            })
        })
    })
}

pub struct Analyzer<'a> {
    alg: &'a FiniteAlgebra,
    limits: Limits,
    lattice: OnceLock<Result<CongruenceLattice>>,
    subuniverses: OnceLock<Result<Vec<ElementSet>>>,
    polynomials: OnceLock<Result<Vec<UnaryFunction>>>,
    principals: OnceLock<PrincipalTable>,
}

impl<'a> Analyzer<'a> {
    pub fn new(alg: &'a FiniteAlgebra) -> Self {
        Self::with_limits(alg, Limits::default())
    }

    pub fn with_limits(alg: &'a FiniteAlgebra, limits: Limits) -> Self {
        Analyzer {
            alg,
            limits,
            lattice: OnceLock::new(),
            subuniverses: OnceLock::new(),
            polynomials: OnceLock::new(),
            principals: OnceLock::new(),
        }
    }

    pub fn algebra(&self) -> &'a FiniteAlgebra {
        self.alg
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn lattice(&self) -> Result<&CongruenceLattice> {
        self.lattice
            .get_or_init(|| all_congruences_with(self.alg, &self.limits))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn subuniverses(&self) -> Result<&[ElementSet]> {
        self.subuniverses
            .get_or_init(|| all_subuniverses_with(self.alg, &self.limits))
            .as_deref()
            .map_err(Clone::clone)
    }

    pub fn polynomials(&self) -> Result<&[UnaryFunction]> {
        self.polynomials
            .get_or_init(|| unary_polynomials_with(self.alg, &self.limits))
            .as_deref()
            .map_err(Clone::clone)
    }

    pub fn principals(&self) -> &PrincipalTable {
        self.principals.get_or_init(|| PrincipalTable::new(self.alg))
    }

    /// Every subuniverse is a Rees block. Witness on failure: the first
    /// failing subuniverse in canonical order.
    pub fn rees_algebra(&self) -> Result<PropertyVerdict> {
        Ok(
            match self
                .subuniverses()?
                .iter()
                .find(|&&b| !is_rees_block(self.alg, b))
            {
                Some(&block) => PropertyVerdict::no(Witness::FailingSubuniverse { block }),
                None => PropertyVerdict::yes(Witness::None),
            },
        )
    }

    /// `⟨{a,b}⟩² ∪ ω ∈ Con A` for all `a, b`: every subuniverse generated by
    /// at most two elements is a Rees block of the whole algebra.
    pub fn rees_algebra_via_two_generated(&self) -> Result<bool> {
        let n = self.alg.size();
        let mut done = HashSet::new();
        for a in 0..n {
            for b in a + 1..n {
                let s = generated_subuniverse(self.alg, [a, b].into_iter().collect());
                if done.insert(s) && !is_rees_block(self.alg, s) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every subalgebra generated by at most two elements is a Rees algebra
    /// in its own right. Implied by the Rees property but strictly weaker;
    /// [`diamond_semilattice`](crate::structures::diamond_semilattice) satisfies this and is not Rees.
    pub fn two_generated_subalgebras_are_rees(&self) -> Result<bool> {
        let n = self.alg.size();
        let mut done = HashSet::new();
        for a in 0..n {
            for b in a..n {
                let s = generated_subuniverse(self.alg, [a, b].into_iter().collect());
                if !done.insert(s) {
                    continue;
                }
                let (sub, _) = subalgebra(self.alg, s)?;
                if !Analyzer::with_limits(&sub, self.limits.clone())
                    .rees_algebra()?
                    .holds
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `(p(a), p(b)) ∈ ⟨{a,b}⟩² ∪ ω` for all `a, b` and `p ∈ P₁`.
    pub fn rees_algebra_via_polynomials(&self) -> Result<bool> {
        let polys = self.polynomials()?;
        let n = self.alg.size();
        for a in 0..n {
            for b in a + 1..n {
                let s = generated_subuniverse(self.alg, [a, b].into_iter().collect());
                let ok = polys.iter().all(|p| {
                    let (pa, pb) = (p.apply(a), p.apply(b));
                    pa == pb || (s.contains(pa) && s.contains(pb))
                });
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The class used as quasi-Rees witness for `theta`: the closed Rees
    /// block with at least two elements and least minimum.
    pub fn quasi_rees_block(&self, theta: &Partition) -> Option<ElementSet> {
        theta
            .blocks()
            .into_iter()
            .find(|&c| c.len() >= 2 && is_subuniverse(self.alg, c) && is_rees_block(self.alg, c))
    }

    pub fn quasi_rees(&self) -> Result<PropertyVerdict> {
        let lat = self.lattice()?;
        let mut choices = Vec::new();
        for theta in lat.congruences().iter().filter(|t| !t.is_omega()) {
            match self.quasi_rees_block(theta) {
                Some(c) => choices.push((theta.clone(), c)),
                None => {
                    return Ok(PropertyVerdict::no(Witness::FailingCongruence {
                        congruence: theta.clone(),
                    }))
                }
            }
        }
        Ok(PropertyVerdict::yes(Witness::ChosenBlocks { choices }))
    }

    /// Every atom of the congruence lattice has exactly one non-singleton block.
    pub fn one_block_property(&self) -> Result<PropertyVerdict> {
        let lat = self.lattice()?;
        let mut atoms = Vec::new();
        for atom in lat.atoms() {
            let blocks = atom.non_singleton_blocks();
            if blocks.len() != 1 {
                return Ok(PropertyVerdict::no(Witness::FailingAtom {
                    atom: atom.clone(),
                    blocks,
                }));
            }
            atoms.push((atom.clone(), blocks));
        }
        Ok(PropertyVerdict::yes(Witness::AtomBlocks { atoms }))
    }

    /// For all `a, b`: if `(a, b) ∈ Θ(x, y)` for every `(x, y) ∈ Θ(a, b)`
    /// with `x ≠ y`, then every such `x, y` lies in `[a]Θ(a, b)`.
    /// Uses principal congruences only, no lattice.
    pub fn obp_characterization(&self) -> bool {
        let pt = self.principals();
        let n = self.alg.size();
        for a in 0..n {
            for b in 0..n {
                let Some(tab) = pt.get(a, b) else { continue };
                let pairs = || {
                    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
                        .filter(|&(x, y)| x != y && tab.related(x, y))
                };
                let hypothesis = pairs().all(|(x, y)| {
                    pt.get(x, y).expect("x != y").related(a, b)
                });
                if !hypothesis {
                    continue;
                }
                let class = tab.class_of(a);
                if !pairs().all(|(x, y)| class.contains(x) && class.contains(y)) {
                    return false;
                }
            }
        }
        true
    }

    /// `θ ↦ [e]θ` is injective on the congruence lattice.
    pub fn weakly_regular_at(&self, e: Element) -> Result<bool> {
        self.alg.check_element(e)?;
        let lat = self.lattice()?;
        let classes: HashSet<ElementSet> = lat.congruences().iter().map(|t| t.class_of(e)).collect();
        Ok(classes.len() == lat.len())
    }

    /// For each non-trivial congruence, its closed class with at least two
    /// elements and least minimum, if any.
    pub fn nontrivial_subuniverse_classes(&self) -> Result<Vec<(Partition, Option<ElementSet>)>> {
        let lat = self.lattice()?;
        Ok(lat
            .congruences()
            .iter()
            .filter(|t| !t.is_omega())
            .map(|t| {
                let found = closed_classes(self.alg, t)
                    .into_iter()
                    .find(|c| !c.trivial)
                    .map(|c| c.block);
                (t.clone(), found)
            })
            .collect())
    }
}

pub fn is_rees_algebra(alg: &FiniteAlgebra) -> Result<PropertyVerdict> {
    Analyzer::new(alg).rees_algebra()
}

pub fn is_rees_algebra_via_two_generated(alg: &FiniteAlgebra) -> Result<bool> {
    Analyzer::new(alg).rees_algebra_via_two_generated()
}

pub fn is_rees_algebra_via_polynomials(alg: &FiniteAlgebra) -> Result<bool> {
    Analyzer::new(alg).rees_algebra_via_polynomials()
}

pub fn is_quasi_rees(alg: &FiniteAlgebra) -> Result<PropertyVerdict> {
    Analyzer::new(alg).quasi_rees()
}

pub fn has_one_block_property(alg: &FiniteAlgebra) -> Result<PropertyVerdict> {
    Analyzer::new(alg).one_block_property()
}

pub fn obp_characterization_holds(alg: &FiniteAlgebra) -> bool {
    Analyzer::new(alg).obp_characterization()
}

pub fn is_weakly_regular_at(alg: &FiniteAlgebra, e: Element) -> Result<bool> {
    Analyzer::new(alg).weakly_regular_at(e)
}

pub fn nontrivial_subuniverse_class_report(
    alg: &FiniteAlgebra,
) -> Result<Vec<(Partition, Option<ElementSet>)>> {
    Analyzer::new(alg).nontrivial_subuniverse_classes()
}

/// `f(v(x), ..., v(x)) ≈ v(x)` for every operation `f`; `v` may contain at
/// most one variable.
pub fn check_csakany_term(alg: &FiniteAlgebra, v: &Term) -> Result<bool> {
    v.check(alg.signature())?;
    if v.variables().len() > 1 {
        return Err(Error::InvalidArgument(format!(
            "`{v}` must contain at most one variable"
        )));
    }
    let limits = Limits::default();
    for sym in alg.signature().symbols() {
        let lhs = Term::app(sym.name.clone(), vec![v.clone(); sym.arity]);
        if !satisfies_identity_with(alg, &lhs, v, &limits)?.holds() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn compile_binary(alg: &FiniteAlgebra, terms: &[Term]) -> Result<Vec<Compiled>> {
    if terms.is_empty() {
        return Err(Error::InvalidArgument("at least one term is required".into()));
    }
    terms
        .iter()
        .map(|t| {
            if t.variables().iter().any(|&v| v > 1) {
                return Err(Error::InvalidArgument(format!(
                    "`{t}` is not a binary term in x, y"
                )));
            }
            Compiled::new(alg, t)
        })
        .collect()
}

/// `p₀(x,y) = ... = p_n(x,y)` holds exactly when `x = y`.
pub fn check_p_terms_condition(alg: &FiniteAlgebra, terms: &[Term]) -> Result<bool> {
    let compiled = compile_binary(alg, terms)?;
    let n = alg.size();
    Ok((0..n).all(|x| {
        (0..n).all(|y| {
            let first = compiled[0].eval(alg, &[x, y]);
            let agree = compiled.iter().all(|t| t.eval(alg, &[x, y]) == first);
            agree == (x == y)
        })
    }))
}

/// `t₁(x,y) = ... = t_n(x,y) = e` holds exactly when `x = y`.
pub fn check_weak_regularity_terms(alg: &FiniteAlgebra, e: Element, terms: &[Term]) -> Result<bool> {
    alg.check_element(e)?;
    let compiled = compile_binary(alg, terms)?;
    let n = alg.size();
    Ok((0..n).all(|x| {
        (0..n).all(|y| compiled.iter().all(|t| t.eval(alg, &[x, y]) == e) == (x == y))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse_partition, parse_term};
    use crate::structures::{cyclic_group, diamond_semilattice, implication_fixture, loop_from_cayley};

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn rees_extension_shapes() {
        let a = diamond_semilattice();
        assert_eq!(rees_extension(&a, set(&[2, 3])).to_string(), "0|1|2 3");
        assert!(rees_extension(&a, ElementSet::EMPTY).is_omega());
        assert!(rees_extension(&a, set(&[1])).is_omega());
        assert!(rees_extension(&a, a.universe()).is_full());
    }

    #[test]
    fn rees_blocks_of_diamond() {
        let a = diamond_semilattice();
        assert!(is_rees_block(&a, set(&[1, 2, 3])));
        assert!(!is_rees_block(&a, set(&[0, 3])));
        assert!(is_rees_block(&a, set(&[2])));
        let polys = crate::polynomial::unary_polynomials(&a).unwrap();
        for bits in 0..16 {
            let b = ElementSet::from_bits(bits);
            assert_eq!(is_rees_block(&a, b), is_rees_block_via_polynomials(&polys, b));
        }
    }

    #[test]
    fn diamond_is_not_rees_but_quasi_rees() {
        let a = diamond_semilattice();
        let an = Analyzer::new(&a);
        let rees = an.rees_algebra().unwrap();
        assert!(!rees.holds);
        let Witness::FailingSubuniverse { block } = rees.witness else { panic!() };
        assert!(!is_rees_block(&a, block));
        assert!(!an.rees_algebra_via_two_generated().unwrap());
        assert!(!an.rees_algebra_via_polynomials().unwrap());
        // {0, 3} fails only through the element 1 outside it
        assert!(an.two_generated_subalgebras_are_rees().unwrap());

        let qr = an.quasi_rees().unwrap();
        assert!(qr.holds);
        let Witness::ChosenBlocks { choices } = qr.witness else { panic!() };
        assert_eq!(choices.len(), 6);
        for (theta, c) in choices {
            assert!(theta.non_singleton_blocks().contains(&c));
            assert!(is_subuniverse(&a, c) && is_rees_block(&a, c));
        }
        assert!(an.one_block_property().unwrap().holds);
        assert!(an.obp_characterization());
    }

    #[test]
    fn unary_and_trivial_algebras_are_rees() {
        let u = FiniteAlgebra::new("u", 4, [("s", 1, vec![1, 2, 3, 0]), ("t", 1, vec![0, 0, 2, 2])]).unwrap();
        let an = Analyzer::new(&u);
        assert!(an.rees_algebra().unwrap().holds);
        assert!(an.rees_algebra_via_two_generated().unwrap());
        assert!(an.rees_algebra_via_polynomials().unwrap());
        let one = FiniteAlgebra::new("one", 1, [("f", 2, vec![0])]).unwrap();
        assert!(is_rees_algebra(&one).unwrap().holds);
        assert!(is_quasi_rees(&one).unwrap().holds);
        assert!(has_one_block_property(&one).unwrap().holds);
    }

    #[test]
    fn swap_is_quasi_rees() {
        let swap = FiniteAlgebra::new("swap", 2, [("s", 1, vec![1, 0])]).unwrap();
        assert_eq!(crate::congruence::all_congruences(&swap).unwrap().len(), 2);
        assert!(is_quasi_rees(&swap).unwrap().holds);
        assert!(has_one_block_property(&swap).unwrap().holds);
    }

    #[test]
    fn obp_fails_with_two_block_atom() {
        // x ↦ x + 2 mod 4 as a unary operation: Θ(0,2) = {0,2}{1,3} is an atom
        let a = FiniteAlgebra::new("rot", 4, [("r", 1, vec![1, 2, 3, 0])]).unwrap();
        let an = Analyzer::new(&a);
        let obp = an.one_block_property().unwrap();
        assert!(!obp.holds);
        let Witness::FailingAtom { atom, blocks } = obp.witness else { panic!() };
        assert_eq!(atom.to_string(), "0 2|1 3");
        assert_eq!(blocks.len(), 2);
        assert!(!an.obp_characterization());
    }

    #[test]
    fn weak_regularity() {
        let z3 = cyclic_group(3).with_constant("zero", 0).unwrap();
        assert!(is_weakly_regular_at(&z3, 0).unwrap());
        let a = diamond_semilattice();
        assert!(!is_weakly_regular_at(&a, 3).unwrap());
        let t1 = parse_partition("0|1|2 3", 4).unwrap();
        let t3 = parse_partition("0 1|2 3", 4).unwrap();
        assert_eq!(t1.class_of(3), t3.class_of(3));
        assert!(is_weakly_regular_at(&a, 4).is_err());
    }

    #[test]
    fn term_conditions() {
        let a = diamond_semilattice();
        let sig = a.signature();
        assert!(check_csakany_term(&a, &Term::Var(0)).unwrap());
        assert!(check_csakany_term(&a, &parse_term("join(x,0)", sig).unwrap()).unwrap());
        assert!(check_csakany_term(&a, &parse_term("join(x,y)", sig).unwrap()).is_err());
        assert!(check_p_terms_condition(&a, &[Term::Var(0), Term::Var(1)]).unwrap());
        assert!(!check_weak_regularity_terms(&a, 3, &[parse_term("join(x,y)", sig).unwrap()]).unwrap());

        let imp = implication_fixture();
        let sig = imp.signature();
        let xy = parse_term("imp(x,y)", sig).unwrap();
        let yx = parse_term("imp(y,x)", sig).unwrap();
        assert!(check_weak_regularity_terms(&imp, 1, &[xy.clone(), yx.clone()]).unwrap());
        assert!(check_p_terms_condition(&imp, &[Term::Const(1), xy, yx]).unwrap());

        let lp = loop_from_cayley("z3", &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        let sig = lp.signature();
        let one = parse_term("one", sig).unwrap();
        let div = parse_term("rdiv(x,y)", sig).unwrap();
        assert!(check_csakany_term(&lp, &one).unwrap());
        assert!(check_weak_regularity_terms(&lp, 0, std::slice::from_ref(&div)).unwrap());
        assert!(check_p_terms_condition(&lp, &[one, div]).unwrap());
    }

    #[test]
    fn nontrivial_class_report() {
        let a = diamond_semilattice();
        let report = nontrivial_subuniverse_class_report(&a).unwrap();
        let t4 = parse_partition("0|1 2 3", 4).unwrap();
        let entry = report.iter().find(|(t, _)| *t == t4).unwrap();
        assert_eq!(entry.1, Some(set(&[1, 2, 3])));
        // Z4 with the constant 1: neither {0 2} nor {1 3} is closed
        let z4 = cyclic_group(4).with_constant("one", 1).unwrap();
        let report = nontrivial_subuniverse_class_report(&z4).unwrap();
        let mid = parse_partition("0 2|1 3", 4).unwrap();
        assert_eq!(report.iter().find(|(t, _)| *t == mid).unwrap().1, None);
    }
}
