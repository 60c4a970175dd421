//! The unary polynomial functions `P₁(A)` of a finite algebra.
//!
//! `P₁(A)` is the least set of maps `A → A` containing the identity and
//! every constant map and closed under `x ↦ f(g₁(x), ..., g_m(x))` for each
//! operation `f`. Only the function tables are kept.

use std::collections::{BTreeSet, HashSet};

use crate::algebra::{Element, FiniteAlgebra};
use crate::congruence::is_congruence;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnaryFunction {
    table: Vec<Element>,
}

impl UnaryFunction {
    pub fn new(table: Vec<Element>) -> Self {
        UnaryFunction { table }
    }

    pub fn identity(n: usize) -> Self {
        UnaryFunction::new((0..n).collect())
    }

    pub fn constant(n: usize, c: Element) -> Self {
        UnaryFunction::new(vec![c; n])
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.table[x]
    }

    pub fn is_constant(&self) -> bool {
        self.table.windows(2).all(|w| w[0] == w[1])
    }
}

/// Membership test for function codes `Σ table[x]·n^x`.
enum Seen {
    Dense(Vec<bool>),
    Sparse(HashSet<u64>),
}

impl Seen {
    fn new(n: usize) -> Self {
        match (n as u64).checked_pow(n as u32) {
            Some(total) if total <= 1 << 24 => Seen::Dense(vec![false; total as usize]),
            _ => Seen::Sparse(HashSet::new()),
        }
    }

    fn insert(&mut self, code: u64) -> bool {
        match self {
            Seen::Dense(bits) => !std::mem::replace(&mut bits[code as usize], true),
            Seen::Sparse(set) => set.insert(code),
        }
    }
}

pub fn unary_polynomials(alg: &FiniteAlgebra) -> Result<Vec<UnaryFunction>> {
    unary_polynomials_with(alg, &Limits::default())
}

/// `P₁(alg)` in lexicographic order of the tables.
pub fn unary_polynomials_with(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<UnaryFunction>> {
    let n = alg.size();
    Limits::check("unary polynomial clone size", n as u64, limits.polynomial_size as u64)?;
    let pow: Vec<u64> = (0..n).map(|x| (n as u64).pow(x as u32)).collect();
    let code = |t: &[Element]| t.iter().zip(&pow).map(|(&v, &p)| v as u64 * p).sum::<u64>();

    let mut seen = Seen::new(n);
    let mut members: Vec<Vec<Element>> = Vec::new();
    let mut push = |t: &[Element], members: &mut Vec<Vec<Element>>| {
        if seen.insert(code(t)) {
            members.push(t.to_vec());
        }
    };
    push(&(0..n).collect::<Vec<_>>(), &mut members);
    for c in 0..n {
        push(&vec![c; n], &mut members);
    }

    let ops: Vec<(usize, usize)> = alg
        .ops()
        .filter(|(_, s, _)| s.arity > 0)
        .map(|(op, s, _)| (op, s.arity))
        .collect();
    let mut args = vec![0usize; alg.signature().max_arity()];
    let mut result = vec![0usize; n];
    // Semi-naive closure: member k is combined with every tuple over
    // members[0..=k] in which k is the largest index.
    // every map A → A already present: nothing left to add
    let all_maps = (n as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    let mut k = 0;
    while k < members.len() && (members.len() as u64) < all_maps {
        for &(op, m) in &ops {
            for pos in 0..m {
                // positions before `pos` range over [0, k), after over [0, k]
                let bound = |i: usize| if i < pos { k } else { k + 1 };
                if (0..m).any(|i| i != pos && bound(i) == 0) {
                    continue;
                }
                let mut idx = vec![0usize; m];
                idx[pos] = k;
                loop {
                    for (x, slot) in result.iter_mut().enumerate() {
                        for (a, &i) in args.iter_mut().zip(&idx) {
                            *a = members[i][x];
                        }
                        *slot = alg.apply(op, &args[..m]);
                    }
                    push(&result, &mut members);
                    // advance the odometer over every position except `pos`
                    let mut i = m;
                    let done = loop {
                        if i == 0 {
                            break true;
                        }
                        i -= 1;
                        if i == pos {
                            continue;
                        }
                        idx[i] += 1;
                        if idx[i] < bound(i) {
                            break false;
                        }
                        idx[i] = 0;
                    };
                    if done {
                        break;
                    }
                }
            }
        }
        k += 1;
    }
    let mut out: Vec<UnaryFunction> = members.into_iter().map(UnaryFunction::new).collect();
    out.sort();
    Ok(out)
}

/// `{[x]θ ↦ [p(x)]θ : p ∈ P₁(alg)}` as functions on block indices.
pub fn quotient_unary_polynomials(alg: &FiniteAlgebra, theta: &Partition) -> Result<Vec<UnaryFunction>> {
    if !is_congruence(alg, theta)? {
        return Err(Error::NotACongruence(theta.to_string()));
    }
    let polys = unary_polynomials(alg)?;
    Ok(project_polynomials(&polys, theta))
}

pub(crate) fn project_polynomials(polys: &[UnaryFunction], theta: &Partition) -> Vec<UnaryFunction> {
    let reps: Vec<Element> = theta.blocks().iter().map(|b| b.min().expect("non-empty")).collect();
    let projected: BTreeSet<UnaryFunction> = polys
        .iter()
        .map(|p| {
            UnaryFunction::new(reps.iter().map(|&r| theta.class_index(p.apply(r))).collect())
        })
        .collect();
    projected.into_iter().collect()
}
