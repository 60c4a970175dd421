//! Congruences: compatibility tests, principal congruences and the full
//! congruence lattice with its Hasse diagram.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::algebra::{decode_index, Element, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::{compose, Partition};
use crate::union_find::UnionFind;

/// Tuple witnessing that a partition is not compatible with an operation:
/// `args` and `args` with position `position` replaced by `replacement`
/// are related coordinatewise but their images are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityFailure {
    pub symbol: String,
    pub args: Vec<Element>,
    pub position: usize,
    pub replacement: Element,
}

/// All basic translations `x ↦ f(c_1, .., x, .., c_m)` of an algebra, stored
/// as the table offsets of the context tuples.
pub(crate) struct Translations {
    slots: Vec<Slot>,
}

struct Slot {
    op: usize,
    stride: usize,
    bases: Vec<usize>,
}

impl Translations {
    pub(crate) fn new(alg: &FiniteAlgebra) -> Self {
        let n = alg.size();
        let mut slots = Vec::new();
        for (op, sym, table) in alg.ops() {
            let m = sym.arity;
            for pos in 0..m {
                let stride = n.pow((m - 1 - pos) as u32);
                let bases = (0..table.len())
                    .filter(|&idx| (idx / stride).is_multiple_of(n))
                    .collect();
                slots.push(Slot { op, stride, bases });
            }
        }
        Translations { slots }
    }

    /// Least congruence containing `seeds`, given as a union-find over the
    /// universe. Only pairs that actually merge two classes are propagated;
    /// these span the equivalence, which is enough for compatibility.
    fn close(&self, alg: &FiniteAlgebra, seeds: impl IntoIterator<Item = (Element, Element)>) -> Partition {
        let mut uf = UnionFind::new(alg.size());
        let mut work: Vec<(Element, Element)> = seeds.into_iter().collect();
        while let Some((u, v)) = work.pop() {
            if !uf.union(u, v) {
                continue;
            }
            for slot in &self.slots {
                let table = alg.table(slot.op);
                let (du, dv) = (u * slot.stride, v * slot.stride);
                for &base in &slot.bases {
                    let (fu, fv) = (table[base + du], table[base + dv]);
                    if fu != fv && uf.find(fu) != uf.find(fv) {
                        work.push((fu, fv));
                    }
                }
            }
        }
        Partition::normalize(&uf.labels())
    }
}

pub fn is_congruence(alg: &FiniteAlgebra, p: &Partition) -> Result<bool> {
    Ok(compatibility_failure(alg, p)?.is_none())
}

/// Single-coordinate compatibility test. Returns the first violating tuple.
pub fn compatibility_failure(
    alg: &FiniteAlgebra,
    p: &Partition,
) -> Result<Option<CompatibilityFailure>> {
    let n = alg.size();
    if p.size() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: p.size(),
        });
    }
    for (_, sym, table) in alg.ops() {
        let m = sym.arity;
        for pos in 0..m {
            let stride = n.pow((m - 1 - pos) as u32);
            for idx in 0..table.len() {
                let u = (idx / stride) % n;
                for v in u + 1..n {
                    if p.related(u, v) {
                        let other = idx + (v - u) * stride;
                        if !p.related(table[idx], table[other]) {
                            return Ok(Some(CompatibilityFailure {
                                symbol: sym.name.clone(),
                                args: decode_index(idx, n, m),
                                position: pos,
                                replacement: v,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn principal_congruence(alg: &FiniteAlgebra, a: Element, b: Element) -> Result<Partition> {
    congruence_generated_by(alg, &[(a, b)])
}

pub fn congruence_generated_by(alg: &FiniteAlgebra, pairs: &[(Element, Element)]) -> Result<Partition> {
    for &(a, b) in pairs {
        alg.check_element(a)?;
        alg.check_element(b)?;
    }
    Ok(Translations::new(alg).close(alg, pairs.iter().copied()))
}

/// `Θ(a, b)` for every `a < b`, indexed `[a][b - a - 1]`.
pub struct PrincipalTable {
    n: usize,
    rows: Vec<Vec<Partition>>,
}

impl PrincipalTable {
    pub fn new(alg: &FiniteAlgebra) -> Self {
        let n = alg.size();
        let tr = Translations::new(alg);
        let rows = (0..n)
            .map(|a| (a + 1..n).map(|b| tr.close(alg, [(a, b)])).collect())
            .collect();
        PrincipalTable { n, rows }
    }

    /// `Θ(a, b)`; `None` for `a = b`, which is `ω`.
    pub fn get(&self, a: Element, b: Element) -> Option<&Partition> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        (a != b && b < self.n).then(|| &self.rows[a][b - a - 1])
    }

    pub fn iter(&self) -> impl Iterator<Item = ((Element, Element), &Partition)> {
        self.rows.iter().enumerate().flat_map(|(a, row)| {
            row.iter()
                .enumerate()
                .map(move |(k, p)| ((a, a + k + 1), p))
        })
    }
}

/// The congruences of an algebra in canonical order with the cover relation.
#[derive(Debug, Clone)]
pub struct CongruenceLattice {
    congruences: Vec<Partition>,
    covers: Vec<(usize, usize)>,
    index: HashMap<Partition, usize>,
    /// `above[i]` has bit `j` set iff congruence `i ⊊` congruence `j`.
    above: Vec<Vec<u64>>,
}

pub fn all_congruences(alg: &FiniteAlgebra) -> Result<CongruenceLattice> {
    all_congruences_with(alg, &Limits::default())
}

/// `{ω}` closed under joins with the principal congruences `Θ(a, b)`.
pub fn all_congruences_with(alg: &FiniteAlgebra, limits: &Limits) -> Result<CongruenceLattice> {
    let n = alg.size();
    Limits::check("congruence lattice size", n as u64, limits.congruence_size as u64)?;
    let principals: Vec<Partition> = {
        let table = PrincipalTable::new(alg);
        let mut seen = HashSet::new();
        table
            .iter()
            .map(|(_, p)| p.clone())
            .filter(|p| seen.insert(p.clone()))
            .collect()
    };
    let omega = Partition::omega(n)?;
    let mut all: HashSet<Partition> = HashSet::new();
    let mut queue = VecDeque::new();
    all.insert(omega.clone());
    queue.push_back(omega);
    while let Some(x) = queue.pop_front() {
        for p in &principals {
            let y = x.join(p)?;
            if !all.contains(&y) {
                all.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut congruences: Vec<Partition> = all.into_iter().collect();
    congruences.sort();
    Ok(CongruenceLattice::from_sorted(congruences))
}

fn words(len: usize) -> usize {
    len.div_ceil(64)
}

fn bit(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

impl CongruenceLattice {
    /// `congruences` must be in canonical order and form a lattice under
    /// partition join and meet.
    pub(crate) fn from_sorted(congruences: Vec<Partition>) -> Self {
        let len = congruences.len();
        let w = words(len);
        let mut above = vec![vec![0u64; w]; len];
        for (i, p) in congruences.iter().enumerate() {
            // anything strictly larger has fewer blocks, so it sorts later
            for (j, q) in congruences.iter().enumerate().skip(i + 1) {
                if p.refines(q) {
                    above[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        let mut covers = Vec::new();
        for i in 0..len {
            let mut reach = vec![0u64; w];
            for j in 0..len {
                if bit(&above[i], j) {
                    for (r, a) in reach.iter_mut().zip(&above[j]) {
                        *r |= a;
                    }
                }
            }
            for j in 0..len {
                if bit(&above[i], j) && !bit(&reach, j) {
                    covers.push((i, j));
                }
            }
        }
        let index = congruences
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        CongruenceLattice {
            congruences,
            covers,
            index,
            above,
        }
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn congruences(&self) -> &[Partition] {
        &self.congruences
    }

    pub fn get(&self, i: usize) -> &Partition {
        &self.congruences[i]
    }

    /// Cover pairs `(i, j)`, congruence `i` covered by `j`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn require(&self, p: &Partition) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::NotInLattice(p.to_string()))
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.index.contains_key(p)
    }

    pub fn bottom(&self) -> &Partition {
        &self.congruences[0]
    }

    pub fn top(&self) -> &Partition {
        &self.congruences[self.len() - 1]
    }

    pub fn is_below(&self, i: usize, j: usize) -> bool {
        i == j || bit(&self.above[i], j)
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.covers.binary_search(&(i, j)).is_ok()
    }

    pub fn join_index(&self, i: usize, j: usize) -> usize {
        let p = self.congruences[i].join(&self.congruences[j]).expect("same size");
        self.index[&p]
    }

    pub fn meet_index(&self, i: usize, j: usize) -> usize {
        let p = self.congruences[i].meet(&self.congruences[j]).expect("same size");
        self.index[&p]
    }

    /// Congruences covering `ω`.
    pub fn atoms(&self) -> Vec<&Partition> {
        self.upper_cover_indices(0)
            .map(|j| &self.congruences[j])
            .collect()
    }

    fn upper_cover_indices(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers
            .iter()
            .filter(move |&&(a, _)| a == i)
            .map(|&(_, b)| b)
    }

    /// Minimal congruences strictly above `theta`.
    pub fn covers_of(&self, theta: &Partition) -> Result<Vec<&Partition>> {
        let i = self.require(theta)?;
        Ok(self
            .upper_cover_indices(i)
            .map(|j| &self.congruences[j])
            .collect())
    }

    /// Congruences containing `theta`, in canonical order.
    pub fn filter_above(&self, theta: &Partition) -> Result<Vec<&Partition>> {
        let i = self.require(theta)?;
        Ok((0..self.len())
            .filter(|&j| self.is_below(i, j))
            .map(|j| &self.congruences[j])
            .collect())
    }

    /// Modular law `x ≤ z ⇒ x ∨ (y ∧ z) = (x ∨ y) ∧ z` over all triples.
    pub fn is_modular(&self) -> bool {
        let len = self.len();
        let joins = self.table(|i, j| self.join_index(i, j));
        let meets = self.table(|i, j| self.meet_index(i, j));
        for x in 0..len {
            for z in 0..len {
                if x == z || !self.is_below(x, z) {
                    continue;
                }
                for y in 0..len {
                    if joins[x * len + meets[y * len + z]] != meets[joins[x * len + y] * len + z] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Upper semimodularity: `x ∧ y ≺ x` implies `y ≺ x ∨ y`.
    pub fn is_semimodular(&self) -> bool {
        let len = self.len();
        (0..len).all(|x| {
            (0..len).all(|y| {
                let m = self.meet_index(x, y);
                !self.is_cover(m, x) || self.is_cover(y, self.join_index(x, y))
            })
        })
    }

    fn table(&self, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let len = self.len();
        (0..len * len).map(|k| f(k / len, k % len)).collect()
    }
}

pub fn atoms(lat: &CongruenceLattice) -> Vec<&Partition> {
    lat.atoms()
}

pub fn covers_of<'a>(lat: &'a CongruenceLattice, theta: &Partition) -> Result<Vec<&'a Partition>> {
    lat.covers_of(theta)
}

pub fn is_modular(lat: &CongruenceLattice) -> bool {
    lat.is_modular()
}

pub fn is_semimodular(lat: &CongruenceLattice) -> bool {
    lat.is_semimodular()
}

pub fn is_congruence_uniform(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(lattice_is_uniform(&all_congruences(alg)?))
}

pub(crate) fn lattice_is_uniform(lat: &CongruenceLattice) -> bool {
    lat.congruences().iter().all(Partition::is_uniform)
}

pub fn is_n_permutable(alg: &FiniteAlgebra, n: usize) -> Result<bool> {
    lattice_is_n_permutable(&all_congruences(alg)?, n)
}

/// `Θ∘Φ∘Θ∘… = Φ∘Θ∘Φ∘…` with `n` factors on each side, for all pairs.
pub fn lattice_is_n_permutable(lat: &CongruenceLattice, n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n-permutability needs n >= 2, got {n}"
        )));
    }
    let rows: Vec<Vec<u64>> = lat.congruences().iter().map(Partition::relation_rows).collect();
    let chain = |a: &[u64], b: &[u64]| {
        let mut acc = a.to_vec();
        for k in 1..n {
            acc = compose(&acc, if k % 2 == 1 { b } else { a });
        }
        acc
    };
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if chain(&rows[i], &rows[j]) != chain(&rows[j], &rows[i]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{diamond_semilattice, semilattice_chain, cyclic_group};

    fn part(s: &str, n: usize) -> Partition {
        crate::io::parse_partition(s, n).unwrap()
    }

    #[test]
    fn diamond_compatibility() {
        let a = diamond_semilattice();
        assert!(is_congruence(&a, &part("0|1 2 3", 4)).unwrap());
        let bad = compatibility_failure(&a, &part("0 3|1|2", 4)).unwrap().unwrap();
        // 0∨1 = 1 and 3∨1 = 3 are not related
        assert_eq!(bad.symbol, "join");
        assert!(is_congruence(&a, &Partition::omega(4).unwrap()).unwrap());
    }

    #[test]
    fn diamond_principals() {
        let a = diamond_semilattice();
        assert_eq!(principal_congruence(&a, 1, 2).unwrap(), part("0|1 2 3", 4));
        assert_eq!(principal_congruence(&a, 0, 1).unwrap(), part("0 1|2 3", 4));
        assert_eq!(principal_congruence(&a, 2, 2).unwrap(), Partition::omega(4).unwrap());
        assert_eq!(
            congruence_generated_by(&a, &[(2, 3), (1, 3)]).unwrap(),
            part("0|1 2 3", 4)
        );
        assert_eq!(congruence_generated_by(&a, &[]).unwrap(), Partition::omega(4).unwrap());
        assert!(principal_congruence(&a, 0, 4).is_err());
    }

    #[test]
    fn diamond_lattice() {
        let lat = all_congruences(&diamond_semilattice()).unwrap();
        let names: Vec<String> = lat.congruences().iter().map(|p| p.to_string()).collect();
        assert_eq!(
            names,
            ["0|1|2|3", "0|1 3|2", "0|1|2 3", "0 1|2 3", "0 2|1 3", "0|1 2 3", "0 1 2 3"]
        );
        assert_eq!(lat.covers().len(), 9);
        let atoms: Vec<String> = lat.atoms().iter().map(|p| p.to_string()).collect();
        assert_eq!(atoms, ["0|1 3|2", "0|1|2 3"]);
        let up: Vec<String> = lat
            .covers_of(&part("0|1 2 3", 4))
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(up, ["0 1 2 3"]);
        assert!(lat.is_semimodular());
        assert!(!lat.is_modular());
        assert!(lat.covers_of(&part("0 3|1|2", 4)).is_err());
    }

    #[test]
    fn chain_lattice() {
        let lat = all_congruences(&semilattice_chain(3)).unwrap();
        let names: Vec<String> = lat.congruences().iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["0|1|2", "0 1|2", "0|1 2", "0 1 2"]);
        assert!(lat.is_modular() && lat.is_semimodular());
        assert!(!lattice_is_n_permutable(&lat, 2).unwrap());
    }

    #[test]
    fn trivial_and_two_element_lattices() {
        let one = FiniteAlgebra::new("one", 1, [("f", 2, vec![0])]).unwrap();
        let lat = all_congruences(&one).unwrap();
        assert_eq!(lat.len(), 1);
        assert!(lat.atoms().is_empty());
        assert!(is_congruence_uniform(&one).unwrap());

        let two = semilattice_chain(2);
        let lat = all_congruences(&two).unwrap();
        assert_eq!(lat.len(), 2);
        assert!(lat.is_modular() && lat.is_semimodular());
        for k in 2..5 {
            assert!(lattice_is_n_permutable(&lat, k).unwrap());
        }
        assert!(lattice_is_n_permutable(&lat, 1).is_err());
    }

    #[test]
    fn uniformity_and_permutability_of_z3() {
        let z3 = cyclic_group(3);
        assert!(is_congruence_uniform(&z3).unwrap());
        assert!(is_n_permutable(&z3, 2).unwrap());
        assert!(!is_congruence_uniform(&diamond_semilattice()).unwrap());
        let z4 = cyclic_group(4);
        assert_eq!(all_congruences(&z4).unwrap().len(), 3);
        assert!(is_n_permutable(&z4, 2).unwrap());
    }

    #[test]
    fn size_guard() {
        let big = FiniteAlgebra::new("big", 13, [("f", 1, (0..13).collect())]).unwrap();
        assert!(all_congruences(&big).unwrap_err().is_resource_limit());
    }
}
