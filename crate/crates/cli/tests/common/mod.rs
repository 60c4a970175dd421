//! Test corpus and brute-force oracles that share no code with the library
//! deciders beyond table lookup.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reeskit::structures::{enumerate_directoids, fixtures, random_algebras};
use reeskit::{Element, FiniteAlgebra, Signature};

pub const CORPUS_SEED: u64 = 0x5eed_2024;

pub struct Corpus {
    pub fixtures: Vec<FiniteAlgebra>,
    pub random: Vec<FiniteAlgebra>,
    pub directoids: Vec<FiniteAlgebra>,
}

impl Corpus {
    pub fn build() -> Corpus {
        let binary = Signature::new([("f", 2)]).unwrap();
        let mixed = Signature::new([("f", 2), ("g", 1)]).unwrap();
        let pointed = Signature::new([("f", 2), ("c", 0)]).unwrap();
        let mut random = Vec::new();
        for n in 3..=5 {
            random.extend(random_algebras(&binary, n, CORPUS_SEED + n as u64, 70).unwrap());
        }
        random.extend(random_algebras(&mixed, 4, CORPUS_SEED + 10, 25).unwrap());
        random.extend(random_algebras(&pointed, 4, CORPUS_SEED + 11, 25).unwrap());
        let directoids = (2..=4).flat_map(|n| enumerate_directoids(n).unwrap()).collect();
        Corpus {
            fixtures: fixtures(),
            random,
            directoids,
        }
    }

    pub fn all(&self) -> impl Iterator<Item = &FiniteAlgebra> {
        self.fixtures.iter().chain(&self.random).chain(&self.directoids)
    }

    pub fn len(&self) -> usize {
        self.fixtures.len() + self.random.len() + self.directoids.len()
    }
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ stream)
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> u64 {
    rng.gen_range(0..1u64 << n)
}

/// Every set partition of `0..n` as a restricted growth string.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            prefix.push(b);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// All `m`-tuples over `0..n`, leftmost slowest.
pub fn tuples(n: usize, m: usize) -> Vec<Vec<Element>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Compatibility by comparing every pair of argument tuples.
pub fn brute_is_congruence(alg: &FiniteAlgebra, labels: &[usize]) -> bool {
    let n = alg.size();
    alg.ops().all(|(op, sym, _)| {
        let ts = tuples(n, sym.arity);
        ts.iter().all(|a| {
            ts.iter().all(|b| {
                let related = a.iter().zip(b).all(|(&x, &y)| labels[x] == labels[y]);
                !related || labels[alg.apply(op, a)] == labels[alg.apply(op, b)]
            })
        })
    })
}

/// Labels of `B² ∪ ω`.
pub fn rees_labels(n: usize, bits: u64) -> Vec<usize> {
    let anchor = (0..n).find(|&x| bits >> x & 1 == 1);
    (0..n)
        .map(|x| match anchor {
            Some(a) if bits >> x & 1 == 1 => a,
            _ => x,
        })
        .collect()
}

pub fn brute_closed(alg: &FiniteAlgebra, bits: u64) -> bool {
    let elems: Vec<Element> = (0..alg.size()).filter(|&x| bits >> x & 1 == 1).collect();
    alg.ops().all(|(op, sym, _)| {
        tuples(elems.len(), sym.arity)
            .iter()
            .all(|t| {
                let args: Vec<Element> = t.iter().map(|&i| elems[i]).collect();
                bits >> alg.apply(op, &args) & 1 == 1
            })
    })
}

/// Classes of a labelling as bitmasks, ordered by least element.
pub fn classes(labels: &[usize]) -> Vec<u64> {
    let mut out: Vec<(usize, u64)> = Vec::new();
    for (x, &l) in labels.iter().enumerate() {
        match out.iter_mut().find(|(k, _)| *k == l) {
            Some((_, m)) => *m |= 1 << x,
            None => out.push((l, 1 << x)),
        }
    }
    out.into_iter().map(|(_, m)| m).collect()
}
