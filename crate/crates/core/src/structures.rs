//! Fixture algebras and generators: semilattices, directoids, implication
//! algebras, loops, and exhaustive or seeded random algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, FiniteAlgebra, Signature};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// The 4-element join-semilattice `0 < a, b < 1` coded `0, 1, 2, 3`.
pub fn diamond_semilattice() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "diamond",
        4,
        [("join", 2, vec![0, 1, 2, 3, 1, 1, 3, 3, 2, 3, 2, 3, 3, 3, 3, 3])],
    )
    .expect("valid fixture")
}

/// The chain `0 < 1 < ... < n-1` under `max`.
pub fn semilattice_chain(n: usize) -> FiniteAlgebra {
    let table = (0..n * n).map(|i| (i / n).max(i % n)).collect();
    FiniteAlgebra::new(format!("chain{n}"), n, [("join", 2, table)]).expect("n > 0")
}

/// `Z_n` under addition.
pub fn cyclic_group(n: usize) -> FiniteAlgebra {
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    FiniteAlgebra::new(format!("z{n}"), n, [("add", 2, table)]).expect("n > 0")
}

/// A 4-element directoid that is not a semilattice: `a, b < c < d` coded
/// `0, 1, 2, 3`, with `a ⊔ b = b ⊔ a = d` and `max` on comparable pairs.
pub fn directoid_fixture() -> FiniteAlgebra {
    #[rustfmt::skip]
    let table = vec![
        0, 3, 2, 3,
        3, 1, 2, 3,
        2, 2, 2, 3,
        3, 3, 3, 3,
    ];
    FiniteAlgebra::new("directoid4", 4, [("join", 2, table)]).expect("valid fixture")
}

fn single_binary(alg: &FiniteAlgebra) -> Result<usize> {
    match alg.signature().symbols() {
        [s] if s.arity == 2 => Ok(0),
        _ => Err(Error::Signature(
            "expected exactly one binary operation".into(),
        )),
    }
}

/// Lookup on a partially filled table; `None` marks an unset cell.
fn directoid_violation(n: usize, t: &[Option<Element>]) -> bool {
    let get = |x: usize, y: usize| t[x * n + y];
    for x in 0..n {
        if get(x, x).is_some_and(|v| v != x) {
            return true;
        }
        for y in 0..n {
            let Some(xy) = get(x, y) else { continue };
            if get(xy, x).is_some_and(|v| v != xy) || get(y, xy).is_some_and(|v| v != xy) {
                return true;
            }
            for z in 0..n {
                let Some(l) = get(xy, z) else { continue };
                if get(x, l).is_some_and(|v| v != l) {
                    return true;
                }
            }
        }
    }
    false
}

/// The four join-directoid identities, checked exhaustively.
pub fn is_directoid(alg: &FiniteAlgebra) -> Result<bool> {
    let op = single_binary(alg)?;
    let t: Vec<Option<Element>> = alg.table(op).iter().map(|&v| Some(v)).collect();
    Ok(!directoid_violation(alg.size(), &t))
}

/// `{(x, y) : x ⊔ y = y}` in lexicographic order.
pub fn directoid_order(alg: &FiniteAlgebra) -> Result<Vec<(Element, Element)>> {
    if !is_directoid(alg)? {
        return Err(Error::InvalidArgument(format!("{} is not a directoid", alg.name())));
    }
    let n = alg.size();
    let order: Vec<(Element, Element)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| alg.apply(0, &[x, y]) == y)
        .collect();
    debug_assert!(order.iter().all(|&(x, y)| x == y || !order.contains(&(y, x))));
    Ok(order)
}

pub fn enumerate_directoids(n: usize) -> Result<Vec<FiniteAlgebra>> {
    enumerate_directoids_with(n, &Limits::default())
}

/// All directoid tables on `n` elements in lexicographic order.
pub fn enumerate_directoids_with(n: usize, limits: &Limits) -> Result<Vec<FiniteAlgebra>> {
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    Limits::check("directoid enumeration size", n as u64, limits.directoid_size as u64)?;
    let mut table: Vec<Option<Element>> = vec![None; n * n];
    for x in 0..n {
        table[x * n + x] = Some(x);
    }
    let cells: Vec<usize> = (0..n * n).filter(|i| i / n != i % n).collect();
    let mut out = Vec::new();
    fill_directoid(n, &cells, &mut table, &mut out);
    Ok(out)
}

fn fill_directoid(n: usize, cells: &[usize], table: &mut [Option<Element>], out: &mut Vec<FiniteAlgebra>) {
    let Some((&cell, rest)) = cells.split_first() else {
        let t = table.iter().map(|v| v.expect("filled")).collect();
        let name = format!("directoid{n}_{}", out.len());
        out.push(FiniteAlgebra::new(name, n, [("join", 2, t)]).expect("valid table"));
        return;
    };
    for v in 0..n {
        table[cell] = Some(v);
        if !directoid_violation(n, table) {
            fill_directoid(n, rest, table, out);
        }
    }
    table[cell] = None;
}

/// The 2-element implication algebra, `x → y` with `1` as top.
pub fn implication_fixture() -> FiniteAlgebra {
    FiniteAlgebra::new("imp2", 2, [("imp", 2, vec![1, 1, 0, 1])]).expect("valid fixture")
}

/// `x → y = ¬x ∨ y` on the 4-element Boolean algebra of 2-bit masks.
pub fn boolean_implication4() -> FiniteAlgebra {
    let table = (0..16).map(|i| (!(i / 4) | (i % 4)) & 3).collect();
    FiniteAlgebra::new("imp4", 4, [("imp", 2, table)]).expect("valid fixture")
}

pub fn is_implication_algebra(alg: &FiniteAlgebra) -> Result<bool> {
    let op = single_binary(alg)?;
    let f = |x, y| alg.apply(op, &[x, y]);
    let n = alg.size();
    for x in 0..n {
        for y in 0..n {
            if f(f(x, y), x) != x || f(f(x, y), y) != f(f(y, x), x) {
                return Ok(false);
            }
            for z in 0..n {
                if f(x, f(y, z)) != f(y, f(x, z)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The common value of `xx` in an implication algebra.
pub fn implication_unit(alg: &FiniteAlgebra) -> Result<Element> {
    if !is_implication_algebra(alg)? {
        return Err(Error::InvalidArgument(format!(
            "{} is not an implication algebra",
            alg.name()
        )));
    }
    Ok(alg.apply(0, &[0, 0]))
}

/// Signature `(·, /, \, 1)` of type `(2, 2, 2, 0)` by position, and the
/// loop identities.
pub fn is_loop(alg: &FiniteAlgebra) -> bool {
    let arities: Vec<usize> = alg.signature().symbols().iter().map(|s| s.arity).collect();
    if arities != [2, 2, 2, 0] {
        return false;
    }
    let mul = |x, y| alg.apply(0, &[x, y]);
    let rdiv = |x, y| alg.apply(1, &[x, y]);
    let ldiv = |x, y| alg.apply(2, &[x, y]);
    let one = alg.apply(3, &[]);
    let n = alg.size();
    (0..n).all(|x| {
        mul(x, one) == x
            && mul(one, x) == x
            && (0..n).all(|y| {
                mul(rdiv(x, y), y) == x
                    && rdiv(mul(x, y), y) == x
                    && mul(x, ldiv(x, y)) == y
                    && ldiv(x, mul(x, y)) == y
            })
    })
}

/// The loop on a Latin-square Cayley table, with symbols `mul`, `rdiv`,
/// `ldiv`, `one`. Rows are indexed by the left argument.
pub fn loop_from_cayley(name: &str, rows: &[Vec<Element>]) -> Result<FiniteAlgebra> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::InvalidArgument(format!(
            "Cayley table row of length {} in a table with {n} rows",
            r.len()
        )));
    }
    let mul: Vec<Element> = rows.concat();
    if let Some(&bad) = mul.iter().find(|&&v| v >= n) {
        return Err(Error::OutOfRange { element: bad, size: n });
    }
    let mut rdiv = vec![usize::MAX; n * n];
    let mut ldiv = vec![usize::MAX; n * n];
    for x in 0..n {
        for y in 0..n {
            let v = mul[x * n + y];
            // xy = v gives v / y = x and x \ v = y
            if std::mem::replace(&mut rdiv[v * n + y], x) != usize::MAX
                || std::mem::replace(&mut ldiv[x * n + v], y) != usize::MAX
            {
                return Err(Error::InvalidArgument("Cayley table is not a Latin square".into()));
            }
        }
    }
    let one = (0..n)
        .find(|&e| (0..n).all(|x| mul[e * n + x] == x && mul[x * n + e] == x))
        .ok_or_else(|| Error::InvalidArgument("Cayley table has no identity element".into()))?;
    FiniteAlgebra::new(
        name,
        n,
        [
            ("mul", 2, mul),
            ("rdiv", 2, rdiv),
            ("ldiv", 2, ldiv),
            ("one", 0, vec![one]),
        ],
    )
}

/// `Z_n` as a loop.
pub fn cyclic_loop(n: usize) -> FiniteAlgebra {
    let rows: Vec<Vec<Element>> = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    loop_from_cayley(&format!("zloop{n}"), &rows).expect("group table")
}

/// The smallest non-associative loop, of order 5.
pub fn loop5() -> FiniteAlgebra {
    let rows = [
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    loop_from_cayley("loop5", &rows).expect("Latin square with identity")
}

/// Every named fixture of this module.
pub fn fixtures() -> Vec<FiniteAlgebra> {
    let mut out = vec![diamond_semilattice(), directoid_fixture()];
    out.extend((1..=4).map(semilattice_chain));
    out.extend((2..=5).map(cyclic_group));
    out.push(implication_fixture());
    out.push(boolean_implication4());
    out.extend([cyclic_loop(2), cyclic_loop(3), loop5()]);
    out
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// The isomorphic copy of `alg` under the relabelling `x ↦ perm[x]`.
pub fn relabel(alg: &FiniteAlgebra, perm: &[Element]) -> Result<FiniteAlgebra> {
    let n = alg.size();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::InvalidArgument("not a permutation of the universe".into()));
    }
    FiniteAlgebra::new(alg.name(), n, relabel_tables(alg, perm))
}

fn relabel_tables(alg: &FiniteAlgebra, perm: &[Element]) -> Vec<(String, usize, Vec<Element>)> {
    let n = alg.size();
    alg.ops()
        .map(|(_, sym, table)| {
            let mut out = vec![0; table.len()];
            for (idx, &v) in table.iter().enumerate() {
                // digits of idx, leftmost slowest, each mapped through perm
                let (mut rest, mut new_idx, mut scale) = (idx, 0, 1);
                for _ in 0..sym.arity {
                    new_idx += perm[rest % n] * scale;
                    rest /= n;
                    scale *= n;
                }
                out[new_idx] = perm[v];
            }
            (sym.name.clone(), sym.arity, out)
        })
        .collect()
}

/// The least relabelling of `alg`, comparing the op tables in order.
pub fn canonical_form(alg: &FiniteAlgebra) -> FiniteAlgebra {
    let best = permutations(alg.size())
        .iter()
        .map(|p| relabel_tables(alg, p))
        .min_by(|a, b| {
            let ta = a.iter().map(|(_, _, t)| t);
            let tb = b.iter().map(|(_, _, t)| t);
            ta.cmp(tb)
        })
        .expect("at least the identity permutation");
    FiniteAlgebra::new(alg.name(), alg.size(), best).expect("relabelled tables are valid")
}

pub fn is_canonical(alg: &FiniteAlgebra) -> bool {
    canonical_form(alg) == *alg
}

pub fn are_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    a.size() == b.size()
        && a.signature() == b.signature()
        && canonical_form(a).with_name("") == canonical_form(b).with_name("")
}

/// Every binary table on `n` elements that passes `filter`, in lexicographic
/// order; with `up_to_iso`, only the canonical member of each class.
pub fn enumerate_groupoids(
    n: usize,
    up_to_iso: bool,
    filter: impl FnMut(&FiniteAlgebra) -> bool,
) -> Result<Vec<FiniteAlgebra>> {
    let spec = GeneratorSpec {
        signature: Signature::new([("f", 2)])?,
        size: n,
        mode: GenerationMode::Exhaustive,
        up_to_iso,
    };
    Ok(spec.stream(&Limits::default())?.filter(filter).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerationMode {
    Exhaustive,
    Random { seed: u64, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub signature: Signature,
    pub size: usize,
    pub mode: GenerationMode,
    /// Keep only canonical forms (meaningful for exhaustive mode).
    pub up_to_iso: bool,
}

impl GeneratorSpec {
    /// Number of algebras exhaustive mode would visit, if it fits in `u64`.
    pub fn exhaustive_count(&self) -> Option<u64> {
        let cells = self.cells()?;
        (self.size as u64).checked_pow(u32::try_from(cells).ok()?)
    }

    fn cells(&self) -> Option<usize> {
        self.signature
            .symbols()
            .iter()
            .try_fold(0usize, |acc, s| acc.checked_add(self.size.checked_pow(s.arity as u32)?))
    }

    pub fn stream(&self, limits: &Limits) -> Result<AlgebraStream> {
        if self.size == 0 {
            return Err(Error::EmptyUniverse);
        }
        let cells = self.cells().ok_or(Error::LimitExceeded {
            what: "table cells",
            limit: u64::MAX,
            actual: u64::MAX,
        })?;
        let state = match self.mode {
            GenerationMode::Exhaustive => {
                let count = self.exhaustive_count().unwrap_or(u64::MAX);
                Limits::check("exhaustive enumeration", count, limits.exhaustive_algebras)?;
                State::Exhaustive(Some(vec![0; cells]))
            }
            GenerationMode::Random { seed, count } => State::Random {
                rng: Box::new(ChaCha8Rng::seed_from_u64(seed)),
                remaining: count,
            },
        };
        Ok(AlgebraStream {
            spec: self.clone(),
            cells,
            state,
            emitted: 0,
        })
    }
}

enum State {
    Exhaustive(Option<Vec<Element>>),
    Random { rng: Box<ChaCha8Rng>, remaining: usize },
}

/// Iterator over the algebras of a [`GeneratorSpec`].
pub struct AlgebraStream {
    spec: GeneratorSpec,
    cells: usize,
    state: State,
    emitted: usize,
}

impl AlgebraStream {
    fn build(&mut self, cells: &[Element]) -> FiniteAlgebra {
        let n = self.spec.size;
        let mut offset = 0;
        let ops: Vec<(String, usize, Vec<Element>)> = self
            .spec
            .signature
            .symbols()
            .iter()
            .map(|s| {
                let len = n.pow(s.arity as u32);
                let t = cells[offset..offset + len].to_vec();
                offset += len;
                (s.name.clone(), s.arity, t)
            })
            .collect();
        let name = format!("gen{n}_{}", self.emitted);
        self.emitted += 1;
        FiniteAlgebra::new(name, n, ops).expect("generated tables are valid")
    }
}

impl Iterator for AlgebraStream {
    type Item = FiniteAlgebra;

    fn next(&mut self) -> Option<FiniteAlgebra> {
        let n = self.spec.size;
        loop {
            let cells = match &mut self.state {
                State::Exhaustive(current) => {
                    let cells = current.take()?;
                    let mut next = cells.clone();
                    if advance(&mut next, n) {
                        *current = Some(next);
                    }
                    cells
                }
                State::Random { rng, remaining } => {
                    if *remaining == 0 {
                        return None;
                    }
                    *remaining -= 1;
                    (0..self.cells).map(|_| rng.gen_range(0..n)).collect()
                }
            };
            let alg = self.build(&cells);
            if !self.spec.up_to_iso || is_canonical(&alg) {
                return Some(alg);
            }
        }
    }
}

/// Odometer step, last cell fastest; `false` after the last tuple.
fn advance(cells: &mut [Element], n: usize) -> bool {
    for c in cells.iter_mut().rev() {
        *c += 1;
        if *c < n {
            return true;
        }
        *c = 0;
    }
    false
}

/// `count` seeded random algebras of the given signature and size.
pub fn random_algebras(signature: &Signature, size: usize, seed: u64, count: usize) -> Result<Vec<FiniteAlgebra>> {
    let spec = GeneratorSpec {
        signature: signature.clone(),
        size,
        mode: GenerationMode::Random { seed, count },
        up_to_iso: false,
    };
    Ok(spec.stream(&Limits::default())?.collect())
}
