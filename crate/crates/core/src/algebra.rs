//! Finite algebras given by operation tables.
//!
//! Elements are the integers `0..n`. An operation of arity `m` is stored as a
//! flat table of `n^m` entries in row-major order: the leftmost argument
//! varies slowest, so `f(a_1, ..., a_m)` lives at index
//! `((a_1 * n + a_2) * n + ...) * n + a_m`.

use std::fmt;

use crate::element_set::ElementSet;
use crate::error::{Error, Result};

pub type Element = usize;

/// Universes are bounded by the width of [`ElementSet`].
pub const MAX_UNIVERSE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

/// The ordered list of operation symbols of an algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    symbols: Vec<OpSymbol>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let symbols: Vec<OpSymbol> = symbols
            .into_iter()
            .map(|(name, arity)| OpSymbol {
                name: name.into(),
                arity,
            })
            .collect();
        for (i, s) in symbols.iter().enumerate() {
            if !is_identifier(&s.name) {
                return Err(Error::Signature(format!("invalid symbol name `{}`", s.name)));
            }
            if symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(Error::Signature(format!("duplicate symbol `{}`", s.name)));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn symbols(&self) -> &[OpSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn arity_of(&self, name: &str) -> Option<usize> {
        self.index_of(name).map(|i| self.symbols[i].arity)
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }
}

/// An operation table as it was read, before any invariant is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpDraft {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

/// Unvalidated algebra data; [`AlgebraDraft::build`] turns it into a
/// [`FiniteAlgebra`] once [`validate`] reports no violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDraft {
    pub name: String,
    pub size: usize,
    pub ops: Vec<OpDraft>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    InvalidName(String),
    EmptyUniverse,
    UniverseTooLarge { size: usize },
    InvalidSymbolName { symbol: String },
    DuplicateSymbol { symbol: String },
    TableLength {
        symbol: String,
        expected: usize,
        found: usize,
    },
    EntryOutOfRange {
        symbol: String,
        index: usize,
        value: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InvalidName(name) => write!(f, "invalid algebra name `{name}`"),
            Violation::EmptyUniverse => write!(f, "size must be positive"),
            Violation::UniverseTooLarge { size } => {
                write!(f, "size {size} exceeds the supported maximum {MAX_UNIVERSE}")
            }
            Violation::InvalidSymbolName { symbol } => {
                write!(f, "invalid operation name `{symbol}`")
            }
            Violation::DuplicateSymbol { symbol } => write!(f, "duplicate operation `{symbol}`"),
            Violation::TableLength {
                symbol,
                expected,
                found,
            } => write!(
                f,
                "op {symbol}: table length {found} \u{2260} {expected}"
            ),
            Violation::EntryOutOfRange {
                symbol,
                index,
                value,
            } => write!(
                f,
                "op {symbol}: entry out of range at position {index} (value {value})"
            ),
        }
    }
}

/// Returns every invariant violation of `draft`, or `Ok` if there is none.
pub fn validate(draft: &AlgebraDraft) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let n = draft.size;
    if !is_identifier(&draft.name) {
        out.push(Violation::InvalidName(draft.name.clone()));
    }
    if n == 0 {
        out.push(Violation::EmptyUniverse);
    }
    if n > MAX_UNIVERSE {
        out.push(Violation::UniverseTooLarge { size: n });
    }
    for (i, op) in draft.ops.iter().enumerate() {
        if !is_identifier(&op.name) {
            out.push(Violation::InvalidSymbolName {
                symbol: op.name.clone(),
            });
        }
        if draft.ops[..i].iter().any(|o| o.name == op.name) {
            out.push(Violation::DuplicateSymbol {
                symbol: op.name.clone(),
            });
        }
        let expected = u32::try_from(op.arity)
            .ok()
            .and_then(|a| n.checked_pow(a))
            .unwrap_or(usize::MAX);
        if op.table.len() != expected {
            out.push(Violation::TableLength {
                symbol: op.name.clone(),
                expected,
                found: op.table.len(),
            });
        }
        for (index, &value) in op.table.iter().enumerate() {
            if value >= n {
                out.push(Violation::EntryOutOfRange {
                    symbol: op.name.clone(),
                    index,
                    value,
                });
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

impl AlgebraDraft {
    pub fn build(self) -> Result<FiniteAlgebra> {
        validate(&self).map_err(Error::Invalid)?;
        let signature = Signature::new(self.ops.iter().map(|o| (o.name.clone(), o.arity)))?;
        Ok(FiniteAlgebra {
            name: self.name,
            size: self.size,
            signature,
            tables: self.ops.into_iter().map(|o| o.table).collect(),
        })
    }
}

/// An algebra on `{0..n-1}` with named operation tables. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    signature: Signature,
    tables: Vec<Vec<Element>>,
}

impl FiniteAlgebra {
    /// Builds an algebra from `(name, arity, table)` triples.
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        size: usize,
        ops: impl IntoIterator<Item = (S, usize, Vec<Element>)>,
    ) -> Result<Self> {
        AlgebraDraft {
            name: name.into(),
            size,
            ops: ops
                .into_iter()
                .map(|(name, arity, table)| OpDraft {
                    name: name.into(),
                    arity,
                    table,
                })
                .collect(),
        }
        .build()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn universe(&self) -> ElementSet {
        ElementSet::full(self.size)
    }

    pub fn table(&self, op: usize) -> &[Element] {
        &self.tables[op]
    }

    pub fn arity(&self, op: usize) -> usize {
        self.signature.symbols[op].arity
    }

    pub fn ops(&self) -> impl Iterator<Item = (usize, &OpSymbol, &[Element])> {
        self.signature
            .symbols
            .iter()
            .zip(&self.tables)
            .enumerate()
            .map(|(i, (s, t))| (i, s, t.as_slice()))
    }

    /// Values of the nullary operations, in signature order.
    pub fn constants(&self) -> impl Iterator<Item = Element> + '_ {
        self.ops()
            .filter(|(_, s, _)| s.arity == 0)
            .map(|(_, _, t)| t[0])
    }

    pub fn has_constants(&self) -> bool {
        self.constants().next().is_some()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Unchecked table lookup by operation index.
    #[inline]
    pub fn apply(&self, op: usize, args: &[Element]) -> Element {
        let n = self.size;
        let index = args.iter().fold(0, |acc, &a| acc * n + a);
        self.tables[op][index]
    }

    pub fn eval_op(&self, symbol: &str, args: &[Element]) -> Result<Element> {
        let op = self
            .signature
            .index_of(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        let arity = self.arity(op);
        if args.len() != arity {
            return Err(Error::ArityMismatch {
                symbol: symbol.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        if let Some(&element) = args.iter().find(|&&a| a >= self.size) {
            return Err(Error::OutOfRange {
                element,
                size: self.size,
            });
        }
        Ok(self.apply(op, args))
    }

    pub fn check_element(&self, element: Element) -> Result<()> {
        if element < self.size {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                element,
                size: self.size,
            })
        }
    }

    /// The same algebra with an extra nullary symbol `name` equal to `value`.
    pub fn with_constant(&self, name: &str, value: Element) -> Result<FiniteAlgebra> {
        self.check_element(value)?;
        let mut ops: Vec<(String, usize, Vec<Element>)> = self
            .ops()
            .map(|(_, s, t)| (s.name.clone(), s.arity, t.to_vec()))
            .collect();
        ops.push((name.to_string(), 0, vec![value]));
        FiniteAlgebra::new(self.name.clone(), self.size, ops)
    }

    /// Every `f(x, ..., x) = x`. A nullary symbol breaks this unless `n = 1`.
    pub fn is_idempotent(&self) -> bool {
        let n = self.size;
        self.ops().all(|(op, sym, _)| {
            if sym.arity == 0 {
                return n == 1;
            }
            (0..n).all(|x| self.apply(op, &vec![x; sym.arity]) == x)
        })
    }

    /// Elements `e` with `f(..., e, ...) = e` for every symbol of positive
    /// arity and every argument position, equal to every nullary symbol.
    pub fn absorbing_elements(&self) -> ElementSet {
        (0..self.size)
            .filter(|&e| self.is_absorbing(e))
            .collect()
    }

    fn is_absorbing(&self, e: Element) -> bool {
        let n = self.size;
        self.ops().all(|(_, sym, table)| {
            if sym.arity == 0 {
                return table[0] == e;
            }
            let m = sym.arity;
            table.iter().enumerate().all(|(index, &value)| {
                value == e || !decode_index(index, n, m).contains(&e)
            })
        })
    }
}

/// Decodes a table index into the argument tuple it addresses.
pub fn decode_index(index: usize, n: usize, arity: usize) -> Vec<Element> {
    let mut args = vec![0; arity];
    let mut rest = index;
    for slot in args.iter_mut().rev() {
        *slot = rest % n;
        rest /= n;
    }
    args
}

pub fn is_idempotent_algebra(alg: &FiniteAlgebra) -> bool {
    alg.is_idempotent()
}

pub fn absorbing_elements(alg: &FiniteAlgebra) -> ElementSet {
    alg.absorbing_elements()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::diamond_semilattice;

    #[test]
    fn table_layout_is_row_major() {
        let a = FiniteAlgebra::new("t", 3, [("f", 2, (0..9).map(|i| i % 3).collect())]).unwrap();
        assert_eq!(a.eval_op("f", &[1, 2]).unwrap(), 5 % 3);
        assert_eq!(decode_index(5, 3, 2), vec![1, 2]);
        assert_eq!(decode_index(0, 3, 0), Vec::<usize>::new());
        assert_eq!(decode_index(23, 3, 3), vec![2, 1, 2]);
    }

    #[test]
    fn validate_reports_range_and_length() {
        let bad_range = AlgebraDraft {
            name: "a".into(),
            size: 2,
            ops: vec![OpDraft {
                name: "f".into(),
                arity: 2,
                table: vec![0, 1, 5, 0],
            }],
        };
        let v = validate(&bad_range).unwrap_err();
        assert_eq!(
            v,
            vec![Violation::EntryOutOfRange {
                symbol: "f".into(),
                index: 2,
                value: 5
            }]
        );
        assert!(v[0].to_string().contains("entry out of range"));

        let bad_len = AlgebraDraft {
            name: "a".into(),
            size: 3,
            ops: vec![OpDraft {
                name: "f".into(),
                arity: 2,
                table: vec![0; 8],
            }],
        };
        let v = validate(&bad_len).unwrap_err();
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().contains("table length 8 \u{2260} 9"));

        let dup = AlgebraDraft {
            name: "a".into(),
            size: 1,
            ops: vec![
                OpDraft { name: "f".into(), arity: 0, table: vec![0] },
                OpDraft { name: "f".into(), arity: 1, table: vec![0] },
            ],
        };
        assert!(matches!(
            validate(&dup).unwrap_err()[..],
            [Violation::DuplicateSymbol { .. }]
        ));
    }

    #[test]
    fn eval_op_on_diamond() {
        let a = diamond_semilattice();
        assert_eq!(a.eval_op("join", &[1, 2]).unwrap(), 3);
        assert_eq!(a.eval_op("join", &[0, 3]).unwrap(), 3);
        for x in 0..4 {
            assert_eq!(a.eval_op("join", &[x, x]).unwrap(), x);
        }
        assert!(matches!(
            a.eval_op("join", &[1]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            a.eval_op("join", &[1, 4]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn idempotency() {
        let a = diamond_semilattice();
        assert!(a.is_idempotent());
        assert!(!a.with_constant("top", 3).unwrap().is_idempotent());
        let one = FiniteAlgebra::new("one", 1, [("f", 2, vec![0]), ("c", 0, vec![0])]).unwrap();
        assert!(one.is_idempotent());
    }

    #[test]
    fn absorbing() {
        let a = diamond_semilattice();
        assert_eq!(a.absorbing_elements().to_vec(), vec![3]);
        let chain2 = FiniteAlgebra::new("c2", 2, [("join", 2, vec![0, 1, 1, 1])]).unwrap();
        assert_eq!(chain2.absorbing_elements().to_vec(), vec![1]);
        let z3 = FiniteAlgebra::new("z3", 3, [("add", 2, vec![0, 1, 2, 1, 2, 0, 2, 0, 1])]).unwrap();
        assert!(z3.absorbing_elements().is_empty());
        // a constant different from the top rules it out
        assert!(a.with_constant("c", 0).unwrap().absorbing_elements().is_empty());
        assert_eq!(
            a.with_constant("c", 3).unwrap().absorbing_elements().to_vec(),
            vec![3]
        );
    }
}
