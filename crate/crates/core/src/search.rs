//! Counterexample search: stream generated algebras and keep those that
//! satisfy every required predicate and none of the forbidden ones.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Element, FiniteAlgebra};
use crate::congruence::lattice_is_uniform;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::properties::Analyzer;
use crate::structures::{is_directoid, GenerationMode, GeneratorSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    Rees,
    QuasiRees,
    Obp,
    Uniform,
    Directoid,
    Idempotent,
}

impl Predicate {
    pub const ALL: [Predicate; 6] = [
        Predicate::Rees,
        Predicate::QuasiRees,
        Predicate::Obp,
        Predicate::Uniform,
        Predicate::Directoid,
        Predicate::Idempotent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Rees => "rees",
            Predicate::QuasiRees => "quasi-rees",
            Predicate::Obp => "obp",
            Predicate::Uniform => "uniform",
            Predicate::Directoid => "directoid",
            Predicate::Idempotent => "idempotent",
        }
    }

    /// Table-only predicates are checked before anything that needs the
    /// congruence lattice.
    fn is_cheap(self) -> bool {
        matches!(self, Predicate::Directoid | Predicate::Idempotent)
    }

    pub fn eval(self, an: &Analyzer<'_>) -> Result<bool> {
        let alg = an.algebra();
        match self {
            Predicate::Rees => Ok(an.rees_algebra()?.holds),
            Predicate::QuasiRees => Ok(an.quasi_rees()?.holds),
            Predicate::Obp => Ok(an.one_block_property()?.holds),
            Predicate::Uniform => Ok(lattice_is_uniform(an.lattice()?)),
            Predicate::Directoid => is_directoid(alg),
            Predicate::Idempotent => Ok(alg.is_idempotent()),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Predicate::ALL.iter().map(|p| p.name()).collect();
                Error::InvalidArgument(format!("unknown predicate `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

impl Serialize for Predicate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ModeReport {
    Exhaustive { up_to_iso: bool },
    Random { seed: u64, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpTable {
    pub name: String,
    pub arity: usize,
    pub table: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    /// Position in the generated stream.
    pub index: usize,
    pub ops: Vec<OpTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub v: u32,
    pub signature: String,
    pub size: usize,
    pub mode: ModeReport,
    pub require: Vec<Predicate>,
    pub forbid: Vec<Predicate>,
    pub examined: usize,
    pub count: usize,
    /// The first `limit` matches.
    pub witnesses: Vec<SearchHit>,
}

pub struct SearchQuery<'a> {
    pub spec: &'a GeneratorSpec,
    pub require: &'a [Predicate],
    pub forbid: &'a [Predicate],
    pub limit: usize,
}

fn matches(alg: &FiniteAlgebra, q: &SearchQuery<'_>, limits: &Limits) -> Result<bool> {
    let an = Analyzer::with_limits(alg, limits.clone());
    let mut checks: Vec<(Predicate, bool)> = q
        .require
        .iter()
        .map(|&p| (p, true))
        .chain(q.forbid.iter().map(|&p| (p, false)))
        .collect();
    checks.sort_by_key(|&(p, _)| !p.is_cheap());
    for (p, wanted) in checks {
        if p.eval(&an)? != wanted {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn run_search(q: &SearchQuery<'_>, limits: &Limits) -> Result<SearchReport> {
    if let Some(p) = q.require.iter().find(|p| q.forbid.contains(p)) {
        return Err(Error::InvalidArgument(format!("`{p}` is both required and forbidden")));
    }
    let mut examined = 0;
    let mut count = 0;
    let mut witnesses = Vec::new();
    for (index, alg) in q.spec.stream(limits)?.enumerate() {
        examined += 1;
        if !matches(&alg, q, limits)? {
            continue;
        }
        count += 1;
        if witnesses.len() < q.limit {
            witnesses.push(SearchHit {
                index,
                ops: alg
                    .ops()
                    .map(|(_, sym, table)| OpTable {
                        name: sym.name.clone(),
                        arity: sym.arity,
                        table: table.to_vec(),
                    })
                    .collect(),
            });
        }
    }
    let signature = q
        .spec
        .signature
        .symbols()
        .iter()
        .map(|s| format!("op {} {}", s.name, s.arity))
        .collect::<Vec<_>>()
        .join("; ");
    Ok(SearchReport {
        v: crate::io::REPORT_VERSION,
        signature,
        size: q.spec.size,
        mode: match q.spec.mode {
            GenerationMode::Exhaustive => ModeReport::Exhaustive {
                up_to_iso: q.spec.up_to_iso,
            },
            GenerationMode::Random { seed, count } => ModeReport::Random { seed, count },
        },
        require: q.require.to_vec(),
        forbid: q.forbid.to_vec(),
        examined,
        count,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::structures::enumerate_directoids;

    fn spec(size: usize, mode: GenerationMode) -> GeneratorSpec {
        GeneratorSpec {
            signature: Signature::new([("f", 2)]).unwrap(),
            size,
            mode,
            up_to_iso: false,
        }
    }

    #[test]
    fn predicate_names_round_trip() {
        for p in Predicate::ALL {
            assert_eq!(p.name().parse::<Predicate>().unwrap(), p);
        }
        assert!("modular".parse::<Predicate>().is_err());
    }

    #[test]
    fn directoid_filter_matches_enumeration() {
        let s = spec(3, GenerationMode::Exhaustive);
        let q = SearchQuery {
            spec: &s,
            require: &[Predicate::Directoid],
            forbid: &[],
            limit: usize::MAX,
        };
        let r = run_search(&q, &Limits::default()).unwrap();
        assert_eq!(r.examined, 19683);
        let found: Vec<Vec<usize>> = r.witnesses.iter().map(|h| h.ops[0].table.clone()).collect();
        let expected: Vec<Vec<usize>> = enumerate_directoids(3)
            .unwrap()
            .iter()
            .map(|a| a.table(0).to_vec())
            .collect();
        assert_eq!(found, expected);
    }

    #[test]
    fn random_search_is_deterministic() {
        let s = spec(4, GenerationMode::Random { seed: 11, count: 30 });
        let q = SearchQuery {
            spec: &s,
            require: &[Predicate::Obp],
            forbid: &[Predicate::QuasiRees],
            limit: 5,
        };
        let a = run_search(&q, &Limits::default()).unwrap();
        assert_eq!(a, run_search(&q, &Limits::default()).unwrap());
        assert_eq!(a.examined, 30);
        assert!(a.witnesses.len() <= 5);
        let both = SearchQuery {
            forbid: &[Predicate::Obp],
            ..q
        };
        assert!(run_search(&both, &Limits::default()).is_err());
    }
}
