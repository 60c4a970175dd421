//! The analysis report and its JSON form. Keys appear in declaration order.

use serde::Serialize;

use crate::algebra::{Element, FiniteAlgebra};
use crate::congruence::{lattice_is_n_permutable, lattice_is_uniform, CongruenceLattice};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::properties::{Analyzer, Witness};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub rees: bool,
    pub rees_two_generated: bool,
    /// `None` when the unary polynomial clone exceeds its size guard.
    pub rees_polynomials: Option<bool>,
    pub quasi_rees: bool,
    pub obp: bool,
    pub obp_characterization: bool,
    pub congruence_uniform: bool,
    pub permutable2: bool,
    pub permutable3: bool,
    pub modular: bool,
    pub semimodular: bool,
    pub idempotent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub rees: Witness,
    pub quasi_rees: Witness,
    pub obp: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub v: u32,
    pub name: String,
    pub size: usize,
    pub congruence_count: usize,
    pub congruences: Vec<Partition>,
    pub covers: Vec<(usize, usize)>,
    pub atoms: Vec<Partition>,
    pub verdicts: Verdicts,
    pub absorbing: Vec<Element>,
    pub witnesses: Witnesses,
}

impl AnalysisReport {
    /// Runs every decider. Fails if equivalent routes disagree.
    pub fn build(an: &Analyzer<'_>) -> Result<Self> {
        let alg = an.algebra();
        let lat = an.lattice()?;
        let rees = an.rees_algebra()?;
        let rees_two_generated = an.rees_algebra_via_two_generated()?;
        let rees_polynomials = if alg.size() > an.limits().polynomial_size {
            None
        } else {
            Some(an.rees_algebra_via_polynomials()?)
        };
        let quasi_rees = an.quasi_rees()?;
        let obp = an.one_block_property()?;
        let obp_characterization = an.obp_characterization();

        if rees.holds != rees_two_generated || rees_polynomials.is_some_and(|p| p != rees.holds) {
            return Err(Error::Inconsistent(format!(
                "Rees routes disagree on {}: definition {}, two-generated {}, polynomials {:?}",
                alg.name(),
                rees.holds,
                rees_two_generated,
                rees_polynomials
            )));
        }
        if obp.holds != obp_characterization {
            return Err(Error::Inconsistent(format!(
                "one-block-property routes disagree on {}: definition {}, characterization {}",
                alg.name(),
                obp.holds,
                obp_characterization
            )));
        }

        let verdicts = Verdicts {
            rees: rees.holds,
            rees_two_generated,
            rees_polynomials,
            quasi_rees: quasi_rees.holds,
            obp: obp.holds,
            obp_characterization,
            congruence_uniform: lattice_is_uniform(lat),
            permutable2: lattice_is_n_permutable(lat, 2)?,
            permutable3: lattice_is_n_permutable(lat, 3)?,
            modular: lat.is_modular(),
            semimodular: lat.is_semimodular(),
            idempotent: alg.is_idempotent(),
        };
        Ok(AnalysisReport {
            v: REPORT_VERSION,
            name: alg.name().to_string(),
            size: alg.size(),
            congruence_count: lat.len(),
            congruences: lat.congruences().to_vec(),
            covers: lat.covers().to_vec(),
            atoms: lat.atoms().into_iter().cloned().collect(),
            verdicts,
            absorbing: alg.absorbing_elements().to_vec(),
            witnesses: Witnesses {
                rees: rees.witness,
                quasi_rees: quasi_rees.witness,
                obp: obp.witness,
            },
        })
    }

    /// `key: value` lines for terminal output.
    pub fn to_text(&self) -> String {
        let v = &self.verdicts;
        let opt = |o: Option<bool>| o.map_or("skipped (size guard)".to_string(), |b| b.to_string());
        let list = |ps: &[Partition]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        let rows: Vec<(&str, String)> = vec![
            ("algebra", self.name.clone()),
            ("size", self.size.to_string()),
            ("congruences", self.congruence_count.to_string()),
            ("atoms", list(&self.atoms)),
            ("rees", v.rees.to_string()),
            ("rees_two_generated", v.rees_two_generated.to_string()),
            ("rees_polynomials", opt(v.rees_polynomials)),
            ("quasi_rees", v.quasi_rees.to_string()),
            ("obp", v.obp.to_string()),
            ("obp_characterization", v.obp_characterization.to_string()),
            ("congruence_uniform", v.congruence_uniform.to_string()),
            ("permutable2", v.permutable2.to_string()),
            ("permutable3", v.permutable3.to_string()),
            ("modular", v.modular.to_string()),
            ("semimodular", v.semimodular.to_string()),
            ("idempotent", v.idempotent.to_string()),
            (
                "absorbing",
                format!(
                    "{{{}}}",
                    self.absorbing.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
                ),
            ),
        ];
        rows.into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
    }
}

/// The congruence lattice alone, as printed by `conlat --json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub v: u32,
    pub name: String,
    pub size: usize,
    pub congruences: Vec<Partition>,
    pub covers: Vec<(usize, usize)>,
    pub atoms: Vec<Partition>,
}

impl LatticeReport {
    pub fn new(alg: &FiniteAlgebra, lat: &CongruenceLattice) -> Self {
        LatticeReport {
            v: REPORT_VERSION,
            name: alg.name().to_string(),
            size: alg.size(),
            congruences: lat.congruences().to_vec(),
            covers: lat.covers().to_vec(),
            atoms: lat.atoms().into_iter().cloned().collect(),
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn emit_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}
