use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::linalg::{rank, Matrix};
use crate::mrd::{
    equivalence_certificate_with, find_path, right_mult_matrix, spread_code, PathStep,
};
use crate::orbits::{
    burnside_count, isotopy_class_bound, m_formula, orbit_decomposition, IsotopyBound, MCount,
    Orbit, OrbitReport,
};
use crate::petit::{CheckMode, PetitAlgebra};
use crate::skewpoly::SkewRing;

use super::ORACLE_ENVELOPE;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub p: u32,
    pub h: u32,
    pub n: u32,
    pub m: usize,
    pub q: u64,
    pub sigma_exp: u32,
    pub modulus: Vec<u32>,
}

impl Parameters {
    fn new(tower: &FieldTower, m: usize) -> Self {
        Parameters {
            p: tower.p(),
            h: tower.h(),
            n: tower.n(),
            m,
            q: tower.q(),
            sigma_exp: tower.sigma_exp(),
            modulus: tower.modulus().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeSummary {
    pub size: u64,
    pub matrix_size: usize,
    pub min_rank_distance: Option<usize>,
    /// Codewords per rank; over the sampled codewords when `sampled`.
    pub rank_distribution: BTreeMap<usize, u64>,
    pub mrd: bool,
    pub sampled: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateRecord {
    pub bound: String,
    pub target: String,
    pub path: Vec<String>,
    pub x: Vec<Vec<String>>,
    pub phi: u32,
    pub y: Vec<Vec<String>>,
    pub verified: bool,
    pub distributions_match: Option<bool>,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub index: usize,
    pub canonical: String,
    pub members: Vec<String>,
    pub size: usize,
    pub stabilizer: u64,
    pub k: usize,
    pub representative: String,
    pub division: bool,
    pub associative: bool,
    pub right_nucleus_f_dimension: usize,
    pub code: CodeSummary,
    pub certificates: Vec<CertificateRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub parameters: Parameters,
    pub check: String,
    pub group_order: u64,
    pub irreducible_count: u64,
    pub orbit_count_formula: u64,
    pub orbit_count_oracle: u64,
    pub totient_bound: String,
    pub orbits: Vec<OrbitRecord>,
}

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    orbit: usize,
    canonical: &'a str,
    size: usize,
    stabilizer: u64,
    k: usize,
    representative: &'a str,
    division: bool,
    associative: bool,
    right_nucleus_f_dimension: usize,
    code_size: u64,
    min_rank_distance: Option<usize>,
    certificates: usize,
    certificates_verified: usize,
}

fn mode_label(mode: CheckMode) -> String {
    match mode {
        CheckMode::Exhaustive => "exhaustive".to_string(),
        CheckMode::Sampled { samples, seed } => {
            format!("sampled ({samples} per check, seed {seed})")
        }
    }
}

fn ratio(r: &Ratio<u64>) -> String {
    r.to_string()
}

fn matrix_strings(tower: &FieldTower, a: &Matrix<FieldElement>) -> Vec<Vec<String>> {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|&c| tower.format(c)).collect())
        .collect()
}

fn step_string(tower: &FieldTower, step: &PathStep) -> String {
    match step {
        PathStep::Transport { alpha, r } => {
            format!("transport alpha={} r={r}", tower.format(*alpha))
        }
        PathStep::Similarity { target, witness } => {
            format!(
                "similar {} u={}",
                target.format(tower),
                witness.format(tower)
            )
        }
    }
}

fn code_summary(algebra: &PetitAlgebra, mode: CheckMode) -> CodeSummary {
    let tower = algebra.tower();
    match mode {
        CheckMode::Exhaustive => {
            let code = spread_code(algebra);
            CodeSummary {
                size: code.len() as u64,
                matrix_size: code.size,
                min_rank_distance: code.min_rank(),
                rank_distribution: code.rank_distribution(),
                mrd: code.is_mrd(),
                sampled: false,
            }
        }
        CheckMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let picks: Vec<u64> = (0..samples)
                .map(|_| rng.gen_range(0..algebra.size()))
                .collect();
            let ranks: Vec<usize> = picks
                .par_iter()
                .map(|&i| rank(tower, &right_mult_matrix(algebra, &algebra.element(i))))
                .collect();
            let mut rank_distribution = BTreeMap::new();
            for &r in &ranks {
                *rank_distribution.entry(r).or_insert(0) += 1;
            }
            let m = algebra.degree();
            let min = ranks.iter().copied().filter(|&r| r > 0).min();
            CodeSummary {
                size: algebra.size(),
                matrix_size: m,
                min_rank_distance: min,
                rank_distribution,
                mrd: min.is_none_or(|r| r == m),
                sampled: true,
            }
        }
    }
}

fn orbit_record(
    tower: &Arc<FieldTower>,
    index: usize,
    orbit: &Orbit,
    mode: CheckMode,
) -> Result<OrbitRecord> {
    let ring = SkewRing::new(tower);
    let factors = ring.factor_count(&orbit.representative)?;
    let algebra = PetitAlgebra::new(tower.clone(), &factors.factor)?;
    let certificates = orbit.members[1..]
        .par_iter()
        .map(|bound| {
            let target = ring.factor_count(bound)?.factor;
            let path = find_path(tower, &factors.factor, &target)?
                .ok_or_else(|| Error::CrossCheck(format!("no path to {}", target.format(tower))))?;
            let a_g = PetitAlgebra::new(tower.clone(), &target)?;
            let cert = equivalence_certificate_with(&algebra, &a_g, &path, mode)?;
            let mut record = CertificateRecord {
                bound: bound.format(tower),
                target: target.format(tower),
                path: path.iter().map(|s| step_string(tower, s)).collect(),
                x: matrix_strings(tower, &cert.x),
                phi: cert.phi,
                y: matrix_strings(tower, &cert.y),
                verified: cert.verified,
                distributions_match: cert.distributions_match,
                sha256: String::new(),
            };
            let canonical = serde_json::to_string(&(
                &record.bound,
                &record.target,
                &record.path,
                &record.x,
                record.phi,
                &record.y,
            ))
            .expect("strings serialize");
            record.sha256 = hex::encode(Sha256::digest(canonical.as_bytes()));
            Ok(record)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitRecord {
        index,
        canonical: orbit.representative.format(tower),
        members: orbit.members.iter().map(|h| h.format(tower)).collect(),
        size: orbit.size,
        stabilizer: orbit.stabilizer,
        k: factors.k,
        representative: factors.factor.format(tower),
        division: algebra.is_division(),
        associative: algebra.is_associative(),
        right_nucleus_f_dimension: algebra.right_nucleus().f_dimension,
        code: code_summary(&algebra, mode),
        certificates,
    })
}

/// The full pipeline: orbits of bounds, one semifield per orbit, its code,
/// and certificates linking it to the other bounds of its orbit.
pub fn classify(
    tower: &Arc<FieldTower>,
    m: usize,
    mode: CheckMode,
) -> Result<ClassificationReport> {
    if m < 2 {
        return Err(Error::InvalidParameters(
            "classification needs m >= 2".into(),
        ));
    }
    let n = tower.n() as u64;
    let formula = m_formula(tower.q(), n, m as u64)?;
    let bound = isotopy_class_bound(tower.q(), n, m as u64)?;
    let decomposition = orbit_decomposition(tower, m);
    let orbits = decomposition
        .orbits
        .par_iter()
        .enumerate()
        .map(|(i, o)| orbit_record(tower, i, o, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport {
        parameters: Parameters::new(tower, m),
        check: mode_label(mode),
        group_order: decomposition.group_order,
        irreducible_count: formula.irreducible,
        orbit_count_formula: formula.value,
        orbit_count_oracle: decomposition.orbit_count() as u64,
        totient_bound: ratio(&bound.totient_bound),
        orbits,
    })
}

impl ClassificationReport {
    /// Fails if the formula and the enumeration disagree, or if any
    /// certificate or code property failed.
    pub fn check(&self) -> Result<()> {
        if self.orbit_count_formula != self.orbit_count_oracle {
            return Err(Error::CrossCheck(format!(
                "formula gives {} orbits, enumeration {}",
                self.orbit_count_formula, self.orbit_count_oracle
            )));
        }
        for o in &self.orbits {
            if !o.division || !o.code.mrd {
                return Err(Error::CrossCheck(format!(
                    "orbit {}: representative is not a semifield",
                    o.index
                )));
            }
            if o.certificates
                .iter()
                .any(|c| !c.verified || c.distributions_match == Some(false))
            {
                return Err(Error::CrossCheck(format!(
                    "orbit {}: certificate failed",
                    o.index
                )));
            }
        }
        Ok(())
    }

    pub fn summary(&self) -> String {
        let p = &self.parameters;
        let mut lines = vec![
            format!(
                "p={} h={} n={} m={} (q={}), check: {}",
                p.p, p.h, p.n, p.m, p.q, self.check
            ),
            format!(
                "N(q,m) = {}, M(q,m) = {} (formula), {} (orbits), phi(n)/2*M = {}",
                self.irreducible_count,
                self.orbit_count_formula,
                self.orbit_count_oracle,
                self.totient_bound
            ),
        ];
        for o in &self.orbits {
            let verified = o.certificates.iter().filter(|c| c.verified).count();
            lines.push(format!(
                "orbit {}: {} size {} k {} representative {} nucleus dim {} code {} words min rank {} certificates {}/{} verified",
                o.index,
                o.canonical,
                o.size,
                o.k,
                o.representative,
                o.right_nucleus_f_dimension,
                o.code.size,
                o.code.min_rank_distance.map_or("-".to_string(), |d| d.to_string()),
                verified,
                o.certificates.len()
            ));
        }
        lines.join("\n")
    }

    pub(crate) fn csv_rows(&self) -> Vec<impl Serialize + '_> {
        self.orbits
            .iter()
            .map(|o| CsvRow {
                orbit: o.index,
                canonical: &o.canonical,
                size: o.size,
                stabilizer: o.stabilizer,
                k: o.k,
                representative: &o.representative,
                division: o.division,
                associative: o.associative,
                right_nucleus_f_dimension: o.right_nucleus_f_dimension,
                code_size: o.code.size,
                min_rank_distance: o.code.min_rank_distance,
                certificates: o.certificates.len(),
                certificates_verified: o.certificates.iter().filter(|c| c.verified).count(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub irreducible: u64,
    pub theta: u64,
    pub m_formula: u64,
    pub m_formula_reduced: u64,
    pub m_burnside: Option<u64>,
    pub m_orbits: Option<u64>,
    pub lower_bound: String,
    pub upper_bound: String,
    pub totient_bound: String,
}

impl CountReport {
    fn new(
        formula: &MCount,
        bound: &IsotopyBound,
        burnside: Option<u64>,
        orbits: Option<u64>,
    ) -> Self {
        CountReport {
            q: formula.q,
            n: formula.n,
            m: formula.m,
            irreducible: formula.irreducible,
            theta: formula.theta,
            m_formula: formula.value,
            m_formula_reduced: formula.reduced_value,
            m_burnside: burnside,
            m_orbits: orbits,
            lower_bound: ratio(&formula.lower_bound),
            upper_bound: ratio(&formula.upper_bound),
            totient_bound: ratio(&bound.totient_bound),
        }
    }

    pub fn check(&self) -> Result<()> {
        let values = [Some(self.m_formula_reduced), self.m_burnside, self.m_orbits];
        if values.iter().flatten().any(|&v| v != self.m_formula) {
            return Err(Error::CrossCheck(format!(
                "orbit counts disagree: formula {}, h-term form {}, Burnside {:?}, orbits {:?}",
                self.m_formula, self.m_formula_reduced, self.m_burnside, self.m_orbits
            )));
        }
        Ok(())
    }

    pub fn summary(&self) -> String {
        let oracle = |v: Option<u64>| v.map_or("skipped".to_string(), |x| x.to_string());
        [
            format!("q = {}, n = {}, m = {}", self.q, self.n, self.m),
            format!("N(q,m) = {}", self.irreducible),
            format!("theta = {}", self.theta),
            format!("M(q,m) formula = {}", self.m_formula),
            format!("M(q,m) formula, h terms = {}", self.m_formula_reduced),
            format!("M(q,m) Burnside = {}", oracle(self.m_burnside)),
            format!("M(q,m) orbits = {}", oracle(self.m_orbits)),
            format!("bounds: {} <= M <= {}", self.lower_bound, self.upper_bound),
            format!("phi(n)/2 * M = {}", self.totient_bound),
        ]
        .join("\n")
    }
}

/// M(q, m) by the closed form and, within the envelope, by Burnside and by
/// orbit enumeration.
pub fn count(tower: &FieldTower, m: usize, allow_large: bool) -> Result<CountReport> {
    if m < 1 {
        return Err(Error::InvalidParameters("m must be at least 1".into()));
    }
    let n = tower.n() as u64;
    let formula = m_formula(tower.q(), n, m as u64)?;
    let bound = isotopy_class_bound(tower.q(), n, m as u64)?;
    let size = tower.q().checked_pow(m as u32).unwrap_or(u64::MAX);
    let oracles = if size <= ORACLE_ENVELOPE {
        true
    } else if allow_large {
        false
    } else {
        return Err(Error::EnvelopeExceeded(format!(
            "q^m = {size} exceeds {ORACLE_ENVELOPE}; pass --allow-large to skip the oracles"
        )));
    };
    let (burnside, orbits) = if oracles {
        (
            Some(burnside_count(tower, m)),
            Some(orbit_decomposition(tower, m).orbit_count() as u64),
        )
    } else {
        (None, None)
    };
    Ok(CountReport::new(&formula, &bound, burnside, orbits))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRow {
    pub index: usize,
    pub canonical: String,
    pub size: usize,
    pub stabilizer: u64,
    /// Space separated.
    pub members: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitsReport {
    pub parameters: Parameters,
    pub group_order: u64,
    pub total: usize,
    pub orbits: Vec<OrbitRow>,
}

impl OrbitsReport {
    pub fn new(tower: &FieldTower, report: &OrbitReport) -> Self {
        OrbitsReport {
            parameters: Parameters::new(tower, report.m0),
            group_order: report.group_order,
            total: report.total,
            orbits: report
                .orbits
                .iter()
                .enumerate()
                .map(|(index, o)| OrbitRow {
                    index,
                    canonical: o.representative.format(tower),
                    size: o.size,
                    stabilizer: o.stabilizer,
                    members: o
                        .members
                        .iter()
                        .map(|h| h.format(tower))
                        .collect::<Vec<_>>()
                        .join(" "),
                })
                .collect(),
        }
    }

    pub fn summary(&self) -> String {
        let mut lines = vec![format!(
            "{} polynomials, {} orbits, |G| = {}",
            self.total,
            self.orbits.len(),
            self.group_order
        )];
        for o in &self.orbits {
            lines.push(format!(
                "orbit {}: size {} stabilizer {}: {}",
                o.index, o.size, o.stabilizer, o.members
            ));
        }
        lines.join("\n")
    }
}
