//! JSON records for every artifact: lines and quaternion points with exact
//! `num/den` rationals, Plucker vectors with an explicit coordinate-order
//! string, surfaces as sparse graded-lex coefficient lists, cohomology
//! reports, surface-analysis reports, and the run manifest embedded in every
//! output file.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{Irreducibility, LineFound, SingularCandidate, SurfaceReport};
use crate::linsys::CohomologyReport;
use crate::plucker::PluckerVec;
use crate::poly::{exponents, PolyForm};
use crate::quaternion::Quaternion;
use crate::scalar::{gq_from_pair, gq_to_pair, C64, GQ, ScalarError};
use crate::twistor::{LineP3, ProjPoint3};

pub const PLUCKER_ORDER: &str = "p01,p02,p03,p12,p13,p23";
pub const MONOMIAL_ORDER: &str = "gradedlex";

#[derive(Debug, Error)]
pub enum RecordError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("order string `{got}` does not match `{want}`")]
    OrderMismatch { got: String, want: &'static str },
    #[error("record is not a valid {0}")]
    Invalid(&'static str),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Reproducibility header embedded in every output file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub timing_ms: u64,
    pub version: String,
}

impl RunManifest {
    pub fn new(command: String, seed: u64) -> Self {
        RunManifest {
            command,
            seed,
            tolerances: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            timing_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

pub type PointPairs = [[String; 2]; 4];

pub fn point_record(p: &ProjPoint3) -> PointPairs {
    let c = p.coords();
    [gq_to_pair(&c[0]), gq_to_pair(&c[1]), gq_to_pair(&c[2]), gq_to_pair(&c[3])]
}

pub fn point_from_record(r: &PointPairs) -> Result<ProjPoint3, RecordError> {
    let mut z: [GQ; 4] = std::array::from_fn(|_| GQ::new(
        crate::scalar::Rat::zero(),
        crate::scalar::Rat::zero(),
    ));
    for i in 0..4 {
        z[i] = gq_from_pair(&r[i])?;
    }
    ProjPoint3::new(z).map_err(|_| RecordError::Invalid("projective point"))
}

/// `{"points": [[ [re,im] x4 ], [ [re,im] x4 ]]}` with `num/den` rationals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineRecord {
    pub points: [PointPairs; 2],
}

pub fn line_record(l: &LineP3) -> LineRecord {
    LineRecord { points: [point_record(l.a()), point_record(l.b())] }
}

pub fn line_from_record(r: &LineRecord) -> Result<LineP3, RecordError> {
    let a = point_from_record(&r.points[0])?;
    let b = point_from_record(&r.points[1])?;
    LineP3::new(a, b).map_err(|_| RecordError::Invalid("line"))
}

/// `{"q1": [re,im], "q2": [re,im]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuaternionPointRecord {
    pub q1: [String; 2],
    pub q2: [String; 2],
}

pub fn quaternion_record(q: &Quaternion) -> QuaternionPointRecord {
    QuaternionPointRecord { q1: gq_to_pair(&q.a), q2: gq_to_pair(&q.b) }
}

pub fn quaternion_from_record(r: &QuaternionPointRecord) -> Result<Quaternion, RecordError> {
    Ok(Quaternion::new(gq_from_pair(&r.q1)?, gq_from_pair(&r.q2)?))
}

/// The order string is mandatory to prevent convention drift.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PluckerRecord {
    pub plucker: [[String; 2]; 6],
    pub order: String,
}

pub fn plucker_record(p: &PluckerVec) -> PluckerRecord {
    let c = p.coords();
    PluckerRecord {
        plucker: std::array::from_fn(|i| gq_to_pair(&c[i])),
        order: PLUCKER_ORDER.to_string(),
    }
}

pub fn plucker_from_record(r: &PluckerRecord) -> Result<PluckerVec, RecordError> {
    if r.order != PLUCKER_ORDER {
        return Err(RecordError::OrderMismatch { got: r.order.clone(), want: PLUCKER_ORDER });
    }
    let mut raw: [GQ; 6] = std::array::from_fn(|_| GQ::new(
        crate::scalar::Rat::zero(),
        crate::scalar::Rat::zero(),
    ));
    for i in 0..6 {
        raw[i] = gq_from_pair(&r.plucker[i])?;
    }
    PluckerVec::from_raw(raw).map_err(|_| RecordError::Invalid("plucker vector"))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub alpha: [u32; 4],
    pub re: String,
    pub im: String,
}

/// Sparse surface record; omitted alphas are zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceRecord {
    pub degree: usize,
    pub order: String,
    pub coeffs: Vec<CoeffRecord>,
}

pub fn surface_record(f: &PolyForm) -> SurfaceRecord {
    let mut coeffs = Vec::new();
    for (i, e) in exponents(f.degree()).iter().enumerate() {
        let c = &f.coeffs()[i];
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        coeffs.push(CoeffRecord {
            alpha: *e,
            re: crate::scalar::rat_to_string(&c.re),
            im: crate::scalar::rat_to_string(&c.im),
        });
    }
    SurfaceRecord { degree: f.degree(), order: MONOMIAL_ORDER.to_string(), coeffs }
}

pub fn surface_from_record(r: &SurfaceRecord) -> Result<PolyForm, RecordError> {
    if r.order != MONOMIAL_ORDER {
        return Err(RecordError::OrderMismatch { got: r.order.clone(), want: MONOMIAL_ORDER });
    }
    let mut f = PolyForm::zero(r.degree);
    for c in &r.coeffs {
        let v = GQ::new(
            crate::scalar::rat_from_str(&c.re)?,
            crate::scalar::rat_from_str(&c.im)?,
        );
        let m = PolyForm::monomial(r.degree, c.alpha, v)
            .map_err(|_| RecordError::Invalid("surface coefficient"))?;
        f = f.add(&m);
    }
    Ok(f)
}

fn c64_pair(x: &C64) -> [f64; 2] {
    [x.re, x.im]
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineFoundRecord {
    pub plucker: [[f64; 2]; 6],
    pub points: [[[f64; 2]; 4]; 2],
    pub residual: f64,
    pub is_twistor: bool,
    pub twistor_margin: f64,
    pub isolated: bool,
    pub exactly_confirmed: bool,
    pub exact_contains: Option<bool>,
    pub exact_is_twistor: Option<bool>,
    pub exact_plucker: Option<PluckerRecord>,
}

pub fn line_found_record(l: &LineFound) -> LineFoundRecord {
    LineFoundRecord {
        plucker: std::array::from_fn(|i| c64_pair(&l.plucker[i])),
        points: [
            std::array::from_fn(|i| c64_pair(&l.points[0][i])),
            std::array::from_fn(|i| c64_pair(&l.points[1][i])),
        ],
        residual: l.residual,
        is_twistor: l.is_twistor,
        twistor_margin: l.twistor_margin,
        isolated: l.isolated,
        exactly_confirmed: l.exact.as_ref().map(|e| e.contains).unwrap_or(false),
        exact_contains: l.exact.as_ref().map(|e| e.contains),
        exact_is_twistor: l.exact.as_ref().map(|e| e.is_twistor),
        exact_plucker: l.exact.as_ref().map(|e| plucker_record(&e.plucker)),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingularCandidateRecord {
    pub point: [[f64; 2]; 4],
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveStatsRecord {
    pub starts: usize,
    pub converged: usize,
    pub distinct: usize,
}

/// Full analysis output with provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceReportRecord {
    pub manifest: RunManifest,
    pub degree: usize,
    pub lines_found: Vec<LineFoundRecord>,
    pub n_twistor: usize,
    pub twistor_bound_violated: bool,
    pub smooth_along_input_lines: Option<bool>,
    pub input_lines_contained: bool,
    pub singularity_candidates: Vec<SingularCandidateRecord>,
    pub singularity_note: String,
    pub irreducibility: String,
    pub irreducibility_witness: Option<String>,
    pub ruling_detected: bool,
    pub stats: SolveStatsRecord,
    pub seed: u64,
    pub n_starts_per_chart: usize,
    pub sing_starts_per_chart: usize,
    pub accept_tol: f64,
    pub dedup_tol: f64,
    pub twistor_tol: f64,
    pub sing_tol: f64,
}

pub fn surface_report_record(rep: &SurfaceReport, manifest: RunManifest) -> SurfaceReportRecord {
    let (irr, witness) = match &rep.irreducibility {
        Irreducibility::Certified => ("certified".to_string(), None),
        Irreducibility::Inconclusive(w) => ("inconclusive".to_string(), Some(w.clone())),
    };
    SurfaceReportRecord {
        manifest,
        degree: rep.degree,
        lines_found: rep.lines_found.iter().map(line_found_record).collect(),
        n_twistor: rep.n_twistor,
        twistor_bound_violated: rep.twistor_bound_violated,
        smooth_along_input_lines: rep.smooth_along_input_lines,
        input_lines_contained: rep.input_lines_contained,
        singularity_candidates: rep
            .singularity_candidates
            .iter()
            .map(|c: &SingularCandidate| SingularCandidateRecord {
                point: std::array::from_fn(|i| c64_pair(&c.point[i])),
                residual: c.residual,
            })
            .collect(),
        singularity_note: rep.singularity_note.clone(),
        irreducibility: irr,
        irreducibility_witness: witness,
        ruling_detected: rep.ruling_detected,
        stats: SolveStatsRecord {
            starts: rep.stats.starts,
            converged: rep.stats.converged,
            distinct: rep.stats.distinct,
        },
        seed: rep.seed,
        n_starts_per_chart: rep.n_starts_per_chart,
        sing_starts_per_chart: rep.sing_starts_per_chart,
        accept_tol: rep.accept_tol,
        dedup_tol: rep.dedup_tol,
        twistor_tol: rep.twistor_tol,
        sing_tol: rep.sing_tol,
    }
}

/// `fiber` command output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiberDocument {
    pub manifest: RunManifest,
    pub base_point: QuaternionPointRecord,
    pub line: LineRecord,
    pub plucker: PluckerRecord,
    pub is_twistor: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JInvariantRecord {
    pub strategy: String,
    /// Factor a with j(f) = a f before normalization.
    pub factor: [String; 2],
    pub pairs: Vec<[PointPairs; 2]>,
}

/// `build` command output: surface, configuration, cohomology, manifest.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BuildDocument {
    pub manifest: RunManifest,
    pub lines: Vec<LineRecord>,
    pub report: CohomologyReport,
    pub surface: SurfaceRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_invariant: Option<JInvariantRecord>,
}

/// `nu` table row with the closed-form cross-check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NuRow {
    pub d: u64,
    pub nu: u64,
    pub nu_closed: u64,
    pub nu_n: u64,
    pub nu_s: u64,
    pub nu_s_closed: u64,
    pub nu_j: u64,
    pub closed_ok: bool,
}

/// Accept either a bare surface record or a `build` output document.
pub fn read_surface_input(json: &str) -> Result<(PolyForm, Vec<LineP3>), RecordError> {
    let value: serde_json::Value = serde_json::from_str(json)?;
    if value.get("surface").is_some() {
        let doc: BuildDocument = serde_json::from_value(value)?;
        let f = surface_from_record(&doc.surface)?;
        let lines = doc
            .lines
            .iter()
            .map(line_from_record)
            .collect::<Result<Vec<_>, _>>()?;
        Ok((f, lines))
    } else {
        let rec: SurfaceRecord = serde_json::from_value(value)?;
        Ok((surface_from_record(&rec)?, Vec::new()))
    }
}
