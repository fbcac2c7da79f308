//! Surface-level analysis: exact line containment and smoothness along lines,
//! probabilistic singularity search, slice irreducibility certificates,
//! numerical enumeration of lines with twistor classification, and
//! collinearity reports.
//!
//! Exactness boundary: contains_line and smooth_along_line are exact on exact
//! inputs. find_lines and singularity_probe are probabilistic; they expose
//! residuals and start statistics and never claim certainty. Found lines whose
//! Plucker vectors rationalize within tolerance get an exact a-posteriori
//! confirmation pass (rationalize, then verify containment and the twistor
//! test with exact arithmetic).

pub mod numeric;
mod slice;

pub use numeric::{SingularCandidate, SolveStats};
pub use slice::{irreducibility_slice_certificate, Irreducibility};

use thiserror::Error;

use crate::linsys::{cohomology, Configuration, LinsysError};
use crate::plucker::{self, is_twistor_line, line_from_plucker, PluckerError, PluckerVec, TransversalReport};
use crate::poly::{binary_gcd, BinaryForm, PolyForm};
use crate::scalar::{rationalize_f64, C64, GQ};
use crate::twistor::LineP3;
use numeric::{j_plucker_c64, normalize_unit, proj_distance, second_singular, PolyC64};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("line does not lie on the surface")]
    LineNotOnSurface,
    #[error(transparent)]
    Plucker(#[from] PluckerError),
    #[error(transparent)]
    Linsys(#[from] LinsysError),
}

/// Exact: the restriction of f to the line is the zero binary form.
pub fn contains_line(f: &PolyForm, l: &LineP3) -> bool {
    f.restrict_to_line(l).is_zero()
}

/// Exact: no point of the line is a singular point of {f = 0}; equivalent to
/// the restricted partials having constant gcd (a common root would be a
/// point where all four partials vanish, and by the Euler relation f too).
pub fn smooth_along_line(f: &PolyForm, l: &LineP3) -> Result<bool, AnalysisError> {
    if !contains_line(f, l) {
        return Err(AnalysisError::LineNotOnSurface);
    }
    let parts = f.partials().map_err(|_| AnalysisError::LineNotOnSurface)?;
    let restricted: Vec<BinaryForm> = parts.iter().map(|p| p.restrict_to_line(l)).collect();
    if restricted.iter().all(|b| b.is_zero()) {
        return Ok(false);
    }
    Ok(binary_gcd(&restricted).expect("nonzero family").is_constant())
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub seed: u64,
    /// Newton starts per chart; default 200·d.
    pub n_starts_per_chart: Option<usize>,
    pub accept_tol: f64,
    pub dedup_tol: f64,
    pub twistor_tol: f64,
    /// Singularity-probe starts per affine chart; default 200·d.
    pub sing_starts_per_chart: Option<usize>,
    pub sing_tol: f64,
    /// Denominator bound for the rationalize-then-verify pass.
    pub max_den: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            seed: 0,
            n_starts_per_chart: None,
            accept_tol: 1e-8,
            dedup_tol: 1e-6,
            twistor_tol: 1e-9,
            sing_starts_per_chart: None,
            sing_tol: 1e-10,
            max_den: 1_000_000,
        }
    }
}

/// Exact confirmation of a numerically found line.
#[derive(Clone, Debug)]
pub struct ExactConfirmation {
    pub plucker: PluckerVec,
    pub contains: bool,
    pub is_twistor: bool,
}

#[derive(Clone, Debug)]
pub struct LineFound {
    pub plucker: [C64; 6],
    pub points: [[C64; 4]; 2],
    pub residual: f64,
    pub is_twistor: bool,
    pub twistor_margin: f64,
    pub isolated: bool,
    pub exact: Option<ExactConfirmation>,
}

#[derive(Clone, Debug)]
pub struct FindLinesReport {
    pub lines: Vec<LineFound>,
    /// Some accepted solution had Jacobian rank < 4: a positive-dimensional
    /// family (a ruling) rather than isolated lines.
    pub ruling_detected: bool,
    pub stats: SolveStats,
}

fn rationalize_plucker(p: &[C64; 6], max_den: u64, tol: f64) -> Option<PluckerVec> {
    let pivot = (0..6).max_by(|&i, &j| p[i].norm().total_cmp(&p[j].norm()))?;
    if p[pivot].norm() < 1e-300 {
        return None;
    }
    let mut raw: [GQ; 6] = std::array::from_fn(|_| GQ::new(
        crate::scalar::Rat::zero(),
        crate::scalar::Rat::zero(),
    ));
    for i in 0..6 {
        let q = p[i] / p[pivot];
        let re = rationalize_f64(q.re, max_den, tol)?;
        let im = rationalize_f64(q.im, max_den, tol)?;
        raw[i] = GQ::new(re, im);
    }
    PluckerVec::from_raw(raw).ok()
}

/// Multistart enumeration of lines on {f = 0} with twistor classification and
/// an exact a-posteriori filter for rationalizable lines.
pub fn find_lines(f: &PolyForm, opts: &AnalysisOptions) -> FindLinesReport {
    let d = f.degree().max(1);
    let fc = PolyC64::from_exact(f);
    let n_starts = opts.n_starts_per_chart.unwrap_or(200 * d);
    let (raw, stats) =
        numeric::multistart_lines(&fc, n_starts, opts.seed, opts.accept_tol, opts.dedup_tol);
    let mut ruling_detected = false;
    let lines: Vec<LineFound> = raw
        .into_iter()
        .map(|r| {
            if !r.isolated {
                ruling_detected = true;
            }
            let unit = normalize_unit(&r.plucker);
            let jp = normalize_unit(&j_plucker_c64(&unit));
            let margin = second_singular(&unit, &jp);
            let flagged = margin < opts.twistor_tol;
            let exact = rationalize_plucker(&r.plucker, opts.max_den, opts.dedup_tol).and_then(
                |pv| {
                    let line = line_from_plucker(&pv).ok()?;
                    Some(ExactConfirmation {
                        contains: contains_line(f, &line),
                        is_twistor: is_twistor_line(&line),
                        plucker: pv,
                    })
                },
            );
            LineFound {
                plucker: r.plucker,
                points: r.points,
                residual: r.residual,
                is_twistor: flagged,
                twistor_margin: margin,
                isolated: r.isolated,
                exact,
            }
        })
        .collect();
    FindLinesReport { lines, ruling_detected, stats }
}

/// Probabilistic search for singular points; an empty list means "no
/// singularity found after the given starts", never a smoothness certificate.
pub fn singularity_probe(
    f: &PolyForm,
    n_starts_per_chart: usize,
    seed: u64,
    tol: f64,
) -> Vec<SingularCandidate> {
    numeric::multistart_singularities(&PolyC64::from_exact(f), n_starts_per_chart, seed, tol)
}

#[derive(Clone, Debug)]
pub struct CollinearityReport {
    pub transversals: TransversalReport,
    pub has_common_transversal: bool,
    pub infinitely_many: bool,
    /// Populated for exactly five input lines: h^0 of cubics through them.
    pub cubic_h0: Option<usize>,
    pub lies_on_cubic: Option<bool>,
}

/// Common-transversal analysis; for five lines, also whether they lie on a cubic.
pub fn collinearity_report(lines: &[LineP3]) -> Result<CollinearityReport, AnalysisError> {
    let transversals = plucker::transversals(lines)?;
    let infinitely_many = transversals.is_infinite();
    let has_common_transversal = infinitely_many || transversals.finite_count().unwrap_or(0) > 0;
    let (cubic_h0, lies_on_cubic) = if lines.len() == 5 {
        let cfg = Configuration::from_lines(lines.to_vec())?;
        let rep = cohomology(&cfg, 3)?;
        (Some(rep.h0), Some(rep.h0 >= 1))
    } else {
        (None, None)
    };
    Ok(CollinearityReport {
        transversals,
        has_common_transversal,
        infinitely_many,
        cubic_h0,
        lies_on_cubic,
    })
}

#[derive(Clone, Debug)]
pub struct SurfaceReport {
    pub degree: usize,
    pub lines_found: Vec<LineFound>,
    pub n_twistor: usize,
    /// n_twistor exceeding d^2 would contradict the twistor-line bound and
    /// indicates a bug; surfaced rather than suppressed.
    pub twistor_bound_violated: bool,
    pub smooth_along_input_lines: Option<bool>,
    pub input_lines_contained: bool,
    pub singularity_candidates: Vec<SingularCandidate>,
    pub singularity_note: String,
    pub irreducibility: Irreducibility,
    pub ruling_detected: bool,
    pub stats: SolveStats,
    pub seed: u64,
    pub n_starts_per_chart: usize,
    pub sing_starts_per_chart: usize,
    pub accept_tol: f64,
    pub dedup_tol: f64,
    pub twistor_tol: f64,
    pub sing_tol: f64,
}

/// Full per-surface report: exact checks along the given input lines, the
/// numerical line enumeration, the singularity probe and the slice
/// certificate, with all seeds and tolerances recorded.
pub fn analyze_surface(
    f: &PolyForm,
    input_lines: &[LineP3],
    opts: &AnalysisOptions,
) -> SurfaceReport {
    let d = f.degree();
    let input_lines_contained = input_lines.iter().all(|l| contains_line(f, l));
    let smooth_along_input_lines = if input_lines.is_empty() || !input_lines_contained {
        None
    } else {
        Some(
            input_lines
                .iter()
                .all(|l| smooth_along_line(f, l).unwrap_or(false)),
        )
    };
    let found = find_lines(f, opts);
    let n_twistor = found.lines.iter().filter(|l| l.is_twistor).count();
    let sing_starts = opts.sing_starts_per_chart.unwrap_or(200 * d.max(1));
    let singularity_candidates = singularity_probe(f, sing_starts, opts.seed, opts.sing_tol);
    let singularity_note = if singularity_candidates.is_empty() {
        format!("no singularity found after {} starts", 4 * sing_starts)
    } else {
        format!(
            "{} candidate singular points after {} starts",
            singularity_candidates.len(),
            4 * sing_starts
        )
    };
    let irreducibility = irreducibility_slice_certificate(f, opts.seed);
    SurfaceReport {
        degree: d,
        n_twistor,
        twistor_bound_violated: n_twistor > d * d,
        smooth_along_input_lines,
        input_lines_contained,
        singularity_candidates,
        singularity_note,
        irreducibility,
        ruling_detected: found.ruling_detected,
        stats: found.stats,
        lines_found: found.lines,
        seed: opts.seed,
        n_starts_per_chart: opts.n_starts_per_chart.unwrap_or(200 * d.max(1)),
        sing_starts_per_chart: sing_starts,
        accept_tol: opts.accept_tol,
        dedup_tol: opts.dedup_tol,
        twistor_tol: opts.twistor_tol,
        sing_tol: opts.sing_tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsys::{general_member, nullspace_basis};
    use crate::plucker::quadric_through_three;
    use crate::scalar::gq_int;
    use crate::twistor::{sample_non_twistor_line, sample_twistor_lines, ProjPoint3};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn monomial(d: usize, e: [u32; 4], c: i64) -> PolyForm {
        PolyForm::monomial(d, e, gq_int(c)).unwrap()
    }

    fn segre() -> PolyForm {
        monomial(2, [1, 0, 0, 1], 1).add(&monomial(2, [0, 1, 1, 0], -1))
    }

    fn fermat() -> PolyForm {
        let mut f = PolyForm::zero(3);
        for i in 0..4 {
            let mut e = [0u32; 4];
            e[i] = 3;
            f = f.add(&monomial(3, e, 1));
        }
        f
    }

    fn span(i: usize, j: usize) -> LineP3 {
        LineP3::new(ProjPoint3::standard_basis(i), ProjPoint3::standard_basis(j)).unwrap()
    }

    #[test]
    fn containment_examples() {
        let lines = sample_twistor_lines(3, 81, 6);
        let q = quadric_through_three(&lines[0], &lines[1], &lines[2]).unwrap();
        for l in &lines {
            assert!(contains_line(&q, l));
        }
        let fermat_line = LineP3::new(
            ProjPoint3::from_ints([1, -1, 0, 0]),
            ProjPoint3::from_ints([0, 0, 1, -1]),
        )
        .unwrap();
        assert!(contains_line(&fermat(), &fermat_line));
        let mut rng = ChaCha8Rng::seed_from_u64(82);
        let random_quartic = {
            let basis = nullspace_basis(&Configuration::default(), 4).unwrap();
            general_member(&basis, 5, 10).unwrap()
        };
        let l = sample_non_twistor_line(&mut rng, 6);
        assert!(!contains_line(&random_quartic, &l));
    }

    #[test]
    fn smoothness_along_lines() {
        assert!(smooth_along_line(&segre(), &span(0, 1)).unwrap());
        // reducible cubic z0 * segre is singular where span(e0,e1) meets {z0=0} ∩ segre
        let cubic = monomial(1, [1, 0, 0, 0], 1).mul(&segre());
        assert!(contains_line(&cubic, &span(0, 1)));
        assert!(!smooth_along_line(&cubic, &span(0, 1)).unwrap());
        // error path: line not on surface
        assert!(smooth_along_line(&segre(), &span(0, 3)).is_err());
    }

    #[test]
    fn quartic_through_four_fibers_is_smooth_along_them() {
        let lines = sample_twistor_lines(4, 83, 5);
        let cfg = Configuration::from_lines(lines.clone()).unwrap();
        let basis = nullspace_basis(&cfg, 4).unwrap();
        assert_eq!(basis.basis.len(), 35 - 20);
        let f = general_member(&basis, 7, 10).unwrap();
        for l in &lines {
            assert!(smooth_along_line(&f, l).unwrap());
        }
    }

    #[test]
    fn collinearity_of_fiber_families() {
        // five general fibers: no transversal, no cubic
        let lines = sample_twistor_lines(5, 84, 6);
        let rep = collinearity_report(&lines).unwrap();
        assert!(!rep.has_common_transversal);
        assert_eq!(rep.cubic_h0, Some(0));
        assert_eq!(rep.lies_on_cubic, Some(false));
        // five fibers of one ruling: infinitely many transversals, on a cubic
        let ruled: Vec<LineP3> = [0i64, 1, -1, 2, 3]
            .iter()
            .map(|&r| {
                crate::twistor::twistor_fiber(&crate::quaternion::HPoint::from_chart_a(
                    crate::quaternion::Quaternion::new(GQ::zero(), gq_int(r)),
                ))
            })
            .collect();
        let rep = collinearity_report(&ruled).unwrap();
        assert!(rep.infinitely_many);
        assert!(rep.has_common_transversal);
        assert_eq!(rep.lies_on_cubic, Some(true));
        assert_eq!(rep.cubic_h0, Some(4));
        // four general lines: two transversals
        let four = sample_twistor_lines(4, 85, 6);
        let rep = collinearity_report(&four).unwrap();
        assert_eq!(rep.transversals.finite_count(), Some(2));
    }

    #[test]
    fn find_lines_confirms_planted_fiber_exactly() {
        // quadric through 3 fibers: rulings detected, fibers rationalize
        let lines = sample_twistor_lines(3, 86, 4);
        let q = quadric_through_three(&lines[0], &lines[1], &lines[2]).unwrap();
        let opts = AnalysisOptions { seed: 11, n_starts_per_chart: Some(60), ..Default::default() };
        let rep = find_lines(&q, &opts);
        assert!(rep.ruling_detected, "a quadric carries rulings");
        assert!(!rep.lines.is_empty());
        // every accepted line really lies on the quadric numerically
        for l in &rep.lines {
            assert!(l.residual < opts.accept_tol);
            if let Some(e) = &l.exact {
                assert!(e.contains);
            }
        }
    }

    #[test]
    fn surface_report_on_smooth_quadric() {
        let opts = AnalysisOptions { seed: 13, n_starts_per_chart: Some(40), sing_starts_per_chart: Some(40), ..Default::default() };
        let rep = analyze_surface(&segre(), &[span(0, 1)], &opts);
        assert_eq!(rep.degree, 2);
        assert!(rep.input_lines_contained);
        assert_eq!(rep.smooth_along_input_lines, Some(true));
        assert!(rep.singularity_candidates.is_empty());
        assert!(rep.singularity_note.contains("no singularity found"));
        assert_eq!(rep.irreducibility, Irreducibility::Certified);
        assert!(rep.ruling_detected);
        assert!(!rep.twistor_bound_violated);
    }
}
