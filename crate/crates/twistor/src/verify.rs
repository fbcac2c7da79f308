//! The acceptance suite: one function per criterion, each returning a
//! pass/fail verdict with a detail line. The `verify` CLI command and the
//! acceptance integration test both run these. Every tolerance is pinned here.

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{
    self, analyze_surface, collinearity_report, contains_line, find_lines, numeric,
    singularity_probe, smooth_along_line, AnalysisOptions, Irreducibility,
};
use crate::linsys::{
    self, cohomology, general_member, j_invariant_member, nullspace_basis, Configuration,
    JStrategy,
};
use crate::plucker::{quadric_through_three, ruling_lines_at, transversals, RulingPair};
use crate::poly::{n_monomials, PolyForm};
use crate::quaternion::{HPoint, Quaternion};
use crate::scalar::{gq, gq_int, rand_gq, rat, rat_int, to_c64, C64, GQ, Rat};
use crate::twistor::{
    fiber_through, j_point, pi_project, sample_non_twistor_line, sample_proj_point,
    sample_twistor_lines, twistor_fiber, LineP3, ProjPoint3,
};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:02} {}  {} — {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.details
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

pub fn criterion_ids(level: Level) -> Vec<u8> {
    match level {
        // exact-arithmetic criteria only
        Level::Quick => vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 13],
        Level::Full => (1..=13).collect(),
    }
}

pub fn run(level: Level) -> Vec<CriterionResult> {
    criterion_ids(level).into_iter().map(run_criterion).collect()
}

pub fn run_criterion(id: u8) -> CriterionResult {
    let (name, f): (&'static str, fn() -> (bool, String)) = match id {
        1 => ("nu lower-bound tables", c01_nu_tables),
        2 => ("involution laws", c02_involution_laws),
        3 => ("fiber correctness", c03_fiber_correctness),
        4 => ("maximal-rank cohomology for general fibers", c04_maximal_rank),
        5 => ("fat-point conditions", c05_fat_points),
        6 => ("fat point vs transversal dichotomy", c06_dichotomy),
        7 => ("fat point on a configuration line", c07_fat_on_line),
        8 => ("collinear points in the plane", c08_planar_points),
        9 => ("unique quadric pipeline", c09_unique_quadric),
        10 => ("collinearity and the cubic criterion", c10_collinearity),
        11 => ("quartic constructions", c11_quartics),
        12 => ("line-finder calibration", c12_line_finder),
        13 => ("j-invariant extraction", c13_jinv_extraction),
        other => {
            return CriterionResult {
                id: other,
                name: "unknown",
                passed: false,
                details: "no such criterion".to_string(),
            }
        }
    };
    let (passed, details) = f();
    CriterionResult { id, name, passed, details }
}

struct Checks {
    ok: bool,
    first_failure: Option<String>,
    count: usize,
}

impl Checks {
    fn new() -> Self {
        Checks { ok: true, first_failure: None, count: 0 }
    }

    fn expect(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.count += 1;
        if !cond && self.ok {
            self.ok = false;
            self.first_failure = Some(msg());
        }
    }

    fn finish(self, ok_details: String) -> (bool, String) {
        if self.ok {
            (true, format!("{ok_details} ({} checks)", self.count))
        } else {
            (false, self.first_failure.unwrap_or_else(|| "failed".to_string()))
        }
    }
}

fn c01_nu_tables() -> (bool, String) {
    let mut c = Checks::new();
    let first: Vec<u64> = (1..=5).map(linsys::nu).collect();
    c.expect(first == vec![1, 3, 4, 6, 9], || format!("nu(1..5) = {first:?}"));
    for d in 1..=100u64 {
        c.expect(linsys::nu(d) == linsys::nu_closed(d), || {
            format!("closed form mismatch at d={d}")
        });
        if d >= 2 {
            c.expect(linsys::nu(d) < d * d, || format!("nu({d}) >= d^2"));
        }
        if d >= 3 {
            c.expect(linsys::nu_smooth(d) == linsys::nu_smooth_closed(d), || {
                format!("smooth closed form mismatch at d={d}")
            });
        }
    }
    c.expect(linsys::nu_normal(4) == 4 && linsys::nu_smooth(4) == 1 && linsys::nu_jinv(4) == 0,
        || "d=4 derived values".to_string());
    c.expect(linsys::nu_jinv(9) == 0 && linsys::nu_jinv(10) == 1, || "nu_j boundary".to_string());
    c.finish("floor formula = closed forms for d=1..100; nu(d) < d^2".to_string())
}

fn random_form(rng: &mut ChaCha8Rng, d: usize, height: u32) -> PolyForm {
    let coeffs = (0..n_monomials(d)).map(|_| rand_gq(rng, height)).collect();
    PolyForm::from_coeffs(d, coeffs).unwrap()
}

fn c02_involution_laws() -> (bool, String) {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    for _ in 0..100 {
        let z = sample_proj_point(&mut rng, 8);
        c.expect(j_point(&j_point(&z)).projectively_eq(&z), || "j_point^2 != id".to_string());
        c.expect(!j_point(&z).projectively_eq(&z), || "j_point has a fixed point".to_string());
    }
    for _ in 0..100 {
        let l = sample_non_twistor_line(&mut rng, 6);
        let p = l.plucker();
        c.expect(p.j_involution().j_involution().projectively_eq(p), || {
            "j_plucker^2 != id".to_string()
        });
    }
    for d in 1..=5usize {
        let sign = if d % 2 == 0 { gq_int(1) } else { gq_int(-1) };
        for _ in 0..20 {
            let f = random_form(&mut rng, d, 6);
            c.expect(f.j_form().j_form() == f.scale(&sign), || {
                format!("j_form^2 != (-1)^d at d={d}")
            });
            let z = sample_proj_point(&mut rng, 6);
            let lhs = f.eval(j_point(&z).coords());
            let rhs = f.j_form().eval(z.coords()).conj() * &sign;
            c.expect(lhs == rhs, || format!("pairing identity failed at d={d}"));
        }
    }
    c.finish("point, Grassmannian, and coefficient involutions verified exactly".to_string())
}

fn c03_fiber_correctness() -> (bool, String) {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    for _ in 0..100 {
        let q = Quaternion::new(rand_gq(&mut rng, 8), rand_gq(&mut rng, 8));
        let h = HPoint::from_chart_a(q);
        let f = twistor_fiber(&h);
        c.expect(pi_project(f.a()).projectively_eq(&h), || "spanning point a off base".to_string());
        c.expect(pi_project(f.b()).projectively_eq(&h), || "spanning point b off base".to_string());
        c.expect(crate::plucker::is_twistor_line(&f), || "fiber not twistor".to_string());
    }
    let fibers = sample_twistor_lines(10, 0xC3F, 8);
    for i in 0..fibers.len() {
        for j in (i + 1)..fibers.len() {
            c.expect(!fibers[i].meets(&fibers[j]), || "distinct fibers met".to_string());
        }
    }
    for _ in 0..100 {
        let l = sample_non_twistor_line(&mut rng, 8);
        c.expect(!crate::plucker::is_twistor_line(&l), || "non-fiber flagged twistor".to_string());
    }
    c.finish("100 fibers project to base; 10 fibers pairwise disjoint; twistor test separates".to_string())
}

fn c04_maximal_rank() -> (bool, String) {
    let mut cells: Vec<(usize, usize, u64)> = Vec::new();
    for d in 2..=6usize {
        for k in 1..=(linsys::nu(d as u64) as usize) {
            for s in 0..20u64 {
                cells.push((d, k, s));
            }
        }
    }
    let total = cells.len();
    let results: Vec<Result<usize, String>> = cells
        .par_iter()
        .map(|&(d, k, s)| {
            let n = n_monomials(d);
            let r = k * (d + 1);
            let expect = (n.saturating_sub(r), r.saturating_sub(n));
            let mut resamples = 0usize;
            for attempt in 0..4u64 {
                let seed = 0xC4_0000 ^ ((d as u64) << 40) ^ ((k as u64) << 32) ^ (s * 131) ^ (attempt << 56);
                let lines = sample_twistor_lines(k, seed, 6);
                let cfg = Configuration::from_lines(lines)
                    .map_err(|e| format!("d={d} k={k} s={s}: {e}"))?;
                let rep = cohomology(&cfg, d).map_err(|e| format!("d={d} k={k} s={s}: {e}"))?;
                if (rep.h0, rep.h1) == expect {
                    return Ok(resamples);
                }
                resamples += 1;
            }
            Err(format!("d={d} k={k} seed={s}: (h0,h1) stayed off the maximal-rank values"))
        })
        .collect();
    let mut events = 0usize;
    for r in &results {
        match r {
            Ok(e) => events += e,
            Err(msg) => return (false, msg.clone()),
        }
    }
    let limit = total.div_ceil(100);
    if events > limit {
        return (false, format!("{events} resample events over {total} trials exceeds 1%"));
    }
    (
        true,
        format!("d=2..6, k=1..nu(d), 20 seeds: exact maximal rank; {events}/{total} resample events"),
    )
}

fn c05_fat_points() -> (bool, String) {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    for _ in 0..10 {
        let q = sample_proj_point(&mut rng, 8);
        let cfg = Configuration::new(vec![], vec![q], vec![]).unwrap();
        let r1 = cohomology(&cfg, 1).unwrap();
        c.expect(r1.h0 == 0, || format!("h0(deg 1) = {}", r1.h0));
        let r2 = cohomology(&cfg, 2).unwrap();
        c.expect(r2.h0 == 6, || format!("h0(deg 2) = {}", r2.h0));
        c.expect(r1.h1 == 0 && r2.h1 == 0, || "fat point h1 != 0".to_string());
    }
    c.finish("h0(I_2q(1)) = 0 and h0(I_2q(2)) = 6 for 10 random points".to_string())
}

/// Rational point on the transversal through a fiber point, off the fibers.
fn transversal_point(
    lines: &[LineP3],
    rng: &mut ChaCha8Rng,
) -> Option<(ProjPoint3, ProjPoint3)> {
    let q = quadric_through_three(&lines[0], &lines[1], &lines[2]).ok()?;
    let x = lines[0].random_point(rng, 5);
    let pair = ruling_lines_at(&q, &x).ok()?;
    let RulingPair::Exact(pair) = pair else { return None };
    let transversal = pair.into_iter().find(|r| !r.projectively_eq(&lines[0]))?;
    for _ in 0..50 {
        let p = transversal.random_point(rng, 5);
        if !lines.iter().any(|l| l.contains_point(&p)) {
            return Some((p, x));
        }
    }
    None
}

fn c06_dichotomy() -> (bool, String) {
    let mut c = Checks::new();
    for s in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC6_00 + s);
        let lines = sample_twistor_lines(3, 0xC6_1000 + s, 5);
        let q3 = quadric_through_three(&lines[0], &lines[1], &lines[2]).unwrap();
        // generic point: off the quadric, hence on no transversal of the three
        let generic = loop {
            let p = sample_proj_point(&mut rng, 7);
            if !q3.eval(p.coords()).is_zero() {
                break p;
            }
        };
        let cfg = Configuration::new(lines.clone(), vec![generic], vec![]).unwrap();
        let rep = cohomology(&cfg, 3).unwrap();
        c.expect(rep.h1 == 0, || format!("seed {s}: generic fat point gave h1 = {}", rep.h1));
        // point on a common transversal
        let Some((p, _)) = transversal_point(&lines, &mut rng) else {
            c.expect(false, || format!("seed {s}: transversal sampling failed"));
            continue;
        };
        let cfg = Configuration::new(lines.clone(), vec![p], vec![]).unwrap();
        let rep = cohomology(&cfg, 3).unwrap();
        c.expect(rep.h1 == 1, || format!("seed {s}: transversal fat point gave h1 = {}", rep.h1));
    }
    c.finish("k=3, d=3: h1 = 0 generically, h1 = 1 on a transversal, 10 seeds each".to_string())
}

fn c07_fat_on_line() -> (bool, String) {
    let mut c = Checks::new();
    for k in 2..=3usize {
        for s in 0..10u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC7_00 + s);
            let lines = sample_twistor_lines(k, 0xC7_1000 + (k as u64) * 64 + s, 5);
            let q = lines[0].random_point(&mut rng, 5);
            let cfg = Configuration::new(lines, vec![q], vec![]).unwrap();
            for x in k..=(k + 1) {
                let rep = cohomology(&cfg, x).unwrap();
                c.expect(rep.h1 == 0, || format!("k={k} x={x} seed={s}: h1 = {}", rep.h1));
            }
        }
    }
    c.finish("h1(I_(2q on E)(x)) = 0 for x >= k, k = 2,3, 10 seeds".to_string())
}

fn c08_planar_points() -> (bool, String) {
    let mut c = Checks::new();
    let one = || GQ::one();
    let zero = || GQ::zero();
    for s in [4usize, 5] {
        // collinear points on z2 = 0
        let collinear: Vec<[GQ; 3]> = (0..s).map(|k| [one(), gq_int(k as i64), zero()]).collect();
        let (_, h1) = linsys::planar_cohomology(&collinear, s - 2);
        c.expect(h1 == 1, || format!("s={s} collinear: h1({}) = {h1}", s - 2));
        // general position
        let mut general = vec![
            [one(), zero(), zero()],
            [zero(), one(), zero()],
            [zero(), zero(), one()],
            [one(), one(), one()],
        ];
        if s == 5 {
            general.push([one(), gq_int(2), gq_int(3)]);
        }
        let (_, h1) = linsys::planar_cohomology(&general, s - 2);
        c.expect(h1 == 0, || format!("s={s} general: h1({}) = {h1}", s - 2));
    }
    // randomized general position, exact
    let mut rng = ChaCha8Rng::seed_from_u64(0xC8);
    for s in [4usize, 5] {
        let pts: Vec<[GQ; 3]> = (0..s)
            .map(|_| [GQ::one(), rand_gq(&mut rng, 9), rand_gq(&mut rng, 9)])
            .collect();
        let (_, h1) = linsys::planar_cohomology(&pts, s - 2);
        c.expect(h1 == 0, || format!("random s={s}: h1 = {h1}"));
    }
    c.finish("collinear s=4,5 points give h1(s-2) = 1; general position gives 0".to_string())
}

fn c09_unique_quadric() -> (bool, String) {
    let mut c = Checks::new();
    for s in 0..3u64 {
        let lines = sample_twistor_lines(3, 0xC9_00 + s, 6);
        let cfg = Configuration::from_lines(lines.clone()).unwrap();
        let rep = cohomology(&cfg, 2).unwrap();
        c.expect(rep.h0 == 1, || format!("seed {s}: h0 = {}", rep.h0));
        let q = nullspace_basis(&cfg, 2).unwrap().basis.remove(0);
        for l in &lines {
            c.expect(contains_line(&q, l), || format!("seed {s}: fiber not on quadric"));
        }
        // smooth: 4x4 determinant nonzero
        let m = crate::poly::quadric_matrix(&q).unwrap();
        let det = crate::linalg::det_gq(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        c.expect(!det.is_zero(), || format!("seed {s}: quadric singular"));
        // j-invariant: j(f) = a f exactly
        let jq = q.j_form();
        c.expect(q.proportional_to(&jq).is_some(), || format!("seed {s}: quadric not j-invariant"));
        // ruling pairs at 10 points on the fibers: the twistor factor is the fiber
        let mut rng = ChaCha8Rng::seed_from_u64(0xC9_1000 + s);
        for i in 0..10 {
            let fiber = &lines[i % 3];
            let x = fiber.random_point(&mut rng, 5);
            match ruling_lines_at(&q, &x) {
                Ok(RulingPair::Exact(pair)) => {
                    let twistor_flags: Vec<bool> =
                        pair.iter().map(crate::plucker::is_twistor_line).collect();
                    c.expect(
                        twistor_flags.iter().filter(|&&b| b).count() == 1,
                        || format!("seed {s}: ruling pair twistor count != 1"),
                    );
                    for (r, flag) in pair.iter().zip(twistor_flags.iter()) {
                        if *flag {
                            c.expect(r.projectively_eq(fiber), || {
                                format!("seed {s}: twistor factor is not the fiber")
                            });
                        } else {
                            c.expect(lines.iter().all(|g| r.meets(g)), || {
                                format!("seed {s}: mate misses a generator")
                            });
                        }
                    }
                }
                _ => c.expect(false, || format!("seed {s}: ruling factorization not exact")),
            }
        }
    }
    c.finish("3 fibers: unique smooth j-invariant quadric; ruling mates at 10 fiber points".to_string())
}

fn c10_collinearity() -> (bool, String) {
    // 20 seeds of five general fibers, in parallel
    let failures: Vec<String> = (0..20u64)
        .into_par_iter()
        .filter_map(|s| {
            let lines = sample_twistor_lines(5, 0xCA_00 + s, 6);
            let rep = collinearity_report(&lines).ok()?;
            let t_ok = rep.transversals.finite_count() == Some(0);
            let h_ok = rep.cubic_h0 == Some(0);
            (!(t_ok && h_ok)).then(|| {
                format!(
                    "seed {s}: transversals {:?}, cubic h0 {:?}",
                    rep.transversals.finite_count(),
                    rep.cubic_h0
                )
            })
        })
        .collect();
    if let Some(f) = failures.first() {
        return (false, f.clone());
    }
    // five fibers of the twistor ruling of the j-invariant quadric z0 z2 + z1 z3
    let ruled: Vec<LineP3> = [rat_int(0), rat_int(1), rat_int(-1), rat_int(2), rat(1, 2)]
        .into_iter()
        .map(|r| twistor_fiber(&HPoint::from_chart_a(Quaternion::new(GQ::zero(), gq(r, Rat::zero())))))
        .collect();
    let quadric = quadric_through_three(&ruled[0], &ruled[1], &ruled[2]).unwrap();
    for l in &ruled {
        if !contains_line(&quadric, l) {
            return (false, "ruling fibers not on one quadric".to_string());
        }
    }
    if quadric.proportional_to(&quadric.j_form()).is_none() {
        return (false, "ruling quadric not j-invariant".to_string());
    }
    let rep = match collinearity_report(&ruled) {
        Ok(r) => r,
        Err(e) => return (false, format!("ruled report: {e}")),
    };
    if !rep.infinitely_many {
        return (false, "ruled fibers: transversal family not infinite".to_string());
    }
    if rep.lies_on_cubic != Some(true) {
        return (false, format!("ruled fibers: lies_on_cubic = {:?}", rep.lies_on_cubic));
    }
    (
        true,
        format!(
            "20 seeds: 0 transversals and h0(cubics) = 0; ruling family infinite with cubic h0 = {}",
            rep.cubic_h0.unwrap_or(0)
        ),
    )
}

/// The degree-4 instances share this construction.
pub fn quartic_through_fibers(k: usize, seed: u64) -> (Vec<LineP3>, PolyForm, usize) {
    let lines = sample_twistor_lines(k, seed, 4);
    let cfg = Configuration::from_lines(lines.clone()).unwrap();
    let basis = nullspace_basis(&cfg, 4).unwrap();
    let h0 = basis.basis.len();
    let f = general_member(&basis, seed ^ 0x5EED, 10).unwrap();
    (lines, f, h0)
}

fn c11_quartics() -> (bool, String) {
    let mut c = Checks::new();
    // k = nu(4) = 6: h0 = 5, general member passes the slice certificate
    let (lines6, f6, h0) = quartic_through_fibers(6, 0xCB_06);
    c.expect(h0 == 5, || format!("k=6: h0 = {h0}"));
    for l in &lines6 {
        c.expect(contains_line(&f6, l), || "k=6: fiber not on member".to_string());
    }
    c.expect(
        analysis::irreducibility_slice_certificate(&f6, 0xCB) == Irreducibility::Certified,
        || "k=6: slice certificate inconclusive".to_string(),
    );
    // k = nu_n(4) = 4: smooth along all four lines, finite candidate list
    let (lines4, f4, _) = quartic_through_fibers(4, 0xCB_04);
    for l in &lines4 {
        c.expect(smooth_along_line(&f4, l).unwrap_or(false), || {
            "k=4: member singular along a fiber".to_string()
        });
    }
    let cands = singularity_probe(&f4, 200, 0xCB_04, 1e-10);
    c.expect(cands.len() <= 50, || format!("k=4: {} candidates", cands.len()));
    c.expect(cands.iter().all(|x| x.residual < 1e-10), || "k=4: candidate above tol".to_string());
    // k = nu_s(4) = 1: probe finds nothing after 800 starts per affine chart
    let (_, f1, _) = quartic_through_fibers(1, 0xCB_01);
    let cands = singularity_probe(&f1, 800, 0xCB_01, 1e-10);
    c.expect(cands.is_empty(), || format!("k=1: {} singular candidates", cands.len()));
    c.finish("k=6: h0=5 and certified integral; k=4: smooth along fibers; k=1: no singularity in 3200 starts".to_string())
}

/// The 27 lines of the Fermat cubic, numerically.
fn fermat_lines_numeric() -> Vec<[C64; 6]> {
    let omega = C64::new(-0.5, 0.75f64.sqrt());
    let pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
    let mut out = Vec::with_capacity(27);
    for ((i, j), (k, l)) in pairings {
        for a in 0..3 {
            for b in 0..3 {
                let mut p1 = [C64::zero(); 4];
                let mut p2 = [C64::zero(); 4];
                p1[i] = -omega.powu(a);
                p1[j] = C64::new(1.0, 0.0);
                p2[k] = -omega.powu(b);
                p2[l] = C64::new(1.0, 0.0);
                out.push(numeric::normalize_unit(&numeric::plucker_of_frame(&p1, &p2)));
            }
        }
    }
    out
}

fn fermat_cubic() -> PolyForm {
    let mut f = PolyForm::zero(3);
    for i in 0..4 {
        let mut e = [0u32; 4];
        e[i] = 3;
        f = f.add(&PolyForm::monomial(3, e, gq_int(1)).unwrap());
    }
    f
}

fn c12_line_finder() -> (bool, String) {
    let mut c = Checks::new();
    let fermat = fermat_cubic();
    let classical = fermat_lines_numeric();
    for seed in [101u64, 202, 303] {
        let opts = AnalysisOptions { seed, ..Default::default() };
        let rep = find_lines(&fermat, &opts);
        c.expect(rep.lines.len() == 27, || {
            format!("Fermat seed {seed}: {} lines", rep.lines.len())
        });
        c.expect(rep.lines.iter().all(|l| l.residual < 1e-8), || {
            format!("Fermat seed {seed}: residual above 1e-8")
        });
        // bijective match with the classical enumeration
        let mut matched = vec![false; classical.len()];
        for l in &rep.lines {
            let u = numeric::normalize_unit(&l.plucker);
            if let Some(i) = classical
                .iter()
                .enumerate()
                .find(|(_, cl)| numeric::proj_distance(&u, cl) < 1e-6)
                .map(|(i, _)| i)
            {
                matched[i] = true;
            }
        }
        c.expect(matched.iter().all(|&m| m), || {
            format!("Fermat seed {seed}: classical line unmatched")
        });
    }
    // planted quartic: recover all 6 fibers, total <= 64, twistor flags exact
    let (lines6, f6, _) = quartic_through_fibers(6, 0xCB_06);
    let opts = AnalysisOptions { seed: 404, n_starts_per_chart: Some(1000), ..Default::default() };
    let rep = find_lines(&f6, &opts);
    c.expect(rep.lines.len() <= 64, || format!("quartic: {} lines > 64", rep.lines.len()));
    for (i, planted) in lines6.iter().enumerate() {
        let exact_unit = {
            let p = planted.plucker().to_c64();
            numeric::normalize_unit(&p)
        };
        let hit = rep
            .lines
            .iter()
            .any(|l| numeric::proj_distance(&numeric::normalize_unit(&l.plucker), &exact_unit) < 1e-8);
        c.expect(hit, || format!("quartic: planted fiber {i} not recovered"));
    }
    let n_twistor = rep.lines.iter().filter(|l| l.is_twistor).count();
    c.expect(n_twistor >= 6, || format!("quartic: twistor count {n_twistor} < 6"));
    for l in rep.lines.iter().filter(|l| l.is_twistor) {
        let confirmed = l
            .exact
            .as_ref()
            .map(|e| e.contains && e.is_twistor)
            .unwrap_or(false);
        c.expect(confirmed, || "quartic: twistor flag not exactly confirmed".to_string());
    }
    c.finish(format!(
        "Fermat: 27/27 lines on 3 seeds; quartic: 6 planted fibers recovered, {n_twistor} twistor flags exactly confirmed"
    ))
}

fn c13_jinv_extraction() -> (bool, String) {
    let mut c = Checks::new();
    // d = 4 = 0 mod 4, k = 6 even: C(7,3) = 35 odd, k(d+1) = 30 even, h0 = 5 odd
    let lines = sample_twistor_lines(6, 0xCD, 4);
    let cfg = Configuration::from_lines(lines.clone()).unwrap();
    let rep = cohomology(&cfg, 4).unwrap();
    c.expect(rep.h0 == 5, || format!("h0 = {}", rep.h0));
    c.expect(rep.h0 % 2 == 1, || "h0 must be odd".to_string());
    match j_invariant_member(&cfg, 4, 0xCD_5EED, JStrategy::Augment) {
        Ok(jm) => {
            c.expect(jm.pairs.len() == 2, || format!("{} pairs", jm.pairs.len()));
            c.expect(jm.form.j_form() == jm.form, || "member not exactly j-fixed".to_string());
            for l in &lines {
                c.expect(contains_line(&jm.form, l), || "member misses a fiber".to_string());
            }
            // the factor recorded before normalization has unit norm
            c.expect((&jm.factor * &jm.factor.conj()) == GQ::one(), || "factor norm".to_string());
        }
        Err(e) => c.expect(false, || format!("augmentation failed: {e}")),
    }
    // the augmentation pairs are j-pairs by construction; also check the
    // 3-fiber unique-quadric path stays j-invariant
    let cfg3 = Configuration::from_lines(sample_twistor_lines(3, 0xCD_3, 5)).unwrap();
    match j_invariant_member(&cfg3, 2, 1, JStrategy::Auto) {
        Ok(jm) => {
            c.expect(jm.strategy == "unique", || "expected unique strategy".to_string());
            c.expect(jm.form.j_form() == jm.form, || "quadric not j-fixed".to_string());
        }
        Err(e) => c.expect(false, || format!("unique path failed: {e}")),
    }
    c.finish("h0 = 5 odd; 2 point pairs reach h0 = 1; unique member exactly j-invariant with all 6 fibers".to_string())
}

/// Surface report entry point used by the CLI for a built quartic; exercised
/// here so the acceptance suite pins its wording.
pub fn quick_surface_summary(f: &PolyForm, input_lines: &[LineP3], seed: u64) -> String {
    let opts = AnalysisOptions { seed, n_starts_per_chart: Some(50), sing_starts_per_chart: Some(50), ..Default::default() };
    let rep = analyze_surface(f, input_lines, &opts);
    format!(
        "degree {}: {} lines found, {} twistor, {}",
        rep.degree,
        rep.lines_found.len(),
        rep.n_twistor,
        rep.singularity_note
    )
}
