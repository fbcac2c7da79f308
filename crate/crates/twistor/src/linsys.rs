//! Linear systems of degree-d surfaces through configurations of disjoint
//! lines, fat points and simple points: exact condition matrices, ranks,
//! h^0/h^1, nullspace bases, the nu lower-bound formulas, general members,
//! j-invariant members, and the planar / bidegree point variants.
//!
//! h^1 is row-count minus rank, where the row count is the degree of the
//! configuration as a scheme. For disjoint supports this is the raw number of
//! matrix rows; a fat point lying on a configuration line contributes only 2
//! effective rows beyond the line (the tangential and radial derivative
//! functionals are dependent on the line block), and the bookkeeping accounts
//! for that.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::poly::{exponents, n_monomials, restriction_of_basis, PolyForm};
use crate::scalar::{gq_i, gq_int, gq_one, GQ};
use crate::twistor::{j_point, sample_proj_point, LineP3, ProjPoint3};

#[derive(Debug, Error)]
pub enum LinsysError {
    #[error("configuration lines must be pairwise disjoint")]
    NonDisjointLines,
    #[error("simple points must lie off every configuration line")]
    SimplePointOnLine,
    #[error("configuration points must be pairwise distinct")]
    DuplicatePoint,
    #[error("fat points need degree >= 1")]
    FatPointDegree,
    #[error("the linear system is empty")]
    EmptySystem,
    #[error("configuration is not j-invariant")]
    NotJInvariant,
    #[error("no nonzero form of odd degree is j-invariant")]
    OddDegree,
    #[error("point-pair augmentation needs odd h^0")]
    AugmentationNeedsOddH0,
    #[error("point-pair augmentation failed after {0} attempts")]
    AugmentationFailed(usize),
    #[error("basis is empty")]
    EmptyBasis,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

/// Disjoint lines plus fat (first-infinitesimal-neighborhood) and simple points.
#[derive(Clone, Debug, Default)]
pub struct Configuration {
    pub lines: Vec<LineP3>,
    pub fat_points: Vec<ProjPoint3>,
    pub simple_points: Vec<ProjPoint3>,
    fat_on_line: Vec<bool>,
}

impl Configuration {
    pub fn new(
        lines: Vec<LineP3>,
        fat_points: Vec<ProjPoint3>,
        simple_points: Vec<ProjPoint3>,
    ) -> Result<Self, LinsysError> {
        for i in 0..lines.len() {
            for j in (i + 1)..lines.len() {
                if lines[i].meets(&lines[j]) {
                    return Err(LinsysError::NonDisjointLines);
                }
            }
        }
        let mut all_points: Vec<&ProjPoint3> = Vec::new();
        for p in fat_points.iter().chain(simple_points.iter()) {
            if all_points.iter().any(|q| q.projectively_eq(p)) {
                return Err(LinsysError::DuplicatePoint);
            }
            all_points.push(p);
        }
        for p in &simple_points {
            if lines.iter().any(|l| l.contains_point(p)) {
                return Err(LinsysError::SimplePointOnLine);
            }
        }
        let fat_on_line = fat_points
            .iter()
            .map(|q| lines.iter().any(|l| l.contains_point(q)))
            .collect();
        Ok(Configuration { lines, fat_points, simple_points, fat_on_line })
    }

    pub fn from_lines(lines: Vec<LineP3>) -> Result<Self, LinsysError> {
        Configuration::new(lines, Vec::new(), Vec::new())
    }

    /// Degree of the configuration as a scheme in degree d: the number of
    /// independent conditions it can impose.
    pub fn scheme_rows(&self, d: usize) -> usize {
        let on_line = self.fat_on_line.iter().filter(|&&b| b).count();
        self.lines.len() * (d + 1) + 4 * self.fat_points.len() - 2 * on_line
            + self.simple_points.len()
    }

    /// Set-wise invariance under the involution j.
    pub fn is_j_invariant(&self) -> bool {
        let lines_ok = self.lines.iter().all(|l| {
            let jl = l.plucker().j_involution();
            self.lines.iter().any(|m| m.plucker().projectively_eq(&jl))
        });
        let pts_ok = |pts: &[ProjPoint3]| {
            pts.iter().all(|p| {
                let jp = j_point(p);
                pts.iter().any(|q| q.projectively_eq(&jp))
            })
        };
        lines_ok && pts_ok(&self.fat_points) && pts_ok(&self.simple_points)
    }

    /// Exact containment of the whole configuration in {f = 0}.
    pub fn verify_member(&self, f: &PolyForm) -> bool {
        let lines_ok = self.lines.iter().all(|l| f.restrict_to_line(l).is_zero());
        let simple_ok = self.simple_points.iter().all(|p| f.eval(p.coords()).is_zero());
        let fat_ok = self.fat_points.iter().all(|q| {
            if f.degree() == 0 {
                return false;
            }
            let parts = f.partials().expect("degree >= 1");
            f.eval(q.coords()).is_zero() && parts.iter().all(|p| p.eval(q.coords()).is_zero())
        });
        lines_ok && simple_ok && fat_ok
    }
}

/// The d+1 condition rows of one line: coefficients of the restriction of each
/// basis monomial.
pub fn line_rows(l: &LineP3, d: usize) -> Vec<Vec<GQ>> {
    let restricted = restriction_of_basis(l.a().coords(), l.b().coords(), d);
    (0..=d)
        .map(|m| restricted.iter().map(|bf| bf.coeff(m).clone()).collect())
        .collect()
}

/// The 4 condition rows of a fat point: the four partials evaluated at q.
/// By the Euler relation these also force f(q) = 0.
pub fn fat_point_rows(q: &ProjPoint3, d: usize) -> Result<Vec<Vec<GQ>>, LinsysError> {
    if d == 0 {
        return Err(LinsysError::FatPointDegree);
    }
    let z = q.coords();
    let mut pows: [Vec<GQ>; 4] = [vec![], vec![], vec![], vec![]];
    for i in 0..4 {
        let mut v = Vec::with_capacity(d + 1);
        v.push(GQ::one());
        for k in 1..=d {
            let prev = v[k - 1].clone();
            v.push(prev * &z[i]);
        }
        pows[i] = v;
    }
    let exps = exponents(d);
    let mut rows = Vec::with_capacity(4);
    for i in 0..4 {
        let row = exps
            .iter()
            .map(|e| {
                if e[i] == 0 {
                    return GQ::zero();
                }
                let mut v = gq_int(e[i] as i64);
                for (vr, p) in pows.iter().enumerate() {
                    let k = if vr == i { e[vr] - 1 } else { e[vr] } as usize;
                    v = v * &p[k];
                }
                v
            })
            .collect();
        rows.push(row);
    }
    Ok(rows)
}

/// Single evaluation row of a simple point.
pub fn simple_point_row(q: &ProjPoint3, d: usize) -> Vec<GQ> {
    let z = q.coords();
    exponents(d)
        .iter()
        .map(|e| {
            let mut v = GQ::one();
            for i in 0..4 {
                for _ in 0..e[i] {
                    v = v * &z[i];
                }
            }
            v
        })
        .collect()
}

pub fn condition_matrix(cfg: &Configuration, d: usize) -> Result<Vec<Vec<GQ>>, LinsysError> {
    if !cfg.fat_points.is_empty() && d == 0 {
        return Err(LinsysError::FatPointDegree);
    }
    let mut rows = Vec::with_capacity(cfg.scheme_rows(d) + 2 * cfg.fat_points.len());
    for l in &cfg.lines {
        rows.extend(line_rows(l, d));
    }
    for q in &cfg.fat_points {
        rows.extend(fat_point_rows(q, d)?);
    }
    for p in &cfg.simple_points {
        rows.push(simple_point_row(p, d));
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub d: usize,
    pub cols: usize,
    pub rows: usize,
    pub rank: usize,
    pub h0: usize,
    pub h1: usize,
}

/// Exact rank of the condition matrix; h^0 = cols - rank, h^1 = rows - rank
/// with rows the scheme degree. The Euler identity h0 - h1 = cols - rows holds
/// by construction.
pub fn cohomology(cfg: &Configuration, d: usize) -> Result<CohomologyReport, LinsysError> {
    let matrix = condition_matrix(cfg, d)?;
    let cols = n_monomials(d);
    let rank = if matrix.is_empty() { 0 } else { linalg::rank_gq(&matrix) };
    let rows = cfg.scheme_rows(d);
    if rank > rows || rank > cols {
        return Err(LinsysError::Internal("rank exceeds scheme row count"));
    }
    Ok(CohomologyReport { d, cols, rows, rank, h0: cols - rank, h1: rows - rank })
}

/// Vector-space basis of the forms vanishing on the configuration.
#[derive(Clone, Debug)]
pub struct LinearSystemBasis {
    pub d: usize,
    pub basis: Vec<PolyForm>,
}

pub fn nullspace_basis(cfg: &Configuration, d: usize) -> Result<LinearSystemBasis, LinsysError> {
    let matrix = condition_matrix(cfg, d)?;
    let cols = n_monomials(d);
    let vectors = if matrix.is_empty() {
        // no conditions: the full space
        let mut vs = Vec::with_capacity(cols);
        for i in 0..cols {
            let mut v = vec![GQ::zero(); cols];
            v[i] = GQ::one();
            vs.push(v);
        }
        vs
    } else {
        linalg::nullspace_gq(&matrix, cols)
    };
    let basis: Vec<PolyForm> = vectors
        .into_iter()
        .map(|v| {
            PolyForm::from_coeffs(d, v)
                .expect("nullspace vector has basis length")
                .primitive_integer_scale()
        })
        .collect();
    debug_assert!(basis.iter().all(|f| cfg.verify_member(f)));
    Ok(LinearSystemBasis { d, basis })
}

const fn binom_d_plus_3_3(d: u64) -> u64 {
    (d + 3) * (d + 2) * (d + 1) / 6
}

/// nu(d) = floor((C(d+3,3) - 1) / (d + 1)).
pub fn nu(d: u64) -> u64 {
    (binom_d_plus_3_3(d) - 1) / (d + 1)
}

/// Closed form: (d^2+5d)/6 for d = 0,1 mod 3, (d^2+5d+4)/6 for d = 2 mod 3.
pub fn nu_closed(d: u64) -> u64 {
    match d % 3 {
        0 | 1 => (d * d + 5 * d) / 6,
        _ => (d * d + 5 * d + 4) / 6,
    }
}

pub fn nu_normal(d: u64) -> u64 {
    if d >= 2 {
        nu(d - 1)
    } else {
        0
    }
}

pub fn nu_smooth(d: u64) -> u64 {
    if d >= 4 {
        nu(d - 3)
    } else {
        0
    }
}

/// Closed form for d >= 3: (d-3)(d+2)/6 for d = 0,1 mod 3, (d^2-d-2)/6 for d = 2 mod 3.
pub fn nu_smooth_closed(d: u64) -> u64 {
    if d < 3 {
        return 0;
    }
    match d % 3 {
        0 | 1 => (d - 3) * (d + 2) / 6,
        _ => (d * d - d - 2) / 6,
    }
}

pub fn nu_jinv(d: u64) -> u64 {
    if d >= 9 {
        nu(d - 9)
    } else {
        0
    }
}

/// Random integer combination of the basis with coefficients bounded by height.
pub fn general_member(
    basis: &LinearSystemBasis,
    seed: u64,
    height: u32,
) -> Result<PolyForm, LinsysError> {
    if basis.basis.is_empty() {
        return Err(LinsysError::EmptyBasis);
    }
    let h = height.max(1) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let coeffs: Vec<i64> = (0..basis.basis.len()).map(|_| rng.gen_range(-h..=h)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let mut f = PolyForm::zero(basis.d);
        for (c, b) in coeffs.iter().zip(basis.basis.iter()) {
            if *c != 0 {
                f = f.add(&b.scale(&gq_int(*c)));
            }
        }
        if !f.is_zero() {
            return Ok(f);
        }
    }
    Err(LinsysError::Internal("random member draws degenerate"))
}

/// p is a base point iff every basis element vanishes at p.
pub fn is_base_point(basis: &LinearSystemBasis, p: &ProjPoint3) -> bool {
    basis.basis.iter().all(|f| f.eval(p.coords()).is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JStrategy {
    Auto,
    Symmetrize,
    Augment,
}

#[derive(Clone, Debug)]
pub struct JInvariantMember {
    pub form: PolyForm,
    pub strategy: &'static str,
    /// Point pairs {p, j(p)} appended on the augmentation path.
    pub pairs: Vec<(ProjPoint3, ProjPoint3)>,
    /// The factor a with j(f) = a f before normalization to a = 1.
    pub factor: GQ,
}

/// A member f of the system with j(f) = f exactly (even degree only).
///
/// Strategies: a one-dimensional system is automatically j-invariant; an odd
/// h^0 can be cut down to 1 by appending (h^0-1)/2 general point pairs
/// {p, j(p)}; otherwise symmetrize a random member as f + j(f), falling back
/// to i(f - j(f)) when the sum vanishes.
pub fn j_invariant_member(
    cfg: &Configuration,
    d: usize,
    seed: u64,
    strategy: JStrategy,
) -> Result<JInvariantMember, LinsysError> {
    if d % 2 == 1 {
        return Err(LinsysError::OddDegree);
    }
    if !cfg.is_j_invariant() {
        return Err(LinsysError::NotJInvariant);
    }
    let basis = nullspace_basis(cfg, d)?;
    let h0 = basis.basis.len();
    if h0 == 0 {
        return Err(LinsysError::EmptySystem);
    }

    let normalize = |f: PolyForm| -> Result<(PolyForm, GQ), LinsysError> {
        let jf = f.j_form();
        let a = f
            .proportional_to(&jf)
            .ok_or(LinsysError::Internal("member is not j-proportional"))?;
        if (&a * &a.conj()) != gq_one() {
            return Err(LinsysError::Internal("j-factor must have unit norm"));
        }
        let g = if a == gq_one() {
            f
        } else if a == gq_int(-1) {
            f.scale(&gq_i())
        } else {
            f.scale(&(&gq_one() + &a))
        };
        if g.j_form() != g {
            return Err(LinsysError::Internal("normalization must fix the member"));
        }
        Ok((g, a))
    };

    if h0 == 1 || (strategy == JStrategy::Auto && h0 == 1) {
        let (form, factor) = normalize(basis.basis[0].clone())?;
        return Ok(JInvariantMember { form, strategy: "unique", pairs: Vec::new(), factor });
    }

    let resolved = match strategy {
        JStrategy::Auto => {
            if h0 % 2 == 1 {
                JStrategy::Augment
            } else {
                JStrategy::Symmetrize
            }
        }
        s => s,
    };

    match resolved {
        JStrategy::Augment => {
            if h0 % 2 == 0 {
                return Err(LinsysError::AugmentationNeedsOddH0);
            }
            let m = (h0 - 1) / 2;
            let attempts = 20;
            for attempt in 0..attempts {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
                let mut simple = cfg.simple_points.clone();
                let mut pairs = Vec::with_capacity(m);
                let mut ok = true;
                for _ in 0..m {
                    let mut found = false;
                    for _ in 0..50 {
                        let p = sample_proj_point(&mut rng, 10);
                        let jp = j_point(&p);
                        let off_lines = !cfg.lines.iter().any(|l| {
                            l.contains_point(&p) || l.contains_point(&jp)
                        });
                        let fresh = !simple.iter().any(|q| {
                            q.projectively_eq(&p) || q.projectively_eq(&jp)
                        }) && !cfg.fat_points.iter().any(|q| {
                            q.projectively_eq(&p) || q.projectively_eq(&jp)
                        });
                        if off_lines && fresh {
                            simple.push(p.clone());
                            simple.push(jp.clone());
                            pairs.push((p, jp));
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let augmented =
                    Configuration::new(cfg.lines.clone(), cfg.fat_points.clone(), simple)?;
                let aug_basis = nullspace_basis(&augmented, d)?;
                if aug_basis.basis.len() != 1 {
                    continue;
                }
                let member = aug_basis.basis[0].clone();
                if !cfg.verify_member(&member) {
                    return Err(LinsysError::Internal("augmented member must contain the configuration"));
                }
                let (form, factor) = normalize(member)?;
                return Ok(JInvariantMember { form, strategy: "augmentation", pairs, factor });
            }
            Err(LinsysError::AugmentationFailed(attempts))
        }
        JStrategy::Symmetrize => {
            for attempt in 0..20u64 {
                let f = general_member(&basis, seed.wrapping_add(attempt), 10)?;
                let jf = f.j_form();
                let mut g = f.add(&jf);
                if g.is_zero() {
                    g = f.sub(&jf).scale(&gq_i());
                }
                if g.is_zero() {
                    continue;
                }
                if !cfg.verify_member(&g) {
                    return Err(LinsysError::Internal("symmetrized member must contain the configuration"));
                }
                if g.j_form() != g {
                    return Err(LinsysError::Internal("symmetrization must be j-fixed"));
                }
                return Ok(JInvariantMember {
                    form: g,
                    strategy: "symmetrization",
                    pairs: Vec::new(),
                    factor: gq_one(),
                });
            }
            Err(LinsysError::Internal("symmetrization kept vanishing"))
        }
        JStrategy::Auto => unreachable!(),
    }
}

/// Exact (h0, h1) for a finite set of points in the projective plane at degree t.
pub fn planar_cohomology(points: &[[GQ; 3]], t: usize) -> (usize, usize) {
    let mut exps = Vec::new();
    for a in (0..=t).rev() {
        for b in (0..=(t - a)).rev() {
            exps.push([a, b, t - a - b]);
        }
    }
    let cols = exps.len();
    let rows: Vec<Vec<GQ>> = points
        .iter()
        .map(|p| {
            exps.iter()
                .map(|e| {
                    let mut v = GQ::one();
                    for i in 0..3 {
                        for _ in 0..e[i] {
                            v = v * &p[i];
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    let rank = if rows.is_empty() { 0 } else { linalg::rank_gq(&rows) };
    (cols - rank, points.len() - rank)
}

/// Exact (h0, h1) for points on P^1 x P^1 in bidegree (a, b).
pub fn bidegree_cohomology(points: &[([GQ; 2], [GQ; 2])], a: usize, b: usize) -> (usize, usize) {
    let cols = (a + 1) * (b + 1);
    let rows: Vec<Vec<GQ>> = points
        .iter()
        .map(|(s, u)| {
            let mut row = Vec::with_capacity(cols);
            for i in 0..=a {
                for j in 0..=b {
                    let mut v = GQ::one();
                    for _ in 0..(a - i) {
                        v = v * &s[0];
                    }
                    for _ in 0..i {
                        v = v * &s[1];
                    }
                    for _ in 0..(b - j) {
                        v = v * &u[0];
                    }
                    for _ in 0..j {
                        v = v * &u[1];
                    }
                    row.push(v);
                }
            }
            row
        })
        .collect();
    let rank = if rows.is_empty() { 0 } else { linalg::rank_gq(&rows) };
    (cols - rank, points.len() - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{HPoint, Quaternion};
    use crate::scalar::{gq, rat_int, Rat};
    use crate::twistor::{sample_non_twistor_line, sample_twistor_lines, twistor_fiber};

    fn fiber_q2(r: Rat) -> LineP3 {
        twistor_fiber(&HPoint::from_chart_a(Quaternion::new(
            GQ::zero(),
            gq(r, Rat::zero()),
        )))
    }

    #[test]
    fn line_rows_at_degree_one() {
        let e01 = LineP3::new(ProjPoint3::standard_basis(0), ProjPoint3::standard_basis(1)).unwrap();
        let rows = line_rows(&e01, 1);
        assert_eq!(rows.len(), 2);
        assert_eq!(linalg::rank_gq(&rows), 2);
        assert_eq!(rows[0], vec![gq_one(), GQ::zero(), GQ::zero(), GQ::zero()]);
        assert_eq!(rows[1], vec![GQ::zero(), gq_one(), GQ::zero(), GQ::zero()]);
    }

    #[test]
    fn fat_point_systems() {
        let q = ProjPoint3::standard_basis(0);
        let cfg = Configuration::new(vec![], vec![q.clone()], vec![]).unwrap();
        // degree 1: no surface is singular at a point
        let rep = cohomology(&cfg, 1).unwrap();
        assert_eq!((rep.h0, rep.h1), (0, 0));
        // degree 2: the quadric cones with vertex at q
        let rep = cohomology(&cfg, 2).unwrap();
        assert_eq!((rep.h0, rep.h1), (6, 0));
        assert!(cohomology(&cfg, 0).is_err());
        // members really are singular at q
        let basis = nullspace_basis(&cfg, 2).unwrap();
        assert_eq!(basis.basis.len(), 6);
        for f in &basis.basis {
            assert!(f.eval(q.coords()).is_zero());
            for p in f.partials().unwrap().iter() {
                assert!(p.eval(q.coords()).is_zero());
            }
        }
    }

    #[test]
    fn cohomology_of_line_and_fiber_configurations() {
        // one line, degree 1: the pencil of planes through it
        let e01 = LineP3::new(ProjPoint3::standard_basis(0), ProjPoint3::standard_basis(1)).unwrap();
        let cfg = Configuration::from_lines(vec![e01]).unwrap();
        let rep = cohomology(&cfg, 1).unwrap();
        assert_eq!((rep.h0, rep.h1), (2, 0));
        // three general fibers, degree 2: the unique quadric
        let cfg = Configuration::from_lines(sample_twistor_lines(3, 61, 7)).unwrap();
        let rep = cohomology(&cfg, 2).unwrap();
        assert_eq!((rep.h0, rep.h1), (1, 0));
        // five general fibers, degree 3: empty
        let cfg = Configuration::from_lines(sample_twistor_lines(5, 62, 7)).unwrap();
        let rep = cohomology(&cfg, 3).unwrap();
        assert_eq!((rep.h0, rep.h1), (0, 0));
        // Euler identity
        assert_eq!(rep.h0 as i64 - rep.h1 as i64, rep.cols as i64 - rep.rows as i64);
    }

    #[test]
    fn five_ruling_fibers_lie_on_cubics() {
        // fibers over q = r j, r rational, all on the quadric z0 z2 + z1 z3
        let rs = [0i64, 1, -1, 2, 3];
        let lines: Vec<LineP3> = rs.iter().map(|&r| fiber_q2(rat_int(r))).collect();
        let cfg = Configuration::from_lines(lines).unwrap();
        let rep = cohomology(&cfg, 3).unwrap();
        // exactly the cubics quadric * plane
        assert_eq!(rep.h0, 4);
        assert!(rep.h0 >= 1);
    }

    #[test]
    fn disjoint_lines_regular_from_degree_k_minus_1() {
        // h1 = 0 for t >= k-1 holds for every disjoint union, general or not
        let mut rng = ChaCha8Rng::seed_from_u64(63);
        for k in 1..=4usize {
            // ruling configuration (special position)
            let special: Vec<LineP3> = (0..k).map(|i| fiber_q2(rat_int(i as i64))).collect();
            // random disjoint lines
            let mut random = Vec::new();
            while random.len() < k {
                let l = sample_non_twistor_line(&mut rng, 5);
                if random.iter().all(|m: &LineP3| !m.meets(&l)) {
                    random.push(l);
                }
            }
            for lines in [special, random] {
                let cfg = Configuration::from_lines(lines).unwrap();
                for t in k.saturating_sub(1).max(1)..=5 {
                    let rep = cohomology(&cfg, t).unwrap();
                    assert_eq!(rep.h1, 0, "k={k} t={t}");
                }
            }
        }
    }

    #[test]
    fn fat_point_on_a_configuration_line_is_regular_from_k() {
        // h1 = 0 for x >= k with the fat point on a line of the configuration
        let mut rng = ChaCha8Rng::seed_from_u64(64);
        for k in 2..=3usize {
            let lines = sample_twistor_lines(k, 640 + k as u64, 6);
            let q = lines[0].random_point(&mut rng, 5);
            let cfg = Configuration::new(lines, vec![q], vec![]).unwrap();
            for x in k..=(k + 1) {
                let rep = cohomology(&cfg, x).unwrap();
                assert_eq!(rep.h1, 0, "k={k} x={x}");
                // bookkeeping: two of the four fat rows are dependent on the line block
                assert_eq!(rep.rows, k * (x + 1) + 2);
            }
        }
    }

    #[test]
    fn nu_values_and_closed_forms() {
        assert_eq!(
            (1..=5).map(nu).collect::<Vec<_>>(),
            vec![1, 3, 4, 6, 9]
        );
        for d in 0..=100 {
            assert_eq!(nu(d), nu_closed(d));
            if d >= 2 {
                assert!(nu(d) < d * d);
            }
            if d >= 3 {
                assert_eq!(nu_smooth(d), nu_smooth_closed(d));
            }
        }
        assert_eq!(nu_normal(4), 4);
        assert_eq!(nu_smooth(4), 1);
        assert_eq!(nu_smooth(10), 14);
        assert_eq!(nu_jinv(4), 0);
        assert_eq!(nu_jinv(9), 0);
        assert_eq!(nu_jinv(10), nu(1));
        assert_eq!(nu(0), 0);
    }

    #[test]
    fn members_and_base_points() {
        let lines = sample_twistor_lines(2, 65, 6);
        let cfg = Configuration::from_lines(lines.clone()).unwrap();
        let basis = nullspace_basis(&cfg, 2).unwrap();
        assert_eq!(basis.basis.len(), 4);
        let f = general_member(&basis, 9, 10).unwrap();
        assert!(cfg.verify_member(&f));
        // size-1 basis yields the unique member deterministically
        let cfg3 = Configuration::from_lines(sample_twistor_lines(3, 66, 6)).unwrap();
        let b3 = nullspace_basis(&cfg3, 2).unwrap();
        assert_eq!(b3.basis.len(), 1);
        let m1 = general_member(&b3, 1, 10).unwrap();
        let m2 = general_member(&b3, 2, 10).unwrap();
        assert!(m1.proportional_to(&m2).is_some());
        // base points: on a configuration line yes, generic point no
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let on_line = lines[0].random_point(&mut rng, 5);
        assert!(is_base_point(&basis, &on_line));
        let off = sample_proj_point(&mut rng, 7);
        let off_is_base = is_base_point(&basis, &off);
        // oracle: h0 drops by one exactly when the appended point is not a base point
        let appended = Configuration::new(lines.clone(), vec![], vec![off.clone()]).unwrap();
        let rep = cohomology(&appended, 2).unwrap();
        assert_eq!(rep.h0 == basis.basis.len() - 1, !off_is_base);
    }

    #[test]
    fn j_invariant_member_unique_and_augmentation() {
        // three fibers, degree 2: unique member, automatically j-invariant
        let cfg = Configuration::from_lines(sample_twistor_lines(3, 68, 6)).unwrap();
        let jm = j_invariant_member(&cfg, 2, 5, JStrategy::Auto).unwrap();
        assert_eq!(jm.strategy, "unique");
        assert_eq!(jm.form.j_form(), jm.form);
        assert!(cfg.verify_member(&jm.form));
        // one fiber, degree 2: h0 = 7 odd, augmentation with 3 pairs
        let cfg = Configuration::from_lines(sample_twistor_lines(1, 69, 6)).unwrap();
        let jm = j_invariant_member(&cfg, 2, 6, JStrategy::Auto).unwrap();
        assert_eq!(jm.strategy, "augmentation");
        assert_eq!(jm.pairs.len(), 3);
        assert_eq!(jm.form.j_form(), jm.form);
        assert!(cfg.verify_member(&jm.form));
        // symmetrization also works there
        let jm = j_invariant_member(&cfg, 2, 7, JStrategy::Symmetrize).unwrap();
        assert_eq!(jm.strategy, "symmetrization");
        assert_eq!(jm.form.j_form(), jm.form);
        assert!(cfg.verify_member(&jm.form));
        // error paths
        assert!(matches!(
            j_invariant_member(&cfg, 3, 1, JStrategy::Auto),
            Err(LinsysError::OddDegree)
        ));
        let skew = Configuration::from_lines(vec![sample_non_twistor_line(
            &mut ChaCha8Rng::seed_from_u64(70),
            6,
        )])
        .unwrap();
        assert!(matches!(
            j_invariant_member(&skew, 2, 1, JStrategy::Auto),
            Err(LinsysError::NotJInvariant)
        ));
        // augmentation refuses an even h^0
        let cfg2 = Configuration::from_lines(sample_twistor_lines(2, 71, 6)).unwrap();
        assert!(matches!(
            j_invariant_member(&cfg2, 2, 1, JStrategy::Augment),
            Err(LinsysError::AugmentationNeedsOddH0)
        ));
    }

    #[test]
    fn planar_and_bidegree_points() {
        let one = gq_one();
        let z = GQ::zero();
        // 4 collinear points in the plane: h1(t = 2) = 1
        let collinear: Vec<[GQ; 3]> = (0..4)
            .map(|k| [one.clone(), gq_int(k), z.clone()])
            .collect();
        let (_, h1) = planar_cohomology(&collinear, 2);
        assert_eq!(h1, 1);
        // 4 points in general position: h1(2) = 0
        let general = vec![
            [one.clone(), z.clone(), z.clone()],
            [z.clone(), one.clone(), z.clone()],
            [z.clone(), z.clone(), one.clone()],
            [one.clone(), one.clone(), one.clone()],
        ];
        let (_, h1) = planar_cohomology(&general, 2);
        assert_eq!(h1, 0);
        // 8 random points on P^1 x P^1 in bidegree (3,3): h1 = 0
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        let pts: Vec<([GQ; 2], [GQ; 2])> = (0..8)
            .map(|_| {
                (
                    [gq_one(), crate::scalar::rand_gq(&mut rng, 7)],
                    [gq_one(), crate::scalar::rand_gq(&mut rng, 7)],
                )
            })
            .collect();
        let (_, h1) = bidegree_cohomology(&pts, 3, 3);
        assert_eq!(h1, 0);
    }

    #[test]
    fn configuration_validation() {
        let e01 = LineP3::new(ProjPoint3::standard_basis(0), ProjPoint3::standard_basis(1)).unwrap();
        let e12 = LineP3::new(ProjPoint3::standard_basis(1), ProjPoint3::standard_basis(2)).unwrap();
        assert!(matches!(
            Configuration::from_lines(vec![e01.clone(), e12]),
            Err(LinsysError::NonDisjointLines)
        ));
        // simple point on a line is rejected; fat point on a line is allowed
        let p = ProjPoint3::standard_basis(0);
        assert!(matches!(
            Configuration::new(vec![e01.clone()], vec![], vec![p.clone()]),
            Err(LinsysError::SimplePointOnLine)
        ));
        assert!(Configuration::new(vec![e01.clone()], vec![p.clone()], vec![]).is_ok());
        assert!(matches!(
            Configuration::new(vec![], vec![p.clone()], vec![p.clone()]),
            Err(LinsysError::DuplicatePoint)
        ));
    }
}
