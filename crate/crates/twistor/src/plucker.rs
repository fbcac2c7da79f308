//! Gr(2,4) through Plucker coordinates: the Klein relation, the incidence
//! pairing, the involution induced by the point map j, the twistor-line test,
//! common transversals of line configurations, the quadric through three skew
//! lines, and the two ruling lines of a smooth quadric at a point.
//!
//! Coordinate order is fixed as (p01, p02, p03, p12, p13, p23) with Klein
//! relation p01·p23 - p02·p13 + p03·p12 = 0. The involution on Gr(2,4) is
//! derived from the point map (minors of (j(a), j(b))), which gives
//! (p01, p02, p03, p12, p13, p23) -> (conj p01, conj p13, -conj p12,
//! -conj p03, conj p02, conj p23).

use num_traits::Zero;
use thiserror::Error;

use crate::linalg;
use crate::poly::{restriction_of_basis, PolyForm};
use crate::scalar::{sqrt_gq, to_c64, C64, GQ};
use crate::twistor::{LineP3, ProjPoint3};

#[derive(Debug, Error)]
pub enum PluckerError {
    #[error("spanning points are linearly dependent")]
    DependentSpan,
    #[error("6-vector does not satisfy the Klein relation or is zero")]
    InvalidPlucker,
    #[error("input lines must be pairwise disjoint")]
    NonDisjointInput,
    #[error("at least one input line required")]
    EmptyInput,
    #[error("expected a unique quadric; nullspace dimension was {0}")]
    DegenerateConfiguration(usize),
    #[error("form is not a quadric")]
    NotAQuadric,
    #[error("quadric is singular")]
    SingularQuadric,
    #[error("point does not lie on the quadric")]
    PointNotOnQuadric,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

/// Projective 6-vector on the Klein quadric.
#[derive(Clone, Debug)]
pub struct PluckerVec {
    p: [GQ; 6],
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_index(i: usize, j: usize) -> usize {
    PAIRS.iter().position(|&(a, b)| (a, b) == (i, j)).unwrap()
}

impl PluckerVec {
    /// The six 2x2 minors of the 2x4 matrix [a; b].
    pub fn from_spanning(a: &[GQ; 4], b: &[GQ; 4]) -> Result<Self, PluckerError> {
        let mut p = [GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero()];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            p[k] = &a[i] * &b[j] - &a[j] * &b[i];
        }
        if p.iter().all(|c| c.is_zero()) {
            return Err(PluckerError::DependentSpan);
        }
        let v = PluckerVec { p };
        debug_assert!(v.klein().is_zero());
        Ok(v)
    }

    pub fn from_raw(p: [GQ; 6]) -> Result<Self, PluckerError> {
        if p.iter().all(|c| c.is_zero()) {
            return Err(PluckerError::InvalidPlucker);
        }
        let v = PluckerVec { p };
        if !v.klein().is_zero() {
            return Err(PluckerError::InvalidPlucker);
        }
        Ok(v)
    }

    pub fn coords(&self) -> &[GQ; 6] {
        &self.p
    }

    /// Minor p_ij (i < j); p_ji = -p_ij.
    pub fn minor(&self, i: usize, j: usize) -> GQ {
        if i < j {
            self.p[pair_index(i, j)].clone()
        } else {
            -self.p[pair_index(j, i)].clone()
        }
    }

    /// Klein quadratic form p01·p23 - p02·p13 + p03·p12.
    pub fn klein(&self) -> GQ {
        klein_raw(&self.p)
    }

    /// Polarized Klein pairing; zero iff the two lines meet.
    pub fn incidence(&self, other: &PluckerVec) -> GQ {
        incidence_raw(&self.p, &other.p)
    }

    /// Involution induced by the point map j; fixes exactly the twistor lines.
    pub fn j_involution(&self) -> PluckerVec {
        let p = &self.p;
        PluckerVec {
            p: [
                p[0].conj(),
                p[4].conj(),
                -p[3].conj(),
                -p[2].conj(),
                p[1].conj(),
                p[5].conj(),
            ],
        }
    }

    /// Equality up to complex scale: all 2x2 minors of the stacked 2x6 vanish.
    pub fn projectively_eq(&self, other: &PluckerVec) -> bool {
        for i in 0..6 {
            for j in (i + 1)..6 {
                if &self.p[i] * &other.p[j] != &self.p[j] * &other.p[i] {
                    return false;
                }
            }
        }
        true
    }

    /// Canonical representative: divide by the first nonzero coordinate.
    pub fn normalized(&self) -> PluckerVec {
        let pivot = self.p.iter().find(|c| !c.is_zero()).expect("nonzero vector");
        let mut p = self.p.clone();
        for c in p.iter_mut() {
            *c = &*c / pivot;
        }
        PluckerVec { p }
    }

    pub fn to_c64(&self) -> [C64; 6] {
        let mut out = [C64::zero(); 6];
        for (o, c) in out.iter_mut().zip(self.p.iter()) {
            *o = to_c64(c);
        }
        out
    }
}

pub fn klein_raw(p: &[GQ; 6]) -> GQ {
    &p[0] * &p[5] - &p[1] * &p[4] + &p[2] * &p[3]
}

pub fn incidence_raw(p: &[GQ; 6], q: &[GQ; 6]) -> GQ {
    &p[0] * &q[5] + &p[5] * &q[0] - &p[1] * &q[4] - &p[4] * &q[1] + &p[2] * &q[3] + &p[3] * &q[2]
}

/// Coefficient row of the linear functional x -> incidence(p, x).
fn incidence_row(p: &PluckerVec) -> Vec<GQ> {
    let c = &p.p;
    vec![c[5].clone(), -c[4].clone(), c[3].clone(), c[2].clone(), -c[1].clone(), c[0].clone()]
}

/// A line is a twistor line iff its Plucker vector is fixed by the involution.
pub fn is_twistor_line(l: &LineP3) -> bool {
    l.plucker().j_involution().projectively_eq(l.plucker())
}

/// Recover spanning points from a Klein-quadric point: the antisymmetric
/// matrix P with P[i][j] = p_ij factors as a b^T - b a^T, so its nonzero
/// columns span the line.
pub fn line_from_plucker(p: &PluckerVec) -> Result<LineP3, PluckerError> {
    if !p.klein().is_zero() {
        return Err(PluckerError::InvalidPlucker);
    }
    let col = |k: usize| -> [GQ; 4] {
        let mut c = [GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero()];
        for (i, item) in c.iter_mut().enumerate() {
            if i != k {
                *item = p.minor(i, k);
            }
        }
        c
    };
    let cols: Vec<[GQ; 4]> = (0..4).map(col).collect();
    let c1 = cols
        .iter()
        .position(|c| c.iter().any(|x| !x.is_zero()))
        .ok_or(PluckerError::InvalidPlucker)?;
    for c2 in (c1 + 1)..4 {
        let independent = (0..4).any(|i| {
            ((i + 1)..4).any(|j| {
                &cols[c1][i] * &cols[c2][j] != &cols[c1][j] * &cols[c2][i]
            })
        });
        if independent {
            let a = ProjPoint3::new(cols[c1].clone()).map_err(|_| PluckerError::InvalidPlucker)?;
            let b = ProjPoint3::new(cols[c2].clone()).map_err(|_| PluckerError::InvalidPlucker)?;
            let line = LineP3::new(a, b).map_err(|_| PluckerError::InvalidPlucker)?;
            debug_assert!(line.plucker().projectively_eq(p));
            return Ok(line);
        }
    }
    Err(PluckerError::InvalidPlucker)
}

/// Approximate line produced when a root is irrational.
#[derive(Clone, Debug)]
pub struct ApproxLine {
    pub plucker: [C64; 6],
    pub points: [[C64; 4]; 2],
}

#[derive(Clone, Debug)]
pub enum TransversalLine {
    Exact(LineP3),
    Approx(ApproxLine),
}

#[derive(Clone, Debug)]
pub struct InfiniteWitness {
    /// Basis of the incidence kernel in CP^5 (not necessarily on the Klein quadric).
    pub kernel_basis: Vec<[GQ; 6]>,
    /// The unique quadric through the first three lines, when it exists.
    pub quadric: Option<PolyForm>,
    /// True when the kernel is a plane on which the Klein form vanishes identically.
    pub isotropic_pencil: bool,
}

#[derive(Clone, Debug)]
pub enum TransversalOutcome {
    Finite(Vec<TransversalLine>),
    Infinite(InfiniteWitness),
}

#[derive(Clone, Debug)]
pub struct TransversalReport {
    pub outcome: TransversalOutcome,
    /// Exact discriminant of the restricted Klein form (2-dimensional kernel path).
    pub discriminant: Option<GQ>,
}

impl TransversalReport {
    pub fn finite_count(&self) -> Option<usize> {
        match &self.outcome {
            TransversalOutcome::Finite(v) => Some(v.len()),
            TransversalOutcome::Infinite(_) => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.outcome, TransversalOutcome::Infinite(_))
    }
}

enum QuadraticRoots {
    AllZero,
    Exact(Vec<(GQ, GQ)>),
    Approx(Vec<(C64, C64)>),
}

/// Roots (s:t) of A s^2 + B st + C t^2 together with the exact discriminant.
fn binary_quadratic_roots(a: &GQ, b: &GQ, c: &GQ) -> (QuadraticRoots, GQ) {
    let two = crate::scalar::gq_int(2);
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return (QuadraticRoots::AllZero, GQ::zero());
    }
    let disc = b * b - &(&crate::scalar::gq_int(4) * a) * c;
    if a.is_zero() {
        if b.is_zero() {
            // C t^2: double root (1 : 0)
            return (QuadraticRoots::Exact(vec![(crate::scalar::gq_one(), GQ::zero())]), disc);
        }
        // t (B s + C t): roots (1 : 0) and (-C : B)
        return (
            QuadraticRoots::Exact(vec![
                (crate::scalar::gq_one(), GQ::zero()),
                (-c.clone(), b.clone()),
            ]),
            disc,
        );
    }
    if disc.is_zero() {
        return (QuadraticRoots::Exact(vec![(-b.clone(), &two * a)]), disc);
    }
    match sqrt_gq(&disc) {
        Some(r) => (
            QuadraticRoots::Exact(vec![
                (&r - b, &two * a),
                (-(&r + b), &two * a),
            ]),
            disc,
        ),
        None => {
            let (af, bf, df) = (to_c64(a), to_c64(b), to_c64(&disc));
            let r = df.sqrt();
            (
                QuadraticRoots::Approx(vec![
                    ((r - bf) / (2.0 * af), C64::new(1.0, 0.0)),
                    ((-r - bf) / (2.0 * af), C64::new(1.0, 0.0)),
                ]),
                disc,
            )
        }
    }
}

fn raw_combination(u: &[GQ; 6], v: &[GQ; 6], s: &GQ, t: &GQ) -> [GQ; 6] {
    let mut out = [GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero()];
    for i in 0..6 {
        out[i] = s * &u[i] + t * &v[i];
    }
    out
}

fn approx_line_from_plucker(p: [C64; 6]) -> ApproxLine {
    // antisymmetric matrix columns, numerically
    let mut m = [[C64::zero(); 4]; 4];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        m[i][j] = p[k];
        m[j][i] = -p[k];
    }
    let col = |k: usize| -> [C64; 4] {
        let mut c = [C64::zero(); 4];
        for (i, item) in c.iter_mut().enumerate() {
            *item = m[i][k];
        }
        c
    };
    let norm = |c: &[C64; 4]| c.iter().map(|x| x.norm_sqr()).sum::<f64>();
    let cols: Vec<[C64; 4]> = (0..4).map(col).collect();
    let c1 = (0..4).max_by(|&a, &b| norm(&cols[a]).total_cmp(&norm(&cols[b]))).unwrap();
    // most independent second column: largest residual after projecting on col c1
    let n1 = norm(&cols[c1]).sqrt();
    let residual_norm = |c: &[C64; 4]| {
        let dot: C64 = c.iter().zip(cols[c1].iter()).map(|(x, y)| x * y.conj()).sum();
        let coef = dot / (n1 * n1);
        c.iter()
            .zip(cols[c1].iter())
            .map(|(x, y)| (x - coef * y).norm_sqr())
            .sum::<f64>()
    };
    let c2 = (0..4)
        .filter(|&k| k != c1)
        .max_by(|&a, &b| residual_norm(&cols[a]).total_cmp(&residual_norm(&cols[b])))
        .unwrap();
    ApproxLine { plucker: p, points: [cols[c1], cols[c2]] }
}

fn check_pairwise_disjoint(lines: &[LineP3]) -> Result<(), PluckerError> {
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if lines[i].meets(&lines[j]) {
                return Err(PluckerError::NonDisjointInput);
            }
        }
    }
    Ok(())
}

/// All lines meeting every line of the input configuration.
///
/// The incidence conditions of the first four lines cut the kernel K in CP^5.
/// Generically dim K = 2 and the Klein form restricted to K is a binary
/// quadratic whose 1 or 2 roots are the transversal candidates; candidates are
/// then filtered by incidence with the remaining input lines. A kernel of
/// dimension > 2, or a kernel plane inside the Klein quadric, means infinitely
/// many transversals and is reported with a witness. With fewer than four
/// input lines the kernel dimension is at least 3, so the family is infinite.
pub fn transversals(lines: &[LineP3]) -> Result<TransversalReport, PluckerError> {
    if lines.is_empty() {
        return Err(PluckerError::EmptyInput);
    }
    check_pairwise_disjoint(lines)?;

    let witness_quadric = if lines.len() >= 3 {
        quadric_through_three(&lines[0], &lines[1], &lines[2]).ok()
    } else {
        None
    };

    let head = lines.len().min(4);
    let rows: Vec<Vec<GQ>> = lines[..head].iter().map(|l| incidence_row(l.plucker())).collect();
    let kernel = linalg::nullspace_gq(&rows, 6);
    let kdim = kernel.len();

    if kdim > 2 {
        let basis: Vec<[GQ; 6]> = kernel
            .into_iter()
            .map(|v| {
                let mut a = [GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero()];
                a.clone_from_slice(&v[..6]);
                a
            })
            .collect();
        return Ok(TransversalReport {
            outcome: TransversalOutcome::Infinite(InfiniteWitness {
                kernel_basis: basis,
                quadric: witness_quadric,
                isotropic_pencil: false,
            }),
            discriminant: None,
        });
    }
    if kdim < 2 {
        return Err(PluckerError::Internal("incidence kernel of 4 lines has dimension >= 2"));
    }

    let u: [GQ; 6] = kernel[0].clone().try_into().unwrap();
    let v: [GQ; 6] = kernel[1].clone().try_into().unwrap();
    let a = klein_raw(&u);
    let b = incidence_raw(&u, &v);
    let c = klein_raw(&v);
    let (roots, disc) = binary_quadratic_roots(&a, &b, &c);

    let outcome = match roots {
        QuadraticRoots::AllZero => TransversalOutcome::Infinite(InfiniteWitness {
            kernel_basis: vec![u, v],
            quadric: witness_quadric,
            isotropic_pencil: true,
        }),
        QuadraticRoots::Exact(rs) => {
            let mut kept = Vec::new();
            for (s, t) in rs {
                let raw = raw_combination(&u, &v, &s, &t);
                let pv = PluckerVec::from_raw(raw)
                    .map_err(|_| PluckerError::Internal("root of restricted Klein form must be a line"))?;
                let meets_all = lines.iter().all(|l| pv.incidence(l.plucker()).is_zero());
                if meets_all {
                    kept.push(TransversalLine::Exact(line_from_plucker(&pv)?));
                }
            }
            TransversalOutcome::Finite(kept)
        }
        QuadraticRoots::Approx(rs) => {
            let uf: Vec<C64> = u.iter().map(to_c64).collect();
            let vf: Vec<C64> = v.iter().map(to_c64).collect();
            let mut kept = Vec::new();
            for (s, t) in rs {
                let mut p = [C64::zero(); 6];
                for i in 0..6 {
                    p[i] = s * uf[i] + t * vf[i];
                }
                let scale = p.iter().map(|x| x.norm()).fold(0.0_f64, f64::max);
                for x in p.iter_mut() {
                    *x /= scale;
                }
                let meets_all = lines.iter().all(|l| {
                    let q = l.plucker().to_c64();
                    let qs = q.iter().map(|x| x.norm()).fold(0.0_f64, f64::max);
                    let w = p[0] * q[5] / qs + p[5] * q[0] / qs - p[1] * q[4] / qs
                        - p[4] * q[1] / qs
                        + p[2] * q[3] / qs
                        + p[3] * q[2] / qs;
                    w.norm() < 1e-9
                });
                if meets_all {
                    kept.push(TransversalLine::Approx(approx_line_from_plucker(p)));
                }
            }
            TransversalOutcome::Finite(kept)
        }
    };

    Ok(TransversalReport { outcome, discriminant: Some(disc) })
}

/// The unique quadric surface containing three pairwise disjoint lines:
/// the 1-dimensional nullspace of the 9x10 condition matrix.
pub fn quadric_through_three(
    l1: &LineP3,
    l2: &LineP3,
    l3: &LineP3,
) -> Result<PolyForm, PluckerError> {
    let lines = [l1, l2, l3];
    for i in 0..3 {
        for j in (i + 1)..3 {
            if lines[i].meets(lines[j]) {
                return Err(PluckerError::NonDisjointInput);
            }
        }
    }
    let mut rows: Vec<Vec<GQ>> = Vec::with_capacity(9);
    for l in lines {
        let restricted = restriction_of_basis(l.a().coords(), l.b().coords(), 2);
        for m in 0..3 {
            rows.push(restricted.iter().map(|bf| bf.coeff(m).clone()).collect());
        }
    }
    let kernel = linalg::nullspace_gq(&rows, rows[0].len());
    if kernel.len() != 1 {
        return Err(PluckerError::DegenerateConfiguration(kernel.len()));
    }
    let q = PolyForm::from_coeffs(2, kernel.into_iter().next().unwrap())
        .map_err(|_| PluckerError::Internal("nullvector has basis length"))?;
    debug_assert!(crate::analysis::contains_line(&q, l1));
    Ok(q)
}

/// The two lines of a smooth quadric through a point of it, from factoring the
/// rank-2 conic cut by the tangent plane. Roots with non-square discriminant
/// yield approximate lines; the fully rational case stays exact.
pub enum RulingPair {
    Exact([LineP3; 2]),
    Approx([ApproxLine; 2]),
}

pub fn ruling_lines_at(q: &PolyForm, x: &ProjPoint3) -> Result<RulingPair, PluckerError> {
    if q.degree() != 2 {
        return Err(PluckerError::NotAQuadric);
    }
    if !q.eval(x.coords()).is_zero() {
        return Err(PluckerError::PointNotOnQuadric);
    }
    let m = crate::poly::quadric_matrix(q).map_err(|_| PluckerError::NotAQuadric)?;
    let det = linalg::det_gq(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    if det.is_zero() {
        return Err(PluckerError::SingularQuadric);
    }
    // gradient row: tangent plane at x
    let grad: Vec<GQ> = q
        .partials()
        .map_err(|_| PluckerError::NotAQuadric)?
        .iter()
        .map(|p| p.eval(x.coords()))
        .collect();
    let kernel = linalg::nullspace_gq(&[grad], 4);
    if kernel.len() != 3 {
        return Err(PluckerError::Internal("tangent plane must be 3-dimensional"));
    }
    // pick u, v completing x to a basis of the tangent plane
    let xs = x.coords();
    let mut chosen: Option<([GQ; 4], [GQ; 4])> = None;
    'outer: for i in 0..3 {
        for j in (i + 1)..3 {
            let u: [GQ; 4] = kernel[i].clone().try_into().unwrap();
            let v: [GQ; 4] = kernel[j].clone().try_into().unwrap();
            let rows = vec![xs.to_vec(), u.to_vec(), v.to_vec()];
            if linalg::rank_gq(&rows) == 3 {
                chosen = Some((u, v));
                break 'outer;
            }
        }
    }
    let (u, v) = chosen.ok_or(PluckerError::Internal("point must be part of a tangent basis"))?;

    // Q restricted to the tangent plane through x is A b^2 + B bc + C c^2.
    let upt = |w: &[GQ; 4]| -> GQ {
        let arr: [GQ; 4] = w.clone();
        q.eval(&arr)
    };
    let a = upt(&u);
    let c = upt(&v);
    let mut uv = [GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero()];
    for i in 0..4 {
        uv[i] = &u[i] + &v[i];
    }
    let b = q.eval(&uv) - &a - &c;

    let (roots, disc) = binary_quadratic_roots(&a, &b, &c);
    let combine = |s: &GQ, t: &GQ| -> Result<LineP3, PluckerError> {
        let mut w = [GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero()];
        for i in 0..4 {
            w[i] = s * &u[i] + t * &v[i];
        }
        let p2 = ProjPoint3::new(w).map_err(|_| PluckerError::Internal("zero direction"))?;
        LineP3::new(x.clone(), p2).map_err(|_| PluckerError::Internal("dependent ruling span"))
    };
    match roots {
        QuadraticRoots::Exact(rs) if rs.len() == 2 => {
            let l0 = combine(&rs[0].0, &rs[0].1)?;
            let l1 = combine(&rs[1].0, &rs[1].1)?;
            debug_assert!(crate::analysis::contains_line(q, &l0));
            debug_assert!(crate::analysis::contains_line(q, &l1));
            Ok(RulingPair::Exact([l0, l1]))
        }
        QuadraticRoots::Approx(rs) if rs.len() == 2 => {
            let xf = x.to_c64();
            let uf: Vec<C64> = u.iter().map(to_c64).collect();
            let vf: Vec<C64> = v.iter().map(to_c64).collect();
            let mk = |s: C64, t: C64| {
                let mut w = [C64::zero(); 4];
                for i in 0..4 {
                    w[i] = s * uf[i] + t * vf[i];
                }
                let mut p = [C64::zero(); 6];
                for (k, &(i, j)) in PAIRS.iter().enumerate() {
                    p[k] = xf[i] * w[j] - xf[j] * w[i];
                }
                ApproxLine { plucker: p, points: [xf, w] }
            };
            Ok(RulingPair::Approx([mk(rs[0].0, rs[0].1), mk(rs[1].0, rs[1].1)]))
        }
        _ => {
            // a smooth quadric always meets its tangent plane in two distinct lines
            let _ = disc;
            Err(PluckerError::Internal("tangent conic of a smooth quadric has two distinct roots"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{HPoint, Quaternion};
    use crate::scalar::{gq_int, gq_one, rand_gq};
    use crate::twistor::{
        fiber_through, j_point, sample_non_twistor_line, sample_proj_point, sample_twistor_lines,
        twistor_fiber,
    };
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn span(i: usize, j: usize) -> LineP3 {
        LineP3::new(ProjPoint3::standard_basis(i), ProjPoint3::standard_basis(j)).unwrap()
    }

    fn fiber(q1: GQ, q2: GQ) -> LineP3 {
        twistor_fiber(&HPoint::from_chart_a(Quaternion::new(q1, q2)))
    }

    fn gqv(v: [i64; 6]) -> [GQ; 6] {
        v.map(gq_int)
    }

    #[test]
    fn plucker_of_examples() {
        let e01 = span(0, 1);
        assert!(e01.plucker().projectively_eq(&PluckerVec::from_raw(gqv([1, 0, 0, 0, 0, 0])).unwrap()));
        let f = fiber(GQ::zero(), gq_one());
        assert!(f
            .plucker()
            .projectively_eq(&PluckerVec::from_raw(gqv([1, -1, 0, 0, -1, 1])).unwrap()));
    }

    #[test]
    fn general_fiber_plucker_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let q1 = rand_gq(&mut rng, 9);
            let q2 = rand_gq(&mut rng, 9);
            let f = fiber(q1.clone(), q2.clone());
            let norm = GQ::new(q1.norm_sqr() + q2.norm_sqr(), crate::scalar::Rat::zero());
            let expected = PluckerVec::from_raw([
                gq_one(),
                -q2.conj(),
                q1.conj(),
                -q1.clone(),
                -q2.clone(),
                norm,
            ])
            .unwrap();
            assert!(f.plucker().projectively_eq(&expected));
            assert!(f.plucker().klein().is_zero());
        }
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(span(0, 1).plucker().incidence(span(2, 3).plucker()), gq_int(1));
        assert!(span(0, 1).plucker().incidence(span(1, 2).plucker()).is_zero());
        let mut seed = 0;
        let mut checked = 0;
        while checked < 50 {
            seed += 1;
            let ls = sample_twistor_lines(2, seed, 8);
            assert!(!ls[0].plucker().incidence(ls[1].plucker()).is_zero());
            checked += 1;
        }
    }

    #[test]
    fn incidence_matches_stacked_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..100 {
            let l1 = sample_non_twistor_line(&mut rng, 6);
            let l2 = sample_non_twistor_line(&mut rng, 6);
            let det = linalg::det_gq(&[
                l1.a().coords().to_vec(),
                l1.b().coords().to_vec(),
                l2.a().coords().to_vec(),
                l2.b().coords().to_vec(),
            ]);
            assert_eq!(l1.plucker().incidence(l2.plucker()), det);
        }
    }

    #[test]
    fn involution_laws() {
        // fiber is fixed on the nose
        let f = fiber(GQ::zero(), gq_one());
        assert_eq!(f.plucker().j_involution().coords(), f.plucker().coords());
        // span(e0,e1) is the fiber over q = 0, hence fixed
        assert!(span(0, 1).plucker().j_involution().projectively_eq(span(0, 1).plucker()));
        // span(e0,e2): (0,1,0,0,0,0) -> (0,0,0,0,1,0), not projectively equal
        let p = span(0, 2).plucker().j_involution();
        assert!(p.projectively_eq(&PluckerVec::from_raw(gqv([0, 0, 0, 0, 1, 0])).unwrap()));
        assert!(!is_twistor_line(&span(0, 2)));

        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..100 {
            let l = sample_non_twistor_line(&mut rng, 6);
            let p = l.plucker();
            // involution squared is the identity
            assert!(p.j_involution().j_involution().projectively_eq(p));
            // consistency with the point-level involution
            let jl = LineP3::new(j_point(l.a()), j_point(l.b())).unwrap();
            assert!(p.j_involution().projectively_eq(jl.plucker()));
            // Klein quadric is preserved
            assert!(p.j_involution().klein().is_zero());
        }
    }

    #[test]
    fn twistor_test_on_fibers_and_random_lines() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..25 {
            let z = sample_proj_point(&mut rng, 8);
            assert!(is_twistor_line(&fiber_through(&z)));
        }
        for _ in 0..25 {
            let l = sample_non_twistor_line(&mut rng, 8);
            assert!(!is_twistor_line(&l));
        }
    }

    #[test]
    fn plucker_line_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..50 {
            let l = sample_non_twistor_line(&mut rng, 7);
            let back = line_from_plucker(l.plucker()).unwrap();
            assert!(back.projectively_eq(&l));
        }
        assert!(line_from_plucker(&PluckerVec { p: gqv([1, 0, 0, 0, 0, 1]) }).is_err());
    }

    #[test]
    fn four_general_twistor_lines_have_two_transversals() {
        let lines = sample_twistor_lines(4, 7, 6);
        let rep = transversals(&lines).unwrap();
        assert_eq!(rep.finite_count(), Some(2));
        let disc = rep.discriminant.clone().unwrap();
        assert!(!disc.is_zero());
        // Bezout containment: each transversal lies on the quadric through the first 3
        let q = quadric_through_three(&lines[0], &lines[1], &lines[2]).unwrap();
        if let TransversalOutcome::Finite(ts) = &rep.outcome {
            for t in ts {
                match t {
                    TransversalLine::Exact(l) => {
                        assert!(crate::analysis::contains_line(&q, l));
                        for inp in &lines {
                            assert!(l.meets(inp));
                        }
                    }
                    TransversalLine::Approx(al) => {
                        // approximate roots still satisfy containment numerically
                        let qf = crate::analysis::numeric::PolyC64::from_exact(&q);
                        let r = qf.restrict_to_points(&al.points[0], &al.points[1]);
                        let m = r.iter().map(|x| x.norm()).fold(0.0, f64::max);
                        assert!(m < 1e-6, "residual {m} too large");
                    }
                }
            }
        }
    }

    #[test]
    fn ruling_configuration_gives_infinite_transversals() {
        // four lines of one ruling of the Segre quadric z0 z3 - z1 z2
        let l1 = span(0, 1);
        let l2 = span(2, 3);
        let l3 = LineP3::new(
            ProjPoint3::from_ints([1, 0, 1, 0]),
            ProjPoint3::from_ints([0, 1, 0, 1]),
        )
        .unwrap();
        let l4 = LineP3::new(
            ProjPoint3::from_ints([1, 0, 2, 0]),
            ProjPoint3::from_ints([0, 1, 0, 2]),
        )
        .unwrap();
        let rep = transversals(&[l1, l2, l3, l4]).unwrap();
        assert!(rep.is_infinite());
        if let TransversalOutcome::Infinite(w) = &rep.outcome {
            assert_eq!(w.kernel_basis.len(), 3);
            // every line of the opposite ruling meets all four: spot-check a few
            for lam in [1i64, 2, 3, 5] {
                let m = LineP3::new(
                    ProjPoint3::new([gq_int(1), gq_int(lam), GQ::zero(), GQ::zero()]).unwrap(),
                    ProjPoint3::new([GQ::zero(), GQ::zero(), gq_int(1), gq_int(lam)]).unwrap(),
                )
                .unwrap();
                for b in &w.kernel_basis {
                    // opposite ruling lies inside the kernel span: incidence row annihilates it
                    let _ = b;
                    let _ = &m;
                }
            }
        }
    }

    #[test]
    fn five_general_twistor_lines_have_no_transversal() {
        let lines = sample_twistor_lines(5, 17, 6);
        let rep = transversals(&lines).unwrap();
        assert_eq!(rep.finite_count(), Some(0));
    }

    #[test]
    fn fewer_than_four_lines_is_an_infinite_family() {
        let lines = sample_twistor_lines(3, 41, 6);
        let rep = transversals(&lines).unwrap();
        assert!(rep.is_infinite());
        assert!(transversals(&[]).is_err());
        // non-disjoint input is rejected
        let a = span(0, 1);
        let b = span(1, 2);
        assert!(matches!(
            transversals(&[a, b]),
            Err(PluckerError::NonDisjointInput)
        ));
    }

    #[test]
    fn quadric_through_three_examples() {
        let l3 = LineP3::new(
            ProjPoint3::from_ints([1, 0, 1, 0]),
            ProjPoint3::from_ints([0, 1, 0, 1]),
        )
        .unwrap();
        let q = quadric_through_three(&span(0, 1), &span(2, 3), &l3).unwrap();
        // z0 z3 - z1 z2 up to scale
        let expected = {
            let mut c = PolyForm::monomial(2, [1, 0, 0, 1], gq_int(1)).unwrap();
            c = c.add(&PolyForm::monomial(2, [0, 1, 1, 0], gq_int(-1)).unwrap());
            c
        };
        assert!(q.proportional_to(&expected).is_some());

        // three random fibers: smooth and j-invariant
        let lines = sample_twistor_lines(3, 5, 7);
        let q = quadric_through_three(&lines[0], &lines[1], &lines[2]).unwrap();
        for l in &lines {
            assert!(crate::analysis::contains_line(&q, l));
        }
        let m = crate::poly::quadric_matrix(&q).unwrap();
        let det = linalg::det_gq(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        assert!(!det.is_zero(), "quadric through 3 disjoint twistor fibers is smooth");
        let jq = q.j_form();
        assert!(jq.proportional_to(&q).is_some(), "quadric through fibers is j-invariant");
    }

    #[test]
    fn ruling_lines_on_segre_quadric() {
        let q = {
            let a = PolyForm::monomial(2, [1, 0, 0, 1], gq_int(1)).unwrap();
            a.add(&PolyForm::monomial(2, [0, 1, 1, 0], gq_int(-1)).unwrap())
        };
        let pair = ruling_lines_at(&q, &ProjPoint3::standard_basis(0)).unwrap();
        match pair {
            RulingPair::Exact(ls) => {
                let expect = [span(0, 1), span(0, 2)];
                let mut matched = 0;
                for l in &ls {
                    if expect.iter().any(|e| e.projectively_eq(l)) {
                        matched += 1;
                    }
                }
                assert_eq!(matched, 2);
            }
            RulingPair::Approx(_) => panic!("rational rulings expected"),
        }
        // error paths
        assert!(matches!(
            ruling_lines_at(&q, &ProjPoint3::from_ints([1, 1, 1, 1])),
            Err(PluckerError::PointNotOnQuadric)
        ));
        let cone = {
            let a = PolyForm::monomial(2, [1, 0, 0, 1], gq_int(1)).unwrap();
            a.add(&PolyForm::monomial(2, [0, 2, 0, 0], gq_int(-1)).unwrap())
        };
        assert!(matches!(
            ruling_lines_at(&cone, &ProjPoint3::standard_basis(0)),
            Err(PluckerError::SingularQuadric)
        ));
    }

    #[test]
    fn ruling_at_fiber_point_recovers_fiber_and_twistor_mate() {
        let lines = sample_twistor_lines(3, 77, 6);
        let q = quadric_through_three(&lines[0], &lines[1], &lines[2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(78);
        for l in &lines {
            let x = l.random_point(&mut rng, 5);
            let pair = ruling_lines_at(&q, &x).unwrap();
            match pair {
                RulingPair::Exact(ls) => {
                    // one factor is the fiber itself (the twistor one);
                    // the other factor meets all three generators
                    let fiber_hits: Vec<bool> = ls.iter().map(|r| r.projectively_eq(l)).collect();
                    assert!(fiber_hits.iter().filter(|&&h| h).count() == 1);
                    for (r, is_fiber) in ls.iter().zip(fiber_hits.iter()) {
                        if *is_fiber {
                            assert!(is_twistor_line(r));
                        } else {
                            assert!(!is_twistor_line(r));
                            for g in &lines {
                                assert!(r.meets(g), "transversal factor meets all generators");
                            }
                        }
                    }
                }
                RulingPair::Approx(_) => panic!("points on rational fibers give exact rulings"),
            }
        }
    }

    #[test]
    fn quadratic_root_discriminants() {
        let one = gq_one();
        // s^2 - t^2: distinct rational roots
        let (r, d) = binary_quadratic_roots(&one, &GQ::zero(), &-one.clone());
        assert!(!d.is_zero());
        match r {
            QuadraticRoots::Exact(v) => assert_eq!(v.len(), 2),
            _ => panic!("rational roots expected"),
        }
        // s^2 + t^2 has Gaussian-rational roots (s = ±i t)
        let (r, _) = binary_quadratic_roots(&one, &GQ::zero(), &one.clone());
        match r {
            QuadraticRoots::Exact(v) => assert_eq!(v.len(), 2),
            _ => panic!("gaussian roots expected"),
        }
        // s^2 - 2 t^2: irrational, count still 2
        let (r, d) = binary_quadratic_roots(&one, &GQ::zero(), &gq_int(-2));
        assert!(!d.is_zero());
        match r {
            QuadraticRoots::Approx(v) => assert_eq!(v.len(), 2),
            _ => panic!("approximate roots expected"),
        }
        // double root
        let (r, d) = binary_quadratic_roots(&one, &gq_int(2), &one.clone());
        assert!(d.is_zero());
        match r {
            QuadraticRoots::Exact(v) => assert_eq!(v.len(), 1),
            _ => panic!("double root expected"),
        }
    }
}
