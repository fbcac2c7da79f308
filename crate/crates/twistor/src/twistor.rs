//! The twistor fibration CP^3 -> HP^1: projective points and lines, the
//! fibration map, the fixed-point-free anti-holomorphic involution j, twistor
//! fibers, and bounded-height random sampling of twistor lines.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::plucker::PluckerVec;
use crate::quaternion::{HPoint, Quaternion};
use crate::scalar::{gq_int, rand_gq, rand_rat, to_c64, C64, GQ};

#[derive(Debug, Error)]
pub enum TwistorError {
    #[error("projective point must be a nonzero 4-vector")]
    ZeroVector,
    #[error("spanning points of a line must be linearly independent")]
    DependentPoints,
}

/// Point of CP^3, a nonzero 4-vector up to complex scale.
#[derive(Clone, Debug)]
pub struct ProjPoint3 {
    z: [GQ; 4],
}

impl ProjPoint3 {
    pub fn new(z: [GQ; 4]) -> Result<Self, TwistorError> {
        if z.iter().all(|c| c.is_zero()) {
            return Err(TwistorError::ZeroVector);
        }
        Ok(ProjPoint3 { z })
    }

    pub fn from_ints(z: [i64; 4]) -> Self {
        ProjPoint3::new([gq_int(z[0]), gq_int(z[1]), gq_int(z[2]), gq_int(z[3])])
            .expect("nonzero integer point")
    }

    pub fn standard_basis(i: usize) -> Self {
        let mut z = [GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero()];
        z[i] = gq_int(1);
        ProjPoint3 { z }
    }

    pub fn coords(&self) -> &[GQ; 4] {
        &self.z
    }

    pub fn to_c64(&self) -> [C64; 4] {
        [to_c64(&self.z[0]), to_c64(&self.z[1]), to_c64(&self.z[2]), to_c64(&self.z[3])]
    }

    /// Equality up to a nonzero complex factor: all 2x2 minors of [z; w] vanish.
    pub fn projectively_eq(&self, other: &ProjPoint3) -> bool {
        for i in 0..4 {
            for j in (i + 1)..4 {
                if &self.z[i] * &other.z[j] != &self.z[j] * &other.z[i] {
                    return false;
                }
            }
        }
        true
    }

    pub fn scale(&self, c: &GQ) -> ProjPoint3 {
        ProjPoint3 {
            z: [c * &self.z[0], c * &self.z[1], c * &self.z[2], c * &self.z[3]],
        }
    }
}

/// Line of CP^3 as two independent spanning points, with cached Plucker vector.
#[derive(Clone, Debug)]
pub struct LineP3 {
    a: ProjPoint3,
    b: ProjPoint3,
    plucker: PluckerVec,
}

impl LineP3 {
    pub fn new(a: ProjPoint3, b: ProjPoint3) -> Result<Self, TwistorError> {
        let plucker = PluckerVec::from_spanning(a.coords(), b.coords())
            .map_err(|_| TwistorError::DependentPoints)?;
        Ok(LineP3 { a, b, plucker })
    }

    pub fn a(&self) -> &ProjPoint3 {
        &self.a
    }

    pub fn b(&self) -> &ProjPoint3 {
        &self.b
    }

    pub fn plucker(&self) -> &PluckerVec {
        &self.plucker
    }

    pub fn projectively_eq(&self, other: &LineP3) -> bool {
        self.plucker.projectively_eq(other.plucker())
    }

    /// s·a + t·b for given scalars (not both zero).
    pub fn point_combo(&self, s: &GQ, t: &GQ) -> Result<ProjPoint3, TwistorError> {
        let mut z = [GQ::zero(), GQ::zero(), GQ::zero(), GQ::zero()];
        for i in 0..4 {
            z[i] = s * &self.a.z[i] + t * &self.b.z[i];
        }
        ProjPoint3::new(z)
    }

    pub fn random_point<R: Rng>(&self, rng: &mut R, height: u32) -> ProjPoint3 {
        loop {
            let s = GQ::new(rand_rat(rng, height), rand_rat(rng, height));
            let t = GQ::new(rand_rat(rng, height), rand_rat(rng, height));
            if s.is_zero() && t.is_zero() {
                continue;
            }
            return self.point_combo(&s, &t).expect("independent spanning points");
        }
    }

    /// Exact membership: rank of [a; b; p] stays 2, i.e. every 3x3 minor vanishes.
    pub fn contains_point(&self, p: &ProjPoint3) -> bool {
        let m = |i: usize, j: usize| self.plucker.minor(i, j);
        let z = p.coords();
        // Laplace expansion of det over columns {i,j,k} along the row of p.
        let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
        triples.iter().all(|&(i, j, k)| {
            (&z[i] * &m(j, k) - &z[j] * &m(i, k) + &z[k] * &m(i, j)).is_zero()
        })
    }

    pub fn meets(&self, other: &LineP3) -> bool {
        self.plucker.incidence(other.plucker()).is_zero()
    }
}

/// The fibration pi[z0,z1,z2,z3] = [z0 + z1 j, z2 + z3 j].
/// Complex rescaling of z acts by left multiplication on HP^1, so the value
/// is well defined on CP^3.
pub fn pi_project(z: &ProjPoint3) -> HPoint {
    let c = z.coords();
    let h1 = Quaternion::new(c[0].clone(), c[1].clone());
    let h2 = Quaternion::new(c[2].clone(), c[3].clone());
    HPoint::new(h1, h2).expect("nonzero projective point")
}

/// The involution j[z0,z1,z2,z3] = [-conj z1, conj z0, -conj z3, conj z2].
pub fn j_point(z: &ProjPoint3) -> ProjPoint3 {
    let c = z.coords();
    ProjPoint3::new([
        -c[1].conj(),
        c[0].conj(),
        -c[3].conj(),
        c[2].conj(),
    ])
    .expect("j preserves nonzero vectors")
}

/// The fiber of pi over h. In the chart h1 ≠ 0 with q = q1 + q2 j the fiber is
/// cut out by z2 = z0 q1 - z1 conj(q2), z3 = z0 q2 + z1 conj(q1), spanned by
/// (1,0,q1,q2) and (0,1,-conj q2, conj q1). Over [0,1] the fiber is span(e2,e3).
pub fn twistor_fiber(h: &HPoint) -> LineP3 {
    match h.chart_a() {
        Some(q) => {
            let (q1, q2) = (q.a, q.b);
            let a = ProjPoint3::new([gq_int(1), GQ::zero(), q1.clone(), q2.clone()])
                .expect("nonzero");
            let b = ProjPoint3::new([GQ::zero(), gq_int(1), -q2.conj(), q1.conj()])
                .expect("nonzero");
            LineP3::new(a, b).expect("fiber spanning points are independent")
        }
        None => LineP3::new(ProjPoint3::standard_basis(2), ProjPoint3::standard_basis(3))
            .expect("e2, e3 independent"),
    }
}

/// The fiber through a point: span(z, j(z)), which equals twistor_fiber(pi(z)).
pub fn fiber_through(z: &ProjPoint3) -> LineP3 {
    LineP3::new(z.clone(), j_point(z)).expect("j is fixed-point-free")
}

pub fn sample_proj_point<R: Rng>(rng: &mut R, height: u32) -> ProjPoint3 {
    loop {
        let z = [
            rand_gq(rng, height),
            rand_gq(rng, height),
            rand_gq(rng, height),
            rand_gq(rng, height),
        ];
        if let Ok(p) = ProjPoint3::new(z) {
            return p;
        }
    }
}

/// k fibers over pairwise-distinct random chart points of bounded height.
/// Distinct fibers of the fibration never meet, so the lines come out pairwise
/// disjoint; coincident draws are resampled.
pub fn sample_twistor_lines(k: usize, seed: u64, height: u32) -> Vec<LineP3> {
    assert!(k >= 1, "need at least one line");
    assert!(height >= 1, "height must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases: Vec<(GQ, GQ)> = Vec::with_capacity(k);
    while bases.len() < k {
        let q1 = rand_gq(&mut rng, height);
        let q2 = rand_gq(&mut rng, height);
        if bases.iter().any(|(a, b)| *a == q1 && *b == q2) {
            continue;
        }
        bases.push((q1, q2));
    }
    bases
        .into_iter()
        .map(|(q1, q2)| {
            twistor_fiber(&HPoint::from_chart_a(Quaternion::new(q1, q2)))
        })
        .collect()
}

/// A random line that is (almost surely) not a fiber; twistor draws are rejected.
pub fn sample_non_twistor_line<R: Rng>(rng: &mut R, height: u32) -> LineP3 {
    loop {
        let a = sample_proj_point(rng, height);
        let b = sample_proj_point(rng, height);
        if let Ok(l) = LineP3::new(a, b) {
            if !crate::plucker::is_twistor_line(&l) {
                return l;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plucker::is_twistor_line;
    use crate::scalar::rand_nonzero_gq;

    #[test]
    fn pi_on_basis_point() {
        // [1,0,0,0] -> [1, 0]
        let h = pi_project(&ProjPoint3::from_ints([1, 0, 0, 0]));
        let q = h.chart_a().unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn pi_chart_normal_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let q1 = rand_gq(&mut rng, 9);
            let q2 = rand_gq(&mut rng, 9);
            let z = ProjPoint3::new([gq_int(1), GQ::zero(), q1.clone(), q2.clone()]).unwrap();
            let h = pi_project(&z);
            let q = h.chart_a().unwrap();
            assert_eq!(q, Quaternion::new(q1, q2));
        }
    }

    #[test]
    fn pi_of_second_fiber_point_matches_chart_q_j() {
        // [0,1,-1,0] -> [j, -1] = [1, j] after left division by j
        let h = pi_project(&ProjPoint3::from_ints([0, 1, -1, 0]));
        let expect = HPoint::from_chart_a(Quaternion::j());
        assert!(h.projectively_eq(&expect));
    }

    #[test]
    fn pi_is_well_defined_under_rescaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..30 {
            let z = sample_proj_point(&mut rng, 9);
            let c = rand_nonzero_gq(&mut rng, 9);
            assert!(pi_project(&z).projectively_eq(&pi_project(&z.scale(&c))));
        }
    }

    #[test]
    fn fiber_examples() {
        // q1 = 0, q2 = 1: the line through [1,0,0,1] and [0,1,-1,0]
        let h = HPoint::from_chart_a(Quaternion::j());
        let f = twistor_fiber(&h);
        assert!(f.contains_point(&ProjPoint3::from_ints([1, 0, 0, 1])));
        assert!(f.contains_point(&ProjPoint3::from_ints([0, 1, -1, 0])));
        // q = 0: span(e0, e1)
        let f0 = twistor_fiber(&HPoint::from_chart_a(Quaternion::zero()));
        let e01 = LineP3::new(ProjPoint3::standard_basis(0), ProjPoint3::standard_basis(1)).unwrap();
        assert!(f0.projectively_eq(&e01));
        // over [0,1]: span(e2, e3)
        let finf = twistor_fiber(&HPoint::new(Quaternion::zero(), Quaternion::one()).unwrap());
        let e23 = LineP3::new(ProjPoint3::standard_basis(2), ProjPoint3::standard_basis(3)).unwrap();
        assert!(finf.projectively_eq(&e23));
    }

    #[test]
    fn fiber_points_project_to_base() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..25 {
            let q = Quaternion::new(rand_gq(&mut rng, 9), rand_gq(&mut rng, 9));
            let h = HPoint::from_chart_a(q);
            let f = twistor_fiber(&h);
            assert!(pi_project(f.a()).projectively_eq(&h));
            assert!(pi_project(f.b()).projectively_eq(&h));
            // j maps each spanning point into the line
            assert!(f.contains_point(&j_point(f.a())));
            assert!(f.contains_point(&j_point(f.b())));
        }
    }

    #[test]
    fn j_point_examples_and_laws() {
        let z = ProjPoint3::from_ints([1, 0, 0, 1]);
        assert!(j_point(&z).projectively_eq(&ProjPoint3::from_ints([0, 1, -1, 0])));
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let z = sample_proj_point(&mut rng, 9);
            let jj = j_point(&j_point(&z));
            assert!(jj.projectively_eq(&z));
            // fixed-point-free: [z; j(z)] has rank 2
            assert!(!j_point(&z).projectively_eq(&z));
        }
    }

    #[test]
    fn fiber_through_matches_fiber_of_projection() {
        let z = ProjPoint3::from_ints([1, 0, 0, 1]);
        let via_pi = twistor_fiber(&HPoint::from_chart_a(Quaternion::j()));
        assert!(fiber_through(&z).projectively_eq(&via_pi));
        let e0 = ProjPoint3::standard_basis(0);
        let e01 = LineP3::new(ProjPoint3::standard_basis(0), ProjPoint3::standard_basis(1)).unwrap();
        assert!(fiber_through(&e0).projectively_eq(&e01));
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..25 {
            let z = sample_proj_point(&mut rng, 9);
            assert!(pi_project(&z).projectively_eq(&pi_project(&j_point(&z))));
            assert!(fiber_through(&z).projectively_eq(&twistor_fiber(&pi_project(&z))));
        }
    }

    #[test]
    fn sampled_fibers_are_disjoint_twistor_lines() {
        let lines = sample_twistor_lines(3, 99, 10);
        assert_eq!(lines.len(), 3);
        for l in &lines {
            assert!(is_twistor_line(l));
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(!lines[i].meets(&lines[j]), "distinct fibers never meet");
            }
        }
    }
}
