//! Irreducibility certificates from plane slices. A smooth plane section of
//! degree d is irreducible (Bezout: two components of a plane curve meet, and
//! a meeting point is singular), and a nonzero smooth slice rules out both
//! multiple and decomposable surface factors, so certifying one smooth slice
//! certifies the surface integral. Smoothness of the slice is certified
//! exactly: the three curve partials get pairwise u-resultants by evaluation
//! and interpolation, and a constant gcd of the two resultants means the
//! partials have no common projective zero.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg;
use crate::poly::{binary_gcd, BinaryForm, PolyForm};
use crate::scalar::{rand_rat, rat_int, GQ};
use crate::twistor::{sample_proj_point, LineP3};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Certified,
    Inconclusive(String),
}

/// Dense ternary form, graded-lex in (s, t, u).
#[derive(Clone, Debug)]
struct TernaryForm {
    d: usize,
    c: Vec<GQ>,
}

fn exps3(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=(d - a)).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

impl TernaryForm {
    fn zero(d: usize) -> Self {
        TernaryForm { d, c: vec![GQ::zero(); (d + 1) * (d + 2) / 2] }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    fn index_map(d: usize) -> std::collections::HashMap<[usize; 3], usize> {
        exps3(d).into_iter().enumerate().map(|(i, e)| (e, i)).collect()
    }

    fn mul(&self, other: &TernaryForm) -> TernaryForm {
        let d = self.d + other.d;
        let map = TernaryForm::index_map(d);
        let ea = exps3(self.d);
        let eb = exps3(other.d);
        let mut out = TernaryForm::zero(d);
        for (i, ca) in self.c.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in other.c.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let e = [ea[i][0] + eb[j][0], ea[i][1] + eb[j][1], ea[i][2] + eb[j][2]];
                let k = map[&e];
                out.c[k] = &out.c[k] + &(ca * cb);
            }
        }
        out
    }

    /// Partial derivative in variable v (0 = s, 1 = t, 2 = u).
    fn partial(&self, v: usize) -> TernaryForm {
        if self.d == 0 {
            return TernaryForm::zero(0);
        }
        let map = TernaryForm::index_map(self.d - 1);
        let mut out = TernaryForm::zero(self.d - 1);
        for (i, e) in exps3(self.d).iter().enumerate() {
            if self.c[i].is_zero() || e[v] == 0 {
                continue;
            }
            let mut t = *e;
            t[v] -= 1;
            let k = map[&t];
            out.c[k] = &out.c[k] + &(&self.c[i] * &crate::scalar::gq_int(e[v] as i64));
        }
        out
    }

    /// View as a polynomial in u with binary (s,t) coefficients:
    /// result[k] has degree d - k.
    fn as_u_poly(&self) -> Vec<BinaryForm> {
        let mut out: Vec<BinaryForm> = (0..=self.d).map(|k| BinaryForm::zero(self.d - k)).collect();
        for (i, e) in exps3(self.d).iter().enumerate() {
            if self.c[i].is_zero() {
                continue;
            }
            let k = e[2];
            // binary coefficient of s^(e0) t^(e1): index e1 in a degree d-k form
            let mut coeffs = out[k].coeffs().to_vec();
            coeffs[e[1]] = &coeffs[e[1]] + &self.c[i];
            out[k] = BinaryForm::from_coeffs(self.d - k, coeffs).unwrap();
        }
        out
    }
}

/// f restricted to the plane through the three basis points.
fn restrict_to_plane(f: &PolyForm, basis: &[[GQ; 4]; 3]) -> TernaryForm {
    let d = f.degree();
    // tables[i][k] = (s A_i + t B_i + u C_i)^k
    let mut tables: [Vec<TernaryForm>; 4] = std::array::from_fn(|_| Vec::with_capacity(d + 1));
    for i in 0..4 {
        let mut lin = TernaryForm::zero(1);
        lin.c[0] = basis[0][i].clone();
        lin.c[1] = basis[1][i].clone();
        lin.c[2] = basis[2][i].clone();
        tables[i].push(TernaryForm { d: 0, c: vec![GQ::one()] });
        for k in 1..=d {
            let next = tables[i][k - 1].mul(&lin);
            tables[i].push(next);
        }
    }
    let mut acc = TernaryForm::zero(d);
    for (idx, e) in crate::poly::exponents(d).iter().enumerate() {
        let cf = &f.coeffs()[idx];
        if cf.is_zero() {
            continue;
        }
        let mut prod = TernaryForm { d: 0, c: vec![GQ::one()] };
        for i in 0..4 {
            if e[i] > 0 {
                prod = prod.mul(&tables[i][e[i] as usize]);
            }
        }
        for (k, v) in prod.c.iter().enumerate() {
            acc.c[k] = &acc.c[k] + &(cf * v);
        }
    }
    acc
}

/// Sylvester resultant of two univariate polynomials over GQ (ascending
/// coefficients, exact leading terms).
fn sylvester_resultant(p: &[GQ], q: &[GQ]) -> GQ {
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    if dp == 0 {
        // res(c, q) = c^dq
        let mut acc = GQ::one();
        for _ in 0..dq {
            acc = acc * &p[0];
        }
        return acc;
    }
    if dq == 0 {
        let mut acc = GQ::one();
        for _ in 0..dp {
            acc = acc * &q[0];
        }
        return acc;
    }
    let n = dp + dq;
    let mut m = vec![vec![GQ::zero(); n]; n];
    for r in 0..dq {
        for (k, c) in p.iter().enumerate() {
            m[r][r + dp - k] = c.clone();
        }
    }
    for r in 0..dp {
        for (k, c) in q.iter().enumerate() {
            m[dq + r][r + dq - k] = c.clone();
        }
    }
    linalg::det_gq(&m)
}

/// Lagrange interpolation through (x_i, y_i), returned as ascending coefficients.
fn interpolate(xs: &[GQ], ys: &[GQ]) -> Vec<GQ> {
    let n = xs.len();
    // Newton divided differences
    let mut table: Vec<GQ> = ys.to_vec();
    let mut coeffs: Vec<GQ> = vec![table[0].clone()];
    for level in 1..n {
        for i in 0..(n - level) {
            let num = &table[i + 1] - &table[i];
            let den = &xs[i + level] - &xs[i];
            table[i] = num / den;
        }
        table.truncate(n - level);
        coeffs.push(table[0].clone());
    }
    // expand Newton form to monomial coefficients
    let mut poly = vec![GQ::zero(); n];
    let mut basis = vec![GQ::one()];
    for (k, ck) in coeffs.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            poly[i] = &poly[i] + &(ck * b);
        }
        if k + 1 < n {
            // basis *= (x - xs[k])
            let mut next = vec![GQ::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] = &next[i + 1] + b;
                next[i] = &next[i] - &(b * &xs[k]);
            }
            basis = next;
        }
    }
    poly
}

/// Res_u of two ternary forms whose leading u-coefficients are nonzero
/// constants; a binary form of degree deg(p)·deg(q) in (s, t), computed by
/// specialization at rational t values and interpolation.
fn resultant_u(p: &TernaryForm, q: &TernaryForm) -> Option<BinaryForm> {
    let pu = p.as_u_poly();
    let qu = q.as_u_poly();
    let dp = p.d;
    let dq = q.d;
    let lead_ok = |u: &[BinaryForm], d: usize| -> bool {
        u[d].degree() == 0 && !u[d].is_zero()
    };
    if !lead_ok(&pu, dp) || !lead_ok(&qu, dq) {
        return None;
    }
    let n = dp * dq;
    // sample points t = 0, 1, -1, 2, -2, ...
    let mut xs: Vec<GQ> = Vec::with_capacity(n + 1);
    let mut k: i64 = 0;
    while xs.len() < n + 1 {
        xs.push(crate::scalar::gq(rat_int(k), crate::scalar::Rat::zero()));
        if k > 0 {
            k = -k;
        } else {
            k = -k + 1;
        }
    }
    let one = GQ::one();
    let ys: Vec<GQ> = xs
        .iter()
        .map(|tau| {
            let pv: Vec<GQ> = pu.iter().map(|bf| bf.eval(&one, tau)).collect();
            let qv: Vec<GQ> = qu.iter().map(|bf| bf.eval(&one, tau)).collect();
            sylvester_resultant(&pv, &qv)
        })
        .collect();
    if n == 0 {
        return BinaryForm::from_coeffs(0, vec![ys[0].clone()]).ok();
    }
    let coeffs = interpolate(&xs, &ys);
    // R(1, t) coefficients ascending in t = binary coefficients ascending in m
    BinaryForm::from_coeffs(n, coeffs).ok()
}

fn random_line(rng: &mut ChaCha8Rng) -> LineP3 {
    loop {
        let a = sample_proj_point(rng, 7);
        let b = sample_proj_point(rng, 7);
        if let Ok(l) = LineP3::new(a, b) {
            return l;
        }
    }
}

/// Exact squarefree screen along random lines: a surface with a multiple
/// component restricts to a non-squarefree binary form on every line.
fn squarefree_screen(f: &PolyForm, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mut witness = String::new();
    for _ in 0..3 {
        let l = random_line(rng);
        let b = f.restrict_to_line(&l);
        if b.is_zero() {
            witness = "restriction vanished on a sampled line".to_string();
            continue;
        }
        let g = binary_gcd(&[b.clone(), b.derivative_s(), b.derivative_t()])
            .expect("nonzero family");
        if g.is_constant() {
            return Ok(());
        }
        witness = format!(
            "restriction to a sampled line has a repeated factor of degree {}",
            g.degree()
        );
    }
    Err(witness)
}

/// Certify the surface integral by exhibiting a smooth plane slice; retries a
/// few random planes and reports Inconclusive with the failure mode otherwise.
pub fn irreducibility_slice_certificate(f: &PolyForm, seed: u64) -> Irreducibility {
    let d = f.degree();
    if f.is_zero() {
        return Irreducibility::Inconclusive("zero form".to_string());
    }
    if d == 0 {
        return Irreducibility::Inconclusive("constant form".to_string());
    }
    if d == 1 {
        return Irreducibility::Certified;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Err(w) = squarefree_screen(f, &mut rng) {
        return Irreducibility::Inconclusive(w);
    }

    let mut last = String::from("no plane attempted");
    for _ in 0..5 {
        // random plane with small-height rational basis
        let basis: [[GQ; 4]; 3] = loop {
            let pick = || -> [GQ; 4] {
                std::array::from_fn(|_| {
                    GQ::new(rand_rat(&mut rng, 7), rand_rat(&mut rng, 7))
                })
            };
            let cand = [pick(), pick(), pick()];
            let rows: Vec<Vec<GQ>> = cand.iter().map(|r| r.to_vec()).collect();
            if linalg::rank_gq(&rows) == 3 {
                break cand;
            }
        };
        let g = restrict_to_plane(f, &basis);
        if g.is_zero() {
            last = "slice plane lies on the surface".to_string();
            continue;
        }
        let gs = g.partial(0);
        let gt = g.partial(1);
        let gu = g.partial(2);
        let (Some(r1), Some(r2)) = (resultant_u(&gs, &gu), resultant_u(&gt, &gu)) else {
            last = "slice partials had degenerate leading coefficients".to_string();
            continue;
        };
        if r1.is_zero() || r2.is_zero() {
            last = "slice partials share a component".to_string();
            continue;
        }
        let g12 = binary_gcd(&[r1, r2]).expect("nonzero resultants");
        if g12.is_constant() {
            return Irreducibility::Certified;
        }
        last = format!(
            "slice resultants share a factor of degree {}; slice may be singular",
            g12.degree()
        );
    }
    Irreducibility::Inconclusive(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gq_int;

    fn monomial(d: usize, e: [u32; 4], c: i64) -> PolyForm {
        PolyForm::monomial(d, e, gq_int(c)).unwrap()
    }

    #[test]
    fn smooth_quadric_is_certified() {
        let q = monomial(2, [1, 0, 0, 1], 1).add(&monomial(2, [0, 1, 1, 0], -1));
        assert_eq!(irreducibility_slice_certificate(&q, 1), Irreducibility::Certified);
    }

    #[test]
    fn plane_is_certified_and_products_are_not() {
        let plane = monomial(1, [1, 0, 0, 0], 1);
        assert_eq!(irreducibility_slice_certificate(&plane, 2), Irreducibility::Certified);
        // z0 z1: every slice is a pair of lines
        let red = monomial(2, [1, 1, 0, 0], 1);
        assert!(matches!(
            irreducibility_slice_certificate(&red, 3),
            Irreducibility::Inconclusive(_)
        ));
        // multiple component z0^2 is caught by the squarefree screen
        let dbl = monomial(2, [2, 0, 0, 0], 1);
        assert!(matches!(
            irreducibility_slice_certificate(&dbl, 4),
            Irreducibility::Inconclusive(_)
        ));
    }

    #[test]
    fn fermat_cubic_is_certified() {
        let mut f = PolyForm::zero(3);
        for i in 0..4 {
            let mut e = [0u32; 4];
            e[i] = 3;
            f = f.add(&monomial(3, e, 1));
        }
        assert_eq!(irreducibility_slice_certificate(&f, 5), Irreducibility::Certified);
    }

    #[test]
    fn resultant_detects_common_roots() {
        // p = (u - s)(u - t), q = (u - s)(u + t) share the factor u - s:
        // Res_u must be divisible by (s - t)-free... compute directly.
        let mk = |roots: [(i64, i64); 2]| -> TernaryForm {
            // product of (u - a s - b t)
            let lin = |a: i64, b: i64| {
                let mut l = TernaryForm::zero(1);
                l.c[0] = gq_int(-a);
                l.c[1] = gq_int(-b);
                l.c[2] = crate::scalar::gq_one();
                l
            };
            lin(roots[0].0, roots[0].1).mul(&lin(roots[1].0, roots[1].1))
        };
        let p = mk([(1, 0), (0, 1)]);
        let q = mk([(1, 0), (0, -1)]);
        let r = resultant_u(&p, &q).unwrap();
        // common root u = s: resultant vanishes identically in s? No: it
        // vanishes for all (s,t) iff a common FACTOR exists; (u-s) is one.
        assert!(r.is_zero());
        let q2 = mk([(2, 0), (0, -1)]);
        let r2 = resultant_u(&p, &q2).unwrap();
        assert!(!r2.is_zero());
    }

    #[test]
    fn interpolation_roundtrip() {
        let xs: Vec<GQ> = (0..4).map(gq_int).collect();
        // y = 2x^3 - x + 5
        let f = |x: &GQ| {
            let two = gq_int(2);
            &(&two * &(x * &(x * x))) - x + &gq_int(5)
        };
        let ys: Vec<GQ> = xs.iter().map(f).collect();
        let c = interpolate(&xs, &ys);
        assert_eq!(c[0], gq_int(5));
        assert_eq!(c[1], gq_int(-1));
        assert_eq!(c[2], gq_int(0));
        assert_eq!(c[3], gq_int(2));
    }
}
