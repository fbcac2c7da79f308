//! Dense homogeneous forms in four variables over the Gaussian rationals:
//! graded-lex monomial indexing, evaluation, partial derivatives, restriction
//! to lines, the coefficient-level involution j, and gcds of binary forms.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{GQ};
use crate::twistor::LineP3;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("coefficient vector has length {got}, expected {want}")]
    WrongLength { got: usize, want: usize },
    #[error("exponent {0:?} does not have the form's degree")]
    BadExponent([u32; 4]),
    #[error("degree-0 forms have no partial derivatives")]
    DegreeZero,
    #[error("gcd of an all-zero family is undefined")]
    AllZeroGcd,
    #[error("operation requires a quadric")]
    NotAQuadric,
}

/// Number of degree-d monomials in 4 variables: C(d+3, 3).
pub fn n_monomials(d: usize) -> usize {
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// Exponent vectors of degree d in graded-lex order, z0-major descending.
pub fn exponents(d: usize) -> Vec<[u32; 4]> {
    let mut out = Vec::with_capacity(n_monomials(d));
    for a0 in (0..=d).rev() {
        for a1 in (0..=(d - a0)).rev() {
            for a2 in (0..=(d - a0 - a1)).rev() {
                let a3 = d - a0 - a1 - a2;
                out.push([a0 as u32, a1 as u32, a2 as u32, a3 as u32]);
            }
        }
    }
    out
}

pub fn exponent_index_map(d: usize) -> HashMap<[u32; 4], usize> {
    exponents(d).into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}

/// Dense homogeneous form of fixed degree; coefficients in graded-lex order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm {
    d: usize,
    c: Vec<GQ>,
}

impl PolyForm {
    pub fn zero(d: usize) -> Self {
        PolyForm { d, c: vec![GQ::zero(); n_monomials(d)] }
    }

    pub fn from_coeffs(d: usize, c: Vec<GQ>) -> Result<Self, PolyError> {
        let want = n_monomials(d);
        if c.len() != want {
            return Err(PolyError::WrongLength { got: c.len(), want });
        }
        Ok(PolyForm { d, c })
    }

    pub fn monomial(d: usize, alpha: [u32; 4], coeff: GQ) -> Result<Self, PolyError> {
        if alpha.iter().map(|&a| a as usize).sum::<usize>() != d {
            return Err(PolyError::BadExponent(alpha));
        }
        let mut f = PolyForm::zero(d);
        let idx = exponents(d).iter().position(|e| *e == alpha).unwrap();
        f.c[idx] = coeff;
        Ok(f)
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[GQ] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn coeff_at(&self, alpha: [u32; 4]) -> Option<&GQ> {
        exponents(self.d).iter().position(|e| *e == alpha).map(|i| &self.c[i])
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.d, other.d);
        let c = self.c.iter().zip(other.c.iter()).map(|(a, b)| a + b).collect();
        PolyForm { d: self.d, c }
    }

    pub fn sub(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.d, other.d);
        let c = self.c.iter().zip(other.c.iter()).map(|(a, b)| a - b).collect();
        PolyForm { d: self.d, c }
    }

    pub fn scale(&self, s: &GQ) -> PolyForm {
        PolyForm { d: self.d, c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, other: &PolyForm) -> PolyForm {
        let d = self.d + other.d;
        let map = exponent_index_map(d);
        let ea = exponents(self.d);
        let eb = exponents(other.d);
        let mut c = vec![GQ::zero(); n_monomials(d)];
        for (i, ca) in self.c.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in other.c.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let e = [
                    ea[i][0] + eb[j][0],
                    ea[i][1] + eb[j][1],
                    ea[i][2] + eb[j][2],
                    ea[i][3] + eb[j][3],
                ];
                let k = map[&e];
                c[k] = &c[k] + &(ca * cb);
            }
        }
        PolyForm { d, c }
    }

    pub fn eval(&self, z: &[GQ; 4]) -> GQ {
        let mut pows: [Vec<GQ>; 4] = [vec![], vec![], vec![], vec![]];
        for i in 0..4 {
            let mut v = Vec::with_capacity(self.d + 1);
            v.push(GQ::one());
            for k in 1..=self.d {
                let prev = v[k - 1].clone();
                v.push(prev * &z[i]);
            }
            pows[i] = v;
        }
        let mut acc = GQ::zero();
        for (i, e) in exponents(self.d).iter().enumerate() {
            if self.c[i].is_zero() {
                continue;
            }
            let m = &pows[0][e[0] as usize]
                * &pows[1][e[1] as usize]
                * &pows[2][e[2] as usize]
                * &pows[3][e[3] as usize];
            acc = acc + &self.c[i] * &m;
        }
        acc
    }

    /// The four partial derivatives; Euler's relation sum z_i d_i f = d f holds.
    pub fn partials(&self) -> Result<[PolyForm; 4], PolyError> {
        if self.d == 0 {
            return Err(PolyError::DegreeZero);
        }
        let lower = exponent_index_map(self.d - 1);
        let mut out = [
            PolyForm::zero(self.d - 1),
            PolyForm::zero(self.d - 1),
            PolyForm::zero(self.d - 1),
            PolyForm::zero(self.d - 1),
        ];
        for (idx, e) in exponents(self.d).iter().enumerate() {
            if self.c[idx].is_zero() {
                continue;
            }
            for i in 0..4 {
                if e[i] == 0 {
                    continue;
                }
                let mut t = *e;
                t[i] -= 1;
                let k = lower[&t];
                let add = &self.c[idx] * &crate::scalar::gq_int(e[i] as i64);
                out[i].c[k] = &out[i].c[k] + &add;
            }
        }
        Ok(out)
    }

    /// Coefficient-level involution: the coefficient of z^(a0,a1,a2,a3) in j(f)
    /// is (-1)^(a0+a2) conj(c_(a1,a0,a3,a2)). Real-linear; j(j(f)) = (-1)^d f,
    /// and f(j(z)) = (-1)^d conj(j(f)(z)) for every z.
    pub fn j_form(&self) -> PolyForm {
        let map = exponent_index_map(self.d);
        let mut c = vec![GQ::zero(); self.c.len()];
        for (i, e) in exponents(self.d).iter().enumerate() {
            let swapped = [e[1], e[0], e[3], e[2]];
            let src = map[&swapped];
            let v = self.c[src].conj();
            c[i] = if (e[0] + e[2]) % 2 == 1 { -v } else { v };
        }
        PolyForm { d: self.d, c }
    }

    /// Coefficients of f(s·a + t·b) for the line spanned by a, b.
    pub fn restrict_to_points(&self, a: &[GQ; 4], b: &[GQ; 4]) -> BinaryForm {
        let tables = binary_power_tables(a, b, self.d);
        let mut acc = BinaryForm::zero(self.d);
        for (i, e) in exponents(self.d).iter().enumerate() {
            if self.c[i].is_zero() {
                continue;
            }
            let mut prod = tables[0][e[0] as usize].clone();
            for v in 1..4 {
                prod = prod.mul(&tables[v][e[v] as usize]);
            }
            acc = acc.add(&prod.scale(&self.c[i]));
        }
        acc
    }

    /// Restriction to a line; the zero binary form iff the line lies on {f = 0}.
    pub fn restrict_to_line(&self, l: &LineP3) -> BinaryForm {
        self.restrict_to_points(l.a().coords(), l.b().coords())
    }

    /// Rescale to a primitive Gaussian-integer coefficient vector (clear
    /// denominators, divide out the integer content). Projectively the same form.
    pub fn primitive_integer_scale(&self) -> PolyForm {
        use num_bigint::BigInt;
        use num_integer::Integer as _;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for x in &self.c {
            lcm = lcm.lcm(x.re.denom());
            lcm = lcm.lcm(x.im.denom());
        }
        let mut content = BigInt::zero();
        let ints: Vec<(BigInt, BigInt)> = self
            .c
            .iter()
            .map(|x| {
                let re = x.re.numer() * (&lcm / x.re.denom());
                let im = x.im.numer() * (&lcm / x.im.denom());
                content = content.gcd(&re).gcd(&im);
                (re, im)
            })
            .collect();
        if content.is_zero() {
            content = BigInt::one();
        }
        let c = ints
            .into_iter()
            .map(|(re, im)| {
                GQ::new(
                    crate::scalar::Rat::from_integer(re / &content),
                    crate::scalar::Rat::from_integer(im / &content),
                )
            })
            .collect();
        PolyForm { d: self.d, c }
    }

    /// Some(a) iff other = a·f with both forms nonzero.
    pub fn proportional_to(&self, other: &PolyForm) -> Option<GQ> {
        if self.d != other.d || self.is_zero() || other.is_zero() {
            return None;
        }
        let i0 = self.c.iter().position(|x| !x.is_zero())?;
        if other.c[i0].is_zero() {
            return None;
        }
        let a = &other.c[i0] / &self.c[i0];
        for (x, y) in self.c.iter().zip(other.c.iter()) {
            if &(x * &a) != y {
                return None;
            }
        }
        Some(a)
    }
}

/// Symmetric matrix M with z^T M z = f, for a quadric f.
pub fn quadric_matrix(f: &PolyForm) -> Result<[[GQ; 4]; 4], PolyError> {
    if f.degree() != 2 {
        return Err(PolyError::NotAQuadric);
    }
    let half = GQ::new(crate::scalar::rat(1, 2), crate::scalar::Rat::zero());
    let mut m: [[GQ; 4]; 4] = Default::default();
    for (idx, e) in exponents(2).iter().enumerate() {
        let c = &f.coeffs()[idx];
        if c.is_zero() {
            continue;
        }
        let vars: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat(i).take(e[i] as usize)).collect();
        let (i, j) = (vars[0], vars[1]);
        if i == j {
            m[i][i] = c.clone();
        } else {
            m[i][j] = c * &half;
            m[j][i] = c * &half;
        }
    }
    Ok(m)
}

/// Binary form of degree d: coefficient m multiplies s^(d-m) t^m.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    d: usize,
    c: Vec<GQ>,
}

impl BinaryForm {
    pub fn zero(d: usize) -> Self {
        BinaryForm { d, c: vec![GQ::zero(); d + 1] }
    }

    pub fn from_coeffs(d: usize, c: Vec<GQ>) -> Result<Self, PolyError> {
        if c.len() != d + 1 {
            return Err(PolyError::WrongLength { got: c.len(), want: d + 1 });
        }
        Ok(BinaryForm { d, c })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coeff(&self, m: usize) -> &GQ {
        &self.c[m]
    }

    pub fn coeffs(&self) -> &[GQ] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.d == 0 || self.is_zero()
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.d, other.d);
        BinaryForm {
            d: self.d,
            c: self.c.iter().zip(other.c.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &GQ) -> BinaryForm {
        BinaryForm { d: self.d, c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let d = self.d + other.d;
        let mut c = vec![GQ::zero(); d + 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        BinaryForm { d, c }
    }

    pub fn eval(&self, s: &GQ, t: &GQ) -> GQ {
        let mut acc = GQ::zero();
        let mut sp = vec![GQ::one()];
        let mut tp = vec![GQ::one()];
        for k in 1..=self.d {
            let a = sp[k - 1].clone();
            sp.push(a * s);
            let b = tp[k - 1].clone();
            tp.push(b * t);
        }
        for (m, cm) in self.c.iter().enumerate() {
            acc = acc + cm * &(&sp[self.d - m] * &tp[m]);
        }
        acc
    }

    /// d/ds, one degree down.
    pub fn derivative_s(&self) -> BinaryForm {
        if self.d == 0 {
            return BinaryForm::zero(0);
        }
        let mut c = vec![GQ::zero(); self.d];
        for m in 0..self.d {
            c[m] = &self.c[m] * &crate::scalar::gq_int((self.d - m) as i64);
        }
        BinaryForm { d: self.d - 1, c }
    }

    /// d/dt, one degree down.
    pub fn derivative_t(&self) -> BinaryForm {
        if self.d == 0 {
            return BinaryForm::zero(0);
        }
        let mut c = vec![GQ::zero(); self.d];
        for (m, item) in c.iter_mut().enumerate() {
            *item = &self.c[m + 1] * &crate::scalar::gq_int((m + 1) as i64);
        }
        BinaryForm { d: self.d - 1, c }
    }

    /// Largest k with t^k | f (index of the first nonzero coefficient).
    fn val_t(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(self.d + 1)
    }

    /// Largest k with s^k | f.
    fn val_s(&self) -> usize {
        match self.c.iter().rposition(|x| !x.is_zero()) {
            Some(m) => self.d - m,
            None => self.d + 1,
        }
    }

    /// Normalize so the first (s-major) nonzero coefficient is 1.
    pub fn monic(&self) -> BinaryForm {
        match self.c.iter().find(|x| !x.is_zero()) {
            Some(p) => self.scale(&(GQ::one() / p)),
            None => self.clone(),
        }
    }
}

fn binary_power_tables(a: &[GQ; 4], b: &[GQ; 4], d: usize) -> [Vec<BinaryForm>; 4] {
    let mut tables: [Vec<BinaryForm>; 4] = [vec![], vec![], vec![], vec![]];
    for i in 0..4 {
        let lin = BinaryForm { d: 1, c: vec![a[i].clone(), b[i].clone()] };
        let mut v = Vec::with_capacity(d + 1);
        v.push(BinaryForm { d: 0, c: vec![GQ::one()] });
        for k in 1..=d {
            let next = v[k - 1].mul(&lin);
            v.push(next);
        }
        tables[i] = v;
    }
    tables
}

/// Restrictions of all degree-d basis monomials to the line spanned by a, b;
/// these are the columns of a line's condition-matrix block.
pub fn restriction_of_basis(a: &[GQ; 4], b: &[GQ; 4], d: usize) -> Vec<BinaryForm> {
    let tables = binary_power_tables(a, b, d);
    exponents(d)
        .iter()
        .map(|e| {
            let mut prod = tables[0][e[0] as usize].clone();
            for v in 1..4 {
                prod = prod.mul(&tables[v][e[v] as usize]);
            }
            prod
        })
        .collect()
}

// Univariate polynomials over GQ (ascending coefficients), for the gcd core.
fn univ_trim(p: &mut Vec<GQ>) {
    while p.len() > 1 && p.last().map(|x| x.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn univ_rem(num: &[GQ], den: &[GQ]) -> Vec<GQ> {
    let mut r: Vec<GQ> = num.to_vec();
    univ_trim(&mut r);
    let dd = den.len() - 1;
    let lc = den.last().unwrap().clone();
    while r.len() > dd && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - dd;
        let factor = r.last().unwrap() / &lc;
        for (i, dc) in den.iter().enumerate() {
            let idx = i + shift;
            let sub = dc * &factor;
            r[idx] = &r[idx] - &sub;
        }
        univ_trim(&mut r);
        if r.iter().all(|x| x.is_zero()) {
            return vec![GQ::zero()];
        }
    }
    r
}

fn univ_gcd(a: &[GQ], b: &[GQ]) -> Vec<GQ> {
    let mut f: Vec<GQ> = a.to_vec();
    let mut g: Vec<GQ> = b.to_vec();
    univ_trim(&mut f);
    univ_trim(&mut g);
    while !(g.len() == 1 && g[0].is_zero()) {
        let r = univ_rem(&f, &g);
        f = g;
        g = r;
    }
    let lc = f.last().unwrap().clone();
    if !lc.is_zero() {
        for c in f.iter_mut() {
            *c = &*c / &lc;
        }
    }
    f
}

fn binary_gcd_pair(f: &BinaryForm, g: &BinaryForm) -> BinaryForm {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let vs = f.val_s().min(g.val_s());
    let vt = f.val_t().min(g.val_t());
    let core = |h: &BinaryForm| -> Vec<GQ> {
        let lo = h.val_t();
        let hi = h.d - h.val_s();
        h.c[lo..=hi].to_vec()
    };
    let gc = univ_gcd(&core(f), &core(g));
    let e = gc.len() - 1;
    let mut c = vec![GQ::zero(); e + vs + vt + 1];
    for (m, coeff) in gc.iter().enumerate() {
        c[vt + m] = coeff.clone();
    }
    BinaryForm { d: e + vs + vt, c }.monic()
}

/// Monic gcd of a family of binary forms; nonconstant iff the family shares a
/// projective root.
pub fn binary_gcd(forms: &[BinaryForm]) -> Result<BinaryForm, PolyError> {
    let mut acc: Option<BinaryForm> = None;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => f.monic(),
            Some(g) => binary_gcd_pair(&g, f),
        });
        if let Some(g) = &acc {
            if g.is_constant() {
                return Ok(g.clone());
            }
        }
    }
    acc.ok_or(PolyError::AllZeroGcd)
}
