//! Exact scalars: Gaussian rationals (`Complex<BigRational>`), literal parsing,
//! exact square roots, rational reconstruction from floats, and bounded-height
//! random sampling.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

/// Arbitrary-precision rational.
pub type Rat = BigRational;
/// Gaussian rational: the exact scalar field used everywhere below.
pub type GQ = Complex<Rat>;
/// Approximate complex scalar for the numerical solvers.
pub type C64 = Complex<f64>;

#[derive(Debug, Error)]
pub enum ScalarError {
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("invalid complex rational literal `{0}`")]
    BadComplex(String),
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn gq(re: Rat, im: Rat) -> GQ {
    Complex::new(re, im)
}

pub fn gq_int(n: i64) -> GQ {
    Complex::new(rat_int(n), Rat::zero())
}

pub fn gq_zero() -> GQ {
    Complex::new(Rat::zero(), Rat::zero())
}

pub fn gq_one() -> GQ {
    Complex::new(Rat::one(), Rat::zero())
}

pub fn gq_i() -> GQ {
    Complex::new(Rat::zero(), Rat::one())
}

pub fn to_c64(x: &GQ) -> C64 {
    Complex::new(
        x.re.to_f64().unwrap_or(f64::NAN),
        x.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// Serialize a rational as `num/den` (denominator always written, always positive).
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_from_str(s: &str) -> Result<Rat, ScalarError> {
    let bad = || ScalarError::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn gq_to_pair(x: &GQ) -> [String; 2] {
    [rat_to_string(&x.re), rat_to_string(&x.im)]
}

pub fn gq_from_pair(p: &[String; 2]) -> Result<GQ, ScalarError> {
    Ok(Complex::new(rat_from_str(&p[0])?, rat_from_str(&p[1])?))
}

/// Parse a complex rational literal: `a/b`, `a/b+c/di`, `-2i`, `i`, `3-1/2i`.
/// Floating-point literals are rejected.
pub fn parse_complex_rational(s: &str) -> Result<GQ, ScalarError> {
    let bad = || ScalarError::BadComplex(s.to_string());
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() || t.contains('.') {
        return Err(bad());
    }
    // A sign after position 0 separates the real part from the imaginary part.
    let bytes = t.as_bytes();
    let mut split = None;
    for i in 1..bytes.len() {
        let c = bytes[i] as char;
        if c == '+' || c == '-' {
            split = Some(i);
            break;
        }
    }
    let parse_imag = |lit: &str| -> Result<Rat, ScalarError> {
        let body = lit.strip_suffix('i').ok_or_else(bad)?;
        match body {
            "" | "+" => Ok(Rat::one()),
            "-" => Ok(-Rat::one()),
            other => rat_from_str(other).map_err(|_| bad()),
        }
    };
    match split {
        Some(i) => {
            let re = rat_from_str(&t[..i]).map_err(|_| bad())?;
            let im = parse_imag(&t[i..])?;
            Ok(Complex::new(re, im))
        }
        None => {
            if t.ends_with('i') {
                Ok(Complex::new(Rat::zero(), parse_imag(&t)?))
            } else {
                Ok(Complex::new(rat_from_str(&t).map_err(|_| bad())?, Rat::zero()))
            }
        }
    }
}

/// Uniform rational with numerator in [-height, height] and denominator in [1, height].
pub fn rand_rat<R: Rng>(rng: &mut R, height: u32) -> Rat {
    let h = height.max(1) as i64;
    let num = rng.gen_range(-h..=h);
    let den = rng.gen_range(1..=h);
    rat(num, den)
}

pub fn rand_gq<R: Rng>(rng: &mut R, height: u32) -> GQ {
    Complex::new(rand_rat(rng, height), rand_rat(rng, height))
}

pub fn rand_nonzero_gq<R: Rng>(rng: &mut R, height: u32) -> GQ {
    loop {
        let x = rand_gq(rng, height);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn sqrt_rat(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Exact square root in the Gaussian rationals, if one exists.
pub fn sqrt_gq(x: &GQ) -> Option<GQ> {
    if x.im.is_zero() {
        if !x.re.is_negative() {
            return sqrt_rat(&x.re).map(|s| Complex::new(s, Rat::zero()));
        }
        return sqrt_rat(&(-x.re.clone())).map(|s| Complex::new(Rat::zero(), s));
    }
    // (p+qi)^2 = x needs |x| to be a rational square, then p^2 = (re + |x|)/2.
    let modulus = sqrt_rat(&x.norm_sqr())?;
    let p2 = (x.re.clone() + modulus) / rat_int(2);
    let p = sqrt_rat(&p2)?;
    if p.is_zero() {
        return None;
    }
    let q = x.im.clone() / (rat_int(2) * p.clone());
    let root = Complex::new(p, q);
    if &root * &root == *x {
        Some(root)
    } else {
        None
    }
}

/// Continued-fraction reconstruction of a rational from a float.
pub fn rationalize_f64(x: f64, max_den: u64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, 0i128, 1i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e17 {
            return None;
        }
        let ai = a as i128;
        let (p2, q2) = (ai.checked_mul(p0)?.checked_add(p1)?, ai.checked_mul(q0)?.checked_add(q1)?);
        p1 = p0;
        q1 = q0;
        p0 = p2;
        q0 = q2;
        if q0.unsigned_abs() > max_den as u128 {
            return None;
        }
        let approx = p0 as f64 / q0 as f64;
        if (approx - x).abs() <= tol {
            return Some(BigRational::new(BigInt::from(p0), BigInt::from(q0)));
        }
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    let approx = p0 as f64 / q0 as f64;
    if q0 != 0 && (approx - x).abs() <= tol {
        Some(BigRational::new(BigInt::from(p0), BigInt::from(q0)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals() {
        assert_eq!(rat_from_str("3/4").unwrap(), rat(3, 4));
        assert_eq!(rat_from_str("-7").unwrap(), rat_int(-7));
        assert!(rat_from_str("1/0").is_err());
        assert_eq!(rat_from_str("6/4").unwrap(), rat(3, 2));
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex_rational("1/2+1/3i").unwrap(), gq(rat(1, 2), rat(1, 3)));
        assert_eq!(parse_complex_rational("2").unwrap(), gq_int(2));
        assert_eq!(parse_complex_rational("-i").unwrap(), -gq_i());
        assert_eq!(parse_complex_rational("3i").unwrap(), gq(Rat::zero(), rat_int(3)));
        assert_eq!(parse_complex_rational("-1/2-2i").unwrap(), gq(rat(-1, 2), rat_int(-2)));
        assert!(parse_complex_rational("0.5").is_err());
        assert!(parse_complex_rational("").is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(sqrt_rat(&rat(9, 4)).unwrap(), rat(3, 2));
        assert!(sqrt_rat(&rat(2, 1)).is_none());
        // (1+2i)^2 = -3+4i
        assert_eq!(sqrt_gq(&gq(rat_int(-3), rat_int(4))).unwrap(), gq(rat_int(1), rat_int(2)));
        assert_eq!(sqrt_gq(&gq_int(-4)).unwrap(), gq(Rat::zero(), rat_int(2)));
        assert!(sqrt_gq(&gq(rat_int(1), rat_int(1))).is_none());
        // random squares round-trip
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = rand_gq(&mut rng, 10);
            let sq = &x * &x;
            let r = sqrt_gq(&sq).expect("square must have a root");
            assert!(&r * &r == sq);
        }
    }

    use rand::SeedableRng;

    #[test]
    fn float_reconstruction() {
        let r = rationalize_f64(0.6, 100, 1e-9).unwrap();
        assert_eq!(r, rat(3, 5));
        let r = rationalize_f64(-22.0 / 7.0, 1000, 1e-12).unwrap();
        assert_eq!(r, rat(-22, 7));
        assert!(rationalize_f64(std::f64::consts::PI, 10, 1e-12).is_none());
    }
}
