//! Exact linear algebra over the Gaussian rationals. Rank uses fraction-free
//! Bareiss elimination over the Gaussian integers after clearing row
//! denominators; nullspaces and determinants use exact rational elimination.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Rat, GQ};

type GInt = Complex<BigInt>;

fn clear_row(row: &[GQ]) -> Vec<GInt> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(x.re.denom());
        lcm = lcm.lcm(x.im.denom());
    }
    row.iter()
        .map(|x| {
            let re = x.re.numer() * (&lcm / x.re.denom());
            let im = x.im.numer() * (&lcm / x.im.denom());
            Complex::new(re, im)
        })
        .collect()
}

fn bits(x: &GInt) -> u64 {
    x.re.magnitude().bits() + x.im.magnitude().bits()
}

// Exact quotient in Z[i]; Bareiss guarantees divisibility.
fn exact_div(n: &GInt, d: &GInt) -> GInt {
    let num = n * d.conj();
    let nrm = &d.re * &d.re + &d.im * &d.im;
    debug_assert!(!nrm.is_zero());
    debug_assert!((&num.re % &nrm).is_zero() && (&num.im % &nrm).is_zero());
    Complex::new(num.re / &nrm, num.im / &nrm)
}

/// Exact rank by fraction-free elimination.
pub fn rank_gq(rows: &[Vec<GQ>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<GInt>> = rows.iter().map(|r| clear_row(r)).collect();
    let nrows = m.len();
    let mut prev = GInt::one();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // smallest nonzero pivot keeps the integers small
        let pivot = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| bits(&m[i][c]));
        let Some(p) = pivot else { continue };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                for x in row.iter_mut().skip(c + 1) {
                    let v = &prow[c] * &*x;
                    *x = exact_div(&v, &prev);
                }
            } else {
                for j in (c + 1)..ncols {
                    let v = &prow[c] * &row[j] - &row[c] * &prow[j];
                    row[j] = exact_div(&v, &prev);
                }
                row[c] = GInt::zero();
            }
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Basis of {x : M x = 0}, by exact rational Gauss-Jordan. Deterministic:
/// one vector per free column, in column order.
pub fn nullspace_gq(rows: &[Vec<GQ>], ncols: usize) -> Vec<Vec<GQ>> {
    let mut m: Vec<Vec<GQ>> = rows.iter().cloned().collect();
    let nrows = m.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = GQ::new(Rat::one(), Rat::zero()) / m[r][c].clone();
        for j in c..ncols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for fc in 0..ncols {
        if pivot_cols.contains(&fc) {
            continue;
        }
        let mut v = vec![GQ::zero(); ncols];
        v[fc] = GQ::one();
        for &(pr, pc) in &pivots {
            v[pc] = -m[pr][fc].clone();
        }
        basis.push(v);
    }
    basis
}

/// Exact determinant of a square matrix.
pub fn det_gq(rows: &[Vec<GQ>]) -> GQ {
    let n = rows.len();
    let mut m: Vec<Vec<GQ>> = rows.to_vec();
    let mut det = GQ::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return GQ::zero();
        };
        if p != c {
            m.swap(c, p);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = GQ::one() / m[c][c].clone();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let sub = &f * &m[c][j];
                m[i][j] = &m[i][j] - &sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gq, gq_int, rand_gq, rat_int};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn naive_rank(rows: &[Vec<GQ>]) -> usize {
        // rational elimination oracle
        let ncols = rows[0].len();
        let mut m: Vec<Vec<GQ>> = rows.to_vec();
        let mut r = 0;
        for c in 0..ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            for i in (r + 1)..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] / &m[r][c];
                for j in c..ncols {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn rank_matches_rational_oracle_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..25 {
            let nr = rng.gen_range(1..=7);
            let nc = rng.gen_range(1..=7);
            let rows: Vec<Vec<GQ>> = (0..nr)
                .map(|_| (0..nc).map(|_| rand_gq(&mut rng, 4)).collect())
                .collect();
            assert_eq!(rank_gq(&rows), naive_rank(&rows));
        }
    }

    #[test]
    fn rank_of_structured_matrices() {
        let z = GQ::zero();
        let rows = vec![
            vec![gq_int(1), gq_int(2), gq_int(3)],
            vec![gq_int(2), gq_int(4), gq_int(6)],
            vec![z.clone(), gq_int(1), gq_int(1)],
        ];
        assert_eq!(rank_gq(&rows), 2);
        // fractional entries
        let rows = vec![
            vec![gq(crate::scalar::rat(1, 2), rat_int(0)), gq_int(1)],
            vec![gq_int(1), gq_int(2)],
        ];
        assert_eq!(rank_gq(&rows), 1);
    }

    #[test]
    fn nullspace_annihilates_and_has_right_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for _ in 0..20 {
            let nr = rng.gen_range(1..=6);
            let nc = rng.gen_range(1..=6);
            let rows: Vec<Vec<GQ>> = (0..nr)
                .map(|_| (0..nc).map(|_| rand_gq(&mut rng, 4)).collect())
                .collect();
            let rank = rank_gq(&rows);
            let ns = nullspace_gq(&rows, nc);
            assert_eq!(ns.len(), nc - rank);
            for v in &ns {
                for row in &rows {
                    let mut acc = GQ::zero();
                    for (a, b) in row.iter().zip(v.iter()) {
                        acc = acc + a * b;
                    }
                    assert!(acc.is_zero());
                }
            }
        }
    }

    #[test]
    fn determinants() {
        let rows = vec![
            vec![gq_int(1), gq_int(2)],
            vec![gq_int(3), gq_int(4)],
        ];
        assert_eq!(det_gq(&rows), gq_int(-2));
        let rows = vec![
            vec![gq_int(1), gq_int(2)],
            vec![gq_int(2), gq_int(4)],
        ];
        assert!(det_gq(&rows).is_zero());
        // det(i * I2) = -1
        let i = gq(rat_int(0), rat_int(1));
        let rows = vec![vec![i.clone(), GQ::zero()], vec![GQ::zero(), i]];
        assert_eq!(det_gq(&rows), gq_int(-1));
    }
}
