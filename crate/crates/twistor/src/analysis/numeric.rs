//! Floating-point machinery behind the probabilistic surface analyses:
//! complex-double polynomial evaluation, chart frames on Gr(2,4), multistart
//! Newton for lines on a surface, and damped least squares for the
//! singularity search. Deterministic for a fixed master seed regardless of
//! thread count: every (chart, start) gets its own derived seed and results
//! are merged in a fixed order.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::poly::{exponents, PolyForm};
use crate::scalar::{to_c64, C64};

/// Dense complex-double mirror of a PolyForm (same monomial order).
#[derive(Clone, Debug)]
pub struct PolyC64 {
    pub d: usize,
    pub c: Vec<C64>,
    exps: Vec<[u32; 4]>,
}

impl PolyC64 {
    pub fn from_exact(f: &PolyForm) -> Self {
        PolyC64 {
            d: f.degree(),
            c: f.coeffs().iter().map(to_c64).collect(),
            exps: exponents(f.degree()),
        }
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.c.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: &[C64; 4]) -> C64 {
        let mut pows = [[C64::zero(); 16]; 4];
        for i in 0..4 {
            pows[i][0] = C64::new(1.0, 0.0);
            for k in 1..=self.d {
                pows[i][k] = pows[i][k - 1] * z[i];
            }
        }
        let mut acc = C64::zero();
        for (i, e) in self.exps.iter().enumerate() {
            if self.c[i] == C64::zero() {
                continue;
            }
            acc += self.c[i]
                * pows[0][e[0] as usize]
                * pows[1][e[1] as usize]
                * pows[2][e[2] as usize]
                * pows[3][e[3] as usize];
        }
        acc
    }

    pub fn partials(&self) -> [PolyC64; 4] {
        let lower = exponents(self.d.saturating_sub(1));
        let index = |e: &[u32; 4]| lower.iter().position(|x| x == e).unwrap();
        let mut out: [PolyC64; 4] = std::array::from_fn(|_| PolyC64 {
            d: self.d - 1,
            c: vec![C64::zero(); lower.len()],
            exps: lower.clone(),
        });
        for (idx, e) in self.exps.iter().enumerate() {
            if self.c[idx] == C64::zero() {
                continue;
            }
            for i in 0..4 {
                if e[i] == 0 {
                    continue;
                }
                let mut t = *e;
                t[i] -= 1;
                out[i].c[index(&t)] += self.c[idx] * (e[i] as f64);
            }
        }
        out
    }

    /// Coefficients of f(s·a + t·b): d+1 values, s-major.
    pub fn restrict_to_points(&self, a: &[C64; 4], b: &[C64; 4]) -> Vec<C64> {
        let d = self.d;
        // tables[i][k] = coefficients of (s a_i + t b_i)^k
        let mut tables: [Vec<Vec<C64>>; 4] = std::array::from_fn(|_| Vec::with_capacity(d + 1));
        for i in 0..4 {
            tables[i].push(vec![C64::new(1.0, 0.0)]);
            for k in 1..=d {
                let prev = &tables[i][k - 1];
                let mut next = vec![C64::zero(); k + 1];
                for (m, &p) in prev.iter().enumerate() {
                    next[m] += p * a[i];
                    next[m + 1] += p * b[i];
                }
                tables[i].push(next);
            }
        }
        let mut acc = vec![C64::zero(); d + 1];
        for (idx, e) in self.exps.iter().enumerate() {
            if self.c[idx] == C64::zero() {
                continue;
            }
            let mut prod = vec![C64::new(1.0, 0.0)];
            for i in 0..4 {
                if e[i] == 0 {
                    continue;
                }
                let t = &tables[i][e[i] as usize];
                let mut next = vec![C64::zero(); prod.len() + t.len() - 1];
                for (m, &p) in prod.iter().enumerate() {
                    for (n, &q) in t.iter().enumerate() {
                        next[m + n] += p * q;
                    }
                }
                prod = next;
            }
            for (m, &p) in prod.iter().enumerate() {
                acc[m] += self.c[idx] * p;
            }
        }
        acc
    }
}

/// The six affine charts of Gr(2,4), indexed by their pivot column pair.
pub const CHART_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn chart_free_cols(chart: usize) -> (usize, usize) {
    let (i, j) = CHART_PAIRS[chart];
    let free: Vec<usize> = (0..4).filter(|&c| c != i && c != j).collect();
    (free[0], free[1])
}

/// Row-reduced frame of the chart: identity in the pivot columns, the four
/// unknowns in the free columns.
pub fn chart_frame(chart: usize, x: &[C64; 4]) -> ([C64; 4], [C64; 4]) {
    let (i, j) = CHART_PAIRS[chart];
    let (c0, c1) = chart_free_cols(chart);
    let mut a = [C64::zero(); 4];
    let mut b = [C64::zero(); 4];
    a[i] = C64::new(1.0, 0.0);
    a[c0] = x[0];
    a[c1] = x[1];
    b[j] = C64::new(1.0, 0.0);
    b[c0] = x[2];
    b[c1] = x[3];
    (a, b)
}

pub fn plucker_of_frame(a: &[C64; 4], b: &[C64; 4]) -> [C64; 6] {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut p = [C64::zero(); 6];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        p[k] = a[i] * b[j] - a[j] * b[i];
    }
    p
}

pub fn j_plucker_c64(p: &[C64; 6]) -> [C64; 6] {
    [p[0].conj(), p[4].conj(), -p[3].conj(), -p[2].conj(), p[1].conj(), p[5].conj()]
}

pub fn normalize_unit<const N: usize>(v: &[C64; N]) -> [C64; N] {
    let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let mut out = *v;
    for x in out.iter_mut() {
        *x /= n;
    }
    out
}

/// Projective distance of unit vectors: sqrt(2 - 2|<u,v>|), zero iff equal up
/// to phase.
pub fn proj_distance<const N: usize>(u: &[C64; N], v: &[C64; N]) -> f64 {
    let dot: C64 = u.iter().zip(v.iter()).map(|(a, b)| a * b.conj()).sum();
    (2.0 - 2.0 * dot.norm()).max(0.0).sqrt()
}

/// Second singular value of the stacked 2xN matrix of two unit rows.
pub fn second_singular<const N: usize>(u: &[C64; N], v: &[C64; N]) -> f64 {
    let dot: C64 = u.iter().zip(v.iter()).map(|(a, b)| a * b.conj()).sum();
    (1.0 - dot.norm()).max(0.0).sqrt()
}

fn solve_square(mut a: Vec<Vec<C64>>, mut b: Vec<C64>) -> Option<Vec<C64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm()))?;
        if a[p][c].norm() < 1e-300 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for i in (c + 1)..n {
            let f = a[i][c] / a[c][c];
            for j in c..n {
                let sub = f * a[c][j];
                a[i][j] -= sub;
            }
            let sub = f * b[c];
            b[i] -= sub;
        }
    }
    let mut x = vec![C64::zero(); n];
    for c in (0..n).rev() {
        let mut acc = b[c];
        for j in (c + 1)..n {
            acc -= a[c][j] * x[j];
        }
        x[c] = acc / a[c][c];
    }
    Some(x)
}

/// Restriction coefficients and their Jacobian in the chart unknowns.
/// With A = e_i + x0 e_c0 + x1 e_c1 and B = e_j + x2 e_c0 + x3 e_c1,
/// d/dx0 f(sA + tB) = s (d_c0 f)(sA + tB), so the Jacobian columns are shifted
/// coefficient vectors of the restricted partials.
fn residual_and_jacobian(
    f: &PolyC64,
    parts: &[PolyC64; 4],
    chart: usize,
    x: &[C64; 4],
) -> (Vec<C64>, Vec<[C64; 4]>) {
    let (a, b) = chart_frame(chart, x);
    let (c0, c1) = chart_free_cols(chart);
    let g = f.restrict_to_points(&a, &b);
    let r0 = parts[c0].restrict_to_points(&a, &b);
    let r1 = parts[c1].restrict_to_points(&a, &b);
    let d = f.d;
    let mut jac = Vec::with_capacity(d + 1);
    for m in 0..=d {
        let s0 = if m <= d - 1 { r0[m] } else { C64::zero() };
        let s1 = if m <= d - 1 { r1[m] } else { C64::zero() };
        let t0 = if m >= 1 { r0[m - 1] } else { C64::zero() };
        let t1 = if m >= 1 { r1[m - 1] } else { C64::zero() };
        jac.push([s0, s1, t0, t1]);
    }
    (g, jac)
}

/// Scale-invariant residual: restriction through unit-normalized spanning
/// points, relative to the largest coefficient of f.
pub fn line_residual(f: &PolyC64, a: &[C64; 4], b: &[C64; 4]) -> f64 {
    let an = normalize_unit(a);
    let bn = normalize_unit(b);
    let g = f.restrict_to_points(&an, &bn);
    let m = g.iter().map(|x| x.norm()).fold(0.0, f64::max);
    m / f.max_coeff_norm().max(1e-300)
}

fn norm4(x: &[C64; 4]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// One Newton/least-squares run from a start point; returns converged chart
/// coordinates when the full residual is small.
fn newton_line_run(
    f: &PolyC64,
    parts: &[PolyC64; 4],
    chart: usize,
    start: [C64; 4],
    accept_tol: f64,
) -> Option<([C64; 4], f64)> {
    let d = f.d;
    let mut x = start;
    if d >= 3 {
        // square subsystem from the first four restriction coefficients
        for _ in 0..60 {
            let (g, jac) = residual_and_jacobian(f, parts, chart, &x);
            let a: Vec<Vec<C64>> = (0..4).map(|m| jac[m].to_vec()).collect();
            let b: Vec<C64> = (0..4).map(|m| -g[m]).collect();
            let delta = solve_square(a, b)?;
            for k in 0..4 {
                x[k] += delta[k];
            }
            if norm4(&x) > 1e9 {
                return None;
            }
            let dn = delta.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if dn < 1e-13 * (1.0 + norm4(&x)) {
                break;
            }
        }
    }
    // Gauss-Newton polish on the full system (also the main loop for d <= 2)
    let iters = if d >= 3 { 4 } else { 60 };
    let mut lambda = if d >= 3 { 0.0 } else { 1e-4 };
    for _ in 0..iters {
        let (g, jac) = residual_and_jacobian(f, parts, chart, &x);
        let mut ata = vec![vec![C64::zero(); 4]; 4];
        let mut atb = vec![C64::zero(); 4];
        for (m, row) in jac.iter().enumerate() {
            for p in 0..4 {
                for q in 0..4 {
                    ata[p][q] += row[p].conj() * row[q];
                }
                atb[p] -= row[p].conj() * g[m];
            }
        }
        for (p, row) in ata.iter_mut().enumerate() {
            row[p] += C64::new(lambda, 0.0);
        }
        let delta = solve_square(ata, atb)?;
        for k in 0..4 {
            x[k] += delta[k];
        }
        if norm4(&x) > 1e9 {
            return None;
        }
        let dn = delta.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if dn < 1e-14 * (1.0 + norm4(&x)) {
            break;
        }
        lambda *= 0.3;
    }
    let (a, b) = chart_frame(chart, &x);
    let res = line_residual(f, &a, &b);
    if res < accept_tol {
        Some((x, res))
    } else {
        None
    }
}

/// Column rank of the full-system Jacobian at a solution, by modified
/// Gram-Schmidt; rank < 4 marks a positive-dimensional family.
fn jacobian_col_rank(f: &PolyC64, parts: &[PolyC64; 4], chart: usize, x: &[C64; 4]) -> usize {
    let (_, jac) = residual_and_jacobian(f, parts, chart, x);
    let rows = jac.len();
    let mut cols: Vec<Vec<C64>> = (0..4).map(|c| (0..rows).map(|r| jac[r][c]).collect()).collect();
    let scale = cols
        .iter()
        .map(|c| c.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let mut rank = 0;
    for k in 0..4 {
        for prev in 0..k {
            let q = &cols[prev];
            let qn: f64 = q.iter().map(|v| v.norm_sqr()).sum();
            if qn < 1e-300 {
                continue;
            }
            let dot: C64 = cols[k]
                .iter()
                .zip(q.iter())
                .map(|(a, b)| b.conj() * a)
                .sum();
            let coef = dot / qn;
            for r in 0..rows {
                let sub = coef * cols[prev][r];
                cols[k][r] -= sub;
            }
        }
        let n: f64 = cols[k].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-7 * scale {
            rank += 1;
        } else {
            for v in cols[k].iter_mut() {
                *v = C64::zero();
            }
        }
    }
    rank
}

#[derive(Clone, Debug)]
pub struct RawLine {
    pub plucker: [C64; 6],
    pub points: [[C64; 4]; 2],
    pub residual: f64,
    pub isolated: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveStats {
    pub starts: usize,
    pub converged: usize,
    pub distinct: usize,
}

fn derived_seed(master: u64, chart: u64, idx: u64) -> u64 {
    master
        ^ chart.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ idx.wrapping_mul(0xbf58_476d_1ce4_e5b9)
}

fn random_start(rng: &mut ChaCha8Rng) -> [C64; 4] {
    // log-uniform radius covers both small and large chart coordinates
    let r = (rng.gen_range(-1.2_f64..3.0)).exp();
    std::array::from_fn(|_| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * r
    })
}

/// Multistart line search over all six charts; deduplicated by projective
/// Plucker distance, deterministic for a fixed seed.
pub fn multistart_lines(
    f: &PolyC64,
    n_starts_per_chart: usize,
    seed: u64,
    accept_tol: f64,
    dedup_tol: f64,
) -> (Vec<RawLine>, SolveStats) {
    let parts = f.partials();
    let tasks: Vec<(usize, usize)> = (0..6)
        .flat_map(|c| (0..n_starts_per_chart).map(move |i| (c, i)))
        .collect();
    let mut hits: Vec<(usize, usize, [C64; 4], f64)> = tasks
        .par_iter()
        .filter_map(|&(chart, i)| {
            let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(seed, chart as u64, i as u64));
            let start = random_start(&mut rng);
            newton_line_run(f, &parts, chart, start, accept_tol)
                .map(|(x, res)| (chart, i, x, res))
        })
        .collect();
    hits.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let converged = hits.len();

    let mut lines: Vec<RawLine> = Vec::new();
    for (chart, _, x, res) in hits {
        let (a, b) = chart_frame(chart, &x);
        let p = normalize_unit(&plucker_of_frame(&a, &b));
        match lines.iter_mut().find(|l| proj_distance(&l.plucker, &p) < dedup_tol) {
            Some(existing) => {
                if res < existing.residual {
                    existing.plucker = p;
                    existing.points = [a, b];
                    existing.residual = res;
                }
            }
            None => {
                let isolated = jacobian_col_rank(f, &parts, chart, &x) == 4;
                lines.push(RawLine { plucker: p, points: [a, b], residual: res, isolated });
            }
        }
    }
    let stats = SolveStats {
        starts: 6 * n_starts_per_chart,
        converged,
        distinct: lines.len(),
    };
    (lines, stats)
}

#[derive(Clone, Debug)]
pub struct SingularCandidate {
    pub point: [C64; 4],
    pub residual: f64,
}

/// Multistart damped least squares on |grad f|^2 over the four affine charts.
pub fn multistart_singularities(
    f: &PolyC64,
    n_starts_per_chart: usize,
    seed: u64,
    tol: f64,
) -> Vec<SingularCandidate> {
    if f.d < 2 {
        return Vec::new();
    }
    let parts = f.partials();
    let hessian: Vec<[PolyC64; 4]> = parts.iter().map(|p| p.partials()).collect();
    let scale = parts.iter().map(|p| p.max_coeff_norm()).fold(0.0, f64::max).max(1e-300);

    let residual_at = |z: &[C64; 4]| -> f64 {
        let zn = normalize_unit(z);
        parts.iter().map(|p| p.eval(&zn).norm()).fold(0.0, f64::max) / scale
    };

    let tasks: Vec<(usize, usize)> = (0..4)
        .flat_map(|c| (0..n_starts_per_chart).map(move |i| (c, i)))
        .collect();
    let mut hits: Vec<(usize, usize, [C64; 4], f64)> = tasks
        .par_iter()
        .filter_map(|&(chart, i)| {
            let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(seed, 100 + chart as u64, i as u64));
            let free: Vec<usize> = (0..4).filter(|&k| k != chart).collect();
            let mut z = [C64::zero(); 4];
            z[chart] = C64::new(1.0, 0.0);
            let r = (rng.gen_range(-1.2_f64..2.3)).exp();
            for &k in &free {
                z[k] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * r;
            }
            let mut lambda = 1e-3;
            for _ in 0..70 {
                let fval: Vec<C64> = parts.iter().map(|p| p.eval(&z)).collect();
                let mut ata = vec![vec![C64::zero(); 3]; 3];
                let mut atb = vec![C64::zero(); 3];
                for i4 in 0..4 {
                    let row: Vec<C64> = free.iter().map(|&k| hessian[i4][k].eval(&z)).collect();
                    for p in 0..3 {
                        for q in 0..3 {
                            ata[p][q] += row[p].conj() * row[q];
                        }
                        atb[p] -= row[p].conj() * fval[i4];
                    }
                }
                for (p, row) in ata.iter_mut().enumerate() {
                    row[p] += C64::new(lambda, 0.0);
                }
                let Some(delta) = solve_square(ata, atb) else { break };
                for (p, &k) in free.iter().enumerate() {
                    z[k] += delta[p];
                }
                if norm4(&z) > 1e9 {
                    return None;
                }
                let dn = delta.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
                if dn < 1e-14 * (1.0 + norm4(&z)) {
                    break;
                }
                lambda = (lambda * 0.5).max(1e-12);
            }
            let res = residual_at(&z);
            (res < tol).then_some((chart, i, z, res))
        })
        .collect();
    hits.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

    let mut out: Vec<SingularCandidate> = Vec::new();
    for (_, _, z, res) in hits {
        let zn = normalize_unit(&z);
        match out
            .iter_mut()
            .find(|c| proj_distance(&normalize_unit(&c.point), &zn) < 1e-6)
        {
            Some(c) => {
                if res < c.residual {
                    c.point = zn;
                    c.residual = res;
                }
            }
            None => out.push(SingularCandidate { point: zn, residual: res }),
        }
    }
    out
}
