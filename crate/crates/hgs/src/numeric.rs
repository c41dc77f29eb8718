//! Fixed-size 3-dimensional linear algebra and the cubic solver.
//!
//! Inner products follow the convention `<p, q> = sum(conj(p_i) * q_i)`: the
//! conjugate sits on the **first** argument. Swapping the slots flips the sign
//! of every imaginary part downstream (G21, h20), so keep it this way.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{HgsError, Result};

pub type RVec3 = Vector3<f64>;
pub type CVec3 = Vector3<Complex64>;
pub type RMat3 = Matrix3<f64>;
pub type CMat3 = Matrix3<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative pivot tolerance of [`solve3`].
pub const PIVOT_TOL: f64 = 1e-13;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn to_complex_vec(v: &RVec3) -> CVec3 {
    v.map(|x| c(x, 0.0))
}

pub fn to_complex_mat(m: &RMat3) -> CMat3 {
    m.map(|x| c(x, 0.0))
}

/// `<p, q> = sum(conj(p_i) * q_i)`.
pub fn hermitian_inner(p: &CVec3, q: &CVec3) -> Complex64 {
    p.iter().zip(q.iter()).map(|(a, b)| a.conj() * b).sum()
}

pub fn cnorm(v: &CVec3) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn cubic_eval(c2: f64, c1: f64, c0: f64, z: Complex64) -> (Complex64, Complex64) {
    let p = ((z + c2) * z + c1) * z + c0;
    let dp = (3.0 * z + 2.0 * c2) * z + c1;
    (p, dp)
}

fn polish(c2: f64, c1: f64, c0: f64, z: Complex64) -> Complex64 {
    let mut z = z;
    for _ in 0..3 {
        let (p, dp) = cubic_eval(c2, c1, c0, z);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let cand = z - p / dp;
        if cubic_eval(c2, c1, c0, cand).0.norm() < p.norm() {
            z = cand;
        } else {
            break;
        }
    }
    z
}

/// Roots of `λ³ + c2 λ² + c1 λ + c0`.
///
/// Ordering: with one real root it comes first, followed by the complex pair
/// with positive imaginary part first (the pair is exactly conjugate). With
/// three real roots they are sorted in descending order.
pub fn cubic_roots(c2: f64, c1: f64, c0: f64) -> [Complex64; 3] {
    // depressed cubic t³ + p t + q with λ = t - c2/3
    let shift = c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let scale = 1.0 + (q / 2.0).powi(2).max((p / 3.0).abs().powi(3));

    if disc > 1e-14 * scale {
        let sd = disc.sqrt();
        // pick the sign that avoids cancellation
        let u = (-q / 2.0 - q.signum() * sd).cbrt();
        let u = if q == 0.0 { sd.cbrt() } else { u };
        let v = if u != 0.0 { -p / (3.0 * u) } else { 0.0 };
        let t = u + v;
        let real = polish(c2, c1, c0, c(t - shift, 0.0)).re;
        // deflate: (λ - r)(λ² + b λ + d)
        let b = c2 + real;
        let d = if real.abs() > 1e-8 {
            -c0 / real
        } else {
            c1 + real * b
        };
        let half = -b / 2.0;
        let im2 = d - half * half;
        let pair = if im2 > 0.0 {
            polish(c2, c1, c0, c(half, im2.sqrt()))
        } else {
            c(half, 0.0)
        };
        let pair = c(pair.re, pair.im.abs());
        [c(real, 0.0), pair, pair.conj()]
    } else if p.abs() < 1e-14 * (1.0 + c2 * c2) && q.abs() < 1e-14 * (1.0 + c2.abs().powi(3)) {
        let r = c(-shift, 0.0);
        [r, r, r]
    } else {
        // three real roots (possibly repeated); trigonometric branch
        let m = 2.0 * (-p / 3.0).max(0.0).sqrt();
        let arg = if m > 0.0 { (3.0 * q / (p * m)).clamp(-1.0, 1.0) } else { 0.0 };
        let theta = arg.acos() / 3.0;
        let mut roots = [0.0f64; 3];
        for (k, r) in roots.iter_mut().enumerate() {
            let t = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
            *r = polish(c2, c1, c0, c(t - shift, 0.0)).re;
        }
        roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
        [c(roots[0], 0.0), c(roots[1], 0.0), c(roots[2], 0.0)]
    }
}

/// Solve `M x = b` by Gaussian elimination with partial pivoting.
///
/// Fails with [`HgsError::SingularMatrix`] when a pivot falls below
/// `PIVOT_TOL` times the largest entry of `M`.
pub fn solve3(m: &CMat3, b: &CVec3) -> Result<CVec3> {
    let mut a = *m;
    let mut x = *b;
    let big = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = PIVOT_TOL * big;
    for col in 0..3 {
        let (piv_row, piv) = (col..3)
            .map(|r| (r, a[(r, col)].norm()))
            .fold((col, -1.0), |acc, v| if v.1 > acc.1 { v } else { acc });
        if piv <= tol || piv == 0.0 {
            return Err(HgsError::SingularMatrix { pivot: piv });
        }
        if piv_row != col {
            a.swap_rows(piv_row, col);
            x.swap_rows(piv_row, col);
        }
        for r in col + 1..3 {
            let f = a[(r, col)] / a[(col, col)];
            for k in col..3 {
                let v = a[(col, k)];
                a[(r, k)] -= f * v;
            }
            let v = x[col];
            x[r] -= f * v;
        }
    }
    for r in (0..3).rev() {
        let mut s = x[r];
        for k in r + 1..3 {
            s -= a[(r, k)] * x[k];
        }
        x[r] = s / a[(r, r)];
    }
    Ok(x)
}

/// A nonzero vector `v` with `M v ≈ 0` for a rank-2 matrix, built from the
/// (unconjugated) cross product of the two rows that span best.
pub fn null_vector(m: &CMat3) -> CVec3 {
    let rows: Vec<CVec3> = (0..3).map(|r| m.row(r).transpose()).collect();
    let cross = |a: &CVec3, b: &CVec3| {
        CVec3::new(
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )
    };
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| cross(&rows[i], &rows[j]))
        .max_by(|a, b| cnorm(a).partial_cmp(&cnorm(b)).unwrap())
        .unwrap()
}

/// Neumaier compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn cubic_factored_example() {
        let r = cubic_roots(2.0, 2.0, 1.0);
        let s3 = 3f64.sqrt() / 2.0;
        assert!(close(r[0], c(-1.0, 0.0), 1e-12));
        assert!(close(r[1], c(-0.5, s3), 1e-12));
        assert!(close(r[2], c(-0.5, -s3), 1e-12));
    }

    #[test]
    fn cubic_pure_imaginary_pair() {
        let r = cubic_roots(0.0, 1.0, 0.0);
        assert!(close(r[0], c(0.0, 0.0), 1e-12));
        assert!(close(r[1], I, 1e-12));
        assert!(close(r[2], -I, 1e-12));
    }

    #[test]
    fn cubic_triple_root() {
        for z in cubic_roots(-3.0, 3.0, -1.0) {
            assert!(close(z, c(1.0, 0.0), 1e-5), "{z}");
            let (p, _) = cubic_eval(-3.0, 3.0, -1.0, z);
            assert!(p.norm() < 1e-9);
        }
    }

    #[test]
    fn cubic_three_distinct_real() {
        // (λ-1)(λ-2)(λ+3) = λ³ - 7λ + 6
        let r = cubic_roots(0.0, -7.0, 6.0);
        assert!(close(r[0], c(2.0, 0.0), 1e-12));
        assert!(close(r[1], c(1.0, 0.0), 1e-12));
        assert!(close(r[2], c(-3.0, 0.0), 1e-12));
    }

    #[test]
    fn cubic_double_root() {
        // (λ-1)²(λ+2) = λ³ - 3λ + 2
        let r = cubic_roots(0.0, -3.0, 2.0);
        for z in r {
            assert!(cubic_eval(0.0, -3.0, 2.0, z).0.norm() < 1e-9);
        }
        assert!(close(r[2], c(-2.0, 0.0), 1e-12));
    }

    #[test]
    fn solve_identity_and_diagonal() {
        let b = CVec3::new(c(1.0, 0.0), I, c(-1.0, 0.0));
        assert_eq!(solve3(&CMat3::identity(), &b).unwrap(), b);
        let d = CMat3::from_diagonal(&CVec3::new(c(2.0, 0.0), c(0.0, 2.0), c(-1.0, 0.0)));
        let b = CVec3::new(c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0));
        let x = solve3(&d, &b).unwrap();
        let want = CVec3::new(c(1.0, 0.0), -I, c(-1.0, 0.0));
        assert!(cnorm(&(x - want)) < 1e-15);
    }

    #[test]
    fn solve_needs_pivoting() {
        let m = CMat3::new(
            c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0),
            c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
            c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0),
        );
        let b = CVec3::new(c(3.0, 0.0), c(4.0, 0.0), c(5.0, 0.0));
        let x = solve3(&m, &b).unwrap();
        assert_eq!(x, CVec3::new(c(4.0, 0.0), c(3.0, 0.0), c(5.0, 0.0)));
    }

    #[test]
    fn solve_rejects_singular() {
        let m = CMat3::new(
            c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0),
            c(2.0, 0.0), c(4.0, 0.0), c(6.0, 0.0),
            c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0),
        );
        let b = CVec3::zeros();
        assert!(matches!(solve3(&m, &b), Err(HgsError::SingularMatrix { .. })));
    }

    #[test]
    fn inner_product_conjugates_first_slot() {
        let e1 = CVec3::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(hermitian_inner(&e1, &e1), c(1.0, 0.0));
        let ie1 = e1 * I;
        assert_eq!(hermitian_inner(&ie1, &ie1), c(1.0, 0.0));
        // <i e1, e1> = conj(i) = -i
        assert_eq!(hermitian_inner(&ie1, &e1), -I);
    }

    #[test]
    fn null_vector_of_rank_two() {
        let m = CMat3::new(
            c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0),
            c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0),
            c(1.0, 1.0), c(3.0, 0.0), c(3.0, 0.0),
        );
        let v = null_vector(&m);
        assert!(cnorm(&v) > 0.1);
        assert!(cnorm(&(m * v)) < 1e-14);
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let s = compensated_sum([1e16, 1.0, -1e16]);
        assert_eq!(s, 1.0);
    }
}
