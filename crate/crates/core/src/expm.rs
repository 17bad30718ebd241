//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants (Higham, SIAM J. Matrix Anal. Appl. 26 (2005) 1179).
//!
//! The degree `m ∈ {3, 5, 7, 9, 13}` and the number of squarings are chosen
//! from the 1-norm so that the backward error of the approximant stays below
//! the double-precision unit roundoff.

use ndarray::{Array2, ArrayView2};
use num_complex::Complex64 as C64;

use crate::linalg::{identity, norm1, Lu};

/// Largest 1-norms for which the `[m/m]` approximant is accurate to unit
/// roundoff, for m = 3, 5, 7, 9, 13.
#[allow(clippy::excessive_precision)]
const THETA: [(usize, f64); 5] = [
    (3, 1.495_585_217_958_292e-2),
    (5, 2.539_398_330_063_230e-1),
    (7, 9.504_178_996_162_932e-1),
    (9, 2.097_847_961_257_068e0),
    (13, 5.371_920_351_148_152e0),
];

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17_297_280.0,
    8_648_640.0,
    1_995_840.0,
    277_200.0,
    25_200.0,
    1_512.0,
    56.0,
    1.0,
];
const B9: [f64; 10] = [
    17_643_225_600.0,
    8_821_612_800.0,
    2_075_673_600.0,
    302_702_400.0,
    30_270_240.0,
    2_162_160.0,
    110_880.0,
    3_960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// `exp(a)` for a square complex matrix.
///
/// # Panics
/// If `a` is not square or contains non-finite entries.
pub fn expm(a: ArrayView2<C64>) -> Array2<C64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    assert!(
        a.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
        "expm needs finite entries"
    );
    if n == 0 {
        return Array2::zeros((0, 0));
    }
    if n == 1 {
        return Array2::from_elem((1, 1), a[[0, 0]].exp());
    }

    let norm = norm1(a);
    for &(m, theta) in &THETA[..4] {
        if norm <= theta {
            return pade_low(a, m);
        }
    }

    let theta13 = THETA[4].1;
    let squarings = if norm > theta13 {
        (norm / theta13).log2().ceil().max(0.0) as u32
    } else {
        0
    };
    let scaled = a.mapv(|z| z / 2f64.powi(squarings as i32));
    let mut r = pade13(scaled.view());
    for _ in 0..squarings {
        r = r.dot(&r);
    }
    r
}

/// `exp(a * t)`.
pub fn expm_scaled(a: ArrayView2<C64>, t: f64) -> Array2<C64> {
    expm(a.mapv(|z| z * t).view())
}

fn pade_low(a: ArrayView2<C64>, m: usize) -> Array2<C64> {
    let b: &[f64] = match m {
        3 => &B3,
        5 => &B5,
        7 => &B7,
        9 => &B9,
        _ => unreachable!("no low-order approximant of degree {m}"),
    };
    let n = a.nrows();
    let eye = identity(n);
    let a2 = a.dot(&a);

    // Even powers I, A^2, A^4, ... up to A^(m-1).
    let mut powers = vec![eye.clone(), a2.clone()];
    while powers.len() < m.div_ceil(2) {
        let next = powers.last().unwrap().dot(&a2);
        powers.push(next);
    }

    let mut u_inner = Array2::<C64>::zeros((n, n));
    let mut v = Array2::<C64>::zeros((n, n));
    for (k, p) in powers.iter().enumerate() {
        u_inner.scaled_add(C64::new(b[2 * k + 1], 0.0), p);
        v.scaled_add(C64::new(b[2 * k], 0.0), p);
    }
    let u = a.dot(&u_inner);
    solve_pade(u, v)
}

fn pade13(a: ArrayView2<C64>) -> Array2<C64> {
    let b = |k: usize| C64::new(B13[k], 0.0);
    let n = a.nrows();
    let eye = identity(n);
    let a2 = a.dot(&a);
    let a4 = a2.dot(&a2);
    let a6 = a4.dot(&a2);

    let w1 = &a6 * b(13) + &a4 * b(11) + &a2 * b(9);
    let w2 = &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &eye * b(1);
    let u = a.dot(&(a6.dot(&w1) + w2));

    let z1 = &a6 * b(12) + &a4 * b(10) + &a2 * b(8);
    let z2 = &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &eye * b(0);
    let v = a6.dot(&z1) + z2;

    solve_pade(u, v)
}

/// `(V - U)^{-1} (V + U)`.
fn solve_pade(u: Array2<C64>, v: Array2<C64>) -> Array2<C64> {
    let q = &v - &u;
    let p = v + u;
    // Q is within a small multiple of the identity's condition for the
    // norms admitted above, so it is never singular.
    Lu::factor(q)
        .expect("Padé denominator is nonsingular for admissible norms")
        .solve(p.view())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn max_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
        a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    /// Plain Taylor series, summed with many terms; only for small norms.
    fn taylor(a: &Array2<C64>) -> Array2<C64> {
        let n = a.nrows();
        let mut term = identity(n);
        let mut sum = identity(n);
        for k in 1..60 {
            term = term.dot(a).mapv(|z| z / k as f64);
            sum += &term;
        }
        sum
    }

    #[test]
    fn diagonal_matrix() {
        let a = array![[c(-0.5, 0.1), c(0.0, 0.0)], [c(0.0, 0.0), c(-2.0, -3.0)]];
        let e = expm(a.view());
        assert!((e[[0, 0]] - c(-0.5, 0.1).exp()).norm() < 1e-15);
        assert!((e[[1, 1]] - c(-2.0, -3.0).exp()).norm() < 1e-15);
        assert_eq!(e[[0, 1]], c(0.0, 0.0));
    }

    #[test]
    fn nilpotent_block() {
        // exp([[0, x], [0, 0]]) = [[1, x], [0, 1]]
        let a = array![[c(0.0, 0.0), c(3.0, -1.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        let e = expm(a.view());
        let expected = array![[c(1.0, 0.0), c(3.0, -1.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(max_diff(&e, &expected) < 1e-14);
    }

    #[test]
    fn rotation_generator() {
        // exp(θ [[0, -1], [1, 0]]) is a rotation by θ.
        for theta in [1e-3, 0.3, 2.0, 40.0] {
            let a = array![[c(0.0, 0.0), c(-theta, 0.0)], [c(theta, 0.0), c(0.0, 0.0)]];
            let e = expm(a.view());
            let (s, co) = theta.sin_cos();
            let expected = array![[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]];
            assert!(max_diff(&e, &expected) < 1e-13, "theta = {theta}");
        }
    }

    #[test]
    fn every_pade_degree_matches_taylor() {
        let base = array![
            [c(0.3, 0.1), c(-0.2, 0.4), c(0.1, 0.0)],
            [c(0.05, -0.3), c(-0.4, 0.0), c(0.2, 0.2)],
            [c(-0.1, 0.1), c(0.3, -0.1), c(0.1, -0.5)]
        ];
        let base_norm = norm1(base.view());
        // Norms landing in each degree bracket and in the squaring regime.
        for target in [0.01, 0.2, 0.9, 2.0, 5.0, 9.0] {
            let a = base.mapv(|z| z * (target / base_norm));
            let got = expm(a.view());
            let want = taylor(&a);
            let scale = want.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(max_diff(&got, &want) <= 1e-13 * scale, "norm {target}");
        }
    }

    #[test]
    fn agrees_with_nalgebra() {
        let a = array![
            [c(-0.25, 0.2), c(-0.35, 0.0), c(-0.25, 0.0), c(0.1, 0.1)],
            [c(-0.35, 0.0), c(-0.5, 0.0), c(-0.35, 0.0), c(0.0, -0.2)],
            [c(-0.25, 0.0), c(-0.35, 0.0), c(-0.25, -0.2), c(0.3, 0.0)],
            [c(0.0, 0.0), c(0.2, 0.1), c(-0.1, 0.0), c(-1.0, 0.4)]
        ];
        for t in [0.1, 1.0, 10.0, 60.0] {
            let got = expm_scaled(a.view(), t);
            let na = nalgebra::DMatrix::from_fn(4, 4, |i, j| {
                nalgebra::Complex::new(a[[i, j]].re * t, a[[i, j]].im * t)
            })
            .exp();
            let scale = got.iter().map(|z| z.norm()).fold(0.0, f64::max);
            for i in 0..4 {
                for j in 0..4 {
                    let d = c(got[[i, j]].re - na[(i, j)].re, got[[i, j]].im - na[(i, j)].im);
                    assert!(d.norm() <= 1e-12 * scale, "t = {t}, ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn group_property() {
        let a = array![
            [c(-0.25, 0.1), c(-0.35, 0.0), c(-0.25, 0.0)],
            [c(-0.35, 0.0), c(-0.5, 0.0), c(-0.35, 0.0)],
            [c(-0.25, 0.0), c(-0.35, 0.0), c(-0.25, -0.1)]
        ];
        let whole = expm_scaled(a.view(), 7.0);
        let halves = expm_scaled(a.view(), 3.0).dot(&expm_scaled(a.view(), 4.0));
        assert!(max_diff(&whole, &halves) < 1e-14);
    }

    #[test]
    fn empty_and_scalar() {
        assert_eq!(expm(Array2::<C64>::zeros((0, 0)).view()).len(), 0);
        let e = expm(array![[c(-0.5, 2.0)]].view());
        assert_eq!(e[[0, 0]], c(-0.5, 2.0).exp());
    }
}
