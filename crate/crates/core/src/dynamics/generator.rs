use std::hash::{Hash, Hasher};

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::multiplet::{validate, MultipletParams};

/// Constant rotating-frame generator `A` of `dF/dt = A F`.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    /// `A_jj = -γ_j/2 - i j ω̄`, `A_jl = -sqrt(γ_j γ_l)/2`.
    pub matrix: Array2<C64>,
    /// Identity of the parameters the generator was built from.
    pub params_hash: u64,
}

impl Generator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `A + A†`, which equals `-v vᵀ` for a correctly built generator.
    pub fn hermitian_part(&self) -> Array2<C64> {
        &self.matrix + &self.matrix.t().mapv(|z| z.conj())
    }
}

pub fn build_generator(params: &MultipletParams) -> Result<Generator> {
    let params = validate(params.clone())?;
    let v = params.sqrt_rates();
    let dim = params.dim();
    let mut matrix = Array2::from_shape_fn((dim, dim), |(j, l)| C64::new(-0.5 * v[j] * v[l], 0.0));
    for (k, level) in params.levels().enumerate() {
        // Use the rate itself on the diagonal rather than sqrt(γ)².
        matrix[[k, k]] = C64::new(-0.5 * params.gamma[k], -(level as f64) * params.omega_bar);
    }
    Ok(Generator {
        matrix,
        params_hash: params_hash(&params),
    })
}

fn params_hash(params: &MultipletParams) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    params.half_width.hash(&mut h);
    params.omega_bar.to_bits().hash(&mut h);
    for g in &params.gamma {
        g.to_bits().hash(&mut h);
    }
    for a in &params.initial {
        a.re.to_bits().hash(&mut h);
        a.im.to_bits().hash(&mut h);
    }
    h.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_photon_generator() {
        let p = MultipletParams::symmetric(1, 1.0, 0.5, 0.1).unwrap();
        let a = build_generator(&p).unwrap().matrix;
        let close = |z: C64, re: f64, im: f64| (z - C64::new(re, im)).norm() < 1e-15;
        assert!(close(a[[0, 0]], -0.25, 0.1));
        assert!(close(a[[1, 1]], -0.5, 0.0));
        assert!(close(a[[2, 2]], -0.25, -0.1));
        let cross = -(0.5f64).sqrt() / 2.0;
        for (i, j) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
            assert!(close(a[[i, j]], cross, 0.0), "({i},{j})");
        }
        assert!(close(a[[0, 2]], -0.25, 0.0));
        assert!(close(a[[2, 0]], -0.25, 0.0));
        assert!((cross + 0.353_553).abs() < 1e-6);
    }

    #[test]
    fn bare_two_level_generator() {
        let p = MultipletParams::central(0, vec![1.0], 0.3).unwrap();
        let g = build_generator(&p).unwrap();
        assert_eq!(g.dim(), 1);
        assert_eq!(g.matrix[[0, 0]], C64::new(-0.5, 0.0));
    }

    #[test]
    fn hermitian_part_is_rank_one() {
        let p = MultipletParams::central(2, vec![0.3, 2.0, 1.0, 0.0, 4.5], 0.7).unwrap();
        let g = build_generator(&p).unwrap();
        let h = g.hermitian_part();
        let v = p.sqrt_rates();
        for j in 0..5 {
            for l in 0..5 {
                assert!((h[[j, l]] + C64::new(v[j] * v[l], 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn hash_tracks_parameters() {
        let p = MultipletParams::symmetric(1, 1.0, 0.5, 0.1).unwrap();
        let a = build_generator(&p).unwrap();
        let b = build_generator(&p.clone()).unwrap();
        let c = build_generator(&p.with_omega_bar(0.2)).unwrap();
        assert_eq!(a.params_hash, b.params_hash);
        assert_ne!(a.params_hash, c.params_hash);
    }

    #[test]
    fn invalid_params_propagate() {
        let p = MultipletParams {
            half_width: 1,
            gamma: vec![1.0],
            omega_bar: 0.0,
            initial: vec![C64::new(1.0, 0.0)],
        };
        assert!(build_generator(&p).is_err());
    }
}
