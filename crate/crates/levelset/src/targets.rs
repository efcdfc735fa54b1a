//! Built-in benchmark functions and the evaluation contract they satisfy.
//!
//! Every black box the samplers and surrogates can consume implements
//! [`TargetFunction`]. The built-ins are registered under string names so a
//! config file can select them: `two_bump`, `goldstein_price`, `gauss100`,
//! `tri_synthetic`.

use nalgebra::{DMatrix, DVector};
use std::sync::{Arc, OnceLock};

use crate::design::Bounds;
use crate::error::{Error, Result};

/// A deterministic multi-input, multi-output function defined everywhere
/// inside its default bounds.
pub trait TargetFunction: Send + Sync {
    fn name(&self) -> &'static str;
    fn dims_in(&self) -> usize;
    fn dims_out(&self) -> usize;
    fn eval(&self, theta: &[f64]) -> Result<Vec<f64>>;
    /// Canonical box this function is studied on.
    fn default_bounds(&self) -> Bounds;

    fn check_dims(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != self.dims_in() {
            return Err(Error::invalid(format!(
                "{} expects {} inputs, got {}",
                self.name(),
                self.dims_in(),
                theta.len()
            )));
        }
        Ok(())
    }
}

/// Two Gaussian bumps of height 1 at (2,2) and height 2 at (-2,-2):
/// `exp(-((t1-2)^2+(t2-2)^2)) + 2 exp(-((t1+2)^2+(t2+2)^2))`.
///
/// Range is (0, 2+e^-32]; every level c in (0,1) is a pair of circles
/// centered at the two maxima.
pub struct TwoBump;

/// Scalar form of [`TwoBump`].
pub fn two_bump(t1: f64, t2: f64) -> f64 {
    let a = (t1 - 2.0).powi(2) + (t2 - 2.0).powi(2);
    let b = (t1 + 2.0).powi(2) + (t2 + 2.0).powi(2);
    (-a).exp() + 2.0 * (-b).exp()
}

impl TargetFunction for TwoBump {
    fn name(&self) -> &'static str {
        "two_bump"
    }
    fn dims_in(&self) -> usize {
        2
    }
    fn dims_out(&self) -> usize {
        1
    }
    fn eval(&self, theta: &[f64]) -> Result<Vec<f64>> {
        self.check_dims(theta)?;
        Ok(vec![two_bump(theta[0], theta[1])])
    }
    fn default_bounds(&self) -> Bounds {
        Bounds::cube(-4.0, 4.0, 2).expect("static bounds")
    }
}

/// The Goldstein-Price test landscape; global minimum 3 at (0,-1).
pub struct GoldsteinPrice;

/// Scalar form of [`GoldsteinPrice`].
pub fn goldstein_price(t1: f64, t2: f64) -> f64 {
    let first = 1.0
        + (t1 + t2 + 1.0).powi(2)
            * (19.0 - 14.0 * t1 + 3.0 * t1 * t1 - 14.0 * t2 + 6.0 * t1 * t2 + 3.0 * t2 * t2);
    let second = 30.0
        + (2.0 * t1 - 3.0 * t2).powi(2)
            * (18.0 - 32.0 * t1 + 12.0 * t1 * t1 + 48.0 * t2 - 36.0 * t1 * t2 + 27.0 * t2 * t2);
    first * second
}

impl TargetFunction for GoldsteinPrice {
    fn name(&self) -> &'static str {
        "goldstein_price"
    }
    fn dims_in(&self) -> usize {
        2
    }
    fn dims_out(&self) -> usize {
        1
    }
    fn eval(&self, theta: &[f64]) -> Result<Vec<f64>> {
        self.check_dims(theta)?;
        Ok(vec![goldstein_price(theta[0], theta[1])])
    }
    fn default_bounds(&self) -> Bounds {
        Bounds::cube(-2.0, 2.0, 2).expect("static bounds")
    }
}

/// Unnormalized 100-input Gaussian kernel scaled to peak at 10000.
///
/// Centered at mu = (1, 2, ..., 100). The covariance has 50 on the diagonal
/// plus two coupled pairs, given with 1-based input labels: Cov(x1, x2) = 30
/// and Cov(x5, x10) = -40 (label k is stored at index k-1). There is no
/// determinant prefactor, so the value at mu is exactly 10000.
pub struct Gauss100 {
    mu: DVector<f64>,
    sigma_inv: DMatrix<f64>,
}

pub const GAUSS100_DIM: usize = 100;
pub const GAUSS100_PEAK: f64 = 10_000.0;

impl Gauss100 {
    /// Builds the covariance, verifies it is positive definite, and caches
    /// its dense inverse for the quadratic form.
    pub fn new() -> Self {
        let d = GAUSS100_DIM;
        let mut sigma = DMatrix::from_diagonal_element(d, d, 50.0);
        sigma[(0, 1)] = 30.0;
        sigma[(1, 0)] = 30.0;
        sigma[(4, 9)] = -40.0;
        sigma[(9, 4)] = -40.0;
        let chol = nalgebra::Cholesky::new(sigma).expect("gauss100 covariance must be positive definite");
        let sigma_inv = chol.inverse();
        let mu = DVector::from_iterator(d, (1..=d).map(|i| i as f64));
        Gauss100 { mu, sigma_inv }
    }

    pub fn mu(&self) -> &[f64] {
        self.mu.as_slice()
    }

    fn quad_form(&self, theta: &[f64]) -> f64 {
        let delta = DVector::from_row_slice(theta) - &self.mu;
        (&self.sigma_inv * &delta).dot(&delta)
    }
}

impl Default for Gauss100 {
    fn default() -> Self {
        Self::new()
    }
}

impl TargetFunction for Gauss100 {
    fn name(&self) -> &'static str {
        "gauss100"
    }
    fn dims_in(&self) -> usize {
        GAUSS100_DIM
    }
    fn dims_out(&self) -> usize {
        1
    }
    fn eval(&self, theta: &[f64]) -> Result<Vec<f64>> {
        self.check_dims(theta)?;
        Ok(vec![GAUSS100_PEAK * (-0.5 * self.quad_form(theta)).exp()])
    }
    fn default_bounds(&self) -> Bounds {
        let lower = (1..=GAUSS100_DIM).map(|i| i as f64 - 30.0).collect();
        let upper = (1..=GAUSS100_DIM).map(|i| i as f64 + 30.0).collect();
        Bounds::new(lower, upper).expect("static bounds")
    }
}

/// Three smooth responses on the unit cube used by the multi-response demos:
/// `s1 = t1`, `s2 = t2`, `s3 = (t1 + t2) / 2`.
///
/// Because s3 is determined by s1 and s2, target vectors with
/// c3 = (c1 + c2) / 2 have a nonempty simultaneous level set (a segment in
/// t3), while any other c3 forces the chain into a tolerance-weighted
/// compromise.
pub struct TriSynthetic;

impl TargetFunction for TriSynthetic {
    fn name(&self) -> &'static str {
        "tri_synthetic"
    }
    fn dims_in(&self) -> usize {
        3
    }
    fn dims_out(&self) -> usize {
        3
    }
    fn eval(&self, theta: &[f64]) -> Result<Vec<f64>> {
        self.check_dims(theta)?;
        Ok(vec![
            theta[0],
            theta[1],
            0.5 * (theta[0] + theta[1]),
        ])
    }
    fn default_bounds(&self) -> Bounds {
        Bounds::cube(0.0, 1.0, 3).expect("static bounds")
    }
}

/// All built-in functions, in registration order.
pub fn builtin_targets() -> &'static [Arc<dyn TargetFunction>] {
    static REGISTRY: OnceLock<Vec<Arc<dyn TargetFunction>>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        vec![
            Arc::new(TwoBump),
            Arc::new(GoldsteinPrice),
            Arc::new(Gauss100::new()),
            Arc::new(TriSynthetic),
        ]
    })
}

/// Look up a built-in function by its registered name.
pub fn target_by_name(name: &str) -> Result<Arc<dyn TargetFunction>> {
    builtin_targets()
        .iter()
        .find(|t| t.name() == name)
        .cloned()
        .ok_or_else(|| {
            let known: Vec<&str> = builtin_targets().iter().map(|t| t.name()).collect();
            Error::invalid(format!(
                "unknown target function {name:?}; available: {}",
                known.join(", ")
            ))
        })
}
