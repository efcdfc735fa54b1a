//! Space-filling input designs and coordinate scaling.
//!
//! Input configurations live in a rectangular box in natural units. A Latin
//! hypercube design places `n` points so that every axis has exactly one
//! point in each of the `n` equal-width strata. Samplers and the GP surrogate
//! work on coordinates affinely scaled to the unit cube; everything
//! user-facing stays in natural units.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::targets::TargetFunction;

/// Per-input box bounds in natural units.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    /// Build bounds, checking `lower[i] < upper[i]` componentwise.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::invalid(format!(
                "bounds need matching non-empty lower/upper, got {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::invalid(format!(
                    "bounds[{i}] must satisfy lower < upper with finite values, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Bounds { lower, upper })
    }

    /// Same interval on every axis.
    pub fn cube(lo: f64, hi: f64, dim: usize) -> Result<Self> {
        Bounds::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Closed-box membership test.
    pub fn contains(&self, theta: &[f64]) -> bool {
        theta.len() == self.dim()
            && theta
                .iter()
                .zip(&self.lower)
                .zip(&self.upper)
                .all(|((t, lo), hi)| *t >= *lo && *t <= *hi)
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| 0.5 * (lo + hi))
            .collect()
    }
}

/// Design points with optional observed responses, both in natural units.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    /// n x d matrix of input configurations.
    pub points: DMatrix<f64>,
    /// n x m matrix of responses, one column per response, if evaluated.
    pub responses: Option<DMatrix<f64>>,
}

impl Design {
    pub fn n_points(&self) -> usize {
        self.points.nrows()
    }

    pub fn dim(&self) -> usize {
        self.points.ncols()
    }

    pub fn n_responses(&self) -> usize {
        self.responses.as_ref().map_or(0, DMatrix::ncols)
    }

    pub fn point(&self, i: usize) -> Vec<f64> {
        self.points.row(i).iter().copied().collect()
    }
}

/// Randomized Latin hypercube: one point per stratum per axis, uniform jitter
/// within each stratum. Deterministic for a given `(n, bounds, seed)`.
pub fn latin_hypercube(n: usize, bounds: &Bounds, seed: u64) -> Result<Design> {
    if n == 0 {
        return Err(Error::invalid("latin hypercube needs n >= 1"));
    }
    let d = bounds.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = DMatrix::zeros(n, d);
    let mut strata: Vec<usize> = (0..n).collect();
    for j in 0..d {
        shuffle(&mut strata, &mut rng);
        let lo = bounds.lower[j];
        let width = (bounds.upper[j] - bounds.lower[j]) / n as f64;
        for (i, &k) in strata.iter().enumerate() {
            let jitter: f64 = rng.gen();
            points[(i, j)] = lo + (k as f64 + jitter) * width;
        }
    }
    Ok(Design {
        points,
        responses: None,
    })
}

fn shuffle(xs: &mut [usize], rng: &mut ChaCha8Rng) {
    for i in (1..xs.len()).rev() {
        let j = rng.gen_range(0..=i);
        xs.swap(i, j);
    }
}

/// Map a point from natural units onto the unit cube.
pub fn scale_to_unit(theta: &[f64], bounds: &Bounds) -> Result<Vec<f64>> {
    if theta.len() != bounds.dim() {
        return Err(Error::invalid(format!(
            "point has {} components, bounds have {}",
            theta.len(),
            bounds.dim()
        )));
    }
    if !bounds.contains(theta) {
        return Err(Error::OutOfSupport(format!(
            "point {theta:?} lies outside bounds"
        )));
    }
    Ok(theta
        .iter()
        .zip(bounds.lower.iter().zip(&bounds.upper))
        .map(|(t, (lo, hi))| (t - lo) / (hi - lo))
        .collect())
}

/// Inverse of [`scale_to_unit`].
pub fn unscale_from_unit(unit: &[f64], bounds: &Bounds) -> Result<Vec<f64>> {
    if unit.len() != bounds.dim() {
        return Err(Error::invalid(format!(
            "point has {} components, bounds have {}",
            unit.len(),
            bounds.dim()
        )));
    }
    Ok(unit
        .iter()
        .zip(bounds.lower.iter().zip(&bounds.upper))
        .map(|(u, (lo, hi))| lo + u * (hi - lo))
        .collect())
}

/// Fill the response columns by applying `f` to each design point in order.
pub fn evaluate_design(design: &Design, f: &dyn TargetFunction) -> Result<Design> {
    if design.dim() != f.dims_in() {
        return Err(Error::invalid(format!(
            "design has {} inputs, target expects {}",
            design.dim(),
            f.dims_in()
        )));
    }
    let n = design.n_points();
    let m = f.dims_out();
    let mut responses = DMatrix::zeros(n, m);
    for i in 0..n {
        let theta = design.point(i);
        let y = f.eval(&theta).map_err(|e| Error::Evaluation {
            row: i,
            message: e.to_string(),
        })?;
        if y.len() != m {
            return Err(Error::Evaluation {
                row: i,
                message: format!("target returned {} responses, declared {}", y.len(), m),
            });
        }
        for (j, v) in y.iter().enumerate() {
            responses[(i, j)] = *v;
        }
    }
    Ok(Design {
        points: design.points.clone(),
        responses: Some(responses),
    })
}

/// Format a float with 17 significant digits, enough to round-trip f64.
pub(crate) fn fmt_full(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write a design as CSV: `theta_1..theta_d[,response_1..response_m]`.
pub fn write_design_csv<P: AsRef<Path>>(design: &Design, path: P) -> Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    let d = design.dim();
    let m = design.n_responses();
    let mut header: Vec<String> = (1..=d).map(|j| format!("theta_{j}")).collect();
    header.extend((1..=m).map(|j| format!("response_{j}")));
    writeln!(file, "{}", header.join(","))?;
    for i in 0..design.n_points() {
        let mut row: Vec<String> = design.points.row(i).iter().map(|x| fmt_full(*x)).collect();
        if let Some(resp) = &design.responses {
            row.extend(resp.row(i).iter().map(|x| fmt_full(*x)));
        }
        writeln!(file, "{}", row.join(","))?;
    }
    Ok(())
}

/// Read a design CSV written by [`write_design_csv`].
pub fn read_design_csv<P: AsRef<Path>>(path: P) -> Result<Design> {
    let file = BufReader::new(std::fs::File::open(path)?);
    let mut lines = file.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("design file is empty".into()))??;
    let cols: Vec<&str> = header.split(',').collect();
    let d = cols.iter().filter(|c| c.starts_with("theta_")).count();
    let m = cols.iter().filter(|c| c.starts_with("response_")).count();
    if d == 0 || d + m != cols.len() {
        return Err(Error::Format(format!("unrecognized design header: {header}")));
    }
    let mut values: Vec<f64> = Vec::new();
    let mut n = 0;
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != d + m {
            return Err(Error::Format(format!(
                "row {n} has {} fields, expected {}",
                fields.len(),
                d + m
            )));
        }
        for f in fields {
            values.push(
                f.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Format(format!("bad number {f:?}: {e}")))?,
            );
        }
        n += 1;
    }
    if n == 0 {
        return Err(Error::Format("design file has no data rows".into()));
    }
    let all = DMatrix::from_row_slice(n, d + m, &values);
    let points = all.columns(0, d).into_owned();
    let responses = (m > 0).then(|| all.columns(d, m).into_owned());
    Ok(Design { points, responses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::targets::{self, TargetFunction};
    use proptest::prelude::*;

    #[test]
    fn bounds_reject_bad_input() {
        assert!(Bounds::new(vec![], vec![]).is_err());
        assert!(Bounds::new(vec![0.0], vec![0.0]).is_err());
        assert!(Bounds::new(vec![1.0], vec![0.0]).is_err());
        assert!(Bounds::new(vec![0.0, 0.0], vec![1.0]).is_err());
    }

    #[test]
    fn lhs_rejects_zero_points() {
        let b = Bounds::cube(0.0, 1.0, 2).unwrap();
        assert!(matches!(
            latin_hypercube(0, &b, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn lhs_single_point_lies_inside() {
        let b = Bounds::cube(0.0, 1.0, 1).unwrap();
        let design = latin_hypercube(1, &b, 99).unwrap();
        let x = design.points[(0, 0)];
        assert!(x > 0.0 && x < 1.0);
    }

    #[test]
    fn lhs_four_points_fill_unit_strata() {
        // Direct binning oracle: sorted points land in (0,1),(1,2),(2,3),(3,4).
        let b = Bounds::cube(0.0, 4.0, 1).unwrap();
        let design = latin_hypercube(4, &b, 7).unwrap();
        let mut xs: Vec<f64> = design.points.column(0).iter().copied().collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (k, x) in xs.iter().enumerate() {
            assert!(
                *x > k as f64 && *x < (k + 1) as f64,
                "point {x} not in stratum ({k}, {})",
                k + 1
            );
        }
    }

    #[test]
    fn lhs_fifty_points_stratified_both_axes() {
        let b = Bounds::cube(0.0, 1.0, 2).unwrap();
        let design = latin_hypercube(50, &b, 123).unwrap();
        assert_eq!(design.n_points(), 50);
        for j in 0..2 {
            let mut seen = vec![false; 50];
            for i in 0..50 {
                let stratum = (design.points[(i, j)] * 50.0).floor() as usize;
                assert!(!seen[stratum], "axis {j} stratum {stratum} hit twice");
                seen[stratum] = true;
            }
            assert!(seen.iter().all(|s| *s));
        }
    }

    #[test]
    fn lhs_deterministic_per_seed() {
        let b = Bounds::new(vec![-4.0, 0.0], vec![4.0, 10.0]).unwrap();
        let a = latin_hypercube(20, &b, 42).unwrap();
        let c = latin_hypercube(20, &b, 42).unwrap();
        assert_eq!(a, c);
        let d = latin_hypercube(20, &b, 43).unwrap();
        assert_ne!(a, d);
    }

    #[test]
    fn scaling_hits_known_values() {
        let b = Bounds::new(vec![2400.0], vec![2425.94]).unwrap();
        let u = scale_to_unit(&[2412.97], &b).unwrap();
        assert!((u[0] - 0.5).abs() < 1e-12);

        let b2 = Bounds::new(vec![-1.0, 2.0], vec![3.0, 5.0]).unwrap();
        assert_eq!(scale_to_unit(&[-1.0, 2.0], &b2).unwrap(), vec![0.0, 0.0]);
        assert_eq!(scale_to_unit(&[3.0, 5.0], &b2).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn scaling_rejects_out_of_support() {
        let b = Bounds::cube(0.0, 1.0, 2).unwrap();
        assert!(matches!(
            scale_to_unit(&[0.5, 1.1], &b),
            Err(Error::OutOfSupport(_))
        ));
        assert!(matches!(
            scale_to_unit(&[0.5], &b),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn evaluate_design_constant_function() {
        struct One;
        impl TargetFunction for One {
            fn name(&self) -> &'static str {
                "one"
            }
            fn dims_in(&self) -> usize {
                2
            }
            fn dims_out(&self) -> usize {
                1
            }
            fn eval(&self, _theta: &[f64]) -> Result<Vec<f64>> {
                Ok(vec![1.0])
            }
            fn default_bounds(&self) -> Bounds {
                Bounds::cube(0.0, 1.0, 2).unwrap()
            }
        }
        let design = Design {
            points: DMatrix::from_row_slice(2, 2, &[0.1, 0.2, 0.3, 0.4]),
            responses: None,
        };
        let out = evaluate_design(&design, &One).unwrap();
        let r = out.responses.unwrap();
        assert_eq!(r.as_slice(), &[1.0, 1.0]);
    }

    #[test]
    fn evaluate_design_known_function_values() {
        let design = Design {
            points: DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 0.0, 0.0]),
            responses: None,
        };
        let gp = targets::GoldsteinPrice;
        let out = evaluate_design(&design, &gp).unwrap();
        let r = out.responses.unwrap();
        assert!((r[(0, 0)] - 3.0).abs() < 1e-12 * 3.0);

        let tb = targets::TwoBump;
        let out = evaluate_design(&design, &tb).unwrap();
        let r = out.responses.unwrap();
        assert!((r[(1, 0)] - 3.0 * (-8.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn evaluate_design_reports_failing_row() {
        struct FailsAt1;
        impl TargetFunction for FailsAt1 {
            fn name(&self) -> &'static str {
                "fails"
            }
            fn dims_in(&self) -> usize {
                1
            }
            fn dims_out(&self) -> usize {
                1
            }
            fn eval(&self, theta: &[f64]) -> Result<Vec<f64>> {
                if theta[0] > 0.5 {
                    Err(Error::invalid("boom"))
                } else {
                    Ok(vec![0.0])
                }
            }
            fn default_bounds(&self) -> Bounds {
                Bounds::cube(0.0, 1.0, 1).unwrap()
            }
        }
        let design = Design {
            points: DMatrix::from_row_slice(2, 1, &[0.0, 1.0]),
            responses: None,
        };
        match evaluate_design(&design, &FailsAt1) {
            Err(Error::Evaluation { row, .. }) => assert_eq!(row, 1),
            other => panic!("expected evaluation error, got {other:?}"),
        }
    }

    #[test]
    fn design_csv_round_trip() {
        let b = Bounds::cube(-4.0, 4.0, 2).unwrap();
        let design = latin_hypercube(10, &b, 5).unwrap();
        let design = evaluate_design(&design, &targets::TwoBump).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("design.csv");
        write_design_csv(&design, &path).unwrap();
        let back = read_design_csv(&path).unwrap();
        assert_eq!(design, back);
    }

    proptest! {
        #[test]
        fn scale_round_trips(
            lo in -100.0f64..100.0,
            width in 0.001f64..1000.0,
            frac in 0.0f64..=1.0,
        ) {
            let b = Bounds::new(vec![lo], vec![lo + width]).unwrap();
            let theta = lo + frac * width;
            let theta = theta.clamp(lo, lo + width);
            let back = unscale_from_unit(&scale_to_unit(&[theta], &b).unwrap(), &b).unwrap();
            let tol = 4.0 * f64::EPSILON * (1.0 + theta.abs());
            prop_assert!((back[0] - theta).abs() <= tol);
        }

        #[test]
        fn lhs_stratification_holds(n in 1usize..40, seed in 0u64..1000) {
            let b = Bounds::new(vec![-3.0, 10.0], vec![5.0, 11.0]).unwrap();
            let design = latin_hypercube(n, &b, seed).unwrap();
            for j in 0..2 {
                let mut seen = vec![false; n];
                for i in 0..n {
                    let u = scale_to_unit(&design.point(i), &b).unwrap();
                    let stratum = ((u[j] * n as f64).floor() as usize).min(n - 1);
                    prop_assert!(!seen[stratum]);
                    seen[stratum] = true;
                }
            }
        }
    }
}
