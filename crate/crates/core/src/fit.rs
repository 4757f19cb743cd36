//! Grid-search fit of `y = c * x^alpha`.
//!
//! For each exponent on the grid the coefficient has a closed form
//! (`c = sum(b*y) / sum(b*b)` with `b = x^alpha`), so the search is over
//! `alpha` alone and picks the smallest root-mean-square residual. Ties go
//! to the smaller exponent.

use std::cmp::Ordering;

use num_traits::Float;

use crate::error::{HeapError, Result};

pub const MIN_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<F> {
    pub start: F,
    pub stop: F,
    pub step: F,
}

impl<F: Float> Grid<F> {
    /// `0.0 ..= 1.5` in steps of `0.05`.
    pub fn standard() -> Self {
        Grid { start: F::zero(), stop: lit(1.5), step: lit(0.05) }
    }

    pub fn points(&self) -> Vec<F> {
        let steps = ((self.stop - self.start) / self.step + lit(1e-9)).floor().to_usize().unwrap_or(0);
        (0..=steps).map(|i| self.start + self.step * F::from(i).unwrap()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult<F> {
    pub alpha: F,
    pub c: F,
    pub rmse: F,
    pub grid: Grid<F>,
}

impl<F: Float> FitResult<F> {
    /// Root-mean-square residual relative to the mean of the fitted data.
    pub fn relative_rmse(&self, ys: &[F]) -> F {
        let mean = ys.iter().fold(F::zero(), |a, &y| a + y) / F::from(ys.len().max(1)).unwrap();
        if mean == F::zero() {
            self.rmse
        } else {
            self.rmse / mean.abs()
        }
    }
}

fn lit<F: Float>(v: f64) -> F {
    F::from(v).expect("literal fits the float type")
}

/// Fits `ys ~ c * xs^alpha` over `grid`. All `xs` must be positive.
pub fn fit_power_law<F: Float>(xs: &[F], ys: &[F], grid: Grid<F>) -> Result<FitResult<F>> {
    if xs.len() != ys.len() {
        return Err(HeapError::Config(format!("{} xs but {} ys", xs.len(), ys.len())));
    }
    if xs.len() < MIN_POINTS {
        return Err(HeapError::Config(format!("need at least {MIN_POINTS} points, got {}", xs.len())));
    }
    if xs.iter().any(|&x| x.partial_cmp(&F::zero()) != Some(Ordering::Greater)) {
        return Err(HeapError::Config("abscissae must be positive".into()));
    }
    if grid.step.partial_cmp(&F::zero()) != Some(Ordering::Greater) || grid.stop < grid.start {
        return Err(HeapError::Config("empty exponent grid".into()));
    }
    let n = F::from(xs.len()).unwrap();
    let mut best: Option<FitResult<F>> = None;
    for alpha in grid.points() {
        let basis: Vec<F> = xs.iter().map(|&x| x.powf(alpha)).collect();
        let (num, den) =
            basis.iter().zip(ys).fold((F::zero(), F::zero()), |(num, den), (&b, &y)| (num + b * y, den + b * b));
        let c = num / den;
        let sse = basis.iter().zip(ys).fold(F::zero(), |acc, (&b, &y)| {
            let r = y - c * b;
            acc + r * r
        });
        let rmse = (sse / n).sqrt();
        if best.is_none_or(|b| rmse < b.rmse) {
            best = Some(FitResult { alpha, c, rmse, grid });
        }
    }
    best.ok_or_else(|| HeapError::Config("empty exponent grid".into()))
}
