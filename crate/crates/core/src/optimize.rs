//! Deterministic derivative-free minimization: an exhaustive grid followed by
//! coordinate descent with a shrinking step.

use serde::{Deserialize, Serialize};

/// A candidate replaces the incumbent only if it is lower by more than this,
/// so rounding noise cannot move the optimum off a tied grid point.
pub const IMPROVEMENT_TOL: f64 = 1e-13;

/// One search coordinate, sampled at `lower + k·(upper − lower)/points` for
/// `k = 0..points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lower: f64,
    pub upper: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(lower: f64, upper: f64, points: usize) -> Self {
        assert!(points > 0 && upper > lower, "axis needs points > 0 and upper > lower");
        Self { lower, upper, points }
    }

    pub fn spacing(&self) -> f64 {
        (self.upper - self.lower) / self.points as f64
    }

    fn value(&self, k: usize) -> f64 {
        self.lower + k as f64 * self.spacing()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSettings {
    pub refine_iterations: usize,
    /// Greedy moves allowed per axis and iteration before the step shrinks.
    pub moves_per_axis: usize,
}

impl Default for SearchSettings {
    fn default() -> Self {
        Self { refine_iterations: 32, moves_per_axis: 8 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// Minimizes `f` over the product grid of `axes`, then polishes the best grid
/// point by coordinate descent. Grid points are visited in lexicographic
/// order and only improvements beyond [`IMPROVEMENT_TOL`] replace the
/// incumbent, so ties resolve to the lexicographically smallest point.
pub fn grid_coordinate_descent<F>(axes: &[Axis], settings: SearchSettings, mut f: F) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut best_point: Vec<f64> = axes.iter().map(|a| a.value(0)).collect();
    let mut best = f64::INFINITY;
    if axes.is_empty() {
        best = eval(&best_point);
    } else {
        let mut idx = vec![0usize; axes.len()];
        let mut point = best_point.clone();
        'grid: loop {
            for (k, a) in axes.iter().enumerate() {
                point[k] = a.value(idx[k]);
            }
            let v = eval(&point);
            if v < best - IMPROVEMENT_TOL || (best.is_infinite() && v < best) {
                best = v;
                best_point.clone_from(&point);
            }
            let mut k = axes.len();
            loop {
                if k == 0 {
                    break 'grid;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < axes[k].points {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    let mut steps: Vec<f64> = axes.iter().map(Axis::spacing).collect();
    let mut trial = best_point.clone();
    for _ in 0..settings.refine_iterations {
        for k in 0..axes.len() {
            for dir in [-1.0, 1.0] {
                for _ in 0..settings.moves_per_axis {
                    trial[k] = best_point[k] + dir * steps[k];
                    let v = eval(&trial);
                    if v < best - IMPROVEMENT_TOL {
                        best = v;
                        best_point[k] = trial[k];
                    } else {
                        trial[k] = best_point[k];
                        break;
                    }
                }
            }
        }
        steps.iter_mut().for_each(|s| *s *= 0.5);
    }

    Minimum { point: best_point, value: best, evaluations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_off_grid_minimum() {
        let axes = [Axis::new(0.0, 1.0, 8), Axis::new(-1.0, 1.0, 8)];
        let m = grid_coordinate_descent(&axes, SearchSettings::default(), |x| {
            (x[0] - 0.3141).powi(2) + 2.0 * (x[1] + 0.2718).powi(2)
        });
        assert!((m.point[0] - 0.3141).abs() < 1e-6);
        assert!((m.point[1] + 0.2718).abs() < 1e-6);
        assert!(m.value < 1e-12);
    }

    #[test]
    fn ties_go_to_smallest_point() {
        let axes = [Axis::new(0.0, 4.0, 4)];
        let m = grid_coordinate_descent(&axes, SearchSettings { refine_iterations: 0, moves_per_axis: 0 }, |_| 1.0);
        assert_eq!(m.point, vec![0.0]);
        assert_eq!(m.evaluations, 4);
    }

    #[test]
    fn periodic_objective() {
        let tau = std::f64::consts::TAU;
        let axes = [Axis::new(0.0, tau, 64)];
        let m = grid_coordinate_descent(&axes, SearchSettings::default(), |x| (x[0] - 1.0).cos());
        assert!((m.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic() {
        let axes = [Axis::new(0.0, 3.0, 5), Axis::new(0.0, 3.0, 5)];
        let f = |x: &[f64]| (x[0] * 1.7).sin() * (x[1] * 0.9).cos();
        let a = grid_coordinate_descent(&axes, SearchSettings::default(), f);
        let b = grid_coordinate_descent(&axes, SearchSettings::default(), f);
        assert_eq!(a, b);
    }
}
