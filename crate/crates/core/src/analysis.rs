//! Fidelity landscapes over real parameters.
//!
//! Everything here works with real `a, b, p, q` and `q = +√(1 − p²) ≥ 0`,
//! where `F₂` depends on the input only through `ab` and `A = a²b²`:
//!
//! ```text
//! F₂(ab, q) = (1 − 2A)(1 − q²/2) + q·ab + A
//! ```
//!
//! `p = 0` is never evaluated. Extrema that sit at `p → 0⁺` are reported as
//! limits obtained by substituting `q = 1`.

use crate::error::{Error, Result};
use crate::fidelity::{f1_real, f1_real_printed, f2_real};

/// Default lower end of `p` grids.
pub const P_GRID_MIN: f64 = 1e-3;
/// Bisection stops once the bracket is narrower than this.
pub const ROOT_TOL: f64 = 1e-9;
/// Points in the sign scan that brackets roots.
pub const ROOT_SCAN_POINTS: usize = 1001;

/// Which retention-fidelity expression a sweep reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RetentionForm {
    /// `1 − 2a²b²(1 − q)`, agrees with the simulated reduced state.
    #[default]
    Simulated,
    /// `1 − 2a²b²(1 + q)`, the printed form with the flipped `q` sign.
    Printed,
}

impl RetentionForm {
    pub fn evaluate(self, a: f64, b: f64, q: f64) -> f64 {
        match self {
            RetentionForm::Simulated => f1_real(a, b, q),
            RetentionForm::Printed => f1_real_printed(a, b, q),
        }
    }
}

/// `q = +√(1 − p²)`.
pub fn q_from_p(p: f64) -> f64 {
    (1.0 - p * p).max(0.0).sqrt()
}

/// Real input pair with `a ≥ |b|` and `a·b = ab`.
pub fn real_pair_for_ab(ab: f64) -> Result<(f64, f64)> {
    if !ab.is_finite() || ab.abs() > 0.5 {
        return Err(Error::Domain(format!(
            "infeasible ab = {ab}: need |ab| ≤ 0.5"
        )));
    }
    let disc = (1.0 - 4.0 * ab * ab).max(0.0).sqrt();
    let a = ((1.0 + disc) / 2.0).sqrt();
    Ok((a, ab / a))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepVariable {
    /// Sweep `p` for a fixed real input.
    P { a: f64, b: f64 },
    /// Sweep `ab` for fixed `p`.
    Ab { p: f64 },
    /// Sweep `a` (with `b = +√(1 − a²)`) for fixed `p`.
    A { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub grid_min: f64,
    pub grid_max: f64,
    pub steps: usize,
    pub retention: RetentionForm,
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "p = {p} outside (0, 1]; p ≠ 0 is required"
        )))
    }
}

impl SweepSpec {
    pub fn new(
        variable: SweepVariable,
        grid_min: f64,
        grid_max: f64,
        steps: usize,
    ) -> Result<Self> {
        if !(grid_min.is_finite() && grid_max.is_finite()) || grid_min > grid_max {
            return Err(Error::Domain(format!("bad grid [{grid_min}, {grid_max}]")));
        }
        if steps == 0 || (steps == 1 && grid_min != grid_max) {
            return Err(Error::Domain(format!(
                "steps = {steps} cannot span [{grid_min}, {grid_max}]"
            )));
        }
        match variable {
            SweepVariable::P { a, b } => {
                if !(grid_min > 0.0 && grid_max <= 1.0) {
                    return Err(Error::Domain("p grid must lie in (0, 1]".into()));
                }
                if !(a.is_finite() && b.is_finite()) || (a * a + b * b - 1.0).abs() > 1e-12 {
                    return Err(Error::Domain(format!(
                        "input (a, b) = ({a}, {b}) violates a² + b² = 1"
                    )));
                }
            }
            SweepVariable::Ab { p } => {
                check_p(p)?;
                if !(grid_min >= -0.5 && grid_max <= 0.5) {
                    return Err(Error::Domain("ab grid must lie in [−0.5, 0.5]".into()));
                }
            }
            SweepVariable::A { p } => {
                check_p(p)?;
                if !(grid_min >= 0.0 && grid_max <= 1.0) {
                    return Err(Error::Domain("a grid must lie in [0, 1]".into()));
                }
            }
        }
        Ok(Self {
            variable,
            grid_min,
            grid_max,
            steps,
            retention: RetentionForm::default(),
        })
    }

    pub fn with_retention(mut self, retention: RetentionForm) -> Self {
        self.retention = retention;
        self
    }

    pub fn grid(&self) -> Vec<f64> {
        uniform_grid(self.grid_min, self.grid_max, self.steps)
    }

    /// Real `(a, b, q)` at grid value `x`.
    fn point(&self, x: f64) -> Result<(f64, f64, f64)> {
        Ok(match self.variable {
            SweepVariable::P { a, b } => (a, b, q_from_p(x)),
            SweepVariable::Ab { p } => {
                let (a, b) = real_pair_for_ab(x)?;
                (a, b, q_from_p(p))
            }
            SweepVariable::A { p } => (x, (1.0 - x * x).max(0.0).sqrt(), q_from_p(p)),
        })
    }
}

/// `steps` evenly spaced points from `lo` to `hi`, endpoints included.
pub fn uniform_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        n => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + h * i as f64 })
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub f1: f64,
    pub f2: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    let rows = spec
        .grid()
        .into_iter()
        .map(|x| {
            let (a, b, q) = spec.point(x)?;
            let f1 = spec.retention.evaluate(a, b, q);
            let f2 = f2_real(a, b, q);
            Ok(SweepRow {
                x,
                f1,
                f2,
                delta: f2 - f1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { spec: *spec, rows })
}

fn check_open_ab(ab: f64) -> Result<()> {
    if ab.is_finite() && ab.abs() < 0.5 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "ab = {ab}: need |ab| < 0.5, otherwise the optimum needs q = ±1 and p = 0, but p ≠ 0 is required"
        )))
    }
}

/// Stationary point of `F₂` in `q`: `q* = ab / (1 − 2a²b²)`.
pub fn optimal_q(ab: f64) -> Result<f64> {
    check_open_ab(ab)?;
    Ok(ab / (1.0 - 2.0 * ab * ab))
}

/// `p* = √(1 − q*²)`.
pub fn optimal_p(ab: f64) -> Result<f64> {
    Ok(q_from_p(optimal_q(ab)?))
}

/// Best deletion fidelity for a given `ab`, evaluated as `F₂(ab, q*)`.
pub fn max_f2(ab: f64) -> Result<f64> {
    let q = optimal_q(ab)?;
    let (a, b) = real_pair_for_ab(ab)?;
    Ok(f2_real(a, b, q))
}

/// `1 − A + A / (2(1 − 2A))`, the substituted optimum.
pub fn max_f2_formula(ab: f64) -> f64 {
    let w = ab * ab;
    1.0 - w + w / (2.0 * (1.0 - 2.0 * w))
}

/// `1 − A + A / (1 − 2A)`: the optimum as commonly printed, missing a factor 2.
/// Exceeds one for most `ab`; kept only to document the discrepancy.
pub fn max_f2_printed(ab: f64) -> f64 {
    let w = ab * ab;
    1.0 - w + w / (1.0 - 2.0 * w)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimax {
    /// Input amplitude `a` at the optimum (`a ≥ b ≥ 0`).
    pub a: f64,
    /// `A* = a²b²`.
    pub overlap_weight: f64,
    /// Smallest best-achievable deletion fidelity.
    pub value: f64,
    /// Same minimum from a dense grid over `A`.
    pub grid_value: f64,
    pub grid_overlap_weight: f64,
}

/// Points in the grid cross-check of [`minimax_f2`].
pub const MINIMAX_GRID_POINTS: usize = 1_000_000;

/// Minimum over inputs of the best achievable `F₂`.
///
/// With `g(A) = 1 − A + A/(2(1 − 2A))`, `g′(A) = 0` gives
/// `(1 − 2A)² = 1/2`, i.e. `A* = (1 − 1/√2)/2`.
pub fn minimax_f2() -> Minimax {
    let g = |w: f64| 1.0 - w + w / (2.0 * (1.0 - 2.0 * w));
    let w_star = (1.0 - std::f64::consts::FRAC_1_SQRT_2) / 2.0;
    let a = ((1.0 + (1.0 - 4.0 * w_star).sqrt()) / 2.0).sqrt();

    let (grid_overlap_weight, grid_value) = uniform_grid(0.001, 0.249, MINIMAX_GRID_POINTS)
        .into_iter()
        .map(|w| (w, g(w)))
        .fold((f64::NAN, f64::INFINITY), |best, cur| {
            if cur.1 < best.1 {
                cur
            } else {
                best
            }
        });

    Minimax {
        a,
        overlap_weight: w_star,
        value: g(w_star),
        grid_value,
        grid_overlap_weight,
    }
}

/// Finds a root of `f` in `[lo, hi]` given `f(lo) ≤ 0 < f(hi)`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `F₂(ab, q) − F₂(ab, 0) = q·ab − (q²/2)(1 − 2a²b²)`: gain over the
/// Pati-Braunstein machine. Vanishes identically at `q = 0`.
pub fn gain_over_pb(ab: f64, q: f64) -> f64 {
    q * ab - 0.5 * q * q * (1.0 - 2.0 * ab * ab)
}

/// Smallest `ab` above which the machine with real `p` strictly beats the
/// Pati-Braunstein deletion fidelity, or `None` if it never does.
pub fn crossover_ab(p: f64) -> Result<Option<f64>> {
    check_p(p)?;
    let q = q_from_p(p);
    let gain = |x: f64| gain_over_pb(x, q);
    let grid = uniform_grid(-0.5, 0.5, ROOT_SCAN_POINTS);
    for pair in grid.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if gain(lo) <= 0.0 && gain(hi) > 0.0 {
            return Ok(Some(bisect(gain, lo, hi, ROOT_TOL)));
        }
    }
    Ok(None)
}

/// `ab` maximizing `F₂` at fixed `p`, from `∂F₂/∂(ab) = q − 2ab·p² = 0`.
pub fn interior_max_ab(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(q_from_p(p) / (2.0 * p * p))
}

/// Index of the smallest value; the first (smallest x) wins ties.
fn argmin(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v < values[best] { i } else { best })
}

fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v > values[best] { i } else { best })
}

fn population_sd(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt()
}

/// One row of the `ab`-keyed table: extrema of `F₂` over `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Row {
    pub ab: f64,
    pub f2_min: f64,
    pub p_at_min: f64,
    /// Minimum reached only as `p → 0⁺`.
    pub min_is_limit: bool,
    pub f2_max: f64,
    pub p_at_max: f64,
    pub max_is_limit: bool,
    /// Population standard deviation of `F₂` over the uniform `p` grid.
    pub f2_sd: f64,
}

/// One row of the `p`-keyed table: extrema of `F₂` over `ab`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table2Row {
    pub p: f64,
    pub f2_min: f64,
    pub ab_at_min: f64,
    /// The minimum is attained at both `±ab_at_min`.
    pub min_is_symmetric: bool,
    pub f2_max: f64,
    pub ab_at_max: f64,
    pub max_is_interior: bool,
}

pub const TABLE1_AB: [f64; 8] = [-0.25, -0.10, 0.10, 0.25, 0.30, 0.35, 0.40, 0.45];
pub const TABLE2_P: [f64; 8] = [0.25, 0.5, 0.75, 0.9, 0.95, 0.99, 0.999, 1.0];

pub fn default_table1_grid() -> SweepSpec {
    SweepSpec::new(SweepVariable::P { a: 1.0, b: 0.0 }, P_GRID_MIN, 1.0, 1000).expect("static grid")
}

pub fn default_table2_grid() -> SweepSpec {
    SweepSpec::new(SweepVariable::Ab { p: 1.0 }, -0.5, 0.5, 1001).expect("static grid")
}

/// Extrema and spread of `F₂` over the `p` grid for each `ab`.
///
/// Only the grid bounds and step count of `p_grid` are used. Minima at the
/// lowest grid point are replaced by their `p → 0⁺` limit; when the interior
/// optimum `q*` is feasible the maximum is taken there.
pub fn build_table1(ab_values: &[f64], p_grid: &SweepSpec) -> Result<Vec<Table1Row>> {
    if !(p_grid.grid_min > 0.0 && p_grid.grid_max <= 1.0) {
        return Err(Error::Domain("p grid must lie in (0, 1]".into()));
    }
    let ps = p_grid.grid();
    ab_values
        .iter()
        .map(|&ab| {
            let (a, b) = real_pair_for_ab(ab)?;
            let f2: Vec<f64> = ps.iter().map(|&p| f2_real(a, b, q_from_p(p))).collect();

            let i_min = argmin(&f2);
            let (f2_min, p_at_min, min_is_limit) = if i_min == 0 {
                (f2_real(a, b, 1.0), 0.0, true)
            } else {
                (f2[i_min], ps[i_min], false)
            };

            let interior = optimal_q(ab).ok().and_then(|q| {
                let p = q_from_p(q);
                (q >= 0.0 && p >= p_grid.grid_min && p <= p_grid.grid_max).then_some((q, p))
            });
            let (f2_max, p_at_max, max_is_limit) = match interior {
                Some((q, p)) => (f2_real(a, b, q), p, false),
                None => {
                    let i = argmax(&f2);
                    if i == 0 {
                        (f2_real(a, b, 1.0), 0.0, true)
                    } else {
                        (f2[i], ps[i], false)
                    }
                }
            };

            Ok(Table1Row {
                ab,
                f2_min,
                p_at_min,
                min_is_limit,
                f2_max,
                p_at_max,
                max_is_limit,
                f2_sd: population_sd(&f2),
            })
        })
        .collect()
}

/// Extrema of `F₂` over the `ab` grid for each `p`.
pub fn build_table2(p_values: &[f64], ab_grid: &SweepSpec) -> Result<Vec<Table2Row>> {
    if !(ab_grid.grid_min >= -0.5 && ab_grid.grid_max <= 0.5) {
        return Err(Error::Domain("ab grid must lie in [−0.5, 0.5]".into()));
    }
    let xs = ab_grid.grid();
    p_values
        .iter()
        .map(|&p| {
            check_p(p)?;
            let q = q_from_p(p);
            let f = |ab: f64| -> Result<f64> {
                let (a, b) = real_pair_for_ab(ab)?;
                Ok(f2_real(a, b, q))
            };
            let f2 = xs.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;

            let i_min = argmin(&f2);
            let ab_at_min = xs[i_min];
            let mirrored = -ab_at_min;
            let min_is_symmetric = ab_at_min != 0.0
                && mirrored >= ab_grid.grid_min
                && mirrored <= ab_grid.grid_max
                && (f(mirrored)? - f2[i_min]).abs() <= 1e-12;

            let ab_star = interior_max_ab(p)?;
            let (f2_max, ab_at_max, max_is_interior) =
                if ab_star >= ab_grid.grid_min && ab_star <= ab_grid.grid_max {
                    (f(ab_star)?, ab_star, true)
                } else {
                    let i = argmax(&f2);
                    (f2[i], xs[i], false)
                };

            Ok(Table2Row {
                p,
                f2_min: f2[i_min],
                ab_at_min,
                min_is_symmetric,
                f2_max,
                ab_at_max,
                max_is_interior,
            })
        })
        .collect()
}

/// Point on the curve of best achievable `F₂` against the input amplitude `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxCurvePoint {
    pub a: f64,
    pub ab: f64,
    pub q_star: f64,
    pub f2_max: f64,
    /// `|ab| = 1/2`: the optimum needs `p = 0` and is only approached.
    pub is_limit: bool,
}

/// Best achievable `F₂` for `a` on a uniform grid over `[0, 1]`, `b = +√(1 − a²)`.
pub fn max_f2_curve(steps: usize) -> Result<Vec<MaxCurvePoint>> {
    if steps < 2 {
        return Err(Error::Domain("max-F₂ curve needs at least 2 points".into()));
    }
    Ok(uniform_grid(0.0, 1.0, steps)
        .into_iter()
        .map(|a| {
            let b = (1.0 - a * a).max(0.0).sqrt();
            let ab = (a * b).min(0.5);
            match optimal_q(ab) {
                Ok(q) => MaxCurvePoint {
                    a,
                    ab,
                    q_star: q,
                    f2_max: f2_real(a, b, q),
                    is_limit: false,
                },
                Err(_) => MaxCurvePoint {
                    a,
                    ab,
                    q_star: 1.0,
                    f2_max: max_f2_formula(ab),
                    is_limit: true,
                },
            }
        })
        .collect())
}

/// Reference values for the `ab`-keyed table as published.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedTable1Row {
    pub ab: f64,
    pub f2_min: f64,
    /// `None` marks a `p → 0⁺` limit.
    pub p_at_min: Option<f64>,
    pub f2_max: f64,
    pub p_at_max: f64,
    pub f2_sd: f64,
}

pub const PUBLISHED_TABLE1: [PublishedTable1Row; 8] = [
    PublishedTable1Row {
        ab: -0.25,
        f2_min: 0.2500,
        p_at_min: None,
        f2_max: 0.9375,
        p_at_max: 1.000,
        f2_sd: 0.1860,
    },
    PublishedTable1Row {
        ab: -0.10,
        f2_min: 0.4000,
        p_at_min: None,
        f2_max: 0.9900,
        p_at_max: 1.000,
        f2_sd: 0.1684,
    },
    PublishedTable1Row {
        ab: 0.10,
        f2_min: 0.6000,
        p_at_min: None,
        f2_max: 0.9951,
        p_at_max: 0.995,
        f2_sd: 0.1244,
    },
    PublishedTable1Row {
        ab: 0.25,
        f2_min: 0.7500,
        p_at_min: None,
        f2_max: 0.9732,
        p_at_max: 0.958,
        f2_sd: 0.0763,
    },
    PublishedTable1Row {
        ab: 0.30,
        f2_min: 0.8000,
        p_at_min: None,
        f2_max: 0.9649,
        p_at_max: 0.931,
        f2_sd: 0.0577,
    },
    PublishedTable1Row {
        ab: 0.35,
        f2_min: 0.8500,
        p_at_min: None,
        f2_max: 0.9586,
        p_at_max: 0.886,
        f2_sd: 0.0384,
    },
    PublishedTable1Row {
        ab: 0.40,
        f2_min: 0.8400,
        p_at_min: Some(1.0),
        f2_max: 0.9576,
        p_at_max: 0.809,
        f2_sd: 0.0212,
    },
    PublishedTable1Row {
        ab: 0.45,
        f2_min: 0.7975,
        p_at_min: Some(1.0),
        f2_max: 0.9677,
        p_at_max: 0.654,
        f2_sd: 0.0211,
    },
];

/// Reference values for the `p`-keyed table as published.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedTable2Row {
    pub p: f64,
    pub f2_min: f64,
    pub ab_at_min: f64,
    pub f2_max: f64,
    pub ab_at_max: f64,
    /// Published as `1 − ε` at `ab = ε`.
    pub max_is_limit: bool,
}

pub const PUBLISHED_TABLE2: [PublishedTable2Row; 8] = [
    PublishedTable2Row {
        p: 0.250,
        f2_min: 0.0315,
        ab_at_min: -0.5,
        f2_max: 0.9970,
        ab_at_max: 0.5,
        max_is_limit: false,
    },
    PublishedTable2Row {
        p: 0.500,
        f2_min: 0.1295,
        ab_at_min: -0.5,
        f2_max: 0.9955,
        ab_at_max: 0.5,
        max_is_limit: false,
    },
    PublishedTable2Row {
        p: 0.750,
        f2_min: 0.3099,
        ab_at_min: -0.5,
        f2_max: 0.9713,
        ab_at_max: 0.5,
        max_is_limit: false,
    },
    PublishedTable2Row {
        p: 0.900,
        f2_min: 0.4846,
        ab_at_min: -0.5,
        f2_max: 0.9636,
        ab_at_max: 0.2691,
        max_is_limit: false,
    },
    PublishedTable2Row {
        p: 0.950,
        f2_min: 0.5695,
        ab_at_min: -0.5,
        f2_max: 0.9783,
        ab_at_max: 0.1730,
        max_is_limit: false,
    },
    PublishedTable2Row {
        p: 0.990,
        f2_min: 0.6754,
        ab_at_min: -0.5,
        f2_max: 0.9951,
        ab_at_max: 0.0720,
        max_is_limit: false,
    },
    PublishedTable2Row {
        p: 0.999,
        f2_min: 0.7271,
        ab_at_min: -0.5,
        f2_max: 0.9995,
        ab_at_max: 0.0224,
        max_is_limit: false,
    },
    PublishedTable2Row {
        p: 1.000,
        f2_min: 0.7500,
        ab_at_min: -0.5,
        f2_max: 1.0,
        ab_at_max: 0.0,
        max_is_limit: true,
    },
];

/// Published best fidelity for the input `(√3/2, 1/2)`; the formula gives 0.9625.
pub const PUBLISHED_SKEWED_INPUT_MAX_F2: f64 = 0.975;
/// Published minimax value, four decimals.
pub const PUBLISHED_MINIMAX: f64 = 0.9571;
/// Published crossover at `p = 0.5`.
pub const PUBLISHED_CROSSOVER_AT_HALF: f64 = 0.336;

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn grid_endpoints_exact() {
        let g = uniform_grid(1e-3, 1.0, 1000);
        assert_eq!(g.len(), 1000);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[999], 1.0);
        assert_eq!(uniform_grid(0.3, 0.3, 1), vec![0.3]);
    }

    #[test]
    fn spec_validation() {
        assert!(SweepSpec::new(SweepVariable::P { a: 1.0, b: 0.0 }, 0.0, 1.0, 10).is_err());
        assert!(SweepSpec::new(SweepVariable::P { a: 0.9, b: 0.9 }, 0.1, 1.0, 10).is_err());
        assert!(SweepSpec::new(SweepVariable::Ab { p: 0.5 }, -0.6, 0.5, 10).is_err());
        assert!(SweepSpec::new(SweepVariable::Ab { p: 0.0 }, -0.5, 0.5, 10).is_err());
        assert!(SweepSpec::new(SweepVariable::Ab { p: 0.5 }, 0.2, 0.1, 10).is_err());
        assert!(SweepSpec::new(SweepVariable::Ab { p: 0.5 }, -0.5, 0.5, 0).is_err());
    }

    #[test]
    fn real_pair_convention() {
        for ab in [-0.5, -0.3, 0.0, 0.1, 0.5] {
            let (a, b) = real_pair_for_ab(ab).unwrap();
            assert!((a * b - ab).abs() < 1e-15);
            assert!((a * a + b * b - 1.0).abs() < 1e-15);
            assert!(a >= b.abs());
        }
        assert!(real_pair_for_ab(0.51).is_err());
    }

    #[test]
    fn plus_sweep_endpoints() {
        let spec = SweepSpec::new(
            SweepVariable::P {
                a: FRAC_1_SQRT_2,
                b: FRAC_1_SQRT_2,
            },
            1e-6,
            1.0,
            50,
        )
        .unwrap();
        let res = sweep(&spec).unwrap();
        assert!((res.rows[0].f2 - 1.0).abs() < 1e-11);
        assert!((res.rows.last().unwrap().f2 - 0.75).abs() < 1e-15);
    }

    #[test]
    fn ab_sweep_pb_and_half() {
        let pb =
            sweep(&SweepSpec::new(SweepVariable::Ab { p: 1.0 }, -0.5, 0.5, 101).unwrap()).unwrap();
        for row in &pb.rows {
            assert!((row.f2 - (1.0 - row.x * row.x)).abs() < 1e-15);
        }
        let half =
            sweep(&SweepSpec::new(SweepVariable::Ab { p: 0.5 }, -0.5, 0.5, 101).unwrap()).unwrap();
        let s3 = 3f64.sqrt() / 2.0;
        for row in &half.rows {
            let expected = 0.625 + s3 * row.x - 0.25 * row.x * row.x;
            assert!((row.f2 - expected).abs() < 1e-15);
        }
        assert!((half.rows[0].f2 - 0.1295).abs() < 5e-5);
        assert!((half.rows[100].f2 - 0.9955).abs() < 5e-5);
    }

    #[test]
    fn optimal_q_examples() {
        assert!((optimal_q(0.25).unwrap() - 0.25 / 0.875).abs() < 1e-15);
        assert!((optimal_p(0.25).unwrap() - 0.958).abs() < 5e-4);
        assert_eq!(optimal_q(0.0).unwrap(), 0.0);
        assert!((optimal_q(0.45).unwrap() - 0.756_302_521).abs() < 1e-8);
        assert!((optimal_p(0.45).unwrap() - 0.654).abs() < 5e-4);
        assert!(matches!(optimal_q(0.5), Err(Error::Domain(_))));
        assert!(optimal_q(-0.5).is_err());
    }

    #[test]
    fn max_f2_examples() {
        assert!((max_f2(0.25).unwrap() - 0.973_214_285_714).abs() < 1e-11);
        assert!((max_f2(0.35).unwrap() - 0.9586).abs() < 5e-5);
        assert!((max_f2(0.1).unwrap() - 0.9951).abs() < 5e-5);
        for ab in [-0.4, -0.1, 0.0, 0.2, 0.49] {
            assert!((max_f2(ab).unwrap() - max_f2_formula(ab)).abs() < 1e-14);
        }
    }

    #[test]
    fn printed_max_formula_exceeds_one() {
        assert!((max_f2_printed(0.25) - 1.008_928_571_4).abs() < 1e-9);
    }

    #[test]
    fn minimax_analytic_and_grid_agree() {
        let m = minimax_f2();
        assert!((m.overlap_weight - 0.146_446_609_4).abs() < 1e-9);
        assert!((m.value - 0.957_106_781_2).abs() < 1e-9);
        assert!((m.grid_value - m.value).abs() < 1e-9);
        assert!((m.a * m.a * (1.0 - m.a * m.a) - m.overlap_weight).abs() < 1e-12);
    }

    #[test]
    fn gain_matches_fidelity_difference() {
        for ab in [-0.5, -0.2, 0.0, 0.3, 0.5] {
            let (a, b) = real_pair_for_ab(ab).unwrap();
            for q in [0.0, 0.4, 1.0] {
                let direct = f2_real(a, b, q) - f2_real(a, b, 0.0);
                assert!((gain_over_pb(ab, q) - direct).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-12);
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn crossover_examples() {
        // Quadratic root of 0.75x² + (√3/2)x − 0.375.
        let expected = (-(3f64.sqrt() / 2.0) + 1.875f64.sqrt()) / 1.5;
        let r = crossover_ab(0.5).unwrap().unwrap();
        assert!((r - expected).abs() < 1e-8);
        assert_eq!(crossover_ab(1.0).unwrap(), None);
        assert!(crossover_ab(0.0).is_err());
    }

    #[test]
    fn interior_max_ab_at_p09() {
        assert!((interior_max_ab(0.9).unwrap() - 0.2691).abs() < 5e-5);
        assert!(interior_max_ab(0.25).unwrap() > 0.5);
    }

    #[test]
    fn extremum_tie_breaking() {
        assert_eq!(argmin(&[1.0, 0.5, 0.5]), 1);
        assert_eq!(argmax(&[2.0, 1.0, 2.0]), 0);
    }

    #[test]
    fn max_curve_has_limit_at_balanced_input() {
        let curve = max_f2_curve(101).unwrap();
        assert_eq!(curve[0].f2_max, 1.0);
        assert!(curve.iter().all(|pt| pt.f2_max <= 1.0 + 1e-12));
        let m = minimax_f2();
        let lowest = curve
            .iter()
            .map(|pt| pt.f2_max)
            .fold(f64::INFINITY, f64::min);
        assert!(lowest >= m.value - 1e-12);
    }
}
