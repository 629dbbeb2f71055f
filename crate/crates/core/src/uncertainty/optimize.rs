use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use crate::error::{param, Result};
use crate::qmath::{binary_entropy_inv, h, Branch};

use super::cost::cost_c;
use super::operator::MeasurementOperator;

/// Resolution of the coarse search in [`t_numeric`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub alpha_points: usize,
    pub axis_points: usize,
    /// Width of the final golden-section bracket on α.
    pub alpha_tol: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            alpha_points: 201,
            axis_points: 91,
            alpha_tol: 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericMinimum {
    pub min_bits: f64,
    pub argmin_alpha: f64,
    /// `(x̂, ẑ)` on the XZ quarter circle.
    pub argmin_axis: (f64, f64),
}

/// `2·h⁻¹(½) − 1` on the upper branch.
pub fn r_hat() -> f64 {
    2.0 * binary_entropy_inv(0.5, Branch::Upper).expect("½ is in range") - 1.0
}

/// `h((1+r)/2)` above the threshold, `½` below it.
pub fn t_closed_form(r: f64) -> Result<f64> {
    check_r(r)?;
    Ok(if r >= r_hat() {
        h((1.0 + r) / 2.0)
    } else {
        0.5
    })
}

fn check_r(r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r) {
        return Err(param(format!("r={r} outside [0,1]")));
    }
    Ok(())
}

fn eval(alpha: f64, phi: f64, r: f64) -> f64 {
    let f = MeasurementOperator::in_xz_plane(alpha.clamp(0.0, FRAC_1_SQRT_2), phi)
        .expect("grid point is a valid operator");
    cost_c(&f, r).expect("r already validated")
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Minimizes `cost_C` over α ∈ [0, 1/√2] and axes on the XZ quarter circle.
/// Ties on the coarse grid keep the first point found (smallest α, then the
/// axis closest to z).
pub fn t_numeric(r: f64, grid: &GridSpec) -> Result<NumericMinimum> {
    check_r(r)?;
    if grid.alpha_points < 3 || grid.axis_points < 2 || grid.alpha_tol <= 0.0 {
        return Err(param(
            "grid needs at least 3 alpha points, 2 axis points and a positive tolerance",
        ));
    }
    let alpha_at = |i: usize| FRAC_1_SQRT_2 * i as f64 / (grid.alpha_points - 1) as f64;
    let phi_at = |j: usize| FRAC_PI_2 * j as f64 / (grid.axis_points - 1) as f64;

    let mut best = (f64::INFINITY, 0, 0);
    for j in 0..grid.axis_points {
        for i in 0..grid.alpha_points {
            let v = eval(alpha_at(i), phi_at(j), r);
            if v < best.0 - 1e-12 {
                best = (v, i, j);
            }
        }
    }
    let (mut min_bits, bi, bj) = best;
    let phi = phi_at(bj);
    let mut alpha = alpha_at(bi);
    let lo = alpha_at(bi.saturating_sub(1));
    let hi = alpha_at((bi + 1).min(grid.alpha_points - 1));
    let (a_ref, v_ref) = golden_section(|a| eval(a, phi, r), lo, hi, grid.alpha_tol);
    if v_ref < min_bits {
        min_bits = v_ref;
        alpha = a_ref;
    }
    Ok(NumericMinimum {
        min_bits,
        argmin_alpha: alpha,
        argmin_axis: (phi.sin(), phi.cos()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold() {
        let rh = r_hat();
        assert!((rh - 0.7799442711232811).abs() < 1e-12);
        assert!((h((1.0 + rh) / 2.0) - 0.5).abs() < 1e-9);
        let gap = t_closed_form(rh - 1e-6).unwrap() - t_closed_form(rh + 1e-6).unwrap();
        assert!(gap.abs() <= 1e-4);
    }

    #[test]
    fn closed_form_examples() {
        assert!(t_closed_form(1.0).unwrap().abs() < 1e-15);
        assert_eq!(t_closed_form(0.5).unwrap(), 0.5);
        assert!((t_closed_form(0.9).unwrap() - 0.2863969571).abs() < 1e-9);
        assert!(t_closed_form(1.1).is_err());
    }

    #[test]
    fn numeric_examples() {
        let g = GridSpec::default();
        let low = t_numeric(0.2, &g).unwrap();
        assert!((low.min_bits - 0.5).abs() < 1e-4);
        assert!(low.argmin_alpha < 0.01 || (low.argmin_alpha - FRAC_1_SQRT_2).abs() < 0.01);
        let high = t_numeric(0.95, &g).unwrap();
        assert!((high.min_bits - h(0.975)).abs() < 1e-4);
        assert!((high.argmin_alpha - 0.5).abs() < 0.01);
    }

    #[test]
    fn argmin_jumps_at_threshold() {
        let g = GridSpec::default();
        let below = t_numeric(r_hat() - 0.01, &g).unwrap();
        let above = t_numeric(r_hat() + 0.01, &g).unwrap();
        assert!(below.argmin_alpha < 0.05, "{below:?}");
        assert!((above.argmin_alpha - 0.5).abs() < 0.05, "{above:?}");
    }
}
