use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{param, Error, Result};
use crate::qmath::{pauli, CMatrix};

const AXIS_TOL: f64 = 1e-12;
/// Tolerance on `Σ F_k†F_k = id` for orbit measurements.
pub const ORBIT_COMPLETENESS_TOL: f64 = 1e-10;

/// `F = α|φ⟩⟨φ| + β(id − |φ⟩⟨φ|)` with `β = √(½ − α²)` and `|φ⟩` given by
/// its Bloch vector `(x̂, ŷ, ẑ)`, `ŷ = √(1 − x̂² − ẑ²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementOperator {
    alpha: f64,
    x_hat: f64,
    z_hat: f64,
}

impl MeasurementOperator {
    pub fn new(alpha: f64, x_hat: f64, z_hat: f64) -> Result<Self> {
        if !(0.0..=FRAC_1_SQRT_2 + AXIS_TOL).contains(&alpha) {
            return Err(param(format!("alpha={alpha} outside [0, 1/sqrt 2]")));
        }
        if !x_hat.is_finite()
            || !z_hat.is_finite()
            || x_hat * x_hat + z_hat * z_hat > 1.0 + AXIS_TOL
        {
            return Err(param(format!(
                "axis ({x_hat}, {z_hat}) outside the unit disc"
            )));
        }
        Ok(Self {
            alpha: alpha.min(FRAC_1_SQRT_2),
            x_hat,
            z_hat,
        })
    }

    /// Axis on the XZ quarter circle at angle `phi` from the z axis.
    pub fn in_xz_plane(alpha: f64, phi: f64) -> Result<Self> {
        Self::new(alpha, phi.sin(), phi.cos())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        (0.5 - self.alpha * self.alpha).max(0.0).sqrt()
    }

    pub fn x_hat(&self) -> f64 {
        self.x_hat
    }

    pub fn z_hat(&self) -> f64 {
        self.z_hat
    }

    pub fn y_hat(&self) -> f64 {
        (1.0 - self.x_hat * self.x_hat - self.z_hat * self.z_hat)
            .max(0.0)
            .sqrt()
    }

    /// Projector onto `|φ⟩`.
    pub fn projector(&self) -> CMatrix {
        let mut p = pauli(0);
        p = &p + &pauli(1).scale(self.x_hat);
        p = &p + &pauli(2).scale(self.y_hat());
        p = &p + &pauli(3).scale(self.z_hat);
        p.scale(0.5)
    }

    pub fn matrix(&self) -> CMatrix {
        let beta = self.beta();
        &pauli(0).scale(beta) + &self.projector().scale(self.alpha - beta)
    }

    pub fn orbit(&self) -> OrbitMeasurement {
        OrbitMeasurement::new(*self)
    }
}

/// The four conjugates `gFg†` for `g` in the order id, X, Z, XZ.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitMeasurement {
    base: MeasurementOperator,
    operators: Vec<CMatrix>,
}

/// id, X, Z, XZ
pub fn orbit_group() -> [CMatrix; 4] {
    [pauli(0), pauli(1), pauli(3), &pauli(1) * &pauli(3)]
}

impl OrbitMeasurement {
    pub fn new(base: MeasurementOperator) -> Self {
        let f = base.matrix();
        let operators = orbit_group().iter().map(|g| f.conjugate_by(g)).collect();
        Self { base, operators }
    }

    pub fn base(&self) -> &MeasurementOperator {
        &self.base
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn is_complete(&self) -> bool {
        completeness_defect(&self.operators).is_ok_and(|d| d <= ORBIT_COMPLETENESS_TOL)
    }

    pub fn into_operators(self) -> Vec<CMatrix> {
        self.operators
    }
}

/// Largest entry of `Σ F_k†F_k − id`.
pub fn completeness_defect(ops: &[CMatrix]) -> Result<f64> {
    let d = ops.first().map_or(0, CMatrix::dim);
    if d == 0 {
        return Err(param("empty measurement"));
    }
    let mut acc = CMatrix::zeros(d);
    for f in ops {
        if f.dim() != d {
            return Err(Error::DimensionMismatch(d, f.dim()));
        }
        acc = &acc + &(&f.adjoint() * f);
    }
    Ok(acc.max_abs_diff(&CMatrix::identity(d)))
}
