//! Constitutive relations of the binary mixture and the nondimensional groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pure-component densities and viscosities; `c = 1` is fluid 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluidPair {
    pub rho1: f64,
    pub rho2: f64,
    pub mu1: f64,
    pub mu2: f64,
}

impl FluidPair {
    pub fn new(rho1: f64, rho2: f64, mu1: f64, mu2: f64) -> Result<Self> {
        for (name, v) in [("rho1", rho1), ("rho2", rho2), ("mu1", mu1), ("mu2", mu2)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { rho1, rho2, mu1, mu2 })
    }

    /// `(rho2 - rho1) / (rho1 rho2)`.
    pub fn alpha(&self) -> f64 {
        (self.rho2 - self.rho1) / (self.rho1 * self.rho2)
    }

    /// Unchecked density; callers must keep `c` inside the admissible range.
    #[inline]
    pub fn density(&self, c: f64) -> f64 {
        self.rho1 * self.rho2 / ((self.rho2 - self.rho1) * c + self.rho1)
    }

    #[inline]
    pub fn viscosity(&self, c: f64) -> f64 {
        self.mu1 * self.mu2 / ((self.mu2 - self.mu1) * c + self.mu1)
    }

    /// Whether the density formula has a positive denominator at `c`.
    #[inline]
    pub fn admissible(&self, c: f64) -> bool {
        (self.rho2 - self.rho1) * c + self.rho1 > 0.0 && (self.mu2 - self.mu1) * c + self.mu1 > 0.0
    }
}

/// Mixture density `rho(c)`; harmonic interpolation of the pure densities.
pub fn density_of(c: f64, fl: &FluidPair) -> Result<f64> {
    let den = (fl.rho2 - fl.rho1) * c + fl.rho1;
    if !(den > 0.0) {
        return Err(Error::Domain(format!("density undefined at c = {c}")));
    }
    Ok(fl.rho1 * fl.rho2 / den)
}

pub fn viscosity_of(c: f64, fl: &FluidPair) -> Result<f64> {
    let den = (fl.mu2 - fl.mu1) * c + fl.mu1;
    if !(den > 0.0) {
        return Err(Error::Domain(format!("viscosity undefined at c = {c}")));
    }
    Ok(fl.mu1 * fl.mu2 / den)
}

/// Degenerate mobility regularised by `eps_m`: `sqrt(c^2 (1-c)^2 + eps_m)`.
#[inline]
pub fn mobility_reg(c: f64, eps_m: f64) -> f64 {
    let q = c * (1.0 - c);
    (q * q + eps_m).sqrt()
}

/// Double-well potential `c^2 (c-1)^2 / 4`.
#[inline]
pub fn bulk_potential(c: f64) -> f64 {
    let q = c * (c - 1.0);
    0.25 * q * q
}

/// `F'(c) = c (c-1) (c-1/2)`.
#[inline]
pub fn bulk_derivative(c: f64) -> f64 {
    c * (c - 1.0) * (c - 0.5)
}

/// `(F(c), F'(c))`.
pub fn double_well(c: f64) -> (f64, f64) {
    (bulk_potential(c), bulk_derivative(c))
}

/// Averaged potential derivative with
/// `g_avg(cn, co) (cn - co) = F(cn) - F(co)` exactly.
#[inline]
pub fn g_avg(cn: f64, co: f64) -> f64 {
    0.25 * (cn * (cn - 1.0) + co * (co - 1.0)) * (cn + co - 1.0)
}

/// Averaged density derivative with
/// `r_avg(cn, co) (cn - co) = rho(cn) - rho(co)` exactly.
#[inline]
pub fn r_avg(cn: f64, co: f64, fl: &FluidPair) -> f64 {
    -fl.alpha() * fl.density(cn) * fl.density(co)
}

/// Surface-tension calibration constant for a density ratio.
pub fn eta_capillary(rho1: f64, rho2: f64) -> Result<f64> {
    if !(rho1 > 0.0 && rho2 > 0.0) {
        return Err(Error::Domain(format!("eta needs positive densities, got {rho1}, {rho2}")));
    }
    if rho1 == rho2 {
        return Err(Error::Domain("eta is undefined for matched densities".into()));
    }
    let x = rho2 / rho1 - 1.0;
    // bracket = (1+x)^2 - 1 - 2 (1+x) ln(1+x)
    let bracket = if x.abs() < 0.05 {
        let mut s = 0.0;
        let mut xn = x * x;
        for n in 3..=16 {
            xn *= x;
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            s += sign * 2.0 * xn / (n * (n - 1)) as f64;
        }
        s
    } else {
        (1.0 + x) * (1.0 + x) - 1.0 - 2.0 * (1.0 + x) * x.ln_1p()
    };
    let num = x * x * x / rho1;
    Ok(num / (2.0 * std::f64::consts::SQRT_2 * (1.0 + x) * bracket))
}

/// Nondimensional groups of the model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NondimGroups {
    pub re: f64,
    pub we: f64,
    pub fr: f64,
    /// Mach-type number `M`.
    pub mach: f64,
    pub pe: f64,
    pub epsilon: f64,
    pub eta: f64,
    pub alpha: f64,
    /// Mobility regularisation.
    pub eps_m: f64,
}

impl NondimGroups {
    /// Builds the group set; `eta` defaults to the density-derived value.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        re: f64,
        we: f64,
        fr: f64,
        mach: f64,
        pe: f64,
        epsilon: f64,
        fluids: &FluidPair,
        eta: Option<f64>,
        eps_m: f64,
    ) -> Result<Self> {
        for (name, v) in [("Re", re), ("We", we), ("Fr", fr), ("M", mach), ("Pe", pe), ("epsilon", epsilon)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if !(eps_m >= 0.0) {
            return Err(Error::Config(format!("mobility regularisation must be >= 0, got {eps_m}")));
        }
        let eta = match eta {
            Some(e) if e > 0.0 && e.is_finite() => e,
            Some(e) => return Err(Error::Config(format!("eta must be positive, got {e}"))),
            None if fluids.rho1 == fluids.rho2 => {
                return Err(Error::Config("eta must be given explicitly for matched densities".into()))
            }
            None => eta_capillary(fluids.rho1, fluids.rho2)?,
        };
        Ok(Self { re, we, fr, mach, pe, epsilon, eta, alpha: fluids.alpha(), eps_m })
    }

    /// Groups with the asymptotic scalings `M = epsilon`, `Pe = 1/epsilon`;
    /// the mobility regularisation is `epsilon` itself.
    pub fn asymptotic(re: f64, we: f64, fr: f64, epsilon: f64, fluids: &FluidPair, eta: Option<f64>) -> Result<Self> {
        Self::new(re, we, fr, epsilon, 1.0 / epsilon, epsilon, fluids, eta, epsilon)
    }

    pub fn nondimensionalize(d: &DimensionalParams, fluids: &FluidPair, eta: Option<f64>, eps_m: f64) -> Result<Self> {
        for (name, v) in [
            ("U", d.velocity),
            ("L", d.length),
            ("rho*", d.density),
            ("mu*", d.viscosity),
            ("sigma", d.surface_tension),
            ("g", d.gravity),
            ("m*", d.mobility),
            ("mu_c*", d.chem_potential),
            ("epsilon", d.interface_width),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive and finite, got {v}")));
            }
        }
        let u2 = d.velocity * d.velocity;
        Self::new(
            d.density * d.length * d.velocity / d.viscosity,
            d.density * u2 * d.length / d.surface_tension,
            u2 / (d.gravity * d.length),
            u2 / d.chem_potential,
            d.density * d.velocity * d.length / (d.mobility * d.chem_potential),
            d.interface_width / d.length,
            fluids,
            eta,
            eps_m,
        )
    }
}

/// Dimensional reference quantities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionalParams {
    pub velocity: f64,
    pub length: f64,
    pub density: f64,
    pub viscosity: f64,
    pub surface_tension: f64,
    pub gravity: f64,
    pub mobility: f64,
    pub chem_potential: f64,
    pub interface_width: f64,
}
