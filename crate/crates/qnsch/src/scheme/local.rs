//! Pointwise residuals. Each function returns `LHS - RHS` of one discrete
//! equation at one cell or face, reading the current iterate `s` and the
//! coefficients frozen at the old time level.

use super::{GravityPlacement, SchemeKind, SchemeParams, State};
use crate::error::{Error, Result};
use crate::grid::{CellField, EwField, GridSpec, NsField, VertexField};
use crate::physics::{bulk_potential, g_avg, mobility_reg};

/// Old-time data and the coefficient fields derived from it.
#[derive(Clone, Debug)]
pub struct Frozen {
    pub grid: GridSpec,
    pub old: State,
    /// `rho(c^n)`, ghosts included.
    pub rho: CellField,
    /// `mu(c^n)`, ghosts included.
    pub visc: CellField,
    pub fpot: CellField,
    /// Cell `|grad_D c^n|^2`.
    pub gsq: CellField,
    pub rho_v: VertexField,
    pub visc_v: VertexField,
    pub mob_x: EwField,
    pub mob_y: NsField,
    /// `rho^n a_x u^n` and `rho^n a_y v^n`, ghosts included.
    pub px: CellField,
    pub py: CellField,
    /// `A rho^n A_x v^n` and `A rho^n A_y u^n` on vertices.
    pub qx: VertexField,
    pub qy: VertexField,
}

/// Cell value of `|grad_D c|^2`: mean of the two squared face differences
/// per axis, summed over the axes.
#[inline]
pub(crate) fn grad_sq_at(c: &CellField, h: f64, i: usize, j: usize) -> f64 {
    let c0 = c[(i, j)];
    let e = c[(i + 1, j)] - c0;
    let w = c0 - c[(i - 1, j)];
    let n = c[(i, j + 1)] - c0;
    let s = c0 - c[(i, j - 1)];
    0.5 * (e * e + w * w + n * n + s * s) / (h * h)
}

impl Frozen {
    pub fn new(old: &State, p: &SchemeParams) -> Result<Self> {
        let mut old = old.clone();
        old.conform(p.kind);
        old.fill_ghosts(p);
        let g = *old.grid();
        let fl = &p.fluids;
        for (k, &c) in old.c.data.iter().enumerate() {
            if !fl.admissible(c) {
                let (nx, _) = old.c.dims();
                return Err(Error::Domain(format!(
                    "density undefined at c = {c} in cell ({}, {})",
                    k % nx,
                    k / nx
                )));
            }
        }
        let rho = old.c.map(|c| fl.density(c));
        let visc = old.c.map(|c| fl.viscosity(c));
        let fpot = old.c.map(bulk_potential);
        let mut gsq = CellField::zeros(g);
        for j in 1..=g.m2 {
            for i in 1..=g.m1 {
                gsq[(i, j)] = grad_sq_at(&old.c, g.h, i, j);
            }
        }
        let rho_v = crate::grid::ops::cell_to_vertex(&rho);
        let visc_v = crate::grid::ops::cell_to_vertex(&visc);
        let mob = old.c.map(|c| mobility_reg(c, p.groups.eps_m));
        let mob_x = crate::grid::ops::big_a_x(&mob);
        let mob_y = crate::grid::ops::big_a_y(&mob);
        let (nx, ny) = rho.dims();
        let px = CellField::from_fn(g, |i, j| rho[(i, j)] * 0.5 * (old.u[(i, j)] + old.u[(i + 1, j)]));
        let py = CellField::from_fn(g, |i, j| rho[(i, j)] * 0.5 * (old.v[(i, j)] + old.v[(i, j + 1)]));
        debug_assert_eq!((nx, ny), (g.m1 + 2, g.m2 + 2));
        let qx = VertexField::from_fn(g, |a, b| rho_v[(a, b)] * 0.5 * (old.v[(a, b + 1)] + old.v[(a + 1, b + 1)]));
        let qy = VertexField::from_fn(g, |a, b| rho_v[(a, b)] * 0.5 * (old.u[(a + 1, b)] + old.u[(a + 1, b + 1)]));
        Ok(Self { grid: g, old, rho, visc, fpot, gsq, rho_v, visc_v, mob_x, mob_y, px, py, qx, qy })
    }

    /// `grad_d . (A m grad_D f)` at cell `(i, j)`.
    #[inline]
    fn lap_m(&self, f: &CellField, i: usize, j: usize) -> f64 {
        let h = self.grid.h;
        let f0 = f[(i, j)];
        (self.mob_x[(i + 1, j)] * (f[(i + 1, j)] - f0) - self.mob_x[(i, j)] * (f0 - f[(i - 1, j)])
            + self.mob_y[(i, j + 1)] * (f[(i, j + 1)] - f0)
            - self.mob_y[(i, j)] * (f0 - f[(i, j - 1)]))
            / (h * h)
    }

    /// Quasi-incompressibility at cell `(i, j)`.
    #[inline]
    pub fn mass(&self, p: &SchemeParams, s: &State, i: usize, j: usize) -> f64 {
        let h = self.grid.h;
        let g = &p.groups;
        let div = (s.u[(i + 1, j)] - s.u[(i, j)]) / h + (s.v[(i, j + 1)] - s.v[(i, j)]) / h;
        div - g.alpha / g.pe * self.lap_m(&s.mu, i, j) - g.alpha * g.alpha / g.pe * self.lap_m(&s.p, i, j)
    }

    /// Phase equation at cell `(i, j)`.
    #[inline]
    pub fn phase(&self, p: &SchemeParams, s: &State, i: usize, j: usize) -> f64 {
        let h = self.grid.h;
        let g = &p.groups;
        let fl = &p.fluids;
        let co = &self.old.c;
        let c = s.c[(i, j)];
        let (time, adv) = match p.kind {
            SchemeKind::Primitive => {
                let r = &self.rho;
                let adv = 0.5
                    * (r[(i + 1, j)] * (co[(i + 1, j)] - co[(i, j)]) * s.u[(i + 1, j)]
                        + r[(i - 1, j)] * (co[(i, j)] - co[(i - 1, j)]) * s.u[(i, j)]
                        + r[(i, j + 1)] * (co[(i, j + 1)] - co[(i, j)]) * s.v[(i, j + 1)]
                        + r[(i, j - 1)] * (co[(i, j)] - co[(i, j - 1)]) * s.v[(i, j)])
                    / h;
                (fl.density(c) * (c - co[(i, j)]) / p.dt, adv)
            }
            SchemeKind::Projection => {
                let cn = &s.c;
                let adv = 0.5
                    * (fl.density(cn[(i + 1, j)]) * (cn[(i + 1, j)] - c) * s.u[(i + 1, j)]
                        + fl.density(cn[(i - 1, j)]) * (c - cn[(i - 1, j)]) * s.u[(i, j)]
                        + fl.density(cn[(i, j + 1)]) * (cn[(i, j + 1)] - c) * s.v[(i, j + 1)]
                        + fl.density(cn[(i, j - 1)]) * (c - cn[(i, j - 1)]) * s.v[(i, j)])
                    / h;
                (self.rho[(i, j)] * (c - co[(i, j)]) / p.dt, adv)
            }
        };
        time + adv - self.lap_m(&s.mu, i, j) / g.pe - g.alpha / g.pe * self.lap_m(&s.p, i, j)
    }

    /// Chemical-potential equation at cell `(i, j)`.
    #[inline]
    pub fn chem(&self, p: &SchemeParams, s: &State, i: usize, j: usize) -> f64 {
        let h = self.grid.h;
        let g = &p.groups;
        let fl = &p.fluids;
        let co = &self.old.c;
        let c = s.c[(i, j)];
        let c_old = co[(i, j)];
        let rn = fl.density(c);
        let ro = self.rho[(i, j)];
        let w = match p.kind {
            SchemeKind::Primitive => rn,
            SchemeKind::Projection => ro,
        };
        let k1 = g.mach * g.eta / (g.epsilon * g.we);
        let k3 = g.epsilon * g.eta * g.mach / g.we;
        let r_avg = -g.alpha * rn * ro;
        let rhalf = 0.5 * (rn + ro);
        let fhalf = 0.5 * (bulk_potential(c) + self.fpot[(i, j)]);
        let ghalf = 0.5 * (grad_sq_at(&s.c, h, i, j) + self.gsq[(i, j)]);
        let chalf = 0.5 * (c + c_old);
        let mut div = 0.0;
        for (a, b) in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
            let cn = s.c[(a, b)];
            let rh = 0.5 * (fl.density(cn) + self.rho[(a, b)]);
            div += 0.5 * (rhalf + rh) * (0.5 * (cn + co[(a, b)]) - chalf);
        }
        div /= h * h;
        w * s.mu[(i, j)] - k1 * (rhalf * g_avg(c, c_old) + fhalf * r_avg) - 0.5 * k3 * ghalf * r_avg + k3 * div
    }

    /// Part of the diagonal of the momentum operator at an x-face that
    /// depends on the current phase field: `A_x rho(c) / (2 dt)`.
    #[inline]
    pub fn phase_diag_x(&self, p: &SchemeParams, s: &State, k: usize, j: usize) -> f64 {
        let fl = &p.fluids;
        0.25 * (fl.density(s.c[(k - 1, j)]) + fl.density(s.c[(k, j)])) / p.dt
    }

    #[inline]
    pub fn phase_diag_y(&self, p: &SchemeParams, s: &State, i: usize, k: usize) -> f64 {
        let fl = &p.fluids;
        0.25 * (fl.density(s.c[(i, k - 1)]) + fl.density(s.c[(i, k)])) / p.dt
    }

    /// Time, advection and viscous part of the x-momentum operator applied
    /// to the velocity `(ut, vt)` at face `(k, j)`.
    #[inline]
    fn momx_core(&self, p: &SchemeParams, s: &State, ut: &EwField, vt: &NsField, k: usize, j: usize) -> f64 {
        let h = self.grid.h;
        let fl = &p.fluids;
        let dt = p.dt;
        let re = p.groups.re;
        let ro_f = 0.5 * (self.rho[(k - 1, j)] + self.rho[(k, j)]);
        let rn_f = 0.5 * (fl.density(s.c[(k - 1, j)]) + fl.density(s.c[(k, j)]));
        let u0 = ut[(k, j)];
        let (uw, ue, us, un) = (ut[(k - 1, j)], ut[(k + 1, j)], ut[(k, j - 1)], ut[(k, j + 1)]);
        let time = ro_f * (u0 - self.old.u[(k, j)]) / dt + (rn_f - ro_f) / (2.0 * dt) * u0;
        let (pl, pr) = (self.px[(k - 1, j)], self.px[(k, j)]);
        let (qb, qt) = (self.qx[(k - 1, j - 1)], self.qx[(k - 1, j)]);
        let conv = 0.5 * (pl * (u0 - uw) + pr * (ue - u0) + qb * (u0 - us) + qt * (un - u0)) / h
            + 0.5 * u0 * (pr - pl + qt - qb) / h;
        let (ml, mr) = (self.visc[(k - 1, j)], self.visc[(k, j)]);
        let (mb, mt) = (self.visc_v[(k - 1, j - 1)], self.visc_v[(k - 1, j)]);
        let visc = (mr * (ue - u0) - ml * (u0 - uw) + mt * (un - u0) - mb * (u0 - us)) / (h * h);
        let div_r = (ue - u0 + vt[(k, j + 1)] - vt[(k, j)]) / h;
        let div_l = (u0 - uw + vt[(k - 1, j + 1)] - vt[(k - 1, j)]) / h;
        let grad_div = (mr * div_r - ml * div_l) / h;
        time + conv - visc / re - grad_div / (3.0 * re)
    }

    #[inline]
    fn momy_core(&self, p: &SchemeParams, s: &State, ut: &EwField, vt: &NsField, i: usize, k: usize) -> f64 {
        let h = self.grid.h;
        let fl = &p.fluids;
        let dt = p.dt;
        let re = p.groups.re;
        let ro_f = 0.5 * (self.rho[(i, k - 1)] + self.rho[(i, k)]);
        let rn_f = 0.5 * (fl.density(s.c[(i, k - 1)]) + fl.density(s.c[(i, k)]));
        let v0 = vt[(i, k)];
        let (vs, vn, vw, ve) = (vt[(i, k - 1)], vt[(i, k + 1)], vt[(i - 1, k)], vt[(i + 1, k)]);
        let time = ro_f * (v0 - self.old.v[(i, k)]) / dt + (rn_f - ro_f) / (2.0 * dt) * v0;
        let (pb, pt) = (self.py[(i, k - 1)], self.py[(i, k)]);
        let (ql, qr) = (self.qy[(i - 1, k - 1)], self.qy[(i, k - 1)]);
        let conv = 0.5 * (pb * (v0 - vs) + pt * (vn - v0) + ql * (v0 - vw) + qr * (ve - v0)) / h
            + 0.5 * v0 * (pt - pb + qr - ql) / h;
        let (mb, mt) = (self.visc[(i, k - 1)], self.visc[(i, k)]);
        let (ml, mr) = (self.visc_v[(i - 1, k - 1)], self.visc_v[(i, k - 1)]);
        let visc = (mt * (vn - v0) - mb * (v0 - vs) + mr * (ve - v0) - ml * (v0 - vw)) / (h * h);
        let div_t = (vn - v0 + ut[(i + 1, k)] - ut[(i, k)]) / h;
        let div_b = (v0 - vs + ut[(i + 1, k - 1)] - ut[(i, k - 1)]) / h;
        let grad_div = (mt * div_t - mb * div_b) / h;
        time + conv - visc / re - grad_div / (3.0 * re)
    }

    /// Surface tension `(rho_R mu_L + rho_L mu_R)/2 * (c_R - c_L)/h`
    /// between cells `l` and `r`.
    #[inline]
    fn st(rho_l: f64, rho_r: f64, mu_l: f64, mu_r: f64, c_l: f64, c_r: f64, h: f64) -> f64 {
        0.5 * (rho_r * mu_l + rho_l * mu_r) * (c_r - c_l) / h
    }

    /// Primitive x-momentum at face `(k, j)`.
    #[inline]
    pub fn mom_x(&self, p: &SchemeParams, s: &State, k: usize, j: usize) -> f64 {
        let h = self.grid.h;
        let m = p.groups.mach;
        let core = self.momx_core(p, s, &s.u, &s.v, k, j);
        let pres = (s.p[(k, j)] - s.p[(k - 1, j)]) / (h * m);
        let co = &self.old.c;
        let st = Self::st(
            self.rho[(k - 1, j)],
            self.rho[(k, j)],
            s.mu[(k - 1, j)],
            s.mu[(k, j)],
            co[(k - 1, j)],
            co[(k, j)],
            h,
        );
        core + pres - st / m
    }

    /// Primitive y-momentum at face `(i, k)`.
    #[inline]
    pub fn mom_y(&self, p: &SchemeParams, s: &State, i: usize, k: usize) -> f64 {
        let h = self.grid.h;
        let m = p.groups.mach;
        let core = self.momy_core(p, s, &s.u, &s.v, i, k);
        let pres = (s.p[(i, k)] - s.p[(i, k - 1)]) / (h * m);
        let co = &self.old.c;
        let st = Self::st(
            self.rho[(i, k - 1)],
            self.rho[(i, k)],
            s.mu[(i, k - 1)],
            s.mu[(i, k)],
            co[(i, k - 1)],
            co[(i, k)],
            h,
        );
        let grav = 0.5 * (self.rho[(i, k - 1)] + self.rho[(i, k)]) / p.groups.fr;
        core + pres - st / m + grav
    }

    /// Projection predictor, x-component, for `u_tilde` at `(k, j)`.
    #[inline]
    pub fn pred_x(&self, p: &SchemeParams, s: &State, k: usize, j: usize) -> f64 {
        let t = s.tilde.as_ref().expect("projection state carries u_tilde");
        self.momx_core(p, s, &t.u, &t.v, k, j)
    }

    #[inline]
    pub fn pred_y(&self, p: &SchemeParams, s: &State, i: usize, k: usize) -> f64 {
        let t = s.tilde.as_ref().expect("projection state carries u_tilde");
        let core = self.momy_core(p, s, &t.u, &t.v, i, k);
        match p.gravity {
            GravityPlacement::Predictor => {
                let fl = &p.fluids;
                core + 0.5 * (fl.density(s.c[(i, k - 1)]) + fl.density(s.c[(i, k)])) / p.groups.fr
            }
            GravityPlacement::Correction => core,
        }
    }

    /// Velocity correction, x-component, at `(k, j)`.
    #[inline]
    pub fn proj_x(&self, p: &SchemeParams, s: &State, k: usize, j: usize) -> f64 {
        let t = s.tilde.as_ref().expect("projection state carries u_tilde");
        let h = self.grid.h;
        let m = p.groups.mach;
        let fl = &p.fluids;
        let (cl, cr) = (s.c[(k - 1, j)], s.c[(k, j)]);
        let (rl, rr) = (fl.density(cl), fl.density(cr));
        let time = 0.5 * (rl + rr) * (s.u[(k, j)] - t.u[(k, j)]) / p.dt;
        let pres = (s.p[(k, j)] - s.p[(k - 1, j)]) / (h * m);
        let st = Self::st(rl, rr, s.mu[(k - 1, j)], s.mu[(k, j)], cl, cr, h);
        time + pres - st / m
    }

    #[inline]
    pub fn proj_y(&self, p: &SchemeParams, s: &State, i: usize, k: usize) -> f64 {
        let t = s.tilde.as_ref().expect("projection state carries u_tilde");
        let h = self.grid.h;
        let m = p.groups.mach;
        let fl = &p.fluids;
        let (cb, ct) = (s.c[(i, k - 1)], s.c[(i, k)]);
        let (rb, rt) = (fl.density(cb), fl.density(ct));
        let time = 0.5 * (rb + rt) * (s.v[(i, k)] - t.v[(i, k)]) / p.dt;
        let pres = (s.p[(i, k)] - s.p[(i, k - 1)]) / (h * m);
        let st = Self::st(rb, rt, s.mu[(i, k - 1)], s.mu[(i, k)], cb, ct, h);
        let grav = match p.gravity {
            GravityPlacement::Predictor => 0.0,
            GravityPlacement::Correction => 0.5 * (rb + rt) / p.groups.fr,
        };
        time + pres - st / m + grav
    }
}
