//! Operator identity suite on random fields.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::inner::{cell_ip, ew_ip, ew_ip_weighted, ns_ip, ns_ip_weighted, vc_ip_weighted};
use crate::grid::ops::*;
use crate::grid::{BcSet, CellField, EwField, GridSpec, NsField, VertexField};
use crate::physics::{bulk_potential, g_avg, r_avg, FluidPair};
use crate::scheme::{ch_advection_flux, momentum_advection, surface_tension_force, Velocity};

/// Grid sizes covered by the suite.
pub const SIZES: [usize; 3] = [8, 16, 32];

/// Signature of the Cahn-Hilliard advection stencil under test.
pub type FluxFn = fn(&CellField, &CellField, &EwField, &NsField) -> CellField;

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub bc: &'static str,
    pub m: usize,
    /// `|lhs - rhs|` relative to the magnitude of the summed terms.
    pub violation: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SelftestReport {
    pub checks: Vec<IdentityCheck>,
}

impl SelftestReport {
    pub fn max_violation(&self) -> f64 {
        self.checks.iter().map(|c| c.violation).fold(0.0, f64::max)
    }

    /// Largest violation per identity name, in first-seen order.
    pub fn by_identity(&self) -> Vec<(&'static str, f64)> {
        let mut out: Vec<(&'static str, f64)> = Vec::new();
        for c in &self.checks {
            match out.iter_mut().find(|(n, _)| *n == c.name) {
                Some((_, v)) => *v = v.max(c.violation),
                None => out.push((c.name, c.violation)),
            }
        }
        out
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.checks.iter().all(|c| c.violation <= tol)
    }
}

/// Boundary families exercised by the suite.
pub fn bc_families() -> [(&'static str, BcSet); 3] {
    [("walls", BcSet::walls()), ("periodic", BcSet::periodic()), ("channel", BcSet::channel())]
}

/// Random fields with ghosts filled for one grid and boundary set.
pub struct Sample {
    pub bc: BcSet,
    pub fluids: FluidPair,
    pub phi: CellField,
    pub psi: CellField,
    pub zeta: CellField,
    /// Phase field in `[0, 1]` and its density.
    pub c: CellField,
    pub rho: CellField,
    pub u: EwField,
    pub gamma: EwField,
    pub v: NsField,
    pub omega: NsField,
}

impl Sample {
    pub fn new(g: GridSpec, bc: BcSet, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fluids = FluidPair::new(1.0, 10.0, 1.0, 10.0).expect("valid pair");
        let mut cell = |lo: f64, hi: f64| {
            let mut f = CellField::from_fn(g, |_, _| rng.gen_range(lo..hi));
            f.fill_ghost(&bc);
            f
        };
        let phi = cell(0.5, 2.0);
        let psi = cell(-1.0, 1.0);
        let zeta = cell(-1.0, 1.0);
        let c = cell(0.0, 1.0);
        let mut rho = c.map(|x| fluids.density(x));
        rho.fill_ghost(&bc);
        let mut ew = || {
            let mut f = EwField::from_fn(g, |_, _| rng.gen_range(-1.0..1.0));
            f.fill_ghost(&bc);
            f
        };
        let (u, gamma) = (ew(), ew());
        let mut ns = || {
            let mut f = NsField::from_fn(g, |_, _| rng.gen_range(-1.0..1.0));
            f.fill_ghost(&bc);
            f
        };
        let (v, omega) = (ns(), ns());
        Self { bc, fluids, phi, psi, zeta, c, rho, u, gamma, v, omega }
    }

    fn filled(&self, mut f: CellField) -> CellField {
        f.fill_ghost(&self.bc);
        f
    }
}

fn rel(lhs: f64, rhs: f64, scale: f64) -> f64 {
    let s = scale.max(lhs.abs()).max(rhs.abs());
    if s == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / s
    }
}

fn abs_c(f: &CellField) -> CellField {
    f.map(f64::abs)
}
fn abs_e(f: &EwField) -> EwField {
    f.map(f64::abs)
}
fn abs_n(f: &NsField) -> NsField {
    f.map(f64::abs)
}
fn abs_v(f: &VertexField) -> VertexField {
    f.map(f64::abs)
}

/// `[D_x phi, u] = -(phi, d_x u)` and its y twin.
pub fn sbp_gradient(s: &Sample) -> [(&'static str, f64); 2] {
    let gx = big_d_x(&s.phi);
    let lx = ew_ip(&gx, &s.u);
    let rx = -cell_ip(&s.phi, &d_x(&s.u));
    let sx = ew_ip(&abs_e(&gx), &abs_e(&s.u));
    let gy = big_d_y(&s.phi);
    let ly = ns_ip(&gy, &s.v);
    let ry = -cell_ip(&s.phi, &d_y(&s.v));
    let sy = ns_ip(&abs_n(&gy), &abs_n(&s.v));
    [("sbp_gradient_x", rel(lx, rx, sx)), ("sbp_gradient_y", rel(ly, ry, sy))]
}

/// `[D_x(phi d_x u), gamma] = -(phi d_x u, d_x gamma)` and its y twin.
pub fn sbp_normal_viscous(s: &Sample) -> [(&'static str, f64); 2] {
    let fx = s.filled(s.phi.mul(&d_x(&s.u)));
    let lx = ew_ip(&big_d_x(&fx), &s.gamma);
    let rx = -cell_ip(&fx, &d_x(&s.gamma));
    let sx = cell_ip(&abs_c(&fx), &abs_c(&d_x(&s.gamma)));
    let fy = s.filled(s.phi.mul(&d_y(&s.v)));
    let ly = ns_ip(&big_d_y(&fy), &s.omega);
    let ry = -cell_ip(&fy, &d_y(&s.omega));
    let sy = cell_ip(&abs_c(&fy), &abs_c(&d_y(&s.omega)));
    [("sbp_normal_viscous_x", rel(lx, rx, sx)), ("sbp_normal_viscous_y", rel(ly, ry, sy))]
}

/// `[D_y(A phi D_y u), gamma] = -<phi D_y u, D_y gamma>` on vertices, and
/// its twin for `v`.
pub fn sbp_shear_viscous(s: &Sample) -> [(&'static str, f64); 2] {
    let av = cell_to_vertex(&s.phi);
    let fu = u_diff_y(&s.u);
    let lx = ew_ip(&vertex_diff_y(&av.mul(&fu)), &s.gamma);
    let dg = u_diff_y(&s.gamma);
    let rx = -vc_ip_weighted(&s.phi, &fu, &dg);
    let sx = vc_ip_weighted(&abs_c(&s.phi), &abs_v(&fu), &abs_v(&dg));
    let fv = v_diff_x(&s.v);
    let ly = ns_ip(&vertex_diff_x(&av.mul(&fv)), &s.omega);
    let dw = v_diff_x(&s.omega);
    let ry = -vc_ip_weighted(&s.phi, &fv, &dw);
    let sy = vc_ip_weighted(&abs_c(&s.phi), &abs_v(&fv), &abs_v(&dw));
    [("sbp_shear_viscous_x", rel(lx, rx, sx)), ("sbp_shear_viscous_y", rel(ly, ry, sy))]
}

/// `[D_x(phi d_y v), u] = -(phi d_y v, d_x u)` and its twin.
pub fn sbp_cross_viscous(s: &Sample) -> [(&'static str, f64); 2] {
    let fx = s.filled(s.phi.mul(&d_y(&s.v)));
    let lx = ew_ip(&big_d_x(&fx), &s.u);
    let rx = -cell_ip(&fx, &d_x(&s.u));
    let sx = cell_ip(&abs_c(&fx), &abs_c(&d_x(&s.u)));
    let fy = s.filled(s.phi.mul(&d_x(&s.u)));
    let ly = ns_ip(&big_d_y(&fy), &s.v);
    let ry = -cell_ip(&fy, &d_y(&s.v));
    let sy = cell_ip(&abs_c(&fy), &abs_c(&d_y(&s.v)));
    [("sbp_cross_viscous_x", rel(lx, rx, sx)), ("sbp_cross_viscous_y", rel(ly, ry, sy))]
}

/// `(d_x(A_x phi D_x psi), zeta) = -[phi D_x psi, D_x zeta]` and its twin.
pub fn sbp_scalar_diffusion(s: &Sample) -> [(&'static str, f64); 2] {
    let (dpx, dzx) = (big_d_x(&s.psi), big_d_x(&s.zeta));
    let lx = cell_ip(&d_x(&big_a_x(&s.phi).mul(&dpx)), &s.zeta);
    let rx = -ew_ip_weighted(&s.phi, &dpx, &dzx);
    let sx = ew_ip_weighted(&abs_c(&s.phi), &abs_e(&dpx), &abs_e(&dzx));
    let (dpy, dzy) = (big_d_y(&s.psi), big_d_y(&s.zeta));
    let ly = cell_ip(&d_y(&big_a_y(&s.phi).mul(&dpy)), &s.zeta);
    let ry = -ns_ip_weighted(&s.phi, &dpy, &dzy);
    let sy = ns_ip_weighted(&abs_c(&s.phi), &abs_n(&dpy), &abs_n(&dzy));
    [("sbp_scalar_diffusion_x", rel(lx, rx, sx)), ("sbp_scalar_diffusion_y", rel(ly, ry, sy))]
}

/// Normal-direction skew cancellation:
/// `[A_x(phi a_x u d_x gamma), gamma] + [1/2 gamma D_x(phi a_x u), gamma] = 0`.
pub fn skew_normal(s: &Sample) -> [(&'static str, f64); 2] {
    let pu = s.filled(s.phi.mul(&a_x(&s.u)));
    let conv = big_a_x(&s.filled(pu.mul(&d_x(&s.gamma))));
    let skew = s.gamma.mul(&big_d_x(&pu)).map(|x| 0.5 * x);
    let lx = ew_ip(&conv, &s.gamma) + ew_ip(&skew, &s.gamma);
    let sx = ew_ip(&abs_e(&conv), &abs_e(&s.gamma)) + ew_ip(&abs_e(&skew), &abs_e(&s.gamma));
    let pv = s.filled(s.phi.mul(&a_y(&s.v)));
    let conv = big_a_y(&s.filled(pv.mul(&d_y(&s.omega))));
    let skew = s.omega.mul(&big_d_y(&pv)).map(|x| 0.5 * x);
    let ly = ns_ip(&conv, &s.omega) + ns_ip(&skew, &s.omega);
    let sy = ns_ip(&abs_n(&conv), &abs_n(&s.omega)) + ns_ip(&abs_n(&skew), &abs_n(&s.omega));
    [("skew_normal_x", rel(lx, 0.0, sx)), ("skew_normal_y", rel(ly, 0.0, sy))]
}

/// Tangential skew cancellation through vertices:
/// `[A_y(A phi A_x v D_y u), u] + [1/2 u D_y(A phi A_x v), u] = 0`.
pub fn skew_tangential(s: &Sample) -> [(&'static str, f64); 2] {
    let ap = cell_to_vertex(&s.phi);
    let q = ap.mul(&v_avg_x(&s.v));
    let conv = vertex_avg_y(&q.mul(&u_diff_y(&s.u)));
    let skew = s.u.mul(&vertex_diff_y(&q)).map(|x| 0.5 * x);
    let lx = ew_ip(&conv, &s.u) + ew_ip(&skew, &s.u);
    let sx = ew_ip(&abs_e(&conv), &abs_e(&s.u)) + ew_ip(&abs_e(&skew), &abs_e(&s.u));
    let q = ap.mul(&u_avg_y(&s.u));
    let conv = vertex_avg_x(&q.mul(&v_diff_x(&s.v)));
    let skew = s.v.mul(&vertex_diff_x(&q)).map(|x| 0.5 * x);
    let ly = ns_ip(&conv, &s.v) + ns_ip(&skew, &s.v);
    let sy = ns_ip(&abs_n(&conv), &abs_n(&s.v)) + ns_ip(&abs_n(&skew), &abs_n(&s.v));
    [("skew_tangential_x", rel(lx, 0.0, sx)), ("skew_tangential_y", rel(ly, 0.0, sy))]
}

/// Full momentum advection is skew: `[adv(u), u] = 0`.
pub fn momentum_skew(s: &Sample) -> (&'static str, f64) {
    let adv = Velocity { u: s.gamma.clone(), v: s.omega.clone() };
    let target = Velocity { u: s.u.clone(), v: s.v.clone() };
    let out = momentum_advection(&s.rho, &adv, &target, &s.bc);
    let l = ew_ip(&out.u, &s.u) + ns_ip(&out.v, &s.v);
    let sc = ew_ip(&abs_e(&out.u), &abs_e(&s.u)) + ns_ip(&abs_n(&out.v), &abs_n(&s.v));
    ("momentum_skew", rel(l, 0.0, sc))
}

/// Advection/mass identity:
/// `(flux(rho, c, u, v), -alpha rho) = (a_x(u D_x rho), 1) + (a_y(v D_y rho), 1)`.
pub fn advection_mass(s: &Sample, flux: FluxFn) -> (&'static str, f64) {
    let f = flux(&s.rho, &s.c, &s.u, &s.v);
    let alpha = s.fluids.alpha();
    let w = s.rho.map(|r| -alpha * r);
    let l = cell_ip(&f, &w);
    let one = s.rho.map(|_| 1.0);
    let gx = a_x(&s.u.mul(&big_d_x(&s.rho)));
    let gy = a_y(&s.v.mul(&big_d_y(&s.rho)));
    let r = cell_ip(&gx, &one) + cell_ip(&gy, &one);
    let sc = cell_ip(&abs_c(&f), &abs_c(&w));
    ("advection_mass", rel(l, r, sc))
}

/// Surface tension duality:
/// `[st_x, u] + [st_y, v] = (flux(rho, c, u, v), mu)`.
pub fn tension_duality(s: &Sample, flux: FluxFn) -> (&'static str, f64) {
    let mu = &s.psi;
    let st = surface_tension_force(&s.rho, mu, &s.c);
    let l = ew_ip(&st.u, &s.u) + ns_ip(&st.v, &s.v);
    let f = flux(&s.rho, &s.c, &s.u, &s.v);
    let r = cell_ip(&f, mu);
    let sc = ew_ip(&abs_e(&st.u), &abs_e(&s.u)) + ns_ip(&abs_n(&st.v), &abs_n(&s.v));
    ("tension_duality", rel(l, r, sc))
}

/// Every grid identity for one sample, using `flux` as the advection stencil.
pub fn grid_identities(s: &Sample, flux: FluxFn) -> Vec<(&'static str, f64)> {
    let mut out = Vec::new();
    out.extend(sbp_gradient(s));
    out.extend(sbp_normal_viscous(s));
    out.extend(sbp_shear_viscous(s));
    out.extend(sbp_cross_viscous(s));
    out.extend(sbp_scalar_diffusion(s));
    out.extend(skew_normal(s));
    out.extend(skew_tangential(s));
    out.push(momentum_skew(s));
    out.push(advection_mass(s, flux));
    out.push(tension_duality(s, flux));
    out
}

/// Worst relative violation of `g_avg (a - b) = F(a) - F(b)` and
/// `r_avg (a - b) = rho(a) - rho(b)` over `n` random pairs.
pub fn algebraic_identities(n: usize, seed: u64) -> [(&'static str, f64); 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut wg, mut wr) = (0.0f64, 0.0f64);
    for _ in 0..n {
        let a: f64 = rng.gen_range(-0.5..1.5);
        let b: f64 = rng.gen_range(-0.5..1.5);
        let lhs = g_avg(a, b) * (a - b);
        let fa = bulk_potential(a);
        let fb = bulk_potential(b);
        wg = wg.max(rel(lhs, fa - fb, fa.abs() + fb.abs()));

        let r1 = 10f64.powf(rng.gen_range(-1.0..3.0));
        let r2 = 10f64.powf(rng.gen_range(-1.0..3.0));
        let fl = FluidPair::new(r1, r2, 1.0, 1.0).expect("positive");
        let a: f64 = rng.gen_range(0.0..1.0);
        let b: f64 = rng.gen_range(0.0..1.0);
        let lhs = r_avg(a, b, &fl) * (a - b);
        let (ra, rb) = (fl.density(a), fl.density(b));
        wr = wr.max(rel(lhs, ra - rb, ra.abs() + rb.abs()));
    }
    [("g_avg", wg), ("r_avg", wr)]
}

/// Grid used for size `m`: `m x 3m/2` cells on `[0, 1] x [0, 1.5]`.
pub fn suite_grid(m: usize) -> GridSpec {
    GridSpec::new(m, m + m / 2, 1.0, 1.5).expect("valid suite grid")
}

/// Runs the grid identities at every suite size and boundary family.
pub fn run_suite_with(flux: FluxFn) -> SelftestReport {
    let mut checks = Vec::new();
    for (seed, &m) in SIZES.iter().enumerate() {
        for (k, (name, bc)) in bc_families().into_iter().enumerate() {
            let s = Sample::new(suite_grid(m), bc, (seed * 16 + k) as u64);
            for (id, v) in grid_identities(&s, flux) {
                checks.push(IdentityCheck { name: id, bc: name, m, violation: v });
            }
        }
    }
    for (id, v) in algebraic_identities(100_000, 7) {
        checks.push(IdentityCheck { name: id, bc: "none", m: 0, violation: v });
    }
    SelftestReport { checks }
}

pub fn selftest() -> SelftestReport {
    run_suite_with(ch_advection_flux)
}
