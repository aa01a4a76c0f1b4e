//! Field-level forms of the special stencils, built from the staggered
//! operators. The smoother works with the pointwise versions in `local`;
//! these are the reference compositions.

use super::{State, Velocity};
use crate::grid::ops::{a_x, a_y, big_a_x, big_a_y, big_d_x, big_d_y, cell_to_vertex, d_x, d_y, u_avg_y, u_diff_y,
    v_avg_x, v_diff_x, vertex_avg_x, vertex_avg_y, vertex_diff_x, vertex_diff_y};
use crate::grid::{BcSet, CellField, EwField, NsField};
use crate::physics::{bulk_potential, FluidPair};

/// Phase advection with outward-neighbour density weighting:
/// `1/2 (rho_{i+1} (c_{i+1}-c_i)/h u_{i+1/2} + rho_{i-1} (c_i-c_{i-1})/h u_{i-1/2}) + (y)`.
pub fn ch_advection_flux(rho: &CellField, c: &CellField, u: &EwField, v: &NsField) -> CellField {
    let g = *c.grid();
    let h = g.h;
    let mut out = CellField::zeros(g);
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            let c0 = c[(i, j)];
            out[(i, j)] = 0.5
                * (rho[(i + 1, j)] * (c[(i + 1, j)] - c0) / h * u[(i + 1, j)]
                    + rho[(i - 1, j)] * (c0 - c[(i - 1, j)]) / h * u[(i, j)]
                    + rho[(i, j + 1)] * (c[(i, j + 1)] - c0) / h * v[(i, j + 1)]
                    + rho[(i, j - 1)] * (c0 - c[(i, j - 1)]) / h * v[(i, j)]);
        }
    }
    out
}

/// Surface-tension force with cross-paired density and potential.
pub fn surface_tension_force(rho: &CellField, mu: &CellField, c: &CellField) -> Velocity {
    let g = *c.grid();
    let h = g.h;
    let fx = EwField::from_fn(g, |k, j| {
        if (1..=g.m1 + 1).contains(&k) && (1..=g.m2).contains(&j) {
            0.5 * (rho[(k, j)] * mu[(k - 1, j)] + rho[(k - 1, j)] * mu[(k, j)]) * (c[(k, j)] - c[(k - 1, j)]) / h
        } else {
            0.0
        }
    });
    let fy = NsField::from_fn(g, |i, k| {
        if (1..=g.m1).contains(&i) && (1..=g.m2 + 1).contains(&k) {
            0.5 * (rho[(i, k)] * mu[(i, k - 1)] + rho[(i, k - 1)] * mu[(i, k)]) * (c[(i, k)] - c[(i, k - 1)]) / h
        } else {
            0.0
        }
    });
    Velocity { u: fx, v: fy }
}

/// Convective term plus the skew-symmetrising half divergence.
/// `rho` and the velocities need current ghosts; `bc` refreshes the
/// ghosts of intermediate cell products.
pub fn momentum_advection(rho: &CellField, adv: &Velocity, target: &Velocity, bc: &BcSet) -> Velocity {
    let rho_v = cell_to_vertex(rho);
    let mut px = rho.mul(&a_x(&adv.u));
    px.fill_ghost(bc);
    let mut py = rho.mul(&a_y(&adv.v));
    py.fill_ghost(bc);
    let qx = rho_v.mul(&v_avg_x(&adv.v));
    let qy = rho_v.mul(&u_avg_y(&adv.u));

    let mut flux_x = px.mul(&d_x(&target.u));
    flux_x.fill_ghost(bc);
    let mut ax = big_a_x(&flux_x);
    ax.axpy(1.0, &vertex_avg_y(&qx.mul(&u_diff_y(&target.u))));
    let mut divx = big_d_x(&px);
    divx.axpy(1.0, &vertex_diff_y(&qx));
    ax.axpy(0.5, &divx.mul(&target.u));

    let mut flux_y = py.mul(&d_y(&target.v));
    flux_y.fill_ghost(bc);
    let mut ay = big_a_y(&flux_y);
    ay.axpy(1.0, &vertex_avg_x(&qy.mul(&v_diff_x(&target.v))));
    let mut divy = big_d_y(&py);
    divy.axpy(1.0, &vertex_diff_x(&qy));
    ay.axpy(0.5, &divy.mul(&target.v));

    Velocity { u: ax, v: ay }
}

/// Temporal means `(rho^{n+1/2}, F^{n+1/2}, |grad_D c|^2^{n+1/2})` on
/// interior cells.
pub fn half_time_fields(old: &State, new: &State, fl: &FluidPair) -> (CellField, CellField, CellField) {
    let g = *old.grid();
    let mut rho = CellField::zeros(g);
    let mut f = CellField::zeros(g);
    let mut gsq = CellField::zeros(g);
    let (gx_o, gy_o) = (big_d_x(&old.c), big_d_y(&old.c));
    let (gx_n, gy_n) = (big_d_x(&new.c), big_d_y(&new.c));
    let cell_sq = |gx: &EwField, gy: &NsField, i: usize, j: usize| {
        0.5 * (gx[(i, j)].powi(2) + gx[(i + 1, j)].powi(2) + gy[(i, j)].powi(2) + gy[(i, j + 1)].powi(2))
    };
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            let (co, cn) = (old.c[(i, j)], new.c[(i, j)]);
            rho[(i, j)] = 0.5 * (fl.density(co) + fl.density(cn));
            f[(i, j)] = 0.5 * (bulk_potential(co) + bulk_potential(cn));
            gsq[(i, j)] = 0.5 * (cell_sq(&gx_o, &gy_o, i, j) + cell_sq(&gx_n, &gy_n, i, j));
        }
    }
    (rho, f, gsq)
}
