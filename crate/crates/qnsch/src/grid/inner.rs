//! Discrete inner products (without the `h^2` measure) and the weighted
//! norms (with it).

use super::ops::{big_d_x, big_d_y, d_x, d_y, u_diff_y, v_diff_x};
use super::{CellField, EwField, NsField, VertexField};
use crate::error::{Error, Result};

/// `(phi, psi)_2` over interior cells.
pub fn cell_ip(phi: &CellField, psi: &CellField) -> f64 {
    let g = phi.grid();
    let mut s = 0.0;
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            s += phi[(i, j)] * psi[(i, j)];
        }
    }
    s
}

/// `[phi u, w]_ew = (phi, a_x(u w))_2`.
pub fn ew_ip_weighted(phi: &CellField, u: &EwField, w: &EwField) -> f64 {
    let g = u.grid();
    let mut s = 0.0;
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            let uw = u[(i, j)] * w[(i, j)] + u[(i + 1, j)] * w[(i + 1, j)];
            s += phi[(i, j)] * 0.5 * uw;
        }
    }
    s
}

/// `[phi v, w]_ns = (phi, a_y(v w))_2`.
pub fn ns_ip_weighted(phi: &CellField, v: &NsField, w: &NsField) -> f64 {
    let g = v.grid();
    let mut s = 0.0;
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            let vw = v[(i, j)] * w[(i, j)] + v[(i, j + 1)] * w[(i, j + 1)];
            s += phi[(i, j)] * 0.5 * vw;
        }
    }
    s
}

/// `<phi f, q>_vc = (phi, A_vc(f q))_2`.
pub fn vc_ip_weighted(phi: &CellField, f: &VertexField, q: &VertexField) -> f64 {
    let g = f.grid();
    let mut s = 0.0;
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            let fq = f[(i - 1, j - 1)] * q[(i - 1, j - 1)]
                + f[(i, j - 1)] * q[(i, j - 1)]
                + f[(i - 1, j)] * q[(i - 1, j)]
                + f[(i, j)] * q[(i, j)];
            s += phi[(i, j)] * 0.25 * fq;
        }
    }
    s
}

pub fn ew_ip(u: &EwField, w: &EwField) -> f64 {
    ew_ip_weighted(&CellField::from_fn(*u.grid(), |_, _| 1.0), u, w)
}

pub fn ns_ip(v: &NsField, w: &NsField) -> f64 {
    ns_ip_weighted(&CellField::from_fn(*v.grid(), |_, _| 1.0), v, w)
}

pub fn vc_ip(f: &VertexField, q: &VertexField) -> f64 {
    vc_ip_weighted(&CellField::from_fn(*f.grid(), |_, _| 1.0), f, q)
}

fn check_weight(phi: &CellField, what: &str) -> Result<()> {
    let g = phi.grid();
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            let w = phi[(i, j)];
            if !(w >= 0.0) {
                return Err(Error::Domain(format!("{what}: weight {w} at cell ({i},{j}) is negative")));
            }
        }
    }
    Ok(())
}

/// `||phi||_2` with the `h^2` measure.
pub fn cell_l2(phi: &CellField) -> f64 {
    let h2 = phi.grid().h * phi.grid().h;
    (h2 * cell_ip(phi, phi)).sqrt()
}

/// `||sqrt(phi) u||` for a staggered velocity.
pub fn weighted_velocity(phi: &CellField, u: &EwField, v: &NsField) -> Result<f64> {
    check_weight(phi, "weighted velocity norm")?;
    let h2 = phi.grid().h * phi.grid().h;
    Ok((h2 * (ew_ip_weighted(phi, u, u) + ns_ip_weighted(phi, v, v))).sqrt())
}

/// `||sqrt(psi) grad_D phi||` for a cell scalar with ghosts filled.
pub fn weighted_gradient(psi: &CellField, phi: &CellField) -> Result<f64> {
    check_weight(psi, "weighted gradient norm")?;
    let h2 = phi.grid().h * phi.grid().h;
    let gx = big_d_x(phi);
    let gy = big_d_y(phi);
    Ok((h2 * (ew_ip_weighted(psi, &gx, &gx) + ns_ip_weighted(psi, &gy, &gy))).sqrt())
}

/// `||sqrt(phi) grad u||` over the four velocity-gradient components.
pub fn weighted_velocity_gradient(phi: &CellField, u: &EwField, v: &NsField) -> Result<f64> {
    check_weight(phi, "weighted velocity-gradient norm")?;
    let h2 = phi.grid().h * phi.grid().h;
    let dxu = d_x(u);
    let dyv = d_y(v);
    let dyu = u_diff_y(u);
    let dxv = v_diff_x(v);
    let s = cell_ip(phi, &dxu.mul(&dxu))
        + cell_ip(phi, &dyv.mul(&dyv))
        + vc_ip_weighted(phi, &dyu, &dyu)
        + vc_ip_weighted(phi, &dxv, &dxv);
    Ok((h2 * s).sqrt())
}

/// `||sqrt(phi) (d_x u + d_y v)||`.
pub fn weighted_divergence(phi: &CellField, u: &EwField, v: &NsField) -> Result<f64> {
    check_weight(phi, "weighted divergence norm")?;
    let h2 = phi.grid().h * phi.grid().h;
    let mut div = d_x(u);
    div.axpy(1.0, &d_y(v));
    Ok((h2 * cell_ip(phi, &div.mul(&div))).sqrt())
}

