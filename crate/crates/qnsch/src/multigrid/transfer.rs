//! Inter-grid transfers between adjacent levels.

use crate::grid::{BcSet, CellField, EwField, GridSpec, NsField};
use crate::scheme::{Residual, SchemeParams, State, Velocity};

/// Four-child average.
pub fn restrict_cell(f: &CellField, coarse: GridSpec) -> CellField {
    let mut out = CellField::zeros(coarse);
    for jc in 1..=coarse.m2 {
        for ic in 1..=coarse.m1 {
            let (i, j) = (2 * ic - 1, 2 * jc - 1);
            out[(ic, jc)] = 0.25 * (f[(i, j)] + f[(i + 1, j)] + f[(i, j + 1)] + f[(i + 1, j + 1)]);
        }
    }
    out
}

/// Mean of the two fine faces lying on each coarse face.
pub fn restrict_ew(u: &EwField, coarse: GridSpec) -> EwField {
    let mut out = EwField::zeros(coarse);
    for jc in 1..=coarse.m2 {
        for kc in 1..=coarse.m1 + 1 {
            let (k, j) = (2 * kc - 1, 2 * jc - 1);
            out[(kc, jc)] = 0.5 * (u[(k, j)] + u[(k, j + 1)]);
        }
    }
    out
}

pub fn restrict_ns(v: &NsField, coarse: GridSpec) -> NsField {
    let mut out = NsField::zeros(coarse);
    for kc in 1..=coarse.m2 + 1 {
        for ic in 1..=coarse.m1 {
            let (i, k) = (2 * ic - 1, 2 * kc - 1);
            out[(ic, kc)] = 0.5 * (v[(i, k)] + v[(i + 1, k)]);
        }
    }
    out
}

/// Coarse neighbour index for fine index `f` (1-based) and the parent.
#[inline]
fn parent(f: usize) -> (usize, usize) {
    let p = (f + 1) / 2;
    let q = if f % 2 == 1 { p - 1 } else { p + 1 };
    (p, q)
}

/// Bilinear interpolation; `e` must have current ghosts.
pub fn prolong_cell(e: &CellField, fine: GridSpec) -> CellField {
    let mut out = CellField::zeros(fine);
    for j in 1..=fine.m2 {
        let (jp, jq) = parent(j);
        for i in 1..=fine.m1 {
            let (ip, iq) = parent(i);
            out[(i, j)] = (9.0 * e[(ip, jp)] + 3.0 * e[(iq, jp)] + 3.0 * e[(ip, jq)] + e[(iq, jq)]) / 16.0;
        }
    }
    out
}

/// Linear in the tangential direction, midpoint in the normal direction;
/// fills fine faces `k = 1..=m1+1`.
pub fn prolong_ew(e: &EwField, fine: GridSpec) -> EwField {
    let mut out = EwField::zeros(fine);
    for j in 1..=fine.m2 {
        let (jp, jq) = parent(j);
        let tang = |kc: usize| 0.75 * e[(kc, jp)] + 0.25 * e[(kc, jq)];
        for k in 1..=fine.m1 + 1 {
            out[(k, j)] = if k % 2 == 1 {
                tang((k + 1) / 2)
            } else {
                0.5 * (tang(k / 2) + tang(k / 2 + 1))
            };
        }
    }
    out
}

pub fn prolong_ns(e: &NsField, fine: GridSpec) -> NsField {
    let mut out = NsField::zeros(fine);
    for k in 1..=fine.m2 + 1 {
        for i in 1..=fine.m1 {
            let (ip, iq) = parent(i);
            let tang = |kc: usize| 0.75 * e[(ip, kc)] + 0.25 * e[(iq, kc)];
            out[(i, k)] = if k % 2 == 1 {
                tang((k + 1) / 2)
            } else {
                0.5 * (tang(k / 2) + tang(k / 2 + 1))
            };
        }
    }
    out
}

fn restrict_velocity(w: &Velocity, coarse: GridSpec) -> Velocity {
    Velocity { u: restrict_ew(&w.u, coarse), v: restrict_ns(&w.v, coarse) }
}

/// Restricted iterate with ghosts filled.
pub fn restrict_state(s: &State, coarse: GridSpec, p: &SchemeParams) -> State {
    let mut out = State {
        c: restrict_cell(&s.c, coarse),
        mu: restrict_cell(&s.mu, coarse),
        p: restrict_cell(&s.p, coarse),
        u: restrict_ew(&s.u, coarse),
        v: restrict_ns(&s.v, coarse),
        tilde: s.tilde.as_ref().map(|t| restrict_velocity(t, coarse)),
        time: s.time,
    };
    out.fill_ghosts(p);
    out
}

pub fn restrict_residual(r: &Residual, coarse: GridSpec) -> Residual {
    Residual {
        mom_x: restrict_ew(&r.mom_x, coarse),
        mom_y: restrict_ns(&r.mom_y, coarse),
        mass: restrict_cell(&r.mass, coarse),
        phase: restrict_cell(&r.phase, coarse),
        chem: restrict_cell(&r.chem, coarse),
        proj: r.proj.as_ref().map(|w| restrict_velocity(w, coarse)),
    }
}

fn add_cell(x: &mut CellField, e: &CellField, bc: &BcSet) {
    let fine = *x.grid();
    let mut ec = e.clone();
    ec.fill_ghost(bc);
    x.axpy(1.0, &prolong_cell(&ec, fine));
}

fn add_velocity(u: &mut EwField, v: &mut NsField, eu: &EwField, ev: &NsField, bc: &BcSet) {
    let fine = *u.grid();
    let (mut eu, mut ev) = (eu.clone(), ev.clone());
    eu.fill_ghost(bc);
    ev.fill_ghost(bc);
    u.axpy(1.0, &prolong_ew(&eu, fine));
    v.axpy(1.0, &prolong_ns(&ev, fine));
}

/// `fine += P (coarse_new - coarse_old)`, then refresh the fine ghosts.
pub fn prolong_correction(fine: &mut State, coarse_new: &State, coarse_old: &State, p: &SchemeParams) {
    let bc = p.bc;
    add_cell(&mut fine.c, &coarse_new.c.sub(&coarse_old.c), &bc);
    add_cell(&mut fine.mu, &coarse_new.mu.sub(&coarse_old.mu), &bc);
    add_cell(&mut fine.p, &coarse_new.p.sub(&coarse_old.p), &bc);
    let vb = p.velocity_bc();
    add_velocity(
        &mut fine.u,
        &mut fine.v,
        &coarse_new.u.sub(&coarse_old.u),
        &coarse_new.v.sub(&coarse_old.v),
        &vb,
    );
    if let (Some(t), Some(tn), Some(to)) = (fine.tilde.as_mut(), coarse_new.tilde.as_ref(), coarse_old.tilde.as_ref()) {
        add_velocity(&mut t.u, &mut t.v, &tn.u.sub(&to.u), &tn.v.sub(&to.v), &bc);
    }
    fine.fill_ghosts(p);
}
