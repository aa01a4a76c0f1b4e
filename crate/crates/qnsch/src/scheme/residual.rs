use super::{Frozen, Residual, SchemeKind, SchemeParams, State, Velocity};
use crate::error::{Error, Result};

/// Residual of every discrete equation at the iterate `s`, whose ghosts
/// must be current.
pub fn residual(fz: &Frozen, p: &SchemeParams, s: &State) -> Residual {
    let g = fz.grid;
    let bc = p.bc;
    let mut r = Residual::zeros(g, p.kind);
    let (kx, jy) = r.mom_x.unknowns(&bc);
    let (iy, ky) = r.mom_y.unknowns(&bc);
    match p.kind {
        SchemeKind::Primitive => {
            for j in jy.clone() {
                for k in kx.clone() {
                    r.mom_x[(k, j)] = fz.mom_x(p, s, k, j);
                }
            }
            for k in ky.clone() {
                for i in iy.clone() {
                    r.mom_y[(i, k)] = fz.mom_y(p, s, i, k);
                }
            }
        }
        SchemeKind::Projection => {
            let mut pr = Velocity::zeros(g);
            let vb = p.velocity_bc();
            for j in jy.clone() {
                for k in kx.clone() {
                    r.mom_x[(k, j)] = fz.pred_x(p, s, k, j);
                }
            }
            for k in ky.clone() {
                for i in iy.clone() {
                    r.mom_y[(i, k)] = fz.pred_y(p, s, i, k);
                }
            }
            let (kx, jy) = pr.u.unknowns(&vb);
            for j in jy {
                for k in kx.clone() {
                    pr.u[(k, j)] = fz.proj_x(p, s, k, j);
                }
            }
            let (iy, ky) = pr.v.unknowns(&vb);
            for k in ky {
                for i in iy.clone() {
                    pr.v[(i, k)] = fz.proj_y(p, s, i, k);
                }
            }
            r.proj = Some(pr);
        }
    }
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            r.mass[(i, j)] = fz.mass(p, s, i, j);
            r.phase[(i, j)] = fz.phase(p, s, i, j);
            r.chem[(i, j)] = fz.chem(p, s, i, j);
        }
    }
    r
}

fn prepared(new: &State, p: &SchemeParams) -> Result<State> {
    let mut s = new.clone();
    s.conform(p.kind);
    s.fill_ghosts(p);
    let fl = &p.fluids;
    let (nx, _) = s.c.dims();
    for (k, &c) in s.c.data.iter().enumerate() {
        if !fl.admissible(c) {
            return Err(Error::Domain(format!("density undefined at c = {c} in cell ({}, {})", k % nx, k / nx)));
        }
    }
    Ok(s)
}

/// Residual of the primitive scheme for the step `old -> new`.
pub fn residual_primitive(old: &State, new: &State, p: &SchemeParams) -> Result<Residual> {
    let p = SchemeParams { kind: SchemeKind::Primitive, ..*p };
    let fz = Frozen::new(old, &p)?;
    Ok(residual(&fz, &p, &prepared(new, &p)?))
}

/// Residual of the projection scheme for the step `old -> new`; `new`
/// must carry the intermediate velocity.
pub fn residual_projection(old: &State, new: &State, p: &SchemeParams) -> Result<Residual> {
    if new.tilde.is_none() {
        return Err(Error::Usage("projection residual needs the intermediate velocity".into()));
    }
    let p = SchemeParams { kind: SchemeKind::Projection, ..*p };
    let fz = Frozen::new(old, &p)?;
    Ok(residual(&fz, &p, &prepared(new, &p)?))
}
