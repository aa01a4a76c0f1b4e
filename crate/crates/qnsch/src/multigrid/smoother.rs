//! Red-black smoothers. Cell-local solves update in place; box solves of
//! one colour are computed against the same iterate and applied together,
//! so a sweep does not depend on the traversal order inside a colour.

use log::warn;

use super::MgConfig;
use crate::scheme::{Frozen, Residual, SchemeKind, SchemeParams, State};

/// Unknown addressed by a box solve.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Var {
    U(usize, usize),
    V(usize, usize),
    P(usize, usize),
    Ut(usize, usize),
    Vt(usize, usize),
}

/// Counters for degenerate local solves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SmoothStats {
    pub singular_ch: usize,
    pub singular_box: usize,
}

fn get(s: &State, v: Var) -> f64 {
    match v {
        Var::U(k, j) => s.u[(k, j)],
        Var::V(i, k) => s.v[(i, k)],
        Var::P(i, j) => s.p[(i, j)],
        Var::Ut(k, j) => s.tilde.as_ref().unwrap().u[(k, j)],
        Var::Vt(i, k) => s.tilde.as_ref().unwrap().v[(i, k)],
    }
}

fn set(s: &mut State, p: &SchemeParams, v: Var, x: f64) {
    let vb = p.velocity_bc();
    match v {
        Var::U(k, j) => s.u.set_with_images(&vb, k, j, x),
        Var::V(i, k) => s.v.set_with_images(&vb, i, k, x),
        Var::P(i, j) => s.p.set_with_images(&p.bc, i, j, x),
        Var::Ut(k, j) => s.tilde.as_mut().unwrap().u.set_with_images(&p.bc, k, j, x),
        Var::Vt(i, k) => s.tilde.as_mut().unwrap().v.set_with_images(&p.bc, i, k, x),
    }
}

/// Residual minus FAS right-hand side of the equation attached to `v`.
fn eq(fz: &Frozen, p: &SchemeParams, s: &State, rhs: &Residual, v: Var) -> f64 {
    match v {
        Var::U(k, j) => fz.mom_x(p, s, k, j) - rhs.mom_x[(k, j)],
        Var::V(i, k) => fz.mom_y(p, s, i, k) - rhs.mom_y[(i, k)],
        Var::P(i, j) => fz.mass(p, s, i, j) - rhs.mass[(i, j)],
        Var::Ut(k, j) => fz.pred_x(p, s, k, j) - rhs.mom_x[(k, j)],
        Var::Vt(i, k) => fz.pred_y(p, s, i, k) - rhs.mom_y[(i, k)],
    }
}

/// Canonical index of face `k` along an axis with `n` cells, or `None`
/// when the face is a wall.
#[inline]
fn face(k: usize, n: usize, periodic: bool) -> Option<usize> {
    if periodic {
        Some(if k == n + 1 { 1 } else { k })
    } else if k == 1 || k == n + 1 {
        None
    } else {
        Some(k)
    }
}

/// Faces of cell `(i, j)` that carry unknowns: west, east, south, north.
fn cell_faces(fz: &Frozen, p: &SchemeParams, i: usize, j: usize, tilde: bool) -> [Option<Var>; 4] {
    let (g_m1, g_m2) = (fz.grid.m1, fz.grid.m2);
    let px = p.bc.is_periodic(crate::grid::Axis::X);
    let py = p.bc.is_periodic(crate::grid::Axis::Y);
    let mk_u = |k, j| if tilde { Var::Ut(k, j) } else { Var::U(k, j) };
    let mk_v = |i, k| if tilde { Var::Vt(i, k) } else { Var::V(i, k) };
    [
        face(i, g_m1, px).map(|k| mk_u(k, j)),
        face(i + 1, g_m1, px).map(|k| mk_u(k, j)),
        face(j, g_m2, py).map(|k| mk_v(i, k)),
        face(j + 1, g_m2, py).map(|k| mk_v(i, k)),
    ]
}

/// Gaussian elimination with partial pivoting on an `n x n` system.
/// Returns false when a pivot vanishes.
fn solve_dense<const N: usize>(a: &mut [[f64; N]; N], b: &mut [f64; N], n: usize) -> bool {
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col] == 0.0 || !a[piv][col].is_finite() {
            return false;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r][c] * b[c];
        }
        b[r] = s / a[r][r];
    }
    true
}

/// Local Newton solve of the phase and chemical-potential equations at
/// cell `(i, j)` for `(c_ij, mu_ij)`.
pub fn smooth_ch_cell(
    fz: &Frozen,
    p: &SchemeParams,
    cfg: &MgConfig,
    s: &mut State,
    rhs: &Residual,
    i: usize,
    j: usize,
    stats: &mut SmoothStats,
) {
    let bc = p.bc;
    let fl = p.fluids;
    let (f1, f2) = (rhs.phase[(i, j)], rhs.chem[(i, j)]);
    let eval = |s: &State| (fz.phase(p, s, i, j) - f1, fz.chem(p, s, i, j) - f2);
    for _ in 0..cfg.newton_iters {
        let (r1, r2) = eval(s);
        if r1.abs().max(r2.abs()) <= cfg.newton_tol {
            break;
        }
        let c0 = s.c[(i, j)];
        let m0 = s.mu[(i, j)];
        let dc = 1e-7 * (1.0 + c0.abs());
        s.c.set_with_images(&bc, i, j, c0 + dc);
        let (r1c, r2c) = eval(s);
        s.c.set_with_images(&bc, i, j, c0);
        // both equations are affine in mu
        s.mu.set_with_images(&bc, i, j, m0 + 1.0);
        let (r1m, r2m) = eval(s);
        s.mu.set_with_images(&bc, i, j, m0);
        let mut a = [[(r1c - r1) / dc, r1m - r1], [(r2c - r2) / dc, r2m - r2]];
        let mut b = [r1, r2];
        let (mut dcs, dms) = if solve_dense(&mut a, &mut b, 2) {
            (b[0], b[1])
        } else {
            stats.singular_ch += 1;
            warn!("singular CH Jacobian at cell ({i},{j}); damped fixed-point update");
            let a11 = (r1c - r1) / dc;
            let a22 = r2m - r2;
            let d1 = if a11 != 0.0 { 0.5 * r1 / a11 } else { 0.0 };
            let d2 = if a22 != 0.0 { 0.5 * r2 / a22 } else { 0.0 };
            (d1, d2)
        };
        let mut tries = 0;
        while !fl.admissible(c0 - dcs) && tries < 30 {
            dcs *= 0.5;
            tries += 1;
        }
        s.c.set_with_images(&bc, i, j, c0 - dcs);
        s.mu.set_with_images(&bc, i, j, m0 - dms);
    }
}

/// Correction of a box of unknowns computed against the current iterate.
struct BoxUpdate {
    vars: [Var; 5],
    delta: [f64; 5],
    n: usize,
}

/// Matrix of one box system. The box equations are linear in the box
/// unknowns; only the velocity diagonal depends on the current phase field,
/// through [`Frozen::phase_diag_x`] and [`Frozen::phase_diag_y`].
#[derive(Clone, Debug)]
struct BoxMatrix {
    vars: [Var; 5],
    n: usize,
    a: [[f64; 5]; 5],
    diag_ref: [f64; 5],
}

/// Box matrices of every cell of a level, assembled once per time step.
#[derive(Clone, Debug)]
pub struct BoxCache {
    boxes: Vec<BoxMatrix>,
}

fn phase_diag(fz: &Frozen, p: &SchemeParams, s: &State, v: Var) -> f64 {
    match v {
        Var::U(k, j) | Var::Ut(k, j) => fz.phase_diag_x(p, s, k, j),
        Var::V(i, k) | Var::Vt(i, k) => fz.phase_diag_y(p, s, i, k),
        Var::P(..) => 0.0,
    }
}

fn box_vars(fz: &Frozen, p: &SchemeParams, i: usize, j: usize) -> ([Var; 5], usize) {
    match p.kind {
        SchemeKind::Primitive => {
            let f = cell_faces(fz, p, i, j, false);
            collect(&[f[0], f[1], f[2], f[3], Some(Var::P(i, j))])
        }
        SchemeKind::Projection => collect(&cell_faces(fz, p, i, j, true)),
    }
}

impl BoxCache {
    /// Assembles the box matrices by unit perturbation of `s`, which is
    /// restored before returning.
    pub fn new(fz: &Frozen, p: &SchemeParams, s: &mut State) -> Self {
        let g = fz.grid;
        let zero = Residual::zeros(g, p.kind);
        let mut boxes = Vec::with_capacity(g.m1 * g.m2);
        for j in 1..=g.m2 {
            for i in 1..=g.m1 {
                let (vars, n) = box_vars(fz, p, i, j);
                let mut base = [0.0; 5];
                for r in 0..n {
                    base[r] = eq(fz, p, s, &zero, vars[r]);
                }
                let mut a = [[0.0; 5]; 5];
                for col in 0..n {
                    let w = vars[col];
                    let x0 = get(s, w);
                    set(s, p, w, x0 + 1.0);
                    for r in 0..n {
                        a[r][col] = eq(fz, p, s, &zero, vars[r]) - base[r];
                    }
                    set(s, p, w, x0);
                }
                let mut diag_ref = [0.0; 5];
                for r in 0..n {
                    diag_ref[r] = phase_diag(fz, p, s, vars[r]);
                }
                boxes.push(BoxMatrix { vars, n, a, diag_ref });
            }
        }
        Self { boxes }
    }
}

/// Linear box solve of cell `(i, j)` against the current iterate.
fn box_solve(
    fz: &Frozen,
    p: &SchemeParams,
    s: &State,
    rhs: &Residual,
    cache: &BoxCache,
    i: usize,
    j: usize,
    stats: &mut SmoothStats,
) -> BoxUpdate {
    let bm = &cache.boxes[(j - 1) * fz.grid.m1 + (i - 1)];
    let n = bm.n;
    let mut base = [0.0; 5];
    let mut a0 = bm.a;
    for r in 0..n {
        let v = bm.vars[r];
        base[r] = eq(fz, p, s, rhs, v);
        a0[r][r] += phase_diag(fz, p, s, v) - bm.diag_ref[r];
    }
    let mut a = a0;
    let mut b = base;
    if !solve_dense(&mut a, &mut b, n) {
        stats.singular_box += 1;
        warn!("singular box system at cell ({i},{j}); diagonal regularisation applied");
        let scale = (0..n).map(|r| a0[r][r].abs()).fold(0.0f64, f64::max).max(1.0);
        a = a0;
        for (r, row) in a.iter_mut().enumerate().take(n) {
            row[r] += 1e-12 * scale;
        }
        b = base;
        if !solve_dense(&mut a, &mut b, n) {
            b = [0.0; 5];
        }
    }
    let mut delta = [0.0; 5];
    for r in 0..n {
        delta[r] = -b[r];
    }
    BoxUpdate { vars: bm.vars, delta, n }
}

fn collect(list: &[Option<Var>]) -> ([Var; 5], usize) {
    let mut out = [Var::P(0, 0); 5];
    let mut n = 0;
    for v in list.iter().flatten() {
        out[n] = *v;
        n += 1;
    }
    (out, n)
}

fn apply(s: &mut State, p: &SchemeParams, ups: &[BoxUpdate], relax: f64) {
    for up in ups {
        for k in 0..up.n {
            let v = up.vars[k];
            let x = get(s, v) + relax * up.delta[k];
            set(s, p, v, x);
        }
    }
}

/// Explicit velocity correction on the faces of cell `(i, j)`.
fn correct_faces(fz: &Frozen, p: &SchemeParams, s: &mut State, rhs: &Residual, i: usize, j: usize) {
    let faces = cell_faces(fz, p, i, j, false);
    let vb = p.velocity_bc();
    let fl = &p.fluids;
    let rp = rhs.proj.as_ref().expect("projection rhs");
    for f in faces.into_iter().flatten() {
        match f {
            Var::U(k, jj) => {
                let a = 0.5 * (fl.density(s.c[(k - 1, jj)]) + fl.density(s.c[(k, jj)])) / p.dt;
                let r = fz.proj_x(p, s, k, jj) - rp.u[(k, jj)];
                let x = s.u[(k, jj)] - r / a;
                s.u.set_with_images(&vb, k, jj, x);
            }
            Var::V(ii, k) => {
                let a = 0.5 * (fl.density(s.c[(ii, k - 1)]) + fl.density(s.c[(ii, k)])) / p.dt;
                let r = fz.proj_y(p, s, ii, k) - rp.v[(ii, k)];
                let x = s.v[(ii, k)] - r / a;
                s.v.set_with_images(&vb, ii, k, x);
            }
            _ => unreachable!(),
        }
    }
}

/// Pressure update at cell `(i, j)` with the face velocities slaved to it
/// through the correction formula.
fn pressure_cell(fz: &Frozen, p: &SchemeParams, s: &mut State, rhs: &Residual, i: usize, j: usize) {
    let bc = p.bc;
    let f = rhs.mass[(i, j)];
    let p0 = s.p[(i, j)];
    correct_faces(fz, p, s, rhs, i, j);
    let r0 = fz.mass(p, s, i, j) - f;
    s.p.set_with_images(&bc, i, j, p0 + 1.0);
    correct_faces(fz, p, s, rhs, i, j);
    let r1 = fz.mass(p, s, i, j) - f;
    let slope = r1 - r0;
    let pn = if slope != 0.0 && slope.is_finite() { p0 - r0 / slope } else { p0 };
    s.p.set_with_images(&bc, i, j, pn);
    correct_faces(fz, p, s, rhs, i, j);
}

/// One red-black sweep of the scheme's smoother.
pub fn sweep(
    fz: &Frozen,
    p: &SchemeParams,
    cfg: &MgConfig,
    s: &mut State,
    rhs: &Residual,
    cache: &BoxCache,
) -> SmoothStats {
    let g = fz.grid;
    let mut stats = SmoothStats::default();
    for color in 0..2 {
        let cells: Vec<(usize, usize)> = (1..=g.m2)
            .flat_map(|j| (1..=g.m1).map(move |i| (i, j)))
            .filter(|(i, j)| (i + j) % 2 == color)
            .collect();
        for &(i, j) in &cells {
            smooth_ch_cell(fz, p, cfg, s, rhs, i, j, &mut stats);
        }
        let ups: Vec<BoxUpdate> =
            cells.iter().map(|&(i, j)| box_solve(fz, p, s, rhs, cache, i, j, &mut stats)).collect();
        apply(s, p, &ups, cfg.box_relax);
        if p.kind == SchemeKind::Projection {
            for &(i, j) in &cells {
                pressure_cell(fz, p, s, rhs, i, j);
            }
        }
    }
    stats
}
