#![allow(dead_code)]

use qnsch::grid::{BcSet, GridSpec};
use qnsch::physics::{FluidPair, NondimGroups};
use qnsch::scheme::{SchemeKind, SchemeParams, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fluids() -> FluidPair {
    FluidPair::new(3.0, 1.0, 2.0, 1.0).unwrap()
}

pub fn params(kind: SchemeKind, bc: BcSet, dt: f64) -> SchemeParams {
    let fl = fluids();
    let groups = NondimGroups::asymptotic(10.0, 1.0, 1.0, 0.05, &fl, None).unwrap();
    SchemeParams::new(groups, fl, dt, kind, bc).unwrap()
}

/// Random state with `c` in `[0.2, 0.8]` and ghosts filled.
pub fn random_state(g: GridSpec, p: &SchemeParams, seed: u64) -> State {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = State::zeros(g, p.kind);
    s.c.data.iter_mut().for_each(|x| *x = rng.gen_range(0.2..0.8));
    s.mu.data.iter_mut().for_each(|x| *x = rng.gen_range(-1.0..1.0));
    s.p.data.iter_mut().for_each(|x| *x = rng.gen_range(-1.0..1.0));
    s.u.data.iter_mut().for_each(|x| *x = rng.gen_range(-1.0..1.0));
    s.v.data.iter_mut().for_each(|x| *x = rng.gen_range(-1.0..1.0));
    if let Some(t) = s.tilde.as_mut() {
        t.u.data.iter_mut().for_each(|x| *x = rng.gen_range(-1.0..1.0));
        t.v.data.iter_mut().for_each(|x| *x = rng.gen_range(-1.0..1.0));
    }
    s.fill_ghosts(p);
    s
}

/// Smooth state: a gentle phase bump at rest.
pub fn smooth_state(g: GridSpec, p: &SchemeParams) -> State {
    use std::f64::consts::PI;
    let mut s = State::zeros(g, p.kind);
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            let (x, y) = (g.xc(i) / g.lx, g.yc(j) / g.ly);
            s.c[(i, j)] = 0.5 + 0.2 * (2.0 * PI * x).cos() * (PI * y).cos();
        }
    }
    s.fill_ghosts(p);
    s
}
