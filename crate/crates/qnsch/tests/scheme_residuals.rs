mod common;

use common::{params, random_state};
use proptest::prelude::*;
use qnsch::grid::{BcSet, GridSpec};
use qnsch::scheme::{half_time_fields, residual_primitive, residual_projection, Residual, SchemeKind, State};

fn residual_of(kind: SchemeKind, old: &State, new: &State, p: &qnsch::scheme::SchemeParams) -> Residual {
    match kind {
        SchemeKind::Primitive => residual_primitive(old, new, p).unwrap(),
        SchemeKind::Projection => residual_projection(old, new, p).unwrap(),
    }
}

#[test]
fn quiescent_pure_phase_is_an_exact_solution() {
    for kind in [SchemeKind::Primitive, SchemeKind::Projection] {
        for bc in [BcSet::walls(), BcSet::channel(), BcSet::periodic()] {
            let mut p = params(kind, bc, 1e-2);
            p.groups.fr = f64::INFINITY;
            let g = GridSpec::new(8, 12, 1.0, 1.5).unwrap();
            let mut s = State::zeros(g, kind);
            s.c.fill(1.0);
            s.fill_ghosts(&p);
            let r = residual_of(kind, &s, &s, &p);
            assert!(r.max_norm(&p) <= 1e-14, "{kind:?} {bc:?}: {:?}", r.norms(&p));
        }
    }
}

#[test]
fn half_time_fields_of_a_ramp() {
    let g = GridSpec::new(4, 4, 1.0, 1.0).unwrap();
    let p = params(SchemeKind::Primitive, BcSet::walls(), 1e-2);
    let mut s = State::zeros(g, SchemeKind::Primitive);
    for j in 1..=4 {
        for i in 1..=4 {
            s.c[(i, j)] = g.xc(i);
        }
    }
    s.fill_ghosts(&p);
    let (_, _, gsq) = half_time_fields(&s, &s, &p.fluids);
    for j in 1..=4 {
        for i in 2..=3 {
            assert!((gsq[(i, j)] - 1.0).abs() < 1e-14);
        }
    }
}

#[test]
fn half_time_fields_of_equal_levels_are_single_level_values() {
    let g = GridSpec::new(8, 8, 1.0, 1.0).unwrap();
    let p = params(SchemeKind::Primitive, BcSet::periodic(), 1e-2);
    let s = random_state(g, &p, 3);
    let (rho, f, _) = half_time_fields(&s, &s, &p.fluids);
    for j in 1..=8 {
        for i in 1..=8 {
            let c = s.c[(i, j)];
            assert!((rho[(i, j)] - p.fluids.density(c)).abs() < 1e-14);
            assert!((f[(i, j)] - qnsch::physics::bulk_potential(c)).abs() < 1e-16);
        }
    }
}

fn shift_x(s: &State, p: &qnsch::scheme::SchemeParams) -> State {
    macro_rules! shift {
        ($f:expr, $bc:expr) => {{
            let src = $f.clone();
            let (rx, ry) = src.unknowns(&$bc);
            let (x0, n) = (*rx.start(), rx.end() - rx.start() + 1);
            for j in ry {
                for i in rx.clone() {
                    $f.set(i, j, src.get(x0 + (i - x0 + n - 1) % n, j));
                }
            }
        }};
    }
    let mut out = s.clone();
    let bc = p.bc;
    shift!(out.c, bc);
    shift!(out.mu, bc);
    shift!(out.p, bc);
    shift!(out.u, bc);
    shift!(out.v, bc);
    if let Some(t) = out.tilde.as_mut() {
        shift!(t.u, bc);
        shift!(t.v, bc);
    }
    out.fill_ghosts(p);
    out
}

fn assert_shifted(a: &Residual, b: &Residual, p: &qnsch::scheme::SchemeParams) {
    macro_rules! check {
        ($fa:expr, $fb:expr) => {{
            let (rx, ry) = $fa.unknowns(&p.bc);
            let (x0, n) = (*rx.start(), rx.end() - rx.start() + 1);
            for j in ry {
                for i in rx.clone() {
                    let from = x0 + (i - x0 + n - 1) % n;
                    assert_eq!($fb.get(i, j).to_bits(), $fa.get(from, j).to_bits(), "at ({i},{j})");
                }
            }
        }};
    }
    check!(a.mom_x, b.mom_x);
    check!(a.mom_y, b.mom_y);
    check!(a.mass, b.mass);
    check!(a.phase, b.phase);
    check!(a.chem, b.chem);
    if let (Some(pa), Some(pb)) = (&a.proj, &b.proj) {
        check!(pa.u, pb.u);
        check!(pa.v, pb.v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn periodic_residual_is_translation_equivariant(seed in 0u64..10_000, proj in any::<bool>()) {
        let kind = if proj { SchemeKind::Projection } else { SchemeKind::Primitive };
        let p = params(kind, BcSet::periodic(), 1e-2);
        let g = GridSpec::new(8, 8, 1.0, 1.0).unwrap();
        let old = random_state(g, &p, seed);
        let new = random_state(g, &p, seed ^ 0x9e37);
        let r = residual_of(kind, &old, &new, &p);
        let rs = residual_of(kind, &shift_x(&old, &p), &shift_x(&new, &p), &p);
        assert_shifted(&r, &rs, &p);
    }

    #[test]
    fn residual_of_random_fields_is_finite(seed in 0u64..10_000, proj in any::<bool>()) {
        let kind = if proj { SchemeKind::Projection } else { SchemeKind::Primitive };
        let p = params(kind, BcSet::channel(), 1e-2);
        let g = GridSpec::new(8, 8, 1.0, 1.0).unwrap();
        let old = random_state(g, &p, seed);
        let new = random_state(g, &p, seed + 1);
        prop_assert!(residual_of(kind, &old, &new, &p).max_norm(&p).is_finite());
    }
}

#[test]
fn projection_residual_requires_intermediate_velocity() {
    let p = params(SchemeKind::Projection, BcSet::walls(), 1e-2);
    let g = GridSpec::new(8, 8, 1.0, 1.0).unwrap();
    let s = State::zeros(g, SchemeKind::Primitive);
    let err = residual_projection(&s, &s, &p).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}
