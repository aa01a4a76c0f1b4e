mod common;

use common::{params, smooth_state};
use qnsch::diagnostics::{discrete_energy, total_masses};
use qnsch::grid::{BcSet, GridSpec};
use qnsch::multigrid::{solve_timestep, Level, MgConfig};
use qnsch::scheme::{residual_primitive, residual_projection, Frozen, SchemeKind, SchemeParams, State};
use qnsch::Error;

fn setup(kind: SchemeKind) -> (State, SchemeParams) {
    let p = params(kind, BcSet::channel(), 2e-3);
    let g = GridSpec::new(16, 16, 1.0, 1.0).unwrap();
    (smooth_state(g, &p), p)
}

#[test]
fn converged_step_satisfies_the_scheme() {
    for kind in [SchemeKind::Primitive, SchemeKind::Projection] {
        let (old, p) = setup(kind);
        let cfg = MgConfig::default();
        let (new, stats) = solve_timestep(&old, &p, &cfg).unwrap();
        assert!(stats.cycles >= 1);
        let r = match kind {
            SchemeKind::Primitive => residual_primitive(&old, &new, &p).unwrap(),
            SchemeKind::Projection => residual_projection(&old, &new, &p).unwrap(),
        };
        assert!(r.max_norm(&p) <= cfg.tol, "{kind:?}: {:?}", r.norms(&p));
        let (m0, _) = total_masses(&old, &p.fluids).unwrap();
        let (m1, _) = total_masses(&new, &p.fluids).unwrap();
        assert!(((m1 - m0) / m0).abs() <= 1e-10, "{kind:?}: mass {m0} -> {m1}");
        let e0 = discrete_energy(&old, &p).unwrap();
        let e1 = discrete_energy(&new, &p).unwrap();
        assert!(e1 <= e0 + 10.0 * cfg.tol * e0.abs(), "{kind:?}: energy {e0} -> {e1}");
    }
}

#[test]
fn solves_are_bitwise_reproducible() {
    for kind in [SchemeKind::Primitive, SchemeKind::Projection] {
        let (old, p) = setup(kind);
        let cfg = MgConfig::default();
        let (a, sa) = solve_timestep(&old, &p, &cfg).unwrap();
        let (b, sb) = solve_timestep(&old, &p, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(sa.history, sb.history);
    }
}

#[test]
fn equilibrium_needs_no_cycles() {
    let mut p = params(SchemeKind::Primitive, BcSet::walls(), 1e-2);
    p.groups.fr = f64::INFINITY;
    let g = GridSpec::new(16, 16, 1.0, 1.0).unwrap();
    let mut s = State::zeros(g, SchemeKind::Primitive);
    s.c.fill(1.0);
    s.fill_ghosts(&p);
    let (new, stats) = solve_timestep(&s, &p, &MgConfig::default()).unwrap();
    assert_eq!(stats.cycles, 0);
    assert!(new.c == s.c && new.u == s.u && new.v == s.v && new.p == s.p && new.mu == s.mu);
}

#[test]
fn converged_state_is_a_smoother_fixed_point() {
    for kind in [SchemeKind::Primitive, SchemeKind::Projection] {
        let (old, p) = setup(kind);
        let cfg = MgConfig { tol: 1e-9, ..MgConfig::default() };
        let (new, _) = solve_timestep(&old, &p, &cfg).unwrap();
        let mut lv = Level::new(Frozen::new(&old, &p).unwrap(), new.clone(), &p);
        lv.sweep(&p, &cfg);
        let dc = lv.state.c.sub(&new.c).max_abs(&p.bc);
        let du = lv.state.u.sub(&new.u).max_abs(&p.velocity_bc());
        assert!(dc < 1e-9 && du < 1e-9, "{kind:?}: dc={dc:e} du={du:e}");
    }
}

#[test]
fn cycle_budget_exhaustion_is_reported() {
    let (old, p) = setup(SchemeKind::Primitive);
    let cfg = MgConfig { max_cycles: 1, tol: 1e-14, ..MgConfig::default() };
    let err = solve_timestep(&old, &p, &cfg).unwrap_err();
    assert!(matches!(err, Error::NonConvergence { cycles: 1, .. }), "{err}");
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn invalid_multigrid_settings_are_config_errors() {
    let (old, p) = setup(SchemeKind::Primitive);
    for cfg in [
        MgConfig { pre_smooths: 0, ..MgConfig::default() },
        MgConfig { tol: 0.0, ..MgConfig::default() },
        MgConfig { box_relax: 2.0, ..MgConfig::default() },
    ] {
        assert_eq!(solve_timestep(&old, &p, &cfg).unwrap_err().exit_code(), 2);
    }
}
