use std::f64::consts::PI;

use proptest::prelude::*;
use qnsch::grid::inner::{cell_ip, cell_l2};
use qnsch::grid::ops::{big_d_x, big_d_y, d_x, d_y};
use qnsch::grid::{BcSet, CellField, EwField, GridSpec, NsField};
use qnsch::multigrid::transfer::{prolong_cell, prolong_ew, restrict_cell, restrict_ew, restrict_ns};

fn grid(m1: usize, m2: usize) -> GridSpec {
    GridSpec::new(m1, m2, 1.0, m2 as f64 / m1 as f64).unwrap()
}

fn sizes() -> impl Strategy<Value = (usize, usize)> {
    (2usize..5, 2usize..5).prop_map(|(a, b)| (4 << (a - 2), 4 << (b - 2)))
}

fn bcs() -> impl Strategy<Value = BcSet> {
    prop_oneof![Just(BcSet::walls()), Just(BcSet::periodic()), Just(BcSet::channel())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transfers_preserve_constants((m1, m2) in sizes(), bc in bcs(), a in -5.0f64..5.0) {
        let fine = grid(2 * m1, 2 * m2);
        let coarse = fine.coarsen().unwrap();
        let mut c = CellField::from_fn(fine, |_, _| a);
        c.fill_ghost(&bc);
        let r = restrict_cell(&c, coarse);
        for j in 1..=coarse.m2 {
            for i in 1..=coarse.m1 {
                prop_assert!((r[(i, j)] - a).abs() <= 1e-14 * a.abs().max(1.0));
            }
        }
        let mut cc = CellField::from_fn(coarse, |_, _| a);
        cc.fill_ghost(&bc);
        let pf = prolong_cell(&cc, fine);
        for j in 1..=fine.m2 {
            for i in 1..=fine.m1 {
                prop_assert!((pf[(i, j)] - a).abs() <= 1e-14 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn cell_restriction_preserves_integral((m1, m2) in sizes(), seed in any::<u64>()) {
        let fine = grid(2 * m1, 2 * m2);
        let coarse = fine.coarsen().unwrap();
        let mut k = seed;
        let f = CellField::from_fn(fine, |_, _| {
            k = k.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (k >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        });
        let one_f = CellField::from_fn(fine, |_, _| 1.0);
        let one_c = CellField::from_fn(coarse, |_, _| 1.0);
        let r = restrict_cell(&f, coarse);
        let lhs = fine.h * fine.h * cell_ip(&f, &one_f);
        let rhs = coarse.h * coarse.h * cell_ip(&r, &one_c);
        prop_assert!((lhs - rhs).abs() <= 1e-13);
    }

    #[test]
    fn divergence_of_gradient_is_symmetric((m1, m2) in sizes(), bc in bcs(), seed in 0u64..1000) {
        let g = grid(m1, m2);
        let mk = |s: u64| {
            let mut k = s;
            let mut f = CellField::from_fn(g, |_, _| {
                k = k.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (k >> 11) as f64 / (1u64 << 53) as f64
            });
            f.fill_ghost(&bc);
            f
        };
        let (a, b) = (mk(seed), mk(seed + 7919));
        let lap = |f: &CellField| {
            let mut gx = big_d_x(f);
            let mut gy = big_d_y(f);
            gx.fill_ghost(&bc.normal_zero());
            gy.fill_ghost(&bc.normal_zero());
            let mut l = d_x(&gx);
            l.axpy(1.0, &d_y(&gy));
            l
        };
        let ab = cell_ip(&lap(&a), &b);
        let ba = cell_ip(&a, &lap(&b));
        prop_assert!((ab - ba).abs() <= 1e-10 * ab.abs().max(1.0));
    }
}

fn smooth(g: GridSpec) -> CellField {
    CellField::from_fn(g, |i, j| {
        let (x, y) = (g.xc(i), g.yc(j));
        (2.0 * PI * x).cos() * (PI * y).cos()
    })
}

#[test]
fn prolongation_after_restriction_is_second_order() {
    let bc = BcSet::walls();
    let err = |m: usize| {
        let fine = grid(m, m);
        let mut f = smooth(fine);
        f.fill_ghost(&bc);
        let mut r = restrict_cell(&f, fine.coarsen().unwrap());
        r.fill_ghost(&bc);
        let mut d = prolong_cell(&r, fine);
        d.axpy(-1.0, &f);
        cell_l2(&d)
    };
    let (e1, e2, e3) = (err(32), err(64), err(128));
    let r1 = (e1 / e2).log2();
    let r2 = (e2 / e3).log2();
    assert!(r1 > 1.9 && r2 > 1.95, "rates {r1} {r2}");
}

#[test]
fn face_transfers_keep_uniform_flow() {
    let bc = BcSet::periodic();
    let fine = grid(16, 16);
    let coarse = fine.coarsen().unwrap();
    let mut u = EwField::from_fn(fine, |_, _| 0.75);
    u.fill_ghost(&bc);
    let mut v = NsField::from_fn(fine, |_, _| -0.25);
    v.fill_ghost(&bc);
    let ru = restrict_ew(&u, coarse);
    let rv = restrict_ns(&v, coarse);
    let (rx, ry) = ru.unknowns(&bc);
    for j in ry {
        for i in rx.clone() {
            assert!((ru[(i, j)] - 0.75).abs() < 1e-15);
        }
    }
    let (rx, ry) = rv.unknowns(&bc);
    for j in ry {
        for i in rx.clone() {
            assert!((rv[(i, j)] + 0.25).abs() < 1e-15);
        }
    }
    let mut cu = ru.clone();
    cu.fill_ghost(&bc);
    let pu = prolong_ew(&cu, fine);
    let (rx, ry) = pu.unknowns(&bc);
    for j in ry {
        for i in rx.clone() {
            assert!((pu[(i, j)] - 0.75).abs() < 1e-15);
        }
    }
}

#[test]
fn difference_of_linear_field_is_its_slope() {
    let g = grid(8, 8);
    let bc = BcSet::walls();
    let mut c = CellField::from_fn(g, |i, _| 3.0 * g.xc(i));
    c.fill_ghost(&bc);
    let dx = big_d_x(&c);
    for j in 1..=g.m2 {
        for k in 2..=g.m1 {
            assert!((dx[(k, j)] - 3.0).abs() < 1e-12);
        }
    }
}
