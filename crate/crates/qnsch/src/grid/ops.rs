//! Staggered averages and differences.
//!
//! Outputs are written on the locations where the stencil is defined from
//! interior data; ghost entries of the result are left at zero and can be
//! refreshed with `fill_ghost` when a composition needs them.

use super::{Axis, CellField, EwField, NsField, VertexField};
use crate::error::{Error, Result};

/// `a_x u`: face to cell average in x.
pub fn a_x(u: &EwField) -> CellField {
    let g = *u.grid();
    CellField::from_fn(g, |i, j| {
        if (1..=g.m1).contains(&i) && (1..=g.m2).contains(&j) {
            0.5 * (u[(i, j)] + u[(i + 1, j)])
        } else {
            0.0
        }
    })
}

/// `d_x u`: face to cell difference in x.
pub fn d_x(u: &EwField) -> CellField {
    let g = *u.grid();
    CellField::from_fn(g, |i, j| {
        if (1..=g.m1).contains(&i) && (1..=g.m2).contains(&j) {
            (u[(i + 1, j)] - u[(i, j)]) / g.h
        } else {
            0.0
        }
    })
}

pub fn a_y(v: &NsField) -> CellField {
    let g = *v.grid();
    CellField::from_fn(g, |i, j| {
        if (1..=g.m1).contains(&i) && (1..=g.m2).contains(&j) {
            0.5 * (v[(i, j)] + v[(i, j + 1)])
        } else {
            0.0
        }
    })
}

pub fn d_y(v: &NsField) -> CellField {
    let g = *v.grid();
    CellField::from_fn(g, |i, j| {
        if (1..=g.m1).contains(&i) && (1..=g.m2).contains(&j) {
            (v[(i, j + 1)] - v[(i, j)]) / g.h
        } else {
            0.0
        }
    })
}

/// `A_x phi`: cell to east-west face average, on faces `k = 1..=m1+1`.
pub fn big_a_x(phi: &CellField) -> EwField {
    let g = *phi.grid();
    EwField::from_fn(g, |k, j| {
        if (1..=g.m1 + 1).contains(&k) && (1..=g.m2).contains(&j) {
            0.5 * (phi[(k - 1, j)] + phi[(k, j)])
        } else {
            0.0
        }
    })
}

pub fn big_d_x(phi: &CellField) -> EwField {
    let g = *phi.grid();
    EwField::from_fn(g, |k, j| {
        if (1..=g.m1 + 1).contains(&k) && (1..=g.m2).contains(&j) {
            (phi[(k, j)] - phi[(k - 1, j)]) / g.h
        } else {
            0.0
        }
    })
}

pub fn big_a_y(phi: &CellField) -> NsField {
    let g = *phi.grid();
    NsField::from_fn(g, |i, k| {
        if (1..=g.m1).contains(&i) && (1..=g.m2 + 1).contains(&k) {
            0.5 * (phi[(i, k - 1)] + phi[(i, k)])
        } else {
            0.0
        }
    })
}

pub fn big_d_y(phi: &CellField) -> NsField {
    let g = *phi.grid();
    NsField::from_fn(g, |i, k| {
        if (1..=g.m1).contains(&i) && (1..=g.m2 + 1).contains(&k) {
            (phi[(i, k)] - phi[(i, k - 1)]) / g.h
        } else {
            0.0
        }
    })
}

/// Four-point cell to vertex average.
pub fn cell_to_vertex(phi: &CellField) -> VertexField {
    let g = *phi.grid();
    VertexField::from_fn(g, |a, b| {
        0.25 * (phi[(a, b)] + phi[(a + 1, b)] + phi[(a, b + 1)] + phi[(a + 1, b + 1)])
    })
}

/// Four-point vertex to cell average.
pub fn vertex_to_cell(f: &VertexField) -> CellField {
    let g = *f.grid();
    CellField::from_fn(g, |i, j| {
        if (1..=g.m1).contains(&i) && (1..=g.m2).contains(&j) {
            0.25 * (f[(i - 1, j - 1)] + f[(i, j - 1)] + f[(i - 1, j)] + f[(i, j)])
        } else {
            0.0
        }
    })
}

/// x-average of the y-velocity onto vertices.
pub fn v_avg_x(v: &NsField) -> VertexField {
    let g = *v.grid();
    VertexField::from_fn(g, |a, b| 0.5 * (v[(a, b + 1)] + v[(a + 1, b + 1)]))
}

pub fn v_diff_x(v: &NsField) -> VertexField {
    let g = *v.grid();
    VertexField::from_fn(g, |a, b| (v[(a + 1, b + 1)] - v[(a, b + 1)]) / g.h)
}

/// y-average of the x-velocity onto vertices.
pub fn u_avg_y(u: &EwField) -> VertexField {
    let g = *u.grid();
    VertexField::from_fn(g, |a, b| 0.5 * (u[(a + 1, b)] + u[(a + 1, b + 1)]))
}

pub fn u_diff_y(u: &EwField) -> VertexField {
    let g = *u.grid();
    VertexField::from_fn(g, |a, b| (u[(a + 1, b + 1)] - u[(a + 1, b)]) / g.h)
}

/// Vertex to north-south face average in x.
pub fn vertex_avg_x(f: &VertexField) -> NsField {
    let g = *f.grid();
    NsField::from_fn(g, |i, k| {
        if (1..=g.m1).contains(&i) && (1..=g.m2 + 1).contains(&k) {
            0.5 * (f[(i - 1, k - 1)] + f[(i, k - 1)])
        } else {
            0.0
        }
    })
}

pub fn vertex_diff_x(f: &VertexField) -> NsField {
    let g = *f.grid();
    NsField::from_fn(g, |i, k| {
        if (1..=g.m1).contains(&i) && (1..=g.m2 + 1).contains(&k) {
            (f[(i, k - 1)] - f[(i - 1, k - 1)]) / g.h
        } else {
            0.0
        }
    })
}

/// Vertex to east-west face average in y.
pub fn vertex_avg_y(f: &VertexField) -> EwField {
    let g = *f.grid();
    EwField::from_fn(g, |k, j| {
        if (1..=g.m1 + 1).contains(&k) && (1..=g.m2).contains(&j) {
            0.5 * (f[(k - 1, j - 1)] + f[(k - 1, j)])
        } else {
            0.0
        }
    })
}

pub fn vertex_diff_y(f: &VertexField) -> EwField {
    let g = *f.grid();
    EwField::from_fn(g, |k, j| {
        if (1..=g.m1 + 1).contains(&k) && (1..=g.m2).contains(&j) {
            (f[(k - 1, j)] - f[(k - 1, j - 1)]) / g.h
        } else {
            0.0
        }
    })
}

/// Any staggered field, for the location-generic entry points.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Cell(CellField),
    Ew(EwField),
    Ns(NsField),
    Vertex(VertexField),
}

/// Source to target location of a staggered operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mapping {
    ToCell,
    ToEw,
    ToNs,
    ToVertex,
}

fn undefined(src: &AnyField, to: Mapping, axis: Axis, what: &str) -> Error {
    let kind = match src {
        AnyField::Cell(_) => "cell",
        AnyField::Ew(_) => "ew-face",
        AnyField::Ns(_) => "ns-face",
        AnyField::Vertex(_) => "vertex",
    };
    Error::Usage(format!("{what} from {kind} {to:?} along {axis:?} is not defined"))
}

/// Two-point (or four-point, for cell/vertex pairs) average.
pub fn stagger_avg(src: &AnyField, to: Mapping, axis: Axis) -> Result<AnyField> {
    use AnyField as F;
    Ok(match (src, to, axis) {
        (F::Ew(u), Mapping::ToCell, Axis::X) => F::Cell(a_x(u)),
        (F::Ns(v), Mapping::ToCell, Axis::Y) => F::Cell(a_y(v)),
        (F::Cell(p), Mapping::ToEw, Axis::X) => F::Ew(big_a_x(p)),
        (F::Cell(p), Mapping::ToNs, Axis::Y) => F::Ns(big_a_y(p)),
        (F::Cell(p), Mapping::ToVertex, _) => F::Vertex(cell_to_vertex(p)),
        (F::Vertex(f), Mapping::ToCell, _) => F::Cell(vertex_to_cell(f)),
        (F::Ns(v), Mapping::ToVertex, Axis::X) => F::Vertex(v_avg_x(v)),
        (F::Ew(u), Mapping::ToVertex, Axis::Y) => F::Vertex(u_avg_y(u)),
        (F::Vertex(f), Mapping::ToNs, Axis::X) => F::Ns(vertex_avg_x(f)),
        (F::Vertex(f), Mapping::ToEw, Axis::Y) => F::Ew(vertex_avg_y(f)),
        _ => return Err(undefined(src, to, axis, "average")),
    })
}

/// Two-point difference divided by `h`.
pub fn stagger_diff(src: &AnyField, to: Mapping, axis: Axis) -> Result<AnyField> {
    use AnyField as F;
    Ok(match (src, to, axis) {
        (F::Ew(u), Mapping::ToCell, Axis::X) => F::Cell(d_x(u)),
        (F::Ns(v), Mapping::ToCell, Axis::Y) => F::Cell(d_y(v)),
        (F::Cell(p), Mapping::ToEw, Axis::X) => F::Ew(big_d_x(p)),
        (F::Cell(p), Mapping::ToNs, Axis::Y) => F::Ns(big_d_y(p)),
        (F::Ns(v), Mapping::ToVertex, Axis::X) => F::Vertex(v_diff_x(v)),
        (F::Ew(u), Mapping::ToVertex, Axis::Y) => F::Vertex(u_diff_y(u)),
        (F::Vertex(f), Mapping::ToNs, Axis::X) => F::Ns(vertex_diff_x(f)),
        (F::Vertex(f), Mapping::ToEw, Axis::Y) => F::Ew(vertex_diff_y(f)),
        _ => return Err(undefined(src, to, axis, "difference")),
    })
}
