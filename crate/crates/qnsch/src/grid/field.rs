use std::ops::{Index, IndexMut};

use super::bc::{Axis, BcSet, Rule};
use super::GridSpec;

/// Ghost copies of one stored unknown: `(flat index, sign)` pairs.
#[derive(Clone, Copy, Debug)]
pub struct Images {
    len: usize,
    items: [(usize, f64); 8],
}

impl Images {
    fn new() -> Self {
        Self { len: 0, items: [(0, 0.0); 8] }
    }

    fn push(&mut self, idx: usize, sign: f64) {
        self.items[self.len] = (idx, sign);
        self.len += 1;
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, f64)> {
        self.items[..self.len].iter()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[derive(Clone, Copy)]
struct Img1 {
    len: usize,
    items: [(usize, f64); 3],
}

/// Positions holding copies of interior position `p` along one direction,
/// the position itself first.
fn images_1d(rule: Rule, n: usize, p: usize) -> Img1 {
    let mut out = Img1 { len: 1, items: [(p, 1.0); 3] };
    let mut push = |q: usize, s: f64| {
        out.items[out.len] = (q, s);
        out.len += 1;
    };
    match rule {
        Rule::Even | Rule::Odd => {
            let s = if rule == Rule::Even { 1.0 } else { -1.0 };
            if p == 1 {
                push(0, s);
            }
            if p == n {
                push(n + 1, s);
            }
        }
        Rule::Wrap => {
            if p == 1 {
                push(n + 1, 1.0);
            }
            if p == n {
                push(0, 1.0);
            }
        }
        Rule::Wall => {
            if p == 2 {
                push(0, -1.0);
            }
            if p == n {
                push(n + 2, -1.0);
            }
        }
        Rule::WrapFace => {
            if p == 1 {
                push(n + 1, 1.0);
            }
            if p == 2 {
                push(n + 2, 1.0);
            }
            if p == n {
                push(0, 1.0);
            }
        }
    }
    out
}

/// Fill ghosts of one line `a[off + k*stride]` according to `rule`;
/// `n` is the number of cells along the line.
#[inline]
fn fill_line(a: &mut [f64], off: usize, stride: usize, n: usize, rule: Rule) {
    let at = |k: usize| off + k * stride;
    match rule {
        Rule::Even => {
            a[at(0)] = a[at(1)];
            a[at(n + 1)] = a[at(n)];
        }
        Rule::Odd => {
            a[at(0)] = -a[at(1)];
            a[at(n + 1)] = -a[at(n)];
        }
        Rule::Wrap => {
            a[at(0)] = a[at(n)];
            a[at(n + 1)] = a[at(1)];
        }
        Rule::Wall => {
            a[at(1)] = 0.0;
            a[at(n + 1)] = 0.0;
            a[at(0)] = -a[at(2)];
            a[at(n + 2)] = -a[at(n)];
        }
        Rule::WrapFace => {
            a[at(n + 1)] = a[at(1)];
            a[at(n + 2)] = a[at(2)];
            a[at(0)] = a[at(n)];
        }
    }
}

/// Interior (unknown-carrying) range along one direction.
fn canonical(rule: Rule, n: usize) -> std::ops::RangeInclusive<usize> {
    match rule {
        Rule::Even | Rule::Odd | Rule::Wrap => 1..=n,
        Rule::Wall => 2..=n,
        Rule::WrapFace => 1..=n,
    }
}

macro_rules! staggered_field {
    ($(#[$doc:meta])* $name:ident, $nx:expr, $ny:expr, $rules:expr) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq)]
        pub struct $name {
            grid: GridSpec,
            nx: usize,
            ny: usize,
            pub data: Vec<f64>,
        }

        impl $name {
            pub fn zeros(grid: GridSpec) -> Self {
                let nx = ($nx)(&grid);
                let ny = ($ny)(&grid);
                Self { grid, nx, ny, data: vec![0.0; nx * ny] }
            }

            pub fn from_fn(grid: GridSpec, mut f: impl FnMut(usize, usize) -> f64) -> Self {
                let mut out = Self::zeros(grid);
                for j in 0..out.ny {
                    for i in 0..out.nx {
                        out.data[j * out.nx + i] = f(i, j);
                    }
                }
                out
            }

            #[inline]
            pub fn grid(&self) -> &GridSpec {
                &self.grid
            }

            /// Storage extent `(nx, ny)` including ghosts.
            #[inline]
            pub fn dims(&self) -> (usize, usize) {
                (self.nx, self.ny)
            }

            #[inline]
            pub fn idx(&self, i: usize, j: usize) -> usize {
                debug_assert!(i < self.nx && j < self.ny, "({i},{j}) outside {}x{}", self.nx, self.ny);
                j * self.nx + i
            }

            #[inline]
            pub fn get(&self, i: usize, j: usize) -> f64 {
                self.data[self.idx(i, j)]
            }

            #[inline]
            pub fn set(&mut self, i: usize, j: usize, v: f64) {
                let k = self.idx(i, j);
                self.data[k] = v;
            }

            /// Number of cells along x and y used by the line rules.
            #[inline]
            fn counts(&self) -> (usize, usize) {
                (self.grid.m1, self.grid.m2)
            }

            /// Ghost rules along x and y for this field under `bc`.
            #[inline]
            fn rules(bc: &BcSet) -> Option<(Rule, Rule)> {
                ($rules)(bc)
            }

            /// Refresh ghost entries (and wall or periodic boundary copies)
            /// from the interior. Corners come out consistent because the
            /// x pass runs first on interior rows and the y pass then
            /// sweeps every column.
            pub fn fill_ghost(&mut self, bc: &BcSet) {
                let Some((rx, ry)) = Self::rules(bc) else { return };
                let (n1, n2) = self.counts();
                let nx = self.nx;
                for j in canonical_rows(ry, n2) {
                    fill_line(&mut self.data, j * nx, 1, n1, rx);
                }
                for i in 0..nx {
                    fill_line(&mut self.data, i, nx, n2, ry);
                }
            }

            /// Ghost copies of interior unknown `(i, j)`.
            pub fn images(&self, bc: &BcSet, i: usize, j: usize) -> Images {
                let mut out = Images::new();
                let Some((rx, ry)) = Self::rules(bc) else { return out };
                let (n1, n2) = self.counts();
                let ix = images_1d(rx, n1, i);
                let iy = images_1d(ry, n2, j);
                for (b, &(q, sy)) in iy.items[..iy.len].iter().enumerate() {
                    for (a, &(p, sx)) in ix.items[..ix.len].iter().enumerate() {
                        if a == 0 && b == 0 {
                            continue;
                        }
                        out.push(q * self.nx + p, sx * sy);
                    }
                }
                out
            }

            /// Set an interior unknown together with all its ghost copies.
            #[inline]
            pub fn set_with_images(&mut self, bc: &BcSet, i: usize, j: usize, v: f64) {
                let k = self.idx(i, j);
                self.data[k] = v;
                let im = self.images(bc, i, j);
                for &(q, s) in im.iter() {
                    self.data[q] = s * v;
                }
            }

            /// Ranges of interior unknowns along x and y.
            pub fn unknowns(&self, bc: &BcSet) -> (std::ops::RangeInclusive<usize>, std::ops::RangeInclusive<usize>) {
                match Self::rules(bc) {
                    Some((rx, ry)) => {
                        let (n1, n2) = self.counts();
                        (canonical(rx, n1), canonical(ry, n2))
                    }
                    None => (0..=self.nx - 1, 0..=self.ny - 1),
                }
            }

            /// Largest magnitude over interior unknowns.
            pub fn max_abs(&self, bc: &BcSet) -> f64 {
                let (rx, ry) = self.unknowns(bc);
                let mut m = 0.0f64;
                for j in ry {
                    for i in rx.clone() {
                        let a = self.get(i, j).abs();
                        if a > m || a.is_nan() {
                            m = a;
                        }
                    }
                }
                m
            }

            pub fn fill(&mut self, v: f64) {
                self.data.iter_mut().for_each(|x| *x = v);
            }

            /// `self += a * other` on every stored entry.
            pub fn axpy(&mut self, a: f64, other: &Self) {
                for (x, y) in self.data.iter_mut().zip(&other.data) {
                    *x += a * y;
                }
            }

            /// Entry-wise difference `self - other`.
            pub fn sub(&self, other: &Self) -> Self {
                let mut out = self.clone();
                out.axpy(-1.0, other);
                out
            }

            /// Entry-wise product.
            pub fn mul(&self, other: &Self) -> Self {
                let mut out = self.clone();
                for (x, y) in out.data.iter_mut().zip(&other.data) {
                    *x *= y;
                }
                out
            }

            pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
                let mut out = self.clone();
                out.data.iter_mut().for_each(|x| *x = f(*x));
                out
            }

            pub fn is_finite(&self) -> bool {
                self.data.iter().all(|x| x.is_finite())
            }
        }

        impl Index<(usize, usize)> for $name {
            type Output = f64;
            #[inline]
            fn index(&self, (i, j): (usize, usize)) -> &f64 {
                &self.data[self.idx(i, j)]
            }
        }

        impl IndexMut<(usize, usize)> for $name {
            #[inline]
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
                let k = self.idx(i, j);
                &mut self.data[k]
            }
        }
    };
}

/// Rows swept by the x pass of the ghost fill: the interior rows plus,
/// for face-type y positions, the wall rows (which are reset anyway).
fn canonical_rows(ry: Rule, n2: usize) -> std::ops::RangeInclusive<usize> {
    match ry {
        Rule::Wall | Rule::WrapFace => 1..=n2 + 1,
        _ => 1..=n2,
    }
}

fn cell_rules(bc: &BcSet) -> Option<(Rule, Rule)> {
    Some((bc.cell_rule(Axis::X), bc.cell_rule(Axis::Y)))
}

fn ew_rules(bc: &BcSet) -> Option<(Rule, Rule)> {
    Some((bc.normal_rule(Axis::X), bc.tangential_rule(Axis::Y)))
}

fn ns_rules(bc: &BcSet) -> Option<(Rule, Rule)> {
    Some((bc.tangential_rule(Axis::X), bc.normal_rule(Axis::Y)))
}

fn no_rules(_: &BcSet) -> Option<(Rule, Rule)> {
    None
}

staggered_field!(
    /// Cell-centred scalar, stored `(m1+2) x (m2+2)` with one ghost layer.
    CellField,
    |g: &GridSpec| g.m1 + 2,
    |g: &GridSpec| g.m2 + 2,
    cell_rules
);

staggered_field!(
    /// x-velocity on east-west faces. Storage index `k` along x sits at
    /// `x = (k-1) h`, so cell `i` has faces `k = i` (west) and `k = i+1`
    /// (east); rows follow the cell rows with one ghost row each side.
    EwField,
    |g: &GridSpec| g.m1 + 3,
    |g: &GridSpec| g.m2 + 2,
    ew_rules
);

staggered_field!(
    /// y-velocity on north-south faces, the transpose layout of [`EwField`].
    NsField,
    |g: &GridSpec| g.m1 + 2,
    |g: &GridSpec| g.m2 + 3,
    ns_rules
);

staggered_field!(
    /// Vertex values, `(m1+1) x (m2+1)`; index `(a, b)` sits at `(a h, b h)`.
    /// Vertex fields carry no ghosts; `fill_ghost` is a no-op on them.
    VertexField,
    |g: &GridSpec| g.m1 + 1,
    |g: &GridSpec| g.m2 + 1,
    no_rules
);
