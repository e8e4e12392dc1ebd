//! Dense exact linear algebra over a [`Field`].
//!
//! Vectors are rows; a matrix `A` acts on the right, `v ↦ v·A`. Subspaces are
//! identified by their canonical reduced row echelon basis, so two
//! [`Subspace`] values are equal as sets exactly when they compare equal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Builds a matrix from rows; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, r: &[Elem]) {
        assert_eq!(r.len(), self.cols);
        self.data.extend_from_slice(r);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("stacking matrices of different widths".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Splits the matrix into `(row a, row b)` mutable views with `a != b`.
    fn two_rows(&mut self, a: usize, b: usize) -> (&mut [Elem], &mut [Elem]) {
        let c = self.cols;
        if a < b {
            let (lo, hi) = self.data.split_at_mut(b * c);
            (&mut lo[a * c..(a + 1) * c], &mut hi[..c])
        } else {
            let (lo, hi) = self.data.split_at_mut(a * c);
            (&mut hi[..c], &mut lo[b * c..(b + 1) * c])
        }
    }
}

pub fn mat_mul(f: &Field, a: &Mat, b: &Mat) -> Mat {
    assert_eq!(a.cols, b.rows, "mat_mul shape");
    let mut c = Mat::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        let out = &mut c.data[i * b.cols..(i + 1) * b.cols];
        for l in 0..a.cols {
            let x = a.data[i * a.cols + l];
            if x != 0 {
                f.axpy(out, x, b.row(l));
            }
        }
    }
    c
}

pub fn mat_add(f: &Field, a: &Mat, b: &Mat) -> Mat {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "mat_add shape");
    let data = a.data.iter().zip(&b.data).map(|(&x, &y)| f.add(x, y)).collect();
    Mat {
        rows: a.rows,
        cols: a.cols,
        data,
    }
}

pub fn mat_sub(f: &Field, a: &Mat, b: &Mat) -> Mat {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "mat_sub shape");
    let data = a.data.iter().zip(&b.data).map(|(&x, &y)| f.sub(x, y)).collect();
    Mat {
        rows: a.rows,
        cols: a.cols,
        data,
    }
}

pub fn mat_scale(f: &Field, a: &Mat, c: Elem) -> Mat {
    let mut m = a.clone();
    f.scale(&mut m.data, c);
    m
}

/// `v·A`.
pub fn vec_mat(f: &Field, v: &[Elem], a: &Mat) -> Vec<Elem> {
    assert_eq!(v.len(), a.rows, "vec_mat shape");
    let mut out = vec![0; a.cols];
    for (l, &x) in v.iter().enumerate() {
        if x != 0 {
            f.axpy(&mut out, x, a.row(l));
        }
    }
    out
}

/// Kronecker product with basis ordering `e_i ⊗ f_j ↦ i·dim(b) + j`.
pub fn kron(f: &Field, a: &Mat, b: &Mat) -> Mat {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut m = Mat::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x == 0 {
                continue;
            }
            for k in 0..b.rows {
                let dst = &mut m.data[(i * b.rows + k) * cols + j * b.cols..][..b.cols];
                f.axpy(dst, x, b.row(k));
            }
        }
    }
    m
}

/// Reduces `m` in place to canonical RREF (zero rows dropped) and returns the pivots.
pub fn rref_in_place(f: &Field, m: &mut Mat) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        m.swap_rows(r, pr);
        let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
        f.scale(m.row_mut(r), inv);
        for i in 0..m.rows {
            if i != r {
                let x = m.get(i, c);
                if x != 0 {
                    let (dst, src) = m.two_rows(i, r);
                    f.axpy(dst, f.neg(x), src);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.data.truncate(r * m.cols);
    m.rows = r;
    pivots
}

/// Canonical RREF, rank and pivot columns.
pub fn rref(f: &Field, m: &Mat) -> (Mat, usize, Vec<usize>) {
    let mut out = m.clone();
    let pivots = rref_in_place(f, &mut out);
    let rank = pivots.len();
    (out, rank, pivots)
}

pub fn rank(f: &Field, m: &Mat) -> usize {
    rref(f, m).1
}

pub fn inverse(f: &Field, m: &Mat) -> Option<Mat> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows;
    let mut aug = Mat::zeros(n, 2 * n);
    for i in 0..n {
        aug.row_mut(i)[..n].copy_from_slice(m.row(i));
        aug.data[i * 2 * n + n + i] = 1;
    }
    let pivots = rref_in_place(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = Mat::zeros(n, n);
    for i in 0..n {
        inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
    }
    Some(inv)
}

/// Incrementally maintained echelon basis: each stored row has a leading one
/// at its pivot and zeros at the pivots of earlier rows, so one forward pass
/// reduces any vector.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn reduce(&self, f: &Field, v: &mut [Elem]) {
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x != 0 {
                f.axpy(v, f.neg(x), r);
            }
        }
    }

    /// Adds `v` to the span; returns the reduced, normalized row when it was new.
    pub fn insert(&mut self, f: &Field, mut v: Vec<Elem>) -> Option<&[Elem]> {
        self.reduce(f, &mut v);
        let c = v.iter().position(|&x| x != 0)?;
        let inv = f.inv(v[c]).expect("nonzero");
        f.scale(&mut v, inv);
        self.rows.push(v);
        self.pivots.push(c);
        self.rows.last().map(|r| r.as_slice())
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn into_subspace(self, f: &Field) -> Subspace {
        let m = Mat::from_rows(self.dim, &self.rows).expect("consistent rows");
        Subspace::from_rows(f, &m)
    }
}

/// A subspace of `F^n` in canonical RREF.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Mat::zeros(0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Mat::identity(n),
            pivots: (0..n).collect(),
        }
    }

    /// Row space of `m`.
    pub fn from_rows(f: &Field, m: &Mat) -> Self {
        let (basis, _, pivots) = rref(f, m);
        Subspace {
            ambient: m.cols,
            basis,
            pivots,
        }
    }

    pub fn from_vecs(f: &Field, ambient: usize, vs: &[Vec<Elem>]) -> Result<Self> {
        Ok(Subspace::from_rows(f, &Mat::from_rows(ambient, vs)?))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot; their unit vectors span a canonical complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Subtracts the span from `v` so that `v` vanishes on every pivot column.
    pub fn reduce(&self, f: &Field, v: &mut [Elem]) {
        for (i, &c) in self.pivots.iter().enumerate() {
            let x = v[c];
            if x != 0 {
                f.axpy(v, f.neg(x), self.basis.row(i));
            }
        }
    }

    pub fn contains_vec(&self, f: &Field, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, f: &Field, other: &Subspace) -> bool {
        other.ambient == self.ambient && (0..other.dim()).all(|i| self.contains_vec(f, other.basis.row(i)))
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the span.
    pub fn coords(&self, f: &Field, v: &[Elem]) -> Option<Vec<Elem>> {
        if self.contains_vec(f, v) {
            Some(self.pivots.iter().map(|&c| v[c]).collect())
        } else {
            None
        }
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::AmbientMismatch(self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::from_rows(f, &self.basis.stack(&other.basis)?))
    }

    /// Intersection by Zassenhaus: row-reduce `[[u, u], [v, 0]]`; the rows
    /// whose left half vanishes carry a basis of `u ∩ v` in the right half.
    pub fn intersect(&self, f: &Field, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let n = self.ambient;
        let mut z = Mat::zeros(self.dim() + other.dim(), 2 * n);
        for i in 0..self.dim() {
            let r = self.basis.row(i);
            z.row_mut(i)[..n].copy_from_slice(r);
            z.row_mut(i)[n..].copy_from_slice(r);
        }
        for i in 0..other.dim() {
            z.row_mut(self.dim() + i)[..n].copy_from_slice(other.basis.row(i));
        }
        let pivots = rref_in_place(f, &mut z);
        let rows: Vec<Vec<Elem>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= n)
            .map(|(i, _)| z.row(i)[n..].to_vec())
            .collect();
        Subspace::from_vecs(f, n, &rows)
    }

    /// True iff `self ⊕ other` is the whole ambient space.
    pub fn is_direct_sum(&self, f: &Field, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(self.dim() + other.dim() == self.ambient && self.intersect(f, other)?.is_zero())
    }

    /// Invariance under right multiplication by every matrix.
    pub fn is_invariant(&self, f: &Field, mats: &[Mat]) -> bool {
        mats.iter()
            .all(|a| (0..self.dim()).all(|i| self.contains_vec(f, &vec_mat(f, self.basis.row(i), a))))
    }

    /// Image of the subspace under `v ↦ v·A`.
    pub fn image(&self, f: &Field, a: &Mat) -> Subspace {
        Subspace::from_rows(f, &mat_mul(f, &self.basis, a))
    }
}

/// Right kernel `{x : a·xᵀ = 0}` as a subspace of `F^{cols}`.
/// Preimage in the ambient space of a subspace `t` of `V/s`, where `V/s` is
/// coordinatized by the non-pivot columns of `s`.
pub fn lift_quotient(f: &Field, s: &Subspace, t: &Subspace) -> Subspace {
    let n = s.ambient();
    let free = s.non_pivots();
    let mut rows = s.basis().clone();
    for i in 0..t.dim() {
        let mut v = vec![0; n];
        for (j, &c) in free.iter().enumerate() {
            v[c] = t.basis().get(i, j);
        }
        rows.push_row(&v);
    }
    Subspace::from_rows(f, &rows)
}

/// Image of a subspace of `F^dim(s)`, in the coordinates of `s`'s basis,
/// inside the ambient space of `s`.
pub fn embed_sub(f: &Field, s: &Subspace, t: &Subspace) -> Subspace {
    Subspace::from_rows(f, &mat_mul(f, t.basis(), s.basis()))
}

pub fn right_kernel(f: &Field, a: &Mat) -> Subspace {
    let (r, _, pivots) = rref(f, a);
    let n = a.cols;
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut rows = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(r.get(i, free));
        }
        rows.push(v);
    }
    Subspace::from_vecs(f, n, &rows).expect("kernel rows")
}

/// Left kernel `{x : x·a = 0}` as a subspace of `F^{rows}`.
pub fn left_kernel(f: &Field, a: &Mat) -> Subspace {
    right_kernel(f, &a.transpose())
}

/// Particular solution of `a·x = b` with free variables set to zero, or
/// `None` when inconsistent. The result is verified by substitution.
pub fn solve_right(f: &Field, a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    if a.rows != b.rows {
        return Err(Error::ShapeMismatch(format!(
            "a has {} rows but b has {}",
            a.rows, b.rows
        )));
    }
    let (n, m) = (a.cols, b.cols);
    let mut aug = Mat::zeros(a.rows, n + m);
    for i in 0..a.rows {
        aug.row_mut(i)[..n].copy_from_slice(a.row(i));
        aug.row_mut(i)[n..].copy_from_slice(b.row(i));
    }
    let pivots = rref_in_place(f, &mut aug);
    if pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    let mut x = Mat::zeros(n, m);
    for (i, &c) in pivots.iter().enumerate() {
        x.row_mut(c).copy_from_slice(&aug.row(i)[n..]);
    }
    if mat_mul(f, a, &x) != *b {
        return Ok(None);
    }
    Ok(Some(x))
}

/// Particular solution of `x·a = b`.
pub fn solve_left(f: &Field, a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    Ok(solve_right(f, &a.transpose(), &b.transpose())?.map(|x| x.transpose()))
}

/// Smallest subspace containing the seeds and closed under every matrix.
pub fn spin(f: &Field, seeds: &[Vec<Elem>], mats: &[Mat]) -> Result<Subspace> {
    let n = match (seeds.first(), mats.first()) {
        (Some(s), _) => s.len(),
        (None, Some(m)) => m.rows,
        (None, None) => 0,
    };
    for m in mats {
        if m.rows != n || m.cols != n {
            return Err(Error::ShapeMismatch(format!(
                "action matrix {}x{} on vectors of length {n}",
                m.rows, m.cols
            )));
        }
    }
    if seeds.iter().any(|s| s.len() != n) {
        return Err(Error::ShapeMismatch("seed vectors of different lengths".into()));
    }
    let mut ech = Echelon::new(n);
    let mut queue = Vec::new();
    for s in seeds {
        if let Some(r) = ech.insert(f, s.clone()) {
            queue.push(r.to_vec());
        }
    }
    let mut head = 0;
    while head < queue.len() && ech.rank() < n {
        let v = queue[head].clone();
        head += 1;
        for m in mats {
            if let Some(r) = ech.insert(f, vec_mat(f, &v, m)) {
                queue.push(r.to_vec());
            }
        }
    }
    Ok(ech.into_subspace(f))
}
