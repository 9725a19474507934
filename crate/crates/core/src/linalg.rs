//! Dense exact linear algebra over a [`FieldCtx`].
//!
//! Matrices act on column vectors. Subspaces are stored by a basis in
//! reduced row echelon form, so two subspaces are equal exactly when their
//! stored bases are.

use serde_json::{json, Value};
use thiserror::Error;

use crate::ff::{FieldCtx, FieldElem};
use crate::jordan::JordanType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operands live over different fields")]
    ContextMismatch,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("malformed matrix JSON: {0}")]
    Json(String),
}

pub type Vector = Vec<FieldElem>;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.ctx.format(x)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of [`Mat::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        Mat {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn from_fn(
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(ctx: &FieldCtx, rows: &[Vector]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(ctx, rows, cols)
    }

    /// Like [`Mat::from_rows`] but fixes the column count, so an empty row
    /// list still has a definite shape.
    pub fn from_rows_with_cols(
        ctx: &FieldCtx,
        rows: &[Vector],
        cols: usize,
    ) -> Result<Self, LinalgError> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::ShapeMismatch("ragged rows".into()));
        }
        Ok(Mat {
            ctx: ctx.clone(),
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ctx: &FieldCtx, dim: usize, cols: &[Vector]) -> Result<Self, LinalgError> {
        Ok(Self::from_rows_with_cols(ctx, cols, dim)?.transpose())
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn data(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn check_ctx(&self, other: &Mat) -> Result<(), LinalgError> {
        if self.ctx != other.ctx {
            return Err(LinalgError::ContextMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_ctx(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let k = &self.ctx;
        let mut out = Mat::zeros(k, self.rows, other.cols);
        for r in 0..self.rows {
            let orow = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for s in 0..self.cols {
                let a = self.data[r * self.cols + s];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[s * other.cols..(s + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o = k.add(*o, k.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Mat,
        f: impl Fn(FieldElem, FieldElem) -> FieldElem,
    ) -> Result<Mat, LinalgError> {
        self.check_ctx(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Mat {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, LinalgError> {
        let k = self.ctx.clone();
        self.zip_with(other, move |a, b| k.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, LinalgError> {
        let k = self.ctx.clone();
        self.zip_with(other, move |a, b| k.sub(a, b))
    }

    pub fn scale(&self, s: FieldElem) -> Mat {
        Mat {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| self.ctx.mul(s, a)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.ctx, self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let k = &self.ctx;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(k.zero(), |acc, (&a, &b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        k.add(acc, k.mul(a, b))
                    }
                })
            })
            .collect())
    }

    pub fn matpow(&self, mut e: u64) -> Result<Mat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Mat::identity(&self.ctx, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_ctx(other)?;
        let mut out = Mat::zeros(&self.ctx, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_ctx(other)?;
        if self.rows != other.rows {
            return Err(LinalgError::ShapeMismatch("hstack row counts differ".into()));
        }
        Ok(Mat::from_fn(&self.ctx, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                other.get(r, c - self.cols)
            }
        }))
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_ctx(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            ctx: self.ctx.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        Mat::from_fn(&self.ctx, rows.len(), self.cols, |r, c| self.get(rows[r], c))
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        Mat::from_fn(&self.ctx, self.rows, cols.len(), |r, c| self.get(r, cols[c]))
    }

    /// Reduced row echelon form. The pivot of each step is the first row (top
    /// to bottom) with a nonzero entry in the leftmost column not yet
    /// processed.
    pub fn rref(&self) -> Rref {
        let k = &self.ctx;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        let mut nz: Vec<usize> = Vec::with_capacity(cols);
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pr) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            if pr != rank {
                for j in c..cols {
                    m.swap(pr * cols + j, rank * cols + j);
                }
            }
            let inv = k.inv(m[rank * cols + c]).expect("pivot is nonzero");
            nz.clear();
            for j in c..cols {
                let x = &mut m[rank * cols + j];
                if !x.is_zero() {
                    *x = k.mul(*x, inv);
                    nz.push(j);
                }
            }
            let (before, rest) = m.split_at_mut(rank * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [FieldElem]| {
                let f = row[c];
                if f.is_zero() {
                    return;
                }
                let nf = k.neg(f);
                for &j in &nz {
                    row[j] = k.add(row[j], k.mul(nf, prow[j]));
                }
            };
            before.chunks_exact_mut(cols).for_each(eliminate);
            after.chunks_exact_mut(cols).for_each(eliminate);
            pivots.push(c);
            rank += 1;
        }
        Rref {
            mat: Mat {
                ctx: self.ctx.clone(),
                rows,
                cols,
                data: m,
            },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// `{x : A x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let k = &self.ctx;
        let basis: Vec<Vector> = free
            .iter()
            .map(|&f| {
                let mut x = vec![k.zero(); self.cols];
                x[f] = k.one();
                for (i, &pc) in r.pivots.iter().enumerate() {
                    x[pc] = k.neg(r.mat.get(i, f));
                }
                x
            })
            .collect();
        Subspace::span(k, self.cols, &basis)
    }

    /// The column space `{A x}`.
    pub fn image(&self) -> Subspace {
        Subspace::span(&self.ctx, self.rows, &self.transpose().row_vectors())
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[FieldElem]) -> Result<Option<Vector>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::ShapeMismatch("right-hand side length".into()));
        }
        let col = Mat::from_fn(&self.ctx, self.rows, 1, |r, _| b[r]);
        let r = self.hstack(&col)?.rref();
        if r.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.ctx.zero(); self.cols];
        for (i, &pc) in r.pivots.iter().enumerate() {
            x[pc] = r.mat.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(&self.ctx, n)).ok()?;
        let r = aug.rref();
        if r.rank < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(&self.ctx, n, n, |i, j| r.mat.get(i, n + j)))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Jordan type of a nilpotent matrix from the rank sequence of its
    /// powers: the number of blocks of size at least `k` is
    /// `rank(N^(k-1)) - rank(N^k)`.
    pub fn nilpotent_partition(&self) -> Result<JordanType, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch("non-square matrix".into()));
        }
        let n = self.rows;
        let mut ranks = vec![n];
        let mut power = Mat::identity(&self.ctx, n);
        while *ranks.last().unwrap() > 0 {
            if ranks.len() > n {
                return Err(LinalgError::NotNilpotent);
            }
            power = power.mul(self)?;
            let r = power.rank();
            if r == *ranks.last().unwrap() {
                return Err(LinalgError::NotNilpotent);
            }
            ranks.push(r);
        }
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut parts = Vec::new();
        for (size_minus_one, &count) in at_least.iter().enumerate() {
            let next = at_least.get(size_minus_one + 1).copied().unwrap_or(0);
            for _ in 0..count - next {
                parts.push(size_minus_one + 1);
            }
        }
        Ok(JordanType::new(parts))
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|&x| self.ctx.format(x)).collect())
            .collect();
        json!({"rows": self.rows, "cols": self.cols, "entries": entries})
    }

    /// Parses `{"rows":r,"cols":c,"entries":[["a0,a1",...],...]}`.
    pub fn from_json(ctx: &FieldCtx, v: &Value) -> Result<Mat, LinalgError> {
        let bad = |m: &str| LinalgError::Json(m.to_string());
        let rows = v["rows"].as_u64().ok_or_else(|| bad("rows"))? as usize;
        let cols = v["cols"].as_u64().ok_or_else(|| bad("cols"))? as usize;
        let entries = v["entries"].as_array().ok_or_else(|| bad("entries"))?;
        parse_entries(ctx, entries, rows, cols)
    }

    /// Parses a bare `[["a0,a1",...],...]` grid.
    pub fn from_json_grid(ctx: &FieldCtx, v: &Value, dim: usize) -> Result<Mat, LinalgError> {
        let entries = v
            .as_array()
            .ok_or_else(|| LinalgError::Json("expected an array of rows".into()))?;
        parse_entries(ctx, entries, dim, dim)
    }

    pub fn to_json_grid(&self) -> Value {
        self.to_json()["entries"].clone()
    }
}

fn parse_entries(
    ctx: &FieldCtx,
    entries: &[Value],
    rows: usize,
    cols: usize,
) -> Result<Mat, LinalgError> {
    if entries.len() != rows {
        return Err(LinalgError::ShapeMismatch(format!(
            "expected {rows} rows, found {}",
            entries.len()
        )));
    }
    let mut m = Mat::zeros(ctx, rows, cols);
    for (r, row) in entries.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| LinalgError::Json(format!("row {r} is not an array")))?;
        if row.len() != cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (c, e) in row.iter().enumerate() {
            let s = e
                .as_str()
                .ok_or_else(|| LinalgError::Json(format!("entry ({r},{c}) is not a string")))?;
            let x = ctx.parse(s).map_err(|e| LinalgError::Json(e.to_string()))?;
            m.set(r, c, x);
        }
    }
    Ok(m)
}

/// A subspace of `k^ambient`, held as a reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ctx: &FieldCtx, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(ctx, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ctx: &FieldCtx, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(ctx, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ctx: &FieldCtx, ambient: usize, vectors: &[Vector]) -> Self {
        let m = Mat::from_rows_with_cols(ctx, vectors, ambient).expect("vectors of ambient length");
        Self::from_rref(m.rref())
    }

    fn from_rref(r: Rref) -> Self {
        let keep: Vec<usize> = (0..r.rank).collect();
        Subspace {
            ambient: r.mat.cols,
            basis: r.mat.select_rows(&keep),
            pivots: r.pivots,
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.basis.ctx()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Basis vectors as rows in reduced echelon form.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` by the basis; the result is zero iff `v` is in the
    /// subspace.
    pub fn reduce(&self, v: &[FieldElem]) -> Vector {
        let k = self.ctx();
        let mut x = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let f = x[pc];
            if f.is_zero() {
                continue;
            }
            let nf = k.neg(f);
            for (xj, &bj) in x.iter_mut().zip(self.basis.row(i)) {
                if !bj.is_zero() {
                    *xj = k.add(*xj, k.mul(nf, bj));
                }
            }
        }
        x
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of a member in the echelon basis (its pivot entries).
    pub fn coords(&self, v: &[FieldElem]) -> Option<Vector> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Rows spanning `{y : y . w = 0 for all w in self}`.
    pub fn annihilator(&self) -> Mat {
        let ker = self.basis.kernel();
        ker.basis.clone()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Self::from_rref(stacked.rref()))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let cond = self.annihilator().vstack(&other.annihilator())?;
        Ok(cond.kernel())
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::ShapeMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        if self.ctx() != other.ctx() {
            return Err(LinalgError::ContextMismatch);
        }
        Ok(())
    }
}

/// `{x : A x ∈ W}`.
pub fn preimage(a: &Mat, w: &Subspace) -> Result<Subspace, LinalgError> {
    if a.rows() != w.ambient() {
        return Err(LinalgError::ShapeMismatch(format!(
            "map into dimension {} but subspace of dimension {}",
            a.rows(),
            w.ambient()
        )));
    }
    let cond = w.annihilator().mul(a)?;
    Ok(cond.kernel())
}

/// A subspace of `rows x cols` matrices, vectorized row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatSpace {
    pub rows: usize,
    pub cols: usize,
    pub space: Subspace,
}

impl MatSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn matrices(&self) -> Vec<Mat> {
        self.space
            .basis_vectors()
            .into_iter()
            .map(|v| Mat::from_fn(self.space.ctx(), self.rows, self.cols, |r, c| v[r * self.cols + c]))
            .collect()
    }

    /// `Σ coeffs[i] · basis[i]`.
    pub fn combine(&self, coeffs: &[FieldElem]) -> Mat {
        let k = self.space.ctx();
        let mut acc = vec![k.zero(); self.rows * self.cols];
        for (i, &c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, &b) in acc.iter_mut().zip(self.space.basis().row(i)) {
                *a = k.add(*a, k.mul(c, b));
            }
        }
        Mat::from_fn(k, self.rows, self.cols, |r, c| acc[r * self.cols + c])
    }

    pub fn contains(&self, m: &Mat) -> bool {
        m.rows() == self.rows && m.cols() == self.cols && self.space.contains(m.data())
    }
}

/// All `X` (`b x a`) with `X · as_[k] = bs[k] · X` for every `k`.
pub fn intertwiner_space(as_: &[Mat], bs: &[Mat]) -> Result<MatSpace, LinalgError> {
    if as_.len() != bs.len() || as_.is_empty() {
        return Err(LinalgError::ShapeMismatch(
            "need equally many nonempty source and target actions".into(),
        ));
    }
    let ctx = as_[0].ctx().clone();
    let a = as_[0].rows();
    let b = bs[0].rows();
    for (x, y) in as_.iter().zip(bs) {
        if x.ctx() != &ctx || y.ctx() != &ctx {
            return Err(LinalgError::ContextMismatch);
        }
        if x.rows() != a || x.cols() != a || y.rows() != b || y.cols() != b {
            return Err(LinalgError::ShapeMismatch("actions must be square of fixed size".into()));
        }
    }
    let unknowns = a * b;
    if unknowns == 0 {
        return Ok(MatSpace {
            rows: b,
            cols: a,
            space: Subspace::zero(&ctx, 0),
        });
    }
    // Equation (k, r, c): Σ_s X[r][s] A[s][c] - Σ_s B[r][s] X[s][c] = 0.
    let mut sys = Mat::zeros(&ctx, as_.len() * unknowns, unknowns);
    for (k, (am, bm)) in as_.iter().zip(bs).enumerate() {
        for r in 0..b {
            for c in 0..a {
                let eq = k * unknowns + r * a + c;
                for s in 0..a {
                    let v = am.get(s, c);
                    if !v.is_zero() {
                        let idx = r * a + s;
                        let cur = sys.get(eq, idx);
                        sys.set(eq, idx, ctx.add(cur, v));
                    }
                }
                for s in 0..b {
                    let v = bm.get(r, s);
                    if !v.is_zero() {
                        let idx = s * a + c;
                        let cur = sys.get(eq, idx);
                        sys.set(eq, idx, ctx.sub(cur, v));
                    }
                }
            }
        }
    }
    Ok(MatSpace {
        rows: b,
        cols: a,
        space: sys.kernel(),
    })
}
