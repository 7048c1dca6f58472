//! Exact sparse linear algebra over Gaussian rationals.
//!
//! Elimination keeps every stored row monic at its pivot, and the pivot of a
//! row is always its first nonzero column, so results do not depend on
//! scheduling. Subspaces are stored in reduced row echelon form, which is a
//! canonical basis: equal subspaces have identical bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::GaussRat;
use crate::error::{Error, Result};

/// Sparse vector: `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec = Vec<(usize, GaussRat)>;

/// `a + coef · b` for sorted sparse vectors.
pub fn axpy(a: &[(usize, GaussRat)], coef: &GaussRat, b: &[(usize, GaussRat)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = coef * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(coef * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_from_map(map: BTreeMap<usize, GaussRat>) -> SparseVec {
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Exact sparse matrix stored row by row.
#[derive(Clone, PartialEq, Eq)]
pub struct GaussMat {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl GaussMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GaussMat { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, GaussRat::one())
    }

    pub fn scalar(n: usize, s: GaussRat) -> Self {
        let mut m = Self::zeros(n, n);
        if !s.is_zero() {
            for (i, row) in m.data.iter_mut().enumerate() {
                row.push((i, s.clone()));
            }
        }
        m
    }

    pub fn diagonal_matrix(diag: &[GaussRat]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, v) in diag.iter().enumerate() {
            if !v.is_zero() {
                m.data[i].push((i, v.clone()));
            }
        }
        m
    }

    /// Sums duplicate entries; indices must be in range.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, GaussRat)>,
    ) -> Result<Self> {
        let mut maps: Vec<BTreeMap<usize, GaussRat>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfRange { index: r.max(c), range: format!("{rows}×{cols}") });
            }
            *maps[r].entry(c).or_insert_with(GaussRat::zero) += &v;
        }
        Ok(GaussMat { rows, cols, data: maps.into_iter().map(sparse_from_map).collect() })
    }

    pub fn from_dense(rows: &[Vec<GaussRat>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged dense matrix".into()));
        }
        Ok(GaussMat {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| r.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect()).collect(),
        })
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Result<Self> {
        for row in &data {
            if row.iter().any(|(c, _)| *c >= cols) {
                return Err(Error::DimensionMismatch(format!("row entry beyond {cols} columns")));
            }
            if row.windows(2).any(|w| w[0].0 >= w[1].0) || row.iter().any(|(_, v)| v.is_zero()) {
                return Err(Error::DimensionMismatch("row is not a sorted sparse vector".into()));
            }
        }
        Ok(GaussMat { rows: data.len(), cols, data })
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

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, GaussRat)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> GaussRat {
        match self.data[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => GaussRat::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GaussRat)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            data[c].push((r, v.clone()));
        }
        GaussMat { rows: self.cols, cols: self.rows, data }
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        GaussMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect()).collect(),
        }
    }

    fn check_same_shape(&self, other: &GaussMat) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} vs {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// `self + coef · other`.
    pub fn add_scaled(&self, coef: &GaussRat, other: &GaussMat) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(GaussMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| axpy(a, coef, b)).collect(),
        })
    }

    pub fn add(&self, other: &GaussMat) -> Result<Self> {
        self.add_scaled(&GaussRat::one(), other)
    }

    pub fn sub(&self, other: &GaussMat) -> Result<Self> {
        self.add_scaled(&GaussRat::from_int(-1), other)
    }

    pub fn mul(&self, other: &GaussMat) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, GaussRat> = BTreeMap::new();
                for (j, a) in row {
                    for (c, b) in &other.data[*j] {
                        *acc.entry(*c).or_insert_with(GaussRat::zero) += &(a * b);
                    }
                }
                sparse_from_map(acc)
            })
            .collect();
        Ok(GaussMat { rows: self.rows, cols: other.cols, data })
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &GaussMat) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn mul_vec(&self, v: &[(usize, GaussRat)]) -> Result<SparseVec> {
        if v.iter().any(|(i, _)| *i >= self.cols) {
            return Err(Error::DimensionMismatch("vector longer than matrix width".into()));
        }
        let dense: HashMap<usize, &GaussRat> = v.iter().map(|(i, x)| (*i, x)).collect();
        Ok(self
            .data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let mut s = GaussRat::zero();
                for (c, a) in row {
                    if let Some(x) = dense.get(c) {
                        s += &(a * *x);
                    }
                }
                (!s.is_zero()).then_some((r, s))
            })
            .collect())
    }

    pub fn kron(&self, other: &GaussMat) -> Self {
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for a_row in &self.data {
            for b_row in &other.data {
                let mut row = Vec::with_capacity(a_row.len() * b_row.len());
                for (ca, va) in a_row {
                    for (cb, vb) in b_row {
                        row.push((ca * other.cols + cb, va * vb));
                    }
                }
                data.push(row);
            }
        }
        GaussMat { rows: self.rows * other.rows, cols: self.cols * other.cols, data }
    }

    /// Row-major flattening into a vector of length `rows · cols`.
    pub fn flatten(&self) -> SparseVec {
        self.entries().map(|(r, c, v)| (r * self.cols + c, v.clone())).collect()
    }

    pub fn from_flat(rows: usize, cols: usize, v: &[(usize, GaussRat)]) -> Result<Self> {
        Self::from_entries(rows, cols, v.iter().map(|(i, x)| (i / cols.max(1), i % cols.max(1), x.clone())))
    }

    /// Diagonal entries when the matrix is square and diagonal.
    pub fn as_diagonal(&self) -> Option<Vec<GaussRat>> {
        if !self.is_square() {
            return None;
        }
        let mut diag = vec![GaussRat::zero(); self.rows];
        for (r, row) in self.data.iter().enumerate() {
            match row.as_slice() {
                [] => {}
                [(c, v)] if *c == r => diag[r] = v.clone(),
                _ => return None,
            }
        }
        Some(diag)
    }

    /// Inverse by Gauss–Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<SparseVec> = (0..n)
            .map(|r| {
                let mut row = self.data[r].clone();
                row.push((n + r, GaussRat::one()));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| rows[r].first().is_some_and(|(c, _)| *c == col))?;
            rows.swap(col, pivot);
            let inv = rows[col][0].1.inv()?;
            rows[col] = rows[col].iter().map(|(c, v)| (*c, v * &inv)).collect();
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == col {
                    continue;
                }
                if let Ok(pos) = row.binary_search_by_key(&col, |(c, _)| *c) {
                    let coef = -row[pos].1.clone();
                    *row = axpy(row, &coef, &pivot_row);
                }
            }
        }
        let data = rows
            .into_iter()
            .map(|row| row.into_iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v)).collect())
            .collect();
        Some(GaussMat { rows: n, cols: n, data })
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries()
                .map(|(r, c, v)| {
                    let (re, im) = v.to_strings();
                    (r, c, re, im)
                })
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let entries = json
            .entries
            .iter()
            .map(|(r, c, re, im)| Ok((*r, *c, GaussRat::from_strings(re, im)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(json.rows, json.cols, entries)
    }
}

impl fmt::Debug for GaussMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GaussMat {}×{} ({} nonzeros)", self.rows, self.cols, self.nnz())?;
        for (r, c, v) in self.entries().take(64) {
            writeln!(f, "  [{r},{c}] = {v}")?;
        }
        Ok(())
    }
}

/// Matrix JSON: `{rows, cols, entries: [[r, c, "re_p/q", "im_p/q"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String, String)>,
}

/// Row echelon form built one row at a time. Rows are monic at their pivot,
/// which is their first nonzero column; rows are not back-reduced.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` until its leading column is not a pivot. Returns the
    /// remainder (empty when `v` is in the span).
    fn reduce_leading(&self, v: &[(usize, GaussRat)]) -> SparseVec {
        let mut work: BTreeMap<usize, GaussRat> = v.iter().cloned().collect();
        while let Some((&c, lead)) = work.iter().next() {
            let Some(&ri) = self.pivot_row.get(&c) else {
                break;
            };
            let coef = lead.clone();
            for (col, val) in &self.rows[ri] {
                let e = work.entry(*col).or_insert_with(GaussRat::zero);
                *e -= &(&coef * val);
                if e.is_zero() {
                    work.remove(col);
                }
            }
        }
        work.into_iter().collect()
    }

    /// Adds a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, v: &[(usize, GaussRat)]) -> bool {
        debug_assert!(v.iter().all(|(c, _)| *c < self.width));
        let rest = self.reduce_leading(v);
        let Some((pivot, lead)) = rest.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        let row: SparseVec = rest.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &[(usize, GaussRat)]) -> bool {
        self.reduce_leading(v).is_empty()
    }

    /// Basis of the solution space of `row · x = 0` for all stored rows,
    /// one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut pivots: Vec<(usize, usize)> = self.pivot_row.iter().map(|(&c, &r)| (c, r)).collect();
        pivots.sort_unstable_by_key(|p| std::cmp::Reverse(p.0));
        let free: Vec<usize> = (0..self.width).filter(|c| !self.pivot_row.contains_key(c)).collect();
        free.par_iter()
            .map(|&f| {
                let mut x: HashMap<usize, GaussRat> = HashMap::new();
                x.insert(f, GaussRat::one());
                // Rows with pivot above f only see columns above their pivot,
                // where x vanishes, so only pivots below f matter.
                for &(p, ri) in pivots.iter().filter(|(p, _)| *p < f) {
                    let mut s = GaussRat::zero();
                    for (c, v) in &self.rows[ri][1..] {
                        if let Some(xc) = x.get(c) {
                            s -= &(v * xc);
                        }
                    }
                    if !s.is_zero() {
                        x.insert(p, s);
                    }
                }
                let mut out: SparseVec = x.into_iter().collect();
                out.sort_unstable_by_key(|(c, _)| *c);
                out
            })
            .collect()
    }

    /// Fully reduced echelon rows, ordered by pivot.
    pub fn into_reduced(self) -> Vec<SparseVec> {
        let mut order: Vec<(usize, usize)> = self.pivot_row.iter().map(|(&c, &r)| (c, r)).collect();
        order.sort_unstable();
        let mut rows: Vec<SparseVec> = order.iter().map(|&(_, r)| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&(c, _)| c).collect();
        // Back-substitute from the last pivot upwards.
        for idx in (0..rows.len()).rev() {
            let (above, below) = rows.split_at_mut(idx);
            let current = &below[0];
            for row in above.iter_mut() {
                if let Ok(pos) = row.binary_search_by_key(&pivots[idx], |(c, _)| *c) {
                    let coef = -row[pos].1.clone();
                    *row = axpy(row, &coef, current);
                }
            }
        }
        rows
    }
}

/// Subspace of `GaussRat^ambient` with a reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(|i| vec![(i, GaussRat::one())]).collect() }
    }

    pub fn span<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Result<Self> {
        let mut ech = Echelon::new(ambient);
        for v in vectors {
            if v.iter().any(|(i, _)| *i >= ambient) {
                return Err(Error::DimensionMismatch(format!("vector index beyond ambient dimension {ambient}")));
            }
            ech.insert(v);
        }
        Ok(Subspace { ambient, basis: ech.into_reduced() })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| v[0].0).collect()
    }

    pub fn contains(&self, v: &[(usize, GaussRat)]) -> Result<bool> {
        if v.iter().any(|(i, _)| *i >= self.ambient) {
            return Err(Error::DimensionMismatch(format!("vector index beyond ambient dimension {}", self.ambient)));
        }
        // Basis is reduced, so subtracting v[p]·b_p for each pivot p leaves the residual.
        let mut rest: SparseVec = v.to_vec();
        for b in &self.basis {
            let p = b[0].0;
            if let Ok(pos) = rest.binary_search_by_key(&p, |(c, _)| *c) {
                let coef = -rest[pos].1.clone();
                rest = axpy(&rest, &coef, b);
            }
        }
        Ok(rest.is_empty())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equal(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.dim() == other.dim() && self.contains_subspace(other)?)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!("ambient dimensions {} and {}", self.ambient, other.ambient)));
        }
        Ok(())
    }
}

pub fn rank(m: &GaussMat) -> usize {
    let mut ech = Echelon::new(m.cols);
    for row in &m.data {
        ech.insert(row);
    }
    ech.rank()
}

/// Rank of a list of sparse vectors of the given length.
pub fn rank_of_vectors(width: usize, vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::new(width);
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

pub fn nullspace(m: &GaussMat) -> Subspace {
    let mut ech = Echelon::new(m.cols);
    for row in &m.data {
        ech.insert(row);
    }
    let kernel = ech.kernel();
    Subspace::span(m.cols, &kernel).expect("kernel vectors fit the ambient space")
}

fn check_square_family(gens: &[GaussMat]) -> Result<usize> {
    let d = gens.first().map_or(0, |g| g.rows);
    for g in gens {
        if !g.is_square() || g.rows != d {
            return Err(Error::DimensionMismatch(format!("expected {d}×{d} generators, got {}×{}", g.rows, g.cols)));
        }
    }
    Ok(d)
}

/// Unknowns of a commutant computation: the positions `(r, c)` allowed by
/// the diagonal generators, numbered in row-major order.
struct Unknowns {
    d: usize,
    class_members: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    pos_in_class: Vec<usize>,
    offset: Vec<usize>,
    total: usize,
}

impl Unknowns {
    fn new(d: usize, diagonals: &[Vec<GaussRat>]) -> Self {
        let mut classes: HashMap<Vec<&GaussRat>, usize> = HashMap::new();
        let mut class_members: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; d];
        let mut pos_in_class = vec![0; d];
        for i in 0..d {
            let key: Vec<&GaussRat> = diagonals.iter().map(|diag| &diag[i]).collect();
            let next = class_members.len();
            let cls = *classes.entry(key).or_insert(next);
            if cls == next {
                class_members.push(Vec::new());
            }
            class_of[i] = cls;
            pos_in_class[i] = class_members[cls].len();
            class_members[cls].push(i);
        }
        let mut offset = vec![0; d];
        let mut total = 0;
        for r in 0..d {
            offset[r] = total;
            total += class_members[class_of[r]].len();
        }
        Unknowns { d, class_members, class_of, pos_in_class, offset, total }
    }

    fn index(&self, r: usize, c: usize) -> Option<usize> {
        (self.class_of[r] == self.class_of[c]).then(|| self.offset[r] + self.pos_in_class[c])
    }

    fn columns_of(&self, r: usize) -> &[usize] {
        &self.class_members[self.class_of[r]]
    }

    /// Flattened `r·d + c` position of each unknown, increasing.
    fn flat_positions(&self) -> Vec<usize> {
        (0..self.d).flat_map(|r| self.columns_of(r).iter().map(move |&c| r * self.d + c)).collect()
    }
}

/// Constraint rows `(Xg − gX)[r, ·] = 0` for one generator, over the unknowns.
fn commutator_constraints(u: &Unknowns, g: &GaussMat, r: usize) -> Vec<SparseVec> {
    let mut by_col: BTreeMap<usize, BTreeMap<usize, GaussRat>> = BTreeMap::new();
    for &j in u.columns_of(r) {
        let x = u.index(r, j).expect("same class");
        for (c, gv) in g.row(j) {
            *by_col.entry(*c).or_default().entry(x).or_insert_with(GaussRat::zero) += gv;
        }
    }
    for (j, gv) in g.row(r) {
        for &c in u.columns_of(*j) {
            let x = u.index(*j, c).expect("same class");
            *by_col.entry(c).or_default().entry(x).or_insert_with(GaussRat::zero) -= gv;
        }
    }
    by_col.into_values().map(sparse_from_map).filter(|row| !row.is_empty()).collect()
}

/// Basis of `{X : Xg = gX for every g}` as flattened `d²` vectors.
///
/// Diagonal generators are used to discard unknowns up front: `X` commutes
/// with a diagonal matrix exactly when `X[r, c] = 0` whenever the diagonal
/// values at `r` and `c` differ. The remaining generators contribute sparse
/// constraint rows, eliminated one generator at a time.
pub fn commutant_basis(gens: &[GaussMat]) -> Result<Subspace> {
    let d = check_square_family(gens)?;
    commutant_basis_dim(gens, d)
}

/// As [`commutant_basis`], with the matrix size given explicitly (needed
/// when `gens` is empty).
pub fn commutant_basis_dim(gens: &[GaussMat], d: usize) -> Result<Subspace> {
    if !gens.is_empty() && check_square_family(gens)? != d {
        return Err(Error::DimensionMismatch(format!("generators are not {d}×{d}")));
    }
    let mut diagonals = Vec::new();
    let mut others = Vec::new();
    for g in gens {
        match g.as_diagonal() {
            Some(diag) => diagonals.push(diag),
            None => others.push(g),
        }
    }
    let u = Unknowns::new(d, &diagonals);
    let mut ech = Echelon::new(u.total);
    for g in others {
        let rows: Vec<Vec<SparseVec>> = (0..d).into_par_iter().map(|r| commutator_constraints(&u, g, r)).collect();
        for row in rows.iter().flatten() {
            ech.insert(row);
        }
    }
    let flat = u.flat_positions();
    let mut kernel = ech.kernel();
    for v in &mut kernel {
        for (i, _) in v.iter_mut() {
            *i = flat[*i];
        }
    }
    Subspace::span(d * d, &kernel)
}

/// Dimension of the center of the algebra spanned by `spanning_set`.
pub fn center_dim(spanning_set: &[GaussMat]) -> Result<usize> {
    let d = check_square_family(spanning_set)?;
    let flats: Vec<SparseVec> = spanning_set.iter().map(GaussMat::flatten).collect();
    let span = Subspace::span(d * d, &flats)?;
    if !span.contains(&GaussMat::identity(d).flatten())? {
        return Err(Error::NotAnAlgebra("identity is not in the span".into()));
    }
    let basis: Vec<GaussMat> = span.basis().iter().map(|v| GaussMat::from_flat(d, d, v)).collect::<Result<_>>()?;
    // Closure spot check on a few products.
    for a in basis.iter().take(3) {
        for b in basis.iter().take(3) {
            if !span.contains(&a.mul(b)?.flatten())? {
                return Err(Error::NotAnAlgebra("span is not closed under multiplication".into()));
            }
        }
    }
    let n = basis.len();
    // Column i of the constraint system holds [B_i, B_j] for every j.
    let blocks: Vec<Vec<(usize, usize, GaussRat)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for (j, bj) in basis.iter().enumerate() {
                let comm = basis[i].commutator(bj).expect("same shape");
                for (pos, v) in comm.flatten() {
                    out.push((j * d * d + pos, i, v));
                }
            }
            out
        })
        .collect();
    let system = GaussMat::from_entries(n * d * d, n, blocks.into_iter().flatten())?;
    Ok(n - rank(&system))
}
