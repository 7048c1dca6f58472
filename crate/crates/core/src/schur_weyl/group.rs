//! Realization data for `Sp(2n, ℝ)` and `SO(p, q)` on their defining
//! representations.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::linalg::{GaussMat, SparseVec, Subspace};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sp,
    So,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    /// `n` for `Sp(2n, ℝ)`; unused for `SO(p, q)`.
    pub n: usize,
    pub p: usize,
    pub q: usize,
}

impl GroupSpec {
    pub fn sp(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadSpec("Sp(2n) needs n ≥ 1".into()));
        }
        Ok(GroupSpec { family: Family::Sp, n, p: 0, q: 0 })
    }

    pub fn so(p: usize, q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::BadSpec("SO(p, q) needs q ≥ 1 (q = 0 is the compact group)".into()));
        }
        if p < q {
            return Err(Error::BadSpec(format!("SO(p, q) needs p ≥ q, got ({p}, {q})")));
        }
        if (p + q).is_multiple_of(2) {
            return Err(Error::BadSpec(format!("SO(p, q) needs p + q odd, got {}", p + q)));
        }
        Ok(GroupSpec { family: Family::So, n: 0, p, q })
    }

    pub fn dim_v(&self) -> usize {
        match self.family {
            Family::Sp => 2 * self.n,
            Family::So => self.p + self.q,
        }
    }

    /// Rank of the complexified Lie algebra: `n`, or `(p + q − 1)/2`.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::Sp => self.n,
            Family::So => (self.p + self.q - 1) / 2,
        }
    }

    /// Size of the basis of the maximal compact subalgebra.
    pub fn k_dim(&self) -> usize {
        match self.family {
            Family::Sp => self.n * self.n,
            Family::So => self.p * (self.p - 1) / 2 + self.q * (self.q - 1) / 2,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Sp => write!(f, "Sp({},R)", 2 * self.n),
            Family::So => write!(f, "SO({},{})", self.p, self.q),
        }
    }
}

/// Coordinates used for operator matrices. `Weight` is a basis of `V` in
/// which a Cartan subalgebra of the compact part and `ξ` are diagonal; it
/// makes commutant computations far smaller.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Frame {
    Standard,
    Weight,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum CacheKey {
    Operator(Frame, usize, OpSlot),
    Commutant(Frame, usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) enum OpSlot {
    Swap(usize),
    Contract(usize),
    Xi(usize),
    Lie(usize),
}

#[derive(Clone)]
pub(crate) enum Cached {
    Matrix(Arc<GaussMat>),
    Space(Arc<Subspace>),
}

/// Realization data for one group. Immutable after construction apart from
/// the write-once operator cache.
pub struct GroupContext {
    spec: GroupSpec,
    dim_v: usize,
    form: GaussMat,
    xi: GaussMat,
    lie_basis: Vec<GaussMat>,
    basis_change: Option<GaussMat>,
    v1: SparseVec,
    frame: GaussMat,
    frame_inv: GaussMat,
    cache: Mutex<HashMap<CacheKey, Cached>>,
}

impl fmt::Debug for GroupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupContext")
            .field("spec", &self.spec)
            .field("dim_v", &self.dim_v)
            .field("lie_basis", &self.lie_basis.len())
            .finish()
    }
}

fn unit(n: usize, r: usize, c: usize, v: GaussRat) -> GaussMat {
    GaussMat::from_entries(n, n, [(r, c, v)]).expect("index in range")
}

fn int(v: i64) -> GaussRat {
    GaussRat::from_int(v)
}

/// `J = [0 I; −I 0]`.
pub fn symplectic_form(n: usize) -> GaussMat {
    let entries = (0..n).flat_map(|j| [(j, n + j, int(1)), (n + j, j, int(-1))]);
    GaussMat::from_entries(2 * n, 2 * n, entries).expect("index in range")
}

/// `I_{p,q} = diag(1^p, −1^q)`.
pub fn indefinite_form(p: usize, q: usize) -> GaussMat {
    let diag: Vec<GaussRat> = (0..p + q).map(|j| int(if j < p { 1 } else { -1 })).collect();
    GaussMat::diagonal_matrix(&diag)
}

/// `ξ = iJ`: sends `f_j = e_j + e_{n+j}` to `i·f_j'` with `f_j' = e_j − e_{n+j}`.
pub fn sp_xi(n: usize) -> GaussMat {
    let i = GaussRat::i();
    let entries = (0..n).flat_map(|j| [(j, n + j, i.clone()), (n + j, j, -i.clone())]);
    GaussMat::from_entries(2 * n, 2 * n, entries).expect("index in range")
}

/// Basis `{[A B; −B A]}` of the compact part of `𝔰𝔭_{2n}`.
pub fn sp_compact_basis(n: usize) -> Vec<GaussMat> {
    let d = 2 * n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // A = E_ij − E_ji in both diagonal blocks.
            let entries = [(i, j, int(1)), (j, i, int(-1)), (n + i, n + j, int(1)), (n + j, n + i, int(-1))];
            out.push(GaussMat::from_entries(d, d, entries).expect("index in range"));
        }
    }
    for i in 0..n {
        for j in i..n {
            // B = E_ij + E_ji in the upper-right block, −B in the lower-left.
            let entries = [(i, n + j, int(1)), (j, n + i, int(1)), (n + i, j, int(-1)), (n + j, i, int(-1))];
            out.push(GaussMat::from_entries(d, d, entries).expect("index in range"));
        }
    }
    out
}

/// Basis `E_ab − E_ba` inside each diagonal block of `𝔰𝔬_p ⊕ 𝔰𝔬_q`.
pub fn so_compact_basis(p: usize, q: usize) -> Vec<GaussMat> {
    let d = p + q;
    let mut out = Vec::new();
    for (start, len) in [(0, p), (p, q)] {
        for a in start..start + len {
            for b in a + 1..start + len {
                out.push(GaussMat::from_entries(d, d, [(a, b, int(1)), (b, a, int(-1))]).expect("index in range"));
            }
        }
    }
    out
}

/// The `f`-basis `f_j = e_j + e_{n+j}`, `f_j' = e_j − e_{n+j}` as columns.
pub fn sp_f_basis(n: usize) -> GaussMat {
    let entries =
        (0..n).flat_map(|j| [(j, j, int(1)), (n + j, j, int(1)), (j, n + j, int(1)), (n + j, n + j, int(-1))]);
    GaussMat::from_entries(2 * n, 2 * n, entries).expect("index in range")
}

/// Columns of the weight frame in standard coordinates.
fn weight_frame(spec: &GroupSpec) -> GaussMat {
    let d = spec.dim_v();
    let i = GaussRat::i();
    let mut entries = Vec::new();
    match spec.family {
        Family::Sp => {
            let n = spec.n;
            for j in 0..n {
                // ξ = +1 on e_j − i·e_{n+j}, ξ = −1 on e_j + i·e_{n+j}.
                entries.extend([(j, j, int(1)), (n + j, j, -i.clone())]);
                entries.extend([(j, n + j, int(1)), (n + j, n + j, i.clone())]);
            }
        }
        Family::So => {
            for (start, len) in [(0, spec.p), (spec.p, spec.q)] {
                let mut a = start;
                while a + 1 < start + len {
                    let b = a + 1;
                    entries.extend([(a, a, int(1)), (b, a, -i.clone())]);
                    entries.extend([(a, b, int(1)), (b, b, i.clone())]);
                    a += 2;
                }
                if a < start + len {
                    entries.push((a, a, int(1)));
                }
            }
        }
    }
    GaussMat::from_entries(d, d, entries).expect("index in range")
}

/// Basis of the full real-form Lie algebra `{X : XᵀG + GX = 0}` as `G⁻¹S`
/// with `S` symmetric (symplectic `G`) or antisymmetric (symmetric `G`).
fn full_lie_basis(form: &GaussMat, form_inv: &GaussMat, symmetric_s: bool) -> Vec<GaussMat> {
    let d = form.rows();
    let mut out = Vec::new();
    for a in 0..d {
        let start = if symmetric_s { a } else { a + 1 };
        for b in start..d {
            let sign = if symmetric_s { 1 } else { -1 };
            let s = if a == b {
                unit(d, a, a, int(1))
            } else {
                GaussMat::from_entries(d, d, [(a, b, int(1)), (b, a, int(sign))]).expect("index in range")
            };
            out.push(form_inv.mul(&s).expect("square"));
        }
    }
    out
}

/// Action `X ⊗ 1 + 1 ⊗ X` on a vector of `V ⊗ V`.
pub(crate) fn act_on_pair(x: &GaussMat, v: &[(usize, GaussRat)]) -> SparseVec {
    let d = x.rows();
    let mut acc: std::collections::BTreeMap<usize, GaussRat> = std::collections::BTreeMap::new();
    for (idx, val) in v {
        let (a, b) = (idx / d, idx % d);
        // (X ⊗ 1): column a of X.
        for r in 0..d {
            let xa = x.get(r, a);
            if !xa.is_zero() {
                *acc.entry(r * d + b).or_insert_with(GaussRat::zero) += &(&xa * val);
            }
            let xb = x.get(r, b);
            if !xb.is_zero() {
                *acc.entry(a * d + r).or_insert_with(GaussRat::zero) += &(&xb * val);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl GroupContext {
    /// Builds the standard realization and checks every invariant.
    pub fn new(spec: GroupSpec) -> Result<Self> {
        let xi = match spec.family {
            Family::Sp => sp_xi(spec.n),
            Family::So => {
                let diag: Vec<GaussRat> = (0..spec.dim_v()).map(|j| int(if j < spec.p { 1 } else { -1 })).collect();
                GaussMat::diagonal_matrix(&diag)
            }
        };
        Self::with_xi(spec, xi)
    }

    /// Builds a context with a caller-supplied `ξ`, running the same
    /// invariant checks. Used to exercise the checks with wrong data.
    pub fn with_xi(spec: GroupSpec, xi: GaussMat) -> Result<Self> {
        // Validate the spec as if freshly constructed.
        match spec.family {
            Family::Sp => {
                GroupSpec::sp(spec.n)?;
            }
            Family::So => {
                GroupSpec::so(spec.p, spec.q)?;
            }
        }
        let d = spec.dim_v();
        let (form, lie_basis, basis_change) = match spec.family {
            Family::Sp => (symplectic_form(spec.n), sp_compact_basis(spec.n), Some(sp_f_basis(spec.n))),
            Family::So => (indefinite_form(spec.p, spec.q), so_compact_basis(spec.p, spec.q), None),
        };
        if xi.rows() != d || xi.cols() != d {
            return Err(Error::InvariantViolation(format!("ξ must be {d}×{d}")));
        }
        let form_inv = form.inverse().ok_or_else(|| Error::InvariantViolation("form is singular".into()))?;
        // v1 = Σ (G⁻¹)_ab e_a ⊗ e_b, so that both zigzag identities hold.
        let v1: SparseVec = form_inv.entries().map(|(a, b, v)| (a * d + b, v.clone())).collect();
        let frame = weight_frame(&spec);
        let frame_inv = frame.inverse().ok_or_else(|| Error::InvariantViolation("weight frame is singular".into()))?;
        let ctx = GroupContext {
            spec,
            dim_v: d,
            form,
            xi,
            lie_basis,
            basis_change,
            v1,
            frame,
            frame_inv,
            cache: Mutex::new(HashMap::new()),
        };
        ctx.check_invariants(&form_inv)?;
        Ok(ctx)
    }

    fn check_invariants(&self, form_inv: &GaussMat) -> Result<()> {
        let d = self.dim_v;
        let fail = |what: &str| Err(Error::InvariantViolation(what.to_string()));
        if self.xi.mul(&self.xi)? != GaussMat::identity(d) {
            return fail("ξ² = Id");
        }
        if self.lie_basis.len() != self.spec.k_dim() {
            return fail("compact basis size");
        }
        let symmetric_s = self.spec.family == Family::Sp;
        let full = full_lie_basis(&self.form, form_inv, symmetric_s);
        for x in self.lie_basis.iter().chain(&full) {
            // XᵀG + GX = 0: X lies in the real form's Lie algebra.
            if !x.transpose().mul(&self.form)?.add(&self.form.mul(x)?)?.is_zero() {
                return fail("compact basis element preserves the form");
            }
            if !act_on_pair(x, &self.v1).is_empty() {
                return fail("Lie algebra annihilates v1");
            }
        }
        for x in &self.lie_basis {
            if !x.commutator(&self.xi)?.is_zero() {
                return fail("[X, ξ] = 0 for X in the compact basis");
            }
        }
        let diag_k = self.lie_basis.iter().map(|x| self.to_frame(x)).filter(|x| x.as_diagonal().is_some()).count();
        if diag_k != self.spec.rank() {
            return fail("weight frame diagonalizes a Cartan subalgebra");
        }
        if self.to_frame(&self.xi).as_diagonal().is_none() {
            return fail("weight frame diagonalizes ξ");
        }
        Ok(())
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn form(&self) -> &GaussMat {
        &self.form
    }

    pub fn xi(&self) -> &GaussMat {
        &self.xi
    }

    pub fn lie_basis(&self) -> &[GaussMat] {
        &self.lie_basis
    }

    /// Columns `f_1 … f_n, f_1' … f_n'` (symplectic case only).
    pub fn basis_change(&self) -> Option<&GaussMat> {
        self.basis_change.as_ref()
    }

    /// The invariant vector of `V ⊗ V`, flattened as `a·dim V + b`.
    pub fn v1(&self) -> &SparseVec {
        &self.v1
    }

    pub fn weight_frame(&self) -> &GaussMat {
        &self.frame
    }

    /// `P⁻¹ X P` for the weight frame `P`.
    pub fn to_frame(&self, x: &GaussMat) -> GaussMat {
        self.frame_inv.mul(x).and_then(|m| m.mul(&self.frame)).expect("square")
    }

    pub(crate) fn frame_matrix(&self) -> &GaussMat {
        &self.frame
    }

    pub(crate) fn cached_matrix(
        &self,
        key: CacheKey,
        build: impl FnOnce() -> Result<GaussMat>,
    ) -> Result<Arc<GaussMat>> {
        if let Some(Cached::Matrix(m)) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let built = Arc::new(build()?);
        let mut cache = self.cache.lock().expect("cache lock");
        match cache.entry(key).or_insert(Cached::Matrix(built)) {
            Cached::Matrix(m) => Ok(m.clone()),
            Cached::Space(_) => unreachable!("operator keys hold matrices"),
        }
    }

    pub(crate) fn cached_space(
        &self,
        key: CacheKey,
        build: impl FnOnce() -> Result<Subspace>,
    ) -> Result<Arc<Subspace>> {
        if let Some(Cached::Space(s)) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(s.clone());
        }
        let built = Arc::new(build()?);
        let mut cache = self.cache.lock().expect("cache lock");
        match cache.entry(key).or_insert(Cached::Space(built)) {
            Cached::Space(s) => Ok(s.clone()),
            Cached::Matrix(_) => unreachable!("commutant keys hold subspaces"),
        }
    }

    /// Number of cached entries (for tests).
    pub fn cache_len(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }
}

/// Constructs and validates the realization for `spec`.
pub fn group_context(spec: GroupSpec) -> Result<GroupContext> {
    GroupContext::new(spec)
}
