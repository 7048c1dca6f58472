//! Operators on `V^{⊗k}`: slot swaps, the contraction `ě`, the slot-wise
//! involution `ξ_i`, Lie algebra actions, and the map `Φ` from `Br_{k,2}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::{CacheKey, Family, Frame, GroupContext, OpSlot};
use crate::algebra::{AlgebraElement, Gen};
use crate::coeff::GaussRat;
use crate::diagram::{factor_marked, BrauerDiagram, LabeledDiagram, Row};
use crate::error::{Error, Result};
use crate::linalg::GaussMat;

/// Operator requested from [`tensor_operator`]. Indices are 1-based.
#[derive(Clone, Debug)]
pub enum OperatorKind {
    /// Exchange of tensor slots `i`, `i + 1`.
    Swap(usize),
    /// `ě` on slots `i`, `i + 1`: `u ⊗ w ↦ B(u, w)·v1`.
    Contract(usize),
    /// `ξ` on slot `i`.
    Xi(usize),
    /// `Σ_j (X)_j` for a matrix `X` on `V`.
    Lie(GaussMat),
}

fn pow(base: usize, exp: usize) -> usize {
    base.checked_pow(exp as u32).expect("tensor power fits usize")
}

/// `I_{d^slot} ⊗ local ⊗ I_{d^{k − slot − width}}` with `slot` 0-based.
pub(crate) fn embed(local: &GaussMat, slot: usize, width: usize, d: usize, k: usize) -> GaussMat {
    GaussMat::identity(pow(d, slot)).kron(local).kron(&GaussMat::identity(pow(d, k - slot - width)))
}

/// Operator sending a basis tensor with slot `perm[x]` to output slot `x`
/// (the diagram with strands `t(x+1) – b(perm[x]+1)`), scaled by `sign`.
pub fn permutation_operator(perm: &[usize], d: usize, sign: &GaussRat) -> GaussMat {
    let k = perm.len();
    let total = pow(d, k);
    let mut digits = vec![0usize; k];
    let mut data = vec![Vec::new(); total];
    for input in 0..total {
        let mut rest = input;
        for slot in (0..k).rev() {
            digits[slot] = rest % d;
            rest /= d;
        }
        let out = perm.iter().fold(0, |acc, &src| acc * d + digits[src]);
        data[out].push((input, sign.clone()));
    }
    GaussMat::from_rows(total, data).expect("one entry per row")
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign attached to a slot swap by `Φ`: `−1` for the symplectic group,
/// where the invariant vector is antisymmetric, and `+1` otherwise.
pub fn swap_sign(ctx: &GroupContext) -> i64 {
    match ctx.spec().family {
        Family::Sp => -1,
        Family::So => 1,
    }
}

/// `ξ` in the chosen frame.
pub(crate) fn local_xi(ctx: &GroupContext, frame: Frame) -> GaussMat {
    match frame {
        Frame::Standard => ctx.xi().clone(),
        Frame::Weight => ctx.to_frame(ctx.xi()),
    }
}

/// `ě` on `V ⊗ V` given a form `G` and an invariant vector written as a matrix `W`
/// (`v1 = Σ W_ab e_a ⊗ e_b`): `ě[(a,b),(c,d)] = W_ab · G_cd`.
fn contraction_from(form: &GaussMat, w: &GaussMat) -> GaussMat {
    let d = form.rows();
    let g_flat = form.flatten();
    let entries = w
        .flatten()
        .into_iter()
        .flat_map(|(ab, wv)| g_flat.iter().map(move |(cd, gv)| (ab, *cd, &wv * gv)).collect::<Vec<_>>());
    GaussMat::from_entries(d * d, d * d, entries).expect("index in range")
}

fn v1_matrix(ctx: &GroupContext) -> GaussMat {
    let d = ctx.dim_v();
    GaussMat::from_flat(d, d, ctx.v1()).expect("v1 has length d²")
}

/// Form, `ξ` and invariant vector after the change of basis with columns `basis`.
fn conjugated_data(ctx: &GroupContext, basis: &GaussMat) -> Result<(GaussMat, GaussMat, GaussMat)> {
    let inv = basis.inverse().ok_or_else(|| Error::DimensionMismatch("basis change is singular".into()))?;
    let form = basis.transpose().mul(ctx.form())?.mul(basis)?;
    let xi = inv.mul(ctx.xi())?.mul(basis)?;
    let w = inv.mul(&v1_matrix(ctx))?.mul(&inv.transpose())?;
    Ok((form, xi, w))
}

pub(crate) fn local_contract(ctx: &GroupContext, frame: Frame) -> GaussMat {
    match frame {
        Frame::Standard => contraction_from(ctx.form(), &v1_matrix(ctx)),
        Frame::Weight => {
            let (form, _, w) = conjugated_data(ctx, ctx.frame_matrix()).expect("frame is invertible");
            contraction_from(&form, &w)
        }
    }
}

fn check_slot(i: usize, k: usize, width: usize) -> Result<()> {
    if i == 0 || i + width - 1 > k {
        return Err(Error::IndexOutOfRange { index: i, range: format!("1..={}", (k + 1).saturating_sub(width)) });
    }
    Ok(())
}

pub(crate) fn cached_op(ctx: &GroupContext, frame: Frame, k: usize, slot: OpSlot) -> Result<Arc<GaussMat>> {
    let d = ctx.dim_v();
    match slot {
        OpSlot::Swap(i) | OpSlot::Contract(i) => check_slot(i, k, 2)?,
        OpSlot::Xi(i) => check_slot(i, k, 1)?,
        OpSlot::Lie(idx) => {
            if idx >= ctx.lie_basis().len() {
                return Err(Error::IndexOutOfRange { index: idx, range: format!("0..{}", ctx.lie_basis().len()) });
            }
        }
    }
    ctx.cached_matrix(CacheKey::Operator(frame, k, slot), || {
        Ok(match slot {
            OpSlot::Swap(i) => {
                let mut perm: Vec<usize> = (0..k).collect();
                perm.swap(i - 1, i);
                permutation_operator(&perm, d, &GaussRat::one())
            }
            OpSlot::Contract(i) => embed(&local_contract(ctx, frame), i - 1, 2, d, k),
            OpSlot::Xi(i) => embed(&local_xi(ctx, frame), i - 1, 1, d, k),
            OpSlot::Lie(idx) => {
                let x = match frame {
                    Frame::Standard => ctx.lie_basis()[idx].clone(),
                    Frame::Weight => ctx.to_frame(&ctx.lie_basis()[idx]),
                };
                lie_sum(&x, d, k)?
            }
        })
    })
}

fn lie_sum(x: &GaussMat, d: usize, k: usize) -> Result<GaussMat> {
    let mut acc = GaussMat::zeros(pow(d, k), pow(d, k));
    for j in 0..k {
        acc = acc.add(&embed(x, j, 1, d, k))?;
    }
    Ok(acc)
}

/// Builds an operator on `V^{⊗k}` in standard coordinates.
pub fn tensor_operator(kind: &OperatorKind, ctx: &GroupContext, k: usize) -> Result<GaussMat> {
    tensor_operator_in(kind, ctx, k, Frame::Standard)
}

pub fn tensor_operator_in(kind: &OperatorKind, ctx: &GroupContext, k: usize, frame: Frame) -> Result<GaussMat> {
    let d = ctx.dim_v();
    match kind {
        OperatorKind::Swap(i) => Ok((*cached_op(ctx, frame, k, OpSlot::Swap(*i))?).clone()),
        OperatorKind::Contract(i) => Ok((*cached_op(ctx, frame, k, OpSlot::Contract(*i))?).clone()),
        OperatorKind::Xi(i) => Ok((*cached_op(ctx, frame, k, OpSlot::Xi(*i))?).clone()),
        OperatorKind::Lie(x) => {
            if x.rows() != d || x.cols() != d {
                return Err(Error::DimensionMismatch(format!("Lie element must be {d}×{d}")));
            }
            let x = match frame {
                Frame::Standard => x.clone(),
                Frame::Weight => ctx.to_frame(x),
            };
            lie_sum(&x, d, k)
        }
    }
}

/// Lie algebra action of every compact basis element on `V^{⊗k}`.
pub fn lie_actions(ctx: &GroupContext, k: usize, frame: Frame) -> Result<Vec<Arc<GaussMat>>> {
    (0..ctx.lie_basis().len()).map(|idx| cached_op(ctx, frame, k, OpSlot::Lie(idx))).collect()
}

/// Measured loop parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deltas {
    pub delta0: GaussRat,
    pub delta1: GaussRat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltasJson {
    pub delta0: String,
    pub delta1: String,
}

impl Deltas {
    pub fn to_json(&self) -> DeltasJson {
        DeltasJson { delta0: self.delta0.to_string(), delta1: self.delta1.to_string() }
    }

    /// Assignment `δ_0 ↦ delta0, δ_1 ↦ delta1` for specializing polynomials.
    pub fn assignment(&self) -> BTreeMap<usize, GaussRat> {
        BTreeMap::from([(0, self.delta0.clone()), (1, self.delta1.clone())])
    }
}

/// `λ` with `a = λ·b`, if it exists (and `b ≠ 0`).
pub fn scalar_multiple(a: &GaussMat, b: &GaussMat) -> Option<GaussRat> {
    let (r, c, bv) = b.entries().next()?;
    let lambda = a.get(r, c) / bv.clone();
    (b.scale(&lambda) == *a).then_some(lambda)
}

fn deltas_from(form: &GaussMat, xi: &GaussMat, w: &GaussMat) -> Result<Deltas> {
    let d = form.rows();
    let e = contraction_from(form, w);
    let e2 = e.mul(&e)?;
    let delta0 = scalar_multiple(&e2, &e).ok_or_else(|| Error::NotScalarMultiple("ě² vs ě".into()))?;
    let xi1 = xi.kron(&GaussMat::identity(d));
    let exe = e.mul(&xi1)?.mul(&e)?;
    let delta1 = if exe.is_zero() {
        GaussRat::zero()
    } else {
        scalar_multiple(&exe, &e).ok_or_else(|| Error::NotScalarMultiple("ě ξ_1 ě vs ě".into()))?
    };
    if !delta0.is_real() || !delta1.is_real() {
        return Err(Error::InvariantViolation(format!("loop parameters not real: δ0 = {delta0}, δ1 = {delta1}")));
    }
    Ok(Deltas { delta0, delta1 })
}

/// `δ0` with `ě² = δ0·ě` and `δ1` with `ě ξ_1 ě = δ1·ě` on `V ⊗ V`.
pub fn measure_deltas(ctx: &GroupContext) -> Result<Deltas> {
    deltas_from(ctx.form(), ctx.xi(), &v1_matrix(ctx))
}

/// [`measure_deltas`] after rewriting form, `ξ` and `v1` in the basis whose
/// vectors are the columns of `basis`.
pub fn measure_deltas_in_basis(ctx: &GroupContext, basis: &GaussMat) -> Result<Deltas> {
    let (form, xi, w) = conjugated_data(ctx, basis)?;
    deltas_from(&form, &xi, &w)
}

/// Decomposes a bare Brauer diagram as `P_a · (e_1 e_3 ⋯ e_{2r−1}) · P_b`.
/// Returns `(perm_a, r, perm_b)` in the convention of [`permutation_operator`].
pub(crate) fn bare_factors(d: &BrauerDiagram) -> (Vec<usize>, usize, Vec<usize>) {
    let k = d.k();
    let mut caps = Vec::new();
    let mut cups = Vec::new();
    let mut through = Vec::new();
    for &(a, b) in d.pairs() {
        match (a.row, b.row) {
            (Row::Top, Row::Top) => caps.push((a.index - 1, b.index - 1)),
            (Row::Bottom, Row::Bottom) => cups.push((a.index - 1, b.index - 1)),
            _ => through.push((a.index - 1, b.index - 1)),
        }
    }
    through.sort_unstable();
    let r = caps.len();
    let mut perm_a = vec![0; k];
    let mut perm_b = vec![0; k];
    for (j, &(x, y)) in caps.iter().enumerate() {
        perm_a[x] = 2 * j;
        perm_a[y] = 2 * j + 1;
    }
    for (j, &(x, y)) in cups.iter().enumerate() {
        perm_b[2 * j] = x;
        perm_b[2 * j + 1] = y;
    }
    for (idx, &(top, bottom)) in through.iter().enumerate() {
        perm_a[top] = 2 * r + idx;
        perm_b[2 * r + idx] = bottom;
    }
    (perm_a, r, perm_b)
}

/// Evaluates `Φ` for a fixed group, tensor power and frame.
pub struct PhiMap<'a> {
    ctx: &'a GroupContext,
    k: usize,
    frame: Frame,
    deltas: Deltas,
}

impl<'a> PhiMap<'a> {
    pub fn new(ctx: &'a GroupContext, k: usize, frame: Frame) -> Result<Self> {
        Ok(PhiMap { ctx, k, frame, deltas: measure_deltas(ctx)? })
    }

    pub fn deltas(&self) -> &Deltas {
        &self.deltas
    }

    fn dim(&self) -> usize {
        pow(self.ctx.dim_v(), self.k)
    }

    fn perm(&self, perm: &[usize]) -> GaussMat {
        let sign = if swap_sign(self.ctx) < 0 { permutation_sign(perm) } else { 1 };
        permutation_operator(perm, self.ctx.dim_v(), &GaussRat::from_int(sign))
    }

    /// Image of a generator: `t ↦ ±swap`, `e ↦ ě`, `θ^l ↦ ξ^l`.
    pub fn generator(&self, g: Gen) -> Result<GaussMat> {
        match g {
            Gen::T(i) => {
                let s = cached_op(self.ctx, self.frame, self.k, OpSlot::Swap(i))?;
                Ok(s.scale(&GaussRat::from_int(swap_sign(self.ctx))))
            }
            Gen::E(i) => Ok((*cached_op(self.ctx, self.frame, self.k, OpSlot::Contract(i))?).clone()),
            Gen::Theta(i, l) => {
                let x = cached_op(self.ctx, self.frame, self.k, OpSlot::Xi(i))?;
                Ok(if l % 2 == 1 { (*x).clone() } else { GaussMat::identity(self.dim()) })
            }
        }
    }

    /// Product of generator images, leftmost first.
    pub fn word(&self, word: &[Gen]) -> Result<GaussMat> {
        let mut acc = GaussMat::identity(self.dim());
        for g in word {
            acc = acc.mul(&self.generator(*g)?)?;
        }
        Ok(acc)
    }

    fn marks(&self, marks: &std::collections::BTreeSet<usize>) -> Result<GaussMat> {
        let mut acc = GaussMat::identity(self.dim());
        for &i in marks {
            acc = acc.mul(&*cached_op(self.ctx, self.frame, self.k, OpSlot::Xi(i))?)?;
        }
        Ok(acc)
    }

    /// Image of a basis diagram with labels mod 2.
    pub fn diagram(&self, d: &LabeledDiagram) -> Result<GaussMat> {
        if d.k() != self.k || d.m() != 2 {
            return Err(Error::ContextMismatch(format!(
                "Φ is defined on (k={}, m=2), got (k={}, m={})",
                self.k,
                d.k(),
                d.m()
            )));
        }
        let f = factor_marked(d)?;
        let (perm_a, r, perm_b) = bare_factors(&f.bare);
        let mut acc = self.marks(&f.top_marks)?.mul(&self.perm(&perm_a))?;
        for j in 0..r {
            acc = acc.mul(&*cached_op(self.ctx, self.frame, self.k, OpSlot::Contract(2 * j + 1))?)?;
        }
        acc.mul(&self.perm(&perm_b))?.mul(&self.marks(&f.bottom_marks)?)
    }

    /// Linear extension to algebra elements, with δ specialized to the measured values.
    pub fn element(&self, x: &AlgebraElement) -> Result<GaussMat> {
        if x.k() != self.k || x.m() != 2 {
            return Err(Error::ContextMismatch(format!(
                "Φ is defined on (k={}, m=2), got (k={}, m={})",
                self.k,
                x.k(),
                x.m()
            )));
        }
        let assignment = self.deltas.assignment();
        let mut acc = GaussMat::zeros(self.dim(), self.dim());
        for (d, c) in x.terms() {
            let coeff = c.specialize(&assignment)?;
            acc = acc.add_scaled(&coeff, &self.diagram(d)?)?;
        }
        Ok(acc)
    }

    /// Images of all basis diagrams of `Br_{k,2}` in enumeration order.
    pub fn basis_images(&self) -> Result<Vec<GaussMat>> {
        crate::diagram::enumerate_diagrams(self.k, 2).par_iter().map(|d| self.diagram(d)).collect()
    }
}

/// `Φ(x)` in standard coordinates.
pub fn phi(x: &AlgebraElement, ctx: &GroupContext, k: usize) -> Result<GaussMat> {
    PhiMap::new(ctx, k, Frame::Standard)?.element(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{compose, enumerate_diagrams};
    use crate::schur_weyl::group::GroupSpec;

    fn perm_diagram(perm: &[usize]) -> LabeledDiagram {
        let raw: Vec<_> = perm
            .iter()
            .enumerate()
            .map(|(x, &y)| (crate::diagram::Vertex::top(x + 1), crate::diagram::Vertex::bottom(y + 1), 0))
            .collect();
        crate::diagram::canonicalize(&raw, perm.len(), 1).unwrap()
    }

    #[test]
    fn bare_factorization_recomposes() {
        for k in 0..=4 {
            for d in enumerate_diagrams(k, 1) {
                let (pa, r, pb) = bare_factors(&d.underlying());
                let mut e = LabeledDiagram::identity(k, 1);
                for j in 0..r {
                    e = compose(&e, &LabeledDiagram::cap_cup(2 * j + 1, k, 1).unwrap()).unwrap().diagram;
                }
                let left = compose(&perm_diagram(&pa), &e).unwrap();
                let all = compose(&left.diagram, &perm_diagram(&pb)).unwrap();
                assert!(left.loops.is_empty() && all.loops.is_empty());
                assert_eq!(all.diagram, d);
            }
        }
    }

    #[test]
    fn permutation_operator_matches_swap() {
        let ctx = GroupContext::new(GroupSpec::so(2, 1).unwrap()).unwrap();
        let s = tensor_operator(&OperatorKind::Swap(1), &ctx, 2).unwrap();
        assert_eq!(s.mul(&s).unwrap(), GaussMat::identity(9));
        let p = permutation_operator(&[1, 0], 3, &GaussRat::one());
        assert_eq!(p, s);
    }

    #[test]
    fn operator_identities() {
        for spec in [GroupSpec::sp(2).unwrap(), GroupSpec::so(3, 2).unwrap()] {
            let ctx = GroupContext::new(spec).unwrap();
            let x = tensor_operator(&OperatorKind::Xi(1), &ctx, 2).unwrap();
            assert_eq!(x.mul(&x).unwrap(), GaussMat::identity(ctx.dim_v().pow(2)));
            let e = tensor_operator(&OperatorKind::Contract(1), &ctx, 2).unwrap();
            let deltas = measure_deltas(&ctx).unwrap();
            assert_eq!(e.mul(&e).unwrap(), e.scale(&deltas.delta0));
        }
    }

    #[test]
    fn index_errors() {
        let ctx = GroupContext::new(GroupSpec::sp(1).unwrap()).unwrap();
        assert!(matches!(tensor_operator(&OperatorKind::Swap(2), &ctx, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(tensor_operator(&OperatorKind::Xi(0), &ctx, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(tensor_operator(&OperatorKind::Contract(1), &ctx, 2).is_ok());
    }

    #[test]
    fn measured_loop_parameters() {
        let so = GroupContext::new(GroupSpec::so(3, 2).unwrap()).unwrap();
        let d = measure_deltas(&so).unwrap();
        assert_eq!(d.delta0, GaussRat::from_int(5));
        assert_eq!(d.delta1, GaussRat::from_int(1));
        let sp = GroupContext::new(GroupSpec::sp(2).unwrap()).unwrap();
        let d = measure_deltas(&sp).unwrap();
        assert_eq!(d.delta0, GaussRat::from_int(-4));
        assert_eq!(d.delta1, GaussRat::zero());
    }

    #[test]
    fn loop_parameters_do_not_depend_on_the_basis() {
        let sp = GroupContext::new(GroupSpec::sp(2).unwrap()).unwrap();
        let base = measure_deltas(&sp).unwrap();
        assert_eq!(measure_deltas_in_basis(&sp, sp.basis_change().unwrap()).unwrap(), base);
        assert_eq!(measure_deltas_in_basis(&sp, sp.weight_frame()).unwrap(), base);
        let so = GroupContext::new(GroupSpec::so(4, 3).unwrap()).unwrap();
        assert_eq!(measure_deltas_in_basis(&so, so.weight_frame()).unwrap(), measure_deltas(&so).unwrap());
    }

    #[test]
    fn frames_agree_on_phi() {
        let ctx = GroupContext::new(GroupSpec::sp(2).unwrap()).unwrap();
        let std = PhiMap::new(&ctx, 2, Frame::Standard).unwrap();
        let wt = PhiMap::new(&ctx, 2, Frame::Weight).unwrap();
        let p = ctx.weight_frame().kron(ctx.weight_frame());
        let p_inv = p.inverse().unwrap();
        for d in enumerate_diagrams(2, 2) {
            let a = std.diagram(&d).unwrap();
            let b = wt.diagram(&d).unwrap();
            assert_eq!(p_inv.mul(&a).unwrap().mul(&p).unwrap(), b, "{d}");
        }
    }

    #[test]
    fn phi_of_simple_elements() {
        let ctx = GroupContext::new(GroupSpec::so(3, 2).unwrap()).unwrap();
        let one = AlgebraElement::one(2, 2);
        assert_eq!(phi(&one, &ctx, 2).unwrap(), GaussMat::identity(25));
        let t = crate::algebra::generator(crate::algebra::GenKind::T, 1, 2, 2).unwrap();
        let e = crate::algebra::generator(crate::algebra::GenKind::E, 1, 2, 2).unwrap();
        let th = crate::algebra::generator(crate::algebra::GenKind::Theta, 1, 2, 2).unwrap();
        assert_eq!(phi(&t.mul(&e).unwrap(), &ctx, 2).unwrap(), phi(&e, &ctx, 2).unwrap());
        let ete = e.mul(&th).unwrap().mul(&e).unwrap();
        assert_eq!(phi(&ete, &ctx, 2).unwrap(), phi(&e, &ctx, 2).unwrap());
        assert!(matches!(phi(&AlgebraElement::one(2, 3), &ctx, 2), Err(Error::ContextMismatch(_))));
    }
}
