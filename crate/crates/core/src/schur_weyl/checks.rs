//! Executable forms of the isomorphism, dimension and decomposition statements.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::{CacheKey, Family, Frame, GroupContext, GroupSpec, OpSlot};
use super::operators::{cached_op, lie_actions, PhiMap};
use crate::algebra::{collect_reports, relations, Gen, RelationFailure, RelationReport, WordTerm};
use crate::coeff::{DeltaPoly, GaussRat};
use crate::diagram::{compose, count_diagrams, enumerate_diagrams};
use crate::error::Result;
use crate::linalg::{center_dim, commutant_basis_dim, GaussMat, SparseVec, Subspace};

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Commutant of the compact Lie algebra on `V^{⊗k}`, cached per frame.
pub fn commutant(ctx: &GroupContext, k: usize, frame: Frame) -> Result<Arc<Subspace>> {
    ctx.cached_space(CacheKey::Commutant(frame, k), || {
        let gens: Vec<GaussMat> = lie_actions(ctx, k, frame)?.iter().map(|m| (**m).clone()).collect();
        commutant_basis_dim(&gens, ctx.dim_v().pow(k as u32))
    })
}

fn phi_image_space(ctx: &GroupContext, k: usize, frame: Frame) -> Result<Subspace> {
    let images = PhiMap::new(ctx, k, frame)?.basis_images()?;
    let flats: Vec<SparseVec> = images.iter().map(GaussMat::flatten).collect();
    Subspace::span(ctx.dim_v().pow(2 * k as u32), &flats)
}

fn matrix_difference(a: &GaussMat, b: &GaussMat) -> Option<String> {
    let diff = a.sub(b).expect("same shape");
    (!diff.is_zero()).then(|| {
        let (r, c, v) = diff.entries().next().expect("nonzero");
        format!("{} differing entries, first at ({r}, {c}) off by {v}", diff.nnz())
    })
}

fn term_matrix(phi: &PhiMap<'_>, t: &WordTerm) -> Result<GaussMat> {
    let coeff = DeltaPoly::delta_monomial(&t.deltas, 2)?.specialize(&phi.deltas().assignment())?;
    Ok(phi.word(&t.word)?.scale(&coeff))
}

/// Checks the `Br_{k,2}` relations on the `Φ`-images of the generators, and
/// for `k ≤ 2` that `Φ(x·y) = Φ(x)Φ(y)` on every pair of basis diagrams.
pub fn verify_phi(ctx: &GroupContext, k: usize) -> Result<Vec<RelationReport>> {
    let phi = PhiMap::new(ctx, k, Frame::Standard)?;
    let rels = relations(k, 2);
    let outcomes = rels
        .par_iter()
        .map(|r| {
            let lhs = term_matrix(&phi, &r.lhs)?;
            let rhs = term_matrix(&phi, &r.rhs)?;
            Ok((
                r.id,
                matrix_difference(&lhs, &rhs).map(|difference| RelationFailure { instance: r.instance(), difference }),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut reports = collect_reports(outcomes);
    if k <= 2 {
        reports.push(verify_phi_pairs(&phi, k)?);
    }
    Ok(reports)
}

fn verify_phi_pairs(phi: &PhiMap<'_>, k: usize) -> Result<RelationReport> {
    let basis = enumerate_diagrams(k, 2);
    let images = phi.basis_images()?;
    let assignment = phi.deltas().assignment();
    let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|a| (0..basis.len()).map(move |b| (a, b))).collect();
    let outcomes = pairs
        .par_iter()
        .map(|&(a, b)| {
            let r = compose(&basis[a], &basis[b])?;
            let coeff = DeltaPoly::delta_monomial(&r.loops, 2)?.specialize(&assignment)?;
            let target = basis.binary_search(&r.diagram).expect("basis is sorted and complete");
            let lhs = images[target].scale(&coeff);
            let rhs = images[a].mul(&images[b])?;
            Ok((
                "homomorphism_pairs",
                matrix_difference(&lhs, &rhs).map(|difference| RelationFailure {
                    instance: format!("Φ([{}]·[{}])", basis[a], basis[b]),
                    difference,
                }),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect_reports(outcomes).pop().unwrap_or(RelationReport {
        relation_id: "homomorphism_pairs".into(),
        instances_checked: 0,
        failures: Vec::new(),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaithfulReport {
    pub rank: usize,
    pub expected: u128,
    pub injective: bool,
}

/// Rank of the `Φ`-images of all basis diagrams of `Br_{k,2}`.
pub fn phi_faithful(ctx: &GroupContext, k: usize) -> Result<FaithfulReport> {
    let rank = phi_image_space(ctx, k, Frame::Weight)?.dim();
    let expected = count_diagrams(k, 2);
    Ok(FaithfulReport { rank, expected, injective: rank as u128 == expected })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutantReport {
    pub commutant_dim: usize,
    pub image_dim: usize,
    pub equal: bool,
}

/// Compares `End_𝔨(V^{⊗k})` with the span of the `Φ`-images.
pub fn commutant_check(ctx: &GroupContext, k: usize) -> Result<CommutantReport> {
    let comm = commutant(ctx, k, Frame::Weight)?;
    let image = phi_image_space(ctx, k, Frame::Weight)?;
    Ok(CommutantReport { commutant_dim: comm.dim(), image_dim: image.dim(), equal: comm.equal(&image)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sector {
    pub s: usize,
    pub multiplicity: u128,
    pub block_dim: usize,
    pub expected: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorReport {
    pub k: usize,
    pub sectors: Vec<Sector>,
    pub off_block_zero: bool,
    pub total_dim: usize,
}

impl SectorReport {
    pub fn block_dims(&self) -> Vec<usize> {
        self.sectors.iter().map(|s| s.block_dim).collect()
    }

    pub fn matches_expected(&self) -> bool {
        self.off_block_zero && self.sectors.iter().all(|s| s.block_dim as u128 == s.expected)
    }
}

/// Splits the commutant for `Sp(2n, ℝ)` into the sectors of `V^{⊗k}` with `s`
/// tensor slots in the `ξ = +1` eigenspace.
pub fn decompose_sp(n: usize, k: usize) -> Result<SectorReport> {
    let ctx = GroupContext::new(GroupSpec::sp(n)?)?;
    decompose_sp_in(&ctx, k)
}

pub fn decompose_sp_in(ctx: &GroupContext, k: usize) -> Result<SectorReport> {
    let n = ctx.spec().n;
    let d = ctx.dim_v();
    let total = d.pow(k as u32);
    // In the weight frame the first n coordinates span ξ = +1.
    let sector: Vec<usize> = (0..total)
        .map(|mut idx| {
            let mut s = 0;
            for _ in 0..k {
                if idx % d < n {
                    s += 1;
                }
                idx /= d;
            }
            s
        })
        .collect();
    let comm = commutant(ctx, k, Frame::Weight)?;
    let mut off_block_zero = true;
    let mut projections: Vec<Vec<SparseVec>> = vec![Vec::new(); k + 1];
    for v in comm.basis() {
        let mut parts: Vec<SparseVec> = vec![Vec::new(); k + 1];
        for (pos, val) in v {
            let (r, c) = (pos / total, pos % total);
            if sector[r] != sector[c] {
                off_block_zero = false;
            } else {
                parts[sector[r]].push((*pos, val.clone()));
            }
        }
        for (s, part) in parts.into_iter().enumerate() {
            if !part.is_empty() {
                projections[s].push(part);
            }
        }
    }
    let kf = factorial(k as u128);
    let sectors: Vec<Sector> = projections
        .iter()
        .enumerate()
        .map(|(s, vecs)| {
            let block_dim = crate::linalg::rank_of_vectors(total * total, vecs);
            let mult = binomial(k as u128, s as u128);
            Sector { s, multiplicity: mult, block_dim, expected: mult * mult * kf }
        })
        .collect();
    let total_dim = if off_block_zero { sectors.iter().map(|s| s.block_dim).sum() } else { comm.dim() };
    Ok(SectorReport { k, sectors, off_block_zero, total_dim })
}

/// `Σ_s C(k,s)²·k! = (2k)!/k!` as exact integers.
pub fn sector_identity(k: usize) -> (u128, u128) {
    let k = k as u128;
    let lhs = (0..=k).map(|s| binomial(k, s).pow(2) * factorial(k)).sum();
    (lhs, factorial(2 * k) / factorial(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTypeReport {
    pub count: usize,
    pub method: String,
}

/// Number of irreducible blocks of `End_𝔨(V^{⊗k})`, i.e. the dimension of its center.
///
/// When the `Φ`-images span the commutant, the center is the commutant of the
/// Lie action together with the generator images, which is one sparse
/// solve. Otherwise the center is computed from the commutant basis.
pub fn count_ktypes(ctx: &GroupContext, k: usize) -> Result<usize> {
    Ok(count_ktypes_report(ctx, k)?.count)
}

pub fn count_ktypes_report(ctx: &GroupContext, k: usize) -> Result<KTypeReport> {
    let check = commutant_check(ctx, k)?;
    if check.equal {
        let phi = PhiMap::new(ctx, k, Frame::Weight)?;
        let mut gens: Vec<GaussMat> = lie_actions(ctx, k, Frame::Weight)?.iter().map(|m| (**m).clone()).collect();
        for i in 1..k {
            gens.push(phi.generator(Gen::T(i))?);
            gens.push(phi.generator(Gen::E(i))?);
        }
        for i in 1..=k {
            gens.push((*cached_op(ctx, Frame::Weight, k, OpSlot::Xi(i))?).clone());
        }
        let count = commutant_basis_dim(&gens, ctx.dim_v().pow(k as u32))?.dim();
        Ok(KTypeReport { count, method: "commutant of Lie action and generator images".into() })
    } else {
        Ok(KTypeReport { count: center_of_commutant(ctx, k)?, method: "center of the commutant basis".into() })
    }
}

/// Center dimension computed directly from a commutant basis.
pub fn center_of_commutant(ctx: &GroupContext, k: usize) -> Result<usize> {
    let d = ctx.dim_v().pow(k as u32);
    let comm = commutant(ctx, k, Frame::Weight)?;
    let mats: Vec<GaussMat> = comm.basis().iter().map(|v| GaussMat::from_flat(d, d, v)).collect::<Result<_>>()?;
    center_dim(&mats)
}

fn partition_counts(max: usize) -> Vec<u128> {
    let mut p = vec![0u128; max + 1];
    p[0] = 1;
    for part in 1..=max {
        for total in part..=max {
            p[total] += p[total - part];
        }
    }
    p
}

/// Bipartitions `(λ¹, λ²)` of `k − 2l` summed over `l = 0..⌊k/2⌋`.
pub fn count_bipartitions(k: usize) -> u128 {
    let p = partition_counts(k);
    (0..=k / 2)
        .map(|l| {
            let size = k - 2 * l;
            (0..=size).map(|a| p[a] * p[size - a]).sum::<u128>()
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub lhs: u128,
    pub rhs: u128,
    pub equal: bool,
}

/// `Σ_{s+t even} C(k,s) C(k,t) D((s+t)/2) D(k − (s+t)/2)` against `(2k)!/k!`,
/// with `D(j)` the number of Brauer diagrams of rank `j`.
pub fn so_dimension_identity(k: usize) -> IdentityReport {
    let kk = k as u128;
    let mut lhs = 0u128;
    for s in 0..=k {
        for t in 0..=k {
            if (s + t) % 2 == 1 {
                continue;
            }
            let half = (s + t) / 2;
            lhs += binomial(kk, s as u128)
                * binomial(kk, t as u128)
                * count_diagrams(half, 1)
                * count_diagrams(k - half, 1);
        }
    }
    let rhs = factorial(2 * kk) / factorial(kk);
    IdentityReport { lhs, rhs, equal: lhs == rhs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalledReport {
    pub commutant_dim: usize,
    pub expected: u128,
    pub equal: bool,
}

/// Commutant of `𝔤𝔩_n` on `V^{⊗s} ⊗ (V*)^{⊗t}` against `(s + t)!`.
pub fn walled_centralizer_check(n: usize, s: usize, t: usize) -> Result<WalledReport> {
    let k = s + t;
    let dim = n.pow(k as u32);
    let gens: Vec<GaussMat> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(i, j)| {
            let e = GaussMat::from_entries(n, n, [(i, j, GaussRat::from_int(1))]).expect("index in range");
            let dual = e.transpose().scale(&GaussRat::from_int(-1));
            let mut acc = GaussMat::zeros(dim, dim);
            for slot in 0..k {
                let local = if slot < s { &e } else { &dual };
                acc = acc.add(&super::operators::embed(local, slot, 1, n, k)).expect("same shape");
            }
            acc
        })
        .collect();
    let commutant_dim = commutant_basis_dim(&gens, dim)?.dim();
    let expected = factorial(k as u128);
    Ok(WalledReport { commutant_dim, expected, equal: commutant_dim as u128 == expected })
}

/// The closed-form loop parameters of the isomorphism statements, for
/// comparison with the measured ones.
pub fn stated_deltas(spec: &GroupSpec) -> (i64, i64) {
    match spec.family {
        Family::Sp => (-(spec.n as i64), 0),
        Family::So => (((spec.p + spec.q) / 2) as i64, spec.p as i64 - spec.q as i64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartition_counts() {
        assert_eq!(count_bipartitions(0), 1);
        assert_eq!(count_bipartitions(1), 2);
        assert_eq!(count_bipartitions(2), 6);
        assert_eq!(count_bipartitions(3), 12);
    }

    #[test]
    fn dimension_identities() {
        for k in 0..=12 {
            let r = so_dimension_identity(k);
            assert!(r.equal, "k={k}: {r:?}");
            let (l, rr) = sector_identity(k);
            assert_eq!(l, rr, "k={k}");
        }
        assert_eq!(so_dimension_identity(2).lhs, 12);
        assert_eq!(so_dimension_identity(3).rhs, 120);
        assert_eq!(so_dimension_identity(0).lhs, 1);
    }

    #[test]
    fn walled_examples() {
        assert_eq!(walled_centralizer_check(2, 1, 1).unwrap().commutant_dim, 2);
        assert_eq!(walled_centralizer_check(3, 2, 1).unwrap().commutant_dim, 6);
        let empty = walled_centralizer_check(2, 0, 0).unwrap();
        assert_eq!(empty.commutant_dim, 1);
        assert!(empty.equal);
    }

    #[test]
    fn sp_small_cases() {
        let ctx = GroupContext::new(GroupSpec::sp(2).unwrap()).unwrap();
        let c1 = commutant_check(&ctx, 1).unwrap();
        assert_eq!(c1, CommutantReport { commutant_dim: 2, image_dim: 2, equal: true });
        let c2 = commutant_check(&ctx, 2).unwrap();
        assert_eq!(c2, CommutantReport { commutant_dim: 12, image_dim: 12, equal: true });
        assert_eq!(count_ktypes(&ctx, 1).unwrap(), 2);
        assert_eq!(count_ktypes(&ctx, 2).unwrap(), 6);
        assert_eq!(center_of_commutant(&ctx, 2).unwrap(), 6);
        let dec = decompose_sp_in(&ctx, 2).unwrap();
        assert!(dec.off_block_zero);
        assert_eq!(dec.block_dims(), vec![2, 8, 2]);
        let zero = decompose_sp_in(&ctx, 0).unwrap();
        assert_eq!(zero.block_dims(), vec![1]);
    }

    #[test]
    fn so_small_cases() {
        let ctx = GroupContext::new(GroupSpec::so(3, 2).unwrap()).unwrap();
        assert!(phi_faithful(&ctx, 2).unwrap().injective);
        for r in verify_phi(&ctx, 2).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }
}
