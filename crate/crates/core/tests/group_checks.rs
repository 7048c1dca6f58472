use cyclobrauer::coeff::GaussRat;
use cyclobrauer::linalg::{commutant_basis_dim, GaussMat};
use cyclobrauer::schur_weyl::{
    center_of_commutant, count_ktypes, lie_actions, measure_deltas, sp_f_basis, sp_xi, verify_phi, Frame, GroupContext,
    GroupSpec,
};
use cyclobrauer::Error;

fn contexts() -> Vec<GroupContext> {
    let mut specs: Vec<GroupSpec> = (1..=4).map(|n| GroupSpec::sp(n).unwrap()).collect();
    specs.extend([(2, 1), (3, 2), (4, 1), (4, 3)].map(|(p, q)| GroupSpec::so(p, q).unwrap()));
    specs.into_iter().map(|s| GroupContext::new(s).unwrap()).collect()
}

#[test]
fn contexts_build_with_checked_invariants() {
    for ctx in contexts() {
        let d = ctx.dim_v();
        assert_eq!(ctx.xi().mul(ctx.xi()).unwrap(), GaussMat::identity(d));
        assert_eq!(ctx.lie_basis().len(), ctx.spec().k_dim());
        for x in ctx.lie_basis() {
            assert!(x.commutator(ctx.xi()).unwrap().is_zero());
        }
    }
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(matches!(GroupSpec::sp(0), Err(Error::BadSpec(_))));
    assert!(matches!(GroupSpec::so(3, 0), Err(Error::BadSpec(_))));
    assert!(matches!(GroupSpec::so(2, 3), Err(Error::BadSpec(_))));
    assert!(matches!(GroupSpec::so(2, 2), Err(Error::BadSpec(_))));
}

#[test]
fn sign_flipped_xi_is_caught() {
    // Flip the sign of one 2×2 block of ξ: ξ² = I still holds, but ξ no
    // longer commutes with the compact Lie algebra.
    let n = 2;
    let xi = sp_xi(n);
    let entries = xi.entries().map(|(r, c, v)| {
        let v = if r == 0 || c == 0 { -v } else { v.clone() };
        (r, c, v)
    });
    let bad = GaussMat::from_entries(2 * n, 2 * n, entries).unwrap();
    let spec = GroupSpec::sp(n).unwrap();
    assert!(matches!(GroupContext::with_xi(spec, bad), Err(Error::InvariantViolation(_))));
    let negated = xi.scale(&GaussRat::from_int(-1));
    assert!(GroupContext::with_xi(spec, negated).is_ok());
    let so_bad = GaussMat::identity(5);
    let so = GroupSpec::so(3, 2).unwrap();
    assert!(GroupContext::with_xi(so, so_bad).is_ok());
    let not_involution = GaussMat::from_entries(5, 5, (0..5).map(|j| (j, j, GaussRat::from_int(2)))).unwrap();
    assert!(matches!(GroupContext::with_xi(so, not_involution), Err(Error::InvariantViolation(_))));
}

#[test]
fn xi_swaps_the_f_basis() {
    // ξ f_1 = i·f_1' for Sp(2): the f basis is not an eigenbasis of ξ.
    let f = sp_f_basis(1);
    let image = sp_xi(1).mul(&f).unwrap();
    let i = GaussRat::i();
    assert_eq!(image.get(0, 0), &i * &f.get(0, 1));
    assert_eq!(image.get(1, 0), &i * &f.get(1, 1));
}

#[test]
fn loop_parameters() {
    for ctx in contexts() {
        let d = measure_deltas(&ctx).unwrap();
        let spec = ctx.spec();
        let (d0, d1) = match spec.family {
            cyclobrauer::schur_weyl::Family::Sp => (-(2 * spec.n as i64), 0),
            cyclobrauer::schur_weyl::Family::So => ((spec.p + spec.q) as i64, spec.p as i64 - spec.q as i64),
        };
        assert_eq!(d.delta0, GaussRat::from_int(d0), "{spec}");
        assert_eq!(d.delta1, GaussRat::from_int(d1), "{spec}");
    }
}

#[test]
fn phi_respects_relations_for_so() {
    for (p, q) in [(2, 1), (3, 2), (4, 1)] {
        let ctx = GroupContext::new(GroupSpec::so(p, q).unwrap()).unwrap();
        for k in 1..=3 {
            for r in verify_phi(&ctx, k).unwrap() {
                assert!(r.passed(), "SO({p},{q}) k={k}: {r:?}");
            }
        }
    }
}

#[test]
fn sp_failures_are_confined_to_the_theta_pair_relation() {
    let ctx = GroupContext::new(GroupSpec::sp(2).unwrap()).unwrap();
    for k in 2..=3 {
        let failing: Vec<String> =
            verify_phi(&ctx, k).unwrap().into_iter().filter(|r| !r.passed()).map(|r| r.relation_id).collect();
        let expected: &[&str] = if k == 2 { &["theta_pair_e", "homomorphism_pairs"] } else { &["theta_pair_e"] };
        assert_eq!(failing, expected);
    }
}

#[test]
fn center_dimension_agrees_with_ktype_count() {
    for (spec, k) in [(GroupSpec::sp(1).unwrap(), 2), (GroupSpec::sp(2).unwrap(), 1), (GroupSpec::so(2, 1).unwrap(), 2)]
    {
        let ctx = GroupContext::new(spec).unwrap();
        assert_eq!(count_ktypes(&ctx, k).unwrap(), center_of_commutant(&ctx, k).unwrap(), "{spec} k={k}");
    }
}

#[test]
fn reflections_cut_the_so_commutant_to_the_brauer_size() {
    // SO(3)×SO(2) has a 21-dimensional commutant on V⊗V; adding one
    // reflection in each block (O(3)×O(2)) leaves exactly 12 = 4!/2!.
    let ctx = GroupContext::new(GroupSpec::so(3, 2).unwrap()).unwrap();
    let mut gens: Vec<GaussMat> =
        lie_actions(&ctx, 2, Frame::Standard).unwrap().iter().map(|m| (**m).clone()).collect();
    assert_eq!(commutant_basis_dim(&gens, 25).unwrap().dim(), 21);
    for flip in [0, 3] {
        let diag: Vec<GaussRat> = (0..5).map(|j| GaussRat::from_int(if j == flip { -1 } else { 1 })).collect();
        let r = GaussMat::diagonal_matrix(&diag);
        gens.push(r.kron(&r));
    }
    assert_eq!(commutant_basis_dim(&gens, 25).unwrap().dim(), 12);
}
