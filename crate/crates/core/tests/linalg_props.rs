use cyclobrauer::coeff::GaussRat;
use cyclobrauer::linalg::{center_dim, commutant_basis, nullspace, rank, GaussMat, Subspace};
use cyclobrauer::Error;
use proptest::prelude::*;

fn exact(r: usize, c: usize) -> impl Strategy<Value = GaussMat> {
    prop::collection::vec(prop::option::weighted(0.35, (-3i64..=3, -2i64..=2)), r * c).prop_map(move |cells| {
        let entries = cells
            .into_iter()
            .enumerate()
            .filter_map(|(i, cell)| cell.map(|(re, im)| (i / c, i % c, GaussRat::gauss_int(re, im))));
        GaussMat::from_entries(r, c, entries).unwrap()
    })
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = GaussMat> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| exact(r, c))
}

fn square(max: usize) -> impl Strategy<Value = GaussMat> {
    (1..=max).prop_flat_map(|d| exact(d, d))
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix(9, 9)) {
        let kernel = nullspace(&m);
        prop_assert_eq!(rank(&m) + kernel.dim(), m.cols());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        for v in kernel.basis() {
            prop_assert!(m.mul_vec(v).unwrap().is_empty());
        }
    }

    #[test]
    fn dependent_rows_do_not_raise_rank((m, mix) in matrix(6, 8).prop_flat_map(|m| {
        let rows = m.rows();
        (Just(m), exact(rows, rows))
    })) {
        let extra = mix.mul(&m).unwrap();
        let mut entries: Vec<_> = m.entries().map(|(r, c, v)| (r, c, v.clone())).collect();
        entries.extend(extra.entries().map(|(r, c, v)| (r + m.rows(), c, v.clone())));
        let stacked = GaussMat::from_entries(m.rows() + extra.rows(), m.cols(), entries).unwrap();
        prop_assert_eq!(rank(&stacked), rank(&m));
    }

    #[test]
    fn commutant_residuals_vanish(gens in (1usize..=5).prop_flat_map(|d| prop::collection::vec(exact(d, d), 1..3))) {
        let d = gens[0].rows();
        let space = commutant_basis(&gens).unwrap();
        prop_assert!(space.contains(&GaussMat::identity(d).flatten()).unwrap());
        for v in space.basis() {
            let x = GaussMat::from_flat(d, d, v).unwrap();
            for g in &gens {
                prop_assert!(x.commutator(g).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn span_is_canonical(m in matrix(6, 6)) {
        let rows: Vec<_> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let a = Subspace::span(m.cols(), &rows).unwrap();
        let b = Subspace::span(m.cols(), rows.iter().rev()).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
        prop_assert!(a.equal(&b).unwrap());
    }

    #[test]
    fn inverse_is_two_sided(m in square(5)) {
        if let Some(inv) = m.inverse() {
            let n = m.rows();
            prop_assert_eq!(m.mul(&inv).unwrap(), GaussMat::identity(n));
            prop_assert_eq!(inv.mul(&m).unwrap(), GaussMat::identity(n));
        } else {
            prop_assert!(rank(&m) < m.rows());
        }
    }
}

#[test]
fn center_of_block_diagonal_algebra() {
    // M_2 ⊕ C ⊕ C spanned by its matrix units: three blocks.
    let one = GaussRat::from_int(1);
    let mut units = Vec::new();
    for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (3, 3)] {
        units.push(GaussMat::from_entries(4, 4, [(r, c, one.clone())]).unwrap());
    }
    assert_eq!(center_dim(&units).unwrap(), 3);
}

#[test]
fn center_requires_an_algebra() {
    let one = GaussRat::from_int(1);
    let e01 = GaussMat::from_entries(2, 2, [(0, 1, one.clone())]).unwrap();
    assert!(matches!(center_dim(&[e01]), Err(Error::NotAnAlgebra(_))));
}

#[test]
fn mismatched_shapes_are_errors() {
    let a = GaussMat::identity(2);
    let b = GaussMat::identity(3);
    assert!(a.mul(&b).is_err());
    assert!(commutant_basis(&[a, b]).is_err());
}
