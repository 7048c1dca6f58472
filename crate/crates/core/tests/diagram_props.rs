use cyclobrauer::diagram::{
    canonicalize, compose, count_diagrams, enumerate_diagrams, enumerate_uneven, factor_marked, parse_diagram,
    LabeledDiagram, Vertex,
};
use proptest::prelude::*;

fn diagram(k: usize, m: u32) -> impl Strategy<Value = LabeledDiagram> {
    let basis = enumerate_diagrams(k, m);
    (0..basis.len()).prop_map(move |i| basis[i].clone())
}

fn triple() -> impl Strategy<Value = (LabeledDiagram, LabeledDiagram, LabeledDiagram)> {
    (1usize..=4, 1u32..=4).prop_flat_map(|(k, m)| (diagram(k, m), diagram(k, m), diagram(k, m)))
}

fn with_loops(mut loops: Vec<u32>, extra: &[u32]) -> Vec<u32> {
    loops.extend_from_slice(extra);
    loops.sort_unstable();
    loops
}

proptest! {
    #[test]
    fn composition_is_associative((a, b, c) in triple()) {
        let ab = compose(&a, &b).unwrap();
        let ab_c = compose(&ab.diagram, &c).unwrap();
        let bc = compose(&b, &c).unwrap();
        let a_bc = compose(&a, &bc.diagram).unwrap();
        prop_assert_eq!(&ab_c.diagram, &a_bc.diagram);
        prop_assert_eq!(with_loops(ab.loops, &ab_c.loops), with_loops(bc.loops, &a_bc.loops));
    }

    #[test]
    fn identity_is_neutral(a in (1usize..=4, 1u32..=4).prop_flat_map(|(k, m)| diagram(k, m))) {
        let one = LabeledDiagram::identity(a.k(), a.m());
        let left = compose(&one, &a).unwrap();
        let right = compose(&a, &one).unwrap();
        prop_assert!(left.loops.is_empty() && right.loops.is_empty());
        prop_assert_eq!(&left.diagram, &a);
        prop_assert_eq!(&right.diagram, &a);
    }

    #[test]
    fn canonical_form_is_idempotent(a in (1usize..=4, 1u32..=4).prop_flat_map(|(k, m)| diagram(k, m))) {
        let raw: Vec<(Vertex, Vertex, u32)> = a.edges().iter().map(|e| (e.from, e.to, e.label)).collect();
        prop_assert_eq!(&canonicalize(&raw, a.k(), a.m()).unwrap(), &a);
        // Reversing every edge negates labels and gives the same diagram.
        let reversed: Vec<(Vertex, Vertex, u32)> =
            raw.iter().map(|&(f, t, l)| (t, f, (a.m() - l) % a.m())).collect();
        prop_assert_eq!(&canonicalize(&reversed, a.k(), a.m()).unwrap(), &a);
    }

    #[test]
    fn text_format_round_trips(a in (1usize..=4, 1u32..=4).prop_flat_map(|(k, m)| diagram(k, m))) {
        prop_assert_eq!(&parse_diagram(&a.to_string(), a.k(), a.m()).unwrap(), &a);
    }

    #[test]
    fn marked_factorization_reassembles(a in (1usize..=4).prop_flat_map(|k| diagram(k, 2))) {
        let f = factor_marked(&a).unwrap();
        let r = f.reassemble();
        prop_assert!(r.loops.is_empty());
        prop_assert_eq!(&r.diagram, &a);
    }
}

#[test]
fn counts_follow_the_dimension_formula() {
    for k in 0..=4usize {
        for m in 1..=3u32 {
            let fact = |n: u128| (1..=n).product::<u128>();
            let expected = fact(2 * k as u128) * (m as u128).pow(k as u32) / (fact(k as u128) << k);
            assert_eq!(count_diagrams(k, m), expected);
            assert_eq!(enumerate_diagrams(k, m).len() as u128, expected);
        }
    }
    assert_eq!(count_diagrams(4, 2), 1680);
}

#[test]
fn uneven_counts() {
    assert_eq!(enumerate_uneven(6, 4).len(), 945);
    assert_eq!(enumerate_uneven(2, 1).len(), 0);
    assert_eq!(enumerate_uneven(0, 0).len(), 1);
}

#[test]
fn malformed_text_is_rejected() {
    assert!(parse_diagram("t1-b1", 2, 2).is_err());
    assert!(parse_diagram("t1-b1:5,t2-b2", 2, 2).is_err());
    assert!(parse_diagram("t1-t1,b1-b2", 2, 1).is_err());
    assert!(parse_diagram("t1-x2", 1, 1).is_err());
}
