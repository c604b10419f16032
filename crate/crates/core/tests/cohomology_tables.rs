use lconf_core::cohomology::named::{chi, chi_bar, lambda3, lambda3_bar, psi_bar};
use lconf_core::cohomology::{cohomology_tables, Cochain, CohomologyTable, Complex, DegreeRange, GradedPiece};
use lconf_core::poly::Echelon;
use lconf_core::ConformalAlgebra;

fn tables() -> (CohomologyTable, CohomologyTable) {
    cohomology_tables(&ConformalAlgebra::w22(), 7, DegreeRange::Default).unwrap()
}

/// Span of `extra` together with `d C(q-1, n-1)` and, if `reduced`, `D C(q, n-1)`,
/// as an echelon form in the coordinates of `C(q, n)`.
fn span_with_image(q: usize, n: u32, reduced: bool, extra: &[Cochain]) -> Echelon {
    let w = ConformalAlgebra::w22();
    let c = Complex::trivial(&w);
    let piece = GradedPiece::new(2, q, n);
    let mut e = Echelon::new(piece.dim());
    let mut push = |g: &Cochain| {
        e.insert(&piece.coordinates(g).expect("cochain lies in the piece"));
    };
    if q >= 1 && n >= 1 {
        let below = GradedPiece::new(2, q - 1, n - 1);
        for u in 0..below.dim() {
            push(&c.differential(&below.basis_cochain(u)));
        }
    }
    if reduced && n >= 1 {
        let lower = GradedPiece::new(2, q, n - 1);
        for u in 0..lower.dim() {
            push(&c.partial(&lower.basis_cochain(u)));
        }
    }
    for g in extra {
        push(g);
    }
    e
}

fn same_span(q: usize, n: u32, reduced: bool, reps: &[Cochain], named: &[Cochain]) {
    let base = span_with_image(q, n, reduced, &[]).rank();
    let with_reps = span_with_image(q, n, reduced, reps);
    let with_named = span_with_image(q, n, reduced, named);
    assert_eq!(with_reps.rank(), base + reps.len(), "representatives are independent");
    assert_eq!(with_named.rank(), base + named.len(), "named classes are independent");
    let both: Vec<Cochain> = reps.iter().chain(named).cloned().collect();
    assert_eq!(span_with_image(q, n, reduced, &both).rank(), with_reps.rank());
}

fn reps_in_degree(t: &CohomologyTable, q: usize, n: u32) -> Vec<Cochain> {
    t.representatives
        .get(&q)
        .map(|v| {
            v.iter()
                .filter(|c| c.components().values().all(|p| p.degree() == Some(n)))
                .cloned()
                .collect()
        })
        .unwrap_or_default()
}

#[test]
fn totals_and_concentration() {
    let (basic, reduced) = tables();
    assert_eq!(basic.totals_vec(), vec![1, 0, 0, 2, 1, 1, 1, 0]);
    assert_eq!(reduced.totals_vec(), vec![1, 0, 2, 3, 2, 2, 1, 0]);
    for (&(q, n), &dim) in &basic.dims {
        if n != q as u32 {
            assert_eq!(dim, 0, "basic (q, n) = ({q}, {n})");
        }
    }
    for (&(q, n), &dim) in &reduced.dims {
        if n != q as u32 && n != q as u32 + 1 {
            assert_eq!(dim, 0, "reduced (q, n) = ({q}, {n})");
        }
    }
    for t in [&basic, &reduced] {
        for q in 0..=7 {
            let sum: usize = t.dims.iter().filter(|((qq, _), _)| *qq == q).map(|(_, d)| d).sum();
            assert_eq!(sum, t.total(q));
            assert_eq!(t.representatives.get(&q).map_or(0, Vec::len), t.total(q));
        }
    }
}

#[test]
fn long_exact_sequence_identity() {
    let (basic, reduced) = tables();
    for q in 0..7 {
        assert_eq!(reduced.total(q), basic.total(q) + basic.total(q + 1), "q = {q}");
    }
    assert_eq!(basic.total(7), 0);
    assert_eq!(reduced.total(7), 0);
}

#[test]
fn representatives_match_named_classes() {
    let (basic, reduced) = tables();
    same_span(3, 3, false, &reps_in_degree(&basic, 3, 3), &[chi(), lambda3()]);
    same_span(2, 3, true, &reps_in_degree(&reduced, 2, 3), &[chi_bar(), lambda3_bar()]);
    same_span(3, 3, true, &reps_in_degree(&reduced, 3, 3), &[chi(), lambda3()]);
    same_span(3, 4, true, &reps_in_degree(&reduced, 3, 4), &[psi_bar()]);
}

#[test]
fn representatives_are_cocycles() {
    let w = ConformalAlgebra::w22();
    let c = Complex::trivial(&w);
    let (basic, _) = tables();
    for reps in basic.representatives.values() {
        for r in reps {
            assert!(c.differential(r).is_zero());
        }
    }
}

#[test]
fn wider_degree_range_adds_nothing() {
    let basic =
        lconf_core::cohomology::basic_cohomology(&ConformalAlgebra::w22(), 5, DegreeRange::Fixed { lo: 0, hi: 9 })
            .unwrap();
    assert_eq!(basic.totals_vec(), vec![1, 0, 0, 2, 1, 1]);
}
