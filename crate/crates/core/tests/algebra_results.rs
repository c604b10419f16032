use lconf_core::algebra::{lam, ModuleSpec};
use lconf_core::central_ext::{h2, is_cocycle, solve_2cocycles, trivial_cocycle, TwoCocycle};
use lconf_core::derivations::{derivation_report, is_derivation, outer_dim};
use lconf_core::modules::{classify_rank_one, solve_m_action, solve_m_action_relaxed};
use lconf_core::poly::{rat, Polynomial};
use lconf_core::ConformalAlgebra;

fn x() -> Polynomial {
    Polynomial::var(lam())
}

#[test]
fn w22_and_virasoro_have_no_outer_derivations() {
    for alg in [ConformalAlgebra::w22(), ConformalAlgebra::virasoro()] {
        for n in 1..=5 {
            let r = derivation_report(&alg, n);
            assert!(r.inner_contained, "N = {n}");
            assert_eq!(r.outer_dim, 0, "N = {n}");
            assert!(r.derivations.iter().all(|d| is_derivation(&alg, d)));
        }
    }
}

#[test]
fn abelian_control_has_outer_derivations() {
    // Every conformal linear map of an abelian algebra is a derivation, and ad is zero.
    assert!(outer_dim(&ConformalAlgebra::abelian(1), 2) > 0);
}

#[test]
fn two_cocycles_of_w22() {
    let w = ConformalAlgebra::w22();
    let cube = x().pow(3);
    for n in 3..=5 {
        let r = h2(&w, n);
        assert_eq!(r.h2_dim, 2, "N = {n}");
        assert!(r.trivial_contained);
        assert_eq!(r.representatives.len(), 2);
        let ll = TwoCocycle::zero().with(0, 0, cube.clone());
        let lm = TwoCocycle::zero().with(0, 1, cube.clone());
        assert!(is_cocycle(&w, &ll) && is_cocycle(&w, &lm));
        assert!(r
            .representatives
            .iter()
            .any(|f| f.value(0, 0) == cube && f.value(0, 1).is_zero()));
        assert!(r
            .representatives
            .iter()
            .any(|f| f.value(0, 1) == cube && f.value(0, 0).is_zero()));
        for f in &r.cocycle_basis {
            assert!(f.value(1, 1).is_zero());
        }
    }
}

#[test]
fn low_degree_bounds_see_only_trivial_cocycles() {
    let w = ConformalAlgebra::w22();
    assert_eq!(h2(&w, 2).h2_dim, 0);
    assert!(!solve_2cocycles(&w, 2).is_empty());
}

#[test]
fn virasoro_trivial_cocycle() {
    // phi(L) = 1 on [L x L] = (D + 2x) L, with D acting as zero on the center.
    let vir = ConformalAlgebra::virasoro();
    let f = trivial_cocycle(&vir, &[rat(1)]);
    assert_eq!(f.value(0, 0), x().scale(&rat(2)));
    assert!(is_cocycle(&vir, &f));
}

#[test]
fn rank_one_classification() {
    let report = classify_rank_one(6);
    assert!(report.family_is_module);
    assert!(report.formal_zero);
    assert_eq!(report.grid.len(), 25);
    assert!(report.grid.iter().any(|(d, _, _)| *d == rat(0)));
    assert!(report.grid.iter().all(|(_, _, dim)| *dim == 0));
    assert!(report.checked);
}

#[test]
fn m_action_needs_the_l_compatibility() {
    // Dropping the (L, M) equations leaves the constant actions g = 1, x.
    assert!(solve_m_action_relaxed(1).len() >= 2);
    let sol = solve_m_action(&Polynomial::int(1), &Polynomial::int(0), 4);
    assert!(sol.basis.is_empty());
    let m = ModuleSpec::virasoro_family(Polynomial::int(1), Polynomial::int(0));
    assert!(m.has_generator_action());
}
