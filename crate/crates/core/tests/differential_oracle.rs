//! Pointwise check of the differential against a direct numeric evaluation of
//! its defining formula for W(2,2), on unsorted argument tuples.

use lconf_core::algebra::ModuleSpec;
use lconf_core::cohomology::{Cochain, Complex, GradedPiece};
use lconf_core::poly::{frac, rat, Polynomial, Rational, Variable};
use lconf_core::ConformalAlgebra;
use num::Zero;
use proptest::prelude::*;

const L: usize = 0;
const M: usize = 1;

/// Evaluates a polynomial in `D, x_1, x_2, ..` numerically.
fn eval_poly(p: &Polynomial, partial: &Rational, xs: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for (m, c) in p.terms() {
        let mut term = c.clone();
        for (v, e) in m.iter() {
            let base = match v {
                Variable::Partial => partial.clone(),
                Variable::Lambda(i) => xs[*i as usize - 1].clone(),
                other => panic!("unexpected variable {other}"),
            };
            for _ in 0..*e {
                term *= &base;
            }
        }
        total += term;
    }
    total
}

/// `gamma(args)` with the module variable `D` set to `partial`, sorting the
/// arguments by bubble sort and tracking the sign.
fn eval_cochain(gamma: &Cochain, args: &[(usize, Rational)], partial: &Rational) -> Rational {
    let mut a = args.to_vec();
    let mut negate = false;
    for i in 0..a.len() {
        for j in 0..a.len() - 1 - i {
            if a[j].0 > a[j + 1].0 {
                a.swap(j, j + 1);
                negate = !negate;
            }
        }
    }
    let shape: Vec<usize> = a.iter().map(|(g, _)| *g).collect();
    let xs: Vec<Rational> = a.iter().map(|(_, s)| s.clone()).collect();
    let v = eval_poly(&gamma.component(&shape), partial, &xs);
    if negate {
        -v
    } else {
        v
    }
}

/// Coefficient of `g_k` in `[g_i _{s_i} g_j]` seen inside a cochain slot of variable
/// `s_i + s_j`, where `D` contributes `-(s_i + s_j)`.
fn bracket_factor(i: usize, j: usize, si: &Rational, sj: &Rational) -> Option<(usize, Rational)> {
    match (i, j) {
        (M, M) => None,
        (L, L) => Some((L, si - sj)),
        _ => Some((M, si - sj)),
    }
}

/// `(d gamma)(args)` at `D = partial`, for `L _x v = (D + alpha + delta x) v`, `M _x v = 0`
/// when `module` is given, and trivial coefficients otherwise.
fn oracle_d(
    gamma: &Cochain,
    args: &[(usize, Rational)],
    partial: &Rational,
    module: Option<(Rational, Rational)>,
) -> Rational {
    let n = args.len();
    let mut total = Rational::zero();
    if let Some((delta, alpha)) = &module {
        for i in 0..n {
            if args[i].0 != L {
                continue;
            }
            let s = &args[i].1;
            let rest: Vec<(usize, Rational)> = (0..n).filter(|&t| t != i).map(|t| args[t].clone()).collect();
            // L _s (h(D) v) = h(D + s) (D + alpha + delta s) v.
            let shifted = eval_cochain(gamma, &rest, &(partial + s));
            let term = shifted * (partial + alpha + delta * s);
            // (-1)^(i+1) with 1-based i.
            if i % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (si, sj) = (&args[i].1, &args[j].1);
            let Some((k, c)) = bracket_factor(args[i].0, args[j].0, si, sj) else {
                continue;
            };
            let mut inner = vec![(k, si + sj)];
            inner.extend((0..n).filter(|&t| t != i && t != j).map(|t| args[t].clone()));
            let term = c * eval_cochain(gamma, &inner, partial);
            if (i + j) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    total
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn random_cochain(q: usize, n: u32, coeffs: &[i64]) -> Cochain {
    let piece = GradedPiece::new(2, q, n);
    let v: Vec<Rational> = (0..piece.dim())
        .map(|u| rat(coeffs[u % coeffs.len()] + u as i64 % 3))
        .collect();
    piece.cochain(&v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trivial_coefficients(
        q in 1usize..=4,
        extra in 0u32..=3,
        coeffs in prop::collection::vec(-3i64..=3, 1..6),
        gens in prop::collection::vec(0usize..2, 5),
        point in prop::collection::vec(small_rational(), 5),
    ) {
        let w = ConformalAlgebra::w22();
        let n = q as u32 + extra;
        let gamma = random_cochain(q, n, &coeffs);
        let dg = Complex::trivial(&w).differential(&gamma);
        let args: Vec<(usize, Rational)> = gens[..q + 1].iter().cloned().zip(point[..q + 1].iter().cloned()).collect();
        let zero = Rational::zero();
        prop_assert_eq!(eval_cochain(&dg, &args, &zero), oracle_d(&gamma, &args, &zero, None));
    }

    #[test]
    fn rank_one_coefficients(
        q in 0usize..=3,
        extra in 0u32..=2,
        m in 0u32..=2,
        coeffs in prop::collection::vec(-3i64..=3, 1..6),
        gens in prop::collection::vec(0usize..2, 4),
        point in prop::collection::vec(small_rational(), 4),
        partial in small_rational(),
        delta in small_rational(),
        alpha in small_rational(),
    ) {
        let w = ConformalAlgebra::w22();
        let n = q as u32 + extra;
        let dm = Polynomial::var(Variable::Partial).pow(m);
        let gamma = if q == 0 {
            Cochain::single(vec![], &dm + &Polynomial::int(coeffs[0]))
        } else {
            random_cochain(q, n, &coeffs).map(|p| &dm * p)
        };
        let module = ModuleSpec::virasoro_family(Polynomial::constant(delta.clone()), Polynomial::constant(alpha.clone()));
        let dg = Complex::new(&w, module).differential(&gamma);
        let args: Vec<(usize, Rational)> = gens[..q + 1].iter().cloned().zip(point[..q + 1].iter().cloned()).collect();
        prop_assert_eq!(
            eval_cochain(&dg, &args, &partial),
            oracle_d(&gamma, &args, &partial, Some((delta, alpha)))
        );
    }
}

#[test]
fn oracle_sees_skew_symmetry() {
    // A 1-cochain gamma(X) = x^2 on both generators; d at (M, L) must be minus d at (L, M) swapped.
    let g = Cochain::from_components(
        1,
        [
            (vec![L], Polynomial::var(Variable::lambda(1)).pow(2)),
            (vec![M], Polynomial::one()),
        ],
    );
    let (a, b) = (rat(2), frac(-1, 3));
    let zero = Rational::zero();
    let lm = oracle_d(&g, &[(L, a.clone()), (M, b.clone())], &zero, None);
    let ml = oracle_d(&g, &[(M, b), (L, a)], &zero, None);
    assert_eq!(lm, -ml);
}
