//! Explicit cochains of W(2,2) with trivial coefficients, and checks of the
//! relations between them.
//!
//! Slots are sorted `L .. L M .. M`; `x_i` is the variable of slot `i`.

use super::{two_generator_shape, Cochain, CohomologyError, Complex, TauVariant, TrivialComplex};
use crate::algebra::ConformalAlgebra;
use crate::poly::{frac, rat, Polynomial, Variable};

fn x(i: u32) -> Polynomial {
    Polynomial::var(Variable::lambda(i))
}

fn prod(ps: &[Polynomial]) -> Polynomial {
    ps.iter().fold(Polynomial::one(), |acc, p| &acc * p)
}

fn sum(idx: &[u32]) -> Polynomial {
    Polynomial::sum_of(idx.iter().map(|&i| Variable::lambda(i)))
}

fn diff(i: u32, j: u32) -> Polynomial {
    &x(i) - &x(j)
}

fn on(q: usize, k: usize, p: Polynomial) -> Cochain {
    Cochain::single(two_generator_shape(q, k), p)
}

/// `(x1 - x2)(x1 + x2) x3` on `(L, L, M)`.
pub fn chi() -> Cochain {
    on(3, 2, prod(&[diff(1, 2), sum(&[1, 2]), x(3)]))
}

/// `(x1 - x2)(x1 - x3)(x2 - x3)` on `(L, L, L)`.
pub fn lambda3() -> Cochain {
    on(3, 3, prod(&[diff(1, 2), diff(1, 3), diff(2, 3)]))
}

/// `(x2 - x3)(x1 + x2 + x3)(-x1 + x2 + x3)` on `(L, M, M)`.
pub fn phi1_lmm() -> Cochain {
    on(3, 1, prod(&[diff(2, 3), sum(&[1, 2, 3]), &sum(&[2, 3]) - &x(1)]))
}

/// `x2^2 - x1^2` on `(M, M)`.
pub fn gamma_bar_mm() -> Cochain {
    on(2, 0, &x(2).pow(2) - &x(1).pow(2))
}

/// `(x1 - x2)(x1 + x2)(x3 - x4)(x3 + x4)` on `(L, L, M, M)`.
pub fn psi1() -> Cochain {
    on(4, 2, prod(&[diff(1, 2), sum(&[1, 2]), diff(3, 4), sum(&[3, 4])]))
}

/// `(x2 - x3)(3 x1^2 - (x2^2 + x3^2))` on `(L, M, M)`.
pub fn psi_bar_lmm() -> Cochain {
    let inner = &x(1).pow(2).scale(&rat(3)) - &(&x(2).pow(2) + &x(3).pow(2));
    on(3, 1, &diff(2, 3) * &inner)
}

/// `(x1 - x2)(x2 - x3)(x1 - x3)(x1 + x2 + x3)` on `(L, L, L, M)`.
pub fn psi2() -> Cochain {
    on(4, 3, prod(&[diff(1, 2), diff(2, 3), diff(1, 3), sum(&[1, 2, 3])]))
}

/// `(x1 - x2)(x3 - x4)(x3 - x5)(x4 - x5)(x3 + x4 + x5)` on `(L, L, M, M, M)`.
pub fn varphi1() -> Cochain {
    on(
        5,
        2,
        prod(&[diff(1, 2), diff(3, 4), diff(3, 5), diff(4, 5), sum(&[3, 4, 5])]),
    )
}

/// `(x1 - x2)(x1 - x3)(x2 - x3)(x4 - x5)(x4 + x5)` on `(L, L, L, M, M)`.
pub fn varphi2() -> Cochain {
    on(
        5,
        3,
        prod(&[diff(1, 2), diff(1, 3), diff(2, 3), diff(4, 5), sum(&[4, 5])]),
    )
}

/// `(x1 - x2)(x3 - x4)(x1 x2 - x3 x4)` on `(L, L, M, M)`.
pub fn varphi_bar_llmm() -> Cochain {
    on(
        4,
        2,
        prod(&[diff(1, 2), diff(3, 4), &(&x(1) * &x(2)) - &(&x(3) * &x(4))]),
    )
}

/// The product of both block Vandermonde polynomials on `(L, L, L, M, M, M)`.
pub fn big_lambda() -> Cochain {
    on(
        6,
        3,
        prod(&[diff(1, 2), diff(2, 3), diff(1, 3), diff(4, 5), diff(4, 6), diff(5, 6)]),
    )
}

/// `-x1^2 x2` on `(L, M)`.
pub fn chi_bar() -> Cochain {
    on(2, 1, -(&x(1).pow(2) * &x(2)))
}

/// `-x1^3 + x2^3` on `(L, L)`.
pub fn lambda3_bar() -> Cochain {
    on(2, 2, &x(2).pow(3) - &x(1).pow(3))
}

/// `-x1^4 - x1^3 x3 + x2^3 (x2 + x3)` on `(L, L, M)`.
pub fn psi_bar() -> Cochain {
    let p = &(&(-x(1).pow(4)) - &(&x(1).pow(3) * &x(3))) + &(&x(2).pow(3) * &sum(&[2, 3]));
    on(3, 2, p)
}

/// `(x2 - x3)(x2 - x4)(x3 - x4)(x2 + x3 + x4)^2` on `(L, M, M, M)`.
pub fn varphi_bar() -> Cochain {
    on(
        4,
        1,
        prod(&[diff(2, 3), diff(2, 4), diff(3, 4), sum(&[2, 3, 4]).pow(2)]),
    )
}

/// `x1 x2 (x1 - x2)(x3 - x4)(x3 - x5)(x4 - x5)` on `(L, L, M, M, M)`.
pub fn lambda_bar() -> Cochain {
    on(
        5,
        2,
        prod(&[x(1), x(2), diff(1, 2), diff(3, 4), diff(3, 5), diff(4, 5)]),
    )
}

/// The exact value of `tau(D Lambda)` before reduction modulo `D`:
/// `-(x1 - x2)(x3 - x4)(x3 - x5)(x4 - x5)(x1^2 + x1 x2 + x2^2 + (x1 + x2)(x3 + x4 + x5))`.
pub fn lambda_bar_unreduced() -> Cochain {
    let tail = &(&(&x(1).pow(2) + &(&x(1) * &x(2))) + &x(2).pow(2)) + &(&sum(&[1, 2]) * &sum(&[3, 4, 5]));
    on(5, 2, -prod(&[diff(1, 2), diff(3, 4), diff(3, 5), diff(4, 5), tail]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCheck {
    pub name: String,
    pub statement: String,
    pub pass: bool,
}

impl NamedCheck {
    fn new(name: &str, statement: impl Into<String>, pass: bool) -> Self {
        NamedCheck {
            name: name.into(),
            statement: statement.into(),
            pass,
        }
    }
}

fn basic_class(tc: &mut TrivialComplex, name: &str, c: &Cochain) -> Result<Vec<NamedCheck>, CohomologyError> {
    let closed = tc.complex().differential(c).is_zero();
    let exact = tc.coboundary_preimage(c)?.is_some();
    Ok(vec![
        NamedCheck::new(name, "d = 0", closed),
        NamedCheck::new(name, "not a coboundary", !exact),
    ])
}

fn reduced_class(tc: &mut TrivialComplex, name: &str, c: &Cochain) -> Result<Vec<NamedCheck>, CohomologyError> {
    let dc = tc.complex().differential(c);
    let closed = tc.is_partial_multiple(&dc)?;
    let exact = tc.reduced_coboundary_preimage(c)?.is_some();
    Ok(vec![
        NamedCheck::new(name, "d lies in D C", closed),
        NamedCheck::new(name, "not a coboundary modulo D", !exact),
    ])
}

fn relation(name: &str, statement: &str, lhs: &Cochain, rhs: &Cochain) -> NamedCheck {
    NamedCheck::new(name, statement, lhs == rhs)
}

/// Checks every named cocycle, coboundary relation and homotopy transfer.
pub fn verify_named_cocycles(alg: &ConformalAlgebra) -> Result<Vec<NamedCheck>, CohomologyError> {
    let mut tc = TrivialComplex::new(alg)?;
    let complex = Complex::trivial(alg);
    let d = |c: &Cochain| complex.differential(c);
    let tau_d = |c: &Cochain| complex.tau(&complex.partial(c), TauVariant::Basic);
    let mut out = Vec::new();

    for (name, c) in [
        ("chi", chi()),
        ("Lambda3", lambda3()),
        ("psi2", psi2()),
        ("varphi1", varphi1()),
        ("Lambda", big_lambda()),
    ] {
        out.extend(basic_class(&mut tc, name, &c)?);
    }

    out.push(relation(
        "phi1_LMM",
        "phi1_LMM = -d(gamma_bar_MM)",
        &phi1_lmm(),
        &d(&gamma_bar_mm()).neg(),
    ));
    out.push(NamedCheck::new("psi1", "d = 0", d(&psi1()).is_zero()));
    out.push(relation(
        "psi1",
        "4 psi1 = -d(psi_bar_LMM)",
        &psi1().scale(&rat(4)),
        &d(&psi_bar_lmm()).neg(),
    ));
    let psi1_pre = tc.coboundary_preimage(&psi1())?;
    out.push(NamedCheck::new("psi1", "is a coboundary", psi1_pre.is_some()));
    out.push(relation(
        "varphi2",
        "2 varphi2 = d(varphi_bar_LLMM)",
        &varphi2().scale(&rat(2)),
        &d(&varphi_bar_llmm()),
    ));
    let half = varphi_bar_llmm().scale(&frac(1, 2));
    out.push(relation(
        "varphi2",
        "varphi2 = d(varphi_bar_LLMM / 2)",
        &varphi2(),
        &d(&half),
    ));

    for (name, c) in [
        ("chi_bar", chi_bar()),
        ("Lambda3_bar", lambda3_bar()),
        ("psi_bar", psi_bar()),
        ("varphi_bar", varphi_bar()),
        ("Lambda_bar", lambda_bar()),
    ] {
        out.extend(reduced_class(&mut tc, name, &c)?);
    }

    out.push(relation("chi_bar", "chi_bar = tau(D chi)", &chi_bar(), &tau_d(&chi())));
    out.push(relation(
        "Lambda3_bar",
        "Lambda3_bar = tau(D Lambda3)",
        &lambda3_bar(),
        &tau_d(&lambda3()),
    ));
    out.push(relation(
        "psi_bar",
        "psi_bar = tau(D psi2)",
        &psi_bar(),
        &tau_d(&psi2()),
    ));
    out.push(relation(
        "varphi_bar",
        "varphi_bar = tau(D varphi1)",
        &varphi_bar(),
        &tau_d(&varphi1()),
    ));
    out.push(relation(
        "Lambda_bar",
        "tau(D Lambda) expands as printed",
        &lambda_bar_unreduced(),
        &tau_d(&big_lambda()),
    ));
    let gap = lambda_bar().sub(&lambda_bar_unreduced());
    out.push(NamedCheck::new(
        "Lambda_bar",
        "Lambda_bar = tau(D Lambda) modulo D C",
        tc.is_partial_multiple(&gap)?,
    ));

    // Each transfer maps a basic class onto its preimage under the connecting map.
    for (name, c) in [
        ("chi", chi()),
        ("Lambda3", lambda3()),
        ("psi2", psi2()),
        ("varphi1", varphi1()),
    ] {
        let t = tau_d(&c);
        out.push(relation(name, "d tau(D c) = D c", &d(&t), &complex.partial(&c)));
    }
    Ok(out)
}
