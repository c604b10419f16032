//! Free rank-one modules over W(2,2).
//!
//! The `L`-action is taken from the Virasoro classification,
//! `L_x v = (D + alpha + delta x) v`, and only the `M`-action `g(D, x)` is
//! solved for. The `[L, M]` compatibility identity is linear in `g` and is
//! solved first; the `[M, M]` identity is quadratic and is only used as a
//! filter afterwards, through its consequence that `g` cannot involve `D`.

use num::{One, Zero};

use crate::algebra::{
    check_module_axioms, commutator_residual, lam, ConformalAlgebra, ModuleSpec, PARAM_ALPHA, PARAM_DELTA,
};
use crate::linsys::{combine, identity_matrix};
use crate::poly::{frac, rat, ExactMatrix, Monomial, Polynomial, Rational, Variable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneAction {
    pub f: Polynomial,
    pub g: Polynomial,
}

impl RankOneAction {
    pub fn module(&self) -> ModuleSpec {
        ModuleSpec::FreeRankOne {
            actions: vec![self.f.clone(), self.g.clone()],
        }
    }
}

/// `D + alpha + delta x`.
pub fn virasoro_action(delta: &Polynomial, alpha: &Polynomial) -> Polynomial {
    let ModuleSpec::FreeRankOne { actions } = ModuleSpec::virasoro_family(delta.clone(), alpha.clone()) else {
        unreachable!()
    };
    actions[0].clone()
}

/// `g(D, x) g(D + x, y) - g(D, y) g(D + y, x)`, the residual of `M_x M_y v = M_y M_x v`.
pub fn mm_residual(g: &Polynomial) -> Polynomial {
    let w = ConformalAlgebra::w22();
    let v = RankOneAction {
        f: Polynomial::zero(),
        g: g.clone(),
    }
    .module();
    commutator_residual(&w, &v, 1, 1)
}

/// Residuals of the `(L, M)` and `(M, L)` identities for the given actions.
pub fn lm_residuals(f: &Polynomial, g: &Polynomial) -> [Polynomial; 2] {
    let w = ConformalAlgebra::w22();
    let v = RankOneAction {
        f: f.clone(),
        g: g.clone(),
    }
    .module();
    [commutator_residual(&w, &v, 0, 1), commutator_residual(&w, &v, 1, 0)]
}

#[derive(Clone, Debug)]
pub struct MActionSolution {
    pub degree_bound: u32,
    /// Dimension of the solution space of the linear `(L, M)` system alone.
    pub linear_dim: usize,
    /// Admissible `g` after the `(M, M)` filter.
    pub basis: Vec<Polynomial>,
    /// Steps in the order they were applied.
    pub notes: Vec<String>,
}

fn candidate_monomials(n: u32, allow_partial: bool) -> Vec<Monomial> {
    let mut out = Vec::new();
    for total in 0..=n {
        for p in (0..=total).rev() {
            if p > 0 && !allow_partial {
                continue;
            }
            out.push(Monomial::from_pairs([(Variable::Partial, p), (lam(), total - p)]));
        }
    }
    out
}

/// Solves for the `M`-action `g` of total degree `<= n` given `f = D + alpha + delta x`.
///
/// `delta` and `alpha` may be rational constants or formal symbols; with
/// formal symbols the identities must hold for every value of them.
pub fn solve_m_action(delta: &Polynomial, alpha: &Polynomial, n: u32) -> MActionSolution {
    let f = virasoro_action(delta, alpha);
    let monomials = candidate_monomials(n, true);
    let candidates: Vec<Polynomial> = monomials
        .iter()
        .map(|m| Polynomial::term(Rational::one(), m.clone()))
        .collect();
    let residuals: Vec<Vec<Polynomial>> = candidates.iter().map(|g| lm_residuals(&f, g).to_vec()).collect();
    let kernel = identity_matrix(&residuals).kernel_basis();
    let linear_dim = kernel.len();
    let mut notes = vec![format!(
        "solved the linear (L,M) identity over {} monomials D^p x^q with p+q <= {n}: dimension {linear_dim}",
        monomials.len()
    )];

    // The (M, M) identity forces deg_D g = 0: restrict the kernel to D-free combinations.
    let partial_rows: Vec<usize> = monomials
        .iter()
        .enumerate()
        .filter(|(_, m)| m.exponent(&Variable::Partial) > 0)
        .map(|(k, _)| k)
        .collect();
    let restricted = if kernel.is_empty() {
        Vec::new()
    } else {
        let mut m = ExactMatrix::zeros(partial_rows.len(), kernel.len());
        for (r, &k) in partial_rows.iter().enumerate() {
            for (c, v) in kernel.iter().enumerate() {
                m.set(r, c, v[k].clone());
            }
        }
        m.kernel_basis()
            .into_iter()
            .map(|w| {
                let mut v = vec![Rational::zero(); monomials.len()];
                for (c, kv) in w.iter().zip(&kernel) {
                    for (a, b) in v.iter_mut().zip(kv) {
                        *a += c * b;
                    }
                }
                combine(&v, &candidates)
            })
            .collect()
    };
    notes.push(format!(
        "(M,M) filter: kept D-free solutions, dimension {}",
        restricted.len()
    ));
    let basis: Vec<Polynomial> = restricted.into_iter().filter(|g| mm_residual(g).is_zero()).collect();
    notes.push(format!(
        "(M,M) identity checked directly on the survivors: {} remain",
        basis.len()
    ));
    MActionSolution {
        degree_bound: n,
        linear_dim,
        basis,
        notes,
    }
}

/// D-free candidates of degree `<= n` satisfying the `(M, M)` identity alone.
pub fn solve_m_action_relaxed(n: u32) -> Vec<Polynomial> {
    candidate_monomials(n, false)
        .into_iter()
        .map(|m| Polynomial::term(Rational::one(), m))
        .filter(|g| mm_residual(g).is_zero())
        .collect()
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub degree_bound: u32,
    /// `M_{delta,alpha}` with formal parameters passes the module axioms.
    pub family_is_module: bool,
    /// `solve_m_action` with formal parameters returns the zero space.
    pub formal_zero: bool,
    /// `(delta, alpha, dim)` for each rational sample.
    pub grid: Vec<(Rational, Rational, usize)>,
    pub checked: bool,
}

/// The rational sample grid: five values of `delta` (including 0) by five values of `alpha`.
pub fn sample_grid() -> Vec<(Rational, Rational)> {
    let deltas = [rat(0), rat(1), rat(-1), frac(1, 2), rat(2)];
    let alphas = [rat(0), rat(1), rat(-2), frac(1, 3), rat(3)];
    deltas
        .iter()
        .flat_map(|d| alphas.iter().map(move |a| (d.clone(), a.clone())))
        .collect()
}

pub fn classify_rank_one(n: u32) -> ClassificationReport {
    let w = ConformalAlgebra::w22();
    let family_is_module = check_module_axioms(&w, &ModuleSpec::virasoro_family_formal()).ok;
    let delta = Polynomial::var(Variable::named(PARAM_DELTA));
    let alpha = Polynomial::var(Variable::named(PARAM_ALPHA));
    let formal_zero = solve_m_action(&delta, &alpha, n).basis.is_empty();
    let grid: Vec<(Rational, Rational, usize)> = {
        use rayon::prelude::*;
        sample_grid()
            .into_par_iter()
            .map(|(d, a)| {
                let dim = solve_m_action(&Polynomial::constant(d.clone()), &Polynomial::constant(a.clone()), n)
                    .basis
                    .len();
                (d, a, dim)
            })
            .collect()
    };
    let checked = family_is_module && formal_zero && grid.iter().all(|(_, _, dim)| *dim == 0);
    ClassificationReport {
        degree_bound: n,
        family_is_module,
        formal_zero,
        grid,
        checked,
    }
}
