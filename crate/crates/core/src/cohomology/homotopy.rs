use super::basis::GradedPiece;
use super::tables::variable_sum;
use super::{Cochain, Complex, TauVariant};
use crate::algebra::{ConformalAlgebra, ModuleSpec, PARAM_ALPHA};
use crate::poly::{rat, Polynomial, Variable};

#[derive(Clone, Debug)]
pub struct HomotopyWitness {
    pub cochain: Cochain,
    /// `(d tau + tau d) gamma - expected`.
    pub residual: Cochain,
}

#[derive(Clone, Debug)]
pub struct HomotopyReport {
    pub variant: TauVariant,
    pub q: usize,
    pub n: u32,
    pub checked: usize,
    pub ok: bool,
    pub witnesses: Vec<HomotopyWitness>,
    /// What the identity implies and under which assumption.
    pub note: &'static str,
}

/// The coefficient module each variant works over, with formal parameters.
pub fn homotopy_module(variant: TauVariant) -> ModuleSpec {
    match variant {
        TauVariant::Basic => ModuleSpec::Trivial,
        TauVariant::EvalA => ModuleSpec::eval_formal(),
        TauVariant::RankOne => ModuleSpec::virasoro_family_formal(),
    }
}

/// The right-hand side of the homotopy identity for `gamma` of polynomial degree `n`.
fn expected(variant: TauVariant, gamma: &Cochain, n: u32) -> Cochain {
    let q = gamma.q();
    match variant {
        TauVariant::Basic => gamma.scale(&(rat(n as i64) - rat(q as i64))),
        TauVariant::EvalA => {
            let s = variable_sum(q);
            gamma.map(|p| &s * p)
        }
        TauVariant::RankOne => {
            let f = &(&Polynomial::var(Variable::Partial) + &Polynomial::var(Variable::named(PARAM_ALPHA)))
                + &variable_sum(q);
            gamma.map(|p| &f * p)
        }
    }
}

/// Basis cochains of total degree `n` for the variant. Rank-one cochains
/// carry a power of `D` on top of a block-skew polynomial.
pub fn homotopy_basis(alg: &ConformalAlgebra, variant: TauVariant, q: usize, n: u32) -> Vec<Cochain> {
    match variant {
        TauVariant::Basic | TauVariant::EvalA => {
            let piece = GradedPiece::new(alg.rank(), q, n);
            (0..piece.dim()).map(|u| piece.basis_cochain(u)).collect()
        }
        TauVariant::RankOne => {
            let d = Polynomial::var(Variable::Partial);
            (0..=n)
                .flat_map(|m| {
                    let piece = GradedPiece::new(alg.rank(), q, n - m);
                    let dm = d.pow(m);
                    (0..piece.dim())
                        .map(|u| piece.basis_cochain(u).map(|p| &dm * p))
                        .collect::<Vec<_>>()
                })
                .collect()
        }
    }
}

/// Checks `(d tau + tau d) gamma` against its predicted value on every basis cochain:
/// `(n - q) gamma` for trivial coefficients, `(x_1 + .. + x_q) gamma` for `C_a`, and
/// `(D + alpha + x_1 + .. + x_q) gamma` for `M_{delta,alpha}`.
pub fn check_homotopy(alg: &ConformalAlgebra, q: usize, n: u32, variant: TauVariant) -> HomotopyReport {
    assert!(q >= 1, "homotopy identities start at q = 1");
    let complex = Complex::new(alg, homotopy_module(variant));
    let basis = homotopy_basis(alg, variant, q, n);
    let mut witnesses = Vec::new();
    for gamma in &basis {
        let lhs = complex
            .differential(&complex.tau(gamma, variant))
            .add(&complex.tau(&complex.differential(gamma), variant));
        let residual = lhs.sub(&expected(variant, gamma, n));
        if !residual.is_zero() {
            witnesses.push(HomotopyWitness {
                cochain: gamma.clone(),
                residual,
            });
        }
    }
    let note = match variant {
        TauVariant::Basic => "only cocycles of polynomial degree q survive in basic cohomology",
        TauVariant::EvalA => "gamma = -a gamma modulo D, so reduced cohomology vanishes when a != 0",
        TauVariant::RankOne => "gamma = alpha gamma modulo D, so reduced cohomology vanishes when alpha != 0",
    };
    HomotopyReport {
        variant,
        q,
        n,
        checked: basis.len(),
        ok: witnesses.is_empty(),
        witnesses,
        note,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_identities() {
        let w = ConformalAlgebra::w22();
        let r = check_homotopy(&w, 3, 3, TauVariant::Basic);
        assert!(r.ok && r.checked > 0);
        let r = check_homotopy(&w, 2, 4, TauVariant::Basic);
        assert!(r.ok && r.checked > 0);
    }

    #[test]
    fn rank_one_degree_one() {
        let w = ConformalAlgebra::w22();
        for n in 0..=3 {
            let r = check_homotopy(&w, 1, n, TauVariant::RankOne);
            assert!(r.ok, "n = {n}: {:?}", r.witnesses.first().map(|w| w.residual.clone()));
        }
    }

    #[test]
    fn eval_identity() {
        let w = ConformalAlgebra::w22();
        let r = check_homotopy(&w, 2, 3, TauVariant::EvalA);
        assert!(r.ok);
    }
}
