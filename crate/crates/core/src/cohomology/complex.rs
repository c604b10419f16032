use std::collections::BTreeMap;

use super::basis::shapes;
use super::Cochain;
use crate::algebra::{lam, ConformalAlgebra, ModuleSpec};
use crate::poly::{Polynomial, Variable};

/// Generator placed in the trailing slot by the homotopy operators. For
/// W(2,2) this is `L`, whose bracket with every generator `X` is `(D + 2x) X`.
pub const PIVOT: usize = 0;

/// Which homotopy operator to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TauVariant {
    /// `(-1)^(q-1) d/dy gamma(.., y)(.., L) at y = 0`, for trivial coefficients.
    Basic,
    /// `(-1)^(q-1) gamma(.., 0)(.., L)`, for `C_a`.
    EvalA,
    /// The same evaluation, for free rank-one modules.
    RankOne,
}

/// The basic cochain complex of an algebra with coefficients in a module.
#[derive(Clone, Debug)]
pub struct Complex<'a> {
    alg: &'a ConformalAlgebra,
    module: ModuleSpec,
}

impl<'a> Complex<'a> {
    pub fn new(alg: &'a ConformalAlgebra, module: ModuleSpec) -> Self {
        if let ModuleSpec::FreeRankOne { actions } = &module {
            assert_eq!(actions.len(), alg.rank(), "one action polynomial per generator");
        }
        Complex { alg, module }
    }

    pub fn trivial(alg: &'a ConformalAlgebra) -> Self {
        Self::new(alg, ModuleSpec::Trivial)
    }

    pub fn algebra(&self) -> &ConformalAlgebra {
        self.alg
    }

    pub fn module(&self) -> &ModuleSpec {
        &self.module
    }

    /// The differential:
    ///
    /// `(d g)(a_1..a_{q+1}) = sum_i (-1)^(i+1) a_i _{x_i} g(.., ^i, ..)
    ///   + sum_{i<j} (-1)^(i+j) g_{x_i + x_j, ..}([a_i _{x_i} a_j], .., ^i, ^j, ..)`,
    ///
    /// where `D` on a bracket output contributes `-(x_i + x_j)`.
    pub fn differential(&self, gamma: &Cochain) -> Cochain {
        let q = gamma.q();
        let lams: Vec<Polynomial> = (1..=q as u32 + 1)
            .map(|t| Polynomial::var(Variable::lambda(t)))
            .collect();
        let acts = self.module.has_generator_action();
        let mut comps = Vec::new();
        for shape in shapes(self.alg.rank(), q + 1) {
            let mut value = Polynomial::zero();
            if acts {
                for i in 0..=q {
                    let args: Vec<(usize, Polynomial)> = (0..=q)
                        .filter(|&t| t != i)
                        .map(|t| (shape[t], lams[t].clone()))
                        .collect();
                    let inner = gamma.evaluate(&args);
                    let term = self.module.act(shape[i], &inner, &lams[i]);
                    if i % 2 == 0 {
                        value += &term;
                    } else {
                        value -= &term;
                    }
                }
            }
            for i in 0..=q {
                for j in i + 1..=q {
                    let br = self.alg.bracket(shape[i], shape[j]).expect("valid generator indices");
                    if br.is_zero() {
                        continue;
                    }
                    let sum = &lams[i] + &lams[j];
                    let subst = BTreeMap::from([(Variable::Partial, -&sum), (lam(), lams[i].clone())]);
                    let rest = (0..=q)
                        .filter(|&t| t != i && t != j)
                        .map(|t| (shape[t], lams[t].clone()));
                    for (k, p) in br.coeffs().iter().enumerate() {
                        if p.is_zero() {
                            continue;
                        }
                        let mut args = vec![(k, sum.clone())];
                        args.extend(rest.clone());
                        let inner = gamma.evaluate(&args);
                        if inner.is_zero() {
                            continue;
                        }
                        let term = &p.substitute_all(&subst) * &inner;
                        if (i + j) % 2 == 0 {
                            value += &term;
                        } else {
                            value -= &term;
                        }
                    }
                }
            }
            comps.push((shape, value));
        }
        Cochain::from_components(q + 1, comps)
    }

    /// `(D g) = (D_V + x_1 + .. + x_q) g`.
    pub fn partial(&self, gamma: &Cochain) -> Cochain {
        let q = gamma.q();
        let factor = &self.module.partial_action() + &Polynomial::sum_of((1..=q as u32).map(Variable::lambda));
        gamma.map(|p| &factor * p)
    }

    /// The homotopy operator, lowering the cochain degree by one.
    pub fn tau(&self, gamma: &Cochain, variant: TauVariant) -> Cochain {
        let q = gamma.q();
        assert!(q >= 1, "tau needs a cochain of degree at least 1");
        let y = Variable::lambda(q as u32);
        let mut comps = Vec::new();
        for shape in shapes(self.alg.rank(), q - 1) {
            let mut args: Vec<(usize, Polynomial)> = shape
                .iter()
                .enumerate()
                .map(|(t, &g)| (g, Polynomial::var(Variable::lambda(t as u32 + 1))))
                .collect();
            args.push((PIVOT, Polynomial::var(y.clone())));
            let v = gamma.evaluate(&args);
            let v = match variant {
                TauVariant::Basic => v.derivative(&y).at_zero(&y),
                TauVariant::EvalA | TauVariant::RankOne => v.at_zero(&y),
            };
            comps.push((shape, if q % 2 == 1 { v } else { -v }));
        }
        Cochain::from_components(q - 1, comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Variable::lambda(i))
    }

    #[test]
    fn zero_cochains_are_closed_over_trivial_coefficients() {
        let w = ConformalAlgebra::w22();
        let c = Complex::trivial(&w);
        let g = Cochain::single(vec![], Polynomial::int(5));
        assert!(c.differential(&g).is_zero());
    }

    #[test]
    fn zero_cochain_over_rank_one_module() {
        // (d v)_x(L) = L_x v = (D + alpha + delta x) v.
        let w = ConformalAlgebra::w22();
        let c = Complex::new(&w, ModuleSpec::virasoro_family_formal());
        let d = c.differential(&Cochain::single(vec![], Polynomial::one()));
        let ModuleSpec::FreeRankOne { actions } = ModuleSpec::virasoro_family_formal() else {
            unreachable!()
        };
        assert_eq!(d.component(&[0]), actions[0].substitute(&lam(), &x(1)));
        assert!(d.component(&[1]).is_zero());
    }

    #[test]
    fn one_cochain_differential_matches_hand_expansion() {
        // (d g)(L, X) = -g_{x1+x2}([L _x1 X]) = -(x1 - x2) g_{x1+x2}(X) for g(X) = x^2.
        let w = ConformalAlgebra::w22();
        let c = Complex::trivial(&w);
        let g = Cochain::single(vec![1], x(1).pow(2));
        let d = c.differential(&g);
        assert_eq!(d.component(&[0, 1]), -(&(&x(1) - &x(2)) * &(&x(1) + &x(2)).pow(2)));
        assert!(d.component(&[0, 0]).is_zero() && d.component(&[1, 1]).is_zero());
    }

    #[test]
    fn tau_of_one_cochain_vanishing_on_l() {
        let w = ConformalAlgebra::w22();
        let c = Complex::trivial(&w);
        let g = Cochain::single(vec![1], x(1).pow(3).scale(&rat(7)));
        for v in [TauVariant::Basic, TauVariant::EvalA] {
            assert!(c.tau(&g, v).is_zero());
        }
    }
}
