//! Conformal derivations up to a degree bound, and the inner ones among them.
//!
//! A conformal linear map is stored through the images of the generators:
//! `d_x(g_i) = sum_j entries[j][i](D, x) g_j`. Its value on `p(D) g_i` is
//! `p(D + x) d_x(g_i)`, so nothing else needs storing.

use num::{One, Zero};

use crate::algebra::{lam, mu, partial, ConformalAlgebra, Element};
use crate::linsys::identity_matrix;
use crate::poly::{Echelon, Monomial, Polynomial, Rational, Variable};

/// Default joint degree bound in `(D, x)`.
pub const DEFAULT_DEGREE_BOUND: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalLinearMap {
    entries: Vec<Vec<Polynomial>>,
}

impl ConformalLinearMap {
    pub fn zero(rank: usize) -> Self {
        ConformalLinearMap {
            entries: vec![vec![Polynomial::zero(); rank]; rank],
        }
    }

    /// `entries[j][i]` is the coefficient of `g_j` in `d_x(g_i)`.
    pub fn from_entries(entries: Vec<Vec<Polynomial>>) -> Self {
        let r = entries.len();
        assert!(entries.iter().all(|row| row.len() == r), "square entry matrix");
        ConformalLinearMap { entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, j: usize, i: usize) -> &Polynomial {
        &self.entries[j][i]
    }

    pub fn image(&self, i: usize) -> Element {
        Element::from_coeffs((0..self.rank()).map(|j| self.entries[j][i].clone()).collect())
    }

    /// `d_x(a)` for an arbitrary element, using `d_x(D a) = (D + x) d_x(a)`.
    pub fn apply(&self, a: &Element) -> Element {
        let shifted = &partial() + &Polynomial::var(lam());
        let mut out = Element::zero(self.rank());
        for (k, p) in a.coeffs().iter().enumerate() {
            if !p.is_zero() {
                out.add_scaled(&p.substitute(&Variable::Partial, &shifted), &self.image(k));
            }
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.entries.iter().flatten().filter_map(Polynomial::degree).max()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }
}

/// `ad(a)`: `b -> [a x b]`.
pub fn inner_derivation(alg: &ConformalAlgebra, a: &Element) -> ConformalLinearMap {
    let r = alg.rank();
    let x = Polynomial::var(lam());
    let mut entries = vec![vec![Polynomial::zero(); r]; r];
    for i in 0..r {
        let img = alg.bracket_elements(a, &Element::generator(r, i), &x);
        for (j, row) in entries.iter_mut().enumerate() {
            row[i] = img.coeff(j).clone();
        }
    }
    ConformalLinearMap { entries }
}

/// Residual of the Leibniz rule on the generator pair `(a, b)`:
/// `d_x [a y b] - [(d_x a)_{x+y} b] - [a y (d_x b)]`.
pub fn leibniz_residual(alg: &ConformalAlgebra, d: &ConformalLinearMap, a: usize, b: usize) -> Element {
    let r = alg.rank();
    let (x, y) = (Polynomial::var(lam()), Polynomial::var(mu()));
    let lhs = d.apply(&alg.bracket_at(a, b, &y));
    let first = alg.bracket_elements(&d.image(a), &Element::generator(r, b), &(&x + &y));
    let second = alg.bracket_elements(&Element::generator(r, a), &d.image(b), &y);
    lhs.sub(&first).sub(&second)
}

pub fn is_derivation(alg: &ConformalAlgebra, d: &ConformalLinearMap) -> bool {
    let r = alg.rank();
    (0..r).all(|a| (0..r).all(|b| leibniz_residual(alg, d, a, b).is_zero()))
}

/// Unknown layout for maps of bounded degree: `(j, i, D^p x^q)` with `p + q <= n`.
struct MapCoordinates {
    rank: usize,
    monomials: Vec<Monomial>,
}

impl MapCoordinates {
    fn new(rank: usize, n: u32) -> Self {
        let mut monomials = Vec::new();
        for total in 0..=n {
            for p in (0..=total).rev() {
                monomials.push(Monomial::from_pairs([(Variable::Partial, p), (lam(), total - p)]));
            }
        }
        MapCoordinates { rank, monomials }
    }

    fn len(&self) -> usize {
        self.rank * self.rank * self.monomials.len()
    }

    fn unit(&self, u: usize) -> ConformalLinearMap {
        let per_entry = self.monomials.len();
        let (entry, m) = (u / per_entry, u % per_entry);
        let (j, i) = (entry / self.rank, entry % self.rank);
        let mut d = ConformalLinearMap::zero(self.rank);
        d.entries[j][i] = Polynomial::term(Rational::one(), self.monomials[m].clone());
        d
    }

    fn map_at(&self, v: &[Rational]) -> ConformalLinearMap {
        let mut d = ConformalLinearMap::zero(self.rank);
        for (u, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let per_entry = self.monomials.len();
            let (entry, m) = (u / per_entry, u % per_entry);
            let (j, i) = (entry / self.rank, entry % self.rank);
            d.entries[j][i].add_term(self.monomials[m].clone(), c.clone());
        }
        d
    }

    /// `None` if some entry leaves the bounded monomial set.
    fn to_vector(&self, d: &ConformalLinearMap) -> Option<Vec<Rational>> {
        let per_entry = self.monomials.len();
        let mut v = vec![Rational::zero(); self.len()];
        for j in 0..self.rank {
            for i in 0..self.rank {
                for (m, c) in d.entries[j][i].terms() {
                    let k = self.monomials.iter().position(|n| n == m)?;
                    v[(j * self.rank + i) * per_entry + k] = c.clone();
                }
            }
        }
        Some(v)
    }
}

/// A basis of all conformal derivations whose entries have degree `<= n` in `(D, x)`.
pub fn solve_derivations(alg: &ConformalAlgebra, n: u32) -> Vec<ConformalLinearMap> {
    let coords = MapCoordinates::new(alg.rank(), n);
    let r = alg.rank();
    let residuals: Vec<Vec<Polynomial>> = (0..coords.len())
        .map(|u| {
            let d = coords.unit(u);
            let mut comps = Vec::with_capacity(r * r * r);
            for a in 0..r {
                for b in 0..r {
                    comps.extend(leibniz_residual(alg, &d, a, b).coeffs().iter().cloned());
                }
            }
            comps
        })
        .collect();
    identity_matrix(&residuals)
        .kernel_basis()
        .iter()
        .map(|v| coords.map_at(v))
        .collect()
}

/// A basis of the span of `ad(D^m g_k)` over all generators and all `m` whose
/// entries stay within degree `n`.
pub fn inner_subspace(alg: &ConformalAlgebra, n: u32) -> Vec<ConformalLinearMap> {
    let coords = MapCoordinates::new(alg.rank(), n);
    let mut span = Echelon::new(coords.len());
    let mut basis = Vec::new();
    for k in 0..alg.rank() {
        // ad(D^m g) = (-x)^m ad(g), so degrees grow with m; stop once out of range.
        for m in 0..=n {
            let mut a = Element::zero(alg.rank());
            let mut coeffs = a.coeffs().to_vec();
            coeffs[k] = partial().pow(m);
            a = Element::from_coeffs(coeffs);
            let d = inner_derivation(alg, &a);
            if d.is_zero() {
                break;
            }
            let Some(v) = coords.to_vector(&d) else { break };
            if span.insert(&v) {
                basis.push(d);
            }
        }
    }
    basis
}

#[derive(Clone, Debug)]
pub struct DerivationReport {
    pub degree_bound: u32,
    pub derivations: Vec<ConformalLinearMap>,
    pub inner: Vec<ConformalLinearMap>,
    /// Whether every inner map was found inside the derivation span.
    pub inner_contained: bool,
    pub outer_dim: usize,
}

pub fn derivation_report(alg: &ConformalAlgebra, n: u32) -> DerivationReport {
    let coords = MapCoordinates::new(alg.rank(), n);
    let derivations = solve_derivations(alg, n);
    let inner = inner_subspace(alg, n);
    let mut span = Echelon::new(coords.len());
    for d in &derivations {
        span.insert(&coords.to_vector(d).expect("solver output is bounded"));
    }
    let der_rank = span.rank();
    let mut inner_rank = 0;
    let mut inner_contained = true;
    let mut inner_span = Echelon::new(coords.len());
    for d in &inner {
        let v = coords.to_vector(d).expect("inner basis is bounded");
        inner_contained &= span.contains(&v);
        if inner_span.insert(&v) {
            inner_rank += 1;
        }
    }
    DerivationReport {
        degree_bound: n,
        outer_dim: der_rank.saturating_sub(inner_rank),
        derivations,
        inner,
        inner_contained,
    }
}

/// `dim(derivations) - dim(inner)` within degree bound `n`.
pub fn outer_dim(alg: &ConformalAlgebra, n: u32) -> usize {
    derivation_report(alg, n).outer_dim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn weight_two() -> Polynomial {
        &partial() + &Polynomial::var(lam()).scale(&rat(2))
    }

    #[test]
    fn ad_l_and_ad_m_on_w22() {
        let w = ConformalAlgebra::w22();
        let ad_l = inner_derivation(&w, &Element::generator(2, 0));
        assert_eq!(ad_l.entry(0, 0), &weight_two());
        assert_eq!(ad_l.entry(1, 1), &weight_two());
        assert!(ad_l.entry(1, 0).is_zero() && ad_l.entry(0, 1).is_zero());
        let ad_m = inner_derivation(&w, &Element::generator(2, 1));
        assert_eq!(ad_m.entry(1, 0), &weight_two());
        assert!(ad_m.image(1).is_zero());
        assert!(is_derivation(&w, &ad_l) && is_derivation(&w, &ad_m));
    }

    #[test]
    fn solver_contains_adjoints() {
        let w = ConformalAlgebra::w22();
        let report = derivation_report(&w, 2);
        assert!(report.inner_contained);
        assert!(report.derivations.iter().all(|d| is_derivation(&w, d)));
    }

    #[test]
    fn abelian_counts() {
        let a = ConformalAlgebra::abelian(1);
        assert_eq!(solve_derivations(&a, 1).len(), 3);
        assert!(inner_subspace(&a, 3).is_empty());
        assert_eq!(outer_dim(&a, 0), 1);
    }

    #[test]
    fn non_derivation_is_rejected() {
        let w = ConformalAlgebra::w22();
        let mut id = ConformalLinearMap::zero(2);
        id.entries[0][0] = Polynomial::one();
        assert!(!is_derivation(&w, &id));
    }
}
