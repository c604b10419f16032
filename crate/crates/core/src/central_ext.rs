//! Central extensions by a one-dimensional center `C c` with `D c = 0`.
//!
//! A 2-cocycle is stored on ordered generator pairs `i <= j` as a polynomial
//! in the bracket variable `x`. Because `D` kills the center, skew-symmetry
//! reads `f_x(b, a) = -f_{-x}(a, b)`, and sesquilinearity gives
//! `f_x(D a, b) = -x f_x(a, b)` and `f_x(a, D b) = x f_x(a, b)`.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::algebra::{lam, mu, ConformalAlgebra, Element};
use crate::linsys::identity_matrix;
use crate::poly::{Echelon, Monomial, Polynomial, Rational, Variable};

pub const DEFAULT_DEGREE_BOUND: u32 = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoCocycle {
    values: BTreeMap<(usize, usize), Polynomial>,
}

impl TwoCocycle {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Sets the value on the pair `(i, j)`, `i <= j`.
    pub fn with(mut self, i: usize, j: usize, p: Polynomial) -> Self {
        assert!(i <= j, "2-cocycles are stored on ordered pairs");
        if p.is_zero() {
            self.values.remove(&(i, j));
        } else {
            self.values.insert((i, j), p);
        }
        self
    }

    /// `f_x(g_i, g_j)` for any ordered or unordered pair.
    pub fn value(&self, i: usize, j: usize) -> Polynomial {
        if i <= j {
            self.values.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            let stored = self.value(j, i);
            -stored.substitute(&lam(), &-Polynomial::var(lam()))
        }
    }

    pub fn stored(&self) -> &BTreeMap<(usize, usize), Polynomial> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `f_s(a, b)` for elements with `C[D]` coefficients.
    pub fn evaluate(&self, a: &Element, b: &Element, s: &Polynomial) -> Polynomial {
        let d = Variable::Partial;
        let minus_s = -s;
        let mut out = Polynomial::zero();
        for (k, p) in a.coeffs().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let left = p.substitute(&d, &minus_s);
            for (l, q) in b.coeffs().iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let f = self.value(k, l);
                if f.is_zero() {
                    continue;
                }
                let right = q.substitute(&d, s);
                out += &(&(&left * &right) * &f.substitute(&lam(), s));
            }
        }
        out
    }
}

/// Residual of the cocycle identity on `(a, b, c)`:
/// `f_{x+y}([a x b], c) - f_x(a, [b y c]) + f_y(b, [a x c])`.
pub fn cocycle_residual(alg: &ConformalAlgebra, f: &TwoCocycle, a: usize, b: usize, c: usize) -> Polynomial {
    let r = alg.rank();
    let (x, y) = (Polynomial::var(lam()), Polynomial::var(mu()));
    let (ga, gb, gc) = (
        Element::generator(r, a),
        Element::generator(r, b),
        Element::generator(r, c),
    );
    let first = f.evaluate(&alg.bracket_at(a, b, &x), &gc, &(&x + &y));
    let second = f.evaluate(&ga, &alg.bracket_at(b, c, &y), &x);
    let third = f.evaluate(&gb, &alg.bracket_at(a, c, &x), &y);
    &(&first - &second) + &third
}

/// Residual of skew-symmetry on a pair: `f_x(a, b) + f_{-x}(b, a)` using stored values only.
fn skew_residual(f: &TwoCocycle, i: usize) -> Polynomial {
    let v = f.value(i, i);
    &v + &v.substitute(&lam(), &-Polynomial::var(lam()))
}

pub fn is_cocycle(alg: &ConformalAlgebra, f: &TwoCocycle) -> bool {
    let r = alg.rank();
    (0..r).all(|i| skew_residual(f, i).is_zero())
        && (0..r).all(|a| (0..r).all(|b| (0..r).all(|c| cocycle_residual(alg, f, a, b, c).is_zero())))
}

/// Unknown layout: each pair `i <= j` carries `x^e` for `e <= n`, odd `e` only on the diagonal.
struct CocycleCoordinates {
    slots: Vec<(usize, usize, u32)>,
}

impl CocycleCoordinates {
    fn new(rank: usize, n: u32) -> Self {
        let mut slots = Vec::new();
        for i in 0..rank {
            for j in i..rank {
                for e in 0..=n {
                    if i != j || e % 2 == 1 {
                        slots.push((i, j, e));
                    }
                }
            }
        }
        CocycleCoordinates { slots }
    }

    fn len(&self) -> usize {
        self.slots.len()
    }

    fn cocycle_at(&self, v: &[Rational]) -> TwoCocycle {
        let mut values: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();
        for (&(i, j, e), c) in self.slots.iter().zip(v) {
            values
                .entry((i, j))
                .or_default()
                .add_term(Monomial::var(lam(), e), c.clone());
        }
        values.retain(|_, p| !p.is_zero());
        TwoCocycle { values }
    }

    fn to_vector(&self, f: &TwoCocycle) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.len()];
        for (&(i, j), p) in &f.values {
            for (m, c) in p.terms() {
                let e = m.exponent(&lam());
                if m.degree() != e {
                    return None;
                }
                let k = self.slots.iter().position(|s| *s == (i, j, e))?;
                v[k] = c.clone();
            }
        }
        Some(v)
    }
}

/// A basis of all 2-cocycles with values of degree `<= n`.
pub fn solve_2cocycles(alg: &ConformalAlgebra, n: u32) -> Vec<TwoCocycle> {
    let r = alg.rank();
    let coords = CocycleCoordinates::new(r, n);
    let residuals: Vec<Vec<Polynomial>> = (0..coords.len())
        .map(|u| {
            let mut unit = vec![Rational::zero(); coords.len()];
            unit[u] = Rational::one();
            let f = coords.cocycle_at(&unit);
            let mut comps = Vec::with_capacity(r * r * r);
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        comps.push(cocycle_residual(alg, &f, a, b, c));
                    }
                }
            }
            comps
        })
        .collect();
    identity_matrix(&residuals)
        .kernel_basis()
        .iter()
        .map(|v| coords.cocycle_at(v))
        .collect()
}

/// `psi_phi(a, b) = phi([a x b])` with `phi(D u) = 0`, for `phi` dual to each generator.
pub fn trivial_cocycle(alg: &ConformalAlgebra, weights: &[Rational]) -> TwoCocycle {
    let r = alg.rank();
    let mut f = TwoCocycle::zero();
    for i in 0..r {
        for j in i..r {
            let br = alg.bracket(i, j).unwrap();
            let mut v = Polynomial::zero();
            for (k, p) in br.coeffs().iter().enumerate() {
                v.add_scaled(&weights[k], &p.at_zero(&Variable::Partial));
            }
            f = f.with(i, j, v);
        }
    }
    f
}

/// A basis of the trivial 2-cocycles.
pub fn trivial_2cocycles(alg: &ConformalAlgebra) -> Vec<TwoCocycle> {
    let r = alg.rank();
    let n = alg
        .stored()
        .values()
        .flat_map(|e| e.coeffs().iter().filter_map(Polynomial::degree))
        .max()
        .unwrap_or(0);
    let coords = CocycleCoordinates::new(r, n);
    let mut span = Echelon::new(coords.len());
    let mut out = Vec::new();
    for k in 0..r {
        let mut w = vec![Rational::zero(); r];
        w[k] = Rational::one();
        let f = trivial_cocycle(alg, &w);
        let v = coords
            .to_vector(&f)
            .expect("trivial cocycles are bounded by bracket degree");
        if span.insert(&v) {
            out.push(f);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ExtensionResult {
    pub degree_bound: u32,
    pub cocycle_basis: Vec<TwoCocycle>,
    pub trivial_basis: Vec<TwoCocycle>,
    pub h2_dim: usize,
    /// Cocycles reduced modulo the trivial ones, in reduced echelon form.
    pub representatives: Vec<TwoCocycle>,
    /// Whether every trivial cocycle lies in the solved cocycle span.
    pub trivial_contained: bool,
}

pub fn h2(alg: &ConformalAlgebra, n: u32) -> ExtensionResult {
    let r = alg.rank();
    let cocycle_basis = solve_2cocycles(alg, n);
    let trivial_basis = trivial_2cocycles(alg);
    let coords = CocycleCoordinates::new(r, n);
    let mut cocycles = Echelon::new(coords.len());
    for f in &cocycle_basis {
        cocycles.insert(&coords.to_vector(f).unwrap());
    }
    let mut trivial = Echelon::new(coords.len());
    let mut trivial_contained = true;
    for f in &trivial_basis {
        // Trivial cocycles of degree above n simply fall outside the bounded space.
        match coords.to_vector(f) {
            Some(v) => {
                trivial_contained &= cocycles.contains(&v);
                trivial.insert(&v);
            }
            None => trivial_contained = false,
        }
    }
    let mut quotient = Echelon::new(coords.len());
    for v in cocycles.rows() {
        quotient.insert(&trivial.reduce(v));
    }
    let representatives = quotient.rows().map(|v| coords.cocycle_at(v)).collect();
    ExtensionResult {
        degree_bound: n,
        h2_dim: cocycles.rank() - trivial.rank(),
        cocycle_basis,
        trivial_basis,
        representatives,
        trivial_contained,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn x() -> Polynomial {
        Polynomial::var(lam())
    }

    #[test]
    fn lll_identity_matches_hand_expansion() {
        // For a_x(L, L) = sum c_e x^e the (L, L, L) identity should read
        // (x + 2y) a_x - (y + 2x) a_y = (x - y) a_{x+y}, up to an overall sign.
        let w = ConformalAlgebra::virasoro();
        let y = Polynomial::var(mu());
        for e in 0..6u32 {
            let a = x().pow(e);
            let f = TwoCocycle::zero().with(0, 0, a.clone());
            let res = cocycle_residual(&w, &f, 0, 0, 0);
            let ay = a.substitute(&lam(), &y);
            let axy = a.substitute(&lam(), &(&x() + &y));
            let hand =
                &(&(&(&x() + &y.scale(&rat(2))) * &a) - &(&(&y + &x().scale(&rat(2))) * &ay)) - &(&(&x() - &y) * &axy);
            assert!(res == hand || res == -&hand, "e = {e}: {res} vs {hand}");
        }
    }

    #[test]
    fn w22_degree_three() {
        let w = ConformalAlgebra::w22();
        let basis = solve_2cocycles(&w, 3);
        assert_eq!(basis.len(), 4);
        for f in &basis {
            assert!(is_cocycle(&w, f));
            assert!(f.value(1, 1).is_zero());
            for (m, _) in f.value(0, 0).terms() {
                assert!([1, 3].contains(&m.degree()));
            }
        }
    }

    #[test]
    fn abelian_odd_only() {
        let a = ConformalAlgebra::abelian(1);
        let basis = solve_2cocycles(&a, 2);
        assert_eq!(basis, vec![TwoCocycle::zero().with(0, 0, x())]);
        let res = h2(&a, 1);
        assert_eq!(res.h2_dim, 1);
        assert!(trivial_2cocycles(&a).is_empty());
    }

    #[test]
    fn trivial_cocycles() {
        let w = ConformalAlgebra::w22();
        let t = trivial_cocycle(&w, &[rat(1), rat(0)]);
        assert_eq!(t.value(0, 0), x().scale(&rat(2)));
        assert!(t.value(0, 1).is_zero());
        assert_eq!(trivial_2cocycles(&w).len(), 2);
        let v = trivial_cocycle(&ConformalAlgebra::virasoro(), &[rat(1)]);
        assert_eq!(v.value(0, 0), x().scale(&rat(2)));
    }

    #[test]
    fn w22_h2() {
        let w = ConformalAlgebra::w22();
        for n in [3, 4, 5] {
            let res = h2(&w, n);
            assert_eq!(res.h2_dim, 2);
            assert!(res.trivial_contained);
            assert_eq!(
                res.representatives,
                vec![
                    TwoCocycle::zero().with(0, 0, x().pow(3)),
                    TwoCocycle::zero().with(0, 1, x().pow(3)),
                ]
            );
        }
    }

    #[test]
    fn derived_value_is_skew() {
        let f = TwoCocycle::zero().with(0, 1, &x() + &x().pow(2));
        assert_eq!(f.value(1, 0), &x() - &x().pow(2));
    }
}
