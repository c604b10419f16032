//! Graded bases of block-skew polynomials.
//!
//! A cochain component lives on a sorted generator tuple (a *shape*), whose
//! runs of equal generators form blocks. The component is skew-symmetric in
//! the `x_i` of each block. The alternants `a_e = det(x_i^{e_j})` taken per
//! block, with `e` strictly decreasing inside every block, form a basis, and
//! the coordinate of a block-skew polynomial on `a_e` is simply its
//! coefficient of the monomial `x^e`.

use std::collections::HashMap;

use num::{One, Zero};

use super::Cochain;
use crate::poly::{vandermonde, Monomial, Polynomial, Rational, Variable};

/// Sorted generator indices, one per cochain slot.
pub type Shape = Vec<usize>;

/// All sorted tuples of length `q` over `rank` generators, in lexicographic order.
pub fn shapes(rank: usize, q: usize) -> Vec<Shape> {
    fn rec(rank: usize, q: usize, from: usize, cur: &mut Shape, out: &mut Vec<Shape>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for g in from..rank {
            cur.push(g);
            rec(rank, q, g, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, q, 0, &mut Vec::with_capacity(q), &mut out);
    out
}

/// `(start, len)` of each run of equal generators.
pub fn blocks(shape: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for (t, g) in shape.iter().enumerate() {
        match out.last_mut() {
            Some((start, len)) if shape[*start] == *g => *len += 1,
            _ => out.push((t, 1)),
        }
    }
    out
}

/// Degree of the product of the block Vandermonde polynomials: no nonzero
/// block-skew polynomial on `shape` has lower degree.
pub fn min_degree(shape: &[usize]) -> u32 {
    blocks(shape)
        .iter()
        .map(|&(_, b)| (b * b.saturating_sub(1) / 2) as u32)
        .sum()
}

/// `x_1 .. x_q` as cochain variables.
pub fn slot_vars(q: usize) -> Vec<Variable> {
    (1..=q as u32).map(Variable::lambda).collect()
}

/// Strictly decreasing sequences of `len` nonnegative integers summing to `sum`,
/// in decreasing lexicographic order.
pub fn distinct_parts(len: usize, sum: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, sum: u32, below: Option<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // The remaining len - 1 parts need at least (len-1)(len-2)/2.
        let tail_min = ((len - 1) * len.saturating_sub(2) / 2) as u32;
        if sum < tail_min {
            return;
        }
        let mut top = sum - tail_min;
        if let Some(b) = below {
            if b == 0 {
                return;
            }
            top = top.min(b - 1);
        }
        let floor = (len - 1) as u32;
        for e in (floor..=top).rev() {
            cur.push(e);
            rec(len - 1, sum - e, Some(e), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, sum, None, &mut Vec::with_capacity(len), &mut out);
    out
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if rest.is_empty() {
            out.push((cur.clone(), odd));
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            // Taking the i-th remaining element costs i transpositions.
            rec(rest, cur, odd ^ (i % 2 == 1), out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::with_capacity(n), false, &mut out);
    out
}

/// `sum_sigma sgn(sigma) prod_i vars[i]^exps[sigma(i)]`.
pub fn alternant(vars: &[Variable], exps: &[u32]) -> Polynomial {
    assert_eq!(vars.len(), exps.len());
    let mut out = Polynomial::zero();
    for (perm, odd) in permutations_with_sign(vars.len()) {
        let m = Monomial::from_pairs(vars.iter().cloned().zip(perm.iter().map(|&k| exps[k])));
        out.add_term(m, if odd { -Rational::one() } else { Rational::one() });
    }
    out
}

/// Splits of `n` over blocks with at least `mins[b]` in block `b`.
fn compositions(mins: &[u32], n: u32) -> Vec<Vec<u32>> {
    fn rec(mins: &[u32], n: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match mins {
            [] => {
                if n == 0 {
                    out.push(cur.clone());
                }
            }
            [m, rest @ ..] => {
                let rest_min: u32 = rest.iter().sum();
                if n < m + rest_min {
                    return;
                }
                for s in (*m..=n - rest_min).rev() {
                    cur.push(s);
                    rec(rest, n - s, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(mins, n, &mut Vec::new(), &mut out);
    out
}

/// Exponent vectors indexing the alternant basis of degree `n` on `shape`.
pub fn patterns(shape: &[usize], n: u32) -> Vec<Vec<u32>> {
    let bl = blocks(shape);
    let mins: Vec<u32> = bl.iter().map(|&(_, b)| (b * b.saturating_sub(1) / 2) as u32).collect();
    let mut out = Vec::new();
    for split in compositions(&mins, n) {
        let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
        for (&(_, b), &s) in bl.iter().zip(&split) {
            let parts = distinct_parts(b, s);
            acc = acc
                .iter()
                .flat_map(|prefix| {
                    parts.iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.extend_from_slice(p);
                        v
                    })
                })
                .collect();
        }
        out.extend(acc);
    }
    out
}

/// The alternant attached to an exponent pattern on `shape`.
pub fn pattern_polynomial(shape: &[usize], exps: &[u32]) -> Polynomial {
    let vars = slot_vars(shape.len());
    let mut out = Polynomial::one();
    for (start, len) in blocks(shape) {
        out = &out * &alternant(&vars[start..start + len], &exps[start..start + len]);
    }
    out
}

/// A basis of the homogeneous degree-`n` block-skew polynomials on `shape`.
pub fn cochain_basis(shape: &[usize], n: u32) -> Vec<Polynomial> {
    patterns(shape, n)
        .iter()
        .map(|e| pattern_polynomial(shape, e))
        .collect()
}

/// Partitions of `n` into at most `len` parts, as exponent vectors of length `len`.
fn partitions(len: usize, n: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, n: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (0..=cap.min(n)).rev() {
            cur.push(p);
            rec(len - 1, n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, n, n, &mut Vec::new(), &mut out);
    out
}

/// The monomial symmetric polynomial `m_mu` in the given variables.
pub fn monomial_symmetric(vars: &[Variable], mu: &[u32]) -> Polynomial {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Polynomial::zero();
    for (perm, _) in permutations_with_sign(vars.len()) {
        let exps: Vec<u32> = perm.iter().map(|&k| mu[k]).collect();
        if seen.insert(exps.clone()) {
            out.add_term(Monomial::from_pairs(vars.iter().cloned().zip(exps)), Rational::one());
        }
    }
    out
}

/// The same space spanned differently: block Vandermonde products times
/// products of monomial symmetric polynomials of complementary degree.
pub fn vandermonde_symmetric_basis(shape: &[usize], n: u32) -> Vec<Polynomial> {
    let vars = slot_vars(shape.len());
    let bl = blocks(shape);
    let mut base = Polynomial::one();
    for &(start, len) in &bl {
        base = &base * &vandermonde(&vars[start..start + len]);
    }
    let vmin = min_degree(shape);
    if n < vmin {
        return Vec::new();
    }
    let mut out = Vec::new();
    for split in compositions(&vec![0; bl.len()], n - vmin) {
        let mut family = vec![base.clone()];
        for (&(start, len), &s) in bl.iter().zip(&split) {
            let syms: Vec<Polynomial> = partitions(len, s)
                .iter()
                .map(|mu| monomial_symmetric(&vars[start..start + len], mu))
                .collect();
            family = family.iter().flat_map(|f| syms.iter().map(move |m| f * m)).collect();
        }
        out.extend(family);
    }
    out
}

/// The degree-`n` part of the q-cochains of an algebra of the given rank
/// with trivial coefficients, with coordinates on the alternant basis.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    q: usize,
    n: u32,
    slots: Vec<(Shape, Vec<u32>)>,
    index: HashMap<(Shape, Vec<u32>), usize>,
}

impl GradedPiece {
    pub fn new(rank: usize, q: usize, n: u32) -> Self {
        let mut slots = Vec::new();
        for shape in shapes(rank, q) {
            if min_degree(&shape) > n {
                continue;
            }
            for e in patterns(&shape, n) {
                slots.push((shape.clone(), e));
            }
        }
        let index = slots.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        GradedPiece { q, n, slots, index }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[(Shape, Vec<u32>)] {
        &self.slots
    }

    pub fn basis_cochain(&self, u: usize) -> Cochain {
        let (shape, e) = &self.slots[u];
        Cochain::single(shape.clone(), pattern_polynomial(shape, e))
    }

    /// Coordinates of a cochain assumed block-skew. `None` if some term does
    /// not belong to this piece (wrong degree, arity or extra variables).
    pub fn coordinates(&self, c: &Cochain) -> Option<Vec<Rational>> {
        if c.q() != self.q && !c.is_zero() {
            return None;
        }
        let vars = slot_vars(self.q);
        let mut v = vec![Rational::zero(); self.dim()];
        for (shape, p) in c.components() {
            let bl = blocks(shape);
            for (m, coeff) in p.terms() {
                let e: Vec<u32> = vars.iter().map(|x| m.exponent(x)).collect();
                if e.iter().sum::<u32>() != m.degree() || m.degree() != self.n {
                    return None;
                }
                let leading = bl.iter().all(|&(s, len)| e[s..s + len].windows(2).all(|w| w[0] > w[1]));
                if leading {
                    let k = *self.index.get(&(shape.clone(), e))?;
                    v[k] = coeff.clone();
                }
            }
        }
        Some(v)
    }

    pub fn cochain(&self, coords: &[Rational]) -> Cochain {
        let mut out = Cochain::zero(self.q);
        for (u, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.basis_cochain(u).scale(c));
            }
        }
        out
    }

    /// Whether the cochain lies in this piece exactly (coordinates reproduce it).
    pub fn contains(&self, c: &Cochain) -> bool {
        self.coordinates(c).is_some_and(|v| self.cochain(&v) == *c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Echelon};

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Variable::lambda(i))
    }

    #[test]
    fn shape_enumeration() {
        assert_eq!(shapes(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(shapes(2, 0), vec![Vec::<usize>::new()]);
        assert_eq!(blocks(&[0, 0, 1]), vec![(0, 2), (2, 1)]);
        assert_eq!(min_degree(&[0, 0, 0, 1, 1]), 4);
    }

    #[test]
    fn distinct_parts_small() {
        assert_eq!(distinct_parts(2, 3), vec![vec![3, 0], vec![2, 1]]);
        assert_eq!(distinct_parts(3, 3), vec![vec![2, 1, 0]]);
        assert!(distinct_parts(3, 2).is_empty());
        assert_eq!(distinct_parts(0, 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn full_block_of_three() {
        let b = cochain_basis(&[0, 0, 0], 3);
        assert_eq!(b.len(), 1);
        let v = &(&(&x(1) - &x(2)) * &(&x(1) - &x(3))) * &(&x(2) - &x(3));
        assert_eq!(b[0], v);
    }

    #[test]
    fn low_degree_pair_is_empty() {
        assert!(cochain_basis(&[0, 0], 0).is_empty());
    }

    #[test]
    fn four_parameter_family() {
        // (x2 - x3) times {x1^2, x2^2 + x3^2, x2 x3, x1 (x2 + x3)}.
        let b = cochain_basis(&[0, 1, 1], 3);
        assert_eq!(b.len(), 4);
        let d = &x(2) - &x(3);
        let ansatz = [
            x(1).pow(2),
            &x(2).pow(2) + &x(3).pow(2),
            &x(2) * &x(3),
            &x(1) * &(&x(2) + &x(3)),
        ];
        let piece = GradedPiece::new(2, 3, 3);
        let mut span = Echelon::new(piece.dim());
        for a in &ansatz {
            let c = Cochain::single(vec![0, 1, 1], &d * a);
            assert!(piece.contains(&c));
            span.insert(&piece.coordinates(&c).unwrap());
        }
        // Restricted to the (L, M, M) slots the ansatz spans everything.
        let lmm = piece.slots().iter().filter(|(s, _)| s == &vec![0, 1, 1]).count();
        assert_eq!(span.rank(), lmm);
    }

    #[test]
    fn coordinates_round_trip() {
        for q in 0..=4 {
            for n in 0..=6 {
                let piece = GradedPiece::new(2, q, n);
                for u in 0..piece.dim() {
                    let c = piece.basis_cochain(u);
                    let mut unit = vec![Rational::zero(); piece.dim()];
                    unit[u] = rat(1);
                    assert_eq!(piece.coordinates(&c).unwrap(), unit);
                }
            }
        }
    }

    #[test]
    fn alternant_and_symmetric_bases_agree() {
        for q in 1..=4 {
            for shape in shapes(2, q) {
                for n in 0..=7 {
                    let alt = cochain_basis(&shape, n);
                    let sym = vandermonde_symmetric_basis(&shape, n);
                    assert_eq!(alt.len(), sym.len(), "{shape:?} n={n}");
                    let piece = GradedPiece::new(2, q, n);
                    let mut span = Echelon::new(piece.dim());
                    for p in &sym {
                        let c = Cochain::single(shape.clone(), p.clone());
                        assert!(piece.contains(&c));
                        span.insert(&piece.coordinates(&c).unwrap());
                    }
                    assert_eq!(span.rank(), alt.len());
                }
            }
        }
    }

    #[test]
    fn filtration_bound() {
        for q in 0..=7 {
            for shape in shapes(2, q) {
                for n in 0..min_degree(&shape) {
                    assert!(cochain_basis(&shape, n).is_empty());
                }
                assert!(!cochain_basis(&shape, min_degree(&shape)).is_empty());
            }
        }
    }
}
