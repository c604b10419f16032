use std::collections::BTreeMap;
use std::fmt;

use super::basis::{blocks, Shape};
use crate::poly::{Polynomial, Rational, Variable};

/// A q-cochain, stored as one polynomial in `x_1 .. x_q` per sorted generator tuple.
///
/// Values on unsorted tuples follow from skew-symmetry under simultaneous
/// permutation of arguments and variables; see [`Cochain::evaluate`].
/// Absent shapes are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    q: usize,
    components: BTreeMap<Shape, Polynomial>,
}

impl Cochain {
    pub fn zero(q: usize) -> Self {
        Cochain {
            q,
            components: BTreeMap::new(),
        }
    }

    pub fn single(shape: Shape, p: Polynomial) -> Self {
        Self::from_components(shape.len(), [(shape, p)])
    }

    pub fn from_components(q: usize, comps: impl IntoIterator<Item = (Shape, Polynomial)>) -> Self {
        let mut out = Cochain::zero(q);
        for (shape, p) in comps {
            assert_eq!(shape.len(), q, "shape arity");
            assert!(shape.windows(2).all(|w| w[0] <= w[1]), "shapes are sorted");
            if !p.is_zero() {
                out.components.insert(shape, p);
            }
        }
        out
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn components(&self) -> &BTreeMap<Shape, Polynomial> {
        &self.components
    }

    pub fn component(&self, shape: &[usize]) -> Polynomial {
        self.components.get(shape).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn zip_with(&self, other: &Cochain, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Cochain {
        assert_eq!(self.q, other.q, "cochain degrees differ");
        let zero = Polynomial::zero();
        let mut keys: Vec<&Shape> = self.components.keys().chain(other.components.keys()).collect();
        keys.sort();
        keys.dedup();
        let comps = keys.into_iter().map(|k| {
            let a = self.components.get(k).unwrap_or(&zero);
            let b = other.components.get(k).unwrap_or(&zero);
            (k.clone(), f(a, b))
        });
        Cochain::from_components(self.q, comps.collect::<Vec<_>>())
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> Cochain {
        self.map(|p| -p)
    }

    /// Applies `f` to every component.
    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Cochain {
        Cochain::from_components(
            self.q,
            self.components
                .iter()
                .map(|(s, p)| (s.clone(), f(p)))
                .collect::<Vec<_>>(),
        )
    }

    /// `gamma_{s_1..s_q}(g_{k_1}, .., g_{k_q})` for `args = [(k_t, s_t)]`.
    pub fn evaluate(&self, args: &[(usize, Polynomial)]) -> Polynomial {
        assert_eq!(args.len(), self.q, "cochain arity");
        let mut order: Vec<usize> = (0..self.q).collect();
        order.sort_by_key(|&t| args[t].0);
        let shape: Shape = order.iter().map(|&t| args[t].0).collect();
        let Some(p) = self.components.get(&shape) else {
            return Polynomial::zero();
        };
        let map: BTreeMap<Variable, Polynomial> = order
            .iter()
            .enumerate()
            .map(|(t, &src)| (Variable::lambda(t as u32 + 1), args[src].1.clone()))
            .collect();
        let v = p.substitute_all(&map);
        if permutation_is_odd(&order) {
            -v
        } else {
            v
        }
    }

    /// Checks skew-symmetry inside every block of every component.
    pub fn is_block_skew(&self) -> bool {
        self.components.iter().all(|(shape, p)| {
            blocks(shape).iter().all(|&(start, len)| {
                (start..start + len - 1).all(|t| {
                    let (a, b) = (Variable::lambda(t as u32 + 1), Variable::lambda(t as u32 + 2));
                    let swap = BTreeMap::from([(a.clone(), Polynomial::var(b.clone())), (b, Polynomial::var(a))]);
                    p.substitute_all(&swap) == -p
                })
            })
        })
    }

    /// Displays components with generator names, e.g. `(L,M): -x1^2*x2`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayCochain { c: self, names }
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut t = start;
        while !seen[t] {
            seen[t] = true;
            t = perm[t];
            len += 1;
        }
        odd ^= len % 2 == 0;
    }
    odd
}

struct DisplayCochain<'a> {
    c: &'a Cochain,
    names: &'a [String],
}

impl fmt::Display for DisplayCochain<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_zero() {
            return write!(f, "0");
        }
        for (i, (shape, p)) in self.c.components.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let names: Vec<&str> = shape.iter().map(|&g| self.names[g].as_str()).collect();
            write!(f, "({}): {}", names.join(","), p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Variable::lambda(i))
    }

    #[test]
    fn parity() {
        assert!(!permutation_is_odd(&[0, 1, 2]));
        assert!(permutation_is_odd(&[1, 0, 2]));
        assert!(!permutation_is_odd(&[1, 2, 0]));
        assert!(!permutation_is_odd(&[3, 2, 1, 0]));
        assert!(permutation_is_odd(&[1, 2, 3, 0]));
    }

    #[test]
    fn evaluation_sorts_with_sign() {
        // chi on (L, L, M); evaluating on (L, M, L) at (x1, x2, y) swaps the last two slots.
        let chi = Cochain::single(vec![0, 0, 1], &(&(&x(1) - &x(2)) * &(&x(1) + &x(2))) * &x(3));
        let y = Polynomial::var(Variable::named("y"));
        let v = chi.evaluate(&[(0, x(1)), (1, x(2)), (0, y.clone())]);
        let expect = -(&(&(&x(1) - &y) * &(&x(1) + &y)) * &x(2));
        assert_eq!(v, expect);
        assert!(chi.is_block_skew());
        assert!(!Cochain::single(vec![0, 0], x(1)).is_block_skew());
    }

    #[test]
    fn display_uses_names() {
        let names = vec!["L".to_string(), "M".to_string()];
        let c = Cochain::single(vec![0, 1], -(&x(1).pow(2) * &x(2)));
        assert_eq!(c.display(&names).to_string(), "(L,M): -x1^2*x2");
        assert_eq!(Cochain::zero(2).display(&names).to_string(), "0");
    }
}
