use std::collections::BTreeMap;

use crate::poly::{ExactMatrix, Monomial, Polynomial, Rational};

/// Coefficient matrix of a family of polynomial identities that are linear in
/// a set of unknowns.
///
/// `residuals[u]` holds the residual components produced when unknown `u` is
/// set to one and all others to zero. Row `(component, monomial)` of the
/// result collects the coefficient of that monomial in that component, so the
/// kernel is exactly the set of unknown vectors making every residual vanish.
pub(crate) fn identity_matrix(residuals: &[Vec<Polynomial>]) -> ExactMatrix {
    let mut rows: BTreeMap<(usize, Monomial), Vec<(usize, Rational)>> = BTreeMap::new();
    for (u, comps) in residuals.iter().enumerate() {
        for (c, p) in comps.iter().enumerate() {
            for (m, a) in p.terms() {
                rows.entry((c, m.clone())).or_default().push((u, a.clone()));
            }
        }
    }
    let mut mat = ExactMatrix::zeros(rows.len(), residuals.len());
    for (r, entries) in rows.into_values().enumerate() {
        for (u, a) in entries {
            mat.set(r, u, a);
        }
    }
    mat
}

/// `sum_u v[u] * basis[u]`.
pub(crate) fn combine(v: &[Rational], basis: &[Polynomial]) -> Polynomial {
    let mut out = Polynomial::zero();
    for (c, p) in v.iter().zip(basis) {
        out.add_scaled(c, p);
    }
    out
}
