use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::Zero;
use rayon::prelude::*;

use super::basis::GradedPiece;
use super::{Cochain, CohomologyError, Complex};
use crate::algebra::ConformalAlgebra;
use crate::poly::{Echelon, ExactMatrix, Polynomial, Rational, Variable};

/// Polynomial degrees computed for each cochain degree `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeRange {
    /// `0 ..= q + 2`.
    Default,
    Fixed {
        lo: u32,
        hi: u32,
    },
}

impl DegreeRange {
    pub fn for_q(&self, q: usize) -> std::ops::RangeInclusive<u32> {
        match *self {
            DegreeRange::Default => 0..=q as u32 + 2,
            DegreeRange::Fixed { lo, hi } => lo..=hi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexKind {
    Basic,
    Reduced,
}

#[derive(Clone, Debug)]
pub struct CohomologyTable {
    pub kind: ComplexKind,
    pub q_max: usize,
    /// `(q, n) -> dim`, for every computed cell including zeros.
    pub dims: BTreeMap<(usize, u32), usize>,
    pub totals: BTreeMap<usize, usize>,
    /// Cocycles whose classes form a basis, per cochain degree.
    pub representatives: BTreeMap<usize, Vec<Cochain>>,
}

impl CohomologyTable {
    pub fn total(&self, q: usize) -> usize {
        self.totals.get(&q).copied().unwrap_or(0)
    }

    pub fn totals_vec(&self) -> Vec<usize> {
        (0..=self.q_max).map(|q| self.total(q)).collect()
    }
}

type Key = (usize, u32);
/// A cell's dimension and representatives.
type Cell = (Key, (usize, Vec<Cochain>));

/// Graded pieces, differentials and `D`-images of the trivial-coefficient
/// complex, built on demand over a fixed set of keys.
pub struct TrivialComplex<'a> {
    complex: Complex<'a>,
    shift: u32,
    pieces: HashMap<Key, GradedPiece>,
    differentials: HashMap<Key, ExactMatrix>,
    images: HashMap<Key, Echelon>,
}

impl<'a> TrivialComplex<'a> {
    /// The degree by which `d` raises polynomial degree.
    pub fn shift_of(alg: &ConformalAlgebra) -> Result<u32, CohomologyError> {
        match alg.structure_degree() {
            Some(Some(s)) => Ok(s),
            // All brackets vanish, so d = 0 and any shift is consistent.
            Some(None) => Ok(1),
            None => Err(CohomologyError::InhomogeneousStructure),
        }
    }

    pub fn new(alg: &'a ConformalAlgebra) -> Result<Self, CohomologyError> {
        Ok(TrivialComplex {
            complex: Complex::trivial(alg),
            shift: Self::shift_of(alg)?,
            pieces: HashMap::new(),
            differentials: HashMap::new(),
            images: HashMap::new(),
        })
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn complex(&self) -> &Complex<'a> {
        &self.complex
    }

    fn below(&self, (q, n): Key) -> Option<Key> {
        (q >= 1 && n >= self.shift).then(|| (q - 1, n - self.shift))
    }

    fn above(&self, (q, n): Key) -> Key {
        (q + 1, n + self.shift)
    }

    /// Builds every piece, differential and image needed for the given cells, in parallel.
    pub fn prepare(&mut self, cells: &[Key], reduced: bool) {
        let rank = self.complex.algebra().rank();
        let mut d_keys = BTreeSet::new();
        for &c in cells {
            d_keys.insert(c);
            d_keys.extend(self.below(c));
        }
        let mut s_keys = BTreeSet::new();
        if reduced {
            for &c in &d_keys {
                s_keys.insert(c);
                s_keys.insert(self.above(c));
            }
        }
        let mut piece_keys = BTreeSet::new();
        for &c in &d_keys {
            piece_keys.insert(c);
            piece_keys.insert(self.above(c));
        }
        for &(q, n) in &s_keys {
            piece_keys.insert((q, n));
            if n >= 1 {
                piece_keys.insert((q, n - 1));
            }
        }
        let missing: Vec<Key> = piece_keys
            .into_iter()
            .filter(|k| !self.pieces.contains_key(k))
            .collect();
        let built: Vec<(Key, GradedPiece)> = missing
            .into_par_iter()
            .map(|(q, n)| ((q, n), GradedPiece::new(rank, q, n)))
            .collect();
        self.pieces.extend(built);

        let this = &*self;
        let ds: Vec<(Key, ExactMatrix)> = d_keys
            .iter()
            .filter(|k| !this.differentials.contains_key(k))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|&k| (k, this.build_differential(k)))
            .collect();
        let ss: Vec<(Key, Echelon)> = s_keys
            .iter()
            .filter(|k| !this.images.contains_key(k))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|&k| (k, this.build_image(k)))
            .collect();
        self.differentials.extend(ds);
        self.images.extend(ss);
    }

    fn build_differential(&self, key: Key) -> ExactMatrix {
        let src = &self.pieces[&key];
        let dst = &self.pieces[&self.above(key)];
        let columns: Vec<Vec<Rational>> = (0..src.dim())
            .map(|u| {
                let image = self.complex.differential(&src.basis_cochain(u));
                dst.coordinates(&image).expect("d maps graded pieces to graded pieces")
            })
            .collect();
        ExactMatrix::from_columns(&columns, dst.dim())
    }

    /// Echelon form of `(x_1 + .. + x_q) * C(q, n - 1)` inside `C(q, n)`.
    fn build_image(&self, (q, n): Key) -> Echelon {
        let dst = &self.pieces[&(q, n)];
        let mut e = Echelon::new(dst.dim());
        if n == 0 {
            return e;
        }
        let src = &self.pieces[&(q, n - 1)];
        for u in 0..src.dim() {
            let image = self.complex.partial(&src.basis_cochain(u));
            e.insert(
                &dst.coordinates(&image)
                    .expect("multiplication by the variable sum is graded"),
            );
        }
        e
    }

    pub fn piece(&mut self, key: Key) -> &GradedPiece {
        let rank = self.complex.algebra().rank();
        self.pieces
            .entry(key)
            .or_insert_with(|| GradedPiece::new(rank, key.0, key.1))
    }

    pub fn differential_matrix(&mut self, key: Key) -> &ExactMatrix {
        if !self.differentials.contains_key(&key) {
            self.prepare(&[key], false);
        }
        &self.differentials[&key]
    }

    fn empty_matrix(rows: usize) -> ExactMatrix {
        ExactMatrix::zeros(rows, 0)
    }

    /// The differential arriving at `key`, as a matrix into its piece.
    fn incoming(&self, key: Key) -> ExactMatrix {
        match self.below(key) {
            Some(b) => self.differentials[&b].clone(),
            None => Self::empty_matrix(self.pieces[&key].dim()),
        }
    }

    fn basic_cell(&self, key: Key) -> (usize, Vec<Cochain>) {
        let piece = &self.pieces[&key];
        let (_, kernel) = self.differentials[&key].rank_kernel();
        let incoming = self.incoming(key);
        let mut span = Echelon::new(piece.dim());
        for c in columns(&incoming) {
            span.insert(&c);
        }
        let reps: Vec<Cochain> = kernel
            .into_iter()
            .filter(|v| span.insert(v))
            .map(|v| piece.cochain(&v))
            .collect();
        (reps.len(), reps)
    }

    /// Non-pivot coordinates of the image of `D` in the piece at `key`.
    fn free_coordinates(&self, key: Key) -> Vec<usize> {
        let e = &self.images[&key];
        (0..self.pieces[&key].dim()).filter(|&c| !e.is_pivot(c)).collect()
    }

    fn project(&self, key: Key, v: &[Rational]) -> Vec<Rational> {
        let reduced = self.images[&key].reduce(v);
        self.free_coordinates(key)
            .into_iter()
            .map(|c| reduced[c].clone())
            .collect()
    }

    /// The induced differential on `C(q, n) / D C(q, n - shift')`, in free coordinates.
    fn reduced_differential(&self, key: Key) -> ExactMatrix {
        let d = &self.differentials[&key];
        let free_src = self.free_coordinates(key);
        let rows = self.free_coordinates(self.above(key)).len();
        let cols: Vec<Vec<Rational>> = free_src
            .iter()
            .map(|&c| {
                let col: Vec<Rational> = (0..d.rows()).map(|r| d.get(r, c).clone()).collect();
                self.project(self.above(key), &col)
            })
            .collect();
        ExactMatrix::from_columns(&cols, rows)
    }

    fn reduced_cell(&self, key: Key) -> (usize, Vec<Cochain>) {
        let piece = &self.pieces[&key];
        let free = self.free_coordinates(key);
        let (_, kernel) = self.reduced_differential(key).rank_kernel();
        let mut span = Echelon::new(free.len());
        if let Some(b) = self.below(key) {
            for c in columns(&self.reduced_differential(b)) {
                span.insert(&c);
            }
        }
        let reps: Vec<Cochain> = kernel
            .into_iter()
            .filter(|v| span.insert(v))
            .map(|v| {
                let mut full = vec![Rational::zero(); piece.dim()];
                for (c, x) in free.iter().zip(v) {
                    full[*c] = x;
                }
                piece.cochain(&full)
            })
            .collect();
        (reps.len(), reps)
    }

    /// Basic and (optionally) reduced tables over the given cells.
    pub fn tables(
        &mut self,
        q_max: usize,
        range: DegreeRange,
        reduced: bool,
    ) -> (CohomologyTable, Option<CohomologyTable>) {
        let cells: Vec<Key> = (0..=q_max).flat_map(|q| range.for_q(q).map(move |n| (q, n))).collect();
        self.prepare(&cells, reduced);
        let this = &*self;
        let basic: Vec<Cell> = cells.par_iter().map(|&k| (k, this.basic_cell(k))).collect();
        let red: Option<Vec<Cell>> = reduced.then(|| cells.par_iter().map(|&k| (k, this.reduced_cell(k))).collect());
        (
            assemble(ComplexKind::Basic, q_max, basic),
            red.map(|r| assemble(ComplexKind::Reduced, q_max, r)),
        )
    }

    /// Solves `d phi = gamma` for a homogeneous cochain.
    pub fn coboundary_preimage(&mut self, gamma: &Cochain) -> Result<Option<Cochain>, CohomologyError> {
        let q = gamma.q();
        let Some(n) = homogeneous_degree(gamma)? else {
            return Ok(Some(Cochain::zero(q.saturating_sub(1))));
        };
        let key = (q, n);
        self.check_member(key, gamma)?;
        let Some(b) = self.below(key) else { return Ok(None) };
        self.prepare(&[b], false);
        let coords = self.pieces[&key].coordinates(gamma).unwrap();
        Ok(self.differentials[&b]
            .solve(&coords)
            .map(|x| self.pieces[&b].cochain(&x)))
    }

    /// Solves `d phi + D psi = gamma`, returning `(phi, psi)` if possible.
    pub fn reduced_coboundary_preimage(
        &mut self,
        gamma: &Cochain,
    ) -> Result<Option<(Cochain, Cochain)>, CohomologyError> {
        let q = gamma.q();
        let Some(n) = homogeneous_degree(gamma)? else {
            return Ok(Some((Cochain::zero(q.saturating_sub(1)), Cochain::zero(q))));
        };
        let key = (q, n);
        self.check_member(key, gamma)?;
        let mut keys = vec![key];
        keys.extend(self.below(key));
        self.prepare(&keys, true);
        let target = self.pieces[&key].coordinates(gamma).unwrap();
        let incoming = self.incoming(key);
        let mut cols = columns(&incoming);
        let partial_src = (n >= 1).then(|| (q, n - 1));
        let partial_cols: Vec<Vec<Rational>> = match partial_src {
            Some(k) => {
                let src = &self.pieces[&k];
                let dst = &self.pieces[&key];
                (0..src.dim())
                    .map(|u| dst.coordinates(&self.complex.partial(&src.basis_cochain(u))).unwrap())
                    .collect()
            }
            None => Vec::new(),
        };
        let split = cols.len();
        cols.extend(partial_cols);
        let m = ExactMatrix::from_columns(&cols, self.pieces[&key].dim());
        let Some(x) = m.solve(&target) else { return Ok(None) };
        let phi = match self.below(key) {
            Some(b) => self.pieces[&b].cochain(&x[..split]),
            None => Cochain::zero(q.saturating_sub(1)),
        };
        let psi = match partial_src {
            Some(k) => self.pieces[&k].cochain(&x[split..]),
            None => Cochain::zero(q),
        };
        Ok(Some((phi, psi)))
    }

    /// Whether `gamma` lies in `D C(q, n - 1)`.
    pub fn is_partial_multiple(&mut self, gamma: &Cochain) -> Result<bool, CohomologyError> {
        let Some(n) = homogeneous_degree(gamma)? else {
            return Ok(true);
        };
        let key = (gamma.q(), n);
        self.check_member(key, gamma)?;
        if !self.images.contains_key(&key) {
            self.piece(key);
            if n >= 1 {
                self.piece((key.0, n - 1));
            }
            let e = self.build_image(key);
            self.images.insert(key, e);
        }
        Ok(self.images[&key].contains(&self.pieces[&key].coordinates(gamma).unwrap()))
    }

    fn check_member(&mut self, key: Key, gamma: &Cochain) -> Result<(), CohomologyError> {
        if self.piece(key).contains(gamma) {
            Ok(())
        } else {
            Err(CohomologyError::NotACochain)
        }
    }
}

/// The common polynomial degree of all components; `None` for the zero cochain.
pub fn homogeneous_degree(gamma: &Cochain) -> Result<Option<u32>, CohomologyError> {
    let mut degree = None;
    for p in gamma.components().values() {
        if !p.is_homogeneous() {
            return Err(CohomologyError::Inhomogeneous);
        }
        let d = p.degree().unwrap();
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => return Err(CohomologyError::Inhomogeneous),
            _ => {}
        }
    }
    Ok(degree)
}

fn columns(m: &ExactMatrix) -> Vec<Vec<Rational>> {
    (0..m.cols())
        .map(|c| (0..m.rows()).map(|r| m.get(r, c).clone()).collect())
        .collect()
}

fn assemble(kind: ComplexKind, q_max: usize, cells: Vec<Cell>) -> CohomologyTable {
    let mut dims = BTreeMap::new();
    let mut totals: BTreeMap<usize, usize> = (0..=q_max).map(|q| (q, 0)).collect();
    let mut representatives: BTreeMap<usize, Vec<Cochain>> = BTreeMap::new();
    for ((q, n), (dim, reps)) in cells {
        dims.insert((q, n), dim);
        *totals.entry(q).or_default() += dim;
        representatives.entry(q).or_default().extend(reps);
    }
    CohomologyTable {
        kind,
        q_max,
        dims,
        totals,
        representatives,
    }
}

pub fn basic_cohomology(
    alg: &ConformalAlgebra,
    q_max: usize,
    range: DegreeRange,
) -> Result<CohomologyTable, CohomologyError> {
    Ok(TrivialComplex::new(alg)?.tables(q_max, range, false).0)
}

pub fn reduced_cohomology(
    alg: &ConformalAlgebra,
    q_max: usize,
    range: DegreeRange,
) -> Result<CohomologyTable, CohomologyError> {
    Ok(TrivialComplex::new(alg)?.tables(q_max, range, true).1.unwrap())
}

/// Both tables from one set of differentials.
pub fn cohomology_tables(
    alg: &ConformalAlgebra,
    q_max: usize,
    range: DegreeRange,
) -> Result<(CohomologyTable, CohomologyTable), CohomologyError> {
    let (basic, reduced) = TrivialComplex::new(alg)?.tables(q_max, range, true);
    Ok((basic, reduced.unwrap()))
}

/// A preimage of `gamma` under `d`, over trivial coefficients.
pub fn is_coboundary(alg: &ConformalAlgebra, gamma: &Cochain) -> Result<Option<Cochain>, CohomologyError> {
    TrivialComplex::new(alg)?.coboundary_preimage(gamma)
}

/// A preimage of `gamma` under `d` modulo `D`, over trivial coefficients.
pub fn is_reduced_coboundary(
    alg: &ConformalAlgebra,
    gamma: &Cochain,
) -> Result<Option<(Cochain, Cochain)>, CohomologyError> {
    TrivialComplex::new(alg)?.reduced_coboundary_preimage(gamma)
}

/// `x_1 + .. + x_q`.
pub fn variable_sum(q: usize) -> Polynomial {
    Polynomial::sum_of((1..=q as u32).map(Variable::lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_tables_count_cochains() {
        // d = 0, so basic cohomology is the whole cochain space.
        let a = ConformalAlgebra::abelian(1);
        let t = basic_cohomology(&a, 3, DegreeRange::Fixed { lo: 0, hi: 3 }).unwrap();
        assert_eq!(t.dims[&(0, 0)], 1);
        assert_eq!(t.dims[&(1, 2)], 1);
        assert_eq!(t.dims[&(2, 1)], 1);
        assert_eq!(t.dims[&(2, 3)], 2);
        assert_eq!(t.dims[&(3, 3)], 1);
    }
}
