//! The generalized Koszul resolution of the maximal-minor ideal of a matrix
//! of y-linear forms, built from a Koszul complex on the entries of the
//! row-vector product z = x phi.
//!
//! For an n x m matrix phi (m >= n) the construction is: take the Koszul
//! complex on z_1, .., z_m, extract its x-degree (m - n) strand, dualize over
//! the y-subring, twist by (0, m), and augment by the row of signed maximal
//! minors. Position j + 1 of the result is generated in y-degree n + j, and
//! the cokernel of the augmentation row is the quotient by the minor ideal.

use crate::bipoly::{bidegree_piece_dim, Bidegree, BiPoly, Monomial, RingSpec, Var};
use crate::comb::{complement, k_subsets, shuffle_sign};
use crate::field::Field;
use crate::freecomplex::{FreeComplexDescriptor, PolyMatrix, ShiftedFreeModule};
use crate::{Error, Result};

/// An n x m matrix of y-linear forms, n being the number of x-variables of
/// the ring. Entries may be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMatrixY<F: Field> {
    ring: RingSpec<F>,
    cols: usize,
    entries: Vec<BiPoly<F>>, // row-major, ring.n x cols
}

impl<F: Field> LinearMatrixY<F> {
    pub fn new(ring: &RingSpec<F>, cols: usize, entries: Vec<BiPoly<F>>) -> Result<LinearMatrixY<F>> {
        let rows = ring.n;
        if cols < rows || cols == 0 {
            return Err(Error::Shape(format!(
                "need at least as many columns as rows, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {rows}x{cols} = {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for (idx, e) in entries.iter().enumerate() {
            ring.ensure_same(e.ring())?;
            if !e.is_zero() && e.bidegree() != Some(Bidegree::new(0, 1)) {
                return Err(Error::NotLinear(format!(
                    "entry ({},{}) = {e} is not a linear form in the y-variables",
                    idx / cols,
                    idx % cols
                )));
            }
        }
        Ok(LinearMatrixY {
            ring: ring.clone(),
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: &RingSpec<F>, rows: Vec<Vec<BiPoly<F>>>) -> Result<LinearMatrixY<F>> {
        if rows.len() != ring.n {
            return Err(Error::Shape(format!(
                "expected {} rows to match the x-variable count, got {}",
                ring.n,
                rows.len()
            )));
        }
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        LinearMatrixY::new(ring, cols, rows.into_iter().flatten().collect())
    }

    pub fn ring(&self) -> &RingSpec<F> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.ring.n
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &BiPoly<F> {
        &self.entries[r * self.cols + c]
    }

    /// The entries of the row vector x phi: z_k = sum_i x_i phi_{i,k}, each
    /// zero or of bidegree (1, 1).
    pub fn z_sequence(&self) -> Vec<BiPoly<F>> {
        (0..self.cols)
            .map(|k| {
                let mut z = BiPoly::zero(&self.ring);
                for i in 0..self.rows() {
                    let xi = Monomial::var(self.ring.dims(), Var::X(i));
                    z = z
                        .add(&self.entry(i, k).mul_monomial(&xi))
                        .expect("same ring");
                }
                z
            })
            .collect()
    }

    /// Determinant of the square submatrix on the given columns (all rows).
    pub fn minor(&self, cols: &[usize]) -> Result<BiPoly<F>> {
        if cols.len() != self.rows() {
            return Err(Error::Shape(format!(
                "maximal minors need {} columns, got {}",
                self.rows(),
                cols.len()
            )));
        }
        if cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::OutOfRange("column index out of range".into()));
        }
        let rows: Vec<usize> = (0..self.rows()).collect();
        self.det_on(&rows, cols)
    }

    fn det_on(&self, rows: &[usize], cols: &[usize]) -> Result<BiPoly<F>> {
        poly_det(&self.ring, rows, cols, &|r, c| self.entry(r, c))
    }

    /// The maximal minors with the signs used by the augmentation row: for
    /// each n-subset U of columns in lexicographic order, the value
    /// sgn([m] minus U, U) det(phi_U).
    pub fn signed_maximal_minors(&self) -> Result<Vec<(Vec<usize>, BiPoly<F>)>> {
        let n = self.rows();
        let m = self.cols;
        let mut out = Vec::new();
        for u in k_subsets(m, n) {
            let t = complement(m, &u);
            let det = self.minor(&u)?;
            let signed = if shuffle_sign(&t, &u) < 0 {
                det.neg()
            } else {
                det
            };
            out.push((u, signed));
        }
        Ok(out)
    }
}

/// Determinant of the square submatrix picked out by the row and column
/// index lists, by Laplace expansion along the first listed row. The entry
/// accessor indexes into the full matrix.
pub(crate) fn poly_det<'a, F, E>(
    ring: &RingSpec<F>,
    rows: &[usize],
    cols: &[usize],
    entry: &E,
) -> Result<BiPoly<F>>
where
    F: Field,
    E: Fn(usize, usize) -> &'a BiPoly<F>,
    F: 'a,
{
    if rows.len() != cols.len() {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} submatrix",
            rows.len(),
            cols.len()
        )));
    }
    if rows.is_empty() {
        return Ok(BiPoly::constant(ring, ring.field.one()));
    }
    let mut acc = BiPoly::zero(ring);
    for (j, &c) in cols.iter().enumerate() {
        let pivot = entry(rows[0], c);
        if pivot.is_zero() {
            continue;
        }
        let rest_cols: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
        let sub = poly_det(ring, &rows[1..], &rest_cols, entry)?;
        let term = pivot.mul(&sub)?;
        acc = acc.add(&if j % 2 == 0 { term } else { term.neg() })?;
    }
    Ok(acc)
}

/// The finished complex together with the signed minors that make up its
/// augmentation row (indexed by n-subsets of columns in lexicographic order).
pub struct ENComplex<F: Field> {
    pub complex: FreeComplexDescriptor<F>,
    pub minors: Vec<(Vec<usize>, BiPoly<F>)>,
}

impl<F: Field> ENComplex<F> {
    /// Dimensions of the cokernel of the augmentation row in bidegrees
    /// (0, t) for t = 0 .. max_y: the quotient by the minor ideal, one
    /// y-degree at a time.
    pub fn h0_dims(&self, max_y: i64) -> Vec<usize> {
        let ring = self.complex.ring();
        (0..=max_y.max(0))
            .map(|t| {
                let d = Bidegree::new(0, t);
                let ambient = bidegree_piece_dim(ring.dims(), d) as usize;
                let image = self.complex.slice_differential(1, d).rank();
                ambient - image
            })
            .collect()
    }
}

/// Build the resolution of the maximal-minor quotient of phi. Fails if some
/// entry of x phi vanishes (a degenerate matrix) or if the assembled
/// differentials do not compose to zero.
pub fn eagon_northcott<F: Field>(phi: &LinearMatrixY<F>) -> Result<ENComplex<F>> {
    let ring = phi.ring().clone();
    let (n, m) = (phi.rows(), phi.cols());
    let z = phi.z_sequence();
    if let Some(k) = z.iter().position(BiPoly::is_zero) {
        return Err(Error::Hypothesis(format!(
            "column {} of the matrix pairs to zero against the x-variables",
            k + 1
        )));
    }
    let koszul = FreeComplexDescriptor::koszul(&ring, &z)?;
    let strand = koszul.x_strand((m - n) as i64)?;
    let dual = strand.dualize_y()?;
    let tw = dual.twist(Bidegree::new(0, m as i64));

    // augmentation row, indexed like the summands of the first twisted term:
    // the (m - n)-subsets in lexicographic order
    let subsets = k_subsets(m, m - n);
    let en1 = tw.term(0).clone();
    if en1.rank() != subsets.len() {
        return Err(Error::Shape(format!(
            "expected {} summands at the augmentation position, found {}",
            subsets.len(),
            en1.rank()
        )));
    }
    let mut eps_entries = Vec::with_capacity(subsets.len());
    for t in &subsets {
        let u = complement(m, t);
        let det = phi.minor(&u)?;
        eps_entries.push(if shuffle_sign(t, &u) < 0 { det.neg() } else { det });
    }
    let eps = PolyMatrix::new(
        &ring,
        en1,
        ShiftedFreeModule::new(vec![Bidegree::new(0, 0)]),
        eps_entries,
    )?;

    let mut terms = vec![ShiftedFreeModule::new(vec![Bidegree::new(0, 0)])];
    terms.extend(tw.terms().iter().cloned());
    let mut diffs = vec![eps];
    for i in 1..tw.len() {
        diffs.push(tw.differential(i).expect("in range").clone());
    }
    let complex = FreeComplexDescriptor::new(&ring, terms, diffs)?;
    complex.compose_zero_check()?;
    Ok(ENComplex {
        complex,
        minors: phi.signed_maximal_minors()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, DEFAULT_PRIME};

    fn fp_ring(n: usize, p: usize) -> RingSpec<Fp> {
        RingSpec::new(n, p, Fp::new(DEFAULT_PRIME).unwrap()).unwrap()
    }

    fn matrix(ring: &RingSpec<Fp>, rows: &[&[&str]]) -> LinearMatrixY<Fp> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| BiPoly::parse(ring, s).unwrap())
                    .collect()
            })
            .collect();
        LinearMatrixY::from_rows(ring, parsed).unwrap()
    }

    /// 3 x 4 catalecticant-style matrix whose minor ideal and pairing
    /// sequence are used as the running example across the crate.
    fn running_example(ring: &RingSpec<Fp>) -> LinearMatrixY<Fp> {
        matrix(
            ring,
            &[
                &["y1", "y2", "y3", "y4"],
                &["y2", "y3", "y4", "y5"],
                &["y3", "y4", "y5", "0"],
            ],
        )
    }

    /// Permutation-sum determinant, kept independent of the production code.
    fn leibniz_det(phi: &LinearMatrixY<Fp>, cols: &[usize]) -> BiPoly<Fp> {
        let n = cols.len();
        let mut perms: Vec<(Vec<usize>, i32)> = vec![(Vec::new(), 1)];
        for _ in 0..n {
            let mut next = Vec::new();
            for (perm, sign) in perms {
                for v in 0..n {
                    if !perm.contains(&v) {
                        let inversions = perm.iter().filter(|&&u| u > v).count();
                        let mut p = perm.clone();
                        p.push(v);
                        next.push((p, sign * if inversions % 2 == 0 { 1 } else { -1 }));
                    }
                }
            }
            perms = next;
        }
        let ring = phi.ring();
        let mut acc = BiPoly::zero(ring);
        for (perm, sign) in perms {
            let mut prod = BiPoly::constant(ring, ring.field.from_i64(sign as i64));
            for (r, &img) in perm.iter().enumerate() {
                prod = prod.mul(phi.entry(r, cols[img])).unwrap();
            }
            acc = acc.add(&prod).unwrap();
        }
        acc
    }

    #[test]
    fn two_by_two_minor_is_the_usual_determinant() {
        let ring = fp_ring(2, 4);
        let phi = matrix(&ring, &[&["y1", "y3"], &["y2", "y4"]]);
        let det = phi.minor(&[0, 1]).unwrap();
        assert_eq!(det, BiPoly::parse(&ring, "y1*y4 - y2*y3").unwrap());
        // the one signed maximal minor has positive sign here
        let signed = phi.signed_maximal_minors().unwrap();
        assert_eq!(signed.len(), 1);
        assert_eq!(signed[0].1, det);
    }

    #[test]
    fn repeated_columns_give_zero_minor() {
        let ring = fp_ring(2, 3);
        let phi = matrix(&ring, &[&["y1", "y1", "y2"], &["y2", "y2", "y3"]]);
        assert!(phi.minor(&[0, 1]).unwrap().is_zero());
        let en = eagon_northcott(&phi).unwrap();
        en.complex.compose_zero_check().unwrap();
    }

    #[test]
    fn signed_minors_match_a_permutation_sum_determinant() {
        let ring = fp_ring(3, 5);
        let phi = running_example(&ring);
        for (u, signed) in phi.signed_maximal_minors().unwrap() {
            let t = complement(4, &u);
            let expect = leibniz_det(&phi, &u);
            let expect = if shuffle_sign(&t, &u) < 0 {
                expect.neg()
            } else {
                expect
            };
            assert_eq!(signed, expect, "columns {u:?}");
        }
    }

    #[test]
    fn pairing_sequence_of_the_running_example() {
        let ring = fp_ring(3, 5);
        let phi = running_example(&ring);
        let z = phi.z_sequence();
        let expect = [
            "x1*y1 + x2*y2 + x3*y3",
            "x1*y2 + x2*y3 + x3*y4",
            "x1*y3 + x2*y4 + x3*y5",
            "x1*y4 + x2*y5",
        ];
        assert_eq!(z.len(), 4);
        for (zi, s) in z.iter().zip(expect) {
            assert_eq!(zi, &BiPoly::parse(&ring, s).unwrap());
        }
    }

    #[test]
    fn running_example_complex_shape() {
        let ring = fp_ring(3, 5);
        let en = eagon_northcott(&running_example(&ring)).unwrap();
        let cx = &en.complex;
        assert_eq!(cx.len(), 3);
        assert_eq!(cx.term(0).shifts, vec![Bidegree::new(0, 0)]);
        assert_eq!(cx.term(1).shifts, vec![Bidegree::new(0, 3); 4]);
        assert_eq!(cx.term(2).shifts, vec![Bidegree::new(0, 4); 3]);
    }

    #[test]
    fn square_case_is_the_determinant_alone() {
        let ring = fp_ring(2, 4);
        let phi = matrix(&ring, &[&["y1", "y3"], &["y2", "y4"]]);
        let en = eagon_northcott(&phi).unwrap();
        assert_eq!(en.complex.len(), 2);
        assert_eq!(en.complex.term(1).shifts, vec![Bidegree::new(0, 2)]);
        let eps = en.complex.differential(1).unwrap();
        let det = phi.minor(&[0, 1]).unwrap();
        assert!(eps.entry(0, 0) == &det || eps.entry(0, 0) == &det.neg());
    }

    #[test]
    fn quotient_dims_of_the_running_example() {
        let ring = fp_ring(3, 5);
        let en = eagon_northcott(&running_example(&ring)).unwrap();
        // no minors below degree 3, then four independent cubics
        assert_eq!(en.h0_dims(3), vec![1, 5, 15, 31]);
    }

    #[test]
    fn alternating_sum_matches_quotient_when_exact() {
        let ring = fp_ring(3, 5);
        let en = eagon_northcott(&running_example(&ring)).unwrap();
        let cx = &en.complex;
        let positions: Vec<usize> = (1..cx.len()).collect();
        let report = cx.exactness_report(5, &positions).unwrap();
        assert!(report.is_exact_in_window(), "{:?}", report.nonzero);
        let h0 = en.h0_dims(5);
        for t in 0..=5i64 {
            let d = Bidegree::new(0, t);
            let mut euler = 0i64;
            for i in 0..cx.len() {
                let dim = cx.term(i).piece_dim(ring.dims(), d) as i64;
                euler += if i % 2 == 0 { dim } else { -dim };
            }
            assert_eq!(euler, h0[t as usize] as i64, "t={t}");
        }
    }

    #[test]
    fn degenerate_matrix_is_rejected() {
        let ring = fp_ring(2, 3);
        let phi = matrix(&ring, &[&["y1", "0"], &["y2", "0"]]);
        assert!(eagon_northcott(&phi).is_err());
    }

    mod random_matrices {
        use super::*;
        use proptest::prelude::*;

        fn arb_phi() -> impl Strategy<Value = Vec<Vec<Vec<i64>>>> {
            // 2 x 3 matrix, entries as coefficient vectors over 2 y-variables
            proptest::collection::vec(
                proptest::collection::vec(proptest::collection::vec(0i64..7, 2), 3),
                2,
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn differentials_compose_to_zero(coeffs in arb_phi()) {
                let ring = fp_ring(2, 2);
                let rows: Vec<Vec<BiPoly<Fp>>> = coeffs
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|cs| {
                                let mut e = BiPoly::zero(&ring);
                                for (j, &c) in cs.iter().enumerate() {
                                    let t = BiPoly::var(&ring, Var::Y(j))
                                        .unwrap()
                                        .scale(&ring.field.from_i64(c));
                                    e = e.add(&t).unwrap();
                                }
                                e
                            })
                            .collect()
                    })
                    .collect();
                let phi = LinearMatrixY::from_rows(&ring, rows).unwrap();
                prop_assume!(phi.z_sequence().iter().all(|z| !z.is_zero()));
                let en = eagon_northcott(&phi).unwrap();
                en.complex.compose_zero_check().unwrap();
            }
        }
    }
}
