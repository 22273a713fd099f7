//! From a presentation matrix to the Rees algebra of the presented ideal.
//!
//! A height-two perfect ideal I in the x-subring comes as the maximal minors
//! of a p x (p - 1) matrix of x-linear forms. Writing each column as
//! [x] phi_k recovers an n x (p - 1) matrix phi of y-linear forms, and the
//! defining ideal of the Rees algebra of I (with y_j standing for the j-th
//! minor) is the residual ideal built from phi: the pairing sequence
//! together with the maximal minors of phi. The helpers here cover the
//! translation, the certificates for diagonals of the Rees algebra, and
//! direct dimension and membership computations in the powers of I for
//! cross-checking.

use serde::Serialize;

use crate::bipoly::{monomial_basis, Bidegree, BiPoly, Monomial, RingSpec, Var};
use crate::comb::binomial;
use crate::diagonal::{koszul_certificate, DiagonalSpec, KoszulCertificate, Verdict};
use crate::en::{eagon_northcott, poly_det, LinearMatrixY};
use crate::exactla::FieldMatrix;
use crate::field::Field;
use crate::freecomplex::ExactnessReport;
use crate::oracle::{IdealSpec, TorComputer};
use crate::{Error, Result};

/// A p x m matrix of x-linear forms, p being the number of y-variables of
/// the ring. For the Hilbert-Burch pipeline m = p - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationMatrix<F: Field> {
    ring: RingSpec<F>,
    cols: usize,
    entries: Vec<BiPoly<F>>, // row-major, ring.p x cols
}

impl<F: Field> PresentationMatrix<F> {
    pub fn new(
        ring: &RingSpec<F>,
        cols: usize,
        entries: Vec<BiPoly<F>>,
    ) -> Result<PresentationMatrix<F>> {
        let rows = ring.p;
        if cols == 0 {
            return Err(Error::Shape("presentation matrix with no columns".into()));
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
            if !e.is_zero() && e.bidegree() != Some(Bidegree::new(1, 0)) {
                return Err(Error::NotLinear(format!(
                    "entry ({},{}) = {e} is not a linear form in the x-variables",
                    idx / cols,
                    idx % cols
                )));
            }
        }
        Ok(PresentationMatrix {
            ring: ring.clone(),
            cols,
            entries,
        })
    }

    pub fn from_rows(
        ring: &RingSpec<F>,
        rows: Vec<Vec<BiPoly<F>>>,
    ) -> Result<PresentationMatrix<F>> {
        if rows.len() != ring.p {
            return Err(Error::Shape(format!(
                "expected {} rows to match the y-variable count, got {}",
                ring.p,
                rows.len()
            )));
        }
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        PresentationMatrix::new(ring, cols, rows.into_iter().flatten().collect())
    }

    pub fn ring(&self) -> &RingSpec<F> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.ring.p
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &BiPoly<F> {
        &self.entries[r * self.cols + c]
    }

    /// Rewrite each column from [x]-coordinates to [y]-coordinates: the
    /// n x m matrix phi with phi_{ik} = sum_j (coefficient of x_i in
    /// Phi_{jk}) y_j, the unique y-linear matrix with [y] Phi = [x] phi.
    /// The defining identity is verified entry by entry.
    pub fn transpose_to_phi(&self) -> Result<LinearMatrixY<F>> {
        let ring = &self.ring;
        let dims = ring.dims();
        let (n, p, m) = (ring.n, ring.p, self.cols);
        let mut rows: Vec<Vec<BiPoly<F>>> = vec![vec![BiPoly::zero(ring); m]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (k, slot) in row.iter_mut().enumerate() {
                let mut e = BiPoly::zero(ring);
                for j in 0..p {
                    let entry = self.entry(j, k);
                    if entry.is_zero() {
                        continue;
                    }
                    let coeff = entry
                        .coeff_of_variable(Var::X(i))?
                        .coeff(&Monomial::one(dims));
                    if !ring.field.is_zero(&coeff) {
                        e = e.add(
                            &BiPoly::var(ring, Var::Y(j))?.scale(&coeff),
                        )?;
                    }
                }
                *slot = e;
            }
        }
        let phi = LinearMatrixY::from_rows(ring, rows)?;
        // [y] Phi = [x] phi, column by column
        let z = phi.z_sequence();
        for (k, zk) in z.iter().enumerate() {
            let mut lhs = BiPoly::zero(ring);
            for j in 0..p {
                let yj = Monomial::var(dims, Var::Y(j));
                lhs = lhs.add(&self.entry(j, k).mul_monomial(&yj))?;
            }
            if &lhs != zk {
                return Err(Error::IdentityCheck(format!(
                    "column {}: [y] Phi = {lhs} but [x] phi = {zk}",
                    k + 1
                )));
            }
        }
        Ok(phi)
    }

    /// The signed maximal minors f_j = (-1)^(j+1) det(Phi with row j
    /// deleted) of a p x (p - 1) matrix. The syzygy identity [f] Phi = 0 is
    /// verified before returning.
    pub fn hilbert_burch_generators(&self) -> Result<Vec<BiPoly<F>>> {
        let p = self.rows();
        if self.cols != p - 1 {
            return Err(Error::Shape(format!(
                "row minors need a {p}x{} matrix, got {p}x{}",
                p - 1,
                self.cols
            )));
        }
        let cols: Vec<usize> = (0..self.cols).collect();
        let mut gens = Vec::with_capacity(p);
        for j in 0..p {
            let rows: Vec<usize> = (0..p).filter(|&r| r != j).collect();
            let det = poly_det(&self.ring, &rows, &cols, &|r, c| self.entry(r, c))?;
            gens.push(if j % 2 == 0 { det } else { det.neg() });
        }
        for k in 0..self.cols {
            let mut acc = BiPoly::zero(&self.ring);
            for (j, f) in gens.iter().enumerate() {
                acc = acc.add(&f.mul(self.entry(j, k))?)?;
            }
            if !acc.is_zero() {
                return Err(Error::IdentityCheck(format!(
                    "row minors are not a syzygy of column {}: got {acc}",
                    k + 1
                )));
            }
        }
        Ok(gens)
    }

    /// Check the shape and position hypotheses of the pipeline and collect
    /// the assumptions it cannot check. With a degree bound, also verify
    /// that the resolution of the minor quotient of the transposed matrix
    /// is exact through that total degree, as direct evidence for the
    /// genericity assumptions.
    pub fn validate_setup(&self, check_through: Option<i64>) -> Result<SetupReport> {
        let (n, p) = (self.ring.n, self.ring.p);
        if self.cols != p - 1 {
            return Err(Error::Shape(format!(
                "expected a {p}x{} presentation, got {p}x{}",
                p - 1,
                self.cols
            )));
        }
        if p <= n {
            return Err(Error::Hypothesis(format!(
                "need more presented generators than x-variables: p={p}, n={n}"
            )));
        }
        let phi = self.transpose_to_phi()?;
        if let Some(k) = phi.z_sequence().iter().position(BiPoly::is_zero) {
            return Err(Error::Hypothesis(format!(
                "column {} of the presentation vanishes against the x-variables",
                k + 1
            )));
        }
        let assumptions = vec![
            "the row minors of the presentation generate a height-two perfect ideal".to_string(),
            format!(
                "the maximal minors of the transposed {n}x{} matrix cut codimension {}",
                p - 1,
                p - 1 - n + 1
            ),
            "the pairing forms are a regular sequence on the minor quotient".to_string(),
        ];
        let exactness = match check_through {
            None => None,
            Some(d) => {
                let en = eagon_northcott(&phi)?;
                let positions: Vec<usize> = (1..en.complex.len()).collect();
                let report = en.complex.exactness_report(d, &positions)?;
                if let Some(h) = report.nonzero.first() {
                    return Err(Error::Hypothesis(format!(
                        "minor resolution has homology of dimension {} at position {} \
                         in bidegree {}",
                        h.dim, h.position, h.bidegree
                    )));
                }
                Some(report)
            }
        };
        Ok(SetupReport {
            n,
            p,
            cols: self.cols,
            assumptions,
            exactness,
        })
    }
}

/// What `validate_setup` checked and what it had to assume.
#[derive(Clone, Debug, Serialize)]
pub struct SetupReport {
    pub n: usize,
    pub p: usize,
    pub cols: usize,
    pub assumptions: Vec<String>,
    pub exactness: Option<ExactnessReport>,
}

/// The residual ideal of a matrix of y-linear forms: the pairing sequence
/// together with the signed maximal minors. Vanishing minors are dropped.
pub fn residual_ideal<F: Field>(phi: &LinearMatrixY<F>) -> Result<IdealSpec<F>> {
    let mut gens = phi.z_sequence();
    if let Some(k) = gens.iter().position(BiPoly::is_zero) {
        return Err(Error::Hypothesis(format!(
            "column {} of the matrix pairs to zero against the x-variables",
            k + 1
        )));
    }
    gens.extend(
        phi.signed_maximal_minors()?
            .into_iter()
            .map(|(_, d)| d)
            .filter(|d| !d.is_zero()),
    );
    IdealSpec::new(phi.ring(), gens)
}

/// Everything derived from one presentation matrix.
pub struct ReesModel<F: Field> {
    pub presentation: PresentationMatrix<F>,
    pub phi: LinearMatrixY<F>,
    pub generators: Vec<BiPoly<F>>,
    pub ideal: IdealSpec<F>,
    pub report: SetupReport,
}

pub fn rees_model<F: Field>(
    pres: &PresentationMatrix<F>,
    check_through: Option<i64>,
) -> Result<ReesModel<F>> {
    let report = pres.validate_setup(check_through)?;
    let phi = pres.transpose_to_phi()?;
    let generators = pres.hilbert_burch_generators()?;
    let ideal = residual_ideal(&phi)?;
    Ok(ReesModel {
        presentation: pres.clone(),
        phi,
        generators,
        ideal,
        report,
    })
}

/// Certificates for the (c, e) diagonal of the Rees algebra of a
/// height-two perfect ideal with p generators of degree p - 1 in n
/// x-variables. The diagonal has Krull dimension n.
#[derive(Clone, Debug, Serialize)]
pub struct ReesCertificates {
    pub dim: i64,
    pub cm: Verdict,
    pub cm_threshold: i64,
    pub koszul: KoszulCertificate,
}

pub fn rees_certificates(n: usize, p: usize, diag: DiagonalSpec) -> Result<ReesCertificates> {
    if p <= n {
        return Err(Error::Hypothesis(format!(
            "need more generators than x-variables: p={p}, n={n}"
        )));
    }
    let cm_threshold = (p as i64 - 1) * diag.e;
    let cm = if diag.c > cm_threshold || (diag.c == 1 && diag.e == 1) {
        Verdict::Certified
    } else {
        Verdict::Inconclusive {
            reason: format!(
                "c = {} is not above (p - 1) e = {cm_threshold} and (c, e) is not (1, 1)",
                diag.c
            ),
        }
    };
    let koszul = koszul_certificate(n, p - 1, diag)?;
    Ok(ReesCertificates {
        dim: n as i64,
        cm,
        cm_threshold,
        koszul,
    })
}

/// Upper bound for the regularity of the s-th power of the presented ideal:
/// s times the generator degree.
pub fn romer_regularity_bound(s: i64, p: usize) -> i64 {
    s * (p as i64 - 1)
}

/// One explicit way of writing a polynomial inside a power of the ideal:
/// a list of (generator multiset, monomial multiplier, coefficient) triples.
pub struct MembershipWitness<F: Field> {
    pub terms: Vec<(Vec<usize>, Monomial, F::Elem)>,
}

impl<F: Field> ReesModel<F> {
    pub fn certificates(&self, diag: DiagonalSpec) -> Result<ReesCertificates> {
        rees_certificates(self.ring().n, self.ring().p, diag)
    }

    pub fn ring(&self) -> &RingSpec<F> {
        self.presentation.ring()
    }

    /// All degree-s products of the generators, indexed by nondecreasing
    /// index tuples in lexicographic order. s = 0 gives the single empty
    /// product.
    pub fn power_products(&self, s: usize) -> Result<Vec<(Vec<usize>, BiPoly<F>)>> {
        let ring = self.ring();
        let p = self.generators.len();
        let mut out = Vec::with_capacity(binomial((p + s - 1) as u64, s as u64) as usize);
        let mut stack: Vec<(Vec<usize>, BiPoly<F>)> =
            vec![(Vec::new(), BiPoly::constant(ring, ring.field.one()))];
        while let Some((idx, prod)) = stack.pop() {
            if idx.len() == s {
                out.push((idx, prod));
                continue;
            }
            let start = idx.last().copied().unwrap_or(0);
            for j in (start..p).rev() {
                let mut next = idx.clone();
                next.push(j);
                stack.push((next, prod.mul(&self.generators[j])?));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    fn power_ideal(&self, s: usize) -> Result<IdealSpec<F>> {
        let gens: Vec<BiPoly<F>> = self
            .power_products(s)?
            .into_iter()
            .map(|(_, g)| g)
            .filter(|g| !g.is_zero())
            .collect();
        if gens.is_empty() {
            return Err(Error::Hypothesis(format!(
                "every degree-{s} product of the generators vanishes"
            )));
        }
        IdealSpec::new(self.ring(), gens)
    }

    /// Dimension of the degree-t piece of the s-th power of the ideal, as a
    /// subspace of the x-polynomials of degree t.
    pub fn power_piece_dim(&self, s: usize, t: i64) -> Result<u64> {
        let ambient = crate::bipoly::bidegree_piece_dim(self.ring().dims(), Bidegree::new(t, 0));
        let quotient =
            crate::oracle::quotient_piece_dim(&self.power_ideal(s)?, Bidegree::new(t, 0))?;
        Ok(ambient - quotient)
    }

    /// Regularity of the s-th power, from the x-graded Betti numbers of its
    /// quotient over the window (i <= i_max, t <= t_max). Exact when the
    /// window covers the whole resolution.
    pub fn power_regularity(&self, s: usize, i_max: usize, t_max: i64) -> Result<i64> {
        if s == 0 {
            return Err(Error::OutOfRange(
                "regularity of the zeroth power is not defined here".into(),
            ));
        }
        let tor = TorComputer::x_only(self.power_ideal(s)?, t_max)?;
        let table = tor.betti_window(i_max)?;
        Ok(table.reg_xy().a + 1)
    }

    /// Decide whether an x-homogeneous polynomial lies in the degree-t
    /// piece of the s-th power, and if so return one explicit combination.
    /// The witness is verified by recomputing the sum before returning.
    pub fn power_membership(
        &self,
        s: usize,
        target: &BiPoly<F>,
    ) -> Result<Option<MembershipWitness<F>>> {
        let ring = self.ring();
        ring.ensure_same(target.ring())?;
        let d = target.bidegree().ok_or_else(|| {
            Error::NotBihomogeneous(format!("membership target {target} is not homogeneous"))
        })?;
        if d.b != 0 {
            return Err(Error::Hypothesis(format!(
                "membership target must have y-degree zero, got {d}"
            )));
        }
        let dims = ring.dims();
        let ambient = monomial_basis(dims, d);
        let index: std::collections::BTreeMap<Monomial, usize> = ambient
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let products = self.power_products(s)?;
        let mut columns: Vec<(Vec<usize>, Monomial)> = Vec::new();
        let mut data: Vec<Vec<F::Elem>> = Vec::new();
        for (idx, g) in &products {
            if g.is_zero() {
                continue;
            }
            let dg = g.bidegree().expect("products of homogeneous forms");
            for mu in monomial_basis(dims, d - dg) {
                data.push(g.mul_monomial(&mu).dense_coeffs(&index, ambient.len())?);
                columns.push((idx.clone(), mu));
            }
        }
        let mut mat = FieldMatrix::zeros(ring.field.clone(), ambient.len(), columns.len());
        for (c, col) in data.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                if !ring.field.is_zero(v) {
                    mat.set(r, c, v.clone());
                }
            }
        }
        let rhs = target.dense_coeffs(&index, ambient.len())?;
        let Some(sol) = mat.solve(&rhs)? else {
            return Ok(None);
        };
        let mut terms = Vec::new();
        let mut check = BiPoly::zero(ring);
        for (c, coeff) in sol.into_iter().enumerate() {
            if ring.field.is_zero(&coeff) {
                continue;
            }
            let (idx, mu) = &columns[c];
            let g = &products.iter().find(|(i, _)| i == idx).expect("indexed").1;
            check = check.add(&g.mul_monomial(mu).scale(&coeff))?;
            terms.push((idx.clone(), mu.clone(), coeff));
        }
        if &check != target {
            return Err(Error::IdentityCheck(format!(
                "witness recombination gives {check}, expected {target}"
            )));
        }
        Ok(Some(MembershipWitness { terms }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, DEFAULT_PRIME};

    fn fp_ring(n: usize, p: usize) -> RingSpec<Fp> {
        RingSpec::new(n, p, Fp::new(DEFAULT_PRIME).unwrap()).unwrap()
    }

    fn pres(ring: &RingSpec<Fp>, rows: &[&[&str]]) -> PresentationMatrix<Fp> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| BiPoly::parse(ring, s).unwrap()).collect())
            .collect();
        PresentationMatrix::from_rows(ring, parsed).unwrap()
    }

    /// The 5 x 4 presentation whose transposed matrix is the running
    /// example: column k lists the x-coordinates of the k-th column of the
    /// catalecticant.
    fn running_presentation(ring: &RingSpec<Fp>) -> PresentationMatrix<Fp> {
        pres(
            ring,
            &[
                &["x1", "0", "0", "0"],
                &["x2", "x1", "0", "0"],
                &["x3", "x2", "x1", "0"],
                &["0", "x3", "x2", "x1"],
                &["0", "0", "x3", "x2"],
            ],
        )
    }

    #[test]
    fn transpose_recovers_the_running_example() {
        let ring = fp_ring(3, 5);
        let phi = running_presentation(&ring).transpose_to_phi().unwrap();
        let expect = [
            ["y1", "y2", "y3", "y4"],
            ["y2", "y3", "y4", "y5"],
            ["y3", "y4", "y5", "0"],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (k, s) in row.iter().enumerate() {
                assert_eq!(phi.entry(i, k), &BiPoly::parse(&ring, s).unwrap(), "({i},{k})");
            }
        }
    }

    #[test]
    fn transpose_works_for_non_square_shapes() {
        // two generators presented on two disjoint variables each
        let ring = fp_ring(2, 4);
        let m = pres(
            &ring,
            &[&["x1", "0"], &["x2", "0"], &["0", "x1"], &["0", "x2"]],
        );
        let phi = m.transpose_to_phi().unwrap();
        let expect = [["y1", "y3"], ["y2", "y4"]];
        for (i, row) in expect.iter().enumerate() {
            for (k, s) in row.iter().enumerate() {
                assert_eq!(phi.entry(i, k), &BiPoly::parse(&ring, s).unwrap());
            }
        }
    }

    #[test]
    fn two_generator_row_minors() {
        let ring = fp_ring(2, 2);
        let m = pres(&ring, &[&["x1"], &["x2"]]);
        let f = m.hilbert_burch_generators().unwrap();
        assert_eq!(f[0], BiPoly::parse(&ring, "x2").unwrap());
        assert_eq!(f[1], BiPoly::parse(&ring, "-x1").unwrap());
    }

    #[test]
    fn running_example_generators_are_quartics_in_the_syzygy() {
        let ring = fp_ring(3, 5);
        let f = running_presentation(&ring).hilbert_burch_generators().unwrap();
        assert_eq!(f.len(), 5);
        for fi in &f {
            assert_eq!(fi.bidegree(), Some(Bidegree::new(4, 0)));
        }
    }

    #[test]
    fn shape_and_linearity_are_enforced() {
        let ring = fp_ring(2, 3);
        // a y-linear entry is rejected
        let bad = vec![
            BiPoly::parse(&ring, "x1").unwrap(),
            BiPoly::parse(&ring, "y1").unwrap(),
            BiPoly::zero(&ring),
            BiPoly::parse(&ring, "x2").unwrap(),
            BiPoly::zero(&ring),
            BiPoly::parse(&ring, "x1").unwrap(),
        ];
        assert!(PresentationMatrix::new(&ring, 2, bad).is_err());
        // wrong row count
        let rows = vec![vec![BiPoly::parse(&ring, "x1").unwrap()]; 2];
        assert!(PresentationMatrix::from_rows(&ring, rows).is_err());
        // row minors need p x (p-1)
        let square = pres(&ring, &[&["x1"], &["x2"], &["x1"]]);
        assert!(square.hilbert_burch_generators().is_err());
    }

    #[test]
    fn setup_validation_gates_the_pipeline() {
        let ring = fp_ring(3, 5);
        let report = running_presentation(&ring).validate_setup(Some(5)).unwrap();
        assert_eq!((report.n, report.p, report.cols), (3, 5, 4));
        assert!(!report.assumptions.is_empty());
        assert!(report.exactness.unwrap().is_exact_in_window());
        // p <= n is a hard error
        let small = fp_ring(2, 2);
        let m = pres(&small, &[&["x1"], &["x2"]]);
        assert!(m.validate_setup(None).is_err());
    }

    #[test]
    fn model_collects_the_residual_ideal() {
        let ring = fp_ring(3, 5);
        let model = rees_model(&running_presentation(&ring), None).unwrap();
        // four pairing forms plus the four maximal minors
        assert_eq!(model.ideal.gens().len(), 8);
        assert_eq!(model.generators.len(), 5);
        assert_eq!(model.phi.cols(), 4);
    }

    #[test]
    fn certificates_for_the_running_example() {
        let ring = fp_ring(3, 5);
        let model = rees_model(&running_presentation(&ring), None).unwrap();
        let c51 = model.certificates(DiagonalSpec::new(5, 1).unwrap()).unwrap();
        assert!(c51.cm.is_certified());
        assert_eq!(c51.dim, 3);
        let c11 = model.certificates(DiagonalSpec::new(1, 1).unwrap()).unwrap();
        assert!(c11.cm.is_certified());
        let c12 = model.certificates(DiagonalSpec::new(1, 2).unwrap()).unwrap();
        assert!(c12.koszul.verdict.is_certified());
        assert!(!c12.cm.is_certified());
    }

    #[test]
    fn power_piece_dimensions() {
        let ring = fp_ring(3, 5);
        let model = rees_model(&running_presentation(&ring), None).unwrap();
        // the five quartics are linearly independent
        assert_eq!(model.power_piece_dim(1, 4).unwrap(), 5);
        // and nothing lives below the generator degree
        assert_eq!(model.power_piece_dim(1, 3).unwrap(), 0);
        // the zeroth power is the whole ring
        assert_eq!(model.power_piece_dim(0, 2).unwrap(), 6);
    }

    #[test]
    fn regularity_of_the_first_power() {
        let ring = fp_ring(3, 5);
        let model = rees_model(&running_presentation(&ring), None).unwrap();
        let reg = model.power_regularity(1, 3, 8).unwrap();
        assert_eq!(reg, 4);
        assert!(reg <= romer_regularity_bound(1, 5));
    }

    #[test]
    fn romer_bound_values() {
        assert_eq!(romer_regularity_bound(1, 5), 4);
        assert_eq!(romer_regularity_bound(2, 5), 8);
        assert_eq!(romer_regularity_bound(0, 5), 0);
    }

    #[test]
    fn membership_witnesses_in_the_running_example() {
        let ring = fp_ring(3, 5);
        let model = rees_model(&running_presentation(&ring), None).unwrap();
        for target in ["x1^4", "x2^4 - 3*x1*x2^2*x3 + x1^2*x3^2"] {
            let t = BiPoly::parse(&ring, target).unwrap();
            let witness = model
                .power_membership(1, &t)
                .unwrap()
                .unwrap_or_else(|| panic!("{target} should be in the ideal"));
            assert!(!witness.terms.is_empty());
        }
        // nothing of degree three is in an ideal generated by quartics
        let low = BiPoly::parse(&ring, "x1^3").unwrap();
        assert!(model.power_membership(1, &low).unwrap().is_none());
    }

    #[test]
    fn power_products_enumerate_multisets() {
        let ring = fp_ring(3, 5);
        let model = rees_model(&running_presentation(&ring), None).unwrap();
        let prods = model.power_products(2).unwrap();
        assert_eq!(prods.len(), 15);
        assert_eq!(prods[0].0, vec![0, 0]);
        assert_eq!(prods.last().unwrap().0, vec![4, 4]);
        for (_, g) in &prods {
            assert_eq!(g.bidegree(), Some(Bidegree::new(8, 0)));
        }
    }
}
