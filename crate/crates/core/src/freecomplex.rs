//! Complexes of shifted free modules with bihomogeneous differentials.
//!
//! A complex is stored as a list of terms F_0, F_1, .., F_L (each a direct
//! sum of shifted copies of the ring, shift (a,b) meaning S(-a,-b)) together
//! with the differentials d_i: F_i -> F_{i-1}. The module provides the Koszul
//! complex of a bihomogeneous sequence, x-graded strands, graded duals over
//! the y-subring, shift twists, composition checks, and finite-dimensional
//! bidegree slices for homology computations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bipoly::{bidegree_piece_dim, monomial_basis, Bidegree, BiPoly, Monomial, RingSpec};
use crate::comb::k_subsets;
use crate::exactla::{homology_dim, FieldMatrix};
use crate::field::Field;
use crate::{Error, Result};

/// A finite direct sum of shifted copies of the ring. The shift list is the
/// list of generator bidegrees: shifts[c] = (a,b) stands for S(-a,-b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedFreeModule {
    pub shifts: Vec<Bidegree>,
}

impl ShiftedFreeModule {
    pub fn new(shifts: Vec<Bidegree>) -> ShiftedFreeModule {
        ShiftedFreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    /// Dimension of the bidegree-d piece over the base field.
    pub fn piece_dim(&self, dims: crate::bipoly::RingDims, d: Bidegree) -> u64 {
        self.shifts
            .iter()
            .map(|s| bidegree_piece_dim(dims, d - *s))
            .sum()
    }
}

/// A matrix of bihomogeneous polynomials representing a degree-zero map
/// source -> target of shifted free modules: entry (r, c) must be zero or
/// bihomogeneous of bidegree source.shifts[c] - target.shifts[r].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    ring: RingSpec<F>,
    pub source: ShiftedFreeModule,
    pub target: ShiftedFreeModule,
    entries: Vec<BiPoly<F>>, // row-major, target.rank() x source.rank()
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(
        ring: &RingSpec<F>,
        source: ShiftedFreeModule,
        target: ShiftedFreeModule,
        entries: Vec<BiPoly<F>>,
    ) -> Result<PolyMatrix<F>> {
        let (rows, cols) = (target.rank(), source.rank());
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {rows}x{cols} = {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for (idx, e) in entries.iter().enumerate() {
            ring.ensure_same(e.ring())?;
            let (r, c) = (idx / cols, idx % cols);
            let want = source.shifts[c] - target.shifts[r];
            e.expect_bidegree(want).map_err(|_| {
                Error::NotBihomogeneous(format!(
                    "entry ({r},{c}) should have bidegree {want}, got {e}"
                ))
            })?;
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            source,
            target,
            entries,
        })
    }

    pub fn ring(&self) -> &RingSpec<F> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, r: usize, c: usize) -> &BiPoly<F> {
        &self.entries[r * self.cols() + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Composition self . rhs for rhs: A -> B, self: B -> C.
    pub fn compose(&self, rhs: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
        if self.source != rhs.target {
            return Err(Error::Shape(
                "composition shift mismatch between source and target".into(),
            ));
        }
        let mut entries = Vec::with_capacity(self.rows() * rhs.cols());
        for r in 0..self.rows() {
            for c in 0..rhs.cols() {
                let mut acc = BiPoly::zero(&self.ring);
                for k in 0..self.cols() {
                    let prod = self.entry(r, k).mul(rhs.entry(k, c))?;
                    acc = acc.add(&prod)?;
                }
                entries.push(acc);
            }
        }
        PolyMatrix::new(
            &self.ring,
            rhs.source.clone(),
            self.target.clone(),
            entries,
        )
    }

    /// Interpret a matrix whose entries are all constants as a scalar matrix.
    pub fn constant_matrix(&self) -> Result<FieldMatrix<F>> {
        let dims = self.ring.dims();
        let one = Monomial::one(dims);
        let mut out = FieldMatrix::zeros(self.ring.field.clone(), self.rows(), self.cols());
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                let e = self.entry(r, c);
                if e.is_zero() {
                    continue;
                }
                if e.bidegree() != Some(Bidegree::new(0, 0)) {
                    return Err(Error::Shape(format!(
                        "entry ({r},{c}) = {e} is not a constant"
                    )));
                }
                out.set(r, c, e.coeff(&one));
            }
        }
        Ok(out)
    }
}

/// The ordered monomial basis of the bidegree-d piece of a shifted free
/// module, one block per summand.
pub struct PieceLayout {
    pub offsets: Vec<usize>,
    pub dim: usize,
    pub blocks: Vec<Vec<Monomial>>,
    index: Vec<BTreeMap<Monomial, usize>>,
}

impl PieceLayout {
    pub fn new(
        dims: crate::bipoly::RingDims,
        module: &ShiftedFreeModule,
        d: Bidegree,
    ) -> PieceLayout {
        let mut offsets = Vec::with_capacity(module.rank());
        let mut blocks = Vec::with_capacity(module.rank());
        let mut index = Vec::with_capacity(module.rank());
        let mut dim = 0usize;
        for s in &module.shifts {
            offsets.push(dim);
            let basis = monomial_basis(dims, d - *s);
            let map: BTreeMap<Monomial, usize> = basis
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            dim += basis.len();
            blocks.push(basis);
            index.push(map);
        }
        PieceLayout {
            offsets,
            dim,
            blocks,
            index,
        }
    }

    pub fn position(&self, summand: usize, m: &Monomial) -> Option<usize> {
        self.index[summand].get(m).map(|i| self.offsets[summand] + i)
    }
}

/// A chain complex F_len-1 -> ... -> F_1 -> F_0 of shifted free modules.
/// `diffs[k]` is the differential F_{k+1} -> F_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplexDescriptor<F: Field> {
    ring: RingSpec<F>,
    terms: Vec<ShiftedFreeModule>,
    diffs: Vec<PolyMatrix<F>>,
}

/// One nonzero homology piece found by `exactness_report`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyEntry {
    pub position: usize,
    pub bidegree: Bidegree,
    pub dim: usize,
}

/// Homology survey of a complex over a finite degree window. Only certifies
/// the bidegrees it actually checked; it says nothing beyond the window.
#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub max_total_degree: i64,
    pub positions: Vec<usize>,
    pub bidegrees_checked: usize,
    pub nonzero: Vec<HomologyEntry>,
}

impl ExactnessReport {
    pub fn is_exact_in_window(&self) -> bool {
        self.nonzero.is_empty()
    }

    pub fn dim_at(&self, position: usize, d: Bidegree) -> usize {
        self.nonzero
            .iter()
            .find(|e| e.position == position && e.bidegree == d)
            .map_or(0, |e| e.dim)
    }
}

impl<F: Field> FreeComplexDescriptor<F> {
    pub fn new(
        ring: &RingSpec<F>,
        terms: Vec<ShiftedFreeModule>,
        diffs: Vec<PolyMatrix<F>>,
    ) -> Result<FreeComplexDescriptor<F>> {
        if terms.is_empty() && !diffs.is_empty() {
            return Err(Error::Shape("differentials without terms".into()));
        }
        if !terms.is_empty() && diffs.len() + 1 != terms.len() {
            return Err(Error::Shape(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source != terms[k + 1] || d.target != terms[k] {
                return Err(Error::Shape(format!(
                    "differential {} does not match the adjacent terms",
                    k + 1
                )));
            }
        }
        Ok(FreeComplexDescriptor {
            ring: ring.clone(),
            terms,
            diffs,
        })
    }

    pub fn ring(&self) -> &RingSpec<F> {
        &self.ring
    }

    /// Number of terms (the complex occupies homological positions
    /// 0 .. len-1).
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, i: usize) -> &ShiftedFreeModule {
        &self.terms[i]
    }

    pub fn terms(&self) -> &[ShiftedFreeModule] {
        &self.terms
    }

    /// The differential F_i -> F_{i-1}; None outside 1..len-1.
    pub fn differential(&self, i: usize) -> Option<&PolyMatrix<F>> {
        if i == 0 {
            None
        } else {
            self.diffs.get(i - 1)
        }
    }

    pub fn is_zero_complex(&self) -> bool {
        self.terms.iter().all(|t| t.rank() == 0)
    }

    /// Check d_i . d_{i+1} = 0 for all i; Err carries the first failing i.
    pub fn compose_zero_check(&self) -> Result<()> {
        for i in 1..self.diffs.len() {
            let left = &self.diffs[i - 1];
            let right = &self.diffs[i];
            if !left.compose(right)?.is_zero() {
                return Err(Error::ComposeNonzero { position: i });
            }
        }
        Ok(())
    }

    /// The Koszul complex K(seq): term k is the k-th exterior power with
    /// basis e_T over k-subsets T in lexicographic order, shifted by the sum
    /// of the degrees of the sequence entries in T, with
    /// d(e_T) = sum_j (-1)^(j-1) seq[t_j] e_(T minus t_j).
    pub fn koszul(ring: &RingSpec<F>, seq: &[BiPoly<F>]) -> Result<FreeComplexDescriptor<F>> {
        if seq.is_empty() {
            return Err(Error::Shape("Koszul complex of an empty sequence".into()));
        }
        let m = seq.len();
        let mut degrees = Vec::with_capacity(m);
        for (i, f) in seq.iter().enumerate() {
            ring.ensure_same(f.ring())?;
            let d = f.bidegree().ok_or_else(|| {
                Error::NotBihomogeneous(format!(
                    "Koszul entry {} must be bihomogeneous and nonzero, got {f}",
                    i + 1
                ))
            })?;
            degrees.push(d);
        }

        let mut terms = Vec::with_capacity(m + 1);
        let mut subsets_per_k = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let subs = k_subsets(m, k);
            let shifts = subs
                .iter()
                .map(|t| {
                    t.iter()
                        .fold(Bidegree::new(0, 0), |acc, &i| acc + degrees[i])
                })
                .collect();
            terms.push(ShiftedFreeModule::new(shifts));
            subsets_per_k.push(subs);
        }

        let mut diffs = Vec::with_capacity(m);
        for k in 1..=m {
            let src_subs = &subsets_per_k[k];
            let tgt_subs = &subsets_per_k[k - 1];
            let tgt_pos: BTreeMap<&[usize], usize> = tgt_subs
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect();
            let (rows, cols) = (tgt_subs.len(), src_subs.len());
            let mut entries = vec![BiPoly::zero(ring); rows * cols];
            for (c, t) in src_subs.iter().enumerate() {
                for (j, &tj) in t.iter().enumerate() {
                    let mut rest = t.clone();
                    rest.remove(j);
                    let r = tgt_pos[rest.as_slice()];
                    let signed = if j % 2 == 0 {
                        seq[tj].clone()
                    } else {
                        seq[tj].neg()
                    };
                    entries[r * cols + c] = entries[r * cols + c].add(&signed)?;
                }
            }
            diffs.push(PolyMatrix::new(
                ring,
                terms[k].clone(),
                terms[k - 1].clone(),
                entries,
            )?);
        }
        FreeComplexDescriptor::new(ring, terms, diffs)
    }

    /// The d-th x-graded strand: a complex of free modules over the
    /// y-subring. Requires every nonzero differential entry to have x-degree
    /// 0 or 1. Summands of the k-th strand term are pairs (original summand
    /// c, x-monomial of degree d - a_c), in that lexicographic order; each
    /// has shift (0, b_c). Trailing zero terms are trimmed.
    pub fn x_strand(&self, d: i64) -> Result<FreeComplexDescriptor<F>> {
        Ok(self.x_strand_labeled(d)?.0)
    }

    /// `x_strand` plus, per strand term, the labels (summand, x-monomial)
    /// of its summands.
    #[allow(clippy::type_complexity)]
    pub fn x_strand_labeled(
        &self,
        d: i64,
    ) -> Result<(FreeComplexDescriptor<F>, Vec<Vec<(usize, Monomial)>>)> {
        let dims = self.ring.dims();
        for (k, diff) in self.diffs.iter().enumerate() {
            for r in 0..diff.rows() {
                for c in 0..diff.cols() {
                    let e = diff.entry(r, c);
                    if let Some(bd) = e.bidegree() {
                        if bd.a != 0 && bd.a != 1 {
                            return Err(Error::Shape(format!(
                                "x-degree of entries must be 0 or 1 for strand extraction; \
                                 differential {} entry ({r},{c}) has bidegree {bd}",
                                k + 1
                            )));
                        }
                    }
                }
            }
        }

        // per original term: labels, shifts of the strand summands
        let mut labels: Vec<Vec<(usize, Monomial)>> = Vec::with_capacity(self.terms.len());
        let mut strand_terms: Vec<ShiftedFreeModule> = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut lab = Vec::new();
            let mut shifts = Vec::new();
            for (c, s) in t.shifts.iter().enumerate() {
                for mu in monomial_basis(dims, Bidegree::new(d - s.a, 0)) {
                    lab.push((c, mu));
                    shifts.push(Bidegree::new(0, s.b));
                }
            }
            labels.push(lab);
            strand_terms.push(ShiftedFreeModule::new(shifts));
        }

        let mut strand_diffs = Vec::with_capacity(self.diffs.len());
        for (k, diff) in self.diffs.iter().enumerate() {
            let src_lab = &labels[k + 1];
            let tgt_lab = &labels[k];
            let tgt_pos: BTreeMap<(usize, &Monomial), usize> = tgt_lab
                .iter()
                .enumerate()
                .map(|(i, (c, m))| ((*c, m), i))
                .collect();
            let (rows, cols) = (tgt_lab.len(), src_lab.len());
            let mut entries = vec![BiPoly::zero(&self.ring); rows * cols];
            // group every entry by its x-part once
            for r in 0..diff.rows() {
                for c in 0..diff.cols() {
                    let e = diff.entry(r, c);
                    if e.is_zero() {
                        continue;
                    }
                    for (nu, h) in e.split_by_x_part() {
                        for (col, (cs, mu)) in src_lab.iter().enumerate() {
                            if *cs != c {
                                continue;
                            }
                            let target_mono = mu.mul(&nu.x_part());
                            if let Some(&row) = tgt_pos.get(&(r, &target_mono)) {
                                entries[row * cols + col] =
                                    entries[row * cols + col].add(&h)?;
                            }
                        }
                    }
                }
            }
            strand_diffs.push(PolyMatrix::new(
                &self.ring,
                strand_terms[k + 1].clone(),
                strand_terms[k].clone(),
                entries,
            )?);
        }

        // trim trailing zero terms
        while strand_terms
            .last()
            .is_some_and(|t| t.rank() == 0)
        {
            strand_terms.pop();
            strand_diffs.pop();
            labels.pop();
        }
        if strand_terms.iter().all(|t| t.rank() == 0) {
            strand_terms.clear();
            strand_diffs.clear();
            labels.clear();
        }

        let cx = FreeComplexDescriptor::new(&self.ring, strand_terms, strand_diffs)?;
        Ok((cx, labels))
    }

    /// Graded dual over the y-subring of a complex of y-only free modules:
    /// arrows reverse, matrices transpose, shifts negate. The term at new
    /// position j is the dual of the term at old position L - j.
    pub fn dualize_y(&self) -> Result<FreeComplexDescriptor<F>> {
        for t in &self.terms {
            for s in &t.shifts {
                if s.a != 0 {
                    return Err(Error::Shape(format!(
                        "dualize_y needs a complex over the y-subring; found x-shift in {s}"
                    )));
                }
            }
        }
        if self.terms.is_empty() {
            return FreeComplexDescriptor::new(&self.ring, Vec::new(), Vec::new());
        }
        let dual_module = |m: &ShiftedFreeModule| {
            ShiftedFreeModule::new(m.shifts.iter().map(|s| -*s).collect())
        };
        let terms: Vec<ShiftedFreeModule> =
            self.terms.iter().rev().map(dual_module).collect();
        let mut diffs = Vec::with_capacity(self.diffs.len());
        for old in self.diffs.iter().rev() {
            // (d: F_k -> F_{k-1}) dualizes to d*: F_{k-1}* -> F_k*
            let src = dual_module(&old.target);
            let tgt = dual_module(&old.source);
            let (rows, cols) = (tgt.rank(), src.rank());
            let mut entries = Vec::with_capacity(rows * cols);
            for r in 0..rows {
                for c in 0..cols {
                    entries.push(old.entry(c, r).clone());
                }
            }
            diffs.push(PolyMatrix::new(&self.ring, src, tgt, entries)?);
        }
        FreeComplexDescriptor::new(&self.ring, terms, diffs)
    }

    /// Add t to every generator bidegree (tensoring with S(-t)). The
    /// differentials are unchanged.
    pub fn twist(&self, t: Bidegree) -> FreeComplexDescriptor<F> {
        let twist_module = |m: &ShiftedFreeModule| {
            ShiftedFreeModule::new(m.shifts.iter().map(|s| *s + t).collect())
        };
        let terms = self.terms.iter().map(twist_module).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|d| PolyMatrix {
                ring: d.ring.clone(),
                source: twist_module(&d.source),
                target: twist_module(&d.target),
                entries: d.entries.clone(),
            })
            .collect();
        FreeComplexDescriptor {
            ring: self.ring.clone(),
            terms,
            diffs,
        }
    }

    /// The finite-dimensional bidegree-d slice of the differential
    /// F_i -> F_{i-1}. Out-of-range positions give the appropriate zero maps.
    pub fn slice_differential(&self, i: usize, d: Bidegree) -> FieldMatrix<F> {
        let dims = self.ring.dims();
        let field = self.ring.field.clone();
        let dim_of = |pos: usize| -> usize {
            self.terms
                .get(pos)
                .map_or(0, |t| PieceLayout::new(dims, t, d).dim)
        };
        if i == 0 || i >= self.terms.len() {
            // zero map out of F_0, or a map from a zero module
            let rows = if i == 0 { 0 } else { dim_of(i - 1) };
            let cols = if i == 0 { dim_of(0) } else { 0 };
            return FieldMatrix::zeros(field, rows, cols);
        }
        let diff = &self.diffs[i - 1];
        let src = PieceLayout::new(dims, &diff.source, d);
        let tgt = PieceLayout::new(dims, &diff.target, d);
        let mut out = FieldMatrix::zeros(field.clone(), tgt.dim, src.dim);
        for c in 0..diff.cols() {
            for (b, mu) in src.blocks[c].iter().enumerate() {
                let col = src.offsets[c] + b;
                for r in 0..diff.rows() {
                    let e = diff.entry(r, c);
                    for (t, coef) in e.terms() {
                        if let Some(row) = tgt.position(r, &t.mul(mu)) {
                            let cur = out.get(row, col).clone();
                            out.set(row, col, field.add(&cur, coef));
                        }
                    }
                }
            }
        }
        out
    }

    /// Dimension of the homology of the bidegree-d slice at one position.
    pub fn slice_homology(&self, position: usize, d: Bidegree) -> Result<usize> {
        let a = self.slice_differential(position, d);
        let b = self.slice_differential(position + 1, d);
        homology_dim(&a, &b).map_err(|e| match e {
            Error::ComposeNonzero { .. } => Error::ComposeNonzero { position },
            other => other,
        })
    }

    /// Survey homology at the given positions over all bidegrees of total
    /// degree <= max_total_degree. When the complex only lives in one of the
    /// two gradings, only that axis is swept (slices along the inert grading
    /// are free multiples of the swept ones).
    pub fn exactness_report(
        &self,
        max_total_degree: i64,
        positions: &[usize],
    ) -> Result<ExactnessReport> {
        let uses_x = self.grading_in_use(|d| d.a);
        let uses_y = self.grading_in_use(|d| d.b);
        let mut degrees = Vec::new();
        for t in 0..=max_total_degree.max(0) {
            match (uses_x, uses_y) {
                (true, false) => degrees.push(Bidegree::new(t, 0)),
                (false, _) => degrees.push(Bidegree::new(0, t)),
                (true, true) => {
                    for a in 0..=t {
                        degrees.push(Bidegree::new(a, t - a));
                    }
                }
            }
        }
        let mut nonzero = Vec::new();
        for d in &degrees {
            for &pos in positions {
                let h = self.slice_homology(pos, *d)?;
                if h > 0 {
                    nonzero.push(HomologyEntry {
                        position: pos,
                        bidegree: *d,
                        dim: h,
                    });
                }
            }
        }
        Ok(ExactnessReport {
            max_total_degree,
            positions: positions.to_vec(),
            bidegrees_checked: degrees.len(),
            nonzero,
        })
    }

    fn grading_in_use(&self, axis: impl Fn(Bidegree) -> i64) -> bool {
        let shift_active = self
            .terms
            .iter()
            .flat_map(|t| &t.shifts)
            .any(|s| axis(*s) != 0);
        let entry_active = self.diffs.iter().any(|m| {
            m.entries
                .iter()
                .any(|e| e.bidegree().is_some_and(|d| axis(d) != 0))
        });
        shift_active || entry_active
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::Var;
    use crate::field::{Fp, DEFAULT_PRIME};

    fn fp_ring(n: usize, p: usize) -> RingSpec<Fp> {
        RingSpec::new(n, p, Fp::new(DEFAULT_PRIME).unwrap()).unwrap()
    }

    fn poly(ring: &RingSpec<Fp>, s: &str) -> BiPoly<Fp> {
        BiPoly::parse(ring, s).unwrap()
    }

    fn x_sequence(ring: &RingSpec<Fp>) -> Vec<BiPoly<Fp>> {
        (0..ring.n)
            .map(|i| BiPoly::var(ring, Var::X(i)).unwrap())
            .collect()
    }

    #[test]
    fn koszul_terms_have_binomial_ranks_and_summed_shifts() {
        let ring = fp_ring(3, 5);
        let z = vec![
            poly(&ring, "x1*y1 + x2*y2 + x3*y3"),
            poly(&ring, "x1*y2 + x2*y3 + x3*y4"),
            poly(&ring, "x1*y3 + x2*y4 + x3*y5"),
            poly(&ring, "x1*y4 + x2*y5"),
        ];
        let k = FreeComplexDescriptor::koszul(&ring, &z).unwrap();
        assert_eq!(k.len(), 5);
        for (i, expected) in [1usize, 4, 6, 4, 1].iter().enumerate() {
            assert_eq!(k.term(i).rank(), *expected);
            for s in &k.term(i).shifts {
                assert_eq!(*s, Bidegree::new(i as i64, i as i64));
            }
        }
        k.compose_zero_check().unwrap();
    }

    #[test]
    fn koszul_differential_signs_match_convention() {
        let ring = fp_ring(2, 1);
        let k = FreeComplexDescriptor::koszul(&ring, &x_sequence(&ring)).unwrap();
        let d1 = k.differential(1).unwrap();
        assert_eq!(d1.entry(0, 0), &poly(&ring, "x1"));
        assert_eq!(d1.entry(0, 1), &poly(&ring, "x2"));
        let d2 = k.differential(2).unwrap();
        // d(e_{12}) = x1 e_2 - x2 e_1
        assert_eq!(d2.entry(0, 0), &poly(&ring, "-x2"));
        assert_eq!(d2.entry(1, 0), &poly(&ring, "x1"));
    }

    #[test]
    fn koszul_on_x_is_exact_in_positive_positions() {
        for n in 1..=4usize {
            let ring = fp_ring(n, 1);
            let k = FreeComplexDescriptor::koszul(&ring, &x_sequence(&ring)).unwrap();
            let positions: Vec<usize> = (1..=n).collect();
            let report = k.exactness_report(6, &positions).unwrap();
            assert!(report.is_exact_in_window(), "n={n}: {:?}", report.nonzero);
        }
    }

    #[test]
    fn non_regular_sequence_shows_homology_at_position_one() {
        // (x1 x2, x1 x3): the syzygy x3 (x1 x2) - x2 (x1 x3) = 0 is not a
        // Koszul syzygy, so H_1 is nonzero exactly in degree (3, 0).
        let ring = fp_ring(3, 1);
        let seq = vec![poly(&ring, "x1*x2"), poly(&ring, "x1*x3")];
        let k = FreeComplexDescriptor::koszul(&ring, &seq).unwrap();
        let report = k.exactness_report(3, &[1, 2]).unwrap();
        assert_eq!(report.nonzero.len(), 1);
        assert_eq!(report.dim_at(1, Bidegree::new(3, 0)), 1);
    }

    #[test]
    fn strand_of_koszul_on_x_at_degree_one() {
        let ring = fp_ring(2, 1);
        let k = FreeComplexDescriptor::koszul(&ring, &x_sequence(&ring)).unwrap();
        let s = k.x_strand(1).unwrap();
        // positions 0 and 1 have rank 2; position 2 would need x-degree -1
        assert_eq!(s.len(), 2);
        assert_eq!(s.term(0).rank(), 2);
        assert_eq!(s.term(1).rank(), 2);
        let m = s.differential(1).unwrap().constant_matrix().unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn strand_at_negative_degree_is_zero() {
        let ring = fp_ring(2, 1);
        let k = FreeComplexDescriptor::koszul(&ring, &x_sequence(&ring)).unwrap();
        let s = k.x_strand(-1).unwrap();
        assert!(s.is_zero_complex());
    }

    #[test]
    fn strand_rejects_higher_x_degree_entries() {
        let ring = fp_ring(3, 1);
        let seq = vec![poly(&ring, "x1*x2"), poly(&ring, "x1*x3")];
        let k = FreeComplexDescriptor::koszul(&ring, &seq).unwrap();
        assert!(k.x_strand(2).is_err());
    }

    #[test]
    fn strand_commutes_with_slices_on_a_mixed_complex() {
        // strand of K(z) keeps the y-grading: its (0, b)-slices must match
        // the (d, b)-slices of the original complex
        let ring = fp_ring(2, 2);
        let z = vec![
            poly(&ring, "x1*y1 + x2*y2"),
            poly(&ring, "x1*y2 + x2*y1"),
        ];
        let k = FreeComplexDescriptor::koszul(&ring, &z).unwrap();
        let d = 1i64;
        let s = k.x_strand(d).unwrap();
        s.compose_zero_check().unwrap();
        for b in 0..=3i64 {
            for pos in 0..=2usize {
                let orig = k.slice_homology(pos, Bidegree::new(d, b)).unwrap();
                let strand = s.slice_homology(pos, Bidegree::new(0, b)).unwrap();
                assert_eq!(orig, strand, "b={b} pos={pos}");
            }
        }
    }

    #[test]
    fn dual_reverses_and_double_dual_is_identity() {
        let ring = fp_ring(1, 2);
        let seq = vec![
            BiPoly::var(&ring, Var::Y(0)).unwrap(),
            BiPoly::var(&ring, Var::Y(1)).unwrap(),
        ];
        let k = FreeComplexDescriptor::koszul(&ring, &seq).unwrap();
        let dual = k.dualize_y().unwrap();
        assert_eq!(dual.len(), k.len());
        assert_eq!(dual.term(0).shifts, vec![Bidegree::new(0, -2)]);
        assert_eq!(
            dual.term(2).shifts,
            vec![Bidegree::new(0, 0)]
        );
        dual.compose_zero_check().unwrap();
        let double = dual.dualize_y().unwrap();
        assert_eq!(double, k);
    }

    #[test]
    fn dualize_rejects_x_shifted_complexes() {
        let ring = fp_ring(2, 1);
        let k = FreeComplexDescriptor::koszul(&ring, &x_sequence(&ring)).unwrap();
        assert!(k.dualize_y().is_err());
    }

    #[test]
    fn twist_moves_all_shifts() {
        let ring = fp_ring(1, 2);
        let seq = vec![BiPoly::var(&ring, Var::Y(0)).unwrap()];
        let k = FreeComplexDescriptor::koszul(&ring, &seq).unwrap();
        let t = k.twist(Bidegree::new(0, 3));
        assert_eq!(t.term(0).shifts, vec![Bidegree::new(0, 3)]);
        assert_eq!(t.term(1).shifts, vec![Bidegree::new(0, 4)]);
        t.compose_zero_check().unwrap();
    }

    #[test]
    fn polymatrix_validates_bidegrees() {
        let ring = fp_ring(2, 2);
        let src = ShiftedFreeModule::new(vec![Bidegree::new(1, 1)]);
        let tgt = ShiftedFreeModule::new(vec![Bidegree::new(0, 0)]);
        // entry must have bidegree (1,1)
        assert!(PolyMatrix::new(
            &ring,
            src.clone(),
            tgt.clone(),
            vec![poly(&ring, "x1*y2")]
        )
        .is_ok());
        assert!(PolyMatrix::new(
            &ring,
            src.clone(),
            tgt.clone(),
            vec![poly(&ring, "x1")]
        )
        .is_err());
        // zero entries always pass
        assert!(PolyMatrix::new(&ring, src, tgt, vec![BiPoly::zero(&ring)]).is_ok());
    }

    #[test]
    fn slice_dimensions_follow_piece_dims() {
        let ring = fp_ring(2, 2);
        let z = vec![poly(&ring, "x1*y1 + x2*y2")];
        let k = FreeComplexDescriptor::koszul(&ring, &z).unwrap();
        let d = Bidegree::new(1, 1);
        let a = k.slice_differential(1, d);
        // F_1 = S(-1,-1): piece dim 1; F_0 = S: piece dim 4
        assert_eq!(a.rows(), 4);
        assert_eq!(a.cols(), 1);
        assert_eq!(a.rank(), 1);
    }
}
