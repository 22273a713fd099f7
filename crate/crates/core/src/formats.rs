//! JSON file schemas shared by the command line tool and the C interface.
//!
//! Inputs carry their own ring header (variable counts and coefficient
//! field) and polynomial entries as strings in the parser grammar. Outputs
//! are plain serde structures; Betti tables flatten to rows sorted by
//! (i, a, b) and complexes to shift lists plus entry-string matrices, both
//! of which re-parse to the value they came from.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bipoly::{Bidegree, BiPoly, RingSpec};
use crate::bkm::{BettiMeta, BettiTable};
use crate::en::LinearMatrixY;
use crate::field::{Field, FieldSpec};
use crate::freecomplex::{FreeComplexDescriptor, PolyMatrix, ShiftedFreeModule};
use crate::oracle::IdealSpec;
use crate::rees::PresentationMatrix;
use crate::{Error, Result};

/// Ring description at the top of every input file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingHeader {
    pub n: usize,
    pub p: usize,
    pub field: FieldSpec,
}

impl RingHeader {
    pub fn of<F: Field>(ring: &RingSpec<F>) -> RingHeader {
        RingHeader {
            n: ring.n,
            p: ring.p,
            field: ring.field.spec(),
        }
    }

    /// Instantiate the header over a concrete field implementation. The
    /// caller picks the implementation matching `self.field`; a mismatch is
    /// an error rather than a silent reinterpretation.
    pub fn ring<F: Field>(&self, field: F) -> Result<RingSpec<F>> {
        if field.spec() != self.field {
            return Err(Error::InvalidField(format!(
                "file declares {:?}, arithmetic was requested over {:?}",
                self.field,
                field.spec()
            )));
        }
        RingSpec::new(self.n, self.p, field)
    }
}

/// Ideal input: `{ring: {n, p, field}, generators: [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealFile {
    pub ring: RingHeader,
    pub generators: Vec<String>,
}

pub fn ideal_from_file<F: Field>(file: &IdealFile, field: F) -> Result<IdealSpec<F>> {
    let ring = file.ring.ring(field)?;
    let gens = file
        .generators
        .iter()
        .map(|s| BiPoly::parse(&ring, s))
        .collect::<Result<Vec<_>>>()?;
    IdealSpec::new(&ring, gens)
}

pub fn ideal_to_file<F: Field>(ideal: &IdealSpec<F>) -> IdealFile {
    IdealFile {
        ring: RingHeader::of(ideal.ring()),
        generators: ideal.gens().iter().map(BiPoly::to_string).collect(),
    }
}

/// Matrix input: `{n, p, field, matrix: {rows, cols, entries}}`. The same
/// shape serves y-linear matrices (rows = n) and presentation matrices
/// (rows = p); the reader for each enforces its own row count.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub p: usize,
    pub field: FieldSpec,
    pub matrix: MatrixBody,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixBody {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn header(&self) -> RingHeader {
        RingHeader {
            n: self.n,
            p: self.p,
            field: self.field,
        }
    }

    fn parsed<F: Field>(&self, field: F) -> Result<(RingSpec<F>, Vec<Vec<BiPoly<F>>>)> {
        let ring = self.header().ring(field)?;
        if self.matrix.entries.len() != self.matrix.rows
            || self.matrix.entries.iter().any(|r| r.len() != self.matrix.cols)
        {
            return Err(Error::Shape(format!(
                "matrix body does not match its declared {}x{} shape",
                self.matrix.rows, self.matrix.cols
            )));
        }
        let rows = self
            .matrix
            .entries
            .iter()
            .map(|r| r.iter().map(|s| BiPoly::parse(&ring, s)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok((ring, rows))
    }
}

pub fn phi_from_file<F: Field>(file: &MatrixFile, field: F) -> Result<LinearMatrixY<F>> {
    let (ring, rows) = file.parsed(field)?;
    if rows.len() != ring.n {
        return Err(Error::Shape(format!(
            "a y-linear matrix needs one row per x-variable: expected {}, got {}",
            ring.n,
            rows.len()
        )));
    }
    LinearMatrixY::from_rows(&ring, rows)
}

pub fn phi_to_file<F: Field>(phi: &LinearMatrixY<F>) -> MatrixFile {
    let header = RingHeader::of(phi.ring());
    MatrixFile {
        n: header.n,
        p: header.p,
        field: header.field,
        matrix: MatrixBody {
            rows: phi.rows(),
            cols: phi.cols(),
            entries: (0..phi.rows())
                .map(|r| (0..phi.cols()).map(|c| phi.entry(r, c).to_string()).collect())
                .collect(),
        },
    }
}

pub fn presentation_from_file<F: Field>(
    file: &MatrixFile,
    field: F,
) -> Result<PresentationMatrix<F>> {
    let (ring, rows) = file.parsed(field)?;
    PresentationMatrix::from_rows(&ring, rows)
}

pub fn presentation_to_file<F: Field>(pres: &PresentationMatrix<F>) -> MatrixFile {
    let header = RingHeader::of(pres.ring());
    MatrixFile {
        n: header.n,
        p: header.p,
        field: header.field,
        matrix: MatrixBody {
            rows: pres.rows(),
            cols: pres.cols(),
            entries: (0..pres.rows())
                .map(|r| (0..pres.cols()).map(|c| pres.entry(r, c).to_string()).collect())
                .collect(),
        },
    }
}

/// One Betti table entry. Tables serialize as arrays of these, sorted by
/// (i, a, b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub i: usize,
    pub a: i64,
    pub b: i64,
    pub mult: u64,
}

pub fn betti_rows(table: &BettiTable) -> Vec<BettiRow> {
    table
        .entries
        .iter()
        .map(|(&(i, d), &mult)| BettiRow {
            i,
            a: d.a,
            b: d.b,
            mult,
        })
        .collect()
}

pub fn betti_from_rows(rows: &[BettiRow], meta: BettiMeta) -> Result<BettiTable> {
    let mut entries = std::collections::BTreeMap::new();
    for r in rows {
        if r.mult == 0 {
            continue;
        }
        if entries
            .insert((r.i, Bidegree::new(r.a, r.b)), r.mult)
            .is_some()
        {
            return Err(Error::Parse(format!(
                "duplicate Betti row at i={}, ({}, {})",
                r.i, r.a, r.b
            )));
        }
    }
    Ok(BettiTable { entries, meta })
}

/// Free complex as shift lists and entry strings: `differentials[k]` is the
/// row-major matrix of the map from `terms[k + 1]` to `terms[k]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub ring: RingHeader,
    pub terms: Vec<Vec<Bidegree>>,
    pub differentials: Vec<Vec<Vec<String>>>,
}

pub fn complex_to_file<F: Field>(complex: &FreeComplexDescriptor<F>) -> ComplexFile {
    let terms = complex
        .terms()
        .iter()
        .map(|t| t.shifts.clone())
        .collect::<Vec<_>>();
    let differentials = (1..complex.len())
        .map(|k| {
            let d = complex.differential(k).expect("interior differential");
            (0..d.rows())
                .map(|r| (0..d.cols()).map(|c| d.entry(r, c).to_string()).collect())
                .collect()
        })
        .collect();
    ComplexFile {
        ring: RingHeader::of(complex.ring()),
        terms,
        differentials,
    }
}

pub fn complex_from_file<F: Field>(
    file: &ComplexFile,
    field: F,
) -> Result<FreeComplexDescriptor<F>> {
    let ring = file.ring.ring(field)?;
    let terms: Vec<ShiftedFreeModule> = file
        .terms
        .iter()
        .map(|shifts| ShiftedFreeModule::new(shifts.clone()))
        .collect();
    if !file.differentials.is_empty() && file.differentials.len() + 1 != terms.len() {
        return Err(Error::Shape(format!(
            "{} terms need {} differentials, got {}",
            terms.len(),
            terms.len().saturating_sub(1),
            file.differentials.len()
        )));
    }
    let mut diffs = Vec::with_capacity(file.differentials.len());
    for (k, rows) in file.differentials.iter().enumerate() {
        let target = terms[k].clone();
        let source = terms[k + 1].clone();
        if rows.len() != target.rank() || rows.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::Shape(format!(
                "differential {} does not match its terms: expected {}x{}",
                k + 1,
                target.rank(),
                source.rank()
            )));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|s| BiPoly::parse(&ring, s))
            .collect::<Result<Vec<_>>>()?;
        diffs.push(PolyMatrix::new(&ring, source, target, entries)?);
    }
    FreeComplexDescriptor::new(&ring, terms, diffs)
}

pub fn read_json_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn write_json_file<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(fs::write(path, text)?)
}
