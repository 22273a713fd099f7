//! Sparse bihomogeneous polynomials in S = k[x_1..x_n, y_1..y_p].
//!
//! Every x_i has bidegree (1,0) and every y_j has bidegree (0,1). Monomials
//! are ordered degree-reverse-lexicographically on the concatenated exponent
//! vector (x-block first), which fixes a deterministic basis for every
//! bidegree piece. Polynomials are maps monomial -> coefficient with no zero
//! entries stored.
//!
//! The string grammar used by files and the CLI:
//!
//! ```text
//! polynomial = ["-"] term (("+" | "-") term)*
//! term       = coefficient | [coefficient "*"] factor ("*" factor)*
//! factor     = variable ["^" exponent]
//! variable   = "x"index | "y"index          (1-based indices)
//! ```
//!
//! Coefficients are integers, or `a/b` when the field is the rationals.

use std::collections::BTreeMap;
use std::fmt;

use crate::comb::binomial;
use crate::field::Field;
use crate::{Error, Result};

/// Just the variable counts of a ring; enough for all combinatorial work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingDims {
    pub n: usize,
    pub p: usize,
}

impl RingDims {
    pub fn new(n: usize, p: usize) -> Result<RingDims> {
        if n == 0 || p == 0 {
            return Err(Error::InvalidRing(format!(
                "need at least one variable in each block, got n={n}, p={p}"
            )));
        }
        Ok(RingDims { n, p })
    }
}

/// A bigraded polynomial ring: variable counts plus the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec<F: Field> {
    pub n: usize,
    pub p: usize,
    pub field: F,
}

impl<F: Field> RingSpec<F> {
    pub fn new(n: usize, p: usize, field: F) -> Result<RingSpec<F>> {
        RingDims::new(n, p)?;
        Ok(RingSpec { n, p, field })
    }

    pub fn dims(&self) -> RingDims {
        RingDims { n: self.n, p: self.p }
    }

    pub fn ensure_same(&self, other: &RingSpec<F>) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "k[x1..x{}, y1..y{}] vs k[x1..x{}, y1..y{}]",
                self.n, self.p, other.n, other.p
            )))
        }
    }
}

/// A bidegree (a, b): a counts x-degree, b counts y-degree. Shifts use the
/// same type, so components may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Bidegree {
    pub a: i64,
    pub b: i64,
}

impl Bidegree {
    pub const fn new(a: i64, b: i64) -> Bidegree {
        Bidegree { a, b }
    }

    pub fn total(&self) -> i64 {
        self.a + self.b
    }

    pub fn is_nonnegative(&self) -> bool {
        self.a >= 0 && self.b >= 0
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.a + o.a, self.b + o.b)
    }
}

impl std::ops::Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.a - o.a, self.b - o.b)
    }
}

impl std::ops::Neg for Bidegree {
    type Output = Bidegree;
    fn neg(self) -> Bidegree {
        Bidegree::new(-self.a, -self.b)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl serde::Serialize for Bidegree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.a, self.b).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Bidegree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (a, b) = <(i64, i64)>::deserialize(d)?;
        Ok(Bidegree::new(a, b))
    }
}

/// One variable of the ring, 0-based within its block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    X(usize),
    Y(usize),
}

impl Var {
    pub fn bidegree(&self) -> Bidegree {
        match self {
            Var::X(_) => Bidegree::new(1, 0),
            Var::Y(_) => Bidegree::new(0, 1),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{}", i + 1),
            Var::Y(j) => write!(f, "y{}", j + 1),
        }
    }
}

/// Exponent vector of a monomial, x-block and y-block kept separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    xe: Vec<u32>,
    ye: Vec<u32>,
}

impl Monomial {
    pub fn one(dims: RingDims) -> Monomial {
        Monomial {
            xe: vec![0; dims.n],
            ye: vec![0; dims.p],
        }
    }

    pub fn var(dims: RingDims, v: Var) -> Monomial {
        let mut m = Monomial::one(dims);
        match v {
            Var::X(i) => m.xe[i] += 1,
            Var::Y(j) => m.ye[j] += 1,
        }
        m
    }

    pub fn from_exponents(xe: Vec<u32>, ye: Vec<u32>) -> Monomial {
        Monomial { xe, ye }
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.xe
    }

    pub fn y_exponents(&self) -> &[u32] {
        &self.ye
    }

    pub fn bidegree(&self) -> Bidegree {
        let a: u32 = self.xe.iter().sum();
        let b: u32 = self.ye.iter().sum();
        Bidegree::new(a as i64, b as i64)
    }

    pub fn is_one(&self) -> bool {
        self.xe.iter().all(|&e| e == 0) && self.ye.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.xe.len(), o.xe.len());
        debug_assert_eq!(self.ye.len(), o.ye.len());
        Monomial {
            xe: self.xe.iter().zip(&o.xe).map(|(a, b)| a + b).collect(),
            ye: self.ye.iter().zip(&o.ye).map(|(a, b)| a + b).collect(),
        }
    }

    /// Componentwise quotient self / o, or None when o does not divide self.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let xe: Option<Vec<u32>> = self
            .xe
            .iter()
            .zip(&o.xe)
            .map(|(a, b)| a.checked_sub(*b))
            .collect();
        let ye: Option<Vec<u32>> = self
            .ye
            .iter()
            .zip(&o.ye)
            .map(|(a, b)| a.checked_sub(*b))
            .collect();
        Some(Monomial { xe: xe?, ye: ye? })
    }

    /// The x-part of the monomial (y-exponents zeroed).
    pub fn x_part(&self) -> Monomial {
        Monomial {
            xe: self.xe.clone(),
            ye: vec![0; self.ye.len()],
        }
    }

    /// The y-part of the monomial (x-exponents zeroed).
    pub fn y_part(&self) -> Monomial {
        Monomial {
            xe: vec![0; self.xe.len()],
            ye: self.ye.clone(),
        }
    }
}

/// Degree-reverse-lexicographic order on the concatenated exponent vector:
/// compare total degree first; ties go to the vector whose last differing
/// exponent is smaller.
impl Ord for Monomial {
    fn cmp(&self, o: &Monomial) -> std::cmp::Ordering {
        let d = self.bidegree().total().cmp(&o.bidegree().total());
        if d != std::cmp::Ordering::Equal {
            return d;
        }
        for (a, b) in self
            .ye
            .iter()
            .rev()
            .chain(self.xe.iter().rev())
            .zip(o.ye.iter().rev().chain(o.xe.iter().rev()))
        {
            if a != b {
                return b.cmp(a);
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Monomial) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.xe.iter().enumerate() {
            if e > 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        for (j, &e) in self.ye.iter().enumerate() {
            if e > 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "y{}", j + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Dimension of the bidegree-(a,b) piece of S: stars-and-bars in each block.
pub fn bidegree_piece_dim(dims: RingDims, d: Bidegree) -> u64 {
    if !d.is_nonnegative() {
        return 0;
    }
    binomial(d.a as u64 + dims.n as u64 - 1, dims.n as u64 - 1)
        * binomial(d.b as u64 + dims.p as u64 - 1, dims.p as u64 - 1)
}

/// All exponent vectors of the given length summing to `total`, in a fixed
/// deterministic order.
fn exponent_vectors(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(total: u32, idx: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == cur.len() {
            cur[idx] = total;
            out.push(cur.clone());
            return;
        }
        for e in 0..=total {
            cur[idx] = e;
            rec(total - e, idx + 1, cur, out);
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, 0, &mut cur, &mut out);
    out
}

/// The monomial basis of the bidegree-(a,b) piece, sorted in monomial order.
pub fn monomial_basis(dims: RingDims, d: Bidegree) -> Vec<Monomial> {
    if !d.is_nonnegative() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for xe in exponent_vectors(d.a as u32, dims.n) {
        for ye in exponent_vectors(d.b as u32, dims.p) {
            out.push(Monomial { xe: xe.clone(), ye });
        }
    }
    out.sort();
    out
}

/// A sparse polynomial over a fixed ring. The zero polynomial stores no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly<F: Field> {
    ring: RingSpec<F>,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> BiPoly<F> {
    pub fn zero(ring: &RingSpec<F>) -> BiPoly<F> {
        BiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &RingSpec<F>, c: F::Elem) -> BiPoly<F> {
        let mut p = BiPoly::zero(ring);
        p.add_term(Monomial::one(ring.dims()), c);
        p
    }

    pub fn var(ring: &RingSpec<F>, v: Var) -> Result<BiPoly<F>> {
        match v {
            Var::X(i) if i >= ring.n => {
                return Err(Error::OutOfRange(format!(
                    "x{} does not exist, ring has n={}",
                    i + 1,
                    ring.n
                )))
            }
            Var::Y(j) if j >= ring.p => {
                return Err(Error::OutOfRange(format!(
                    "y{} does not exist, ring has p={}",
                    j + 1,
                    ring.p
                )))
            }
            _ => {}
        }
        let mut p = BiPoly::zero(ring);
        p.add_term(Monomial::var(ring.dims(), v), ring.field.one());
        Ok(p)
    }

    pub fn monomial(ring: &RingSpec<F>, m: Monomial, c: F::Elem) -> BiPoly<F> {
        let mut p = BiPoly::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn ring(&self) -> &RingSpec<F> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Accumulate a term, dropping it if the total coefficient is zero.
    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.ring.field.is_zero(&c) {
            return;
        }
        let f = &self.ring.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(e.get(), &c);
                if f.is_zero(&s) {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn add(&self, o: &BiPoly<F>) -> Result<BiPoly<F>> {
        self.ring.ensure_same(&o.ring)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &BiPoly<F>) -> Result<BiPoly<F>> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> BiPoly<F> {
        let f = &self.ring.field;
        BiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> BiPoly<F> {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return BiPoly::zero(&self.ring);
        }
        let mut out = BiPoly::zero(&self.ring);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), f.mul(a, c));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> BiPoly<F> {
        let mut out = BiPoly::zero(&self.ring);
        for (t, c) in &self.terms {
            out.add_term(t.mul(m), c.clone());
        }
        out
    }

    pub fn mul(&self, o: &BiPoly<F>) -> Result<BiPoly<F>> {
        self.ring.ensure_same(&o.ring)?;
        let f = &self.ring.field;
        let mut out = BiPoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), f.mul(c1, c2));
            }
        }
        Ok(out)
    }

    /// The common bidegree of all terms, or None when the polynomial is zero
    /// or not bihomogeneous.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys();
        let d = it.next()?.bidegree();
        for m in it {
            if m.bidegree() != d {
                return None;
            }
        }
        Some(d)
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    /// Require the polynomial to be bihomogeneous of the given bidegree
    /// (the zero polynomial passes for every bidegree).
    pub fn expect_bidegree(&self, d: Bidegree) -> Result<()> {
        if self.is_zero() || self.bidegree() == Some(d) {
            Ok(())
        } else {
            Err(Error::NotBihomogeneous(format!(
                "expected bidegree {d}, got {self}"
            )))
        }
    }

    /// For f linear in the x-block (every term has x-degree exactly 1),
    /// `coeff_of_variable(X(i))` returns the y-polynomial g_i in the unique
    /// expansion f = sum_i x_i * g_i; symmetrically for the y-block.
    pub fn coeff_of_variable(&self, v: Var) -> Result<BiPoly<F>> {
        let block_degree = |m: &Monomial| -> i64 {
            match v {
                Var::X(_) => m.bidegree().a,
                Var::Y(_) => m.bidegree().b,
            }
        };
        let mut out = BiPoly::zero(&self.ring);
        let var_mono = Monomial::var(self.ring.dims(), v);
        for (m, c) in &self.terms {
            if block_degree(m) != 1 {
                return Err(Error::NotLinear(format!(
                    "term {m} is not linear in the {} block",
                    match v {
                        Var::X(_) => "x",
                        Var::Y(_) => "y",
                    }
                )));
            }
            if let Some(q) = m.div(&var_mono) {
                out.add_term(q, c.clone());
            }
        }
        Ok(out)
    }

    /// Group terms by their x-monomial; each value is a y-only polynomial.
    pub fn split_by_x_part(&self) -> BTreeMap<Monomial, BiPoly<F>> {
        let mut out: BTreeMap<Monomial, BiPoly<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let xm = m.x_part();
            let ym = m.y_part();
            out.entry(xm)
                .or_insert_with(|| BiPoly::zero(&self.ring))
                .add_term(ym, c.clone());
        }
        out
    }

    /// Dense coefficient vector with respect to an indexed monomial basis.
    /// Errors when a term lies outside the basis.
    pub fn dense_coeffs(&self, index: &BTreeMap<Monomial, usize>, len: usize) -> Result<Vec<F::Elem>> {
        let f = &self.ring.field;
        let mut out = vec![f.zero(); len];
        for (m, c) in &self.terms {
            let i = index.get(m).ok_or_else(|| {
                Error::OutOfRange(format!("monomial {m} outside the requested bidegree piece"))
            })?;
            out[*i] = c.clone();
        }
        Ok(out)
    }

    /// Parse a polynomial in the documented grammar.
    pub fn parse(ring: &RingSpec<F>, text: &str) -> Result<BiPoly<F>> {
        Parser {
            ring,
            src: text.as_bytes(),
            pos: 0,
        }
        .parse_poly()
    }
}

impl<F: Field> fmt::Display for BiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let fld = &self.ring.field;
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = fld.fmt_elem(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a, F: Field> {
    ring: &'a RingSpec<F>,
    src: &'a [u8],
    pos: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("at byte {}: {msg}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large"))
    }

    fn parse_factor(&mut self) -> Result<(Var, u32)> {
        let block = match self.bump() {
            Some(b'x') => 0,
            Some(b'y') => 1,
            _ => return Err(self.err("expected a variable (x<i> or y<j>)")),
        };
        // the index must follow the letter immediately
        if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.err("expected a 1-based variable index"));
        }
        let idx = self.parse_uint()? as usize;
        let bound = if block == 0 { self.ring.n } else { self.ring.p };
        if idx == 0 || idx > bound {
            return Err(self.err(&format!(
                "variable {}{idx} out of range (ring has n={}, p={})",
                if block == 0 { 'x' } else { 'y' },
                self.ring.n,
                self.ring.p
            )));
        }
        let var = if block == 0 {
            Var::X(idx - 1)
        } else {
            Var::Y(idx - 1)
        };
        let exp = if self.peek() == Some(b'^') {
            self.bump();
            let e = self.parse_uint()?;
            if e == 0 || e > u32::MAX as u64 {
                return Err(self.err("exponent out of range"));
            }
            e as u32
        } else {
            1
        };
        Ok((var, exp))
    }

    fn parse_coefficient(&mut self, negate: bool) -> Result<F::Elem> {
        let f = &self.ring.field;
        let num = self.parse_uint()?;
        if num > i64::MAX as u64 {
            return Err(self.err("coefficient too large"));
        }
        let mut c = f.from_i64(num as i64);
        if self.peek() == Some(b'/') {
            self.bump();
            let den = self.parse_uint()?;
            if den == 0 || den > i64::MAX as u64 {
                return Err(self.err("bad denominator"));
            }
            c = f
                .div(&c, &f.from_i64(den as i64))
                .ok_or_else(|| self.err("denominator is zero in this field"))?;
        }
        Ok(if negate { f.neg(&c) } else { c })
    }

    fn parse_term(&mut self, negate: bool) -> Result<BiPoly<F>> {
        let f = self.ring.field.clone();
        let mut coeff = if negate { f.neg(&f.one()) } else { f.one() };
        let mut mono = Monomial::one(self.ring.dims());

        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.parse_coefficient(negate)?;
                if self.peek() == Some(b'*') {
                    self.bump();
                } else {
                    // bare constant term
                    return Ok(BiPoly::monomial(self.ring, mono, coeff));
                }
            }
            Some(b'-') => {
                // a signed coefficient inside a term, e.g. after "+"
                self.bump();
                coeff = self.parse_coefficient(!negate)?;
                if self.peek() == Some(b'*') {
                    self.bump();
                } else {
                    return Ok(BiPoly::monomial(self.ring, mono, coeff));
                }
            }
            _ => {}
        }

        loop {
            let (var, exp) = self.parse_factor()?;
            for _ in 0..exp {
                mono = mono.mul(&Monomial::var(self.ring.dims(), var));
            }
            if self.peek() == Some(b'*') {
                self.bump();
            } else {
                break;
            }
        }
        Ok(BiPoly::monomial(self.ring, mono, coeff))
    }

    fn parse_poly(&mut self) -> Result<BiPoly<F>> {
        let mut out = BiPoly::zero(self.ring);
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.bump();
            negate = true;
        } else if self.peek() == Some(b'+') {
            self.bump();
        }
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        loop {
            let term = self.parse_term(negate)?;
            out = out.add(&term)?;
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.bump();
                    negate = false;
                }
                Some(b'-') => {
                    self.bump();
                    negate = true;
                }
                Some(c) => {
                    return Err(self.err(&format!(
                        "unexpected character {:?}",
                        char::from(c)
                    )))
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals, DEFAULT_PRIME};

    fn ring35() -> RingSpec<Fp> {
        RingSpec::new(3, 5, Fp::new(DEFAULT_PRIME).unwrap()).unwrap()
    }

    /// Brute-force monomial count: iterate over all exponent tuples bounded
    /// by the degree and count the ones with the right column sums.
    fn count_by_exhaustion(vars: usize, deg: u32) -> u64 {
        let mut count = 0u64;
        let mut stack = vec![(Vec::<u32>::new(), 0u32)];
        while let Some((prefix, sum)) = stack.pop() {
            if prefix.len() == vars {
                if sum == deg {
                    count += 1;
                }
                continue;
            }
            for e in 0..=(deg - sum) {
                let mut next = prefix.clone();
                next.push(e);
                stack.push((next, sum + e));
            }
        }
        count
    }

    #[test]
    fn piece_dims_match_enumeration() {
        for n in 1..=3usize {
            for p in 1..=3usize {
                let dims = RingDims::new(n, p).unwrap();
                for a in 0..=4i64 {
                    for b in 0..=4i64 {
                        let d = Bidegree::new(a, b);
                        let expected =
                            count_by_exhaustion(n, a as u32) * count_by_exhaustion(p, b as u32);
                        assert_eq!(bidegree_piece_dim(dims, d), expected, "n={n} p={p} {d}");
                        let basis = monomial_basis(dims, d);
                        assert_eq!(basis.len() as u64, expected);
                        // distinct, sorted, and each of the right bidegree
                        for w in basis.windows(2) {
                            assert!(w[0] < w[1]);
                        }
                        for m in &basis {
                            assert_eq!(m.bidegree(), d);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn known_piece_dimensions() {
        let dims = RingDims::new(3, 5).unwrap();
        assert_eq!(bidegree_piece_dim(dims, Bidegree::new(2, 4)), 420);
        assert_eq!(bidegree_piece_dim(dims, Bidegree::new(0, 0)), 1);
        assert_eq!(bidegree_piece_dim(dims, Bidegree::new(-1, 2)), 0);
        assert_eq!(bidegree_piece_dim(dims, Bidegree::new(1, 1)), 15);
    }

    #[test]
    fn degrevlex_orders_by_total_degree_first() {
        let dims = RingDims::new(2, 1).unwrap();
        let x1 = Monomial::var(dims, Var::X(0));
        let x2 = Monomial::var(dims, Var::X(1));
        let y1 = Monomial::var(dims, Var::Y(0));
        assert!(Monomial::one(dims) < x1);
        assert!(x1.mul(&x1) > y1); // degree 2 beats degree 1
        // same degree: x1^2 > x1*x2 > x2^2 > x1*y1 (y-exponent differs last)
        assert!(x1.mul(&x1) > x1.mul(&x2));
        assert!(x1.mul(&x2) > x2.mul(&x2));
        assert!(x2.mul(&x2) > x1.mul(&y1));
    }

    #[test]
    fn parse_and_print_round_trip() {
        let ring = ring35();
        for text in [
            "x1*y1 + x2*y2 + x3*y3",
            "x1^2*y4",
            "5",
            "y1*y4 - y2*y3",
            "32002*x1",
            "x1*x2*x3 + 3*y5^2",
        ] {
            let p = BiPoly::parse(&ring, text).unwrap();
            let shown = p.to_string();
            let reparsed = BiPoly::parse(&ring, &shown).unwrap();
            assert_eq!(p, reparsed, "round trip failed for {text:?} -> {shown:?}");
        }
    }

    #[test]
    fn parse_respects_field_arithmetic() {
        let ring = RingSpec::new(2, 2, Fp::new(5).unwrap()).unwrap();
        let p = BiPoly::parse(&ring, "7*x1 + 3*x1").unwrap();
        // 7 + 3 = 10 = 0 mod 5
        assert!(p.is_zero());
        let q = BiPoly::parse(&ring, "x1 - x1 + y2").unwrap();
        assert_eq!(q, BiPoly::var(&ring, Var::Y(1)).unwrap());
    }

    #[test]
    fn parse_rejects_bad_input() {
        let ring = ring35();
        for text in ["x4", "y6", "x0", "z1", "x1 +", "2**x1", "", "x1^0", "x1 x2"] {
            assert!(BiPoly::parse(&ring, text).is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn rational_coefficients_round_trip() {
        let ring = RingSpec::new(2, 2, Rationals).unwrap();
        let p = BiPoly::parse(&ring, "1/2*x1*y1 - 3*x2^2").unwrap();
        let shown = p.to_string();
        assert_eq!(BiPoly::parse(&ring, &shown).unwrap(), p);
    }

    #[test]
    fn multiplication_matches_hand_expansion() {
        let ring = RingSpec::new(2, 2, Rationals).unwrap();
        let f = BiPoly::parse(&ring, "x1 + y1").unwrap();
        let sq = f.mul(&f).unwrap();
        let expected = BiPoly::parse(&ring, "x1^2 + 2*x1*y1 + y1^2").unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn bidegrees_of_generators() {
        let ring = ring35();
        let z1 = BiPoly::parse(&ring, "x1*y1 + x2*y2 + x3*y3").unwrap();
        assert_eq!(z1.bidegree(), Some(Bidegree::new(1, 1)));
        let mixed = BiPoly::parse(&ring, "x1 + y1").unwrap();
        assert_eq!(mixed.bidegree(), None);
        assert!(!mixed.is_bihomogeneous());
        assert!(BiPoly::zero(&ring).is_bihomogeneous());
    }

    #[test]
    fn coeff_of_variable_extracts_linear_coefficients() {
        let ring = ring35();
        let z2 = BiPoly::parse(&ring, "x1*y2 + x2*y3 + x3*y4").unwrap();
        let g1 = z2.coeff_of_variable(Var::X(0)).unwrap();
        assert_eq!(g1, BiPoly::parse(&ring, "y2").unwrap());
        let g3 = z2.coeff_of_variable(Var::X(2)).unwrap();
        assert_eq!(g3, BiPoly::parse(&ring, "y4").unwrap());
        // reconstruction: z2 = sum_i x_i * coeff_i
        let mut rebuilt = BiPoly::zero(&ring);
        for i in 0..3 {
            let xi = BiPoly::var(&ring, Var::X(i)).unwrap();
            let gi = z2.coeff_of_variable(Var::X(i)).unwrap();
            rebuilt = rebuilt.add(&xi.mul(&gi).unwrap()).unwrap();
        }
        assert_eq!(rebuilt, z2);
        // quadratic in x: not linear
        let bad = BiPoly::parse(&ring, "x1^2*y1").unwrap();
        assert!(bad.coeff_of_variable(Var::X(0)).is_err());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = ring35();
        let r2 = RingSpec::new(2, 2, Fp::new(DEFAULT_PRIME).unwrap()).unwrap();
        let a = BiPoly::var(&r1, Var::X(0)).unwrap();
        let b = BiPoly::var(&r2, Var::X(0)).unwrap();
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn split_by_x_part_groups_terms() {
        let ring = ring35();
        let f = BiPoly::parse(&ring, "x1*y1 + x1*y2 + x2*y5").unwrap();
        let split = f.split_by_x_part();
        assert_eq!(split.len(), 2);
        let x1 = Monomial::var(ring.dims(), Var::X(0));
        assert_eq!(
            split.get(&x1).unwrap(),
            &BiPoly::parse(&ring, "y1 + y2").unwrap()
        );
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn ring22() -> RingSpec<Fp> {
            RingSpec::new(2, 2, Fp::new(7).unwrap()).unwrap()
        }

        fn arb_poly() -> impl Strategy<Value = BiPoly<Fp>> {
            let term = (
                prop::collection::vec(0u32..3, 2),
                prop::collection::vec(0u32..3, 2),
                0i64..7,
            );
            prop::collection::vec(term, 0..5).prop_map(|terms| {
                let ring = ring22();
                let mut p = BiPoly::zero(&ring);
                for (xe, ye, c) in terms {
                    p.add_term(Monomial::from_exponents(xe, ye), ring.field.from_i64(c));
                }
                p
            })
        }

        proptest! {
            #[test]
            fn mul_commutes(f in arb_poly(), g in arb_poly()) {
                prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            }

            #[test]
            fn mul_associates(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
                let lhs = f.mul(&g).unwrap().mul(&h).unwrap();
                let rhs = f.mul(&g.mul(&h).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn mul_distributes(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
                let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
                let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn display_parse_identity(f in arb_poly()) {
                let ring = ring22();
                let reparsed = BiPoly::parse(&ring, &f.to_string()).unwrap();
                prop_assert_eq!(f, reparsed);
            }

            #[test]
            fn homogeneous_products_add_bidegrees(f in arb_poly(), g in arb_poly()) {
                if let (Some(df), Some(dg)) = (f.bidegree(), g.bidegree()) {
                    let prod = f.mul(&g).unwrap();
                    // over a field, a product of nonzero polys is nonzero
                    prop_assert_eq!(prod.bidegree(), Some(df + dg));
                }
            }
        }
    }
}
