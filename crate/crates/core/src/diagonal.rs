//! Diagonal subalgebras: restrict a bigraded module to the bidegrees
//! (c i, e i) and study the result over the Segre-Veronese ring generated by
//! the bidegree (c, e) forms.
//!
//! Everything here works with stored shifts, so the pair (a, b) always
//! refers to the module S(-a, -b). The certificates are one-sided: they
//! either certify a property or report that the criteria used here do not
//! settle it. They never assert a negative.

use serde::Serialize;

use crate::bipoly::{bidegree_piece_dim, Bidegree, RingDims};
use crate::bkm::{ab_max_sequences, ShiftMultiset};
use crate::{Error, Result};

/// The sub-lattice of bidegrees (c i, e i), c, e >= 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalSpec {
    pub c: i64,
    pub e: i64,
}

impl DiagonalSpec {
    pub fn new(c: i64, e: i64) -> Result<DiagonalSpec> {
        if c < 1 || e < 1 {
            return Err(Error::OutOfRange(format!(
                "diagonal needs c >= 1 and e >= 1, got ({c}, {e})"
            )));
        }
        Ok(DiagonalSpec { c, e })
    }
}

/// Outcome of a certificate check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified)
    }
}

/// Krull dimension of the diagonal of the ambient ring.
pub fn diagonal_krull_dim(dims: RingDims) -> i64 {
    (dims.n + dims.p) as i64 - 1
}

/// Hilbert function of S(-a,-b) restricted to the diagonal: the value at i
/// is the dimension of the bidegree (c i - a, e i - b) piece of S.
pub fn shifted_diag_value(dims: RingDims, shift: Bidegree, diag: DiagonalSpec, i: i64) -> u64 {
    bidegree_piece_dim(
        dims,
        Bidegree::new(diag.c * i - shift.a, diag.e * i - shift.b),
    )
}

/// Whether the diagonal of S(-a,-b) is Cohen-Macaulay (of maximal dimension
/// n + p - 1): floor((a - n)/c) < b/e and floor((b - p)/e) < a/c. Both
/// comparisons are exact, by cross-multiplication.
pub fn shifted_diag_is_cm(dims: RingDims, shift: Bidegree, diag: DiagonalSpec) -> bool {
    let (n, p) = (dims.n as i64, dims.p as i64);
    let (a, b) = (shift.a, shift.b);
    // floor((a-n)/c) * e < b  and  floor((b-p)/e) * c < a
    (a - n).div_euclid(diag.c) * diag.e < b && (b - p).div_euclid(diag.e) * diag.c < a
}

/// Regularity of the diagonal of S(-a,-b) over the Segre-Veronese ring:
/// max(ceil(a/c), ceil(b/e)).
pub fn shifted_diag_reg(shift: Bidegree, diag: DiagonalSpec) -> i64 {
    let ceil_div = |x: i64, d: i64| -> i64 { -(-x).div_euclid(d) };
    ceil_div(shift.a, diag.c).max(ceil_div(shift.b, diag.e))
}

/// A depth lower bound for the diagonal of the module resolved by the given
/// shifts, obtained by chasing the resolution one position at a time.
#[derive(Clone, Debug, Serialize)]
pub struct DepthBound {
    pub bound: i64,
    pub positions: usize,
}

/// Depth of the diagonal of the resolved quotient is at least
/// n + p - (m + 1) when p > m >= n and the diagonal of every shift in the
/// resolution is Cohen-Macaulay. The shift hypothesis is checked here shift
/// by shift; for the closed-form resolutions it always holds.
pub fn depth_lower_bound(
    shifts: &ShiftMultiset,
    diag: DiagonalSpec,
    dims: RingDims,
) -> Result<DepthBound> {
    let (n, m, p) = (shifts.n, shifts.m, dims.p);
    if n != dims.n {
        return Err(Error::Shape(format!(
            "resolution was built for {} x-variables, ring has {}",
            shifts.n, dims.n
        )));
    }
    if !(p > m && m >= n) {
        return Err(Error::Hypothesis(format!(
            "depth bound needs p > m >= n, got n={n}, m={m}, p={p}"
        )));
    }
    for (i, pos) in shifts.by_position.iter().enumerate() {
        for d in pos.keys() {
            if !shifted_diag_is_cm(dims, *d, diag) {
                return Err(Error::Hypothesis(format!(
                    "shift {d} at position {i} has a non-Cohen-Macaulay diagonal \
                     for c={}, e={}",
                    diag.c, diag.e
                )));
            }
        }
    }
    Ok(DepthBound {
        bound: (n + p) as i64 - (m as i64 + 1),
        positions: shifts.by_position.len(),
    })
}

/// Cohen-Macaulay certificate for the diagonal of the resolved quotient:
/// certified when the depth lower bound meets the stated Krull dimension.
#[derive(Clone, Debug, Serialize)]
pub struct CmCertificate {
    pub verdict: Verdict,
    pub dim: i64,
    pub depth_bound: Option<i64>,
}

pub fn cm_certificate(
    dim: i64,
    shifts: &ShiftMultiset,
    diag: DiagonalSpec,
    dims: RingDims,
) -> CmCertificate {
    match depth_lower_bound(shifts, diag, dims) {
        Ok(depth) if dim <= depth.bound => CmCertificate {
            verdict: Verdict::Certified,
            dim,
            depth_bound: Some(depth.bound),
        },
        Ok(depth) => CmCertificate {
            verdict: Verdict::Inconclusive {
                reason: format!(
                    "depth bound {} stays below the dimension {dim}",
                    depth.bound
                ),
            },
            dim,
            depth_bound: Some(depth.bound),
        },
        Err(e) => CmCertificate {
            verdict: Verdict::Inconclusive {
                reason: e.to_string(),
            },
            dim,
            depth_bound: None,
        },
    }
}

/// Koszulness certificate for the diagonal of the resolved quotient, from
/// the componentwise shift maxima: certified when every position i >= 1 has
/// ceil(a_i/c) <= i + 1 and ceil(b_i/e) <= i + 1, i.e. the diagonal of the
/// resolution stays within a linear strand after one step.
#[derive(Clone, Debug, Serialize)]
pub struct KoszulCertificate {
    pub verdict: Verdict,
    pub slack: i64,
    pub meets_e_threshold: bool,
}

pub fn koszul_certificate(n: usize, m: usize, diag: DiagonalSpec) -> Result<KoszulCertificate> {
    let (a_max, b_max) = ab_max_sequences(n, m)?;
    let ceil_div = |x: i64, d: i64| -> i64 { -(-x).div_euclid(d) };
    let mut slack = i64::MIN;
    for i in 1..=m {
        let s = (ceil_div(a_max[i], diag.c) - i as i64)
            .max(ceil_div(b_max[i], diag.e) - i as i64);
        slack = slack.max(s);
    }
    let meets_e_threshold = diag.e >= (n as i64 + 1) / 2;
    let verdict = if slack <= 1 {
        Verdict::Certified
    } else {
        Verdict::Inconclusive {
            reason: format!(
                "shift maxima exceed the linear strand by {} past position 1",
                slack - 1
            ),
        }
    };
    Ok(KoszulCertificate {
        verdict,
        slack,
        meets_e_threshold,
    })
}

/// Hilbert function of the diagonal of the resolved quotient at degree i,
/// as the alternating sum over the resolution. Fails if the alternating sum
/// dips below zero, which would mean the shifts do not resolve anything.
pub fn quotient_diag_hilbert(
    shifts: &ShiftMultiset,
    dims: RingDims,
    diag: DiagonalSpec,
    i: i64,
) -> Result<u64> {
    let mut acc: i64 = 0;
    for (pos, ms) in shifts.by_position.iter().enumerate() {
        for (d, mult) in ms {
            let v = (*mult * shifted_diag_value(dims, *d, diag, i)) as i64;
            acc += if pos % 2 == 0 { v } else { -v };
        }
    }
    if acc < 0 {
        return Err(Error::NegativeDimension(format!(
            "alternating sum gives {acc} at diagonal degree {i}"
        )));
    }
    Ok(acc as u64)
}
