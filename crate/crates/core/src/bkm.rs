//! Closed-form bigraded Betti numbers for the ideal generated by the
//! pairing sequence together with the maximal minors of a generic n x m
//! matrix of y-linear forms.
//!
//! The minimal free resolution of the quotient has length m. Position 0 is
//! the ring itself; position i combines a block of shifts (-i, -i) with
//! multiplicity C(m, i) while i <= n - 1, and blocks S(-j, -(n + i - 1 - j))
//! whose multiplicities are products of three binomials. Everything here is
//! purely combinatorial; the oracle computes the same tables from scratch so
//! the two sides can be compared on examples.

use std::collections::BTreeMap;

use crate::bipoly::{Bidegree, BiPoly, RingSpec, Var};
use crate::comb::binomial;
use crate::field::{FieldSpec, Rationals};
use crate::freecomplex::FreeComplexDescriptor;
use crate::{Error, Result};

/// Where a Betti table came from: the closed forms, or a finite window
/// computed by the homology oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BettiMeta {
    ClosedForm {
        n: usize,
        m: usize,
    },
    OracleWindow {
        field: FieldSpec,
        i_max: usize,
        a_max: i64,
        b_max: i64,
    },
}

/// Bigraded Betti numbers: multiplicity of S(-a,-b) at homological
/// position i, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, Bidegree), u64>,
    pub meta: BettiMeta,
}

impl BettiTable {
    pub fn get(&self, i: usize, d: Bidegree) -> u64 {
        self.entries.get(&(i, d)).copied().unwrap_or(0)
    }

    pub fn max_position(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Componentwise regularity read off the shifts: (max a - i, max b - i).
    pub fn reg_xy(&self) -> Bidegree {
        let mut reg = Bidegree::new(i64::MIN, i64::MIN);
        for (i, d) in self.entries.keys() {
            reg.a = reg.a.max(d.a - *i as i64);
            reg.b = reg.b.max(d.b - *i as i64);
        }
        reg
    }

    /// Entries on which the two tables disagree, as
    /// (position, shift, self multiplicity, other multiplicity).
    pub fn diff(&self, other: &BettiTable) -> Vec<(usize, Bidegree, u64, u64)> {
        let mut keys: Vec<(usize, Bidegree)> = self.entries.keys().copied().collect();
        for k in other.entries.keys() {
            if !self.entries.contains_key(k) {
                keys.push(*k);
            }
        }
        keys.sort();
        keys.into_iter()
            .filter_map(|(i, d)| {
                let a = self.get(i, d);
                let b = other.get(i, d);
                (a != b).then_some((i, d, a, b))
            })
            .collect()
    }

    /// Restrict to the window i <= i_max, a <= a_max, b <= b_max.
    pub fn window(&self, i_max: usize, a_max: i64, b_max: i64) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .filter(|((i, d), _)| *i <= i_max && d.a <= a_max && d.b <= b_max)
                .map(|(k, v)| (*k, *v))
                .collect(),
            meta: self.meta.clone(),
        }
    }
}

/// The shifts of one free resolution, grouped by homological position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftMultiset {
    pub n: usize,
    pub m: usize,
    pub by_position: Vec<BTreeMap<Bidegree, u64>>,
}

impl ShiftMultiset {
    pub fn to_betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, shifts) in self.by_position.iter().enumerate() {
            for (d, mult) in shifts {
                if *mult > 0 {
                    entries.insert((i, *d), *mult);
                }
            }
        }
        BettiTable {
            entries,
            meta: BettiMeta::ClosedForm {
                n: self.n,
                m: self.m,
            },
        }
    }

    /// Shifts at one position as a flat list (for feeding depth and
    /// diagonal-certificate checks).
    pub fn shifts_at(&self, i: usize) -> Vec<Bidegree> {
        self.by_position
            .get(i)
            .map(|m| {
                m.iter()
                    .flat_map(|(d, mult)| std::iter::repeat(*d).take(*mult as usize))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn rank_at(&self, i: usize) -> u64 {
        self.by_position
            .get(i)
            .map(|m| m.values().sum())
            .unwrap_or(0)
    }
}

fn ensure_nm(n: usize, m: usize) -> Result<()> {
    if n == 0 || m < n {
        return Err(Error::OutOfRange(format!(
            "need 1 <= n <= m, got n={n}, m={m}"
        )));
    }
    Ok(())
}

/// Multiplicity of the shift S(-j, -(n + i - 1 - j)) at position i, for
/// i >= 1 and max(0, i - (m - n + 1)) <= j <= min(i - 1, n - 1).
pub fn r_multiplicity(i: usize, j: usize, n: usize, m: usize) -> Result<u64> {
    ensure_nm(n, m)?;
    if i == 0 || i > m {
        return Err(Error::OutOfRange(format!(
            "position must satisfy 1 <= i <= m, got i={i}"
        )));
    }
    let lo = (i as i64 - (m as i64 - n as i64 + 1)).max(0) as usize;
    let hi = (i - 1).min(n - 1);
    if j < lo || j > hi {
        return Err(Error::OutOfRange(format!(
            "j={j} outside [{lo}, {hi}] at position i={i}"
        )));
    }
    let (i, j, n, m) = (i as u64, j as u64, n as u64, m as u64);
    Ok(binomial(n + i - 2 * j - 2, i - 1 - j)
        * binomial(n + i - 1 - j, j)
        * binomial(m, n + i - 1 - j))
}

/// Shifts of the length-m resolution, by position.
pub fn bkm_shifts(n: usize, m: usize) -> Result<ShiftMultiset> {
    ensure_nm(n, m)?;
    let mut by_position = Vec::with_capacity(m + 1);
    let mut f0 = BTreeMap::new();
    f0.insert(Bidegree::new(0, 0), 1);
    by_position.push(f0);
    for i in 1..=m {
        let mut fi = BTreeMap::new();
        if i <= n - 1 {
            fi.insert(Bidegree::new(i as i64, i as i64), binomial(m as u64, i as u64));
        }
        let lo = (i as i64 - (m as i64 - n as i64 + 1)).max(0) as usize;
        let hi = (i - 1).min(n - 1);
        for j in lo..=hi {
            let mult = r_multiplicity(i, j, n, m)?;
            if mult > 0 {
                let d = Bidegree::new(j as i64, (n + i - 1 - j) as i64);
                *fi.entry(d).or_insert(0) += mult;
            }
        }
        by_position.push(fi);
    }
    Ok(ShiftMultiset { n, m, by_position })
}

/// The closed-form Betti table for the pair (n, m).
pub fn bkm_betti_table(n: usize, m: usize) -> Result<BettiTable> {
    Ok(bkm_shifts(n, m)?.to_betti_table())
}

/// Componentwise maxima of the shifts at each position: the x-components
/// are (0, 1, 2, .., n-1, n-1, ..) and the y-components
/// (0, n, n+1, .., m, m, ..), both of length m + 1.
pub fn ab_max_sequences(n: usize, m: usize) -> Result<(Vec<i64>, Vec<i64>)> {
    ensure_nm(n, m)?;
    let mut a_max = vec![0i64];
    let mut b_max = vec![0i64];
    for i in 1..=m as i64 {
        a_max.push(i.min(n as i64 - 1));
        b_max.push((n as i64 - 1 + i).min(m as i64));
    }
    Ok((a_max, b_max))
}

/// Rank of the b-th syzygy piece of x-degree a as a product of binomials.
pub fn kab_rank_formula(n: usize, a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 {
        return 0;
    }
    let top = n as i64 + a - 1 - b;
    if top < 0 {
        return 0;
    }
    binomial(top as u64, a as u64) * binomial((n as i64 + a) as u64, b as u64)
}

/// The same rank both ways: from the closed formula and from the kernel of
/// the transposed degree-(a + n - b) slice of the Koszul complex on the
/// x-variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KabRank {
    pub strand: u64,
    pub formula: u64,
}

pub fn kab_rank(n: usize, a: i64, b: i64) -> Result<KabRank> {
    if n == 0 {
        return Err(Error::OutOfRange("need n >= 1".into()));
    }
    if a < 0 || b < 0 || b > n as i64 - 1 {
        return Err(Error::OutOfRange(format!(
            "need a >= 0 and 0 <= b <= n - 1, got a={a}, b={b}"
        )));
    }
    // exact arithmetic over the rationals: the slice matrices are tiny
    let ring = RingSpec::new(n, 1, Rationals)?;
    let xs: Vec<BiPoly<Rationals>> = (0..n)
        .map(|i| BiPoly::var(&ring, Var::X(i)))
        .collect::<Result<_>>()?;
    let koszul = FreeComplexDescriptor::koszul(&ring, &xs)?;
    let position = (n as i64 - b + 1) as usize;
    let slice = koszul.slice_differential(position, Bidegree::new(a + n as i64 - b, 0));
    // kernel of the transpose: rows minus rank
    let strand = (slice.rows() - slice.rank()) as u64;
    let formula = kab_rank_formula(n, a, b);
    if strand != formula {
        return Err(Error::IdentityCheck(format!(
            "syzygy rank mismatch at n={n}, a={a}, b={b}: strand {strand}, formula {formula}"
        )));
    }
    Ok(KabRank { strand, formula })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn multiset(pairs: &[((i64, i64), u64)]) -> BTreeMap<Bidegree, u64> {
        pairs
            .iter()
            .map(|((a, b), m)| (Bidegree::new(*a, *b), *m))
            .collect()
    }

    #[test]
    fn running_example_shifts() {
        let s = bkm_shifts(3, 4).unwrap();
        assert_eq!(s.by_position.len(), 5);
        assert_eq!(s.by_position[0], multiset(&[((0, 0), 1)]));
        assert_eq!(s.by_position[1], multiset(&[((1, 1), 4), ((0, 3), 4)]));
        assert_eq!(
            s.by_position[2],
            multiset(&[((2, 2), 6), ((1, 3), 12), ((0, 4), 3)])
        );
        assert_eq!(s.by_position[3], multiset(&[((2, 3), 12), ((1, 4), 8)]));
        assert_eq!(s.by_position[4], multiset(&[((2, 4), 6)]));
    }

    #[test]
    fn two_by_two_table() {
        let t = bkm_betti_table(2, 2).unwrap();
        let expect: BTreeMap<(usize, Bidegree), u64> = [
            ((0, Bidegree::new(0, 0)), 1),
            ((1, Bidegree::new(1, 1)), 2),
            ((1, Bidegree::new(0, 2)), 1),
            ((2, Bidegree::new(1, 2)), 2),
        ]
        .into_iter()
        .collect();
        assert_eq!(t.entries, expect);
    }

    #[test]
    fn regularity_is_zero_by_n_minus_one() {
        for n in 1..=6usize {
            for m in n..=7usize {
                let t = bkm_betti_table(n, m).unwrap();
                assert_eq!(
                    t.reg_xy(),
                    Bidegree::new(0, n as i64 - 1),
                    "n={n}, m={m}"
                );
            }
        }
    }

    #[test]
    fn componentwise_maxima_match_the_tables() {
        for n in 1..=8usize {
            for m in n..=8usize {
                let s = bkm_shifts(n, m).unwrap();
                let (a_max, b_max) = ab_max_sequences(n, m).unwrap();
                for i in 0..=m {
                    let shifts = s.shifts_at(i);
                    assert!(!shifts.is_empty(), "empty position {i} for n={n}, m={m}");
                    let a = shifts.iter().map(|d| d.a).max().unwrap();
                    let b = shifts.iter().map(|d| d.b).max().unwrap();
                    assert_eq!(a, a_max[i], "a at i={i}, n={n}, m={m}");
                    assert_eq!(b, b_max[i], "b at i={i}, n={n}, m={m}");
                }
            }
        }
    }

    #[test]
    fn multiplicities_factor_through_syzygy_ranks() {
        // r(i, j) counts copies of the rank kab(n, i-1-j, j) syzygy piece
        // spread over C(m, n+i-1-j) column subsets
        for n in 1..=5usize {
            for m in n..=6usize {
                for i in 1..=m {
                    let lo = (i as i64 - (m as i64 - n as i64 + 1)).max(0) as usize;
                    let hi = (i - 1).min(n - 1);
                    for j in lo..=hi {
                        let r = r_multiplicity(i, j, n, m).unwrap();
                        let expect = kab_rank_formula(n, (i - 1 - j) as i64, j as i64)
                            * binomial(m as u64, (n + i - 1 - j) as u64);
                        assert_eq!(r, expect, "n={n} m={m} i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn syzygy_rank_examples() {
        assert_eq!(kab_rank(3, 1, 1).unwrap().strand, 8);
        assert_eq!(kab_rank(2, 0, 0).unwrap().strand, 1);
        assert_eq!(kab_rank(2, 1, 1).unwrap().strand, 3);
        assert_eq!(kab_rank(3, 2, 1).unwrap().strand, 15);
        // b = 0 rows are free module pieces
        assert_eq!(kab_rank(3, 2, 0).unwrap().strand, binomial(4, 2));
    }

    #[test]
    fn out_of_range_positions_are_rejected() {
        assert!(r_multiplicity(0, 0, 3, 4).is_err());
        assert!(r_multiplicity(5, 2, 3, 4).is_err());
        assert!(r_multiplicity(2, 2, 3, 4).is_err()); // j > i - 1
        assert!(r_multiplicity(1, 0, 0, 4).is_err());
        assert!(r_multiplicity(1, 0, 5, 4).is_err()); // n > m
        assert!(kab_rank(3, -1, 0).is_err());
        assert!(kab_rank(3, 0, 3).is_err()); // b > n - 1
        assert!(bkm_shifts(0, 2).is_err());
        assert!(bkm_shifts(3, 2).is_err());
    }

    #[test]
    fn table_diff_reports_disagreements() {
        let a = bkm_betti_table(3, 4).unwrap();
        let mut b = a.clone();
        b.entries.insert((1, Bidegree::new(1, 1)), 5);
        b.entries.remove(&(4, Bidegree::new(2, 4)));
        let d = a.diff(&b);
        assert_eq!(
            d,
            vec![
                (1, Bidegree::new(1, 1), 4, 5),
                (4, Bidegree::new(2, 4), 6, 0)
            ]
        );
        assert!(a.diff(&a).is_empty());
    }

    #[test]
    fn window_filters_entries() {
        let t = bkm_betti_table(3, 4).unwrap();
        let w = t.window(2, 1, 3);
        assert_eq!(w.get(1, Bidegree::new(1, 1)), 4);
        assert_eq!(w.get(2, Bidegree::new(1, 3)), 12);
        assert_eq!(w.get(2, Bidegree::new(2, 2)), 0);
        assert_eq!(w.get(3, Bidegree::new(2, 3)), 0);
    }

    #[test]
    fn first_position_counts_generators() {
        // position 1 always carries m pairing forms in shift (1,1) when
        // n >= 2, plus C(m, n) minors in shift (0, n)
        for n in 2..=5usize {
            for m in n..=7usize {
                let s = bkm_shifts(n, m).unwrap();
                assert_eq!(
                    s.by_position[1].get(&Bidegree::new(1, 1)),
                    Some(&(m as u64))
                );
                assert_eq!(
                    s.by_position[1].get(&Bidegree::new(0, n as i64)),
                    Some(&binomial(m as u64, n as u64))
                );
            }
        }
    }
}
