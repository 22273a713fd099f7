//! Small combinatorial helpers shared by the complex and Betti machinery.

/// Exact binomial coefficient; 0 when k > n. Values stay far below u64
/// overflow for the desk-scale inputs this crate targets (n <= ~70).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All k-element subsets of {0, .., m-1} in lexicographic order on the
/// sorted index tuples.
pub fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next subset in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + m - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Sign of the shuffle permutation sending the concatenation (t, u) of two
/// disjoint sorted index sets to their sorted union: (-1)^#{(a,b) in t x u : a > b}.
pub fn shuffle_sign(t: &[usize], u: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for &a in t {
        for &b in u {
            debug_assert_ne!(a, b);
            if a > b {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Complement of a sorted subset inside {0, .., m-1}.
pub fn complement(m: usize, subset: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(m - subset.len());
    let mut it = subset.iter().peekable();
    for i in 0..m {
        if it.peek() == Some(&&i) {
            it.next();
        } else {
            out.push(i);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(12, 6), 924);
    }

    #[test]
    fn subsets_are_lexicographic_and_complete() {
        let s = k_subsets(4, 2);
        assert_eq!(
            s,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(k_subsets(5, 0), vec![Vec::<usize>::new()]);
        assert_eq!(k_subsets(3, 4).len(), 0);
        for (m, k) in [(6, 3), (7, 2), (5, 5)] {
            assert_eq!(k_subsets(m, k).len() as u64, binomial(m as u64, k as u64));
        }
    }

    #[test]
    fn shuffle_signs() {
        // ({2}, {1}) has one inversion
        assert_eq!(shuffle_sign(&[1], &[0, 2]), -1);
        assert_eq!(shuffle_sign(&[0], &[1, 2]), 1);
        assert_eq!(shuffle_sign(&[], &[0, 1]), 1);
        assert_eq!(shuffle_sign(&[2, 3], &[0, 1]), 1); // 4 inversions
    }

    #[test]
    fn complement_merges_back() {
        let sub = vec![1, 3];
        let comp = complement(5, &sub);
        assert_eq!(comp, vec![0, 2, 4]);
        let mut all: Vec<usize> = sub.iter().chain(comp.iter()).copied().collect();
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3, 4]);
    }
}
