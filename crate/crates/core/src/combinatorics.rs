//! Counts of read-once max-min expressions and of selector polynomials, with
//! brute-force enumerations to check them against.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{antichain_from_truth_table, CanonicalAntichain, LatticePolynomial, VarSet};
use crate::perm::all_permutations;

pub const MAX_BRUTE_FORCE_VARS: usize = 4;
pub const MAX_SELECTOR_VARS: usize = 5;

/// `M(n)`, the number of distinct functions computed by read-once max-min
/// expressions in `n` variables: `M(0) = M(1) = 1`, `M(2) = 2` and
/// `M(n) = (n+1) M(n-1) + sum_{k=2}^{n-2} C(n-1,k) M(k) M(n-k)`.
pub fn count_read_once(n: usize) -> BigUint {
    let mut m: Vec<BigUint> = vec![BigUint::one(), BigUint::one(), BigUint::from(2u32)];
    for size in 3..=n {
        let mut next = BigUint::from(size + 1) * &m[size - 1];
        for k in 2..=size.saturating_sub(2) {
            next += binomial(BigUint::from(size - 1), BigUint::from(k)) * &m[k] * &m[size - k];
        }
        m.push(next);
    }
    m.swap_remove(n)
}

/// Truth tables (bit `A` set iff true at assignment `A`) of every binary
/// meet/join tree whose leaves, left to right, are `leaves`.
fn tree_tables(leaves: &[usize], n: usize) -> HashSet<u32> {
    if leaves.len() == 1 {
        let j = leaves[0];
        let table = (0..1u32 << n)
            .filter(|a| a >> (j - 1) & 1 == 1)
            .fold(0u32, |t, a| t | 1 << a);
        return HashSet::from([table]);
    }
    let mut out = HashSet::new();
    for cut in 1..leaves.len() {
        let left = tree_tables(&leaves[..cut], n);
        let right = tree_tables(&leaves[cut..], n);
        for &l in &left {
            for &r in &right {
                out.insert(l & r);
                out.insert(l | r);
            }
        }
    }
    out
}

/// Counts distinct canonical antichains over all read-once expressions in
/// `n <= 4` variables by listing every variable order and tree shape.
pub fn brute_force_read_once(n: usize) -> Result<BigUint> {
    if n == 0 || n > MAX_BRUTE_FORCE_VARS {
        return Err(Error::OrderOutOfRange {
            n,
            min: 1,
            max: MAX_BRUTE_FORCE_VARS,
        });
    }
    let tables: HashSet<u32> = all_permutations(n)
        .par_iter()
        .map(|p| tree_tables(p.images(), n))
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut antichains = HashSet::new();
    for t in tables {
        let table: Vec<bool> = (0..1u32 << n).map(|a| t >> a & 1 == 1).collect();
        antichains.insert(antichain_from_truth_table(n, &table)?);
    }
    Ok(BigUint::from(antichains.len()))
}

fn check_selector_order(d: usize) -> Result<()> {
    if d == 0 || d > MAX_SELECTOR_VARS {
        return Err(Error::OrderOutOfRange {
            n: d,
            min: 1,
            max: MAX_SELECTOR_VARS,
        });
    }
    Ok(())
}

fn nonempty_subsets(d: usize) -> Vec<VarSet> {
    let mut sets: Vec<VarSet> = (1..1u64 << d).map(VarSet::from_bits).collect();
    sets.sort();
    sets
}

fn incomparable(a: VarSet, b: VarSet) -> bool {
    !a.is_subset(b) && !b.is_subset(a)
}

/// Depth-first over subsets in lexicographic order, extending only by sets
/// incomparable to everything chosen so far.
fn visit_antichains(sets: &[VarSet], start: usize, chosen: &mut Vec<VarSet>, visit: &mut dyn FnMut(&[VarSet])) {
    for i in start..sets.len() {
        if chosen.iter().all(|&c| incomparable(c, sets[i])) {
            chosen.push(sets[i]);
            visit(chosen);
            visit_antichains(sets, i + 1, chosen, visit);
            chosen.pop();
        }
    }
}

/// Number of nonempty antichains of nonempty subsets of `{1..d}`, `1 <= d <= 5`.
pub fn count_selectors(d: usize) -> Result<BigUint> {
    check_selector_order(d)?;
    let mut count = 0u64;
    visit_antichains(&nonempty_subsets(d), 0, &mut Vec::new(), &mut |_| count += 1);
    Ok(BigUint::from(count))
}

/// Every canonical antichain over `{1..d}`, ordered by number of sets and
/// then lexicographically.
pub fn antichains(d: usize) -> Result<Vec<CanonicalAntichain>> {
    check_selector_order(d)?;
    let mut out: Vec<Vec<VarSet>> = Vec::new();
    visit_antichains(&nonempty_subsets(d), 0, &mut Vec::new(), &mut |c| out.push(c.to_vec()));
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.into_iter()
        .map(|family| Ok(crate::lattice::canonicalize(&LatticePolynomial::new(d, family)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn read_once_recurrence() {
        let got: Vec<BigUint> = (0..=5).map(count_read_once).collect();
        assert_eq!(got, vec![big(1), big(1), big(2), big(8), big(52), big(472)]);
        for n in 2..=30 {
            assert_eq!(count_read_once(n) % 2u32, big(0));
        }
    }

    #[test]
    fn read_once_brute_force() {
        for n in 1..=4 {
            assert_eq!(brute_force_read_once(n).unwrap(), count_read_once(n), "n = {n}");
        }
        assert!(brute_force_read_once(5).is_err());
        assert!(brute_force_read_once(0).is_err());
    }

    #[test]
    fn selectors() {
        let got: Vec<BigUint> = (1..=5).map(|d| count_selectors(d).unwrap()).collect();
        assert_eq!(got, vec![big(1), big(4), big(18), big(166), big(7579)]);
        assert!(count_selectors(0).is_err());
        assert!(count_selectors(6).is_err());
    }

    #[test]
    fn antichain_listing() {
        let two: Vec<String> = antichains(2).unwrap().iter().map(|a| a.to_string()).collect();
        assert_eq!(two, vec!["K {1}\n", "K {1,2}\n", "K {2}\n", "K {1}\nK {2}\n"]);
        assert_eq!(antichains(4).unwrap().len(), 166);
    }
}
