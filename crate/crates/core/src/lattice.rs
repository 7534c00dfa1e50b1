//! Integral functions on sets of permutations and their lattice polynomials.
//!
//! A lattice polynomial over `{1..n}` is a family `{K_i}` of nonempty index
//! sets; at a permutation `a` it evaluates to the `<_a`-maximum over `i` of
//! the `<_a`-minimum of `K_i`. The canonical form of the family is the
//! antichain of its inclusion-minimal sets, listed lexicographically.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Permutograph, WeightedGraph};
use crate::perm::{OrderedPartition, Permutation};

/// Largest `n` representable by [`VarSet`].
pub const MAX_VARS: usize = 64;

/// Largest `n` accepted by [`truth_table_01`].
pub const MAX_TRUTH_TABLE_VARS: usize = 20;

/// A subset of `{1..n}` (n <= 64) as a bitmask; bit `j - 1` stands for `j`.
///
/// Ordering is lexicographic on the ascending element lists, so `{1,2} <
/// {1,2,3} < {1,3} < {2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VarSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(j: usize) -> Self {
        VarSet(1 << (j - 1))
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Self {
        if n == 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for j in elements {
            if j == 0 || j > MAX_VARS {
                return Err(Error::ElementOutOfRange {
                    element: j,
                    n: MAX_VARS,
                });
            }
            bits |= 1 << (j - 1);
        }
        Ok(VarSet(bits))
    }

    pub fn contains(self, j: usize) -> bool {
        j >= 1 && j <= MAX_VARS && self.0 >> (j - 1) & 1 == 1
    }

    pub fn insert(&mut self, j: usize) {
        self.0 |= 1 << (j - 1);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let j = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            Some(j)
        })
    }
}

impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a, b) {
                (0, 0) => return Ordering::Equal,
                (0, _) => return Ordering::Less,
                (_, 0) => return Ordering::Greater,
                _ => {
                    let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
                    if x != y {
                        return x.cmp(&y);
                    }
                    a &= a - 1;
                    b &= b - 1;
                }
            }
        }
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, j) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The constant function `G_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstantFunction {
    n: usize,
    k: usize,
}

impl ConstantFunction {
    pub fn eval(&self, a: &Permutation) -> Result<usize> {
        if a.order() != self.n {
            return Err(Error::OrderMismatch {
                left: self.n,
                right: a.order(),
            });
        }
        Ok(self.k)
    }
}

pub fn constant_function(n: usize, k: usize) -> Result<ConstantFunction> {
    if k == 0 || k > n {
        return Err(Error::ElementOutOfRange { element: k, n });
    }
    Ok(ConstantFunction { n, k })
}

/// A family of nonempty subsets of `{1..n}`, read as a join of meets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolynomial {
    n: usize,
    family: Vec<VarSet>,
}

impl LatticePolynomial {
    pub fn new(n: usize, family: Vec<VarSet>) -> Result<Self> {
        if n == 0 || n > MAX_VARS {
            return Err(Error::OrderOutOfRange {
                n,
                min: 1,
                max: MAX_VARS,
            });
        }
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for set in &family {
            if set.is_empty() {
                return Err(Error::EmptySet);
            }
            if set.max_element() > n {
                return Err(Error::ElementOutOfRange {
                    element: set.max_element(),
                    n,
                });
            }
        }
        Ok(LatticePolynomial { n, family })
    }

    /// Convenience constructor from element lists.
    pub fn from_sets(n: usize, sets: &[&[usize]]) -> Result<Self> {
        let family = sets
            .iter()
            .map(|s| VarSet::from_elements(s.iter().copied()))
            .collect::<Result<_>>()?;
        LatticePolynomial::new(n, family)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &[VarSet] {
        &self.family
    }

    /// Join over the family of the meets, both with respect to `<_a`.
    pub fn eval(&self, a: &Permutation) -> Result<usize> {
        if a.order() != self.n {
            return Err(Error::OrderMismatch {
                left: self.n,
                right: a.order(),
            });
        }
        Ok(self.eval_unchecked(a))
    }

    fn eval_unchecked(&self, a: &Permutation) -> usize {
        self.family
            .iter()
            .map(|set| set.iter().min_by_key(|&j| a.position(j)).unwrap())
            .max_by_key(|&j| a.position(j))
            .unwrap()
    }
}

/// A lattice polynomial in canonical form: pairwise incomparable sets sorted
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalAntichain(LatticePolynomial);

impl CanonicalAntichain {
    pub fn order(&self) -> usize {
        self.0.n
    }

    pub fn sets(&self) -> &[VarSet] {
        &self.0.family
    }

    pub fn as_polynomial(&self) -> &LatticePolynomial {
        &self.0
    }

    pub fn eval(&self, a: &Permutation) -> Result<usize> {
        self.0.eval(a)
    }
}

impl fmt::Display for CanonicalAntichain {
    /// One `K {j1,j2,...}` line per set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for set in self.sets() {
            writeln!(f, "K {set}")?;
        }
        Ok(())
    }
}

pub fn eval_polynomial(p: &LatticePolynomial, a: &Permutation) -> Result<usize> {
    p.eval(a)
}

/// Drops every set containing another one, then sorts.
pub fn canonicalize(p: &LatticePolynomial) -> CanonicalAntichain {
    let mut kept = minimal_sets(p.family.clone());
    kept.sort();
    CanonicalAntichain(LatticePolynomial {
        n: p.n,
        family: kept,
    })
}

pub fn poly_equal(p: &LatticePolynomial, q: &LatticePolynomial) -> bool {
    p.n == q.n && canonicalize(p) == canonicalize(q)
}

/// Inclusion-minimal members of `sets`, deduplicated, in (size, bits) order.
pub(crate) fn minimal_sets(mut sets: Vec<VarSet>) -> Vec<VarSet> {
    sets.sort_by_key(|s| (s.len(), s.bits()));
    sets.dedup();
    let mut kept: Vec<VarSet> = Vec::with_capacity(sets.len());
    // kept[..smaller] are the kept sets strictly smaller than the current one;
    // distinct sets of equal size cannot absorb each other
    let mut smaller = 0;
    for set in sets {
        while smaller < kept.len() && kept[smaller].len() < set.len() {
            smaller += 1;
        }
        if !kept[..smaller].iter().any(|k| k.is_subset(set)) {
            kept.push(set);
        }
    }
    kept
}

/// The `k`-th order statistic as the join of all meets over `(n - k + 1)`-subsets.
pub fn order_statistic_polynomial(n: usize, k: usize) -> Result<CanonicalAntichain> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::OrderOutOfRange {
            n,
            min: 1,
            max: MAX_VARS,
        });
    }
    if k == 0 || k > n {
        return Err(Error::ElementOutOfRange { element: k, n });
    }
    let size = n - k + 1;
    let mut family = Vec::new();
    let mut combo: Vec<usize> = (1..=size).collect();
    loop {
        family.push(VarSet::from_elements(combo.iter().copied())?);
        // next combination in lexicographic order
        let Some(i) = (0..size).rev().find(|&i| combo[i] < n - size + i + 1) else {
            break;
        };
        combo[i] += 1;
        for j in i + 1..size {
            combo[j] = combo[j - 1] + 1;
        }
    }
    Ok(canonicalize(&LatticePolynomial { n, family }))
}

/// The monotone Boolean function of `p`: entry `A` (bit `j - 1` set iff
/// variable `j` is 1) is true iff some `K_i` is contained in `A`.
pub fn truth_table_01(p: &LatticePolynomial) -> Result<Vec<bool>> {
    if p.n > MAX_TRUTH_TABLE_VARS {
        return Err(Error::TooLarge(format!(
            "truth table over {} variables (max {MAX_TRUTH_TABLE_VARS})",
            p.n
        )));
    }
    Ok((0..1u64 << p.n)
        .map(|a| p.family.iter().any(|k| k.bits() & !a == 0))
        .collect())
}

/// Inclusion-minimal true points of a monotone truth table, as a canonical antichain.
pub fn antichain_from_truth_table(n: usize, table: &[bool]) -> Result<CanonicalAntichain> {
    if table.len() != 1 << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            got: table.len(),
        });
    }
    let family: Vec<VarSet> = (1..table.len() as u64)
        .filter(|&a| table[a as usize])
        .filter(|&a| (0..n).all(|j| a >> j & 1 == 0 || !table[(a & !(1 << j)) as usize]))
        .map(VarSet::from_bits)
        .collect();
    Ok(canonicalize(&LatticePolynomial::new(n, family)?))
}

/// A function from a set of permutations to `{1..n}`; its domain is the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralFunction {
    n: usize,
    vertices: Vec<Permutation>,
    values: Vec<usize>,
    index: HashMap<Permutation, usize>,
}

impl IntegralFunction {
    pub fn new(n: usize, entries: Vec<(Permutation, usize)>) -> Result<Self> {
        let mut vertices = Vec::with_capacity(entries.len());
        let mut values = Vec::with_capacity(entries.len());
        let mut index = HashMap::with_capacity(entries.len());
        for (perm, value) in entries {
            if perm.order() != n {
                return Err(Error::OrderMismatch {
                    left: n,
                    right: perm.order(),
                });
            }
            if value == 0 || value > n {
                return Err(Error::ValueOutOfRange { value, n });
            }
            if index.insert(perm.clone(), vertices.len()).is_some() {
                return Err(Error::DuplicateVertex(perm.to_string()));
            }
            vertices.push(perm);
            values.push(value);
        }
        if vertices.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(IntegralFunction {
            n,
            vertices,
            values,
            index,
        })
    }

    /// The function `a -> eval(p, a)` on `vertices`.
    pub fn from_polynomial(p: &LatticePolynomial, vertices: &[Permutation]) -> Result<Self> {
        let entries = vertices
            .iter()
            .map(|v| Ok((v.clone(), p.eval(v)?)))
            .collect::<Result<_>>()?;
        IntegralFunction::new(p.n, entries)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn get(&self, a: &Permutation) -> Option<usize> {
        self.index.get(a).map(|&i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, usize)> {
        self.vertices.iter().zip(self.values.iter().copied())
    }

    /// Replaces the value at `a`.
    pub fn with_value(&self, a: &Permutation, value: usize) -> Result<Self> {
        let i = *self
            .index
            .get(a)
            .ok_or_else(|| Error::VertexNotFound(a.to_string()))?;
        if value == 0 || value > self.n {
            return Err(Error::ValueOutOfRange { value, n: self.n });
        }
        let mut out = self.clone();
        out.values[i] = value;
        Ok(out)
    }

    fn sorted_indices(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|&i, &j| self.vertices[i].cmp(&self.vertices[j]));
        order
    }
}

/// An ordered pair `(a, b)` admitting no `u` with `u <=_a F(a)` and `u >=_b F(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationViolation {
    pub a: Permutation,
    pub b: Permutation,
    pub fa: usize,
    pub fb: usize,
}

impl fmt::Display for SeparationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} F({})={} F({})={}", self.a, self.b, self.a, self.fa, self.b, self.fb)
    }
}

impl From<SeparationViolation> for Error {
    fn from(v: SeparationViolation) -> Self {
        Error::SeparationViolation {
            a: v.a.to_string(),
            b: v.b.to_string(),
        }
    }
}

/// An edge whose endpoint values fall in different blocks of its partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DplViolation {
    pub a: Permutation,
    pub b: Permutation,
    pub partition: OrderedPartition,
    pub fa: usize,
    pub fb: usize,
}

impl fmt::Display for DplViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} partition={} F({})={} F({})={}",
            self.a, self.b, self.partition, self.a, self.fa, self.b, self.fb
        )
    }
}

impl From<DplViolation> for Error {
    fn from(v: DplViolation) -> Self {
        Error::NotDpl {
            a: v.a.to_string(),
            b: v.b.to_string(),
        }
    }
}

/// The separation property over all ordered pairs of the domain. Pairs are
/// scanned in lexicographic order, so the reported pair is the first one.
pub fn check_separation(f: &IntegralFunction) -> std::result::Result<(), SeparationViolation> {
    let order = f.sorted_indices();
    for &ia in &order {
        let (a, fa) = (&f.vertices[ia], f.values[ia]);
        for &ib in &order {
            let (b, fb) = (&f.vertices[ib], f.values[ib]);
            // some u <=_a F(a) must sit at or after F(b) in b
            let target = b.position(fb);
            let separated = a.images()[..=a.position(fa)]
                .iter()
                .any(|&u| b.position(u) >= target);
            if !separated {
                return Err(SeparationViolation {
                    a: a.clone(),
                    b: b.clone(),
                    fa,
                    fb,
                });
            }
        }
    }
    Ok(())
}

/// The DPL condition on every edge of `g`; `f` must be defined on all of its vertices.
pub fn check_dpl_on_graph(
    f: &IntegralFunction,
    g: &WeightedGraph,
) -> Result<std::result::Result<(), DplViolation>> {
    for v in g.vertices() {
        if f.get(v).is_none() {
            return Err(Error::VertexNotFound(v.to_string()));
        }
    }
    let mut edges: Vec<(&Permutation, &Permutation)> = g
        .edges()
        .iter()
        .map(|&(a, b, _)| {
            let (pa, pb) = (g.vertex(a), g.vertex(b));
            if pa <= pb {
                (pa, pb)
            } else {
                (pb, pa)
            }
        })
        .collect();
    edges.sort();
    for (a, b) in edges {
        let partition = a.adjacency_partition(b)?.ok_or_else(|| Error::InvalidEdge {
            a: a.to_string(),
            b: b.to_string(),
            reason: "endpoints are not adjacent".into(),
        })?;
        let (fa, fb) = (f.get(a).unwrap(), f.get(b).unwrap());
        if partition.block_of(a.position(fa) + 1) != partition.block_of(b.position(fb) + 1) {
            return Ok(Err(DplViolation {
                a: a.clone(),
                b: b.clone(),
                partition,
                fa,
                fb,
            }));
        }
    }
    Ok(Ok(()))
}

/// The DPL condition on a permutograph.
pub fn check_dpl(f: &IntegralFunction, g: &Permutograph) -> Result<std::result::Result<(), DplViolation>> {
    check_dpl_on_graph(f, g.graph())
}

/// Builds `K_g = {v : v >=_g F(g)}` for every vertex `g` and canonicalizes.
pub fn synthesize_polynomial(f: &IntegralFunction) -> Result<CanonicalAntichain> {
    check_separation(f)?;
    let family = f
        .iter()
        .map(|(g, value)| VarSet::from_elements(g.images()[g.position(value)..].iter().copied()))
        .collect::<Result<_>>()?;
    Ok(canonicalize(&LatticePolynomial::new(f.n, family)?))
}

/// Parses the `.fop` format: `n <int>` then `F <perm> <value>` lines.
pub fn parse_fop(text: &str) -> Result<IntegralFunction> {
    let mut n: Option<usize> = None;
    let mut entries = Vec::new();
    let mut seen = HashMap::new();
    let mut last_line = 0;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = crate::graph::tokens_with_columns(content);
        match tokens.as_slice() {
            [] => {}
            [(_, "n"), (col, value)] => {
                if n.is_some() {
                    return Err(Error::syntax(line, 1, "repeated `n` line"));
                }
                let v = value
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| Error::syntax(line, *col, format!("bad order `{value}`")))?;
                n = Some(v);
            }
            [(_, "F"), (cp, perm), (cv, value)] => {
                let order = n.ok_or_else(|| Error::syntax(line, 1, "`F` before `n`"))?;
                let p: Permutation = perm
                    .parse()
                    .map_err(|e: Error| Error::syntax(line, *cp, e.to_string()))?;
                if p.order() != order {
                    return Err(Error::syntax(
                        line,
                        *cp,
                        format!("permutation {p} has order {}, expected {order}", p.order()),
                    ));
                }
                let v = value
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| (1..=order).contains(&v))
                    .ok_or_else(|| Error::syntax(line, *cv, format!("value `{value}` not in 1..={order}")))?;
                if seen.insert(p.clone(), ()).is_some() {
                    return Err(Error::syntax(line, *cp, format!("duplicate permutation {p}")));
                }
                entries.push((p, v));
            }
            [(col, tok), ..] => {
                return Err(Error::syntax(line, *col, format!("unexpected `{tok}`")));
            }
        }
    }
    let n = n.ok_or_else(|| Error::syntax(last_line.max(1), 1, "missing `n` line"))?;
    if entries.is_empty() {
        return Err(Error::syntax(last_line.max(1), 1, "no `F` lines"));
    }
    IntegralFunction::new(n, entries)
}

/// Writes `f` in the `.fop` format.
pub fn format_fop(f: &IntegralFunction) -> String {
    let mut out = format!("n {}\n", f.n);
    for (p, v) in f.iter() {
        out.push_str(&format!("F {p} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_big_permutograph, induced_permutograph};
    use crate::perm::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn poly(n: usize, sets: &[&[usize]]) -> LatticePolynomial {
        LatticePolynomial::from_sets(n, sets).unwrap()
    }

    fn func(n: usize, entries: &[(&str, usize)]) -> IntegralFunction {
        IntegralFunction::new(n, entries.iter().map(|&(s, v)| (p(s), v)).collect()).unwrap()
    }

    #[test]
    fn varset_order_is_lexicographic() {
        let sets: Vec<VarSet> = [&[2][..], &[1, 3], &[1, 2, 3], &[1, 2]]
            .iter()
            .map(|s| VarSet::from_elements(s.iter().copied()).unwrap())
            .collect();
        let mut sorted = sets.clone();
        sorted.sort();
        let shown: Vec<String> = sorted.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{1,2}", "{1,2,3}", "{1,3}", "{2}"]);
    }

    #[test]
    fn constants() {
        assert_eq!(constant_function(3, 2).unwrap().eval(&p("321")).unwrap(), 2);
        assert_eq!(constant_function(3, 1).unwrap().eval(&p("132")).unwrap(), 1);
        assert_eq!(constant_function(3, 3).unwrap().eval(&p("213")).unwrap(), 3);
        assert!(constant_function(3, 4).is_err());
        assert!(constant_function(3, 0).is_err());
    }

    #[test]
    fn eval_examples() {
        let m2 = poly(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(m2.eval(&p("312")).unwrap(), 1);
        for a in all_permutations(4) {
            assert_eq!(poly(4, &[&[3]]).eval(&a).unwrap(), 3);
            assert_eq!(poly(4, &[&[1, 2, 3, 4]]).eval(&a).unwrap(), a.images()[0]);
        }
        assert!(m2.eval(&p("12")).is_err());
    }

    #[test]
    fn polynomial_validation() {
        assert_eq!(LatticePolynomial::new(3, vec![]), Err(Error::EmptyFamily));
        assert_eq!(LatticePolynomial::new(3, vec![VarSet::EMPTY]), Err(Error::EmptySet));
        assert!(LatticePolynomial::from_sets(2, &[&[3]]).is_err());
    }

    #[test]
    fn separation_examples() {
        let m2 = order_statistic_polynomial(3, 2).unwrap();
        let f = IntegralFunction::from_polynomial(m2.as_polynomial(), &all_permutations(3)).unwrap();
        assert!(check_separation(&f).is_ok());

        let bad = func(3, &[("123", 1), ("213", 3)]);
        let v = check_separation(&bad).unwrap_err();
        assert_eq!((v.a, v.b, v.fa, v.fb), (p("123"), p("213"), 1, 3));

        for value in 1..=3 {
            assert!(check_separation(&func(3, &[("231", value)])).is_ok());
        }
    }

    #[test]
    fn dpl_examples() {
        let big = build_big_permutograph(3).unwrap();
        let m2 = order_statistic_polynomial(3, 2).unwrap();
        let f = IntegralFunction::from_polynomial(m2.as_polynomial(), big.vertices()).unwrap();
        assert_eq!(check_dpl(&f, &big).unwrap(), Ok(()));

        let pair = induced_permutograph(3, vec![p("123"), p("213")]).unwrap();
        let bad = func(3, &[("123", 1), ("213", 3)]);
        let v = check_dpl(&bad, &pair).unwrap().unwrap_err();
        assert_eq!(v.partition, OrderedPartition::from_sizes(&[2, 1]).unwrap());
        assert_eq!((v.fa, v.fb), (1, 3));

        for k in 1..=3 {
            let c = IntegralFunction::from_polynomial(&poly(3, &[&[k]]), big.vertices()).unwrap();
            assert_eq!(check_dpl(&c, &big).unwrap(), Ok(()));
        }
        let partial = func(3, &[("123", 1)]);
        assert!(check_dpl(&partial, &big).is_err());
    }

    #[test]
    fn synthesis_examples() {
        let m2 = order_statistic_polynomial(3, 2).unwrap();
        let f = IntegralFunction::from_polynomial(m2.as_polynomial(), &all_permutations(3)).unwrap();
        assert_eq!(synthesize_polynomial(&f).unwrap(), m2);

        // constant functions: the result need not be {{k}}, but must agree on the domain
        let perms = all_permutations(3);
        for k in 1..=3 {
            let subset: Vec<Permutation> = perms.iter().step_by(2).cloned().collect();
            let c = IntegralFunction::new(3, subset.iter().map(|a| (a.clone(), k)).collect()).unwrap();
            let rep = synthesize_polynomial(&c).unwrap();
            for a in &subset {
                assert_eq!(rep.eval(a).unwrap(), k);
            }
        }
        let full = IntegralFunction::new(3, perms.iter().map(|a| (a.clone(), 2)).collect()).unwrap();
        assert_eq!(synthesize_polynomial(&full).unwrap().sets(), &[VarSet::singleton(2)]);

        let single = func(3, &[("231", 1)]);
        let rep = synthesize_polynomial(&single).unwrap();
        assert_eq!(rep.sets(), &[VarSet::singleton(1)]);
        assert_eq!(rep.eval(&p("231")).unwrap(), 1);

        let bad = func(3, &[("123", 1), ("213", 3)]);
        assert_eq!(synthesize_polynomial(&bad).unwrap_err().kind(), "separation-violation");

        let trivial = func(1, &[("1", 1)]);
        assert_eq!(synthesize_polynomial(&trivial).unwrap().sets(), &[VarSet::singleton(1)]);
    }

    #[test]
    fn canonicalize_examples() {
        let c = canonicalize(&poly(3, &[&[1, 2], &[1, 2, 3]]));
        assert_eq!(c.to_string(), "K {1,2}\n");
        let c = canonicalize(&poly(2, &[&[1], &[2], &[1, 2]]));
        assert_eq!(c.to_string(), "K {1}\nK {2}\n");
        let c = canonicalize(&poly(3, &[&[1, 3], &[1, 2]]));
        assert_eq!(c.to_string(), "K {1,2}\nK {1,3}\n");
        let c = canonicalize(&poly(3, &[&[2], &[2]]));
        assert_eq!(c.sets().len(), 1);
    }

    #[test]
    fn poly_equal_examples() {
        // g1 ^ (g2 v g3) distributed versus (g1 ^ g2) v (g1 ^ g3)
        assert!(poly_equal(
            &poly(3, &[&[1, 2], &[1, 3]]),
            &poly(3, &[&[1, 3], &[1, 2], &[1, 2, 3]])
        ));
        assert!(!poly_equal(&poly(2, &[&[1]]), &poly(2, &[&[2]])));
        assert!(poly_equal(&poly(2, &[&[1, 2]]), &poly(2, &[&[2, 1]])));
    }

    #[test]
    fn order_statistic_examples() {
        let m2 = order_statistic_polynomial(3, 2).unwrap();
        assert_eq!(m2.to_string(), "K {1,2}\nK {1,3}\nK {2,3}\n");
        assert_eq!(order_statistic_polynomial(4, 1).unwrap().sets(), &[VarSet::full(4)]);
        let max = order_statistic_polynomial(4, 4).unwrap();
        assert_eq!(max.sets(), &(1..=4).map(VarSet::singleton).collect::<Vec<_>>()[..]);
        assert!(order_statistic_polynomial(3, 0).is_err());
        assert!(order_statistic_polynomial(3, 4).is_err());
    }

    #[test]
    fn truth_table_examples() {
        assert_eq!(truth_table_01(&poly(1, &[&[1]])).unwrap(), [false, true]);
        assert_eq!(
            truth_table_01(&poly(2, &[&[1, 2]])).unwrap(),
            [false, false, false, true]
        );
        assert_eq!(
            truth_table_01(&poly(2, &[&[1], &[2]])).unwrap(),
            [false, true, true, true]
        );
        let wide = LatticePolynomial::new(21, vec![VarSet::singleton(1)]).unwrap();
        assert_eq!(truth_table_01(&wide).unwrap_err().kind(), "too-large");
        let tt = truth_table_01(&poly(3, &[&[1, 2], &[1, 3], &[1, 2, 3]])).unwrap();
        assert_eq!(
            antichain_from_truth_table(3, &tt).unwrap(),
            canonicalize(&poly(3, &[&[1, 2], &[1, 3]]))
        );
    }

    #[test]
    fn fop_roundtrip_and_errors() {
        let text = "# example\nn 3\nF 123 1\nF 213 3 # comment\n";
        let f = parse_fop(text).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.get(&p("213")), Some(3));
        assert_eq!(parse_fop(&format_fop(&f)).unwrap(), f);

        assert_eq!(
            parse_fop("n 3\nF 123 4\n").unwrap_err(),
            Error::syntax(2, 7, "value `4` not in 1..=3")
        );
        assert_eq!(parse_fop("F 123 1\n").unwrap_err().kind(), "syntax");
        assert_eq!(parse_fop("n 3\nF 12 1\n").unwrap_err().kind(), "syntax");
        assert_eq!(parse_fop("n 3\nF 123 1\nF 123 2\n").unwrap_err().kind(), "syntax");
        assert_eq!(parse_fop("n 3\nG 123 1\n").unwrap_err(), Error::syntax(2, 1, "unexpected `G`"));
    }
}
