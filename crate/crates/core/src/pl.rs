//! Piecewise linear functions given by components and pieces, compiled into
//! max-min form over the components.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinatorics::antichains;
use crate::error::{Error, Result};
use crate::expr::{print_expr, validate_vars};
use crate::geometry::{
    enumerate_regions, format_point, region_graph, AffineFunctional, Arrangement, Constraint, Polyhedron,
    Region, RegionGraph, Relation,
};
use crate::graph::tokens_with_columns;
use crate::lattice::{
    canonicalize, check_dpl_on_graph, synthesize_polynomial, CanonicalAntichain, IntegralFunction, LatticePolynomial, VarSet,
};
use crate::scalar::ExactScalar;

pub const MAX_EXHAUSTIVE_COMPONENTS: usize = 4;

/// A closed polyhedron on which the function equals one component (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece<T> {
    pub component: usize,
    pub region: Polyhedron<T>,
}

#[derive(Clone, Debug)]
pub struct PLSpec<T> {
    dim: usize,
    names: Vec<String>,
    components: Vec<AffineFunctional<T>>,
    pieces: Vec<Piece<T>>,
    domain: Polyhedron<T>,
}

impl<T: ExactScalar> PLSpec<T> {
    /// `domain` defaults to all of space.
    pub fn new(
        dim: usize,
        components: Vec<(String, AffineFunctional<T>)>,
        pieces: Vec<(String, Polyhedron<T>)>,
        domain: Option<Polyhedron<T>>,
    ) -> Result<Self> {
        let (names, components): (Vec<String>, Vec<AffineFunctional<T>>) = components.into_iter().unzip();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        validate_vars(&names)?;
        let check = |got: usize| {
            if got == dim {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected: dim, got })
            }
        };
        for g in &components {
            check(g.dim())?;
        }
        let domain = domain.unwrap_or_else(|| Polyhedron::whole_space(dim));
        check(domain.dim())?;
        let pieces = pieces
            .into_iter()
            .map(|(name, region)| {
                check(region.dim())?;
                let i = names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(Error::UnknownVariable(name))?;
                Ok(Piece {
                    component: i + 1,
                    region,
                })
            })
            .collect::<Result<_>>()?;
        Ok(PLSpec {
            dim,
            names,
            components,
            pieces,
            domain,
        })
    }

    /// Tabulates a max-min formula: one closed piece per region of the
    /// arrangement, labelled with the component attaining the value there.
    pub fn from_max_min(
        names: Vec<String>,
        components: Vec<AffineFunctional<T>>,
        antichain: &CanonicalAntichain,
        domain: Option<Polyhedron<T>>,
    ) -> Result<Self> {
        let dim = components.first().ok_or(Error::EmptyFamily)?.dim();
        if antichain.order() != components.len() {
            return Err(Error::OrderMismatch {
                left: components.len(),
                right: antichain.order(),
            });
        }
        let domain = domain.unwrap_or_else(|| Polyhedron::whole_space(dim));
        let arr = Arrangement::new(components.clone(), domain.clone())?;
        let pieces = enumerate_regions(&arr)?
            .iter()
            .map(|r| {
                let value = eval_max_min(antichain, &components, &r.witness);
                let j = components.iter().position(|g| g.eval(&r.witness) == value).unwrap();
                let closure = domain.with(arr.hyperplanes.iter().zip(&r.signs).map(|(h, &s)| h.closed(s)));
                (names[j].clone(), closure)
            })
            .collect();
        PLSpec::new(dim, names.into_iter().zip(components).collect(), pieces, Some(domain))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn components(&self) -> &[AffineFunctional<T>] {
        &self.components
    }

    pub fn pieces(&self) -> &[Piece<T>] {
        &self.pieces
    }

    pub fn domain(&self) -> &Polyhedron<T> {
        &self.domain
    }

    pub fn arrangement(&self) -> Result<Arrangement<T>> {
        Arrangement::new(self.components.clone(), self.domain.clone())
    }
}

/// The assigned component (1-based) of every region.
pub fn assign_regions<T: ExactScalar>(spec: &PLSpec<T>, regions: &[Region<T>]) -> Result<Vec<usize>> {
    regions
        .iter()
        .map(|r| {
            let x = &r.witness;
            let mut containing = spec.pieces.iter().filter(|p| p.region.contains(x));
            let first = containing
                .next()
                .ok_or_else(|| Error::UncoveredRegion(format_point(x)))?;
            let value = spec.components[first.component - 1].eval(x);
            for other in containing {
                if spec.components[other.component - 1].eval(x) != value {
                    return Err(Error::AmbiguousAssignment {
                        first: spec.names[first.component - 1].clone(),
                        second: spec.names[other.component - 1].clone(),
                        point: format_point(x),
                    });
                }
            }
            Ok(first.component)
        })
        .collect()
}

/// Max over the sets of the min over their components.
pub fn eval_max_min<T: ExactScalar>(antichain: &CanonicalAntichain, components: &[AffineFunctional<T>], x: &[T]) -> T {
    let values: Vec<T> = components.iter().map(|g| g.eval(x)).collect();
    max_min(antichain.sets(), &values)
}

fn max_min<T: ExactScalar>(sets: &[VarSet], values: &[T]) -> T {
    sets.iter()
        .map(|s| meet(*s, values))
        .max()
        .expect("antichain has at least one set")
}

fn meet<T: ExactScalar>(set: VarSet, values: &[T]) -> T {
    set.iter().map(|j| values[j - 1].clone()).min().expect("sets are nonempty")
}

/// A max-min formula over named components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLRepresentation {
    pub antichain: CanonicalAntichain,
    pub vars: Vec<String>,
}

impl PLRepresentation {
    pub fn eval<T: ExactScalar>(&self, components: &[AffineFunctional<T>], x: &[T]) -> T {
        eval_max_min(&self.antichain, components, x)
    }

    /// E.g. `max(min(g1,g2),min(g1,g3))`.
    pub fn expression(&self) -> String {
        print_expr(&self.antichain, &self.vars)
    }
}

/// Everything computed while compiling a spec.
#[derive(Clone, Debug)]
pub struct Synthesis<T> {
    pub arrangement: Arrangement<T>,
    pub regions: Vec<Region<T>>,
    pub assignment: Vec<usize>,
    pub graph: RegionGraph,
    pub function: IntegralFunction,
    pub representation: PLRepresentation,
}

fn describe<T: ExactScalar>(r: &Region<T>, value: usize) -> String {
    format!("{} (signs {} witness {} F={})", r.perm, r.sign_string(), format_point(&r.witness), value)
}

/// Compiles `spec`, keeping the intermediate regions, graph and integral function.
pub fn synthesize<T: ExactScalar>(spec: &PLSpec<T>) -> Result<Synthesis<T>> {
    let arrangement = spec.arrangement()?;
    let regions = enumerate_regions(&arrangement)?;
    let assignment = assign_regions(spec, &regions)?;
    let graph = region_graph(&arrangement, &regions)?;
    let n = spec.components.len();
    let function = IntegralFunction::new(
        n,
        regions
            .iter()
            .zip(&assignment)
            .map(|(r, &i)| (r.perm.clone(), i))
            .collect(),
    )?;
    if let Err(v) = check_dpl_on_graph(&function, &graph.graph)? {
        let region = |p: &crate::perm::Permutation| regions.iter().position(|r| r.perm == *p).unwrap();
        let (ra, rb) = (region(&v.a), region(&v.b));
        return Err(Error::NotDpl {
            a: describe(&regions[ra], v.fa),
            b: describe(&regions[rb], v.fb),
        });
    }
    let antichain = if regions.len() == 1 {
        canonicalize(&LatticePolynomial::new(n, vec![VarSet::singleton(assignment[0])])?)
    } else {
        synthesize_polynomial(&function).map_err(|e| Error::Inconsistent(format!("after DPL passed: {e}")))?
    };
    Ok(Synthesis {
        arrangement,
        regions,
        assignment,
        graph,
        function,
        representation: PLRepresentation {
            antichain,
            vars: spec.names.clone(),
        },
    })
}

/// The max-min representation of `spec`.
pub fn synthesize_pl<T: ExactScalar>(spec: &PLSpec<T>) -> Result<PLRepresentation> {
    synthesize(spec).map(|s| s.representation)
}

/// A point where a checked identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointFailure<T> {
    pub region: String,
    pub point: Vec<T>,
    pub expected: T,
    pub got: T,
}

impl<T: ExactScalar> fmt::Display for PointFailure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "region {} point {} expected {} got {}",
            self.region,
            format_point(&self.point),
            self.expected,
            self.got
        )
    }
}

fn region_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `count` random interior points of `region`: the witness plus offsets
/// `m / (q 2^k)` with `q <= 1000` and `|m| <= 8q`, where `k` grows after
/// repeated rejections so small regions are still hit.
pub fn sample_region<T: ExactScalar>(arr: &Arrangement<T>, region: &Region<T>, count: usize, seed: u64) -> Vec<Vec<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut scale = T::one();
    let mut misses = 0;
    while out.len() < count {
        let x: Vec<T> = region
            .witness
            .iter()
            .map(|w| {
                let q: i64 = rng.gen_range(1..=1000);
                let m: i64 = rng.gen_range(-8 * q..=8 * q);
                w.clone() + T::from_ratio(m, q) / scale.clone()
            })
            .collect();
        let inside = arr.interior().contains(&x) && arr.signs_at(&x).as_deref() == Some(region.signs.as_slice());
        if inside {
            out.push(x);
        } else {
            misses += 1;
            if misses % 16 == 0 {
                scale = scale * T::two();
            }
        }
    }
    out
}

/// Checks `check(region index, point)` at every witness and at `samples`
/// random points per region; returns the first failure in region order.
fn check_points<T, F>(
    arr: &Arrangement<T>,
    regions: &[Region<T>],
    samples: usize,
    seed: u64,
    check: F,
) -> std::result::Result<(), PointFailure<T>>
where
    T: ExactScalar,
    F: Fn(usize, &[T]) -> Option<(T, T)> + Sync,
{
    let failures: Vec<Option<PointFailure<T>>> = regions
        .par_iter()
        .enumerate()
        .map(|(i, r)| {
            let mut points = vec![r.witness.clone()];
            points.extend(sample_region(arr, r, samples, region_seed(seed, i)));
            points.into_iter().find_map(|x| {
                check(i, &x).map(|(expected, got)| PointFailure {
                    region: r.sign_string(),
                    point: x,
                    expected,
                    got,
                })
            })
        })
        .collect();
    match failures.into_iter().flatten().next() {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

/// Checks that `rep` reproduces the assigned component exactly at every
/// region witness and at `samples` seeded random points per region.
pub fn verify_representation<T: ExactScalar>(
    spec: &PLSpec<T>,
    rep: &PLRepresentation,
    samples: usize,
    seed: u64,
) -> Result<std::result::Result<(), PointFailure<T>>> {
    let n = spec.components.len();
    if rep.antichain.order() != n {
        return Err(Error::OrderMismatch {
            left: n,
            right: rep.antichain.order(),
        });
    }
    let arr = spec.arrangement()?;
    let regions = enumerate_regions(&arr)?;
    let assignment = assign_regions(spec, &regions)?;
    Ok(check_points(&arr, &regions, samples, seed, |i, x| {
        let expected = spec.components[assignment[i] - 1].eval(x);
        let got = rep.eval(&spec.components, x);
        (expected != got).then_some((expected, got))
    }))
}

/// `f = sum_k h_k - min_i sum_{k != i} h_k` with `h_i` the meet over `K_i`;
/// both parts are concave.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcDecomposition {
    pub terms: Vec<VarSet>,
    pub vars: Vec<String>,
    /// A single term, written `f = h1 - 0`.
    pub degenerate: bool,
}

impl DcDecomposition {
    pub fn term_values<T: ExactScalar>(&self, components: &[AffineFunctional<T>], x: &[T]) -> Vec<T> {
        let values: Vec<T> = components.iter().map(|g| g.eval(x)).collect();
        self.terms.iter().map(|&s| meet(s, &values)).collect()
    }

    /// The two concave parts `(sum_k h_k, min_i sum_{k != i} h_k)`.
    pub fn parts<T: ExactScalar>(&self, components: &[AffineFunctional<T>], x: &[T]) -> (T, T) {
        let h = self.term_values(components, x);
        let total = h.iter().fold(T::zero(), |a, b| a + b.clone());
        if self.degenerate {
            return (total, T::zero());
        }
        let rest = h
            .iter()
            .map(|hi| total.clone() - hi.clone())
            .min()
            .expect("at least two terms");
        (total, rest)
    }

    pub fn eval<T: ExactScalar>(&self, components: &[AffineFunctional<T>], x: &[T]) -> T {
        let (p, q) = self.parts(components, x);
        p - q
    }

    /// One `h<i> = ...` line per term followed by the `f = ...` line.
    pub fn formula(&self) -> String {
        let mut out = String::new();
        for (i, &s) in self.terms.iter().enumerate() {
            let names: Vec<&str> = s.iter().map(|j| self.vars[j - 1].as_str()).collect();
            let body = if names.len() == 1 {
                names[0].to_string()
            } else {
                format!("min({})", names.join(","))
            };
            out.push_str(&format!("h{} = {}\n", i + 1, body));
        }
        let k = self.terms.len();
        let sum = |skip: Option<usize>| {
            (1..=k)
                .filter(|&i| Some(i) != skip)
                .map(|i| format!("h{i}"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        if self.degenerate {
            out.push_str("f = h1 - 0\n");
        } else {
            let rest: Vec<String> = (1..=k).map(|i| sum(Some(i))).collect();
            out.push_str(&format!("f = {} - min({})\n", sum(None), rest.join(", ")));
        }
        out
    }
}

pub fn dc_decompose(rep: &PLRepresentation) -> DcDecomposition {
    let terms = rep.antichain.sets().to_vec();
    DcDecomposition {
        degenerate: terms.len() == 1,
        terms,
        vars: rep.vars.clone(),
    }
}

/// Checks the decomposition against the max-min value at every witness and
/// at `samples` seeded random points per region.
pub fn verify_dc<T: ExactScalar>(
    spec: &PLSpec<T>,
    rep: &PLRepresentation,
    dc: &DcDecomposition,
    samples: usize,
    seed: u64,
) -> Result<std::result::Result<(), PointFailure<T>>> {
    let arr = spec.arrangement()?;
    let regions = enumerate_regions(&arr)?;
    Ok(check_points(&arr, &regions, samples, seed, |_, x| {
        let expected = rep.eval(&spec.components, x);
        let got = dc.eval(&spec.components, x);
        (expected != got).then_some((expected, got))
    }))
}

/// Searches every antichain over at most four components for one whose
/// max-min matches all `(point, value)` pairs; `None` if there is none.
pub fn exhaustive_nonrepresentability<T: ExactScalar>(
    components: &[AffineFunctional<T>],
    points: &[(Vec<T>, T)],
) -> Result<Option<CanonicalAntichain>> {
    let n = components.len();
    if n == 0 || n > MAX_EXHAUSTIVE_COMPONENTS {
        return Err(Error::OrderOutOfRange {
            n,
            min: 1,
            max: MAX_EXHAUSTIVE_COMPONENTS,
        });
    }
    for (x, _) in points {
        if let Some(g) = components.iter().find(|g| g.dim() != x.len()) {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                got: x.len(),
            });
        }
    }
    let values: Vec<(Vec<T>, &T)> = points
        .iter()
        .map(|(x, v)| (components.iter().map(|g| g.eval(x)).collect(), v))
        .collect();
    Ok(antichains(n)?
        .into_iter()
        .find(|a| values.iter().all(|(vals, v)| max_min(a.sets(), vals) == **v)))
}

/// The contents of a `.plc` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlcDocument<T> {
    pub dim: usize,
    pub components: Vec<(String, AffineFunctional<T>)>,
    pub domain: Option<Polyhedron<T>>,
    pub pieces: Vec<(String, Polyhedron<T>)>,
    /// `point` lines: sample points with prescribed values.
    pub points: Vec<(Vec<T>, T)>,
}

impl<T: ExactScalar> PlcDocument<T> {
    pub fn to_spec(&self) -> Result<PLSpec<T>> {
        PLSpec::new(self.dim, self.components.clone(), self.pieces.clone(), self.domain.clone())
    }

    pub fn functionals(&self) -> Vec<AffineFunctional<T>> {
        self.components.iter().map(|(_, g)| g.clone()).collect()
    }
}

fn plc_tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    for (col, word) in tokens_with_columns(line) {
        let mut start = 0;
        for (i, c) in word.char_indices() {
            if c == ',' || c == ':' {
                if start < i {
                    out.push((col + start, &word[start..i]));
                }
                out.push((col + i, &word[i..i + 1]));
                start = i + 1;
            }
        }
        if start < word.len() {
            out.push((col + start, &word[start..]));
        }
    }
    out
}

struct LineParser<'a> {
    line: usize,
    tokens: Vec<(usize, &'a str)>,
    pos: usize,
    end: usize,
}

impl<'a> LineParser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        let column = self.tokens.get(self.pos).map_or(self.end, |t| t.0);
        Error::syntax(self.line, column, message)
    }

    fn peek(&self) -> Option<&'a str> {
        self.tokens.get(self.pos).map(|t| t.1)
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        let t = self.peek().ok_or_else(|| self.err(format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn scalar<T: ExactScalar>(&mut self) -> Result<T> {
        let t = self.peek().ok_or_else(|| self.err("expected a number"))?;
        let v = T::parse_literal(t).ok_or_else(|| self.err(format!("invalid number `{t}`")))?;
        self.pos += 1;
        Ok(v)
    }

    fn scalars<T: ExactScalar>(&mut self, count: usize) -> Result<Vec<T>> {
        (0..count).map(|_| self.scalar()).collect()
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.peek() == Some(token) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{token}`")))
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected `{t}`"))),
        }
    }

    /// `c1 .. cd (<=|<|>=|>|=) rhs`
    fn inequality<T: ExactScalar>(&mut self, dim: usize) -> Result<Constraint<T>> {
        let coeffs: Vec<T> = self.scalars(dim)?;
        let op = self.peek().ok_or_else(|| self.err("expected a relation"))?;
        let (relation, flip) = match op {
            "<=" => (Relation::Le, false),
            "<" => (Relation::Lt, false),
            "=" | "==" => (Relation::Eq, false),
            ">=" => (Relation::Le, true),
            ">" => (Relation::Lt, true),
            _ => return Err(self.err(format!("unknown relation `{op}`"))),
        };
        self.pos += 1;
        let rhs: T = self.scalar()?;
        Ok(if flip {
            Constraint::new(coeffs.into_iter().map(|a| -a).collect(), relation, -rhs)
        } else {
            Constraint::new(coeffs, relation, rhs)
        })
    }

    /// `: ineq (, ineq)*`, possibly with no inequalities.
    fn constraint_list<T: ExactScalar>(&mut self, dim: usize) -> Result<Vec<Constraint<T>>> {
        self.expect(":")?;
        let mut out = Vec::new();
        if self.peek().is_none() {
            return Ok(out);
        }
        loop {
            out.push(self.inequality(dim)?);
            if self.peek() == Some(",") {
                self.pos += 1;
            } else {
                self.finish()?;
                return Ok(out);
            }
        }
    }
}

/// Parses the `.plc` format:
///
/// ```text
/// dim 1
/// component g1 1 2
/// domain : -1 <= 10, 1 <= 10
/// piece g1 : 1 <= -1
/// point -8 = -6
/// ```
pub fn parse_plc<T: ExactScalar>(text: &str) -> Result<PlcDocument<T>> {
    let mut dim: Option<usize> = None;
    let mut components: Vec<(String, AffineFunctional<T>)> = Vec::new();
    let mut domain: Option<Vec<Constraint<T>>> = None;
    let mut pieces = Vec::new();
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap();
        let mut p = LineParser {
            line: i + 1,
            tokens: plc_tokens(content),
            pos: 0,
            end: content.trim_end().len() + 1,
        };
        let Some(keyword) = p.peek() else {
            continue;
        };
        if keyword != "dim" && dim.is_none() {
            return Err(p.err("`dim` must come first"));
        }
        p.pos += 1;
        match keyword {
            "dim" => {
                if dim.is_some() {
                    p.pos -= 1;
                    return Err(p.err("`dim` given twice"));
                }
                let t = p.next("a dimension")?;
                let d = t
                    .parse::<usize>()
                    .ok()
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| {
                        p.pos -= 1;
                        p.err(format!("invalid dimension `{t}`"))
                    })?;
                p.finish()?;
                dim = Some(d);
            }
            "component" => {
                let d = dim.unwrap();
                let name = p.next("a component name")?.to_string();
                let values: Vec<T> = p.scalars(d + 1)?;
                p.finish()?;
                let (coeffs, offset) = values.split_at(d);
                components.push((name, AffineFunctional::new(coeffs.to_vec(), offset[0].clone())));
            }
            "domain" => {
                let d = dim.unwrap();
                let cs = p.constraint_list(d)?;
                domain.get_or_insert_with(Vec::new).extend(cs);
            }
            "piece" => {
                let d = dim.unwrap();
                let name = p.next("a component name")?.to_string();
                let cs = p.constraint_list(d)?;
                pieces.push((name, Polyhedron::new(d, cs)?));
            }
            "point" => {
                let d = dim.unwrap();
                let x: Vec<T> = p.scalars(d)?;
                p.expect("=")?;
                let v: T = p.scalar()?;
                p.finish()?;
                points.push((x, v));
            }
            other => {
                p.pos -= 1;
                return Err(p.err(format!("unknown directive `{other}`")));
            }
        }
    }
    let dim = dim.ok_or_else(|| Error::syntax(1, 1, "missing `dim`"))?;
    let domain = domain.map(|cs| Polyhedron::new(dim, cs)).transpose()?;
    Ok(PlcDocument {
        dim,
        components,
        domain,
        pieces,
        points,
    })
}

/// Evaluates the polynomial on the permutation of every region and returns
/// the first region whose named component differs from the assignment there.
pub fn check_against_regions<T: ExactScalar>(syn: &Synthesis<T>) -> Option<usize> {
    let poly: &LatticePolynomial = syn.representation.antichain.as_polynomial();
    syn.regions.iter().zip(&syn.assignment).position(|(r, &i)| {
        let j = poly.eval(&r.perm).expect("orders agree");
        let comps = &syn.arrangement.components;
        comps[j - 1].eval(&r.witness) != comps[i - 1].eval(&r.witness)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    const INTRO: &str = "\
# f = min(g1, max(g2, g3))
dim 1
component g1 1 2
component g2 -1 0
component g3 1/2 -3/2
piece g1 : 1 <= -1
piece g2 : -1 <= 1, 1 <= 1
piece g3 : -1 <= -1
";

    fn intro() -> PLSpec<Q> {
        parse_plc::<Q>(INTRO).unwrap().to_spec().unwrap()
    }

    fn sets(n: usize, s: &[&[usize]]) -> CanonicalAntichain {
        let family = s.iter().map(|x| VarSet::from_elements(x.iter().copied()).unwrap()).collect();
        canonicalize(&LatticePolynomial::new(n, family).unwrap())
    }

    #[test]
    fn intro_assignment() {
        let spec = intro();
        let arr = spec.arrangement().unwrap();
        let regions = enumerate_regions(&arr).unwrap();
        let mut by_x: Vec<(Q, usize)> = regions
            .iter()
            .zip(assign_regions(&spec, &regions).unwrap())
            .map(|(r, i)| (r.witness[0].clone(), i))
            .collect();
        by_x.sort();
        assert_eq!(by_x.iter().map(|p| p.1).collect::<Vec<_>>(), vec![1, 1, 2, 3]);
        assert_eq!(spec.components()[0].eval(&[q(-8, 1)]), q(-6, 1));
    }

    #[test]
    fn intro_synthesis() {
        let syn = synthesize(&intro()).unwrap();
        assert_eq!(syn.representation.antichain, sets(3, &[&[1, 2], &[1, 3]]));
        assert_eq!(syn.representation.expression(), "max(min(g1,g2),min(g1,g3))");
        assert_eq!(check_against_regions(&syn), None);
        assert_eq!(verify_representation(&intro(), &syn.representation, 20, 7).unwrap(), Ok(()));
        assert_eq!(verify_representation(&intro(), &syn.representation, 0, 0).unwrap(), Ok(()));
    }

    #[test]
    fn wrong_representation_fails_left_of_minus_seven() {
        let spec = intro();
        let rep = PLRepresentation {
            antichain: sets(3, &[&[2]]),
            vars: spec.names().to_vec(),
        };
        let failure = verify_representation(&spec, &rep, 0, 0).unwrap().unwrap_err();
        assert!(failure.point[0] < q(-7, 1));
        assert_ne!(failure.expected, failure.got);
    }

    #[test]
    fn single_piece_and_single_region() {
        let text = "dim 1\ncomponent a 1 0\ncomponent b 1 1\npiece b :\n";
        let spec = parse_plc::<Q>(text).unwrap().to_spec().unwrap();
        let syn = synthesize(&spec).unwrap();
        assert_eq!(syn.regions.len(), 1);
        assert_eq!(syn.representation.antichain, sets(2, &[&[2]]));
        assert_eq!(syn.representation.expression(), "b");

        // jumps from x to 2 at the origin
        let text = "dim 1\ncomponent a 1 0\ncomponent b -1 0\ncomponent c 0 2\npiece a : 1 <= 0\npiece c : -1 <= 0\n";
        let spec = parse_plc::<Q>(text).unwrap().to_spec().unwrap();
        assert!(matches!(
            synthesize(&spec).unwrap_err(),
            Error::NotDpl { .. }
        ));
    }

    #[test]
    fn max_of_two_coordinates() {
        let text = "dim 2\ncomponent g1 1 0 0\ncomponent g2 0 1 0\npiece g1 : -1 1 <= 0\npiece g2 : 1 -1 <= 0\n";
        let spec = parse_plc::<Q>(text).unwrap().to_spec().unwrap();
        let rep = synthesize_pl(&spec).unwrap();
        assert_eq!(rep.antichain, sets(2, &[&[1], &[2]]));
        assert_eq!(verify_representation(&spec, &rep, 10, 3).unwrap(), Ok(()));
    }

    #[test]
    fn ambiguous_and_uncovered() {
        let text = "dim 1\ncomponent g1 1 0\ncomponent g2 -1 0\npiece g1 :\npiece g2 : 1 <= 0\n";
        let spec = parse_plc::<Q>(text).unwrap().to_spec().unwrap();
        assert!(matches!(synthesize(&spec).unwrap_err(), Error::AmbiguousAssignment { .. }));
        let text = "dim 1\ncomponent g1 1 0\ncomponent g2 -1 0\npiece g1 : 1 >= 0\n";
        let spec = parse_plc::<Q>(text).unwrap().to_spec().unwrap();
        assert_eq!(synthesize(&spec).unwrap_err().kind(), "uncovered-region");
    }

    #[test]
    fn dc_intro_identity() {
        let spec = intro();
        let rep = synthesize_pl(&spec).unwrap();
        let dc = dc_decompose(&rep);
        assert!(!dc.degenerate);
        let x = [q(0, 1)];
        assert_eq!(dc.term_values(spec.components(), &x), vec![q(0, 1), q(-3, 2)]);
        assert_eq!(dc.parts(spec.components(), &x), (q(-3, 2), q(-3, 2)));
        assert_eq!(dc.eval(spec.components(), &x), q(0, 1));
        assert_eq!(dc.formula(), "h1 = min(g1,g2)\nh2 = min(g1,g3)\nf = h1 + h2 - min(h2, h1)\n");
        assert_eq!(verify_dc(&spec, &rep, &dc, 25, 11).unwrap(), Ok(()));
    }

    #[test]
    fn dc_degenerate() {
        let rep = PLRepresentation {
            antichain: sets(1, &[&[1]]),
            vars: vec!["g1".into()],
        };
        let dc = dc_decompose(&rep);
        assert!(dc.degenerate);
        assert_eq!(dc.formula(), "h1 = g1\nf = h1 - 0\n");
        let g = [AffineFunctional::new(vec![q(2, 1)], q(1, 1))];
        assert_eq!(dc.parts(&g, &[q(3, 1)]), (q(7, 1), q(0, 1)));
    }

    #[test]
    fn nonconvex_counterexample() {
        let comps = vec![
            AffineFunctional::new(vec![q(0, 1), q(0, 1)], q(0, 1)),
            AffineFunctional::new(vec![q(0, 1), q(1, 1)], q(0, 1)),
        ];
        let right = (vec![q(1, 1), q(1, 2)], q(1, 2));
        let left = (vec![q(-1, 1), q(1, 2)], q(0, 1));
        assert_eq!(exhaustive_nonrepresentability(&comps, &[right.clone(), left]).unwrap(), None);
        assert_eq!(
            exhaustive_nonrepresentability(&comps, &[right]).unwrap(),
            Some(sets(2, &[&[2]]))
        );
        let g1_only = [(vec![q(3, 1), q(-5, 1)], q(0, 1))];
        // at y = -5 the only matching formula is g1 alone, which comes first
        assert_eq!(exhaustive_nonrepresentability(&comps, &g1_only).unwrap(), Some(sets(2, &[&[1]])));
    }

    #[test]
    fn exhaustive_matches_intro_witnesses() {
        let spec = intro();
        let syn = synthesize(&spec).unwrap();
        let points: Vec<(Vec<Q>, Q)> = syn
            .regions
            .iter()
            .zip(&syn.assignment)
            .map(|(r, &i)| (r.witness.clone(), spec.components()[i - 1].eval(&r.witness)))
            .collect();
        assert_eq!(
            exhaustive_nonrepresentability(spec.components(), &points).unwrap(),
            Some(sets(3, &[&[1, 2], &[1, 3]]))
        );
        let five: Vec<AffineFunctional<Q>> = (0..5).map(|i| AffineFunctional::new(vec![q(i, 1)], q(0, 1))).collect();
        assert!(exhaustive_nonrepresentability(&five, &[]).is_err());
    }

    #[test]
    fn plc_errors_carry_positions() {
        let err = parse_plc::<Q>("dim 1\ncomponent g1 1 x\n").unwrap_err();
        assert_eq!(err, Error::syntax(2, 16, "invalid number `x`"));
        let err = parse_plc::<Q>("component g1 1 0\n").unwrap_err();
        assert_eq!(err.kind(), "syntax");
        let err = parse_plc::<Q>("dim 1\npiece g1 : 1 ~ 0\n").unwrap_err();
        assert_eq!(err, Error::syntax(2, 14, "unknown relation `~`"));
        let err = parse_plc::<Q>("dim 2\npoint 1 = 2\n").unwrap_err();
        assert_eq!(err.kind(), "syntax");
        let doc = parse_plc::<Q>("dim 1\ncomponent g1 1 0\npiece g9 :\n").unwrap();
        assert_eq!(doc.to_spec().unwrap_err(), Error::UnknownVariable("g9".into()));
        let doc = parse_plc::<Q>("dim 1\ncomponent g1 1 0\ncomponent g1 2 0\n").unwrap();
        assert_eq!(doc.to_spec().unwrap_err().kind(), "duplicate-name");
    }

    #[test]
    fn plc_relations_and_points() {
        let doc = parse_plc::<Q>("dim 2\ndomain : 1 0 >= -1, 0 1 < 1/2,1 1 = 0\npoint 1 0.5 = -2\n").unwrap();
        let domain = doc.domain.unwrap();
        assert_eq!(domain.constraints().len(), 3);
        assert_eq!(domain.constraints()[0], Constraint::new(vec![q(-1, 1), q(0, 1)], Relation::Le, q(1, 1)));
        assert_eq!(domain.constraints()[1].relation, Relation::Lt);
        assert_eq!(doc.points, vec![(vec![q(1, 1), q(1, 2)], q(-2, 1))]);
    }
}
