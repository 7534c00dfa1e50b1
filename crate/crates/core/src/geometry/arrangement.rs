//! Hyperplanes `g_i = g_j`, the regions they cut out of the domain interior,
//! and the weighted graph of regions sharing a facet.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use super::{feasible_interior, format_point, AffineFunctional, Constraint, Polyhedron};
use crate::error::{Error, Result};
use crate::graph::{verify_permutograph, IsometryViolation, Permutograph, WeightedGraph};
use crate::perm::Permutation;
use crate::scalar::ExactScalar;

pub const MAX_REGIONS: usize = 50_000;

/// `Minus` sorts first, so in one dimension regions come out left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// `normal . x + offset = 0` with the first nonzero normal coefficient equal to 1.
/// `pairs` lists the component pairs `(i, j)`, `i < j`, 1-based, whose
/// difference vanishes exactly here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane<T> {
    pub normal: Vec<T>,
    pub offset: T,
    pub pairs: Vec<(usize, usize)>,
}

impl<T: ExactScalar> Hyperplane<T> {
    pub fn functional(&self) -> AffineFunctional<T> {
        AffineFunctional::new(self.normal.clone(), self.offset.clone())
    }

    pub fn eval(&self, x: &[T]) -> T {
        self.functional().eval(x)
    }

    /// `None` on the hyperplane itself.
    pub fn side(&self, x: &[T]) -> Option<Sign> {
        let v = self.eval(x);
        if v.is_positive() {
            Some(Sign::Plus)
        } else if v.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn strict(&self, sign: Sign) -> Constraint<T> {
        let g = self.functional();
        match sign {
            Sign::Plus => Constraint::positive(&g),
            Sign::Minus => Constraint::negative(&g),
        }
    }

    /// The closed half-space: `strict(sign)` with `<` relaxed to `<=`.
    pub fn closed(&self, sign: Sign) -> Constraint<T> {
        let c = self.strict(sign);
        Constraint::new(c.coeffs, super::Relation::Le, c.rhs)
    }

    pub fn on(&self) -> Constraint<T> {
        Constraint::zero(&self.functional())
    }
}

impl<T: ExactScalar> fmt::Display for Hyperplane<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.pairs.iter().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(
            f,
            "{} {} = 0 [{}]",
            format_point(&self.normal),
            self.offset,
            pairs.join(",")
        )
    }
}

fn normalized<T: ExactScalar>(g: &AffineFunctional<T>) -> Option<(Vec<T>, T)> {
    let lead = g.coeffs.iter().find(|a| !a.is_zero())?.clone();
    Some((
        g.coeffs.iter().map(|a| a.clone() / lead.clone()).collect(),
        g.offset.clone() / lead,
    ))
}

/// Open interior of `domain`, with its witness; `EmptyInterior` if there is none.
fn open_domain<T: ExactScalar>(domain: &Polyhedron<T>) -> Result<(Polyhedron<T>, Vec<T>)> {
    let interior = domain.interior()?;
    let witness = feasible_interior(&interior).ok_or(Error::EmptyInterior)?;
    Ok((interior, witness))
}

fn check_components<T: ExactScalar>(components: &[AffineFunctional<T>], dim: usize) -> Result<()> {
    if components.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if let Some(g) = components.iter().find(|g| g.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: g.dim(),
        });
    }
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            if components[i] == components[j] {
                return Err(Error::DuplicateComponents(i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// One hyperplane per distinct kernel `g_i - g_j` that meets the domain
/// interior, in order of the first pair producing it.
pub fn build_hyperplanes<T: ExactScalar>(
    components: &[AffineFunctional<T>],
    domain: &Polyhedron<T>,
) -> Result<Vec<Hyperplane<T>>> {
    check_components(components, domain.dim())?;
    let (interior, _) = open_domain(domain)?;
    let mut hyperplanes: Vec<Hyperplane<T>> = Vec::new();
    let mut seen: HashMap<(Vec<T>, T), usize> = HashMap::new();
    let mut rejected: HashMap<(Vec<T>, T), ()> = HashMap::new();
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            let Some(key) = normalized(&components[i].sub(&components[j])) else {
                continue;
            };
            if let Some(&h) = seen.get(&key) {
                hyperplanes[h].pairs.push((i + 1, j + 1));
                continue;
            }
            if rejected.contains_key(&key) {
                continue;
            }
            let candidate = Hyperplane {
                normal: key.0.clone(),
                offset: key.1.clone(),
                pairs: vec![(i + 1, j + 1)],
            };
            if feasible_interior(&interior.with([candidate.on()])).is_some() {
                seen.insert(key, hyperplanes.len());
                hyperplanes.push(candidate);
            } else {
                rejected.insert(key, ());
            }
        }
    }
    Ok(hyperplanes)
}

/// A full-dimensional cell of the arrangement inside the domain interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region<T> {
    pub signs: Vec<Sign>,
    pub witness: Vec<T>,
    /// Component indices listed by increasing value at the witness.
    pub perm: Permutation,
}

impl<T: ExactScalar> Region<T> {
    /// `.` for the empty sign vector.
    pub fn sign_string(&self) -> String {
        if self.signs.is_empty() {
            ".".to_string()
        } else {
            self.signs.iter().map(|s| s.symbol()).collect()
        }
    }
}

impl<T: ExactScalar> fmt::Display for Region<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.sign_string(), format_point(&self.witness), self.perm)
    }
}

/// Components, domain and hyperplanes of one instance.
#[derive(Clone, Debug)]
pub struct Arrangement<T> {
    pub components: Vec<AffineFunctional<T>>,
    pub domain: Polyhedron<T>,
    pub hyperplanes: Vec<Hyperplane<T>>,
    interior: Polyhedron<T>,
    witness: Vec<T>,
}

impl<T: ExactScalar> Arrangement<T> {
    pub fn new(components: Vec<AffineFunctional<T>>, domain: Polyhedron<T>) -> Result<Self> {
        let hyperplanes = build_hyperplanes(&components, &domain)?;
        let (interior, witness) = open_domain(&domain)?;
        Ok(Arrangement {
            components,
            domain,
            hyperplanes,
            interior,
            witness,
        })
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// The open domain interior.
    pub fn interior(&self) -> &Polyhedron<T> {
        &self.interior
    }

    /// The open cell with the given signs on the first `signs.len()` hyperplanes.
    pub fn cell(&self, signs: &[Sign]) -> Polyhedron<T> {
        self.interior
            .with(signs.iter().zip(&self.hyperplanes).map(|(&s, h)| h.strict(s)))
    }

    /// The permutation listing component indices by increasing value at `x`.
    pub fn ordering_at(&self, x: &[T]) -> Option<Permutation> {
        let values: Vec<T> = self.components.iter().map(|g| g.eval(x)).collect();
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].cmp(&values[b]));
        if order.windows(2).any(|w| values[w[0]] == values[w[1]]) {
            return None;
        }
        Some(Permutation::from_images_unchecked(order.into_iter().map(|i| i + 1).collect()))
    }

    /// The sign vector of `x`, or `None` if `x` lies on some hyperplane.
    pub fn signs_at(&self, x: &[T]) -> Option<Vec<Sign>> {
        self.hyperplanes.iter().map(|h| h.side(x)).collect()
    }
}

fn split<T: ExactScalar>(
    arr: &Arrangement<T>,
    signs: &[Sign],
    witness: &[T],
    h: &Hyperplane<T>,
) -> Vec<(Vec<Sign>, Vec<T>)> {
    let side = h.side(witness);
    [Sign::Plus, Sign::Minus]
        .into_iter()
        .filter_map(|s| {
            let mut child = signs.to_vec();
            child.push(s);
            if side == Some(s) {
                return Some((child, witness.to_vec()));
            }
            let cell = arr.cell(&child);
            feasible_interior(&cell).map(|w| (child, w))
        })
        .collect()
}

/// All regions, sorted by sign vector.
pub fn enumerate_regions<T: ExactScalar>(arr: &Arrangement<T>) -> Result<Vec<Region<T>>> {
    let mut cells: Vec<(Vec<Sign>, Vec<T>)> = vec![(Vec::new(), arr.witness.clone())];
    for h in &arr.hyperplanes {
        cells = cells
            .par_iter()
            .flat_map_iter(|(signs, witness)| split(arr, signs, witness, h))
            .collect();
        if cells.len() > MAX_REGIONS {
            return Err(Error::RegionLimit(MAX_REGIONS));
        }
    }
    cells.sort_by(|a, b| a.0.cmp(&b.0));
    cells
        .into_iter()
        .map(|(signs, witness)| {
            let perm = arr.ordering_at(&witness).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "component values tie at region witness {}",
                    format_point(&witness)
                ))
            })?;
            Ok(Region {
                signs,
                witness,
                perm,
            })
        })
        .collect()
}

/// The weighted region graph over the region permutations.
/// `vertex_of_region[r]` is the graph vertex of region `r`.
#[derive(Clone, Debug)]
pub struct RegionGraph {
    pub graph: WeightedGraph,
    pub vertex_of_region: Vec<usize>,
}

impl RegionGraph {
    pub fn region_of_vertex(&self, v: usize) -> usize {
        self.vertex_of_region.iter().position(|&x| x == v).unwrap()
    }

    /// Wraps the graph once it has been checked to be isometric.
    pub fn into_permutograph(self) -> std::result::Result<Permutograph, IsometryViolation> {
        verify_permutograph(&self.graph)?;
        Ok(Permutograph::new_unchecked(self.graph))
    }
}

/// Joins every two regions whose signs differ on exactly one hyperplane and
/// which share a facet of it.
pub fn region_graph<T: ExactScalar>(arr: &Arrangement<T>, regions: &[Region<T>]) -> Result<RegionGraph> {
    let by_signs: HashMap<&[Sign], usize> = regions
        .iter()
        .enumerate()
        .map(|(i, r)| (r.signs.as_slice(), i))
        .collect();
    let perms: Vec<Permutation> = regions.iter().map(|r| r.perm.clone()).collect();
    let mut graph = WeightedGraph::new(perms)?;
    let edges: Vec<(usize, usize, usize)> = regions
        .par_iter()
        .enumerate()
        .map(|(p, region)| {
            let mut found = Vec::new();
            for (k, h) in arr.hyperplanes.iter().enumerate() {
                if region.signs[k] != Sign::Plus {
                    continue;
                }
                let mut flipped = region.signs.clone();
                flipped[k] = Sign::Minus;
                let Some(&q) = by_signs.get(flipped.as_slice()) else {
                    continue;
                };
                let facet = arr.interior.with(
                    arr.hyperplanes
                        .iter()
                        .zip(&region.signs)
                        .enumerate()
                        .map(|(m, (hm, &s))| if m == k { hm.on() } else { hm.strict(s) }),
                );
                if feasible_interior(&facet).is_some() {
                    found.push((p, q, h.pairs.len()));
                }
            }
            found
        })
        .flatten()
        .collect::<Vec<_>>();
    for (p, q, weight) in edges {
        let (a, b) = (&regions[p].perm, &regions[q].perm);
        let adjacent = a.adjacency_partition(b)?.is_some();
        let distance = a.inversion_distance(b)?;
        if !adjacent || distance != weight {
            return Err(Error::Inconsistent(format!(
                "regions {} and {} share a facet but {a} and {b} are not adjacent with weight {weight}",
                regions[p].sign_string(),
                regions[q].sign_string()
            )));
        }
        graph.add_weighted_edge(a, b, weight)?;
    }
    Ok(RegionGraph {
        graph,
        vertex_of_region: (0..regions.len()).collect(),
    })
}

/// Checks that graph distances in the region graph equal inversion distances.
pub fn verify_isometric_embedding(rg: &RegionGraph) -> std::result::Result<(), IsometryViolation> {
    verify_permutograph(&rg.graph)
}
