//! Weighted graphs on permutations: the big permutograph, the permutohedron
//! graph, induced subgraphs, shortest paths and the isometry check.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{all_permutations, enumerate_nontrivial_partitions, Permutation};

/// Largest order accepted by the full-`S_n` constructions.
pub const MAX_FULL_ORDER: usize = 7;

/// A weighted undirected graph whose vertices are permutations of one order
/// and whose edge weights equal the inversion distance of the endpoints.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    n: usize,
    vertices: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
    edges: Vec<(usize, usize, usize)>,
}

impl WeightedGraph {
    pub fn new(vertices: Vec<Permutation>) -> Result<Self> {
        let n = vertices.first().map_or(0, Permutation::order);
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if v.order() != n {
                return Err(Error::OrderMismatch {
                    left: n,
                    right: v.order(),
                });
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.to_string()));
            }
        }
        let adjacency = vec![Vec::new(); vertices.len()];
        Ok(WeightedGraph {
            n,
            vertices,
            index,
            adjacency,
            edges: Vec::new(),
        })
    }

    /// Adds the edge `a b` with weight `d(a, b)`.
    pub fn add_edge(&mut self, a: &Permutation, b: &Permutation) -> Result<usize> {
        let w = a.inversion_distance(b)?;
        self.add_weighted_edge(a, b, w)
    }

    /// Adds an edge with an explicit weight, which must equal `d(a, b)`.
    pub fn add_weighted_edge(&mut self, a: &Permutation, b: &Permutation, weight: usize) -> Result<usize> {
        let ia = self.index_of(a)?;
        let ib = self.index_of(b)?;
        let invalid = |reason: &str| Error::InvalidEdge {
            a: a.to_string(),
            b: b.to_string(),
            reason: reason.to_string(),
        };
        if ia == ib {
            return Err(invalid("self-loop"));
        }
        let d = a.distance_unchecked(b);
        if weight != d {
            return Err(invalid(&format!("weight {weight} != inversion distance {d}")));
        }
        if self.adjacency[ia].iter().any(|&(t, _)| t == ib) {
            return Err(invalid("duplicate edge"));
        }
        self.insert_edge(ia, ib, weight);
        Ok(self.edges.len() - 1)
    }

    fn insert_edge(&mut self, ia: usize, ib: usize, weight: usize) {
        self.adjacency[ia].push((ib, weight));
        self.adjacency[ib].push((ia, weight));
        self.edges.push((ia, ib, weight));
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Permutation {
        &self.vertices[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(a, b, weight)` with dense vertex indices.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, usize)] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn index_of(&self, v: &Permutation) -> Result<usize> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| Error::VertexNotFound(v.to_string()))
    }

    pub fn contains(&self, v: &Permutation) -> bool {
        self.index.contains_key(v)
    }

    /// Dijkstra from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist: Vec<Option<usize>> = vec![None; self.vertices.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(0);
        heap.push(Reverse((0usize, source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if dist[u].is_some_and(|best| d > best) {
                continue;
            }
            for &(v, w) in &self.adjacency[u] {
                let nd = d + w;
                if dist[v].map_or(true, |cur| nd < cur) {
                    dist[v] = Some(nd);
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        dist
    }

    /// Weighted shortest-path distance, `None` if unreachable.
    pub fn shortest_path_distance(&self, a: &Permutation, b: &Permutation) -> Result<Option<usize>> {
        let ia = self.index_of(a)?;
        let ib = self.index_of(b)?;
        Ok(self.distances_from(ia)[ib])
    }
}

/// A pair of vertices whose graph distance differs from their inversion distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryViolation {
    pub a: Permutation,
    pub b: Permutation,
    /// Weighted path distance, `None` when `b` is unreachable from `a`.
    pub path: Option<usize>,
    pub inversion: usize,
}

impl fmt::Display for IsometryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path = self.path.map_or("unreachable".to_string(), |p| p.to_string());
        write!(f, "{} {} path={} inversion={}", self.a, self.b, path, self.inversion)
    }
}

impl From<IsometryViolation> for Error {
    fn from(v: IsometryViolation) -> Self {
        Error::IsometryViolation {
            a: v.a.to_string(),
            b: v.b.to_string(),
            path: v.path.map_or("unreachable".to_string(), |p| p.to_string()),
            inversion: v.inversion,
        }
    }
}

/// Checks that shortest-path distance equals inversion distance for every
/// vertex pair. The reported violation is the first pair in vertex-index order.
pub fn verify_permutograph(g: &WeightedGraph) -> std::result::Result<(), IsometryViolation> {
    let found = (0..g.vertex_count()).into_par_iter().find_map_first(|s| {
        let dist = g.distances_from(s);
        (s + 1..g.vertex_count()).find_map(|t| {
            let inversion = g.vertex(s).distance_unchecked(g.vertex(t));
            (dist[t] != Some(inversion)).then(|| IsometryViolation {
                a: g.vertex(s).clone(),
                b: g.vertex(t).clone(),
                path: dist[t],
                inversion,
            })
        })
    });
    match found {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// An isometric weighted subgraph of the big permutograph.
#[derive(Clone, Debug)]
pub struct Permutograph {
    graph: WeightedGraph,
}

impl Permutograph {
    /// Validates that every edge joins block-reversal-adjacent permutations
    /// and that the graph is isometric.
    pub fn new(graph: WeightedGraph) -> Result<Self> {
        for &(a, b, _) in graph.edges() {
            let (pa, pb) = (graph.vertex(a), graph.vertex(b));
            if pa.adjacency_partition(pb)?.is_none() {
                return Err(Error::InvalidEdge {
                    a: pa.to_string(),
                    b: pb.to_string(),
                    reason: "endpoints are not adjacent".into(),
                });
            }
        }
        verify_permutograph(&graph)?;
        Ok(Permutograph { graph })
    }

    pub(crate) fn new_unchecked(graph: WeightedGraph) -> Self {
        Permutograph { graph }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn vertices(&self) -> &[Permutation] {
        self.graph.vertices()
    }

    pub fn into_graph(self) -> WeightedGraph {
        self.graph
    }
}

fn check_full_order(n: usize) -> Result<()> {
    if !(2..=MAX_FULL_ORDER).contains(&n) {
        return Err(Error::OrderOutOfRange {
            n,
            min: 2,
            max: MAX_FULL_ORDER,
        });
    }
    Ok(())
}

fn cayley_graph(n: usize, single_transpositions: bool) -> Result<Permutograph> {
    check_full_order(n)?;
    let taus: Vec<Permutation> = enumerate_nontrivial_partitions(n)?
        .into_iter()
        .filter(|p| !single_transpositions || p.weight() == 1)
        .map(|p| p.tau())
        .collect::<Result<_>>()?;
    let mut g = WeightedGraph::new(all_permutations(n))?;
    for ia in 0..g.vertex_count() {
        for tau in &taus {
            // a b^{-1} = tau  <=>  b = tau a
            let b = tau.compose(g.vertex(ia))?;
            let ib = g.index_of(&b)?;
            if ia < ib {
                let w = g.vertex(ia).distance_unchecked(&b);
                g.insert_edge(ia, ib, w);
            }
        }
    }
    Ok(Permutograph::new_unchecked(g))
}

/// The big permutograph: all of `S_n`, joined by every block reversal.
pub fn build_big_permutograph(n: usize) -> Result<Permutograph> {
    cayley_graph(n, false)
}

/// The permutohedron graph: all of `S_n`, joined by adjacent transpositions.
pub fn build_permutohedron_graph(n: usize) -> Result<Permutograph> {
    cayley_graph(n, true)
}

/// The subgraph of the big permutograph induced on `vertices`; fails unless it is isometric.
pub fn induced_permutograph(n: usize, vertices: Vec<Permutation>) -> Result<Permutograph> {
    let g = induced_graph(n, vertices)?;
    verify_permutograph(&g)?;
    Ok(Permutograph::new_unchecked(g))
}

/// The induced subgraph without the isometry check.
pub fn induced_graph(n: usize, vertices: Vec<Permutation>) -> Result<WeightedGraph> {
    if let Some(v) = vertices.iter().find(|v| v.order() != n) {
        return Err(Error::OrderMismatch {
            left: n,
            right: v.order(),
        });
    }
    let mut g = WeightedGraph::new(vertices)?;
    for ia in 0..g.vertex_count() {
        for ib in ia + 1..g.vertex_count() {
            let (a, b) = (g.vertex(ia), g.vertex(ib));
            if a.adjacency_partition(b)?.is_some() {
                let w = a.distance_unchecked(b);
                g.insert_edge(ia, ib, w);
            }
        }
    }
    Ok(g)
}

/// Text dump: a `vertices:` header, one permutation per line, then one
/// `<perm> <perm> <weight>` line per edge.
pub fn dump_graph(g: &WeightedGraph) -> String {
    let mut out = String::from("vertices:\n");
    for v in g.vertices() {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    for &(a, b, w) in g.edges() {
        out.push_str(&format!("{} {} {}\n", g.vertex(a), g.vertex(b), w));
    }
    out
}

/// Parses the [`dump_graph`] format. Vertices mentioned only in edge lines
/// are added in order of first appearance; `#` starts a comment.
pub fn parse_graph_dump(text: &str) -> Result<WeightedGraph> {
    let mut vertices: Vec<Permutation> = Vec::new();
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    let mut edges: Vec<(Permutation, Permutation, usize, usize)> = Vec::new();
    let parse_perm = |tok: &str, line: usize, col: usize| {
        tok.parse::<Permutation>()
            .map_err(|e| Error::syntax(line, col, e.to_string()))
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokens_with_columns(content);
        match tokens.as_slice() {
            [] => {}
            [(_, "vertices:")] | [(_, "edges:")] => {}
            [(col, v)] => {
                let p = parse_perm(v, line, *col)?;
                if seen.insert(p.clone(), ()).is_some() {
                    return Err(Error::syntax(line, *col, format!("duplicate vertex {p}")));
                }
                vertices.push(p);
            }
            [(ca, a), (cb, b), (cw, w)] => {
                let pa = parse_perm(a, line, *ca)?;
                let pb = parse_perm(b, line, *cb)?;
                let weight = w
                    .parse::<usize>()
                    .map_err(|_| Error::syntax(line, *cw, format!("bad weight `{w}`")))?;
                edges.push((pa, pb, weight, line));
            }
            [(col, _), ..] => {
                return Err(Error::syntax(line, *col, "expected a vertex or `<perm> <perm> <weight>`"))
            }
        }
    }
    for (a, b, _, _) in &edges {
        for p in [a, b] {
            if seen.insert(p.clone(), ()).is_none() {
                vertices.push(p.clone());
            }
        }
    }
    let mut g = WeightedGraph::new(vertices)?;
    for (a, b, w, _) in &edges {
        g.add_weighted_edge(a, b, *w)?;
    }
    Ok(g)
}

pub(crate) fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn is_bipartite(g: &WeightedGraph) -> Option<(usize, usize)> {
        let mut color = vec![None; g.vertex_count()];
        color[0] = Some(false);
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            let cu = color[u].unwrap();
            for &(v, _) in g.neighbors(u) {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        stack.push(v);
                    }
                    Some(cv) if cv == cu => return None,
                    _ => {}
                }
            }
        }
        let left = color.iter().filter(|c| **c == Some(false)).count();
        Some((left, g.vertex_count() - left))
    }

    #[test]
    fn big_permutograph_small_orders() {
        let g3 = build_big_permutograph(3).unwrap();
        let g = g3.graph();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 9);
        assert!((0..6).all(|i| g.degree(i) == 3));
        assert_eq!(is_bipartite(g), Some((3, 3)));

        let g4 = build_big_permutograph(4).unwrap();
        assert_eq!(g4.graph().vertex_count(), 24);
        assert_eq!(g4.graph().edge_count(), 84);
        assert!(verify_permutograph(g4.graph()).is_ok());
        assert!(build_big_permutograph(1).is_err());
        assert!(build_big_permutograph(8).is_err());
    }

    #[test]
    fn permutohedron_small_orders() {
        let g2 = build_permutohedron_graph(2).unwrap();
        assert_eq!(g2.graph().edge_count(), 1);
        assert_eq!(g2.graph().edges()[0].2, 1);

        let g3 = build_permutohedron_graph(3).unwrap();
        let g = g3.graph();
        assert_eq!(g.edge_count(), 6);
        assert!((0..6).all(|i| g.degree(i) == 2));
        assert!(g.edges().iter().all(|e| e.2 == 1));
        assert_eq!(g.shortest_path_distance(&p("123"), &p("321")).unwrap(), Some(3));
        assert_eq!(g.shortest_path_distance(&p("231"), &p("231")).unwrap(), Some(0));

        let g4 = build_permutohedron_graph(4).unwrap();
        assert_eq!(g4.graph().edge_count(), 36);
        assert!((0..24).all(|i| g4.graph().degree(i) == 3));
        assert!(verify_permutograph(g4.graph()).is_ok());
    }

    #[test]
    fn direct_heavy_edge() {
        let g = build_big_permutograph(3).unwrap();
        assert_eq!(
            g.graph().shortest_path_distance(&p("123"), &p("321")).unwrap(),
            Some(3)
        );
        assert!(g.graph().shortest_path_distance(&p("12"), &p("21")).is_err());
    }

    #[test]
    fn hexagon_minus_edge_is_not_isometric() {
        let hex = build_permutohedron_graph(3).unwrap().into_graph();
        let mut g = WeightedGraph::new(hex.vertices().to_vec()).unwrap();
        for &(a, b, _) in hex.edges() {
            let (pa, pb) = (hex.vertex(a).clone(), hex.vertex(b).clone());
            if (pa.to_string(), pb.to_string()) != ("123".into(), "213".into()) {
                g.add_edge(&pa, &pb).unwrap();
            }
        }
        let v = verify_permutograph(&g).unwrap_err();
        assert_eq!((v.a, v.b), (p("123"), p("213")));
        assert_eq!(v.path, Some(5));
        assert_eq!(v.inversion, 1);
    }

    #[test]
    fn disconnected_graph_reports_unreachable() {
        let g = WeightedGraph::new(vec![p("123"), p("321")]).unwrap();
        let v = verify_permutograph(&g).unwrap_err();
        assert_eq!(v.path, None);
        assert_eq!(v.inversion, 3);
    }

    #[test]
    fn induced_examples() {
        let all = induced_permutograph(3, all_permutations(3)).unwrap();
        assert_eq!(all.graph().edge_count(), 9);
        let pair = induced_permutograph(3, vec![p("123"), p("213")]).unwrap();
        assert_eq!(pair.graph().edge_count(), 1);
        // The direct 123-321 edge has weight 3, but 123 and 231 are only
        // joined through 321, giving 3 + 1 != 2.
        let g = induced_graph(3, vec![p("123"), p("321"), p("231")]).unwrap();
        assert_eq!(g.shortest_path_distance(&p("123"), &p("321")).unwrap(), Some(3));
        let v = verify_permutograph(&g).unwrap_err();
        assert_eq!((v.a, v.b, v.path, v.inversion), (p("123"), p("231"), Some(4), 2));
        assert!(induced_permutograph(3, vec![p("123"), p("321"), p("231")]).is_err());
        // 123 and 231 are not adjacent and nothing lies between them here.
        let err = induced_permutograph(3, vec![p("123"), p("231")]).unwrap_err();
        assert_eq!(err.kind(), "isometry-violation");
        assert!(induced_permutograph(3, vec![p("123"), p("123")]).is_err());
    }

    #[test]
    fn edge_validation() {
        let mut g = WeightedGraph::new(vec![p("123"), p("213")]).unwrap();
        assert!(g.add_weighted_edge(&p("123"), &p("213"), 2).is_err());
        assert!(g.add_weighted_edge(&p("123"), &p("123"), 0).is_err());
        g.add_edge(&p("123"), &p("213")).unwrap();
        assert!(g.add_edge(&p("213"), &p("123")).is_err());

        let mut bad = WeightedGraph::new(vec![p("123"), p("231")]).unwrap();
        bad.add_edge(&p("123"), &p("231")).unwrap();
        assert_eq!(Permutograph::new(bad).unwrap_err().kind(), "invalid-edge");
    }

    #[test]
    fn dump_roundtrip() {
        let g = build_big_permutograph(3).unwrap().into_graph();
        let text = dump_graph(&g);
        assert!(text.starts_with("vertices:\n123\n"));
        let back = parse_graph_dump(&text).unwrap();
        assert_eq!(back.vertices(), g.vertices());
        assert_eq!(back.edges(), g.edges());

        let edges_only = parse_graph_dump("# hexagon piece\n123 213 1\n213 231 1\n").unwrap();
        assert_eq!(edges_only.vertex_count(), 3);
        let err = parse_graph_dump("vertices:\n123\n123 213\n").unwrap_err();
        assert_eq!(err, Error::syntax(3, 1, "expected a vertex or `<perm> <perm> <weight>`"));
        assert_eq!(parse_graph_dump("123 213 x\n").unwrap_err().kind(), "syntax");
    }
}
