//! The associated graph of a target set and its bipartiteness certificates.
//!
//! Vertices `r ≠ s` are adjacent when `rs ∈ U` or `sr ∈ U`; `U` is avoidable
//! exactly when this graph on all of B is bipartite. On a window we either
//! produce a 2-coloring or an odd cycle, and [`verify_certificate`] re-checks
//! either one from scratch.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::element::{format_elements, parse_elements, Element};
use crate::error::Error;
use crate::exec::Exec;
use crate::window::{right_factors, TargetSet, Window};

/// One of the two classes of a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    pub fn digit(self) -> char {
        match self {
            Side::A => '0',
            Side::B => '1',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// Undirected, loop-free graph on elements of B.
#[derive(Clone, Debug)]
pub struct AssociatedGraph {
    vertices: Vec<Element>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<Element, usize>,
}

impl AssociatedGraph {
    /// Builds a graph from explicit vertices and edges; loops and duplicate
    /// edges are dropped, unknown endpoints are added as vertices.
    pub fn from_edges(
        vertices: impl IntoIterator<Item = Element>,
        edges: impl IntoIterator<Item = (Element, Element)>,
    ) -> Self {
        let mut graph = AssociatedGraph {
            vertices: Vec::new(),
            adjacency: Vec::new(),
            index: HashMap::new(),
        };
        for v in vertices {
            graph.intern(v);
        }
        for (u, v) in edges {
            let (i, j) = (graph.intern(u), graph.intern(v));
            if i != j {
                graph.adjacency[i].push(j);
                graph.adjacency[j].push(i);
            }
        }
        graph.normalize();
        graph
    }

    fn intern(&mut self, v: Element) -> usize {
        if let Some(&i) = self.index.get(&v) {
            return i;
        }
        self.vertices.push(v);
        self.adjacency.push(Vec::new());
        self.index.insert(v, self.vertices.len() - 1);
        self.vertices.len() - 1
    }

    fn normalize(&mut self) {
        for list in &mut self.adjacency {
            list.sort_unstable();
            list.dedup();
        }
    }

    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn index_of(&self, v: Element) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: Element, v: Element) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adjacency[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// Edges `(i, j)` with `i < j`, in order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
    }

    /// DOT rendering; vertices of a supplied coloring get a color attribute.
    pub fn to_dot(&self, coloring: Option<&BTreeMap<Element, Side>>) -> String {
        let mut out = String::from("graph associated {\n");
        for v in &self.vertices {
            match coloring.and_then(|c| c.get(v)) {
                Some(Side::A) => writeln!(out, "  \"{v}\" [label=\"{v}\", color=red];"),
                Some(Side::B) => writeln!(out, "  \"{v}\" [label=\"{v}\", color=blue];"),
                None => writeln!(out, "  \"{v}\" [label=\"{v}\"];"),
            }
            .unwrap();
        }
        for (i, j) in self.edges() {
            writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                self.vertices[i], self.vertices[j]
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// The associated graph of `target` on the window `w`.
///
/// Edges come from enumerating, for each left factor `r` in the window and
/// each reachable target `u`, the right factors `s` with `rs = u`
/// (see [`right_factors`]); targets outside the product hull of `w` cannot be
/// hit, so families are intersected with that hull first.
pub fn associated_graph(w: Window, target: &TargetSet) -> AssociatedGraph {
    associated_graph_with(w, target, Exec::default())
}

pub fn associated_graph_with(w: Window, target: &TargetSet, exec: Exec) -> AssociatedGraph {
    let reachable: Vec<Element> = target.reachable_from(w).into_iter().collect();
    let vertices = w.elements();
    let right: Vec<Vec<usize>> = exec.map_range(0..vertices.len(), |i| {
        let r = vertices[i];
        let mut out = Vec::new();
        for &u in &reachable {
            for s in right_factors(r, u) {
                if let Some(j) = w.index_of(s) {
                    if j != i {
                        out.push(j);
                    }
                }
            }
        }
        out
    });
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for (i, list) in right.into_iter().enumerate() {
        for j in list {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
    }
    let index = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut graph = AssociatedGraph {
        vertices,
        adjacency,
        index,
    };
    graph.normalize();
    graph
}

/// Reference construction that tests every unordered pair directly.
pub fn associated_graph_pairwise(w: Window, target: &TargetSet) -> AssociatedGraph {
    let vertices = w.elements();
    let mut edges = Vec::new();
    for (i, &r) in vertices.iter().enumerate() {
        for &s in &vertices[i + 1..] {
            if target.contains(r * s) || target.contains(s * r) {
                edges.push((r, s));
            }
        }
    }
    AssociatedGraph::from_edges(vertices, edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    TwoColoring(BTreeMap<Element, Side>),
    OddCycle(Vec<Element>),
}

impl Certificate {
    pub fn is_two_coloring(&self) -> bool {
        matches!(self, Certificate::TwoColoring(_))
    }

    pub fn odd_cycle(&self) -> Option<&[Element]> {
        match self {
            Certificate::OddCycle(cycle) => Some(cycle),
            Certificate::TwoColoring(_) => None,
        }
    }
}

/// BFS 2-coloring; on the first monochromatic edge the two tree paths to the
/// common ancestor close an odd cycle. Start vertices and neighbors are
/// visited in vertex order, so the result is deterministic.
pub fn bipartition_or_odd_cycle(g: &AssociatedGraph) -> Certificate {
    let n = g.vertex_count();
    let mut side: Vec<Option<Side>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(Side::A);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &v in g.neighbors(u) {
                match side[v] {
                    None => {
                        side[v] = Some(su.flip());
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(sv) if sv == su => {
                        let cycle = close_cycle(u, v, &parent, &depth);
                        return Certificate::OddCycle(
                            cycle.into_iter().map(|i| g.vertices[i]).collect(),
                        );
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Certificate::TwoColoring(
        g.vertices
            .iter()
            .zip(side)
            .map(|(&v, s)| (v, s.unwrap()))
            .collect(),
    )
}

fn close_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut x, mut y) = (u, v);
    let mut left = vec![x];
    let mut right = vec![y];
    while x != y {
        if depth[x] >= depth[y] {
            x = parent[x];
            left.push(x);
        } else {
            y = parent[y];
            right.push(y);
        }
    }
    // left ends at the ancestor; right's last entry repeats it
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// Re-checks a certificate against `g` using only the graph's adjacency.
pub fn verify_certificate(g: &AssociatedGraph, c: &Certificate) -> bool {
    match c {
        Certificate::TwoColoring(coloring) => {
            g.vertices.iter().all(|v| coloring.contains_key(v))
                && g.edges()
                    .all(|(i, j)| coloring[&g.vertices[i]] != coloring[&g.vertices[j]])
        }
        Certificate::OddCycle(cycle) => {
            let k = cycle.len();
            k >= 3
                && k % 2 == 1
                && (0..k).all(|i| {
                    let (u, v) = (cycle[i], cycle[(i + 1) % k]);
                    u != v && g.has_edge(u, v)
                })
        }
    }
}

impl fmt::Display for Certificate {
    /// Line-oriented text: `certificate <kind>`, then `vertices`, and for
    /// colorings one line per class.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::OddCycle(cycle) => {
                writeln!(f, "certificate odd-cycle")?;
                writeln!(f, "vertices {}", format_elements(cycle))
            }
            Certificate::TwoColoring(coloring) => {
                writeln!(f, "certificate two-coloring")?;
                writeln!(f, "vertices {}", format_elements(coloring.keys()))?;
                for side in [Side::A, Side::B] {
                    let class = coloring.iter().filter(|(_, &s)| s == side).map(|(v, _)| v);
                    writeln!(f, "{side} {}", format_elements(class))?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Certificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut kind = None;
        let mut vertices = None;
        let mut classes: BTreeMap<Element, Side> = BTreeMap::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match key {
                "certificate" => kind = Some(rest.trim().to_string()),
                "vertices" => vertices = Some(parse_elements(rest)?),
                "A" | "B" => {
                    let side = if key == "A" { Side::A } else { Side::B };
                    for v in parse_elements(rest)? {
                        if classes.insert(v, side).is_some() {
                            return Err(Error::Parse(format!("{v} listed twice")));
                        }
                    }
                }
                other => return Err(Error::Parse(format!("unknown certificate line {other:?}"))),
            }
        }
        let vertices = vertices.ok_or_else(|| Error::Parse("missing vertices line".into()))?;
        match kind.as_deref() {
            Some("odd-cycle") => Ok(Certificate::OddCycle(vertices)),
            Some("two-coloring") => {
                if vertices.iter().any(|v| !classes.contains_key(v))
                    || vertices.len() != classes.len()
                {
                    return Err(Error::Parse("class lines do not match vertices".into()));
                }
                Ok(Certificate::TwoColoring(classes))
            }
            _ => Err(Error::Parse("unknown certificate kind".into())),
        }
    }
}
