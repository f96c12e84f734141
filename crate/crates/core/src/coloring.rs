//! Budgeted k-coloring search, for experiments with partitions into more than
//! two classes.

use serde::Serialize;

use crate::graph::AssociatedGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ColoringOutcome {
    /// A proper coloring, one class index in `0..k` per vertex.
    Colored(Vec<usize>),
    /// Exhaustive search proved no proper k-coloring exists.
    Impossible,
    /// The node budget ran out first.
    Undecided { nodes: u64 },
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Backtracking over vertices in descending-degree order, one connected
/// component at a time, with the usual symmetry break (a vertex never opens
/// more than one new color). `budget` bounds the total number of search
/// nodes.
pub fn k_colorable(g: &AssociatedGraph, k: usize, budget: u64) -> ColoringOutcome {
    assert!(k >= 1, "k must be at least 1");
    let n = g.vertex_count();
    let mut colors = vec![usize::MAX; n];
    let mut nodes = 0u64;
    for component in components(g) {
        let mut order = component;
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut search = Search {
            g,
            k,
            order: &order,
            colors: &mut colors,
            nodes: &mut nodes,
            budget,
        };
        match search.extend(0, 0) {
            Step::Done => {}
            Step::Dead => return ColoringOutcome::Impossible,
            Step::OutOfBudget => return ColoringOutcome::Undecided { nodes },
        }
    }
    assert!(
        is_proper(g, &colors, k),
        "search produced an improper coloring"
    );
    ColoringOutcome::Colored(colors)
}

pub fn is_proper(g: &AssociatedGraph, colors: &[usize], k: usize) -> bool {
    colors.len() == g.vertex_count()
        && colors.iter().all(|&c| c < k)
        && g.edges().all(|(i, j)| colors[i] != colors[j])
}

fn components(g: &AssociatedGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out.push(comp);
    }
    out
}

enum Step {
    Done,
    Dead,
    OutOfBudget,
}

struct Search<'a> {
    g: &'a AssociatedGraph,
    k: usize,
    order: &'a [usize],
    colors: &'a mut [usize],
    nodes: &'a mut u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self, pos: usize, used: usize) -> Step {
        if pos == self.order.len() {
            return Step::Done;
        }
        let v = self.order[pos];
        let limit = self.k.min(used + 1);
        for c in 0..limit {
            if self.g.neighbors(v).iter().any(|&u| self.colors[u] == c) {
                continue;
            }
            *self.nodes += 1;
            if *self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            self.colors[v] = c;
            match self.extend(pos + 1, used.max(c + 1)) {
                Step::Dead => {}
                other => return other,
            }
        }
        self.colors[v] = usize::MAX;
        Step::Dead
    }
}
