//! Index-based directed graph helpers shared by the product, cleaning and
//! constraint code: reachability, SCCs and accepting-lasso search.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

#[derive(Debug, Clone, Default)]
pub struct Digraph {
    pub edges: Vec<(usize, usize)>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

/// An accepting lasso as edge indices: `stem` leads from an initial node to
/// the first node of `cycle`, which returns to it through an accepting node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLasso {
    pub start: usize,
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Digraph {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut succ = vec![Vec::new(); nodes];
        let mut pred = vec![Vec::new(); nodes];
        for (i, &(a, b)) in edges.iter().enumerate() {
            succ[a].push(i);
            pred[b].push(i);
        }
        Digraph { edges, succ, pred }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successors(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[n].iter().map(move |&e| self.edges[e].1)
    }

    pub fn predecessors(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        self.pred[n].iter().map(move |&e| self.edges[e].0)
    }

    /// Nodes reachable from `seeds` (inclusive) through nodes satisfying `allowed`.
    /// Seeds outside `allowed` are ignored.
    pub fn forward(
        &self,
        seeds: impl IntoIterator<Item = usize>,
        allowed: impl Fn(usize) -> bool,
    ) -> Vec<bool> {
        self.closure(seeds, &allowed, false)
    }

    /// Nodes that reach some seed (inclusive) through nodes satisfying `allowed`.
    pub fn backward(
        &self,
        seeds: impl IntoIterator<Item = usize>,
        allowed: impl Fn(usize) -> bool,
    ) -> Vec<bool> {
        self.closure(seeds, &allowed, true)
    }

    fn closure(
        &self,
        seeds: impl IntoIterator<Item = usize>,
        allowed: &dyn Fn(usize) -> bool,
        rev: bool,
    ) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for s in seeds {
            if allowed(s) && !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(n) = queue.pop_front() {
            let next: Box<dyn Iterator<Item = usize>> = if rev {
                Box::new(self.predecessors(n))
            } else {
                Box::new(self.successors(n))
            };
            for m in next {
                if allowed(m) && !seen[m] {
                    seen[m] = true;
                    queue.push_back(m);
                }
            }
        }
        seen
    }

    /// Nodes that lie in a non-trivial SCC of the subgraph induced by `allowed`
    /// (an SCC with at least two nodes or a self-loop) that contains a node
    /// satisfying `accepting`.
    pub fn accepting_cycle_nodes(
        &self,
        allowed: impl Fn(usize) -> bool,
        accepting: impl Fn(usize) -> bool,
    ) -> Vec<bool> {
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(self.len(), self.edges.len());
        for _ in 0..self.len() {
            g.add_node(());
        }
        for &(a, b) in &self.edges {
            if allowed(a) && allowed(b) {
                g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
            }
        }
        let mut out = vec![false; self.len()];
        for scc in tarjan_scc(&g) {
            if !scc.iter().all(|n| allowed(n.index())) {
                continue;
            }
            let nontrivial = scc.len() > 1 || {
                let n = scc[0].index();
                self.successors(n).any(|m| m == n)
            };
            if nontrivial && scc.iter().any(|n| accepting(n.index())) {
                for n in scc {
                    out[n.index()] = true;
                }
            }
        }
        out
    }

    /// Nodes lying on some accepting lasso from `initial`, within `allowed`.
    pub fn on_accepting_lasso(
        &self,
        initial: &[usize],
        allowed: impl Fn(usize) -> bool,
        accepting: impl Fn(usize) -> bool,
    ) -> Vec<bool> {
        let fwd = self.forward(initial.iter().copied(), &allowed);
        let cyc = self.accepting_cycle_nodes(&allowed, &accepting);
        let seeds: Vec<usize> = (0..self.len()).filter(|&n| cyc[n] && fwd[n]).collect();
        let bwd = self.backward(seeds, &allowed);
        (0..self.len()).map(|n| fwd[n] && bwd[n]).collect()
    }

    /// Shortest edge path from any of `from` to a node satisfying `goal`,
    /// using only edges satisfying `edge_ok`. Returns the start node and edges.
    pub fn shortest_path(
        &self,
        from: &[usize],
        goal: impl Fn(usize) -> bool,
        edge_ok: impl Fn(usize) -> bool,
    ) -> Option<(usize, Vec<usize>)> {
        let mut parent: Vec<Option<usize>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut origin = vec![usize::MAX; self.len()];
        let mut queue = VecDeque::new();
        for &s in from {
            if !seen[s] {
                seen[s] = true;
                origin[s] = s;
                queue.push_back(s);
            }
        }
        while let Some(n) = queue.pop_front() {
            if goal(n) {
                let mut path = Vec::new();
                let mut cur = n;
                while let Some(e) = parent[cur] {
                    path.push(e);
                    cur = self.edges[e].0;
                }
                path.reverse();
                return Some((origin[n], path));
            }
            for &e in &self.succ[n] {
                let m = self.edges[e].1;
                if edge_ok(e) && !seen[m] {
                    seen[m] = true;
                    parent[m] = Some(e);
                    origin[m] = origin[n];
                    queue.push_back(m);
                }
            }
        }
        None
    }

    /// A lasso reaching an accepting node that lies on a cycle; the stem is a
    /// shortest path to the closest such node, the cycle a shortest return path.
    pub fn accepting_lasso(
        &self,
        initial: &[usize],
        accepting: impl Fn(usize) -> bool,
    ) -> Option<EdgeLasso> {
        let cyc = self.accepting_cycle_nodes(|_| true, |_| true);
        let (start, stem) = self.shortest_path(initial, |n| cyc[n] && accepting(n), |_| true)?;
        let anchor = stem.last().map_or(start, |&e| self.edges[e].1);
        let mut best: Option<Vec<usize>> = None;
        for &e in &self.succ[anchor] {
            let m = self.edges[e].1;
            let rest = if m == anchor {
                Some(Vec::new())
            } else {
                self.shortest_path(&[m], |n| n == anchor, |_| true)
                    .map(|(_, p)| p)
            };
            if let Some(rest) = rest {
                let mut cycle = vec![e];
                cycle.extend(rest);
                if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                    best = Some(cycle);
                }
            }
        }
        best.map(|cycle| EdgeLasso { start, stem, cycle })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lasso_on_self_loop() {
        let g = Digraph::new(1, vec![(0, 0)]);
        let l = g.accepting_lasso(&[0], |_| true).unwrap();
        assert!(l.stem.is_empty());
        assert_eq!(l.cycle, vec![0]);
    }

    #[test]
    fn no_lasso_without_cycle() {
        let g = Digraph::new(2, vec![(0, 1)]);
        assert!(g.accepting_lasso(&[0], |_| true).is_none());
    }

    #[test]
    fn accepting_node_must_be_on_cycle() {
        let g = Digraph::new(3, vec![(0, 1), (1, 2), (2, 2)]);
        assert!(g.accepting_lasso(&[0], |n| n == 1).is_none());
        let l = g.accepting_lasso(&[0], |n| n == 2).unwrap();
        assert_eq!(l.stem, vec![0, 1]);
        assert_eq!(l.cycle, vec![2]);
    }

    #[test]
    fn lasso_nodes_exclude_dead_ends() {
        let g = Digraph::new(4, vec![(0, 1), (1, 0), (0, 2), (3, 0)]);
        let on = g.on_accepting_lasso(&[0], |_| true, |n| n == 1);
        assert_eq!(on, vec![true, true, false, false]);
    }
}
