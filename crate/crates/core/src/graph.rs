//! Edge-coloured directed graphs and the strongly-connected-component
//! machinery shared by automata acceptance and strategy verification.

use crate::conditions::LetterSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct GEdge {
    pub src: usize,
    pub colour: Option<usize>,
    pub dst: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct ColouredGraph {
    pub n: usize,
    pub colours: usize,
    pub edges: Vec<GEdge>,
}

/// A strongly connected component that carries at least one internal edge.
#[derive(Clone, Debug)]
pub(crate) struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub colours: LetterSet,
}

impl ColouredGraph {
    pub fn new(n: usize, colours: usize) -> Self {
        ColouredGraph {
            n,
            colours,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, src: usize, colour: Option<usize>, dst: usize) {
        self.edges.push(GEdge { src, colour, dst });
    }

    /// Vertices reachable from `roots`.
    pub fn reachable(&self, roots: &[usize]) -> Vec<bool> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.src].push(e.dst);
        }
        let mut seen = vec![false; self.n];
        let mut stack: Vec<usize> = roots.to_vec();
        for &r in roots {
            seen[r] = true;
        }
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// The subgraph induced by the reachable part; vertex ids are kept.
    pub fn restrict_to_reachable(&self, roots: &[usize]) -> ColouredGraph {
        let seen = self.reachable(roots);
        ColouredGraph {
            n: self.n,
            colours: self.colours,
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| seen[e.src] && seen[e.dst])
                .collect(),
        }
    }

    /// Nontrivial SCCs of the subgraph formed by the edges (by index) in `edge_ids`.
    pub fn components_of(&self, edge_ids: &[usize]) -> Vec<Component> {
        let comp = tarjan(
            self.n,
            edge_ids.iter().map(|&i| (self.edges[i].src, self.edges[i].dst)),
        );
        let mut by_comp: std::collections::BTreeMap<usize, Component> = Default::default();
        for &i in edge_ids {
            let e = self.edges[i];
            if comp[e.src] == comp[e.dst] {
                let c = by_comp.entry(comp[e.src]).or_insert_with(|| Component {
                    vertices: Vec::new(),
                    edges: Vec::new(),
                    colours: LetterSet::empty(self.colours),
                });
                c.edges.push(i);
                if let Some(col) = e.colour {
                    c.colours.insert(col);
                }
            }
        }
        for (v, &c) in comp.iter().enumerate() {
            if let Some(component) = by_comp.get_mut(&c) {
                component.vertices.push(v);
            }
        }
        by_comp.into_values().collect()
    }

    /// Nontrivial SCCs of the subgraph of edges accepted by `keep`.
    pub fn components(&self, keep: impl Fn(&GEdge) -> bool) -> Vec<Component> {
        let ids: Vec<usize> = (0..self.edges.len())
            .filter(|&i| keep(&self.edges[i]))
            .collect();
        self.components_of(&ids)
    }
}

/// Iterative Tarjan; returns a component index for every vertex.
pub(crate) fn tarjan(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for (s, d) in edges {
        adj[s].push(d);
    }
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, next)) = call.last() {
            if next < adj[v].len() {
                let w = adj[v][next];
                call.last_mut().expect("nonempty").1 += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tarjan_finds_cycles() {
        let comp = tarjan(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 3)].into_iter());
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[1], comp[2]);
        assert_eq!(comp[3], comp[4]);
        assert_ne!(comp[0], comp[3]);
    }

    #[test]
    fn trivial_components_are_dropped() {
        let mut g = ColouredGraph::new(3, 2);
        g.add_edge(0, Some(0), 1);
        g.add_edge(1, Some(1), 1);
        let comps = g.components(|_| true);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].vertices, vec![1]);
        assert_eq!(comps[0].colours, LetterSet::from_letters(2, [1]));
    }
}
