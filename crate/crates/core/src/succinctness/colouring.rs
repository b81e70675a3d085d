use super::ConditionGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColouringMode {
    /// Branch and bound, giving up after `budget` search nodes.
    Exact { budget: u64 },
    /// Largest degree first; an upper bound.
    Greedy,
}

/// `colour[v] < size` for every vertex; isolated vertices get colour 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    pub size: usize,
    pub colour: Vec<usize>,
}

/// The non-isolated part of a graph, reindexed.
struct Core {
    vertices: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
}

impl Core {
    fn new(graph: &ConditionGraph) -> Core {
        let vertices = graph.non_isolated();
        let mut local = vec![usize::MAX; graph.num_vertices()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adjacency = vertices
            .iter()
            .map(|&v| graph.neighbours(v).map(|w| local[w]).collect())
            .collect();
        Core { vertices, adjacency }
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }

    fn by_degree(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.adjacency[v].len()));
        order
    }

    fn greedy(&self) -> Vec<usize> {
        let mut colour = vec![usize::MAX; self.len()];
        for v in self.by_degree() {
            let taken: Vec<usize> = self.adjacency[v].iter().map(|&w| colour[w]).collect();
            colour[v] = (0..).find(|c| !taken.contains(c)).expect("some colour is free");
        }
        colour
    }

    /// Greedy maximal cliques seeded at every vertex; the largest one.
    fn clique(&self) -> Vec<usize> {
        let order = self.by_degree();
        let mut rank = vec![0; self.len()];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let mut best = Vec::new();
        for &v in &order {
            let mut candidates = self.adjacency[v].clone();
            candidates.sort_by_key(|&w| rank[w]);
            let mut clique = vec![v];
            for w in candidates {
                if clique.iter().all(|u| self.adjacency[w].binary_search(u).is_ok()) {
                    clique.push(w);
                }
            }
            if clique.len() > best.len() {
                best = clique;
            }
        }
        best
    }

    fn expand(&self, graph: &ConditionGraph, local: &[usize], size: usize) -> Colouring {
        let mut colour = vec![0; graph.num_vertices()];
        for (i, &v) in self.vertices.iter().enumerate() {
            colour[v] = local[i];
        }
        Colouring { size, colour }
    }
}

/// DSATUR backtracking for a `k`-colouring, with the seed clique precoloured.
struct Search<'a> {
    core: &'a Core,
    k: usize,
    colour: Vec<Option<usize>>,
    /// `seen[v][c]`: coloured neighbours of `v` with colour `c`.
    seen: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    nodes: &'a mut u64,
    budget: u64,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = Some(c);
        for &w in &self.core.adjacency[v] {
            self.seen[w][c] += 1;
            if self.seen[w][c] == 1 {
                self.saturation[w] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colour[v] = None;
        for &w in &self.core.adjacency[v] {
            self.seen[w][c] -= 1;
            if self.seen[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn run(&mut self, used: usize) -> Result<bool> {
        *self.nodes += 1;
        if *self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let pick = (0..self.core.len())
            .filter(|&v| self.colour[v].is_none())
            .max_by_key(|&v| (self.saturation[v], self.core.adjacency[v].len(), std::cmp::Reverse(v)));
        let Some(v) = pick else {
            return Ok(true);
        };
        if self.saturation[v] >= self.k {
            return Ok(false);
        }
        // Colours above `used` are interchangeable, so only the first is tried.
        for c in 0..self.k.min(used + 1) {
            if self.seen[v][c] > 0 {
                continue;
            }
            self.assign(v, c);
            if self.run(used.max(c + 1))? {
                return Ok(true);
            }
            self.unassign(v, c);
        }
        Ok(false)
    }
}

fn colour_with(core: &Core, clique: &[usize], k: usize, nodes: &mut u64, budget: u64) -> Result<Option<Vec<usize>>> {
    let mut search = Search {
        core,
        k,
        colour: vec![None; core.len()],
        seen: vec![vec![0; k]; core.len()],
        saturation: vec![0; core.len()],
        nodes,
        budget,
    };
    for (c, &v) in clique.iter().enumerate() {
        search.assign(v, c);
    }
    if search.run(clique.len())? {
        Ok(Some(search.colour.into_iter().map(|c| c.expect("all coloured")).collect()))
    } else {
        Ok(None)
    }
}

/// A proper colouring: of minimum size in exact mode (iterative deepening
/// from the clique bound), or the greedy one.
pub fn chromatic_number(graph: &ConditionGraph, mode: ColouringMode) -> Result<Colouring> {
    let core = Core::new(graph);
    if core.len() == 0 {
        return Ok(Colouring {
            size: 1,
            colour: vec![0; graph.num_vertices()],
        });
    }
    let greedy = core.greedy();
    let upper = greedy.iter().max().expect("nonempty") + 1;
    let ColouringMode::Exact { budget } = mode else {
        return Ok(core.expand(graph, &greedy, upper));
    };
    let clique = core.clique();
    let mut nodes = 0;
    for k in clique.len()..upper {
        if let Some(local) = colour_with(&core, &clique, k, &mut nodes, budget)? {
            return Ok(core.expand(graph, &local, k));
        }
    }
    Ok(core.expand(graph, &greedy, upper))
}

/// A large clique, found greedily; its size bounds χ from below.
pub fn clique_lower_bound(graph: &ConditionGraph) -> Vec<usize> {
    let core = Core::new(graph);
    let mut clique: Vec<usize> = core.clique().into_iter().map(|v| core.vertices[v]).collect();
    clique.sort_unstable();
    clique
}
