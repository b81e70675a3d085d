//! The family `F_n` of Muller conditions whose good-for-games Rabin
//! automata have `⌊n/2⌋` states while deterministic Rabin automata need
//! exponentially many: condition graphs, their chromatic numbers, the
//! binomial lower bound, final strongly connected components, and the
//! resulting size report.

mod colouring;
mod fscc;
mod report;

pub use colouring::{chromatic_number, clique_lower_bound, Colouring, ColouringMode};
pub use fscc::{fscc, verify_disjoint_fscc};
pub use report::{succinctness_report, LowerBoundSource, ReportOptions, SuccinctnessReport, ALPHA_CLAIM};

use crate::conditions::{Alphabet, LetterSet, MullerCondition};
use crate::error::{Error, Result};

/// Largest alphabet whose condition graph is materialised.
pub const MAX_GRAPH_LETTERS: usize = 20;

/// `F_n`: the sets of exactly `⌊n/2⌋` letters of `{1, ..., n}`.
pub fn condition_fn(n: usize) -> Result<MullerCondition> {
    if n < 2 {
        return Err(Error::Precondition(format!("F_n needs n ≥ 2, got {n}")));
    }
    if n > 63 {
        return Err(Error::AlphabetTooLarge(n, 63));
    }
    let half = (n / 2) as u32;
    let masks = (1u64..1 << n).filter(|m| m.count_ones() == half);
    MullerCondition::from_masks(Alphabet::numbered(n)?, masks)
}

/// Vertices are all subsets of the alphabet, as bit masks; `{C₁, C₂}` is an
/// edge when both sets are rejecting and their union is accepting. In a
/// deterministic Rabin automaton for the condition, adjacent sets have
/// disjoint final components, so χ bounds its number of states from below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionGraph {
    letters: usize,
    /// Sorted neighbour lists.
    adjacency: Vec<Vec<u32>>,
}

pub fn build_condition_graph(condition: &MullerCondition) -> Result<ConditionGraph> {
    let n = condition.alphabet().len();
    if n > MAX_GRAPH_LETTERS {
        return Err(Error::AlphabetTooLarge(n, MAX_GRAPH_LETTERS));
    }
    let size = 1usize << n;
    let mut accepting = vec![false; size];
    for s in condition.accepting() {
        accepting[s.mask().expect("at most 20 letters") as usize] = true;
    }
    let mut adjacency = vec![Vec::new(); size];
    // Every edge lies below its union: enumerate C₁ ⊆ U and C₂ = (U \ C₁) ∪ S
    // with S ⊆ C₁, which costs 3^|U| per accepting set U.
    for u in (0..size).filter(|&u| accepting[u]) {
        let mut c1 = u;
        loop {
            if !accepting[c1] {
                let rest = u & !c1;
                let mut s = c1;
                loop {
                    let c2 = rest | s;
                    if c1 < c2 && !accepting[c2] {
                        adjacency[c1].push(c2 as u32);
                        adjacency[c2].push(c1 as u32);
                    }
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & c1;
                }
            }
            if c1 == 0 {
                break;
            }
            c1 = (c1 - 1) & u;
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    Ok(ConditionGraph { letters: n, adjacency })
}

impl ConditionGraph {
    /// Builds a graph over the subsets of `letters` letters from explicit edges.
    pub fn from_edges(letters: usize, edges: &[(usize, usize)]) -> Result<ConditionGraph> {
        if letters > MAX_GRAPH_LETTERS {
            return Err(Error::AlphabetTooLarge(letters, MAX_GRAPH_LETTERS));
        }
        let size = 1usize << letters;
        let mut adjacency = vec![Vec::new(); size];
        for &(a, b) in edges {
            if a >= size || b >= size || a == b {
                return Err(Error::Precondition(format!("bad edge ({a}, {b})")));
            }
            adjacency[a].push(b as u32);
            adjacency[b].push(a as u32);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(ConditionGraph { letters, adjacency })
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn vertex_set(&self, v: usize) -> LetterSet {
        LetterSet::from_mask(self.letters, v as u64)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&w| w as usize)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&(b as u32)).is_ok()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().map(move |&b| (a, b as usize)).filter(|&(a, b)| a < b))
    }

    /// Vertices with at least one edge, ascending.
    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.degree(v) > 0).collect()
    }

    pub fn is_proper(&self, colouring: &Colouring) -> bool {
        colouring.colour.len() == self.num_vertices()
            && colouring.colour.iter().all(|&c| c < colouring.size)
            && self.edges().all(|(a, b)| colouring.colour[a] != colouring.colour[b])
    }
}

/// Lower bound on the chromatic number of `vertices` vertices whose
/// independent sets have at most `max_independent` elements.
pub fn independent_bound_chi(vertices: u128, max_independent: u128) -> Result<u128> {
    if max_independent == 0 {
        return Err(Error::Precondition("independence bound must be at least 1".into()));
    }
    Ok(vertices.div_ceil(max_independent))
}

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(c)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Lower bound on `χ(G_{F_n})` for `n = 5p`, `p` prime: the `k`-sets with
/// `k = ⌊3n/10⌋` induce a subgraph whose independent sets have at most
/// `C(n, n/5 − 1)` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BinomialBound {
    pub n: u64,
    pub k: u64,
    pub t: u64,
    pub vertices: u128,
    pub max_independent: u128,
    pub bound: u128,
}

pub fn binomial_lower_bound(n: u64) -> Result<BinomialBound> {
    if !n.is_multiple_of(5) || !is_prime(n / 5) {
        return Err(Error::Precondition(format!("n = {n} is not 5 times a prime")));
    }
    let k = 3 * n / 10;
    let t = n / 10;
    let overflow = || Error::Precondition(format!("binomials for n = {n} overflow"));
    let vertices = binomial(n, k).ok_or_else(overflow)?;
    let max_independent = binomial(n, n / 5 - 1).ok_or_else(overflow)?;
    Ok(BinomialBound {
        n,
        k,
        t,
        vertices,
        max_independent,
        bound: independent_bound_chi(vertices, max_independent)?,
    })
}

/// χ of the condition graph of `condition`, exactly if the search fits the
/// budget, and otherwise the largest clique found; the flag says which.
pub fn det_rabin_lower_bound(condition: &MullerCondition, budget: u64) -> Result<(usize, bool)> {
    let graph = build_condition_graph(condition)?;
    match chromatic_number(&graph, ColouringMode::Exact { budget }) {
        Ok(c) => Ok((c.size, true)),
        Err(Error::BudgetExceeded(_)) => Ok((clique_lower_bound(&graph).len(), false)),
        Err(e) => Err(e),
    }
}
