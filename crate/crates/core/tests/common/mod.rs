//! Shared fixtures, generators and independent oracles for the integration
//! tests. Nothing here calls the game solver or the construction code to
//! decide an answer; library calls only appear as the thing being checked.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use gfg_muller::automata::{Automaton, Transition};
use gfg_muller::conditions::{Acceptance, Alphabet, LassoWord, LetterSet, MullerCondition, RabinCondition, RabinPair};
use gfg_muller::construction::GfgRabinAutomaton;
use gfg_muller::games::{GameEdge, GameGraph, Player};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn running_example() -> MullerCondition {
    MullerCondition::from_symbols(&["a", "b", "c"], &[&["a", "b"], &["a", "c"], &["b"]]).unwrap()
}

pub fn letters(n: usize) -> Alphabet {
    Alphabet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

/// Every Muller condition over `n` letters, in mask order of the family.
pub fn all_conditions(n: usize) -> impl Iterator<Item = MullerCondition> {
    let sets = (1u64 << n) - 1;
    (0u64..1 << sets).map(move |family| {
        MullerCondition::from_masks(letters(n), (0..sets).filter(|i| family >> i & 1 == 1).map(|i| i + 1))
            .unwrap()
    })
}

/// Each nonempty set accepting with probability 1/2.
pub fn random_condition(rng: &mut ChaCha8Rng, n: usize) -> MullerCondition {
    let masks: Vec<u64> = (1u64..1 << n).filter(|_| rng.gen_bool(0.5)).collect();
    MullerCondition::from_masks(letters(n), masks).unwrap()
}

pub fn mask_of(set: &LetterSet) -> u64 {
    set.mask().unwrap()
}

/// A deterministic Rabin automaton for `F_4` (sets of exactly two of four
/// letters) remembering the last letter read. Colour `4x + y` is the
/// transition `x -y-> y`; the pair of `{i, j}` is green on `i -j->` and
/// `j -i->` and red on every transition entering a letter outside `{i, j}`.
pub fn f4_rabin_automaton() -> Automaton {
    let input = Alphabet::numbered(4).unwrap();
    let colours = Alphabet::new((0..16).map(|c| format!("{}{}", c / 4 + 1, c % 4 + 1))).unwrap();
    let mut transitions = Vec::new();
    for x in 0..4 {
        for y in 0..4 {
            transitions.push(Transition { src: x, letter: y, colour: 4 * x + y, dst: y });
        }
    }
    let mut pairs = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            pairs.push(RabinPair {
                green: LetterSet::from_letters(16, [4 * i + j, 4 * j + i]),
                red: LetterSet::from_letters(16, (0..16).filter(|c| c % 4 != i && c % 4 != j)),
            });
        }
    }
    Automaton::new(
        (1..=4).map(|i| format!("last{i}")).collect(),
        input,
        vec![0],
        transitions,
        Acceptance::Rabin(RabinCondition::new(colours, pairs).unwrap()),
    )
    .unwrap()
}

/// One state with a self-loop per letter, each letter its own colour and
/// one pair per accepting set: far too small to recognise `F_4`.
pub fn one_state_rabin(condition: &MullerCondition) -> Automaton {
    let n = condition.alphabet().len();
    let pairs = condition
        .accepting()
        .map(|s| RabinPair {
            green: s.clone(),
            red: LetterSet::full(n).difference(s),
        })
        .collect();
    Automaton::new(
        vec!["q".into()],
        condition.alphabet().clone(),
        vec![0],
        (0..n).map(|a| Transition { src: 0, letter: a, colour: a, dst: 0 }).collect(),
        Acceptance::Rabin(RabinCondition::new(condition.alphabet().clone(), pairs).unwrap()),
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// Language oracles.
//
// A lasso's run ends in a closed walk of the automaton, and every reachable
// closed walk is the tail of some lasso's run. So an automaton recognises
// the condition on all lassos iff no reachable closed walk has an
// acceptance verdict differing from the condition on the walk's letter
// set. Walks with letter set exactly `S` live in strongly connected parts
// of the `S`-restricted graph whose own letter set is `S`, and covering all
// edges of such a part realises its whole colour set.
// ---------------------------------------------------------------------------

pub struct Machines<'a> {
    pub condition: &'a MullerCondition,
    pub gfg: &'a GfgRabinAutomaton,
    pub parity: &'a Automaton,
}

/// (src, letter, colour, dst)
pub type Edge = (usize, usize, usize, usize);

/// States reachable from `initial`.
fn reachable(states: usize, initial: &[usize], edges: &[Edge]) -> Vec<bool> {
    let mut seen = vec![false; states];
    let mut stack: Vec<usize> = initial.to_vec();
    for &q in initial {
        seen[q] = true;
    }
    while let Some(q) = stack.pop() {
        for e in edges.iter().filter(|e| e.0 == q) {
            if !seen[e.3] {
                seen[e.3] = true;
                stack.push(e.3);
            }
        }
    }
    seen
}

/// Edge sets of the strongly connected parts that contain an edge.
fn scc_edge_sets(states: usize, edges: &[Edge]) -> Vec<Vec<Edge>> {
    let mut reach = vec![vec![false; states]; states];
    for e in edges {
        reach[e.0][e.3] = true;
    }
    for k in 0..states {
        let through = reach[k].clone();
        for row in reach.iter_mut().filter(|row| row[k]) {
            for (x, &y) in row.iter_mut().zip(&through) {
                *x |= y;
            }
        }
    }
    // an edge is inside a part iff its target reaches its source
    let mut component = vec![usize::MAX; states];
    let mut parts: Vec<Vec<Edge>> = Vec::new();
    for &e in edges.iter().filter(|e| reach[e.3][e.0]) {
        if component[e.0] == usize::MAX {
            for v in 0..states {
                if v == e.0 || (reach[e.0][v] && reach[v][e.0]) {
                    component[v] = parts.len();
                }
            }
            parts.push(Vec::new());
        }
        parts[component[e.0]].push(e);
    }
    parts
}

fn letter_mask(edges: &[Edge]) -> u64 {
    edges.iter().fold(0, |m, e| m | 1 << e.1)
}

/// Closed walk on reachable states with letter set exactly `s`, colours
/// all `allowed`, and some colour `must`.
fn walk_exists(states: usize, live: &[bool], edges: &[Edge], s: u64, allowed: impl Fn(usize) -> bool, must: impl Fn(usize) -> bool) -> bool {
    let sub: Vec<Edge> = edges
        .iter()
        .copied()
        .filter(|e| live[e.0] && s >> e.1 & 1 == 1 && allowed(e.2))
        .collect();
    scc_edge_sets(states, &sub)
        .iter()
        .any(|part| letter_mask(part) == s && part.iter().any(|e| must(e.2)))
}

/// Closed walk with letter set exactly `s` accepted by the max-even parity
/// condition `priority`, or rejected when `accepting` is false.
fn parity_walk(states: usize, live: &[bool], edges: &[Edge], s: u64, priority: &dyn Fn(usize) -> u32, accepting: bool) -> bool {
    let top = edges.iter().map(|e| priority(e.2)).max().unwrap_or(0);
    (0..=top)
        .filter(|p| (p % 2 == 0) == accepting)
        .any(|p| walk_exists(states, live, edges, s, |c| priority(c) <= p, |c| priority(c) == p))
}

/// Closed walk with letter set exactly `s` accepted by some Rabin pair.
fn rabin_accepting_walk(states: usize, live: &[bool], edges: &[Edge], s: u64, pairs: &[RabinPair]) -> bool {
    pairs
        .iter()
        .any(|p| walk_exists(states, live, edges, s, |c| !p.red.contains(c), |c| p.green.contains(c)))
}

/// Closed walk with letter set exactly `s` rejected by every Rabin pair:
/// in a part where some pair sees green but no red, no rejecting walk may
/// use that pair's green colours, so they are removed and the search
/// recurses.
fn rabin_rejecting_walk(states: usize, live: &[bool], edges: &[Edge], s: u64, pairs: &[RabinPair]) -> bool {
    let sub: Vec<Edge> = edges.iter().copied().filter(|e| live[e.0] && s >> e.1 & 1 == 1).collect();
    let mut work = vec![sub];
    while let Some(edges) = work.pop() {
        for part in scc_edge_sets(states, &edges) {
            if letter_mask(&part) != s {
                continue;
            }
            let hits = |set: &LetterSet| part.iter().any(|e| set.contains(e.2));
            let violated: Vec<&RabinPair> = pairs.iter().filter(|p| hits(&p.green) && !hits(&p.red)).collect();
            if violated.is_empty() {
                return true;
            }
            work.push(
                part.iter()
                    .copied()
                    .filter(|e| !violated.iter().any(|p| p.green.contains(e.2)))
                    .collect(),
            );
        }
    }
    false
}

/// A problem found by [`Machines::language_errors`].
#[derive(Debug, PartialEq, Eq)]
pub enum LanguageError {
    /// The machine has a walk with letter set `mask` whose verdict differs
    /// from the condition's.
    Parity(u64),
    Resolver(u64),
    Rabin(u64),
    /// A resolver move that is not a transition of the Rabin automaton.
    ResolverMove { leaf: usize, letter: usize },
}

impl Machines<'_> {
    /// The resolver's move from `leaf` on `letter`: the deepest ancestor
    /// containing the letter, and the leftmost leaf below the next child
    /// of that ancestor after the one towards `leaf`.
    pub fn leaf_move(&self, leaf: usize, letter: usize) -> (usize, usize) {
        let tree = self.gfg.tree();
        let mut node = leaf;
        let mut below = None;
        while !tree.label(node).contains(letter) {
            below = Some(node);
            node = tree.parent(node).unwrap();
        }
        let Some(below) = below else {
            return (leaf, leaf);
        };
        let children = tree.children(node);
        let pos = children.iter().position(|&c| c == below).unwrap();
        let mut target = children[(pos + 1) % children.len()];
        while !tree.children(target).is_empty() {
            target = tree.children(target)[0];
        }
        (node, target)
    }

    fn resolver_edges(&self) -> Vec<Edge> {
        let tree = self.gfg.tree();
        let n = self.condition.alphabet().len();
        tree.leaves()
            .iter()
            .flat_map(|&l| (0..n).map(move |a| (l, a)))
            .map(|(l, a)| {
                let (node, target) = self.leaf_move(l, a);
                (l, a, node, target)
            })
            .collect()
    }

    fn automaton_edges(a: &Automaton) -> Vec<Edge> {
        a.transitions().iter().map(|t| (t.src, t.letter, t.colour, t.dst)).collect()
    }

    /// Every way the three machines fail to recognise the condition.
    pub fn language_errors(&self) -> Vec<LanguageError> {
        let n = self.condition.alphabet().len();
        let tree = self.gfg.tree();
        let mut errors = Vec::new();

        let pe = Self::automaton_edges(self.parity);
        let Acceptance::Parity(par) = self.parity.acceptance() else {
            panic!("not a parity automaton");
        };
        let priority = |c: usize| par.priority(c);
        let pq = self.parity.num_states();
        let plive = reachable(pq, self.parity.initial(), &pe);

        let re = self.resolver_edges();
        let root_leaf = {
            let mut l = tree.root();
            while !tree.children(l).is_empty() {
                l = tree.children(l)[0];
            }
            l
        };
        let rlive = reachable(tree.len(), &[root_leaf], &re);
        let pairs = self.gfg.pairs().pairs();

        let ae = Self::automaton_edges(self.gfg.automaton());
        let aq = self.gfg.num_states();
        let alive = reachable(aq, self.gfg.automaton().initial(), &ae);

        for s in 1u64..1 << n {
            let accept = self.condition.accepts(&LetterSet::from_mask(n, s));
            if parity_walk(pq, &plive, &pe, s, &priority, !accept) {
                errors.push(LanguageError::Parity(s));
            }
            let resolver_wrong = if accept {
                rabin_rejecting_walk(tree.len(), &rlive, &re, s, pairs)
            } else {
                rabin_accepting_walk(tree.len(), &rlive, &re, s, pairs)
            };
            if resolver_wrong {
                errors.push(LanguageError::Resolver(s));
            }
            // Words of the condition are accepted through the resolver's
            // runs, checked below; here only spurious acceptance.
            if !accept && rabin_accepting_walk(aq, &alive, &ae, s, pairs) {
                errors.push(LanguageError::Rabin(s));
            }
        }

        let state = |leaf: usize| self.gfg.eta().get(leaf).unwrap() - 1;
        if !self.gfg.automaton().initial().contains(&state(root_leaf)) {
            errors.push(LanguageError::ResolverMove { leaf: root_leaf, letter: usize::MAX });
        }
        for &(l, a, node, target) in re.iter().filter(|e| rlive[e.0]) {
            if !ae.contains(&(state(l), a, node, state(target))) {
                errors.push(LanguageError::ResolverMove { leaf: l, letter: a });
            }
        }
        errors
    }

    /// (Rabin automaton accepts, parity run accepts, resolver run accepts, condition).
    pub fn verdicts(&self, word: &LassoWord) -> (bool, bool, bool, bool) {
        let n = self.condition.alphabet().len();
        (
            self.gfg.automaton().accepts_lasso(word).unwrap(),
            self.parity.run_deterministic(word).unwrap().1,
            self.gfg.resolve_run(word).unwrap().1,
            self.condition.accepts(&word.inf_set(n)),
        )
    }

    /// The first lasso, over the given prefixes and periods, on which the
    /// machines and the condition do not all agree.
    pub fn disagreement(&self, prefixes: &[Vec<usize>], periods: &[Vec<usize>]) -> Option<LassoWord> {
        for u in prefixes {
            for v in periods {
                let w = LassoWord::new(u.clone(), v.clone()).unwrap();
                if !self.agrees(&w) {
                    return Some(w);
                }
            }
        }
        None
    }

    pub fn agrees(&self, w: &LassoWord) -> bool {
        let (r, p, s, f) = self.verdicts(w);
        r == f && p == f && s == f
    }
}

/// A lasso with `|u| ≤ max_prefix` and `1 ≤ |v| ≤ max_period`.
pub fn random_lasso(rng: &mut ChaCha8Rng, letters: usize, max_prefix: usize, max_period: usize) -> LassoWord {
    let u = (0..rng.gen_range(0..=max_prefix)).map(|_| rng.gen_range(0..letters)).collect();
    let v = (0..rng.gen_range(1..=max_period)).map(|_| rng.gen_range(0..letters)).collect();
    LassoWord::new(u, v).unwrap()
}

// ---------------------------------------------------------------------------
// Brute-force Muller game solving by exhaustive finite-memory strategy
// search.
// ---------------------------------------------------------------------------

/// Whether the graph on `n` nodes has a cycle whose set of colours is
/// some `c` with `bad(c)`: for each candidate set, the subgraph of edges
/// coloured inside it (or ε) must have a strongly connected part using
/// exactly those colours.
pub fn has_bad_cycle(n: usize, edges: &[(usize, Option<usize>, usize)], colours: usize, bad: impl Fn(u64) -> bool) -> bool {
    (1u64..1 << colours).filter(|&c| bad(c)).any(|c| {
        let inside = |e: &&(usize, Option<usize>, usize)| e.1.is_none_or(|x| c >> x & 1 == 1);
        let mut reach = vec![vec![false; n]; n];
        for &(s, _, d) in edges.iter().filter(inside) {
            reach[s][d] = true;
        }
        for k in 0..n {
            let through = reach[k].clone();
            for row in reach.iter_mut().filter(|row| row[k]) {
                for (x, &y) in row.iter_mut().zip(&through) {
                    *x |= y;
                }
            }
        }
        let mut seen_in_component: HashMap<Vec<bool>, u64> = HashMap::new();
        for &(s, col, d) in edges.iter().filter(inside) {
            // the edge lies on a cycle iff its target reaches its source
            if reach[d][s] {
                let component: Vec<bool> = (0..n).map(|v| v == s || (reach[s][v] && reach[v][s])).collect();
                let entry = seen_in_component.entry(component).or_insert(0);
                if let Some(x) = col {
                    *entry |= 1 << x;
                }
            }
        }
        seen_in_component.values().any(|&cols| cols == c)
    })
}

struct StrategySearch<'a> {
    game: &'a GameGraph,
    player: Player,
    wins: &'a dyn Fn(u64) -> bool,
    k: usize,
    choice: HashMap<(usize, usize), usize>,
    update: HashMap<(usize, usize), usize>,
    used: usize,
}

enum Need {
    Choice(usize, usize),
    Update(usize, usize),
    Complete(Vec<(usize, Option<usize>, usize)>, usize),
}

impl StrategySearch<'_> {
    fn need(&self) -> Need {
        let g = self.game;
        let mut index: HashMap<(usize, usize), usize> = HashMap::from([((g.initial(), 0), 0)]);
        let mut queue = VecDeque::from([(g.initial(), 0)]);
        let mut edges = Vec::new();
        while let Some((x, m)) = queue.pop_front() {
            let moves: Vec<usize> = if g.owner(x) == self.player {
                match self.choice.get(&(m, x)) {
                    Some(&e) => vec![e],
                    None => return Need::Choice(m, x),
                }
            } else {
                g.out(x).to_vec()
            };
            for e in moves {
                let Some(&m2) = self.update.get(&(m, e)) else {
                    return Need::Update(m, e);
                };
                let next = (g.edge(e).dst, m2);
                let len = index.len();
                let j = *index.entry(next).or_insert_with(|| {
                    queue.push_back(next);
                    len
                });
                edges.push((index[&(x, m)], g.edge(e).colour, j));
            }
        }
        Need::Complete(edges, index.len())
    }

    fn search(&mut self) -> bool {
        match self.need() {
            Need::Complete(edges, n) => {
                let wins = self.wins;
                !has_bad_cycle(n, &edges, self.game.colours().len(), |c| !wins(c))
            }
            Need::Choice(m, x) => {
                for &e in self.game.out(x) {
                    self.choice.insert((m, x), e);
                    if self.search() {
                        return true;
                    }
                }
                self.choice.remove(&(m, x));
                false
            }
            Need::Update(m, e) => {
                let used = self.used;
                for m2 in 0..self.k.min(used + 1) {
                    self.update.insert((m, e), m2);
                    self.used = used.max(m2 + 1);
                    if self.search() {
                        return true;
                    }
                }
                self.update.remove(&(m, e));
                self.used = used;
                false
            }
        }
    }
}

/// Whether `player` has a strategy with at most `k` memory states all of
/// whose plays from the initial vertex have a winning colour set.
pub fn has_finite_memory_strategy(game: &GameGraph, player: Player, wins: &dyn Fn(u64) -> bool, k: usize) -> bool {
    StrategySearch {
        game,
        player,
        wins,
        k,
        choice: HashMap::new(),
        update: HashMap::new(),
        used: 1,
    }
    .search()
}

/// The winner by exhaustive search over strategies of growing memory for
/// both players; the first one found wins. Panics if neither player has a
/// strategy with at most `max_memory` states.
pub fn brute_force_winner(game: &GameGraph, condition: &MullerCondition, max_memory: usize) -> (Player, usize) {
    let accepting: HashSet<u64> = condition.accepting().map(mask_of).collect();
    let exist = |c: u64| accepting.contains(&c);
    let univ = |c: u64| !accepting.contains(&c);
    for k in 1..=max_memory {
        if has_finite_memory_strategy(game, Player::Exist, &exist, k) {
            return (Player::Exist, k);
        }
        if has_finite_memory_strategy(game, Player::Univ, &univ, k) {
            return (Player::Univ, k);
        }
    }
    panic!("no winning strategy with at most {max_memory} memory states");
}

/// A game with at most `max_vertices` vertices and `max_edges` edges, every
/// vertex with a move; ε-edges are rare and never close a cycle.
pub fn random_game(rng: &mut ChaCha8Rng, colours: &Alphabet, max_vertices: usize, max_edges: usize) -> GameGraph {
    loop {
        let n = rng.gen_range(1..=max_vertices);
        let owners: Vec<Player> = (0..n)
            .map(|_| if rng.gen_bool(0.5) { Player::Exist } else { Player::Univ })
            .collect();
        let total = rng.gen_range(n..=max_edges.max(n));
        let mut edges = Vec::new();
        for i in 0..total {
            let src = if i < n { i } else { rng.gen_range(0..n) };
            let colour = if rng.gen_bool(0.1) { None } else { Some(rng.gen_range(0..colours.len())) };
            let edge = GameEdge { src, colour, dst: rng.gen_range(0..n) };
            if !edges.contains(&edge) {
                edges.push(edge);
            }
        }
        let names = (0..n).map(|i| format!("v{i}")).collect();
        if let Ok(g) = GameGraph::new(colours.clone(), names, owners, edges, 0) {
            return g;
        }
    }
}

/// A random Rabin automaton with up to `max_states` states and `max_letters`
/// letters, one or two transitions per state and letter (so parallel edges
/// are common), two to four colours and one to `max_pairs` pairs.
pub fn random_rabin_automaton(rng: &mut ChaCha8Rng, max_states: usize, max_letters: usize, max_pairs: usize) -> Automaton {
    let states = rng.gen_range(1..=max_states);
    let input = letters(rng.gen_range(1..=max_letters));
    let colours = rng.gen_range(2..=4);
    let mut transitions = Vec::new();
    for src in 0..states {
        for letter in 0..input.len() {
            let dst = rng.gen_range(0..states);
            for _ in 0..rng.gen_range(1..=2) {
                let dst = if rng.gen_bool(0.7) { dst } else { rng.gen_range(0..states) };
                transitions.push(Transition { src, letter, colour: rng.gen_range(0..colours), dst });
            }
        }
    }
    let pairs = (0..rng.gen_range(1..=max_pairs))
        .map(|_| {
            let mut green = LetterSet::empty(colours);
            let mut red = LetterSet::empty(colours);
            for c in 0..colours {
                match rng.gen_range(0..3) {
                    0 => green.insert(c),
                    1 => red.insert(c),
                    _ => {}
                }
            }
            RabinPair { green, red }
        })
        .collect();
    let colour_names = Alphabet::new((0..colours).map(|c| format!("x{c}"))).unwrap();
    Automaton::new(
        Automaton::numbered_states(states),
        input,
        vec![0],
        transitions,
        Acceptance::Rabin(RabinCondition::new(colour_names, pairs).unwrap()),
    )
    .unwrap()
}
