//! The recursive (McNaughton-Zielonka) solver, driven by the condition's
//! Zielonka tree: at a node favouring player P, the opponent is given each
//! child label in turn, with P's attractor to colours outside it removed.
//!
//! Colours sit on edges, so the solver works on an arena in which every
//! coloured edge is subdivided by a vertex carrying its colour.

use std::collections::{HashMap, VecDeque};

use super::{GameGraph, Player};
use crate::conditions::{Acceptance, LetterSet, ParityCondition, RabinCondition, DEFAULT_CYCLE_BUDGET};
use crate::error::{Error, Result};
use crate::graph::ColouredGraph;

struct Arena {
    owner: Vec<Player>,
    colour: Vec<Option<usize>>,
    /// `(successor, game edge)`.
    succ: Vec<Vec<(usize, usize)>>,
    pred: Vec<Vec<usize>>,
    /// Game vertices come first.
    game_vertices: usize,
}

impl Arena {
    fn new(game: &GameGraph) -> Arena {
        let n = game.num_vertices();
        let mut owner: Vec<Player> = (0..n).map(|x| game.owner(x)).collect();
        let mut colour = vec![None; n];
        let mut succ = vec![Vec::new(); n];
        for (i, e) in game.edges().iter().enumerate() {
            match e.colour {
                None => succ[e.src].push((e.dst, i)),
                Some(c) => {
                    let mid = owner.len();
                    owner.push(Player::Exist);
                    colour.push(Some(c));
                    succ.push(vec![(e.dst, i)]);
                    succ[e.src].push((mid, i));
                }
            }
        }
        let mut pred = vec![Vec::new(); owner.len()];
        for (v, ss) in succ.iter().enumerate() {
            for &(w, _) in ss {
                pred[w].push(v);
            }
        }
        Arena {
            owner,
            colour,
            succ,
            pred,
            game_vertices: n,
        }
    }

    fn len(&self) -> usize {
        self.owner.len()
    }

    /// Vertices of `sub` from which `player` forces a visit to `target`,
    /// and for `player`'s vertices outside `target` an edge doing so.
    fn attractor(
        &self,
        sub: &[bool],
        target: &[bool],
        player: Player,
        strategy: &mut [Option<usize>],
    ) -> Vec<bool> {
        let mut attr: Vec<bool> = (0..self.len()).map(|v| sub[v] && target[v]).collect();
        let mut count: Vec<usize> = (0..self.len())
            .map(|v| self.succ[v].iter().filter(|&&(w, _)| sub[w]).count())
            .collect();
        let mut queue: VecDeque<usize> = (0..self.len()).filter(|&v| attr[v]).collect();
        while let Some(w) = queue.pop_front() {
            for &v in &self.pred[w] {
                if !sub[v] || attr[v] {
                    continue;
                }
                if self.owner[v] == player {
                    attr[v] = true;
                    strategy[v] = self.succ[v].iter().position(|&(x, _)| x == w);
                    queue.push_back(v);
                } else {
                    count[v] -= 1;
                    if count[v] == 0 {
                        attr[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        attr
    }
}

/// Winning regions and, where the solver can provide them, positional
/// strategies. Strategies are indexed by arena successor position.
struct Regions {
    win: [Vec<bool>; 2],
    strategy: [Vec<Option<usize>>; 2],
    positional: [bool; 2],
}

struct Engine<'a> {
    arena: Arena,
    condition: &'a Acceptance,
    children: HashMap<LetterSet, Vec<LetterSet>>,
    favoured: HashMap<LetterSet, Player>,
}

impl Engine<'_> {
    fn node(&mut self, label: &LetterSet) -> Result<(Player, Vec<LetterSet>)> {
        if !self.children.contains_key(label) {
            let kids = self.condition.flipped_children(label)?;
            self.children.insert(label.clone(), kids);
            let p = if self.condition.accepts(label) { Player::Exist } else { Player::Univ };
            self.favoured.insert(label.clone(), p);
        }
        Ok((self.favoured[label], self.children[label].clone()))
    }

    /// Any move staying in `sub`.
    fn stay(&self, v: usize, sub: &[bool]) -> Option<usize> {
        self.arena.succ[v].iter().position(|&(w, _)| sub[w])
    }

    fn solve(&mut self, sub: &[bool], label: &LetterSet) -> Result<Regions> {
        let n = self.arena.len();
        let (p, children) = self.node(label)?;
        let opp = p.opponent();
        let mut regions = Regions {
            win: [vec![false; n], vec![false; n]],
            strategy: [vec![None; n], vec![None; n]],
            positional: [true, true],
        };
        let mut g = sub.to_vec();
        loop {
            if !g.iter().any(|&b| b) {
                return Ok(regions);
            }
            // P's strategy candidate when the opponent wins nowhere below
            let mut p_strategy: Vec<Option<usize>> = vec![None; n];
            let mut opp_found = false;
            for child in &children {
                let target: Vec<bool> = (0..n)
                    .map(|v| g[v] && self.arena.colour[v].is_some_and(|c| !child.contains(c)))
                    .collect();
                let mut attr_strategy = vec![None; n];
                let a = self.arena.attractor(&g, &target, p, &mut attr_strategy);
                let h: Vec<bool> = (0..n).map(|v| g[v] && !a[v]).collect();
                let below = self.solve(&h, child)?;
                if below.win[opp.index()].iter().any(|&b| b) {
                    let mut b_strategy = vec![None; n];
                    let b = self
                        .arena
                        .attractor(&g, &below.win[opp.index()], opp, &mut b_strategy);
                    for v in 0..n {
                        if !b[v] {
                            continue;
                        }
                        regions.win[opp.index()][v] = true;
                        if self.arena.owner[v] == opp {
                            regions.strategy[opp.index()][v] = if below.win[opp.index()][v] {
                                below.strategy[opp.index()][v]
                            } else {
                                b_strategy[v]
                            };
                        }
                        g[v] = false;
                    }
                    regions.positional[opp.index()] &= below.positional[opp.index()];
                    opp_found = true;
                    break;
                }
                if children.len() == 1 {
                    for v in (0..n).filter(|&v| g[v] && self.arena.owner[v] == p) {
                        p_strategy[v] = if h[v] {
                            below.strategy[p.index()][v]
                        } else if target[v] {
                            self.stay(v, &g)
                        } else {
                            attr_strategy[v]
                        };
                    }
                    regions.positional[p.index()] &= below.positional[p.index()];
                }
            }
            if opp_found {
                continue;
            }
            match children.len() {
                0 => {
                    for v in (0..n).filter(|&v| g[v] && self.arena.owner[v] == p) {
                        p_strategy[v] = self.stay(v, &g);
                    }
                }
                1 => {}
                // cycling through several children needs memory
                _ => regions.positional[p.index()] = false,
            }
            for v in (0..n).filter(|&v| g[v]) {
                regions.win[p.index()][v] = true;
                if self.arena.owner[v] == p {
                    regions.strategy[p.index()][v] = p_strategy[v];
                }
            }
            return Ok(regions);
        }
    }
}

/// Per-vertex winners, with verified positional strategies (as game edge
/// ids) for each player whose strategy the solver could make positional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub exist_strategy: Option<Vec<Option<usize>>>,
    pub univ_strategy: Option<Vec<Option<usize>>>,
}

impl Solution {
    pub fn winner_at(&self, x: usize) -> Player {
        self.winner[x]
    }

    pub fn region(&self, player: Player) -> Vec<usize> {
        (0..self.winner.len()).filter(|&x| self.winner[x] == player).collect()
    }
}

/// Solves a game for any acceptance condition over the game's colours.
/// Positional strategies are returned for Exist in Rabin and parity games
/// and for both players in parity games, each checked before returning.
pub fn solve_game(game: &GameGraph, condition: &Acceptance) -> Result<Solution> {
    game.check_condition(condition)?;
    let arena = Arena::new(game);
    let n = arena.len();
    let mut engine = Engine {
        arena,
        condition,
        children: HashMap::new(),
        favoured: HashMap::new(),
    };
    let all = vec![true; n];
    let root = LetterSet::full(condition.alphabet().len());
    let regions = engine.solve(&all, &root)?;
    let arena = &engine.arena;
    let k = arena.game_vertices;
    let winner: Vec<Player> = (0..k)
        .map(|x| if regions.win[0][x] { Player::Exist } else { Player::Univ })
        .collect();
    if (0..k).any(|x| regions.win[0][x] == regions.win[1][x]) {
        return Err(Error::Invariant("winning regions do not partition the game".into()));
    }
    let mut strategies = [None, None];
    for player in [Player::Exist, Player::Univ] {
        if !regions.positional[player.index()] {
            continue;
        }
        let s: Vec<Option<usize>> = (0..k)
            .map(|x| {
                if winner[x] != player || game.owner(x) != player {
                    return Ok(None);
                }
                let pos = regions.strategy[player.index()][x].ok_or_else(|| {
                    Error::Invariant(format!("no strategy at `{}`", game.name(x)))
                })?;
                Ok(Some(arena.succ[x][pos].1))
            })
            .collect::<Result<_>>()?;
        if !verify_positional(game, condition, player, &s, &winner)? {
            return Err(Error::Invariant(format!("{player}'s positional strategy fails")));
        }
        strategies[player.index()] = Some(s);
    }
    let [exist_strategy, univ_strategy] = strategies;
    Ok(Solution {
        winner,
        exist_strategy,
        univ_strategy,
    })
}

/// Plays from `player`'s region that follow `strategy` stay in the region,
/// and none of their cycles is won by the opponent.
fn verify_positional(
    game: &GameGraph,
    condition: &Acceptance,
    player: Player,
    strategy: &[Option<usize>],
    winner: &[Player],
) -> Result<bool> {
    let n = game.num_vertices();
    let mut g = ColouredGraph::new(n, game.colours().len());
    for x in (0..n).filter(|&x| winner[x] == player) {
        let moves: Vec<usize> = if game.owner(x) == player {
            strategy[x].into_iter().collect()
        } else {
            game.out(x).to_vec()
        };
        for e in moves {
            let edge = game.edge(e);
            if winner[edge.dst] != player {
                return Ok(false);
            }
            g.add_edge(x, edge.colour, edge.dst);
        }
    }
    Ok(match player {
        Player::Exist => condition.find_rejecting_cycle(&g, DEFAULT_CYCLE_BUDGET)?.is_none(),
        Player::Univ => condition.find_accepting_cycle(&g).is_none(),
    })
}

pub fn solve_parity_game(game: &GameGraph, condition: &ParityCondition) -> Result<Solution> {
    solve_game(game, &Acceptance::Parity(condition.clone()))
}

/// A positional Exist strategy, defined on her Exist vertices inside her
/// winning region.
pub fn positional_rabin_strategy(game: &GameGraph, condition: &RabinCondition) -> Result<Solution> {
    let s = solve_game(game, &Acceptance::Rabin(condition.clone()))?;
    if s.exist_strategy.is_none() {
        return Err(Error::Invariant("Rabin solving lost positionality".into()));
    }
    Ok(s)
}
