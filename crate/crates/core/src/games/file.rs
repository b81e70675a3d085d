use serde::{Deserialize, Serialize};

use super::{GameEdge, GameGraph, MemoryStructure, Player};
use crate::conditions::Alphabet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub name: String,
    pub owner: Player,
}

/// `colour: null` is an ε-edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub src: String,
    pub colour: Option<String>,
    pub dst: String,
}

/// On-disk form of a game; vertices are referred to by name and colours by
/// symbol of the condition's alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
    pub initial: String,
}

impl GameFile {
    pub fn parse(text: &str) -> Result<GameFile> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("game file: {e}")))
    }

    pub fn to_game(&self, colours: &Alphabet) -> Result<GameGraph> {
        let names: Vec<String> = self.vertices.iter().map(|v| v.name.clone()).collect();
        let lookup = |name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Format(format!("game file: unknown vertex `{name}`")))
        };
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Format(format!("game file: duplicate vertex `{n}`")));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(GameEdge {
                    src: lookup(&e.src)?,
                    colour: e.colour.as_deref().map(|c| colours.index_of(c)).transpose()?,
                    dst: lookup(&e.dst)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let initial = lookup(&self.initial)?;
        let owners = self.vertices.iter().map(|v| v.owner).collect();
        GameGraph::new(colours.clone(), names, owners, edges, initial)
    }

    pub fn from_game(game: &GameGraph) -> GameFile {
        GameFile {
            vertices: (0..game.num_vertices())
                .map(|x| VertexEntry {
                    name: game.name(x).to_string(),
                    owner: game.owner(x),
                })
                .collect(),
            edges: game
                .edges()
                .iter()
                .map(|e| EdgeEntry {
                    src: game.name(e.src).to_string(),
                    colour: e.colour.map(|c| game.colours().symbol(c).to_string()),
                    dst: game.name(e.dst).to_string(),
                })
                .collect(),
            initial: game.name(game.initial()).to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("game file serialises")
    }
}

/// One row of the memory update table: from memory state `memory` along
/// edge number `edge` (rendered in `move`), go to memory state `next`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpdateEntry {
    pub memory: usize,
    pub edge: usize,
    #[serde(rename = "move")]
    pub label: String,
    pub next: usize,
}

/// One row of the choice table, for an Exist vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceEntry {
    pub memory: usize,
    pub vertex: String,
    pub edge: usize,
    #[serde(rename = "move")]
    pub label: String,
}

/// On-disk form of a memory structure with its tables spelled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemoryFile {
    pub states: usize,
    pub initial: usize,
    pub update: Vec<UpdateEntry>,
    pub choice: Vec<ChoiceEntry>,
}

impl MemoryFile {
    pub fn from_memory(memory: &MemoryStructure, game: &GameGraph) -> MemoryFile {
        let mut update = Vec::new();
        let mut choice = Vec::new();
        for m in 0..memory.size {
            for (e, &next) in memory.update[m].iter().enumerate() {
                update.push(UpdateEntry {
                    memory: m,
                    edge: e,
                    label: game.render_edge(e),
                    next,
                });
            }
            for (x, c) in memory.choice[m].iter().enumerate() {
                if let Some(e) = *c {
                    choice.push(ChoiceEntry {
                        memory: m,
                        vertex: game.name(x).to_string(),
                        edge: e,
                        label: game.render_edge(e),
                    });
                }
            }
        }
        MemoryFile {
            states: memory.size,
            initial: memory.initial,
            update,
            choice,
        }
    }

    pub fn to_memory(&self, game: &GameGraph) -> Result<MemoryStructure> {
        let bad = |m: String| Error::Format(format!("memory file: {m}"));
        let mut update = vec![vec![None; game.edges().len()]; self.states];
        for u in &self.update {
            let slot = update
                .get_mut(u.memory)
                .and_then(|row| row.get_mut(u.edge))
                .ok_or_else(|| bad(format!("update entry ({}, {}) out of range", u.memory, u.edge)))?;
            *slot = Some(u.next);
        }
        let update = update
            .into_iter()
            .enumerate()
            .map(|(m, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(e, n)| n.ok_or_else(|| bad(format!("no update for memory {m} on edge {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut choice = vec![vec![None; game.num_vertices()]; self.states];
        for c in &self.choice {
            let x = game
                .names()
                .iter()
                .position(|n| *n == c.vertex)
                .ok_or_else(|| bad(format!("unknown vertex `{}`", c.vertex)))?;
            let row = choice
                .get_mut(c.memory)
                .ok_or_else(|| bad(format!("memory state {} out of range", c.memory)))?;
            row[x] = Some(c.edge);
        }
        let memory = MemoryStructure {
            size: self.states,
            initial: self.initial,
            update,
            choice,
        };
        memory.check_shape(game)?;
        Ok(memory)
    }

    pub fn parse(text: &str) -> Result<MemoryFile> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("memory file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("memory file serialises")
    }
}
