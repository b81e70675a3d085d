use std::fmt::Write as _;

use super::Automaton;
use crate::zielonka::escape;

impl Automaton {
    /// Graphviz rendering with edges labelled `letter : colour`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for (i, &q) in self.initial().iter().enumerate() {
            writeln!(out, "  init{i} [shape=point];\n  init{i} -> s{q};").expect("write to string");
        }
        for q in 0..self.num_states() {
            writeln!(out, "  s{q} [label=\"{}\"];", escape(self.state_name(q))).expect("write to string");
        }
        for t in self.transitions() {
            writeln!(
                out,
                "  s{} -> s{} [label=\"{} : {}\"];",
                t.src,
                t.dst,
                escape(self.input().symbol(t.letter)),
                escape(self.colours().symbol(t.colour))
            )
            .expect("write to string");
        }
        out.push_str("}\n");
        out
    }
}
