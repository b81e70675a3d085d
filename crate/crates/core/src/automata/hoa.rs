//! HOA v1 output for Rabin and parity automata, and a reader for the same
//! dialect. Letter `k` of the input alphabet is the minterm in which only
//! atomic proposition `k` holds. Colours become sets of acceptance marks,
//! so reading a document back yields colours up to their mark signature.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Automaton, Transition};
use crate::conditions::{Acceptance, Alphabet, LetterSet, ParityCondition, RabinCondition, RabinPair};
use crate::error::{Error, Result};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn rabin_formula(pairs: usize) -> String {
    if pairs == 0 {
        return "f".into();
    }
    (0..pairs)
        .map(|i| format!("(Fin({})&Inf({}))", 2 * i, 2 * i + 1))
        .collect::<Vec<_>>()
        .join("|")
}

fn parity_formula(sets: usize) -> String {
    fn term(i: usize) -> String {
        if i == 0 {
            "Inf(0)".into()
        } else if i.is_multiple_of(2) {
            format!("Inf({i}) | ({})", term(i - 1))
        } else {
            format!("Fin({i}) & ({})", term(i - 1))
        }
    }
    if sets == 0 {
        "f".into()
    } else {
        term(sets - 1)
    }
}

/// Acceptance marks of every output colour.
fn marks(acceptance: &Acceptance) -> Result<Vec<Vec<usize>>> {
    let n = acceptance.alphabet().len();
    match acceptance {
        Acceptance::Rabin(r) => Ok((0..n)
            .map(|c| {
                let mut m = Vec::new();
                for (i, p) in r.pairs().iter().enumerate() {
                    if p.red.contains(c) {
                        m.push(2 * i);
                    }
                    if p.green.contains(c) {
                        m.push(2 * i + 1);
                    }
                }
                m
            })
            .collect()),
        Acceptance::Parity(p) => Ok((0..n).map(|c| vec![p.priority(c) as usize]).collect()),
        Acceptance::Muller(_) => Err(Error::UnsupportedAcceptance("Muller")),
    }
}

fn minterm(letter: usize, aps: usize) -> String {
    (0..aps)
        .map(|k| if k == letter { k.to_string() } else { format!("!{k}") })
        .collect::<Vec<_>>()
        .join("&")
}

impl Automaton {
    /// HOA v1 document with transition-based acceptance.
    pub fn to_hoa(&self) -> Result<String> {
        let marks = marks(self.acceptance())?;
        let mut out = String::from("HOA: v1\n");
        let w = &mut out;
        writeln!(w, "States: {}", self.num_states()).expect("write to string");
        for q in self.initial() {
            writeln!(w, "Start: {q}").expect("write to string");
        }
        let aps: Vec<String> = self.input().symbols().iter().map(|s| quote(s)).collect();
        writeln!(w, "AP: {} {}", aps.len(), aps.join(" ")).expect("write to string");
        match self.acceptance() {
            Acceptance::Rabin(r) => {
                let k = r.pairs().len();
                writeln!(w, "acc-name: Rabin {k}").expect("write to string");
                writeln!(w, "Acceptance: {} {}", 2 * k, rabin_formula(k)).expect("write to string");
                let names: Vec<String> = r.pair_names().iter().map(|s| quote(s)).collect();
                writeln!(w, "rabin-pairs: {}", names.join(" ")).expect("write to string");
            }
            Acceptance::Parity(p) => {
                let k = p.max_priority() as usize + 1;
                writeln!(w, "acc-name: parity max even {k}").expect("write to string");
                writeln!(w, "Acceptance: {k} {}", parity_formula(k)).expect("write to string");
            }
            Acceptance::Muller(_) => unreachable!("rejected by marks"),
        }
        w.push_str("properties: trans-labels explicit-labels trans-acc\n--BODY--\n");
        for q in 0..self.num_states() {
            writeln!(w, "State: {q} {}", quote(self.state_name(q))).expect("write to string");
            for t in self.transitions().iter().filter(|t| t.src == q) {
                let m = &marks[t.colour];
                let acc = if m.is_empty() {
                    String::new()
                } else {
                    let ids: Vec<String> = m.iter().map(usize::to_string).collect();
                    format!(" {{{}}}", ids.join(" "))
                };
                writeln!(w, "[{}] {}{}", minterm(t.letter, aps.len()), t.dst, acc)
                    .expect("write to string");
            }
        }
        w.push_str("--END--\n");
        Ok(out)
    }

    /// The same automaton with colours replaced by their acceptance-mark
    /// signatures, numbered by first use along the transitions grouped by
    /// source state. This is exactly what survives a round trip through HOA.
    pub fn mark_quotient(&self) -> Result<Automaton> {
        let marks = marks(self.acceptance())?;
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut id: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut transitions = Vec::new();
        let mut ordered: Vec<&Transition> = self.transitions().iter().collect();
        ordered.sort_by_key(|t| t.src);
        for t in ordered {
            let m = &marks[t.colour];
            let c = *id.entry(m.clone()).or_insert_with(|| {
                classes.push(m.clone());
                classes.len() - 1
            });
            transitions.push(Transition { colour: c, ..*t });
        }
        let acceptance = acceptance_from_marks(self.acceptance(), &classes, pair_names(self))?;
        Automaton::new(
            self.state_names().to_vec(),
            self.input().clone(),
            self.initial().to_vec(),
            transitions,
            acceptance,
        )
    }
}

fn pair_names(a: &Automaton) -> Vec<String> {
    match a.acceptance() {
        Acceptance::Rabin(r) => r.pair_names().to_vec(),
        _ => Vec::new(),
    }
}

fn class_name(m: &[usize]) -> String {
    let ids: Vec<String> = m.iter().map(usize::to_string).collect();
    format!("{{{}}}", ids.join(" "))
}

fn acceptance_from_marks(
    kind: &Acceptance,
    classes: &[Vec<usize>],
    names: Vec<String>,
) -> Result<Acceptance> {
    let alphabet = if classes.is_empty() {
        Alphabet::new(["{}"])?
    } else {
        Alphabet::new(classes.iter().map(|m| class_name(m)))?
    };
    let n = alphabet.len();
    match kind {
        Acceptance::Rabin(_) => {
            let pairs = (0..names.len())
                .map(|i| RabinPair {
                    green: LetterSet::from_letters(
                        n,
                        (0..classes.len()).filter(|&c| classes[c].contains(&(2 * i + 1))),
                    ),
                    red: LetterSet::from_letters(
                        n,
                        (0..classes.len()).filter(|&c| classes[c].contains(&(2 * i))),
                    ),
                })
                .collect();
            Ok(Acceptance::Rabin(RabinCondition::with_names(alphabet, pairs, names)?))
        }
        _ => {
            let priorities = if classes.is_empty() {
                vec![0]
            } else {
                classes.iter().map(|m| m[0] as u32).collect()
            };
            Ok(Acceptance::Parity(ParityCondition::new(alphabet, priorities)?))
        }
    }
}

struct Reader<'a> {
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    line: usize,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Hoa {
        line,
        message: message.into(),
    }
}

/// Splits a header or state line into tokens, keeping quoted strings whole.
fn tokens(line: usize, s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut t = String::from("\"");
            loop {
                match chars.next() {
                    Some('\\') => t.push(chars.next().ok_or_else(|| err(line, "dangling escape"))?),
                    Some('"') => break,
                    Some(x) => t.push(x),
                    None => return Err(err(line, "unterminated string")),
                }
            }
            out.push(t);
        } else {
            let mut t = String::new();
            while let Some(&x) = chars.peek() {
                if x.is_whitespace() {
                    break;
                }
                t.push(x);
                chars.next();
            }
            out.push(t);
        }
    }
    Ok(out)
}

fn unquote(line: usize, t: &str) -> Result<String> {
    t.strip_prefix('"')
        .map(str::to_string)
        .ok_or_else(|| err(line, format!("expected a string, found `{t}`")))
}

fn number(line: usize, t: &str) -> Result<usize> {
    t.parse().map_err(|_| err(line, format!("expected a number, found `{t}`")))
}

impl<'a> Reader<'a> {
    fn next(&mut self) -> Option<&'a str> {
        let (i, l) = self.lines.next()?;
        self.line = i + 1;
        Some(l)
    }
}

/// Reads a document produced by [`Automaton::to_hoa`].
pub fn parse_hoa(text: &str) -> Result<Automaton> {
    let mut r = Reader {
        lines: text.lines().enumerate().peekable(),
        line: 0,
    };
    let mut states = None;
    let mut start = Vec::new();
    let mut aps: Option<Vec<String>> = None;
    let mut acc_name: Option<Vec<String>> = None;
    let mut acceptance: Option<(usize, String)> = None;
    let mut names: Vec<String> = Vec::new();
    let mut version_seen = false;
    loop {
        let l = r.next().ok_or_else(|| err(r.line, "missing --BODY--"))?;
        let line = r.line;
        let l = l.trim();
        if l.is_empty() {
            continue;
        }
        if l == "--BODY--" {
            break;
        }
        let (key, rest) = l
            .split_once(':')
            .ok_or_else(|| err(line, format!("malformed header item `{l}`")))?;
        let toks = tokens(line, rest)?;
        match key {
            "HOA" => {
                if toks != ["v1"] {
                    return Err(err(line, "only HOA v1 is supported"));
                }
                version_seen = true;
            }
            "States" => states = Some(number(line, toks.first().map_or("", String::as_str))?),
            "Start" => start.push(number(line, toks.first().map_or("", String::as_str))?),
            "AP" => {
                let k = number(line, toks.first().map_or("", String::as_str))?;
                let list = toks[1..]
                    .iter()
                    .map(|t| unquote(line, t))
                    .collect::<Result<Vec<_>>>()?;
                if list.len() != k {
                    return Err(err(line, format!("AP announces {k} names, found {}", list.len())));
                }
                aps = Some(list);
            }
            "acc-name" => acc_name = Some(toks),
            "Acceptance" => {
                let k = number(line, toks.first().map_or("", String::as_str))?;
                acceptance = Some((k, rest.trim()[toks[0].len()..].trim().to_string()));
            }
            "rabin-pairs" => {
                names = toks
                    .iter()
                    .map(|t| unquote(line, t))
                    .collect::<Result<Vec<_>>>()?;
            }
            "properties" | "name" | "tool" => {}
            other => return Err(err(line, format!("unsupported header item `{other}`"))),
        }
    }
    let header = r.line;
    if !version_seen {
        return Err(err(1, "document must start with `HOA: v1`"));
    }
    let n = states.ok_or_else(|| err(header, "missing States"))?;
    let aps = aps.ok_or_else(|| err(header, "missing AP"))?;
    let acc_name = acc_name.ok_or_else(|| err(header, "missing acc-name"))?;
    let (sets, formula) = acceptance.ok_or_else(|| err(header, "missing Acceptance"))?;
    let kind = match acc_name.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["Rabin", k] => {
            let k = number(header, k)?;
            if sets != 2 * k || formula != rabin_formula(k) {
                return Err(err(header, "Acceptance does not match acc-name Rabin"));
            }
            if names.is_empty() {
                names = (0..k).map(|i| i.to_string()).collect();
            }
            if names.len() != k {
                return Err(err(header, "rabin-pairs does not list one name per pair"));
            }
            Acceptance::Rabin(RabinCondition::new(Alphabet::new(["x"])?, vec![])?)
        }
        ["parity", "max", "even", k] => {
            let k = number(header, k)?;
            if sets != k || formula != parity_formula(k) {
                return Err(err(header, "Acceptance does not match acc-name parity"));
            }
            Acceptance::Parity(ParityCondition::new(Alphabet::new(["x"])?, vec![0])?)
        }
        _ => return Err(err(header, format!("unsupported acc-name `{}`", acc_name.join(" ")))),
    };

    let mut state_names = vec![String::new(); n];
    let mut current: Option<usize> = None;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut transitions = Vec::new();
    let mut ended = false;
    while let Some(l) = r.next() {
        let line = r.line;
        let l = l.trim();
        if l.is_empty() {
            continue;
        }
        if l == "--END--" {
            ended = true;
            break;
        }
        if let Some(rest) = l.strip_prefix("State:") {
            let toks = tokens(line, rest)?;
            let q = number(line, toks.first().map_or("", String::as_str))?;
            if q >= n {
                return Err(err(line, format!("state {q} out of range")));
            }
            state_names[q] = match toks.get(1) {
                Some(t) => unquote(line, t)?,
                None => q.to_string(),
            };
            current = Some(q);
            continue;
        }
        let src = current.ok_or_else(|| err(line, "edge before any State:"))?;
        let rest = l
            .strip_prefix('[')
            .ok_or_else(|| err(line, "edges must carry an explicit label"))?;
        let (label, rest) = rest
            .split_once(']')
            .ok_or_else(|| err(line, "unterminated label"))?;
        let letter = parse_minterm(line, label, aps.len())?;
        let rest = rest.trim();
        let (dst, marks) = match rest.split_once('{') {
            Some((d, m)) => {
                let m = m
                    .strip_suffix('}')
                    .ok_or_else(|| err(line, "unterminated acceptance marks"))?;
                let mut ids = m
                    .split_whitespace()
                    .map(|t| number(line, t))
                    .collect::<Result<Vec<_>>>()?;
                ids.sort_unstable();
                if let Some(&bad) = ids.iter().find(|&&i| i >= sets) {
                    return Err(err(line, format!("mark {bad} out of range")));
                }
                (d.trim(), ids)
            }
            None => (rest, Vec::new()),
        };
        let dst = number(line, dst)?;
        if dst >= n {
            return Err(err(line, format!("state {dst} out of range")));
        }
        if matches!(kind, Acceptance::Parity(_)) && marks.len() != 1 {
            return Err(err(line, "parity edges carry exactly one mark"));
        }
        if matches!(kind, Acceptance::Rabin(_)) && marks.windows(2).any(|w| w[0] / 2 == w[1] / 2) {
            return Err(err(line, "edge is both green and red for one pair"));
        }
        let colour = *class_of.entry(marks.clone()).or_insert_with(|| {
            classes.push(marks.clone());
            classes.len() - 1
        });
        transitions.push(Transition { src, letter, colour, dst });
    }
    if !ended {
        return Err(err(r.line, "missing --END--"));
    }
    let acceptance = acceptance_from_marks(&kind, &classes, names)?;
    Automaton::new(state_names, Alphabet::new(aps)?, start, transitions, acceptance)
        .map_err(|e| err(header, e.to_string()))
}

fn parse_minterm(line: usize, label: &str, aps: usize) -> Result<usize> {
    let mut positive = None;
    let mut seen = vec![false; aps];
    for lit in label.split('&').map(str::trim) {
        let (neg, id) = match lit.strip_prefix('!') {
            Some(id) => (true, id),
            None => (false, lit),
        };
        let k = number(line, id)?;
        if k >= aps || seen[k] {
            return Err(err(line, format!("bad literal `{lit}`")));
        }
        seen[k] = true;
        if !neg {
            if positive.is_some() {
                return Err(err(line, "label is not a single-letter minterm"));
            }
            positive = Some(k);
        }
    }
    match positive {
        Some(k) if seen.iter().all(|&s| s) => Ok(k),
        _ => Err(err(line, "label is not a single-letter minterm")),
    }
}
