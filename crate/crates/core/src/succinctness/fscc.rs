use crate::automata::Automaton;
use crate::conditions::{LetterSet, MullerCondition};
use crate::error::{Error, Result};
use crate::graph::tarjan;

/// The final `C`-strongly connected components of a deterministic
/// automaton: among states reachable from the initial state, the sets that
/// are strongly connected and closed under letters of `C`. Each set is
/// sorted; sets are ordered by their least state.
pub fn fscc(automaton: &Automaton, letters: &LetterSet) -> Result<Vec<Vec<usize>>> {
    if letters.universe() != automaton.input().len() {
        return Err(Error::AlphabetMismatch {
            expected: automaton.input().len(),
            found: letters.universe(),
        });
    }
    if letters.is_empty() {
        return Err(Error::EmptyInfinitySet);
    }
    let n = automaton.num_states();
    let mut reachable = vec![false; n];
    let mut stack = automaton.initial().to_vec();
    for &q in &stack {
        reachable[q] = true;
    }
    while let Some(q) = stack.pop() {
        for t in automaton.transitions().iter().filter(|t| t.src == q) {
            if !reachable[t.dst] {
                reachable[t.dst] = true;
                stack.push(t.dst);
            }
        }
    }
    let mut step = vec![Vec::new(); n];
    for q in (0..n).filter(|&q| reachable[q]) {
        for c in letters.iter() {
            let mut succ = automaton.successors(q, c);
            match (succ.next(), succ.next()) {
                (Some(t), None) => step[q].push(t.dst),
                _ => return Err(Error::NotDeterministic),
            }
        }
    }
    let comp = tarjan(n, step.iter().enumerate().flat_map(|(q, s)| s.iter().map(move |&d| (q, d))));
    let mut bottom: Vec<Option<bool>> = vec![None; n];
    for q in (0..n).filter(|&q| reachable[q]) {
        let closed = step[q].iter().all(|&d| comp[d] == comp[q]);
        let entry = bottom[comp[q]].get_or_insert(true);
        *entry &= closed;
    }
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for q in (0..n).filter(|&q| reachable[q]) {
        if bottom[comp[q]] != Some(true) {
            continue;
        }
        if index[comp[q]] == usize::MAX {
            index[comp[q]] = sets.len();
            sets.push(Vec::new());
        }
        sets[index[comp[q]]].push(q);
    }
    Ok(sets)
}

/// For rejecting `C₁`, `C₂` with accepting union: whether every final
/// `C₁`-component is disjoint from every final `C₂`-component. A correct
/// deterministic Rabin automaton for the condition must pass, since a
/// shared state would let two rejecting cycles combine into an accepting
/// one, which Rabin conditions forbid.
pub fn verify_disjoint_fscc(
    automaton: &Automaton,
    c1: &LetterSet,
    c2: &LetterSet,
    condition: &MullerCondition,
) -> Result<bool> {
    if condition.alphabet() != automaton.input() {
        return Err(Error::AlphabetMismatch {
            expected: automaton.input().len(),
            found: condition.alphabet().len(),
        });
    }
    if condition.satisfies(c1)? || condition.satisfies(c2)? || !condition.accepts(&c1.union(c2)) {
        return Err(Error::Precondition(
            "both sets must be rejecting with an accepting union".into(),
        ));
    }
    let p1 = fscc(automaton, c1)?;
    let p2 = fscc(automaton, c2)?;
    Ok(p1
        .iter()
        .all(|a| p2.iter().all(|b| !a.iter().any(|q| b.contains(q)))))
}
