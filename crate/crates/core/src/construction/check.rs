use super::GfgRabinAutomaton;
use crate::automata::Automaton;
use crate::conditions::{all_words, LassoWord, MullerCondition};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Disagreement {
    /// Acceptance by some run differs from the condition.
    Automaton,
    /// The resolver's run decides differently from the condition.
    Resolver,
}

/// A lasso on which an automaton and a Muller condition disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub word: LassoWord,
    pub condition_accepts: bool,
    pub kind: Disagreement,
}

/// Summary of a sweep that found no disagreement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub lassos: usize,
}

fn sweep<F>(letters: usize, max_prefix: usize, max_period: usize, mut check: F) -> Result<std::result::Result<SweepReport, Counterexample>>
where
    F: FnMut(&LassoWord) -> Result<Option<Counterexample>>,
{
    let prefixes = all_words(letters, 0, max_prefix);
    let periods = all_words(letters, 1, max_period);
    let mut lassos = 0;
    for u in &prefixes {
        for v in &periods {
            let word = LassoWord::new(u.clone(), v.clone())?;
            if let Some(c) = check(&word)? {
                return Ok(Err(c));
            }
            lassos += 1;
        }
    }
    Ok(Ok(SweepReport { lassos }))
}

/// Compares acceptance by `automaton` with the condition on every lasso
/// with `|u| ≤ max_prefix` and `1 ≤ |v| ≤ max_period`; the first
/// disagreement in shortest-first order is returned.
pub fn check_language(
    automaton: &Automaton,
    condition: &MullerCondition,
    max_prefix: usize,
    max_period: usize,
) -> Result<std::result::Result<SweepReport, Counterexample>> {
    if automaton.input() != condition.alphabet() {
        return Err(Error::AlphabetMismatch {
            expected: condition.alphabet().len(),
            found: automaton.input().len(),
        });
    }
    let letters = condition.alphabet().len();
    sweep(letters, max_prefix, max_period, |word| {
        let expected = condition.accepts(&word.inf_set(letters));
        Ok((automaton.accepts_lasso(word)? != expected).then(|| Counterexample {
            word: word.clone(),
            condition_accepts: expected,
            kind: Disagreement::Automaton,
        }))
    })
}

/// As [`check_language`] for the good-for-games automaton, also requiring
/// the resolver's run to decide every lasso correctly.
pub fn certify_gfg(
    gfg: &GfgRabinAutomaton,
    max_prefix: usize,
    max_period: usize,
) -> Result<std::result::Result<SweepReport, Counterexample>> {
    let condition = gfg.tree().condition();
    let letters = condition.alphabet().len();
    sweep(letters, max_prefix, max_period, |word| {
        let expected = condition.accepts(&word.inf_set(letters));
        let kind = if gfg.automaton().accepts_lasso(word)? != expected {
            Disagreement::Automaton
        } else if gfg.resolve_run(word)?.1 != expected {
            Disagreement::Resolver
        } else {
            return Ok(None);
        };
        Ok(Some(Counterexample {
            word: word.clone(),
            condition_accepts: expected,
            kind,
        }))
    })
}
