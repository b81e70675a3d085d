use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::muller::MullerCondition;
use crate::error::{Error, Result};

/// On-disk form of a Muller condition:
/// `{"alphabet": ["a", "b"], "accepting": [["a"], ["a", "b"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionFile {
    pub alphabet: Vec<String>,
    pub accepting: Vec<Vec<String>>,
}

impl ConditionFile {
    pub fn parse(text: &str) -> Result<ConditionFile> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("condition file: {e}")))
    }

    pub fn to_condition(&self) -> Result<MullerCondition> {
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        let sets = self
            .accepting
            .iter()
            .map(|s| {
                let set = alphabet.set(s.iter().map(String::as_str))?;
                if set.len() != s.len() {
                    return Err(Error::Format(format!(
                        "accepting set [{}] repeats a symbol",
                        s.join(", ")
                    )));
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>>>()?;
        MullerCondition::new(alphabet, sets)
    }

    /// Sets listed in alphabet order, families sorted by size then by letters.
    pub fn from_condition(condition: &MullerCondition) -> ConditionFile {
        let alphabet = condition.alphabet();
        let mut accepting: Vec<Vec<usize>> = condition
            .accepting()
            .map(|s| s.iter().collect())
            .collect();
        accepting.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        ConditionFile {
            alphabet: alphabet.symbols().to_vec(),
            accepting: accepting
                .into_iter()
                .map(|s| s.into_iter().map(|l| alphabet.symbol(l).to_string()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("condition file serialises")
    }
}

impl MullerCondition {
    /// Reads a condition from its JSON document.
    pub fn from_json(text: &str) -> Result<MullerCondition> {
        ConditionFile::parse(text)?.to_condition()
    }

    pub fn to_json(&self) -> String {
        ConditionFile::from_condition(self).to_json()
    }
}
