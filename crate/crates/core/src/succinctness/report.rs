use std::fmt::Write as _;

use serde::Serialize;

use super::{
    binomial_lower_bound, build_condition_graph, chromatic_number, clique_lower_bound,
    condition_fn, BinomialBound, ColouringMode,
};
use crate::error::{Error, Result};
use crate::zielonka::ZielonkaTree;

/// Stated asymptotic growth of the deterministic Rabin lower bound; printed
/// as a claim, never recomputed.
pub const ALPHA_CLAIM: &str =
    "deterministic Rabin automata for F_n need at least α^n states for infinitely many n, with α ≈ 1.116 (asymptotic claim, not reproduced)";

/// Condition graphs above this many letters are not built for the report.
const REPORT_GRAPH_LETTERS: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    /// Attempt the exact chromatic number even above 6 letters.
    pub exact_chi: bool,
    pub budget: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            exact_chi: false,
            budget: 10_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBoundSource {
    ExactChi,
    BinomialBound,
    CliqueBoundOnly,
    Unavailable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuccinctnessReport {
    pub n: usize,
    /// `memtree` of the Zielonka tree: states of the good-for-games Rabin automaton.
    pub gfg_rabin_states: usize,
    /// Leaves of the Zielonka tree: states of the deterministic parity automaton.
    pub det_parity_states: usize,
    pub det_rabin_lower_bound: Option<u128>,
    pub lower_bound_source: LowerBoundSource,
    pub exact_chi: Option<usize>,
    /// Set when an exact colouring was attempted and ran out of budget.
    pub exact_chi_budget_exceeded: bool,
    pub clique_bound: Option<usize>,
    pub binomial: Option<BinomialBound>,
    /// Lower bound over good-for-games size.
    pub ratio: Option<f64>,
    pub asymptotic_claim: &'static str,
}

pub fn succinctness_report(n: usize, options: ReportOptions) -> Result<SuccinctnessReport> {
    let condition = condition_fn(n)?;
    let tree = ZielonkaTree::new(&condition)?;
    let gfg = tree.memtree();
    let mut exact = None;
    let mut exceeded = false;
    let mut clique = None;
    if n <= REPORT_GRAPH_LETTERS {
        let graph = build_condition_graph(&condition)?;
        clique = Some(clique_lower_bound(&graph).len().max(1));
        if options.exact_chi || n <= 6 {
            match chromatic_number(&graph, ColouringMode::Exact { budget: options.budget }) {
                Ok(c) => exact = Some(c.size),
                Err(Error::BudgetExceeded(_)) => exceeded = true,
                Err(e) => return Err(e),
            }
        }
    }
    let binomial = binomial_lower_bound(n as u64).ok();
    let (bound, source) = match (exact, binomial, clique) {
        (Some(chi), _, _) => (Some(chi as u128), LowerBoundSource::ExactChi),
        (None, Some(b), c) if c.is_none_or(|c| b.bound >= c as u128) => {
            (Some(b.bound), LowerBoundSource::BinomialBound)
        }
        (None, _, Some(c)) => (Some(c as u128), LowerBoundSource::CliqueBoundOnly),
        (None, _, None) => (None, LowerBoundSource::Unavailable),
    };
    Ok(SuccinctnessReport {
        n,
        gfg_rabin_states: gfg,
        det_parity_states: tree.leaves().len(),
        det_rabin_lower_bound: bound,
        lower_bound_source: source,
        exact_chi: exact,
        exact_chi_budget_exceeded: exceeded,
        clique_bound: clique,
        binomial,
        ratio: bound.map(|b| b as f64 / gfg as f64),
        asymptotic_claim: ALPHA_CLAIM,
    })
}

impl SuccinctnessReport {
    /// `GFG g | detRabin ≥ r | detParity ≤ p`.
    pub fn row(&self) -> String {
        let rabin = match (self.det_rabin_lower_bound, self.lower_bound_source) {
            (Some(b), LowerBoundSource::CliqueBoundOnly) => format!("detRabin ≥ {b} (clique bound only)"),
            (Some(b), _) => format!("detRabin ≥ {b}"),
            (None, _) => "detRabin ≥ ?".to_string(),
        };
        format!(
            "GFG {} | {} | detParity ≤ {}",
            self.gfg_rabin_states, rabin, self.det_parity_states
        )
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        writeln!(out, "F_n with n = {}: accepting sets of size {}", self.n, self.n / 2).unwrap();
        writeln!(out, "{}", self.row()).unwrap();
        writeln!(out, "  good-for-games Rabin states   {}", self.gfg_rabin_states).unwrap();
        writeln!(out, "  deterministic parity states   {}", self.det_parity_states).unwrap();
        let chi = match (self.exact_chi, self.exact_chi_budget_exceeded) {
            (Some(c), _) => c.to_string(),
            (None, true) => "budget exceeded".into(),
            (None, false) => "-".into(),
        };
        writeln!(out, "  exact chromatic number        {chi}").unwrap();
        writeln!(out, "  clique bound                  {}", opt(self.clique_bound.map(|c| c.to_string()))).unwrap();
        let binomial = self.binomial.map(|b| {
            format!(
                "{} (k = {}, t = {}, ⌈{}/{}⌉)",
                b.bound, b.k, b.t, b.vertices, b.max_independent
            )
        });
        writeln!(out, "  binomial bound                {}", opt(binomial)).unwrap();
        writeln!(out, "  ratio detRabin / GFG          {}", opt(self.ratio.map(|r| format!("{r:.2}")))).unwrap();
        writeln!(out, "  {}", self.asymptotic_claim).unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
