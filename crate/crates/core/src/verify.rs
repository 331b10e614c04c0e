//! Named self-check suites comparing the fast paths with the oracle and
//! with known constants.

use std::fmt;

use crate::bitstream::{Bitstream, Word};
use crate::error::{Error, Result};
use crate::oracle::{naive_count, NaiveSemigroup};
use crate::semigroup::SemigroupState;
use crate::tree::{children, classify_child_seeds, descendant_counts, explore, subtree_counts, ExploreConfig};
use crate::wilf::{self, child_params, params_from_state, PrecedingSibling, KNOWN_ELIAHOU};
use crate::Wide;

pub const SUITES: [&str; 5] = ["counts", "seeds", "ggc", "eliahou", "families"];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub genus: Option<u32>,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, genus: Option<u32>) -> Self {
        SuiteReport { suite: suite.into(), genus, ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = self.genus.map(|g| format!(" up to genus {g}")).unwrap_or_default();
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{}{}: {} checks, {} failures: {status}", self.suite, scope, self.checks, self.failures.len())?;
        for failure in self.failures.iter().filter(|s| !s.is_empty()) {
            write!(f, "\n  {failure}")?;
        }
        Ok(())
    }
}

/// Default genus bound of each suite.
pub fn default_genus(suite: &str) -> Option<u32> {
    match suite {
        "counts" => Some(12),
        "seeds" => Some(16),
        "ggc" => Some(18),
        "eliahou" => Some(14),
        _ => None,
    }
}

pub fn run_suite(suite: &str, genus: Option<u32>) -> Result<SuiteReport> {
    let genus = genus.or_else(|| default_genus(suite));
    match (suite, genus) {
        ("counts", Some(g)) => counts(g),
        ("seeds", Some(g)) => seeds(g),
        ("ggc", Some(g)) => ggc(g),
        ("eliahou", Some(g)) => eliahou(g),
        ("families", _) => families(),
        _ => Err(Error::InvalidParameters(format!("unknown suite {suite:?}; expected one of {SUITES:?}"))),
    }
}

/// Exploration counts against the oracle's enumeration.
pub fn counts(max_genus: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("counts", Some(max_genus));
    let expected = naive_count(max_genus);
    for workers in [1, 4] {
        let found = explore::<u128>(max_genus, &ExploreConfig { workers, ..Default::default() })?;
        for (g, n) in &expected {
            let got = found.counts_by_genus.get(g).copied().unwrap_or(0);
            report.check(got == *n, || format!("genus {g} with {workers} workers: {got} != {n}"));
        }
    }
    Ok(report)
}

/// Walks the oracle tree and the bitstream tree side by side. At each node it
/// compares `G`, `S`, the Σ split, every child, the predicted child seed
/// tables and every seed order.
pub fn seeds(max_genus: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("seeds", Some(max_genus));
    let mut stack = vec![(NaiveSemigroup::natural(), SemigroupState::<u128>::natural())];
    while let Some((naive, fast)) = stack.pop() {
        let name = fast.to_string();
        let c = fast.conductor();
        let sigma = naive.to_state::<u128>()?;
        report.check(sigma == fast, || format!("{name}: Σ split differs"));
        report.check(bits(&fast.gap_bits(), c) == naive.gap_bits(), || format!("{name}: G differs"));
        report.check(bits(&fast.seed_bits(), c) == naive.seed_bits(), || format!("{name}: S differs"));
        for p in 0..fast.rank() {
            let from_bits: Vec<u32> = (c..2 * c).filter(|&x| fast.is_order_p_seed(x, p).unwrap_or(false)).collect();
            report.check(from_bits == naive.seeds(p), || format!("{name}: order-{p} seeds differ"));
        }
        if fast.genus() == max_genus {
            continue;
        }
        let naive_children = naive.children();
        let fast_children = children(&fast)?;
        report.check(naive_children.len() == fast_children.len(), || format!("{name}: child count differs"));
        for (x, (nc, fc)) in fast.right_generators().into_iter().zip(naive_children.into_iter().zip(fast_children)) {
            report.check(nc.to_state::<u128>()? == fc, || format!("{name} minus {x}: child differs"));
            let predicted = classify_child_seeds(&fast, x)?;
            report.check(predicted == fc.seed_table(), || format!("{name} minus {x}: classified seeds differ"));
            stack.push((nc, fc));
        }
    }
    Ok(report)
}

fn bits<W: Word>(b: &Bitstream<W>, len: u32) -> Vec<bool> {
    (0..len).map(|i| b.get(i)).collect()
}

/// The closed-form descendant counts against a three-level expansion at every
/// node, and their per-genus sums against the counts three levels down.
pub fn ggc(max_genus: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("ggc", Some(max_genus));
    let totals = explore::<u128>(max_genus + 3, &ExploreConfig::default())?.counts_by_genus;
    let mut sums = vec![[0u64; 3]; max_genus as usize + 1];
    let mut stack = vec![SemigroupState::<u128>::natural()];
    while let Some(node) = stack.pop() {
        let g = node.genus();
        let d = descendant_counts(&node);
        let expanded = subtree_counts(&node, g + 3)?;
        let level = |i| expanded.get(&(g + i)).copied().unwrap_or(0);
        let formula = [d.children, d.grandchildren, d.great_grandchildren];
        report.check(formula == [level(1), level(2), level(3)], || format!("{node}: {formula:?}"));
        for (sum, n) in sums[g as usize].iter_mut().zip(formula) {
            *sum += n;
        }
        if g < max_genus {
            stack.extend(children(&node)?);
        }
    }
    for (g, level_sums) in sums.iter().enumerate() {
        for (i, sum) in level_sums.iter().enumerate() {
            let target = g as u32 + i as u32 + 1;
            let expected = totals[&target];
            report.check(*sum == expected, || format!("genus {g}, level {}: {sum} != {expected}", i + 1));
        }
    }
    Ok(report)
}

/// Incremental Eliahou parameters against direct counts on every edge out of
/// a node of rank at least 2.
pub fn eliahou(max_genus: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("eliahou", Some(max_genus));
    let mut stack = vec![SemigroupState::<u128>::natural()];
    while let Some(node) = stack.pop() {
        if node.genus() == max_genus {
            continue;
        }
        let kids = children(&node)?;
        if node.rank() >= 2 {
            let parent = params_from_state(&node);
            let mut preceding = None;
            for (x, child) in node.right_generators().into_iter().zip(&kids) {
                let s = x - node.conductor();
                let weak = s >= node.first_jump() || !node.is_order_p_seed(x, 1)?;
                let incremental = child_params(&parent, s, weak, preceding)?;
                let direct = params_from_state(child);
                report.check(incremental == direct, || format!("{node} minus {x}: {incremental:?} != {direct:?}"));
                preceding = Some(PrecedingSibling { right_generators: incremental.right_generators, weak });
            }
        }
        stack.extend(kids);
    }
    Ok(report)
}

/// Eliahou constants of the known examples and the parameterized families.
pub fn families() -> Result<SuiteReport> {
    type Big = Wide<5>;
    let mut report = SuiteReport::new("families", None);
    let e = |s: &SemigroupState<Big>| params_from_state(s).eliahou_constant();
    for (i, (gens, floor)) in KNOWN_ELIAHOU.iter().enumerate() {
        let s = SemigroupState::<Big>::from_generators_with_floor(gens, *floor)?;
        report.check(e(&s) == -1, || format!("eps{}: E = {}", i + 1, e(&s)));
    }
    let b8 = e(&wilf::bef::<Big>(8)?);
    report.check(b8 == 4, || format!("BEF_8: E = {b8}"));
    for t in 9..=30 {
        let v = e(&wilf::bef::<Big>(t)?);
        report.check(v == -1, || format!("BEF_{t}: E = {v}"));
    }
    for g in 2..=50 {
        let v = e(&wilf::hyperelliptic::<Big>(g)?);
        report.check(v == 0, || format!("hyperelliptic genus {g}: E = {v}"));
    }
    for g in 5..=50i64 {
        let v = e(&wilf::interval_semigroup::<Big>(g as u32)?);
        report.check(v == g * g - 5 * g + 2, || format!("interval family g = {g}: E = {v}"));
    }
    for t in 1..=40 {
        for b in [3 * t + 2, 3 * t + 4] {
            let v = e(&wilf::multiplicity_three::<Big>(b)?);
            report.check(v == 0, || format!("<3,{b}>: E = {v}"));
        }
    }
    for m in 1..=40 {
        for a in 0..=2 * m {
            for b in a + 1..=2 * m {
                if let Ok(s) = wilf::ef_semigroup::<Big>(m, a, b) {
                    let v = e(&s);
                    report.check(v == -1, || format!("EF({m},{a},{b}): E = {v}"));
                }
            }
        }
    }
    let delgado = [((4, 0, 0, 0), 0), ((4, 0, 0, 3), 7)];
    for ((p, tau, i, j), eps) in delgado {
        let s = wilf::delgado::<Big>(p, tau, i, j)?;
        let (gens, floor) = KNOWN_ELIAHOU[eps];
        let expected = SemigroupState::<Big>::from_generators_with_floor(&gens, floor)?;
        report.check(s == expected, || format!("D^({i},{j})({p},{tau}) is not eps{}", eps + 1));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for (suite, genus) in [("counts", 8), ("seeds", 9), ("ggc", 8), ("eliahou", 9)] {
            let report = run_suite(suite, Some(genus)).unwrap();
            assert!(report.passed(), "{report}");
            assert!(report.checks > 0);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", None).is_err());
    }
}
