//! The semigroup tree: child update, descendant counting and exploration.
//!
//! A child of `Λ` is `Λ \ {λ}` for a right generator `λ = c + t`. Its seed
//! bitstream is obtained from the parent's with `t` shifted ANDs of `G` and a
//! final shift, so a depth-first walk never touches explicit element sets.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitstream::{Bitstream, Word};
use crate::error::{Error, Result};
use crate::semigroup::{SeedTable, SemigroupState};
use crate::wilf::{child_params_unchecked, children_certified, params_from_state, EliahouParams, PrecedingSibling};

/// Children, grandchildren and great-grandchildren of a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct DescendantCounts {
    pub children: u64,
    pub grandchildren: u64,
    pub great_grandchildren: u64,
}

/// A semigroup found with negative Eliahou constant, or violating Wilf.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EliahouHit {
    pub genus: u32,
    pub conductor: u32,
    /// `⟨left primitives⟩|_c`, e.g. `<14,22,23>|56`.
    pub generators: String,
    pub e: i64,
    pub params: EliahouParams,
}

#[derive(Clone, Debug)]
pub struct ExploreConfig {
    pub workers: usize,
    /// Evaluate the Eliahou constant on every node of rank at least 3.
    pub eliahou: bool,
    /// Report finished subtrees on stderr.
    pub progress: bool,
}

impl Default for ExploreConfig {
    fn default() -> Self {
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
        ExploreConfig { workers, eliahou: false, progress: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExplorationReport {
    pub max_genus: u32,
    pub counts_by_genus: BTreeMap<u32, u64>,
    pub eliahou_hits: Vec<EliahouHit>,
    pub wilf_violations: Vec<EliahouHit>,
    pub wall_seconds: f64,
}

/// A subtree to be walked from `state` down to genus `state.genus() + residual_depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Root<W: Word = u128> {
    pub state: SemigroupState<W>,
    pub residual_depth: u32,
}

/// Work split for [`explore`]: every node of rank at most 2 is counted in
/// `low_rank`; every other node lies in exactly one root's subtree.
#[derive(Clone, Debug)]
pub struct Partition<W: Word = u128> {
    pub roots: Vec<Root<W>>,
    pub low_rank: BTreeMap<u32, u64>,
}

/// `Λ \ {λ}` for a right generator `λ` of `Λ`.
pub fn remove_right_generator<W: Word>(state: &SemigroupState<W>, element: u32) -> Result<SemigroupState<W>> {
    if !state.is_right_generator(element) {
        return Err(Error::NotRightGenerator { element });
    }
    if state.is_natural() {
        return SemigroupState::low_rank_state(2, None, None);
    }
    check_capacity::<W>(state, element)?;
    let t = element - state.conductor();
    let aux = (1..=t).fold(state.seed_bits(), |acc, j| acc & state.gap_bits().shift_up_lossy(j));
    Ok(child_unchecked(state, t, aux))
}

/// All children, by increasing removed generator.
pub fn children<W: Word>(state: &SemigroupState<W>) -> Result<Vec<SemigroupState<W>>> {
    state.right_generators().into_iter().map(|x| remove_right_generator(state, x)).collect()
}

fn check_capacity<W: Word>(state: &SemigroupState<W>, element: u32) -> Result<()> {
    if element + 1 > W::BITS {
        return Err(Error::CapacityExhausted { genus: state.genus() + 1, conductor: element + 1, capacity: W::BITS });
    }
    Ok(())
}

/// Child for offset `t`, given `aux = S ∧ (G≫1) ∧ … ∧ (G≫t)`.
#[inline]
fn child_unchecked<W: Word>(state: &SemigroupState<W>, t: u32, aux: Bitstream<W>) -> SemigroupState<W> {
    let c = state.conductor();
    let k = state.rank();
    let lambda = c + t;
    let seeds = aux.shift_down(t + 1).or(Bitstream::from_word(W::low_mask(3).shl_lossy(lambda - 2)));
    let gaps = state.gap_bits().with_bit(lambda - 1);
    let new_k = k + t;
    let old = state.cached_jumps();
    let jump = |j: u32| {
        if j + 1 < k {
            old[j as usize]
        } else if j + 1 == k {
            old[j as usize] + (t == 0) as u32
        } else if j + 1 == new_k {
            2
        } else {
            1
        }
    };
    let child =
        SemigroupState::from_raw(gaps, seeds, lambda + 1, state.genus() + 1, new_k, [jump(0), jump(1), jump(2)]);
    debug_assert_eq!(child.gap_bits().weight(), child.genus());
    child
}

/// Seed table of `Λ \ {λ}` assembled from the parent's seeds alone:
/// recycled seeds above `λ`, the new seeds `λ + u_p`, and the new orders.
pub fn classify_child_seeds<W: Word>(state: &SemigroupState<W>, element: u32) -> Result<SeedTable> {
    if !state.is_right_generator(element) {
        return Err(Error::NotRightGenerator { element });
    }
    if state.is_natural() {
        return Ok(SeedTable::from_rows(vec![vec![true, true]]));
    }
    let c = state.conductor();
    let k = state.rank();
    let t = element - c;
    let new_k = k + t;
    let jumps = state.jumps();
    let mut rows = Vec::with_capacity(new_k as usize);
    for p in 0..k {
        let u_p = jumps[p as usize];
        let width = if p == k - 1 && t == 0 { u_p + 1 } else { u_p };
        let mut seeds = Vec::new();
        // Recycled: order-p seeds of the parent above λ.
        for x in element + 1..c + u_p {
            if state.is_order_p_seed(x, p)? {
                seeds.push(x);
            }
        }
        if p + 1 < k {
            let window = c..c + jumps[p as usize + 1];
            if window.contains(&element) && state.is_order_p_seed(element, p + 1)? {
                seeds.push(element + u_p);
            }
        } else if t == 0 {
            seeds.extend([element + u_p, element + u_p + 1]);
        } else if t == 1 {
            seeds.push(element + u_p);
        }
        rows.push((element + 1..element + 1 + width).map(|x| seeds.contains(&x)).collect());
    }
    for p in k..new_k {
        rows.push(if p + 1 == new_k {
            vec![true, true]
        } else if p + 2 == new_k {
            vec![true]
        } else {
            vec![false]
        });
    }
    Ok(SeedTable::from_rows(rows))
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn choose3(n: u64) -> u64 {
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

/// `n_c`, `n_gc` and `n_ggc` in closed form from `m`, `u`, `v` and `S`.
pub fn descendant_counts<W: Word>(state: &SemigroupState<W>) -> DescendantCounts {
    let (m, u, v) = (state.multiplicity(), state.first_jump(), state.second_jump());
    let s = state.seed_bits();
    let (m64, u64_) = (m as u64, u as u64);
    let (children, grandchildren, great_grandchildren) = match state.rank() {
        0 => (1, 2, 4),
        1 => {
            let ggc = choose3(m64) + 3 * m64 + if m <= 3 { 1 } else { 3 };
            (m64, choose2(m64) + 3, ggc)
        }
        2 => {
            let nc = m64 - 1;
            let strong = s.and(s.shift_down(m)).weight_below(u) as u64;
            let da = (m < 2 * u) as u64;
            let db = (u == m || 2 * u != m) as u64;
            let dc = (u + 1 < m && 2 * u + 1 != m) as u64;
            let dd = (u + 1 == m) as u64;
            let ggc = choose3(m64 - 1) + (u64_ - da) * (m64 - 2) + db + 2 * dc + dd;
            (nc, choose2(nc) + strong, ggc)
        }
        _ => {
            let nc = s.weight_below(m) as u64;
            let strong = s.and(s.shift_down(m)).weight_below(u) as u64;
            let third = s.and(s.shift_down(u)).and(s.shift_down(u + m)).weight_below(v) as u64;
            (nc, choose2(nc) + strong, choose3(nc) + strong * nc.saturating_sub(1) + third)
        }
    };
    DescendantCounts { children, grandchildren, great_grandchildren }
}

/// Number of ordinary and pseudo-ordinary semigroups of genus `g`.
pub fn low_rank_count(genus: u32) -> u64 {
    if genus == 0 {
        return 1;
    }
    // Pseudo-ordinary: 1 < u ≤ m with m + u = g + 2.
    1 + ((genus + 2) / 2).saturating_sub(1) as u64
}

/// Roots of all rank ≥ 3 subtrees: every node of rank ≥ 3 whose parent has
/// rank ≤ 2. These are the rank-3 states with `v = 2`, the children of
/// `{0, m, …}` at offset `t ≥ 3` and the children of `{0, m, m+u, …}` at
/// offset `t ≥ 2`.
pub fn partition_roots<W: Word>(max_genus: u32) -> Result<Partition<W>> {
    let mut roots = Vec::new();
    let mut push = |state: SemigroupState<W>| {
        roots.push(Root { residual_depth: max_genus - state.genus(), state });
    };
    let low_rank = |m: u32, u: Option<u32>, v: Option<u32>| {
        let conductor = m + u.unwrap_or(0) + v.unwrap_or(0);
        if conductor > W::BITS {
            let genus = conductor - 1 - u32::from(u.is_some()) - u32::from(v.is_some());
            return Err(Error::CapacityExhausted { genus, conductor, capacity: W::BITS });
        }
        SemigroupState::low_rank_state(m, u, v)
    };
    // Rank 3 with v = 2 has genus m + u - 1.
    for m in 2..=max_genus {
        for u in 1..=m {
            if m + u > max_genus + 1 || (u < m && u + 2 > m) {
                continue;
            }
            push(low_rank(m, Some(u), Some(2))?);
        }
    }
    // Children of ordinary m (genus m - 1) at t ≥ 3 have genus m.
    for m in 4..=max_genus {
        let parent = low_rank(m, None, None)?;
        for t in 3..m {
            push(remove_right_generator(&parent, m + t)?);
        }
    }
    // Children of pseudo-ordinary (m, u) at t ≥ 2 have genus m + u - 1.
    for m in 2..=max_genus {
        for u in 2..=m {
            if m + u > max_genus + 1 {
                continue;
            }
            let parent = low_rank(m, Some(u), None)?;
            for t in (2..m).filter(|&t| t != m - u) {
                push(remove_right_generator(&parent, m + u + t)?);
            }
        }
    }
    roots.sort_by_key(|r| (r.state.genus(), r.state.conductor(), r.state.left_elements()));
    let low_rank = (0..=max_genus).map(|g| (g, low_rank_count(g))).collect();
    Ok(Partition { roots, low_rank })
}

/// Node counts by genus in the subtree of `state`, down to `max_genus`, by a
/// plain depth-first walk without closed-form shortcuts.
pub fn subtree_counts<W: Word>(state: &SemigroupState<W>, max_genus: u32) -> Result<BTreeMap<u32, u64>> {
    let mut counts = BTreeMap::new();
    let mut stack = vec![*state];
    while let Some(node) = stack.pop() {
        if node.genus() > max_genus {
            continue;
        }
        *counts.entry(node.genus()).or_insert(0) += 1;
        if node.genus() < max_genus {
            stack.extend(children(&node)?);
        }
    }
    Ok(counts)
}

/// Per-worker tallies.
#[derive(Default)]
struct Tally {
    counts: Vec<u64>,
    hits: Vec<EliahouHit>,
    violations: Vec<EliahouHit>,
}

impl Tally {
    fn new(max_genus: u32) -> Self {
        Tally { counts: vec![0; max_genus as usize + 4], ..Default::default() }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.hits.extend(other.hits);
        self.violations.extend(other.violations);
        self
    }
}

/// Walks one root's subtree, counting nodes by genus. Below depth
/// `max_genus - 3` the remaining levels come from [`descendant_counts`].
fn walk_counts<W: Word>(root: SemigroupState<W>, max_genus: u32, tally: &mut Tally) -> Result<()> {
    let mut stack = Vec::with_capacity(1024);
    stack.push(root);
    while let Some(node) = stack.pop() {
        let genus = node.genus() as usize;
        let depth = max_genus as usize - genus;
        if depth <= 3 {
            let d = descendant_counts(&node);
            let levels = [1, d.children, d.grandchildren, d.great_grandchildren];
            for (i, n) in levels.into_iter().enumerate().take(depth + 1) {
                tally.counts[genus + i] += n;
            }
            continue;
        }
        tally.counts[genus] += 1;
        for_each_child(&node, |child, _, _| {
            stack.push(child);
            Ok(())
        })?;
    }
    Ok(())
}

/// Calls `f(child, t, is_strong)` for every child in increasing `t`.
#[inline]
fn for_each_child<W: Word>(
    node: &SemigroupState<W>,
    mut f: impl FnMut(SemigroupState<W>, u32, bool) -> Result<()>,
) -> Result<()> {
    let m = node.multiplicity();
    let u = node.first_jump();
    let s = node.seed_bits();
    let generators = Bitstream::from_word(s.word() & W::low_mask(m));
    if generators.is_zero() {
        return Ok(());
    }
    check_capacity(node, node.conductor() + generators.logical_len() - 1)?;
    let g = node.gap_bits();
    let mut aux = s;
    let mut shifted = 0;
    for t in generators.ones_iter() {
        while shifted < t {
            shifted += 1;
            aux = aux.and(g.shift_up_lossy(shifted));
        }
        let strong = t < u && s.get(m + t);
        f(child_unchecked(node, t, aux), t, strong)?;
    }
    Ok(())
}

/// Walks one root's subtree evaluating the Eliahou constant at every node.
/// Parameters are counted directly at the root and updated incrementally
/// below. The last two levels are never pushed: their parameters come from the
/// parent, and a child certified by [`children_certified`] contributes its
/// `r` children without expanding them.
fn walk_eliahou<W: Word>(root: SemigroupState<W>, max_genus: u32, tally: &mut Tally) -> Result<()> {
    let mut stack = Vec::with_capacity(1024);
    stack.push((root, params_from_state(&root)));
    while let Some((node, params)) = stack.pop() {
        let genus = node.genus();
        tally.counts[genus as usize] += 1;
        check_params(tally, genus, params, || Ok(node))?;
        let mut preceding: Option<PrecedingSibling> = None;
        let mut sibling = |t: u32, strong: bool| {
            let weak = !strong;
            let cp = child_params_unchecked(&params, t, weak, preceding);
            preceding = Some(PrecedingSibling { right_generators: cp.right_generators, weak });
            cp
        };
        match max_genus - genus {
            0 => {}
            1 => leaf_children(&node, &params, tally)?,
            2 => for_each_child(&node, |child, t, strong| {
                let cp = sibling(t, strong);
                tally.counts[genus as usize + 1] += 1;
                check_params(tally, genus + 1, cp, || Ok(child))?;
                leaf_children(&child, &cp, tally)
            })?,
            _ => for_each_child(&node, |child, t, strong| {
                stack.push((child, sibling(t, strong)));
                Ok(())
            })?,
        }
    }
    Ok(())
}

/// Counts and checks the children of `node` from its parameters alone.
fn leaf_children<W: Word>(node: &SemigroupState<W>, params: &EliahouParams, tally: &mut Tally) -> Result<()> {
    let genus = node.genus();
    if children_certified(params) {
        tally.counts[genus as usize + 1] += params.right_generators as u64;
        return Ok(());
    }
    let (m, u, s) = (node.multiplicity(), node.first_jump(), node.seed_bits());
    let mut preceding: Option<PrecedingSibling> = None;
    for t in Bitstream::from_word(s.word() & W::low_mask(m)).ones_iter() {
        let weak = !(t < u && s.get(m + t));
        let child = child_params_unchecked(params, t, weak, preceding);
        preceding = Some(PrecedingSibling { right_generators: child.right_generators, weak });
        tally.counts[genus as usize + 1] += 1;
        check_params(tally, genus + 1, child, || remove_right_generator(node, node.conductor() + t))?;
    }
    Ok(())
}

/// Whether `params` needs recording.
#[inline]
fn check_cheap(params: &EliahouParams) -> bool {
    params.eliahou_constant() < 0 || !params.wilf_holds()
}

fn check_params<W: Word>(
    tally: &mut Tally,
    genus: u32,
    params: EliahouParams,
    state: impl FnOnce() -> Result<SemigroupState<W>>,
) -> Result<()> {
    if !check_cheap(&params) {
        return Ok(());
    }
    let state = state()?;
    let hit = EliahouHit {
        genus,
        conductor: params.conductor,
        generators: state.describe(),
        e: params.eliahou_constant(),
        params,
    };
    if !params.wilf_holds() {
        tally.violations.push(hit.clone());
    }
    if hit.e < 0 {
        tally.hits.push(hit);
    }
    Ok(())
}

/// Visits every semigroup of genus at most `max_genus`.
///
/// Nodes of rank at most 2 are counted in closed form; the rest are walked
/// from the roots of [`partition_roots`] on `config.workers` threads.
pub fn explore<W: Word>(max_genus: u32, config: &ExploreConfig) -> Result<ExplorationReport> {
    let start = Instant::now();
    if config.workers == 0 {
        return Err(Error::InvalidParameters("at least one worker is needed".into()));
    }
    // ⟨2, 2g+1⟩ has conductor 2g, the largest at genus g.
    if 2 * max_genus > W::BITS {
        let genus = W::BITS / 2 + 1;
        return Err(Error::CapacityExhausted { genus, conductor: 2 * genus, capacity: W::BITS });
    }
    let partition = partition_roots::<W>(max_genus)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("cannot start worker pool: {e}")))?;
    let total = partition.roots.len();
    let done = AtomicUsize::new(0);
    let results: Vec<Result<Tally>> = pool.install(|| {
        partition
            .roots
            .par_iter()
            .with_max_len(1)
            .map(|root| {
                let mut tally = Tally::new(max_genus);
                if config.eliahou {
                    walk_eliahou(root.state, max_genus, &mut tally)?;
                } else {
                    walk_counts(root.state, max_genus, &mut tally)?;
                }
                if config.progress {
                    let n = done.fetch_add(1, Ordering::Relaxed) + 1;
                    if n * 20 / total != (n - 1) * 20 / total || n == total {
                        eprintln!("explored {n}/{total} subtrees ({:.1}s)", start.elapsed().as_secs_f64());
                    }
                }
                Ok(tally)
            })
            .collect()
    });
    let mut tally = Tally::new(max_genus);
    for result in results {
        tally = tally.merge(result?);
    }
    for (g, n) in &partition.low_rank {
        tally.counts[*g as usize] += n;
    }
    tally.hits.sort();
    tally.violations.sort();
    let counts_by_genus = (0..=max_genus).map(|g| (g, tally.counts[g as usize])).collect();
    Ok(ExplorationReport {
        max_genus,
        counts_by_genus,
        eliahou_hits: tally.hits,
        wilf_violations: tally.violations,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}
