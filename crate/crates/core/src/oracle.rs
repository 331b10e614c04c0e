//! Slow reference implementations over explicit element sets.
//!
//! Nothing here touches the bitstream encoding; tests compare the fast paths
//! against these definitions.

use std::collections::BTreeMap;

use crate::bitstream::Word;
use crate::error::Result;
use crate::semigroup::SemigroupState;
use crate::wilf::EliahouParams;

/// A semigroup stored as its membership table over `[0, c + 2m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NaiveSemigroup {
    member: Vec<bool>,
    conductor: u32,
    multiplicity: u32,
}

impl NaiveSemigroup {
    pub fn natural() -> Self {
        NaiveSemigroup { member: vec![true; 3], conductor: 0, multiplicity: 1 }
    }

    /// Builds from an arbitrary membership predicate, which must describe a
    /// semigroup with conductor `conductor`.
    pub fn from_predicate(conductor: u32, contains: impl Fn(u32) -> bool) -> Self {
        let multiplicity = (1..).find(|&x| x >= conductor || contains(x)).unwrap();
        let len = conductor + 2 * multiplicity + 1;
        let member = (0..len).map(|x| x == 0 || x >= conductor || contains(x)).collect();
        NaiveSemigroup { member, conductor, multiplicity }
    }

    pub fn from_left_elements(left: &[u32], conductor: u32) -> Self {
        Self::from_predicate(conductor, |x| left.contains(&x))
    }

    pub fn from_state<W: Word>(state: &SemigroupState<W>) -> Self {
        Self::from_left_elements(&state.left_elements(), state.conductor())
    }

    pub fn to_state<W: Word>(&self) -> Result<SemigroupState<W>> {
        SemigroupState::from_left_elements(&self.left_elements(), self.conductor)
    }

    pub fn contains(&self, x: u32) -> bool {
        x >= self.conductor || self.member[x as usize]
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn genus(&self) -> u32 {
        (0..self.conductor).filter(|&x| !self.contains(x)).count() as u32
    }

    pub fn left_elements(&self) -> Vec<u32> {
        (0..self.conductor).filter(|&x| self.contains(x)).collect()
    }

    pub fn rank(&self) -> u32 {
        self.left_elements().len() as u32
    }

    /// Elements `λ_0 < λ_1 < …` up to `c + 2m`.
    pub fn elements(&self) -> Vec<u32> {
        (0..self.member.len() as u32).filter(|&x| self.contains(x)).collect()
    }

    /// Whether `x` is a nonzero element that is not a sum of two nonzero elements.
    pub fn is_primitive(&self, x: u32) -> bool {
        x > 0 && self.contains(x) && !(1..=x / 2).any(|a| self.contains(a) && self.contains(x - a))
    }

    /// All primitive elements; none can exceed `c + m - 1`.
    pub fn primitives(&self) -> Vec<u32> {
        (1..self.window_end()).filter(|&x| self.is_primitive(x)).collect()
    }

    pub fn right_generators(&self) -> Vec<u32> {
        (self.conductor..self.window_end()).filter(|&x| self.is_primitive(x)).collect()
    }

    /// `c + m`, except for ℕ whose only generator 1 sits at `c + m`.
    fn window_end(&self) -> u32 {
        self.conductor.max(1) + self.multiplicity
    }

    /// `λ_s ∈ [c, c + u_p - 1]` with `λ_s + λ_p ≠ λ_i + λ_j` for all `p < i ≤ j < s`.
    pub fn seeds(&self, order: u32) -> Vec<u32> {
        let elements = self.elements();
        let rank = self.rank() as usize;
        let p = order as usize;
        assert!(p < rank, "seed order {order} must be below the rank {rank}");
        let width = elements[p + 1] - elements[p];
        (rank..elements.len())
            .take_while(|&s| elements[s] < self.conductor + width)
            .filter(|&s| {
                let target = elements[s] + elements[p];
                !(p + 1..s).any(|i| (i..s).any(|j| elements[i] + elements[j] == target))
            })
            .map(|s| elements[s])
            .collect()
    }

    /// `G` by definition: entry `i` is set iff `i + 1` is a gap.
    pub fn gap_bits(&self) -> Vec<bool> {
        (0..self.conductor).map(|i| !self.contains(i + 1)).collect()
    }

    /// `S` as the rows of the seed table, read off the definition of seeds.
    pub fn seed_bits(&self) -> Vec<bool> {
        (0..self.rank())
            .flat_map(|p| {
                let elements = self.elements();
                let width = elements[p as usize + 1] - elements[p as usize];
                let seeds = self.seeds(p);
                (self.conductor..self.conductor + width).map(move |x| seeds.contains(&x))
            })
            .collect()
    }

    pub fn remove(&self, element: u32) -> NaiveSemigroup {
        NaiveSemigroup::from_predicate(element + 1, |x| x != element && self.contains(x))
    }

    /// The semigroups obtained by removing one right generator, ascending.
    pub fn children(&self) -> Vec<NaiveSemigroup> {
        self.right_generators().into_iter().map(|x| self.remove(x)).collect()
    }

    /// Number of descendants at depth 1, 2 and 3.
    pub fn descendants(&self) -> (u64, u64, u64) {
        let mut counts = [0u64; 3];
        let mut stack = vec![(self.clone(), 0usize)];
        while let Some((node, depth)) = stack.pop() {
            if depth == 3 {
                continue;
            }
            for child in node.children() {
                counts[depth] += 1;
                stack.push((child, depth + 1));
            }
        }
        (counts[0], counts[1], counts[2])
    }

    pub fn params(&self) -> EliahouParams {
        let r = self.right_generators().len() as u32;
        let p = self.primitives().len() as u32;
        EliahouParams::new(self.conductor, self.multiplicity, p, r, self.rank())
    }
}

/// Seeds of order `order` by the definition.
pub fn naive_seeds(ns: &NaiveSemigroup, order: u32) -> Vec<u32> {
    ns.seeds(order)
}

pub fn naive_children(ns: &NaiveSemigroup) -> Vec<NaiveSemigroup> {
    ns.children()
}

/// Number of semigroups of each genus up to `max_genus`.
pub fn naive_count(max_genus: u32) -> BTreeMap<u32, u64> {
    let mut counts: BTreeMap<u32, u64> = (0..=max_genus).map(|g| (g, 0)).collect();
    let mut stack = vec![(NaiveSemigroup::natural(), 0)];
    while let Some((node, genus)) = stack.pop() {
        *counts.get_mut(&genus).unwrap() += 1;
        if genus < max_genus {
            stack.extend(node.children().into_iter().map(|child| (child, genus + 1)));
        }
    }
    counts
}

/// Every semigroup of genus `≤ max_genus`, with its genus.
pub fn naive_semigroups(max_genus: u32) -> Vec<(NaiveSemigroup, u32)> {
    let mut out = Vec::new();
    let mut stack = vec![(NaiveSemigroup::natural(), 0)];
    while let Some((node, genus)) = stack.pop() {
        if genus < max_genus {
            stack.extend(node.children().into_iter().map(|child| (child, genus + 1)));
        }
        out.push((node, genus));
    }
    out
}
