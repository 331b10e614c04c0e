//! Numerical-semigroup states encoded by their gap and seed bitstreams.

use std::fmt;

use crate::bitstream::{Bitstream, Word};
use crate::error::{Error, Result};

/// One node of the semigroup tree.
///
/// `G` has logical length `c` with `G_i = 1` iff `i + 1` is a gap. `S` has
/// logical length `c` and is the concatenation of the rows of the seed table.
/// The first three jumps `u_0 = m`, `u_1 = u`, `u_2 = v` are cached; jumps past
/// the rank are 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SemigroupState<W: Word = u128> {
    gaps: Bitstream<W>,
    seeds: Bitstream<W>,
    conductor: u32,
    genus: u32,
    rank: u32,
    jumps: [u32; 3],
}

/// The binary table of seeds: row `i` has `u_i` entries and entry `j` is set
/// iff `c + j` is an order-`i` seed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SeedTable {
    rows: Vec<Vec<bool>>,
}

impl SeedTable {
    pub fn from_rows(rows: Vec<Vec<bool>>) -> Self {
        SeedTable { rows }
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn row_strings(&self) -> Vec<String> {
        self.rows.iter().map(|row| row.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect()
    }

    /// The rows read one after another; equals `S`.
    pub fn concatenated(&self) -> Vec<bool> {
        self.rows.iter().flatten().copied().collect()
    }
}

impl fmt::Display for SeedTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.row_strings().join("|"))
    }
}

impl<W: Word> SemigroupState<W> {
    /// The root of the tree, ℕ: conductor 0, empty bitstreams, rank 0.
    pub fn natural() -> Self {
        SemigroupState {
            gaps: Bitstream::zero(),
            seeds: Bitstream::zero(),
            conductor: 0,
            genus: 0,
            rank: 0,
            jumps: [1, 1, 1],
        }
    }

    pub(crate) fn from_raw(
        gaps: Bitstream<W>,
        seeds: Bitstream<W>,
        conductor: u32,
        genus: u32,
        rank: u32,
        jumps: [u32; 3],
    ) -> Self {
        SemigroupState { gaps, seeds, conductor, genus, rank, jumps }
    }

    /// `Σ_0 … Σ_{2c-1}` with `Σ_i = 0` iff `i ∈ L + L`.
    pub fn sigma_from_left_elements(left: &[u32], conductor: u32) -> Result<Bitstream<W>> {
        let left = validate_left(left, conductor)?;
        if 2 * conductor > W::BITS {
            return Err(Error::Overflow { needed: 2 * conductor, capacity: W::BITS });
        }
        let sums = sumset(&left, conductor);
        Bitstream::from_indices((0..2 * conductor).filter(|&i| !sums[i as usize]))
    }

    /// Builds the state from its left elements by splitting Σ:
    /// `G_0…G_{c-2} = Σ_1…Σ_{c-1}`, `G_{c-1} = 0`, `S = Σ_c…Σ_{2c-1}`.
    pub fn from_left_elements(left: &[u32], conductor: u32) -> Result<Self> {
        let left = validate_left(left, conductor)?;
        if conductor == 0 {
            return Ok(Self::natural());
        }
        if conductor > W::BITS {
            return Err(Error::Overflow { needed: conductor, capacity: W::BITS });
        }
        let c = conductor;
        let sums = sumset(&left, c);
        let gaps = Bitstream::from_indices((0..c - 1).filter(|&i| !sums[i as usize + 1]))?;
        let seeds = Bitstream::from_indices((0..c).filter(|&i| !sums[(c + i) as usize]))?;
        let rank = left.len() as u32;
        let mut jumps = [1; 3];
        for (j, jump) in jumps.iter_mut().enumerate() {
            if j < left.len() {
                let next = left.get(j + 1).copied().unwrap_or(c);
                *jump = next - left[j];
            }
        }
        Ok(SemigroupState { gaps, seeds, conductor: c, genus: c - rank, rank, jumps })
    }

    /// Closed-form states of rank 1, 2 and 3: `{0, m, …}`, `{0, m, m+u, …}` and
    /// `{0, m, m+u, m+u+v, …}`.
    pub fn low_rank_state(m: u32, u: Option<u32>, v: Option<u32>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        // Subtracting distinct powers of two from 2^n - 1 clears those bits.
        let minus = |s: Bitstream<W>, e: u32| {
            debug_assert!(s.get(e));
            Bitstream::from_word(s.word() & !W::bit(e))
        };
        match (u, v) {
            (None, None) => {
                if m < 2 {
                    return bad(format!("rank-1 semigroup needs m >= 2, got {m}"));
                }
                check_conductor::<W>(m)?;
                Ok(SemigroupState {
                    gaps: Bitstream::ones(m - 1)?,
                    seeds: Bitstream::ones(m)?,
                    conductor: m,
                    genus: m - 1,
                    rank: 1,
                    jumps: [m, 1, 1],
                })
            }
            (Some(u), None) => {
                if !(1 < u && u <= m) {
                    return bad(format!("rank-2 semigroup needs 1 < u <= m, got m={m} u={u}"));
                }
                let c = m + u;
                check_conductor::<W>(c)?;
                Ok(SemigroupState {
                    gaps: minus(Bitstream::ones(c - 1)?, m - 1),
                    seeds: minus(Bitstream::ones(c)?, m - u),
                    conductor: c,
                    genus: c - 2,
                    rank: 2,
                    jumps: [m, u, 1],
                })
            }
            (Some(u), Some(v)) => {
                let ok = if u < m { u >= 1 && 2 <= v && v <= m - u } else { u == m && 2 <= v && v <= m };
                if !ok {
                    return bad(format!("no rank-3 semigroup with m={m} u={u} v={v}"));
                }
                let c = m + u + v;
                check_conductor::<W>(c)?;
                let gaps = minus(minus(Bitstream::ones(c - 1)?, m - 1), m + u - 1);
                let mut seeds = minus(minus(Bitstream::ones(c)?, m - v), m + u - v);
                if u < m {
                    seeds = minus(seeds, m - u - v);
                }
                Ok(SemigroupState { gaps, seeds, conductor: c, genus: c - 3, rank: 3, jumps: [m, u, v] })
            }
            (None, Some(_)) => bad("a second jump needs a first jump".into()),
        }
    }

    /// `⟨gens⟩|_floor`: the smallest semigroup containing `gens` and every
    /// integer `>= floor`.
    pub fn from_generators_with_floor(gens: &[u32], floor: u32) -> Result<Self> {
        if floor == 0 {
            return Err(Error::InvalidParameters("floor must be positive".into()));
        }
        if gens.is_empty() || gens.contains(&0) {
            return Err(Error::InvalidParameters("generators must be non-empty and positive".into()));
        }
        let member = closure(gens, floor as usize);
        let conductor = member.iter().rposition(|&m| !m).map_or(0, |f| f as u32 + 1);
        let left: Vec<u32> = (0..conductor).filter(|&x| member[x as usize]).collect();
        Self::from_left_elements(&left, conductor)
    }

    /// `⟨gens⟩`, which must have gcd 1.
    pub fn from_generators(gens: &[u32]) -> Result<Self> {
        if gens.is_empty() || gens.contains(&0) {
            return Err(Error::InvalidParameters("generators must be non-empty and positive".into()));
        }
        if gens.iter().fold(0, |a, &b| gcd(a, b)) != 1 {
            return Err(Error::InvalidParameters(format!("generators {gens:?} have gcd > 1")));
        }
        let m = *gens.iter().min().unwrap() as usize;
        let mut len = 4 * m + 4;
        loop {
            let member = closure(gens, len);
            let mut run = 0;
            for (x, &is_member) in member.iter().enumerate() {
                run = if is_member { run + 1 } else { 0 };
                if run == m {
                    return Self::from_generators_with_floor(gens, (x + 1 - m).max(1) as u32);
                }
            }
            len *= 2;
        }
    }

    pub fn gap_bits(&self) -> Bitstream<W> {
        self.gaps
    }

    pub fn seed_bits(&self) -> Bitstream<W> {
        self.seeds
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `m = λ_1 = u_0`; 1 for ℕ.
    pub fn multiplicity(&self) -> u32 {
        self.jumps[0]
    }

    /// `u = u_1`.
    pub fn first_jump(&self) -> u32 {
        self.jumps[1]
    }

    /// `v = u_2`.
    pub fn second_jump(&self) -> u32 {
        self.jumps[2]
    }

    pub(crate) fn cached_jumps(&self) -> [u32; 3] {
        self.jumps
    }

    pub fn is_natural(&self) -> bool {
        self.conductor == 0
    }

    pub fn frobenius(&self) -> Option<u32> {
        self.conductor.checked_sub(1)
    }

    pub fn contains(&self, x: u32) -> bool {
        x == 0 || x >= self.conductor || !self.gaps.get(x - 1)
    }

    /// `L(Λ)`, read off the zeros of `G`.
    pub fn left_elements(&self) -> Vec<u32> {
        if self.is_natural() {
            return Vec::new();
        }
        std::iter::once(0).chain((1..self.conductor).filter(|&x| !self.gaps.get(x - 1))).collect()
    }

    /// Full jump sequence `u_0 … u_{k-1}`, recomputed from `G`.
    pub fn jumps(&self) -> Vec<u32> {
        let mut left = self.left_elements();
        left.push(self.conductor);
        left.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn right_generators(&self) -> Vec<u32> {
        if self.is_natural() {
            return vec![1];
        }
        let m = self.multiplicity();
        self.seeds.ones_iter().take_while(|&i| i < m).map(|i| self.conductor + i).collect()
    }

    /// A right generator `μ ≥ c` is exactly an element with `S_{μ-c} = 1`, `μ < c + m`.
    pub fn is_right_generator(&self, element: u32) -> bool {
        if self.is_natural() {
            return element == 1;
        }
        element >= self.conductor
            && element - self.conductor < self.multiplicity()
            && self.seeds.get(element - self.conductor)
    }

    /// Whether `element` is an order-`order` seed: reads `S` at `λ_p + (λ - c)`.
    pub fn is_order_p_seed(&self, element: u32, order: u32) -> Result<bool> {
        if order >= self.rank {
            return Err(Error::InvalidParameters(format!("seed order {order} must be below the rank {}", self.rank)));
        }
        let left = self.left_elements();
        let start = left[order as usize];
        let width = left.get(order as usize + 1).copied().unwrap_or(self.conductor) - start;
        if element < self.conductor || element - self.conductor >= width {
            return Err(Error::OutsideSeedWindow { element, order });
        }
        Ok(self.seeds.get(start + element - self.conductor))
    }

    pub fn seed_table(&self) -> SeedTable {
        let mut start = 0;
        let rows = self
            .jumps()
            .into_iter()
            .map(|width| {
                let row = (start..start + width).map(|i| self.seeds.get(i)).collect();
                start += width;
                row
            })
            .collect();
        SeedTable { rows }
    }

    /// Primitive elements below the conductor.
    pub fn left_primitives(&self) -> Vec<u32> {
        let left = self.left_elements();
        let nonzero = left.get(1..).unwrap_or_default();
        nonzero
            .iter()
            .copied()
            .filter(|&x| !nonzero.iter().take_while(|&&a| 2 * a <= x).any(|&a| self.contains(x - a)))
            .collect()
    }

    /// All primitive elements (minimal generators), ascending.
    pub fn generators(&self) -> Vec<u32> {
        let mut gens = self.left_primitives();
        gens.extend(self.right_generators());
        gens
    }

    /// `⟨left primitives⟩|_c`, which always describes the semigroup exactly.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.left_primitives().iter().map(u32::to_string).collect();
        if self.is_natural() {
            "<1>".into()
        } else if gens.is_empty() {
            format!("<>|{}", self.conductor)
        } else {
            format!("<{}>|{}", gens.join(","), self.conductor)
        }
    }

    /// Re-encodes the same semigroup at another width.
    pub fn widen<V: Word>(&self) -> Result<SemigroupState<V>> {
        SemigroupState::from_left_elements(&self.left_elements(), self.conductor)
    }
}

impl<W: Word> fmt::Display for SemigroupState<W> {
    /// Element list up to the conductor: `{0,3,6,8,…}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.left_elements().iter().map(u32::to_string).collect();
        items.push(self.conductor.to_string());
        write!(f, "{{{},…}}", items.join(","))
    }
}

impl<W: Word> fmt::Debug for SemigroupState<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemigroupState")
            .field("elements", &format_args!("{self}"))
            .field("G", &self.gaps.to_bit_string(self.conductor))
            .field("S", &self.seeds.to_bit_string(self.conductor))
            .field("c", &self.conductor)
            .field("g", &self.genus)
            .field("k", &self.rank)
            .field("muv", &self.jumps)
            .finish()
    }
}

fn check_conductor<W: Word>(c: u32) -> Result<()> {
    if c > W::BITS {
        Err(Error::Overflow { needed: c, capacity: W::BITS })
    } else {
        Ok(())
    }
}

fn validate_left(left: &[u32], conductor: u32) -> Result<Vec<u32>> {
    let invalid = |reason: String| Err(Error::InvalidLeftElements { conductor, reason });
    let mut left = left.to_vec();
    left.sort_unstable();
    left.dedup();
    if conductor == 0 {
        if left.iter().any(|&x| x != 0) {
            return invalid("conductor 0 only admits the empty set or {0}".into());
        }
        return Ok(Vec::new());
    }
    if conductor == 1 {
        return invalid("0 is never a gap".into());
    }
    if left.first() != Some(&0) {
        return invalid("0 must be a left element".into());
    }
    if let Some(&x) = left.iter().find(|&&x| x >= conductor - 1) {
        return invalid(format!("{x} is not below the Frobenius number {}", conductor - 1));
    }
    for (i, &a) in left.iter().enumerate() {
        for &b in &left[i..] {
            if a + b < conductor && left.binary_search(&(a + b)).is_err() {
                return invalid(format!("{a} + {b} is missing"));
            }
        }
    }
    Ok(left)
}

/// Membership table of `L + L` over `[0, 2c)`.
fn sumset(left: &[u32], conductor: u32) -> Vec<bool> {
    let mut sums = vec![false; 2 * conductor as usize];
    for (i, &a) in left.iter().enumerate() {
        for &b in &left[i..] {
            sums[(a + b) as usize] = true;
        }
    }
    sums
}

/// Membership of `⟨gens⟩ ∪ [len, ∞)` over `[0, len)`.
fn closure(gens: &[u32], len: usize) -> Vec<bool> {
    let mut member = vec![false; len];
    if len > 0 {
        member[0] = true;
    }
    for x in 1..len {
        member[x] = gens.iter().any(|&g| g as usize <= x && member[x - g as usize]);
    }
    member
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstream::U256;

    type State = SemigroupState<u128>;

    fn bits(s: &Bitstream, len: u32) -> String {
        s.to_bit_string(len)
    }

    #[test]
    fn running_example_sigma() {
        let sigma = State::sigma_from_left_elements(&[0, 3, 6], 8).unwrap();
        assert_eq!(sigma.to_bit_string(16), "0110110110110111");
    }

    #[test]
    fn running_example_state() {
        let s = State::from_left_elements(&[0, 3, 6], 8).unwrap();
        assert_eq!(bits(&s.gap_bits(), 8), "11011010");
        assert_eq!(bits(&s.seed_bits(), 8), "10110111");
        assert_eq!((s.conductor(), s.genus(), s.rank(), s.multiplicity()), (8, 5, 3, 3));
        assert_eq!(s.to_string(), "{0,3,6,8,…}");
        assert_eq!(s.right_generators(), vec![8, 10]);
        assert_eq!(s.seed_table().row_strings(), vec!["101", "101", "11"]);
    }

    #[test]
    fn child_of_running_example_by_sigma() {
        // L = {0,3,6}, c = 9: L + L = {0,3,6,9,12}.
        let s = State::from_left_elements(&[0, 3, 6], 9).unwrap();
        assert_eq!(bits(&s.gap_bits(), 9), "110110110");
        assert_eq!(bits(&s.seed_bits(), 9), "011011111");
        // 8 cannot be a left element when 8 is the Frobenius number.
        assert!(State::from_left_elements(&[0, 3, 6, 8], 9).is_err());
    }

    #[test]
    fn sigma_of_ordinary_and_pseudo_ordinary() {
        for m in 2..20u32 {
            let sigma = State::sigma_from_left_elements(&[0], m).unwrap();
            assert_eq!(sigma.to_int(), (1u128 << (2 * m)) - 2);
        }
        for (m, u) in [(3u32, 2u32), (5, 5), (7, 3)] {
            let sigma = State::sigma_from_left_elements(&[0, m], m + u).unwrap();
            let zeros: Vec<u32> = (0..2 * (m + u)).filter(|&i| !sigma.get(i)).collect();
            assert_eq!(zeros, vec![0, m, 2 * m]);
        }
        assert!(State::sigma_from_left_elements(&[0], 65).is_err());
    }

    #[test]
    fn natural_numbers() {
        let n = State::from_left_elements(&[0], 0).unwrap();
        assert_eq!(n, State::natural());
        assert_eq!((n.genus(), n.rank(), n.conductor()), (0, 0, 0));
        assert!(n.gap_bits().is_zero() && n.seed_bits().is_zero());
        assert_eq!(n.right_generators(), vec![1]);
        assert_eq!(n.to_string(), "{0,…}");
        assert!(n.seed_table().rows().is_empty());
    }

    #[test]
    fn invalid_left_sets() {
        assert!(State::from_left_elements(&[0, 3, 5], 8).is_err()); // 3 + 3 = 6 missing
        assert!(State::from_left_elements(&[3], 8).is_err());
        assert!(State::from_left_elements(&[0], 1).is_err());
        assert!(State::from_left_elements(&[0, 7], 8).is_err());
        assert!(State::from_left_elements(&[0], 129).is_err());
        assert!(SemigroupState::<U256>::from_left_elements(&[0], 129).is_ok());
    }

    #[test]
    fn low_rank_examples() {
        let s = State::low_rank_state(3, None, None).unwrap();
        assert_eq!((bits(&s.gap_bits(), 3), bits(&s.seed_bits(), 3)), ("110".into(), "111".into()));
        let s = State::low_rank_state(3, Some(2), None).unwrap();
        assert_eq!(s.gap_bits().to_int(), 11);
        assert_eq!(s.seed_bits().to_int(), 29);
        let s = State::low_rank_state(3, Some(3), Some(2)).unwrap();
        assert_eq!(s, State::from_left_elements(&[0, 3, 6], 8).unwrap());
    }

    #[test]
    fn low_rank_rejects_bad_parameters() {
        assert!(State::low_rank_state(1, None, None).is_err());
        assert!(State::low_rank_state(3, Some(1), None).is_err());
        assert!(State::low_rank_state(3, Some(4), None).is_err());
        assert!(State::low_rank_state(5, Some(2), Some(4)).is_err());
        assert!(State::low_rank_state(5, Some(5), Some(6)).is_err());
        assert!(State::low_rank_state(5, Some(2), Some(1)).is_err());
        assert!(State::low_rank_state(5, None, Some(2)).is_err());
    }

    #[test]
    fn low_rank_matches_sigma_split() {
        for m in 2..=20u32 {
            let closed = State::low_rank_state(m, None, None).unwrap();
            assert_eq!(closed, State::from_left_elements(&[0], m).unwrap());
            for u in 2..=m {
                let closed = State::low_rank_state(m, Some(u), None).unwrap();
                assert_eq!(closed, State::from_left_elements(&[0, m], m + u).unwrap(), "m={m} u={u}");
            }
            for u in 1..=m {
                let vmax = if u < m { m - u } else { m };
                for v in 2..=vmax {
                    let closed = State::low_rank_state(m, Some(u), Some(v)).unwrap();
                    let direct = State::from_left_elements(&[0, m, m + u], m + u + v).unwrap();
                    assert_eq!(closed, direct, "m={m} u={u} v={v}");
                }
            }
        }
    }

    #[test]
    fn generators_with_floor() {
        let e1 = State::from_generators_with_floor(&[14, 22, 23], 56).unwrap();
        assert_eq!(e1.genus(), 43);
        let e10 = State::from_generators_with_floor(&[19, 26, 27], 90).unwrap();
        assert_eq!((e10.conductor(), e10.multiplicity(), e10.genus(), e10.rank()), (90, 19, 67, 23));
        assert_eq!(e10.left_primitives(), vec![19, 26, 27]);
        assert_eq!((e10.first_jump(), e10.second_jump()), (7, 1));
        assert_eq!(State::from_generators_with_floor(&[1], 5).unwrap(), State::natural());
        // The closure can fill the tail before the floor.
        let s = State::from_generators_with_floor(&[3, 5], 40).unwrap();
        assert_eq!(s.conductor(), 8);
        assert!(State::from_generators_with_floor(&[], 5).is_err());
        assert!(State::from_generators_with_floor(&[3], 0).is_err());
    }

    #[test]
    fn generators_without_floor() {
        let s = State::from_generators(&[3, 5]).unwrap();
        assert_eq!(s.to_string(), "{0,3,5,6,8,…}");
        assert_eq!(State::from_generators(&[2, 11]).unwrap().genus(), 5);
        assert!(State::from_generators(&[4, 6]).is_err());
        assert_eq!(State::from_generators(&[1]).unwrap(), State::natural());
    }

    #[test]
    fn queries_on_running_example() {
        let s = State::from_left_elements(&[0, 3, 6], 8).unwrap();
        assert_eq!(s.jumps(), vec![3, 3, 2]);
        assert_eq!(s.left_primitives(), vec![3]);
        assert!(s.is_order_p_seed(10, 1).unwrap());
        assert!(!s.is_order_p_seed(9, 1).unwrap());
        assert!(s.is_order_p_seed(9, 2).unwrap());
        assert!(matches!(s.is_order_p_seed(10, 2), Err(Error::OutsideSeedWindow { .. })));
        assert!(s.is_order_p_seed(8, 3).is_err());
        assert_eq!(s.describe(), "<3>|8");
    }

    #[test]
    fn ordinary_right_generators() {
        for m in 2..30u32 {
            let s = State::low_rank_state(m, None, None).unwrap();
            assert_eq!(s.right_generators(), (m..2 * m).collect::<Vec<_>>());
            assert_eq!(s.seed_bits().weight_range(0, m - 1).unwrap(), m);
        }
    }

    #[test]
    fn widen_keeps_bits() {
        let s = State::from_left_elements(&[0, 3, 6], 8).unwrap();
        let w: SemigroupState<U256> = s.widen().unwrap();
        assert_eq!(w.seed_bits().to_bit_string(8), "10110111");
        assert_eq!(w.to_string(), s.to_string());
    }
}
