//! Eliahou constant, Wilf inequality and the semigroup families with `E = -1`.
//!
//! `E(Λ) = k(p - r) - q(m - r) + ρ` where `q = ⌈c/m⌉` and `ρ = qm - c`. A
//! semigroup with `E < 0` is an Eliahou semigroup; `E ≥ 0` implies Wilf's
//! inequality `c ≤ kp`.

use serde::Serialize;

use crate::bitstream::Word;
use crate::error::{Error, Result};
use crate::semigroup::SemigroupState;

/// Everything needed to evaluate `E(Λ)` and the Wilf inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EliahouParams {
    pub conductor: u32,
    pub multiplicity: u32,
    /// `q = ⌈c/m⌉`.
    pub quotient: u32,
    /// `ρ = qm - c`.
    pub remainder: u32,
    /// `p`, the number of primitive elements.
    pub primitives: u32,
    /// `r`, the number of right generators.
    pub right_generators: u32,
    /// `k`, the number of left elements.
    pub rank: u32,
}

/// The sibling removed just before the current one, in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecedingSibling {
    pub right_generators: u32,
    pub weak: bool,
}

impl EliahouParams {
    pub fn new(conductor: u32, multiplicity: u32, primitives: u32, right_generators: u32, rank: u32) -> Self {
        let quotient = conductor.div_ceil(multiplicity);
        EliahouParams {
            conductor,
            multiplicity,
            quotient,
            remainder: quotient * multiplicity - conductor,
            primitives,
            right_generators,
            rank,
        }
    }

    pub fn eliahou_constant(&self) -> i64 {
        let (k, p, r) = (self.rank as i64, self.primitives as i64, self.right_generators as i64);
        let (q, m, rho) = (self.quotient as i64, self.multiplicity as i64, self.remainder as i64);
        k * (p - r) - q * (m - r) + rho
    }

    /// `(kp, c)`: the two sides of the Wilf inequality.
    pub fn wilf_sides(&self) -> (u64, u64) {
        (self.rank as u64 * self.primitives as u64, self.conductor as u64)
    }

    pub fn wilf_holds(&self) -> bool {
        let (kp, c) = self.wilf_sides();
        c <= kp
    }
}

pub fn eliahou_constant(params: &EliahouParams) -> i64 {
    params.eliahou_constant()
}

pub fn wilf_holds(params: &EliahouParams) -> bool {
    params.wilf_holds()
}

/// Parameters of `Λ \ {c + s}` from those of `Λ`.
///
/// `is_weak` says whether `c + s` fails to be an order-1 seed of the parent.
/// Without a preceding sibling `r' = r - δ_w`; otherwise
/// `r' = r'_prev - 1 + δ_w(prev) - δ_w`, since each earlier sibling's own
/// right generator is no longer available and its strong successor was.
pub fn child_params(
    parent: &EliahouParams,
    s: u32,
    is_weak: bool,
    preceding: Option<PrecedingSibling>,
) -> Result<EliahouParams> {
    if parent.rank < 2 {
        return Err(Error::InvalidParameters("incremental update needs a non-ordinary parent".into()));
    }
    if s >= parent.multiplicity {
        return Err(Error::InvalidParameters(format!(
            "offset {s} is past the right-generator window of width {}",
            parent.multiplicity
        )));
    }
    Ok(child_params_unchecked(parent, s, is_weak, preceding))
}

#[inline]
pub(crate) fn child_params_unchecked(
    parent: &EliahouParams,
    s: u32,
    is_weak: bool,
    preceding: Option<PrecedingSibling>,
) -> EliahouParams {
    let m = parent.multiplicity;
    let weak = is_weak as u32;
    let wraps = parent.remainder <= s;
    let right_generators = match preceding {
        None => parent.right_generators - weak,
        Some(prev) => prev.right_generators + prev.weak as u32 - 1 - weak,
    };
    EliahouParams {
        conductor: parent.conductor + s + 1,
        multiplicity: m,
        quotient: parent.quotient + wraps as u32,
        remainder: parent.remainder + if wraps { m } else { 0 } - s - 1,
        primitives: parent.primitives - weak,
        right_generators,
        rank: parent.rank + s,
    }
}

/// Whether every child of a node of rank at least 2 is known to satisfy both
/// `E ≥ 0` and Wilf from the node's parameters alone.
///
/// Removing the `i`-th right generator `c + t` gives `k' = k + t`,
/// `p' - r' = p - r + i`, `m - r' ≤ m - r + i + 1`, `q' ≤ q + 1` and `ρ' ≥ 0`, so
/// `E' ≥ k(p - r) - (q + 1)(m - r + 1) + i(k - q - 1)`. Also `c' ≤ c + m` and
/// `k'p' ≥ k(p - 1)`.
pub fn children_certified(params: &EliahouParams) -> bool {
    let (k, p, r) = (params.rank as i64, params.primitives as i64, params.right_generators as i64);
    let (q, m, c) = (params.quotient as i64, params.multiplicity as i64, params.conductor as i64);
    k > q && k * (p - r) >= (q + 1) * (m - r + 1) && c + m <= k * (p - 1)
}

/// Parameters counted directly from the state.
pub fn params_from_state<W: Word>(state: &SemigroupState<W>) -> EliahouParams {
    let r = state.right_generators().len() as u32;
    let p = state.left_primitives().len() as u32 + r;
    if state.is_natural() {
        return EliahouParams::new(0, 1, p, r, 0);
    }
    EliahouParams::new(state.conductor(), state.multiplicity(), p, r, state.rank())
}

/// The ten Eliahou semigroups of genus at most 60, as `(generators, floor)`.
pub const KNOWN_ELIAHOU: [([u32; 3], u32); 10] = [
    ([14, 22, 23], 56),
    ([16, 25, 26], 64),
    ([17, 26, 28], 68),
    ([17, 27, 28], 68),
    ([18, 28, 29], 72),
    ([19, 29, 31], 76),
    ([19, 30, 31], 76),
    ([20, 31, 32], 80),
    ([20, 32, 33], 80),
    ([19, 26, 27], 90),
];

/// `EF(m, a, b) = ⟨m, a, b⟩|_{4m}`.
pub fn ef_semigroup<W: Word>(m: u32, a: u32, b: u32) -> Result<SemigroupState<W>> {
    let bad = |why: &str| Err(Error::InvalidParameters(format!("EF({m},{a},{b}): {why}")));
    if m == 0 {
        return bad("m must be positive");
    }
    if 2 * a < 3 * m + 1 || 3 * b > 5 * m - 1 || a >= b {
        return bad("need (3m+1)/2 <= a < b <= (5m-1)/3");
    }
    let combos = [a, b, 2 * a, a + b, 2 * b, 3 * a, 2 * a + b, a + 2 * b, 3 * b];
    let mut residues: Vec<u32> = combos.iter().map(|x| x % m).collect();
    residues.sort_unstable();
    residues.dedup();
    if residues.len() != combos.len() {
        return bad("a, b, 2a, a+b, 2b, 3a, 2a+b, a+2b, 3b must be distinct modulo m");
    }
    SemigroupState::from_generators_with_floor(&[m, a, b], 4 * m)
}

/// Delgado's `D^{(i,j)}(p, τ) = ⟨m, g, g+1⟩|_c`, evaluated with denominators cleared.
pub fn delgado<W: Word>(p: u32, tau: u32, i: u32, j: u32) -> Result<SemigroupState<W>> {
    let (m, g, c) = delgado_parameters(p, tau, i, j)?;
    SemigroupState::from_generators_with_floor(&[m, g, g + 1], c)
}

/// `(m, g, c)` of `D^{(i,j)}(p, τ)`.
pub fn delgado_parameters(p: u32, tau: u32, i: u32, j: u32) -> Result<(u32, u32, u32)> {
    if p == 0 || !p.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("Delgado family needs p even and positive, got {p}")));
    }
    let (p, tau, i, j) = (p as i128, tau as i128, i as i128, j as i128);
    let m4 = p * p + 2 * p * tau + 8 * p + 8 + 2 * j * p;
    let m = exact_div(m4, 4)?;
    let g2 = p * p + 2 * p * tau + 7 * p - 2 * tau + 2 * j * (p - 1) + 2 * i * m;
    let g = exact_div(g2, 2)?;
    let c4 = p * p * p + 2 * p * p * tau + 8 * p * p + 8 * p - 4 * tau + 2 * j * p * p + 2 * i * (p + 2) * m;
    let c = exact_div(c4, 4)?;
    let fit = |x: i128| u32::try_from(x).map_err(|_| Error::InvalidParameters(format!("{x} out of range")));
    Ok((fit(m)?, fit(g)?, fit(c)?))
}

fn exact_div(n: i128, d: i128) -> Result<i128> {
    if n % d != 0 {
        return Err(Error::InvalidParameters(format!("{n}/{d} is not an integer")));
    }
    Ok(n / d)
}

/// `BEF_t = ⟨2t+1, 3t-1, 3t⟩|_{10t}`.
pub fn bef<W: Word>(t: u32) -> Result<SemigroupState<W>> {
    if t < 8 {
        return Err(Error::InvalidParameters(format!("BEF_t needs t >= 8, got {t}")));
    }
    SemigroupState::from_generators_with_floor(&[2 * t + 1, 3 * t - 1, 3 * t], 10 * t)
}

/// The hyperelliptic semigroup `⟨2, 2g+1⟩` of genus `g`.
pub fn hyperelliptic<W: Word>(genus: u32) -> Result<SemigroupState<W>> {
    SemigroupState::from_generators(&[2, 2 * genus + 1])
}

/// `{0, g, g+1, …, 2g-3} ∪ [2g, ∞)`. Its genus is `g + 1`: it is a child of the
/// symmetric and pseudo-symmetric semigroups of genus `g`.
pub fn interval_semigroup<W: Word>(genus: u32) -> Result<SemigroupState<W>> {
    if genus < 3 {
        return Err(Error::InvalidParameters(format!("interval family needs g >= 3, got {genus}")));
    }
    let left: Vec<u32> = std::iter::once(0).chain(genus..=2 * genus - 3).collect();
    SemigroupState::from_left_elements(&left, 2 * genus)
}

/// `⟨3, b⟩` with `b > 3` coprime to 3.
pub fn multiplicity_three<W: Word>(b: u32) -> Result<SemigroupState<W>> {
    if b <= 3 || b.is_multiple_of(3) {
        return Err(Error::InvalidParameters(format!("<3,{b}> needs b > 3 and 3 ∤ b")));
    }
    SemigroupState::from_generators(&[3, b])
}
