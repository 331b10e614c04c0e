//! LSB-first fixed-capacity bit sequences.
//!
//! Index 0 is the least significant bit. A [`Bitstream`] is backed by a single
//! machine [`Word`]; its capacity is the word width. Two widths are used by the
//! explorer: native `u128` and the four-limb [`U256`].

use std::fmt;
use std::hash::Hash;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Fixed-width unsigned word backing a [`Bitstream`].
pub trait Word:
    Copy
    + Eq
    + Hash
    + Default
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + BitAnd<Output = Self>
    + BitOr<Output = Self>
    + Not<Output = Self>
    + BitAndAssign
    + BitOrAssign
{
    const BITS: u32;
    const ZERO: Self;
    const ONE: Self;

    /// Multiply by `2^t`, dropping bits that leave the word. `t >= BITS` gives zero.
    fn shl_lossy(self, t: u32) -> Self;
    /// Integer division by `2^t`. `t >= BITS` gives zero.
    fn shr(self, t: u32) -> Self;
    /// `x & (x - 1)`: clears the lowest set bit.
    fn clear_lowest(self) -> Self;
    fn trailing_zeros(self) -> u32;
    fn leading_zeros(self) -> u32;

    /// Word with the `n` lowest bits set (`n <= BITS`).
    fn low_mask(n: u32) -> Self {
        if n >= Self::BITS {
            !Self::ZERO
        } else {
            !(!Self::ZERO).shl_lossy(n)
        }
    }

    fn bit(i: u32) -> Self {
        Self::ONE.shl_lossy(i)
    }
}

impl Word for u128 {
    const BITS: u32 = 128;
    const ZERO: Self = 0;
    const ONE: Self = 1;

    #[inline(always)]
    fn shl_lossy(self, t: u32) -> Self {
        self.checked_shl(t).unwrap_or(0)
    }

    #[inline(always)]
    fn shr(self, t: u32) -> Self {
        self.checked_shr(t).unwrap_or(0)
    }

    #[inline(always)]
    fn clear_lowest(self) -> Self {
        self & self.wrapping_sub(1)
    }

    #[inline(always)]
    fn trailing_zeros(self) -> u32 {
        u128::trailing_zeros(self)
    }

    #[inline(always)]
    fn leading_zeros(self) -> u32 {
        u128::leading_zeros(self)
    }
}

/// Multi-limb unsigned word, least significant limb first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Wide<const LIMBS: usize>(pub [u64; LIMBS]);

/// The doubled width used once conductors pass 128.
pub type U256 = Wide<4>;

impl<const LIMBS: usize> Default for Wide<LIMBS> {
    fn default() -> Self {
        Wide([0; LIMBS])
    }
}

impl<const LIMBS: usize> fmt::Debug for Wide<LIMBS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x")?;
        for limb in self.0.iter().rev() {
            write!(f, "{limb:016x}")?;
        }
        Ok(())
    }
}

impl<const LIMBS: usize> BitAnd for Wide<LIMBS> {
    type Output = Self;
    #[inline]
    fn bitand(mut self, rhs: Self) -> Self {
        self &= rhs;
        self
    }
}

impl<const LIMBS: usize> BitOr for Wide<LIMBS> {
    type Output = Self;
    #[inline]
    fn bitor(mut self, rhs: Self) -> Self {
        self |= rhs;
        self
    }
}

impl<const LIMBS: usize> BitAndAssign for Wide<LIMBS> {
    #[inline]
    fn bitand_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a &= b;
        }
    }
}

impl<const LIMBS: usize> BitOrAssign for Wide<LIMBS> {
    #[inline]
    fn bitor_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a |= b;
        }
    }
}

impl<const LIMBS: usize> Not for Wide<LIMBS> {
    type Output = Self;
    #[inline]
    fn not(mut self) -> Self {
        for a in self.0.iter_mut() {
            *a = !*a;
        }
        self
    }
}

impl<const LIMBS: usize> Word for Wide<LIMBS> {
    const BITS: u32 = 64 * LIMBS as u32;
    const ZERO: Self = Wide([0; LIMBS]);
    const ONE: Self = {
        let mut limbs = [0; LIMBS];
        limbs[0] = 1;
        Wide(limbs)
    };

    #[inline]
    fn shl_lossy(self, t: u32) -> Self {
        if t >= Self::BITS {
            return Self::ZERO;
        }
        let (q, r) = ((t / 64) as usize, t % 64);
        let mut out = [0u64; LIMBS];
        for i in (q..LIMBS).rev() {
            let src = i - q;
            out[i] = self.0[src] << r;
            if r > 0 && src > 0 {
                out[i] |= self.0[src - 1] >> (64 - r);
            }
        }
        Wide(out)
    }

    #[inline]
    fn shr(self, t: u32) -> Self {
        if t >= Self::BITS {
            return Self::ZERO;
        }
        let (q, r) = ((t / 64) as usize, t % 64);
        let mut out = [0u64; LIMBS];
        for (i, limb) in out.iter_mut().take(LIMBS - q).enumerate() {
            let src = i + q;
            *limb = self.0[src] >> r;
            if r > 0 && src + 1 < LIMBS {
                *limb |= self.0[src + 1] << (64 - r);
            }
        }
        Wide(out)
    }

    #[inline]
    fn clear_lowest(mut self) -> Self {
        for limb in self.0.iter_mut() {
            if *limb != 0 {
                *limb &= *limb - 1;
                break;
            }
        }
        self
    }

    fn trailing_zeros(self) -> u32 {
        let mut n = 0;
        for limb in self.0 {
            if limb != 0 {
                return n + limb.trailing_zeros();
            }
            n += 64;
        }
        n
    }

    fn leading_zeros(self) -> u32 {
        let mut n = 0;
        for limb in self.0.iter().rev() {
            if *limb != 0 {
                return n + limb.leading_zeros();
            }
            n += 64;
        }
        n
    }
}

/// Number of ones in `x`, one iteration per set bit.
#[inline]
pub fn kernighan_weight<W: Word>(mut x: W) -> u32 {
    let mut n = 0;
    while x != W::ZERO {
        x = x.clear_lowest();
        n += 1;
    }
    n
}

/// A bit sequence `a_0 a_1 … a_{capacity-1}`; every index past the logical
/// length is zero, so trailing zeros are never significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Bitstream<W: Word = u128> {
    word: W,
}

impl<W: Word> Bitstream<W> {
    pub const CAPACITY: u32 = W::BITS;

    pub fn zero() -> Self {
        Bitstream { word: W::ZERO }
    }

    /// All ones in indices `0..n`. That is `(2^n - 1)_b`.
    pub fn ones(n: u32) -> Result<Self> {
        check_len::<W>(n)?;
        Ok(Bitstream { word: W::low_mask(n) })
    }

    pub fn from_word(word: W) -> Self {
        Bitstream { word }
    }

    pub fn word(self) -> W {
        self.word
    }

    pub fn capacity(self) -> u32 {
        W::BITS
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        check_len::<W>(bits.len() as u32)?;
        let mut word = W::ZERO;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                word |= W::bit(i as u32);
            }
        }
        Ok(Bitstream { word })
    }

    /// Bitstream with ones exactly at `indices`.
    pub fn from_indices(indices: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut word = W::ZERO;
        for i in indices {
            if i >= W::BITS {
                return Err(Error::Overflow { needed: i + 1, capacity: W::BITS });
            }
            word |= W::bit(i);
        }
        Ok(Bitstream { word })
    }

    #[inline]
    pub fn get(self, i: u32) -> bool {
        i < W::BITS && self.word & W::bit(i) != W::ZERO
    }

    #[inline]
    pub fn with_bit(self, i: u32) -> Self {
        Bitstream { word: self.word | W::bit(i) }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.word == W::ZERO
    }

    /// Index of the highest set bit plus one; zero for the empty stream.
    pub fn logical_len(self) -> u32 {
        W::BITS - self.word.leading_zeros()
    }

    /// `a ≫ t`: prepend `t` zeros. Fails if a one would be pushed past capacity.
    pub fn shift_up(self, t: u32) -> Result<Self> {
        if self.is_zero() {
            return Ok(self);
        }
        let needed = self.logical_len() + t;
        if needed > W::BITS {
            return Err(Error::Overflow { needed, capacity: W::BITS });
        }
        Ok(Bitstream { word: self.word.shl_lossy(t) })
    }

    /// `a ≫ t` with any bits past capacity discarded.
    #[inline]
    pub fn shift_up_lossy(self, t: u32) -> Self {
        Bitstream { word: self.word.shl_lossy(t) }
    }

    /// `a ≪ t`: drop the first `t` positions.
    #[inline]
    pub fn shift_down(self, t: u32) -> Self {
        Bitstream { word: self.word.shr(t) }
    }

    #[inline]
    pub fn and(self, other: Self) -> Self {
        Bitstream { word: self.word & other.word }
    }

    #[inline]
    pub fn or(self, other: Self) -> Self {
        Bitstream { word: self.word | other.word }
    }

    /// Total weight `w(a)`.
    #[inline]
    pub fn weight(self) -> u32 {
        kernighan_weight(self.word)
    }

    /// `w_i^j(a)`: ones among indices `i..=j`.
    pub fn weight_range(self, i: u32, j: u32) -> Result<u32> {
        if i > j || j >= W::BITS {
            return Err(Error::IndexOutOfRange { start: i, end: j, capacity: W::BITS });
        }
        Ok(self.weight_below(j + 1) - self.weight_below(i))
    }

    /// Ones among indices `0..n`; the hot-path form of `w_0^{n-1}`.
    #[inline]
    pub fn weight_below(self, n: u32) -> u32 {
        kernighan_weight(self.word & W::low_mask(n))
    }

    /// Iterator over set indices, ascending.
    pub fn ones_iter(self) -> impl Iterator<Item = u32> {
        let mut word = self.word;
        std::iter::from_fn(move || {
            if word == W::ZERO {
                None
            } else {
                let i = word.trailing_zeros();
                word = word.clear_lowest();
                Some(i)
            }
        })
    }

    /// First `len` bits as a `0`/`1` string, index 0 leftmost.
    pub fn to_bit_string(self, len: u32) -> String {
        (0..len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

fn check_len<W: Word>(n: u32) -> Result<()> {
    if n > W::BITS {
        Err(Error::Overflow { needed: n, capacity: W::BITS })
    } else {
        Ok(())
    }
}

impl Bitstream<u128> {
    /// `(n)_b`.
    pub fn from_int(n: u128) -> Self {
        Bitstream { word: n }
    }

    /// `intmo(a)`.
    pub fn to_int(self) -> u128 {
        self.word
    }
}

impl<W: Word> BitAnd for Bitstream<W> {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        self.and(rhs)
    }
}

impl<W: Word> BitOr for Bitstream<W> {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        self.or(rhs)
    }
}

impl<W: Word> fmt::Display for Bitstream<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string(self.logical_len()))
    }
}

impl<W: Word> fmt::Debug for Bitstream<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bitstream({self})")
    }
}

impl<W: Word> FromStr for Bitstream<W> {
    type Err = Error;

    /// Parses `0`/`1` characters, index 0 first.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character {other:?} in bitstream"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Bitstream::from_bits(&bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(s: &str) -> Bitstream {
        s.parse().unwrap()
    }

    #[test]
    fn shift_up_examples() {
        assert_eq!(Bitstream::from_int(1).shift_up(3).unwrap().to_int(), 8);
        assert_eq!(b("101").shift_up(1).unwrap(), b("0101"));
        let top = Bitstream::from_int(1u128 << 127);
        assert!(matches!(top.shift_up(1), Err(Error::Overflow { needed: 129, capacity: 128 })));
    }

    #[test]
    fn shift_down_examples() {
        assert_eq!(b("0101").shift_down(1), b("101"));
        assert_eq!(Bitstream::from_int(13).shift_down(2).to_int(), 3);
        assert_eq!(b("1101").shift_down(0), b("1101"));
    }

    #[test]
    fn and_or_examples() {
        assert_eq!(b("101") & b("110"), b("100"));
        assert_eq!(b("101") | b("010"), b("111"));
        let a = b("1001101");
        assert_eq!(a & Bitstream::ones(128).unwrap(), a);
    }

    #[test]
    fn weight_range_examples() {
        assert_eq!(b("10110111").weight_range(0, 2).unwrap(), 2);
        assert_eq!(Bitstream::<u128>::zero().weight_range(5, 90).unwrap(), 0);
        assert_eq!(Bitstream::<u128>::ones(13).unwrap().weight_range(0, 12).unwrap(), 13);
        assert!(matches!(b("1").weight_range(0, 128), Err(Error::IndexOutOfRange { .. })));
        assert!(b("1").weight_range(3, 2).is_err());
    }

    #[test]
    fn display_is_lsb_first() {
        assert_eq!(b("11011010").to_bit_string(8), "11011010");
        assert_eq!(Bitstream::from_int(6).to_string(), "011");
    }

    #[test]
    fn wide_matches_u128_on_low_half() {
        let x: u128 = 0xdead_beef_0123_4567_89ab_cdef_fedc_ba98;
        let wide = Wide::<4>([x as u64, (x >> 64) as u64, 0, 0]);
        for t in [0, 1, 17, 63, 64, 65, 100, 127] {
            let lo = wide.shr(t);
            let expect = x >> t;
            assert_eq!(lo.0[0], expect as u64);
            assert_eq!(lo.0[1], (expect >> 64) as u64);
        }
        assert_eq!(kernighan_weight(wide), x.count_ones());
        assert_eq!(wide.shl_lossy(130).trailing_zeros(), x.trailing_zeros() + 130);
        assert_eq!(U256::low_mask(200).leading_zeros(), 56);
        assert_eq!(U256::bit(255).shl_lossy(1), U256::ZERO);
    }

    #[test]
    fn wide_shift_up_overflow() {
        let s = Bitstream::<U256>::from_indices([255]).unwrap();
        assert!(s.shift_up(1).is_err());
        let s = Bitstream::<U256>::from_indices([127]).unwrap();
        assert!(s.shift_up(1).unwrap().get(128));
    }

    proptest! {
        #[test]
        fn int_round_trip(n: u128) {
            prop_assert_eq!(Bitstream::from_int(n).to_int(), n);
            let s = Bitstream::from_int(n);
            prop_assert_eq!(s.to_bit_string(128).parse::<Bitstream>().unwrap(), s);
        }

        #[test]
        fn shift_round_trip(n in 0u128..(1u128 << 100), t in 0u32..28) {
            let a = Bitstream::from_int(n);
            prop_assert_eq!(a.shift_up(t).unwrap().shift_down(t), a);
        }

        #[test]
        fn weight_splits(n: u128, split in 0u32..127) {
            let a = Bitstream::from_int(n);
            prop_assert_eq!(
                a.weight_range(0, 127).unwrap(),
                a.weight_range(0, split).unwrap() + a.weight_range(split + 1, 127).unwrap()
            );
            prop_assert_eq!(a.weight(), n.count_ones());
        }

        #[test]
        fn and_plus_or_is_sum(x in 0u128..(1u128 << 120), y in 0u128..(1u128 << 120)) {
            let (a, b) = (Bitstream::from_int(x), Bitstream::from_int(y));
            prop_assert_eq!((a & b).to_int() + (a | b).to_int(), x + y);
        }

        #[test]
        fn wide_shifts_agree_with_u128(x: u128, t in 0u32..=128) {
            let wide = Wide::<4>([x as u64, (x >> 64) as u64, 0, 0]);
            let up = wide.shl_lossy(t).shr(t);
            prop_assert_eq!(up.0[0] as u128 | ((up.0[1] as u128) << 64), x);
        }
    }
}
