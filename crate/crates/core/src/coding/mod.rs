//! Number-theoretic codes for finite objects.
//!
//! * [`pair`] / [`unpair`]: the bijection `j(x, y) = 2^x (2y + 1) - 1`.
//! * [`encode_seq`] / [`decode_at`]: prime-power sequence codes
//!   `∏ p_i^(a_i + 1)`, used by the `dec` symbol, machine programs and
//!   computation traces.
//! * [`pack`] / [`unpack`]: a compact self-delimiting sequence code, used for
//!   Gödel numbers of syntax and proofs (see [`godel`]).

use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub mod godel;

pub use godel::{
    godel_decode, godel_decode_term, name_code, name_decode, numeral_subst_code, tag_table,
    tag_table_text, Godel,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CodingError {
    #[error("invalid code: {0}")]
    Invalid(String),
    #[error("variable `{0}` is not free in the decoded formula")]
    NotFree(String),
}

/// Largest first argument accepted by [`try_pair`]; `2^x` has `x` bits.
pub const MAX_PAIR_SHIFT: u64 = 1 << 24;

/// `j(x, y) = 2^x (2y + 1) - 1`.
///
/// # Panics
///
/// If `x` exceeds [`MAX_PAIR_SHIFT`].
pub fn pair(x: impl Into<BigUint>, y: impl Into<BigUint>) -> BigUint {
    let x = x.into();
    try_pair(&x, &y.into()).unwrap_or_else(|| panic!("j({x}, ..) is too large to build"))
}

/// [`pair`], or `None` when the result would not fit in memory.
pub fn try_pair(x: &BigUint, y: &BigUint) -> Option<BigUint> {
    let shift = x.to_u64().filter(|&s| s <= MAX_PAIR_SHIFT)?;
    Some((((y << 1u8) + 1u8) << shift) - 1u8)
}

/// The inverse of [`pair`]: `(j1(n), j2(n))`.
pub fn unpair(n: &BigUint) -> (BigUint, BigUint) {
    let m = n + 1u8;
    let x = m.trailing_zeros().expect("n + 1 is positive");
    let odd = m >> x;
    (BigUint::from(x), odd >> 1u8)
}

/// `pair` on machine words, for small codes.
pub fn pair_u64(x: u64, y: u64) -> Option<u64> {
    let odd = y.checked_mul(2)?.checked_add(1)?;
    let shifted = if x >= 64 {
        None
    } else {
        odd.checked_mul(1u64 << x)
    }?;
    Some(shifted - 1)
}

/// The `i`-th prime, counting from `p_0 = 2`.
pub fn nth_prime(i: usize) -> u64 {
    static PRIMES: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    let mut primes = PRIMES
        .get_or_init(|| Mutex::new(vec![2, 3]))
        .lock()
        .unwrap_or_else(|e| e.into_inner());
    let mut candidate = *primes.last().unwrap();
    while primes.len() <= i {
        candidate += 2;
        let is_prime = primes
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| !candidate.is_multiple_of(p));
        if is_prime {
            primes.push(candidate);
        }
    }
    primes[i]
}

/// Exponent of the prime `p` in `n`, with `valuation(0, p) = 0`.
pub fn valuation(n: &BigUint, p: u64) -> u64 {
    if n.is_zero() {
        return 0;
    }
    if p == 2 {
        return n.trailing_zeros().unwrap_or(0);
    }
    // divide by p^(2^k) for decreasing k
    let mut powers = vec![BigUint::from(p)];
    loop {
        let last = powers.last().unwrap();
        if last.bits() * 2 > n.bits() + 1 {
            break;
        }
        let sq = last * last;
        powers.push(sq);
    }
    let mut rest = n.clone();
    let mut v = 0u64;
    for (k, pw) in powers.iter().enumerate().rev() {
        let (q, r) = rest.div_rem(pw);
        if r.is_zero() {
            rest = q;
            v += 1 << k;
            // the valuation of what is left is below 2^k; retry smaller powers
        }
    }
    v
}

/// Approximate bit length of `∏ p_i^(a_i + 1)`.
fn seq_bits(elems: &[u64]) -> Option<u64> {
    elems.iter().enumerate().try_fold(0u64, |acc, (i, &a)| {
        let lg = 64 - nth_prime(i).leading_zeros() as u64;
        acc.checked_add(a.checked_add(1)?.checked_mul(lg)?)
    })
}

/// Largest sequence code [`try_encode_seq`] will build, in bits.
pub const MAX_SEQ_BITS: u64 = 1 << 26;

/// `∏_{i<k} p_i^(a_i + 1)`; the empty sequence codes to 1.
///
/// # Panics
///
/// If the code would exceed [`MAX_SEQ_BITS`] bits.
pub fn encode_seq(elems: &[u64]) -> BigUint {
    try_encode_seq(elems).expect("sequence code too large to build")
}

/// [`encode_seq`], or `None` when the code would exceed [`MAX_SEQ_BITS`].
pub fn try_encode_seq(elems: &[u64]) -> Option<BigUint> {
    if seq_bits(elems)? > MAX_SEQ_BITS {
        return None;
    }
    Some(
        elems
            .iter()
            .enumerate()
            .fold(BigUint::one(), |acc, (i, &a)| {
                acc * num_traits::pow::Pow::pow(BigUint::from(nth_prime(i)), a + 1)
            }),
    )
}

/// Entry `i` of a sequence code: the exponent of `p_i` minus one, and 0
/// when `p_i` does not divide `n`.
pub fn decode_at(n: &BigUint, i: usize) -> BigUint {
    // p_i >= i + 2, and an entry above 0 needs p_i^2 to divide n
    let floor = BigUint::from(i as u64 + 2);
    if *n < &floor * &floor {
        return BigUint::zero();
    }
    BigUint::from(valuation(n, nth_prime(i)).saturating_sub(1))
}

/// The whole sequence, if `n` is exactly a code `∏_{i<k} p_i^(a_i + 1)`.
pub fn decode_seq(n: &BigUint) -> Option<Vec<u64>> {
    if n.is_zero() {
        return None;
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    while !rest.is_one() {
        let p = nth_prime(out.len());
        let e = valuation(&rest, p);
        if e == 0 {
            return None;
        }
        rest /= num_traits::pow::Pow::pow(BigUint::from(p), e);
        out.push(e - 1);
    }
    Some(out)
}

/// Compact sequence code: a leading 1 bit followed by the Elias gamma code
/// of `a + 1` for each entry. The empty sequence codes to 1 and 0 codes
/// nothing.
pub fn pack(elems: &[BigUint]) -> BigUint {
    let mut bits = vec![1u8];
    for a in elems {
        let v = a + 1u8;
        let digits = v.to_radix_be(2);
        bits.extend(std::iter::repeat_n(0, digits.len() - 1));
        bits.extend(digits);
    }
    BigUint::from_radix_be(&bits, 2).expect("binary digits")
}

pub fn pack_u64(elems: &[u64]) -> BigUint {
    pack(&elems.iter().map(|&a| BigUint::from(a)).collect::<Vec<_>>())
}

/// The inverse of [`pack`].
pub fn unpack(n: &BigUint) -> Option<Vec<BigUint>> {
    if n.is_zero() {
        return None;
    }
    let bits = n.to_radix_be(2);
    let mut out = Vec::new();
    let mut i = 1;
    while i < bits.len() {
        let zeros = bits[i..].iter().take_while(|&&b| b == 0).count();
        let end = i + 2 * zeros + 1;
        if end > bits.len() {
            return None;
        }
        let v = BigUint::from_radix_be(&bits[i + zeros..end], 2)?;
        out.push(v - 1u8);
        i = end;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(0u32, 0u32), n(0));
        assert_eq!(pair(2u32, 3u32), n(27));
        assert_eq!(unpair(&n(27)), (n(2), n(3)));
        assert_eq!(pair_u64(2, 3), Some(27));
        assert_eq!(pair_u64(64, 0), None);
    }

    #[test]
    fn pairing_is_a_bijection_on_small_values() {
        for m in 0..65536u64 {
            let (x, y) = unpair(&n(m));
            assert_eq!(pair(x, y), n(m));
        }
        for x in 0..256u64 {
            for y in 0..256u64 {
                assert_eq!(unpair(&pair(x, y)), (n(x), n(y)));
            }
        }
    }

    #[test]
    fn primes() {
        let first: Vec<u64> = (0..10).map(nth_prime).collect();
        assert_eq!(first, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(nth_prime(999), 7919);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&n(648), 2), 3);
        assert_eq!(valuation(&n(648), 3), 4);
        assert_eq!(valuation(&n(648), 5), 0);
        let big = num_traits::pow::Pow::pow(n(3), 1000u32) * n(7);
        assert_eq!(valuation(&big, 3), 1000);
        assert_eq!(valuation(&big, 7), 1);
        assert_eq!(valuation(&n(0), 3), 0);
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(encode_seq(&[]), n(1));
        assert_eq!(encode_seq(&[2, 3]), n(648));
        assert_eq!(decode_at(&n(648), 1), n(3));
        assert_eq!(decode_at(&n(648), 0), n(2));
        assert_eq!(decode_at(&n(648), 2), n(0));
        assert_eq!(decode_at(&n(0), 0), n(0));
        assert_eq!(decode_seq(&n(648)), Some(vec![2, 3]));
        assert_eq!(decode_seq(&n(1)), Some(vec![]));
        assert_eq!(decode_seq(&n(3)), None);
        assert_eq!(decode_seq(&n(0)), None);
    }

    #[test]
    fn pack_examples() {
        assert_eq!(pack(&[]), n(1));
        // sentinel 1, then gamma(1) = 1
        assert_eq!(pack_u64(&[0]), n(0b11));
        assert_eq!(pack_u64(&[2]), n(0b1011));
        assert_eq!(unpack(&n(0b1011)), Some(vec![n(2)]));
        assert_eq!(unpack(&n(1)), Some(vec![]));
        assert_eq!(unpack(&n(0)), None);
        assert_eq!(unpack(&n(0b100)), None);
    }
}
