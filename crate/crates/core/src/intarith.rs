//! Exact integer primitives: factorization, valuations, prime counts and
//! square testing modulo prime powers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Moduli up to this size are tested by exhaustive search in [`is_square_mod`];
/// larger ones go through Hensel lifting.
pub const SQUARE_SEARCH_LIMIT: u32 = 1 << 12;

/// Prime factorization as `(p, e)` pairs with `p` strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Factorization(Vec<PrimePower>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    #[serde(with = "crate::json")]
    pub p: BigInt,
    pub e: u32,
}

impl Factorization {
    pub fn iter(&self) -> impl Iterator<Item = &PrimePower> {
        self.0.iter()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.0.iter().map(|pp| &pp.p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn product(&self) -> BigInt {
        self.0
            .iter()
            .map(|pp| Pow::pow(&pp.p, pp.e))
            .fold(BigInt::one(), |acc, q| acc * q)
    }

    pub fn as_pairs(&self) -> Vec<(BigInt, u32)> {
        self.0.iter().map(|pp| (pp.p.clone(), pp.e)).collect()
    }
}

/// Trial division up to `√n`.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    require_positive("n", n)?;
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut push = |p: BigInt, rest: &mut BigInt| {
        let mut e = 0;
        while rest.is_multiple_of(&p) {
            *rest /= &p;
            e += 1;
        }
        if e > 0 {
            out.push(PrimePower { p, e });
        }
    };
    push(BigInt::from(2), &mut rest);
    let mut p = BigInt::from(3);
    while &p * &p <= rest {
        push(p.clone(), &mut rest);
        p += 2;
    }
    if rest > BigInt::one() {
        out.push(PrimePower { p: rest, e: 1 });
    }
    Ok(Factorization(out))
}

pub fn is_prime(p: &BigInt) -> bool {
    if *p < BigInt::from(2) {
        return false;
    }
    if *p < BigInt::from(4) {
        return true;
    }
    if p.is_even() {
        return false;
    }
    let limit = p.sqrt();
    let mut d = BigInt::from(3);
    while d <= limit {
        if p.is_multiple_of(&d) {
            return false;
        }
        d += 2;
    }
    true
}

fn require_prime(p: &BigInt) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.clone()))
    }
}

/// p-adic valuation of a positive integer.
pub fn vp(p: &BigInt, n: &BigInt) -> Result<u32> {
    require_prime(p)?;
    require_positive("n", n)?;
    Ok(valuation(p, n))
}

/// Valuation without validation; `n` must be non-zero.
pub(crate) fn valuation(p: &BigInt, n: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut rest = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        rest = q;
        e += 1;
    }
}

/// Number of distinct prime divisors.
pub fn rho(n: &BigInt) -> Result<usize> {
    Ok(factorize(n)?.len())
}

/// `rho(n)` for odd `n`, `rho(n / 2)` for even `n`.
pub fn rho_tilde(n: &BigInt) -> Result<usize> {
    require_positive("n", n)?;
    if n.is_even() {
        rho(&(n / 2))
    } else {
        rho(n)
    }
}

/// Whether `t` is a square modulo `p^e`.
pub fn is_square_mod(t: &BigInt, p: &BigInt, e: u32) -> Result<bool> {
    require_prime(p)?;
    if e == 0 {
        return Err(Error::NonPositive {
            what: "exponent",
            value: BigInt::zero(),
        });
    }
    let modulus: BigInt = Pow::pow(p, e);
    if modulus <= BigInt::from(SQUARE_SEARCH_LIMIT) {
        Ok(is_square_mod_by_search(t, &modulus))
    } else {
        Ok(sqrt_mod_prime_power(t, p, e).is_some())
    }
}

/// Exhaustive test over `x` in `[0, modulus)`.
pub fn is_square_mod_by_search(t: &BigInt, modulus: &BigInt) -> bool {
    let target = t.mod_floor(modulus);
    let mut x = BigInt::zero();
    // x² mod modulus, updated incrementally: (x+1)² = x² + 2x + 1.
    let mut sq = BigInt::zero();
    while &x < modulus {
        if sq == target {
            return true;
        }
        sq += &x + &x + 1u32;
        sq = sq.mod_floor(modulus);
        x += 1u32;
    }
    false
}

/// A square root of `t` modulo `p^e`, found by Hensel lifting, or `None`.
///
/// `p` must be prime and `e ≥ 1`.
pub fn sqrt_mod_prime_power(t: &BigInt, p: &BigInt, e: u32) -> Option<BigInt> {
    let modulus: BigInt = Pow::pow(p, e);
    let t = t.mod_floor(&modulus);
    if t.is_zero() {
        return Some(BigInt::zero());
    }
    // t = p^v · u with p ∤ u and v < e; any root has valuation v / 2.
    let v = valuation(p, &t);
    if v % 2 == 1 {
        return None;
    }
    let u = &t / Pow::pow(p, v);
    let f = e - v;
    let root = unit_sqrt_mod_prime_power(&u, p, f)?;
    Some((Pow::pow(p, v / 2) * root).mod_floor(&modulus))
}

fn unit_sqrt_mod_prime_power(u: &BigInt, p: &BigInt, f: u32) -> Option<BigInt> {
    if *p == BigInt::from(2) {
        return unit_sqrt_mod_power_of_two(u, f);
    }
    let mut root = sqrt_mod_odd_prime(&u.mod_floor(p), p)?;
    let mut modulus = p.clone();
    for _ in 1..f {
        modulus *= p;
        // Newton step: r ← r − (r² − u) / (2r), valid because 2r is a unit.
        let inv = mod_inverse(&(&root * 2), &modulus).expect("2r is a unit mod p^k");
        let err = (&root * &root - u).mod_floor(&modulus);
        root = (&root - err * inv).mod_floor(&modulus);
    }
    Some(root)
}

fn unit_sqrt_mod_power_of_two(u: &BigInt, f: u32) -> Option<BigInt> {
    match f {
        1 => Some(BigInt::one()),
        2 => (u.mod_floor(&BigInt::from(4)) == BigInt::one()).then(BigInt::one),
        _ => {
            if u.mod_floor(&BigInt::from(8)) != BigInt::one() {
                return None;
            }
            let mut root = BigInt::one();
            for i in 3..f {
                let next: BigInt = BigInt::one() << (i + 1);
                if (&root * &root - u).mod_floor(&next) != BigInt::zero() {
                    root += BigInt::one() << (i - 1);
                }
            }
            Some(root.mod_floor(&(BigInt::one() << f)))
        }
    }
}

/// Tonelli–Shanks for an odd prime `p` and `a` in `[0, p)`.
fn sqrt_mod_odd_prime(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    let one = BigInt::one();
    let p_minus_1 = p - 1u32;
    if a.modpow(&(&p_minus_1 >> 1), p) != one {
        return None;
    }
    let mut q = p_minus_1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while z.modpow(&(&p_minus_1 >> 1), p) != p_minus_1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while t != one {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while t2 != one {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let ext = a.mod_floor(m).extended_gcd(m);
    ext.gcd.is_one().then(|| ext.x.mod_floor(m))
}

/// Chinese remaindering for pairwise coprime moduli. Returns the residue in
/// `[0, ∏ moduli)`.
pub fn crt(congruences: &[(BigInt, BigInt)]) -> BigInt {
    let mut value = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in congruences {
        // value + modulus·t ≡ r (mod m)
        let inv = mod_inverse(&modulus, m).expect("moduli must be pairwise coprime");
        let t = ((r - &value) * inv).mod_floor(m);
        value += &modulus * t;
        modulus *= m;
    }
    value.mod_floor(&modulus)
}

/// `gcd(a, b)` with the convention `gcd(a, 0) = |a|`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pairs(f: &Factorization) -> Vec<(i64, u32)> {
        f.iter()
            .map(|pp| (i64::try_from(&pp.p).unwrap(), pp.e))
            .collect()
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(&big(1)).unwrap().is_empty());
        assert_eq!(pairs(&factorize(&big(12)).unwrap()), vec![(2, 2), (3, 1)]);
        assert_eq!(pairs(&factorize(&big(288)).unwrap()), vec![(2, 5), (3, 2)]);
        assert_eq!(
            pairs(&factorize(&big(999_999_999_989)).unwrap()),
            vec![(999_999_999_989, 1)]
        );
    }

    #[test]
    fn factorize_rejects_non_positive() {
        assert!(matches!(factorize(&big(0)), Err(Error::NonPositive { .. })));
        assert!(factorize(&big(-6)).is_err());
    }

    #[test]
    fn vp_examples() {
        assert_eq!(vp(&big(2), &big(144)).unwrap(), 4);
        assert_eq!(vp(&big(3), &big(144)).unwrap(), 2);
        assert_eq!(vp(&big(5), &big(144)).unwrap(), 0);
        assert_eq!(vp(&big(4), &big(144)), Err(Error::NotPrime(big(4))));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&big(144)).unwrap(), 2);
        assert_eq!(rho_tilde(&big(12)).unwrap(), 2);
        assert_eq!(rho_tilde(&big(2)).unwrap(), 0);
        assert_eq!(rho(&big(1)).unwrap(), 0);
    }

    #[test]
    fn square_mod_examples() {
        assert!(is_square_mod(&big(1), &big(2), 3).unwrap());
        assert!(!is_square_mod(&big(-1), &big(3), 1).unwrap());
        assert!(is_square_mod(&big(-1), &big(5), 1).unwrap());
        assert!(is_square_mod(&big(1), &big(6), 1).is_err());
    }

    #[test]
    fn hensel_above_threshold() {
        // 5^7 = 78125 > SQUARE_SEARCH_LIMIT, so these take the lifting path.
        let p = big(5);
        let q = big(78125);
        let root = sqrt_mod_prime_power(&big(-1), &p, 7).unwrap();
        assert_eq!((&root * &root + 1u32).mod_floor(&q), BigInt::zero());
        assert!(!is_square_mod(&big(2), &p, 7).unwrap());
        assert!(is_square_mod(&big(25 * 4), &p, 7).unwrap());
        assert!(!is_square_mod(&big(5), &p, 7).unwrap());
        // 2-adic: squares of odd numbers are ≡ 1 mod 8.
        assert!(is_square_mod(&big(17), &big(2), 20).unwrap());
        assert!(!is_square_mod(&big(5), &big(2), 20).unwrap());
        assert!(is_square_mod(&big(4 * 17), &big(2), 20).unwrap());
    }

    #[test]
    fn small_factorizations_are_exact() {
        for n in 1..=100_000i64 {
            let n = big(n);
            let f = factorize(&n).unwrap();
            assert_eq!(f.product(), n);
            assert_eq!(rho(&n).unwrap(), f.len());
            for pp in f.iter() {
                assert!(is_prime(&pp.p));
                // repeated division
                let mut rest = n.clone();
                let mut e = 0;
                while rest.is_multiple_of(&pp.p) {
                    rest /= &pp.p;
                    e += 1;
                }
                assert_eq!(valuation(&pp.p, &n), e);
            }
        }
    }

    #[test]
    fn rho_tilde_of_double() {
        for n in 1..=10_000i64 {
            assert_eq!(rho_tilde(&big(2 * n)).unwrap(), rho(&big(n)).unwrap());
        }
    }

    #[test]
    fn search_and_lifting_agree() {
        for p in (2..=100i64).filter(|&p| is_prime(&big(p))) {
            let p = big(p);
            let mut e = 1;
            loop {
                let q: BigInt = Pow::pow(&p, e);
                if q > big(10_000) {
                    break;
                }
                let qi = i64::try_from(&q).unwrap();
                let squares: std::collections::HashSet<i64> = (0..qi).map(|x| x * x % qi).collect();
                for ti in -qi..=qi {
                    let t = big(ti);
                    let expected = squares.contains(&ti.rem_euclid(qi));
                    if ti % 97 == 0 || qi < 500 {
                        assert_eq!(is_square_mod_by_search(&t, &q), expected, "t={t} q={q}");
                    }
                    let lifted = sqrt_mod_prime_power(&t, &p, e);
                    assert_eq!(expected, lifted.is_some(), "t={t} p={p} e={e}");
                    if let Some(r) = lifted {
                        assert_eq!((&r * &r - &t).mod_floor(&q), BigInt::zero());
                    }
                }
                e += 1;
            }
        }
    }

    proptest! {
        #[test]
        fn crt_solves_each_congruence(a in 0i64..1000, b in 0i64..1000) {
            let sys = [(big(a % 8), big(8)), (big(b % 81), big(81)), (big(a % 5), big(5))];
            let x = crt(&sys);
            prop_assert!(x >= BigInt::zero() && x < big(8 * 81 * 5));
            for (r, m) in &sys {
                prop_assert_eq!(x.mod_floor(m), r.clone());
            }
        }
    }
}
