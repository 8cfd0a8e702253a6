//! Numerical types of wall classes.
//!
//! A primitive class `κ` with `κ² = 2l` and `κ_* = k·δ_*` (`0 ≤ k ≤ m̃`)
//! determines a unique integer `c` with
//! `l = c·(2m̃/d)² − m̃·(k/d)²`, `d = gcd(2m̃, k)`. It is a wall class exactly
//! when `c` lies in `[−1, k²/(4m̃))` for `K3^[m]` and in `[0, k²/(4m̃))` for
//! `Kum_m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::lattice::{DeformationType, Family};

/// `(k, c, l, d)` together with `div(κ) = 2m̃/d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WallType {
    #[serde(with = "crate::json")]
    pub k: BigInt,
    #[serde(with = "crate::json")]
    pub c: BigInt,
    #[serde(with = "crate::json")]
    pub l: BigInt,
    #[serde(with = "crate::json")]
    pub d: BigInt,
    #[serde(with = "crate::json")]
    pub div_kappa: BigInt,
}

impl WallType {
    /// Builds the numerical type for `(k, c)`; does not check the wall range.
    pub fn from_kc(mt: &BigInt, k: BigInt, c: BigInt) -> Self {
        let d = gcd_with_2mt(mt, &k);
        let l = l_from(mt, &k, &c);
        let div_kappa = 2 * mt / &d;
        WallType { k, c, l, d, div_kappa }
    }

    /// `κ² = 2l`.
    pub fn square(&self) -> BigInt {
        2 * &self.l
    }
}

/// `gcd(2m̃, k)`, with `gcd(2m̃, 0) = 2m̃`.
pub fn gcd_with_2mt(mt: &BigInt, k: &BigInt) -> BigInt {
    (mt * 2u32).gcd(k)
}

/// Representative of `±k mod 2m̃` in `[0, m̃]`.
pub fn normalize_k(k: &BigInt, mt: &BigInt) -> BigInt {
    let modulus = 2 * mt;
    let r = k.mod_floor(&modulus);
    let s = &modulus - &r;
    r.min(s)
}

fn check_k(mt: &BigInt, k: &BigInt) -> Result<()> {
    require_positive("m̃", mt)?;
    if k.is_negative() || k > mt {
        return Err(Error::KOutOfRange {
            k: k.clone(),
            mt: mt.clone(),
        });
    }
    Ok(())
}

/// The unique `c` with `l = c·(2m̃/d)² − m̃·(k/d)²`.
pub fn solve_c(mt: &BigInt, k: &BigInt, l: &BigInt) -> Result<BigInt> {
    check_k(mt, k)?;
    let d = gcd_with_2mt(mt, k);
    let numerator = l * &d * &d + mt * k * k;
    let denominator = 4 * mt * mt;
    let (c, r) = numerator.div_rem(&denominator);
    if r.is_zero() {
        Ok(c)
    } else {
        Err(Error::NoIntegralC {
            mt: mt.clone(),
            k: k.clone(),
            l: l.clone(),
        })
    }
}

/// `c·(2m̃/d)² − m̃·(k/d)²`.
pub fn l_from(mt: &BigInt, k: &BigInt, c: &BigInt) -> BigInt {
    let d = gcd_with_2mt(mt, k);
    let a = 2 * mt / &d;
    let b = k / &d;
    c * &a * &a - mt * &b * &b
}

/// Whether a companion vector `s` with `s² ≥ −2a` and `|(s, v)| ≤ m̃` exists,
/// i.e. whether `c ≥ −a`.
pub fn companion_exists(mt: &BigInt, k: &BigInt, l: &BigInt, a: &BigInt) -> Result<bool> {
    let c = solve_c(mt, k, l)?;
    Ok(c >= -a)
}

/// Smallest admissible `c`: `−1` for `K3^[m]`, `0` for `Kum_m`.
pub fn c_lower_bound(family: Family) -> Result<BigInt> {
    match family {
        Family::K3m => Ok(-BigInt::one()),
        Family::Kumm => Ok(BigInt::zero()),
        family => Err(Error::UnsupportedFamily {
            op: "wall enumeration",
            family,
            hint: "use og_wall_list",
        }),
    }
}

/// Whether `c` lies in the wall range; the upper bound `c < k²/(4m̃)` is
/// compared as `4·m̃·c < k²`.
pub fn c_in_wall_range(family: Family, mt: &BigInt, k: &BigInt, c: &BigInt) -> Result<bool> {
    Ok(*c >= c_lower_bound(family)? && 4 * mt * c < k * k)
}

/// Inclusive range of wall values of `c` for this `k`, if nonempty.
pub fn c_range(family: Family, mt: &BigInt, k: &BigInt) -> Result<Option<(BigInt, BigInt)>> {
    let lo = c_lower_bound(family)?;
    // largest c with 4m̃c < k², i.e. ⌈k²/(4m̃)⌉ − 1
    let hi = (k * k).div_ceil(&(4 * mt)) - 1u32;
    Ok((lo <= hi).then_some((lo, hi)))
}

fn cyclic_family(dt: &DeformationType) -> Result<(Family, BigInt)> {
    match dt.family() {
        Family::K3m | Family::Kumm => Ok((dt.family(), dt.mtilde()?)),
        family => Err(Error::UnsupportedFamily {
            op: "numerical wall types",
            family,
            hint: "use og_wall_list",
        }),
    }
}

pub fn is_wall_type(dt: &DeformationType, k: &BigInt, l: &BigInt) -> Result<bool> {
    let (family, mt) = cyclic_family(dt)?;
    match solve_c(&mt, k, l) {
        Ok(c) => c_in_wall_range(family, &mt, k, &c),
        Err(Error::NoIntegralC { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Wall types with this `k`, ascending in `c`.
pub fn wall_types_at(dt: &DeformationType, k: &BigInt) -> Result<Vec<WallType>> {
    let (family, mt) = cyclic_family(dt)?;
    check_k(&mt, k)?;
    let Some((lo, hi)) = c_range(family, &mt, k)? else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut c = lo;
    while c <= hi {
        out.push(WallType::from_kc(&mt, k.clone(), c.clone()));
        c += 1u32;
    }
    Ok(out)
}

/// All wall types, sorted by `(k, c)`.
pub fn enumerate_wall_types(dt: &DeformationType) -> Result<Vec<WallType>> {
    let (_, mt) = cyclic_family(dt)?;
    let mut out = Vec::new();
    let mut k = BigInt::zero();
    while k <= mt {
        out.extend(wall_types_at(dt, &k)?);
        k += 1u32;
    }
    Ok(out)
}

/// Whether walls of type `k` occur orthogonal to a class of divisibility `γ`:
/// exactly when `γ | k`.
pub fn wall_orthogonal_to(dt: &DeformationType, gamma: &BigInt, k: &BigInt) -> Result<bool> {
    cyclic_family(dt)?;
    require_positive("γ", gamma)?;
    Ok(k.is_multiple_of(gamma))
}

/// A wall-class description for OG6/OG10: a square, optionally restricted to
/// one divisibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OgWall {
    #[serde(with = "crate::json")]
    pub square: BigInt,
    #[serde(with = "crate::json::option")]
    pub divisibility: Option<BigInt>,
}

impl OgWall {
    fn any(square: i64) -> Self {
        OgWall {
            square: square.into(),
            divisibility: None,
        }
    }

    fn with_div(square: i64, div: i64) -> Self {
        OgWall {
            square: square.into(),
            divisibility: Some(div.into()),
        }
    }

    pub fn matches(&self, square: &BigInt, div: &BigInt) -> bool {
        self.square == *square && self.divisibility.as_ref().is_none_or(|d| d == div)
    }
}

pub fn og_wall_list(dt: &DeformationType) -> Result<Vec<OgWall>> {
    match dt.family() {
        Family::Og6 => Ok(vec![OgWall::any(-2), OgWall::with_div(-4, 2)]),
        Family::Og10 => {
            let mut list = vec![OgWall::any(-2), OgWall::any(-4)];
            list.extend((1..=12).map(|j| OgWall::with_div(-2 * j, 3)));
            Ok(list)
        }
        family => Err(Error::UnsupportedFamily {
            op: "og_wall_list",
            family,
            hint: "use enumerate_wall_types",
        }),
    }
}

/// Whether a class of the given square and divisibility is a wall class on
/// OG6/OG10.
pub fn is_og_wall(dt: &DeformationType, square: &BigInt, div: &BigInt) -> Result<bool> {
    Ok(og_wall_list(dt)?.iter().any(|w| w.matches(square, div)))
}
