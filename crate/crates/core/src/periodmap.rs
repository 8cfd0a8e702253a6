//! The complement of the image of the polarized period map.
//!
//! Every wall class `κ ⊥ h` cuts out a Heegner divisor that the period map
//! avoids. Such walls exist exactly for the wall types with `γ | k`, and the
//! canonical representative of each has transcendental discriminant
//! `|2·d²·n·l / (γ²·m̃)|`. The lists here are guaranteed-avoided divisors; they
//! are not claimed to be all irreducible components of the complement.
//!
//! Comparing images across components uses the action of a discriminant unit
//! `a` on walls: `κ ↦ κ'` keeps `l` and sends `k` to `±a·k mod 2m̃`, which moves
//! `c` to `c + (k'² − k²)/(4m̃)`. When that drops below the wall range, the
//! same Heegner divisor is avoided on one side of the identification and not
//! on the other.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{discriminant_units, DeformationType, Family};
use crate::moduli::{enumerate_components, exists_polarization, ComponentClass, PolarizationNumerics};
use crate::walls::{c_lower_bound, c_range, normalize_k, wall_types_at, WallType};

/// A wall orthogonal to `h` and the discriminant of its Heegner divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeegnerClass {
    pub wall: WallType,
    /// Discriminant of the canonical representative.
    #[serde(with = "crate::json")]
    pub disc: BigInt,
}

fn cyclic_setup(dt: &DeformationType, pn: &PolarizationNumerics) -> Result<(Family, BigInt)> {
    match dt.family() {
        Family::K3m | Family::Kumm => {
            pn.validate_for(dt)?;
            Ok((dt.family(), dt.mtilde()?))
        }
        family => Err(Error::UnsupportedFamily {
            op: "period map analysis",
            family,
            hint: "no orthogonality criterion is available for OG6/OG10 walls",
        }),
    }
}

fn require_existence(dt: &DeformationType, pn: &PolarizationNumerics) -> Result<()> {
    if exists_polarization(dt, pn)? {
        Ok(())
    } else {
        Err(Error::NoSuchPolarization {
            square: pn.square(),
            gamma: pn.gamma().clone(),
        })
    }
}

pub fn heegner_discriminant(dt: &DeformationType, pn: &PolarizationNumerics, wall: &WallType) -> Result<BigInt> {
    let (_, mt) = cyclic_setup(dt, pn)?;
    let gamma = pn.gamma();
    if !wall.k.is_multiple_of(gamma) {
        return Err(Error::NotOrthogonal {
            k: wall.k.clone(),
            gamma: gamma.clone(),
        });
    }
    let numerator = (&wall.d * &wall.d * pn.n() * &wall.l * 2u32).abs();
    let denominator = gamma * gamma * &mt;
    let (q, r) = numerator.div_rem(&denominator);
    if !r.is_zero() {
        return Err(Error::NonIntegralDiscriminant { numerator, denominator });
    }
    Ok(q)
}

/// Multiples of `γ` in `[0, m̃]`.
fn orthogonal_ks(mt: &BigInt, gamma: &BigInt) -> impl Iterator<Item = BigInt> {
    let mt = mt.clone();
    let step = gamma.clone();
    std::iter::successors(Some(BigInt::zero()), move |k| Some(k + &step)).take_while(move |k| *k <= mt)
}

/// Heegner divisors avoided by every component of the given polarization
/// type, one per wall type with `γ | k`, sorted by `(k, c)`.
pub fn avoided_heegner(dt: &DeformationType, pn: &PolarizationNumerics) -> Result<Vec<HeegnerClass>> {
    let (_, mt) = cyclic_setup(dt, pn)?;
    require_existence(dt, pn)?;
    let mut out = Vec::new();
    for k in orthogonal_ks(&mt, pn.gamma()) {
        for wall in wall_types_at(dt, &k)? {
            let disc = heegner_discriminant(dt, pn, &wall)?;
            out.push(HeegnerClass { wall, disc });
        }
    }
    Ok(out)
}

fn require_unit(a: &BigInt, mt: &BigInt) -> Result<()> {
    if (a * a - 1u32).is_multiple_of(&(4 * mt)) {
        Ok(())
    } else {
        Err(Error::NotAUnit {
            a: a.clone(),
            mt: mt.clone(),
        })
    }
}

/// Image of a wall type under the discriminant unit `a`. The result keeps `l`
/// and `d` but need not lie in the wall range.
pub fn transform_wall(dt: &DeformationType, wall: &WallType, a: &BigInt) -> Result<WallType> {
    let mt = match dt.family() {
        Family::K3m | Family::Kumm => dt.mtilde()?,
        family => {
            return Err(Error::UnsupportedFamily {
                op: "transform_wall",
                family,
                hint: "only the cyclic discriminant forms carry this action",
            })
        }
    };
    require_unit(a, &mt)?;
    let k2 = normalize_k(&(a * &wall.k), &mt);
    let (shift, r) = (&k2 * &k2 - &wall.k * &wall.k).div_rem(&(4 * &mt));
    if !r.is_zero() {
        return Err(Error::Invariant(format!(
            "non-integral c′ transforming (k = {}, c = {}) by a = {a}",
            wall.k, wall.c
        )));
    }
    Ok(WallType::from_kc(&mt, k2, &wall.c + shift))
}

/// Order of `O⁺(Λ,h)/Mon(Λ,h)`: the stabilizer of `h_*` among the
/// discriminant units, modulo the part of `{±1}` inside it. This bounds the
/// deck group of the period map of the component.
pub fn deck_group_bound(dt: &DeformationType, pn: &PolarizationNumerics, component: &ComponentClass) -> Result<BigInt> {
    let (_, mt) = cyclic_setup(dt, pn)?;
    let modulus = 2 * &mt;
    let h = component
        .h_star
        .first()
        .ok_or_else(|| Error::Invariant("component without residues".into()))?;
    let units = discriminant_units(&mt)?;
    let fixes = |a: &BigInt| (a * h - h).is_multiple_of(&modulus);
    let stabilizer = units.iter().filter(|a| fixes(a)).count();
    let mut signs = vec![BigInt::one()];
    if modulus != BigInt::from(2) {
        signs.push(&modulus - 1u32);
    }
    let sign_part = signs.iter().filter(|a| fixes(a)).count();
    Ok(BigInt::from(stabilizer / sign_part))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentAction {
    Fix,
    Swap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The guaranteed-avoided Heegner sets agree on all enumerated walls.
    IdenticalImages,
    Inconclusive,
    #[serde(rename = "not-G-invariant")]
    NotGInvariant,
    DifferentImages,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::IdenticalImages => "identical-images",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotGInvariant => "not-G-invariant",
            Verdict::DifferentImages => "different-images",
        }
    }
}

/// Wall types at one `k` whose image leaves the wall range. `wall` is the one
/// with the smallest `c`; the next `count − 1` values of `c` break as well.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrokenWall {
    pub wall: WallType,
    pub image: WallType,
    #[serde(with = "crate::json")]
    pub count: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageComparisonReport {
    #[serde(with = "crate::json")]
    pub unit: BigInt,
    pub component_action: ComponentAction,
    /// The wall with `k ≡ ±γ·a` at the lowest `c`, if it breaks; otherwise
    /// the first broken wall.
    pub witness: Option<BrokenWall>,
    pub broken_walls: Vec<BrokenWall>,
    #[serde(with = "crate::json")]
    pub broken_total: BigInt,
    #[serde(with = "crate::json")]
    pub walls_checked: BigInt,
    #[serde(with = "crate::json")]
    pub deck_group_bound: BigInt,
    /// Whether `deck_group_bound` is known to equal the deck group order.
    pub deck_bound_exact: bool,
    pub verdict: Verdict,
}

fn derive_verdict(action: ComponentAction, a_is_sign: bool, broken: bool) -> Verdict {
    match (broken, action) {
        (false, _) => Verdict::IdenticalImages,
        (true, ComponentAction::Swap) => Verdict::DifferentImages,
        (true, ComponentAction::Fix) if !a_is_sign => Verdict::NotGInvariant,
        (true, ComponentAction::Fix) => Verdict::Inconclusive,
    }
}

/// Compares period-map images under each nontrivial discriminant unit.
///
/// Component action and broken walls depend only on `γ` and `a`, never on the
/// chosen polarization type, so one report per unit covers all types. When
/// the unit group is `{±1}` a single report for `a = 1` is returned.
pub fn compare_images(dt: &DeformationType, pn: &PolarizationNumerics) -> Result<Vec<ImageComparisonReport>> {
    let (family, mt) = cyclic_setup(dt, pn)?;
    require_existence(dt, pn)?;
    let gamma = pn.gamma();
    let modulus = 2 * &mt;
    let minus_one = &modulus - 1u32;

    let types = enumerate_components(dt, pn)?;
    let reference = types
        .first()
        .and_then(|t| t.components.first())
        .ok_or_else(|| Error::Invariant("existing polarization without components".into()))?;
    let b = &reference.residues_b[0];
    let deck = deck_group_bound(dt, pn, reference)?;

    let units = discriminant_units(&mt)?;
    let mut chosen: Vec<BigInt> = units
        .iter()
        .filter(|a| !a.is_one() && **a != minus_one)
        .cloned()
        .collect();
    if chosen.is_empty() {
        chosen.push(BigInt::one());
    }

    let lo = c_lower_bound(family)?;
    let mut reports = Vec::with_capacity(chosen.len());
    for a in chosen {
        let image_b = (&a * b).mod_floor(gamma);
        let action = if reference.residues_b.contains(&image_b) {
            ComponentAction::Fix
        } else {
            ComponentAction::Swap
        };

        let mut broken_walls = Vec::new();
        let mut broken_total = BigInt::zero();
        let mut walls_checked = BigInt::zero();
        for k in orthogonal_ks(&mt, gamma) {
            let Some((c_lo, c_hi)) = c_range(family, &mt, &k)? else {
                continue;
            };
            walls_checked += &c_hi - &c_lo + 1u32;
            let wall = WallType::from_kc(&mt, k, c_lo.clone());
            let image = transform_wall(dt, &wall, &a)?;
            if image.c >= lo {
                continue;
            }
            // c + shift < lo for c in [c_lo, lo − shift − 1]
            let shift = &image.c - &wall.c;
            let last = (&lo - &shift - 1u32).min(c_hi);
            let count = last - &c_lo + 1u32;
            broken_total += &count;
            broken_walls.push(BrokenWall { wall, image, count });
        }

        let witness_k = normalize_k(&(gamma * &a), &mt);
        let witness = broken_walls
            .iter()
            .find(|bw| bw.wall.k == witness_k)
            .or_else(|| broken_walls.first())
            .cloned();
        let a_is_sign = a.is_one() || a == minus_one;
        let verdict = derive_verdict(action, a_is_sign, !broken_walls.is_empty());
        let deck_bound_exact =
            deck.is_one() || (deck == BigInt::from(2) && verdict == Verdict::NotGInvariant);
        reports.push(ImageComparisonReport {
            unit: a,
            component_action: action,
            witness,
            broken_walls,
            broken_total,
            walls_checked,
            deck_group_bound: deck.clone(),
            deck_bound_exact,
            verdict,
        });
    }
    Ok(reports)
}

/// The strongest verdict among the reports.
pub fn overall_verdict(reports: &[ImageComparisonReport]) -> Verdict {
    reports
        .iter()
        .map(|r| r.verdict)
        .max()
        .unwrap_or(Verdict::IdenticalImages)
}
