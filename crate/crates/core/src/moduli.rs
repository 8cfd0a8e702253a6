//! Polarization-type census and connected components of polarized moduli
//! spaces.
//!
//! For `K3^[m]` and `Kum_m` a primitive class `h` of square `2n` and
//! divisibility `γ` is written `h = γ·a·x + b·δ`; its class in the discriminant
//! group is `h_* = (2m̃/γ)·b·δ_*`. With the square fixed, Eichler's criterion
//! reduces every orbit question to the residue `b mod γ`:
//!
//! * admissible residues: `gcd(b, γ) = 1` and `γ² | b̂²·m̃ + n` for some lift
//!   `b̂ ≡ b (mod γ)`; each is one `Õ(Λ)`-orbit,
//! * a `Mon(Λ)`-orbit (one connected component) is `{b, −b}`,
//! * an `O(Λ)`-orbit (one polarization type) is `{a·b : a unit}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::intarith::{crt, factorize, is_square_mod, mod_inverse, rho_tilde, valuation};
use crate::lattice::{discriminant_units, DeformationType, Family};

/// `h² = 2n`, `div(h) = γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolarizationNumerics {
    #[serde(with = "crate::json")]
    n: BigInt,
    #[serde(with = "crate::json")]
    gamma: BigInt,
}

impl PolarizationNumerics {
    /// Checks positivity and that `γ` is a possible divisibility for `dt`.
    pub fn new(dt: &DeformationType, n: impl Into<BigInt>, gamma: impl Into<BigInt>) -> Result<Self> {
        let pn = PolarizationNumerics {
            n: n.into(),
            gamma: gamma.into(),
        };
        pn.validate_for(dt)?;
        Ok(pn)
    }

    /// Builds from the square `2n`, which must be even and positive.
    pub fn from_square(dt: &DeformationType, square: &BigInt, gamma: impl Into<BigInt>) -> Result<Self> {
        require_positive("square", square)?;
        if square.is_odd() {
            return Err(Error::OddSquare(square.clone()));
        }
        Self::new(dt, square / 2, gamma)
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn gamma(&self) -> &BigInt {
        &self.gamma
    }

    pub fn square(&self) -> BigInt {
        2 * &self.n
    }

    pub fn validate_for(&self, dt: &DeformationType) -> Result<()> {
        require_positive("n", &self.n)?;
        require_positive("γ", &self.gamma)?;
        let gamma = &self.gamma;
        let bad = |reason: String| {
            Err(Error::InvalidDivisibility {
                gamma: gamma.clone(),
                reason,
            })
        };
        match dt.family() {
            Family::K3m | Family::Kumm => {
                let mt = dt.mtilde()?;
                let bound: BigInt = (&mt * 2u32).gcd(&(&self.n * 2u32));
                if !bound.is_multiple_of(gamma) {
                    return bad(format!("γ must divide gcd(2m̃, 2n) = {bound}"));
                }
            }
            Family::Og6 => {
                if *gamma != BigInt::one() && *gamma != BigInt::from(2) {
                    return bad("OG6 divisibilities are 1 and 2".into());
                }
            }
            Family::Og10 => {
                if *gamma != BigInt::one() && *gamma != BigInt::from(3) {
                    return bad("OG10 divisibilities are 1 and 3".into());
                }
            }
        }
        Ok(())
    }
}

/// Per-prime data `α = min(v_p(m̃), v_p(n))`, `β = v_p(γ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PrimeData {
    p: BigInt,
    alpha: u32,
    beta: u32,
    balanced: bool,
}

fn prime_data(mt: &BigInt, n: &BigInt, gamma: &BigInt) -> Result<Vec<PrimeData>> {
    Ok(factorize(gamma)?
        .iter()
        .map(|pp| {
            let vm = valuation(&pp.p, mt);
            let vn = valuation(&pp.p, n);
            PrimeData {
                p: pp.p.clone(),
                alpha: vm.min(vn),
                beta: pp.e,
                balanced: vm == vn,
            }
        })
        .collect())
}

fn local_condition(mt: &BigInt, n: &BigInt, pd: &PrimeData) -> Result<bool> {
    if 2 * pd.beta <= pd.alpha {
        return Ok(true);
    }
    if !pd.balanced {
        return Ok(false);
    }
    // −n/m̃ modulo p^(2β−α), both stripped of p^α.
    let e = 2 * pd.beta - pd.alpha;
    let q: BigInt = Pow::pow(&pd.p, e);
    let scale: BigInt = Pow::pow(&pd.p, pd.alpha);
    let mt_unit = mt / &scale;
    let n_unit = n / &scale;
    let inv = mod_inverse(&mt_unit, &q).expect("m̃ / p^α is prime to p");
    let t = (-n_unit * inv).mod_floor(&q);
    is_square_mod(&t, &pd.p, e)
}

fn cyclic_mtilde(dt: &DeformationType, pn: &PolarizationNumerics) -> Result<Option<BigInt>> {
    pn.validate_for(dt)?;
    match dt.family() {
        Family::K3m | Family::Kumm => Ok(Some(dt.mtilde()?)),
        _ => Ok(None),
    }
}

/// Whether a polarization type of square `2n` and divisibility `γ` exists.
pub fn exists_polarization(dt: &DeformationType, pn: &PolarizationNumerics) -> Result<bool> {
    let Some(mt) = cyclic_mtilde(dt, pn)? else {
        return Ok(og_exists(dt.family(), pn));
    };
    for pd in prime_data(&mt, &pn.n, &pn.gamma)? {
        if !local_condition(&mt, &pn.n, &pd)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn og_exists(family: Family, pn: &PolarizationNumerics) -> bool {
    if pn.gamma.is_one() {
        return true;
    }
    match family {
        Family::Og6 => {
            let r = pn.n.mod_floor(&BigInt::from(4));
            r == BigInt::from(2) || r == BigInt::from(3)
        }
        Family::Og10 => pn.n.mod_floor(&BigInt::from(9)) == BigInt::from(6),
        _ => unreachable!(),
    }
}

/// Number of polarization types (`O(Λ)`-orbits) with the given numerics.
pub fn count_polarization_types(dt: &DeformationType, pn: &PolarizationNumerics) -> Result<BigInt> {
    if !exists_polarization(dt, pn)? {
        return Ok(BigInt::zero());
    }
    let Some(mt) = cyclic_mtilde(dt, pn)? else {
        return Ok(BigInt::one());
    };
    let mut total = BigInt::one();
    for pd in prime_data(&mt, &pn.n, &pn.gamma)? {
        total *= types_at_prime(&pd);
    }
    Ok(total)
}

fn types_at_prime(pd: &PrimeData) -> BigInt {
    let (p, alpha, beta) = (&pd.p, pd.alpha, pd.beta);
    if *p == BigInt::from(2) {
        if beta == 1 {
            BigInt::one()
        } else if 2 * beta <= alpha + 2 {
            BigInt::one() << (beta - 2)
        } else {
            BigInt::one() << (alpha + 1 - beta)
        }
    } else if 2 * beta <= alpha {
        (p - 1u32) * Pow::pow(p, beta - 1) / 2
    } else {
        Pow::pow(p, alpha - beta)
    }
}

fn residues_at_prime(pd: &PrimeData) -> BigInt {
    let (p, alpha, beta) = (&pd.p, pd.alpha, pd.beta);
    if *p == BigInt::from(2) {
        if 2 * beta <= alpha + 2 {
            BigInt::one() << (beta - 1)
        } else {
            BigInt::one() << (alpha + 2 - beta)
        }
    } else if 2 * beta <= alpha {
        (p - 1u32) * Pow::pow(p, beta - 1)
    } else {
        2 * Pow::pow(p, alpha - beta)
    }
}

/// `∏_{p | γ} M_p`: the number of admissible residues `b mod γ`, zero when
/// no polarization exists.
pub fn admissible_residue_count(dt: &DeformationType, pn: &PolarizationNumerics) -> Result<BigInt> {
    let mt = dt.mtilde()?;
    if !exists_polarization(dt, pn)? {
        return Ok(BigInt::zero());
    }
    Ok(prime_data(&mt, &pn.n, &pn.gamma)?
        .iter()
        .map(residues_at_prime)
        .fold(BigInt::one(), |acc, m| acc * m))
}

/// Number of connected components of the moduli space of one polarization
/// type with divisibility `γ`.
pub fn count_components(dt: &DeformationType, gamma: &BigInt) -> Result<BigInt> {
    require_positive("γ", gamma)?;
    if !dt.family().has_cyclic_mtilde() {
        return Ok(BigInt::one());
    }
    let r = rho_tilde(gamma)?;
    Ok(BigInt::one() << r.saturating_sub(1))
}

/// Number of `Õ(Λ)`-orbits inside one polarization type.
pub fn count_otilde_orbits(gamma: &BigInt) -> Result<BigInt> {
    Ok(BigInt::one() << rho_tilde(gamma)?)
}

/// One connected component (a `Mon(Λ)`-orbit).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentClass {
    /// Admissible residues `b mod γ` in this component, ascending.
    #[serde(with = "crate::json::vec")]
    pub residues_b: Vec<BigInt>,
    /// `h_* = (2m̃/γ)·b mod 2m̃`, in the same order as `residues_b`.
    #[serde(with = "crate::json::vec")]
    pub h_star: Vec<BigInt>,
    pub t_index: usize,
}

/// One polarization type with its components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeClass {
    pub t_index: usize,
    pub components: Vec<ComponentClass>,
}

impl TypeClass {
    pub fn residues(&self) -> impl Iterator<Item = &BigInt> {
        self.components.iter().flat_map(|c| c.residues_b.iter())
    }
}

/// Admissible residues `b mod γ`, solved one prime power at a time and
/// recombined.
pub fn admissible_residues(mt: &BigInt, n: &BigInt, gamma: &BigInt) -> Result<Vec<BigInt>> {
    require_positive("m̃", mt)?;
    require_positive("n", n)?;
    require_positive("γ", gamma)?;
    let mut per_prime: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    for pp in factorize(gamma)?.iter() {
        let q: BigInt = Pow::pow(&pp.p, pp.e);
        let q2 = &q * &q;
        let mut local = Vec::new();
        let mut b = BigInt::zero();
        while b < q {
            if !b.is_multiple_of(&pp.p) && has_lift(&b, &q, &q2, mt, n) {
                local.push(b.clone());
            }
            b += 1u32;
        }
        if local.is_empty() {
            return Ok(Vec::new());
        }
        per_prime.push((q, local));
    }

    let mut combined: Vec<BigInt> = vec![BigInt::zero()];
    let mut modulus = BigInt::one();
    for (q, local) in &per_prime {
        let mut next = Vec::with_capacity(combined.len() * local.len());
        for r in &combined {
            for s in local {
                next.push(crt(&[(r.clone(), modulus.clone()), (s.clone(), q.clone())]));
            }
        }
        combined = next;
        modulus *= q;
    }
    combined.sort();
    Ok(combined)
}

/// Whether some `b̂ ≡ b (mod q)` satisfies `q² | b̂²·m̃ + n`.
fn has_lift(b: &BigInt, q: &BigInt, q2: &BigInt, mt: &BigInt, n: &BigInt) -> bool {
    let mut lift = b.clone();
    while &lift < q2 {
        if (&lift * &lift * mt + n).is_multiple_of(q2) {
            return true;
        }
        lift += q;
    }
    false
}

/// Polarization types with their components, as residue classes.
///
/// Types are ordered by their least residue; components inside a type
/// likewise.
pub fn enumerate_components(dt: &DeformationType, pn: &PolarizationNumerics) -> Result<Vec<TypeClass>> {
    let Some(mt) = cyclic_mtilde(dt, pn)? else {
        return Err(Error::UnsupportedFamily {
            op: "enumerate_components",
            family: dt.family(),
            hint: "OG6/OG10 types are unique; use exists_polarization",
        });
    };
    let gamma = &pn.gamma;
    let residues = admissible_residues(&mt, &pn.n, gamma)?;
    let units = discriminant_units(&mt)?;
    let h_factor: BigInt = 2 * &mt / gamma;
    let h_modulus: BigInt = 2 * &mt;

    let mut unassigned: BTreeSet<BigInt> = residues.into_iter().collect();
    let mut types = Vec::new();
    while let Some(b) = unassigned.iter().next().cloned() {
        let t_index = types.len();
        let orbit: BTreeSet<BigInt> = units.iter().map(|a| (a * &b).mod_floor(gamma)).collect();
        let mut members = orbit.clone();
        let mut components = Vec::new();
        while let Some(c) = members.iter().next().cloned() {
            let neg = (-&c).mod_floor(gamma);
            let mut residues_b = vec![c.clone()];
            if neg != c {
                residues_b.push(neg.clone());
            }
            residues_b.sort();
            for r in &residues_b {
                members.remove(r);
            }
            let h_star = residues_b
                .iter()
                .map(|r| (&h_factor * r).mod_floor(&h_modulus))
                .collect();
            components.push(ComponentClass {
                residues_b,
                h_star,
                t_index,
            });
        }
        for r in &orbit {
            if !unassigned.remove(r) {
                return Err(Error::Invariant(format!(
                    "unit orbit of {b} mod {gamma} leaves the admissible residues at {r}"
                )));
            }
        }
        types.push(TypeClass { t_index, components });
    }
    Ok(types)
}

/// Order of `h_*` in `Z/2m̃`; equals `γ` for an admissible residue.
pub fn h_star_order(h_star: &BigInt, mt: &BigInt) -> BigInt {
    let modulus = 2 * mt;
    &modulus / h_star.abs().gcd(&modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn k3(m: i64) -> DeformationType {
        DeformationType::k3m(m).unwrap()
    }

    fn pn(dt: &DeformationType, n: i64, gamma: i64) -> PolarizationNumerics {
        PolarizationNumerics::new(dt, n, gamma).unwrap()
    }

    fn residue_sets(types: &[TypeClass]) -> Vec<Vec<Vec<i64>>> {
        types
            .iter()
            .map(|t| {
                t.components
                    .iter()
                    .map(|c| c.residues_b.iter().map(|b| i64::try_from(b).unwrap()).collect())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn existence_examples() {
        let dt = k3(145);
        assert!(exists_polarization(&dt, &pn(&dt, 144, 12)).unwrap());
        let og10 = DeformationType::og10();
        assert!(exists_polarization(&og10, &pn(&og10, 6, 3)).unwrap());
        assert!(!exists_polarization(&og10, &pn(&og10, 7, 3)).unwrap());
        let dt = k3(2);
        assert!(exists_polarization(&dt, &pn(&dt, 3, 2)).unwrap());
        assert!(!exists_polarization(&dt, &pn(&dt, 1, 2)).unwrap());
    }

    #[test]
    fn rejects_impossible_divisibility() {
        let dt = k3(2);
        assert!(matches!(
            PolarizationNumerics::new(&dt, 3, 4),
            Err(Error::InvalidDivisibility { .. })
        ));
        assert!(PolarizationNumerics::new(&DeformationType::og6(), 3, 3).is_err());
        assert!(PolarizationNumerics::new(&DeformationType::og10(), 6, 2).is_err());
        assert!(PolarizationNumerics::new(&dt, 0, 1).is_err());
        // built for another deformation type
        let wide = PolarizationNumerics::new(&k3(145), 144, 12).unwrap();
        assert!(exists_polarization(&dt, &wide).is_err());
    }

    #[test]
    fn census_examples() {
        let dt = k3(145);
        assert_eq!(count_polarization_types(&dt, &pn(&dt, 144, 12)).unwrap(), big(1));
        let dt = k3(7);
        assert_eq!(count_polarization_types(&dt, &pn(&dt, 1, 1)).unwrap(), big(1));
        let og6 = DeformationType::og6();
        assert_eq!(count_polarization_types(&og6, &pn(&og6, 2, 2)).unwrap(), big(1));
        assert_eq!(count_polarization_types(&og6, &pn(&og6, 1, 2)).unwrap(), big(0));
    }

    #[test]
    fn component_counts() {
        assert_eq!(count_components(&k3(145), &big(12)).unwrap(), big(2));
        assert_eq!(count_components(&k3(9), &big(1)).unwrap(), big(1));
        assert_eq!(count_components(&DeformationType::kumm(5).unwrap(), &big(1)).unwrap(), big(1));
        assert_eq!(count_components(&DeformationType::og6(), &big(2)).unwrap(), big(1));
        assert_eq!(count_otilde_orbits(&big(12)).unwrap(), big(4));
        assert_eq!(count_otilde_orbits(&big(1)).unwrap(), big(1));
        assert_eq!(count_otilde_orbits(&big(2)).unwrap(), big(1));
    }

    #[test]
    fn enumerate_examples() {
        let dt = k3(145);
        let types = enumerate_components(&dt, &pn(&dt, 144, 12)).unwrap();
        assert_eq!(residue_sets(&types), vec![vec![vec![1, 11], vec![5, 7]]]);
        assert_eq!(types[0].components[0].h_star, vec![big(24), big(264)]);

        let dt = k3(7);
        let types = enumerate_components(&dt, &pn(&dt, 1, 1)).unwrap();
        assert_eq!(residue_sets(&types), vec![vec![vec![0]]]);
        assert_eq!(types[0].components[0].h_star, vec![big(0)]);

        let dt = k3(2);
        let types = enumerate_components(&dt, &pn(&dt, 3, 2)).unwrap();
        assert_eq!(residue_sets(&types), vec![vec![vec![1]]]);

        assert!(enumerate_components(&dt, &pn(&dt, 1, 2)).unwrap().is_empty());
    }

    #[test]
    fn og_has_no_residue_enumeration() {
        let og6 = DeformationType::og6();
        assert!(matches!(
            enumerate_components(&og6, &pn(&og6, 2, 2)),
            Err(Error::UnsupportedFamily { .. })
        ));
    }

    #[test]
    fn component_invariants_hold_on_a_small_sweep() {
        for m in 2..=30i64 {
            for dt in [k3(m), DeformationType::kumm(m).unwrap()] {
                let mt = dt.mtilde().unwrap();
                for n in 1..=30i64 {
                    let bound = (&mt * 2u32).gcd(&big(2 * n));
                    for gamma in (1..=i64::try_from(&bound).unwrap()).filter(|g| bound.is_multiple_of(&big(*g))) {
                        let p = pn(&dt, n, gamma);
                        let types = enumerate_components(&dt, &p).unwrap();
                        let g = big(gamma);
                        for t in &types {
                            for c in &t.components {
                                for (b, h) in c.residues_b.iter().zip(&c.h_star) {
                                    assert!(b.gcd(&g).is_one());
                                    assert!(c.residues_b.contains(&(-b).mod_floor(&g)));
                                    assert_eq!(h_star_order(h, &mt), g);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
