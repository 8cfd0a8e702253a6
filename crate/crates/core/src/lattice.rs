//! Deformation types, their second-cohomology lattices and the unit group of
//! the cyclic discriminant form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::intarith::{crt, factorize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    K3m,
    Kumm,
    Og6,
    Og10,
}

impl Family {
    pub fn has_cyclic_mtilde(self) -> bool {
        matches!(self, Family::K3m | Family::Kumm)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::K3m => "K3^[m]",
            Family::Kumm => "Kum_m",
            Family::Og6 => "OG6",
            Family::Og10 => "OG10",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k3m" => Ok(Family::K3m),
            "kumm" => Ok(Family::Kumm),
            "og6" => Ok(Family::Og6),
            "og10" => Ok(Family::Og10),
            other => Err(Error::InvalidDeformationType(format!("unknown family {other:?}"))),
        }
    }
}

/// One of the four known deformation types. `m` is present exactly for
/// `K3^[m]` and `Kum_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeformationType {
    family: Family,
    #[serde(with = "crate::json::option")]
    m: Option<BigInt>,
}

impl DeformationType {
    pub fn new(family: Family, m: Option<BigInt>) -> Result<Self> {
        match (family, m) {
            (Family::K3m | Family::Kumm, Some(m)) => {
                if m < BigInt::from(2) {
                    return Err(Error::InvalidDeformationType(format!(
                        "{family} requires m ≥ 2, got {m}"
                    )));
                }
                Ok(DeformationType { family, m: Some(m) })
            }
            (Family::K3m | Family::Kumm, None) => Err(Error::InvalidDeformationType(format!(
                "{family} requires m"
            ))),
            (Family::Og6 | Family::Og10, None) => Ok(DeformationType { family, m: None }),
            (Family::Og6 | Family::Og10, Some(_)) => Err(Error::InvalidDeformationType(format!(
                "{family} takes no m"
            ))),
        }
    }

    pub fn k3m(m: impl Into<BigInt>) -> Result<Self> {
        Self::new(Family::K3m, Some(m.into()))
    }

    pub fn kumm(m: impl Into<BigInt>) -> Result<Self> {
        Self::new(Family::Kumm, Some(m.into()))
    }

    pub fn og6() -> Self {
        DeformationType { family: Family::Og6, m: None }
    }

    pub fn og10() -> Self {
        DeformationType { family: Family::Og10, m: None }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> Option<&BigInt> {
        self.m.as_ref()
    }

    pub fn mtilde(&self) -> Result<BigInt> {
        mtilde(self)
    }

    pub fn discriminant_group(&self) -> DiscriminantGroup {
        match (self.family, &self.m) {
            (Family::K3m, Some(m)) => DiscriminantGroup::cyclic_with_generator(2 * (m - 1u32)),
            (Family::Kumm, Some(m)) => DiscriminantGroup::cyclic_with_generator(2 * (m + 1u32)),
            (Family::Og6, _) => DiscriminantGroup {
                order: BigInt::from(4),
                cyclic: false,
                generator: None,
            },
            (Family::Og10, _) => DiscriminantGroup {
                order: BigInt::from(3),
                cyclic: true,
                generator: None,
            },
            _ => unreachable!("constructor guarantees m for K3^[m] and Kum_m"),
        }
    }
}

impl fmt::Display for DeformationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, &self.m) {
            (Family::K3m, Some(m)) => write!(f, "K3^[{m}]"),
            (Family::Kumm, Some(m)) => write!(f, "Kum_{m}"),
            (family, _) => write!(f, "{family}"),
        }
    }
}

/// `D(Λ) = Λ^∨ / Λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantGroup {
    #[serde(with = "crate::json")]
    pub order: BigInt,
    pub cyclic: bool,
    /// Name of the distinguished generator, when there is one.
    pub generator: Option<String>,
}

impl DiscriminantGroup {
    fn cyclic_with_generator(order: BigInt) -> Self {
        DiscriminantGroup {
            order,
            cyclic: true,
            generator: Some("δ_*".to_string()),
        }
    }
}

/// `m − 1` for `K3^[m]`, `m + 1` for `Kum_m`.
pub fn mtilde(dt: &DeformationType) -> Result<BigInt> {
    match (dt.family, &dt.m) {
        (Family::K3m, Some(m)) => Ok(m - 1u32),
        (Family::Kumm, Some(m)) => Ok(m + 1u32),
        (family, _) => Err(Error::MtildeUndefined(family)),
    }
}

/// The isometries of the cyclic discriminant form of order `2·mt`, as the
/// residues `a` in `[0, 2·mt)` with `a² ≡ 1 (mod 4·mt)`.
///
/// Built by Chinese remaindering: `a ≡ ±1` modulo `2^(v₂(mt)+1)` and modulo
/// every odd prime power exactly dividing `mt`.
pub fn discriminant_units(mt: &BigInt) -> Result<Vec<BigInt>> {
    require_positive("m̃", mt)?;
    let factors = factorize(mt)?;
    let two = BigInt::from(2);

    let mut moduli: Vec<BigInt> = Vec::with_capacity(factors.len() + 1);
    let v2 = factors
        .iter()
        .find(|pp| pp.p == two)
        .map_or(0, |pp| pp.e);
    moduli.push(BigInt::one() << (v2 + 1));
    moduli.extend(
        factors
            .iter()
            .filter(|pp| pp.p != two)
            .map(|pp| Pow::pow(&pp.p, pp.e)),
    );

    let modulus = 2 * mt;
    let mut units: Vec<BigInt> = Vec::with_capacity(1 << moduli.len());
    for signs in 0u64..(1u64 << moduli.len()) {
        let system: Vec<(BigInt, BigInt)> = moduli
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let r = if signs >> i & 1 == 1 { q - 1u32 } else { BigInt::one() };
                (r.mod_floor(q), q.clone())
            })
            .collect();
        units.push(crt(&system).mod_floor(&modulus));
    }
    units.sort();
    // Modulo 2 the two signs coincide.
    units.dedup();
    Ok(units)
}

/// One row of the lattice/monodromy table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromySummary {
    pub deformation_type: String,
    pub lattice: String,
    pub discriminant_group: String,
    pub monodromy: String,
}

const LAMBDA_K3: &str = "U^⊕3 ⊕ E_8(−1)^⊕2";

pub fn monodromy_summary(dt: &DeformationType) -> MonodromySummary {
    let (lattice, discriminant_group, monodromy) = match (dt.family, &dt.m) {
        (Family::K3m, Some(m)) => {
            let q = 2 * (m - 1u32);
            (
                format!("Λ_K3 ⊕ ⟨−{q}⟩, Λ_K3 = {LAMBDA_K3}"),
                format!("Z/{q}Z"),
                "Ô⁺(Λ)".to_string(),
            )
        }
        (Family::Kumm, Some(m)) => {
            let q = 2 * (m + 1u32);
            (
                format!("U^⊕3 ⊕ ⟨−{q}⟩"),
                format!("Z/{q}Z"),
                "{g ∈ Ô⁺(Λ) | χ(g)·det(g) = 1}".to_string(),
            )
        }
        (Family::Og6, _) => (
            "U^⊕3 ⊕ ⟨−2⟩^⊕2".to_string(),
            "(Z/2Z)²".to_string(),
            "O⁺(Λ)".to_string(),
        ),
        (Family::Og10, _) => (
            format!("Λ_K3 ⊕ [[−6, 3], [3, −2]], Λ_K3 = {LAMBDA_K3}"),
            "Z/3Z".to_string(),
            "O⁺(Λ)".to_string(),
        ),
        _ => unreachable!("constructor guarantees m for K3^[m] and Kum_m"),
    };
    MonodromySummary {
        deformation_type: dt.to_string(),
        lattice,
        discriminant_group,
        monodromy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn mtilde_examples() {
        assert_eq!(mtilde(&DeformationType::k3m(2).unwrap()).unwrap(), BigInt::from(1));
        assert_eq!(mtilde(&DeformationType::k3m(145).unwrap()).unwrap(), BigInt::from(144));
        assert_eq!(mtilde(&DeformationType::kumm(2).unwrap()).unwrap(), BigInt::from(3));
        assert_eq!(
            mtilde(&DeformationType::og6()),
            Err(Error::MtildeUndefined(Family::Og6))
        );
    }

    #[test]
    fn rejects_small_m() {
        assert!(DeformationType::k3m(1).is_err());
        assert!(DeformationType::kumm(1).is_err());
        assert!(DeformationType::new(Family::K3m, None).is_err());
        assert!(DeformationType::new(Family::Og10, Some(BigInt::from(3))).is_err());
    }

    #[test]
    fn unit_examples() {
        assert_eq!(discriminant_units(&BigInt::from(1)).unwrap(), ints(&[1]));
        assert_eq!(discriminant_units(&BigInt::from(6)).unwrap(), ints(&[1, 5, 7, 11]));
        assert_eq!(
            discriminant_units(&BigInt::from(144)).unwrap(),
            ints(&[1, 127, 161, 287])
        );
    }

    #[test]
    fn units_form_an_elementary_two_group() {
        for mt in 1..=500i64 {
            let mtb = BigInt::from(mt);
            let units = discriminant_units(&mtb).unwrap();
            let modulus = BigInt::from(2 * mt);
            let expected_len = 1usize << crate::intarith::rho(&mtb).unwrap();
            assert_eq!(units.len(), expected_len, "mt={mt}");
            assert!(units.contains(&BigInt::one()));
            assert!(units.contains(&(&modulus - 1)));
            for a in &units {
                assert_eq!((a * a).mod_floor(&modulus), BigInt::one());
                for b in &units {
                    assert!(units.contains(&(a * b).mod_floor(&modulus)));
                }
            }
        }
    }

    #[test]
    fn table_rows() {
        let og10 = monodromy_summary(&DeformationType::og10());
        assert_eq!(og10.discriminant_group, "Z/3Z");
        assert_eq!(og10.monodromy, "O⁺(Λ)");
        let k3 = monodromy_summary(&DeformationType::k3m(2).unwrap());
        assert_eq!(k3.monodromy, "Ô⁺(Λ)");
        assert_eq!(k3.discriminant_group, "Z/2Z");
        assert_eq!(monodromy_summary(&DeformationType::og6()).discriminant_group, "(Z/2Z)²");
        assert_eq!(
            DeformationType::og6().discriminant_group().order,
            BigInt::from(4)
        );
        assert!(!DeformationType::og6().discriminant_group().cyclic);
    }
}
