//! Brute-force verifiers for the closed-form census and wall formulas.
//!
//! Everything here works by exhaustive scanning over machine integers and
//! shares no code with the closed forms it checks. The wall search runs in the
//! rank-5 surrogate lattice `U ⊕ U ⊕ ⟨−2m̃⟩`: it can confirm that an
//! orthogonal wall class exists, never that one is absent.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{discriminant_units, DeformationType};
use crate::moduli::{
    admissible_residue_count, count_components, count_otilde_orbits, count_polarization_types,
    enumerate_components, exists_polarization, PolarizationNumerics,
};
use crate::walls::{enumerate_wall_types, WallType};

/// Largest modulus the scans accept.
pub const SCAN_LIMIT: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRange {
    pub mt_max: u64,
    pub n_max: u64,
    pub gamma_max: u64,
    pub search_bound: i64,
}

impl SweepRange {
    pub fn new(mt_max: u64, n_max: u64, gamma_max: u64, search_bound: i64) -> Result<Self> {
        let r = SweepRange { mt_max, n_max, gamma_max, search_bound };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mt_max == 0 || self.n_max == 0 || self.gamma_max == 0 || self.search_bound < 1 {
            return Err(Error::SearchRange(format!("all bounds must be ≥ 1, got {self:?}")));
        }
        Ok(())
    }
}

fn small(what: &str, v: &BigInt) -> Result<u64> {
    match v.to_u64() {
        Some(x) if (1..=SCAN_LIMIT).contains(&x) => Ok(x),
        _ => Err(Error::SearchRange(format!("{what} = {v} must lie in [1, {SCAN_LIMIT}]"))),
    }
}

fn units_u64(mt: u64) -> Vec<u64> {
    let m4 = 4 * mt as u128;
    (0..2 * mt)
        .filter(|&a| (a as u128 * a as u128) % m4 == 1 % m4)
        .collect()
}

fn residues_u64(mt: u64, n: u64, gamma: u64) -> Vec<u64> {
    let g2 = gamma as u128 * gamma as u128;
    let mut hits = BTreeSet::new();
    for lift in 0..gamma * gamma {
        let l = lift as u128;
        if (l * l * mt as u128 + n as u128).is_multiple_of(g2) {
            let b = lift % gamma;
            if b.gcd(&gamma) == 1 {
                hits.insert(b);
            }
        }
    }
    hits.into_iter().collect()
}

/// `{a ∈ [0, 2m̃) : a² ≡ 1 (mod 4m̃)}` by scanning.
pub fn brute_units(mt: &BigInt) -> Result<Vec<BigInt>> {
    let mt = small("m̃", mt)?;
    Ok(units_u64(mt).into_iter().map(BigInt::from).collect())
}

/// Admissible residues `b mod γ`, found by scanning every lift in `[0, γ²)`.
pub fn brute_residues(mt: &BigInt, n: &BigInt, gamma: &BigInt) -> Result<Vec<BigInt>> {
    let (mt, n, gamma) = (small("m̃", mt)?, small("n", n)?, small("γ", gamma)?);
    check_gamma(mt, n, gamma)?;
    Ok(residues_u64(mt, n, gamma).into_iter().map(BigInt::from).collect())
}

fn check_gamma(mt: u64, n: u64, gamma: u64) -> Result<()> {
    if !(2 * mt).gcd(&(2 * n)).is_multiple_of(gamma) {
        return Err(Error::InvalidDivisibility {
            gamma: gamma.into(),
            reason: "γ must divide gcd(2m̃, 2n)".into(),
        });
    }
    Ok(())
}

/// Number of distinct reductions mod `γ` of the discriminant units.
pub fn brute_unit_image(mt: &BigInt, gamma: &BigInt) -> Result<usize> {
    let (mt, gamma) = (small("m̃", mt)?, small("γ", gamma)?);
    if (2 * mt) % gamma != 0 {
        return Err(Error::InvalidDivisibility {
            gamma: gamma.into(),
            reason: "γ must divide 2m̃".into(),
        });
    }
    Ok(units_u64(mt).iter().map(|a| a % gamma).collect::<BTreeSet<_>>().len())
}

/// One disagreement found by [`census_sweep`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusMismatch {
    pub deformation_type: String,
    pub mt: u64,
    pub n: u64,
    pub gamma: u64,
    pub check: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub range: SweepRange,
    pub configurations: usize,
    pub nonempty: usize,
    pub mismatches: Vec<CensusMismatch>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the closed-form census against scanning for every
/// `m̃ ≤ mt_max`, `n ≤ n_max`, `γ | gcd(2m̃, 2n)` with `γ ≤ gamma_max`.
///
/// Each `m̃` is checked through `K3^[m̃+1]`, and also through `Kum_{m̃−1}`
/// when that exists.
pub fn census_sweep(range: &SweepRange) -> Result<CensusReport> {
    range.validate()?;
    let mut report = CensusReport {
        range: *range,
        configurations: 0,
        nonempty: 0,
        mismatches: Vec::new(),
    };
    for mt in 1..=range.mt_max {
        let units = units_u64(mt);
        let mut types = vec![DeformationType::k3m(mt + 1)?];
        if mt >= 3 {
            types.push(DeformationType::kumm(mt - 1)?);
        }
        for n in 1..=range.n_max {
            let g = (2 * mt).gcd(&(2 * n));
            for gamma in (1..=g.min(range.gamma_max)).filter(|x| g % x == 0) {
                let residues = residues_u64(mt, n, gamma);
                let grouped = group_residues(&residues, &units, gamma);
                for dt in &types {
                    report.configurations += 1;
                    if !residues.is_empty() {
                        report.nonempty += 1;
                    }
                    check_configuration(dt, mt, n, gamma, &residues, &grouped, &mut report.mismatches)?;
                }
            }
        }
    }
    Ok(report)
}

/// T-classes as lists of Mon-orbits, each a sorted residue list.
fn group_residues(residues: &[u64], units: &[u64], gamma: u64) -> Vec<Vec<Vec<u64>>> {
    let mut left: BTreeSet<u64> = residues.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(&b) = left.iter().next() {
        let orbit: BTreeSet<u64> = units.iter().map(|a| a * b % gamma).collect();
        let mut mon: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &r in &orbit {
            left.remove(&r);
            let key = r.min((gamma - r) % gamma);
            mon.entry(key).or_default().push(r);
        }
        out.push(mon.into_values().collect());
    }
    out
}

fn check_configuration(
    dt: &DeformationType,
    mt: u64,
    n: u64,
    gamma: u64,
    residues: &[u64],
    grouped: &[Vec<Vec<u64>>],
    out: &mut Vec<CensusMismatch>,
) -> Result<()> {
    let pn = PolarizationNumerics::new(dt, n, gamma)?;
    let gb = BigInt::from(gamma);
    let mut cmp = |check: &str, expected: String, actual: String| {
        if expected != actual {
            out.push(CensusMismatch {
                deformation_type: dt.to_string(),
                mt,
                n,
                gamma,
                check: check.to_string(),
                expected,
                actual,
            });
        }
    };

    cmp(
        "residue count",
        residues.len().to_string(),
        admissible_residue_count(dt, &pn)?.to_string(),
    );
    cmp(
        "existence",
        (!residues.is_empty()).to_string(),
        exists_polarization(dt, &pn)?.to_string(),
    );
    cmp(
        "type count",
        grouped.len().to_string(),
        count_polarization_types(dt, &pn)?.to_string(),
    );
    if residues.is_empty() {
        return Ok(());
    }

    let components = count_components(dt, &gb)?.to_string();
    let otilde = count_otilde_orbits(&gb)?.to_string();
    for t in grouped {
        cmp("components per type", t.len().to_string(), components.clone());
        let size: usize = t.iter().map(Vec::len).sum();
        cmp("Õ-orbits per type", size.to_string(), otilde.clone());
    }

    let closed: Vec<Vec<Vec<String>>> = enumerate_components(dt, &pn)?
        .iter()
        .map(|t| {
            t.components
                .iter()
                .map(|c| c.residues_b.iter().map(BigInt::to_string).collect())
                .collect()
        })
        .collect();
    let brute: Vec<Vec<Vec<String>>> = grouped
        .iter()
        .map(|t| t.iter().map(|c| c.iter().map(u64::to_string).collect()).collect())
        .collect();
    cmp("component grouping", format!("{brute:?}"), format!("{closed:?}"));
    Ok(())
}

/// The `m̃ ≤ mt_max` at which the closed-form units disagree with the scan
/// or do not number `2^ρ(m̃)`.
pub fn unit_law_sweep(mt_max: u64) -> Result<Vec<u64>> {
    let mut bad = Vec::new();
    for mt in 1..=mt_max {
        let closed = discriminant_units(&BigInt::from(mt))?;
        let brute: Vec<BigInt> = units_u64(mt).into_iter().map(BigInt::from).collect();
        let rho = crate::intarith::rho(&BigInt::from(mt))?;
        if closed != brute || brute.len() != 1 << rho {
            bad.push(mt);
        }
    }
    Ok(bad)
}

// Surrogate lattice.

/// Coordinates `(x₁, x₂, x₃, x₄, z)` in `U ⊕ U ⊕ ⟨−2m̃⟩`.
pub type Vector = [i64; 5];

/// `U ⊕ U ⊕ ⟨−2m̃⟩` with its explicit Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surrogate {
    mt: i64,
}

impl Surrogate {
    pub fn new(mt: i64) -> Result<Self> {
        if !(1..=1 << 20).contains(&mt) {
            return Err(Error::SearchRange(format!("surrogate m̃ = {mt} out of [1, 2^20]")));
        }
        Ok(Surrogate { mt })
    }

    pub fn gram(&self) -> [[i64; 5]; 5] {
        let mut g = [[0; 5]; 5];
        g[0][1] = 1;
        g[1][0] = 1;
        g[2][3] = 1;
        g[3][2] = 1;
        g[4][4] = -2 * self.mt;
        g
    }

    pub fn pair(&self, u: &Vector, v: &Vector) -> i64 {
        u[0] * v[1] + u[1] * v[0] + u[2] * v[3] + u[3] * v[2] - 2 * self.mt * u[4] * v[4]
    }

    pub fn square(&self, v: &Vector) -> i64 {
        self.pair(v, v)
    }

    /// `gcd` of the pairings with the basis.
    pub fn divisibility(&self, v: &Vector) -> i64 {
        [v[1], v[0], v[3], v[2], 2 * self.mt * v[4]]
            .iter()
            .fold(0i64, |g, x| g.gcd(x))
    }

    /// `v_* = (v / div v) mod Λ` as the multiple `k` of `δ_*`, normalized to
    /// `[0, m̃]` up to sign.
    pub fn star_index(&self, v: &Vector) -> i64 {
        let modulus = 2 * self.mt;
        let r = (modulus * v[4] / self.divisibility(v)).rem_euclid(modulus);
        r.min(modulus - r)
    }
}

pub fn is_primitive(v: &Vector) -> bool {
    v.iter().fold(0i64, |g, x| g.gcd(x)) == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurrogateWitness {
    pub h: Vector,
    pub kappa: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found(SurrogateWitness),
    /// Nothing within the box; says nothing about larger vectors.
    Exhausted { bound: i64 },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&SurrogateWitness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

/// Primitive vectors of the box `[−bound, bound]⁵`, bucketed for the
/// polarization side by `(square, div)` and for the wall side by
/// `(square, star index)`.
struct BoxIndex {
    lattice: Surrogate,
    polarizations: HashMap<(i64, i64), Vec<Vector>>,
    walls: HashMap<(i64, i64), Vec<Vector>>,
}

impl BoxIndex {
    fn build(lattice: Surrogate, bound: i64, max_h_square: i64, min_kappa_square: i64) -> Self {
        let mut polarizations: HashMap<(i64, i64), Vec<Vector>> = HashMap::new();
        let mut walls: HashMap<(i64, i64), Vec<Vector>> = HashMap::new();
        let r = -bound..=bound;
        for x0 in r.clone() {
            for x1 in r.clone() {
                for x2 in r.clone() {
                    for x3 in r.clone() {
                        for z in r.clone() {
                            let v = [x0, x1, x2, x3, z];
                            let sq = lattice.square(&v);
                            let wanted = (sq > 0 && sq <= max_h_square) || (sq < 0 && sq >= min_kappa_square);
                            if !wanted || !is_primitive(&v) {
                                continue;
                            }
                            if sq > 0 {
                                polarizations.entry((sq, lattice.divisibility(&v))).or_default().push(v);
                            } else {
                                walls.entry((sq, lattice.star_index(&v))).or_default().push(v);
                            }
                        }
                    }
                }
            }
        }
        BoxIndex { lattice, polarizations, walls }
    }

    fn search(&self, n: i64, gamma: i64, k: i64, l: i64) -> Option<SurrogateWitness> {
        let hs = self.polarizations.get(&(2 * n, gamma))?;
        let ks = self.walls.get(&(2 * l, k))?;
        for h in hs {
            if let Some(kappa) = ks.iter().find(|kappa| self.lattice.pair(h, kappa) == 0) {
                return Some(SurrogateWitness { h: *h, kappa: *kappa });
            }
        }
        None
    }

    /// Every star index `k` of a primitive `κ` with `κ² = 2l` orthogonal to
    /// some `h` with `h² = 2n`, `div h = γ`.
    fn orthogonal_star_indices(&self, n: i64, gamma: i64, l: i64) -> BTreeSet<i64> {
        let Some(hs) = self.polarizations.get(&(2 * n, gamma)) else {
            return BTreeSet::new();
        };
        let mut found = BTreeSet::new();
        for (&(sq, k), ks) in &self.walls {
            if sq != 2 * l || found.contains(&k) {
                continue;
            }
            if hs.iter().any(|h| ks.iter().any(|kappa| self.lattice.pair(h, kappa) == 0)) {
                found.insert(k);
            }
        }
        found
    }
}

fn to_i64(what: &str, v: &BigInt) -> Result<i64> {
    v.to_i64()
        .filter(|x| x.unsigned_abs() <= 1 << 20)
        .ok_or_else(|| Error::SearchRange(format!("{what} = {v} is too large for the surrogate search")))
}

/// Searches the box `[−bound, bound]⁵` for a primitive `h` (`h² = 2n`,
/// `div h = γ`) and a primitive `κ ⊥ h` (`κ² = 2l`, `κ_* = ±k·δ_*`).
pub fn surrogate_wall_search(
    mt: &BigInt,
    n: &BigInt,
    gamma: &BigInt,
    k: &BigInt,
    l: &BigInt,
    bound: i64,
) -> Result<SearchOutcome> {
    let mt = to_i64("m̃", mt)?;
    let lattice = Surrogate::new(mt)?;
    let (n, gamma, k, l) = (to_i64("n", n)?, to_i64("γ", gamma)?, to_i64("k", k)?, to_i64("l", l)?);
    check_search(n, gamma, l, bound)?;
    let index = BoxIndex::build(lattice, bound, 2 * n, 2 * l);
    let r = k.rem_euclid(2 * mt);
    Ok(match index.search(n, gamma, r.min(2 * mt - r), l) {
        Some(w) => SearchOutcome::Found(w),
        None => SearchOutcome::Exhausted { bound },
    })
}

fn check_search(n: i64, gamma: i64, l: i64, bound: i64) -> Result<()> {
    if n < 1 || gamma < 1 || l >= 0 {
        return Err(Error::SearchRange(format!(
            "need n ≥ 1, γ ≥ 1 and l < 0, got n = {n}, γ = {gamma}, l = {l}"
        )));
    }
    if !(1..=16).contains(&bound) {
        return Err(Error::SearchRange(format!("bound = {bound} must lie in [1, 16]")));
    }
    Ok(())
}

/// One wall type checked by [`surrogate_sweep`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallProbe {
    pub mt: u64,
    pub n: u64,
    pub gamma: u64,
    pub wall: WallType,
    pub outcome: SearchOutcome,
}

/// A wall class orthogonal to some `h` although `γ ∤ k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalityViolation {
    pub mt: u64,
    pub n: u64,
    pub gamma: u64,
    pub k: i64,
    pub l: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurrogateReport {
    pub range: SweepRange,
    pub probes: Vec<WallProbe>,
    pub violations: Vec<OrthogonalityViolation>,
}

impl SurrogateReport {
    pub fn missing(&self) -> impl Iterator<Item = &WallProbe> {
        self.probes.iter().filter(|p| p.outcome.witness().is_none())
    }

    pub fn found(&self) -> usize {
        self.probes.len() - self.missing().count()
    }
}

/// For each `m̃ ≤ mt_max`, `n ≤ n_max`, `γ | gcd(2m̃, 2n)` with `γ ≤ gamma_max`
/// and a polarization: looks for a witness of every `K3^[m̃+1]` wall type
/// with `γ | k`, and records every `κ ⊥ h` found with `γ ∤ k`.
pub fn surrogate_sweep(range: &SweepRange) -> Result<SurrogateReport> {
    range.validate()?;
    check_search(1, 1, -1, range.search_bound)?;
    let mut probes = Vec::new();
    let mut violations = Vec::new();
    for mt in 1..=range.mt_max {
        let dt = DeformationType::k3m(mt + 1)?;
        let walls = enumerate_wall_types(&dt)?;
        let min_l = walls.iter().map(|w| w.l.to_i64().unwrap_or(i64::MIN)).min().unwrap_or(-1);
        let lattice = Surrogate::new(to_i64("m̃", &BigInt::from(mt))?)?;
        let index = BoxIndex::build(lattice, range.search_bound, 2 * range.n_max as i64, 2 * min_l);
        let wall_ls: BTreeSet<i64> = walls.iter().map(|w| w.l.to_i64().unwrap()).collect();
        for n in 1..=range.n_max {
            let g = (2 * mt).gcd(&(2 * n));
            for gamma in (1..=g.min(range.gamma_max)).filter(|x| g % x == 0) {
                let pn = PolarizationNumerics::new(&dt, n, gamma)?;
                if !exists_polarization(&dt, &pn)? {
                    continue;
                }
                let (ni, gi) = (n as i64, gamma as i64);
                for w in walls.iter().filter(|w| w.k.is_multiple_of(&BigInt::from(gamma))) {
                    let (k, l) = (w.k.to_i64().unwrap(), w.l.to_i64().unwrap());
                    let outcome = match index.search(ni, gi, k, l) {
                        Some(wit) => SearchOutcome::Found(wit),
                        None => SearchOutcome::Exhausted { bound: range.search_bound },
                    };
                    probes.push(WallProbe { mt, n, gamma, wall: w.clone(), outcome });
                }
                for &l in &wall_ls {
                    for k in index.orthogonal_star_indices(ni, gi, l) {
                        if k % gi != 0 {
                            violations.push(OrthogonalityViolation { mt, n, gamma, k, l });
                        }
                    }
                }
            }
        }
    }
    Ok(SurrogateReport { range: *range, probes, violations })
}
