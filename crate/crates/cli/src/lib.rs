//! Argument parsing, report types and rendering for the `hk` binary.

pub mod table;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use hk_core::json::JsonInt;
use hk_core::lattice::DiscriminantGroup;
use hk_core::oracle::{self, CensusReport, SearchOutcome, SurrogateReport, SweepRange};
use hk_core::walls::{og_wall_list, OgWall};
use hk_core::{
    avoided_heegner, compare_images, count_components, count_otilde_orbits, count_polarization_types,
    enumerate_components, enumerate_wall_types, exists_polarization, monodromy_summary, overall_verdict,
    DeformationType, Error, ErrorKind, Family, HeegnerClass, ImageComparisonReport, PolarizationNumerics,
    TypeClass, Verdict, WallType,
};

use table::Table;

const JSON_NOTE: &str = "With --format json every command prints one JSON object. \
Integers above 2^63-1 are written as decimal strings, all others as numbers.";

#[derive(Debug, Parser)]
#[command(name = "hk", version, about = "Exact invariants of polarized hyperkähler moduli spaces", after_help = JSON_NOTE)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice, discriminant group and monodromy group.
    Info(FamilyArgs),
    /// Polarization types and connected components for one (square, div).
    Components(PolarizationArgs),
    /// Existence census over all divisibilities, or one if --div is given.
    Polarizations(CensusArgs),
    /// Numerical types of wall classes.
    Walls(FamilyArgs),
    /// Heegner divisors avoided by the period map.
    Heegner(PolarizationArgs),
    /// Period-map images of the components under discriminant units.
    Compare(PolarizationArgs),
    /// Brute-force verifiers.
    Oracle {
        #[command(subcommand)]
        kind: OracleCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    K3m,
    Kumm,
    Og6,
    Og10,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::K3m => Family::K3m,
            FamilyArg::Kumm => Family::Kumm,
            FamilyArg::Og6 => Family::Og6,
            FamilyArg::Og10 => Family::Og10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Required for k3m and kumm, rejected otherwise.
    #[arg(long)]
    pub m: Option<BigInt>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

impl FamilyArgs {
    fn deformation_type(&self) -> Result<DeformationType, Error> {
        DeformationType::new(self.family.into(), self.m.clone())
    }
}

#[derive(Debug, Clone, Args)]
pub struct PolarizationArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// h² = 2n, even and positive.
    #[arg(long)]
    pub square: BigInt,
    /// div(h) = γ.
    #[arg(long)]
    pub div: BigInt,
}

#[derive(Debug, Clone, Args)]
pub struct CensusArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub square: BigInt,
    #[arg(long)]
    pub div: Option<BigInt>,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Units of the discriminant form by exhaustive scan.
    Units(FamilyArgs),
    /// Admissible residues b mod γ by exhaustive scan.
    Residues(PolarizationArgs),
    /// Number of residues mod γ of the units.
    UnitImage {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        div: BigInt,
    },
    /// Vector search in U ⊕ U ⊕ ⟨−2m̃⟩ for h and an orthogonal wall class.
    Search {
        #[command(flatten)]
        polarization: PolarizationArgs,
        #[arg(long)]
        k: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        l: BigInt,
        /// Coordinate bound of the search box.
        #[arg(long, default_value_t = 8)]
        bound: i64,
    },
    /// Closed-form census against exhaustive scans.
    Census(SweepArgs),
    /// Surrogate search for every wall type with γ | k.
    Surrogate(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 12)]
    pub mt_max: u64,
    #[arg(long, default_value_t = 12)]
    pub n_max: u64,
    #[arg(long)]
    pub gamma_max: Option<u64>,
    #[arg(long, default_value_t = 8)]
    pub bound: i64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

impl SweepArgs {
    fn range(&self) -> Result<SweepRange, Error> {
        let gamma_max = self.gamma_max.unwrap_or(2 * self.mt_max.max(1));
        SweepRange::new(self.mt_max, self.n_max, gamma_max, self.bound)
    }
}

/// Failure of a command, carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Nonexistence => 1,
            ErrorKind::Usage => 2,
            ErrorKind::Internal => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: 3, message: e.to_string() }
    }
}

fn polarization(dt: &DeformationType, args: &PolarizationArgs) -> Result<PolarizationNumerics, Error> {
    PolarizationNumerics::from_square(dt, &args.square, args.div.clone())
}

fn require_existence(dt: &DeformationType, pn: &PolarizationNumerics) -> Result<(), Error> {
    if exists_polarization(dt, pn)? {
        Ok(())
    } else {
        Err(Error::NoSuchPolarization {
            square: pn.square(),
            gamma: pn.gamma().clone(),
        })
    }
}

// Reports.

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoReport {
    pub deformation_type: String,
    pub lattice: String,
    pub discriminant_group: String,
    pub discriminant: DiscriminantGroup,
    pub monodromy: String,
    pub mtilde: Option<JsonInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentsReport {
    pub deformation_type: String,
    pub square: JsonInt,
    pub n: JsonInt,
    pub gamma: JsonInt,
    pub polarization_types: JsonInt,
    pub components_per_type: JsonInt,
    pub otilde_orbits_per_type: Option<JsonInt>,
    /// Residue classes; absent for OG6/OG10.
    pub types: Option<Vec<TypeClass>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationRow {
    pub gamma: JsonInt,
    pub exists: bool,
    pub polarization_types: JsonInt,
    pub components_per_type: JsonInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationsReport {
    pub deformation_type: String,
    pub square: JsonInt,
    pub n: JsonInt,
    pub rows: Vec<PolarizationRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallsReport {
    pub deformation_type: String,
    pub mtilde: Option<JsonInt>,
    /// `K3^[m]` and `Kum_m`.
    pub walls: Option<Vec<WallType>>,
    /// OG6 and OG10.
    pub og_walls: Option<Vec<OgWall>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeegnerReport {
    pub deformation_type: String,
    pub square: JsonInt,
    pub n: JsonInt,
    pub gamma: JsonInt,
    pub heegner: Vec<HeegnerClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub deformation_type: String,
    pub square: JsonInt,
    pub n: JsonInt,
    pub gamma: JsonInt,
    pub verdict: Verdict,
    pub reports: Vec<ImageComparisonReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitsReport {
    pub mtilde: JsonInt,
    pub units: Vec<JsonInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResiduesReport {
    pub mtilde: JsonInt,
    pub n: JsonInt,
    pub gamma: JsonInt,
    pub residues: Vec<JsonInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitImageReport {
    pub mtilde: JsonInt,
    pub gamma: JsonInt,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub mtilde: JsonInt,
    pub n: JsonInt,
    pub gamma: JsonInt,
    pub k: JsonInt,
    pub l: JsonInt,
    pub bound: i64,
    pub result: SearchOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurrogateSummary {
    pub range: SweepRange,
    pub probes: usize,
    pub found: usize,
    pub missing: Vec<oracle::WallProbe>,
    pub violations: Vec<oracle::OrthogonalityViolation>,
}

impl From<SurrogateReport> for SurrogateSummary {
    fn from(r: SurrogateReport) -> Self {
        SurrogateSummary {
            range: r.range,
            probes: r.probes.len(),
            found: r.found(),
            missing: r.missing().cloned().collect(),
            violations: r.violations,
        }
    }
}

fn ji(v: &BigInt) -> JsonInt {
    JsonInt(v.clone())
}

fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().map(ji).collect()
}

/// Runs a parsed command and returns what to print on stdout.
pub fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Info(a) => {
            let dt = a.deformation_type()?;
            emit(a.format, &info(&dt)?)
        }
        Command::Components(a) => emit(a.family.format, &components(a)?),
        Command::Polarizations(a) => emit(a.family.format, &polarizations(a)?),
        Command::Walls(a) => emit(a.format, &walls(&a.deformation_type()?)?),
        Command::Heegner(a) => {
            let dt = a.family.deformation_type()?;
            let pn = polarization(&dt, a)?;
            let heegner = avoided_heegner(&dt, &pn)?;
            let report = HeegnerReport {
                deformation_type: dt.to_string(),
                square: ji(&pn.square()),
                n: ji(pn.n()),
                gamma: ji(pn.gamma()),
                heegner,
            };
            emit(a.family.format, &report)
        }
        Command::Compare(a) => {
            let dt = a.family.deformation_type()?;
            let pn = polarization(&dt, a)?;
            let reports = compare_images(&dt, &pn)?;
            let report = CompareReport {
                deformation_type: dt.to_string(),
                square: ji(&pn.square()),
                n: ji(pn.n()),
                gamma: ji(pn.gamma()),
                verdict: overall_verdict(&reports),
                reports,
            };
            emit(a.family.format, &report)
        }
        Command::Oracle { kind } => run_oracle(kind),
    }
}

fn run_oracle(kind: &OracleCommand) -> Result<String, Failure> {
    match kind {
        OracleCommand::Units(a) => {
            let mt = a.deformation_type()?.mtilde()?;
            let units = oracle::brute_units(&mt)?;
            emit(a.format, &UnitsReport { mtilde: ji(&mt), units: ints(&units) })
        }
        OracleCommand::Residues(a) => {
            let dt = a.family.deformation_type()?;
            let mt = dt.mtilde()?;
            let pn = polarization(&dt, a)?;
            let residues = oracle::brute_residues(&mt, pn.n(), pn.gamma())?;
            let report = ResiduesReport {
                mtilde: ji(&mt),
                n: ji(pn.n()),
                gamma: ji(pn.gamma()),
                residues: ints(&residues),
            };
            emit(a.family.format, &report)
        }
        OracleCommand::UnitImage { family, div } => {
            let mt = family.deformation_type()?.mtilde()?;
            let size = oracle::brute_unit_image(&mt, div)?;
            emit(family.format, &UnitImageReport { mtilde: ji(&mt), gamma: ji(div), size })
        }
        OracleCommand::Search { polarization: a, k, l, bound } => {
            let dt = a.family.deformation_type()?;
            let mt = dt.mtilde()?;
            let pn = polarization(&dt, a)?;
            let result = oracle::surrogate_wall_search(&mt, pn.n(), pn.gamma(), k, l, *bound)?;
            let report = SearchReport {
                mtilde: ji(&mt),
                n: ji(pn.n()),
                gamma: ji(pn.gamma()),
                k: ji(k),
                l: ji(l),
                bound: *bound,
                result,
            };
            emit(a.family.format, &report)
        }
        OracleCommand::Census(a) => emit(a.format, &oracle::census_sweep(&a.range()?)?),
        OracleCommand::Surrogate(a) => {
            let summary: SurrogateSummary = oracle::surrogate_sweep(&a.range()?)?.into();
            emit(a.format, &summary)
        }
    }
}

fn info(dt: &DeformationType) -> Result<InfoReport, Error> {
    let s = monodromy_summary(dt);
    let mtilde = dt.family().has_cyclic_mtilde().then(|| dt.mtilde()).transpose()?;
    Ok(InfoReport {
        deformation_type: s.deformation_type,
        lattice: s.lattice,
        discriminant_group: s.discriminant_group,
        discriminant: dt.discriminant_group(),
        monodromy: s.monodromy,
        mtilde: mtilde.map(JsonInt),
    })
}

fn components(a: &PolarizationArgs) -> Result<ComponentsReport, Error> {
    let dt = a.family.deformation_type()?;
    let pn = polarization(&dt, a)?;
    require_existence(&dt, &pn)?;
    let cyclic = dt.family().has_cyclic_mtilde();
    Ok(ComponentsReport {
        deformation_type: dt.to_string(),
        square: ji(&pn.square()),
        n: ji(pn.n()),
        gamma: ji(pn.gamma()),
        polarization_types: JsonInt(count_polarization_types(&dt, &pn)?),
        components_per_type: JsonInt(count_components(&dt, pn.gamma())?),
        otilde_orbits_per_type: if cyclic { Some(JsonInt(count_otilde_orbits(pn.gamma())?)) } else { None },
        types: if cyclic { Some(enumerate_components(&dt, &pn)?) } else { None },
    })
}

fn polarizations(a: &CensusArgs) -> Result<PolarizationsReport, Error> {
    let dt = a.family.deformation_type()?;
    // Validates the square.
    let base = PolarizationNumerics::from_square(&dt, &a.square, 1)?;
    let n = base.n().clone();
    let gammas: Vec<BigInt> = match (&a.div, dt.family()) {
        (Some(g), _) => vec![g.clone()],
        (None, Family::Og6) => vec![1.into(), 2.into()],
        (None, Family::Og10) => vec![1.into(), 3.into()],
        (None, _) => {
            let g = num_integer::Integer::gcd(&(dt.mtilde()? * 2u32), &(&n * 2u32));
            let g = g.to_u64().ok_or_else(|| {
                Error::SearchRange(format!("gcd(2m̃, 2n) = {g} is too large to list its divisors; pass --div"))
            })?;
            (1..=g).filter(|d| g % d == 0).map(BigInt::from).collect()
        }
    };
    let mut rows = Vec::with_capacity(gammas.len());
    for gamma in gammas {
        let pn = PolarizationNumerics::new(&dt, n.clone(), gamma.clone())?;
        let exists = exists_polarization(&dt, &pn)?;
        let types = count_polarization_types(&dt, &pn)?;
        let comps = if exists { count_components(&dt, &gamma)? } else { BigInt::zero() };
        rows.push(PolarizationRow {
            gamma: JsonInt(gamma),
            exists,
            polarization_types: JsonInt(types),
            components_per_type: JsonInt(comps),
        });
    }
    Ok(PolarizationsReport {
        deformation_type: dt.to_string(),
        square: ji(&a.square),
        n: JsonInt(n),
        rows,
    })
}

fn walls(dt: &DeformationType) -> Result<WallsReport, Error> {
    if dt.family().has_cyclic_mtilde() {
        Ok(WallsReport {
            deformation_type: dt.to_string(),
            mtilde: Some(JsonInt(dt.mtilde()?)),
            walls: Some(enumerate_wall_types(dt)?),
            og_walls: None,
        })
    } else {
        Ok(WallsReport {
            deformation_type: dt.to_string(),
            mtilde: None,
            walls: None,
            og_walls: Some(og_wall_list(dt)?),
        })
    }
}

// Rendering.

/// Table rendering of a report.
pub trait Render {
    fn render(&self) -> String;
}

fn emit<T: Serialize + Render>(format: Format, report: &T) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Table => Ok(report.render()),
    }
}

fn header(pairs: &[(&str, String)]) -> String {
    let w = pairs.iter().map(|(k, _)| table::width(k)).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k}{}  {v}\n", " ".repeat(w - table::width(k))))
        .collect()
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(", ")
}

impl Render for InfoReport {
    fn render(&self) -> String {
        let mut pairs = vec![
            ("deformation type", self.deformation_type.clone()),
            ("lattice", self.lattice.clone()),
            ("discriminant group", self.discriminant_group.clone()),
            ("monodromy", self.monodromy.clone()),
        ];
        if let Some(mt) = &self.mtilde {
            pairs.push(("m̃", mt.0.to_string()));
        }
        header(&pairs)
    }
}

impl Render for ComponentsReport {
    fn render(&self) -> String {
        let mut out = header(&[
            ("deformation type", self.deformation_type.clone()),
            ("square", self.square.0.to_string()),
            ("divisibility", self.gamma.0.to_string()),
            ("polarization types", self.polarization_types.0.to_string()),
            ("components per type", self.components_per_type.0.to_string()),
        ]);
        if let Some(types) = &self.types {
            let mut t = Table::new(["type", "component", "b mod γ", "h_*"]);
            for ty in types {
                for (i, c) in ty.components.iter().enumerate() {
                    t.row([ty.t_index.to_string(), i.to_string(), join(&c.residues_b), join(&c.h_star)]);
                }
            }
            out.push('\n');
            out.push_str(&t.render());
        }
        out
    }
}

impl Render for PolarizationsReport {
    fn render(&self) -> String {
        let mut out = header(&[
            ("deformation type", self.deformation_type.clone()),
            ("square", self.square.0.to_string()),
        ]);
        let mut t = Table::new(["γ", "exists", "types", "components/type"]);
        for r in &self.rows {
            t.row([
                r.gamma.0.to_string(),
                if r.exists { "yes" } else { "no" }.to_string(),
                r.polarization_types.0.to_string(),
                r.components_per_type.0.to_string(),
            ]);
        }
        out.push('\n');
        out.push_str(&t.render());
        out
    }
}

impl Render for WallsReport {
    fn render(&self) -> String {
        let mut out = header(&[("deformation type", self.deformation_type.clone())]);
        out.push('\n');
        if let Some(walls) = &self.walls {
            let mut t = Table::new(["k", "c", "l", "κ²", "d", "div κ"]);
            for w in walls {
                t.row([&w.k, &w.c, &w.l, &w.square(), &w.d, &w.div_kappa].map(BigInt::to_string));
            }
            out.push_str(&t.render());
        }
        if let Some(og) = &self.og_walls {
            let mut t = Table::new(["κ²", "div κ"]);
            for w in og {
                let div = w.divisibility.as_ref().map_or("any".to_string(), BigInt::to_string);
                t.row([w.square.to_string(), div]);
            }
            out.push_str(&t.render());
        }
        out
    }
}

impl Render for HeegnerReport {
    fn render(&self) -> String {
        let mut out = header(&[
            ("deformation type", self.deformation_type.clone()),
            ("square", self.square.0.to_string()),
            ("divisibility", self.gamma.0.to_string()),
        ]);
        let mut t = Table::new(["k", "c", "l", "discriminant"]);
        for h in &self.heegner {
            t.row([&h.wall.k, &h.wall.c, &h.wall.l, &h.disc].map(BigInt::to_string));
        }
        out.push('\n');
        out.push_str(&t.render());
        out
    }
}

impl Render for CompareReport {
    fn render(&self) -> String {
        let mut out = header(&[
            ("deformation type", self.deformation_type.clone()),
            ("square", self.square.0.to_string()),
            ("divisibility", self.gamma.0.to_string()),
            ("verdict", self.verdict.as_str().to_string()),
        ]);
        let mut t = Table::new(["unit", "action", "broken", "checked", "deck bound", "witness", "verdict"]);
        for r in &self.reports {
            let witness = r.witness.as_ref().map_or("-".to_string(), |w| {
                format!("(k={}, c={}) -> (k'={}, c'={})", w.wall.k, w.wall.c, w.image.k, w.image.c)
            });
            let deck = format!("{}{}", r.deck_group_bound, if r.deck_bound_exact { "" } else { " (bound)" });
            let action = match r.component_action {
                hk_core::ComponentAction::Fix => "fix",
                hk_core::ComponentAction::Swap => "swap",
            };
            t.row([
                r.unit.to_string(),
                action.to_string(),
                r.broken_total.to_string(),
                r.walls_checked.to_string(),
                deck,
                witness,
                r.verdict.as_str().to_string(),
            ]);
        }
        out.push('\n');
        out.push_str(&t.render());
        out
    }
}

impl Render for UnitsReport {
    fn render(&self) -> String {
        let units: Vec<BigInt> = self.units.iter().map(|u| u.0.clone()).collect();
        header(&[("m̃", self.mtilde.0.to_string()), ("units", join(&units))])
    }
}

impl Render for ResiduesReport {
    fn render(&self) -> String {
        let residues: Vec<BigInt> = self.residues.iter().map(|u| u.0.clone()).collect();
        header(&[
            ("m̃", self.mtilde.0.to_string()),
            ("n", self.n.0.to_string()),
            ("γ", self.gamma.0.to_string()),
            ("residues", if residues.is_empty() { "none".into() } else { join(&residues) }),
        ])
    }
}

impl Render for UnitImageReport {
    fn render(&self) -> String {
        header(&[
            ("m̃", self.mtilde.0.to_string()),
            ("γ", self.gamma.0.to_string()),
            ("unit image", self.size.to_string()),
        ])
    }
}

fn vector(v: &[i64; 5]) -> String {
    format!("({}, {}, {}, {}, {})", v[0], v[1], v[2], v[3], v[4])
}

impl Render for SearchReport {
    fn render(&self) -> String {
        let mut pairs = vec![
            ("m̃", self.mtilde.0.to_string()),
            ("n", self.n.0.to_string()),
            ("γ", self.gamma.0.to_string()),
            ("k", self.k.0.to_string()),
            ("l", self.l.0.to_string()),
        ];
        match &self.result {
            SearchOutcome::Found(w) => {
                pairs.push(("h", vector(&w.h)));
                pairs.push(("κ", vector(&w.kappa)));
            }
            SearchOutcome::Exhausted { bound } => {
                pairs.push(("result", format!("search exhausted within bound {bound}")));
            }
        }
        header(&pairs)
    }
}

impl Render for CensusReport {
    fn render(&self) -> String {
        let mut out = header(&[
            ("m̃ ≤", self.range.mt_max.to_string()),
            ("n ≤", self.range.n_max.to_string()),
            ("γ ≤", self.range.gamma_max.to_string()),
            ("configurations", self.configurations.to_string()),
            ("nonempty", self.nonempty.to_string()),
            ("mismatches", self.mismatches.len().to_string()),
        ]);
        if !self.mismatches.is_empty() {
            let mut t = Table::new(["type", "n", "γ", "check", "scan", "closed form"]);
            for m in &self.mismatches {
                t.row([
                    m.deformation_type.clone(),
                    m.n.to_string(),
                    m.gamma.to_string(),
                    m.check.clone(),
                    m.expected.clone(),
                    m.actual.clone(),
                ]);
            }
            out.push('\n');
            out.push_str(&t.render());
        }
        out
    }
}

impl Render for SurrogateSummary {
    fn render(&self) -> String {
        let mut out = header(&[
            ("m̃ ≤", self.range.mt_max.to_string()),
            ("n ≤", self.range.n_max.to_string()),
            ("bound", self.range.search_bound.to_string()),
            ("wall types probed", self.probes.to_string()),
            ("witnesses found", self.found.to_string()),
            ("orthogonal with γ ∤ k", self.violations.len().to_string()),
        ]);
        if !self.missing.is_empty() {
            let mut t = Table::new(["m̃", "n", "γ", "k", "c", "l", "div κ"]);
            for p in &self.missing {
                t.row([
                    p.mt.to_string(),
                    p.n.to_string(),
                    p.gamma.to_string(),
                    p.wall.k.to_string(),
                    p.wall.c.to_string(),
                    p.wall.l.to_string(),
                    p.wall.div_kappa.to_string(),
                ]);
            }
            out.push_str("\nexhausted within bound:\n");
            out.push_str(&t.render());
        }
        out
    }
}
