use std::process::{Command, Output};

use hk_cli::{
    CompareReport, ComponentsReport, HeegnerReport, InfoReport, PolarizationsReport, ResiduesReport, SearchReport,
    SurrogateSummary, UnitImageReport, UnitsReport, WallsReport,
};
use hk_core::oracle::CensusReport;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn hk(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hk"))
        .args(args.split_whitespace())
        .output()
        .expect("run hk")
}

fn stdout(args: &str) -> String {
    let out = hk(args);
    assert_eq!(out.status.code(), Some(0), "hk {args}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &str) -> Value {
    serde_json::from_str(&stdout(&format!("{args} --format json"))).unwrap()
}

/// Parses the JSON output into `T` and checks that rendering `T` again gives
/// the same document.
fn round_trip<T: DeserializeOwned + Serialize>(args: &str) -> T {
    let value = json(args);
    let parsed: T = serde_json::from_value(value.clone()).unwrap();
    assert_eq!(serde_json::to_value(&parsed).unwrap(), value, "hk {args}");
    parsed
}

#[test]
fn exit_codes() {
    let matrix = [
        ("info --family og10", 0),
        ("info --family k3m --m 2", 0),
        ("info --family k3m", 2),
        ("info --family og6 --m 3", 2),
        ("info --family k3m --m 1", 2),
        ("info --family k3x --m 2", 2),
        ("info", 2),
        ("frobnicate", 2),
        ("components --family k3m --m 145 --square 288 --div 12", 0),
        ("components --family og6 --square 4 --div 2", 0),
        ("components --family k3m --m 2 --square 2 --div 2", 1),
        ("components --family og10 --square 2 --div 3", 1),
        ("components --family k3m --m 2 --square 3 --div 1", 2),
        ("components --family k3m --m 2 --square -2 --div 1", 2),
        ("components --family k3m --m 2 --square 2 --div 4", 2),
        ("components --family og6 --square 4 --div 3", 2),
        ("polarizations --family k3m --m 7 --square 12", 0),
        ("walls --family k3m --m 2", 0),
        ("walls --family og6", 0),
        ("heegner --family k3m --m 2 --square 2 --div 1", 0),
        ("heegner --family k3m --m 2 --square 2 --div 2", 1),
        ("heegner --family og6 --square 4 --div 2", 2),
        ("compare --family k3m --m 7 --square 2 --div 1", 0),
        ("compare --family og10 --square 2 --div 1", 2),
        ("oracle units --family k3m --m 7", 0),
        ("oracle units --family og6", 2),
        ("oracle residues --family k3m --m 2 --square 6 --div 2", 0),
        ("oracle unit-image --family k3m --m 7 --div 5", 2),
        ("oracle search --family k3m --m 2 --square 6 --div 2 --k 0 --l -1 --bound 4", 0),
        ("oracle search --family k3m --m 2 --square 6 --div 2 --k 0 --l -1 --bound 0", 2),
        ("oracle census --mt-max 0", 2),
        ("--help", 0),
        ("--version", 0),
    ];
    for (args, code) in matrix {
        let out = hk(args);
        assert_eq!(out.status.code(), Some(code), "hk {args}: {}", String::from_utf8_lossy(&out.stderr));
        if code == 1 {
            assert!(String::from_utf8_lossy(&out.stderr).contains("no such polarization type"));
        }
    }
}

#[test]
fn info_rows() {
    let og10: InfoReport = round_trip("info --family og10");
    assert_eq!(og10.monodromy, "O⁺(Λ)");
    assert!(og10.mtilde.is_none());
    let k3: InfoReport = round_trip("info --family k3m --m 2");
    assert_eq!(k3.discriminant_group, "Z/2Z");
    assert!(stdout("info --family kumm --m 3").contains("Z/8Z"));
}

#[test]
fn components_report() {
    let r: ComponentsReport = round_trip("components --family k3m --m 145 --square 288 --div 12");
    assert_eq!(r.polarization_types.0, 1.into());
    assert_eq!(r.components_per_type.0, 2.into());
    assert_eq!(r.types.as_ref().unwrap()[0].components.len(), 2);
    let og: ComponentsReport = round_trip("components --family og6 --square 4 --div 2");
    assert_eq!((og.polarization_types.0.clone(), og.components_per_type.0.clone()), (1.into(), 1.into()));
    assert!(og.types.is_none());
    let table = stdout("components --family k3m --m 145 --square 288 --div 12");
    assert!(table.contains("1, 11") && table.contains("24, 264"));
}

#[test]
fn polarization_census() {
    let r: PolarizationsReport = round_trip("polarizations --family og10 --square 12");
    let exists: Vec<bool> = r.rows.iter().map(|row| row.exists).collect();
    assert_eq!(exists, [true, true]);
    let r: PolarizationsReport = round_trip("polarizations --family k3m --m 2 --square 2");
    assert_eq!(r.rows.len(), 2);
    assert!(r.rows[0].exists && !r.rows[1].exists);
}

#[test]
fn walls_report() {
    let r: WallsReport = round_trip("walls --family k3m --m 2");
    assert_eq!(r.walls.unwrap().len(), 3);
    let table = stdout("walls --family k3m --m 2");
    assert_eq!(table.lines().filter(|l| l.starts_with(['0', '1'])).count(), 3);
    let og: WallsReport = round_trip("walls --family og10");
    assert_eq!(og.og_walls.unwrap().len(), 14);
}

#[test]
fn heegner_discriminants() {
    let r: HeegnerReport = round_trip("heegner --family k3m --m 2 --square 2 --div 1");
    let discs: Vec<i64> = r.heegner.iter().map(|h| i64::try_from(&h.disc).unwrap()).collect();
    assert_eq!(discs, [8, 10, 2]);
    let v = json("heegner --family k3m --m 2 --square 2 --div 1");
    assert_eq!(v["heegner"][0]["disc"], 8);
}

#[test]
fn compare_verdicts() {
    let r: CompareReport = round_trip("compare --family k3m --m 7 --square 2 --div 1");
    assert_eq!(serde_json::to_value(r.verdict).unwrap(), "not-G-invariant");
    assert!(stdout("compare --family k3m --m 7 --square 2 --div 1").contains("not-G-invariant"));
    let r: CompareReport = round_trip("compare --family k3m --m 145 --square 288 --div 12");
    assert_eq!(r.verdict.as_str(), "different-images");
}

#[test]
fn large_integers_are_strings() {
    let m = "100000000000000000000001";
    let v = json(&format!("info --family k3m --m {m}"));
    assert_eq!(v["mtilde"], "100000000000000000000000");
    let v = json("info --family k3m --m 9223372036854775808");
    assert_eq!(v["mtilde"], 9223372036854775807i64);
    let r: ComponentsReport = round_trip(&format!("components --family k3m --m {m} --square 2 --div 1"));
    assert_eq!(r.polarization_types.0, 1.into());
    let r: PolarizationsReport = round_trip(&format!("polarizations --family k3m --m {m} --square 4"));
    assert_eq!(r.rows.len(), 3);
}

#[test]
fn oracle_pass_through() {
    let u: UnitsReport = round_trip("oracle units --family k3m --m 145");
    let units: Vec<i64> = u.units.iter().map(|x| i64::try_from(&x.0).unwrap()).collect();
    assert_eq!(units, [1, 127, 161, 287]);
    let r: ResiduesReport = round_trip("oracle residues --family k3m --m 145 --square 288 --div 12");
    assert_eq!(r.residues.len(), 4);
    let i: UnitImageReport = round_trip("oracle unit-image --family k3m --m 7 --div 4");
    assert_eq!(i.size, 2);
    let s: SearchReport = round_trip("oracle search --family k3m --m 2 --square 6 --div 2 --k 0 --l -1 --bound 4");
    assert!(s.result.witness().is_some());
    let s: SearchReport = round_trip("oracle search --family k3m --m 2 --square 6 --div 2 --k 1 --l -5 --bound 3");
    assert!(s.result.witness().is_none());
    assert!(stdout("oracle search --family k3m --m 2 --square 6 --div 2 --k 1 --l -5 --bound 3").contains("exhausted"));
    let c: CensusReport = round_trip("oracle census --mt-max 8 --n-max 8");
    assert!(c.passed());
    let s: SurrogateSummary = round_trip("oracle surrogate --mt-max 2 --n-max 3 --bound 4");
    assert!(s.violations.is_empty());
    assert_eq!(s.found + s.missing.len(), s.probes);
}
