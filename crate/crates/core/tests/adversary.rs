use std::sync::Arc;

use num_bigint::BigUint;

use rankmetric::adversary::{auto_tau, build_adversary, verify_adversary, Strategy};
use rankmetric::codes::{Family, RankCode};
use rankmetric::descriptor::{CodeDescriptor, ExperimentConfig, FieldSpec, OutputFormat, ReportJson, TauSpec};
use rankmetric::oracle::EnumGuard;
use rankmetric::FieldTower;

fn gab(p: u32, n: usize, k: usize) -> RankCode {
    RankCode::new(Arc::new(FieldTower::new(p, 1, n, n).unwrap()), Family::Gabidulin, k, 1, None).unwrap()
}

#[test]
fn builders_agree_with_the_oracle() {
    let guard = EnumGuard::default();
    let cases = [
        (gab(2, 4, 2), Strategy::Trace),
        (gab(2, 4, 2), Strategy::Pigeonhole),
        (gab(2, 3, 2), Strategy::Trinomial),
        (gab(2, 5, 2), Strategy::PigeonholeGen),
        (gab(3, 4, 2), Strategy::Trace),
        (gab(2, 6, 2), Strategy::TraceGen),
    ];
    for (code, strategy) in cases {
        let tau = auto_tau(&code, strategy).unwrap();
        let rep = build_adversary(&code, strategy, tau, &guard).unwrap();
        assert!(rep.valid(), "{strategy} on {}: {:?}", code.tag(), rep.witnesses);
        let checked = verify_adversary(&code, &rep, true, &guard).unwrap();
        assert!(checked.valid(), "{strategy} on {}", code.tag());
        let count = checked.oracle_count.unwrap();
        assert!(count >= BigUint::from(rep.list.len()));
        assert!(BigUint::from(rep.list.len()) >= rep.claimed_bound);
    }
}

#[test]
fn report_round_trips_through_json() {
    let spec: FieldSpec = "2^1:4:4".parse().unwrap();
    let config = ExperimentConfig {
        code: CodeDescriptor::gabidulin(&spec, 2, 1),
        strategy: Strategy::Trace,
        tau: TauSpec::Fixed(2),
        oracle: false,
        format: OutputFormat::Json,
    };
    let code = config.code.build().unwrap();
    let rep = build_adversary(&code, Strategy::Trace, 2, &EnumGuard::default()).unwrap();
    let json = ReportJson::new(&config, &code, &rep);
    let text = json.to_json_pretty();
    let back = ReportJson::from_json(&text).unwrap();
    assert_eq!(back.to_json_pretty(), text);
    assert_eq!(back.to_report().unwrap(), rep);
}

#[test]
fn tiny_guard_refuses_the_oracle() {
    let code = gab(2, 4, 2);
    let rep = build_adversary(&code, Strategy::Trace, 2, &EnumGuard::default()).unwrap();
    assert!(verify_adversary(&code, &rep, true, &EnumGuard::new(100u32)).is_err());
}
