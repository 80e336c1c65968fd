use dini::monotonicity::bound_check;
use dini::suite::{report_suite, SuiteConfig, SuiteReport, SUITE_KEYS};
use dini::{Error, GridSpec, Order, PropertyReport};

fn small_config() -> SuiteConfig {
    SuiteConfig {
        nu_grid: vec![0.0, 1.5],
        mu_offsets: vec![0.0, 1.0],
        grid_points: 6,
        corput_pairs: 10,
        series_orders: 20,
        ..SuiteConfig::default()
    }
}

#[test]
fn suite_keys_order_and_round_trip() {
    let r = report_suite(&small_config()).unwrap();
    let keys: Vec<&str> = r.entries.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(keys, SUITE_KEYS);
    assert!(r.passed(), "{}", r.to_json());
    assert_eq!(r.exit_code(), 0);
    let js = r.to_json();
    assert_eq!(SuiteReport::from_json(&js).unwrap(), r);
    let second = report_suite(&small_config()).unwrap().to_json();
    assert_eq!(js, second);
}

#[test]
fn default_suite_passes() {
    let r = report_suite(&SuiteConfig::default()).unwrap();
    for (k, rep) in &r.entries {
        assert!(rep.passed(), "{k}: {:?}", rep.violations.first());
    }
    assert_eq!(r.get("C2").unwrap().verdict, dini::Verdict::PassWithNotes);
    assert_eq!(r.get("T1").unwrap().verdict, dini::Verdict::Pass);
}

#[test]
fn invalid_configs() {
    let empty = SuiteConfig {
        nu_grid: vec![],
        ..SuiteConfig::default()
    };
    assert!(matches!(report_suite(&empty), Err(Error::Domain(_))));
    let bad = SuiteConfig {
        nu_grid: vec![-1.5],
        ..SuiteConfig::default()
    };
    assert!(report_suite(&bad).is_err());
    let neg = SuiteConfig {
        mu_offsets: vec![-0.5],
        ..SuiteConfig::default()
    };
    assert!(report_suite(&neg).is_err());
}

#[test]
fn report_json_schema() {
    let r = bound_check(Order::new(1.0).unwrap(), &GridSpec::new("g", 0.1, 1.0, 4)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["grid", "min_margin", "name", "notes", "params", "verdict", "violations"]);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(PropertyReport::from_json(&r.to_json()).unwrap(), r);
}
