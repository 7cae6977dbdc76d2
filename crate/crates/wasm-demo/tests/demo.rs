use lensmatch_wasm::{gap_table_json, lens_geometry_json, solve_linear_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn geometry_stays_in_lens() {
    let v = parse(lens_geometry_json(2.0, 4, 8, 256).unwrap());
    assert_eq!(v["circles"].as_array().unwrap().len(), 4);
    assert_eq!(v["radii"].as_array().unwrap().len(), 8);
    for p in v["boundary"].as_array().unwrap() {
        let (x, y) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
        let d = ((1.0 - x).hypot(y)).max((1.0 + x).hypot(y));
        assert!((d - 2.0).abs() < 1e-9);
    }
    assert!(lens_geometry_json(1.0, 4, 8, 256).is_err());
}

#[test]
fn solve_canonical_case() {
    let v = parse(solve_linear_json(0.5, 128).unwrap());
    assert!((v["gamma_star"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-9);
    assert_eq!(v["p"], "w");
    assert!((v["zero_controller_cost"].as_f64().unwrap() - 1.5).abs() < 1e-9);
    assert!((v["optimal_cost"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-6);
    assert!(solve_linear_json(0.0, 128).is_err());
}

#[test]
fn gap_rows_decrease() {
    let v = parse(gap_table_json(0.5, 9).unwrap());
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!((rows[0]["norm"].as_f64().unwrap() - 1.5).abs() < 1e-9);
    let ex: Vec<f64> = rows.iter().map(|r| r["excess"].as_f64().unwrap()).collect();
    assert!(ex.iter().all(|&e| e > 0.0));
    assert!(ex.windows(2).all(|w| w[1] <= w[0] + 1e-8));
}
