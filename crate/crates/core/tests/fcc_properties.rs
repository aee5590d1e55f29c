use bodylink_core::fcc::{fcc_limit, field_at, limit_table, margin_factor, FieldDecayModel};
use proptest::prelude::*;

#[test]
fn rows_cover_table_without_gaps() {
    let rows = limit_table().rows();
    assert_eq!(rows.len(), 7);
    for w in rows.windows(2) {
        assert_eq!(w[0].f_high, w[1].f_low);
    }
    assert_eq!(rows.last().unwrap().f_high, f64::INFINITY);
}

proptest! {
    #[test]
    fn margin_is_inverse_in_anchor_field(log_f in 3.96..9.5f64, scale in 1e-3..1e3f64) {
        let f = 10f64.powf(log_f);
        let m = FieldDecayModel::default();
        let ratio = margin_factor(&m, f).unwrap() / margin_factor(&m.scaled(scale), f).unwrap();
        prop_assert!((ratio / scale - 1.0).abs() < 1e-12);
    }

    #[test]
    fn field_decreases_with_distance(d in 0.01..1e3f64, step in 1e-6..10.0f64, p in 0.1..4.0f64) {
        let m = FieldDecayModel { exponent: p, ..FieldDecayModel::default() };
        prop_assert!(field_at(&m, d + step) < field_at(&m, d));
    }

    #[test]
    fn limits_are_positive(log_f in 3.96..10.0f64) {
        let (limit, distance) = fcc_limit(10f64.powf(log_f)).unwrap();
        prop_assert!(limit > 0.0 && distance > 0.0);
    }
}
