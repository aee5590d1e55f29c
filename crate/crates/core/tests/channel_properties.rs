use bodylink_core::channel::{
    build_inter_body, build_intra_body, extra_loss_db, BodyChannelParams, InterBodyParams, LoadSpec,
};
use bodylink_core::circuit::FrequencyGrid;
use proptest::prelude::*;

fn log_slope_db_per_decade(freqs: &[f64], gains_db: &[f64]) -> f64 {
    let xs: Vec<f64> = freqs.iter().map(|f| f.log10()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = gains_db.iter().sum::<f64>() / n;
    let sxy: f64 = xs
        .iter()
        .zip(gains_db)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn eqs_band() -> FrequencyGrid {
    FrequencyGrid::log(1e5, 1e6, 21).unwrap()
}

fn inter_gain(load: LoadSpec, c_c: f64, f: f64) -> f64 {
    let base = BodyChannelParams::default().with_load(load);
    build_inter_body(&InterBodyParams::new(base, c_c))
        .unwrap()
        .gain_at(f)
        .unwrap()
        .norm()
}

#[test]
fn load_ordering_at_100_khz() {
    // Antenna-style coupler into a 50 Ω front end.
    let antenna_like = inter_gain(LoadSpec::resistive(), 0.05e-12, 100e3);
    let resistive = inter_gain(LoadSpec::resistive(), 21e-12, 100e3);
    let capacitive = inter_gain(LoadSpec::capacitive(), 21e-12, 100e3);
    assert!(antenna_like < resistive, "{antenna_like} vs {resistive}");
    assert!(resistive < capacitive, "{resistive} vs {capacitive}");
}

#[test]
fn capacitive_load_is_flat() {
    for params in [
        BodyChannelParams::default(),
        BodyChannelParams::calibrated(),
    ] {
        let sweep = build_intra_body(&params)
            .unwrap()
            .sweep(&eqs_band())
            .unwrap();
        let db = sweep.gain_db();
        let spread = db.iter().cloned().fold(f64::MIN, f64::max)
            - db.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 0.5, "spread {spread}");
    }
}

#[test]
fn resistive_load_rises_20_db_per_decade() {
    let params = BodyChannelParams::default().with_load(LoadSpec::resistive());
    let sweep = build_intra_body(&params)
        .unwrap()
        .sweep(&eqs_band())
        .unwrap();
    let slope = log_slope_db_per_decade(&sweep.freqs, &sweep.gain_db());
    assert!((slope - 20.0).abs() <= 1.0, "slope {slope}");
}

#[test]
fn coupling_equal_to_body_gives_no_extra_loss() {
    let base = BodyChannelParams::default();
    let intra = build_intra_body(&base).unwrap().gain_db_at(500e3).unwrap();
    let inter = build_inter_body(&InterBodyParams::new(base, base.c_body))
        .unwrap()
        .gain_db_at(500e3)
        .unwrap();
    assert!((inter - intra).abs() < 1.0);
}

prop_compose! {
    fn body_params()(
        c_g in 0.1e-12..5e-12f64,
        c_body in 50e-12..300e-12f64,
        r_b in 100.0..1e4f64,
        c_l in 0.2e-12..5e-12f64,
    ) -> BodyChannelParams {
        BodyChannelParams {
            c_g_tx: c_g,
            c_g_rx: c_g,
            c_body,
            r_b,
            load: LoadSpec::Capacitive(c_l),
            ..BodyChannelParams::default()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inter_intra_ratio_matches_closed_form(
        base in body_params(),
        frac in 0.001..1.0f64,
        f in 1e5..1e6f64,
    ) {
        let c_c = frac * base.c_body;
        let intra = build_intra_body(&base).unwrap().gain_db_at(f).unwrap();
        let inter = build_inter_body(&InterBodyParams::new(base, c_c)).unwrap().gain_db_at(f).unwrap();
        let expected = extra_loss_db(c_c, base.c_body).unwrap();
        prop_assert!((inter - intra - expected).abs() < 1.0, "{} vs {}", inter - intra, expected);
    }

    #[test]
    fn inter_gain_increases_with_coupling(
        base in body_params(),
        lo in 0.001..0.99f64,
        step in 0.001..0.5f64,
        f in 1e5..1e6f64,
    ) {
        let hi = (lo + step).min(1.0);
        prop_assume!(hi > lo);
        let g = |frac: f64| build_inter_body(&InterBodyParams::new(base, frac * base.c_body))
            .unwrap().gain_at(f).unwrap().norm();
        prop_assert!(g(lo) < g(hi));
    }
}
