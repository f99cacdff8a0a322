use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wrightsol_core::specfun::{wright_phi, wright_phi_auto, SeriesControl, WrightParams};
use wrightsol_core::{Complex64, Error};
use wrightsol_oracle::brute_series;

const ARGS: [f64; 6] = [0.0, 0.25, -0.25, 0.75, -0.75, 1.0];

fn suite(seed: u64, count: usize) -> Vec<WrightParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let sigma = rng.gen_range(0.1..=0.5);
            let beta = rng.gen_range(-2.0..=3.0);
            let r = rng.gen_range(0.0..=10.0);
            let z = Complex64::from_polar(r, ARGS[i % ARGS.len()] * PI);
            WrightParams { sigma, beta, z }
        })
        .collect()
}

#[test]
fn series_matches_extended_sum() {
    let ctrl = SeriesControl::default();
    let start = std::time::Instant::now();
    let (mut worst, mut flagged) = (0.0f64, 0);
    for p in suite(7, 200) {
        let want = brute_series(p, 30).unwrap().value;
        for got in [wright_phi(&p, &ctrl), wright_phi_auto(&p, &ctrl)] {
            match got {
                Ok(v) => {
                    let rel = (v.value - want).norm() / want.norm();
                    assert!(rel <= 1e-12, "{p:?}: {} vs {want} (rel {rel:e})", v.value);
                    worst = worst.max(rel);
                }
                Err(Error::CatastrophicCancellation { .. }) => flagged += 1,
                Err(e) => panic!("{p:?}: {e}"),
            }
        }
    }
    eprintln!("worst rel err {worst:e}, flagged {flagged}, {:?}", start.elapsed());
}
