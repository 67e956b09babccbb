//! Regenerates the bundled sample price series and its manifest.
//!
//! ```text
//! cargo run -p silence-core --example generate_sample
//! ```
//!
//! Log-returns follow a GARCH(1,1) recursion with Student-t innovations, which
//! gives the volatility clustering and fat tails of daily index data.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StudentT;
use silence_core::surrogate::{trading_days, GENERATOR};

const SEED: u64 = 20_081_031;
const ROWS: usize = 1000;
const START_PRICE: f64 = 1000.0;
const OMEGA: f64 = 2.0e-6;
const ARCH: f64 = 0.09;
const GARCH: f64 = 0.89;
const DOF: f64 = 4.0;

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    fs::create_dir_all(&dir).expect("create data dir");

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let student = StudentT::new(DOF).unwrap();
    // unit-variance innovations
    let scale = ((DOF - 2.0) / DOF).sqrt();
    let dates = trading_days(chrono::NaiveDate::from_ymd_opt(2004, 1, 2).unwrap(), ROWS);

    let mut variance = OMEGA / (1.0 - ARCH - GARCH);
    let mut log_price = START_PRICE.ln();
    let mut closes = Vec::with_capacity(ROWS);
    for i in 0..ROWS {
        if i > 0 {
            let shock = variance.sqrt() * scale * rng.sample(student);
            log_price += shock;
            variance = OMEGA + ARCH * shock * shock + GARCH * variance;
        }
        // keep exactly what is written to disk
        let close: f64 = format!("{:.4}", log_price.exp()).parse().unwrap();
        closes.push(close);
    }

    let mut csv = String::from("date,close\n");
    for (d, c) in dates.iter().zip(&closes) {
        writeln!(csv, "{d},{c:.4}").unwrap();
    }
    fs::write(dir.join("sample_prices.csv"), csv).expect("write sample");

    let returns: Vec<f64> = closes.windows(2).map(|p| (p[1] / p[0]).ln()).collect();
    let n = returns.len() as f64;
    let mean = returns.iter().sum::<f64>() / n;
    let sd = (returns.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / (n - 1.0)).sqrt();
    let min = closes.iter().copied().fold(f64::INFINITY, f64::min);
    let max = closes.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mut manifest = String::new();
    writeln!(
        manifest,
        "# bundled synthetic sample, written by examples/generate_sample.rs"
    )
    .unwrap();
    writeln!(manifest, "generator={GENERATOR}").unwrap();
    writeln!(
        manifest,
        "model=garch11-student-t omega={OMEGA} arch={ARCH} garch={GARCH} dof={DOF}"
    )
    .unwrap();
    writeln!(manifest, "seed={SEED}").unwrap();
    writeln!(manifest, "rows={ROWS}").unwrap();
    writeln!(manifest, "first_date={}", dates[0]).unwrap();
    writeln!(manifest, "last_date={}", dates[ROWS - 1]).unwrap();
    writeln!(manifest, "first_close={:.4}", closes[0]).unwrap();
    writeln!(manifest, "last_close={:.4}", closes[ROWS - 1]).unwrap();
    writeln!(manifest, "min_close={min:.4}").unwrap();
    writeln!(manifest, "max_close={max:.4}").unwrap();
    writeln!(manifest, "mean_log_return={mean:.10}").unwrap();
    writeln!(manifest, "sd_log_return={sd:.10}").unwrap();
    fs::write(dir.join("sample_manifest.txt"), manifest).expect("write manifest");
}
