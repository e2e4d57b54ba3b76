//! Cross-check closed-form results against direct environment sampling.
//!
//! Two independent checks, both with a shared statistical budget of
//! `5 / sqrt(n)` per comparison:
//!
//! 1. The environment's characteristic function has a closed form; here
//!    it is re-estimated by averaging `exp(i * omega * x * tau)` over
//!    frequencies drawn from the two-peak Gaussian mixture itself.
//! 2. The decoder-side Bell-state coherences have closed forms; here
//!    each encoded state is rebuilt by sampling random phase kicks on
//!    both qubits through the full encode/decode timeline.
//!
//! Run with: `cargo run --example monte_carlo_validation`

use dephasim::rng::derive_seed;
use dephasim::sdc::{dilation_oracle, effective_coherences, EncodingOp, NoiseSchedule};
use dephasim::spectra::TimeGrid;
use dephasim::{RunConfig, SdcPreset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = RunConfig::default();
    let spec = &config.spectrum_a;
    let n_samples: u64 = 200_000;
    let budget = 5.0 / (n_samples as f64).sqrt();
    let grid = TimeGrid::scaled_for_pair(&config.spectrum_a, &config.spectrum_b, 1.0, 64)?;

    println!("check 1: sampled characteristic function vs closed form");
    println!("  {n_samples} samples per point, budget {budget:.5}");
    println!();
    println!("{:>10} {:>12} {:>12} {:>10}", "t [ps]", "|closed|", "|sampled|", "error");
    for step in 0..=5 {
        let i = step * (grid.n_points() - 1) / 5;
        let tau = grid.time_at(i);
        let exact = spec.characteristic_fn(tau)?;
        let sampled =
            spec.monte_carlo_characteristic(tau, n_samples, derive_seed(config.seeds.mc, i as u64))?;
        let error = (sampled - exact).norm();
        println!(
            "{:>10.4} {:>12.6} {:>12.6} {:>10.6}{}",
            tau * 1e12,
            exact.norm(),
            sampled.norm(),
            error,
            if error < budget { "" } else { "  <-- outside budget" }
        );
    }

    println!();
    println!("check 2: sampled encoded states vs closed-form coherences");
    let schedule = NoiseSchedule::preset(SdcPreset::C);
    let t = grid.t_max() / 2.0;
    let (h, k) = effective_coherences(&config.spectrum_a, &config.spectrum_b, &schedule, t)?;
    println!("  at t = {:.4} ps: closed-form h = {h:.6}, k = {k:.6}", t * 1e12);
    for index in 0..4u8 {
        let op = EncodingOp::new(index)?;
        let state = dilation_oracle(
            &config.spectrum_a,
            &config.spectrum_b,
            &schedule,
            op,
            t,
            n_samples,
            derive_seed(config.seeds.mc, 100 + index as u64),
        )?;
        // Flip encodings move the coherence to the inner Bell sector.
        let (i, j, closed) = if op.flips_polarization() { (1, 2, h) } else { (0, 3, k) };
        let sampled = 2.0 * state.entry(i, j).norm();
        let error = (sampled - closed).abs();
        println!(
            "  encoding {index}: sampled coherence {sampled:.6}, closed form {closed:.6}, \
             error {error:.6}{}",
            if error < budget { "" } else { "  <-- outside budget" }
        );
    }

    println!();
    println!("both routes agree within the sampling budget");
    Ok(())
}
