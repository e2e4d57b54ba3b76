//! End-to-end acceptance checks.  Each test owns one numbered criterion and
//! prints a single `criterion N (<name>): PASS/FAIL` line (visible with
//! `cargo test --test acceptance -- --nocapture`); tolerances are pinned
//! here and nowhere else.

mod common;

use common::{bell_projectors, random_density, trace_product};
use dephasim::channels::{apply_dephasing, capacity_trace, DephasingPair};
use dephasim::config::{table1_rows, RunConfig};
use dephasim::measures::{
    blp_product_bound, classify_combination, coherence_probe_pair, trace_distance_dynamics,
    Markovianity, Side,
};
use dephasim::numerics::{hermitian_eigenvalues, trace_distance, HermitianMatrix};
use dephasim::rng::{derive_seed, CounterRng};
use dephasim::sdc::{
    closed_form_mutual_information, conditional_probabilities, dilation_oracle,
    effective_coherences, mutual_information, simulate_configuration, EncodingOp, NoiseSchedule,
    SdcPreset,
};
use dephasim::spectra::TimeGrid;
use num_complex::Complex64;

fn report(number: u8, name: &str, result: Result<(), String>) {
    match result {
        Ok(()) => println!("criterion {number} ({name}): PASS"),
        Err(message) => {
            println!("criterion {number} ({name}): FAIL — {message}");
            panic!("criterion {number} ({name}) failed: {message}");
        }
    }
}

fn default_setup() -> (RunConfig, TimeGrid) {
    let config = RunConfig::default();
    let grid = config.time_grid().expect("default grid is valid");
    (config, grid)
}

#[test]
fn criterion_01_classification_table() {
    report(1, "classification table", (|| {
        let (config, grid) = default_setup();
        for row in table1_rows() {
            let (spec_a, spec_b) = row.spectra(&config).map_err(|e| e.to_string())?;
            let pair = DephasingPair::new(spec_a, spec_b);
            let measured = classify_combination(&pair, &grid).map_err(|e| e.to_string())?;
            if measured != row.expected {
                return Err(format!(
                    "combination {} classified {:?}, expected {:?}",
                    row.index, measured, row.expected
                ));
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_02_capacity_additivity() {
    report(2, "capacity additivity", (|| {
        let (config, grid) = default_setup();
        for row in table1_rows() {
            let (spec_a, spec_b) = row.spectra(&config).map_err(|e| e.to_string())?;
            let pair = DephasingPair::new(spec_a, spec_b);
            let trace = capacity_trace(&pair, &grid).map_err(|e| e.to_string())?;
            for i in 0..grid.n_points() {
                let residual = (trace.q_ab[i] - (trace.q_a[i] + trace.q_b[i])).abs();
                if residual > 1e-12 {
                    return Err(format!(
                        "combination {}, point {i}: additivity residual {residual}",
                        row.index
                    ));
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_03_hidden_local_memory() {
    report(3, "hidden local memory", (|| {
        let (config, grid) = default_setup();
        for row in table1_rows() {
            if row.index != 3 && row.index != 5 {
                continue;
            }
            let (spec_a, spec_b) = row.spectra(&config).map_err(|e| e.to_string())?;
            let pair = DephasingPair::new(spec_a, spec_b);
            let verdict = classify_combination(&pair, &grid).map_err(|e| e.to_string())?;
            if verdict.global_bcm != Markovianity::Markovian {
                return Err(format!(
                    "combination {}: joint capacity criterion unexpectedly fired",
                    row.index
                ));
            }
            let (bound_a, bound_b) = blp_product_bound(&pair, &grid).map_err(|e| e.to_string())?;
            if bound_a.max(bound_b) <= 0.0 {
                return Err(format!(
                    "combination {}: distinguishability bound vanished ({bound_a}, {bound_b})",
                    row.index
                ));
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_04_probe_dynamics_closed_form() {
    report(4, "probe dynamics closed form", (|| {
        let (config, grid) = default_setup();
        let pair = DephasingPair::new(config.spectrum_a.clone(), config.spectrum_b.clone());
        for (side, spec) in [(Side::A, &pair.spec_a), (Side::B, &pair.spec_b)] {
            let (rho1, rho2) = coherence_probe_pair(side);
            let dynamics =
                trace_distance_dynamics(&rho1, &rho2, &pair, &grid).map_err(|e| e.to_string())?;
            let magnitudes = spec.magnitude_series(&grid);
            for i in 0..grid.n_points() {
                let residual = (dynamics[i] - 0.5 * magnitudes[i]).abs();
                if residual > 1e-10 {
                    return Err(format!(
                        "side {side:?}, point {i}: distance {} vs half-magnitude {} (residual {residual})",
                        dynamics[i],
                        0.5 * magnitudes[i]
                    ));
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_05_coding_score_limits() {
    report(5, "coding score limits", (|| {
        let (config, grid) = default_setup();
        let spec_a = &config.spectrum_a;
        let spec_b = &config.spectrum_b;
        for preset in [SdcPreset::A, SdcPreset::B, SdcPreset::C, SdcPreset::D] {
            let curve =
                simulate_configuration(preset, spec_a, spec_b, &grid).map_err(|e| e.to_string())?;
            if (curve.mutual_info[0] - 2.0).abs() > 1e-12 {
                return Err(format!(
                    "layout {preset}: initial score {} is not 2 bits",
                    curve.mutual_info[0]
                ));
            }
        }

        let tail = grid.n_points() / 20;
        let curve_b = simulate_configuration(SdcPreset::B, spec_a, spec_b, &grid)
            .map_err(|e| e.to_string())?;
        let tail_mean: f64 =
            curve_b.mutual_info[grid.n_points() - tail..].iter().sum::<f64>() / tail as f64;
        if !(1.499..=1.501).contains(&tail_mean) {
            return Err(format!(
                "echo layout tail mean {tail_mean} outside [1.499, 1.501]"
            ));
        }

        let curve_a = simulate_configuration(SdcPreset::A, spec_a, spec_b, &grid)
            .map_err(|e| e.to_string())?;
        let final_a = *curve_a.mutual_info.last().expect("nonempty");
        if (final_a - 1.0).abs() > 1e-3 {
            return Err(format!("one-sided layout final score {final_a} is not 1 bit"));
        }
        Ok(())
    })());
}

#[test]
fn criterion_06_echo_orientation_advantage() {
    report(6, "echo orientation advantage", (|| {
        let (config, grid) = default_setup();
        let memoryless = 0.004;
        let memoryful = 0.390;
        let a_markovian = simulate_configuration(
            SdcPreset::D,
            &config.spectrum_a.with_amp_ratio(memoryless).map_err(|e| e.to_string())?,
            &config.spectrum_b.with_amp_ratio(memoryful).map_err(|e| e.to_string())?,
            &grid,
        )
        .map_err(|e| e.to_string())?;
        let b_markovian = simulate_configuration(
            SdcPreset::D,
            &config.spectrum_a.with_amp_ratio(memoryful).map_err(|e| e.to_string())?,
            &config.spectrum_b.with_amp_ratio(memoryless).map_err(|e| e.to_string())?,
            &grid,
        )
        .map_err(|e| e.to_string())?;

        let mut clearly_better = 0usize;
        for i in 0..grid.n_points() {
            let gap = b_markovian.mutual_info[i] - a_markovian.mutual_info[i];
            if gap < -1e-12 {
                return Err(format!(
                    "point {i}: quiet-message-side orientation loses by {gap}"
                ));
            }
            if gap > 1e-6 {
                clearly_better += 1;
            }
        }
        let needed = grid.n_points() / 100;
        if clearly_better < needed {
            return Err(format!(
                "orientation advantage visible at only {clearly_better} points (need {needed})"
            ));
        }
        Ok(())
    })());
}

#[test]
fn criterion_07_information_closed_form() {
    report(7, "information closed form", (|| {
        for i in 0..=100 {
            for j in 0..=100 {
                let h = i as f64 / 100.0;
                let k = j as f64 / 100.0;
                let table = conditional_probabilities(h, k).map_err(|e| e.to_string())?;
                let generic = mutual_information(&table).map_err(|e| e.to_string())?;
                let closed = closed_form_mutual_information(h, k).map_err(|e| e.to_string())?;
                if (generic - closed).abs() > 1e-12 {
                    return Err(format!(
                        "h = {h}, k = {k}: generic {generic} vs closed {closed}"
                    ));
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_08_decoding_statistics() {
    report(8, "decoding statistics", (|| {
        for i in 0..=1000 {
            let h = i as f64 / 1000.0;
            let table = conditional_probabilities(h, 0.5).map_err(|e| e.to_string())?;
            if (table[1][2] - (1.0 - h) / 2.0).abs() > 1e-15 {
                return Err(format!("p(2|1) at h = {h} drifted: {}", table[1][2]));
            }
            if (table[1][1] - (1.0 + h) / 2.0).abs() > 1e-15 {
                return Err(format!("p(1|1) at h = {h} drifted: {}", table[1][1]));
            }
        }

        let projectors = bell_projectors();
        for &(h, k) in &[(1.0, 1.0), (0.8, 0.3), (0.25, 0.6), (0.0, 0.0), (0.5, 0.5)] {
            let states = dephasim::sdc::encoded_states(h, k).map_err(|e| e.to_string())?;
            let table = conditional_probabilities(h, k).map_err(|e| e.to_string())?;
            for (x, state) in states.iter().enumerate() {
                for (y, projector) in projectors.iter().enumerate() {
                    let direct = trace_product(projector, state);
                    if (direct - table[x][y]).abs() > 1e-12 {
                        return Err(format!(
                            "p({y}|{x}) at (h, k) = ({h}, {k}): projector trace {direct} vs table {}",
                            table[x][y]
                        ));
                    }
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_09_sampled_environment_consistency() {
    report(9, "sampled environment consistency", (|| {
        let (config, grid) = default_setup();
        let n_samples = 1_000_000u64;
        let budget = 5.0 / (n_samples as f64).sqrt();
        let n_points = 20usize;
        let schedule = NoiseSchedule::preset(SdcPreset::C);
        let seed = config.seeds.mc;

        let mut passes = 0usize;
        let mut worst = 0.0f64;
        for i in 0..n_points {
            let index = i * (grid.n_points() - 1) / (n_points - 1);
            let t = grid.time_at(index);

            let mc_a = config
                .spectrum_a
                .monte_carlo_characteristic(t, n_samples, derive_seed(seed, 2 * i as u64))
                .map_err(|e| e.to_string())?;
            let err_a =
                (mc_a - config.spectrum_a.characteristic_fn(t).map_err(|e| e.to_string())?).norm();
            let mc_b = config
                .spectrum_b
                .monte_carlo_characteristic(t, n_samples, derive_seed(seed, 2 * i as u64 + 1))
                .map_err(|e| e.to_string())?;
            let err_b =
                (mc_b - config.spectrum_b.characteristic_fn(t).map_err(|e| e.to_string())?).norm();

            let op = EncodingOp::new((i % 4) as u8).map_err(|e| e.to_string())?;
            let rho = dilation_oracle(
                &config.spectrum_a,
                &config.spectrum_b,
                &schedule,
                op,
                t,
                n_samples,
                derive_seed(seed, 1000 + i as u64),
            )
            .map_err(|e| e.to_string())?;
            let (h, k) =
                effective_coherences(&config.spectrum_a, &config.spectrum_b, &schedule, t)
                    .map_err(|e| e.to_string())?;
            let (row, col, expected) = if op.flips_polarization() {
                (1, 2, h)
            } else {
                (0, 3, k)
            };
            let err_d = (2.0 * rho.entry(row, col).re * op.coherence_sign() - expected).abs();

            worst = worst.max(err_a).max(err_b).max(err_d);
            if err_a <= budget && err_b <= budget && err_d <= budget {
                passes += 1;
            }
        }
        if passes < n_points - 1 {
            return Err(format!(
                "only {passes}/{n_points} sampled points within {budget:.3e} (worst error {worst:.3e})"
            ));
        }
        Ok(())
    })());
}

#[test]
fn criterion_10_numerics_invariants() {
    report(10, "numerics invariants", (|| {
        // Eigenvalue sums reproduce traces.
        for i in 0..50u64 {
            let mut rng = CounterRng::new(derive_seed(31337, i));
            let rho = random_density(&mut rng);
            let eigs = hermitian_eigenvalues(&rho);
            let residual = (eigs.iter().sum::<f64>() - rho.trace()).abs();
            if residual > 1e-10 {
                return Err(format!("matrix {i}: eigenvalue sum off trace by {residual}"));
            }
        }

        // Triangle inequality on random triples.
        for i in 0..100u64 {
            let mut rng = CounterRng::new(derive_seed(31338, i));
            let (r1, r2, r3) = (
                random_density(&mut rng),
                random_density(&mut rng),
                random_density(&mut rng),
            );
            let d13 = trace_distance(&r1, &r3).map_err(|e| e.to_string())?;
            let d12 = trace_distance(&r1, &r2).map_err(|e| e.to_string())?;
            let d23 = trace_distance(&r2, &r3).map_err(|e| e.to_string())?;
            if d13 > d12 + d23 + 1e-10 {
                return Err(format!("triple {i}: {d13} > {d12} + {d23}"));
            }
        }

        // The dephasing map never increases trace distance.
        let (config, grid) = default_setup();
        for i in 0..100u64 {
            let mut rng = CounterRng::new(derive_seed(31339, i));
            let r1 = random_density(&mut rng);
            let r2 = random_density(&mut rng);
            let before = trace_distance(&r1, &r2).map_err(|e| e.to_string())?;
            let t = grid.t_max() * rng.next_f64();
            let kappa1 = config.spectrum_a.characteristic_fn(t).map_err(|e| e.to_string())?;
            let kappa2 = config.spectrum_b.characteristic_fn(t).map_err(|e| e.to_string())?;
            let e1 = apply_dephasing(&r1, kappa1, kappa2).map_err(|e| e.to_string())?;
            let e2 = apply_dephasing(&r2, kappa1, kappa2).map_err(|e| e.to_string())?;
            let after = trace_distance(&e1, &e2).map_err(|e| e.to_string())?;
            if after > before + 1e-10 {
                return Err(format!("pair {i}: distance grew from {before} to {after}"));
            }
        }

        // Coherence-difference spectra at machine precision.
        for &kappa in &[0.25, 0.5, 1.0] {
            let mut m = HermitianMatrix::zero(4).map_err(|e| e.to_string())?;
            m.set_pair(0, 2, Complex64::new(kappa / 4.0, 0.0));
            m.set_pair(1, 3, Complex64::new(kappa / 4.0, 0.0));
            let eigs = hermitian_eigenvalues(&m);
            let expected = [kappa / 4.0, kappa / 4.0, -kappa / 4.0, -kappa / 4.0];
            for (got, want) in eigs.iter().zip(expected) {
                if (got - want).abs() > 1e-15 {
                    return Err(format!(
                        "κ = {kappa}: eigenvalue {got} deviates from {want}"
                    ));
                }
            }
        }
        Ok(())
    })());
}
