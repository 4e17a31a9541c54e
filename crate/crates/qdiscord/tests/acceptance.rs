//! Acceptance suite: one test per release criterion, each printing a
//! pass line with the measured margin. Expected values come from scalar
//! closed forms evaluated inside this file, independent of the
//! eigensolver/conditioning path they certify.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qdiscord::discord::{
    classical_mutual_information, discord, minimize_discord, mutual_information_i,
    mutual_information_j, proposition_residuals, ClassicalForm, ClassicalJoint, Variant,
};
use qdiscord::measurement::{dephase, qubit_basis, superselection_residual, ProjectiveMeasurement};
use qdiscord::separability::ppt_test;
use qdiscord::states::{random_state, werner};

/// Binary entropy from the scalar definition.
fn h2(p: f64) -> f64 {
    let mut h = 0.0;
    if p > 0.0 {
        h -= p * p.log2();
    }
    if p < 1.0 {
        h -= (1.0 - p) * (1.0 - p).log2();
    }
    h
}

/// Shannon entropy of a probability list, 0·log 0 = 0.
fn shannon(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Closed-form Werner discord: 1 - H({(1+3z)/4, (1-z)/4 ×3}) + H₂((1+z)/2).
fn werner_discord_closed_form(z: f64) -> f64 {
    let spectrum = [
        (1.0 + 3.0 * z) / 4.0,
        (1.0 - z) / 4.0,
        (1.0 - z) / 4.0,
        (1.0 - z) / 4.0,
    ];
    1.0 - shannon(&spectrum) + h2((1.0 + z) / 2.0)
}

/// The shared random sample: 200 seeded 2x2 states, 50 bases each.
fn random_pairs() -> impl Iterator<Item = (u64, f64, f64)> {
    (0..200u64).flat_map(|state_seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97 ^ state_seed);
        (0..50).map(move |_| {
            let theta = rng.random_range(0.0..FRAC_PI_2);
            let phi = rng.random_range(0.0..PI);
            (state_seed, theta, phi)
        })
    })
}

#[test]
fn criterion_1_conditional_entropy_identity() {
    let start = Instant::now();
    let mut max_residual: f64 = 0.0;
    for (seed, theta, phi) in random_pairs() {
        let state = random_state(2, 2, seed);
        let r = proposition_residuals(&state, &qubit_basis(theta, phi)).unwrap();
        max_residual = max_residual.max(r.prop1);
    }
    let elapsed = start.elapsed();
    assert!(
        max_residual < 1e-9,
        "identity residual {max_residual:.3e} exceeds 1e-9"
    );
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "criterion 1: PASS — conditional-entropy identity, max residual {max_residual:.3e} \
         over 10000 pairs in {elapsed:.2?}"
    );
}

#[test]
fn criterion_2_discord_nonnegativity() {
    let mut min_delta = f64::INFINITY;
    for (seed, theta, phi) in random_pairs() {
        let state = random_state(2, 2, seed);
        let meas = qubit_basis(theta, phi);
        for variant in [Variant::Rank1, Variant::Traced] {
            let delta = discord(&state, &meas, variant).unwrap().discord;
            min_delta = min_delta.min(delta);
        }
    }
    assert!(
        min_delta > -1e-10,
        "discord dipped to {min_delta:.3e}, below -1e-10"
    );
    println!("criterion 2: PASS — discord nonnegative, sample minimum {min_delta:.3e}");
}

#[test]
fn criterion_3_zero_discord_iff_superselection() {
    // Forward: states constructed to satisfy the superselection identity
    // carry no discord in that basis.
    let mut max_forward: f64 = 0.0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xB10C ^ seed);
        let theta = rng.random_range(0.0..FRAC_PI_2);
        let phi = rng.random_range(0.0..PI);
        let basis = qubit_basis(theta, phi);
        let state = dephase(&random_state(2, 2, seed), &basis).unwrap();
        let delta = discord(&state, &basis, Variant::Rank1).unwrap().discord;
        max_forward = max_forward.max(delta.abs());
    }
    assert!(
        max_forward < 1e-7,
        "dephased state kept discord {max_forward:.3e}"
    );

    // Backward: across the random sample plus the constructed states, every
    // vanishing discord comes with a vanishing superselection residual.
    let mut max_backward: f64 = 0.0;
    let mut hits = 0usize;
    let mut check = |state: &qdiscord::BipartiteState, meas: &ProjectiveMeasurement| {
        let delta = discord(state, meas, Variant::Rank1).unwrap().discord;
        if delta < 1e-9 {
            let residual = superselection_residual(state, meas).unwrap();
            max_backward = max_backward.max(residual);
            hits += 1;
        }
    };
    for (seed, theta, phi) in random_pairs().step_by(10) {
        check(&random_state(2, 2, seed), &qubit_basis(theta, phi));
    }
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xB10C ^ seed);
        let theta = rng.random_range(0.0..FRAC_PI_2);
        let phi = rng.random_range(0.0..PI);
        let basis = qubit_basis(theta, phi);
        let state = dephase(&random_state(2, 2, seed), &basis).unwrap();
        check(&state, &basis);
    }
    assert!(hits >= 100, "backward direction barely exercised");
    assert!(
        max_backward < 1e-6,
        "zero discord left residual {max_backward:.3e}"
    );
    println!(
        "criterion 3: PASS — forward max discord {max_forward:.3e}, backward max residual \
         {max_backward:.3e} over {hits} vanishing-discord cases"
    );
}

#[test]
fn criterion_4_werner_closed_form_and_basis_independence() {
    let mut max_form_error: f64 = 0.0;
    let mut max_spread: f64 = 0.0;
    for k in 0..=10 {
        let z = k as f64 / 10.0;
        let state = werner(z).unwrap();
        let expected = werner_discord_closed_form(z);

        let probe = discord(&state, &qubit_basis(0.7, 1.3), Variant::Rank1)
            .unwrap()
            .discord;
        max_form_error = max_form_error.max((probe - expected).abs());

        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for ti in 0..32 {
            for pj in 0..32 {
                let theta = ti as f64 * FRAC_PI_2 / 31.0;
                let phi = pj as f64 * PI / 32.0;
                let delta = discord(&state, &qubit_basis(theta, phi), Variant::Rank1)
                    .unwrap()
                    .discord;
                min = min.min(delta);
                max = max.max(delta);
            }
        }
        max_spread = max_spread.max(max - min);
    }
    assert!(
        max_form_error < 1e-9,
        "closed-form mismatch {max_form_error:.3e}"
    );
    assert!(max_spread < 1e-8, "basis dependence {max_spread:.3e}");
    println!(
        "criterion 4: PASS — Werner closed form within {max_form_error:.3e}, \
         32x32 basis spread {max_spread:.3e}"
    );
}

#[test]
fn criterion_5_separable_yet_discordant() {
    let state = werner(0.25).unwrap();
    let verdict = ppt_test(&state).unwrap();
    assert!(
        verdict.min_eigenvalue >= -1e-10,
        "werner(0.25) should pass the partial-transpose test"
    );
    let best = minimize_discord(&state, (32, 16), true).unwrap();
    let expected = werner_discord_closed_form(0.25);
    assert!(
        (best.discord - expected).abs() < 1e-6,
        "minimized discord {} differs from closed form {expected}",
        best.discord
    );
    println!(
        "criterion 5: PASS — werner(0.25) is PPT (min eig {:.3e}) with minimal discord \
         {:.6} ≈ {:.6}",
        verdict.min_eigenvalue, best.discord, expected
    );
}

#[test]
fn criterion_6_cnot_sweep_reproduction() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cnot.csv");
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_qdiscord"))
        .args([
            "sweep",
            "--family",
            "cnot",
            "--z-steps",
            "64",
            "--theta-steps",
            "64",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    let elapsed = start.elapsed();
    assert!(status.success());
    assert!(elapsed.as_secs_f64() < 10.0, "sweep took {elapsed:?}");

    let text = std::fs::read_to_string(&out).unwrap();
    let mut rows = Vec::new();
    for line in text.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        rows.push((cols[0], cols[1], cols[3])); // z, theta, discord
    }
    assert_eq!(rows.len(), 64 * 64);

    // (a) At z=0 the pointer basis is discord-free and uniquely so.
    let z0: Vec<_> = rows.iter().filter(|r| r.0 == 0.0).collect();
    assert_eq!(z0.len(), 64);
    assert!(z0[0].1 == 0.0 && z0[0].2 < 1e-9, "θ=0 discord {}", z0[0].2);
    for row in &z0[1..] {
        assert!(row.2 > 1e-9, "unexpected second zero at θ={}", row.1);
    }

    // (b) At z=0 the conjugate basis θ=π/4 carries exactly one bit.
    let quarter = z0
        .iter()
        .find(|r| (r.1 - FRAC_PI_4).abs() < 1e-9)
        .expect("θ=π/4 lies on the 64-point grid");
    assert!((quarter.2 - 1.0).abs() < 1e-9);

    // (c) The θ=0 column follows 1 - H₂((1+z)/2).
    let mut max_err: f64 = 0.0;
    for &(z, theta, delta) in &rows {
        if theta == 0.0 {
            max_err = max_err.max((delta - (1.0 - h2((1.0 + z) / 2.0))).abs());
        }
    }
    assert!(max_err < 1e-9, "θ=0 column error {max_err:.3e}");
    println!(
        "criterion 6: PASS — 64x64 sweep in {elapsed:.2?}; unique z=0 zero at θ=0, \
         δ(0, π/4) = 1, θ=0 column matches 1-H₂((1+z)/2) within {max_err:.3e}"
    );
}

#[test]
fn criterion_7_classical_equivalence_and_embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1A55);
    let mut max_gap: f64 = 0.0;
    let mut max_min_discord: f64 = 0.0;
    for _ in 0..100 {
        let mut table: Vec<f64> = (0..4).map(|_| rng.random_range(1e-3..1.0)).collect();
        let total: f64 = table.iter().sum();
        table.iter_mut().for_each(|p| *p /= total);
        let joint = ClassicalJoint::new(2, 2, table).unwrap();

        let i = classical_mutual_information(&joint, ClassicalForm::I);
        let j = classical_mutual_information(&joint, ClassicalForm::J);
        max_gap = max_gap.max((i - j).abs());

        let embedded = joint.embed();
        let best = minimize_discord(&embedded, (8, 4), true).unwrap();
        max_min_discord = max_min_discord.max(best.discord.abs());
    }
    assert!(max_gap < 1e-12, "classical forms split by {max_gap:.3e}");
    assert!(
        max_min_discord < 1e-9,
        "embedded table kept discord {max_min_discord:.3e}"
    );
    println!(
        "criterion 7: PASS — classical |I-J| ≤ {max_gap:.3e}, embedded minimal discord \
         ≤ {max_min_discord:.3e} over 100 tables"
    );
}

#[test]
fn criterion_8_remark_variants() {
    let identity = ProjectiveMeasurement::identity(2);
    let mut max_traced_gap: f64 = 0.0;
    let mut max_dephased: f64 = 0.0;
    let mut max_mode_gap: f64 = 0.0;
    for seed in 0..100u64 {
        let state = random_state(2, 2, 0xE330 + seed);

        // Conditioning on the trivial sector discards everything: the traced
        // variant's discord collapses to I, the dephased variant's to 0.
        let traced = discord(&state, &identity, Variant::Traced).unwrap().discord;
        let i = mutual_information_i(&state).unwrap();
        max_traced_gap = max_traced_gap.max((traced - i).abs());
        let dephased = discord(&state, &identity, Variant::Dephased)
            .unwrap()
            .discord;
        max_dephased = max_dephased.max(dephased.abs());

        // For rank-1 measurements the joint and reduced conditional states
        // carry the same entropy, so the two J generalizations coincide.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let meas = qubit_basis(
            rng.random_range(0.0..FRAC_PI_2),
            rng.random_range(0.0..PI),
        );
        let rank1 = mutual_information_j(&state, &meas, Variant::Rank1).unwrap();
        let traced = mutual_information_j(&state, &meas, Variant::Traced).unwrap();
        max_mode_gap = max_mode_gap.max((rank1 - traced).abs());
    }
    assert!(max_traced_gap < 1e-10);
    assert!(max_dephased < 1e-10);
    assert!(max_mode_gap < 1e-10);
    println!(
        "criterion 8: PASS — trivial-sector traced gap {max_traced_gap:.3e}, dephased \
         {max_dephased:.3e}, rank1↔traced gap {max_mode_gap:.3e}"
    );
}
