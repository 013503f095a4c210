//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints its PASS/FAIL line in plain `cargo test` output.

use std::process::{Command, ExitCode};
use std::time::Instant;

use eur_cli::campaign::{self, CampaignConfig, Row};
use eur_cli::commands::{coincidence_report, StateSource};
use eur_cli::families::{sic_for, sic_pair};
use eur_core::bounds::{
    coincidence_sum_check, mu_pair_bounds, riesz_precondition_check, sic_index_of_coincidence, simple_bounds,
};
use eur_core::entanglement::{correlation_g, detect_entanglement, maximally_entangled, product_sic_povm};
use eur_core::measurements::sic_design_basis;
use eur_core::states::{from_bloch, random_mixed_with, random_pure_with};
use eur_core::*;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

/// Rounding allowance for `g ≤ f̄`, which is attained with equality on SIC kets.
const OVERLAP_ROUNDOFF: f64 = 1e-12;

fn rows_for(dims: &[usize], props: &[Proposition], samples: usize, count: Option<usize>, eta: Option<f64>) -> Vec<Row> {
    let config = CampaignConfig {
        dims: dims.to_vec(),
        props: props.to_vec(),
        samples,
        seed: 20_240_601,
        eta,
        count,
        ..CampaignConfig::default()
    };
    campaign::run(&config).expect("campaign runs")
}

fn min_margin(rows: &[Row]) -> f64 {
    rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min)
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_state<R: Rng>(d: usize, rng: &mut R) -> DensityMatrix64 {
    let rank = rng.random_range(1..=d);
    random_mixed_with(d, rank, rng).unwrap()
}

fn ac01() -> Outcome {
    let mut worst: f64 = 0.0;
    for d in [2usize, 3] {
        let sic = sic_for(d, None).unwrap();
        let mut rng = stream_rng(1, d as u64);
        for _ in 0..1000 {
            let rho = random_state(d, &mut rng);
            let lhs = index_of_coincidence(&sic.probabilities(&rho).unwrap());
            let rhs = sic_index_of_coincidence(d, purity(&rho)).unwrap();
            worst = worst.max((lhs - rhs).abs());
        }
    }
    ensure(worst <= 1e-10, format!("max residual {worst:.2e} over 2000 states"))
}

fn ac02() -> Outcome {
    let pure = coincidence_report(2, &StateSource::Pure, 0, None).unwrap();
    let mixed = coincidence_report(2, &StateSource::Mixed, 0, None).unwrap();
    let e1 = (pure.lhs - 1.0 / 3.0).abs().max((pure.rhs - 1.0 / 3.0).abs());
    let e2 = (mixed.lhs - 0.25).abs().max((mixed.rhs - 0.25).abs());
    ensure(
        e1 <= 1e-12 && e2 <= 1e-12,
        format!("pure {:.15} (err {e1:.1e}), I/2 {:.15} (err {e2:.1e})", pure.lhs, mixed.lhs),
    )
}

fn ac03() -> Outcome {
    let mut worst: f64 = 0.0;
    for d in [2usize, 3] {
        let basis = sic_design_basis(&sic_for(d, None).unwrap()).unwrap();
        if basis.len() != d * d {
            return Err(format!("d = {d}: {} vectors", basis.len()));
        }
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.inner(b).unwrap() - Complex64::new(target, 0.0)).norm());
            }
        }
    }
    ensure(worst <= 1e-10, format!("max Gram deviation {worst:.2e}"))
}

fn ac04() -> Outcome {
    let props = [Proposition::MubTsallis, Proposition::MubRenyi, Proposition::MubMinEntropy];
    let rows = rows_for(&[2, 3, 5], &props, 500, None, None);
    let expected = 10 * (5 + 4 + 1) * 500;
    let m = min_margin(&rows);
    ensure(rows.len() == expected && m >= -1e-10, format!("{} checks, min margin {m:.3e}", rows.len()))
}

fn ac05() -> Outcome {
    let paulis = mub_construct::<f64>(2, 3).unwrap();
    let s = 1.0 / 3f64.sqrt();
    let bloch = from_bloch(&BlochVector::new([s, s, s]).unwrap()).unwrap();
    let a = check_bound(
        Target::Mubs(&paulis),
        &bloch,
        Proposition::MubRenyi,
        &BoundParams::with_order(EntropyOrder::new(2.0).unwrap()),
    )
    .unwrap();
    let a_gap = (a.lhs - a.rhs).abs();

    let mut b_gap: f64 = 0.0;
    for d in [2usize, 3] {
        let sic = sic_for(d, None).unwrap();
        let mut states = vec![DensityMatrix64::maximally_mixed(d)];
        states.extend(sic.kets().iter().map(|k| DensityMatrix::pure(k).unwrap()));
        for rho in &states {
            let r = check_bound(Target::Sic(&sic), rho, Proposition::SicMinEntropy, &BoundParams::default()).unwrap();
            b_gap = b_gap.max((r.lhs - r.rhs).abs());
        }
    }

    let mut c_gap: f64 = 0.0;
    let mut rng = stream_rng(5, 0);
    for _ in 0..1000 {
        let rho = random_pure_with(2, &mut rng).unwrap();
        let r = coincidence_sum_check(&paulis, &rho).unwrap();
        c_gap = c_gap.max((r.lhs - r.rhs).abs());
    }
    ensure(
        a_gap <= 1e-10 && b_gap <= 1e-10 && c_gap <= 1e-10,
        format!("gaps: Rényi-2 Bloch {a_gap:.1e}, min-entropy {b_gap:.1e}, coincidence sum {c_gap:.1e}"),
    )
}

fn ac06() -> Outcome {
    let mut rows = Vec::new();
    for d in [2usize, 3, 5] {
        rows.extend(rows_for(&[d], &[Proposition::MubSymmetrized], 200, Some(d + 1), None));
    }
    let kinds_seen = ["P4-mub-sym/tsallis", "P4-mub-sym/renyi"]
        .iter()
        .all(|k| rows.iter().filter(|r| r.prop == *k).count() == 3 * 4 * 200);
    let m = min_margin(&rows);
    ensure(kinds_seen && m >= -1e-10, format!("{} checks, min margin {m:.3e}", rows.len()))
}

fn ac07() -> Outcome {
    let mut rows = rows_for(
        &[2, 3],
        &[Proposition::SicTsallis, Proposition::SicRenyi, Proposition::SicMinEntropy],
        500,
        None,
        None,
    );
    for eta in [0.3, 0.8] {
        rows.extend(rows_for(&[2, 3], &[Proposition::SicTsallis], 500, None, Some(eta)));
    }
    let mut worst_simple = f64::INFINITY;
    let mut worst_distortion: f64 = 0.0;
    let orders: Vec<EntropyOrder<f64>> =
        [0.3, 0.5, 1.0, 1.5, 2.0, 3.0, 10.0, f64::INFINITY].iter().map(|&a| EntropyOrder::new(a).unwrap()).collect();
    for d in [2usize, 3] {
        let sic = sic_for(d, None).unwrap();
        let mut rng = stream_rng(7, d as u64);
        for _ in 0..500 {
            let p = sic.probabilities(&random_state(d, &mut rng)).unwrap();
            for &o in &orders {
                for kind in [EntropyKind::Tsallis, EntropyKind::Renyi] {
                    let r = simple_bounds(&p, d, o, kind).unwrap();
                    worst_simple = worst_simple.min(r.direct.margin).min(r.weak.margin);
                }
                if o.is_infinite() {
                    continue;
                }
                for eta in [0.3, 0.8] {
                    let lhs = tsallis(&p.distort(eta).unwrap(), o);
                    let rhs = eta.powf(o.value()) * tsallis(&p, o) + binary_tsallis(eta, o).unwrap();
                    worst_distortion = worst_distortion.max((lhs - rhs).abs());
                }
            }
        }
    }
    let m = min_margin(&rows);
    ensure(
        m >= -1e-10 && worst_simple >= -1e-10 && worst_distortion <= 1e-12,
        format!(
            "{} checks, min margin {m:.3e}; simple bounds min margin {worst_simple:.3e}; distortion residual {worst_distortion:.1e}",
            rows.len()
        ),
    )
}

fn ac08() -> Outcome {
    let (m, n) = sic_pair(&sic_for(2, None).unwrap()).unwrap();
    let mut rng = stream_rng(8, 0);
    let (mut worst, mut worst_gap) = (f64::INFINITY, f64::INFINITY);
    let mut failures = 0usize;
    for _ in 0..500 {
        let rho = random_state(2, &mut rng);
        for s in [0.0, 0.5] {
            let pair = SymOrderPair::new(s).unwrap();
            let r = mu_pair_bounds(&m, &n, &rho, pair.alpha(), pair.beta()).unwrap();
            for rep in [&r.tsallis, &r.renyi, &r.tsallis_f_bar, &r.renyi_f_bar] {
                failures += usize::from(!rep.passed());
                worst = worst.min(rep.margin);
            }
            worst_gap = worst_gap.min(r.f_bar - r.g);
        }
    }
    ensure(
        failures == 0 && worst_gap >= -OVERLAP_ROUNDOFF,
        format!("1000 order/state pairs, min margin {worst:.3e}, min f̄ - g {worst_gap:.3e}"),
    )
}

fn ac09() -> Outcome {
    let mut rng = stream_rng(9, 0);
    let mut worst = f64::INFINITY;
    for k in 0..10_000 {
        let n = [4usize, 9, 16][k % 3];
        // Vary the shape: some entries are zeroed out and weights get skewed.
        let w: Vec<f64> = (0..n)
            .map(|_| if rng.random_bool(0.3) { 0.0 } else { rng.random::<f64>().powi(rng.random_range(1..6)) })
            .collect();
        let Ok(p) = ProbDist::from_weights(&w) else { continue };
        let b = max_prob_bound(n, index_of_coincidence(&p)).unwrap();
        worst = worst.min(b - p.max());
    }
    let mut eq: f64 = 0.0;
    for n in [4usize, 9, 16] {
        for p in [ProbDist64::indicator(n, n / 2), ProbDist64::uniform(n)] {
            eq = eq.max((max_prob_bound(n, index_of_coincidence(&p)).unwrap() - p.max()).abs());
        }
    }
    ensure(worst >= -1e-12 && eq <= 1e-12, format!("min slack {worst:.3e}, equality residual {eq:.1e}"))
}

fn ac10() -> Outcome {
    let mut rng = stream_rng(10, 0);
    let mut worst = f64::INFINITY;
    let mut triples = 0;
    for d in [2usize, 3] {
        let (sa, sb) = sic_pair(&sic_for(d, None).unwrap()).unwrap();
        let mubs = mub_construct::<f64>(d, 2).unwrap();
        let (ma, mb) = (RankOnePovm::from(&mubs.bases()[0]), RankOnePovm::from(&mubs.bases()[1]));
        for (m, n) in [(&sa, &sb), (&ma, &mb), (&sa, &ma)] {
            for _ in 0..170 {
                let rho = random_state(d, &mut rng);
                let cols = eur_core::bounds::riesz_transform(m, n, &rho).unwrap().cols();
                let u = ComplexVector::new(
                    (0..cols).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect(),
                );
                let r = riesz_precondition_check(m, n, &rho, &u, 0, &mut rng).unwrap();
                worst = worst.min(r.margin);
                triples += 1;
            }
        }
    }
    ensure(triples >= 1000 && worst >= -1e-12, format!("{triples} triples, worst margin {worst:.3e}"))
}

fn ac11() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for d in [2usize, 3] {
        let sic = sic_for(d, None).unwrap();
        let povm = product_sic_povm(&sic).unwrap();
        let phi = maximally_entangled::<f64>(d).unwrap();
        let g = correlation_g(&povm, &phi).unwrap();
        let (fired, _) = detect_entanglement(&sic, &phi).unwrap();
        let err = (g - 1.0 / d as f64).abs();
        ok &= err <= 1e-12 && fired;
        let mut rng = stream_rng(11, d as u64);
        let mut false_positives = 0;
        for _ in 0..1000 {
            let rho = random_state(d, &mut rng).tensor(&random_state(d, &mut rng));
            false_positives += usize::from(detect_entanglement(&sic, &rho).unwrap().0);
        }
        ok &= false_positives == 0;
        details.push(format!("d = {d}: |G - 1/d| {err:.1e}, fired {fired}, false positives {false_positives}/1000"));
    }
    ensure(ok, details.join("; "))
}

fn ac12() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_eur"))
            .args(["verify", "--dim", "2,3", "--samples", "20", "--seed", "42", "--out"])
            .arg(&path)
            .output()
            .unwrap()
            .status;
        (status.code(), std::fs::read(&path).unwrap())
    };
    let (c1, a) = run("a.csv");
    let (c2, b) = run("b.csv");
    ensure(
        c1 == Some(0) && c2 == Some(0) && !a.is_empty() && a == b,
        format!("two runs, {} bytes each, identical {}", a.len(), a == b),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("AC-01", "SIC index of coincidence is exact", ac01),
        ("AC-02", "qubit coincidence special values", ac02),
        ("AC-03", "two-copy SIC basis is orthonormal", ac03),
        ("AC-04", "MUB Tsallis/Rényi/min-entropy bounds", ac04),
        ("AC-05", "saturation cases", ac05),
        ("AC-06", "symmetrized MUB bounds", ac06),
        ("AC-07", "SIC single-measurement bounds", ac07),
        ("AC-08", "Maassen-Uffink pair bounds", ac08),
        ("AC-09", "largest probability from coincidence", ac09),
        ("AC-10", "Riesz contraction precondition", ac10),
        ("AC-11", "entanglement criterion", ac11),
        ("AC-12", "deterministic campaign output", ac12),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name}: {detail} ({secs:.1} s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {detail} ({secs:.1} s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
