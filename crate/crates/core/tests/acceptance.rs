//! Acceptance suite: one test per shipped criterion, each printing a
//! PASS/FAIL line (visible with `--nocapture`).
//!
//! Run ordered and verbose with:
//! `cargo test -p hotspots-core --test acceptance -- --test-threads=1 --nocapture`

use hotspots_core::grid::{GridDomain, Shape};
use hotspots_core::heat::{self, Lemma1Report};
use hotspots_core::mc::{self, WalkConfig};
use hotspots_core::specfun::BesselOrder;
use hotspots_core::{bound, constants, eigen, specfun};
use std::f64::consts::PI;
use std::time::Instant;

struct Criterion {
    number: u32,
    started: Instant,
}

fn criterion(number: u32) -> Criterion {
    Criterion {
        number,
        started: Instant::now(),
    }
}

impl Criterion {
    fn conclude(self, passed: bool, detail: &str) {
        let verdict = if passed { "PASS" } else { "FAIL" };
        let elapsed = self.started.elapsed().as_secs_f64();
        println!("[criterion {:2}] {verdict} ({elapsed:.1}s) — {detail}", self.number);
        assert!(passed, "[criterion {}] FAIL — {detail}", self.number);
    }
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Published constants at the stated rescaled-time slices, exact-root inputs.
#[test]
fn criterion_01_published_alpha_slices() {
    let crit = criterion(1);
    let mut detail = String::new();
    let mut ok = true;
    for (d, alpha, published) in [(2u32, 0.258, 58.35), (3, 0.194, 22.03), (4, 0.17, 14.71)] {
        let c = constants::dimension_constants(d).unwrap();
        let ev = bound::evaluate(d, c.alpha_d, c.sw_coeff, alpha).unwrap();
        let rel = rel_err(ev.constant, published);
        ok &= rel <= 0.005;
        detail.push_str(&format!("d={d}: {:.4} vs {published} ({:.3}%); ", ev.constant, rel * 100.0));
    }
    crit.conclude(ok, &detail);
}

/// Theorem-level ceilings 60 / 23 / 15 for d = 2 / 3 / 4.
#[test]
fn criterion_02_theorem_ceilings() {
    let crit = criterion(2);
    let mut detail = String::new();
    let mut ok = true;
    for (d, ceiling) in [(2u32, 60.0), (3, 23.0), (4, 15.0)] {
        let r = bound::hot_spots_constant(d).unwrap();
        ok &= r.constant_star <= ceiling;
        detail.push_str(&format!("d={d}: {:.4} <= {ceiling}; ", r.constant_star));
    }
    crit.conclude(ok, &detail);
}

/// Asymptote √(e^e) (the paper's 3.89), the 2eπ/(4π) identity, monotone
/// constants over d = 2..20, and the large-d probe at d = 200.
#[test]
fn criterion_03_asymptote_and_monotonicity() {
    let crit = criterion(3);
    let limit = bound::asymptotic_limit();
    // √(e^e) = 3.8928475749…; the spec's printed "3.8962" is exp(1.36), an
    // arithmetic slip — the paper's own figure is "√(e^e) ∼ 3.89".
    let value_ok = (limit - 3.8928475749095628).abs() <= 1e-3;
    let identity = (constants::sw_dimensionless_limit() / (4.0 * PI)).exp();
    let identity_ok = (limit - identity).abs() <= 1e-14;

    let mut monotone_ok = true;
    let mut prev = f64::INFINITY;
    for d in 2..=20u32 {
        let c = bound::hot_spots_constant(d).unwrap().constant_star;
        monotone_ok &= c <= prev + 1e-12;
        prev = c;
    }
    let far = bound::hot_spots_constant(200).unwrap().constant_star;
    let far_ok = far > 3.5 && far < 6.0;

    crit.conclude(
        value_ok && identity_ok && monotone_ok && far_ok,
        &format!(
            "limit {limit:.6} (identity gap {:.1e}); constants non-increasing 2..20; d=200 -> {far:.4}",
            (limit - identity).abs()
        ),
    );
}

/// Root certificates: Lorch-Szegő bracket for p², the Watson-type lower
/// bound for j, and j_{1/2,1} = π.
#[test]
fn criterion_04_root_certificates() {
    let crit = criterion(4);
    let mut ok = true;
    let mut worst = f64::INFINITY;
    for d in 2..=60u32 {
        let p = specfun::neumann_ball_root(d).unwrap().value;
        let p_sq = p * p;
        let (lo, hi) = (d as f64 + 8.0 / (d as f64 + 6.0), d as f64 + 2.0);
        ok &= lo < p_sq && p_sq < hi;
        worst = worst.min((p_sq - lo).min(hi - p_sq));

        let nu = d as f64 / 2.0 - 1.0;
        let j = specfun::first_bessel_zero(BesselOrder::new(nu).unwrap()).unwrap().value;
        ok &= j >= d as f64 / 2.0 - 2.0 / d as f64;
    }
    let half = specfun::first_bessel_zero(BesselOrder::new(0.5).unwrap()).unwrap().value;
    let pi_ok = (half - PI).abs() <= 1e-9;
    crit.conclude(
        ok && pi_ok,
        &format!("d=2..60 brackets hold (worst margin {worst:.3e}); j_{{1/2,1}} - pi = {:.2e}", half - PI),
    );
}

/// Quadrature certificate for p² ≤ d + 2: the integral ratio equals d + 2.
#[test]
fn criterion_05_rayleigh_identity() {
    let crit = criterion(5);
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for d in [2u32, 3, 5, 10, 50, 200] {
        let got = constants::rayleigh_upper_check(d).unwrap();
        let rel = rel_err(got, d as f64 + 2.0);
        worst = worst.max(rel);
        ok &= rel <= 1e-8;
    }
    crit.conclude(ok, &format!("ratio = d+2 at d in {{2,3,5,10,50,200}}, worst rel err {worst:.2e}"));
}

/// Eigensolver oracles: closed-form rectangle modes, Bessel-root disk values,
/// and second-order convergence on the rectangle.
#[test]
fn criterion_06_eigensolver_oracles() {
    let crit = criterion(6);
    let mu_rect = PI * PI / 4.0;
    let lam_rect = 5.0 * PI * PI / 4.0;
    // Unit-disk references: p_{1,1}² and j_{0,1}².
    let mu_disk = 3.38995771667188873;
    let lam_disk = 5.783185962946785;

    let rect_128 = GridDomain::generate(Shape::Rectangle { a: 2.0, b: 1.0 }, 1.0 / 128.0).unwrap();
    let mu_128 = eigen::neumann_eigenpair(&rect_128).unwrap().eigenvalue;
    let lam_128 = eigen::dirichlet_eigenvalue(&rect_128).unwrap().eigenvalue;
    let rect_ok = rel_err(mu_128, mu_rect) <= 0.005 && rel_err(lam_128, lam_rect) <= 0.005;

    let disk_128 = GridDomain::generate(Shape::Disk { r: 1.0 }, 1.0 / 128.0).unwrap();
    let mu_d = eigen::neumann_eigenpair(&disk_128).unwrap().eigenvalue;
    let lam_d = eigen::dirichlet_eigenvalue(&disk_128).unwrap().eigenvalue;
    let disk_ok = rel_err(mu_d, mu_disk) <= 0.01 && rel_err(lam_d, lam_disk) <= 0.01;

    // Halving factors on the rectangle, where the boundary is exactly
    // representable and the stencil's second order is observable. (The disk's
    // staircase error oscillates with grid alignment; its gate is the 1%
    // absolute accuracy above.)
    let rect_64 = GridDomain::generate(Shape::Rectangle { a: 2.0, b: 1.0 }, 1.0 / 64.0).unwrap();
    let rect_256 = GridDomain::generate(Shape::Rectangle { a: 2.0, b: 1.0 }, 1.0 / 256.0).unwrap();
    let mu_64 = eigen::neumann_eigenpair(&rect_64).unwrap().eigenvalue;
    let mu_256 = eigen::neumann_eigenpair(&rect_256).unwrap().eigenvalue;
    let lam_64 = eigen::dirichlet_eigenvalue(&rect_64).unwrap().eigenvalue;
    let lam_256 = eigen::dirichlet_eigenvalue(&rect_256).unwrap().eigenvalue;
    let factors = [
        (mu_64 - mu_rect).abs() / (mu_128 - mu_rect).abs(),
        (mu_128 - mu_rect).abs() / (mu_256 - mu_rect).abs(),
        (lam_64 - lam_rect).abs() / (lam_128 - lam_rect).abs(),
        (lam_128 - lam_rect).abs() / (lam_256 - lam_rect).abs(),
    ];
    let factors_ok = factors.iter().all(|f| (3.2..=4.8).contains(f));

    crit.conclude(
        rect_ok && disk_ok && factors_ok,
        &format!(
            "rect mu {:.3e}/lam {:.3e} rel; disk mu {:.3e}/lam {:.3e} rel; halving factors {:?}",
            rel_err(mu_128, mu_rect),
            rel_err(lam_128, lam_rect),
            rel_err(mu_d, mu_disk),
            rel_err(lam_d, lam_disk),
            factors.map(|f| (f * 100.0).round() / 100.0),
        ),
    );
}

fn corpus() -> Vec<GridDomain> {
    vec![
        GridDomain::generate(Shape::Rectangle { a: 2.0, b: 1.0 }, 1.0 / 64.0).unwrap(),
        GridDomain::generate(Shape::Rectangle { a: 1.0, b: 1.0 }, 1.0 / 64.0).unwrap(),
        GridDomain::generate(Shape::Disk { r: 1.0 }, 1.0 / 64.0).unwrap(),
        GridDomain::generate(Shape::Annulus { r_in: 0.4, r_out: 1.0 }, 1.0 / 64.0).unwrap(),
        GridDomain::generate(
            Shape::Dumbbell { chamber: 1.0, neck_w: 0.1, neck_len: 0.5, hole_r: 0.25 },
            1.0 / 128.0,
        )
        .unwrap(),
    ]
}

/// Spectral inequalities across the corpus: μ₁ < λ₁, the isoperimetric
/// bounds on μ₁|D| and λ₁|D|, and the ratio against the planar constant.
#[test]
fn criterion_07_corpus_spectral_inequalities() {
    let crit = criterion(7);
    let p_sq = constants::dimension_constants(2).unwrap().p_sq;
    let j_sq = {
        let j = specfun::first_bessel_zero(BesselOrder::new(0.0).unwrap()).unwrap().value;
        j * j
    };
    let planar_bound = bound::hot_spots_constant(2).unwrap().constant_star;

    let mut ok = true;
    let mut detail = String::new();
    for dom in corpus() {
        let report = eigen::hot_spots_report(&dom).unwrap();
        let area = dom.area();
        let mu_lt = report.mu1 < report.lambda1 * (1.0 - 1e-6);
        let sw = report.mu1 * area <= PI * p_sq * 1.05;
        let fk = report.lambda1 * area >= PI * j_sq * 0.95;
        let ratio = report.ratio <= planar_bound;
        ok &= mu_lt && sw && fk && ratio;
        detail.push_str(&format!(
            "{}: mu={:.4} lam={:.4} ratio={:.4}{}; ",
            dom.name(),
            report.mu1,
            report.lambda1,
            report.ratio,
            if mu_lt && sw && fk && ratio { "" } else { " <-- VIOLATION" },
        ));
    }
    crit.conclude(ok, &detail);
}

/// Inequality slack on rectangle and disk across the time grid, PDE route.
#[test]
fn criterion_08_lemma1_slack_pde() {
    let crit = criterion(8);
    let t_grid = [0.01, 0.05, 0.1, 0.5];
    let mut ok = true;
    let mut detail = String::new();
    for dom in [
        GridDomain::generate(Shape::Rectangle { a: 2.0, b: 1.0 }, 1.0 / 64.0).unwrap(),
        GridDomain::generate(Shape::Disk { r: 1.0 }, 1.0 / 64.0).unwrap(),
    ] {
        let reports: Vec<Lemma1Report> = heat::lemma1_check(&dom, &t_grid).unwrap();
        let min_slack = reports.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
        ok &= reports.iter().all(|r| r.slack >= -5e-3);
        detail.push_str(&format!("{}: min slack {min_slack:.4e}; ", dom.name()));
    }
    crit.conclude(ok, &detail);
}

/// Monte-Carlo consistency: reflected eigen-decay within 3σ, absorbed
/// survival within max(3σ, 2%) of the PDE solver, and bit-identical repeats.
#[test]
fn criterion_09_monte_carlo_consistency() {
    let crit = criterion(9);
    let mut ok = true;
    let mut detail = String::new();

    // Reflected decay on the 2x1 rectangle, 1e5 paths.
    let x0 = (0.5, 0.5);
    let u0 = (PI * x0.0 / 2.0).cos();
    for t in [0.05, 0.1, 0.2] {
        let cfg = WalkConfig { n_paths: 100_000, dt: 1e-3, seed: 42, t };
        let est = mc::reflected_expectation_rectangle(2.0, 1.0, x0, &cfg).unwrap();
        let expected = (-(PI * PI / 4.0) * t).exp() * u0;
        let sigmas = (est.mean - expected).abs() / est.std_error;
        ok &= sigmas <= 3.0;
        detail.push_str(&format!("refl t={t}: {sigmas:.2}σ; "));
    }

    // Absorbed survival versus the PDE solver on rectangle and disk probes.
    // The O(λ·t·√dt) absorption bias sets the step: the square's faster decay
    // needs 1e-5; the disk's margins stay ~7x at 2e-5. One sweep serves all
    // three horizons (estimates are bit-identical to per-horizon runs).
    let horizons = [0.02, 0.05, 0.1];
    for (dom, label, dt) in [
        (GridDomain::generate(Shape::Rectangle { a: 1.0, b: 1.0 }, 1.0 / 64.0).unwrap(), "square", 1e-5),
        (GridDomain::generate(Shape::Disk { r: 1.0 }, 1.0 / 64.0).unwrap(), "disk", 2e-5),
    ] {
        let x0 = dom.centroid_cell();
        let cfg = WalkConfig { n_paths: 100_000, dt, seed: 7, t: 0.1 };
        let estimates = mc::absorbed_survival_profile(&dom, x0, &cfg, &horizons).unwrap();
        for (&t, est) in horizons.iter().zip(&estimates) {
            let pde = heat::heat_survival(&dom, x0, t).unwrap().survival;
            let tol = (3.0 * est.std_error).max(0.02 * pde);
            let gap = (est.mean - pde).abs();
            ok &= gap <= tol;
            detail.push_str(&format!("{label} t={t}: |Δ|={gap:.2e} tol={tol:.2e}; "));
        }
    }

    // Bit-identical repeats for a fixed seed (kernels are counter-seeded and
    // sequential, so scheduling cannot change the result).
    let dom = GridDomain::generate(Shape::Rectangle { a: 1.0, b: 1.0 }, 1.0 / 64.0).unwrap();
    let cfg = WalkConfig { n_paths: 20_000, dt: 1e-4, seed: 3, t: 0.05 };
    let one = mc::absorbed_survival(&dom, dom.centroid_cell(), &cfg).unwrap();
    let two = mc::absorbed_survival(&dom, dom.centroid_cell(), &cfg).unwrap();
    let bitwise = one.mean.to_bits() == two.mean.to_bits()
        && one.std_error.to_bits() == two.std_error.to_bits();
    ok &= bitwise;
    detail.push_str(&format!("bit-identical repeat: {bitwise}"));

    crit.conclude(ok, &detail);
}

/// The high-precision counterexample regime (ratio > 1 + 1e-3) is out of
/// reach at grid resolution; the dumbbell run only reports its ratio, and the
/// hard gate is ratio ≤ bound.
#[test]
fn criterion_10_dumbbell_reported_not_reproduced() {
    let crit = criterion(10);
    let dom = GridDomain::generate(
        Shape::Dumbbell { chamber: 1.0, neck_w: 0.1, neck_len: 0.5, hole_r: 0.25 },
        1.0 / 128.0,
    )
    .unwrap();
    let report = eigen::hot_spots_report(&dom).unwrap();
    let ok = report.ratio <= report.bound;
    crit.conclude(
        ok,
        &format!(
            "dumbbell ratio {:.6} reported against bound {:.2}; a boundary-element-scale \
             counterexample (ratio > 1 + 1e-3) is not reproducible on this grid and is not gated",
            report.ratio, report.bound
        ),
    );
}
