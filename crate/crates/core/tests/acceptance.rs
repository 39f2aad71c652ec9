//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//! Oracles here are written out by hand and do not go through the
//! library's series evaluation unless the criterion is about that code path.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use harmap::criteria::{
    collision_residual, collision_search, convex_criterion, dcp_bound_a, dcp_phi, g_closed_form,
    g_direct, gh0_disk_min, ph0_disk_min, royster_ziegler_min, theorem1_gamma, theorem1_sweep,
    CollisionSearch, DcpProbe, DiskGrid, SamplingConfig,
};
use harmap::harmonic::{catalog, shear, ShearMode, ShearSpec, CATALOG};
use harmap::radii::{
    convexity_radius, dcp_radius, default_t_grid, local_univalence_report, RadiusSearch,
};
use harmap::series::rational_expand;
use harmap::verify::{run_suite, suite_radii, theorem1_pairs};
use harmap::{Complex, HarmonicMap, PowerSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = (bool, String);
type Criterion = (&'static str, fn() -> Verdict);

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn f0_section(n: usize) -> HarmonicMap {
    catalog("f0", 64).unwrap().section(n, n).unwrap()
}

fn sn(n: usize) -> PowerSeries {
    let mut coeffs = vec![1.0; n + 1];
    coeffs[0] = 0.0;
    PowerSeries::from_real(&coeffs).unwrap()
}

/// Plain polynomial evaluation with its first two derivatives.
fn poly(coeffs: &[f64], z: Complex) -> (Complex, Complex, Complex) {
    let mut p = (c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
    for (k, &a) in coeffs.iter().enumerate() {
        let k32 = k as i32;
        p.0 += a * z.powi(k32);
        if k >= 1 {
            p.1 += a * k as f64 * z.powi(k32 - 1);
        }
        if k >= 2 {
            p.2 += a * (k * (k - 1)) as f64 * z.powi(k32 - 2);
        }
    }
    p
}

/// Convexity functional for polynomial `h`, `g` built from scratch.
fn convex_oracle(h: &[f64], g: &[f64], z: Complex) -> f64 {
    let (_, h1, h2) = poly(h, z);
    let (_, g1, g2) = poly(g, z);
    let num = z * (h1 + z * h2) + (z * (g1 + z * g2)).conj();
    let den = z * h1 - (z * g1).conj();
    (num / den).re
}

/// f0 partial sums: `a_n = (n+1)/2`, `b_n = -(n-1)/2`.
fn f0_coeffs(n: usize) -> (Vec<f64>, Vec<f64>) {
    let h = (0..=n)
        .map(|k| if k == 0 { 0.0 } else { (k as f64 + 1.0) / 2.0 })
        .collect();
    let g = (0..=n)
        .map(|k| if k < 2 { 0.0 } else { -(k as f64 - 1.0) / 2.0 })
        .collect();
    (h, g)
}

fn c1_f_value() -> Verdict {
    let z = Complex::from_polar(0.25, 2.0 * PI / 3.0);
    let value = convex_criterion(&f0_section(3), z).unwrap();
    let (h, g) = f0_coeffs(3);
    let oracle = convex_oracle(&h, &g, z);
    let target = -47.0 / 97.0;
    let ok = (value - target).abs() <= 1e-9 && (oracle - target).abs() <= 1e-9;
    (
        ok,
        format!("value {value:.12}, hand oracle {oracle:.12}, target {target:.12}"),
    )
}

fn c2_sharp_dilatation() -> Verdict {
    let f = f0_section(2);
    let w = f.dilatation(c(-0.25, 0.0)).unwrap();
    // ω = -z/(1+3z) for this section.
    let oracle = |z: Complex| (-z / (1.0 + 3.0 * z)).norm();
    let r = 0.2499;
    let rep = local_univalence_report(&f, r, &SamplingConfig::default());
    let max_modulus = 1.0 - rep.min_value;
    let exact_max = oracle(c(-r, 0.0));
    let ok = (w.norm() - 1.0).abs() <= 1e-12
        && (oracle(c(-0.25, 0.0)) - 1.0).abs() <= 1e-12
        && max_modulus < 1.0
        && (max_modulus - exact_max).abs() <= 1e-12;
    (
        ok,
        format!(
            "|ω(-1/4)| = {:.15}, max on |z|=0.2499 = {max_modulus:.9} (exact {exact_max:.9})",
            w.norm()
        ),
    )
}

fn c3_section_radii() -> Verdict {
    let cfg = SamplingConfig::default();
    let search = RadiusSearch::default();
    let radius = |n| convexity_radius(&f0_section(n), &cfg, &search).unwrap().lo;
    let r: Vec<f64> = (2..=5).map(radius).collect();
    let checks = [
        (0.2498..=0.2502).contains(&r[0]),
        (0.2002..=0.2022).contains(&r[1]),
        r[2] >= 0.2498,
        r[3] >= 0.2498,
    ];
    let mut detail = format!(
        "s22 {:.5} [{}], s33 {:.5} [{}], s44 {:.5} [{}], s55 {:.5} [{}]",
        r[0], checks[0], r[1], checks[1], r[2], checks[2], r[3], checks[3]
    );
    if !checks[2] {
        // Independent confirmation that s44 really loses convexity below 1/4.
        let (h, g) = f0_coeffs(4);
        let rho = 0.2495;
        let (theta, worst) = (0..20_000)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 20_000.0;
                (t, convex_oracle(&h, &g, Complex::from_polar(rho, t)))
            })
            .fold((0.0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        detail.push_str(&format!(
            "; hand oracle on |z|={rho}: min {worst:.3e} at θ={:.2}°",
            theta.to_degrees()
        ));
    }
    (checks.iter().all(|&b| b), detail)
}

fn c4_g_identity() -> Verdict {
    let mut err = 0.0f64;
    for i in 0..100 {
        for j in 0..100 {
            let r = 0.5 * (i as f64 + 0.5) / 100.0;
            let theta = 2.0 * PI * j as f64 / 100.0;
            err =
                err.max((g_closed_form(r, theta) - g_direct(Complex::from_polar(r, theta))).abs());
        }
    }
    let mut ray_err = 0.0f64;
    for i in 1..=50 {
        let r = 0.25 * i as f64 / 50.0;
        let oracle = -4.0 * r * r * (4.0 * r - 1.0).powi(2);
        ray_err = ray_err
            .max((g_closed_form(r, PI) - oracle).abs())
            .max((g_direct(c(-r, 0.0)) - oracle).abs());
    }
    (
        err <= 1e-12 && ray_err <= 1e-12,
        format!("grid error {err:.2e}, negative-axis error {ray_err:.2e}"),
    )
}

fn c5_dcp_bounds() -> Verdict {
    let cfg = SamplingConfig::default();
    let t = 2.0 / 19.0;
    let a = dcp_bound_a(4, t);
    let a_oracle = (57.0 * t - 6.0) / 256.0;
    let p = DcpProbe::new(t, 0.0, 0.0).unwrap();
    let m_a = royster_ziegler_min(&dcp_phi(&sn(4), t), &p, 0.25, &cfg).min_value;
    let mut ok = (a - a_oracle).abs() <= 1e-15 && m_a >= a - 1e-9;
    let mut detail = format!("case (0,0): min {m_a:.6} vs A {a:.1e}");
    let p = DcpProbe::new(0.0, PI / 2.0, PI / 2.0).unwrap();
    for t in [0.0, 0.105712, -0.105712] {
        let m = royster_ziegler_min(&dcp_phi(&sn(3), t), &p, 0.201254, &cfg).min_value;
        let bound = 0.608489 - 1.60093 * t.abs();
        ok &= m >= bound - 1e-6;
        detail.push_str(&format!("; t={t}: min {m:.6} vs {bound:.6}"));
    }
    (ok, detail)
}

fn c6_dcp_radii() -> Verdict {
    let cfg = SamplingConfig::default();
    let search = RadiusSearch::default();
    let r: Vec<f64> = (2..=4)
        .map(|n| {
            dcp_radius(&sn(n), &default_t_grid(n), &cfg, &search)
                .unwrap()
                .lo
        })
        .collect();
    let ok = r[0] >= 0.2490 && r[1] >= 0.2002 && r[2] >= 0.2490;
    (
        ok,
        format!("s2 {:.5}, s3 {:.5}, s4 {:.5}", r[0], r[1], r[2]),
    )
}

fn c7_convolution() -> Verdict {
    let f = catalog("f0", 256)
        .unwrap()
        .convolve(&catalog("sixgon", 256).unwrap());
    let closed = |z: Complex| z.powi(4) * (2.0 + z.powi(6)) / (1.0 + 2.0 * z.powi(6));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut err = 0.0f64;
    for _ in 0..50 {
        let z = Complex::from_polar(0.8 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI));
        err = err.max((f.dilatation(z).unwrap() - closed(z)).norm());
    }
    let w = f
        .dilatation(Complex::from_polar(0.9, PI / 6.0))
        .unwrap()
        .norm();
    let oracle = closed(Complex::from_polar(0.9, PI / 6.0)).norm();
    (
        err <= 1e-9 && w > 1.0,
        format!("max error {err:.2e}; |ω(0.9e^(iπ/6))| = {w:.4} (closed form {oracle:.4})"),
    )
}

/// `Re (h1*h2 + ε g1*g2)'(z)` from coefficient products, without the
/// library's convolution.
fn theorem1_oracle(f1: &HarmonicMap, f2: &HarmonicMap, eps: Complex, z: Complex) -> f64 {
    let n = f1.degree().min(f2.degree());
    let mut d = c(0.0, 0.0);
    for k in 1..=n {
        let a = f1.h().coeff(k) * f2.h().coeff(k);
        let b = f1.g().coeff(k) * f2.g().coeff(k);
        d += (a + eps * b) * k as f64 * z.powi(k as i32 - 1);
    }
    d.re
}

fn c8_convolution_margins() -> Verdict {
    let grid = DiskGrid {
        r_max: 0.99,
        n_r: 64,
        n_theta: 256,
    };
    let cfg = SamplingConfig {
        lambda_sweep: 64,
        ..SamplingConfig::default()
    };
    let mut ok = true;
    let mut worst = f64::INFINITY;
    let pairs = theorem1_pairs();
    for (f1, alpha, f2, beta) in &pairs {
        let gamma = theorem1_gamma(*alpha, *beta);
        let m1 = ph0_disk_min(f1, *alpha, &grid).min_value;
        let m2 = gh0_disk_min(f2, *beta, &grid).min_value;
        let (rep, eps) = theorem1_sweep(f1, f2, gamma, &cfg, &grid);
        let oracle = theorem1_oracle(f1, f2, eps, rep.argmin) - gamma;
        ok &= gamma >= 0.0 && m1 > 0.0 && m2 > 0.0 && rep.min_value > -1e-9;
        ok &= (oracle - rep.min_value).abs() <= 1e-12;
        worst = worst.min(rep.min_value);
    }
    (
        ok,
        format!("{} pairs, worst margin {worst:.6}", pairs.len()),
    )
}

fn c9_collisions() -> Verdict {
    let opts = CollisionSearch::default();
    let found = |name: &str| collision_search(&catalog(name, 4).unwrap(), 0.95, &opts);
    let hits = ["example1(0.8,0)", "example1(1.2,0.5)"].map(|n| found(n).is_some());
    let misses = ["example1(0.4,0)", "example1(0.45,0)"].map(|n| found(n).is_none());
    let (z1, z2) = (c(0.625, 0.2), c(0.625, -0.2));
    let f = |z: Complex| z + 0.8 * z.conj() * z.conj();
    let hand = (f(z1) - f(z2)).norm();
    let lib = collision_residual(&catalog("example1(0.8,0)", 4).unwrap(), z1, z2);
    let ok = hits.iter().chain(&misses).all(|&b| b) && hand <= 1e-10 && lib <= 1e-10;
    (
        ok,
        format!("hits {hits:?}, misses {misses:?}, pair residual {lib:.1e} (hand {hand:.1e})"),
    )
}

fn c10_shear_koebe() -> Verdict {
    let n = 64;
    let target = rational_expand(&[0.0, 1.0], &[1.0, -1.0], n).unwrap();
    let spec = ShearSpec::new(
        target,
        PowerSeries::from_real(&[0.0, -1.0]).unwrap(),
        ShearMode::Sum,
    )
    .unwrap();
    let f = shear(&spec).unwrap();
    let shear_err = (1..=n)
        .map(|k| {
            let a = (k as f64 + 1.0) / 2.0;
            let b = -(k as f64 - 1.0) / 2.0;
            (f.h().coeff(k) - a).norm().max((f.g().coeff(k) - b).norm())
        })
        .fold(0.0, f64::max);

    let koebe = catalog("koebe_harmonic", 30).unwrap();
    let mut slice_err = 0.0f64;
    let mut grows = true;
    for lambda in [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)] {
        let slice = koebe.slice(lambda).unwrap();
        for k in 1..=30 {
            let n = k as f64;
            let phi =
                (2.0 * n * n * (1.0 + lambda) + 3.0 * n * (1.0 - lambda) + (1.0 + lambda)) / 6.0;
            slice_err = slice_err.max((slice.coeff(k) - phi).norm());
            if lambda == c(1.0, 0.0) && k >= 2 {
                grows &= slice.coeff(k).norm() > n;
            }
        }
    }
    (
        shear_err <= 1e-12 && slice_err <= 1e-12 && grows,
        format!("shear error {shear_err:.1e}, slice error {slice_err:.1e}, |φ(1,n)| > n: {grows}"),
    )
}

fn c11_origin_limit() -> Verdict {
    let rho = 1e-3;
    let mut worst = 0.0f64;
    let mut names = Vec::new();
    for info in CATALOG {
        let f = catalog(info.example, 32).unwrap();
        if f.g().coeff(1) != c(0.0, 0.0) {
            continue;
        }
        names.push(info.example);
        for k in 0..64 {
            let z = Complex::from_polar(rho, 2.0 * PI * k as f64 / 64.0);
            let v = convex_criterion(&f, z).map_or(f64::INFINITY, |v| (v - 1.0).abs());
            worst = worst.max(v / rho);
        }
    }
    (
        worst <= 10.0 && names.len() >= 5,
        format!("{} maps, max |F-1|/|z| = {worst:.4}", names.len()),
    )
}

fn c12_determinism() -> Verdict {
    let base = SamplingConfig::default();
    let fine = base.clone().with_n_theta(2 * base.n_theta);
    let coarse_r = suite_radii(&base);
    let fine_r = suite_radii(&fine);
    let mut drift = 0.0f64;
    let mut ok = true;
    for ((id, a), (_, b)) in coarse_r.iter().zip(&fine_r) {
        match (a, b) {
            (Ok(a), Ok(b)) => drift = drift.max((a.lo - b.lo).abs()).max((a.hi - b.hi).abs()),
            _ => {
                ok = false;
                eprintln!("radius {id} failed");
            }
        }
    }
    let report = |cfg: &SamplingConfig| {
        serde_json::to_vec(&run_suite(cfg, &[]).unwrap().without_timing()).unwrap()
    };
    let stable = report(&base) == report(&base);
    (
        ok && drift <= 1e-3 && stable,
        format!(
            "{} radii, max drift {drift:.2e}, report byte-stable: {stable}",
            coarse_r.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("F-value", c1_f_value),
        ("sharp dilatation", c2_sharp_dilatation),
        ("section convexity radii", c3_section_radii),
        ("G identity", c4_g_identity),
        ("DCP case bounds", c5_dcp_bounds),
        ("DCP radii", c6_dcp_radii),
        ("convolution dilatation", c7_convolution),
        ("convolution margins", c8_convolution_margins),
        ("collision threshold", c9_collisions),
        ("shear and coefficients", c10_shear_koebe),
        ("origin limit", c11_origin_limit),
        ("determinism and grid", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| (false, "panicked".to_string()));
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {:>2} {name}: {detail} ({:.1}s)",
            i + 1,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!ok);
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
