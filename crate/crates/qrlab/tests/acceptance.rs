//! Acceptance suite: every shipped claim, run at its stated range and
//! tolerance. One criterion per test, one PASS/FAIL line printed each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines and timings.

use std::time::Instant;

use rug::Float;

use qrlab::bigcomplex::two_pow_neg;
use qrlab::modcore::{self, PrimeContext};
use qrlab::scan::{run_scan, CheckKind, ScanConfig};
use qrlab::table::{generate_table, TableKind};
use qrlab::{analytic, cyclotomic, quartic, verify};

fn report(id: &str, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("ACCEPTANCE {id} ({what}): PASS");
    } else {
        println!(
            "ACCEPTANCE {id} ({what}): FAIL ({} violations)",
            failures.len()
        );
    }
    assert!(failures.is_empty(), "{id}: {failures:?}");
}

/// NaN-safe pass rule for residuals: anything not strictly below the
/// bound (including NaN) is a failure.
fn below(res: &Float, bound: &Float) -> bool {
    matches!(res.partial_cmp(bound), Some(std::cmp::Ordering::Less))
}

fn scan(checks: &[CheckKind], min: u64, max: u64, jobs: usize) -> Vec<String> {
    let cfg = ScanConfig {
        checks: checks.to_vec(),
        min,
        max,
        jobs,
        ..ScanConfig::default()
    };
    let outcome = run_scan(&cfg).expect("scan runs");
    let mut failures = Vec::new();
    for rep in &outcome.reports {
        for c in &rep.checks {
            if !c.pass {
                failures.push(format!(
                    "p={} {}: computed={} expected={}",
                    rep.prime, c.name, c.computed, c.expected
                ));
            }
        }
    }
    failures
}

#[test]
fn criterion_01_golden_tables() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let mp = generate_table(TableKind::Mp, 100).unwrap();
    let want_mp = [
        "1", "2", "5", "17", "18", "5", "41", "4", "29", "10", "58", "38", "51",
    ];
    let got: Vec<&str> = mp.rows.iter().map(|r| r[1].as_str()).collect();
    if got != want_mp {
        failures.push(format!("mp table: {got:?}"));
    }

    let h1 = generate_table(TableKind::H1, 100).unwrap();
    let want_h1 = [
        "1", "7", "4", "23", "12", "18", "10", "13", "17", "83", "40",
    ];
    let got: Vec<&str> = h1.rows.iter().map(|r| r[1].as_str()).collect();
    if got != want_h1 {
        failures.push(format!("h1 table: {got:?}"));
    }

    let h2 = generate_table(TableKind::H2, 100).unwrap();
    let want_h2 = [
        "1", "3", "8", "5", "19", "13", "29", "17", "14", "18", "56", "40", "14",
    ];
    let got: Vec<&str> = h2.rows.iter().map(|r| r[1].as_str()).collect();
    if got != want_h2 {
        failures.push(format!("h2 table: {got:?}"));
    }

    let elapsed = started.elapsed();
    if elapsed.as_secs_f64() >= 1.0 {
        failures.push(format!("tables took {elapsed:.2?}, budget 1 s"));
    }
    report("01", "golden tables mp/h1/h2 at max 100", &failures);
}

#[test]
fn criterion_02_thm1_scan_to_1e5() {
    let started = Instant::now();
    let failures = scan(&[CheckKind::Thm1], 5, 99_999, 1);
    let serial = started.elapsed();
    let mut failures = failures;
    if serial.as_secs_f64() >= 60.0 {
        failures.push(format!(
            "single-threaded scan took {serial:.2?}, budget 60 s"
        ));
    }
    let started = Instant::now();
    let parallel_failures = scan(&[CheckKind::Thm1], 5, 99_999, 0);
    let parallel = started.elapsed();
    failures.extend(parallel_failures);
    println!(
        "  thm1 p<1e5: serial {serial:.2?}, all-cores {parallel:.2?} (speedup x{:.1})",
        serial.as_secs_f64() / parallel.as_secs_f64().max(1e-9)
    );
    report("02", "Theorem 1.1 for all p = 5 mod 8, p < 1e5", &failures);
}

#[test]
fn criterion_03_thm2_scan_to_1e4() {
    let started = Instant::now();
    let failures = scan(&[CheckKind::Thm2, CheckKind::CSign], 17, 9_999, 0);
    let elapsed = started.elapsed();
    let mut failures = failures;
    if elapsed.as_secs_f64() >= 120.0 {
        failures.push(format!("scan took {elapsed:.2?}, budget 120 s"));
    }
    report(
        "03",
        "Theorem 1.2 sigma and C_p in {+-1} for p = 1 mod 8, p < 1e4",
        &failures,
    );
}

#[test]
fn criterion_04_residue_sum_closed_forms() {
    let mut failures = scan(&[CheckKind::ApClosed], 5, 9_999, 0);
    failures.extend(scan(&[CheckKind::ApBp], 3, 9_999, 0));
    report(
        "04",
        "A_p closed forms and A+B identity for 3 < p < 1e4",
        &failures,
    );
}

#[test]
fn criterion_05_jacobi_sum_suite() {
    let mut failures = scan(&[CheckKind::JacobiCong], 17, 4_999, 0);
    for p in modcore::primes_in_range(17, 4_999) {
        if p % 8 != 1 {
            continue;
        }
        let ctx = PrimeContext::new(p).unwrap();
        let j = quartic::jacobi_sum(&ctx).unwrap();
        let d = quartic::decompose(p).unwrap();
        if j.re != d.a || j.im.unsigned_abs() != 4 * d.b_abs || j.norm() != p {
            failures.push(format!("p={p}: J={j} vs a={}, |b|={}", d.a, d.b_abs));
        }
    }
    report(
        "05",
        "J = a + 4bi shape and congruence for p = 1 mod 8, p < 5000",
        &failures,
    );
}

#[test]
fn criterion_06_unit_congruence() {
    let failures = scan(&[CheckKind::UnitCong], 5, 4_999, 0);
    report(
        "06",
        "a_p = -((p-1)/2)! mod p for p = 1 mod 4, p < 5000",
        &failures,
    );
}

#[test]
fn criterion_07_stickelberger() {
    let mut failures = scan(&[CheckKind::Stickelberger], 17, 1_999, 0);
    // full r-sweep for the four pinned primes
    for p in [17u64, 41, 73, 89] {
        let ctx = PrimeContext::new(p).unwrap();
        for r in 0..=p - 2 {
            match cyclotomic::stickelberger_check(&ctx, r) {
                Ok(rep) => {
                    let fact = modcore::factorial_mod(r, p).value;
                    if modcore::mul_mod(rep.unit_value, fact, p) != p - 1 {
                        failures.push(format!("p={p} r={r}: e_r * r! != -1"));
                    }
                }
                Err(e) => failures.push(format!("p={p} r={r}: {e}")),
            }
        }
    }
    report(
        "07",
        "Stickelberger valuation and unit for p < 2000 plus full sweeps",
        &failures,
    );
}

#[test]
fn criterion_08_numeric_gauss_sums() {
    let mut failures = Vec::new();
    for p in modcore::primes_in_range(3, 999) {
        let res = analytic::quadratic_gauss_sum_check(p, 256).unwrap();
        let bound = two_pow_neg(100, 64) * Float::with_val(64, p).sqrt();
        if !below(&res, &bound) {
            failures.push(format!("tau p={p}: residual {res}"));
        }
    }
    for p in modcore::primes_in_range(17, 499) {
        if p % 8 != 1 {
            continue;
        }
        let ctx = PrimeContext::new(p).unwrap();
        let res = analytic::quartic_gauss_sum_check(&ctx, 256).unwrap();
        let bound = two_pow_neg(80, 64) * Float::with_val(64, p).sqrt();
        if !below(&res, &bound) {
            failures.push(format!("gauss4 p={p}: residual {res}"));
        }
    }
    report(
        "08",
        "tau residual < 2^-100 sqrt(p) (p < 1000), quartic < 2^-80 sqrt(p) (p < 500)",
        &failures,
    );
}

#[test]
fn criterion_09_lemma21_and_w_modulus() {
    let mut failures = Vec::new();
    for p in modcore::primes_in_range(5, 499) {
        if p % 4 != 1 {
            continue;
        }
        let bound = two_pow_neg(80, 64) * Float::with_val(64, p).sqrt();
        let res = analytic::lemma21_check(p, 256).unwrap();
        if !below(&res, &bound) {
            failures.push(format!("lemma21 p={p}: residual {res}"));
        }
        let res = analytic::w_modulus_check(p, 256).unwrap();
        if !below(&res, &bound) {
            failures.push(format!("w-modulus p={p}: residual {res}"));
        }
    }
    report(
        "09",
        "W_p closed form and |W_p|^2 identity for p = 1 mod 4, p < 500",
        &failures,
    );
}

#[test]
fn criterion_10_sun_and_petrov_sun_products() {
    let mut failures = Vec::new();
    for p in modcore::primes_in_range(5, 499) {
        let res = analytic::sun_product_check(p, 256).unwrap();
        let bound = two_pow_neg(80, 64) * Float::with_val(64, p).sqrt();
        if !below(&res, &bound) {
            failures.push(format!("sun-prod p={p}: residual {res}"));
        }
    }
    for p in modcore::primes_in_range(5, 200) {
        if p % 4 != 1 {
            continue;
        }
        let res = analytic::petrov_sun_check(p, 256).unwrap();
        if !below(&res, &two_pow_neg(40, 64)) {
            failures.push(format!("petrov-sun p={p}: residual {res}"));
        }
    }
    report(
        "10",
        "Sun product (3 < p < 500) and Petrov-Sun (p <= 200, adaptive precision)",
        &failures,
    );
}

#[test]
fn criterion_11_harmonic_identities() {
    let mut failures = scan(
        &[CheckKind::HarmonicId, CheckKind::Wolstenholme],
        5,
        9_999,
        0,
    );
    // The H^(2) = 0 congruence genuinely fails at p = 5, the one prime
    // with (p-1) | 4: the sum is the single term 1/1^2 = 1. Pin the
    // boundary value so the exclusion stays justified.
    let boundary = verify::harmonic_sum(5, 2).unwrap();
    if boundary.value.value != 1 {
        failures.push(format!(
            "p=5 H2 boundary value {}, want 1",
            boundary.value.value
        ));
    }
    report(
        "11",
        "harmonic identities (p < 1e4) and Wolstenholme mod p^2",
        &failures,
    );
}

#[test]
fn criterion_12_report_determinism() {
    let bin = env!("CARGO_BIN_EXE_qrlab");
    let run = |jobs: &str| {
        let out = std::process::Command::new(bin)
            .args([
                "verify",
                "--check",
                "thm1,thm2,stickelberger",
                "--min",
                "5",
                "--max",
                "500",
                "--jobs",
                jobs,
            ])
            .output()
            .expect("qrlab runs");
        assert!(out.status.success(), "exit: {:?}", out.status);
        out.stdout
    };
    let single = run("1");
    let eight = run("8");
    let mut failures = Vec::new();
    if single != eight {
        failures.push("JSON reports differ between --jobs 1 and --jobs 8".to_string());
    }
    if single.is_empty() {
        failures.push("empty report".to_string());
    }
    report(
        "12",
        "byte-identical JSON reports across job counts",
        &failures,
    );
}
