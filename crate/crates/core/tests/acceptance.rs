//! Acceptance suite: one test per release criterion, each printing a single
//! pass/fail line. Run with `cargo test -p p8series --test acceptance --
//! --nocapture` to see the lines for passing criteria too.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use p8series::congruences::is_gen_pentagonal;
use p8series::congruences::{claims_for, scan_all, scan_claim, Verdict};
use p8series::eta::registry_case;
use p8series::identities::{
    verify_binomial_congruence, verify_h_displays, verify_h_powers, verify_lemma1,
    verify_registry_case, verify_theorem_t1,
};
use p8series::tables::{check_lemma4, check_lemma5, v2, Valuation, XTable};
use p8series::{p8_oracle, p8_series, M64};

fn conclude(number: u32, what: &str, pass: bool) {
    println!(
        "criterion {number} ({what}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {number} failed: {what}");
}

#[test]
fn criterion_1_oracle_equivalence() {
    let started = Instant::now();
    let series = p8_series::<BigInt>(2000);
    let oracle = p8_oracle(2000);
    let elapsed = started.elapsed();

    let elementwise = series.coeffs() == &oracle[..];
    let spot = series.coeff(1) == &BigInt::from(8) && series.coeff(3) == &BigInt::from(192);
    let fast = elapsed < Duration::from_secs(30);
    if !fast {
        eprintln!("criterion 1 runtime: {elapsed:?}");
    }
    conclude(
        1,
        "p8 series equals oracle to n = 2000 within 30 s",
        elementwise && spot && fast,
    );
}

#[test]
fn criterion_2_matrix_fidelity() {
    let x = XTable::new();
    let printed_m: [[i128; 8]; 8] = [
        [8, 0, 0, 0, 0, 0, 0, 0],
        [1, 1 << 7, 0, 0, 0, 0, 0, 0],
        [0, 3 << 3, 1 << 11, 0, 0, 0, 0, 0],
        [0, 1, 1 << 9, 1 << 15, 0, 0, 0, 0],
        [0, 0, 5 << 3, 5 << 11, 1 << 19, 0, 0, 0],
        [0, 0, 1, 9 << 7, 3 << 16, 1 << 23, 0, 0],
        [0, 0, 0, 7 << 3, 7 << 12, 7 << 19, 1 << 27, 0],
        [0, 0, 0, 1, 1 << 11, 5 << 17, 1 << 26, 1 << 31],
    ];
    let window = x.m_table().window(8, 8);
    let m_ok = (0..8).all(|j| (0..8).all(|k| window[j][k] == BigInt::from(printed_m[j][k])));

    let printed_x: [Vec<BigInt>; 3] = [
        vec![
            BigInt::from(8),
            BigInt::from(0),
            BigInt::from(0),
            BigInt::from(0),
            BigInt::from(0),
        ],
        vec![
            BigInt::from(3) << 6u32,
            BigInt::from(1) << 14u32,
            BigInt::from(0),
            BigInt::from(0),
            BigInt::from(0),
        ],
        vec![
            BigInt::from(3) << 6u32,
            BigInt::from(31) << 15u32,
            BigInt::from(227) << 21u32,
            BigInt::from(7) << 33u32,
            BigInt::from(1) << 41u32,
        ],
    ];
    let x_ok = (1..=3usize)
        .all(|alpha| (1..=5usize).all(|j| x.entry(alpha, j) == printed_x[alpha - 1][j - 1]));

    conclude(
        2,
        "printed m and x windows reproduced entry-for-entry",
        m_ok && x_ok,
    );
}

#[test]
fn criterion_3_identity_suite() {
    let exact_ok = ["E6", "E7", "E1", "E11", "E020", "E063"]
        .iter()
        .all(|tag| verify_registry_case::<BigInt>(registry_case(tag).unwrap(), 500).pass);
    let lemma1_reports = verify_lemma1::<BigInt>(12, 300);
    let lemma1_ok = lemma1_reports.len() == 12 && lemma1_reports.iter().all(|r| r.pass);
    let x = XTable::new();
    let h_reports = verify_h_powers::<BigInt>(12, 300, x.m_table());
    let h_ok = h_reports.len() == 13 && h_reports.iter().all(|r| r.pass);
    let displays_ok = verify_h_displays(300).iter().all(|r| r.pass);
    conclude(
        3,
        "identities at order 500 and power recurrences to j = 12 at order 300",
        exact_ok && lemma1_ok && h_ok && displays_ok,
    );
}

#[test]
fn criterion_4_deep_generating_functions() {
    let x = XTable::new();
    let alpha_1 = verify_theorem_t1(1, 500, &x);
    let alpha_2 = verify_theorem_t1(2, 100, &x);
    conclude(
        4,
        "deep families exact at alpha = 1 (order 500) and alpha = 2 (n <= 100)",
        alpha_1.iter().chain(&alpha_2).all(|r| r.pass),
    );
}

#[test]
fn criterion_5_valuation_lemmas() {
    let x = XTable::new();
    let l4 = check_lemma4(x.m_table(), 24);
    let l5 = check_lemma5(&x, 8);
    // Equality at k = 1 in both branches: v2(x_{2j-1,1}) = 3j, v2(x_{2j,1}) = 3(j+1).
    let equalities = (1..=4u64).all(|j| {
        v2(&x.entry(2 * j as usize - 1, 1)) == Valuation::Finite(3 * j)
            && v2(&x.entry(2 * j as usize, 1)) == Valuation::Finite(3 * (j + 1))
    });
    conclude(
        5,
        "valuation bounds to j = 24 and alpha = 8, tight at k = 1",
        l4.pass && l5.pass && equalities,
    );
}

#[test]
fn criterion_6_congruence_scans() {
    let started = Instant::now();
    let alpha_1 = scan_all::<M64>(1, 2000, true).unwrap();
    let alpha_2 = scan_all::<M64>(2, 200, true).unwrap();
    let elapsed = started.elapsed();

    let all_pass = alpha_1
        .iter()
        .chain(&alpha_2)
        .all(|r| r.verdict == Verdict::Pass && r.n_scanned == r.n_max);
    let fast = elapsed < Duration::from_secs(60);
    if !fast {
        eprintln!("criterion 6 runtime: {elapsed:?}");
    }
    let deepest_modulus = claims_for(2).iter().map(|c| c.mod_exponent).max().unwrap();
    conclude(
        6,
        "all families pass at alpha <= 1 (n <= 2000) and alpha <= 2 (n <= 200) within 60 s",
        all_pass && fast && deepest_modulus == 16,
    );
}

#[test]
fn criterion_7_exception_necessity() {
    let claims = claims_for(1);
    let e102 = claims.iter().find(|c| c.id == "E102").unwrap();
    let p8 = p8_series::<M64>((e102.step * 30 + e102.residue) as usize);
    let without = scan_claim(e102, 30, &p8, false).unwrap();
    let failed_pentagonally = match (&without.verdict, &without.counterexample) {
        (Verdict::Fail, Some(ce)) => ce.n <= 30 && is_gen_pentagonal(ce.n),
        _ => false,
    };
    let with = scan_claim(e102, 30, &p8, true).unwrap();
    conclude(
        7,
        "dropping the pentagonal exception fails within n <= 30, at a pentagonal n",
        failed_pentagonally && with.verdict == Verdict::Pass,
    );
}

#[test]
fn criterion_8_binomial_congruences() {
    let reports = verify_binomial_congruence::<M64>(2, 6, 300);
    conclude(
        8,
        "f_k^(2^m) = f_2k^(2^(m-1)) mod 2^m for k <= 2, m <= 6 at order 300",
        reports.len() == 12 && reports.iter().all(|r| r.pass),
    );
}

#[test]
fn criterion_9_ring_consistency() {
    // Rerun the modular verdicts of criteria 6-8 over exact integers with
    // every series order capped at 500.
    let scan_verdicts = |alpha_max: u32, n_max: u64| {
        let modular = scan_all::<M64>(alpha_max, n_max, true).unwrap();
        let exact = scan_all::<BigInt>(alpha_max, n_max, true).unwrap();
        modular.len() == exact.len()
            && modular
                .iter()
                .zip(&exact)
                .all(|(m, e)| m.id == e.id && m.verdict == e.verdict)
    };
    // Deepest arguments: 32 * 14 + 23 = 471 and 128 * 3 + 91 = 475.
    let scans_ok = scan_verdicts(1, 14) && scan_verdicts(2, 3);

    let claims = claims_for(1);
    let e102 = claims.iter().find(|c| c.id == "E102").unwrap();
    let modular_fail = {
        let p8 = p8_series::<M64>((e102.step * 30 + e102.residue) as usize);
        scan_claim(e102, 30, &p8, false).unwrap()
    };
    let exact_fail = {
        let p8 = p8_series::<BigInt>((e102.step * 30 + e102.residue) as usize);
        scan_claim(e102, 30, &p8, false).unwrap()
    };
    let exception_ok = modular_fail.verdict == exact_fail.verdict
        && modular_fail.counterexample.as_ref().map(|c| c.n)
            == exact_fail.counterexample.as_ref().map(|c| c.n);

    let binomial_modular: Vec<bool> = verify_binomial_congruence::<M64>(2, 6, 300)
        .iter()
        .map(|r| r.pass)
        .collect();
    let binomial_exact: Vec<bool> = verify_binomial_congruence::<BigInt>(2, 6, 300)
        .iter()
        .map(|r| r.pass)
        .collect();

    conclude(
        9,
        "exact-integer reruns at order <= 500 reproduce every modular verdict",
        scans_ok && exception_ok && binomial_modular == binomial_exact,
    );
}
