//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line to
//! stderr before asserting, so a run with `--nocapture` (or a failing run)
//! shows a summary per property.

mod common;

use std::io::Write;
use std::process::Command;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::{all_orders, det_rows, table_mul, table_nested, table_product};
use quatcomm_core::exponential::{naive_derivative, noncommuting_witness_path, qexp, qexp_derivative, qexp_series};
use quatcomm_core::harness::{replay, run_harness, sample, trial_rng, Outcome, Sample};
use quatcomm_core::similarity::{
    class_count_bound, conjugate_by, enumerate_class_partition, is_similar, multiproduct, product_swap_witness,
    quad_re_difference_direct, triple_re_difference, triple_similar_criterion,
};
use quatcomm_core::{
    flat_formula, nested_commutator, parse, ClaimId, HarnessConfig, HarnessReport, Permutation, Quaternion,
    Rational, Scalar, Verdict,
};

type QR = Quaternion<Rational>;
type QF = Quaternion<f64>;

const SEED: u64 = 20240611;

fn report(label: &str, ok: bool, detail: impl AsRef<str>) {
    let status = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "{status} {label}: {}", detail.as_ref());
    assert!(ok, "{label}: {}", detail.as_ref());
}

fn harness(claim: ClaimId, trials: usize, n: Option<usize>) -> HarnessReport {
    let mut config = HarnessConfig::new(claim, trials, SEED);
    if let Some(n) = n {
        config = config.with_n(n);
    }
    run_harness(&config).expect("harness runs")
}

fn histogram(r: &HarnessReport) -> String {
    r.histogram
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn exact_tuple(rng: &mut ChaCha8Rng, n: usize) -> Vec<QR> {
    (0..n)
        .map(|_| QR::from_components([(); 4].map(|_| Rational::draw(rng, 9))))
        .collect()
}

fn float_quat(rng: &mut ChaCha8Rng, scale: f64) -> QF {
    QF::from_components([(); 4].map(|_| f64::draw(rng, 0) * scale))
}

fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

#[test]
fn norm_identities() {
    let mut rng = trial_rng(SEED, 0);
    let one = QF::one();
    let mut worst = 0.0f64;
    let mut bad = 0;
    for _ in 0..100_000 {
        let (p, q) = (float_quat(&mut rng, 1.0), float_quat(&mut rng, 1.0));
        let (pq, qp) = (table_mul(&p, &q), table_mul(&q, &p));
        let (a, b) = (pq.norm_sq().sqrt(), qp.norm_sq().sqrt());
        let c = p.norm_sq().sqrt() * q.norm_sq().sqrt();
        let (d, e) = ((one.clone() - pq).norm_sq().sqrt(), (one.clone() - qp).norm_sq().sqrt());
        worst = worst.max((a - c).abs() / c).max((b - c).abs() / c);
        if !(rel_close(a, c, 1e-12) && rel_close(b, c, 1e-12) && rel_close(d, e, 1e-12)) {
            bad += 1;
        }
    }
    let exact = harness(ClaimId::NormIdentities, 1000, None);
    let mut rng = trial_rng(SEED, 1);
    let mut exact_bad = 0;
    for _ in 0..1000 {
        let pq = exact_tuple(&mut rng, 2);
        let (ab, ba) = (table_mul(&pq[0], &pq[1]), table_mul(&pq[1], &pq[0]));
        let one = QR::one();
        let ok = ab.norm_sq() == ba.norm_sq()
            && ab.norm_sq() == pq[0].norm_sq() * pq[1].norm_sq()
            && (one.clone() - ab).norm_sq() == (one - ba).norm_sq();
        exact_bad += usize::from(!ok);
    }
    report(
        "norm identities",
        bad == 0 && exact_bad == 0 && exact.verdict == Verdict::Confirmed && exact.failed == 0,
        format!(
            "1e5 float pairs, {bad} outside rel 1e-12 (worst {worst:.2e}); 1e3 exact pairs, {exact_bad} mismatches; harness {:?}",
            exact.verdict
        ),
    );
}

#[test]
fn cyclic_similarity() {
    let mut summary = Vec::new();
    let mut ok = true;
    for n in 2..=6 {
        let r = harness(ClaimId::CyclicSimilarity, 500, Some(n));
        ok &= r.verdict == Verdict::Confirmed && r.passed == 500;
        summary.push(format!("n={n} {:?} {}/500", r.verdict, r.passed));
    }
    // independent route: rotations via the basis table, witness b⁻¹ for n = 2
    let mut rng = trial_rng(SEED, 2);
    let mut witness_ok = 0;
    for _ in 0..500 {
        let qs = exact_tuple(&mut rng, 2);
        let (ab, ba) = (table_mul(&qs[0], &qs[1]), table_mul(&qs[1], &qs[0]));
        if qs[1].is_zero() {
            witness_ok += 1;
            continue;
        }
        let s = product_swap_witness(&qs[0], &qs[1]);
        let ok = table_mul(&table_mul(&s.inverse().unwrap(), &ab), &s) == ba;
        witness_ok += usize::from(ok && ab.re == ba.re && ab.norm_sq() == ba.norm_sq());
    }
    ok &= witness_ok == 500;
    summary.push(format!("n=2 witness b⁻¹ {witness_ok}/500"));
    report("cyclic similarity", ok, summary.join("; "));
}

#[test]
fn class_count_bounds() {
    let mut rng = trial_rng(SEED, 3);
    let mut triples = 0;
    let mut triple_ok = 0;
    while triples < 100 {
        let qs = exact_tuple(&mut rng, 3);
        if det_rows(&qs[0], &qs[1], &qs[2]).is_zero() {
            continue;
        }
        triples += 1;
        let part = enumerate_class_partition(&qs).unwrap();
        triple_ok += usize::from(part.class_sizes() == vec![3, 3]);
    }
    let mut quad_max = 0;
    for _ in 0..100 {
        let qs = exact_tuple(&mut rng, 4);
        quad_max = quad_max.max(enumerate_class_partition(&qs).unwrap().class_count());
    }
    let mut ok = triple_ok == 100 && quad_max <= 6;
    let mut summary = vec![format!("generic triples [3,3] {triple_ok}/100"), format!("generic quadruples max {quad_max} classes")];
    for n in 3..=5 {
        let r = harness(ClaimId::ClassCount, 500, Some(n));
        let over = r.failed;
        ok &= r.verdict == Verdict::Confirmed && over == 0;
        summary.push(format!("n={n} bound {} over-bound {over} [{}]", class_count_bound(n), histogram(&r)));
    }
    report("class-count bounds", ok, summary.join("; "));
}

#[test]
fn triple_similarity_equivalence() {
    let mut rng = trial_rng(SEED, 4);
    let mut agree = 0;
    let mut squares = 0;
    let (mut minus, mut plus) = (0, 0);
    for i in 0..200 {
        let mut qs = exact_tuple(&mut rng, 3);
        if i < 100 {
            let (al, be) = (Rational::draw(&mut rng, 9), Rational::draw(&mut rng, 9));
            qs[2].im = qs[0].im.scale(&al) + qs[1].im.scale(&be);
        }
        let (a, b, c) = (&qs[0], &qs[1], &qs[2]);
        let det = det_rows(a, b, c);
        let (abc, acb) = (table_product(&qs, &[0, 1, 2]), table_product(&qs, &[0, 2, 1]));
        let similar = abc.re == acb.re && abc.norm_sq() == acb.norm_sq();
        agree += usize::from(similar == det.is_zero() && triple_similar_criterion(a, b, c) == similar);
        let diff = abc.re - acb.re;
        assert_eq!(diff, triple_re_difference(a, b, c));
        let two = Rational::from_i64(2);
        squares += usize::from(diff.clone() * diff.clone() == Rational::from_i64(4) * det.clone() * det.clone());
        if !det.is_zero() {
            minus += usize::from(diff == -(two.clone() * det.clone()));
            plus += usize::from(diff == two * det);
        }
    }
    let r = harness(ClaimId::Lemma3, 200, None);
    report(
        "triple similarity ⇔ det = 0",
        agree == 200 && squares == 200 && r.verdict == Verdict::Confirmed,
        format!(
            "agreement {agree}/200, squared identity {squares}/200; sign: re(abc)-re(acb) = -2det in {minus}, +2det in {plus} nondegenerate cases; harness [{}]",
            histogram(&r)
        ),
    );
}

#[test]
fn four_factor_formula() {
    let first = harness(ClaimId::Case4Formula, 1000, None);
    let second = harness(ClaimId::Case4Formula, 1000, None);
    let deterministic = first.to_json() == second.to_json();
    let mut rng = trial_rng(SEED, 5);
    let mut planar = 0;
    let mut pure = 0;
    for _ in 0..100 {
        let qs = quatcomm_core::harness::draw_planar::<Rational>(&mut rng, 9, 4);
        let direct = table_product(&qs, &[0, 1, 2, 3]).re - table_product(&qs, &[0, 3, 2, 1]).re;
        planar += usize::from(direct.is_zero() && quad_re_difference_direct(&qs[0], &qs[1], &qs[2], &qs[3]).is_zero());
        let ps: Vec<QR> = exact_tuple(&mut rng, 4).into_iter().map(|q| QR::pure(q.im)).collect();
        let (abcd, adcb) = (table_product(&ps, &[0, 1, 2, 3]), table_product(&ps, &[0, 3, 2, 1]));
        pure += usize::from(abcd.re == adcb.re && abcd.norm_sq() == adcb.norm_sq() && is_similar(&abcd, &adcb));
    }
    report(
        "four-factor closed form",
        deterministic && first.verdict == Verdict::Confirmed && planar == 100 && pure == 100,
        format!(
            "1000 quadruples: {:?} ({} pass, {} counterexamples, reproducible={deterministic}) [{}]; planar direct=0 {planar}/100; pure abcd~adcb {pure}/100",
            first.verdict,
            first.passed,
            first.counterexamples.len(),
            histogram(&first)
        ),
    );
}

/// Brute force: every reordering of the nested commutator equals ± the
/// identity-order one (sign free), unless everything vanishes.
fn brute_force_sign(qs: &[QR]) -> Verdict {
    let orders = all_orders(qs.len());
    let reference = table_nested(qs, &orders[0]);
    let values: Vec<QR> = orders.iter().map(|o| table_nested(qs, o)).collect();
    if values.iter().all(Quaternion::is_zero) {
        return Verdict::Degenerate;
    }
    let all_pm = values.iter().all(|v| *v == reference || *v == -reference.clone());
    if all_pm {
        Verdict::Confirmed
    } else {
        Verdict::Refuted
    }
}

#[test]
fn multicommutator_formula() {
    let mut rng = trial_rng(SEED, 6);
    let mut agree = 0;
    let mut total = 0;
    for n in 2..=5 {
        for _ in 0..200 {
            let qs = exact_tuple(&mut rng, n);
            for order in all_orders(n) {
                let sigma = Permutation::new(order.clone()).unwrap();
                let nested = nested_commutator(&qs, &sigma).unwrap();
                total += 1;
                agree += usize::from(flat_formula(&qs, &sigma).unwrap() == nested && nested == table_nested(&qs, &order));
            }
        }
    }
    let two = harness(ClaimId::MulticomSign, 100, Some(2));
    let three = harness(ClaimId::MulticomSign, 100, Some(3));
    // pin each n = 3 trial to the brute-force verdict and replay the
    // recorded counterexamples from their literals
    let config = HarnessConfig::new(ClaimId::MulticomSign, 100, SEED).with_n(3);
    let mut pinned = 0;
    for (t, row) in three.rows.iter().enumerate() {
        let qs = sample::<Rational>(&config, t);
        let expected = match brute_force_sign(&qs) {
            Verdict::Confirmed => Outcome::Pass,
            Verdict::Refuted => Outcome::Fail,
            _ => Outcome::Degenerate,
        };
        pinned += usize::from(row.outcome == expected);
    }
    let replayed = three
        .counterexamples
        .iter()
        .filter(|c| replay(&three, c).unwrap().outcome == Outcome::Fail)
        .count();
    report(
        "multicommutator formula",
        agree == total
            && two.verdict == Verdict::Confirmed
            && two.failed == 0
            && three.verdict == Verdict::Refuted
            && pinned == 100
            && replayed == three.counterexamples.len(),
        format!(
            "flat=nested {agree}/{total} (n≤5, 200 tuples each); n=2 {:?} ({} pass, {} degenerate); n=3 {:?} ({} fail, {} degenerate), brute-force agreement {pinned}/100, replayed {replayed}/{}",
            two.verdict,
            two.passed,
            two.degenerate,
            three.verdict,
            three.failed,
            three.degenerate,
            three.counterexamples.len()
        ),
    );
}

#[test]
fn exponential_closed_form() {
    let mut rng = trial_rng(SEED, 7);
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let mut q = float_quat(&mut rng, 1.0);
        let norm = q.norm_sq().sqrt();
        let target: f64 = rng.random_range(0.0..=3.0);
        q = q.scale(&(target / norm));
        if i % 50 == 0 {
            // near-real inputs exercise the degenerate-axis branch
            q.im = q.im.scale(&1e-14);
        }
        worst = worst.max(qexp(&q).distance(&qexp_series(&q, 40)));
    }
    report(
        "exponential closed form",
        worst <= 1e-10,
        format!("1e4 quaternions with |q| ≤ 3, max |qexp - series| = {worst:.3e} (≤ 1e-10)"),
    );
}

#[test]
fn exponential_derivative() {
    let r = harness(ClaimId::ExpDerivative, 100, None);
    let path = noncommuting_witness_path();
    let jet = path.jet(0.7);
    let closed = qexp_derivative(&jet);
    let naive_gap = naive_derivative(&jet).distance(&closed);
    report(
        "exponential derivative",
        r.verdict == Verdict::Confirmed && r.passed == 100 && naive_gap > 1e-3,
        format!(
            "100 jets: {:?}, fd ratios [{}]; naive formula off by {naive_gap:.3e} on the witness path",
            r.verdict,
            histogram(&r)
        ),
    );
}

#[test]
fn axis_anticommutation() {
    let r = harness(ClaimId::Anticommutation, 1000, None);
    report(
        "axis anticommutation",
        r.verdict == Verdict::Confirmed && r.passed == 1000 && r.degenerate == 0,
        format!("1000 jets: {:?}, {} pass, {} degenerate", r.verdict, r.passed, r.degenerate),
    );
}

fn cli_json(seed: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_quatcomm"))
        .args(["verify", "--claim", "case4-formula", "--trials", "200", "--seed", seed, "--format", "json"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    out.stdout
}

#[test]
fn determinism_and_parsing() {
    let (a, b, c) = (cli_json("11"), cli_json("11"), cli_json("12"));
    let library = HarnessConfig::new(ClaimId::Case4Formula, 200, 11);
    let lib_json = run_harness(&library).unwrap().to_json();
    let reproducible = a == b && a != c && a == lib_json.as_bytes();

    let mut rng = trial_rng(SEED, 10);
    let mut exact_ok = 0;
    for _ in 0..1000 {
        let q = QR::from_components([(); 4].map(|_| {
            if rng.random_bool(0.2) {
                Rational::zero()
            } else {
                Rational::draw(&mut rng, 1_000_000)
            }
        }));
        exact_ok += usize::from(parse::<Rational>(&q.to_string()).unwrap() == q);
    }
    let mut float_ok = 0;
    for _ in 0..1000 {
        let q = QF::from_components([(); 4].map(|_| loop {
            let x = f64::from_bits(rng.random());
            if x.is_finite() {
                break if rng.random_bool(0.1) { 0.0 } else { x };
            }
        }));
        float_ok += usize::from(parse::<f64>(&q.to_string()).unwrap() == q);
    }
    report(
        "determinism and parsing",
        reproducible && exact_ok == 1000 && float_ok == 1000,
        format!(
            "same seed byte-identical={}, library==cli={}; round-trip exact {exact_ok}/1000, float {float_ok}/1000",
            a == b,
            a == lib_json.as_bytes()
        ),
    );
}

#[test]
fn witness_products_by_table() {
    // a consistency check between the two product routes on the witnesses
    // produced by the similarity module
    let mut rng = trial_rng(SEED, 11);
    for _ in 0..100 {
        let qs = exact_tuple(&mut rng, 3);
        let base = multiproduct(&qs, &Permutation::identity(3)).unwrap();
        let rotated = multiproduct(&qs, &Permutation::rotation(3, 1)).unwrap();
        assert_eq!(base, table_product(&qs, &[0, 1, 2]));
        if base.is_zero() {
            continue;
        }
        let s = quatcomm_core::similarity_witness(&base, &rotated).unwrap();
        assert_eq!(conjugate_by(&base, &s).unwrap(), rotated);
    }
}
