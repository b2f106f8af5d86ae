//! Acceptance criteria 1–8, each with its runtime limit. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{relabel, same_up_to_label_permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torsion_bench::adem::{normalize, parse_expression, Generator, SteenrodElement};
use torsion_bench::exotic::{two_order_zero_certificate, verify, Z4Matrix, Z4Triangle};
use torsion_bench::modules::{
    consistency_check, direct_sum, hypothetical_cb_module, is_decomposable, is_decomposable_exhaustive, moore_module,
    shift, sphere_module, tensor, violation_classes, FiniteModule,
};
use torsion_bench::oracle::oracle_equal;
use torsion_bench::stems::{
    associator_obstruction, moore_endomorphisms, moore_homotopy, mult_by_n, AbelianGroup, StemsTable,
};
use torsion_bench::{Prime, Result};

fn random_word(p: Prime, rng: &mut ChaCha8Rng, max_len: usize, max_degree: i64) -> Vec<Generator> {
    let gens = Generator::up_to_degree(p, max_degree);
    let len = rng.gen_range(1..=max_len);
    let mut word = Vec::new();
    let mut degree = 0;
    while word.len() < len {
        let fitting: Vec<_> = gens.iter().filter(|g| degree + g.degree(p) <= max_degree).collect();
        if fitting.is_empty() {
            break;
        }
        let g = *fitting[rng.gen_range(0..fitting.len())];
        degree += g.degree(p);
        word.push(g);
    }
    word
}

fn criterion_1() -> Result<String> {
    let p = Prime::THREE;
    let a = normalize(&parse_expression("(P^3)^3", p)?);
    let b = normalize(&parse_expression("(P^7 P^1 - P^8) P^1", p)?);
    let ok = a == b && !a.is_zero();
    Ok(format!("{}: both sides normalize to {a}", verdict(ok)))
}

fn criterion_2() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    let mut checked = 0;
    for p in [Prime::TWO, Prime::THREE, Prime::FIVE] {
        for _ in 0..500 {
            let w = random_word(p, &mut rng, 5, 30);
            let e = SteenrodElement::word(p, &w)?;
            if !oracle_equal(&e, &normalize(&e), 30)? {
                failures.push(e.to_string());
            }
            checked += 1;
        }
    }
    Ok(format!("{}: {checked} words, {} disagreements {failures:?}", verdict(failures.is_empty()), failures.len()))
}

fn criterion_3() -> Result<String> {
    let m = moore_module(Prime::TWO);
    let square = tensor(&m, &m)?;
    let sq2 = square.generator_matrix(Generator::Sq(2), 0);
    let split = is_decomposable(&square)?.is_decomposable();
    let split_exhaustive = is_decomposable_exhaustive(&square)?;
    let ok = square.total_dim() == 4 && !sq2.is_zero() && !split && !split_exhaustive;
    Ok(format!(
        "{}: dimension {}, Sq^2 from degree 0 {:?}, decomposable {split} (exhaustive {split_exhaustive})",
        verdict(ok),
        square.total_dim(),
        sq2.to_rows()
    ))
}

fn criterion_4() -> Result<String> {
    let t = StemsTable::reference();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [3, 5, 7, 9, 15] {
        let g = moore_endomorphisms(&t, n).group;
        ok &= g.group() == Some(&AbelianGroup::cyclic(n));
        parts.push(format!("[S/{n},S/{n}] = {g}"));
    }
    let two = moore_endomorphisms(&t, 2);
    ok &= two.group.group() == Some(&AbelianGroup::cyclic(4)) && two.identity_order == Some(4);
    parts.push(format!("[S/2,S/2] = {}", two.group));
    let pi1_2 = moore_homotopy(&t, 2, 1);
    let pi1_3 = moore_homotopy(&t, 3, 1);
    ok &= pi1_2.group() == Some(&AbelianGroup::cyclic(2)) && pi1_3.is_trivial() == Some(true);
    parts.push(format!("π_1(S/2) = {pi1_2}, π_1(S/3) = {pi1_3}"));
    Ok(format!("{}: {}", verdict(ok), parts.join("; ")))
}

fn criterion_5() -> Result<String> {
    let p = Prime::THREE;
    let classes = violation_classes(&consistency_check(&hypothetical_cb_module(), 40));
    let cube = parse_expression("(P^3)^3", p)?;
    let ok = classes.len() == 1
        && classes[0].source_degree == 0
        && classes[0].target_degree == 36
        && classes[0].contains_relation(&cube);
    let found: Vec<_> = classes.iter().map(|c| format!("{}→{}", c.source_degree, c.target_degree)).collect();
    Ok(format!("{}: violation classes {found:?}", verdict(ok)))
}

fn criterion_6() -> Result<String> {
    let t = StemsTable::reference();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [5, 7, 25, 35] {
        let g = associator_obstruction(&t, n);
        ok &= g.is_trivial() == Some(true);
        parts.push(format!("{n}: {g}"));
    }
    for n in [2, 3] {
        let g = associator_obstruction(&t, n);
        ok &= g.is_trivial() == Some(false);
        parts.push(format!("{n}: {g}"));
    }
    Ok(format!("{}: {}", verdict(ok), parts.join(", ")))
}

fn criterion_7() -> Result<String> {
    let r = verify(2)?;
    let cert = two_order_zero_certificate()?;
    let two = Z4Matrix::scalar(1, 2);
    let expected_cone = Z4Triangle::new(two.clone(), two.clone(), two.clone()).to_string();
    let ok = r.passes()
        && r.compositions_vanish
        && r.rotation_closed
        && r.tr3.filled == r.tr3.commuting_squares
        && cert.passes()
        && cert.two_identity_nonzero
        && cert.cone_triangle == expected_cone;
    Ok(format!(
        "{}: {} triangles, TR3 {}/{}, certificate cone {}",
        verdict(ok),
        r.class_size,
        r.tr3.filled,
        r.tr3.commuting_squares,
        cert.cone_triangle
    ))
}

fn random_cell(p: Prime, rng: &mut ChaCha8Rng) -> FiniteModule {
    let s = rng.gen_range(-3..6);
    if rng.gen_bool(0.5) {
        shift(&moore_module(p), s)
    } else {
        sphere_module(p, s)
    }
}

fn random_element(p: Prime, rng: &mut ChaCha8Rng) -> Result<SteenrodElement> {
    let mut e = SteenrodElement::zero(p);
    for _ in 0..rng.gen_range(1..=3) {
        let w = random_word(p, rng, 4, 24);
        let c = rng.gen_range(1..p.value() as i64);
        e = e.add(&SteenrodElement::term(p, c, &w)?)?;
    }
    Ok(e)
}

fn les_checks(t: &StemsTable) -> (usize, usize) {
    let (mut checked, mut bad) = (0, 0);
    for k in 0..=40 {
        for n in 2..=36u64 {
            let Some(order) = moore_homotopy(t, n, k).order() else { continue };
            let below = if k == 0 { Some(AbelianGroup::trivial()) } else { t.group(k - 1) };
            if let (Some(top), Some(below)) = (t.group(k), below) {
                let expected = mult_by_n(&top, n).1.order().zip(mult_by_n(&below, n).0.order()).map(|(a, b)| a * b);
                checked += 1;
                bad += usize::from(expected != Some(order));
            }
        }
    }
    (checked, bad)
}

fn criterion_8() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let primes = [Prime::TWO, Prime::THREE, Prime::FIVE];
    let (mut normal, mut coassoc, mut sums, mut failures) = (0, 0, 0, Vec::new());
    for &p in &primes {
        for _ in 0..200 {
            let (a, b) = (random_element(p, &mut rng)?, random_element(p, &mut rng)?);
            let c = rng.gen_range(1..p.value());
            let na = normalize(&a);
            let linear = normalize(&a.scale(c).add(&b)?) == na.scale(c).add(&normalize(&b))?;
            let idempotent = normalize(&na) == na && na.is_admissible();
            let w = SteenrodElement::word(p, &random_word(p, &mut rng, 5, 30))?;
            let nw = normalize(&w);
            let degree = nw.is_zero() || nw.degree() == w.degree();
            if !(linear && idempotent && degree) {
                failures.push(format!("normalization at p={p}: {a} / {b} / {w}"));
            }
            normal += 1;
        }
        let mut tried = 0;
        while tried < 60 {
            let (a, b, c) = (random_cell(p, &mut rng), random_cell(p, &mut rng), random_cell(p, &mut rng));
            if a.total_dim() * b.total_dim() * c.total_dim() > 8 {
                continue;
            }
            tried += 1;
            let (a, b, c) = (relabel(&a, "a"), relabel(&b, "b"), relabel(&c, "c"));
            let left = tensor(&tensor(&a, &b)?, &c)?;
            let right = tensor(&a, &tensor(&b, &c)?)?;
            if !same_up_to_label_permutation(&left, &right) {
                failures.push(format!("coassociativity at p={p}"));
            }
            coassoc += 1;
            let s = direct_sum(&tensor(&a, &b)?, &c)?;
            if !is_decomposable(&s)?.is_decomposable() {
                failures.push(format!("sum not split at p={p}"));
            }
            sums += 1;
        }
    }
    let lit = StemsTable::with_file(concat!(env!("CARGO_MANIFEST_DIR"), "/data/stems_literature.json"))?;
    let (c1, b1) = les_checks(&StemsTable::reference());
    let (c2, b2) = les_checks(&lit);
    if b1 + b2 > 0 {
        failures.push(format!("{} LES order mismatches", b1 + b2));
    }
    Ok(format!(
        "{}: {normal} normalization cases, {coassoc} coassociativity cases, {sums} split sums, {} LES orders; failures {failures:?}",
        verdict(failures.is_empty()),
        c1 + c2
    ))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "mismatch"
    }
}

fn main() {
    type Check = fn() -> Result<String>;
    let criteria: [(&str, Check, Duration); 8] = [
        ("1 Adem identity at p=3", criterion_1, Duration::from_secs(1)),
        ("2 oracle soundness", criterion_2, Duration::from_secs(60)),
        ("3 S/2 ∧ S/2 cohomology", criterion_3, Duration::from_secs(1)),
        ("4 Moore endomorphisms and π_1", criterion_4, Duration::from_secs(1)),
        ("5 hypothetical cone relation check", criterion_5, Duration::from_secs(5)),
        ("6 associativity obstructions", criterion_6, Duration::from_secs(1)),
        ("7 F(Z/4) at rank ≤ 2", criterion_7, Duration::from_secs(30)),
        ("8 invariant suites", criterion_8, Duration::from_secs(120)),
    ];
    let mut all = true;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(detail) => (detail.starts_with("ok") && elapsed < limit, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        println!(
            "{} criterion {name} ({:.3} s, limit {} s) {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
