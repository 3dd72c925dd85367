//! End-to-end acceptance checks, one test per criterion.
//!
//! Runs without the libtest harness so every `criterion N: PASS|FAIL` line
//! (and one line per sub-check) is printed; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hilbcheck_core::apolarity::{ideal_from_inverse_system, InverseSystem};
use hilbcheck_core::artin::{
    census_report, enumerate_local_hfs, multiplication_operators, recenter, HilbertFunction,
    SUMMARY_TABLE,
};
use hilbcheck_core::fixtures::*;
use hilbcheck_core::groebner::{
    delta_ratio, groebner, ideal_equal, initial_ideal, intersect, points_ideal,
};
use hilbcheck_core::kernel::{DenseMatrix, Field, FieldElement, MinorValuation};
use hilbcheck_core::poly::{Ideal, Ring};
use hilbcheck_core::smooth::{
    change_coordinates, classify_smoothable, project_to_graded, salmon_turnbull_pfaffian, Outcome,
};
use hilbcheck_core::tangent::{
    build_tangent_machine, curve_matrix, curve_multiplicity, curve_syzygies_hold,
    graded_tangent_dimension, tangent_dimension,
};

const SEED: u64 = 20_240_601;
const TIME_LIMIT: Duration = Duration::from_secs(5);

struct Criterion {
    id: u32,
    lines: Vec<(bool, String)>,
}

impl Criterion {
    fn new(id: u32) -> Self {
        Criterion {
            id,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.lines.push((ok, what.into()));
    }

    fn finish(self) -> bool {
        let passed = self.lines.iter().all(|(ok, _)| *ok);
        println!(
            "criterion {}: {}",
            self.id,
            if passed { "PASS" } else { "FAIL" }
        );
        for (ok, line) in &self.lines {
            println!("  [{}] {line}", if *ok { "pass" } else { "FAIL" });
        }
        passed
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn criterion_1_tangent_of_j() -> bool {
    let mut c = Criterion::new(1);
    for (d, want) in [(4, 25), (5, 33), (6, 41)] {
        let (got, took) = timed(|| tangent_dimension(&j_ideal(Field::Rational, d)).unwrap());
        c.check(
            got == want,
            format!("Q, d = {d}: tangent {got}, expected {want}"),
        );
        c.check(
            took < TIME_LIMIT,
            format!("Q, d = {d}: {took:?} under {TIME_LIMIT:?}"),
        );
        for p in [5, 7] {
            let got = tangent_dimension(&j_ideal(Field::prime(p).unwrap(), d)).unwrap();
            c.check(
                got == want,
                format!("F_{p}, d = {d}: tangent {got}, expected {want}"),
            );
        }
    }
    c.finish()
}

fn criterion_2_named_tangent_dimensions() -> bool {
    let mut c = Criterion::new(2);
    for (file, want) in [
        ("x2y2z2xyz.ideal", 21),
        ("u_point.ideal", 24),
        ("w0_monomial.ideal", 33),
    ] {
        let got = tangent_dimension(&load(file)).unwrap();
        c.check(
            got == want,
            format!("{file}: tangent {got}, expected {want}"),
        );
    }
    c.finish()
}

fn criterion_3_degenerations() -> bool {
    let mut c = Criterion::new(3);
    for d in degenerations() {
        let (inw, took) = timed(|| initial_ideal(&d.source, &d.weight).unwrap());
        c.check(
            ideal_equal(&inw, &d.target),
            format!("{}: in_{:?}(source) = target", d.name, d.weight),
        );
        c.check(took < TIME_LIMIT, format!("{}: {took:?}", d.name));
        let split = d.pieces[1..]
            .iter()
            .fold(d.pieces[0].clone(), |a, p| intersect(&a, p).unwrap());
        c.check(
            ideal_equal(&split, &d.source),
            format!("{}: intersection of pieces = source", d.name),
        );
        let (ns, nt) = (
            groebner(&d.source).colength().unwrap(),
            groebner(&d.target).colength().unwrap(),
        );
        c.check(
            ns == nt,
            format!("{}: colengths {ns} and {nt} agree", d.name),
        );
    }
    let mono = load("x2y2z2xyz.ideal");
    c.check(
        ideal_equal(&initial_ideal(&mono, &[3, 1, 2]).unwrap(), &mono),
        "monomial ideal is its own initial ideal",
    );
    c.finish()
}

fn criterion_4_curve_multiplicity() -> bool {
    let mut c = Criterion::new(4);
    let t = Field::RationalFunction.parameter().unwrap();
    c.check(
        curve_syzygies_hold(&t),
        "the eight curve syzygies are relations over Q(t)",
    );
    let (m, took) = timed(|| curve_multiplicity(32, SEED).unwrap());
    c.check(
        m.valuation == MinorValuation::Finite(16),
        format!("t-adic valuation of maximal minors: {:?}", m.valuation),
    );
    c.check(
        m.sampled.is_monomial() && m.sampled.valuation() == Some(16),
        format!(
            "gcd of {} sampled minors is c * t^{:?} (seed {SEED})",
            m.sampled.samples,
            m.sampled.valuation()
        ),
    );
    c.check(
        took < Duration::from_secs(300),
        format!("curve computation took {took:?}"),
    );
    let one = Field::RationalFunction.from_i64(1);
    let at_one = curve_matrix(&one).unwrap();
    c.check(
        at_one.rank() == 24,
        format!("rank at t = 1: {}", at_one.rank()),
    );
    let mut zeroed = m.matrix.clone();
    for r in 0..zeroed.rows() {
        for k in 24..28 {
            zeroed.set(r, k, Field::RationalFunction.zero());
        }
    }
    let v = hilbcheck_core::kernel::t_adic_minor_valuation(&zeroed, 24).unwrap();
    c.check(
        v == MinorValuation::Infinite,
        format!("with the q7 columns zeroed: {v:?}"),
    );
    c.finish()
}

fn criterion_5_pfaffian_fixtures() -> bool {
    let mut c = Criterion::new(5);
    let j = salmon_turnbull_pfaffian(&j_ideal(Field::Rational, 4)).unwrap();
    c.check(
        !j.vanishes,
        format!(
            "J: block Pfaffian {} (intrinsic {})",
            j.pfaffian_block, j.pfaffian_intrinsic
        ),
    );
    for (name, ideal) in [
        ("salmon", salmon_ideal().unwrap()),
        ("salmon_3var", salmon_ideal_three_variables().unwrap()),
    ] {
        let r = salmon_turnbull_pfaffian(&ideal).unwrap();
        c.check(r.vanishes, format!("{name}: Pfaffian {}", r.pfaffian_block));
    }
    for s in 0..20 {
        let pts = random_points_ideal(4, 8, SEED + s).unwrap();
        let (centered, _) = recenter(&pts).unwrap();
        let graded = project_to_graded(&centered).unwrap();
        let r = salmon_turnbull_pfaffian(&graded).unwrap();
        c.check(
            r.vanishes,
            format!(
                "8 random points, seed {}: projected Pfaffian {}",
                SEED + s,
                r.pfaffian_block
            ),
        );
    }
    let mut ratios = BTreeSet::new();
    let mut together = true;
    let mut ideals: Vec<Ideal> = g0_prime_fixtures()
        .unwrap()
        .into_iter()
        .map(|(_, i)| i)
        .collect();
    ideals.push(salmon_ideal_three_variables().unwrap());
    for s in 0..10 {
        ideals.push(
            change_coordinates(
                &j_ideal(Field::Rational, 4),
                &random_invertible(4, SEED + s),
            )
            .unwrap(),
        );
    }
    for i in &ideals {
        let r = salmon_turnbull_pfaffian(i).unwrap();
        together &= r.pfaffian_block.is_zero() == r.pfaffian_intrinsic.is_zero();
        if let Some(q) = r.normalized_ratio() {
            ratios.insert(q.to_string());
        }
    }
    c.check(
        together,
        format!(
            "block and intrinsic vanish together on {} ideals",
            ideals.len()
        ),
    );
    c.check(
        ratios.len() == 1,
        format!("block / (intrinsic * det(C)^2) takes values {ratios:?}"),
    );
    c.finish()
}

fn criterion_6_graded_tangent_facts() -> bool {
    let mut c = Criterion::new(6);
    for (name, i) in g0_prime_fixtures().unwrap() {
        let h0 = graded_tangent_dimension(&i, 0).unwrap();
        c.check(h0 == 21, format!("{name}: Hom_0 = {h0}"));
        let m = build_tangent_machine(&i).unwrap();
        let h1 = m.hom_minus_one();
        c.check(h1 >= 4, format!("{name}: Hom_-1 = {h1} >= 4"));
        c.check(
            m.translations_in_kernel(),
            format!("{name}: translations lie in ker psi"),
        );
        c.check(
            graded_tangent_dimension(&i, -1).unwrap() == h1,
            format!("{name}: psi kernel agrees with the direct Hom_-1"),
        );
    }
    for name in ["curve_t0.ideal", "curve_t1.ideal", "curve_tinf.ideal"] {
        let h = graded_tangent_dimension(&load(name), -2).unwrap();
        c.check(h == 0, format!("{name}: Hom_-2 = {h}"));
    }
    for (name, i) in [
        ("w0_monomial", load("w0_monomial.ideal")),
        ("salmon", salmon_ideal().unwrap()),
    ] {
        let m = build_tangent_machine(&i).unwrap();
        c.check(
            m.corank_h_bar() >= 8,
            format!("{name}: corank of h-bar = {}", m.corank_h_bar()),
        );
        c.check(
            m.is_singular(),
            format!("{name}: singular (Hom_-1 = {})", m.hom_minus_one()),
        );
    }
    c.finish()
}

fn criterion_7_classifier() -> bool {
    let mut c = Criterion::new(7);
    for d in [4, 5] {
        let v = classify_smoothable(&j_ideal(Field::Rational, d)).unwrap();
        c.check(
            v.outcome == Outcome::NotSmoothable,
            format!("J, d = {d}: {v}"),
        );
    }
    let mut total = 0;
    let mut bad = Vec::new();
    for d in 1..=4 {
        for n in 1..=8 {
            for i in monomial_ideals(d, n).unwrap() {
                total += 1;
                if !classify_smoothable(&i).unwrap().is_smoothable() {
                    bad.push(i.to_text());
                }
            }
        }
    }
    c.check(
        bad.is_empty(),
        format!("{total} monomial ideals (d <= 4, n <= 8) smoothable; failures: {bad:?}"),
    );
    for s in 0..20 {
        let v = classify_smoothable(&random_points_ideal(4, 8, SEED + s).unwrap()).unwrap();
        c.check(
            v.is_smoothable(),
            format!("8 random points, seed {}: {v}", SEED + s),
        );
    }
    let mut section: Vec<(String, Ideal)> = Vec::new();
    for d in degenerations() {
        section.push((format!("{} target", d.name), d.target.clone()));
        section.push((format!("{} source", d.name), d.source.clone()));
    }
    for f in [
        "x2y2z2.ideal",
        "x2y2z2xyz.ideal",
        "u_point.ideal",
        "z_point.ideal",
        "w0_monomial.ideal",
    ] {
        section.push((f.to_string(), load(f)));
    }
    for (name, i) in &section {
        let v = classify_smoothable(i).unwrap();
        c.check(v.is_smoothable(), format!("{name}: {v}"));
    }
    let invariance: Vec<(&str, Ideal)> = vec![
        ("j_d4", j_ideal(Field::Rational, 4)),
        ("w0_monomial", load("w0_monomial.ideal")),
        ("salmon", salmon_ideal().unwrap()),
    ];
    for (name, i) in &invariance {
        let base = classify_smoothable(i).unwrap().outcome;
        let mut same = 0;
        for s in 0..50 {
            let moved = change_coordinates(i, &random_invertible(4, SEED + 100 + s)).unwrap();
            if classify_smoothable(&moved).unwrap().outcome == base {
                same += 1;
            }
        }
        c.check(
            same == 50,
            format!("{name}: verdict {base:?} kept under {same}/50 coordinate changes"),
        );
    }
    c.finish()
}

/// Local Hilbert functions in at most two variables: `1, 2, ..., v` followed
/// by a non-increasing tail whose first entry is at most `v`.
fn two_variable_hfs(n: usize) -> BTreeSet<HilbertFunction> {
    fn grow(prefix: &mut Vec<u32>, left: usize, out: &mut BTreeSet<HilbertFunction>) {
        if left == 0 {
            out.insert(HilbertFunction::new(prefix.clone()));
            return;
        }
        let i = prefix.len() as u32;
        let full = prefix.iter().enumerate().all(|(j, &h)| h == j as u32 + 1);
        let cap = if full { i + 1 } else { *prefix.last().unwrap() };
        for h in 1..=cap.min(left as u32) {
            prefix.push(h);
            grow(prefix, left - h as usize, out);
            prefix.pop();
        }
    }
    let mut out = BTreeSet::new();
    grow(&mut vec![1], n - 1, &mut out);
    out
}

fn criterion_8_census() -> bool {
    let mut c = Criterion::new(8);
    let table: BTreeSet<HilbertFunction> = SUMMARY_TABLE
        .iter()
        .map(|r| HilbertFunction::new(r.hf.to_vec()))
        .filter(|h| h.embedding_dimension() <= 4)
        .collect();
    let mut enumerated = BTreeSet::new();
    for n in 4..=8 {
        for h in enumerate_local_hfs(4, n).unwrap() {
            if h.embedding_dimension() >= 3 {
                enumerated.insert(h);
            }
        }
    }
    let missing: Vec<String> = table
        .difference(&enumerated)
        .map(|h| h.to_string())
        .collect();
    let extra: Vec<String> = enumerated
        .difference(&table)
        .map(|h| h.to_string())
        .collect();
    c.check(
        missing.is_empty(),
        format!("every table row with h1 in {{3,4}} is enumerated (missing: {missing:?})"),
    );
    c.check(
        extra.is_empty(),
        format!("enumeration with d <= 4, h1 >= 3 equals the table rows (not in table: {extra:?})"),
    );
    let mut small_ok = true;
    for n in 1..=8 {
        let got: BTreeSet<HilbertFunction> = enumerate_local_hfs(2, n)
            .unwrap()
            .into_iter()
            .filter(|h| h.embedding_dimension() <= 2)
            .collect();
        small_ok &= got == two_variable_hfs(n);
    }
    c.check(
        small_ok,
        "d <= 2 functions match the two-variable characterization for n <= 8",
    );
    let report = census_report().unwrap();
    c.check(
        report.dimensions_match,
        "dimension formulas reproduce every tabulated dimension",
    );
    c.check(
        !report.grassmannian_discrepancies.is_empty(),
        format!(
            "(N-e)*N versus table discrepancy flagged: {:?}",
            report.grassmannian_discrepancies
        ),
    );
    c.finish()
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
    let f = Field::Rational;
    let mut m = DenseMatrix::zeros(f, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = f.from_i64(rng.gen_range(-5..=5));
            m.set(i, j, v.clone());
            m.set(j, i, &f.zero() - &v);
        }
    }
    m
}

fn criterion_9_property_suites() -> bool {
    let mut c = Criterion::new(9);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut agree = 0;
    for k in 0..100 {
        let n = 2 * (1 + k % 6);
        let m = random_skew(&mut rng, n);
        let pf = m.pfaffian().unwrap();
        if &pf * &pf == m.determinant().unwrap() {
            agree += 1;
        }
    }
    c.check(
        agree == 100,
        format!("pf^2 = det on {agree}/100 random skew matrices"),
    );

    let ring = Ring::standard(Field::Rational, 3);
    let mut sets_ok = 0;
    for s in 0..20 {
        let n = 3 + (s as usize % 6);
        let pts = random_points(3, n, SEED + s);
        let g = points_ideal(&ring, &pts).unwrap();
        let lambda = g.quotient_basis().unwrap();
        let mut ok = true;
        for m in g.leading_monomials() {
            let nf = g.normal_form(&ring.monomial(m.clone()));
            for mp in lambda.monomials() {
                ok &= delta_ratio(&ring, &pts, &lambda, &m, mp).unwrap() == nf.coeff(mp);
            }
        }
        sets_ok += ok as usize;
    }
    c.check(
        sets_ok == 20,
        format!("delta ratio = Buchberger-Moller coefficient on {sets_ok}/20 point sets"),
    );

    let mut homogeneous: Vec<(String, Ideal)> = Vec::new();
    for (name, _) in IDEAL_FILES {
        let i = load(name);
        if i.is_homogeneous() && i.ring().field() == Field::Rational {
            homogeneous.push((name.to_string(), i));
        }
    }
    homogeneous.push(("salmon".into(), salmon_ideal().unwrap()));
    for (name, i) in &homogeneous {
        let sys = InverseSystem::of_ideal(i).unwrap();
        let back = ideal_from_inverse_system(i.ring(), &sys.generators()).unwrap();
        c.check(ideal_equal(&back, i), format!("double perp on {name}"));
    }

    let mut all: Vec<(String, Ideal)> = Vec::new();
    for (name, _) in IDEAL_FILES {
        let i = load(name);
        if i.ring().field() == Field::Rational {
            all.push((name.to_string(), i));
        }
    }
    for d in degenerations() {
        all.push((d.name.clone(), d.source));
    }
    all.push((
        "eight random points".into(),
        random_points_ideal(4, 8, SEED).unwrap(),
    ));
    for (name, i) in &all {
        let model = multiplication_operators(&groebner(i)).unwrap();
        let (centered, _) = recenter(i).unwrap();
        let cm = multiplication_operators(&groebner(&centered)).unwrap();
        let traces_zero = cm.traces().iter().all(|t: &FieldElement| t.is_zero());
        c.check(
            model.operators_commute() && traces_zero,
            format!("{name}: operators commute, traces vanish after recentering"),
        );
    }
    c.finish()
}

fn main() {
    let criteria: [(u32, fn() -> bool); 9] = [
        (1, criterion_1_tangent_of_j),
        (2, criterion_2_named_tangent_dimensions),
        (3, criterion_3_degenerations),
        (4, criterion_4_curve_multiplicity),
        (5, criterion_5_pfaffian_fixtures),
        (6, criterion_6_graded_tangent_facts),
        (7, criterion_7_classifier),
        (8, criterion_8_census),
        (9, criterion_9_property_suites),
    ];
    let mut failed = Vec::new();
    for (id, run) in criteria {
        let ok = std::panic::catch_unwind(run).unwrap_or_else(|_| {
            println!("criterion {id}: FAIL (panicked)");
            false
        });
        if !ok {
            failed.push(id);
        }
    }
    println!();
    println!(
        "acceptance: {} of 9 criteria passed; failed: {failed:?}",
        9 - failed.len()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
