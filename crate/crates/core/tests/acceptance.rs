//! Acceptance criteria, one line each. Run with
//! `cargo test -p igeom --test acceptance`.
//!
//! Criteria listed in `EXPECTED_RED` evaluate constants exactly as printed
//! and are known to disagree with the invariant-measure normalization; they
//! print FAIL together with the result under the normalized constant. The
//! process exits nonzero if any other criterion fails, or if an expected
//! failure starts passing.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use common::*;
use igeom::constants::kappa;
use igeom::functionals::{self as fx, Comparison, ConstantConvention, TestFunction};
use igeom::geometry::parse_body;
use igeom::verification::{run_case, run_suite, CaseConfig, CaseId, Suite, VerificationReport};
use igeom::{MCEstimate, Sampling};

const N: u64 = 1_000_000;
const Z_MAX: f64 = 4.0;
const SIGMAS: f64 = 3.0;
const EXPECTED_RED: [u32; 2] = [5, 7];

struct Line {
    id: u32,
    pass: bool,
    detail: String,
}

fn within(est: &MCEstimate, value: f64) -> bool {
    (est.mean - value).abs() <= SIGMAS * est.standard_error
}

fn agree(a: &MCEstimate, b: &MCEstimate) -> bool {
    (a.mean - b.mean).abs() <= SIGMAS * a.standard_error.hypot(b.standard_error)
}

fn agree_bf(a: &MCEstimate, (m, se): (f64, f64)) -> bool {
    (a.mean - m).abs() <= SIGMAS * a.standard_error.hypot(se)
}

fn z_ok(r: &VerificationReport) -> bool {
    r.z.is_some_and(|z| z.abs() <= Z_MAX) && r.pass
}

fn z_str(z: Option<f64>) -> String {
    z.map_or_else(|| "-".into(), |z| format!("{z:+.2}"))
}

fn show(e: &MCEstimate) -> String {
    format!("{:.5}±{:.1e}", e.mean, e.standard_error)
}

fn run(c: CaseConfig) -> VerificationReport {
    run_case(&c).unwrap_or_else(|e| panic!("{} on {}: {e}", c.case, c.body))
}

fn case(case: CaseId, body: &str, d: usize, seed: u64) -> CaseConfig {
    CaseConfig::new(case, body, d).samples(N).seed(seed)
}

fn c1() -> Line {
    let start = Instant::now();
    let r = run(case(CaseId::Thm1, "ball", 3, 11).h_power(3));
    let secs = start.elapsed().as_secs_f64();
    let exact = 16.0 * PI / 5.0;
    let oracle = ball_chord_integral(3, |t| t.powi(3));
    let pass = (oracle - exact).abs() < 1e-6 && within(&r.lhs, exact) && within(&r.rhs, exact) && z_ok(&r) && secs < 30.0;
    Line {
        id: 1,
        pass,
        detail: format!("thm1 ball d=3 t^3: lhs={} rhs={} oracle={exact:.5} z={} in {secs:.1}s", show(&r.lhs), show(&r.rhs), z_str(r.z)),
    }
}

fn c2() -> Line {
    let a = run(case(CaseId::Thm1, "ellipsoid:2,1,1", 3, 21).h_power(3));
    let b = run(case(CaseId::Thm1, "ball", 4, 22).h_power(4));
    Line {
        id: 2,
        pass: z_ok(&a) && z_ok(&b),
        detail: format!("thm1 ellipsoid(2,1,1) t^3 z={}, ball d=4 t^4 z={}", z_str(a.z), z_str(b.z)),
    }
}

fn c3() -> Line {
    let body = parse_body("ball", 2).unwrap();
    let h = TestFunction::new(2);
    let s = Sampling::new(N, 31);
    let p = fx::pleijel_check(&body, h, &s).unwrap();
    let c = fx::pleijel_cot_check(&body, h, ConstantConvention::Normalized, &s).unwrap();
    let exact = 16.0 / 3.0;
    let oracle = ball_chord_integral(2, |t| t * t);
    let three = [p.lhs, p.rhs, c.rhs];
    let each = three.iter().all(|e| within(e, exact));
    let pairs = agree(&three[0], &three[1]) && agree(&three[0], &three[2]) && agree(&three[1], &three[2]);
    Line {
        id: 3,
        pass: (oracle - exact).abs() < 1e-6 && each && pairs,
        detail: format!("disk t^2: chord={} pleijel={} cot={} oracle={exact:.5}", show(&three[0]), show(&three[1]), show(&three[2])),
    }
}

fn c4() -> Line {
    let s = Sampling::new(N, 41);
    let e = fx::isoperimetric_defect(&parse_body("ellipsoid:2,1", 2).unwrap(), &s).unwrap();
    let p = ellipse_perimeter(2.0, 1.0);
    let oracle = p * p - 8.0 * PI * PI;
    let d = fx::isoperimetric_defect(&parse_body("ball", 2).unwrap(), &s.child(9)).unwrap();
    let disk_ok = d.estimate.mean.abs() <= SIGMAS * d.estimate.standard_error + 1e-12;
    Line {
        id: 4,
        pass: within(&e.estimate, oracle) && disk_ok,
        detail: format!("ellipse(2,1) defect={} oracle={oracle:.5} (P={p:.9}); disk defect={:.1e}", show(&e.estimate), d.estimate.mean),
    }
}

fn thm2_line(body: &str, poly: &[[f64; 2]], facets: f64, seed: u64) -> (bool, bool, String) {
    let b = parse_body(body, 3).unwrap();
    let h = TestFunction::new(3);
    let s = Sampling::new(N, seed);
    let printed = fx::thm2_check(&b, h, ConstantConvention::Printed, &s).unwrap();
    let normalized = fx::thm2_check(&b, h, ConstantConvention::Normalized, &s).unwrap();
    let oracle = facets * polygon_line_integral(poly, |t| t.powi(4) / 4.0, 2000);
    let rel = (printed.facet_raw.mean - oracle).abs() / oracle;
    let cmp = |c: &Comparison| agree(&c.lhs, &c.rhs);
    let text = format!(
        "{body}: printed z={} normalized z={} facet={} quad={oracle:.5} ({:.2}%)",
        z_str(printed.comparison.z()),
        z_str(normalized.comparison.z()),
        show(&printed.facet_raw),
        100.0 * rel
    );
    (cmp(&printed.comparison) && rel < 0.01, cmp(&normalized.comparison) && rel < 0.01, text)
}

fn c5() -> Line {
    let (p1, n1, t1) = thm2_line("cube", &UNIT_SQUARE, 6.0, 51);
    let (p2, n2, t2) = thm2_line("regular-simplex", &unit_triangle(), 4.0, 52);
    Line {
        id: 5,
        pass: p1 && p2,
        detail: format!("polytope chord identity t^3; {t1}; {t2}; normalized constants {}", if n1 && n2 { "PASS" } else { "FAIL" }),
    }
}

fn c6() -> Line {
    let a = run(case(CaseId::Zahle2, "ball", 3, 61).h_power(3));
    let b = run(case(CaseId::Zahle2, "ellipsoid:2,1,1", 3, 62).h_power(3));
    Line { id: 6, pass: z_ok(&a) && z_ok(&b), detail: format!("two-point r^3: ball z={} ellipsoid z={}", z_str(a.z), z_str(b.z)) }
}

fn c7() -> Line {
    let mut zs = Vec::new();
    let mut ok = true;
    for (i, (l, k, m)) in [(1, 1, 1), (1, 2, 3), (2, 0, 0), (2, 1, 0)].into_iter().enumerate() {
        let r = run(case(CaseId::Thm3, "ball", 3, 71 + i as u64).l(l).k(k).moment(m));
        ok &= z_ok(&r);
        zs.push(format!("({l},{k}) z={}", z_str(r.z)));
    }
    let body = parse_body("ball", 3).unwrap();
    let s = Sampling::new(N, 79);
    let oracle = ball3_mixed_moment(1, N as usize, 7901);
    let printed = fx::corollary_check(&body, 1, ConstantConvention::Printed, &s).unwrap();
    let normalized = fx::corollary_check(&body, 1, ConstantConvention::Normalized, &s).unwrap();
    let p_ok = agree_bf(&printed.rhs, oracle) && agree_bf(&printed.lhs, oracle);
    let n_ok = agree_bf(&normalized.rhs, oracle);
    Line {
        id: 7,
        pass: ok && p_ok,
        detail: format!(
            "thm3 {}; boundary/interior n=1 oracle={:.4}±{:.1e}: printed rhs={} normalized rhs={} ({})",
            zs.join(" "),
            oracle.0,
            oracle.1,
            show(&printed.rhs),
            show(&normalized.rhs),
            if n_ok { "PASS" } else { "FAIL" }
        ),
    }
}

fn c8() -> Line {
    let mut ok = true;
    let mut zs = Vec::new();
    let mut mean_factor = None;
    for (i, (d, n)) in [(3, 0), (3, 1), (3, 2), (2, 1)].into_iter().enumerate() {
        let r = run(case(CaseId::Kingman, "ball", d, 81 + i as u64).moment(n));
        ok &= z_ok(&r);
        zs.push(format!("d={d} n={n} z={}", z_str(r.z)));
        if (d, n) == (3, 1) {
            mean_factor = Some(r.lhs.scale(1.0 / kappa(3).powi(2)));
        }
    }
    let f = mean_factor.unwrap();
    let bf = brute_force(N as usize, 8801, |rng| dist(&in_unit_ball::<3>(rng), &in_unit_ball::<3>(rng)));
    let pass = ok && within(&f, 36.0 / 35.0) && agree_bf(&f, bf);
    Line { id: 8, pass, detail: format!("kingman {}; mean distance={} brute={:.5} (36/35={:.5})", zs.join(" "), show(&f), bf.0, 36.0 / 35.0) }
}

fn c9() -> Line {
    let r = run(case(CaseId::Thm4, "cube", 3, 91).l(1).moment(3));
    let same = r.terms.iter().find(|t| t.name == "same-facet").unwrap().estimate;
    let (m, se) = square_pair_moment(3, N as usize, 9101);
    let oracle = (6.0 * m, 6.0 * se);
    let pass = agree(&r.lhs, &r.rhs) && agree_bf(&same, oracle);
    Line { id: 9, pass, detail: format!("cube r^3: z={} same-facet={} pair oracle={:.5}±{:.1e}", z_str(r.z), show(&same), oracle.0, oracle.1) }
}

fn c10() -> Line {
    let cot = run(CaseConfig::new(CaseId::CotLemma, "ellipsoid:2,1,1", 3).samples(100).seed(101));
    let mut ok = cot.pass && cot.lhs.mean < 1e-8;
    let mut parts = vec![format!("cot lemma max residual={:.1e}", cot.lhs.mean)];
    for d in 3..=6 {
        let r = run(case(CaseId::SphereProduct, "ball", d, 100 + d as u64));
        ok &= within(&r.lhs, 1.0 / (d - 1) as f64);
        parts.push(format!("sphere d={d} {}", show(&r.lhs)));
    }
    let circle = (0..=20).map(|i| i as f64 * PI / 20.0).map(|p| (fx::circle_product_integral(p) - p.cos() / 2.0).abs()).fold(0.0, f64::max);
    let moment = (3..=8).map(|n| (fx::ball_moment(n) - 2.0 / n as f64).abs()).fold(0.0, f64::max);
    ok &= circle < 1e-12 && moment < 1e-10;
    let flags = run(case(CaseId::Flags, "ball", 3, 109));
    ok &= agree(&flags.lhs, &flags.rhs);
    parts.push(format!("circle err={circle:.1e} moment err={moment:.1e} flags z={}", z_str(flags.z)));
    Line { id: 10, pass: ok, detail: parts.join("; ") }
}

fn c11() -> Line {
    let mut ok = true;
    let mut bad = Vec::new();
    for (i, (d, l)) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)].into_iter().enumerate() {
        let r = run(case(CaseId::Normalization, "ball", d, 110 + i as u64).l(l));
        if !within(&r.lhs, r.rhs.mean) {
            ok = false;
            bad.push(format!("(d={d},l={l}) {}", show(&r.lhs)));
        }
    }
    let bodies = [
        ("ball", 2),
        ("ball", 3),
        ("ellipsoid:2,1", 2),
        ("ellipsoid:2,1,1", 3),
        ("cube", 2),
        ("cube", 3),
        ("simplex", 3),
        ("regular-simplex", 3),
        ("octahedron", 3),
        ("regular-polygon:6", 2),
    ];
    for (i, (b, d)) in bodies.into_iter().enumerate() {
        let r = run(case(CaseId::MeanChord, b, d, 120 + i as u64));
        if !within(&r.lhs, r.rhs.mean) {
            ok = false;
            bad.push(format!("mean chord {b} d={d} {} vs {:.5}", show(&r.lhs), r.rhs.mean));
        }
    }
    let detail = if bad.is_empty() { format!("6 hitting measures, {} mean-chord volumes", bodies.len()) } else { bad.join("; ") };
    Line { id: 11, pass: ok, detail }
}

fn c12() -> Line {
    let r = run(case(CaseId::Thm1, "ball", 3, 11).h_power(3).prefactor_scale(2.0));
    let z = r.z.unwrap_or(0.0);
    Line { id: 12, pass: !r.pass && z.abs() > 20.0, detail: format!("thm1 with doubled prefactor z={z:+.1}") }
}

fn c13() -> Line {
    let a = serde_json::to_string(&run_suite(Suite::Smoke, 1, 8, false, false).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite(Suite::Smoke, 1, 8, false, false).unwrap()).unwrap();
    Line { id: 13, pass: a == b, detail: format!("smoke suite JSON, {} bytes, identical={}", a.len(), a == b) }
}

fn main() {
    let criteria: [fn() -> Line; 13] = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13];
    let mut unexpected = Vec::new();
    for c in criteria {
        let line = c();
        let red = EXPECTED_RED.contains(&line.id);
        let tag = match (line.pass, red) {
            (true, _) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
        };
        println!("criterion {:>2}: {tag} {}", line.id, line.detail);
        if line.pass == red {
            unexpected.push(line.id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
