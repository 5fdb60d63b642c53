//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wdeg_cli::commands::analyze_polynomials;
use wdeg_cli::{cmd_analyze, cmd_polytope, cmd_wdeg_table, AnalyzeOptions};
use wdeg_core::exactnum::{is_squarefree, parse_rational, real_root_count};
use wdeg_core::galoisdeg::{orbit, CostForm};
use wdeg_core::invbirkhoff::{aut_order_brute, enumerate_vertices, signature_pairs};
use wdeg_core::realize::realize_vertex;
use wdeg_core::rootcert::{isolate_roots, refine};
use wdeg_core::transport::{brute_force_assignment, cost_matrix, minimize_over_vertices};
use wdeg_core::{DoubledMatrix, IotaAction, MinimalFactorStatus, RationalPolynomial};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure!(e < limit, "took {:.2?}, limit {:.0?}", e, limit);
    Ok(e)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn dm(rows: &[[u8; 3]]) -> DoubledMatrix {
    DoubledMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn dimension_table() -> Outcome {
    let t = Instant::now();
    let expected = [(24, 9), (12, 6), (6, 3), (13, 5), (12, 4), (8, 5)];
    let pairs = signature_pairs(4);
    ensure!(pairs.len() == 6, "{} signature pairs", pairs.len());
    for ((ps, qs), (count, dim)) in pairs.into_iter().zip(expected) {
        let poly = cmd_polytope(4, ps, qs).map_err(|e| e.to_string())?;
        ensure!(
            (poly.vertex_count, poly.dim) == (count, dim),
            "{ps:?} {qs:?}: {} vertices, dim {} (expected {count}, {dim})",
            poly.vertex_count,
            poly.dim
        );
        ensure!(poly.affine_rank == poly.dim, "{ps:?} {qs:?}: affine rank {} vs dim {}", poly.affine_rank, poly.dim);
    }
    let e = within(t, Duration::from_secs(5))?;
    Ok(format!("six rows match, formula = affine rank, {e:.2?}"))
}

fn bound_table() -> Outcome {
    let rows = |d| -> Result<Vec<Vec<u64>>, String> {
        Ok(cmd_wdeg_table(d).map_err(|e| e.to_string())?.rows.into_iter().map(|r| r.values).collect())
    };
    let three = rows(3)?;
    ensure!(three == vec![vec![6], vec![9], vec![18]], "d=3 rows {three:?}");
    let four = rows(4)?;
    let want: Vec<Vec<u64>> = vec![vec![24], vec![72], vec![18], vec![36, 144, 288], vec![18, 288], vec![72]];
    ensure!(four == want, "d=4 rows {four:?}");
    Ok("d=3: 6/9/18; d=4: 24/72/18/{36,144,288}/{18,288}/72".into())
}

const GENERIC_CUBIC_H: [&str; 19] = [
    "18255232646137865373249774012390625/1835746015161035257118982144",
    "1848261661275845551117166614375/3187059054099019543609344",
    "-1185279955326920964318656606075/354117672677668838178816",
    "-120675780215928578619735476735/39346408075296537575424",
    "674775812403532619558719717/364318593289782755328",
    "2978098003861411543837955/40479843698864750592",
    "570696146952180632862839/26986562465909833728",
    "-188523216802141986655495/749626735164162048",
    "987135963331795614481/4627325525704704",
    "-64389115881803301815/1156831381426176",
    "-46036000403242535/3570467226624",
    "28152774676858415/3570467226624",
    "129841846201105/1586874322944",
    "-656593649875/816293376",
    "860802973/5038848",
    "9658735/314928",
    "-6611/432",
    "-25/18",
    "1",
];

fn generic_cubic() -> Outcome {
    let t = Instant::now();
    let r = cmd_analyze("2z^3+z^2-3z-7", "3z^3-z^2-5z+4", &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
    let e = within(t, Duration::from_secs(60))?;
    let lo = parse_rational(&r.w2.lo).unwrap();
    let hi = parse_rational(&r.w2.hi).unwrap();
    let scale = BigRational::from_integer(BigInt::from(10).pow(8));
    let truncated = |x: &BigRational| (x * &scale).floor().to_integer();
    ensure!(
        truncated(&lo) == BigInt::from(202001392) && truncated(&hi) == BigInt::from(202001392),
        "W2 enclosure [{}, {}] does not fix 2.02001392",
        r.w2.lo,
        r.w2.hi
    );
    let expected: Vec<BigRational> = GENERIC_CUBIC_H.iter().map(|s| parse_rational(s).unwrap()).collect();
    let got: Vec<BigRational> = r.h_specialized.coefficients.iter().map(|s| parse_rational(s).unwrap()).collect();
    ensure!(got.len() == 19, "h has {} coefficients", got.len());
    for (j, (a, b)) in got.iter().zip(&expected).enumerate() {
        ensure!(a == b, "coefficient of t^{j}: {a} instead of {b}");
    }
    ensure!(r.status == MinimalFactorStatus::CertifiedIrreducible, "status {}", r.status.as_str());
    ensure!(r.wdeg == 18, "wdeg {}", r.wdeg);
    Ok(format!("W2 = {}, 19 coefficients exact, certified-irreducible, {e:.2?}", r.w2.decimal))
}

fn nongeneric_cubic() -> Outcome {
    let r = cmd_analyze("z^3-1", "z^3-5z^2+4z+3", &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
    ensure!(r.h_specialized.coefficients.len() == 10, "deg h = {}", r.h_specialized.coefficients.len() - 1);
    ensure!(r.minimal_factor.primitive == ["-7231", "3483", "-540", "27"], "factor {}", r.minimal_factor.primitive_text);
    ensure!(r.wdeg == 3, "wdeg {}", r.wdeg);
    Ok(format!("deg h = 9, minimal factor {}, wdeg 3", r.minimal_factor.primitive_text))
}

fn small_polytopes() -> Outcome {
    let set = |ps, qs| -> Result<BTreeSet<DoubledMatrix>, String> {
        Ok(cmd_polytope(3, ps, qs).map_err(|e| e.to_string())?.vertices.into_iter().map(|v| v.doubled).collect())
    };
    let triangle: BTreeSet<_> = [
        dm(&[[2, 0, 0], [0, 1, 1], [0, 1, 1]]),
        dm(&[[0, 1, 1], [2, 0, 0], [0, 1, 1]]),
        dm(&[[0, 1, 1], [0, 1, 1], [2, 0, 0]]),
    ]
    .into();
    let square: BTreeSet<_> = [
        dm(&[[2, 0, 0], [0, 2, 0], [0, 0, 2]]),
        dm(&[[2, 0, 0], [0, 0, 2], [0, 2, 0]]),
        dm(&[[0, 1, 1], [1, 1, 0], [1, 0, 1]]),
        dm(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]),
    ]
    .into();
    // The listed triangle has equal columns 2 and 3, i.e. the swap acts on
    // columns; with φ on rows (p has the complex pair) it is the transpose.
    let listed_t: BTreeSet<_> = triangle.iter().map(DoubledMatrix::transpose).collect();
    let t = set((1, 1), (3, 0))?;
    ensure!(t == listed_t, "case 2 vertices {t:?}");
    let swapped = set((3, 0), (1, 1))?;
    ensure!(swapped == triangle, "case 2 with roles exchanged: {swapped:?}");
    let s = set((1, 1), (1, 1))?;
    ensure!(s == square, "case 3 vertices {s:?}");
    Ok("square exact; triangle exact up to transposition of rows and columns".into())
}

fn random_squarefree(rng: &mut ChaCha8Rng, d: usize) -> RationalPolynomial {
    loop {
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
        c.push(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let p = RationalPolynomial::from_i64(&c);
        if is_squarefree(&p).unwrap() {
            return p;
        }
    }
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a11_ce55);
    let tol = BigRational::new(BigInt::one(), BigInt::one() << 64usize);
    for case in 0..200 {
        let d = rng.gen_range(2..=5);
        let p = random_squarefree(&mut rng, d);
        let qp = random_squarefree(&mut rng, d);
        let pr = isolate_roots(&p, 128).map_err(|e| e.to_string())?;
        let qr = isolate_roots(&qp, 128).map_err(|e| e.to_string())?;
        let iota = IotaAction::new(pr.conj_involution().clone(), qr.conj_involution().clone()).unwrap();
        let vs = enumerate_vertices(&iota).unwrap();
        let sol = minimize_over_vertices(&pr, &qr, &vs, 4096).map_err(|e| e.to_string())?;
        let (_, brute) = brute_force_assignment(&cost_matrix(&pr, &qr).unwrap()).unwrap();
        ensure!(brute.overlaps(&sol.value), "case {case}: p = {p}, q = {qp}: enclosures disjoint");
        let (pf, qf) = (refine(&pr, 256).unwrap(), refine(&qr, 256).unwrap());
        let cm = cost_matrix(&pf, &qf).unwrap();
        let (_, brute) = brute_force_assignment(&cm).unwrap();
        let vertex = cm.vertex_cost(&sol.optimal_vertex.doubled);
        ensure!(
            (brute.mid() - vertex.mid()).abs() < tol,
            "case {case}: p = {p}, q = {qp}: midpoints differ after refinement"
        );
    }
    Ok("200 random pairs, d in 2..=5".into())
}

fn automorphisms() -> Outcome {
    let mut n = 0;
    for d in 1..=5 {
        for (ps, qs) in signature_pairs(d) {
            let iota = IotaAction::from_signatures(ps, qs).unwrap();
            for v in enumerate_vertices(&iota).unwrap() {
                let brute = aut_order_brute(&v.doubled, &iota).unwrap();
                ensure!(brute == v.aut_order, "{ps:?} {qs:?}\n{}formula {} brute {brute}", v.doubled, v.aut_order);
                n += 1;
            }
        }
    }
    Ok(format!("{n} vertices, d <= 5"))
}

fn realization() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    for d in 1..=5 {
        let step = if d == 5 { 5 } else { 1 };
        for (ps, qs) in signature_pairs(d) {
            let iota = IotaAction::from_signatures(ps, qs).unwrap();
            for v in enumerate_vertices(&iota).unwrap().iter().step_by(step) {
                let inst = realize_vertex(v, &iota).map_err(|e| e.to_string())?;
                // unit edge lengths are checked exactly inside realize_vertex;
                // the planted cost is the mean over 2d unit half-edges
                let pr = isolate_roots(&inst.p, 128).unwrap();
                let qr = isolate_roots(&inst.q, 128).unwrap();
                let found = IotaAction::new(pr.conj_involution().clone(), qr.conj_involution().clone()).unwrap();
                let sol = minimize_over_vertices(&pr, &qr, &enumerate_vertices(&found).unwrap(), 4096)
                    .map_err(|e| e.to_string())?;
                ensure!(sol.unique, "{ps:?} {qs:?}: optimum not unique for\n{}", v.doubled);
                ensure!(sol.optimal_vertex.doubled == inst.planted, "{ps:?} {qs:?}: wrong optimum for\n{}", v.doubled);
                ensure!(sol.value.contains(&q(1, 1)), "{ps:?} {qs:?}: W2 enclosure misses 1");
                n += 1;
            }
        }
    }
    let e = within(t, Duration::from_secs(30))?;
    Ok(format!("{n} planted vertices recovered, {e:.2?}"))
}

fn orbit_law() -> Outcome {
    let mut n = 0;
    for d in 1..=5u64 {
        let group = (1..=d).product::<u64>().pow(2);
        for (ps, qs) in signature_pairs(d as usize) {
            let iota = IotaAction::from_signatures(ps, qs).unwrap();
            for v in enumerate_vertices(&iota).unwrap() {
                let form = CostForm::new(&v, &iota).unwrap();
                let orb = orbit(&form).map_err(|e| e.to_string())?;
                ensure!(orb.len() as u64 * v.aut_order == group, "{ps:?} {qs:?}: {} forms, |Aut| {}", orb.len(), v.aut_order);
                n += 1;
            }
        }
    }
    Ok(format!("{n} vertices, d <= 5"))
}

fn sharpness_sampling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a3b_1e);
    let mut hits = 0;
    let mut misses = Vec::new();
    let mut draw = || loop {
        let c: Vec<i64> = vec![rng.gen_range(-20..=20), rng.gen_range(-20..=20), rng.gen_range(-6..=6), rng.gen_range(1..=3)];
        let p = RationalPolynomial::from_i64(&c);
        if is_squarefree(&p).unwrap() && real_root_count(&p).unwrap() == 3 {
            return p;
        }
    };
    for _ in 0..50 {
        let (p, qp) = (draw(), draw());
        let r = analyze_polynomials(&p, &qp, &AnalyzeOptions::default(), Instant::now()).map_err(|e| e.to_string())?;
        if r.wdeg == 6 && r.status == MinimalFactorStatus::CertifiedIrreducible {
            hits += 1;
        } else {
            misses.push(format!("({p}, {qp}) -> {} {}", r.wdeg, r.status.as_str()));
        }
    }
    ensure!(hits >= 45, "only {hits}/50 reach degree 6: {}", misses.join("; "));
    Ok(format!("{hits}/50 certified irreducible of degree 6"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("polytope dimensions", dimension_table),
        ("degree bounds at d = 4", bound_table),
        ("generic cubic pair end-to-end", generic_cubic),
        ("nongeneric cubic pair end-to-end", nongeneric_cubic),
        ("degree-3 polytopes", small_polytopes),
        ("oracle equivalence", oracle_equivalence),
        ("automorphism formula", automorphisms),
        ("realization round trip", realization),
        ("orbit-size law", orbit_law),
        ("degree-bound sharpness", sharpness_sampling),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
