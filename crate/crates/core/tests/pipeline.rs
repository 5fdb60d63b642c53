use wdeg_core::galoisdeg::{orbit, specialize_orbit, CostForm, SpecializeOptions};
use wdeg_core::invbirkhoff::{aut_order_brute, enumerate_vertices, polytope, signature_pairs};
use wdeg_core::realize::realize_vertex;
use wdeg_core::rootcert::{isolate_roots, RootSystem};
use wdeg_core::transport::{brute_force_assignment, cost_matrix, minimize_over_vertices};
use wdeg_core::{InvariantVertex, IotaAction, RationalPolynomial};

fn systems(p: &[i64], q: &[i64]) -> (RootSystem, RootSystem, IotaAction, Vec<InvariantVertex>) {
    systems_of(&RationalPolynomial::from_i64(p), &RationalPolynomial::from_i64(q))
}

#[test]
fn roots_of_h_are_the_orbit_values() {
    let (pr, qr, iota, vs) = systems(&[-7, -3, 1, 2], &[4, -5, -1, 3]);
    let sol = minimize_over_vertices(&pr, &qr, &vs, 4096).unwrap();
    let form = CostForm::new(&sol.optimal_vertex, &iota).unwrap();
    let orb = orbit(&form).unwrap();
    let spec = specialize_orbit(
        &form,
        &orb,
        &pr,
        &qr,
        &SpecializeOptions { max_precision: 4096, denominator_bound: None },
    )
    .unwrap();
    // the identity coset evaluates to the optimal cost
    assert!(spec.values[0].re.overlaps(&sol.value));
    let hr = isolate_roots(&spec.h, 128).unwrap();
    let mut used = vec![false; spec.values.len()];
    for root in hr.roots() {
        let b = root.to_interval();
        let hit = spec.values.iter().enumerate().position(|(k, v)| !used[k] && v.overlaps(&b));
        used[hit.expect("root of h away from every orbit value")] = true;
    }
    assert!(used.iter().all(|&u| u));
}

#[test]
fn swapping_p_and_q_transposes_the_optimum() {
    let (pr, qr, _, vs) = systems(&[-7, -3, 1, 2], &[3, 4, -5, 1]);
    let (_, _, _, ws) = systems(&[3, 4, -5, 1], &[-7, -3, 1, 2]);
    let a = minimize_over_vertices(&pr, &qr, &vs, 4096).unwrap();
    let b = minimize_over_vertices(&qr, &pr, &ws, 4096).unwrap();
    assert!(a.value.overlaps(&b.value));
    assert_eq!(a.optimal_vertex.doubled.transpose(), b.optimal_vertex.doubled);
    let mut t: Vec<_> = vs.iter().map(|v| v.doubled.transpose()).collect();
    t.sort();
    assert_eq!(t, ws.iter().map(|v| v.doubled.clone()).collect::<Vec<_>>());
}

#[test]
fn formula_dimension_is_affine_rank() {
    for d in 1..=5 {
        for (ps, qs) in signature_pairs(d) {
            let poly = polytope(ps, qs).unwrap();
            assert_eq!(poly.dim, poly.affine_rank, "{ps:?} {qs:?}");
        }
    }
}

#[test]
fn automorphism_formula_small_degrees() {
    for d in 1..=4 {
        for (ps, qs) in signature_pairs(d) {
            let iota = IotaAction::from_signatures(ps, qs).unwrap();
            for v in enumerate_vertices(&iota).unwrap() {
                assert_eq!(aut_order_brute(&v.doubled, &iota).unwrap(), v.aut_order);
            }
        }
    }
}

#[test]
fn realized_instances_at_degree_five() {
    for (ps, qs) in signature_pairs(5) {
        let iota = IotaAction::from_signatures(ps, qs).unwrap();
        let vs = enumerate_vertices(&iota).unwrap();
        for v in vs.iter().step_by(7) {
            let inst = realize_vertex(v, &iota).unwrap();
            let (pr, qr, _, ws) = systems_of(&inst.p, &inst.q);
            let sol = minimize_over_vertices(&pr, &qr, &ws, 1024).unwrap();
            assert!(sol.unique);
            assert_eq!(sol.optimal_vertex.doubled, inst.planted);
            let (_, brute) = brute_force_assignment(&cost_matrix(&pr, &qr).unwrap()).unwrap();
            assert!(brute.overlaps(&sol.value));
        }
    }
}

fn systems_of(
    p: &RationalPolynomial,
    q: &RationalPolynomial,
) -> (RootSystem, RootSystem, IotaAction, Vec<InvariantVertex>) {
    let pr = isolate_roots(p, 128).unwrap();
    let qr = isolate_roots(q, 128).unwrap();
    let iota = IotaAction::new(pr.conj_involution().clone(), qr.conj_involution().clone()).unwrap();
    let vs = enumerate_vertices(&iota).unwrap();
    (pr, qr, iota, vs)
}
