use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use wdeg_core::exactnum::{affine_rank, poly_gcd, rational_reconstruct, Reconstruction};
use wdeg_core::galoisdeg::{orbit, CostForm};
use wdeg_core::invbirkhoff::{enumerate_vertices, signature_pairs};
use wdeg_core::rootcert::{isolate_roots, refine};
use wdeg_core::{Involution, IotaAction, RationalMatrix, RationalPolynomial};

fn small_poly(max_deg: usize) -> impl Strategy<Value = RationalPolynomial> {
    (1..=max_deg)
        .prop_flat_map(|n| (prop::collection::vec(-9i64..=9, n), 1i64..=4))
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            RationalPolynomial::from_i64(&c)
        })
}

fn involution(d: usize) -> impl Strategy<Value = Involution> {
    (Just((0..d).collect::<Vec<usize>>()).prop_shuffle(), 0..=d / 2).prop_map(move |(order, pairs)| {
        let mut images: Vec<usize> = (0..d).collect();
        for t in 0..pairs {
            let (a, b) = (order[2 * t], order[2 * t + 1]);
            images[a] = b;
            images[b] = a;
        }
        Involution::new(images).unwrap()
    })
}

/// Row echelon rank, written independently of the library's fraction-free
/// elimination.
fn naive_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_both(a in small_poly(4), b in small_poly(4), c in small_poly(2)) {
        let (x, y) = (&a * &c, &b * &c);
        let g = poly_gcd(&x, &y).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(x.div_rem(&g).1.is_zero());
        prop_assert!(y.div_rem(&g).1.is_zero());
        prop_assert!(g.div_rem(&c).1.is_zero());
    }

    #[test]
    fn signature_adds_up(p in small_poly(6)) {
        let g = poly_gcd(&p, &p.derivative()).unwrap();
        prop_assume!(g.degree() == Some(0));
        let rs = isolate_roots(&p, 64).unwrap();
        prop_assert_eq!(rs.n_real() + 2 * rs.n_pairs(), p.degree().unwrap());
        prop_assert_eq!(rs.conj_involution(), &Involution::canonical(rs.n_real(), rs.n_pairs()));
        let fine = refine(&rs, 160).unwrap();
        prop_assert_eq!(fine.signature(), rs.signature());
        for (a, b) in rs.roots().iter().zip(fine.roots()) {
            prop_assert!(a.contains_ball(b));
        }
    }

    #[test]
    fn planted_rational_is_recovered(n in -100_000i64..100_000, d in 1i64..1000, w in 1u32..40) {
        let x = BigRational::new(n.into(), d.into());
        let eps = BigRational::new(BigInt::one(), BigInt::from(4_000_000i64) << w as usize);
        let r = rational_reconstruct(&(&x - &eps), &(&x + &eps), &BigInt::from(1000)).unwrap();
        prop_assert_eq!(r, Reconstruction::Unique(x));
    }

    #[test]
    fn affine_rank_matches_naive(points in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..6)) {
        let mats: Vec<RationalMatrix> =
            points.iter().map(|p| RationalMatrix::from_i64(2, 3, p).unwrap()).collect();
        let diffs: Vec<Vec<BigRational>> = points[1..]
            .iter()
            .map(|p| p.iter().zip(&points[0]).map(|(a, b)| BigRational::from_integer((a - b).into())).collect())
            .collect();
        prop_assert_eq!(affine_rank(&mats).unwrap(), naive_rank(diffs));
    }

    #[test]
    fn involution_squares_to_identity(phi in involution(7)) {
        for i in 0..7 {
            prop_assert_eq!(phi.apply(phi.apply(i)), i);
        }
        let (r, c) = phi.signature();
        prop_assert_eq!(r + 2 * c, 7);
    }

    #[test]
    fn fingerprints_form_cosets(
        (ps, qs) in prop::sample::select(signature_pairs(4)),
        g1 in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
        g2 in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
        pick in any::<prop::sample::Index>(),
    ) {
        let iota = IotaAction::from_signatures(ps, qs).unwrap();
        let vs = enumerate_vertices(&iota).unwrap();
        let v = &vs[pick.index(vs.len())];
        let form = CostForm::new(v, &iota).unwrap();
        let orb = orbit(&form).unwrap();
        let base = &orb.elements[0].fingerprint;
        let all: BTreeSet<_> = orb.elements.iter().map(|e| format!("{:?}", e.fingerprint)).collect();
        let moved: BTreeSet<_> = orb
            .elements
            .iter()
            .map(|e| {
                let h1: Vec<usize> = e.g1.iter().map(|&i| g1[i]).collect();
                let h2: Vec<usize> = e.g2.iter().map(|&j| g2[j]).collect();
                format!("{:?}", base.relabel(4, &h1, &h2))
            })
            .collect();
        prop_assert_eq!(all, moved);
        for e in &orb.elements {
            prop_assert_eq!(&base.relabel(4, &e.g1, &e.g2), &e.fingerprint);
        }
    }
}
