#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use affcryst::affine::{exp_nilpotent, log_unipotent, AffineMap};
use affcryst::engel::engel_flag;
use affcryst::jordan::jordan_decompose;
use affcryst::lie::{derivation_space, grading_derivation, lie_closure, Grading, LieAlgebra, LinearRep};
use affcryst::matrix::{unit_vector, Matrix};
use affcryst::poly::Polynomial;
use affcryst::realization::{build_split_extension, cyclic_splitting, fixed_point_check};
use affcryst::rep::{conjugate, delta, find_conjugator, is_crystallographic, precompose, tau};
use affcryst::samples::{self, AutomorphismSampler};
use affcryst::scheuneman::{graded_rep, two_step_rep};
use affcryst::search::SearchOptions;
use affcryst::shadow::{char_restriction_check, hull_action_from_reference, is_crystallographic_poly, shadow_generators};
use affcryst::torus::{apply_linear, are_conjugate, ca_to_rep, rep_to_ca, CAProduct};
use affcryst::Scalar;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn squarefree_part_has_simple_roots(roots in proptest::collection::vec((-3i64..3, 1u32..4), 1..4)) {
        let mut p = Polynomial::from_i64(&[1]);
        for (a, k) in &roots {
            for _ in 0..*k {
                p = &p * &Polynomial::from_i64(&[-a, 1]);
            }
        }
        let sf = p.squarefree_part().unwrap();
        prop_assert!(sf.gcd(&sf.derivative()).degree() == Some(0));
        prop_assert!(p.rem(&sf).is_zero());
        let mut distinct: Vec<i64> = roots.iter().map(|r| r.0).collect();
        distinct.sort_unstable();
        distinct.dedup();
        prop_assert_eq!(sf.degree(), Some(distinct.len()));
    }

    #[test]
    fn exp_log_round_trip(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = rng(seed);
        let g = samples::random_unipotent_affine(&mut r, n);
        prop_assert_eq!(exp_nilpotent(&log_unipotent(&g).unwrap()).unwrap(), g);
        let x = samples::random_nilpotent_affine(&mut r, n);
        prop_assert_eq!(log_unipotent(&exp_nilpotent(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn jordan_recovers_parts(seed in any::<u64>(), n in 1usize..=5, quadratic in any::<bool>()) {
        let (g, s, u) = samples::random_jordan_instance(&mut rng(seed), n, quadratic);
        let parts = jordan_decompose(&g).unwrap();
        prop_assert_eq!(parts.semisimple, s);
        prop_assert_eq!(parts.unipotent, u);
    }

    #[test]
    fn engel_flag_on_valid_reps(seed in any::<u64>()) {
        let rep = samples::random_rep(&mut rng(seed), 5);
        let ms: Vec<Matrix> = rep.images().iter().map(|y| y.matrix().clone()).collect();
        let flag = engel_flag(&ms).unwrap();
        for m in &ms {
            prop_assert!(flag.in_flag_basis(m).is_strictly_upper());
        }
    }

    #[test]
    fn jacobi_check_matches_brute_force(consts in proptest::collection::vec(-1i64..=1, 9)) {
        // independent oracle: expand the cyclic sum with the antisymmetric
        // constant tensor c[i][j][k] written out in full
        let n = 3;
        let mut c = vec![vec![vec![0i64; n]; n]; n];
        let pairs = [(0, 1), (0, 2), (1, 2)];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            for k in 0..n {
                c[i][j][k] = consts[p * n + k];
                c[j][i][k] = -consts[p * n + k];
            }
        }
        let mut jacobi = true;
        for m in 0..n {
            // [X1,[X2,X3]] + [X2,[X3,X1]] + [X3,[X1,X2]] component m
            let mut total = 0;
            for l in 0..n {
                total += c[1][2][l] * c[0][l][m] + c[2][0][l] * c[1][l][m] + c[0][1][l] * c[2][l][m];
            }
            jacobi &= total == 0;
        }
        let brackets: Vec<(usize, usize, Vec<Scalar>)> = pairs
            .iter()
            .enumerate()
            .map(|(p, &(i, j))| (i, j, (0..n).map(|k| Scalar::from_int(consts[p * n + k])).collect()))
            .collect();
        let l = LieAlgebra::new(n, affcryst::Field::Rational, &brackets).unwrap();
        prop_assert_eq!(l.check_jacobi().is_ok(), jacobi);
    }

    #[test]
    fn lie_closure_is_idempotent(seed in any::<u64>(), k in 1usize..4) {
        let mut r = rng(seed);
        let ms: Vec<Matrix> = (0..k).map(|_| samples::random_matrix(&mut r, 3, 3, 1)).collect();
        let c = lie_closure(&ms);
        prop_assert_eq!(lie_closure(&c).len(), c.len());
        for a in &c {
            for b in &c {
                let flat: Vec<_> = c.iter().map(Matrix::to_vector).collect();
                prop_assert!(affcryst::matrix::in_span(&flat, &a.commutator(b).to_vector()));
            }
        }
    }

    #[test]
    fn derivations_satisfy_leibniz(seed in any::<u64>(), which in 0usize..4) {
        let l = [LieAlgebra::heisenberg(1), LieAlgebra::filiform(4), LieAlgebra::free_two_step(3), LieAlgebra::free_three_step_quotient()][which].clone();
        let mut r = rng(seed);
        let space = derivation_space(&LinearRep::adjoint(&l)).unwrap();
        let d = space.iter().fold(Matrix::zeros(l.dim(), l.dim()), |acc, b| &acc + &b.scale(&Scalar::from_int(r.gen_range(-3..=3))));
        for _ in 0..5 {
            let x = samples::random_vector(&mut r, l.dim(), 4);
            let y = samples::random_vector(&mut r, l.dim(), 4);
            let lhs = d.mul_vec(&l.bracket(&x, &y));
            let a = l.bracket(&d.mul_vec(&x), &y);
            let b = l.bracket(&x, &d.mul_vec(&y));
            let rhs: Vec<Scalar> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn grading_derivation_commutes_with_graded_automorphisms(seed in any::<u64>()) {
        let l = LieAlgebra::free_two_step(3);
        let g = Grading::new(vec![1, 1, 1, 2, 2, 2]);
        let d = grading_derivation(&l, &g).unwrap();
        let phi = AutomorphismSampler::graded(&l, &g).sample(&mut rng(seed));
        prop_assert!(l.is_automorphism(&phi).unwrap());
        prop_assert_eq!(&phi * &d, &d * &phi);
    }

    #[test]
    fn relative_invariance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rep = samples::random_rep(&mut r, 4);
        let g = samples::random_affine(&mut r, rep.dim(), 3);
        let lhs = delta(&conjugate(&rep, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, &g.linear_part().det().unwrap() * &delta(&rep).unwrap());
    }

    #[test]
    fn basepoint_independence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rep = samples::random_rep(&mut r, 4);
        let d0 = tau(&rep, &vec![Scalar::zero(); rep.dim()]).unwrap().det().unwrap();
        for _ in 0..5 {
            let x: Vec<Scalar> = (0..rep.dim()).map(|_| Scalar::ratio(r.gen_range(-9..=9), r.gen_range(1..=5))).collect();
            prop_assert_eq!(tau(&rep, &x).unwrap().det().unwrap(), d0.clone());
        }
    }

    #[test]
    fn verdict_invariant_under_conjugation_and_precomposition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rep = samples::random_rep(&mut r, 4);
        let v = is_crystallographic(&rep).unwrap().crystallographic;
        let g = samples::random_affine(&mut r, rep.dim(), 2);
        prop_assert_eq!(is_crystallographic(&conjugate(&rep, &g).unwrap()).unwrap().crystallographic, v);
        let phi = if rep.algebra().is_abelian() {
            samples::random_invertible(&mut r, rep.dim(), 2)
        } else {
            AutomorphismSampler::new(rep.algebra()).sample(&mut r)
        };
        prop_assert_eq!(is_crystallographic(&precompose(&rep, &phi).unwrap()).unwrap().crystallographic, v);
    }

    #[test]
    fn conjugator_witness_rechecks(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rep = samples::random_rep(&mut r, 3);
        let g = samples::random_affine(&mut r, rep.dim(), 2);
        let other = conjugate(&rep, &g).unwrap();
        let found = find_conjugator(&rep, &other, &opts()).unwrap();
        let h = found.conjugator.unwrap();
        prop_assert_eq!(conjugate(&rep, &h).unwrap(), other);
    }

    #[test]
    fn graded_rep_invariant_under_graded_automorphisms(seed in any::<u64>()) {
        let l = LieAlgebra::filiform(4);
        let g = Grading::new(vec![1, 1, 2, 3]);
        let rep = graded_rep(&l, &g).unwrap();
        let phi = AutomorphismSampler::graded(&l, &g).sample(&mut rng(seed));
        prop_assert!(fixed_point_check(&rep, &phi, &opts()).unwrap().conjugator.is_some());
    }

    #[test]
    fn shadow_equivariance(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let rep = samples::random_polycyclic(&mut r, n);
        let g = samples::random_affine(&mut r, n, 2);
        let gi = g.inverse().unwrap();
        let lhs = shadow_generators(&rep.conjugate(&g).unwrap()).unwrap();
        let rhs: Vec<AffineMap> = shadow_generators(&rep).unwrap().iter().map(|t| g.compose(t).compose(&gi)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn char_restriction_on_conjugated_sol(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = samples::random_affine(&mut r, 3, 2);
        let rep = samples::sol_rep().conjugate(&g).unwrap();
        prop_assert!(is_crystallographic_poly(&rep).unwrap().crystallographic);
        let hull = hull_action_from_reference(&rep).unwrap();
        for (x, a) in rep.generators().iter().zip(&hull.matrices) {
            prop_assert!(char_restriction_check(x, a).unwrap());
        }
    }

    #[test]
    fn ca_round_trip_and_action(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let c = samples::random_ca_product(&mut r, n);
        prop_assert_eq!(rep_to_ca(&ca_to_rep(&c).unwrap()).unwrap(), c.clone());
        let g = samples::random_invertible(&mut r, n, 2);
        let h = samples::random_invertible(&mut r, n, 2);
        let twice = apply_linear(&apply_linear(&c, &g).unwrap(), &h).unwrap();
        prop_assert_eq!(twice, apply_linear(&c, &(&h * &g)).unwrap());
        prop_assert_eq!(apply_linear(&CAProduct::zero(n), &g).unwrap(), CAProduct::zero(n));
    }

    #[test]
    fn conjugacy_tests_agree(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let a = ca_to_rep(&samples::random_ca_product(&mut r, n)).unwrap();
        let b = if r.gen_bool(0.5) {
            conjugate(&a, &samples::random_affine(&mut r, n, 2)).unwrap()
        } else {
            ca_to_rep(&samples::random_ca_product(&mut r, n)).unwrap()
        };
        let canon = are_conjugate(&a, &b).unwrap();
        prop_assert_eq!(canon, are_conjugate(&b, &a).unwrap());
        let ab = find_conjugator(&a, &b, &opts()).unwrap();
        let ba = find_conjugator(&b, &a, &opts()).unwrap();
        if ab.certified {
            prop_assert_eq!(ab.conjugator.is_some(), canon);
        }
        if ba.certified {
            prop_assert_eq!(ba.conjugator.is_some(), canon);
        }
    }

    #[test]
    fn cyclic_splitting_has_exact_order(seed in any::<u64>(), which in 0usize..4) {
        let (a, k) = [
            (Matrix::from_i64(&[&[1, 0], &[0, -1]]), 2),
            (Matrix::from_i64(&[&[0, -1], &[1, 0]]), 4),
            (Matrix::from_i64(&[&[0, -1], &[1, -1]]), 3),
            (Matrix::from_i64(&[&[1, -1], &[1, 0]]), 6),
        ][which].clone();
        let mut r = rng(seed);
        let g_hat = AffineMap::new(&a, &samples::random_vector(&mut r, 2, 5)).unwrap();
        let g = cyclic_splitting(&g_hat, k).unwrap();
        prop_assert!(g.pow(k).matrix().is_identity());
        prop_assert_eq!(g.linear_part(), a);
        // same action on translations: the correction is itself a translation
        let t = AffineMap::translation(&unit_vector(2, 0));
        let lhs = g.compose(&t).compose(&g.inverse().unwrap());
        let rhs = g_hat.compose(&t).compose(&g_hat.inverse().unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn two_step_invariance(seed in any::<u64>(), which in 0usize..3) {
        let l = [LieAlgebra::heisenberg(1), LieAlgebra::heisenberg(2), LieAlgebra::free_two_step(3)][which].clone();
        let rep = two_step_rep(&l).unwrap();
        let phi = AutomorphismSampler::new(&l).sample(&mut rng(seed));
        let found = fixed_point_check(&rep, &phi, &opts()).unwrap();
        prop_assert!(found.conjugator.is_some());
    }

    #[test]
    fn stabilizer_is_closed(seed in any::<u64>()) {
        let l = LieAlgebra::heisenberg(1);
        let rep = two_step_rep(&l).unwrap();
        let s = AutomorphismSampler::new(&l);
        let mut r = rng(seed);
        let (a, b) = (s.sample(&mut r), s.sample(&mut r));
        let fa = fixed_point_check(&rep, &a, &opts()).unwrap().conjugator.is_some();
        let fb = fixed_point_check(&rep, &b, &opts()).unwrap().conjugator.is_some();
        if fa && fb {
            prop_assert!(fixed_point_check(&rep, &(&a * &b), &opts()).unwrap().conjugator.is_some());
        }
    }

    #[test]
    fn extension_restricts_to_base(seed in any::<u64>()) {
        let spec = samples::pm_spec();
        let mut r = rng(seed);
        let v = samples::random_vector(&mut r, 2, 3);
        let lift = AffineMap::new(&spec.autos()[0].phi, &v).unwrap();
        let lift = cyclic_splitting(&lift, 2).unwrap();
        let report = build_split_extension(&spec, &[lift]).unwrap();
        let base = spec.rep().group_generators().unwrap();
        prop_assert_eq!(&report.generators[1..], base.as_slice());
    }
}
