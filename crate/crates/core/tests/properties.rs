mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torcone_core::classify::{classify_angle_pair, AnglePair, VerdictTag, Winding};
use torcone_core::forms::{Poly, PolyForm, Vars, VectorField};
use torcone_core::lattice::{
    complete_to_basis, gcd_reduce, hermite_normal_form, integer_kernel, smith_normal_form,
};
use torcone_core::{classify, ClassifyError, Cone, IntMatrix, IntVector, Rational, ToricInput};

const N: usize = 4;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn vars() -> Arc<Vars> {
    Arc::new(Vars::new(["x0", "x1", "x2", "x3"]))
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0u32..=2, N)), 0..3).prop_map(|terms| {
        let mut p = Poly::zero(N);
        for (c, exps) in terms {
            let mut t = Poly::constant(N, q(c));
            for (i, e) in exps.into_iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&Poly::var(N, i));
                }
            }
            p = p.add(&t);
        }
        p
    })
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << N)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..N).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

fn form_strategy(k: usize) -> impl Strategy<Value = PolyForm> {
    let basis = subsets(k);
    let nb = basis.len();
    prop::collection::vec((0..nb, poly_strategy()), 0..3).prop_map(move |parts| {
        let v = vars();
        let mut f = PolyForm::zero(&v, k);
        for (b, p) in parts {
            let mut e = PolyForm::function(&v, p);
            for &i in &basis[b] {
                e = e.wedge(&PolyForm::dx(&v, i)).unwrap();
            }
            f = f.add(&e).unwrap();
        }
        f
    })
}

fn field_strategy() -> impl Strategy<Value = VectorField> {
    prop::collection::vec(poly_strategy(), N).prop_map(|c| VectorField::new(&vars(), c))
}

fn sign(deg: usize) -> Rational {
    if deg.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn small_point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-4i64..=4, N).prop_map(|v| v.into_iter().map(q).collect())
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn wedge_is_associative(a in form_strategy(1), b in form_strategy(1), c in form_strategy(2)) {
        let l = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let r = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn wedge_is_graded_commutative(a in form_strategy(1), b in form_strategy(2), c in form_strategy(1)) {
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        prop_assert_eq!(a.wedge(&c).unwrap(), c.wedge(&a).unwrap().neg());
    }

    #[test]
    fn d_squares_to_zero(a in form_strategy(0), b in form_strategy(1), c in form_strategy(2)) {
        prop_assert!(a.d().d().is_zero());
        prop_assert!(b.d().d().is_zero());
        prop_assert!(c.d().d().is_zero());
    }

    #[test]
    fn leibniz_rule(a in form_strategy(1), b in form_strategy(2)) {
        let lhs = a.wedge(&b).unwrap().d();
        let rhs = a.d().wedge(&b).unwrap()
            .add(&a.wedge(&b.d()).unwrap().scale(&sign(1))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_is_antiderivation(x in field_strategy(), a in form_strategy(1), b in form_strategy(2)) {
        let lhs = a.wedge(&b).unwrap().interior(&x).unwrap();
        let rhs = a.interior(&x).unwrap().wedge(&b).unwrap()
            .add(&a.wedge(&b.interior(&x).unwrap()).unwrap().scale(&sign(1))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_alternates(a in form_strategy(2), p in small_point(), u in small_point(), v in small_point()) {
        let uv = a.evaluate(&p, &[], &[u.clone(), v.clone()]).unwrap();
        let vu = a.evaluate(&p, &[], &[v, u.clone()]).unwrap();
        prop_assert_eq!(uv, -vu);
        prop_assert!(a.evaluate(&p, &[], &[u.clone(), u]).unwrap().is_zero());
    }
}

fn int_vector(d: usize, bound: i64) -> impl Strategy<Value = IntVector> {
    prop::collection::vec(-bound..=bound, d).prop_map(|v| IntVector::from_i64s(&v))
}

fn int_matrix(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntMatrix::from_entries(r, c, e.into_iter().map(BigInt::from).collect()))
    })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn gcd_reduce_witness(v in (2usize..=5).prop_flat_map(|d| int_vector(d, 60))) {
        prop_assume!(!v.is_zero());
        let (g, u) = gcd_reduce(&v).unwrap();
        let mut expected = IntVector::zero(v.dim()).into_entries();
        expected[0] = g.clone();
        prop_assert_eq!(u.apply(&v), IntVector::new(expected));
        prop_assert!(u.det().is_one());
        let e: Vec<i64> = v.entries().iter().map(|x| i64::try_from(x).unwrap()).collect();
        prop_assert_eq!(g, BigInt::from(common::euclid(&e)));
    }

    #[test]
    fn basis_completion_keeps_vector(v in (2usize..=5).prop_flat_map(|d| int_vector(d, 30))) {
        let Some(p) = v.primitive() else { return Ok(()); };
        let u = complete_to_basis(&p).unwrap();
        prop_assert_eq!(u.matrix().column(0), p);
        prop_assert!(u.det().is_one());
        prop_assert!(u.matrix().mul(u.inverse()).is_identity());
    }

    #[test]
    fn hermite_form_is_reached(m in int_matrix(4, 9)) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.matrix().mul(&m), h.clone());
        prop_assert!(u.det().abs().is_one());
        prop_assert_eq!(hermite_normal_form(&h).0, h);
    }

    #[test]
    fn smith_form_is_diagonal(m in int_matrix(4, 9)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.left.matrix().mul(&m).mul(s.right.matrix()), s.diagonal.clone());
        let f = s.invariant_factors();
        for i in 0..s.diagonal.rows() {
            for j in 0..s.diagonal.cols() {
                if i != j {
                    prop_assert!(s.diagonal.get(i, j).is_zero());
                }
            }
        }
        for w in f.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        prop_assert_eq!(s.rank(), m.rank());
    }

    #[test]
    fn kernel_is_annihilated(m in int_matrix(4, 5)) {
        let k = integer_kernel(&m);
        prop_assert_eq!(k.len(), m.cols() - m.rank());
        for v in &k {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }
}

fn random_cone(seed: u64) -> Option<Cone> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.random_range(2..=4);
    let n = rng.random_range(1..=8);
    let gens = (0..n).map(|_| common::random_vector(&mut rng, d, 3)).collect();
    Cone::from_generators(d, gens).ok()
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn duality_round_trip(seed in any::<u64>()) {
        let Some(c) = random_cone(seed) else { return Ok(()); };
        let full = c.dual_description().unwrap();
        let gens = full.generators().unwrap();
        let normals = full.facet_normals().unwrap();
        prop_assert!(common::descriptions_agree(gens, normals));
        let back = Cone::from_facet_normals(c.dim(), normals.to_vec()).unwrap().dual_description().unwrap();
        prop_assert!(back.same_set(&full).unwrap());
    }

    #[test]
    fn reeb_vector_is_positive(seed in any::<u64>()) {
        let Some(c) = random_cone(seed) else { return Ok(()); };
        if let Ok(r) = c.reeb_vector() {
            for g in c.dual_description().unwrap().generators().unwrap() {
                prop_assert!(r.dot(g) >= BigInt::one());
            }
        }
    }

    #[test]
    fn standard_cones_normalize(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.random_range(2..=5);
        let k = rng.random_range(1..d);
        let standard = Cone::standard(d, k).unwrap();
        let image = standard.transformed(&common::random_sl(&mut rng, d)).unwrap();
        let w = image.normalize_to_standard().unwrap();
        prop_assert_eq!(w.k, k);
        prop_assert!(w.transform.det().is_one());
        prop_assert!(image.transformed(&w.transform).unwrap().same_set(&standard).unwrap());
    }

    #[test]
    fn triple_label_is_sl_invariant(v in int_vector(3, 40), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = common::random_sl(&mut rng, 3);
        let a = classify(&ToricInput::FreeTriple(v.clone())).unwrap();
        let b = classify(&ToricInput::FreeTriple(m.apply(&v))).unwrap();
        prop_assert_eq!(a.invariant_part(), b.invariant_part());
    }

    #[test]
    fn angle_trichotomy_is_total(r1 in int_vector(2, 6), r2 in int_vector(2, 6), wrap in any::<bool>()) {
        let (Some(r1), Some(r2)) = (r1.primitive(), r2.primitive()) else { return Ok(()); };
        let pair = AnglePair::new(r1.clone(), r2.clone(), wrap);
        let same_direction = r1 == r2;
        match classify_angle_pair(&pair) {
            Err(ClassifyError::InvalidAnglePair(_)) => prop_assert!(same_direction && !wrap),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
            Ok(r) => {
                let branches = [
                    r.reeb_type,
                    r.manifold == "S^1 × S^2",
                    r.verdict.tag == VerdictTag::Overtwisted,
                ];
                prop_assert_eq!(branches.iter().filter(|b| **b).count(), 1);
                let w = pair.winding().unwrap();
                prop_assert_eq!(r.reeb_type, w == Winding::Convex);
            }
        }
    }

    #[test]
    fn reeb_type_is_strongly_fillable(seed in any::<u64>(), k in 1i64..6, d in 4usize..7) {
        let mut inputs = vec![
            ToricInput::FreeTorus3(BigInt::from(k)),
            ToricInput::FreeTrivial(d),
        ];
        if let Some(c) = random_cone(seed) {
            inputs.push(ToricInput::Cone(c));
        }
        for input in inputs {
            match classify(&input) {
                Ok(r) => {
                    if r.reeb_type {
                        prop_assert_eq!(r.verdict.tag, VerdictTag::StronglyFillable);
                    }
                    if r.verdict.tag == VerdictTag::StronglyFillable {
                        prop_assert!(r.verdict.tag.is_weakly_fillable());
                    }
                }
                // Random cones can be degenerate or outside the classified
                // family.
                Err(ClassifyError::InvalidAnglePair(_))
                | Err(ClassifyError::InvalidInput(_))
                | Err(ClassifyError::UnclassifiableCone(_))
                | Err(ClassifyError::WholeSpaceCone)
                | Err(ClassifyError::Cone(_)) => {}
            }
        }
    }
}
