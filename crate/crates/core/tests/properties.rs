use std::sync::Arc;

use proptest::prelude::*;
use qeag_core::homol::{
    is_intertwiner, is_isomorphic, is_projective_a, omega, omega_inv, projective_cover, radical, stable_reduce,
};
use qeag_core::hopf::exponent_vectors;
use qeag_core::io::{ModuleFile, VarietyFile};
use qeag_core::rep::{
    character_sum, conjugation_witness, derive_seed, dsum, dual, dual_inv, induce_r, induction_witnesses,
    random_module, restrict_to_r, simple, tensor, Char,
};
use qeag_core::variety::{
    carlson_module, enumerate_points, jordan_profile, point_is_projective, rank_variety, tau_matrix, variety_cup,
};
use qeag_core::{Fe, Field, FieldCtx, Mat, ModuleRep, PPoint};

const CONFIGS: [(u32, u32, usize); 4] = [(5, 2, 2), (7, 3, 2), (5, 2, 3), (11, 5, 2)];

fn ctx(i: usize) -> Arc<FieldCtx> {
    let (p, ell, n) = CONFIGS[i];
    FieldCtx::new(p, ell, n).unwrap()
}

fn module(c: &Arc<FieldCtx>, seed: u64, budget: usize) -> ModuleRep {
    random_module(c, seed, budget).unwrap().1
}

fn iso(a: &ModuleRep, b: &ModuleRep) -> bool {
    is_isomorphic(a, b, 8).unwrap().is_iso()
}

fn random_point(c: &FieldCtx, codes: &[u32]) -> Option<PPoint> {
    let coords = codes.iter().take(c.n()).map(|&x| Fe(x % c.p())).collect();
    PPoint::new(c.base(), coords).ok()
}

fn field_strategy() -> impl Strategy<Value = Arc<Field>> {
    prop_oneof![
        Just(Arc::new(Field::prime(5))),
        Just(Arc::new(Field::prime(11))),
        Just(Arc::new(Field::extension(5, 2))),
        Just(Arc::new(Field::extension(7, 2))),
    ]
}

fn matrix_strategy() -> impl Strategy<Value = Mat> {
    (field_strategy(), 1usize..7, 1usize..7, prop::collection::vec(any::<u32>(), 49)).prop_map(|(f, r, c, raw)| {
        let data = raw.iter().take(r * c).map(|&x| Fe(x % f.order())).collect();
        Mat::from_vec(&f, r, c, data)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(f in field_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (a, b, c) = (Fe(a % f.order()), Fe(b % f.order()), Fe(c % f.order()));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
        }
    }

    #[test]
    fn rank_nullity(m in matrix_strategy()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(m.transpose().rank(), m.rank());
        let (r, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(r.rref().0, r);
    }

    #[test]
    fn root_of_unity_powers(i in 0usize..4) {
        let c = ctx(i);
        let f = c.base();
        prop_assert_eq!(f.pow(c.q(), c.ell() as u64), Fe::ONE);
        let powers: std::collections::BTreeSet<Fe> = (0..c.ell()).map(|k| f.pow(c.q(), k as u64)).collect();
        prop_assert_eq!(powers.len(), c.ell() as usize);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn functor_outputs_satisfy_relations(i in 0usize..4, s in any::<u64>(), t in any::<u64>()) {
        let c = ctx(i);
        let m = module(&c, s, 12);
        let n = module(&c, t, 12);
        for out in [tensor(&m, &n).unwrap(), dual(&m), dual_inv(&m), dsum(&m, &n).unwrap(), omega(&m), omega_inv(&m)] {
            prop_assert!(out.validate().is_ok());
        }
    }

    #[test]
    fn tensor_is_strictly_associative(i in 0usize..4, s in any::<u64>()) {
        let c = ctx(i);
        let ms: Vec<ModuleRep> = (0..3).map(|k| module(&c, derive_seed(s, k), 6)).collect();
        let left = tensor(&tensor(&ms[0], &ms[1]).unwrap(), &ms[2]).unwrap();
        let right = tensor(&ms[0], &tensor(&ms[1], &ms[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn lemma_witnesses(i in 0usize..4, s in any::<u64>()) {
        let c = ctx(i);
        let m = module(&c, s, 10);
        for g in 0..c.n() {
            let chi = simple(&c, &Char::generator(c.n(), g));
            let conj = tensor(&tensor(&chi, &m).unwrap(), &dual(&chi)).unwrap();
            let w = conjugation_witness(&m, g);
            prop_assert!(w.is_invertible() && is_intertwiner(&w, &conj, &m));
        }
        let ind = induce_r(&restrict_to_r(&m));
        let sum = character_sum(&m).unwrap();
        let (phi, psi) = induction_witnesses(&m);
        let id = Mat::identity(c.base(), ind.dim());
        prop_assert_eq!(phi.mul(&psi), id.clone());
        prop_assert_eq!(psi.mul(&phi), id);
        prop_assert!(is_intertwiner(&phi, &ind, &sum));
        prop_assert!(iso(&dual(&m), &dual_inv(&m)));
    }

    #[test]
    fn cover_is_minimal(i in 0usize..4, s in any::<u64>()) {
        let c = ctx(i);
        let m = module(&c, s, 12);
        let cover = projective_cover(&m);
        prop_assert!(is_intertwiner(&cover.surjection, &cover.cover, &m));
        prop_assert_eq!(cover.surjection.rank(), m.dim());
        prop_assert!(is_projective_a(&cover.cover));
        let rad = radical(&cover.cover);
        prop_assert_eq!(Mat::hstack(&[&rad, &cover.kernel_basis]).rank(), rad.cols());
    }

    #[test]
    fn omega_is_additive_and_dual_compatible(i in 0usize..3, s in any::<u64>(), t in any::<u64>()) {
        let c = ctx(i);
        let m = module(&c, s, 8);
        let n = module(&c, t, 8);
        prop_assert!(iso(&omega(&dsum(&m, &n).unwrap()), &dsum(&omega(&m), &omega(&n)).unwrap()));
        let a = stable_reduce(&dual(&omega(&m)));
        let b = stable_reduce(&omega_inv(&dual(&m)));
        prop_assert_eq!(a.dim(), b.dim());
        prop_assert!(iso(&a, &b));
    }

    #[test]
    fn jordan_counts(i in 0usize..4, s in any::<u64>(), codes in prop::collection::vec(0u32..11, 3)) {
        let c = ctx(i);
        let Some(lambda) = random_point(&c, &codes) else { return Ok(()) };
        let m = module(&c, s, 20);
        let ell = c.ell() as usize;
        let n = tau_matrix(&m, &lambda).unwrap();
        let profile = jordan_profile(&n, ell);
        prop_assert!(profile[ell - 1] <= m.dim() / ell);
        let free = point_is_projective(&m, &lambda).unwrap();
        prop_assert_eq!(free, m.dim() % ell == 0 && profile[ell - 1] == m.dim() / ell);
        if free {
            for (j, &r) in profile.iter().enumerate() {
                prop_assert_eq!(r, m.dim() / ell * (ell - j));
            }
        }
        for b in exponent_vectors(c.ell(), c.n()) {
            let moved = lambda.coords().iter().zip(&b).map(|(&x, &e)| c.base().mul(x, c.q_pow(e as i64))).collect();
            let moved = PPoint::new(c.base(), moved).unwrap();
            prop_assert_eq!(point_is_projective(&m, &moved).unwrap(), free);
        }
    }

    #[test]
    fn varieties_of_triangles(i in 0usize..4, s in any::<u64>()) {
        let c = ctx(i);
        let m = module(&c, s, 16);
        let degrees = [1, 2];
        let v = rank_variety(&m, &degrees).unwrap();
        let vo = rank_variety(&omega(&m), &degrees).unwrap();
        let cover = projective_cover(&m);
        let vp = rank_variety(&cover.cover, &degrees).unwrap();
        prop_assert!(vp.is_empty());
        prop_assert_eq!(&vo, &v);
        prop_assert!(v.is_subset(&variety_cup(&vo, &vp).unwrap()).unwrap());
        prop_assert!(vo.is_subset(&variety_cup(&v, &vp).unwrap()).unwrap());
        prop_assert_eq!(&rank_variety(&dual(&m), &degrees).unwrap(), &v);
        prop_assert_eq!(is_projective_a(&m), v.is_empty());
    }

    #[test]
    fn carlson_detects_points(i in 0usize..3, s in any::<u64>()) {
        let c = ctx(i);
        let m = module(&c, s, 6);
        for lambda in enumerate_points(&c, 1).unwrap().into_iter().take(6) {
            let l = carlson_module(&c, &lambda).unwrap();
            let in_v = !point_is_projective(&m, &lambda).unwrap();
            prop_assert_eq!(in_v, !is_projective_a(&tensor(&l, &m).unwrap()));
        }
    }

    #[test]
    fn files_round_trip(i in 0usize..4, s in any::<u64>()) {
        let c = ctx(i);
        let m = module(&c, s, 12);
        let text = ModuleFile::from_module(&m, Some(format!("seed {s}"))).render();
        let parsed = ModuleFile::parse(&text).unwrap();
        prop_assert_eq!(parsed.render(), text);
        prop_assert_eq!(parsed.to_module().unwrap(), m.clone());
        let v = rank_variety(&m, &[1, 2]).unwrap();
        let vt = VarietyFile::new(&c, &v, None).render();
        let back = VarietyFile::parse(&vt).unwrap();
        prop_assert_eq!(back.render(), vt);
        prop_assert_eq!(back.to_variety().unwrap(), v);
    }
}
