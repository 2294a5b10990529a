use fp_cohomology::algebra::{
    monomial_mul, tau, tau_monomial, theta, theta_normalized, theta_normalized_shuffle_form,
    theta_shuffle_form,
};
use fp_cohomology::cochain::{correspond, correspond_back, Action};
use fp_cohomology::generators::{f_gen, f_im, h_gen, t_im, t_imq, QSequence};
use fp_cohomology::group_ring::t_monomial;
use fp_cohomology::oracle::{
    cochain_from_vector, d_matrix, random_cochain, random_cocycle, CoboundarySpace, FpMatrix,
    DEFAULT_BUDGET,
};
use fp_cohomology::{
    AlgebraElem, CoeffRing, GroupContext, ICochain, MonomialSig, MultiIndex, NormalizedCochain,
    Permutation, RingElem, Tensor,
};
use proptest::prelude::*;

const CONTEXTS: [(u32, usize); 5] = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)];

fn ctx(p: u32, r: usize) -> GroupContext {
    GroupContext::new(p, r).unwrap()
}

fn any_ctx() -> impl Strategy<Value = GroupContext> {
    (0..CONTEXTS.len()).prop_map(|i| ctx(CONTEXTS[i].0, CONTEXTS[i].1))
}

fn any_ring() -> impl Strategy<Value = CoeffRing> {
    prop_oneof![Just(CoeffRing::Integers), Just(CoeffRing::ModP)]
}

fn ring_elem(c: &GroupContext, ring: CoeffRing, coeffs: &[i64]) -> RingElem {
    let terms = c.elements().zip(coeffs.iter().copied());
    RingElem::from_terms(c, ring, terms).unwrap()
}

fn coeff_vec() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 25)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn t_basis_round_trip(c in any_ctx(), ring in any_ring(), coeffs in coeff_vec()) {
        let a = ring_elem(&c, ring, &coeffs);
        let q = a.to_t_basis();
        prop_assert_eq!(q.coeff(&MultiIndex::zero(c.r())), a.augmentation());
        prop_assert_eq!(RingElem::from_t_basis(&q), a);
    }

    #[test]
    fn augmentation_is_multiplicative(c in any_ctx(), x in coeff_vec(), y in coeff_vec()) {
        let a = ring_elem(&c, CoeffRing::Integers, &x);
        let b = ring_elem(&c, CoeffRing::Integers, &y);
        prop_assert_eq!(a.mul(&b).unwrap().augmentation(), a.augmentation() * b.augmentation());
    }

    #[test]
    fn correspond_round_trip(c in any_ctx(), ring in any_ring(), n in 0usize..4, seed in any::<u64>()) {
        let f = random_cochain(&c, n, ring, seed).unwrap();
        prop_assert_eq!(correspond(&correspond_back(&f)), f.clone());
        let a = correspond_back(&f);
        prop_assert_eq!(correspond_back(&correspond(&a)), a);
    }

    #[test]
    fn d_squared_is_zero(c in any_ctx(), ring in any_ring(), n in 0usize..4, seed in any::<u64>()) {
        let f = random_cochain(&c, n, ring, seed).unwrap();
        prop_assert!(f.coboundary().coboundary().is_zero());
        let a = correspond_back(&f);
        prop_assert!(a.coboundary().coboundary().is_zero());
        prop_assert_eq!(correspond(&a.coboundary()), f.coboundary());
    }

    #[test]
    fn eval_is_multilinear(c in any_ctx(), seed in any::<u64>(), x in coeff_vec(), y in coeff_vec(), z in coeff_vec(), k in -4i64..5) {
        let f = random_cochain(&c, 2, CoeffRing::Integers, seed).unwrap();
        let to_ideal = |v: &[i64]| {
            let a = ring_elem(&c, CoeffRing::Integers, v);
            a.sub(&RingElem::unit(&c, CoeffRing::Integers).scale(a.augmentation())).unwrap()
        };
        let (a, b, w) = (to_ideal(&x), to_ideal(&y), to_ideal(&z));
        let mixed = a.scale(k).add(&b).unwrap();
        let ev = |u: &RingElem| f.eval(&Tensor::new(&c, vec![w.clone(), u.clone()]).unwrap()).unwrap();
        prop_assert_eq!(ev(&mixed), k * ev(&a) + ev(&b));
    }

    #[test]
    fn mod_p_evaluation_invariance(c in any_ctx(), seed in any::<u64>(), x in coeff_vec(), y in coeff_vec(), z in coeff_vec()) {
        let f = random_cochain(&c, 2, CoeffRing::ModP, seed).unwrap();
        let to_ideal = |v: &[i64]| {
            let a = ring_elem(&c, CoeffRing::Integers, v);
            a.sub(&RingElem::unit(&c, CoeffRing::Integers).scale(a.augmentation())).unwrap()
        };
        let (a, b, w) = (to_ideal(&x), to_ideal(&y), to_ideal(&z));
        let shifted = a.add(&w.scale(c.p() as i64)).unwrap();
        let t = Tensor::new(&c, vec![a, b.clone()]).unwrap();
        let t2 = Tensor::new(&c, vec![shifted, b]).unwrap();
        prop_assert_eq!(f.eval(&t).unwrap(), f.eval(&t2).unwrap());
    }

    #[test]
    fn sigma_action_composes_as_right_action(seed in any::<u64>(), i in 0usize..6, j in 0usize..6) {
        let c = ctx(3, 1);
        let f = random_cochain(&c, 3, CoeffRing::ModP, seed).unwrap();
        let all = Permutation::all(3);
        let (s, t) = (&all[i], &all[j]);
        prop_assert_eq!(f.sigma_act(&Permutation::identity(3)).unwrap(), f.clone());
        let lhs = f.sigma_act(t).unwrap().sigma_act(s).unwrap();
        prop_assert_eq!(lhs, f.sigma_act(&t.compose(s)).unwrap());
    }

    #[test]
    fn monomial_product_laws(p in prop_oneof![Just(2u32), Just(3), Just(5)],
                             a in prop::collection::vec(0u32..4, 3),
                             b in prop::collection::vec(0u32..4, 3),
                             d in prop::collection::vec(0u32..4, 3)) {
        let (a, b, d) = (MonomialSig(a), MonomialSig(b), MonomialSig(d));
        let (sab, ab) = monomial_mul(p, &a, &b);
        let (sba, ba) = monomial_mul(p, &b, &a);
        prop_assert_eq!(&ab, &ba);
        let k = if a.degree() * b.degree() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!((sba - k * sab).rem_euclid(p as i64), 0);
        let (s1, _) = monomial_mul(p, &ab, &d);
        let (sbd, bd) = monomial_mul(p, &b, &d);
        let (s2, _) = monomial_mul(p, &a, &bd);
        prop_assert_eq!((sab * s1 - sbd * s2).rem_euclid(p as i64), 0);
    }

    #[test]
    fn theta_forms_agree_on_cocycles(c in any_ctx(), n in 0usize..4, seed in any::<u64>()) {
        let f = random_cocycle(&c, n, seed, DEFAULT_BUDGET).unwrap();
        let e = theta(&f).unwrap();
        prop_assert_eq!(&theta_normalized(&correspond_back(&f)).unwrap(), &e);
        let g = random_cochain(&c, n.saturating_sub(1), CoeffRing::ModP, seed ^ 1).unwrap();
        if n > 0 {
            prop_assert_eq!(&theta(&f.add(&g.coboundary()).unwrap()).unwrap(), &e);
        }
    }

    #[test]
    fn p2_shuffle_forms_match_direct_sums(r in 1usize..4, n in 0usize..4, seed in any::<u64>()) {
        let c = ctx(2, r);
        let f = random_cochain(&c, n, CoeffRing::ModP, seed).unwrap();
        prop_assert_eq!(theta_shuffle_form(&f).unwrap(), theta(&f).unwrap());
        let a = correspond_back(&f);
        prop_assert_eq!(theta_normalized_shuffle_form(&a).unwrap(), theta_normalized(&a).unwrap());
    }

    #[test]
    fn t_expansion(c in any_ctx(), m in 0usize..5, seed in any::<u64>()) {
        let f = random_cochain(&c, m, CoeffRing::ModP, seed).unwrap();
        for i in 1..=c.r() {
            let lhs = f.eval(&t_im(&c, i, m).unwrap()).unwrap();
            let rhs: i64 = QSequence::all(&c, m)
                .iter()
                .map(|q| f.eval(&t_imq(&c, i, m, q).unwrap()).unwrap())
                .sum();
            prop_assert_eq!(lhs, rhs.rem_euclid(c.p() as i64));
        }
    }
}

#[test]
fn high_t_powers_vanish_mod_p() {
    for (p, r) in CONTEXTS {
        let c = ctx(p, r);
        for i in 1..=r {
            for k in p..p + 3 {
                let t = t_monomial(&c, &MultiIndex::single(r, i, k));
                assert!(t.reduce_mod_p().is_zero(), "p={p} k={k}");
            }
        }
    }
}

#[test]
fn nonzero_t_monomials_are_independent_mod_p() {
    for (p, r) in CONTEXTS {
        let c = ctx(p, r);
        let elems: Vec<_> = c.elements().collect();
        let mut columns = Vec::new();
        let mut k = vec![0u32; r];
        loop {
            let pos = (0..r).rev().find(|&j| k[j] + 1 < p);
            let Some(pos) = pos else { break };
            k[pos] += 1;
            k[pos + 1..].iter_mut().for_each(|x| *x = 0);
            let t = t_monomial(&c, &MultiIndex(k.clone())).reduce_mod_p();
            columns.push(elems.iter().map(|u| t.coeff(u)).collect::<Vec<_>>());
        }
        assert_eq!(columns.len(), c.order() - 1);
        let rows: Vec<Vec<i64>> =
            (0..elems.len()).map(|i| columns.iter().map(|col| col[i]).collect()).collect();
        assert_eq!(FpMatrix::from_rows(p, &rows).rank(), c.order() - 1, "p={p} r={r}");
    }
}

#[test]
fn generator_cocycles() {
    for (p, r) in [(2, 2), (3, 2), (5, 1)] {
        let c = ctx(p, r);
        for i in 1..=r {
            assert!(f_gen(&c, i).unwrap().is_cocycle());
            assert!(h_gen(&c, i).unwrap().is_cocycle());
            for m in 0..=5 {
                assert!(f_im(&c, i, m).unwrap().is_cocycle(), "p={p} i={i} m={m}");
            }
        }
    }
}

#[test]
fn tau_images_are_cocycles() {
    for (p, r) in CONTEXTS {
        let c = ctx(p, r);
        for n in 0..=4 {
            for sig in MonomialSig::all_of_degree(r, n) {
                assert!(tau_monomial(&c, &sig).unwrap().is_cocycle(), "p={p} {sig}");
            }
        }
    }
}

#[test]
fn cup_of_cocycles_is_cocycle() {
    for (p, r) in CONTEXTS {
        let c = ctx(p, r);
        for seed in 0..4 {
            let f = random_cocycle(&c, 1, seed, DEFAULT_BUDGET).unwrap();
            let g = random_cocycle(&c, 2, seed + 100, DEFAULT_BUDGET).unwrap();
            assert!(f.cup(&g).unwrap().is_cocycle());
            assert!(g.cup(&f).unwrap().is_cocycle());
        }
    }
}

/// θ restricted to cocycles has exactly the coboundaries as kernel.
#[test]
fn theta_is_injective_on_cohomology() {
    for (p, r, top) in [(2, 2, 3), (3, 1, 4), (3, 2, 3)] {
        let c = ctx(p, r);
        for n in 0..=top {
            let kernel = d_matrix(&c, n, DEFAULT_BUDGET).unwrap().kernel_basis();
            let sigs = MonomialSig::all_of_degree(r, n);
            let images: Vec<AlgebraElem> = kernel
                .iter()
                .map(|v| theta(&cochain_from_vector(&c, n, v).unwrap()).unwrap())
                .collect();
            // matrix of θ on the kernel basis
            let rows: Vec<Vec<i64>> = sigs
                .iter()
                .map(|s| images.iter().map(|e| e.coeff(s)).collect())
                .collect();
            let m = FpMatrix::from_rows(p, &rows);
            let space = CoboundarySpace::new(&c, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(m.rank(), sigs.len(), "θ onto at p={p} r={r} n={n}");
            assert_eq!(kernel.len() - m.rank(), space.dim(), "p={p} r={r} n={n}");
            for combo in m.kernel_basis() {
                let mut f = ICochain::zero(&c, n, CoeffRing::ModP).unwrap();
                for (v, &k) in kernel.iter().zip(&combo) {
                    if k != 0 {
                        f = f.add(&cochain_from_vector(&c, n, v).unwrap().scale(k as i64)).unwrap();
                    }
                }
                assert!(space.contains(&f).unwrap(), "p={p} r={r} n={n}");
            }
        }
    }
}

#[test]
fn sign_action_coboundaries_agree() {
    for r in 1..=2 {
        let c = ctx(2, r);
        for w in [vec![1; r], vec![0; r]] {
            let action = Action::Sign(w);
            for n in 0..3 {
                let f = random_cochain(&c, n, CoeffRing::Integers, n as u64 + 5).unwrap();
                let a: NormalizedCochain = correspond_back(&f);
                let bar = a.coboundary_with_action(&action).unwrap();
                assert_eq!(correspond(&bar), f.coboundary_with_action(&action).unwrap());
                let dd = bar.coboundary_with_action(&action).unwrap();
                assert!(dd.is_zero());
            }
        }
    }
}

#[test]
fn tau_on_linear_combinations() {
    let c = ctx(3, 2);
    let e = AlgebraElem::from_terms(
        &c,
        [(MonomialSig(vec![2, 0]), 1), (MonomialSig(vec![1, 1]), 2)],
    )
    .unwrap();
    let f = tau(&e).unwrap();
    assert!(f.is_cocycle());
    assert_eq!(theta(&f).unwrap(), e);
}
