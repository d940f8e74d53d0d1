//! Law-level properties checked on seeded random instances: translate
//! preimages are boolean homomorphisms, the dualities hold, witnesses
//! re-verify, the mesh is an involution, and the family product is
//! associative with ultrafilter points multiplying like elements.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syndetic_core::size::{remark_du_check, verify_witness};
use syndetic_core::{
    is_piecewise_syndetic, is_syndetic, is_thick, random_semigroup, EventuallyPeriodicSet,
    FilterKernel, PointUltrafilter, RelativeContext, Semigroup, Stack, SubsetMask,
};

fn sg(n: usize, seed: u64) -> Semigroup {
    random_semigroup(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn msk(n: usize, bits: u32) -> SubsetMask {
    SubsetMask::from_bits(n, bits & ((1u32 << n) - 1))
}

fn nonempty(n: usize, bits: u32) -> SubsetMask {
    let m = msk(n, bits);
    if m.is_empty() {
        SubsetMask::singleton(n, bits as usize % n)
    } else {
        m
    }
}

fn stack_from(n: usize, gens: &[u32]) -> Stack {
    let masks: Vec<SubsetMask> = gens.iter().map(|&g| nonempty(n, g)).collect();
    Stack::up_closure(n, &masks).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn preimage_translate_is_a_boolean_homomorphism(
        n in 1..=5usize, seed in any::<u64>(), ab in any::<u32>(), bb in any::<u32>(), hr in any::<usize>(),
    ) {
        let s = sg(n, seed);
        let (a, b, h) = (msk(n, ab), msk(n, bb), hr % n);
        prop_assert_eq!(
            s.preimage_translate(h, a.union(b)),
            s.preimage_translate(h, a).union(s.preimage_translate(h, b))
        );
        prop_assert_eq!(
            s.preimage_translate(h, a.intersection(b)),
            s.preimage_translate(h, a).intersection(s.preimage_translate(h, b))
        );
        prop_assert_eq!(
            s.preimage_translate(h, a.complement()),
            s.preimage_translate(h, a).complement()
        );
    }

    #[test]
    fn absolute_duality_and_witnesses(n in 1..=5usize, seed in any::<u64>(), ab in any::<u32>()) {
        let s = sg(n, seed);
        let a = msk(n, ab);
        prop_assert!(remark_du_check(&s, a));
        prop_assert_eq!(is_syndetic(&s, a).value, !is_thick(&s, a.complement()).value);

        let syn = is_syndetic(&s, a);
        prop_assert_eq!(verify_witness(&s, a, &syn), syn.value);
        let thick = is_thick(&s, a);
        prop_assert_eq!(verify_witness(&s, a, &thick), thick.value);
        let pw = is_piecewise_syndetic(&s, a).unwrap();
        prop_assert_eq!(verify_witness(&s, a, &pw), pw.value);
    }

    #[test]
    fn size_notions_are_superset_monotone(
        n in 1..=5usize, seed in any::<u64>(), ab in any::<u32>(), extra in any::<u32>(),
    ) {
        let s = sg(n, seed);
        let a = msk(n, ab);
        let b = a.union(msk(n, extra));
        prop_assert!(!is_syndetic(&s, a).value || is_syndetic(&s, b).value);
        prop_assert!(!is_thick(&s, a).value || is_thick(&s, b).value);
        prop_assert!(
            !is_piecewise_syndetic(&s, a).unwrap().value
                || is_piecewise_syndetic(&s, b).unwrap().value
        );
    }

    #[test]
    fn relative_at_the_trivial_filter_is_absolute(
        n in 1..=5usize, seed in any::<u64>(), ab in any::<u32>(),
    ) {
        let s = sg(n, seed);
        let a = msk(n, ab);
        let ctx = RelativeContext::absolute(&s);
        prop_assert_eq!(ctx.is_rel_syndetic(a).unwrap().value, is_syndetic(&s, a).value);
        prop_assert_eq!(ctx.is_rel_thick(a).unwrap().value, is_thick(&s, a).value);
        prop_assert_eq!(
            ctx.is_pw_rel_syndetic(a).unwrap().value,
            is_piecewise_syndetic(&s, a).unwrap().value
        );
    }

    #[test]
    fn relative_duality_and_witnesses(
        n in 1..=5usize, seed in any::<u64>(), vb in any::<u32>(), wb in any::<u32>(), ab in any::<u32>(),
    ) {
        let s = sg(n, seed);
        let (v0, w0, a) = (nonempty(n, vb), nonempty(n, wb), msk(n, ab));
        let f = FilterKernel::new(n, v0).unwrap();
        let g = FilterKernel::new(n, w0).unwrap();
        let ctx = RelativeContext::new(&s, f, Some(g)).unwrap();
        prop_assert!(ctx.rel_duality_check(a).unwrap());

        let syn = ctx.is_rel_syndetic(a).unwrap();
        prop_assert_eq!(ctx.verify_witness(a, &syn), syn.value);
        let thick = ctx.is_rel_thick(a).unwrap();
        prop_assert_eq!(ctx.verify_witness(a, &thick), thick.value);
    }

    #[test]
    fn piecewise_routes_stay_coherent(
        n in 1..=5usize, seed in any::<u64>(), vb in any::<u32>(), ab in any::<u32>(),
    ) {
        let s = sg(n, seed);
        let (v0, a) = (nonempty(n, vb), msk(n, ab));
        let f = FilterKernel::new(n, v0).unwrap();
        let ctx = RelativeContext::new(&s, f, None).unwrap();
        let pw = ctx.is_pw_rel_syndetic(a).unwrap();
        prop_assert_eq!(ctx.verify_witness(a, &pw), pw.value);
        if s.is_closed(v0) {
            let idem = ctx.is_pw_rel_syndetic_idem(a).unwrap();
            prop_assert_eq!(idem.value, pw.value);
            if pw.value {
                let d = ctx.decompose_pw(a).unwrap();
                prop_assert_eq!(d.syndetic_part.intersection(d.thick_part), a);
            }
        }
    }

    #[test]
    fn mesh_is_an_involution_and_antitone(
        n in 1..=5usize, g1 in any::<u32>(), g2 in any::<u32>(), g3 in any::<u32>(),
    ) {
        let small = stack_from(n, &[g1, g2]);
        let large = small.union(&stack_from(n, &[g3]));
        prop_assert_eq!(&small.mesh().mesh(), &small);
        prop_assert_eq!(&large.mesh().mesh(), &large);
        prop_assert!(small.is_subfamily_of(&large));
        prop_assert!(large.mesh().is_subfamily_of(&small.mesh()));
        prop_assert_eq!(&small.mesh(), &small.mesh_by_sweep().unwrap());
    }

    #[test]
    fn stack_product_is_associative(
        n in 1..=4usize, seed in any::<u64>(), g1 in any::<u32>(), g2 in any::<u32>(), g3 in any::<u32>(),
    ) {
        let s = sg(n, seed);
        let (f, g, h) = (stack_from(n, &[g1]), stack_from(n, &[g2, g3]), stack_from(n, &[g3]));
        let left = f.product(&g, &s).unwrap().product(&h, &s).unwrap();
        let right = f.product(&g.product(&h, &s).unwrap(), &s).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn ultrafilter_points_multiply_like_elements(
        n in 1..=5usize, seed in any::<u64>(), xr in any::<usize>(), yr in any::<usize>(),
    ) {
        let s = sg(n, seed);
        let (x, y) = (xr % n, yr % n);
        let px = PointUltrafilter::new(n, x).unwrap();
        let py = PointUltrafilter::new(n, y).unwrap();
        let product = px.stack().product(&py.stack(), &s).unwrap();
        let expected = PointUltrafilter::new(n, s.mul(x, y)).unwrap();
        prop_assert_eq!(product, expected.stack());
    }

    #[test]
    fn filter_product_generator_is_the_product_set(
        n in 1..=5usize, seed in any::<u64>(), vb in any::<u32>(), wb in any::<u32>(),
    ) {
        let s = sg(n, seed);
        let (v0, w0) = (nonempty(n, vb), nonempty(n, wb));
        let f = FilterKernel::new(n, v0).unwrap();
        let g = FilterKernel::new(n, w0).unwrap();
        // product() internally cross-checks the closed form against the
        // sweep at this size; reaching the assert is half the point
        let p = f.product(&g, &s).unwrap();
        prop_assert_eq!(p.generator(), s.product_set(v0, w0));
    }

    #[test]
    fn eventually_periodic_duality_and_progressions(
        p in 1..=8usize, t in 0..=12usize, rb in any::<u16>(), pb in any::<u16>(),
    ) {
        let residues: Vec<usize> = (0..p).filter(|&r| rb >> r & 1 == 1).collect();
        let prefix: Vec<usize> = (1..t).filter(|&m| pb >> (m % 16) & 1 == 1).collect();
        let a = EventuallyPeriodicSet::new(p, t, residues, prefix).unwrap();
        let ca = a.classify().unwrap();
        let cb = a.complement().classify().unwrap();
        prop_assert_eq!(ca.syndetic, !cb.thick);
        prop_assert_eq!(ca.thick, !cb.syndetic);
        prop_assert_eq!(ca.piecewise_syndetic, ca.syndetic);
        if ca.piecewise_syndetic {
            let (start, step) = a.find_ap(5).unwrap();
            for k in 0..=5 {
                prop_assert!(a.contains(start + k * step));
            }
        }
    }
}
