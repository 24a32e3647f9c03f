use num_rational::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use alcove::bruhat::{length, omega_decompose, random_element};
use alcove::harness::{random_dominant_gsp, random_dominant_gu};
use alcove::permissibility::{conv_hull_member_gl, conv_hull_member_gl_suffix, conv_hull_member_gsp};
use alcove::weyl::kottwitz_of_vector;
use alcove::{weyl_orbit, DominantCochar, GroupContext, WeylElement};

fn context() -> impl Strategy<Value = GroupContext> {
    prop_oneof![
        (1usize..=4).prop_map(GroupContext::Gl),
        (1usize..=3).prop_map(GroupContext::Gsp),
        (1usize..=3).prop_map(GroupContext::Gu),
    ]
}

fn element(ctx: GroupContext, seed: u64) -> WeylElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_element(ctx, &mut rng, (seed % 9) as usize, 2)
}

fn rat() -> impl Strategy<Value = Rational64> {
    (-8i64..=16, 1i64..=4).prop_map(|(a, b)| Rational64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn group_axioms(ctx in context(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (element(ctx, a), element(ctx, b), element(ctx, c));
        let e = WeylElement::identity(ctx);
        prop_assert_eq!(x.compose(&y).unwrap().compose(&z).unwrap(), x.compose(&y.compose(&z).unwrap()).unwrap());
        prop_assert_eq!(x.compose(&e).unwrap(), x.clone());
        prop_assert_eq!(e.compose(&x).unwrap(), x.clone());
        prop_assert_eq!(x.compose(&x.inverse()).unwrap(), e);
        prop_assert_eq!(length(&x.inverse()), length(&x));
    }

    #[test]
    fn kottwitz_is_additive(ctx in context(), a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (element(ctx, a), element(ctx, b));
        prop_assert_eq!(x.compose(&y).unwrap().kottwitz_invariant(), x.kottwitz_invariant() + y.kottwitz_invariant());
    }

    #[test]
    fn action_is_a_homomorphism(ctx in context(), a in any::<u64>(), b in any::<u64>(), v in prop::collection::vec(-5i64..5, 7)) {
        let (x, y) = (element(ctx, a), element(ctx, b));
        let p = &v[..ctx.ambient_dim()];
        prop_assert_eq!(x.compose(&y).unwrap().act(p), x.act(&y.act(p)));
    }

    #[test]
    fn embeddings_are_homomorphisms(m in 1usize..=3, a in any::<u64>(), b in any::<u64>()) {
        let gu = GroupContext::Gu(m);
        let (x, y) = (element(gu, a), element(gu, b));
        let xy = x.compose(&y).unwrap();
        let (ex, ey) = (x.embed_gu_to_gsp().unwrap(), y.embed_gu_to_gsp().unwrap());
        prop_assert_eq!(xy.embed_gu_to_gsp().unwrap(), ex.compose(&ey).unwrap());
        prop_assert_eq!(ex.lift_gsp_to_gu().unwrap(), Some(x.clone()));
        let (gx, gy) = (ex.embed_gsp_to_gl().unwrap(), ey.embed_gsp_to_gl().unwrap());
        prop_assert_eq!(ex.compose(&ey).unwrap().embed_gsp_to_gl().unwrap(), gx.compose(&gy).unwrap());
        prop_assert_eq!(gx.restrict_gl_to_gsp(m), Some(ex));
    }

    #[test]
    fn omega_decomposition(ctx in context(), a in any::<u64>()) {
        let x = element(ctx, a);
        let (wa, om) = omega_decompose(&x);
        prop_assert_eq!(length(&om), 0);
        prop_assert_eq!(length(&wa), length(&x));
        prop_assert_eq!(wa.compose(&om).unwrap(), x);
    }

    #[test]
    fn text_round_trip(ctx in context(), a in any::<u64>()) {
        let x = element(ctx, a);
        prop_assert_eq!(WeylElement::parse(ctx, &x.canonical_text()).unwrap(), x);
    }

    #[test]
    fn orbit_is_invariant(ctx in context(), a in any::<u64>(), v in prop::collection::vec(-3i64..3, 3)) {
        let n = ctx.ambient_dim();
        let mut lam: Vec<i64> = (0..n).map(|k| v[k % 3]).collect();
        if ctx.is_symmetric() {
            let m = ctx.rank();
            let c = if let Some(mid) = ctx.middle() { 2 * lam[mid - 1] } else { lam[0] + lam[n - 1] };
            for j in 0..m {
                lam[n - 1 - j] = c - lam[j];
            }
        }
        let x = element(ctx, a);
        let sigma = WeylElement::finite(ctx, x.perm().to_vec()).unwrap();
        let moved = sigma.act(&lam);
        prop_assert_eq!(weyl_orbit(ctx, &lam).unwrap(), weyl_orbit(ctx, &moved).unwrap());
        prop_assert_eq!(kottwitz_of_vector(ctx, &lam), kottwitz_of_vector(ctx, &moved));
    }

    #[test]
    fn hull_prefix_and_suffix_forms_agree(seed in any::<u64>(), m in 1usize..=3, x in prop::collection::vec(rat(), 6)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = random_dominant_gsp(m, &mut rng, 3).recast(GroupContext::Gl(2 * m)).unwrap();
        let x = &x[..2 * m];
        prop_assert_eq!(conv_hull_member_gl(&mu, x), conv_hull_member_gl_suffix(&mu, x));
    }

    #[test]
    fn gsp_hull_is_gl_hull_on_v(seed in any::<u64>(), m in 1usize..=3, half in prop::collection::vec(rat(), 3), c in rat(), off in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = random_dominant_gsp(m, &mut rng, 3);
        let mu_gl = mu.recast(GroupContext::Gl(2 * m)).unwrap();
        let mut x: Vec<Rational64> = half[..m].to_vec();
        x.extend(half[..m].iter().rev().map(|h| c - h));
        // every point of the plane lies on V when m = 1
        let off = off && m >= 2;
        if off {
            x[0] += Rational64::new(1, 3);
        }
        let in_v = GroupContext::Gsp(m).in_apartment(&x);
        prop_assert_eq!(in_v, !off);
        prop_assert_eq!(conv_hull_member_gsp(&mu, &x), in_v && conv_hull_member_gl(&mu_gl, &x));
    }

    #[test]
    fn orbit_points_lie_in_hull(seed in any::<u64>(), m in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = random_dominant_gsp(m, &mut rng, 3);
        for p in weyl_orbit(GroupContext::Gsp(m), mu.entries()).unwrap() {
            let x: Vec<Rational64> = p.iter().map(|&v| Rational64::from_integer(v)).collect();
            prop_assert!(conv_hull_member_gsp(&mu, &x));
        }
        let gu = random_dominant_gu(m, &mut rng, 3);
        prop_assert!(DominantCochar::new(GroupContext::Gu(m), gu.entries()).is_ok());
    }
}
