use proptest::prelude::*;

use cycbound_core::bounds::{compute_of, replay, BoundKind};
use cycbound_core::cyclic::{enumerate_codes, r_vector};
use cycbound_core::gf::{build_field_context, gcd};
use cycbound_core::oracle::true_distance;
use cycbound_core::usemiring::UVec;

fn values(r: &UVec) -> Vec<usize> {
    BoundKind::ALL.iter().map(|&k| compute_of(k, r).value).collect()
}

fn r_vectors() -> impl Strategy<Value = UVec> {
    prop::collection::vec(prop::bool::weighted(0.45), 3..48)
        .prop_map(|zeros| zeros.iter().map(|&z| if z { '0' } else { 'D' }).collect::<String>().parse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn witnesses_replay(r in r_vectors()) {
        for kind in BoundKind::ALL {
            let out = compute_of(kind, &r);
            prop_assert!((1..=r.len() + 1).contains(&out.value));
            prop_assert!(replay(&r, &out).unwrap(), "{kind:?} {r}");
        }
    }

    #[test]
    fn dominance(r in r_vectors()) {
        let [bch, ht, bs, rs, bc] = values(&r)[..] else { unreachable!() };
        prop_assert!(ht >= bch && bs >= bch && rs >= bch);
        prop_assert!(bc >= ht && bc >= bs);
    }

    #[test]
    fn reflection_invariance(r in r_vectors()) {
        prop_assert_eq!(values(&r), values(&r.reflect()));
    }

    #[test]
    fn rotation_invariance(r in r_vectors(), k in 0i64..48) {
        prop_assert_eq!(values(&r), values(&r.rotate_right(k)));
    }
}

#[test]
fn soundness_small_lengths() {
    for q in [2u32, 3] {
        for n in (3..=17).filter(|&n| gcd(n as u64, q as u64) == 1) {
            let ctx = build_field_context(q, n).unwrap();
            for s in enumerate_codes(n, q).unwrap() {
                let Ok(res) = true_distance(&s, &ctx, 1 << 20) else { continue };
                let d = res.d;
                let r = r_vector(&s);
                for (kind, v) in BoundKind::ALL.iter().zip(values(&r)) {
                    assert!(v <= d, "{s}: {kind:?} = {v} > {d}");
                }
            }
        }
    }
}

/// Bounds depend on the choice of α, the distance does not: every
/// relabelled defining set still gives bounds below the same distance.
#[test]
fn relabelled_codes_stay_sound() {
    for (q, n) in [(2u32, 21usize), (3, 13), (5, 12)] {
        let ctx = build_field_context(q, n).unwrap();
        for s in enumerate_codes(n, q).unwrap().into_iter().filter(|s| s.k() <= 10) {
            let d = true_distance(&s, &ctx, 1 << 22).unwrap().d;
            for u in (2..n).filter(|&u| gcd(u as u64, n as u64) == 1) {
                let t = s.scaled(u).unwrap();
                assert_eq!(true_distance(&t, &ctx, 1 << 22).unwrap().d, d);
                assert!(values(&r_vector(&t)).iter().all(|&v| v <= d), "{t}");
            }
        }
    }
}
