use codebound::{binomial, krawtchouk, macwilliams_dual, KrawtchoukContext, WeightDistribution};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn k2(ctx: &KrawtchoukContext, j: u32, i: u32) -> BigInt {
    krawtchouk(ctx, j, i).unwrap()
}

#[test]
fn orthogonality_all_n_up_to_20() {
    for n in 0..=20u32 {
        let ctx = KrawtchoukContext::binary(n);
        for r in 0..=n {
            for s in 0..=n {
                let sum: BigInt = (0..=n)
                    .map(|i| binomial(n.into(), i.into()) * k2(&ctx, r, i) * k2(&ctx, s, i))
                    .sum();
                let expect = if r == s {
                    (BigInt::one() << n) * binomial(n.into(), r.into())
                } else {
                    BigInt::zero()
                };
                assert_eq!(sum, expect, "n={n} r={r} s={s}");
            }
        }
    }
}

#[test]
fn reciprocity_all_n_up_to_20() {
    for n in 0..=20u32 {
        let ctx = KrawtchoukContext::binary(n);
        for i in 0..=n {
            for j in 0..=n {
                let lhs = binomial(n.into(), i.into()) * k2(&ctx, j, i);
                let rhs = binomial(n.into(), j.into()) * k2(&ctx, i, j);
                assert_eq!(lhs, rhs, "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn column_sums_vanish_off_zero() {
    // sum_j K_j(i) = 2^n [i = 0]
    for n in 1..=20u32 {
        let ctx = KrawtchoukContext::binary(n);
        for i in 0..=n {
            let s: BigInt = (0..=n).map(|j| k2(&ctx, j, i)).sum();
            let e = if i == 0 {
                BigInt::one() << n
            } else {
                BigInt::zero()
            };
            assert_eq!(s, e);
        }
    }
}

#[test]
fn nonbinary_orthogonality_small() {
    for q in [3u32, 4, 5] {
        for n in 0..=8u32 {
            let ctx = KrawtchoukContext::new(n, q).unwrap();
            for r in 0..=n {
                for s in 0..=n {
                    let sum: BigInt = (0..=n)
                        .map(|i| {
                            binomial(n.into(), i.into())
                                * BigInt::from(q - 1).pow(i)
                                * k2(&ctx, r, i)
                                * k2(&ctx, s, i)
                        })
                        .sum();
                    let expect = if r == s {
                        BigInt::from(q).pow(n)
                            * binomial(n.into(), r.into())
                            * BigInt::from(q - 1).pow(r)
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(sum, expect, "q={q} n={n} r={r} s={s}");
                }
            }
        }
    }
}

fn arbitrary_distribution() -> impl Strategy<Value = (u32, Vec<u64>)> {
    (0u32..=20).prop_flat_map(|n| (Just(n), prop::collection::vec(0u64..50, n as usize)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // Applying the inverse kernel to the transform recovers the input exactly.
    #[test]
    fn double_transform_is_identity((n, rest) in arbitrary_distribution(), k in 0u32..6) {
        let mut counts = vec![1u64];
        counts.extend(rest);
        let a = WeightDistribution::new(
            n,
            counts.iter().enumerate().map(|(w, &c)| (w as u32, BigUint::from(c))),
        ).unwrap();
        let size: u64 = counts.iter().sum();
        let b = macwilliams_dual(&a, k).unwrap();
        let b0 = b.get(0);
        prop_assert_eq!(&b0, &BigRational::new(size.into(), BigInt::one() << k));
        // exact inverse: A_i = (2^k / 2^n) sum_j K_i(j) B_j
        let ctx = KrawtchoukContext::binary(n);
        for i in 0..=n {
            let mut s = BigRational::zero();
            for (j, v) in b.iter() {
                s += BigRational::from_integer(k2(&ctx, i, j)) * v;
            }
            let back = s * BigRational::new(BigInt::one() << k, BigInt::one() << n);
            prop_assert_eq!(back, BigRational::from_integer(counts[i as usize].into()));
        }
    }

    // sum_j B_j = 2^(n-k) A_0
    #[test]
    fn dual_mass((n, rest) in arbitrary_distribution(), k in 0u32..6) {
        let mut counts = vec![1u64];
        counts.extend(rest);
        let a = WeightDistribution::new(
            n,
            counts.iter().enumerate().map(|(w, &c)| (w as u32, BigUint::from(c))),
        ).unwrap();
        let b = macwilliams_dual(&a, k).unwrap();
        let expect = BigRational::new(BigInt::one() << n, BigInt::one() << k);
        prop_assert_eq!(b.total(), expect);
    }
}

#[test]
fn involution_on_genuine_self_dual_pairs() {
    // repetition and even-weight codes, n <= 20
    for n in 1..=20u32 {
        let rep = WeightDistribution::new(n, [(0, BigUint::one()), (n, BigUint::one())]).unwrap();
        let even = macwilliams_dual(&rep, 1)
            .unwrap()
            .to_distribution()
            .unwrap();
        for w in 0..=n {
            let e = if w % 2 == 0 {
                BigUint::try_from(binomial(n.into(), w.into())).unwrap()
            } else {
                BigUint::zero()
            };
            assert_eq!(even.count(w), e);
        }
        let back = macwilliams_dual(&even, n - 1)
            .unwrap()
            .to_distribution()
            .unwrap();
        assert_eq!(back, rep);
    }
}
