use fibprod_core::genfunc::{GfName, GfSpec};
use fibprod_core::identities::{check_family, IdentityFamily};
use fibprod_core::numerics::frac;
use fibprod_core::sequences::{fib, fib_fast, fib_matrix, lucas};
use fibprod_core::series::TruncSeries;
use fibprod_core::{FibTable, Rational, SequenceParams};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = SequenceParams> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5).prop_filter_map("a^2 + 4b = 0 or b = 0", |(an, ad, bn, bd)| {
        SequenceParams::new(frac(an, ad), frac(bn, bd)).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_families_hold(p in params(), n in 1i64..=20, m in 1i64..=20, j in 0i64..=20) {
        let t = FibTable::new(p);
        let j = j.min(m);
        for (family, args) in [
            (IdentityFamily::Addition, vec![n, m]),
            (IdentityFamily::TwoFold, vec![n, m]),
            (IdentityFamily::Doubling, vec![n]),
            (IdentityFamily::MultipleAngle, vec![m, n + 1, j]),
            (IdentityFamily::Shift, vec![n, m, j]),
            (IdentityFamily::Johnson, vec![n + m, j + 1, n + j + 1, m, j.min(m).min(n)]),
        ] {
            let r = check_family(&t, family, &args).unwrap();
            prop_assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn negative_indices_follow_the_recurrence(p in params(), n in -30i64..=30) {
        let lhs = fib(&p, n + 2);
        let rhs = p.a() * fib(&p, n + 1) + p.b() * fib(&p, n);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(lucas(&p, n), fib(&p, n + 1) + p.b() * fib(&p, n - 1));
    }

    #[test]
    fn fast_doubling_agrees_with_ladder(p in params(), n in 0u64..400) {
        prop_assert_eq!(fib_fast(&p, n), fib_matrix(&p, n));
    }

    #[test]
    fn series_log_inverts_exp_like_product(c in -5i64..=5, d in -5i64..=5) {
        // log(uv) = log u + log v for unit-constant series
        let u = TruncSeries::new(vec![Rational::from_integer(1.into()), frac(c, 3), frac(d, 7)]);
        let v = TruncSeries::new(vec![Rational::from_integer(1.into()), frac(d, 2), frac(c, 5)]);
        let lhs = u.mul(&v).log().unwrap();
        let rhs = u.log().unwrap().add(&v.log().unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn every_gf_matches_its_oracle_at_fibonacci() {
    let p = SequenceParams::from_ints(1, 1).unwrap();
    for name in GfName::ALL {
        let spec = GfSpec::new(name, p.clone(), 16);
        let spec = if name.is_multisection() { spec.with_stride(3, 2) } else { spec.with_shift(2) };
        assert_eq!(spec.build().unwrap(), spec.oracle().unwrap(), "{spec}");
    }
}
