use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use luroth::expansion::{cylinder, cylinder_length, digits, evaluate, luroth_map, DigitString};
use luroth::moran::{solve_s, solve_s_m, tail_bound, truncated_sum};
use luroth::rational::ratio;
use luroth::runlength::run_trajectory;

fn unit_rational() -> impl Strategy<Value = BigRational> {
    (2i64..=1_000_000).prop_flat_map(|q| (1..=q).prop_map(move |p| ratio(p, q)))
}

fn digit_word(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=12, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expansion_lands_in_its_cylinder(x in unit_rational(), n in 1usize..=30) {
        let w = digits(&x, n).unwrap();
        let c = cylinder(&w).unwrap();
        prop_assert!(c.contains(&x));
        prop_assert_eq!(c.left(), &evaluate(&w));
    }

    #[test]
    fn map_shifts_digits(x in unit_rational(), n in 1usize..=20) {
        let w = digits(&x, n + 1).unwrap();
        let shifted = digits(&luroth_map(&x).unwrap(), n).unwrap();
        prop_assert_eq!(&w[1..], shifted.as_slice());
    }

    #[test]
    fn children_nest_and_tile(w in digit_word(8), d in 2u64..=40) {
        let parent = DigitString::new(w.clone()).unwrap();
        let p = cylinder(&parent).unwrap();
        let mut child = w.clone();
        child.push(d);
        let c = cylinder(&DigitString::new(child).unwrap()).unwrap();
        prop_assert!(c.is_subset_of(&p));
        let len = p.length();
        let big = |k: u64| BigRational::from_integer(BigInt::from(k));
        prop_assert_eq!(c.left(), &(p.left() + &len / big(d)));
        prop_assert_eq!(c.right(), &(p.left() + &len / big(d - 1)));
    }

    #[test]
    fn first_children_cover_all_but_a_fraction(w in digit_word(6), t in 2u64..=60) {
        let parent = DigitString::new(w.clone()).unwrap();
        let total = cylinder_length(&parent).unwrap();
        let mut sum = BigRational::from_integer(0.into());
        for d in 2..=t {
            let mut child = w.clone();
            child.push(d);
            sum += cylinder_length(&DigitString::new(child).unwrap()).unwrap();
        }
        let expected = &total * (BigRational::one() - ratio(1, t as i64));
        prop_assert_eq!(sum, expected);
    }

    #[test]
    fn run_length_bounds(w in prop::collection::vec(2u64..=4, 1..=300)) {
        let traj = run_trajectory(&w).unwrap();
        let values = traj.values();
        prop_assert_eq!(values[0], 1);
        for (i, pair) in values.windows(2).enumerate() {
            let n = i + 2;
            prop_assert!(pair[1] == pair[0] || pair[1] == pair[0] + 1);
            prop_assert!(pair[1] <= n);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn s_decreases_in_u(a in 0.0f64..6.0, b in 0.0f64..6.0) {
        prop_assume!((a - b).abs() > 1e-3);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let s_lo = solve_s(lo, 1e-9).unwrap();
        let s_hi = solve_s(hi, 1e-9).unwrap();
        prop_assert!(s_hi.upper() < s_lo.lower());
    }

    #[test]
    fn truncated_root_stays_below(u in 0.0f64..4.0, m in 3u64..200) {
        let s = solve_s(u, 1e-10).unwrap();
        let sm = solve_s_m(u, m, 1e-10).unwrap();
        let sm1 = solve_s_m(u, m + 1, 1e-10).unwrap();
        prop_assert!(sm.lower() <= s.upper());
        prop_assert!(sm.lower() <= sm1.upper());
    }

    #[test]
    fn tail_bound_is_sound(u in 0.0f64..4.0, s in 0.55f64..1.0, n in 2u64..500) {
        let far = n * 40;
        let gap = truncated_sum(u, s, far) - truncated_sum(u, s, n);
        let bound = tail_bound(u, s, n).unwrap();
        prop_assert!(gap <= bound * (1.0 + 1e-12), "gap {gap} bound {bound}");
    }
}
