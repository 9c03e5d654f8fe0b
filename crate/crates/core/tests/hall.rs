use ffstat::field::{Fe, Field};
use ffstat::hall::*;
use ffstat::poly::{polys_up_to, Poly};
use ffstat::sieve::alpha_table;
use ffstat::stats::variance_interval_bruteforce;
use ffstat::{ArithFn, Budget, MobiusTable};
use num_rational::BigRational;
use num_traits::ToPrimitive;

#[test]
fn beta_three_is_certified() {
    let b = beta_q(3, 8).unwrap();
    assert!(b.tail_bound < 1e-6, "{}", b.tail_bound);
    let v = b.to_f64();
    assert!(0.0 < v && v < 1.0);
}

#[test]
fn accelerated_product_brackets_the_plain_truncation() {
    for (q, d, f) in [(3u32, 10, vec![1i64, 0, -2]), (3, 10, vec![1, 0, -3, 2]), (5, 6, vec![1, 0, -3, 2])] {
        let acc = euler_product(q, &f, 6).unwrap();
        let plain = euler_truncated(q, &f, d).unwrap().to_f64().unwrap();
        // plain truncation at degree d is within about sum_{e>d} pi_e * 5 q^{-2e} of the limit
        let plain_tail = 5.0 * (q as f64).powi(-(d as i32 + 1)) / (d as f64 + 1.0) * 2.0;
        let a = acc.to_f64();
        assert!((a - plain).abs() <= a * acc.tail_bound + plain_tail, "q={q} {a} {plain}");
    }
}

#[test]
fn alpha_sf_agrees_with_itself_across_cutoffs() {
    let a = alpha_sf(3, 6).unwrap();
    let b = alpha_sf(3, 8).unwrap();
    let (x, y) = (a.to_f64(), b.to_f64());
    assert!((x - y).abs() <= x * (a.tail_bound + b.tail_bound) + 1e-15);
}

#[test]
fn singular_series_of_t_squared() {
    let f = Field::new(3).unwrap();
    let t2 = Poly::monomial(&f, Fe::ONE, 2);
    let s = singular_series(&t2, 6).unwrap();
    assert_eq!(s.s_j, BigRational::new(8.into(), 7.into()));
    let one = singular_series(&Poly::one(&f), 6).unwrap();
    assert_eq!(one.s_j, BigRational::new(1.into(), 1.into()));
    assert_eq!(one.value(), one.alpha_sf.value);
}

#[test]
fn double_sum_matches_truncated_product() {
    let f = Field::new(3).unwrap();
    for codes in [vec![1u32], vec![0, 0, 1], vec![1, 2, 1], vec![0, 0, 1, 1], vec![0, 1]] {
        let j = Poly::from_codes(&f, &codes).unwrap();
        let a = singular_series_double_sum(&j, 2).unwrap();
        let b = singular_series_truncated(&j, 2).unwrap();
        assert_eq!(a, b, "J={j}");
    }
}

#[test]
fn singular_series_is_homogeneous() {
    let f = Field::new(3).unwrap();
    for j in polys_up_to(&f, 4).filter(|j| !j.is_zero()) {
        let s = s_factor(&j).unwrap();
        for c in 1..3 {
            assert_eq!(s_factor(&j.scale(Fe(c))).unwrap(), s);
        }
    }
}

#[test]
fn sum_singular_two_ways() {
    for q in [3u32, 5] {
        let f = Field::new(q).unwrap();
        for h in 0..=6 {
            assert_eq!(sum_singular_enumerate(&f, h).unwrap(), sum_singular_series(&f, h).unwrap(), "q={q} h={h}");
        }
    }
}

#[test]
fn pair_correlation_basics() {
    let f = Field::new(3).unwrap();
    let n = 6;
    let table = MobiusTable::build(&f, n, &Budget::default()).unwrap();
    let sqfree = 2 * 3u64.pow(5);
    for j in polys_up_to(&f, 3).filter(|j| !j.is_zero()) {
        let s = pair_correlation(&table, &j).unwrap();
        assert!(s <= sqfree);
        assert_eq!(s, pair_correlation(&table, &-&j).unwrap());
    }
    assert!(pair_correlation(&table, &Poly::zero(&f)).is_err());
    assert!(pair_correlation(&table, &Poly::monomial(&f, Fe::ONE, 6)).is_err());
}

#[test]
fn hall_variance_matches_block_variance() {
    let f = Field::new(3).unwrap();
    for n in 2..=7 {
        let table = MobiusTable::build(&f, n, &Budget::default()).unwrap();
        let vals = alpha_table(&f, n, &ArithFn::Mu2, &Budget::default()).unwrap();
        for h in 0..=n - 2 {
            let (_, v) = hall_variance_bruteforce(&table, h).unwrap();
            assert_eq!(v, variance_interval_bruteforce(&vals, 3, h).unwrap().variance, "n={n} h={h}");
        }
    }
}

#[test]
fn prediction_parity_ratio() {
    for q in [3u32, 5, 7] {
        let b = beta_q(q, 6).unwrap();
        let qf = q as f64;
        let ratio = hall_prediction(q, 2, &b) / hall_prediction(q, 3, &b);
        let closed = (1.0 + qf.powi(-2)) * qf / ((1.0 + 1.0 / qf) * qf.sqrt() * qf.sqrt());
        assert!((ratio - closed).abs() < 1e-12);
    }
}

#[test]
fn hall_smoke() {
    let f = Field::new(3).unwrap();
    let r = hall_report(&f, 10, 1, 6, &Budget::default()).unwrap();
    assert!(r.var_bf.to_f64() > 0.0);
    assert!(r.prediction > 0.0);
}
