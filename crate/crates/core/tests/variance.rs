use ffstat::arith::mobius;
use ffstat::dirichlet::UnitGroup;
use ffstat::field::{Fe, Field};
use ffstat::intervals::{all_intervals, ShortInterval};
use ffstat::poly::{monic_polys, Poly};
use ffstat::sieve::alpha_table;
use ffstat::stats::*;
use ffstat::{ArithFn, Budget};

fn spectral(q: u32, n: usize, h: usize, a: &ArithFn, b: &ArithFn) -> f64 {
    let f = Field::new(q).unwrap();
    let g = UnitGroup::new(&Poly::monomial(&f, Fe::ONE, n - h), &Budget::default()).unwrap();
    let t = g.l_coefficients().unwrap();
    covariance_interval_spectral(&g, &t, a, b, n, &Budget::default()).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn mobius_interval_variance_identity() {
    let f = Field::new(5).unwrap();
    let vals = alpha_table(&f, 5, &ArithFn::Mu, &Budget::default()).unwrap();
    for h in 0..=3 {
        let bf = to_f64(&variance_interval_bruteforce(&vals, 5, h).unwrap().variance);
        let sp = spectral(5, 5, h, &ArithFn::Mu, &ArithFn::Mu);
        assert!(close(sp, bf, 1e-8), "h={h}: {sp} vs {bf}");
    }
}

#[test]
fn squarefree_interval_variance_identity() {
    let f = Field::new(3).unwrap();
    let vals = alpha_table(&f, 6, &ArithFn::Mu2, &Budget::default()).unwrap();
    for h in 0..=4 {
        let bf = to_f64(&variance_interval_bruteforce(&vals, 3, h).unwrap().variance);
        let sp = spectral(3, 6, h, &ArithFn::Mu2, &ArithFn::Mu2);
        assert!(close(sp, bf, 1e-8), "h={h}: {sp} vs {bf}");
    }
}

#[test]
fn covariance_of_mu_and_mu2() {
    let f = Field::new(3).unwrap();
    let (n, h) = (5, 1);
    let a = alpha_table(&f, n, &ArithFn::Mu, &Budget::default()).unwrap();
    let b = alpha_table(&f, n, &ArithFn::Mu2, &Budget::default()).unwrap();
    let bf = exact_covariance(&block_sums(&a, 3, h), &block_sums(&b, 3, h)).unwrap();
    let sp = spectral(3, n, h, &ArithFn::Mu, &ArithFn::Mu2);
    assert!(close(sp, to_f64(&bf), 1e-8));
}

#[test]
fn double_loop_variance_matches() {
    // direct evaluation over every interval, without the sieve
    let f = Field::new(3).unwrap();
    let (n, h) = (3, 0);
    let sums: Vec<i64> = all_intervals(&f, n, h)
        .unwrap()
        .map(|idx| interval_sum(&ArithFn::Mu2, &idx.interval()).unwrap())
        .collect();
    let k = sums.len() as f64;
    let mean = sums.iter().sum::<i64>() as f64 / k;
    let direct: f64 = sums.iter().map(|&s| (s as f64 - mean).powi(2)).sum::<f64>() / k;
    let vals = alpha_table(&f, n, &ArithFn::Mu2, &Budget::default()).unwrap();
    let bf = variance_interval_bruteforce(&vals, 3, h).unwrap();
    assert!(bf.variance > Rational::from_integer(0));
    assert!((to_f64(&bf.variance) - direct).abs() < 1e-12);
    assert!(close(spectral(3, n, h, &ArithFn::Mu2, &ArithFn::Mu2), direct, 1e-8));
}

#[test]
fn interval_sum_examples() {
    let f = Field::new(3).unwrap();
    let t3 = Poly::monomial(&f, Fe::ONE, 3);
    assert_eq!(interval_sum(&ArithFn::Mu2, &ShortInterval::new(t3, 0).unwrap()).unwrap(), 0);
    let t6 = Poly::monomial(&f, Fe::ONE, 6);
    assert_eq!(interval_sum(&ArithFn::Mu, &ShortInterval::new(t6, 1).unwrap()).unwrap().abs(), 6);
}

#[test]
fn means() {
    let f = Field::new(3).unwrap();
    let b = Budget::default();
    assert_eq!(mean_interval(&ArithFn::Mu, &f, 4, 1, &b).unwrap(), Rational::from_integer(0));
    assert_eq!(mean_interval(&ArithFn::Mu2, &f, 4, 1, &b).unwrap(), Rational::from_integer(6));
    assert_eq!(mean_interval(&ArithFn::One, &f, 4, 2, &b).unwrap(), Rational::from_integer(27));
}

#[test]
fn custom_function_uses_direct_sums() {
    fn signed_sqfree(f: &Poly) -> i64 {
        mobius(f).unwrap().abs() as i64 * if f.deg() % 2 == 0 { 1 } else { -1 }
    }
    let alpha = ArithFn::Custom { name: "sgn-mu2".into(), eval: signed_sqfree };
    let f = Field::new(3).unwrap();
    let (n, h) = (5, 1);
    let vals = alpha_table(&f, n, &alpha, &Budget::default()).unwrap();
    let bf = to_f64(&variance_interval_bruteforce(&vals, 3, h).unwrap().variance);
    assert!(close(spectral(3, n, h, &alpha, &alpha), bf, 1e-8));
}

#[test]
fn progression_identity() {
    let f = Field::new(5).unwrap();
    let q = Poly::from_codes(&f, &[0, 1, 1]).unwrap();
    for alpha in [ArithFn::Mu, ArithFn::Mu2, ArithFn::One] {
        let r = progression_report(&alpha, 4, &q, &Budget::default(), false, 0).unwrap();
        assert!(r.rel_dev_bf_spec.unwrap() < 1e-8, "{r:?}");
    }
    let r = progression_report(&ArithFn::Mu, 4, &q, &Budget::default(), false, 0).unwrap();
    assert_eq!(r.prediction.unwrap().theorem, Theorem::MobiusProgression);
}

#[test]
fn progression_sums_partition_the_squarefree_count() {
    let f = Field::new(3).unwrap();
    let modulus = Poly::from_codes(&f, &[1, 0, 1]).unwrap();
    let n = 4;
    let total: i64 = (0..9)
        .map(|c| progression_sum(&ArithFn::Mu2, n, &modulus, &Poly::from_residue_code(&f, c)).unwrap())
        .sum();
    assert_eq!(total, 81 - 27);
    let direct = monic_polys(&f, n).filter(|g| mobius(g).unwrap() != 0).count() as i64;
    assert_eq!(total, direct);
}

#[test]
fn small_degree_progression_has_at_most_one_term() {
    let f = Field::new(3).unwrap();
    let modulus = Poly::from_codes(&f, &[1, 2, 0, 1]).unwrap();
    for c in 0..27 {
        let a = Poly::from_residue_code(&f, c);
        let s = progression_sum(&ArithFn::Mu, 2, &modulus, &a).unwrap();
        assert!(s.abs() <= 1);
    }
}
