use ffstat::arith::{discriminant, is_squarefree, mobius};
use ffstat::factor::{factor, is_irreducible};
use ffstat::sieve::alpha_table;
use ffstat::{ArithFn, Budget, Field, FieldRef, MobiusTable, Poly};
use proptest::prelude::*;

const FIELDS: [u32; 5] = [3, 5, 7, 9, 25];

fn field_and_polys(count: usize, max_len: usize) -> impl Strategy<Value = (FieldRef, Vec<Poly>)> {
    prop::sample::select(FIELDS.to_vec()).prop_flat_map(move |q| {
        let poly = prop::collection::vec(0..q, 0..=max_len);
        prop::collection::vec(poly, count).prop_map(move |cs| {
            let f = Field::new(q).unwrap();
            let ps = cs.iter().map(|c| Poly::from_codes(&f, c).unwrap()).collect();
            (f, ps)
        })
    })
}

fn monic(f: &FieldRef, mut codes: Vec<u32>) -> Poly {
    codes.push(1);
    Poly::from_codes(f, &codes).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws((_, ps) in field_and_polys(3, 6)) {
        let (a, b, c) = (&ps[0], &ps[1], &ps[2]);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert!((a - a).is_zero());
        prop_assert_eq!(&(a + b) - b, a.clone());
    }

    #[test]
    fn division_with_remainder((_, ps) in field_and_polys(2, 7)) {
        let (a, b) = (&ps[0], &ps[1]);
        prop_assume!(!b.is_zero());
        let (quot, r) = a.divmod(b).unwrap();
        prop_assert_eq!(&(&quot * b) + &r, a.clone());
        prop_assert!(r.is_zero() || r.deg() < b.deg());
        let g = a.gcd(b).unwrap();
        prop_assert!(g.divides(a).unwrap() && g.divides(b).unwrap());
    }

    #[test]
    fn factorization_round_trip((f, ps) in field_and_polys(1, 7)) {
        let a = &ps[0];
        prop_assume!(!a.is_zero());
        let fac = factor(a).unwrap();
        prop_assert_eq!(fac.expand(&f), a.clone());
        for (p, e) in &fac.factors {
            prop_assert!(p.is_monic() && *e >= 1);
            prop_assert!(is_irreducible(p).unwrap());
        }
    }

    #[test]
    fn pellet_formula(q in prop::sample::select(vec![3u32, 5, 7, 9]), codes in prop::collection::vec(0u32..9, 1..7)) {
        let f = Field::new(q).unwrap();
        let g = monic(&f, codes.iter().map(|c| c % q).collect());
        prop_assume!(is_squarefree(&g).unwrap());
        let sign = if g.deg() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(mobius(&g).unwrap() as i32, sign * f.chi2(discriminant(&g).unwrap()) as i32);
    }
}

#[test]
fn sieve_matches_factoring() {
    for q in FIELDS {
        let f = Field::new(q).unwrap();
        for n in 0..=if q > 9 { 3 } else { 4 } {
            let table = MobiusTable::build(&f, n, &Budget::default()).unwrap();
            for (i, &v) in table.values().iter().enumerate() {
                let g = Poly::from_monic_index(&f, n, i as u64);
                assert_eq!(v, mobius(&g).unwrap(), "q = {q}, {g}");
            }
            let sq = alpha_table(&f, n, &ArithFn::Mu2, &Budget::default()).unwrap();
            let count: i64 = sq.iter().sum();
            let expected = if n <= 1 { (q as i64).pow(n as u32) } else { (q as i64).pow(n as u32) - (q as i64).pow(n as u32 - 1) };
            assert_eq!(count, expected, "squarefree count, q = {q}, n = {n}");
        }
    }
}

#[test]
fn trinomial_discriminant() {
    // disc(t^3 + a t + b) = -4a^3 - 27b^2
    let f = Field::new(7).unwrap();
    for a in 0..7u32 {
        for b in 0..7u32 {
            let g = Poly::from_codes(&f, &[b, a, 0, 1]).unwrap();
            let want = (-4 * (a as i64).pow(3) - 27 * (b as i64).pow(2)).rem_euclid(7) as u32;
            assert_eq!(discriminant(&g).unwrap().code(), want, "a = {a}, b = {b}");
        }
    }
}
