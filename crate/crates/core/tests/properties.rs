use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use supercohom::algebra::{catalog, catalog_names, load_algebra, model_filiform, to_document};
use supercohom::ce::ce_complex;
use supercohom::complex::{Monomial, PowerRule};
use supercohom::dp::{dp_complex, Truncation};
use supercohom::exactla::{format_rational, parse_rational, ExactMatrix, Field, PrimeField, Rationals};

fn names() -> Vec<&'static str> {
    catalog_names().collect()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_round_trips(num in -1000i64..1000, den in 1i64..1000) {
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        prop_assert_eq!(parse_rational(&format_rational(&q)), Some(q));
    }

    #[test]
    fn rank_nullity_over_both_fields(rows in small_matrix()) {
        let q = Rationals;
        let dense: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        let m = ExactMatrix::from_dense(q, &dense);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.apply(v).is_empty());
        }

        let f = PrimeField::new(7).unwrap();
        let dense: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(7) as u64).collect()).collect();
        let m = ExactMatrix::from_dense(f, &dense);
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    /// Random cochains of a catalog algebra are killed by d twice.
    #[test]
    fn d_squared_on_random_cochains(which in 0usize..8, k in 0usize..5, coeffs in prop::collection::vec(-5i64..6, 1..12)) {
        let name = names()[which];
        let c = ce_complex(&catalog(name).unwrap());
        let basis = c.basis(k);
        let terms = basis
            .monomials()
            .iter()
            .zip(coeffs.iter().cycle())
            .map(|(m, &x)| (m.clone(), BigRational::from_integer(x.into())))
            .collect();
        let chain = c.cochain(terms);
        prop_assert!(c.d(&c.d(&chain)).is_zero());
    }

    /// Leibniz rule d(ab) = d(a) b + (-1)^|a| a d(b) on monomials.
    #[test]
    fn leibniz_rule(which in 0usize..8, i in 0usize..40, j in 0usize..40, ka in 1usize..3, kb in 1usize..3) {
        let c = ce_complex(&catalog(names()[which]).unwrap());
        let ba = c.basis(ka);
        let bb = c.basis(kb);
        let a = ba.monomials()[i % ba.len()].clone();
        let b = bb.monomials()[j % bb.len()].clone();
        let one = Rationals.one();
        let ca = c.cochain(vec![(a, one.clone())]);
        let cb = c.cochain(vec![(b, one)]);
        let lhs = c.d(&c.multiply(&ca, &cb));
        let left = c.multiply(&c.d(&ca), &cb);
        let mut right = c.multiply(&ca, &c.d(&cb));
        if ka % 2 == 1 {
            right.terms = right.terms.into_iter().map(|(m, x)| (m, -x)).collect();
        }
        let rhs: Vec<(Monomial, BigRational)> = left.terms.into_iter().chain(right.terms).collect();
        let rhs = c.cochain(rhs);
        prop_assert_eq!(lhs.terms, rhs.terms);
    }

    /// Monomial product is associative and graded-supercommutative in both rules.
    #[test]
    fn monomial_product_axioms(
        ea in 0u64..8, eb in 0u64..8, ec in 0u64..8,
        oa in prop::collection::vec(0u32..3, 2), ob in prop::collection::vec(0u32..3, 2), oc in prop::collection::vec(0u32..3, 2),
    ) {
        let mk = |mask: u64, odd: &Vec<u32>| {
            let even: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
            Monomial::from_parts(&even, odd.clone())
        };
        let (a, b, c) = (mk(ea, &oa), mk(eb, &ob), mk(ec, &oc));
        let f = PrimeField::new(5).unwrap();
        for rule in [PowerRule::Plain, PowerRule::Divided { bounds: vec![5, 5] }] {
            let ab_c = a.times(&b, &f, &rule).and_then(|(ab, x)| ab.times(&c, &f, &rule).map(|(m, y)| (m, f.mul(&x, &y))));
            let a_bc = b.times(&c, &f, &rule).and_then(|(bc, x)| a.times(&bc, &f, &rule).map(|(m, y)| (m, f.mul(&x, &y))));
            let nz = |v: Option<(Monomial, u64)>| v.filter(|(_, x)| *x != 0);
            prop_assert_eq!(nz(ab_c), nz(a_bc));

            let ab = nz(a.times(&b, &f, &rule));
            let ba = nz(b.times(&a, &f, &rule));
            let exp = a.degree() * b.degree() + (a.parity() * b.parity()) as usize;
            let ba = ba.map(|(m, x)| (m, if exp % 2 == 1 { f.neg(&x) } else { x }));
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn documents_round_trip(n in 1usize..5, m in 1usize..5) {
        let spec = model_filiform(n, m).unwrap();
        let back = load_algebra(&spec.to_json()).unwrap();
        prop_assert_eq!(to_document(&back), to_document(&spec));
    }

    /// Random combinations of representatives have the combination as class coordinates.
    #[test]
    fn class_coordinates_recover_combinations(which in 0usize..8, k in 1usize..4, coeffs in prop::collection::vec(-4i64..5, 8)) {
        let c = ce_complex(&catalog(names()[which]).unwrap());
        let h = c.cohomology(k).unwrap();
        let coords: Vec<BigRational> = (0..h.dim()).map(|i| BigRational::from_integer(coeffs[i % 8].into())).collect();
        let chain = c.class_cochain(k, &coords).unwrap();
        prop_assert_eq!(c.class_of(&chain).unwrap(), coords);
    }
}

#[test]
fn euler_characteristic_in_char_p() {
    for name in names() {
        let spec = catalog(name).unwrap();
        let trunc = Truncation::ones(5, spec.odd_names().len()).unwrap();
        let c = dp_complex(&spec, &trunc).unwrap();
        let top = c.top_degree().unwrap();
        let chain: i64 = (0..=top).map(|k| if k % 2 == 0 { 1 } else { -1 } * c.basis(k).len() as i64).sum();
        let dims = c.betti_numbers(top).unwrap();
        let homology: i64 = dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { 1 } else { -1 } * d as i64).sum();
        assert_eq!(chain, homology, "{name}");
    }
}
