//! The characteristic-zero cochain complex with plain odd powers.

use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::AlgebraSpec;
use crate::complex::{monomials_of_degree, Complex, Monomial, PowerRule};
use crate::exactla::Rationals;

pub type CeComplex = Complex<Rationals>;

pub fn ce_complex(spec: &AlgebraSpec) -> CeComplex {
    Complex::new(Rationals, Arc::new(spec.clone()), PowerRule::Plain).expect("rational coefficients always convert")
}

/// Degree-`k` monomials in canonical order.
pub fn basis_of_degree(spec: &AlgebraSpec, k: usize) -> Vec<Monomial> {
    monomials_of_degree(spec.even_dim(), spec.odd_dim(), k, &PowerRule::Plain)
}

/// `a ∧ b` as a signed monomial, or `None` when it vanishes.
pub fn wedge(a: &Monomial, b: &Monomial) -> Option<(Monomial, BigRational)> {
    a.times(b, &Rationals, &PowerRule::Plain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, catalog_names, model_filiform};
    use crate::complex::{count_of_degree, Cochain};
    use crate::exactla::Field;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn mono(spec: &AlgebraSpec, s: &str) -> Monomial {
        Monomial::parse(spec, s).unwrap()
    }

    fn cochain(c: &CeComplex, terms: &[(&str, i64, i64)]) -> Cochain<BigRational> {
        c.cochain(terms.iter().map(|(m, n, d)| (mono(c.spec(), m), q(*n, *d))).collect())
    }

    #[test]
    fn enumeration_matches_closed_form() {
        let spec = model_filiform(1, 2).unwrap();
        assert_eq!(basis_of_degree(&spec, 0), vec![Monomial::one(2)]);
        assert_eq!(basis_of_degree(&spec, 1).len(), 4);
        assert_eq!(basis_of_degree(&spec, 2).len(), 8);
        for name in catalog_names() {
            let spec = catalog(name).unwrap();
            for k in 0..=9 {
                assert_eq!(
                    basis_of_degree(&spec, k).len() as u128,
                    count_of_degree(spec.even_dim(), spec.odd_dim(), k, &PowerRule::Plain)
                );
            }
        }
    }

    #[test]
    fn wedge_examples() {
        let spec = model_filiform(1, 2).unwrap();
        assert!(wedge(&mono(&spec, "X0"), &mono(&spec, "X0")).is_none());
        assert_eq!(
            wedge(&mono(&spec, "X1"), &mono(&spec, "X0")),
            Some((mono(&spec, "X0 X1"), q(-1, 1)))
        );
        // the generator swap rule gives a minus sign here
        assert_eq!(
            wedge(&mono(&spec, "Y1"), &mono(&spec, "X0 Y1")),
            Some((mono(&spec, "X0 Y1^2"), q(-1, 1)))
        );
    }

    #[test]
    fn generator_differentials() {
        let l12 = ce_complex(&model_filiform(1, 2).unwrap());
        let y2 = l12.spec().index_of("Y2").unwrap();
        assert_eq!(l12.d_generator(y2), cochain(&l12, &[("X0 Y1", 1, 1)]));
        assert!(l12.generator_is_closed(0));

        let f2 = ce_complex(&catalog("F12_2").unwrap());
        assert_eq!(f2.d_generator(y2), cochain(&f2, &[("X0 Y1", 1, 1), ("X1 Y1", 1, 1)]));

        let f3 = ce_complex(&catalog("F12_3").unwrap());
        assert_eq!(f3.d_generator(1), cochain(&f3, &[("Y1^2", -1, 2)]));

        for name in catalog_names() {
            assert!(ce_complex(&catalog(name).unwrap()).generator_is_closed(0), "{name}");
        }
    }

    #[test]
    fn differential_matrix_shapes() {
        let l12 = ce_complex(&model_filiform(1, 2).unwrap());
        let d1 = l12.differential(1);
        let nonzero: Vec<usize> = (0..d1.cols()).filter(|&j| !d1.column(j).is_empty()).collect();
        let y2 = l12.basis(1).position(&mono(l12.spec(), "Y2")).unwrap();
        assert_eq!(nonzero, vec![y2]);

        let abelian = ce_complex(&AlgebraSpec::new(&["X0", "X1"], &["Y1"], &[]).unwrap());
        for k in 0..6 {
            assert!(abelian.differential(k).is_zero());
        }
    }

    #[test]
    fn d_squared_vanishes() {
        let mut specs: Vec<AlgebraSpec> = catalog_names().map(|n| catalog(n).unwrap()).collect();
        for (n, m) in [(1, 1), (2, 1), (1, 3), (3, 2), (2, 3)] {
            specs.push(model_filiform(n, m).unwrap());
        }
        for spec in specs {
            let c = ce_complex(&spec);
            for k in 0..7 {
                assert!(c.differential(k + 1).mul(&c.differential(k)).is_zero(), "k={k}");
            }
        }
    }

    #[test]
    fn broken_jacobi_breaks_d_squared() {
        let broken = catalog("F12_3").unwrap().with_bracket("Y1", "Y1", &[("X0", q(1, 1))]).unwrap();
        let c = ce_complex(&broken);
        assert!((0..4).any(|k| !c.differential(k + 1).mul(&c.differential(k)).is_zero()));
    }

    #[test]
    fn betti_sequences() {
        let cases: &[(&str, &[usize])] = &[
            ("F12_1", &[1, 3, 4, 4, 4, 4]),
            ("F12_2", &[1, 3, 4, 4, 4, 4]),
            ("F12_3", &[1, 2, 2, 2, 2, 2]),
            ("F22_2", &[1, 2, 3, 4, 4, 4]),
            ("F22_3", &[1, 3, 4, 4, 4, 4]),
            ("F22_4", &[1, 3, 6, 8, 8, 8]),
            ("F22_5", &[1, 3, 4, 4, 4, 4]),
            ("L2,2", &[1, 3, 6, 8, 8, 8]),
        ];
        for (name, expected) in cases {
            let c = ce_complex(&catalog(name).unwrap());
            assert_eq!(c.betti_numbers(expected.len() - 1).unwrap(), *expected, "{name}");
        }
    }

    #[test]
    fn representatives_are_canonical_cocycles() {
        let c = ce_complex(&catalog("F22_4").unwrap());
        for k in 0..5 {
            let h = c.cohomology(k).unwrap();
            assert_eq!(h.dim(), h.kernel_dim() - h.image_rank());
            for (i, r) in h.representatives.iter().enumerate() {
                assert!(c.differential(k).apply(r).is_empty());
                let coords = h.class_coords(c.field(), r).unwrap();
                for (j, x) in coords.iter().enumerate() {
                    assert_eq!(x.is_one(), i == j);
                    assert!(x.is_one() || x.is_zero());
                }
            }
        }
    }

    #[test]
    fn model_products() {
        let c = ce_complex(&model_filiform(1, 2).unwrap());
        let class = |s: &str| c.class_of(&cochain(&c, &[(s, 1, 1)])).unwrap();
        let times = |a: &str, b: &str| {
            let (ca, cb) = (cochain(&c, &[(a, 1, 1)]), cochain(&c, &[(b, 1, 1)]));
            c.cup_product(ca.degree, &class(a), cb.degree, &class(b)).unwrap()
        };
        for i in 1..4 {
            for j in 1..4 {
                let (a, b, ab) = (format!("Y1^{i}"), format!("Y1^{j}"), format!("Y1^{}", i + j));
                assert_eq!(times(&a, &b), class(&ab));
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                let prod = times(&format!("X0 Y2^{i}"), &format!("X0 X1 Y2^{j}"));
                assert!(prod.iter().all(|x| x.is_zero()));
            }
        }
        // signed relation between the two ideal-type families
        for i in 0..4 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let lhs = times(&format!("X0 Y2^{i}"), "X1");
            let rhs = c.class_of(&cochain(&c, &[(&format!("X0 X1 Y2^{i}"), sign, 1)])).unwrap();
            assert_eq!(lhs, rhs, "i={i}");
        }
        // unit
        let unit = vec![BigRational::one()];
        for k in 0..4 {
            let h = c.cohomology(k).unwrap();
            for i in 0..h.dim() {
                let mut e = vec![BigRational::zero(); h.dim()];
                e[i] = BigRational::one();
                assert_eq!(c.cup_product(0, &unit, k, &e).unwrap(), e);
                assert_eq!(c.cup_product(k, &e, 0, &unit).unwrap(), e);
            }
        }
    }

    #[test]
    fn odd_chain_model_products() {
        let c = ce_complex(&model_filiform(2, 1).unwrap());
        let table = c.product_table(4).unwrap();
        for i in 0..3 {
            for j in 1..=(3 - i) {
                let a = c.class_of(&cochain(&c, &[(&format!("X1 Y1^{i}"), 1, 1)])).unwrap();
                let b = c.class_of(&cochain(&c, &[(&format!("Y1^{j}"), 1, 1)])).unwrap();
                let ab = c.class_of(&cochain(&c, &[(&format!("X1 Y1^{}", i + j), 1, 1)])).unwrap();
                assert_eq!(c.cup_product(1 + i, &a, j, &b).unwrap(), ab);
            }
        }
        assert!(c.supercommutativity_failures(&table).is_empty());
    }

    #[test]
    fn square_of_odd_class_is_twice_even_class() {
        let c = ce_complex(&catalog("F22_3").unwrap());
        let table = c.product_table(4).unwrap();
        let x0x1 = cochain(&c, &[("X0 X1", 1, 1)]);
        assert!(c.d(&x0x1).is_zero());
        let h2 = c.cohomology(2).unwrap();
        assert!(!h2.is_coboundary(c.field(), &c.vector_from_cochain(&x0x1)));
        let y1 = c.class_of(&cochain(&c, &[("Y1", 1, 1)])).unwrap();
        let sq = c.cup_product(1, &y1, 1, &y1).unwrap();
        let target = c.class_of(&x0x1).unwrap();
        let twice: Vec<BigRational> = target.iter().map(|x| x * q(2, 1)).collect();
        assert_eq!(sq, twice);
        // the same scalar is visible among canonical basis entries
        let two = Rationals.from_i64(2);
        assert!(table
            .entries
            .iter()
            .any(|e| e.left.degree == 1 && e.right.degree == 1 && e.result.len() == 1 && e.result[0].1 == two));
    }

    #[test]
    fn tables_are_supercommutative_and_associative() {
        for name in catalog_names() {
            let c = ce_complex(&catalog(name).unwrap());
            let table = c.product_table(6).unwrap();
            assert!(c.supercommutativity_failures(&table).is_empty(), "{name}");
            assert!(c.associativity_failures(&table).is_empty(), "{name}");
        }
    }
}
