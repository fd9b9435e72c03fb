use num_rational::BigRational;
use num_traits::One;

use super::{AlgebraError, AlgebraSpec, BasisVector};

/// A named filiform algebra from the classification lists.
pub struct CatalogEntry {
    pub name: &'static str,
    /// Number of even generators after `X0`, and odd generators.
    pub shape: (usize, usize),
    /// Brackets as `(left, right, output, numerator, denominator)`.
    pub brackets: &'static [(&'static str, &'static str, &'static str, i64, i64)],
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "F12_1",
        shape: (1, 2),
        brackets: &[("X0", "Y1", "Y2", 1, 1)],
    },
    CatalogEntry {
        name: "F12_2",
        shape: (1, 2),
        brackets: &[("X0", "Y1", "Y2", 1, 1), ("X1", "Y1", "Y2", 1, 1)],
    },
    CatalogEntry {
        name: "F12_3",
        shape: (1, 2),
        brackets: &[("X0", "Y1", "Y2", 1, 1), ("Y1", "Y1", "X1", 1, 1)],
    },
    CatalogEntry {
        name: "F22_1",
        shape: (2, 2),
        brackets: &[("X0", "X1", "X2", 1, 1), ("X0", "Y1", "Y2", 1, 1)],
    },
    CatalogEntry {
        name: "F22_2",
        shape: (2, 2),
        brackets: &[
            ("X0", "X1", "X2", 1, 1),
            ("X0", "Y1", "Y2", 1, 1),
            ("Y1", "Y1", "X1", 1, 1),
            ("Y1", "Y2", "X2", 1, 2),
        ],
    },
    CatalogEntry {
        name: "F22_3",
        shape: (2, 2),
        brackets: &[
            ("X0", "X1", "X2", 1, 1),
            ("X0", "Y1", "Y2", 1, 1),
            ("Y1", "Y1", "X2", 1, 1),
        ],
    },
    CatalogEntry {
        name: "F22_4",
        shape: (2, 2),
        brackets: &[
            ("X0", "X1", "X2", 1, 1),
            ("X0", "Y1", "Y2", 1, 1),
            ("X1", "Y1", "Y2", 1, 1),
        ],
    },
    CatalogEntry {
        name: "F22_5",
        shape: (2, 2),
        brackets: &[
            ("X0", "X1", "X2", 1, 1),
            ("X0", "Y1", "Y2", 1, 1),
            ("X1", "Y1", "Y2", 1, 1),
            ("Y1", "Y1", "X2", 1, 1),
        ],
    },
];

pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|e| e.name)
}

fn filiform_basis(n: usize, m: usize) -> (Vec<String>, Vec<String>) {
    let even = (0..=n).map(|i| format!("X{i}")).collect();
    let odd = (1..=m).map(|j| format!("Y{j}")).collect();
    (even, odd)
}

/// The model filiform algebra with `[X0, Xi] = X(i+1)` and `[X0, Yj] = Y(j+1)`.
pub fn model_filiform(n: usize, m: usize) -> Result<AlgebraSpec, AlgebraError> {
    if n == 0 || m == 0 {
        return Err(AlgebraError::InvalidDimension(format!(
            "model algebra needs n, m >= 1 (got n={n}, m={m})"
        )));
    }
    let (even, odd) = filiform_basis(n, m);
    let mut spec = AlgebraSpec::empty(even, odd)?;
    for i in 1..n {
        spec.insert_bracket(0, i, unit(i + 1))?;
    }
    let y = n + 1;
    for j in 0..m.saturating_sub(1) {
        spec.insert_bracket(0, y + j, unit(y + j + 1))?;
    }
    Ok(spec)
}

fn unit(i: usize) -> BasisVector {
    vec![(i, BigRational::one())]
}

/// Looks up a catalog algebra by name. Model algebras are addressed as
/// `L{n},{m}` (also accepted: `Lnm(n,m)`, `L_{n,m}`).
pub fn catalog(name: &str) -> Result<AlgebraSpec, AlgebraError> {
    if let Some(entry) = CATALOG.iter().find(|e| e.name == name) {
        let (even, odd) = filiform_basis(entry.shape.0, entry.shape.1);
        let mut spec = AlgebraSpec::empty(even, odd)?;
        for &(left, right, out, num, den) in entry.brackets {
            let k = spec.index_of(left)?;
            let l = spec.index_of(right)?;
            let i = spec.index_of(out)?;
            let c = BigRational::new(num.into(), den.into());
            spec.insert_bracket(k, l, vec![(i, c)])?;
        }
        return Ok(spec);
    }
    if let Some((n, m)) = model_shape(name) {
        return model_filiform(n, m);
    }
    Err(AlgebraError::UnknownName(name.to_string()))
}

/// `(n, m)` when `name` addresses a model algebra.
pub fn model_shape(name: &str) -> Option<(usize, usize)> {
    let rest = name
        .strip_prefix("Lnm(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| name.strip_prefix("L_{").and_then(|r| r.strip_suffix('}')))
        .or_else(|| name.strip_prefix('L'))?;
    let (a, b) = rest.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_valid() {
        for name in catalog_names() {
            let spec = catalog(name).unwrap();
            assert!(spec.validate().is_valid(), "{name}: {}", spec.validate());
        }
        for n in 1..=4 {
            for m in 1..=4 {
                assert!(model_filiform(n, m).unwrap().validate().is_valid());
            }
        }
    }

    #[test]
    fn catalog_identities() {
        assert_eq!(catalog("F12_1").unwrap(), model_filiform(1, 2).unwrap());
        assert_eq!(catalog("F22_1").unwrap(), model_filiform(2, 2).unwrap());
        assert_eq!(catalog("L2,3").unwrap(), model_filiform(2, 3).unwrap());
        assert_eq!(catalog("Lnm(2,3)").unwrap(), model_filiform(2, 3).unwrap());
        assert_eq!(catalog("L_{2,3}").unwrap(), model_filiform(2, 3).unwrap());
        assert!(matches!(catalog("F99_1"), Err(AlgebraError::UnknownName(_))));
        assert!(matches!(model_filiform(0, 2), Err(AlgebraError::InvalidDimension(_))));
    }

    #[test]
    fn catalog_brackets() {
        let f = catalog("F22_2").unwrap();
        let (y1, y2, x2) = (f.index_of("Y1").unwrap(), f.index_of("Y2").unwrap(), f.index_of("X2").unwrap());
        assert_eq!(f.bracket(y1, y2).unwrap(), vec![(x2, BigRational::new(1.into(), 2.into()))]);
        let f = catalog("F22_5").unwrap();
        let (x1, y1, y2) = (f.index_of("X1").unwrap(), f.index_of("Y1").unwrap(), f.index_of("Y2").unwrap());
        assert_eq!(f.bracket(x1, y1).unwrap(), vec![(y2, BigRational::one())]);
    }

    #[test]
    fn smallest_model_is_abelian() {
        assert!(model_filiform(1, 1).unwrap().is_abelian());
        let l = model_filiform(3, 2).unwrap();
        assert_eq!(l.stored_brackets().count(), 2 + 1);
    }
}
