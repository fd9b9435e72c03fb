//! Published dimension data for the catalog algebras.

use serde::{Deserialize, Serialize};

/// A Betti sequence given by its first terms and a stable tail value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableSequence {
    pub head: Vec<usize>,
    pub tail: usize,
}

impl StableSequence {
    pub fn get(&self, k: usize) -> usize {
        self.head.get(k).copied().unwrap_or(self.tail)
    }

    pub fn prefix(&self, kmax: usize) -> Vec<usize> {
        (0..=kmax).map(|k| self.get(k)).collect()
    }
}

/// Characteristic-zero Betti numbers of a catalog algebra.
pub fn betti_sequence(name: &str) -> Option<StableSequence> {
    let (head, tail): (&[usize], usize) = match name {
        "F12_1" | "F12_2" => (&[1, 3], 4),
        "F12_3" => (&[1], 2),
        "F22_1" | "F22_4" => (&[1, 3, 6], 8),
        "F22_2" => (&[1, 2, 3], 4),
        "F22_3" | "F22_5" => (&[1, 3], 4),
        _ => return None,
    };
    Some(StableSequence {
        head: head.to_vec(),
        tail,
    })
}

/// Closed-form total dimension of the divided-power cohomology, with `t`
/// the heights of `Y1` and `Y2`. `None` where no value is published.
pub fn dph_total(name: &str, p: u64, t: &[u32]) -> Option<i128> {
    if t.len() != 2 {
        return None;
    }
    let p = i128::from(p);
    let a = p.pow(t[0] - 1);
    let b = p.pow(t[1]);
    Some(match name {
        "F12_1" | "F12_2" => a * (4 * b + 2 * p - 2),
        "F12_3" => a * (4 * b + 1),
        "F22_1" => a * (8 * b + 4 * p - 7),
        "F22_3" => a * (8 * b + 1),
        "F22_4" => a * (2 * p + 1) + 2 * a * (4 * b + p - 3) - 1,
        "F22_5" => a * (8 * b + 2),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_at_smallest_heights() {
        let names = ["F12_1", "F12_2", "F12_3", "F22_1", "F22_3", "F22_4", "F22_5"];
        let at5: Vec<i128> = names.iter().map(|n| dph_total(n, 5, &[1, 1]).unwrap()).collect();
        let at7: Vec<i128> = names.iter().map(|n| dph_total(n, 7, &[1, 1]).unwrap()).collect();
        assert_eq!(at5, vec![28, 28, 21, 53, 41, 54, 42]);
        assert_eq!(at7, vec![40, 40, 29, 77, 57, 78, 58]);
        assert_eq!(dph_total("F22_2", 5, &[1, 1]), None);
    }

    #[test]
    fn sequences() {
        assert_eq!(betti_sequence("F22_4").unwrap().prefix(5), vec![1, 3, 6, 8, 8, 8]);
        assert_eq!(betti_sequence("F12_3").unwrap().prefix(3), vec![1, 2, 2, 2]);
        assert!(betti_sequence("L3,3").is_none());
    }
}
