//! Bundled group and representation files.

use std::sync::Arc;

use crate::group::{FiniteGroup, DEFAULT_MAX_ORDER};
use crate::io::{parse_group, parse_rep};
use crate::rep::{ProjectiveRep, EPS};

pub const Z2_JSON: &str = include_str!("../fixtures/z2.json");
pub const V4_JSON: &str = include_str!("../fixtures/v4.json");
pub const S3_JSON: &str = include_str!("../fixtures/s3.json");
pub const D4_JSON: &str = include_str!("../fixtures/d4.json");
pub const Q8_JSON: &str = include_str!("../fixtures/q8.json");
pub const S4_JSON: &str = include_str!("../fixtures/s4.json");
/// The Pauli-matrix projective representation of `ℤ₂×ℤ₂` on `ℂ²`.
pub const PAULI_JSON: &str = include_str!("../fixtures/pauli.json");

/// Named group fixtures, in the order `selftest` uses them.
pub const GROUPS: [(&str, &str); 6] = [
    ("z2", Z2_JSON),
    ("v4", V4_JSON),
    ("s3", S3_JSON),
    ("d4", D4_JSON),
    ("q8", Q8_JSON),
    ("s4", S4_JSON),
];

pub fn group(name: &str) -> Option<Arc<FiniteGroup>> {
    GROUPS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, text)| Arc::new(parse_group(n, text, DEFAULT_MAX_ORDER).expect("bundled fixture is valid")))
}

/// Text of a bundled file by file name, e.g. `v4.json` or `pauli.json`.
pub fn bundled(file: &str) -> Option<&'static str> {
    if file == "pauli.json" {
        return Some(PAULI_JSON);
    }
    let stem = file.strip_suffix(".json")?;
    GROUPS.iter().find(|(n, _)| *n == stem).map(|(_, text)| *text)
}

/// `ℤ₂×ℤ₂` with the Pauli representation.
pub fn pauli() -> (Arc<FiniteGroup>, ProjectiveRep) {
    let g = group("v4").expect("v4 fixture");
    let psi = parse_rep("pauli.json", PAULI_JSON, &g, EPS).expect("bundled fixture is valid");
    (g, psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Subgroup, all_subgroups};

    #[test]
    fn fixture_orders() {
        let orders: Vec<usize> = GROUPS.iter().map(|(n, _)| group(n).unwrap().order()).collect();
        assert_eq!(orders, vec![2, 4, 6, 8, 8, 24]);
    }

    #[test]
    fn q8_is_quaternion() {
        let g = group("q8").unwrap();
        assert!(!g.is_abelian());
        let involutions = (0..8).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        // Every subgroup of Q8 is normal and there are six of them.
        let subs = all_subgroups(&g, 128).unwrap();
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(|h| crate::group::is_normal(&g, h)));
    }

    #[test]
    fn d4_has_five_involutions() {
        let g = group("d4").unwrap();
        assert_eq!((0..8).filter(|&x| g.element_order(x) == 2).count(), 5);
        assert_eq!(all_subgroups(&g, 128).unwrap().len(), 10);
        assert!(Subgroup::whole(&g).order() == 8);
    }
}
