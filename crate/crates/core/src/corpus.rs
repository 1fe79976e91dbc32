//! Bundled example presentations.

use crate::algebra::{build_algebra, AlgebraData, Presentation};
use crate::error::Result;
use crate::field::Field;

pub const DUAL_NUMBERS: &str = include_str!("../data/dual_numbers.alg");
pub const CUBIC: &str = include_str!("../data/cubic.alg");
pub const A2: &str = include_str!("../data/a2.alg");
pub const SEMISIMPLE2: &str = include_str!("../data/semisimple2.alg");
pub const BRUSTLE_A0: &str = include_str!("../data/brustle_a0.alg");
pub const BRUSTLE_B: &str = include_str!("../data/brustle_b.alg");
pub const BRUSTLE_FAMILY: &str = include_str!("../data/brustle.fam");
pub const X2_MINUS_LAMBDA_X: &str = include_str!("../data/x2_minus_lambda_x.fam");

/// Name and text of every bundled algebra (not the families).
pub const ALGEBRAS: &[(&str, &str)] = &[
    ("dual_numbers", DUAL_NUMBERS),
    ("cubic", CUBIC),
    ("a2", A2),
    ("semisimple2", SEMISIMPLE2),
    ("brustle_a0", BRUSTLE_A0),
    ("brustle_b", BRUSTLE_B),
];

pub fn presentation(text: &str) -> Presentation {
    Presentation::parse(text).expect("bundled presentation parses")
}

/// Build a bundled algebra over an arbitrary field.
pub fn load<F: Field>(field: F, text: &str) -> Result<AlgebraData<F>> {
    build_algebra(field, &presentation(text))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn bundled_dimensions() {
        let dims: Vec<usize> = ALGEBRAS
            .iter()
            .map(|(_, t)| load(Rationals, t).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![2, 3, 3, 2, 16, 15]);
        let b = load(PrimeField::new(3).unwrap(), BRUSTLE_B).unwrap();
        let x = b.path_element("b1").unwrap();
        let y = b.path_element("alpha").unwrap();
        assert!(b.multiply(&x, &y).unwrap().coeffs.iter().all(|c| *c == 0));
    }

    #[test]
    fn bundled_invariants() {
        for (name, t) in ALGEBRAS {
            let a = load(Rationals, t).unwrap();
            let rep = a.check_invariants();
            assert!(rep.all_pass(), "{name}: {:?}", rep.failures);
        }
    }
}
