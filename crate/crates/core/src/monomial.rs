//! Monomials and monomial orders.

use serde::Serialize;
use std::cmp::Ordering;

/// Exponent vector; one slot per declared ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(
            other
                .0
                .iter()
                .zip(&self.0)
                .map(|(b, a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A total order on monomials compatible with multiplication.
///
/// `Elimination { last_block }` makes the trailing `last_block` variables
/// dominate: a reduced basis under it exposes the contraction to the
/// leading variables (basis elements free of the trailing block generate
/// the elimination ideal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Elimination { last_block: usize },
}

fn cmp_grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for (x, y) in a.iter().zip(b.iter()).rev() {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    // last differing exponent smaller ⇒ larger monomial
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.0.iter().zip(&b.0) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => cmp_grevlex(&a.0, &b.0),
            MonomialOrder::Elimination { last_block } => {
                let split_a = a.0.len().saturating_sub(*last_block);
                let split_b = b.0.len().saturating_sub(*last_block);
                match cmp_grevlex(&a.0[split_a..], &b.0[split_b..]) {
                    Ordering::Equal => cmp_grevlex(&a.0[..split_a], &b.0[..split_b]),
                    other => other,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grevlex_classic() {
        // degree first, then "reverse lex" tie-break: X^2 > XY > Y^2 > X > Y > 1 in k[X,Y]
        let ord = MonomialOrder::GrevLex;
        let m = |e: &[u32]| Monomial(e.to_vec());
        assert_eq!(ord.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 1]), &m(&[0, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_separates_block() {
        // last variable heavy: any power of t beats any t-free monomial
        let ord = MonomialOrder::Elimination { last_block: 1 };
        let m = |e: &[u32]| Monomial(e.to_vec());
        assert_eq!(ord.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
    }

    fn arb_monomial(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, n).prop_map(Monomial)
    }

    proptest! {
        // total multiplicative order: a < b implies ac < bc, and totality
        #[test]
        fn order_axioms(a in arb_monomial(3), b in arb_monomial(3), c in arb_monomial(3)) {
            for ord in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Elimination { last_block: 1 }] {
                let ab = ord.cmp(&a, &b);
                let ac_bc = ord.cmp(&a.mul(&c), &b.mul(&c));
                prop_assert_eq!(ab, ac_bc);
                if a != b {
                    prop_assert_ne!(ab, Ordering::Equal);
                }
                // 1 is minimal among monomials times anything: m >= 1
                let one = Monomial::one(3);
                prop_assert_ne!(ord.cmp(&a, &one), Ordering::Less);
            }
        }
    }
}
