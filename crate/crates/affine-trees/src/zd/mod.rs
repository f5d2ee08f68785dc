//! Exact arithmetic over the ring `Z_d`.
//!
//! All types carry their modulus `d ≥ 2` at runtime; mixing moduli is an
//! error. Values are kept reduced to `[0, d)` at all times.

mod epseq;
mod matrix;
mod poly;
mod series;

pub use epseq::EpSeq;
pub use matrix::DiagPeriodicMatrix;
pub use poly::{phi, psi, LaurentPoly, Poly};
pub use series::RationalSeries;

use crate::error::{Error, Result};

/// An element of `Z_d`, kept reduced modulo `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Residue { value: value % modulus, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn add(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue::new(self.value + other.value, self.modulus))
    }

    pub fn sub(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue::new(self.value + self.modulus - other.value, self.modulus))
    }

    pub fn mul(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue::new(self.value * other.value, self.modulus))
    }

    pub fn neg(&self) -> Residue {
        Residue::new(self.modulus - self.value, self.modulus)
    }

    pub fn is_unit(&self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    /// Multiplicative inverse, if `value` is a unit modulo `d`.
    pub fn inverse(&self) -> Result<Residue> {
        inv_mod(self.value, self.modulus)
            .map(|v| Residue::new(v, self.modulus))
            .ok_or(Error::NonUnit { value: self.value, modulus: self.modulus })
    }

    fn check(&self, other: &Residue) -> Result<()> {
        check_modulus(self.modulus, other.modulus)
    }
}

pub(crate) fn check_modulus(left: u64, right: u64) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::ModulusMismatch { left, right })
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a as u64, b as u64) as usize * b
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Canonicalizes an eventually periodic description in place: first shrink
/// the period to its primitive root, then absorb preperiod entries whose
/// value matches the tail of the (rotating) period.
pub(crate) fn canonicalize_parts<T: PartialEq + Clone>(pre: &mut Vec<T>, per: &mut Vec<T>) {
    assert!(!per.is_empty(), "period must be nonempty");
    // Smallest divisor length that tiles the period.
    let n = per.len();
    for len in 1..=n {
        if n % len != 0 {
            continue;
        }
        if (len..n).all(|i| per[i] == per[i - len]) {
            per.truncate(len);
            break;
        }
    }
    // Absorb matching tail entries; rotating right keeps the sequence equal
    // and the period primitive.
    while let Some(last) = pre.last() {
        if last == per.last().unwrap() {
            pre.pop();
            per.rotate_right(1);
        } else {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_reduces() {
        assert_eq!(Residue::new(7, 3).value(), 1);
        assert_eq!(Residue::new(2, 2).value(), 0);
    }

    #[test]
    fn residue_inverse() {
        let r = Residue::new(3, 7);
        assert_eq!(r.inverse().unwrap().value(), 5);
        assert!(Residue::new(2, 4).inverse().is_err());
    }

    #[test]
    fn inv_mod_composite() {
        // 5 * 5 = 25 = 1 mod 6
        assert_eq!(inv_mod(5, 6), Some(5));
        assert_eq!(inv_mod(3, 6), None);
    }

    #[test]
    fn canonicalize_shrinks_period_and_preperiod() {
        let mut pre = vec![1u64];
        let mut per = vec![0, 1, 0, 1];
        canonicalize_parts(&mut pre, &mut per);
        // 1,(0,1)^inf = (1,0)^inf
        assert_eq!(pre, Vec::<u64>::new());
        assert_eq!(per, vec![1, 0]);
    }

    #[test]
    fn canonicalize_keeps_primitive() {
        let mut pre = vec![0u64];
        let mut per = vec![1, 0, 1];
        canonicalize_parts(&mut pre, &mut per);
        assert_eq!(pre, vec![0]);
        assert_eq!(per, vec![1, 0, 1]);
    }

    #[test]
    fn canonicalize_rotating_absorption() {
        // 1,0,(1,1,0)^inf equals (1,0,1)^inf entrywise
        let mut pre = vec![1u64, 0];
        let mut per = vec![1, 1, 0];
        canonicalize_parts(&mut pre, &mut per);
        assert_eq!(pre, Vec::<u64>::new());
        assert_eq!(per, vec![1, 0, 1]);
    }
}
