use std::collections::HashMap;

use super::{check_modulus, inv_mod, EpSeq, Poly};
use crate::error::{Error, Result};

/// Rational power series `num / den` over `Z_d` with the constant term of
/// `den` a unit, so the quotient has a well-defined coefficient expansion.
/// Equality is tested by cross-multiplication; no gcd reduction is
/// performed.
#[derive(Debug, Clone)]
pub struct RationalSeries {
    num: Poly,
    den: Poly,
}

impl RationalSeries {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        check_modulus(num.modulus(), den.modulus())?;
        let c = den.coeff(0);
        if inv_mod(c, den.modulus()).is_none() {
            return Err(Error::NonUnit { value: c, modulus: den.modulus() });
        }
        Ok(RationalSeries { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.modulus());
        RationalSeries { num: p, den: one }
    }

    pub fn zero(modulus: u64) -> Self {
        RationalSeries::from_poly(Poly::zero(modulus))
    }

    pub fn modulus(&self) -> u64 {
        self.num.modulus()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn add(&self, other: &RationalSeries) -> Result<RationalSeries> {
        let num = self.num.mul(&other.den)?.add(&other.num.mul(&self.den)?)?;
        RationalSeries::new(num, self.den.mul(&other.den)?)
    }

    pub fn mul(&self, other: &RationalSeries) -> Result<RationalSeries> {
        RationalSeries::new(self.num.mul(&other.num)?, self.den.mul(&other.den)?)
    }

    pub fn scale(&self, c: u64) -> RationalSeries {
        RationalSeries { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: usize) -> RationalSeries {
        RationalSeries { num: self.num.shift_up(k), den: self.den.clone() }
    }

    /// Equality of the represented series, by cross-multiplication.
    pub fn series_eq(&self, other: &RationalSeries) -> Result<bool> {
        check_modulus(self.modulus(), other.modulus())?;
        Ok(self.num.mul(&other.den)? == other.num.mul(&self.den)?)
    }

    /// The coefficient sequence of the series, which is eventually periodic
    /// because the long-division remainder walks a finite set of
    /// polynomials over `Z_d`.
    pub fn to_epseq(&self) -> EpSeq {
        let d = self.modulus();
        let u_inv = inv_mod(self.den.coeff(0), d).expect("denominator invariant");
        let mut rem = self.num.clone();
        let mut coeffs: Vec<u64> = Vec::new();
        let mut seen: HashMap<Poly, usize> = HashMap::new();
        loop {
            if let Some(&start) = seen.get(&rem) {
                let pre = coeffs[..start].to_vec();
                let per = coeffs[start..].to_vec();
                return EpSeq::new(pre, per, d);
            }
            seen.insert(rem.clone(), coeffs.len());
            let c = (rem.coeff(0) * u_inv) % d;
            coeffs.push(c);
            // rem := (rem - c * den) / t
            let diff = rem.sub(&self.den.scale(c)).expect("same modulus");
            debug_assert_eq!(diff.coeff(0), 0);
            let shifted: Vec<u64> = diff.coeffs().iter().skip(1).copied().collect();
            rem = Poly::new(shifted, d);
        }
    }

    /// The rational series whose coefficients are the given eventually
    /// periodic sequence: for preperiod `u` of length `a` and period `w` of
    /// length `c`, this is `(u(t)·(1 − t^c) + t^a·w(t)) / (1 − t^c)`.
    pub fn from_epseq(s: &EpSeq) -> RationalSeries {
        let d = s.modulus();
        let a = s.preperiod().len();
        let c = s.period().len();
        let u = Poly::new(s.preperiod().to_vec(), d);
        let w = Poly::new(s.period().to_vec(), d);
        let mut den_coeffs = vec![0u64; c + 1];
        den_coeffs[0] = 1;
        den_coeffs[c] = d - 1;
        let den = Poly::new(den_coeffs, d);
        let num = u.mul(&den).unwrap().add(&w.shift_up(a)).unwrap();
        RationalSeries { num, den }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(num: &[u64], den: &[u64], d: u64) -> RationalSeries {
        RationalSeries::new(Poly::new(num.to_vec(), d), Poly::new(den.to_vec(), d)).unwrap()
    }

    #[test]
    fn geometric_series() {
        // 1/(1+t) over Z_2 = 1 + t + t^2 + ... = (1)^inf
        let f = series(&[1], &[1, 1], 2);
        assert_eq!(f.to_epseq(), EpSeq::new(vec![], vec![1], 2));
    }

    #[test]
    fn polynomial_series() {
        // (1+t)/1 has coefficients 1,1,0,0,...
        let f = series(&[1, 1], &[1], 2);
        assert_eq!(f.to_epseq(), EpSeq::new(vec![1, 1], vec![0], 2));
    }

    #[test]
    fn period_three() {
        // t/(1+t+t^2) over Z_2 has period (0,1,1) since 1+t+t^2 | 1+t^3
        let f = series(&[0, 1], &[1, 1, 1], 2);
        assert_eq!(f.to_epseq(), EpSeq::new(vec![], vec![0, 1, 1], 2));
    }

    #[test]
    fn round_trip_canonical() {
        let cases = [
            EpSeq::new(vec![], vec![1, 0, 0, 1, 1, 1, 0, 0], 2),
            EpSeq::new(vec![1, 1], vec![0], 2),
            EpSeq::new(vec![0, 2], vec![1, 2, 2], 3),
            EpSeq::zero(5),
        ];
        for s in cases {
            assert_eq!(RationalSeries::from_epseq(&s).to_epseq(), s);
        }
    }

    #[test]
    fn denominator_must_be_unit() {
        assert!(RationalSeries::new(Poly::one(4), Poly::new(vec![1, 2], 4)).is_ok());
        assert!(RationalSeries::new(Poly::one(4), Poly::new(vec![2, 1], 4)).is_err());
    }

    #[test]
    fn product_matches_convolution() {
        let f = series(&[1, 2], &[1, 0, 1], 3);
        let g = series(&[2, 0, 1], &[1, 1], 3);
        let fg = f.mul(&g).unwrap();
        let a = f.to_epseq();
        let b = g.to_epseq();
        let c = fg.to_epseq();
        for n in 0..200 {
            let conv: u64 = (0..=n).map(|k| a.entry(k + 1) * b.entry(n - k + 1)).sum();
            assert_eq!(c.entry(n + 1), conv % 3);
        }
    }

    #[test]
    fn series_eq_cross_multiplication() {
        // (1+t)/(1+t^2) = 1/(1+t) over Z_2
        let f = series(&[1, 1], &[1, 0, 1], 2);
        let g = series(&[1], &[1, 1], 2);
        assert!(f.series_eq(&g).unwrap());
        assert!(!f.series_eq(&series(&[1], &[1], 2)).unwrap());
    }
}
