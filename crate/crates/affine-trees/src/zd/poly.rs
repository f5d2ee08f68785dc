use super::{check_modulus, inv_mod};
use crate::error::{Error, Result};

/// Polynomial over `Z_d`, coefficients indexed from degree 0, trailing
/// zeros stripped. The zero polynomial has degree −1 by convention.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u64>,
    modulus: u64,
}

impl Poly {
    pub fn new(coeffs: Vec<u64>, modulus: u64) -> Self {
        assert!(modulus >= 2);
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs, modulus }
    }

    pub fn zero(modulus: u64) -> Self {
        Poly { coeffs: vec![], modulus }
    }

    pub fn one(modulus: u64) -> Self {
        Poly::new(vec![1], modulus)
    }

    /// The monomial `c·t^k`.
    pub fn monomial(c: u64, k: usize, modulus: u64) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::new(coeffs, modulus)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree with the convention `deg 0 = −1`.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        check_modulus(self.modulus, other.modulus)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(Poly::new(coeffs, self.modulus))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        check_modulus(self.modulus, other.modulus)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i) + self.modulus - other.coeff(i))
            .collect();
        Ok(Poly::new(coeffs, self.modulus))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        check_modulus(self.modulus, other.modulus)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.modulus));
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a * b) % self.modulus;
            }
        }
        Ok(Poly::new(coeffs, self.modulus))
    }

    pub fn scale(&self, c: u64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| a * (c % self.modulus)).collect(), self.modulus)
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs, modulus: self.modulus }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x + c) % self.modulus)
    }

    /// Exact division by `divisor`, requiring the leading coefficient of the
    /// divisor to be a unit and a zero remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        check_modulus(self.modulus, divisor.modulus)?;
        if divisor.is_zero() {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        }
        let lead = *divisor.coeffs.last().unwrap();
        let lead_inv = inv_mod(lead, self.modulus)
            .ok_or(Error::NonUnit { value: lead, modulus: self.modulus })?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(divisor.coeffs.len() - 1)];
        while rem.len() >= divisor.coeffs.len() && !rem.is_empty() {
            let k = rem.len() - divisor.coeffs.len();
            let q = (*rem.last().unwrap() * lead_inv) % self.modulus;
            quot[k] = q;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                let idx = k + i;
                rem[idx] = (rem[idx] + self.modulus - (q * c) % self.modulus) % self.modulus;
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        if !rem.is_empty() {
            return Err(Error::InvalidArgument("polynomial division leaves a remainder".into()));
        }
        Ok(Poly::new(quot, self.modulus))
    }
}

/// The polynomial `1 + t + … + t^{n−1}` over `Z_2`.
pub fn phi(n: usize) -> Poly {
    assert!(n >= 1, "phi is defined for n >= 1");
    Poly::new(vec![1; n], 2)
}

/// The degree-dropping operator `ψ_p = Σ_{i≥1} a_i φ_i` for `p = Σ a_i t^i`
/// over `Z_2`; satisfies `deg ψ_p = deg p − 1` for nonzero `p`.
pub fn psi(p: &Poly) -> Poly {
    assert_eq!(p.modulus(), 2, "psi is defined over Z_2");
    let mut acc = Poly::zero(2);
    for (i, &a) in p.coeffs().iter().enumerate().skip(1) {
        if a != 0 {
            acc = acc.add(&phi(i)).unwrap();
        }
    }
    acc
}

/// Laurent polynomial over `Z_d`: finitely many nonzero coefficients on
/// exponents that may be negative. Zero is stored with an empty coefficient
/// list and `low = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: Vec<u64>,
    low: i64,
    modulus: u64,
}

impl LaurentPoly {
    pub fn new(coeffs: Vec<u64>, low: i64, modulus: u64) -> Self {
        assert!(modulus >= 2);
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        let mut low = low;
        while coeffs.first() == Some(&0) {
            coeffs.remove(0);
            low += 1;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            low = 0;
        }
        LaurentPoly { coeffs, low, modulus }
    }

    pub fn zero(modulus: u64) -> Self {
        LaurentPoly { coeffs: vec![], low: 0, modulus }
    }

    pub fn one(modulus: u64) -> Self {
        LaurentPoly::new(vec![1], 0, modulus)
    }

    pub fn monomial(c: u64, exp: i64, modulus: u64) -> Self {
        LaurentPoly::new(vec![c], exp, modulus)
    }

    pub fn from_poly(p: &Poly) -> Self {
        LaurentPoly::new(p.coeffs().to_vec(), 0, p.modulus())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lowest_degree(&self) -> i64 {
        self.low
    }

    pub fn highest_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, exp: i64) -> u64 {
        if exp < self.low {
            return 0;
        }
        self.coeffs.get((exp - self.low) as usize).copied().unwrap_or(0)
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| self.low + i as i64)
            .collect()
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        check_modulus(self.modulus, other.modulus)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let low = self.low.min(other.low);
        let high = self.highest_degree().max(other.highest_degree());
        let coeffs = (low..=high)
            .map(|e| self.coeff(e) + other.coeff(e))
            .collect();
        Ok(LaurentPoly::new(coeffs, low, self.modulus))
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        check_modulus(self.modulus, other.modulus)?;
        if self.is_zero() || other.is_zero() {
            return Ok(LaurentPoly::zero(self.modulus));
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a * b) % self.modulus;
            }
        }
        Ok(LaurentPoly::new(coeffs, self.low + other.low, self.modulus))
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly::new(
            self.coeffs.iter().map(|&c| self.modulus - c).collect(),
            self.low,
            self.modulus,
        )
    }

    /// Multiplication by `x^n`.
    pub fn shift(&self, n: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { coeffs: self.coeffs.clone(), low: self.low + n, modulus: self.modulus }
    }

    pub fn eval_at_one(&self) -> u64 {
        self.coeffs.iter().sum::<u64>() % self.modulus
    }

    /// Exact division by an ordinary polynomial with unit leading
    /// coefficient (used for quotients by `1 + x` over `Z_2`).
    pub fn div_exact(&self, divisor: &Poly) -> Result<LaurentPoly> {
        check_modulus(self.modulus, divisor.modulus())?;
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.modulus));
        }
        let as_poly = Poly::new(self.coeffs.clone(), self.modulus);
        let q = as_poly.div_exact(divisor)?;
        Ok(LaurentPoly::new(q.coeffs().to_vec(), self.low, self.modulus))
    }
}
