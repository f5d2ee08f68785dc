use std::fmt;
use std::str::FromStr;

use super::{canonicalize_parts, check_modulus, lcm, Poly, Residue};
use crate::error::{Error, Result};

/// Eventually periodic infinite sequence over `Z_d`, in canonical
/// `(preperiod, period)` form: the period is primitive (not a proper power
/// of a shorter word) and the preperiod is minimal (its last entry differs
/// from the last period entry). Canonical form makes entrywise equality a
/// plain field comparison.
///
/// Entries are 1-indexed, matching the coordinates of row vectors in
/// `Z_d^∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpSeq {
    pre: Vec<u64>,
    per: Vec<u64>,
    modulus: u64,
}

impl EpSeq {
    pub fn new(pre: Vec<u64>, per: Vec<u64>, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        assert!(!per.is_empty(), "period must be nonempty");
        let mut pre: Vec<u64> = pre.into_iter().map(|v| v % modulus).collect();
        let mut per: Vec<u64> = per.into_iter().map(|v| v % modulus).collect();
        canonicalize_parts(&mut pre, &mut per);
        EpSeq { pre, per, modulus }
    }

    /// The all-zero sequence.
    pub fn zero(modulus: u64) -> Self {
        EpSeq::new(vec![], vec![0], modulus)
    }

    /// The `i`-th standard basis vector `e_i` (1-indexed).
    pub fn basis(i: usize, modulus: u64) -> Self {
        assert!(i >= 1);
        let mut pre = vec![0; i];
        pre[i - 1] = 1;
        EpSeq::new(pre, vec![0], modulus)
    }

    /// Sequence whose first entries are the coefficients of `p` (from degree
    /// 0) followed by zeros.
    pub fn from_poly(p: &Poly) -> Self {
        EpSeq::new(p.coeffs().to_vec(), vec![0], p.modulus())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.pre
    }

    pub fn period(&self) -> &[u64] {
        &self.per
    }

    pub fn is_zero(&self) -> bool {
        self.pre.is_empty() && self.per == [0]
    }

    /// Entry at 1-indexed position `i`.
    pub fn entry(&self, i: usize) -> u64 {
        assert!(i >= 1, "entries are 1-indexed");
        if i <= self.pre.len() {
            self.pre[i - 1]
        } else {
            self.per[(i - self.pre.len() - 1) % self.per.len()]
        }
    }

    pub fn entry_residue(&self, i: usize) -> Residue {
        Residue::new(self.entry(i), self.modulus)
    }

    /// First `n` entries as a plain vector.
    pub fn prefix(&self, n: usize) -> Vec<u64> {
        (1..=n).map(|i| self.entry(i)).collect()
    }

    /// The shift `σ`: drops the first entry.
    pub fn shift(&self) -> EpSeq {
        if self.pre.is_empty() {
            let mut per = self.per.clone();
            per.rotate_left(1);
            EpSeq::new(vec![], per, self.modulus)
        } else {
            EpSeq::new(self.pre[1..].to_vec(), self.per.clone(), self.modulus)
        }
    }

    pub fn shift_by(&self, n: usize) -> EpSeq {
        let mut s = self.clone();
        for _ in 0..n {
            s = s.shift();
        }
        s
    }

    /// Prepends the given entries.
    pub fn prepend(&self, entries: &[u64]) -> EpSeq {
        let mut pre: Vec<u64> = entries.to_vec();
        pre.extend_from_slice(&self.pre);
        EpSeq::new(pre, self.per.clone(), self.modulus)
    }

    fn zip_with(&self, other: &EpSeq, f: impl Fn(u64, u64) -> u64) -> Result<EpSeq> {
        check_modulus(self.modulus, other.modulus)?;
        let pre_len = self.pre.len().max(other.pre.len());
        let per_len = lcm(self.per.len(), other.per.len());
        let pre = (1..=pre_len).map(|i| f(self.entry(i), other.entry(i))).collect();
        let per = (pre_len + 1..=pre_len + per_len)
            .map(|i| f(self.entry(i), other.entry(i)))
            .collect();
        Ok(EpSeq::new(pre, per, self.modulus))
    }

    pub fn add(&self, other: &EpSeq) -> Result<EpSeq> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &EpSeq) -> Result<EpSeq> {
        let m = self.modulus;
        self.zip_with(other, move |a, b| a + m - b)
    }

    pub fn scale(&self, c: u64) -> EpSeq {
        let c = c % self.modulus;
        EpSeq::new(
            self.pre.iter().map(|&a| a * c).collect(),
            self.per.iter().map(|&a| a * c).collect(),
            self.modulus,
        )
    }

    pub fn neg(&self) -> EpSeq {
        self.scale(self.modulus - 1)
    }
}

/// Text syntax `pre:1,0|per:1,1,0`; the `pre:` part is omitted when the
/// preperiod is empty.
impl fmt::Display for EpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        if self.pre.is_empty() {
            write!(f, "per:{}", join(&self.per))
        } else {
            write!(f, "pre:{}|per:{}", join(&self.pre), join(&self.per))
        }
    }
}

impl EpSeq {
    /// Parses the text syntax; the modulus is supplied by the caller since
    /// the syntax does not carry it.
    pub fn parse(text: &str, modulus: u64) -> Result<EpSeq> {
        let err = |msg: &str| Error::Parse { line: 1, col: 1, msg: msg.to_string() };
        let text = text.trim();
        let (pre_part, per_part) = match text.split_once('|') {
            Some((a, b)) => (Some(a.trim()), b.trim()),
            None => (None, text),
        };
        let parse_list = |s: &str, what: &str| -> Result<Vec<u64>> {
            if s.is_empty() {
                return Ok(vec![]);
            }
            s.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u64>()
                        .map_err(|_| err(&format!("invalid {what} entry `{tok}`")))
                })
                .collect()
        };
        let pre = match pre_part {
            None => vec![],
            Some(p) => {
                let body = p
                    .strip_prefix("pre:")
                    .ok_or_else(|| err("expected `pre:` before `|`"))?;
                parse_list(body.trim(), "preperiod")?
            }
        };
        let per_body = per_part
            .strip_prefix("per:")
            .ok_or_else(|| err("expected `per:` part"))?;
        let per = parse_list(per_body.trim(), "period")?;
        if per.is_empty() {
            return Err(err("period must be nonempty"));
        }
        if pre.iter().chain(per.iter()).any(|&v| v >= modulus) {
            return Err(err(&format!("entry out of range for modulus {modulus}")));
        }
        Ok(EpSeq::new(pre, per, modulus))
    }
}

/// `FromStr` assumes the binary alphabet; use [`EpSeq::parse`] otherwise.
impl FromStr for EpSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EpSeq::parse(s, 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(pre: &[u64], per: &[u64]) -> EpSeq {
        EpSeq::new(pre.to_vec(), per.to_vec(), 2)
    }

    #[test]
    fn entry_examples() {
        // b of the principal example: (1,0,0,1,1,1,0,0)^inf
        let s = b(&[], &[1, 0, 0, 1, 1, 1, 0, 0]);
        assert_eq!(s.entry(1), 1);
        let zero = EpSeq::zero(2);
        for i in 1..20 {
            assert_eq!(zero.entry(i), 0);
        }
        // pre [1], per [0,1] unrolls as 1,0,1,0,1,...
        let s = b(&[1], &[0, 1]);
        assert_eq!(s.entry(4), 0);
        assert_eq!(s.prefix(5), vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn canonical_form_examples() {
        // pre [1], per [0,1] is the sequence (1,0)^inf, so it canonicalizes
        // to empty preperiod
        let s = b(&[1], &[0, 1]);
        assert!(s.preperiod().is_empty());
        assert_eq!(s.period(), &[1, 0]);
        // a proper power period collapses
        let s = b(&[], &[1, 0, 1, 0]);
        assert_eq!(s.period(), &[1, 0]);
        // pre [1], per [0] stays put
        let s = b(&[1], &[0]);
        assert_eq!(s.preperiod(), &[1]);
        assert_eq!(s.period(), &[0]);
    }

    #[test]
    fn shift_examples() {
        let s = b(&[], &[1, 0, 0, 1, 1, 1, 0, 0]);
        assert_eq!(s.shift(), b(&[], &[0, 0, 1, 1, 1, 0, 0, 1]));
        assert_eq!(b(&[1], &[0]).shift(), EpSeq::zero(2));
        assert_eq!(b(&[], &[1, 0]).shift(), b(&[], &[0, 1]));
    }

    #[test]
    fn shift_compatibility() {
        let s = EpSeq::new(vec![1, 2, 0], vec![2, 1, 1], 3);
        let t = s.shift();
        for i in 1..=100 {
            assert_eq!(t.entry(i), s.entry(i + 1));
        }
    }

    #[test]
    fn add_examples() {
        let s = b(&[1], &[0, 1]);
        assert_eq!(s.add(&EpSeq::zero(2)).unwrap(), s);
        let one = b(&[], &[1]);
        assert_eq!(one.add(&one).unwrap(), EpSeq::zero(2));
        // pre[1],per[0,1] + per[1,1] = pre[0],per[1,0]
        let r = s.add(&b(&[], &[1, 1])).unwrap();
        assert_eq!(r, b(&[0], &[1, 0]));
    }

    #[test]
    fn sub_is_add_of_neg() {
        let s = EpSeq::new(vec![2], vec![1, 0, 2], 3);
        let t = EpSeq::new(vec![], vec![2, 2, 1], 3);
        assert_eq!(s.sub(&t).unwrap(), s.add(&t.neg()).unwrap());
    }

    #[test]
    fn modulus_mismatch_rejected() {
        let s = EpSeq::zero(2);
        let t = EpSeq::zero(3);
        assert!(s.add(&t).is_err());
    }

    #[test]
    fn basis_vector() {
        let e3 = EpSeq::basis(3, 2);
        assert_eq!(e3.prefix(5), vec![0, 0, 1, 0, 0]);
    }

    #[test]
    fn text_round_trip() {
        for text in ["per:1,0", "pre:0|per:1,0,1", "per:0"] {
            let s = EpSeq::parse(text, 2).unwrap();
            assert_eq!(s.to_string(), text);
            assert_eq!(EpSeq::parse(&s.to_string(), 2).unwrap(), s);
        }
        // parsing canonicalizes
        assert_eq!(EpSeq::parse("pre:1|per:0,1", 2).unwrap().to_string(), "per:1,0");
        assert!(EpSeq::parse("per:2", 2).is_err());
        assert!(EpSeq::parse("pre:1", 2).is_err());
    }
}
