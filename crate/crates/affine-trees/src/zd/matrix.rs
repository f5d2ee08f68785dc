use serde::{Deserialize, Serialize};

use super::{canonicalize_parts, check_modulus, lcm, EpSeq, Poly, RationalSeries};
use crate::error::{Error, Result};

/// Infinite upper-triangular matrix over `Z_d` with unit diagonal entries,
/// finitely presented by diagonal periodicity: rows `1..=n` are stored
/// explicitly and rows beyond `n` cycle through `p` template rows, so that
/// `σ^n(A) = σ^{n+p}(A)` where `σ` removes the first row and column.
///
/// Every row is stored from its diagonal entry onward (leading zeros are
/// implied by triangularity), which makes the shift a structural operation.
/// The representation is canonical: `p` is primitive and `n` is minimal, so
/// equality of matrices is equality of fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagPeriodicMatrix {
    modulus: u64,
    base_rows: Vec<EpSeq>,
    template_rows: Vec<EpSeq>,
}

impl DiagPeriodicMatrix {
    pub fn new(modulus: u64, base_rows: Vec<EpSeq>, template_rows: Vec<EpSeq>) -> Result<Self> {
        if template_rows.is_empty() {
            return Err(Error::InvalidArgument("template rows must be nonempty".into()));
        }
        for row in base_rows.iter().chain(template_rows.iter()) {
            check_modulus(modulus, row.modulus())?;
            let diag = row.entry_residue(1);
            if !diag.is_unit() {
                return Err(Error::NonUnit { value: diag.value(), modulus });
            }
        }
        let mut base_rows = base_rows;
        let mut template_rows = template_rows;
        canonicalize_parts(&mut base_rows, &mut template_rows);
        Ok(DiagPeriodicMatrix { modulus, base_rows, template_rows })
    }

    pub fn identity(modulus: u64) -> Self {
        let row = EpSeq::new(vec![1], vec![0], modulus);
        DiagPeriodicMatrix { modulus, base_rows: vec![], template_rows: vec![row] }
    }

    pub fn is_identity(&self) -> bool {
        self == &DiagPeriodicMatrix::identity(self.modulus)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of explicitly stored rows before the templates take over.
    pub fn preperiod_len(&self) -> usize {
        self.base_rows.len()
    }

    /// The σ-period of the matrix.
    pub fn sigma_period(&self) -> usize {
        self.template_rows.len()
    }

    pub fn base_rows(&self) -> &[EpSeq] {
        &self.base_rows
    }

    pub fn template_rows(&self) -> &[EpSeq] {
        &self.template_rows
    }

    /// Row `i` (1-indexed) from its diagonal entry onward.
    pub fn stored_row(&self, i: usize) -> &EpSeq {
        assert!(i >= 1);
        let n = self.base_rows.len();
        if i <= n {
            &self.base_rows[i - 1]
        } else {
            &self.template_rows[(i - n - 1) % self.template_rows.len()]
        }
    }

    /// Full row `i` including the `i − 1` leading zeros.
    pub fn row(&self, i: usize) -> EpSeq {
        self.stored_row(i).prepend(&vec![0; i - 1])
    }

    /// Entry at (1-indexed) position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        if j < i {
            0
        } else {
            self.stored_row(i).entry(j - i + 1)
        }
    }

    /// The shift `σ(A)`: removes the first row and column. Row storage is
    /// from-diagonal, so only the row bookkeeping moves.
    pub fn shift(&self) -> DiagPeriodicMatrix {
        self.shifted(1)
    }

    pub fn shifted(&self, k: usize) -> DiagPeriodicMatrix {
        let n = self.base_rows.len();
        let p = self.template_rows.len();
        let (base, templates) = if k <= n {
            (self.base_rows[k..].to_vec(), self.template_rows.clone())
        } else {
            let mut t = self.template_rows.clone();
            t.rotate_left((k - n) % p);
            (vec![], t)
        };
        // Already canonical except possibly for base/template absorption.
        DiagPeriodicMatrix::new(self.modulus, base, templates).expect("shift preserves validity")
    }

    /// The top-left `size × size` corner as plain entries.
    pub fn corner(&self, size: usize) -> Vec<Vec<u64>> {
        (1..=size)
            .map(|i| (1..=size).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Row-vector–matrix product `v · A`, exact. Each output coordinate is
    /// the finite sum `Σ_k v_k a_{kj}`; the result is assembled as a
    /// rational series so eventual periodicity is obtained by construction
    /// rather than by pattern detection.
    pub fn row_vec_mul(v: &EpSeq, m: &DiagPeriodicMatrix) -> Result<EpSeq> {
        check_modulus(v.modulus(), m.modulus)?;
        let d = m.modulus;
        let n = v.preperiod().len().max(m.base_rows.len());
        let p = lcm(v.period().len(), m.template_rows.len());
        let mut head = RationalSeries::zero(d);
        for k in 1..=n {
            let c = v.entry(k);
            if c != 0 {
                let term = RationalSeries::from_epseq(m.stored_row(k)).shift_up(k - 1).scale(c);
                head = head.add(&term)?;
            }
        }
        // Rows and vector entries past position n repeat with period p, so
        // each residue class m contributes t^{k-1}·S_k/(1 − t^p).
        let mut tail = RationalSeries::zero(d);
        for r in 0..p {
            let k = n + 1 + r;
            let c = v.entry(k);
            if c != 0 {
                let term = RationalSeries::from_epseq(m.stored_row(k)).shift_up(k - 1).scale(c);
                tail = tail.add(&term)?;
            }
        }
        let mut den_coeffs = vec![0u64; p + 1];
        den_coeffs[0] = 1;
        den_coeffs[p] = d - 1;
        let geom = RationalSeries::new(Poly::one(d), Poly::new(den_coeffs, d))?;
        Ok(head.add(&tail.mul(&geom)?)?.to_epseq())
    }

    /// Exact matrix product. Rows are computed in the window implied by the
    /// input parameters (`preperiod = max(n_A, n_B)`, `period =
    /// lcm(p_A, p_B)`) and the diagonal periodicity is verified on one
    /// additional full period of rows before canonicalizing.
    pub fn mul(&self, other: &DiagPeriodicMatrix) -> Result<DiagPeriodicMatrix> {
        check_modulus(self.modulus, other.modulus)?;
        let n = self.base_rows.len().max(other.base_rows.len());
        let p = lcm(self.template_rows.len(), other.template_rows.len());
        // Stored row i of the product is (stored row i of A) · σ^{i−1}(B).
        let rows: Vec<EpSeq> = (1..=n + 2 * p)
            .map(|i| Self::row_vec_mul(self.stored_row(i), &other.shifted(i - 1)))
            .collect::<Result<_>>()?;
        for r in 0..p {
            if rows[n + r] != rows[n + p + r] {
                return Err(Error::Internal(
                    "matrix product failed diagonal-periodicity verification".into(),
                ));
            }
        }
        DiagPeriodicMatrix::new(self.modulus, rows[..n].to_vec(), rows[n..n + p].to_vec())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    d: u64,
    base_rows: Vec<String>,
    template_rows: Vec<String>,
}

impl Serialize for DiagPeriodicMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            d: self.modulus,
            base_rows: self.base_rows.iter().map(EpSeq::to_string).collect(),
            template_rows: self.template_rows.iter().map(EpSeq::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiagPeriodicMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        let parse_rows = |rows: &[String]| -> std::result::Result<Vec<EpSeq>, D::Error> {
            rows.iter()
                .map(|r| EpSeq::parse(r, repr.d).map_err(serde::de::Error::custom))
                .collect()
        };
        DiagPeriodicMatrix::new(repr.d, parse_rows(&repr.base_rows)?, parse_rows(&repr.template_rows)?)
            .map_err(serde::de::Error::custom)
    }
}
