//! Instance files and random instance generation.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gradedlin::x_monomials;
use crate::ring::{Field, FieldSpec, Poly, Ring, DEFAULT_PRIME};
use crate::syzygy::GradedMatrix;
use crate::tower::Presentation;

pub const FIELD_ENV: &str = "REES_FIELD_P";
const MAX_REJECTIONS: usize = 1000;

/// On-disk form of a presentation matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub n: usize,
    pub col_degrees: Vec<i64>,
    pub phi_rows: Vec<Vec<String>>,
}

/// The prime used when an instance names no field: `REES_FIELD_P` if set.
pub fn default_field() -> Result<FieldSpec> {
    match std::env::var(FIELD_ENV) {
        Ok(v) => {
            let p: u32 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidField(format!("{FIELD_ENV}={v} is not a prime")))?;
            crate::ring::PrimeField::new(p as u64)?;
            Ok(FieldSpec::Prime { p })
        }
        Err(_) => Ok(FieldSpec::Prime { p: DEFAULT_PRIME }),
    }
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let inst: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("instance file: {e}")))?;
        if inst.phi_rows.len() != inst.n {
            return Err(Error::DimensionMismatch(format!(
                "n = {} but phi has {} rows",
                inst.n,
                inst.phi_rows.len()
            )));
        }
        Ok(inst)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        match self.field {
            Some(spec) => Ok(spec),
            None => default_field(),
        }
    }

    /// Parses and validates the matrix over `field`.
    pub fn presentation<F: Field>(&self, field: &F) -> Result<Presentation<F>> {
        Presentation::from_rows(field, &self.phi_rows, &self.col_degrees)
    }

    pub fn from_presentation<F: Field>(p: &Presentation<F>) -> Self {
        InstanceFile {
            field: Some(p.field.spec()),
            n: p.n,
            col_degrees: p.col_degrees.clone(),
            phi_rows: p.phi.format(),
        }
    }
}

fn random_form<F: Field>(field: &F, deg: i64, rng: &mut ChaCha8Rng) -> Poly<F> {
    Poly::from_terms(
        field,
        x_monomials(deg)
            .into_iter()
            .map(|m| (m, field.random(rng)))
            .collect::<Vec<_>>(),
    )
}

/// Uniformly random presentation with the given column degrees, resampled
/// until the maximal minors have no common factor.
pub fn random_instance<F: Field>(
    field: &F,
    n: usize,
    col_degrees: &[i64],
    seed: u64,
) -> Result<InstanceFile> {
    if n < 3 {
        return Err(Error::Invalid(format!("need n >= 3, got {n}")));
    }
    if col_degrees.len() + 1 != n {
        return Err(Error::DimensionMismatch(format!(
            "need n-1 = {} column degrees, got {}",
            n - 1,
            col_degrees.len()
        )));
    }
    if col_degrees.iter().any(|&d| d < 1) {
        return Err(Error::Degree("column degrees must be >= 1".into()));
    }
    if col_degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Degree("column degrees must be nondecreasing".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REJECTIONS {
        let entries: Vec<Vec<Poly<F>>> = (0..n)
            .map(|_| col_degrees.iter().map(|&d| random_form(field, d, &mut rng)).collect())
            .collect();
        let phi = GradedMatrix::new(field, entries, col_degrees.to_vec(), vec![0; n])?;
        if let Ok(p) = Presentation::new(phi) {
            return Ok(InstanceFile::from_presentation(&p));
        }
    }
    Err(Error::Invalid(format!(
        "no height-two matrix after {MAX_REJECTIONS} samples"
    )))
}

/// Formats `p` with its outer variables renamed by `names` (index 0 is the
/// first outer variable).
pub fn format_renamed<F: Field>(p: &Poly<F>, names: &[String]) -> String {
    let ring = Ring::S { n: names.len() };
    let mut s = ring.format(p);
    for k in (1..=names.len()).rev() {
        s = s.replace(&format!("T{k}"), &names[k - 1]);
    }
    s
}
