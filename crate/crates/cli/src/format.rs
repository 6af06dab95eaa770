//! The JSON algebra file: structure constants as sparse triples with exact
//! fraction strings.

use hopfcyc_core::hopf::{Algebra, Hopf};
use hopfcyc_core::Scalar;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub labels: Vec<String>,
    /// Index of the unit; the basis must start with it.
    pub unit: usize,
    /// `[i, j, k, c]`: `e_i e_j ∋ c e_k`.
    pub mult: Vec<(usize, usize, usize, String)>,
    /// `[i, j, k, c]`: `Δ(e_i) ∋ c e_j ⊗ e_k`.
    pub comult: Vec<(usize, usize, usize, String)>,
    pub counit: Vec<String>,
    /// `[i, j, c]`: `S(e_j) ∋ c e_i`.
    pub antipode: Vec<(usize, usize, String)>,
}

fn scalar(s: &str, what: &str) -> Result<Scalar, CliError> {
    s.parse::<Scalar>()
        .map_err(|e| CliError::Parse(format!("{what}: `{s}`: {e}")))
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("algebra files serialize");
        s.push('\n');
        s
    }

    pub fn from_hopf(h: &Hopf) -> AlgebraFile {
        let alg = h.algebra();
        let s = h.antipode_matrix();
        let mut antipode = s.triplets();
        antipode.sort_by_key(|&(i, j, _)| (j, i));
        AlgebraFile {
            dim: h.dim(),
            labels: alg.labels().to_vec(),
            unit: 0,
            mult: alg
                .mult_entries()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, c.to_string()))
                .collect(),
            comult: h
                .comult_entries()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, c.to_string()))
                .collect(),
            counit: h.counit_values().iter().map(Scalar::to_string).collect(),
            antipode: antipode
                .into_iter()
                .map(|(i, j, c)| (i, j, c.to_string()))
                .collect(),
        }
    }

    /// Builds the presentation; shapes are checked here, axioms by
    /// [`Hopf::validate`].
    pub fn to_hopf(&self) -> Result<Hopf, CliError> {
        if self.labels.len() != self.dim {
            return Err(CliError::Parse(format!(
                "{} labels for dimension {}",
                self.labels.len(),
                self.dim
            )));
        }
        if self.unit != 0 {
            return Err(CliError::Parse(format!(
                "unit must be basis element 0, found {}",
                self.unit
            )));
        }
        let mult = self
            .mult
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, scalar(c, "mult")?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let comult = self
            .comult
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, scalar(c, "comult")?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let counit = self
            .counit
            .iter()
            .map(|c| scalar(c, "counit"))
            .collect::<Result<Vec<_>, CliError>>()?;
        let antipode = self
            .antipode
            .iter()
            .map(|(i, j, c)| Ok((*i, *j, scalar(c, "antipode")?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let alg = Algebra::new(self.labels.clone(), mult).map_err(|e| CliError::Parse(e.to_string()))?;
        Hopf::new(alg, comult, counit, antipode).map_err(|e| CliError::Parse(e.to_string()))
    }
}
