//! Resolving the algebra, modular pairs, twisting characters and
//! automorphisms named on the command line.

use std::path::Path;

use hopfcyc_core::hopf::builtins::{self, Builtin};
use hopfcyc_core::hopf::{Character, Hopf, PairReport};
use hopfcyc_core::linalg::{SparseMatrix, SparseVec};
use hopfcyc_core::omega::{Calculus, TwistContext};
use hopfcyc_core::Scalar;

use crate::error::CliError;
use crate::format::AlgebraFile;
use crate::store::DiskStore;

pub struct Input {
    /// How the algebra was named (`builtin:NAME` or the file path).
    pub label: String,
    pub hopf: Hopf,
    pub file: AlgebraFile,
    builtin: Option<Builtin>,
}

impl Input {
    pub fn load(path: Option<&Path>, builtin: Option<&str>) -> Result<Input, CliError> {
        match (path, builtin) {
            (Some(_), Some(_)) => Err(CliError::Usage("give either a file or --builtin, not both".into())),
            (None, None) => Err(CliError::Usage("no algebra given: pass a file or --builtin NAME".into())),
            (None, Some(name)) => {
                let b = builtins::builtin(name).ok_or_else(|| {
                    CliError::Usage(format!(
                        "unknown builtin '{name}' (expected one of {})",
                        builtins::NAMES.join(", ")
                    ))
                })?;
                Ok(Input {
                    label: format!("builtin:{name}"),
                    file: AlgebraFile::from_hopf(&b.hopf),
                    hopf: b.hopf.clone(),
                    builtin: Some(b),
                })
            }
            (Some(p), None) => {
                let text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                    path: p.display().to_string(),
                    source,
                })?;
                let file = AlgebraFile::parse(&text)?;
                Ok(Input {
                    label: p.display().to_string(),
                    hopf: file.to_hopf()?,
                    file,
                    builtin: None,
                })
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.hopf.dim()
    }

    /// Refuses algebras that fail an axiom; `validate` shows the details.
    pub fn require_valid(&self) -> Result<(), CliError> {
        let r = self.hopf.validate();
        let bad: Vec<String> = r
            .failures()
            .map(|c| format!("{} (witness {:?})", c.name, c.witness.as_deref().unwrap_or(&[])))
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(CliError::Math(format!("not a Hopf algebra: {}", bad.join("; "))))
        }
    }

    /// A calculus backed by the disk cache when one is configured.
    pub fn calculus(&self) -> Calculus {
        match DiskStore::from_env(&self.file) {
            Some(store) => Calculus::with_store(self.hopf.clone(), Box::new(store)),
            None => Calculus::new(self.hopf.clone()),
        }
    }

    fn coefficients(&self, spec: &str) -> Option<Result<Vec<Scalar>, CliError>> {
        if !spec.contains(',') && self.dim() > 1 {
            return None;
        }
        let parsed: Result<Vec<Scalar>, _> = spec.split(',').map(|s| s.trim().parse::<Scalar>()).collect();
        Some(match parsed {
            Ok(v) if v.len() == self.dim() => Ok(v),
            Ok(v) => Err(CliError::Usage(format!(
                "'{spec}' has {} coefficients, expected {}",
                v.len(),
                self.dim()
            ))),
            Err(e) => Err(CliError::Usage(format!("'{spec}': {e}"))),
        })
    }

    /// Character values: `eps`, a named character of the builtin, or a
    /// comma-separated coefficient list.
    pub fn character_values(&self, spec: &str) -> Result<Vec<Scalar>, CliError> {
        if spec == "eps" {
            return Ok(self.hopf.counit_values().to_vec());
        }
        if let Some(v) = self.builtin.as_ref().and_then(|b| b.character(spec)) {
            return Ok(v.to_vec());
        }
        self.coefficients(spec)
            .unwrap_or_else(|| Err(CliError::Usage(format!("unknown character '{spec}'"))))
    }

    pub fn character(&self, spec: &str) -> Result<Character, CliError> {
        let v = self.character_values(spec)?;
        Character::new(self.hopf.algebra(), v).map_err(|e| CliError::Math(format!("'{spec}': {e}")))
    }

    /// An element: `1`, a named group-like of the builtin, or coefficients.
    pub fn element(&self, spec: &str) -> Result<SparseVec, CliError> {
        if spec == "1" && self.dim() > 1 {
            return Ok(SparseVec::unit(0));
        }
        if let Some(v) = self.builtin.as_ref().and_then(|b| b.grouplike(spec)) {
            return Ok(v.clone());
        }
        match self.coefficients(spec) {
            Some(v) => Ok(SparseVec::from_dense(&v?)),
            None => Err(CliError::Usage(format!("unknown element '{spec}'"))),
        }
    }

    /// `DELTA-SIGMA` with names (`eps-g`) or `DELTA;SIGMA` with either side a
    /// name or a coefficient list (`1,-1;1,0`).
    pub fn pair(&self, spec: &str) -> Result<Pair, CliError> {
        let (d, s) = spec
            .split_once(';')
            .or_else(|| spec.split_once('-'))
            .ok_or_else(|| CliError::Usage(format!("pair '{spec}' is not of the form DELTA-SIGMA or DELTA;SIGMA")))?;
        let delta = self.character_values(d)?;
        let sigma = self.element(s)?;
        let report = self.hopf.check_modular_pair(&delta, &sigma);
        Ok(Pair {
            spec: spec.into(),
            delta,
            sigma,
            report,
        })
    }

    pub fn twist(&self, spec: &TwistSpec, pair: Option<&Pair>) -> Result<Option<(String, TwistContext)>, CliError> {
        match spec {
            TwistSpec::None => Ok(None),
            TwistSpec::Auto => {
                let pair = pair.ok_or_else(|| CliError::Usage("--twist auto needs --pair".into()))?;
                let xi = pair.xi(&self.hopf)?;
                Ok(Some(("delta o S".into(), TwistContext::new(&self.hopf, xi))))
            }
            TwistSpec::Character(name) => {
                let xi = self.character(name)?;
                Ok(Some((name.clone(), TwistContext::new(&self.hopf, xi))))
            }
        }
    }

    /// The automorphism for the twisted cyclic module.
    pub fn automorphism(&self, spec: &str) -> Result<SparseMatrix, CliError> {
        if spec == "id" {
            return Ok(SparseMatrix::identity(self.dim()));
        }
        let chars = spec
            .strip_prefix("twist:")
            .and_then(|s| s.split_once(';'))
            .ok_or_else(|| CliError::Usage(format!("automorphism '{spec}' is not 'id' or 'twist:ALPHA;BETA'")))?;
        let alpha = self.character(chars.0)?;
        let beta = self.character(chars.1)?;
        self.hopf
            .two_sided_twist(&alpha, &beta)
            .map_err(|e| CliError::Math(e.to_string()))
    }
}

pub struct Pair {
    pub spec: String,
    pub delta: Vec<Scalar>,
    pub sigma: SparseVec,
    pub report: PairReport,
}

impl Pair {
    pub fn delta(&self, hopf: &Hopf) -> Result<Character, CliError> {
        Character::new(hopf.algebra(), self.delta.clone())
            .map_err(|e| CliError::Math(format!("δ of pair '{}': {e}", self.spec)))
    }

    /// `ξ = δ ∘ S`.
    pub fn xi(&self, hopf: &Hopf) -> Result<Character, CliError> {
        Ok(hopf.character_inverse(&self.delta(hopf)?))
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let r = &self.report;
        [
            (r.delta_is_character, "delta is not a character"),
            (r.sigma_grouplike, "sigma is not group-like"),
            (r.delta_of_sigma_is_one, "delta(sigma) != 1"),
            (r.involution, "S_delta^2 != Ad sigma"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, what)| what)
        .collect()
    }

    pub fn require_valid(&self) -> Result<(), CliError> {
        if self.report.is_valid() {
            Ok(())
        } else {
            Err(CliError::Math(format!(
                "invalid modular pair '{}': {}",
                self.spec,
                self.failures().join("; ")
            )))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistSpec {
    None,
    /// `ξ = δ ∘ S` of the pair.
    Auto,
    Character(String),
}

impl std::str::FromStr for TwistSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "none" => TwistSpec::None,
            "auto" => TwistSpec::Auto,
            "" => return Err("empty twist".into()),
            other => TwistSpec::Character(other.into()),
        })
    }
}
