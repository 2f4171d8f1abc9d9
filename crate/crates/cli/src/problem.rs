//! Problem definition files.

use std::path::Path;

use diophant::{parse_q, ApproximationProblem, Error};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// `Θ` (`n` rows of `m` entries) and `α`, all as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub theta: Vec<Vec<String>>,
    #[serde(default)]
    pub alpha: Option<Vec<String>>,
    #[serde(default)]
    pub labels: Vec<String>,
    /// Which real numbers the rationals truncate, and at what precision.
    #[serde(default)]
    pub provenance: Option<String>,
}

impl ProblemFile {
    pub fn to_problem(&self) -> Result<ApproximationProblem, Error> {
        let rows = self
            .theta
            .iter()
            .map(|row| row.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let n = rows.len();
        let alpha = match &self.alpha {
            Some(a) => a.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>, _>>()?,
            None => vec![diophant::qi(0); n],
        };
        ApproximationProblem::from_rows(rows, alpha)
    }
}

/// A parsed problem with the SHA-256 of the file bytes.
pub struct LoadedProblem {
    pub file: ProblemFile,
    pub problem: ApproximationProblem,
    pub sha256: String,
}

pub fn load(path: &Path) -> Result<LoadedProblem, Error> {
    let bytes = std::fs::read(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: ProblemFile =
        serde_json::from_slice(&bytes).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    let problem = file.to_problem()?;
    Ok(LoadedProblem {
        file,
        problem,
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_defaults_to_zero() {
        let f: ProblemFile = serde_json::from_str(r#"{"theta": [["1/3", "2/5"]]}"#).unwrap();
        let p = f.to_problem().unwrap();
        assert_eq!((p.n(), p.m()), (1, 2));
        assert_eq!(p.alpha(), &[diophant::qi(0)]);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let f: ProblemFile = serde_json::from_str(r#"{"theta": [["1/3", "2/5"], ["1/7"]]}"#).unwrap();
        assert!(f.to_problem().is_err());
        assert!(serde_json::from_str::<ProblemFile>(r#"{"theta": [["1"]], "extra": 1}"#).is_err());
    }
}
