//! JSON model files.
//!
//! ```json
//! {"n_states": 1, "n_actions": 1, "gamma": 0.9,
//!  "rewards": [[1.0]], "transitions": [[[1.0]]]}
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{MdpError, Result};
use crate::mdp::Mdp;
use crate::scalar::Scalar;

/// On-disk MDP representation; always `f64`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MdpFile {
    pub n_states: usize,
    pub n_actions: usize,
    pub gamma: f64,
    pub rewards: Vec<Vec<f64>>,
    pub transitions: Vec<Vec<Vec<f64>>>,
}

impl MdpFile {
    pub fn from_mdp<T: Scalar>(mdp: &Mdp<T>) -> Self {
        let (n, m) = (mdp.n_states(), mdp.n_actions());
        Self {
            n_states: n,
            n_actions: m,
            gamma: mdp.gamma().as_f64(),
            rewards: (0..n)
                .map(|s| (0..m).map(|a| mdp.reward(s, a).as_f64()).collect())
                .collect(),
            transitions: (0..n)
                .map(|s| {
                    (0..m)
                        .map(|a| mdp.transition_row(s, a).iter().map(|p| p.as_f64()).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// Validates the declared sizes and every model invariant.
    pub fn into_mdp<T: Scalar>(self) -> Result<Mdp<T>> {
        if self.rewards.len() != self.n_states {
            return Err(MdpError::DimensionMismatch {
                what: "rewards rows vs n_states",
                expected: self.n_states,
                got: self.rewards.len(),
            });
        }
        if let Some(row) = self.rewards.iter().find(|r| r.len() != self.n_actions) {
            return Err(MdpError::DimensionMismatch {
                what: "rewards columns vs n_actions",
                expected: self.n_actions,
                got: row.len(),
            });
        }
        let conv = |x: f64| T::of(x);
        Mdp::new(
            conv(self.gamma),
            self.rewards
                .into_iter()
                .map(|r| r.into_iter().map(conv).collect())
                .collect(),
            self.transitions
                .into_iter()
                .map(|per_s| {
                    per_s
                        .into_iter()
                        .map(|row| row.into_iter().map(conv).collect())
                        .collect()
                })
                .collect(),
        )
    }
}

pub fn mdp_from_json<T: Scalar>(text: &str) -> Result<Mdp<T>> {
    serde_json::from_str::<MdpFile>(text)?.into_mdp()
}

pub fn mdp_to_json<T: Scalar>(mdp: &Mdp<T>) -> String {
    serde_json::to_string_pretty(&MdpFile::from_mdp(mdp)).expect("MdpFile serializes")
}

pub fn load_mdp<T: Scalar>(path: impl AsRef<Path>) -> Result<Mdp<T>> {
    mdp_from_json(&fs::read_to_string(path)?)
}

pub fn save_mdp<T: Scalar>(mdp: &Mdp<T>, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, mdp_to_json(mdp))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_model() {
        let text = r#"{"n_states":1,"n_actions":1,"gamma":0.9,"rewards":[[1.0]],"transitions":[[[1.0]]]}"#;
        let mdp: Mdp<f64> = mdp_from_json(text).unwrap();
        assert_eq!(mdp.reward(0, 0), 1.0);
        let back: Mdp<f64> = mdp_from_json(&mdp_to_json(&mdp)).unwrap();
        assert_eq!(back, mdp);
    }

    #[test]
    fn declared_sizes_are_checked() {
        let text = r#"{"n_states":2,"n_actions":1,"gamma":0.9,"rewards":[[1.0]],"transitions":[[[1.0]]]}"#;
        assert!(matches!(
            mdp_from_json::<f64>(text),
            Err(MdpError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn invariant_names_surface_in_errors() {
        let text = r#"{"n_states":1,"n_actions":1,"gamma":0.9,"rewards":[[1.0]],"transitions":[[[0.9]]]}"#;
        let err = mdp_from_json::<f64>(text).unwrap_err().to_string();
        assert!(err.contains("stochasticity"), "{err}");
        assert!(mdp_from_json::<f64>("{not json").is_err());
    }
}
