use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use complement_geometry::algebra::{DivisionRing, ScalarDomain};
use complement_geometry::chart::AffineChart;
use complement_geometry::linalg::Matrix;
use complement_geometry::projective::{coordinate_complement, Subspace};
use complement_geometry::serial::matrix_from_json;

use crate::CliError;

/// The config file as written. Every field is optional; the defaults are
/// `gf(2)`, `n = 4`, `k = 2`, seed 0 and the standard bases.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub seed: Option<u64>,
    /// Rows of a basis of `W`, scalars in the field's JSON encoding.
    pub w_basis: Option<Value>,
    /// Rows of the ordered basis `(b_i)` of `U`.
    pub u_basis: Option<Value>,
}

/// A validated config.
#[derive(Debug, Clone)]
pub struct Settings {
    pub domain: ScalarDomain,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    w_basis: Option<Value>,
    u_basis: Option<Value>,
}

impl Settings {
    pub fn load(path: Option<&Path>, seed: Option<u64>) -> Result<Self, CliError> {
        let raw = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.to_path_buf(), source })?;
                toml::from_str::<RunConfig>(&text)?
            }
            None => RunConfig::default(),
        };
        Self::from_config(raw, seed)
    }

    pub fn from_config(raw: RunConfig, seed: Option<u64>) -> Result<Self, CliError> {
        let domain = ScalarDomain::parse(raw.field.as_deref().unwrap_or("gf(2)"))?;
        let n = raw.n.unwrap_or(4);
        let k = raw.k.unwrap_or(2);
        if k == 0 || k >= n {
            return Err(CliError::Usage(format!("need 0 < k < n, got n = {n}, k = {k}")));
        }
        Ok(Self { domain, n, k, seed: seed.or(raw.seed).unwrap_or(0), w_basis: raw.w_basis, u_basis: raw.u_basis })
    }

    pub fn chart<R: DivisionRing>(&self, ring: R) -> Result<AffineChart<R>, CliError> {
        let (n, k) = (self.n, self.k);
        let read = |v: &Value, rows: usize, what: &str| -> Result<Matrix<R>, CliError> {
            let m = matrix_from_json(&ring, v, Some(n))?;
            if m.rows() != rows {
                return Err(CliError::Usage(format!("{what} needs {rows} rows of length {n}, got {}", m.rows())));
            }
            Ok(m)
        };
        let chart = match (&self.w_basis, &self.u_basis) {
            (None, None) => AffineChart::standard(ring.clone(), n, k)?,
            (Some(w), None) => {
                let w = read(w, k, "w_basis")?;
                let u = coordinate_complement(&Subspace::span(&w)).basis().clone();
                AffineChart::new(w, u)?
            }
            (Some(w), Some(u)) => AffineChart::new(read(w, k, "w_basis")?, read(u, n - k, "u_basis")?)?,
            (None, Some(_)) => return Err(CliError::Usage("u_basis given without w_basis".into())),
        };
        Ok(chart)
    }
}
