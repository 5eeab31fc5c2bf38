//! On-disk formats: channel files, Choi files and CSV number formatting.
//!
//! Complex entries are `[re, im]` pairs and matrices are arrays of rows.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use covchan_core::channel::{Channel, ChoiMatrix};
use covchan_core::{CMatrix, C64};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_json(m: &CMatrix) -> JsonMatrix {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

pub fn matrix_from_json(rows: &JsonMatrix, dim: usize) -> Result<CMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        bail!("expected a {dim}x{dim} matrix");
    }
    let mut data = Vec::with_capacity(dim * dim);
    for row in rows {
        for &[re, im] in row {
            if !re.is_finite() || !im.is_finite() {
                bail!("matrix entries must be finite");
            }
            data.push(C64::new(re, im));
        }
    }
    Ok(CMatrix::new(dim, dim, data)?)
}

/// A channel as Σ A ρ A† − Σ B ρ B†; `anti_kraus` is omitted when empty.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChannelFile {
    pub dim: usize,
    #[serde(default)]
    pub label: String,
    pub kraus: Vec<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anti_kraus: Vec<JsonMatrix>,
    #[serde(default)]
    pub meta: Map<String, Value>,
}

impl ChannelFile {
    pub fn from_channel(ch: &Channel, meta: Map<String, Value>) -> Self {
        Self {
            dim: ch.dim(),
            label: ch.label().to_string(),
            kraus: ch.kraus().iter().map(matrix_to_json).collect(),
            anti_kraus: ch.anti_kraus().iter().map(matrix_to_json).collect(),
            meta,
        }
    }

    pub fn to_channel(&self) -> Result<Channel> {
        if self.kraus.is_empty() {
            bail!("a channel file needs at least one Kraus operator");
        }
        let kraus = self.kraus.iter().map(|m| matrix_from_json(m, self.dim)).collect::<Result<Vec<_>>>()?;
        let anti = self.anti_kraus.iter().map(|m| matrix_from_json(m, self.dim)).collect::<Result<Vec<_>>>()?;
        Ok(Channel::signed(kraus, anti)?.with_label(self.label.clone()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing channel file {}", path.display()))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }
}

/// A Choi matrix J = Σ E(E_ij) ⊗ E_ij given directly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChoiFile {
    pub dim: usize,
    pub choi: JsonMatrix,
}

impl ChoiFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing Choi file {}", path.display()))
    }

    pub fn to_choi(&self) -> Result<ChoiMatrix> {
        Ok(ChoiMatrix::new(matrix_from_json(&self.choi, self.dim * self.dim)?)?)
    }
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

/// Twelve significant digits in scientific notation.
pub fn csv_number(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    format!("{x:.11e}")
}
