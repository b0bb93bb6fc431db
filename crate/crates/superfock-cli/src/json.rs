//! File formats: complex numbers are `[re, im]`, matrices are row-major
//! `{rows, cols, data}`, transforms are `{d, U, V}`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use superfock::{CMatrix, CVector, Complex, OrthogonalTransform, C64};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl JsonMatrix {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let mut data = Vec::with_capacity(m.nrows() * m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                data.push(complex(m[(i, j)]));
            }
        }
        JsonMatrix {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix, CliError> {
        if self.data.len() != self.rows * self.cols {
            return Err(CliError::Input(format!(
                "matrix declares {}x{} but carries {} entries",
                self.rows,
                self.cols,
                self.data.len()
            )));
        }
        Ok(CMatrix::from_fn(self.rows, self.cols, |i, j| {
            let [re, im] = self.data[i * self.cols + j];
            Complex::new(re, im)
        }))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TransformFile {
    pub d: usize,
    #[serde(rename = "U")]
    pub u: JsonMatrix,
    #[serde(rename = "V")]
    pub v: JsonMatrix,
}

impl TransformFile {
    pub fn from_transform(r: &OrthogonalTransform) -> Self {
        TransformFile {
            d: r.dim(),
            u: JsonMatrix::from_matrix(r.u()),
            v: JsonMatrix::from_matrix(r.v()),
        }
    }

    /// The matrices with their shapes checked against `d`; orthogonality is not checked here.
    pub fn matrices(&self) -> Result<(CMatrix, CMatrix), CliError> {
        let (u, v) = (self.u.to_matrix()?, self.v.to_matrix()?);
        for (name, m) in [("U", &u), ("V", &v)] {
            if m.shape() != (self.d, self.d) {
                return Err(CliError::Input(format!(
                    "{name} is {}x{} but d = {}",
                    m.nrows(),
                    m.ncols(),
                    self.d
                )));
            }
        }
        Ok((u, v))
    }
}

pub fn complex(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn vector(v: &CVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| complex(*z)).collect()
}

pub fn read_transform(path: &Path) -> Result<TransformFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("cannot parse {}: {e}", path.display())))
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<(), CliError> {
    let text = serde_json::to_string(&JsonMatrix::from_matrix(m)).expect("matrix serialises");
    std::fs::write(path, text + "\n")
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}
