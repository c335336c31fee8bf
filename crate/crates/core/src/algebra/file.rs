//! JSON model documents.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis_labels": ["J+", "J0", "J-"],
//!   "structure": [[0, 1, 0, -1, 0], [0, 2, 1, 2, 0], [1, 2, 2, -1, 0]],
//!   "rep": { "matrices": [[[[0,0],[1,0]],[[0,0],[0,0]]], "..."] },
//!   "e0_index": 0,
//!   "mprime": [[[0,0],[0,0],[1,0]]],
//!   "grading": [1],
//!   "measure": { "kind": "fubini-study", "params": { "j": 0.5 }, "domain": "plane" }
//! }
//! ```
//!
//! Indices are 0-based, complex numbers are `[re, im]` pairs. Optional
//! fields: `name`, `params`, `rep.truncated`, `rep.trunc_margin`, `measure`,
//! and `adjoint` (basis index of each element's conjugate transpose).

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::catalog::{catalog_model, CatalogParams};
use super::model::{ModelParts, OrbitModel};
use super::rep::MatrixRep;
use super::spec::{AlgebraElement, CMatrix, LieAlgebraSpec, StructureEntry};
use crate::analysis::{ChartDomain, MeasureKind, MeasureSpec};
use crate::error::{Error, Result};
use crate::scalar::{cplx, Real};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub structure: Vec<(usize, usize, usize, f64, f64)>,
    pub rep: RepFile,
    pub e0_index: usize,
    pub mprime: Vec<Vec<[f64; 2]>>,
    pub grading: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjoint: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepFile {
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(default)]
    pub truncated: bool,
    #[serde(default)]
    pub trunc_margin: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureFile {
    pub kind: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
}

fn pair<R: Real>(c: &[f64; 2]) -> Complex<R> {
    cplx(c[0], c[1])
}

fn unpair<R: Real>(c: &Complex<R>) -> [f64; 2] {
    [c.re.to_f64(), c.im.to_f64()]
}

impl MeasureFile {
    fn to_spec(&self) -> Result<MeasureSpec> {
        let param = |key: &str| {
            self.params
                .get(key)
                .copied()
                .ok_or_else(|| Error::InvalidParameter(format!("measure `{}` needs parameter `{key}`", self.kind)))
        };
        let kind = match self.kind.as_str() {
            "gaussian" => MeasureKind::Gaussian,
            "fubini-study" => MeasureKind::FubiniStudy { j: param("j")? },
            "bergman-disk" => MeasureKind::BergmanDisk { k: param("k")? },
            "none" => MeasureKind::None,
            other => return Err(Error::InvalidParameter(format!("unknown measure kind `{other}`"))),
        };
        let domain = match (self.domain.as_deref(), kind) {
            (Some("disk"), _) | (None, MeasureKind::BergmanDisk { .. }) => {
                ChartDomain::Disk { radius: self.params.get("radius").copied().unwrap_or(1.0) }
            }
            (Some("plane") | None, _) => ChartDomain::Plane,
            (Some(other), _) => return Err(Error::InvalidParameter(format!("unknown chart domain `{other}`"))),
        };
        Ok(MeasureSpec { kind, domain })
    }

    fn from_spec(m: &MeasureSpec) -> Self {
        let mut params = BTreeMap::new();
        match m.kind {
            MeasureKind::FubiniStudy { j } => {
                params.insert("j".to_string(), j);
            }
            MeasureKind::BergmanDisk { k } => {
                params.insert("k".to_string(), k);
            }
            _ => {}
        }
        let domain = match m.domain {
            ChartDomain::Plane => "plane",
            ChartDomain::Disk { radius } => {
                if radius != 1.0 {
                    params.insert("radius".to_string(), radius);
                }
                "disk"
            }
        };
        Self { kind: m.kind_name().to_string(), params, domain: Some(domain.to_string()) }
    }
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model documents always serialize")
    }

    /// Builds and validates the model.
    pub fn into_model<R: Real>(self) -> Result<OrbitModel<R>> {
        if self.basis_labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: self.basis_labels.len() });
        }
        if self.rep.matrices.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: self.rep.matrices.len() });
        }
        let entries =
            self.structure.iter().map(|&(i, j, k, re, im)| StructureEntry::new(i, j, k, cplx(re, im))).collect();
        let spec = LieAlgebraSpec::new(self.basis_labels, entries)?;
        let mut matrices = Vec::with_capacity(self.dim);
        for (idx, rows) in self.rep.matrices.iter().enumerate() {
            let d = rows.len();
            if let Some(bad) = rows.iter().find(|r| r.len() != d) {
                return Err(Error::Structural(format!(
                    "matrix {idx} is not square: row of length {} in a {d}-row matrix",
                    bad.len()
                )));
            }
            matrices.push(CMatrix::<R>::from_fn(d, d, |r, c| pair(&rows[r][c])));
        }
        let rep = MatrixRep::new(matrices, self.rep.truncated, self.rep.trunc_margin)?;
        let mprime = self.mprime.iter().map(|v| AlgebraElement::new(v.iter().map(pair).collect())).collect();
        let measure = match &self.measure {
            Some(m) => Some(m.to_spec()?).filter(|s| s.kind != MeasureKind::None),
            None => None,
        };
        OrbitModel::new(ModelParts {
            name: self.name.unwrap_or_else(|| "file".to_string()),
            params: self.params,
            spec,
            rep,
            e0_index: self.e0_index,
            mprime,
            grading: self.grading,
            measure,
            adjoint: self.adjoint,
            degree_bound: None,
        })
    }

    pub fn from_model<R: Real>(model: &OrbitModel<R>) -> Self {
        let spec = model.spec();
        Self {
            name: Some(model.name().to_string()),
            params: model.params().clone(),
            dim: spec.dim(),
            basis_labels: spec.labels().to_vec(),
            structure: spec.canonical_entries().map(|e| (e.i, e.j, e.k, e.c.re.to_f64(), e.c.im.to_f64())).collect(),
            rep: RepFile {
                matrices: model
                    .rep()
                    .matrices()
                    .iter()
                    .map(|m| (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| unpair(&m[(r, c)])).collect()).collect())
                    .collect(),
                truncated: model.rep().truncated(),
                trunc_margin: model.rep().trunc_margin(),
            },
            e0_index: model.e0_index(),
            mprime: model.mprime().iter().map(|x| x.coeffs().iter().map(unpair).collect()).collect(),
            grading: model.grading().to_vec(),
            measure: model.measure().map(MeasureFile::from_spec),
            adjoint: model.adjoint().map(<[usize]>::to_vec),
        }
    }
}

/// Where a model comes from.
#[derive(Clone, Debug)]
pub enum ModelSource<'a> {
    Catalog { name: &'a str, params: CatalogParams },
    File(&'a Path),
    Document(&'a str),
}

pub fn load_model<R: Real>(source: ModelSource<'_>) -> Result<OrbitModel<R>> {
    match source {
        ModelSource::Catalog { name, params } => catalog_model(name, &params),
        ModelSource::File(path) => ModelFile::read(path)?.into_model(),
        ModelSource::Document(text) => ModelFile::parse(text)?.into_model(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn catalog_models_survive_a_file_round_trip() {
        for m in [catalog::su2::<f64>(1.5).unwrap(), catalog::heisenberg(6, 2).unwrap()] {
            let doc = ModelFile::from_model(&m).to_json();
            let back: OrbitModel<f64> = load_model(ModelSource::Document(&doc)).unwrap();
            assert_eq!(back.d(), m.d());
            assert_eq!(back.measure(), m.measure());
            assert_eq!(back.rep().trunc_margin(), m.rep().trunc_margin());
            assert_eq!(ModelFile::from_model(&back), ModelFile::from_model(&m));
        }
    }

    #[test]
    fn broken_commutators_fail_validation() {
        let m = catalog::su2::<f64>(1.0).unwrap();
        let mut f = ModelFile::from_model(&m);
        f.rep.matrices[1][0][0] = [3.0, 0.0];
        assert!(matches!(f.into_model::<f64>(), Err(Error::Validation(_))));
    }

    #[test]
    fn non_extremal_e0_is_rejected() {
        let m = catalog::su2::<f64>(1.0).unwrap();
        let mut f = ModelFile::from_model(&m);
        f.e0_index = 1;
        assert!(matches!(f.into_model::<f64>(), Err(Error::Validation(_))));
    }

    #[test]
    fn wrong_grading_is_rejected() {
        let m = catalog::su3::<f64>(1, 1).unwrap();
        let mut f = ModelFile::from_model(&m);
        f.grading = vec![1, 1, 1];
        assert!(matches!(f.into_model::<f64>(), Err(Error::Validation(_))));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(load_model::<f64>(ModelSource::Document("{\"dim\": ")), Err(Error::Parse(_))));
    }

    #[test]
    fn measure_parameters_are_required() {
        let m = MeasureFile { kind: "fubini-study".into(), params: BTreeMap::new(), domain: None };
        assert!(m.to_spec().is_err());
    }
}
