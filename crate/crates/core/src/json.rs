//! JSON wire formats: tensors as `{"n", "slots", "data"}` with data stored
//! as `[re, im]` pairs in row-major order, curvature tensors carrying their
//! Levi form, (p,q)-forms carrying their degrees, and spectra as eigenvalue
//! lists with eigenvector tensors. Serialization uses shortest round-trip
//! float formatting, so finite doubles survive a write/read cycle bit for
//! bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curvature::{CurvatureError, CurvatureSpectrum, CurvatureTensor};
use crate::forms::{FormError, PQForm};
use crate::levi::{LeviError, LeviForm};
use crate::tensor::{IndexSlot, MultiTensor, SlotKind, TensorError, Variance};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("unknown slot kind `{0}`; expected \"holo\" or \"anti\"")]
    BadKind(String),
    #[error("unknown variance `{0}`; expected \"up\" or \"down\"")]
    BadVariance(String),
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Levi(#[from] LeviError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Form(#[from] FormError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlotDto {
    pub kind: String,
    pub variance: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TensorDto {
    pub n: usize,
    pub slots: Vec<SlotDto>,
    pub data: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurvatureDto {
    pub n: usize,
    pub slots: Vec<SlotDto>,
    pub data: Vec<[f64; 2]>,
    pub levi: TensorDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PQFormDto {
    pub n: usize,
    pub slots: Vec<SlotDto>,
    pub data: Vec<[f64; 2]>,
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumDto {
    pub lambdas: Vec<f64>,
    pub eigvecs: Vec<TensorDto>,
}

fn slot_to_dto(slot: &IndexSlot) -> SlotDto {
    SlotDto {
        kind: match slot.kind {
            SlotKind::Holomorphic => "holo".to_string(),
            SlotKind::Antiholomorphic => "anti".to_string(),
        },
        variance: match slot.variance {
            Variance::Upper => "up".to_string(),
            Variance::Lower => "down".to_string(),
        },
    }
}

fn dto_to_slot(dto: &SlotDto) -> Result<IndexSlot, JsonError> {
    let kind = match dto.kind.as_str() {
        "holo" => SlotKind::Holomorphic,
        "anti" => SlotKind::Antiholomorphic,
        other => return Err(JsonError::BadKind(other.to_string())),
    };
    let variance = match dto.variance.as_str() {
        "up" => Variance::Upper,
        "down" => Variance::Lower,
        other => return Err(JsonError::BadVariance(other.to_string())),
    };
    Ok(IndexSlot::new(kind, variance))
}

pub fn tensor_to_dto(t: &MultiTensor) -> TensorDto {
    TensorDto {
        n: t.n(),
        slots: t.slots().iter().map(slot_to_dto).collect(),
        data: t.data().iter().map(|z| [z.re, z.im]).collect(),
    }
}

pub fn dto_to_tensor(dto: &TensorDto) -> Result<MultiTensor, JsonError> {
    let slots = dto.slots.iter().map(dto_to_slot).collect::<Result<Vec<_>, _>>()?;
    let data = dto.data.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    Ok(MultiTensor::new(dto.n, slots, data)?)
}

pub fn curvature_to_dto(r: &CurvatureTensor, h: &LeviForm) -> CurvatureDto {
    let t = tensor_to_dto(r.tensor());
    CurvatureDto {
        n: t.n,
        slots: t.slots,
        data: t.data,
        levi: tensor_to_dto(&h.metric_tensor()),
    }
}

pub fn dto_to_curvature(
    dto: &CurvatureDto,
    tol: f64,
) -> Result<(CurvatureTensor, LeviForm), JsonError> {
    let tensor = dto_to_tensor(&TensorDto {
        n: dto.n,
        slots: dto.slots.clone(),
        data: dto.data.clone(),
    })?;
    let levi_tensor = dto_to_tensor(&dto.levi)?;
    let h = LeviForm::from_matrix(dto.levi.n, levi_tensor.data(), tol.max(1e-9))?;
    let r = CurvatureTensor::new(tensor, tol)?;
    Ok((r, h))
}

pub fn pqform_to_dto(w: &PQForm) -> PQFormDto {
    let t = tensor_to_dto(w.coeffs());
    PQFormDto { n: t.n, slots: t.slots, data: t.data, p: w.p(), q: w.q() }
}

pub fn dto_to_pqform(dto: &PQFormDto, tol: f64) -> Result<PQForm, JsonError> {
    let tensor = dto_to_tensor(&TensorDto {
        n: dto.n,
        slots: dto.slots.clone(),
        data: dto.data.clone(),
    })?;
    Ok(PQForm::new(tensor, dto.p, dto.q, tol)?)
}

pub fn spectrum_to_dto(s: &CurvatureSpectrum) -> SpectrumDto {
    SpectrumDto {
        lambdas: s.lambdas.clone(),
        eigvecs: s.eigvecs.iter().map(tensor_to_dto).collect(),
    }
}

pub fn dto_to_spectrum(dto: &SpectrumDto) -> Result<CurvatureSpectrum, JsonError> {
    let eigvecs = dto.eigvecs.iter().map(dto_to_tensor).collect::<Result<Vec<_>, _>>()?;
    Ok(CurvatureSpectrum::new(dto.lambdas.clone(), eigvecs)?)
}
