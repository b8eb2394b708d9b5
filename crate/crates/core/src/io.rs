//! Wire formats.
//!
//! Mass functions travel as JSON with an explicit frame and a focal list;
//! unlisted subsets have mass zero and the empty set is `"elements": []`.
//! Serialization uses shortest round-trip float formatting, so re-parsing an
//! emitted document recovers bit-identical values. Set functions mirror the
//! mass schema with a `family` tag and a dense `values` array in subset-index
//! order (plus `alpha` for the α-families). Evidential matrices use a dense
//! row-major binary layout behind a length-prefixed JSON header, with a CSV
//! export for inspection.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::alpha::{Alpha, AlphaFamily, AlphaSetFunction};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::fusion::{EvidentialMatrix, MatrixKind};
use crate::mass::MassFunction;
use crate::real::Real;
use crate::transforms::{SetFamily, SetFunction};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FocalEntry {
    pub elements: Vec<String>,
    pub mass: f64,
}

/// JSON document for a mass function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassDocument {
    pub frame: Vec<String>,
    pub focal: Vec<FocalEntry>,
}

impl MassDocument {
    pub fn from_mass<T: Real>(m: &MassFunction<T>) -> MassDocument {
        let frame = m.frame();
        let focal = frame
            .subsets()
            .filter(|s| m.value(*s) != T::zero())
            .map(|s| FocalEntry {
                elements: frame
                    .subset_labels(s)
                    .iter()
                    .map(|l| l.to_string())
                    .collect(),
                mass: m.value(s).to_f64_lossy(),
            })
            .collect();
        MassDocument {
            frame: frame.labels().to_vec(),
            focal,
        }
    }

    pub fn to_mass<T: Real>(&self) -> Result<MassFunction<T>> {
        let frame = Frame::new(self.frame.clone())?;
        let assignments: Vec<_> = self
            .focal
            .iter()
            .map(|entry| Ok((frame.subset_of(&entry.elements)?, T::of(entry.mass))))
            .collect::<Result<_>>()?;
        MassFunction::from_assignments(&frame, &assignments)
    }

    /// Rescales the focal masses to sum to one, provided the deviation is at
    /// most `max_dev`. Larger deviations are still a validation error.
    pub fn renormalized(mut self, max_dev: f64) -> Result<MassDocument> {
        let sum: f64 = self.focal.iter().map(|e| e.mass).sum();
        if (sum - 1.0).abs() > max_dev || sum <= 0.0 {
            return Err(Error::MassSumViolation { sum, tol: max_dev });
        }
        for entry in &mut self.focal {
            entry.mass /= sum;
        }
        Ok(self)
    }

    pub fn from_json(json: &str) -> Result<MassDocument> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("mass documents serialize")
    }
}

pub fn mass_to_json<T: Real>(m: &MassFunction<T>) -> String {
    MassDocument::from_mass(m).to_json()
}

pub fn mass_from_json<T: Real>(json: &str) -> Result<MassFunction<T>> {
    MassDocument::from_json(json)?.to_mass()
}

/// JSON document for a set function, α-variants included.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetFunctionDocument {
    pub frame: Vec<String>,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub values: Vec<f64>,
}

impl SetFunctionDocument {
    pub fn from_set_function<T: Real>(f: &SetFunction<T>) -> SetFunctionDocument {
        SetFunctionDocument {
            frame: f.frame().labels().to_vec(),
            family: f.family().name().to_string(),
            alpha: None,
            values: f.values().iter().map(|v| v.to_f64_lossy()).collect(),
        }
    }

    pub fn from_alpha_set_function<T: Real>(f: &AlphaSetFunction<T>) -> SetFunctionDocument {
        SetFunctionDocument {
            frame: f.frame().labels().to_vec(),
            family: f.family().name().to_string(),
            alpha: Some(f.alpha().get().to_f64_lossy()),
            values: f.values().iter().map(|v| v.to_f64_lossy()).collect(),
        }
    }

    pub fn family_kind(&self) -> Result<ParsedFamily> {
        match self.family.as_str() {
            "bel" => Ok(ParsedFamily::Plain(SetFamily::Bel)),
            "pl" => Ok(ParsedFamily::Plain(SetFamily::Pl)),
            "q" => Ok(ParsedFamily::Plain(SetFamily::Q)),
            "b" => Ok(ParsedFamily::Plain(SetFamily::B)),
            "aq" => Ok(ParsedFamily::Alpha(AlphaFamily::Q)),
            "ab" => Ok(ParsedFamily::Alpha(AlphaFamily::B)),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }

    pub fn to_set_function<T: Real>(&self) -> Result<SetFunction<T>> {
        match self.family_kind()? {
            ParsedFamily::Plain(family) => {
                let frame = Frame::new(self.frame.clone())?;
                SetFunction::from_values(
                    &frame,
                    family,
                    self.values.iter().map(|&v| T::of(v)).collect(),
                )
            }
            ParsedFamily::Alpha(_) => Err(Error::Format(
                "document holds an alpha set function; use to_alpha_set_function".into(),
            )),
        }
    }

    pub fn to_alpha_set_function<T: Real>(&self) -> Result<AlphaSetFunction<T>> {
        match self.family_kind()? {
            ParsedFamily::Alpha(family) => {
                let alpha = self
                    .alpha
                    .ok_or_else(|| Error::Format("alpha family without alpha value".into()))?;
                let frame = Frame::new(self.frame.clone())?;
                AlphaSetFunction::from_values(
                    &frame,
                    family,
                    Alpha::new(T::of(alpha))?,
                    self.values.iter().map(|&v| T::of(v)).collect(),
                )
            }
            ParsedFamily::Plain(_) => Err(Error::Format(
                "document holds a plain set function; use to_set_function".into(),
            )),
        }
    }

    pub fn from_json(json: &str) -> Result<SetFunctionDocument> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("set function documents serialize")
    }
}

pub enum ParsedFamily {
    Plain(SetFamily),
    Alpha(AlphaFamily),
}

#[derive(Serialize, Deserialize)]
struct MatrixHeader {
    frame: Vec<String>,
    kind: MatrixKind,
    layout: String,
}

const MATRIX_LAYOUT: &str = "row-major-f64-le";

/// Writes a matrix as a length-prefixed JSON header followed by the dense
/// row-major little-endian `f64` payload.
pub fn write_matrix<T: Real, W: Write>(mut w: W, matrix: &EvidentialMatrix<T>) -> Result<()> {
    let header = serde_json::to_vec(&MatrixHeader {
        frame: matrix.frame().labels().to_vec(),
        kind: matrix.kind(),
        layout: MATRIX_LAYOUT.to_string(),
    })?;
    w.write_all(&(header.len() as u64).to_le_bytes())?;
    w.write_all(&header)?;
    for &entry in matrix.entries() {
        w.write_all(&entry.to_f64_lossy().to_le_bytes())?;
    }
    Ok(())
}

/// Reads a matrix written by [`write_matrix`].
pub fn read_matrix<T: Real, R: Read>(mut r: R) -> Result<EvidentialMatrix<T>> {
    let mut len_bytes = [0u8; 8];
    r.read_exact(&mut len_bytes)?;
    let header_len = u64::from_le_bytes(len_bytes) as usize;
    if header_len > 1 << 20 {
        return Err(Error::Format(format!(
            "implausible matrix header length {header_len}"
        )));
    }
    let mut header_bytes = vec![0u8; header_len];
    r.read_exact(&mut header_bytes)?;
    let header: MatrixHeader = serde_json::from_slice(&header_bytes)?;
    if header.layout != MATRIX_LAYOUT {
        return Err(Error::Format(format!(
            "unsupported matrix layout `{}`",
            header.layout
        )));
    }
    let frame = Frame::new(header.frame)?;
    let n_sub = frame.num_subsets();
    let mut entries = Vec::with_capacity(n_sub * n_sub);
    let mut buf = [0u8; 8];
    for _ in 0..n_sub * n_sub {
        r.read_exact(&mut buf)?;
        entries.push(T::of(f64::from_le_bytes(buf)));
    }
    EvidentialMatrix::from_parts(frame, header.kind, entries)
}

/// CSV rendering of a matrix with subset bit-strings as row and column labels.
pub fn matrix_to_csv<T: Real>(matrix: &EvidentialMatrix<T>) -> String {
    let frame = matrix.frame();
    let n_sub = frame.num_subsets();
    let mut out = String::from("subset");
    for col in frame.subsets() {
        out.push(',');
        out.push_str(&frame.subset_bits(col));
    }
    out.push('\n');
    for row in frame.subsets() {
        out.push_str(&frame.subset_bits(row));
        for col in frame.subsets() {
            out.push(',');
            out.push_str(
                &matrix.entries()[row.index() * n_sub + col.index()]
                    .to_f64_lossy()
                    .to_string(),
            );
        }
        out.push('\n');
    }
    out
}
