//! JSON models for the crate's external interfaces.
//!
//! Integers round-trip exactly: entries serialize as JSON numbers backed by
//! serde_json's arbitrary-precision representation, never through floats.
//! Curve classes appear as `{"label", "homology", "separating"}` objects;
//! twist letters name standard generators (`"a1"`, `"b3"`) by string and
//! custom curves by full object; monodromies are
//! `{"genus", "word"?, "matrix"?}` with the word/matrix cross-check applied
//! on load.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{
    pinch_homology_map, BlockParameters, ExtensionCertificate, ExtensionResult,
};
use crate::mapping_class::{MappingClass, TwistLetter};
use crate::matrix::Matrix;
use crate::surface::{CurveClass, Surface};

/// A `BigInt` that serializes as an exact JSON number.
#[derive(Clone, Debug)]
pub(crate) struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&self.0.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string())
            .map(JsonInt)
            .map_err(|_| de::Error::custom(format!("expected an integer, got {n}")))
    }
}

/// `#[serde(with = "jsonio::bigint_vec")]` helper for `Vec<BigInt>` fields.
pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[BigInt],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().cloned().map(JsonInt))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<JsonInt>::deserialize(d)?
            .into_iter()
            .map(|x| x.0)
            .collect())
    }
}

impl Serialize for Matrix<BigInt> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(
            self.to_rows()
                .into_iter()
                .map(|row| row.into_iter().map(JsonInt).collect::<Vec<_>>()),
        )
    }
}

impl<'de> Deserialize<'de> for Matrix<BigInt> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<JsonInt>>::deserialize(d)?;
        Matrix::from_rows(
            rows.into_iter()
                .map(|row| row.into_iter().map(|x| x.0).collect())
                .collect(),
        )
        .map_err(de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Curve classes
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CurveOut<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<&'a str>,
    homology: Vec<JsonInt>,
    separating: bool,
}

impl<'a> From<&'a CurveClass> for CurveOut<'a> {
    fn from(curve: &'a CurveClass) -> Self {
        CurveOut {
            label: curve.label(),
            homology: curve.homology().iter().cloned().map(JsonInt).collect(),
            separating: curve.is_separating(),
        }
    }
}

impl Serialize for CurveClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveOut::from(self).serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveData {
    #[serde(default)]
    label: Option<String>,
    homology: Vec<JsonInt>,
    #[serde(default)]
    separating: bool,
}

impl CurveData {
    fn into_class_on(self, surface: Surface) -> Result<CurveClass> {
        CurveClass::from_parts(
            surface,
            self.homology.into_iter().map(|x| x.0).collect(),
            self.separating,
            self.label,
        )
    }

    fn into_class(self) -> Result<CurveClass> {
        if self.homology.len() % 2 != 0 || self.homology.is_empty() {
            return Err(Error::HomologyLength {
                expected: self.homology.len() + 1,
                found: self.homology.len(),
            });
        }
        let surface = Surface::new(self.homology.len() / 2)?;
        self.into_class_on(surface)
    }
}

impl<'de> Deserialize<'de> for CurveClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CurveData::deserialize(d)?
            .into_class()
            .map_err(de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Twist letters and monodromies
// ---------------------------------------------------------------------------

/// A letter's curve in JSON: a generator name or a full curve object.
enum CurveRef {
    Named(String),
    Explicit(CurveData),
}

impl CurveRef {
    fn resolve(self, surface: Surface) -> Result<CurveClass> {
        match self {
            CurveRef::Named(name) => CurveClass::standard_generator(surface, &name),
            CurveRef::Explicit(data) => data.into_class_on(surface),
        }
    }
}

impl<'de> Deserialize<'de> for CurveRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct RefVisitor;

        impl<'de> Visitor<'de> for RefVisitor {
            type Value = CurveRef;

            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str("a generator name like \"a1\" or a curve object")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<CurveRef, E> {
                Ok(CurveRef::Named(v.to_string()))
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                map: A,
            ) -> std::result::Result<CurveRef, A::Error> {
                CurveData::deserialize(de::value::MapAccessDeserializer::new(map))
                    .map(CurveRef::Explicit)
            }
        }

        d.deserialize_any(RefVisitor)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LetterData {
    curve: CurveRef,
    power: i64,
}

impl LetterData {
    fn resolve(self, surface: Surface) -> Result<TwistLetter> {
        TwistLetter::new(self.curve.resolve(surface)?, self.power)
    }
}

struct LetterOut<'a>(&'a TwistLetter);

impl Serialize for LetterOut<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let curve = self.0.curve();
        let mut st = s.serialize_struct("TwistLetter", 2)?;
        match curve.canonical_name() {
            Some(name) if curve.label().is_none() || curve.label() == Some(name.as_str()) => {
                st.serialize_field("curve", &name)?;
            }
            _ => st.serialize_field("curve", &CurveOut::from(curve))?,
        }
        st.serialize_field("power", &self.0.power())?;
        st.end()
    }
}

impl Serialize for MappingClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MappingClass", 3)?;
        st.serialize_field("genus", &self.genus())?;
        match self.word() {
            Some(word) => {
                st.serialize_field("word", &word.iter().map(LetterOut).collect::<Vec<_>>())?
            }
            None => st.skip_field("word")?,
        }
        st.serialize_field("matrix", self.matrix())?;
        st.end()
    }
}

/// Raw `{"genus", "word"?, "matrix"?}` data, shared by the monodromy-spec
/// loader and the extension-document loader.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingClassData {
    genus: usize,
    #[serde(default)]
    word: Option<Vec<LetterData>>,
    #[serde(default)]
    matrix: Option<Matrix<BigInt>>,
}

impl MappingClassData {
    /// Fully validated conversion: needs at least one of word/matrix,
    /// cross-checks them against each other when both are given, and
    /// insists the action is symplectic.
    pub fn into_mapping_class(self) -> Result<MappingClass> {
        let (surface, word, matrix) = self.resolve_parts()?;
        match (word, matrix) {
            (None, None) => Err(Error::MissingWordAndMatrix),
            (Some(word), None) => MappingClass::from_twist_word(surface, word),
            (None, Some(matrix)) => MappingClass::from_matrix(surface, matrix),
            (Some(word), Some(matrix)) => {
                MappingClass::from_word_and_matrix(surface, word, matrix)
            }
        }
    }

    /// Structural load without the symplectic or word/matrix agreement
    /// checks; verification surfaces re-examine the data and report
    /// failures in certificates instead of refusing the file.
    fn into_mapping_class_unchecked(self) -> Result<MappingClass> {
        let (surface, word, matrix) = self.resolve_parts()?;
        match (word, matrix) {
            (None, None) => Err(Error::MissingWordAndMatrix),
            (Some(word), None) => MappingClass::from_twist_word(surface, word),
            (word, Some(matrix)) => {
                let wrapped = MappingClass::from_matrix_unchecked(surface, matrix)?;
                Ok(match word {
                    Some(word) => {
                        MappingClass::from_parts_unchecked(surface, Some(word), wrapped.matrix().clone())
                    }
                    None => wrapped,
                })
            }
        }
    }

    fn resolve_parts(
        self,
    ) -> Result<(Surface, Option<Vec<TwistLetter>>, Option<Matrix<BigInt>>)> {
        let surface = Surface::new(self.genus)?;
        let word = self
            .word
            .map(|letters| {
                letters
                    .into_iter()
                    .map(|l| l.resolve(surface))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok((surface, word, self.matrix))
    }
}

impl<'de> Deserialize<'de> for MappingClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MappingClassData::deserialize(d)?
            .into_mapping_class()
            .map_err(de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Extension documents
// ---------------------------------------------------------------------------

/// The on-disk form of a constructed extension: the result plus the
/// certificate it was verified with.
#[derive(Clone, Debug)]
pub struct ExtensionDocument {
    pub result: ExtensionResult,
    pub certificate: ExtensionCertificate,
}

impl Serialize for ExtensionDocument {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Params {
            DeltaOne { k: u64 },
            General { multiplicities: Vec<i64> },
            Naive {},
        }
        let parameters = match &self.result.parameters {
            BlockParameters::DeltaOne { k } => Params::DeltaOne { k: *k },
            BlockParameters::General { multiplicities } => Params::General {
                multiplicities: multiplicities.clone(),
            },
            BlockParameters::Naive => Params::Naive {},
        };
        let mut st = s.serialize_struct("ExtensionDocument", 7)?;
        st.serialize_field("g_t", &self.result.g_t())?;
        st.serialize_field("g_s", &self.result.g_s())?;
        st.serialize_field("variant", self.result.parameters.variant_name())?;
        st.serialize_field("parameters", &parameters)?;
        st.serialize_field("f_t", &self.result.f_t)?;
        st.serialize_field("f_s", &self.result.f_s)?;
        st.serialize_field("certificate", &self.certificate)?;
        st.end()
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
struct ParamsData {
    k: Option<u64>,
    multiplicities: Option<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DocData {
    g_t: usize,
    g_s: usize,
    variant: String,
    parameters: ParamsData,
    f_t: MappingClassData,
    f_s: MappingClassData,
    certificate: ExtensionCertificate,
}

impl ExtensionDocument {
    pub fn new(result: ExtensionResult, certificate: ExtensionCertificate) -> Self {
        Self {
            result,
            certificate,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization is infallible")
    }

    /// Parses and structurally validates a document. The monodromies load
    /// without symplectic checks so that a tampered file still produces a
    /// certificate report rather than a refusal; the handle block is rebuilt
    /// from the recorded parameters, never read back from the matrix.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let data: DocData =
            serde_json::from_str(text).map_err(|e| Error::JsonValue(e.to_string()))?;
        let parameters = match data.variant.as_str() {
            "equal-betti-delta-one" => BlockParameters::DeltaOne {
                k: data.parameters.k.ok_or_else(|| {
                    Error::JsonValue("variant equal-betti-delta-one needs parameters.k".into())
                })?,
            },
            "equal-betti-general" => BlockParameters::General {
                multiplicities: data.parameters.multiplicities.ok_or_else(|| {
                    Error::JsonValue(
                        "variant equal-betti-general needs parameters.multiplicities".into(),
                    )
                })?,
            },
            "naive" => BlockParameters::Naive,
            other => {
                return Err(Error::JsonValue(format!("unknown variant `{other}`")));
            }
        };
        let f_t = data.f_t.into_mapping_class_unchecked()?;
        let f_s = data.f_s.into_mapping_class_unchecked()?;
        if f_t.genus() != data.g_t {
            return Err(Error::JsonValue(format!(
                "g_t = {} but f_t has genus {}",
                data.g_t,
                f_t.genus()
            )));
        }
        if f_s.genus() != data.g_s {
            return Err(Error::JsonValue(format!(
                "g_s = {} but f_s has genus {}",
                data.g_s,
                f_s.genus()
            )));
        }
        let pinch = pinch_homology_map(data.g_s, data.g_t)?;
        let delta = data.g_s - data.g_t;
        let a_block = parameters.block(delta)?;
        Ok(Self {
            result: ExtensionResult {
                f_t,
                f_s,
                pinch,
                a_block,
                parameters,
            },
            certificate: data.certificate,
        })
    }
}
