//! JSON shapes read and written by the CLI.
//!
//! Every integer and rational travels as a decimal string (`"7"`, `"-3/4"`)
//! so nothing is rounded on the way through.

use serde::{Deserialize, Serialize};
use torcone_core::classify::{ClassificationResult, Witnesses};
use torcone_core::cone::{SlicePolytope, StandardFormWitness};
use torcone_core::forms::{VerificationReport, WeakFillReport, Witness};
use torcone_core::{BigInt, IntMatrix, IntVector, Rational, UnimodularWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    VerdictFailure,
    InvalidInput,
    Unsupported,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::VerdictFailure => 1,
            Status::InvalidInput => 2,
            Status::Unsupported => 3,
        }
    }
}

/// Top-level response. `result` is present unless the command failed before
/// producing one, in which case `error` says why.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Response {
    pub status: Status,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Body>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Body {
    Classification(ClassificationJson),
    Reduction(ReductionJson),
    Normalization(NormalizationJson),
    Reeb(ReebJson),
    Slice(SliceJson),
    WeakFill(WeakFillJson),
    Report(ReportJson),
}

/// Cone input: at least one of `generators` and `facet_normals`. Entries may
/// be `"p/q"`; each vector is scaled to a primitive integer vector. A planar
/// cone may carry `winding`, in which case `generators` lists exactly the two
/// boundary rays in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet_normals: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub winding: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessMatrix {
    pub matrix: Vec<Vec<String>>,
    pub inverse: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StandardFormJson {
    pub k: usize,
    pub transform: WitnessMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceJson {
    pub reeb_vector: Vec<String>,
    pub vertices: Vec<Vec<String>>,
    pub bounded: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleReductionJson {
    pub gcd: String,
    pub transform: WitnessMatrix,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessesJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard_form: Option<StandardFormJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reeb: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<SliceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple_reduction: Option<TripleReductionJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationJson {
    pub manifold: String,
    pub reeb_type: bool,
    pub verdict: String,
    pub stein_note: Option<String>,
    pub witnesses: WitnessesJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionJson {
    pub gcd: String,
    pub matrix: Vec<Vec<String>>,
    pub inverse: Vec<Vec<String>>,
    pub image: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalizationJson {
    pub k: usize,
    pub transform: WitnessMatrix,
    pub image: ConeJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReebJson {
    pub reeb_vector: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub check: String,
    pub checked: usize,
    pub failures: usize,
    pub min_margin: Option<String>,
    pub witnesses: Vec<FailureJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakFillJson {
    pub t_star: String,
    pub torus_orientation: i8,
    pub identities: ReportJson,
    pub derivative: ReportJson,
    pub value: ReportJson,
}

pub fn ints(v: &IntVector) -> Vec<String> {
    v.entries().iter().map(BigInt::to_string).collect()
}

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

pub fn rows(m: &IntMatrix) -> Vec<Vec<String>> {
    m.row_vectors().iter().map(ints).collect()
}

pub fn witness_matrix(u: &UnimodularWitness) -> WitnessMatrix {
    WitnessMatrix {
        matrix: rows(u.matrix()),
        inverse: rows(u.inverse()),
    }
}

pub fn standard_form(w: &StandardFormWitness) -> StandardFormJson {
    StandardFormJson {
        k: w.k,
        transform: witness_matrix(&w.transform),
    }
}

pub fn slice(s: &SlicePolytope) -> SliceJson {
    SliceJson {
        reeb_vector: ints(&s.reeb_vector),
        vertices: s.vertices.iter().map(|v| rationals(v)).collect(),
        bounded: s.bounded,
    }
}

fn witnesses(w: &Witnesses) -> WitnessesJson {
    WitnessesJson {
        standard_form: w.standard_form.as_ref().map(standard_form),
        reeb: w.reeb.as_ref().map(ints),
        slice: w.slice.as_ref().map(slice),
        triple_reduction: w.triple_reduction.as_ref().map(|(g, u)| TripleReductionJson {
            gcd: g.to_string(),
            transform: witness_matrix(u),
        }),
    }
}

pub fn classification(r: &ClassificationResult) -> ClassificationJson {
    ClassificationJson {
        manifold: r.manifold.clone(),
        reeb_type: r.reeb_type,
        verdict: r.verdict.tag.as_str().into(),
        stein_note: r.verdict.stein_note.clone(),
        witnesses: witnesses(&r.witnesses),
    }
}

pub fn report(check: &str, r: &VerificationReport) -> ReportJson {
    ReportJson {
        check: check.into(),
        checked: r.checked,
        failures: r.failures,
        min_margin: r.min_margin.as_ref().map(Rational::to_string),
        witnesses: r
            .witnesses
            .iter()
            .map(|w| match w {
                Witness::Sample { point, value } => FailureJson {
                    point: Some(rationals(&point.coords)),
                    identity: None,
                    value: value.to_string(),
                },
                Witness::Identity { name, difference } => FailureJson {
                    point: None,
                    identity: Some(name.clone()),
                    value: difference.display().to_string(),
                },
            })
            .collect(),
    }
}

pub fn weak_fill(r: &WeakFillReport) -> WeakFillJson {
    WeakFillJson {
        t_star: r.t_star.to_string(),
        torus_orientation: r.torus_sign,
        identities: report("weak-fill identities", &r.identities),
        derivative: report("dP/dτ > 0", &r.derivative),
        value: report("P > 0", &r.value),
    }
}
