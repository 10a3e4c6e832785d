//! Classification of compact connected toric contact manifolds and their
//! fillability verdicts.
//!
//! Inputs come in four kinds ([`ToricInput`]): a moment cone, a planar angle
//! for the three-dimensional non-free case, a bundle triple for free actions
//! on five-manifolds, a fiber count for free actions on `T³`, and a bare
//! dimension for the trivial bundle `T^d × S^{d−1}`.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::cone::{Cone, ConeError, SlicePolytope, StandardFormWitness};
use crate::lattice::{gcd_reduce, IntVector, UnimodularWitness};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid angle pair: {0}")]
    InvalidAnglePair(&'static str),
    #[error("moment cone equals the whole space, which only happens for free actions")]
    WholeSpaceCone,
    #[error("cone is outside the classified family: {0}")]
    UnclassifiableCone(ConeError),
    #[error(transparent)]
    Cone(ConeError),
}

impl From<ConeError> for ClassifyError {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::NotUnimodular(_) => ClassifyError::UnclassifiableCone(e),
            other => ClassifyError::Cone(other),
        }
    }
}

/// How far the planar moment cone turns from `ray1` to `ray2`,
/// counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Winding {
    /// Less than `π`.
    Convex,
    /// Exactly `π`.
    Straight,
    /// Strictly between `π` and `2π`.
    Reflex,
    /// At least `2π`.
    Full,
}

impl Winding {
    pub fn as_str(self) -> &'static str {
        match self {
            Winding::Convex => "convex",
            Winding::Straight => "straight",
            Winding::Reflex => "reflex",
            Winding::Full => "full",
        }
    }

    pub fn parse(s: &str) -> Option<Winding> {
        match s {
            "convex" => Some(Winding::Convex),
            "straight" => Some(Winding::Straight),
            "reflex" => Some(Winding::Reflex),
            "full" => Some(Winding::Full),
            _ => None,
        }
    }
}

/// The moment cone of a non-free toric contact 3-manifold, bounded by the
/// rays at angles `t₁ < t₂`. Each ray is a primitive direction; the flag
/// records `t₂ − t₁ ≥ 2π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnglePair {
    pub ray1: IntVector,
    pub ray2: IntVector,
    pub wraps_full_circle: bool,
}

impl AnglePair {
    pub fn new(ray1: IntVector, ray2: IntVector, wraps_full_circle: bool) -> Self {
        AnglePair {
            ray1,
            ray2,
            wraps_full_circle,
        }
    }

    pub fn from_i64s(ray1: [i64; 2], ray2: [i64; 2], wraps_full_circle: bool) -> Self {
        AnglePair::new(
            IntVector::from_i64s(&ray1),
            IntVector::from_i64s(&ray2),
            wraps_full_circle,
        )
    }

    fn validate(&self) -> Result<(), ClassifyError> {
        for r in [&self.ray1, &self.ray2] {
            if r.dim() != 2 {
                return Err(ClassifyError::InvalidInput(format!(
                    "angle rays must be planar, got dimension {}",
                    r.dim()
                )));
            }
            if r.is_zero() {
                return Err(ClassifyError::InvalidInput("angle ray is zero".into()));
            }
            if !r.is_primitive() {
                return Err(ClassifyError::InvalidInput(format!(
                    "angle ray {r} is not primitive"
                )));
            }
        }
        Ok(())
    }

    /// `ray1 × ray2`.
    pub fn cross(&self) -> BigInt {
        let (a, b) = (self.ray1.entries(), self.ray2.entries());
        &a[0] * &b[1] - &a[1] * &b[0]
    }

    /// Total by construction; the only invalid configuration (equal rays
    /// without the wrap flag) is rejected.
    pub fn winding(&self) -> Result<Winding, ClassifyError> {
        self.validate()?;
        if self.wraps_full_circle {
            return Ok(Winding::Full);
        }
        let cross = self.cross();
        if cross.is_positive() {
            Ok(Winding::Convex)
        } else if cross.is_negative() {
            Ok(Winding::Reflex)
        } else if self.ray1.dot(&self.ray2).is_negative() {
            Ok(Winding::Straight)
        } else {
            Err(ClassifyError::InvalidAnglePair(
                "rays coincide; set the wrap flag for a full turn",
            ))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ToricInput {
    /// Moment cone of a non-free action. Planar cones are read as angle
    /// pairs.
    Cone(Cone),
    AnglePair(AnglePair),
    /// Bundle triple of a free `T³`-action on a 5-manifold.
    FreeTriple(IntVector),
    /// Number of fiber components of a free action on `T³`.
    FreeTorus3(BigInt),
    /// `T^d × S^{d−1}`, `d ≥ 4`.
    FreeTrivial(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictTag {
    StronglyFillable,
    WeaklyFillableOnly,
    /// Weakly fillable; strong fillability is not known.
    WeaklyFillableStrongOpen,
    Overtwisted,
}

impl VerdictTag {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictTag::StronglyFillable => "StronglyFillable",
            VerdictTag::WeaklyFillableOnly => "WeaklyFillableOnly",
            VerdictTag::WeaklyFillableStrongOpen => "WeaklyFillableStrongOpen",
            VerdictTag::Overtwisted => "Overtwisted",
        }
    }

    pub fn is_weakly_fillable(self) -> bool {
        self != VerdictTag::Overtwisted
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillabilityVerdict {
    pub tag: VerdictTag,
    pub stein_note: Option<String>,
}

impl FillabilityVerdict {
    fn new(tag: VerdictTag) -> Self {
        FillabilityVerdict {
            tag,
            stein_note: None,
        }
    }

    fn stein(note: String) -> Self {
        FillabilityVerdict {
            tag: VerdictTag::StronglyFillable,
            stein_note: Some(note),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witnesses {
    pub standard_form: Option<StandardFormWitness>,
    pub reeb: Option<IntVector>,
    pub slice: Option<SlicePolytope>,
    pub triple_reduction: Option<(BigInt, UnimodularWitness)>,
}

impl Witnesses {
    pub fn is_empty(&self) -> bool {
        self.standard_form.is_none()
            && self.reeb.is_none()
            && self.slice.is_none()
            && self.triple_reduction.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub manifold: String,
    pub reeb_type: bool,
    pub verdict: FillabilityVerdict,
    pub witnesses: Witnesses,
}

impl ClassificationResult {
    fn plain(manifold: String, verdict: FillabilityVerdict) -> Self {
        ClassificationResult {
            manifold,
            reeb_type: false,
            verdict,
            witnesses: Witnesses::default(),
        }
    }

    /// Label, Reeb flag and verdict tag: the data that must not change under
    /// `SL(d,ℤ)`.
    pub fn invariant_part(&self) -> (&str, bool, VerdictTag) {
        (&self.manifold, self.reeb_type, self.verdict.tag)
    }
}

pub fn classify(input: &ToricInput) -> Result<ClassificationResult, ClassifyError> {
    let result = match input {
        ToricInput::Cone(c) if c.dim() == 2 => classify_angle_pair(&angle_pair_of_cone(c)?),
        ToricInput::Cone(c) => classify_higher_non_free(c),
        ToricInput::AnglePair(a) => classify_angle_pair(a),
        ToricInput::FreeTriple(v) => classify_free_triple(v),
        ToricInput::FreeTorus3(k) => classify_free_torus3(k),
        ToricInput::FreeTrivial(d) => classify_free_trivial(*d),
    }?;
    debug_assert!(!result.reeb_type || result.verdict.tag == VerdictTag::StronglyFillable);
    Ok(result)
}

/// Reads a planar cone as an angle pair, ordering the rays counterclockwise.
pub fn angle_pair_of_cone(c: &Cone) -> Result<AnglePair, ClassifyError> {
    if c.dim() != 2 {
        return Err(ClassifyError::InvalidInput(format!(
            "expected a planar cone, got dimension {}",
            c.dim()
        )));
    }
    let lin = c.lineality()?;
    if lin.dimension == 2 {
        let e1 = IntVector::unit(2, 0);
        return Ok(AnglePair::new(e1.clone(), e1, true));
    }
    if !c.is_full_dimensional()? {
        return Err(ClassifyError::InvalidInput(
            "planar moment cone must have nonempty interior".into(),
        ));
    }
    if lin.dimension == 1 {
        // Half-plane ⟨n, x⟩ ≥ 0, traversed from (n_y, −n_x) to its negative.
        let full = c.dual_description()?;
        let n = &full.facet_normals().unwrap_or_default()[0];
        let r1 = IntVector::new(alloc::vec![n.entries()[1].clone(), -&n.entries()[0]]);
        let r2 = r1.neg();
        return Ok(AnglePair::new(r1, r2, false));
    }
    let rays = c.extreme_rays()?;
    let [a, b] = rays.as_slice() else {
        return Err(ClassifyError::InvalidInput(
            "pointed planar cone must have two extreme rays".into(),
        ));
    };
    let pair = AnglePair::new(a.clone(), b.clone(), false);
    if pair.cross().is_positive() {
        Ok(pair)
    } else {
        Ok(AnglePair::new(b.clone(), a.clone(), false))
    }
}

/// Dimension-three non-free case.
pub fn classify_angle_pair(a: &AnglePair) -> Result<ClassificationResult, ClassifyError> {
    match a.winding()? {
        Winding::Convex => {
            let cone = Cone::from_generators(2, alloc::vec![a.ray1.clone(), a.ray2.clone()])?;
            let reeb = cone.reeb_vector()?;
            let slice = cone.slice(&reeb)?;
            Ok(ClassificationResult {
                manifold: "lens-type (Reeb)".into(),
                reeb_type: true,
                verdict: FillabilityVerdict::new(VerdictTag::StronglyFillable),
                witnesses: Witnesses {
                    reeb: Some(reeb),
                    slice: Some(slice),
                    ..Witnesses::default()
                },
            })
        }
        Winding::Straight => Ok(ClassificationResult::plain(
            "S^1 × S^2".into(),
            FillabilityVerdict::stein("1-subcritical Stein".into()),
        )),
        Winding::Reflex | Winding::Full => Ok(ClassificationResult::plain(
            "lens-type (overtwisted)".into(),
            FillabilityVerdict::new(VerdictTag::Overtwisted),
        )),
    }
}

/// Free actions on `T³`.
pub fn classify_free_torus3(k: &BigInt) -> Result<ClassificationResult, ClassifyError> {
    if !k.is_positive() {
        return Err(ClassifyError::InvalidInput(format!(
            "fiber component count must be positive, got {k}"
        )));
    }
    let tag = if k.is_one() {
        VerdictTag::StronglyFillable
    } else {
        VerdictTag::WeaklyFillableOnly
    };
    Ok(ClassificationResult::plain(
        format!("T^3 with ξ_{k}"),
        FillabilityVerdict::new(tag),
    ))
}

/// Non-free actions in dimension `2d − 1 ≥ 5`.
pub fn classify_higher_non_free(c: &Cone) -> Result<ClassificationResult, ClassifyError> {
    let d = c.dim();
    if d < 3 {
        return Err(ClassifyError::InvalidInput(format!(
            "higher-dimensional cone expected, got dimension {d}"
        )));
    }
    let full = c.dual_description()?;
    let k = full.lineality()?.dimension;
    if k == d {
        return Err(ClassifyError::WholeSpaceCone);
    }
    if k == 0 {
        let reeb = full
            .reeb_vector()
            .map_err(ClassifyError::UnclassifiableCone)?;
        let slice = full.slice(&reeb)?;
        return Ok(ClassificationResult {
            manifold: "Reeb type".into(),
            reeb_type: true,
            verdict: FillabilityVerdict::new(VerdictTag::StronglyFillable),
            witnesses: Witnesses {
                reeb: Some(reeb),
                slice: Some(slice),
                ..Witnesses::default()
            },
        });
    }
    let standard = full.normalize_to_standard()?;
    Ok(ClassificationResult {
        manifold: format!("T^{k} × S^{}", 2 * d - k - 1),
        reeb_type: false,
        verdict: FillabilityVerdict::stein(stein_note(d, k)),
        witnesses: Witnesses {
            standard_form: Some(standard),
            ..Witnesses::default()
        },
    })
}

fn stein_note(d: usize, k: usize) -> String {
    if d > k {
        format!("{}-subcritical Stein", d - k)
    } else {
        "Stein".into()
    }
}

/// Free `T³`-actions on 5-manifolds, by bundle triple.
pub fn classify_free_triple(v: &IntVector) -> Result<ClassificationResult, ClassifyError> {
    if v.dim() != 3 {
        return Err(ClassifyError::InvalidInput(format!(
            "bundle triple must have three entries, got {}",
            v.dim()
        )));
    }
    if v.is_zero() {
        return Ok(ClassificationResult::plain(
            "T^3 × S^2".into(),
            FillabilityVerdict::stein("Stein".into()),
        ));
    }
    let (g, u) = gcd_reduce(v).map_err(|e| ClassifyError::InvalidInput(format!("{e}")))?;
    Ok(ClassificationResult {
        manifold: format!("T^2 × L_{g}"),
        reeb_type: false,
        verdict: FillabilityVerdict::new(VerdictTag::WeaklyFillableStrongOpen),
        witnesses: Witnesses {
            triple_reduction: Some((g, u)),
            ..Witnesses::default()
        },
    })
}

/// The cosphere bundle `T^d × S^{d−1}` of `T^d`.
pub fn classify_free_trivial(d: usize) -> Result<ClassificationResult, ClassifyError> {
    if d < 4 {
        return Err(ClassifyError::InvalidInput(format!(
            "trivial bundle input needs d ≥ 4 (got {d}); use a zero triple for d = 3 \
             or a fiber count for d = 2"
        )));
    }
    Ok(ClassificationResult::plain(
        format!("T^{d} × S^{}", d - 1),
        FillabilityVerdict::stein("Stein".into()),
    ))
}
