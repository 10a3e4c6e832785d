//! Rational polyhedral cones.
//!
//! A [`Cone`] is stored by primitive integer generators, by primitive inward
//! facet normals, or both. Rational input is scaled to integers before it
//! reaches this module. [`Cone::dual_description`] fills in whichever
//! description is missing using the double-description method.

mod dd;
mod geometry;

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::lattice::{IntMatrix, IntVector, LatticeError, UnimodularWitness};

pub use geometry::{probe_vector, LinealityReport, SlicePolytope, StandardFormWitness};

/// Largest ambient dimension the double-description routine accepts unless
/// the caller raises the cap.
pub const DEFAULT_DIM_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("cone dimension {dim} exceeds the cap of {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("degenerate input: every ray is zero")]
    DegenerateInput,
    #[error("vector of length {got} given for a cone in dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone dimension must be positive")]
    ZeroDimension,
    #[error("generator and facet descriptions disagree: {0}")]
    InconsistentDescriptions(&'static str),
    #[error("operation not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("cone is not SL(d,Z)-equivalent to the standard cone: {0}")]
    NotUnimodular(&'static str),
    #[error("cone is not strictly convex")]
    NotStrictlyConvex,
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("cone has no facets")]
    EmptyFacetSet,
    #[error("Reeb vector is zero")]
    ZeroReeb,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A rational polyhedral cone in `ℝ^dim`.
///
/// Generators are primitive, nonzero, deduplicated and sorted; likewise the
/// inward facet normals. The cone is `cone(generators)` or, equivalently,
/// `{x : ⟨n, x⟩ ≥ 0 for every normal n}`. An empty normal list is the whole
/// space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    generators: Option<Vec<IntVector>>,
    facet_normals: Option<Vec<IntVector>>,
    dim_cap: usize,
}

fn canonical(dim: usize, vectors: Vec<IntVector>) -> Result<Vec<IntVector>, ConeError> {
    let mut out = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.dim() != dim {
            return Err(ConeError::DimensionMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
        if let Some(p) = v.primitive() {
            out.push(p);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

impl Cone {
    /// `cone(generators)`. Zero vectors are dropped; a list with no nonzero
    /// vector is rejected since the origin alone is not a moment cone.
    pub fn from_generators(dim: usize, generators: Vec<IntVector>) -> Result<Cone, ConeError> {
        if dim == 0 {
            return Err(ConeError::ZeroDimension);
        }
        let generators = canonical(dim, generators)?;
        if generators.is_empty() {
            return Err(ConeError::DegenerateInput);
        }
        Ok(Cone {
            dim,
            generators: Some(generators),
            facet_normals: None,
            dim_cap: DEFAULT_DIM_CAP,
        })
    }

    /// `{x : ⟨n, x⟩ ≥ 0}` for every given inward normal.
    pub fn from_facet_normals(dim: usize, normals: Vec<IntVector>) -> Result<Cone, ConeError> {
        if dim == 0 {
            return Err(ConeError::ZeroDimension);
        }
        let normals = canonical(dim, normals)?;
        Ok(Cone {
            dim,
            generators: None,
            facet_normals: Some(normals),
            dim_cap: DEFAULT_DIM_CAP,
        })
    }

    /// Both descriptions at once; they are checked against each other.
    pub fn from_descriptions(
        dim: usize,
        generators: Vec<IntVector>,
        normals: Vec<IntVector>,
    ) -> Result<Cone, ConeError> {
        let from_gens = Cone::from_generators(dim, generators)?;
        let from_normals = Cone::from_facet_normals(dim, normals)?;
        let cone = Cone {
            dim,
            generators: from_gens.generators,
            facet_normals: from_normals.facet_normals,
            dim_cap: DEFAULT_DIM_CAP,
        };
        cone.check_consistency()?;
        Ok(cone)
    }

    pub fn from_i64_generators(dim: usize, generators: &[&[i64]]) -> Result<Cone, ConeError> {
        Cone::from_generators(dim, generators.iter().map(|g| IntVector::from_i64s(g)).collect())
    }

    pub fn from_i64_normals(dim: usize, normals: &[&[i64]]) -> Result<Cone, ConeError> {
        Cone::from_facet_normals(dim, normals.iter().map(|n| IntVector::from_i64s(n)).collect())
    }

    /// The standard cone `{x₁, …, x_{d−k} ≥ 0} ⊂ ℝ^d`.
    pub fn standard(dim: usize, lineality: usize) -> Result<Cone, ConeError> {
        if lineality > dim {
            return Err(ConeError::NotApplicable("lineality exceeds dimension"));
        }
        Cone::from_facet_normals(
            dim,
            (0..dim - lineality).map(|i| IntVector::unit(dim, i)).collect(),
        )
    }

    /// The first orthant of `ℝ^d`.
    pub fn orthant(dim: usize) -> Result<Cone, ConeError> {
        Cone::standard(dim, 0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Replaces the dimension cap used by every operation that needs the
    /// double-description step.
    pub fn with_dim_cap(mut self, cap: usize) -> Cone {
        self.dim_cap = cap;
        self
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn generators(&self) -> Option<&[IntVector]> {
        self.generators.as_deref()
    }

    pub fn facet_normals(&self) -> Option<&[IntVector]> {
        self.facet_normals.as_deref()
    }

    pub fn has_both_descriptions(&self) -> bool {
        self.generators.is_some() && self.facet_normals.is_some()
    }

    /// Returns the cone with both descriptions populated.
    pub fn dual_description(&self) -> Result<Cone, ConeError> {
        self.dual_description_with_cap(self.dim_cap)
    }

    pub fn dual_description_with_cap(&self, cap: usize) -> Result<Cone, ConeError> {
        if self.dim > cap {
            return Err(ConeError::DimensionCapExceeded { dim: self.dim, cap });
        }
        match (&self.generators, &self.facet_normals) {
            (Some(_), Some(_)) => Ok(self.clone()),
            (Some(gens), None) => {
                // Facet normals generate the dual cone {y : ⟨g, y⟩ ≥ 0}.
                let dual = dd::generators_of(self.dim, gens);
                let mut normals = dual.rays;
                for l in dual.lineality {
                    normals.push(l.neg());
                    normals.push(l);
                }
                Ok(Cone {
                    dim: self.dim,
                    generators: Some(gens.clone()),
                    facet_normals: Some(canonical(self.dim, normals)?),
                    dim_cap: self.dim_cap,
                })
            }
            (None, Some(normals)) => {
                let primal = dd::generators_of(self.dim, normals);
                let mut gens = primal.rays;
                for l in primal.lineality {
                    gens.push(l.neg());
                    gens.push(l);
                }
                let gens = canonical(self.dim, gens)?;
                if gens.is_empty() {
                    return Err(ConeError::DegenerateInput);
                }
                Ok(Cone {
                    dim: self.dim,
                    generators: Some(gens),
                    facet_normals: Some(normals.clone()),
                    dim_cap: self.dim_cap,
                })
            }
            (None, None) => Err(ConeError::DegenerateInput),
        }
    }

    /// Exact membership test.
    pub fn contains(&self, x: &IntVector) -> Result<bool, ConeError> {
        if x.dim() != self.dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        let full = self.dual_description()?;
        Ok(full
            .facet_normals
            .iter()
            .flatten()
            .all(|n| !n.dot(x).is_negative()))
    }

    /// Rank of the generators, i.e. the dimension of the linear span.
    pub fn span_dimension(&self) -> Result<usize, ConeError> {
        let full = self.dual_description()?;
        let gens = full.generators.as_deref().unwrap_or_default();
        Ok(IntMatrix::from_row_vectors(self.dim, gens).rank())
    }

    pub fn is_full_dimensional(&self) -> Result<bool, ConeError> {
        Ok(self.span_dimension()? == self.dim)
    }

    /// Verifies that both stored descriptions define the same point set and
    /// that every normal supports a facet (or pairs with its negative as an
    /// equation when the cone is not full-dimensional).
    pub fn check_consistency(&self) -> Result<(), ConeError> {
        let (Some(gens), Some(normals)) = (&self.generators, &self.facet_normals) else {
            return Ok(());
        };
        if gens.iter().any(|g| normals.iter().any(|n| n.dot(g).is_negative())) {
            return Err(ConeError::InconsistentDescriptions(
                "a generator violates a facet inequality",
            ));
        }
        // The reverse inclusion: every generator of the H-description must lie
        // in cone(generators).
        let from_gens = Cone {
            dim: self.dim,
            generators: Some(gens.clone()),
            facet_normals: None,
            dim_cap: self.dim_cap,
        }
        .dual_description()?;
        let from_normals = Cone {
            dim: self.dim,
            generators: None,
            facet_normals: Some(normals.clone()),
            dim_cap: self.dim_cap,
        }
        .dual_description()?;
        let hull_normals = from_gens.facet_normals.unwrap_or_default();
        if from_normals
            .generators
            .iter()
            .flatten()
            .any(|g| hull_normals.iter().any(|n| n.dot(g).is_negative()))
        {
            return Err(ConeError::InconsistentDescriptions(
                "the inequalities admit points outside cone(generators)",
            ));
        }
        let span = IntMatrix::from_row_vectors(self.dim, gens).rank();
        for n in normals {
            if normals.contains(&n.neg()) {
                continue;
            }
            let tight: Vec<IntVector> = gens
                .iter()
                .filter(|g| n.dot(g).is_zero())
                .cloned()
                .collect();
            if IntMatrix::from_row_vectors(self.dim, &tight).rank() + 1 != span {
                return Err(ConeError::InconsistentDescriptions(
                    "a facet normal does not support a facet",
                ));
            }
        }
        Ok(())
    }

    /// Whether two cones are the same point set, by mutual sign tests on
    /// their generators and normals.
    pub fn same_set(&self, other: &Cone) -> Result<bool, ConeError> {
        if self.dim != other.dim {
            return Ok(false);
        }
        let a = self.dual_description()?;
        let b = other.dual_description()?;
        let inside = |gens: &Option<Vec<IntVector>>, normals: &Option<Vec<IntVector>>| {
            gens.iter().flatten().all(|g| {
                normals
                    .iter()
                    .flatten()
                    .all(|n| !n.dot(g).is_negative())
            })
        };
        Ok(inside(&a.generators, &b.facet_normals) && inside(&b.generators, &a.facet_normals))
    }

    /// The image `U·C`: generators map by `U`, normals by `U^{-T}`.
    pub fn transformed(&self, u: &UnimodularWitness) -> Result<Cone, ConeError> {
        if u.dim() != self.dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.dim,
                got: u.dim(),
            });
        }
        let generators = match &self.generators {
            Some(g) => Some(canonical(self.dim, g.iter().map(|v| u.apply(v)).collect())?),
            None => None,
        };
        let facet_normals = match &self.facet_normals {
            Some(n) => Some(canonical(
                self.dim,
                n.iter().map(|v| u.apply_dual(v)).collect(),
            )?),
            None => None,
        };
        Ok(Cone {
            dim: self.dim,
            generators,
            facet_normals,
            dim_cap: self.dim_cap,
        })
    }
}
