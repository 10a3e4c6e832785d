use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{Cone, ConeError};
use crate::lattice::{integer_kernel, smith_normal_form, IntMatrix, IntVector, UnimodularWitness};
use crate::Rational;

/// The lineality space `C ∩ (−C)` and a ℤ-basis of its lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinealityReport {
    pub dimension: usize,
    /// Saturated basis in Hermite normal form (rows).
    pub lattice_basis: Vec<IntVector>,
}

/// `U` maps the cone onto `{x₁, …, x_{d−k} ≥ 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFormWitness {
    pub k: usize,
    pub transform: UnimodularWitness,
}

/// The section of a cone by the hyperplane `⟨R, x⟩ = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicePolytope {
    pub reeb_vector: IntVector,
    /// Extreme points of the section, sorted.
    pub vertices: Vec<Vec<Rational>>,
    /// True iff the section is a nonempty polytope.
    pub bounded: bool,
}

impl Cone {
    fn with_both(&self) -> Result<Cone, ConeError> {
        self.dual_description()
    }

    /// Lineality space, computed as the integer kernel of the facet normals.
    pub fn lineality(&self) -> Result<LinealityReport, ConeError> {
        let full = self.with_both()?;
        let normals = full.facet_normals().unwrap_or_default();
        let d = self.dim();
        if normals.is_empty() {
            return Ok(LinealityReport {
                dimension: d,
                lattice_basis: (0..d).map(|i| IntVector::unit(d, i)).collect(),
            });
        }
        let basis = integer_kernel(&IntMatrix::from_row_vectors(d, normals));
        Ok(LinealityReport {
            dimension: basis.len(),
            lattice_basis: basis,
        })
    }

    pub fn is_strictly_convex(&self) -> Result<bool, ConeError> {
        Ok(self.lineality()?.dimension == 0)
    }

    pub fn is_whole_space(&self) -> Result<bool, ConeError> {
        Ok(self.lineality()?.dimension == self.dim())
    }

    /// Finds `U ∈ SL(d,ℤ)` with `U·C = {x₁, …, x_{d−k} ≥ 0}` for a cone with
    /// lineality dimension `0 < k < d`.
    ///
    /// The facet normals must be exactly `d − k` vectors extending to a basis
    /// of `ℤ^d`; they become the first `d − k` rows of `U`.
    pub fn normalize_to_standard(&self) -> Result<StandardFormWitness, ConeError> {
        let full = self.with_both()?;
        let d = self.dim();
        let k = full.lineality()?.dimension;
        if k == 0 {
            return Err(ConeError::NotApplicable("cone is strictly convex"));
        }
        if k == d {
            return Err(ConeError::NotApplicable("cone is the whole space"));
        }
        let normals = full.facet_normals().unwrap_or_default();
        let r = d - k;
        if normals.len() != r {
            return Err(ConeError::NotUnimodular(
                "facet count differs from the codimension of the lineality space",
            ));
        }
        let n = IntMatrix::from_row_vectors(d, normals);
        let snf = smith_normal_form(&n);
        if !snf.invariant_factors().iter().all(One::is_one) {
            return Err(ConeError::NotUnimodular(
                "facet normals do not extend to a lattice basis",
            ));
        }
        // P·N·Q = [I | 0]  ⇒  N = P⁻¹·(Q⁻¹)_top, so U = [N; (Q⁻¹)_bottom]
        // is unimodular and U⁻¹ = Q·diag(P, I).
        let q_inv = snf.right.inverse();
        let mut u = IntMatrix::zero(d, d);
        for i in 0..d {
            for j in 0..d {
                let x = if i < r {
                    n.get(i, j).clone()
                } else {
                    q_inv.get(i, j).clone()
                };
                u.set(i, j, x);
            }
        }
        let mut block = IntMatrix::identity(d);
        for i in 0..r {
            for j in 0..r {
                block.set(i, j, snf.left.matrix().get(i, j).clone());
            }
        }
        let mut u_inv = snf.right.matrix().mul(&block);
        if u.det().is_negative() {
            u.negate_row(d - 1);
            u_inv.negate_col(d - 1);
        }
        let transform = UnimodularWitness::new(u, u_inv)?;
        debug_assert!(transform.det().is_one());

        let image = full.transformed(&transform)?;
        let expected: Vec<IntVector> = (0..r).map(|i| IntVector::unit(d, i)).collect();
        let mut image_normals = image.facet_normals().unwrap_or_default().to_vec();
        image_normals.sort();
        let mut expected_sorted = expected.clone();
        expected_sorted.sort();
        let gens_ok = image.generators().unwrap_or_default().iter().all(|g| {
            g.entries()[..r].iter().all(|x| !x.is_negative())
        });
        if image_normals != expected_sorted || !gens_ok {
            return Err(ConeError::NotUnimodular("normalization failed verification"));
        }
        Ok(StandardFormWitness { k, transform })
    }

    /// The sum of the primitive inward facet normals of a strictly convex,
    /// full-dimensional cone.
    pub fn reeb_vector(&self) -> Result<IntVector, ConeError> {
        let full = self.with_both()?;
        if !full.is_strictly_convex()? {
            return Err(ConeError::NotStrictlyConvex);
        }
        let normals = full.facet_normals().unwrap_or_default();
        if normals.is_empty() {
            return Err(ConeError::EmptyFacetSet);
        }
        if !full.is_full_dimensional()? {
            return Err(ConeError::NotFullDimensional);
        }
        let mut r = IntVector::zero(self.dim());
        for n in normals {
            r = r.add(n);
        }
        Ok(r)
    }

    /// Extreme rays: generators whose tight normals have rank `d − 1`.
    /// Empty when the cone has a nontrivial lineality space.
    pub fn extreme_rays(&self) -> Result<Vec<IntVector>, ConeError> {
        let full = self.with_both()?;
        if !full.is_strictly_convex()? {
            return Ok(Vec::new());
        }
        let d = self.dim();
        let normals = full.facet_normals().unwrap_or_default();
        Ok(full
            .generators()
            .unwrap_or_default()
            .iter()
            .filter(|g| {
                let tight: Vec<IntVector> = normals
                    .iter()
                    .filter(|n| n.dot(g).is_zero())
                    .cloned()
                    .collect();
                IntMatrix::from_row_vectors(d, &tight).rank() + 1 == d
            })
            .cloned()
            .collect())
    }

    /// Section by `⟨R, x⟩ = 1`.
    ///
    /// `bounded` holds iff the cone is pointed and `⟨R, v⟩ > 0` on every
    /// extreme ray; otherwise the section is unbounded or empty and only the
    /// vertices it does have are reported.
    pub fn slice(&self, reeb: &IntVector) -> Result<SlicePolytope, ConeError> {
        if reeb.dim() != self.dim() {
            return Err(ConeError::DimensionMismatch {
                expected: self.dim(),
                got: reeb.dim(),
            });
        }
        if reeb.is_zero() {
            return Err(ConeError::ZeroReeb);
        }
        let rays = self.extreme_rays()?;
        let mut bounded = !rays.is_empty();
        let mut vertices = Vec::new();
        for v in &rays {
            let h = reeb.dot(v);
            if h.is_positive() {
                let h = Rational::from_integer(h);
                vertices.push(
                    v.entries()
                        .iter()
                        .map(|x| Rational::from_integer(x.clone()) / &h)
                        .collect::<Vec<_>>(),
                );
            } else {
                bounded = false;
            }
        }
        vertices.sort();
        Ok(SlicePolytope {
            reeb_vector: reeb.clone(),
            vertices,
            bounded,
        })
    }
}

impl SlicePolytope {
    /// `⟨R, v⟩` for a vertex, for checking the hyperplane condition.
    pub fn height(&self, vertex: &[Rational]) -> Rational {
        self.reeb_vector
            .entries()
            .iter()
            .zip(vertex)
            .map(|(r, x)| Rational::from_integer(r.clone()) * x)
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Probe vector used for slicing a cone that may not be pointed: the sum of
/// its facet normals, or `e₁` when that sum vanishes.
pub fn probe_vector(cone: &Cone) -> Result<IntVector, ConeError> {
    let full = cone.dual_description()?;
    let mut r = IntVector::zero(cone.dim());
    for n in full.facet_normals().unwrap_or_default() {
        r = r.add(n);
    }
    if r.is_zero() {
        r = IntVector::unit(cone.dim(), 0);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn lineality_examples() {
        let orthant = Cone::orthant(4).unwrap();
        let rep = orthant.lineality().unwrap();
        assert_eq!(rep.dimension, 0);
        assert!(rep.lattice_basis.is_empty());

        let half = Cone::from_i64_generators(2, &[&[1, 0], &[-1, 0], &[0, 1]]).unwrap();
        let rep = half.lineality().unwrap();
        assert_eq!(rep.dimension, 1);
        assert_eq!(rep.lattice_basis, alloc::vec![iv(&[1, 0])]);

        let plane = Cone::from_i64_generators(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap();
        assert_eq!(plane.lineality().unwrap().dimension, 2);
    }

    #[test]
    fn convexity_predicates() {
        let orthant = Cone::orthant(3).unwrap();
        assert!(orthant.is_strictly_convex().unwrap());
        assert!(!orthant.is_whole_space().unwrap());

        let half = Cone::from_i64_normals(3, &[&[1, 0, 0]]).unwrap();
        assert!(!half.is_strictly_convex().unwrap());
        assert!(!half.is_whole_space().unwrap());

        let plane = Cone::from_i64_generators(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap();
        assert!(!plane.is_strictly_convex().unwrap());
        assert!(plane.is_whole_space().unwrap());
    }

    #[test]
    fn half_space_normalizes_with_identity() {
        let half = Cone::from_i64_normals(3, &[&[1, 0, 0]]).unwrap();
        let w = half.normalize_to_standard().unwrap();
        assert_eq!(w.k, 2);
        assert!(w.transform.matrix().is_identity());
    }

    #[test]
    fn non_unimodular_quotient_rejected() {
        // Normals (1,0,0) and (1,2,0): the 2×3 normal matrix has invariant
        // factors (1, 2).
        let c = Cone::from_i64_normals(3, &[&[1, 0, 0], &[1, 2, 0]]).unwrap();
        assert_eq!(c.lineality().unwrap().dimension, 1);
        assert!(matches!(
            c.normalize_to_standard(),
            Err(ConeError::NotUnimodular(_))
        ));
    }

    #[test]
    fn normalize_not_applicable() {
        assert!(matches!(
            Cone::orthant(3).unwrap().normalize_to_standard(),
            Err(ConeError::NotApplicable(_))
        ));
        assert!(matches!(
            Cone::from_i64_normals(2, &[]).unwrap().normalize_to_standard(),
            Err(ConeError::NotApplicable(_))
        ));
    }

    #[test]
    fn reeb_vector_examples() {
        assert_eq!(
            Cone::orthant(3).unwrap().reeb_vector().unwrap(),
            iv(&[1, 1, 1])
        );
        let c = Cone::from_i64_normals(2, &[&[1, 0], &[1, 2]]).unwrap();
        assert_eq!(c.reeb_vector().unwrap(), iv(&[2, 2]));
        let half = Cone::from_i64_normals(3, &[&[1, 0, 0]]).unwrap();
        assert_eq!(half.reeb_vector().unwrap_err(), ConeError::NotStrictlyConvex);
    }

    #[test]
    fn slice_examples() {
        let s = Cone::orthant(3).unwrap().slice(&iv(&[1, 1, 1])).unwrap();
        assert!(s.bounded);
        assert_eq!(s.vertices.len(), 3);
        for v in &s.vertices {
            assert_eq!(s.height(v), Rational::one());
        }

        let s = Cone::orthant(2).unwrap().slice(&iv(&[1, 2])).unwrap();
        assert!(s.bounded);
        assert_eq!(
            s.vertices,
            alloc::vec![
                alloc::vec![q(0, 1), q(1, 2)],
                alloc::vec![q(1, 1), q(0, 1)]
            ]
        );

        let half = Cone::from_i64_normals(3, &[&[1, 0, 0]]).unwrap();
        let s = half.slice(&iv(&[1, 0, 0])).unwrap();
        assert!(!s.bounded);
        assert!(s.vertices.is_empty());

        assert_eq!(
            Cone::orthant(2).unwrap().slice(&iv(&[0, 0])).unwrap_err(),
            ConeError::ZeroReeb
        );
    }
}
