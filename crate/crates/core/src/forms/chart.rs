use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::form::{det, VectorField};
use super::poly::{Poly, Vars};
use super::FormsError;
use crate::lattice::IntVector;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChartKind {
    /// `T^k × S^{2d−k−1} ⊂ T^k × ℝ^k × ℂ^{d−k}`.
    TkSphere { d: usize, k: usize },
    /// `T² × S³ ⊂ T² × ℂ²`.
    T2S3,
}

/// A product `T^m × S^{N−1}` with coordinates `θ₁, …, θ_m` followed by the
/// real coordinates of the sphere factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldChart {
    kind: ChartKind,
    vars: Arc<Vars>,
    n_theta: usize,
    /// Pairs `(a, b)` of sphere coordinates forming one complex coordinate.
    complex_pairs: Vec<(usize, usize)>,
    orientation: Orientation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Orientation {
    Positive,
    Negative,
}

/// A point with exactly rational coordinates on the chart and an ordered,
/// oriented tangent frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SamplePoint {
    pub coords: Vec<Rational>,
    pub frame: Vec<Vec<Rational>>,
}

impl ManifoldChart {
    pub fn tk_sphere(d: usize, k: usize) -> Result<ManifoldChart, FormsError> {
        if k == 0 || k > d || 2 * d - k < 2 {
            return Err(FormsError::InvalidChart(format!(
                "T^k × S^(2d−k−1) needs 1 ≤ k ≤ d and a sphere of positive dimension \
                 (d = {d}, k = {k})"
            )));
        }
        let m = d - k;
        let mut names: Vec<String> = (1..=k).map(|i| format!("θ{i}")).collect();
        names.extend((1..=k).map(|i| format!("x{i}")));
        let mut complex_pairs = Vec::new();
        for j in 1..=m {
            complex_pairs.push((names.len(), names.len() + 1));
            names.push(format!("a{j}"));
            names.push(format!("b{j}"));
        }
        // Chosen so that β_k is a positive contact form.
        let orientation = if (k * (k - 1) / 2).is_multiple_of(2) {
            Orientation::Positive
        } else {
            Orientation::Negative
        };
        Ok(ManifoldChart {
            kind: ChartKind::TkSphere { d, k },
            vars: Arc::new(Vars::new(names)),
            n_theta: k,
            complex_pairs,
            orientation,
        })
    }

    pub fn t2s3() -> ManifoldChart {
        ManifoldChart {
            kind: ChartKind::T2S3,
            vars: Arc::new(Vars::new(["θ1", "θ2", "a1", "b1", "a2", "b2"])),
            n_theta: 2,
            complex_pairs: alloc::vec![(2, 3), (4, 5)],
            // Chosen so that f₁dθ₁ + f₂dθ₂ + α′ is a positive contact form.
            orientation: Orientation::Positive,
        }
    }

    pub fn kind(&self) -> ChartKind {
        self.kind
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    /// Same coordinates with extra scalar parameters appended.
    pub fn vars_with_params(&self, params: &[&str]) -> Arc<Vars> {
        Arc::new(Vars::with_params(
            self.vars.names().iter().cloned(),
            params.iter().copied(),
        ))
    }

    pub fn n_coords(&self) -> usize {
        self.vars.n_coords()
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    /// Dimension of the manifold, `2d − 1`.
    pub fn dim(&self) -> usize {
        self.n_coords() - 1
    }

    /// `d`, the rank of the acting torus.
    pub fn torus_rank(&self) -> usize {
        self.dim().div_ceil(2)
    }

    pub fn complex_pairs(&self) -> &[(usize, usize)] {
        &self.complex_pairs
    }

    /// Checks that a form lives on this chart's coordinates.
    pub fn check_vars(&self, vars: &Vars) -> Result<(), FormsError> {
        let n = self.n_coords();
        if vars.n_coords() != n || vars.names()[..n] != self.vars.names()[..] {
            return Err(FormsError::VariableMismatch);
        }
        Ok(())
    }

    /// `∂θ_l` for each angle, then the rotation `−b ∂a + a ∂b` of each
    /// complex coordinate.
    pub fn elementary_generators(&self, vars: &Arc<Vars>) -> Vec<VectorField> {
        let n = self.n_coords();
        let nv = vars.len();
        let mut out: Vec<VectorField> = (0..self.n_theta)
            .map(|i| VectorField::coordinate(vars, i))
            .collect();
        for &(a, b) in &self.complex_pairs {
            let mut comps: Vec<Poly> = (0..n).map(|_| Poly::zero(nv)).collect();
            comps[a] = Poly::var(nv, b).neg();
            comps[b] = Poly::var(nv, a);
            out.push(VectorField::new(vars, comps));
        }
        out
    }

    /// Weights of the effective torus action in terms of the elementary
    /// generators.
    pub fn standard_weights(&self) -> Vec<IntVector> {
        let e = self.n_theta + self.complex_pairs.len();
        match self.kind {
            ChartKind::TkSphere { .. } => (0..e).map(|i| IntVector::unit(e, i)).collect(),
            ChartKind::T2S3 => alloc::vec![
                IntVector::from_i64s(&[1, 0, 0, 0]),
                IntVector::from_i64s(&[0, 1, 0, 0]),
                IntVector::from_i64s(&[0, 0, 1, 1]),
            ],
        }
    }

    /// Tangent frame at a point of the chart.
    ///
    /// Angle directions come first. On the sphere factor each coordinate
    /// direction is projected against the normal `y`; the direction with the
    /// largest `|y_i|` (smallest index on ties) is dropped. The frame is
    /// oriented so that `(y, frame)` is positive in ambient coordinate order,
    /// then flipped once more for a negatively oriented chart.
    pub fn frame_at(&self, coords: &[Rational]) -> Vec<Vec<Rational>> {
        let n = self.n_coords();
        let s = self.n_theta;
        let y = &coords[s..];
        let norm2: Rational = y.iter().map(|v| v * v).fold(Rational::zero(), |a, b| a + b);
        let mut drop = 0;
        for i in 1..y.len() {
            if y[i].abs() > y[drop].abs() {
                drop = i;
            }
        }
        let mut frame: Vec<Vec<Rational>> = (0..s)
            .map(|i| (0..n).map(|j| unit(i == j)).collect())
            .collect();
        let mut sphere: Vec<Vec<Rational>> = Vec::new();
        for i in (0..y.len()).filter(|&i| i != drop) {
            let c = &y[i] / &norm2;
            sphere.push(
                (0..y.len())
                    .map(|j| unit(i == j) - &c * &y[j])
                    .collect(),
            );
        }
        let mut m: Vec<Vec<Rational>> = Vec::with_capacity(y.len());
        for j in 0..y.len() {
            let mut row = alloc::vec![y[j].clone()];
            row.extend(sphere.iter().map(|v| v[j].clone()));
            m.push(row);
        }
        let mut flip = det(&mut m, y.len()).is_negative();
        if self.orientation == Orientation::Negative {
            flip = !flip;
        }
        if flip {
            let first = &mut sphere[0];
            for x in first.iter_mut() {
                *x = -x.clone();
            }
        }
        for v in sphere {
            let mut full: Vec<Rational> = (0..s).map(|_| Rational::zero()).collect();
            full.extend(v);
            frame.push(full);
        }
        frame
    }

    /// `n` distinct exact points on the chart, deterministic in `seed`.
    ///
    /// Sphere points come from inverse stereographic projection of a random
    /// rational vector followed by a random signed permutation of the sphere
    /// coordinates; angles are random rationals.
    pub fn sample_points(&self, n: usize, seed: u64) -> Result<Vec<SamplePoint>, FormsError> {
        if n == 0 {
            return Err(FormsError::InvalidSampleCount);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sphere_dim = self.n_coords() - self.n_theta;
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let mut coords: Vec<Rational> =
                (0..self.n_theta).map(|_| random_rational(&mut rng)).collect();
            coords.extend(random_sphere_point(&mut rng, sphere_dim));
            if !seen.insert(coords.clone()) {
                continue;
            }
            let frame = self.frame_at(&coords);
            out.push(SamplePoint { coords, frame });
        }
        Ok(out)
    }
}

fn unit(one: bool) -> Rational {
    if one {
        Rational::one()
    } else {
        Rational::zero()
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.random_range(-20..=20);
    let den: i64 = rng.random_range(1..=20);
    Rational::new(num.into(), den.into())
}

/// A rational point of the unit sphere in `ℝ^n`.
fn random_sphere_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let u: Vec<Rational> = (0..n - 1).map(|_| random_rational(rng)).collect();
    let s: Rational = u.iter().map(|v| v * v).fold(Rational::zero(), |a, b| a + b);
    let denom = &s + Rational::one();
    let two = Rational::from_integer(2.into());
    let mut y: Vec<Rational> = u.iter().map(|v| &two * v / &denom).collect();
    y.push((&s - Rational::one()) / &denom);
    // Fisher–Yates shuffle with random signs, so the projection pole is not
    // privileged.
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        y.swap(i, j);
    }
    for v in y.iter_mut() {
        if rng.random_bool(0.5) {
            *v = -v.clone();
        }
    }
    y
}
