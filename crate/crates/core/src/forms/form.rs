use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::poly::{Poly, Vars};
use super::FormsError;
use crate::Rational;

/// A differential form `Σ_I c_I dx_I` with polynomial coefficients. Index
/// tuples are strictly increasing and only coordinate variables appear in
/// them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    vars: Arc<Vars>,
    degree: usize,
    components: BTreeMap<Vec<usize>, Poly>,
}

/// A vector field on the coordinate space with polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    vars: Arc<Vars>,
    components: Vec<Poly>,
}

fn same_vars(a: &Arc<Vars>, b: &Arc<Vars>) -> Result<(), FormsError> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(FormsError::VariableMismatch)
    }
}

/// Sign of the shuffle putting the concatenation of two sorted, disjoint
/// index lists in order; `None` if they overlap.
fn merge(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut odd = false;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining a's.
            if (a.len() - i) % 2 == 1 {
                odd = !odd;
            }
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, odd))
}

impl PolyForm {
    pub fn zero(vars: &Arc<Vars>, degree: usize) -> PolyForm {
        PolyForm {
            vars: vars.clone(),
            degree,
            components: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn function(vars: &Arc<Vars>, f: Poly) -> PolyForm {
        PolyForm::zero(vars, 0).with_component(Vec::new(), f)
    }

    /// `dx_i`.
    pub fn dx(vars: &Arc<Vars>, i: usize) -> PolyForm {
        assert!(i < vars.n_coords(), "differential of a parameter");
        let nv = vars.len();
        PolyForm::zero(vars, 1).with_component(alloc::vec![i], Poly::one(nv))
    }

    /// `Σ cᵢ dxᵢ` from one coefficient per coordinate.
    pub fn one_form(vars: &Arc<Vars>, coefficients: Vec<Poly>) -> PolyForm {
        assert_eq!(coefficients.len(), vars.n_coords());
        let mut out = PolyForm::zero(vars, 1);
        for (i, c) in coefficients.into_iter().enumerate() {
            out.add_component(alloc::vec![i], c);
        }
        out
    }

    fn with_component(mut self, index: Vec<usize>, c: Poly) -> PolyForm {
        self.add_component(index, c);
        self
    }

    fn add_component(&mut self, index: Vec<usize>, c: Poly) {
        debug_assert_eq!(index.len(), self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self
            .components
            .entry(index)
            .or_insert_with(|| Poly::zero(c.nvars()));
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.components.retain(|_, p| !p.is_zero());
        }
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&[usize], &Poly)> {
        self.components.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn component(&self, index: &[usize]) -> Option<&Poly> {
        self.components.get(index)
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm, FormsError> {
        same_vars(&self.vars, &other.vars)?;
        if self.degree != other.degree {
            return Err(FormsError::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut out = self.clone();
        for (k, c) in &other.components {
            out.add_component(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm, FormsError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyForm {
        self.map_coefficients(Poly::neg)
    }

    pub fn scale(&self, s: &Rational) -> PolyForm {
        self.map_coefficients(|p| p.scale(s))
    }

    /// `f · self` for a function `f`.
    pub fn mul_poly(&self, f: &Poly) -> PolyForm {
        self.map_coefficients(|p| p.mul(f))
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Poly) -> Poly) -> PolyForm {
        let mut out = PolyForm::zero(&self.vars, self.degree);
        for (k, c) in &self.components {
            out.add_component(k.clone(), f(c));
        }
        out
    }

    /// `∂/∂v` of every coefficient; meant for parameter variables.
    pub fn partial(&self, var: usize) -> PolyForm {
        self.map_coefficients(|p| p.partial(var))
    }

    /// Substitutes values into the coefficients, leaving `None` symbolic.
    pub fn substitute(&self, values: &[Option<Rational>]) -> PolyForm {
        self.map_coefficients(|p| p.eval_partial(values))
    }

    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm, FormsError> {
        same_vars(&self.vars, &other.vars)?;
        let mut out = PolyForm::zero(&self.vars, self.degree + other.degree);
        for (ka, ca) in &self.components {
            for (kb, cb) in &other.components {
                let Some((k, odd)) = merge(ka, kb) else {
                    continue;
                };
                let c = ca.mul(cb);
                out.add_component(k, if odd { c.neg() } else { c });
            }
        }
        Ok(out)
    }

    /// `self ∧ self ∧ … ∧ self` (`n` factors); the 0-form 1 when `n = 0`.
    pub fn wedge_power(&self, n: usize) -> PolyForm {
        let mut out = PolyForm::function(&self.vars, Poly::one(self.vars.len()));
        for _ in 0..n {
            out = out.wedge(self).expect("same variables");
        }
        out
    }

    /// Exterior derivative in the coordinate variables.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(&self.vars, self.degree + 1);
        for (k, c) in &self.components {
            for v in 0..self.vars.n_coords() {
                if k.contains(&v) {
                    continue;
                }
                let dc = c.partial(v);
                if dc.is_zero() {
                    continue;
                }
                // dx_v ∧ dx_K, moving dx_v past the indices below it.
                let below = k.iter().filter(|&&i| i < v).count();
                let mut idx = k.clone();
                idx.insert(below, v);
                out.add_component(idx, if below % 2 == 1 { dc.neg() } else { dc });
            }
        }
        out
    }

    /// Contraction `ι_X self`.
    pub fn interior(&self, x: &VectorField) -> Result<PolyForm, FormsError> {
        same_vars(&self.vars, &x.vars)?;
        if self.degree == 0 {
            return Ok(PolyForm::zero(&self.vars, 0));
        }
        let mut out = PolyForm::zero(&self.vars, self.degree - 1);
        for (k, c) in &self.components {
            for (r, &i) in k.iter().enumerate() {
                let xi = &x.components[i];
                if xi.is_zero() {
                    continue;
                }
                let mut idx = k.clone();
                idx.remove(r);
                let term = c.mul(xi);
                out.add_component(idx, if r % 2 == 1 { term.neg() } else { term });
            }
        }
        Ok(out)
    }

    /// Value of the form at `point` on the given tangent vectors.
    ///
    /// Parameters not fixed by `params` stay symbolic, so the result is a
    /// polynomial in them (a constant polynomial if there are none).
    pub fn evaluate_symbolic(
        &self,
        point: &[Rational],
        params: &[Option<Rational>],
        vectors: &[Vec<Rational>],
    ) -> Result<Poly, FormsError> {
        let n = self.vars.n_coords();
        if vectors.len() != self.degree {
            return Err(FormsError::DegreeMismatch {
                expected: self.degree,
                got: vectors.len(),
            });
        }
        if point.len() != n || vectors.iter().any(|v| v.len() != n) {
            return Err(FormsError::PointDimension {
                expected: n,
                got: point.len(),
            });
        }
        if params.len() != self.vars.len() - n {
            return Err(FormsError::VariableMismatch);
        }
        let values: Vec<Option<Rational>> = point
            .iter()
            .cloned()
            .map(Some)
            .chain(params.iter().cloned())
            .collect();
        let mut acc = Poly::zero(self.vars.len());
        for (k, c) in &self.components {
            let minor = minor_det(vectors, k);
            if minor.is_zero() {
                continue;
            }
            acc = acc.add(&c.eval_partial(&values).scale(&minor));
        }
        Ok(acc)
    }

    /// Exact value on the given vectors; every parameter must be fixed.
    pub fn evaluate(
        &self,
        point: &[Rational],
        params: &[Rational],
        vectors: &[Vec<Rational>],
    ) -> Result<Rational, FormsError> {
        let params: Vec<Option<Rational>> = params.iter().cloned().map(Some).collect();
        let p = self.evaluate_symbolic(point, &params, vectors)?;
        Ok(p.as_constant().expect("all variables substituted"))
    }

    pub fn display(&self) -> FormDisplay<'_> {
        FormDisplay(self)
    }
}

/// `det[v_j(i_r)]`: the minor of the frame on the rows `index`.
fn minor_det(vectors: &[Vec<Rational>], index: &[usize]) -> Rational {
    let p = index.len();
    let mut m: Vec<Vec<Rational>> = index
        .iter()
        .map(|&i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    det(&mut m, p)
}

pub(crate) fn det(m: &mut [Vec<Rational>], p: usize) -> Rational {
    let mut result = Rational::one();
    for col in 0..p {
        let Some(pivot) = (col..p).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            result = -result;
        }
        let pivot_row = m[col].clone();
        let pv = &pivot_row[col];
        result *= pv;
        for row in m[col + 1..p].iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / pv;
            for (x, y) in row[col..p].iter_mut().zip(&pivot_row[col..p]) {
                *x -= &f * y;
            }
        }
    }
    result
}

impl VectorField {
    pub fn new(vars: &Arc<Vars>, components: Vec<Poly>) -> VectorField {
        assert_eq!(components.len(), vars.n_coords());
        VectorField {
            vars: vars.clone(),
            components,
        }
    }

    /// `∂/∂x_i`.
    pub fn coordinate(vars: &Arc<Vars>, i: usize) -> VectorField {
        let nv = vars.len();
        let components = (0..vars.n_coords())
            .map(|j| if j == i { Poly::one(nv) } else { Poly::zero(nv) })
            .collect();
        VectorField::new(vars, components)
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn at(&self, point: &[Rational], params: &[Rational]) -> Vec<Rational> {
        let values: Vec<Rational> = point.iter().chain(params).cloned().collect();
        self.components.iter().map(|c| c.eval(&values)).collect()
    }
}

#[derive(Debug)]
pub struct FormDisplay<'a>(&'a PolyForm);

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = self.0;
        if form.is_zero() {
            return f.write_str("0");
        }
        let names = form.vars.names();
        for (i, (k, c)) in form.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", c.display(&form.vars))?;
            for (j, &v) in k.iter().enumerate() {
                let sep = if j == 0 { " " } else { "∧" };
                write!(f, "{sep}d{}", names[v])?;
            }
        }
        Ok(())
    }
}
