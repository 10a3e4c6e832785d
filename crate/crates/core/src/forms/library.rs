//! The explicit forms checked by the verifiers, in real coordinates
//! `z_j = a_j + i b_j`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::chart::{ChartKind, ManifoldChart};
use super::form::{PolyForm, VectorField};
use super::poly::{Poly, Vars};
use super::FormsError;
use crate::Rational;
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedForm {
    /// `β_k = Σ x_l dθ_l + ½ Σ (a_j db_j − b_j da_j)` on `T^k × S^{2d−k−1}`.
    Beta { d: usize, k: usize },
    /// `Σ x_i dθ_i` on `T^d × S^{d−1}`; the case `k = d` of `β_k`.
    Cosphere { d: usize },
    /// `f₁ dθ₁ + f₂ dθ₂ + α′` on `T² × S³`.
    Alpha,
    /// `dθ₁` on `T² × S³`, which is nowhere contact.
    DTheta1,
}

impl NamedForm {
    pub fn chart(&self) -> Result<ManifoldChart, FormsError> {
        match *self {
            NamedForm::Beta { d, k } => ManifoldChart::tk_sphere(d, k),
            NamedForm::Cosphere { d } => ManifoldChart::tk_sphere(d, d),
            NamedForm::Alpha | NamedForm::DTheta1 => Ok(ManifoldChart::t2s3()),
        }
    }

    /// The form on its own chart's variables.
    pub fn build(&self) -> Result<(ManifoldChart, PolyForm), FormsError> {
        let chart = self.chart()?;
        let vars = chart.vars().clone();
        let form = match self {
            NamedForm::Beta { .. } | NamedForm::Cosphere { .. } => beta(&chart, &vars)?,
            NamedForm::Alpha => alpha_t(&vars, &Poly::one(vars.len()))?,
            NamedForm::DTheta1 => PolyForm::dx(&vars, 0),
        };
        Ok((chart, form))
    }

    pub fn name(&self) -> alloc::string::String {
        match self {
            NamedForm::Beta { d, k } => format!("beta(d={d},k={k})"),
            NamedForm::Cosphere { d } => format!("cosphere(d={d})"),
            NamedForm::Alpha => "alpha".into(),
            NamedForm::DTheta1 => "dtheta1".into(),
        }
    }
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// `½ (a db − b da)`.
fn rotation_form(vars: &Arc<Vars>, a: usize, b: usize) -> Result<PolyForm, FormsError> {
    let nv = vars.len();
    let adb = PolyForm::dx(vars, b).mul_poly(&Poly::var(nv, a));
    let bda = PolyForm::dx(vars, a).mul_poly(&Poly::var(nv, b));
    Ok(adb.sub(&bda)?.scale(&half()))
}

fn tk_indices(chart: &ManifoldChart) -> Result<(usize, usize), FormsError> {
    match chart.kind() {
        ChartKind::TkSphere { d, k } => Ok((d, k)),
        ChartKind::T2S3 => Err(FormsError::InvalidChart(
            "form is defined on T^k × S^(2d−k−1) charts".into(),
        )),
    }
}

/// `β_k` on the chart `T^k × S^{2d−k−1}`; `vars` may carry extra
/// parameters.
pub fn beta(chart: &ManifoldChart, vars: &Arc<Vars>) -> Result<PolyForm, FormsError> {
    chart.check_vars(vars)?;
    let (_, k) = tk_indices(chart)?;
    let nv = vars.len();
    let mut out = PolyForm::zero(vars, 1);
    for l in 0..k {
        out = out.add(&PolyForm::dx(vars, l).mul_poly(&Poly::var(nv, k + l)))?;
    }
    for &(a, b) in chart.complex_pairs() {
        out = out.add(&rotation_form(vars, a, b)?)?;
    }
    Ok(out)
}

/// The filling form `Σ dx_l ∧ dθ_l + Σ da_j ∧ db_j` on `T^k × D^{2d−k}`.
pub fn strong_filling_omega(
    chart: &ManifoldChart,
    vars: &Arc<Vars>,
) -> Result<PolyForm, FormsError> {
    chart.check_vars(vars)?;
    let (_, k) = tk_indices(chart)?;
    let mut out = PolyForm::zero(vars, 2);
    for l in 0..k {
        out = out.add(&PolyForm::dx(vars, k + l).wedge(&PolyForm::dx(vars, l))?)?;
    }
    for &(a, b) in chart.complex_pairs() {
        out = out.add(&PolyForm::dx(vars, a).wedge(&PolyForm::dx(vars, b))?)?;
    }
    Ok(out)
}

/// The Liouville field `Σ x_l ∂x_l + ½ Σ (a_j ∂a_j + b_j ∂b_j)`.
pub fn strong_filling_liouville(
    chart: &ManifoldChart,
    vars: &Arc<Vars>,
) -> Result<VectorField, FormsError> {
    chart.check_vars(vars)?;
    let (_, k) = tk_indices(chart)?;
    let nv = vars.len();
    let mut comps: Vec<Poly> = (0..chart.n_coords()).map(|_| Poly::zero(nv)).collect();
    for l in 0..k {
        comps[k + l] = Poly::var(nv, k + l);
    }
    for &(a, b) in chart.complex_pairs() {
        comps[a] = Poly::var(nv, a).scale(&half());
        comps[b] = Poly::var(nv, b).scale(&half());
    }
    Ok(VectorField::new(vars, comps))
}

// Coordinates of the T² × S³ chart.
const TH1: usize = 0;
const TH2: usize = 1;
const A1: usize = 2;
const B1: usize = 3;
const A2: usize = 4;
const B2: usize = 5;

fn check_t2s3(vars: &Vars) -> Result<(), FormsError> {
    ManifoldChart::t2s3().check_vars(vars)
}

/// `α′ = ½(a₁db₁ − b₁da₁) − ½(a₂db₂ − b₂da₂)`.
pub fn alpha_prime(vars: &Arc<Vars>) -> Result<PolyForm, FormsError> {
    check_t2s3(vars)?;
    rotation_form(vars, A1, B1)?.sub(&rotation_form(vars, A2, B2)?)
}

/// `f₁ = 2(a₁b₂ − a₂b₁)` and `f₂ = 2(a₁a₂ + b₁b₂)`.
pub fn f1_f2(vars: &Arc<Vars>) -> Result<(Poly, Poly), FormsError> {
    check_t2s3(vars)?;
    let nv = vars.len();
    let v = |i| Poly::var(nv, i);
    let two = Rational::from_integer(2.into());
    let f1 = v(A1).mul(&v(B2)).sub(&v(A2).mul(&v(B1))).scale(&two);
    let f2 = v(A1).mul(&v(A2)).add(&v(B1).mul(&v(B2))).scale(&two);
    Ok((f1, f2))
}

/// `α_t = t (f₁ dθ₁ + f₂ dθ₂) + α′`; `t` is any polynomial (a constant or
/// a parameter variable).
pub fn alpha_t(vars: &Arc<Vars>, t: &Poly) -> Result<PolyForm, FormsError> {
    let (f1, f2) = f1_f2(vars)?;
    let rotating = PolyForm::dx(vars, TH1)
        .mul_poly(&f1)
        .add(&PolyForm::dx(vars, TH2).mul_poly(&f2))?;
    rotating.mul_poly(t).add(&alpha_prime(vars)?)
}

/// `dθ₁ ∧ dθ₂`.
pub fn dtheta12(vars: &Arc<Vars>) -> Result<PolyForm, FormsError> {
    check_t2s3(vars)?;
    PolyForm::dx(vars, TH1).wedge(&PolyForm::dx(vars, TH2))
}

/// Symbolic data for `P_t(τ) = α_t ∧ (ω + vol_T² + τ dα_t)²` with
/// `ω = dα′`, on `T² × S³` with parameters `t` and `τ`.
///
/// The chart is oriented by `α_t`. The torus volume is `σ dθ₁∧dθ₂` with the
/// sign `σ` making `α′∧dα′∧vol_T²` positive in that orientation; for the
/// explicit `α` this is `σ = −1`.
#[derive(Clone, Debug)]
pub struct WeakFillForms {
    pub chart: ManifoldChart,
    pub vars: Arc<Vars>,
    pub alpha_t: PolyForm,
    pub alpha_prime: PolyForm,
    pub omega: PolyForm,
    pub torus_sign: i8,
    /// `σ dθ₁∧dθ₂`.
    pub torus_volume: PolyForm,
    /// `P_t(τ)`.
    pub p: PolyForm,
    /// `∂P_t/∂τ`, differentiated symbolically.
    pub dp_dtau: PolyForm,
}

impl WeakFillForms {
    pub const T: usize = 6;
    pub const TAU: usize = 7;

    pub fn new() -> WeakFillForms {
        let chart = ManifoldChart::t2s3();
        let vars = chart.vars_with_params(&["t", "τ"]);
        let nv = vars.len();
        let build = || -> Result<WeakFillForms, FormsError> {
            let alpha_t = alpha_t(&vars, &Poly::var(nv, Self::T))?;
            let alpha_prime = alpha_prime(&vars)?;
            let omega = alpha_prime.d();
            let dtheta = dtheta12(&vars)?;
            // α′∧dα′∧dθ₁∧dθ₂ has constant sign on T² × S³; read it off one
            // frame.
            let probe = alpha_prime.wedge(&omega)?.wedge(&dtheta)?;
            let p0 = &chart.sample_points(1, 0)?[0];
            let value = probe.evaluate(&p0.coords, &[Rational::zero(), Rational::zero()], &p0.frame)?;
            let torus_sign: i8 = if value.is_negative() { -1 } else { 1 };
            let torus_volume = dtheta.scale(&Rational::from_integer(torus_sign.into()));
            let inner = omega
                .add(&torus_volume)?
                .add(&alpha_t.d().mul_poly(&Poly::var(nv, Self::TAU)))?;
            let p = alpha_t.wedge(&inner.wedge(&inner)?)?;
            let dp_dtau = p.partial(Self::TAU);
            Ok(WeakFillForms {
                chart: chart.clone(),
                vars: vars.clone(),
                alpha_t,
                alpha_prime,
                omega,
                torus_sign,
                torus_volume,
                p,
                dp_dtau,
            })
        };
        build().expect("forms share one variable list")
    }

    fn w(x: &PolyForm, y: &PolyForm) -> PolyForm {
        x.wedge(y).expect("same variables")
    }

    /// `2τ α_t∧dα_t² + 2 α_t∧dα_t∧vol_T² + 2 α_t∧ω∧dα_t`.
    pub fn stated_derivative(&self) -> PolyForm {
        let nv = self.vars.len();
        let a = &self.alpha_t;
        let da = a.d();
        let t1 = self.contact_volume().mul_poly(&Poly::var(nv, Self::TAU));
        let t2 = Self::w(a, &Self::w(&da, &self.torus_volume));
        let t3 = Self::w(a, &Self::w(&self.omega, &da));
        t1.add(&t2)
            .and_then(|s| s.add(&t3))
            .expect("same degree")
            .scale(&two())
    }

    /// `2τ α_t∧dα_t² + 2 α′∧dα′∧vol_T² + 2t² (f₂df₁ − f₁df₂)∧ω∧dθ₁∧dθ₂`,
    /// which agrees with `∂P/∂τ` on tangent frames of `T² × S³`.
    pub fn expanded_derivative(&self) -> PolyForm {
        let nv = self.vars.len();
        let (f1, f2) = f1_f2(&self.vars).expect("chart variables");
        let df1 = PolyForm::function(&self.vars, f1.clone()).d();
        let df2 = PolyForm::function(&self.vars, f2.clone()).d();
        let mixed = df1.mul_poly(&f2).sub(&df2.mul_poly(&f1)).expect("same degree");
        let t = Poly::var(nv, Self::T);
        let t1 = self.contact_volume().mul_poly(&Poly::var(nv, Self::TAU));
        let t2 = Self::w(&self.alpha_prime, &Self::w(&self.omega, &self.torus_volume));
        let dtheta = dtheta12(&self.vars).expect("chart variables");
        let t3 = Self::w(&mixed, &Self::w(&self.omega, &dtheta)).mul_poly(&t.mul(&t));
        t1.add(&t2)
            .and_then(|s| s.add(&t3))
            .expect("same degree")
            .scale(&two())
    }

    /// `2 α′ ∧ ω ∧ vol_T²`.
    pub fn stated_value_at_zero(&self) -> PolyForm {
        Self::w(&self.alpha_prime, &Self::w(&self.omega, &self.torus_volume)).scale(&two())
    }

    /// `α_t ∧ dα_t ∧ dα_t`, the exact `τ²` coefficient of `P`.
    pub fn contact_volume(&self) -> PolyForm {
        let da = self.alpha_t.d();
        Self::w(&self.alpha_t, &Self::w(&da, &da))
    }
}

fn two() -> Rational {
    Rational::from_integer(2.into())
}

impl Default for WeakFillForms {
    fn default() -> Self {
        WeakFillForms::new()
    }
}

/// `P_t(τ)` with both parameters fixed.
pub fn weak_fill_polynomial(t: &Rational, tau: &Rational) -> PolyForm {
    let forms = WeakFillForms::new();
    let mut values: Vec<Option<Rational>> = (0..forms.vars.n_coords()).map(|_| None).collect();
    values.push(Some(t.clone()));
    values.push(Some(tau.clone()));
    forms.p.substitute(&values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_beta_matches_hand_computation() {
        // d=3, k=2: dβ = dx₁∧dθ₁ + dx₂∧dθ₂ + da₁∧db₁.
        let chart = ManifoldChart::tk_sphere(3, 2).unwrap();
        let vars = chart.vars().clone();
        let b = beta(&chart, &vars).unwrap();
        let dx = |i| PolyForm::dx(&vars, i);
        let expected = dx(2)
            .wedge(&dx(0))
            .unwrap()
            .add(&dx(3).wedge(&dx(1)).unwrap())
            .unwrap()
            .add(&dx(4).wedge(&dx(5)).unwrap())
            .unwrap();
        assert_eq!(b.d(), expected);
        assert_eq!(strong_filling_omega(&chart, &vars).unwrap(), expected);
    }

    #[test]
    fn omega_of_alpha_prime() {
        let vars = ManifoldChart::t2s3().vars().clone();
        let dx = |i| PolyForm::dx(&vars, i);
        let expected = dx(A1)
            .wedge(&dx(B1))
            .unwrap()
            .sub(&dx(A2).wedge(&dx(B2)).unwrap())
            .unwrap();
        assert_eq!(alpha_prime(&vars).unwrap().d(), expected);
    }

    #[test]
    fn weak_fill_polynomial_is_a_five_form() {
        let p = weak_fill_polynomial(&Rational::new(1.into(), 4.into()), &Rational::from_integer(1.into()));
        assert_eq!(p.degree(), 5);
        assert!(!p.is_zero());
    }
}
