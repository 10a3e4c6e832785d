use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::chart::{ChartKind, ManifoldChart, SamplePoint};
use super::form::{PolyForm, VectorField};
use super::library::{beta, strong_filling_liouville, strong_filling_omega, WeakFillForms};
use super::poly::Poly;
use super::FormsError;
use crate::lattice::IntVector;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A sample where the checked quantity failed; `value` is what was found.
    Sample { point: SamplePoint, value: Rational },
    /// A symbolic identity that failed, with `lhs − rhs`.
    Identity { name: String, difference: PolyForm },
}

/// Outcome of a batch of exact checks. Reports from disjoint batches merge
/// with [`VerificationReport::merge`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
    /// Smallest positivity value seen, when the check measures one.
    pub min_margin: Option<Rational>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.checked += other.checked;
        self.failures += other.failures;
        self.witnesses.extend(other.witnesses);
        self.min_margin = match (self.min_margin, other.min_margin) {
            (Some(a), Some(b)) => Some(if b < a { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }

    fn record_positive(&mut self, point: &SamplePoint, value: Rational) {
        self.checked += 1;
        if self.min_margin.as_ref().is_none_or(|m| value < *m) {
            self.min_margin = Some(value.clone());
        }
        if !value.is_positive() {
            self.failures += 1;
            self.witnesses.push(Witness::Sample {
                point: point.clone(),
                value,
            });
        }
    }

    fn record_identity(&mut self, name: &str, difference: PolyForm) {
        self.checked += 1;
        if !difference.is_zero() {
            self.failures += 1;
            self.witnesses.push(Witness::Identity {
                name: name.into(),
                difference,
            });
        }
    }

    fn record_zero_at(&mut self, point: &SamplePoint, value: &Poly) {
        self.checked += 1;
        if !value.is_zero() {
            self.failures += 1;
            let value = value.terms().next().map(|(_, c)| c.clone()).unwrap_or_default();
            self.witnesses.push(Witness::Sample {
                point: point.clone(),
                value,
            });
        }
    }
}

/// `α ∧ (dα)^{n}`.
pub fn contact_volume(alpha: &PolyForm, n: usize) -> Result<PolyForm, FormsError> {
    alpha.wedge(&alpha.d().wedge_power(n))
}

/// Checks `α ∧ (dα)^{d−1} > 0` at `n` exact samples of the chart.
pub fn verify_contact_condition(
    chart: &ManifoldChart,
    alpha: &PolyForm,
    n: usize,
    seed: u64,
) -> Result<VerificationReport, FormsError> {
    chart.check_vars(alpha.vars())?;
    if alpha.degree() != 1 {
        return Err(FormsError::DegreeMismatch {
            expected: 1,
            got: alpha.degree(),
        });
    }
    let top = contact_volume(alpha, chart.torus_rank() - 1)?;
    let mut report = VerificationReport::default();
    for p in chart.sample_points(n, seed)? {
        let value = top.evaluate(&p.coords, &[], &p.frame)?;
        report.record_positive(&p, value);
    }
    Ok(report)
}

/// `p ↦ (α_p(X₁), …, α_p(X_r))` for the torus action with the given weights
/// on the chart's elementary generators.
#[derive(Clone, Debug)]
pub struct MomentMap {
    alpha: PolyForm,
    generators: Vec<VectorField>,
    weights: Vec<IntVector>,
}

impl MomentMap {
    pub fn at(&self, p: &SamplePoint) -> Result<Vec<Rational>, FormsError> {
        let fields: Vec<Vec<Rational>> = self
            .generators
            .iter()
            .map(|g| g.at(&p.coords, &[]))
            .collect();
        let n = p.coords.len();
        self.weights
            .iter()
            .map(|w| {
                let mut x = alloc::vec![Rational::zero(); n];
                for (we, field) in w.entries().iter().zip(&fields) {
                    if we.is_zero() {
                        continue;
                    }
                    let we = Rational::from_integer(we.clone());
                    for (xi, fi) in x.iter_mut().zip(field) {
                        *xi += &we * fi;
                    }
                }
                self.alpha.evaluate(&p.coords, &[], &[x])
            })
            .collect()
    }
}

pub fn moment_map(
    chart: &ManifoldChart,
    alpha: &PolyForm,
    weights: &[IntVector],
) -> Result<MomentMap, FormsError> {
    chart.check_vars(alpha.vars())?;
    if alpha.degree() != 1 {
        return Err(FormsError::DegreeMismatch {
            expected: 1,
            got: alpha.degree(),
        });
    }
    let generators = chart.elementary_generators(alpha.vars());
    for w in weights {
        if w.dim() != generators.len() {
            return Err(FormsError::WeightMismatch {
                expected: generators.len(),
                got: w.dim(),
            });
        }
    }
    Ok(MomentMap {
        alpha: alpha.clone(),
        generators,
        weights: weights.to_vec(),
    })
}

/// Moment-image checks for the standard action on each chart.
///
/// On `T^k × S^{2d−k−1}` with `k < d` the image must lie in
/// `{μ_{k+1}, …, μ_d ≥ 0}` (margin: the smallest of these coordinates, so
/// zero is allowed). For `k = d` it must lie on the unit sphere. On `T² × S³`
/// it must avoid the origin (margin: `|μ|²`).
pub fn verify_moment_image(
    chart: &ManifoldChart,
    alpha: &PolyForm,
    n: usize,
    seed: u64,
) -> Result<VerificationReport, FormsError> {
    let mu = moment_map(chart, alpha, &chart.standard_weights())?;
    let mut report = VerificationReport::default();
    for p in chart.sample_points(n, seed)? {
        let m = mu.at(&p)?;
        let norm2 = m.iter().map(|v| v * v).fold(Rational::zero(), |a, b| a + b);
        match chart.kind() {
            ChartKind::TkSphere { d, k } if k < d => {
                let min = m[k..].iter().min().cloned().unwrap_or_default();
                report.checked += 1;
                if report.min_margin.as_ref().is_none_or(|x| min < *x) {
                    report.min_margin = Some(min.clone());
                }
                if min.is_negative() {
                    report.failures += 1;
                    report.witnesses.push(Witness::Sample { point: p, value: min });
                }
            }
            ChartKind::TkSphere { .. } => {
                report.checked += 1;
                if !norm2.is_one() {
                    report.failures += 1;
                    report.witnesses.push(Witness::Sample {
                        point: p,
                        value: norm2,
                    });
                }
            }
            ChartKind::T2S3 => report.record_positive(&p, norm2),
        }
    }
    Ok(report)
}

/// Checks, as exact form identities on `T^k × D^{2d−k}`: `dω = 0`,
/// `d(ι_X ω) = ω` and `ι_X ω = β_k`.
pub fn verify_strong_filling(d: usize, k: usize) -> Result<VerificationReport, FormsError> {
    let chart = ManifoldChart::tk_sphere(d, k)?;
    let vars = chart.vars().clone();
    let omega = strong_filling_omega(&chart, &vars)?;
    let x = strong_filling_liouville(&chart, &vars)?;
    let contracted = omega.interior(&x)?;
    let mut report = VerificationReport::default();
    report.record_identity("dω = 0", omega.d());
    report.record_identity("d(ι_X ω) = ω", contracted.d().sub(&omega)?);
    report.record_identity("ι_X ω = β_k", contracted.sub(&beta(&chart, &vars)?)?);
    Ok(report)
}

/// Result of the weak-filling check on `T² × S³`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakFillReport {
    /// Largest `t = 2^{-n}`, `0 ≤ n ≤ 20`, with `∂P_t/∂τ > 0` everywhere
    /// checked.
    pub t_star: Rational,
    /// `σ` in `vol_T² = σ dθ₁∧dθ₂`.
    pub torus_sign: i8,
    /// Exact identities: `P_t(0) = 2α′∧ω∧vol_T²` and the expanded form of
    /// `∂P/∂τ` on every frame, the stated form of `∂P/∂τ` as ambient forms,
    /// and the finite-difference residual.
    pub identities: VerificationReport,
    /// `∂P/∂τ` at `t_star`, every sample and every `τ`.
    pub derivative: VerificationReport,
    /// `P` at `t_star`, every sample, `τ = 0` and every grid `τ`.
    pub value: VerificationReport,
}

impl WeakFillReport {
    pub fn combined(&self) -> VerificationReport {
        self.identities
            .clone()
            .merge(self.derivative.clone())
            .merge(self.value.clone())
    }
}

const MAX_HALVINGS: u32 = 20;

pub fn verify_weak_fill(
    n: usize,
    tau_grid: &[Rational],
    seed: u64,
) -> Result<WeakFillReport, FormsError> {
    let forms = WeakFillForms::new();
    let samples = forms.chart.sample_points(n, seed)?;
    let nc = forms.vars.n_coords();
    let nv = forms.vars.len();
    let symbolic = [None, None];
    let zero = Rational::zero();

    let mut identities = VerificationReport::default();
    let stated = forms.stated_derivative();
    identities.record_identity("∂P/∂τ = stated expansion", forms.dp_dtau.sub(&stated)?);

    // P is quadratic in τ, so the forward difference misses ∂P/∂τ by exactly
    // h·α_t∧dα_t².
    let h = Rational::new(1.into(), 1000.into());
    let volume = forms.contact_volume();
    for tau in tau_grid {
        let at = |v: &Rational| {
            let mut values: Vec<Option<Rational>> = alloc::vec![None; nc];
            values.push(None);
            values.push(Some(v.clone()));
            values
        };
        let fd = forms
            .p
            .substitute(&at(&(tau + &h)))
            .sub(&forms.p.substitute(&at(tau)))?
            .scale(&(Rational::one() / &h));
        let residual = fd
            .sub(&forms.dp_dtau.substitute(&at(tau)))?
            .sub(&volume.substitute(&at(tau)).scale(&h))?;
        identities.record_identity("finite difference of P in τ", residual);
    }

    let at_zero = forms.stated_value_at_zero();
    let expanded = forms.expanded_derivative();
    let mut derivative_polys = Vec::with_capacity(samples.len());
    let mut value_polys = Vec::with_capacity(samples.len());
    for p in &samples {
        let diff = forms
            .p
            .evaluate_symbolic(&p.coords, &[None, Some(zero.clone())], &p.frame)?
            .sub(&at_zero.evaluate_symbolic(&p.coords, &symbolic, &p.frame)?);
        identities.record_zero_at(p, &diff);
        let diff = forms
            .dp_dtau
            .evaluate_symbolic(&p.coords, &symbolic, &p.frame)?
            .sub(&expanded.evaluate_symbolic(&p.coords, &symbolic, &p.frame)?);
        identities.record_zero_at(p, &diff);
        derivative_polys.push(forms.dp_dtau.evaluate_symbolic(&p.coords, &symbolic, &p.frame)?);
        value_polys.push(forms.p.evaluate_symbolic(&p.coords, &symbolic, &p.frame)?);
    }

    let eval_at = |poly: &Poly, t: &Rational, tau: &Rational| {
        let mut values = alloc::vec![Rational::zero(); nc];
        values.push(t.clone());
        values.push(tau.clone());
        debug_assert_eq!(values.len(), nv);
        poly.eval(&values)
    };

    let mut t = Rational::one();
    let two = Rational::from_integer(2.into());
    for _ in 0..=MAX_HALVINGS {
        let all_positive = derivative_polys
            .iter()
            .all(|q| tau_grid.iter().all(|tau| eval_at(q, &t, tau).is_positive()));
        if all_positive {
            let mut derivative = VerificationReport::default();
            let mut value = VerificationReport::default();
            for (i, p) in samples.iter().enumerate() {
                for tau in tau_grid {
                    derivative.record_positive(p, eval_at(&derivative_polys[i], &t, tau));
                }
                for tau in core::iter::once(&zero).chain(tau_grid) {
                    value.record_positive(p, eval_at(&value_polys[i], &t, tau));
                }
            }
            return Ok(WeakFillReport {
                t_star: t,
                torus_sign: forms.torus_sign,
                identities,
                derivative,
                value,
            });
        }
        t /= &two;
    }
    Err(FormsError::NoPositiveT)
}

/// Exact cosine and sine of `2π/k` for the orders where both are rational.
fn rational_rotation(k: u32) -> Option<(Rational, Rational)> {
    let q = |n: i64| Rational::from_integer(n.into());
    match k {
        1 => Some((q(1), q(0))),
        2 => Some((q(-1), q(0))),
        4 => Some((q(0), q(1))),
        _ => None,
    }
}

/// Compares `α` and `α∧dα²` at `p` and at `(ζz₁, ζz₂)`, `ζ = e^{2πi/k}`,
/// on the pushed-forward frame.
pub fn verify_zk_invariance(
    alpha: &PolyForm,
    k: u32,
    n: usize,
    seed: u64,
) -> Result<VerificationReport, FormsError> {
    let chart = ManifoldChart::t2s3();
    chart.check_vars(alpha.vars())?;
    let (c, s) = rational_rotation(k).ok_or(FormsError::UnsupportedRotation(k))?;
    let rotate = |v: &[Rational]| -> Vec<Rational> {
        let mut out = v.to_vec();
        for &(a, b) in chart.complex_pairs() {
            out[a] = &c * &v[a] - &s * &v[b];
            out[b] = &s * &v[a] + &c * &v[b];
        }
        out
    };
    let top = contact_volume(alpha, 2)?;
    let mut report = VerificationReport::default();
    for p in chart.sample_points(n, seed)? {
        let q = SamplePoint {
            coords: rotate(&p.coords),
            frame: p.frame.iter().map(|v| rotate(v)).collect(),
        };
        let mut diffs = alloc::vec![
            top.evaluate(&q.coords, &[], &q.frame)? - top.evaluate(&p.coords, &[], &p.frame)?
        ];
        for (u, v) in p.frame.iter().zip(&q.frame) {
            diffs.push(
                alpha.evaluate(&q.coords, &[], core::slice::from_ref(v))?
                    - alpha.evaluate(&p.coords, &[], core::slice::from_ref(u))?,
            );
        }
        report.checked += 1;
        if let Some(d) = diffs.into_iter().find(|d| !d.is_zero()) {
            report.failures += 1;
            report.witnesses.push(Witness::Sample { point: p, value: d });
        }
    }
    Ok(report)
}
