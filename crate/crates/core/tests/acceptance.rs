//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torcone_core::classify::{classify_higher_non_free, AnglePair, VerdictTag};
use torcone_core::cone::probe_vector;
use torcone_core::forms::{
    verify_contact_condition, verify_moment_image, verify_strong_filling, verify_weak_fill,
    NamedForm,
};
use torcone_core::lattice::gcd_reduce;
use torcone_core::{classify, ClassificationResult, ClassifyError, Cone, IntVector, Rational, ToricInput};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn triple_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut n = 0;
    while n < 500 {
        let e: Vec<i64> = (0..3).map(|_| rng.random_range(-50..=50)).collect();
        if e.iter().all(|x| *x == 0) {
            continue;
        }
        n += 1;
        let v = IntVector::from_i64s(&e);
        let (g, u) = gcd_reduce(&v).map_err(|err| format!("{v}: {err}"))?;
        let expected = BigInt::from(common::euclid(&e));
        ensure(g == expected, || format!("{v}: gcd {g}, Euclid says {expected}"))?;
        ensure(u.matrix().det().is_one(), || format!("{v}: det U = {}", u.matrix().det()))?;
        let image = u.matrix().mul_vec(&v);
        ensure(image == IntVector::new(vec![g.clone(), 0.into(), 0.into()]), || {
            format!("{v}: U·v = {image}")
        })?;
    }
    Ok(format!("{n} triples"))
}

fn expect(
    name: &str,
    input: ToricInput,
    manifold: Option<&str>,
    reeb: Option<bool>,
    tag: VerdictTag,
) -> Result<(), String> {
    let r = classify(&input).map_err(|e| format!("{name}: {e}"))?;
    let ok = manifold.is_none_or(|m| r.manifold == m)
        && reeb.is_none_or(|b| r.reeb_type == b)
        && r.verdict.tag == tag;
    ensure(ok, || {
        format!(
            "{name}: got {} / reeb {} / {}",
            r.manifold,
            r.reeb_type,
            r.verdict.tag.as_str()
        )
    })
}

fn golden_table() -> Outcome {
    use VerdictTag::*;
    let mut rows = 0;
    for d in 2..=4 {
        expect(
            &format!("orthant R^{d}"),
            ToricInput::Cone(Cone::orthant(d).unwrap()),
            None,
            Some(true),
            StronglyFillable,
        )?;
        rows += 1;
    }
    let pair = |a, b| ToricInput::AnglePair(AnglePair::from_i64s(a, b, false));
    let table = [
        ("straight pair", pair([1, 0], [-1, 0]), Some("S^1 × S^2"), Some(false), StronglyFillable),
        ("reflex pair", pair([1, 0], [0, -1]), None, Some(false), Overtwisted),
        ("half-space R^3", ToricInput::Cone(Cone::from_i64_normals(3, &[&[1, 0, 0]]).unwrap()), Some("T^2 × S^3"), Some(false), StronglyFillable),
        ("triple (2,4,6)", ToricInput::FreeTriple(IntVector::from_i64s(&[2, 4, 6])), Some("T^2 × L_2"), Some(false), WeaklyFillableStrongOpen),
        ("triple (0,0,0)", ToricInput::FreeTriple(IntVector::from_i64s(&[0, 0, 0])), Some("T^3 × S^2"), Some(false), StronglyFillable),
        ("T^3, k=1", ToricInput::FreeTorus3(1.into()), Some("T^3 with ξ_1"), Some(false), StronglyFillable),
        ("T^3, k=2", ToricInput::FreeTorus3(2.into()), Some("T^3 with ξ_2"), Some(false), WeaklyFillableOnly),
    ];
    for (name, input, manifold, reeb, tag) in table {
        expect(name, input, manifold, reeb, tag)?;
        rows += 1;
    }
    Ok(format!("{rows} rows"))
}

type Verdict = Result<(String, bool, VerdictTag), String>;

fn verdict(r: Result<ClassificationResult, ClassifyError>) -> Verdict {
    match r {
        Ok(r) => Ok((r.manifold, r.reeb_type, r.verdict.tag)),
        Err(e) => Err(format!("{:?}", std::mem::discriminant(&e))),
    }
}

/// Pointed full-dimensional cone: the orthant plus random rays inside it,
/// moved by a random unimodular matrix.
fn pointed_cone(rng: &mut ChaCha8Rng, d: usize) -> Cone {
    let mut gens: Vec<IntVector> = (0..d).map(|i| IntVector::unit(d, i)).collect();
    for _ in 0..rng.random_range(0..=8 - d) {
        let v: Vec<i64> = (0..d).map(|_| rng.random_range(0..=4)).collect();
        gens.push(IntVector::from_i64s(&v));
    }
    let u = common::random_sl(rng, d);
    Cone::from_generators(d, gens.iter().map(|g| u.apply(g)).filter(|g| !g.is_zero()).collect()).unwrap()
}

/// Cone containing a line: random rays plus a random `±v`.
fn non_pointed_cone(rng: &mut ChaCha8Rng, d: usize) -> Cone {
    let v = common::random_nonzero_vector(rng, d, 3);
    let mut gens = vec![v.clone(), v.neg()];
    for _ in 0..rng.random_range(0..=4) {
        gens.push(common::random_vector(rng, d, 3));
    }
    Cone::from_generators(d, gens).unwrap()
}

fn sl_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut ok_cones = 0;
    for i in 0..100 {
        let d = rng.random_range(3..=4);
        let c = match i % 3 {
            0 => pointed_cone(&mut rng, d),
            1 => Cone::standard(d, rng.random_range(1..d)).unwrap(),
            _ => non_pointed_cone(&mut rng, d),
        };
        let u = common::random_sl(&mut rng, d);
        let image = c.transformed(&u).unwrap();
        let a = verdict(classify_higher_non_free(&c));
        let b = verdict(classify_higher_non_free(&image));
        ensure(a == b, || format!("cone {c:?}: {a:?} vs {b:?}"))?;
        ok_cones += a.is_ok() as usize;
    }
    for _ in 0..100 {
        let v = common::random_vector(&mut rng, 3, 50);
        let m = common::random_sl(&mut rng, 3);
        let a = verdict(classify(&ToricInput::FreeTriple(v.clone())));
        let b = verdict(classify(&ToricInput::FreeTriple(m.apply(&v))));
        ensure(a == b, || format!("triple {v}: {a:?} vs {b:?}"))?;
    }
    Ok(format!("100 cones ({ok_cones} classified), 100 triples"))
}

fn cone_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut n = 0;
    while n < 200 {
        let d = rng.random_range(2..=4);
        let rays: Vec<IntVector> =
            (0..rng.random_range(1..=8)).map(|_| common::random_vector(&mut rng, d, 3)).collect();
        let Ok(c) = Cone::from_generators(d, rays) else { continue };
        n += 1;
        let gens = c.generators().unwrap().to_vec();
        let expected = common::lineality_oracle(&gens);
        let got = c.lineality().map_err(|e| e.to_string())?.dimension;
        ensure(got == expected, || format!("{c:?}: lineality {got}, oracle {expected}"))?;
        let pointed = c.is_strictly_convex().map_err(|e| e.to_string())?;
        ensure(pointed == (expected == 0), || format!("{c:?}: pointedness disagrees"))?;
    }
    Ok(format!("{n} cones"))
}

fn positive_report(name: &str, r: &torcone_core::forms::VerificationReport, n: usize) -> Result<Rational, String> {
    ensure(r.checked == n && r.failures == 0, || {
        format!("{name}: {} failures of {}", r.failures, r.checked)
    })?;
    let m = r.min_margin.clone().ok_or_else(|| format!("{name}: no margin"))?;
    ensure(m.is_positive(), || format!("{name}: margin {m}"))?;
    Ok(m)
}

fn contact_positivity() -> Outcome {
    let n = 1000;
    let mut forms: Vec<NamedForm> =
        [(2, 1), (3, 1), (3, 2), (4, 2), (4, 4)].iter().map(|&(d, k)| NamedForm::Beta { d, k }).collect();
    forms.push(NamedForm::Alpha);
    let mut smallest: Option<Rational> = None;
    for f in forms {
        let (chart, alpha) = f.build().map_err(|e| e.to_string())?;
        let r = verify_contact_condition(&chart, &alpha, n, 5).map_err(|e| e.to_string())?;
        let m = positive_report(&f.name(), &r, n)?;
        if smallest.as_ref().is_none_or(|s| m < *s) {
            smallest = Some(m);
        }
    }
    Ok(format!("6 forms × {n} samples, smallest margin {}", smallest.unwrap()))
}

fn strong_filling() -> Outcome {
    for (d, k) in [(2, 2), (3, 1), (3, 2), (4, 2)] {
        let r = verify_strong_filling(d, k).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.checked == 3, || format!("(d,k)=({d},{k}): {:?}", r.witnesses))?;
    }
    Ok("4 cases, 3 identities each".into())
}

fn weak_fill() -> Outcome {
    let grid: Vec<Rational> = [0, 1, 10, 100].iter().map(|&v| Rational::from_integer(v.into())).collect();
    let r = verify_weak_fill(500, &grid, 7).map_err(|e| e.to_string())?;
    ensure(r.identities.passed(), || format!("identities: {:?}", r.identities.witnesses.first()))?;
    positive_report("dP/dτ", &r.derivative, 500 * grid.len())?;
    positive_report("P", &r.value, 500 * (grid.len() + 1))?;
    let floor = Rational::new(1.into(), BigInt::from(1u64 << 20));
    ensure(r.t_star >= floor, || format!("t* = {}", r.t_star))?;
    Ok(format!(
        "t* = {}, torus orientation {}, {} identity checks",
        r.t_star, r.torus_sign, r.identities.checked
    ))
}

fn moment_containment() -> Outcome {
    let n = 500;
    let mut forms: Vec<NamedForm> =
        [(2, 1), (3, 1), (3, 2), (4, 2)].iter().map(|&(d, k)| NamedForm::Beta { d, k }).collect();
    forms.extend((2..=4).map(|d| NamedForm::Cosphere { d }));
    for f in &forms {
        let (chart, alpha) = f.build().map_err(|e| e.to_string())?;
        let r = verify_moment_image(&chart, &alpha, n, 8).map_err(|e| e.to_string())?;
        ensure(r.checked == n && r.failures == 0, || {
            format!("{}: {} failures of {}", f.name(), r.failures, r.checked)
        })?;
    }
    Ok(format!("{} forms × {n} samples", forms.len()))
}

fn slice_coherence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200 {
        let d = rng.random_range(2..=4);
        let c = if i < 100 { pointed_cone(&mut rng, d) } else { non_pointed_cone(&mut rng, d) };
        let r = match c.reeb_vector() {
            Ok(r) => r,
            Err(_) => probe_vector(&c).map_err(|e| e.to_string())?,
        };
        let s = c.slice(&r).map_err(|e| e.to_string())?;
        let convex = c.is_strictly_convex().map_err(|e| e.to_string())?;
        ensure(s.bounded == convex, || format!("{c:?}: bounded {} vs pointed {convex}", s.bounded))?;
        ensure(convex == (i < 100), || format!("{c:?}: generator produced the wrong kind"))?;
        ensure(s.vertices.iter().all(|v| s.height(v).is_one()), || format!("{c:?}: vertex off the slice"))?;
    }
    Ok("100 pointed, 100 non-pointed".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("triple reduction", triple_reduction),
        ("classification golden table", golden_table),
        ("SL(d,Z) invariance", sl_invariance),
        ("cone oracle equivalence", cone_oracle),
        ("contact positivity", contact_positivity),
        ("strong-filling identities", strong_filling),
        ("weak-filling polynomial", weak_fill),
        ("moment-map containment", moment_containment),
        ("slice/Reeb coherence", slice_coherence),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[{}] PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[{}] FAIL {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
