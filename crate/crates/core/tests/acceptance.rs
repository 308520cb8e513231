//! Acceptance criteria 1-8, one PASS/FAIL line each. Exits nonzero if any fail.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use algdyn::cli::{cmd_analyze, cmd_goe, cmd_simulate, parse_poly, RunReport, Settings};
use algdyn::harmonic::{
    audit_residual_exact, decide_expansive, CertifiedInverse, ExpansivenessStatus,
};
use algdyn::simulator::{
    apply_endo, decay_profile, defect, fundamental_homoclinic, ConfigurationWindow,
    HomoclinicGenerator, HomoclinicWindow, WindowBox,
};
use algdyn::structure::{
    decide_goe, fixed_points, mult_injective_mod, EndomorphismSpec, GoeOutcome,
};
use algdyn::GroupRingElement;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn get<'a>(r: &'a RunReport, k: &str) -> Result<&'a str, String> {
    r.get(k).ok_or_else(|| format!("report has no `{k}`"))
}

fn num(r: &RunReport, k: &str) -> Result<f64, String> {
    get(r, k)?.parse().map_err(|e| format!("`{k}`: {e}"))
}

/// Certified inverses collected for the soundness audit.
#[derive(Default)]
struct Audit {
    certified: Vec<(GroupRingElement, CertifiedInverse)>,
}

const TOL: f64 = 1e-9;

fn cat() -> GroupRingElement {
    GroupRingElement::from_univariate(0, &[-1, -1, 1])
}

fn criterion_1(audit: &mut Audit) -> Outcome {
    let t0 = Instant::now();
    let r = cmd_analyze(&parse_poly("u^2 - u - 1").unwrap(), &Settings::default()).map_err(|e| e.to_string())?;
    let secs = t0.elapsed().as_secs_f64();
    check(get(&r, "expansive")? == "yes", || "expansive != yes".into())?;
    check(get(&r, "certificate_kind")? == "inverse_residual", || "not an inverse residual".into())?;
    let rho = num(&r, "residual_l1")?;
    let grid: usize = get(&r, "grid")?.parse().map_err(|e| format!("{e}"))?;
    check(rho < 1e-6, || format!("residual {rho}"))?;
    check(grid <= 1024, || format!("grid {grid}"))?;
    check(secs < 5.0, || format!("{secs:.2} s"))?;
    check(get(&r, "lopsided")? == "no", || "lopsided".into())?;
    check(get(&r, "connected")? == "yes", || "not connected".into())?;
    let v = decide_expansive(&cat(), TOL);
    audit.certified.push((cat(), v.inverse().unwrap().clone()));
    Ok(format!("residual {rho:.2e} at N = {grid}, {:.1} ms, not lopsided, connected", secs * 1e3))
}

fn criterion_2() -> Outcome {
    let f = parse_poly("1 - 2*u1 + u1^2 - 2*u1^3 + u1^4").unwrap();
    let s = Settings::default();
    let r = cmd_analyze(&f, &s).map_err(|e| e.to_string())?;
    check(get(&r, "status")? == "not_expansive", || "status".into())?;
    check(get(&r, "certificate_kind")? == "unit_zero_witness", || "certificate".into())?;
    let factor = parse_poly(get(&r, "unit_factor")?).map_err(|e| e.to_string())?;
    check(factor.support_len() > 1, || format!("unit factor {factor} is constant"))?;
    check(get(&r, "mixing_d1")? == "yes", || "mixing".into())?;
    check(r.get("cyclotomic_divisor").is_none(), || "cyclotomic divisor reported".into())?;
    check(get(&r, "root_split")? == "inside=1 on_circle=2 outside=1 unknown=0", || {
        format!("root split {}", r.get("root_split").unwrap_or(""))
    })?;
    let width = num(&r, "root_modulus_width")?;
    check(width <= 1e-9, || format!("modulus width {width}"))?;
    let g = cmd_goe(&f, &EndomorphismSpec::linear(GroupRingElement::from_univariate(1, &[1])), &s)
        .map_err(|e| e.to_string())?;
    check(get(&g, "refused_hypothesis")? == "expansive", || "GoE not refused on expansiveness".into())?;
    check(get(&g, "refusal_kind")? == "hypothesis_failed", || "refusal kind".into())?;
    Ok(format!("unit factor {factor}, roots 1 in / 2 on / 1 out, width {width:.1e}, GoE refused"))
}

fn criterion_3() -> Outcome {
    let f = GroupRingElement::zero(1);
    let two = EndomorphismSpec::linear(GroupRingElement::constant(1, 2));
    let s = Settings::default();
    let g = cmd_goe(&f, &two, &s).map_err(|e| e.to_string())?;
    check(get(&g, "refused_hypothesis")? == "expansive", || "not refused".into())?;
    check(get(&g, "expansiveness_certificate")? == "rational_zero", || "certificate".into())?;
    let sim = cmd_simulate(&f, &two, None, &s).map_err(|e| e.to_string())?;
    for (k, v) in [
        ("witness_in_zero_class", "yes"),
        ("witness_homoclinic", "yes"),
        ("pre_injective", "no"),
        ("surjective", "yes"),
    ] {
        check(get(&sim, k)? == v, || format!("{k} != {v}"))?;
    }
    // the same witness built by hand
    let b = WindowBox::centered(1, 16);
    let y = ConfigurationWindow::from_fn(b, |p| if p[0] == 0 { 0.5 } else { 0.0 });
    let image = apply_endo(&y, &two).map_err(|e| e.to_string())?;
    check(image.max_circle_abs() == 0.0, || "2y is not zero".into())?;
    let prof = decay_profile(&HomoclinicWindow::exact(y.clone()));
    check(prof.iter().all(|(_, v)| *v == 0.0), || "y is not homoclinic".into())?;
    check(y.get(&[0]) == Some(0.5), || "y(0)".into())?;
    Ok("goe refused; y(0) = 1/2 maps to 0 and vanishes off the origin".into())
}

fn random_pair(rng: &mut ChaCha8Rng) -> (GroupRingElement, GroupRingElement) {
    let poly = |rng: &mut ChaCha8Rng, deg: usize| {
        let low = rng.random_range(-2..=2);
        common::random_univariate(rng, deg, 3, low)
    };
    if rng.random_bool(0.4) {
        // shared factor a
        let a = poly(rng, 3);
        let b = poly(rng, 3);
        let c = poly(rng, 3);
        (&a * &b, &a * &c)
    } else {
        let f = poly(rng, 6);
        let r = poly(rng, 6);
        (f, r)
    }
}

fn degree(f: &GroupRingElement) -> i64 {
    match f.exponent_bounds() {
        Some((lo, hi)) => hi[0] - lo[0],
        None => 0,
    }
}

fn criterion_4(audit: &mut Audit) -> Outcome {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xac04);
    let s = Settings::default();
    let (mut tested, mut discarded, mut injective, mut drawn) = (0, 0, 0, 0);
    while tested < 200 {
        drawn += 1;
        let (f, r) = random_pair(&mut rng);
        if degree(&f) > 6 || degree(&r) > 6 || !common::primitive(&f) {
            discarded += 1;
            continue;
        }
        let v = decide_expansive(&f, TOL);
        if v.status != ExpansivenessStatus::Expansive {
            discarded += 1;
            continue;
        }
        let endo = EndomorphismSpec::linear(r.clone());
        let verdict = match decide_goe(&f, &endo, TOL).map_err(|e| e.to_string())? {
            GoeOutcome::Verdict(v) => v,
            GoeOutcome::Refused(x) => return Err(format!("{f}: refused ({})", x.note)),
        };
        let oracle = common::companion_injective(&f, &r);
        check(verdict.pre_injective == oracle, || format!("f = {f}, r = {r}: verdict {} oracle {oracle}", verdict.pre_injective))?;
        check(verdict.surjective == verdict.pre_injective, || format!("{f}, {r}: surjective != pre-injective"))?;
        let rep = cmd_goe(&f, &endo, &s).map_err(|e| e.to_string())?;
        let kv = rep.deterministic_kv();
        let line = |k: &str| kv.lines().find_map(|l| l.strip_prefix(k).map(str::to_string));
        let (a, b) = (line("surjective=").unwrap_or_default(), line("pre_injective=").unwrap_or_default());
        check(!a.is_empty() && a.as_bytes() == b.as_bytes(), || format!("{f}, {r}: report lines differ"))?;
        injective += oracle as usize;
        audit.certified.push((f, v.inverse().unwrap().clone()));
        tested += 1;
    }
    let secs = t0.elapsed().as_secs_f64();
    check(secs <= 60.0, || format!("{secs:.1} s"))?;
    Ok(format!(
        "{tested} pairs ({injective} injective, {} not), {discarded} of {drawn} discarded, {secs:.1} s",
        tested - injective
    ))
}

fn criterion_5(audit: &Audit) -> Outcome {
    let one = BigRational::one();
    let mut worst_defect = 0.0f64;
    for (f, c) in &audit.certified {
        let exact = audit_residual_exact(&c.w, f);
        check(exact < one, || format!("{f}: exact residual >= 1"))?;
        let gen = HomoclinicGenerator::new(f, TOL).map_err(|e| e.to_string())?;
        let exact_star = audit_residual_exact(gen.w(), &f.involute());
        check(exact_star < one, || format!("{f}: exact residual for f* >= 1"))?;
        let x = fundamental_homoclinic(f, TOL, 16).map_err(|e| e.to_string())?;
        let d = defect(&x.window, f).map_err(|e| e.to_string())?;
        let bound = common::f64_of(&f.l1_exact()) * TOL + 1e-12;
        check(d <= bound, || format!("{f}: defect {d:.3e} > {bound:.3e}"))?;
        worst_defect = worst_defect.max(d / bound);
    }
    Ok(format!(
        "{} certificates audited exactly, worst defect/bound {worst_defect:.3}",
        audit.certified.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac06);
    let mut done = 0;
    let mut worst = 0.0f64;
    while done < 50 {
        let d = 1 + done % 2;
        let f = common::random_element(&mut rng, d, 4, if d == 1 { 2 } else { 1 }, 3);
        if f.is_zero() || decide_expansive(&f, TOL).status != ExpansivenessStatus::Expansive {
            continue;
        }
        let h = common::random_element(&mut rng, d, 4, 2, 2);
        if h.is_zero() || h.l1_exact() > 5.into() {
            continue;
        }
        let y = algdyn::simulator::psi(&(&f.involute() * &h), &f, TOL, if d == 1 { 24 } else { 8 })
            .map_err(|e| e.to_string())?;
        let bound = common::f64_of(&f.l1_exact()) * common::f64_of(&h.l1_exact()) * TOL;
        let m = y.window.max_circle_abs();
        check(m <= bound, || format!("f = {f}, h' = {h}: {m:.3e} > {bound:.3e}"))?;
        worst = worst.max(m / bound);
        done += 1;
    }
    Ok(format!("50 cases in the zero class, worst ratio to bound {worst:.3}"))
}

fn criterion_7() -> Outcome {
    let x = fundamental_homoclinic(&cat(), TOL, 32).map_err(|e| e.to_string())?;
    let p = decay_profile(&x);
    let rate = 2.0 / (1.0 + 5f64.sqrt());
    let mut worst = 0.0f64;
    for r in 5..15 {
        let ratio = p[r + 1].1 / p[r].1;
        // partial fractions: the maximum beyond radius r is φ^{-r}/√5
        let oracle = common::cat_inverse(r as i64).abs().max(common::cat_inverse(-(r as i64) - 1).abs());
        check((p[r].1 - oracle).abs() < 1e-8, || format!("radius {r}: {} vs oracle {oracle}", p[r].1))?;
        check((ratio - rate).abs() <= 1e-2, || format!("radius {r}: ratio {ratio}"))?;
        worst = worst.max((ratio - rate).abs());
    }
    Ok(format!("ratios at radii 5-15 within {worst:.1e} of 2/(1+sqrt 5)"))
}

fn goe_summary(f: &GroupRingElement, endo: &EndomorphismSpec) -> String {
    match decide_goe(f, endo, TOL) {
        Ok(GoeOutcome::Verdict(v)) => format!("verdict {} {} {}", v.surjective, v.pre_injective, v.certificate.kind()),
        Ok(GoeOutcome::Refused(x)) => format!("refused {} {:?}", x.hypothesis.as_str(), x.kind),
        Err(e) => format!("error {e}"),
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac08);
    // monomial units never change a verdict
    let mut n_mono = 0;
    while n_mono < 120 {
        let d = 1 + n_mono % 2;
        let f = common::random_element(&mut rng, d, 4, if d == 1 { 2 } else { 1 }, 3);
        let r = common::random_element(&mut rng, d, 3, 2, 3);
        if f.is_zero() {
            continue;
        }
        let fu = &f * &common::random_unit(&mut rng, d);
        let ru = &r * &common::random_unit(&mut rng, d);
        let e = EndomorphismSpec::linear(r.clone());
        let eu = EndomorphismSpec::linear(ru.clone());
        check(decide_expansive(&f, TOL).status == decide_expansive(&fu, TOL).status, || format!("expansive({f})"))?;
        check(goe_summary(&f, &e) == goe_summary(&fu, &eu), || format!("goe({f}, {r})"))?;
        if common::primitive(&f) {
            check(
                mult_injective_mod(&f, &r).unwrap().0 == mult_injective_mod(&fu, &ru).unwrap().0,
                || format!("mult({f}, {r})"),
            )?;
        }
        n_mono += 1;
    }
    // the translation never changes the verdict
    let (mut n_t, mut n_elems) = (0, 0);
    while n_t < 100 {
        let f = common::random_univariate(&mut rng, 4, 3, 0);
        let s = num_traits::ToPrimitive::to_i64(&f.evaluate_at_one()).unwrap().abs();
        if !(2..=12).contains(&s) {
            continue;
        }
        let r = common::random_univariate(&mut rng, 4, 3, 0);
        let all = fixed_points(&f).elements(64).ok_or("fixed points not enumerable")?;
        let base = goe_summary(&f, &EndomorphismSpec::linear(r.clone()));
        for t in all {
            n_elems += 1;
            let e = EndomorphismSpec { r: r.clone(), t: t.clone() };
            check(goe_summary(&f, &e) == base, || format!("goe({f}, {r}, t = {t})"))?;
        }
        n_t += 1;
    }
    // involution
    let mut n_inv = 0;
    while n_inv < 120 {
        let d = 1 + n_inv % 2;
        let f = common::random_element(&mut rng, d, 4, 2, 3);
        if !common::primitive(&f) {
            continue;
        }
        let r = if rng.random_bool(0.4) {
            &f * &common::random_element(&mut rng, d, 2, 1, 2)
        } else {
            common::random_element(&mut rng, d, 4, 2, 3)
        };
        let a = mult_injective_mod(&f, &r).unwrap().0;
        let b = mult_injective_mod(&f.involute(), &r.involute()).unwrap().0;
        check(a == b, || format!("involution({f}, {r})"))?;
        n_inv += 1;
    }
    Ok(format!(
        "{n_mono} unit cases, {n_t} translation cases ({n_elems} translations), {n_inv} involution cases"
    ))
}

fn main() -> ExitCode {
    let mut audit = Audit::default();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 cat map", criterion_1(&mut audit)),
        ("2 quartic", criterion_2()),
        ("3 doubling map", criterion_3()),
        ("4 GoE equivalence", criterion_4(&mut audit)),
        ("5 certificate soundness", criterion_5(&audit)),
        ("6 kernel of Psi", criterion_6()),
        ("7 decay rate", criterion_7()),
        ("8 invariance suites", criterion_8()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria pass", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria fail", results.len());
        ExitCode::FAILURE
    }
}
