use std::sync::Arc;

use frobcalc_core::frobenius::{
    bracket_power, check_intersection_flatness, frobenius_root, trace_ideal, BracketExponent,
};
use frobcalc_core::fsing::{
    fedder_pure_at, filtration_verify, pure_locus, pure_locus_with_points, split_element_test,
    uniform_exponent, QuotientPresentation,
};
use frobcalc_core::polyring::{
    parse_generators, parse_polynomial, parse_ring, Ideal, MonomialOrder, Ring,
};
use frobcalc_core::tate::{
    euclid_div_t1, frobenius_split_approximant, parse_series, product_norm_certified, tate_mul,
    RestrictedSeries,
};
use frobcalc_core::Error;
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::request::Request;
use crate::selftest;

/// A run that could not complete.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    /// The request itself is malformed or incomplete.
    BadRequest(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<Value, Failure>;

fn need<'a, T>(field: &'a Option<T>, name: &str, cmd: &str) -> Result<&'a T, Failure> {
    field
        .as_ref()
        .ok_or_else(|| Failure::BadRequest(format!("{cmd} needs '{name}'")))
}

fn exponent(req: &Request) -> Result<BracketExponent, Failure> {
    Ok(BracketExponent::new(req.e.unwrap_or(1))?)
}

fn ring_of(req: &Request) -> Result<Arc<Ring>, Failure> {
    Ok(parse_ring(need(&req.ring, "ring", &req.command)?)?)
}

fn ideal_of(ring: &Arc<Ring>, src: &str) -> Result<Ideal, Failure> {
    Ok(Ideal::new(ring, parse_generators(ring, src)?)?)
}

fn presentation(req: &Request) -> Result<(Arc<Ring>, QuotientPresentation), Failure> {
    let ring = ring_of(req)?;
    let ideal = ideal_of(&ring, need(&req.ideal, "ideal", &req.command)?)?;
    Ok((ring, QuotientPresentation::new(ideal)))
}

fn basis(i: &Ideal) -> Vec<String> {
    i.groebner_basis().iter().map(|g| g.to_text()).collect()
}

fn series(req: &Request, src: &str) -> Result<RestrictedSeries, Failure> {
    let p = *need(&req.p, "p", &req.command)?;
    Ok(parse_series(src, p, req.nvars, req.d)?)
}

/// Parses `f` and `g` over a common ring: unless pinned by the request, the
/// variable count and ramification are the largest either one needs.
fn series_pair(
    req: &Request,
    f: &str,
    g: &str,
) -> Result<(RestrictedSeries, RestrictedSeries), Failure> {
    let (f0, g0) = (series(req, f)?, series(req, g)?);
    let nvars = req.nvars.or(Some(f0.nvars().max(g0.nvars())));
    let d = req.d.or(Some(f0.ramification().max(g0.ramification())));
    let p = f0.p();
    Ok((parse_series(f, p, nvars, d)?, parse_series(g, p, nvars, d)?))
}

fn rational(src: &str) -> Result<Ratio<i64>, Failure> {
    let bad = || Failure::BadRequest(format!("'{src}' is not a rational number"));
    let parts: Vec<&str> = src.trim().split('/').collect();
    let num = parts[0].trim().parse::<i64>().map_err(|_| bad())?;
    let den = match parts.get(1) {
        Some(d) => d.trim().parse::<i64>().map_err(|_| bad())?,
        None => 1,
    };
    if den == 0 || parts.len() > 2 {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

pub fn run(req: &Request) -> Outcome {
    match req.command.as_str() {
        "gb" => gb(req),
        "colon" => colon(req),
        "intersect" => intersect(req),
        "bracket" => bracket(req),
        "frobroot" => frobroot(req),
        "trace" => trace(req),
        "fedder" => fedder(req),
        "fpure-locus" => fpure_locus(req),
        "split-test" => split_test(req),
        "filtration-check" => filtration(req),
        "uniform-e" => uniform(req),
        "gauss-norm" => gauss_norm(req),
        "t1-div" => t1_div(req),
        "tate-split" => tate_split(req),
        "selftest" => selftest::run(req.seed, req.count.unwrap_or(20)),
        other => Err(Failure::BadRequest(format!("unknown command '{other}'"))),
    }
}

fn gb(req: &Request) -> Outcome {
    let ring = ring_of(req)?;
    let order = match req.order.as_deref().unwrap_or("grevlex") {
        "grevlex" => MonomialOrder::grevlex(),
        "lex" => MonomialOrder::lex(),
        other => return Err(Failure::BadRequest(format!("unknown order '{other}'"))),
    };
    let gens = parse_generators(&ring, need(&req.ideal, "ideal", "gb")?)?;
    let ideal = Ideal::with_order(&ring, gens, order)?;
    Ok(json!({
        "basis": basis(&ideal),
        "buchberger_criterion": ideal.basis_satisfies_buchberger(),
        "standard_monomials": ideal.standard_monomial_count(),
    }))
}

fn colon(req: &Request) -> Outcome {
    let ring = ring_of(req)?;
    let i = ideal_of(&ring, need(&req.ideal, "ideal", "colon")?)?;
    let [by] = req.with.as_slice() else {
        return Err(Failure::BadRequest(
            "colon needs exactly one divisor".into(),
        ));
    };
    let c = i.colon(&ideal_of(&ring, by)?)?;
    Ok(json!({
        "colon": basis(&c.ideal),
        "divisor_was_zero": c.divisor_was_zero,
    }))
}

fn intersect(req: &Request) -> Outcome {
    let ring = ring_of(req)?;
    let mut ideals = vec![ideal_of(&ring, need(&req.ideal, "ideal", "intersect")?)?];
    for w in &req.with {
        ideals.push(ideal_of(&ring, w)?);
    }
    let mut acc = ideals[0].clone();
    for i in &ideals[1..] {
        acc = acc.intersect(i)?;
    }
    let mut out = json!({ "intersection": basis(&acc) });
    if let Some(e) = req.e {
        let chk = check_intersection_flatness(&ring, &ideals, BracketExponent::new(e)?)?;
        out["flatness"] = json!({
            "e": e,
            "holds": chk.holds,
            "bracket_of_intersection": basis(&chk.bracket_of_intersection),
            "intersection_of_brackets": basis(&chk.intersection_of_brackets),
            "witness": chk.witness.map(|w| w.to_text()),
        });
    }
    Ok(out)
}

fn bracket(req: &Request) -> Outcome {
    let (ring, pres) = presentation(req)?;
    let e = exponent(req)?;
    Ok(json!({
        "q": e.q(ring.p()),
        "bracket_power": basis(&bracket_power(pres.ideal(), e)?),
    }))
}

fn frobroot(req: &Request) -> Outcome {
    let (ring, pres) = presentation(req)?;
    let e = exponent(req)?;
    Ok(json!({
        "q": e.q(ring.p()),
        "root": basis(&frobenius_root(pres.ideal(), e)?),
    }))
}

fn trace(req: &Request) -> Outcome {
    let (ring, pres) = presentation(req)?;
    let e = exponent(req)?;
    let t = trace_ideal(pres.ideal(), e, req.enumerate)?;
    Ok(json!({
        "q": e.q(ring.p()),
        "trace": basis(&t.ideal),
        "functionals": t.functionals,
        "enumerated": t.enumerated_ideal.as_ref().map(basis),
    }))
}

fn fedder(req: &Request) -> Outcome {
    let (ring, pres) = presentation(req)?;
    let e = exponent(req)?;
    let r = parse_polynomial(&ring, req.poly.as_deref().unwrap_or("1"))?;
    let point = need(&req.point, "point", "fedder")?;
    let m = Ideal::rational_point(&ring, point)?;
    let verdict = fedder_pure_at(&pres, &r, &m, e)?;
    Ok(json!({ "q": e.q(ring.p()), "verdict": verdict }))
}

fn fpure_locus(req: &Request) -> Outcome {
    let (ring, pres) = presentation(req)?;
    let e = exponent(req)?;
    let r = parse_polynomial(&ring, req.poly.as_deref().unwrap_or("1"))?;
    let rep = if req.points {
        pure_locus_with_points(&pres, &r, e)?
    } else {
        pure_locus(&pres, &r, e)?
    };
    Ok(json!({
        "q": e.q(ring.p()),
        "locus_ideal": basis(&rep.locus_ideal),
        "pure_everywhere": rep.pure_everywhere,
        "colon_by_zero": rep.colon_by_zero,
        "rational_points": rep.rational_points,
    }))
}

fn split_test(req: &Request) -> Outcome {
    let (ring, pres) = presentation(req)?;
    let e = exponent(req)?;
    let r = parse_polynomial(&ring, req.poly.as_deref().unwrap_or("1"))?;
    let t = split_element_test(&pres, &r, e)?;
    Ok(json!({
        "q": e.q(ring.p()),
        "splits": t.splits,
        "locus_ideal": basis(&t.locus_ideal),
        "certificate": t.certificate,
    }))
}

fn filtration(req: &Request) -> Outcome {
    let c = *need(&req.c, "c", "filtration-check")?;
    let b = *need(&req.b, "b", "filtration-check")?;
    let p = *need(&req.p, "p", "filtration-check")?;
    let ring = Ring::with_indexed_vars(p as u64, c)?;
    let rep = filtration_verify(&ring, c, b)?;
    Ok(serde_json::to_value(rep).expect("report serializes"))
}

fn uniform(req: &Request) -> Outcome {
    let ring = ring_of(req)?;
    let f = parse_polynomial(&ring, need(&req.poly, "poly", "uniform-e")?)?;
    let u = uniform_exponent(&f, req.cap.unwrap_or(20))?;
    Ok(json!({ "e": u.e, "q": (ring.p() as u64).pow(u.e), "roots": u.roots }))
}

fn gauss_norm(req: &Request) -> Outcome {
    let src = need(&req.f, "f", "gauss-norm")?;
    let f = series(req, src)?;
    let mut out = json!({
        "f": f.to_string(),
        "gauss_valuation": f.gauss_valuation(),
    });
    if let Some(g) = &req.g {
        let (f, g) = series_pair(req, src, g)?;
        let fg = tate_mul(&f, &g)?;
        out["g"] = json!(g.to_string());
        out["g_valuation"] = json!(g.gauss_valuation());
        out["product"] = json!(fg.to_string());
        out["product_valuation"] = json!(fg.gauss_valuation());
        out["certified"] = json!(product_norm_certified(&f, &g));
        out["multiplicative"] =
            json!(fg.gauss_valuation() == f.gauss_valuation() + g.gauss_valuation());
    }
    Ok(out)
}

fn t1_div(req: &Request) -> Outcome {
    let (f, g) = series_pair(
        req,
        need(&req.f, "f", "t1-div")?,
        need(&req.g, "g", "t1-div")?,
    )?;
    let div = euclid_div_t1(&f, &g)?;
    let defect = div.defect(&f, &g)?;
    Ok(json!({
        "q": div.q.to_string(),
        "r": div.r.to_string(),
        "n_g": div.n_g,
        "rounds": div.rounds,
        "identity_holds": defect.is_zero(),
        "defect": defect.to_string(),
    }))
}

fn tate_split(req: &Request) -> Outcome {
    let f = series(req, need(&req.f, "f", "tate-split")?)?;
    let w = rational(need(&req.w, "w", "tate-split")?)?;
    Ok(frobenius_split_approximant(&f, w)?.to_json())
}
