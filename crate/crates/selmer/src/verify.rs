//! `verify-all`: acceptance checks at quick or full scale.

use std::time::Instant;

use serde_json::{json, Value};

use selmer_core::orthogonal::{self, OrthSpace};
use selmer_core::FiniteField;

use crate::cli::{Opts, Profile};
use crate::config::{ExperimentConfig, Subcommand};
use crate::error::CliError;
use crate::report::Report;
use crate::run;

pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub runtime_ms: u128,
}

type Check = (&'static str, Box<dyn Fn(&Ctx) -> Result<(bool, String), CliError>>);

pub struct Ctx {
    pub seed: u64,
    pub jobs: Option<usize>,
    pub profile: Profile,
}

impl Ctx {
    fn run(&self, sub: Subcommand, mut o: Opts) -> Result<Report, CliError> {
        o.seed = o.seed.or(Some(self.seed));
        o.jobs = o.jobs.or(self.jobs);
        run::run(&ExperimentConfig::resolve(sub, &o)?)
    }
}

fn opts(model: &str, q: u64) -> Opts {
    Opts { model: Some(model.into()), q: Some(q), ..Opts::default() }
}

fn u(r: &Report, k: &str) -> u64 {
    r.get(k).and_then(Value::as_u64).unwrap_or(u64::MAX)
}

fn s<'a>(r: &'a Report, k: &str) -> &'a str {
    r.get(k).and_then(Value::as_str).unwrap_or("")
}

fn b(r: &Report, k: &str) -> bool {
    r.get(k).and_then(Value::as_bool).unwrap_or(false)
}

fn fibers(r: &Report) -> Vec<Value> {
    r.get("fibers").and_then(Value::as_array).cloned().unwrap_or_default()
}

fn group_orders(_: &Ctx) -> Result<(bool, String), CliError> {
    let mut ok = true;
    let mut out = Vec::new();
    for (q, want) in [(5u64, 120u64), (3, 24)] {
        let space = OrthSpace::split(FiniteField::of_order(q)?, 1)?;
        let got = orthogonal::so_enumerate(&space, 1_000_000)?.len() as u64;
        ok &= got == want && orthogonal::so_order(1, q) == Some(want as u128);
        out.push(format!("|SO3(F{q})|={got}"));
    }
    Ok((ok, out.join(" ")))
}

fn odd_census(n: usize, q: u64, regular: u64, fiber: u64) -> impl Fn(&Ctx) -> Result<(bool, String), CliError> {
    move |c| {
        let r = c.run(Subcommand::Census, Opts { n: Some(n), ..opts("odd", q) })?;
        let fs = fibers(&r);
        let sizes_ok = fs.iter().all(|f| f["size"].as_u64() == Some(fiber));
        let orbits_ok = fs.iter().all(|f| match f["orbits"].as_array() {
            None => true,
            Some(o) => {
                let k = f["stabilizer_order"].as_u64().unwrap_or(0);
                o.len() as u64 == k && o.iter().all(|x| x.as_u64() == Some(fiber / k))
            }
        });
        Ok((
            u(&r, "regular") == regular && sizes_ok && orbits_ok,
            format!("regular={} of {} fibers={} orbits_ok={orbits_ok}", u(&r, "regular"), u(&r, "total"), fs.len()),
        ))
    }
}

fn density_odd(method: &'static str) -> impl Fn(&Ctx) -> Result<(bool, String), CliError> {
    move |c| {
        let r = c.run(Subcommand::Density, Opts { n: Some(1), method: Some(method.into()), ..opts("odd", 5) })?;
        Ok((
            s(&r, "ratio") == "24/25" && s(&r, "alpha") == "9/125" && b(&r, "match"),
            format!("method={method} alpha={} beta={} ratio={}", s(&r, "alpha"), s(&r, "beta"), s(&r, "ratio")),
        ))
    }
}

fn pair_census(c: &Ctx) -> Result<(bool, String), CliError> {
    let r = c.run(Subcommand::Census, Opts { m: Some(1), ..opts("pair", 5) })?;
    let fs = fibers(&r);
    let bounded = fs.iter().all(|f| f["size"].as_u64().unwrap_or(u64::MAX) <= 28800);
    let transversal = fs
        .iter()
        .filter(|f| f["transversal"].as_bool() == Some(true))
        .all(|f| f["size"].as_u64() == Some(14400));
    let hits = fs.iter().all(|f| f["kostant_hits"] == json!([true, true]));
    Ok((
        bounded && transversal && hits,
        format!("regular={} bounded={bounded} transversal={transversal} kostant={hits}", u(&r, "regular")),
    ))
}

fn kostant_all(c: &Ctx) -> Result<(bool, String), CliError> {
    let mut ok = true;
    let mut out = Vec::new();
    let cases: [(&str, &str, u64, usize, u64); 6] = [
        ("odd", "round-trip", 5, 1, 1000),
        ("odd", "round-trip", 7, 2, 1000),
        ("pair", "round-trip", 5, 1, 1000),
        ("pair", "round-trip", 7, 2, 1000),
        ("odd", "reduce", 5, 1, 100),
        ("pair", "reduce", 7, 1, 100),
    ];
    for (model, op, q, k, samples) in cases {
        let o = Opts { n: Some(k), m: Some(k), op: Some(op.into()), samples: Some(samples), ..opts(model, q) };
        let r = c.run(Subcommand::Kostant, o)?;
        ok &= b(&r, "all_passed") && u(&r, "passed") == samples;
        out.push(format!("{model}/{op}/q{q}/{k}:{}", u(&r, "passed")));
    }
    Ok((ok, out.join(" ")))
}

fn masses(c: &Ctx) -> Result<(bool, String), CliError> {
    let mut cases = vec![("so3", 3u64, "1/8"), ("so3", 5, "1/48")];
    if c.profile == Profile::Full {
        cases.extend([("so5", 3, "1/16640"), ("so3xso3", 3, "1/64")]);
    }
    let mut ok = true;
    let mut out = Vec::new();
    for (g, q, want) in cases {
        let r = c.run(Subcommand::Mass, Opts { group: Some(g.into()), q: Some(q), cutoff: Some(60), ..Opts::default() })?;
        let bound = r.get("abs_error_bound_f64").and_then(Value::as_f64).unwrap_or(1.0);
        ok &= s(&r, "prediction") == want && b(&r, "within") && bound < 1e-12 && s(&r, "closed_form") == want;
        out.push(format!("{g}@{q}={} bound={bound:.1e}", s(&r, "prediction")));
    }
    Ok((ok, out.join(" ")))
}

fn mc(samples: u64) -> impl Fn(&Ctx) -> Result<(bool, String), CliError> {
    move |c| {
        let o = Opts { n: Some(1), d: Some(4), samples: Some(samples), ..opts("odd", 5) };
        let r = c.run(Subcommand::McRegular, o.clone())?;
        let again = c.run(Subcommand::McRegular, o)?;
        let obs = r.get("observed").and_then(Value::as_f64).unwrap_or(f64::NAN);
        let same = r.get("observed") == again.get("observed");
        Ok((
            b(&r, "within") && s(&r, "predicted_truncated") == "96/125" && same,
            format!("observed={obs:.4} predicted=0.768 samples={samples} deterministic={same}"),
        ))
    }
}

fn family(samples: u64) -> impl Fn(&Ctx) -> Result<(bool, String), CliError> {
    move |c| {
        let o = Opts { n: Some(1), d: Some(2), samples: Some(samples), trunc_b: Some(4), ..opts("odd", 5) };
        let r = c.run(Subcommand::Family, o)?;
        let obs = r.get("observed").and_then(Value::as_f64).unwrap_or(f64::NAN);
        let pred = r.get("predicted").and_then(Value::as_f64).unwrap_or(f64::NAN);
        let mut counts = true;
        for (m, q) in [(1usize, 5u64), (2, 3)] {
            let (factor, conditions) = selmer_core::densities::minimal_local_factor(m, q);
            let f = FiniteField::of_order(q)?;
            counts &= conditions == (2 * m + 1) * (2 * m + 1)
                && selmer_core::densities::minimal_fraction_truncated(&f, m) == factor;
        }
        Ok((
            b(&r, "within") && counts,
            format!("transversal observed={obs:.4} predicted={pred:.5} samples={samples} minimal_counts={counts}"),
        ))
    }
}

pub fn checks(profile: Profile) -> Vec<Check> {
    let quick = profile == Profile::Quick;
    let mut v: Vec<Check> = vec![
        ("group orders", Box::new(group_orders)),
        ("odd census (1,5)", Box::new(odd_census(1, 5, 3000, 120))),
    ];
    if !quick {
        v.push(("odd census (2,3)", Box::new(odd_census(2, 3, 4_199_040, 51840))));
    }
    v.push(("density identity odd (1,5)", Box::new(density_odd(if quick { "fibered" } else { "brute" }))));
    if !quick {
        v.push(("pair census (1,5)", Box::new(pair_census)));
        v.push(("kostant sections", Box::new(kostant_all)));
    }
    v.push(("mass formulas", Box::new(masses)));
    v.push(("mc regular sections", Box::new(mc(if quick { 10_000 } else { 100_000 }))));
    if !quick {
        v.push(("family scans", Box::new(family(100_000))));
    }
    v
}

pub fn verify_all(ctx: &Ctx) -> Vec<Outcome> {
    checks(ctx.profile)
        .into_iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let (passed, detail) = match f(ctx) {
                Ok(x) => x,
                Err(e) => (false, format!("error: {e}")),
            };
            let o = Outcome { name, passed, detail, runtime_ms: start.elapsed().as_millis() };
            println!("{} {}: {} ({} ms)", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail, o.runtime_ms);
            o
        })
        .collect()
}

pub fn summary(ctx: &Ctx, outcomes: &[Outcome]) -> Value {
    json!({
        "profile": match ctx.profile { Profile::Quick => "quick", Profile::Full => "full" },
        "seed": ctx.seed,
        "version": crate::report::version(),
        "passed": outcomes.iter().all(|o| o.passed),
        "checks": outcomes.iter().map(|o| json!({ "name": o.name, "passed": o.passed, "detail": o.detail })).collect::<Vec<_>>(),
    })
}
