//! One entry point per subcommand. Each returns a report without writing it.

use std::time::Instant;

use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use selmer_core::bundles::{self, Group};
use selmer_core::densities::{self, Count, DensityModel};
use selmer_core::matrix::{self, Mat};
use selmer_core::orthogonal::{self, OrthSpace};
use selmer_core::p1::{self, Chapter, ScanCounts, ScanMode};
use selmer_core::vinberg_odd::{self, OddRep};
use selmer_core::vinberg_pair::{self, PairRep};
use selmer_core::{Error, FiniteField, FiniteRing, Ring};

use crate::config::{ExperimentConfig, Model, Subcommand};
use crate::error::CliError;
use crate::report::{rat, Report, Table};

type Res<T> = Result<T, CliError>;

pub fn run(cfg: &ExperimentConfig) -> Res<Report> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let report = pool.install(|| match cfg.subcommand {
        Subcommand::Census => census(cfg),
        Subcommand::Density => density(cfg),
        Subcommand::LiftCheck => lift_check(cfg),
        Subcommand::Family => family(cfg),
        Subcommand::McRegular => mc_regular(cfg),
        Subcommand::Mass => mass(cfg),
        Subcommand::Kostant => kostant(cfg),
    })?;
    Ok(report.finish(cfg, start.elapsed().as_millis()))
}

fn field(q: u64) -> Res<FiniteField> {
    Ok(FiniteField::of_order(q)?)
}

fn odd_rep(cfg: &ExperimentConfig) -> Res<OddRep<FiniteField>> {
    let rep = OddRep::new(field(cfg.q)?, cfg.n)?;
    rep.check_characteristic()?;
    Ok(rep)
}

fn pair_rep(cfg: &ExperimentConfig) -> Res<PairRep<FiniteField>> {
    let rep = PairRep::new(field(cfg.q)?, cfg.m)?;
    rep.check_characteristic()?;
    Ok(rep)
}

fn chapter(cfg: &ExperimentConfig) -> Chapter {
    match cfg.model {
        Model::Odd => Chapter::Odd { n: cfg.n },
        Model::Pair => Chapter::Pair { m: cfg.m },
    }
}

fn check_size(size: Option<u64>, budget: u64) -> Res<u64> {
    match size {
        Some(s) if s <= budget => Ok(s),
        Some(s) => Err(Error::Budget { needed: s, budget }.into()),
        None => Err(Error::Budget { needed: u64::MAX, budget }.into()),
    }
}

/// Contiguous ranges covering `0..total`, one per worker.
fn ranges(total: u64, jobs: usize) -> Vec<(u64, u64)> {
    let jobs = jobs.max(1) as u64;
    let step = total.div_ceil(jobs).max(1);
    (0..jobs)
        .map(|k| ((k * step).min(total), ((k + 1) * step).min(total)))
        .filter(|(a, b)| a < b)
        .collect()
}

fn elems<F: FiniteRing>(f: &F, xs: &[F::Elem]) -> Vec<u64> {
    xs.iter().map(|x| f.index(x)).collect()
}

fn random_vec<F: FiniteRing, G: Rng>(f: &F, len: usize, rng: &mut G) -> Vec<F::Elem> {
    (0..len).map(|_| f.elem(rng.gen_range(0..f.order()))).collect()
}

fn random_nonzero<F: FiniteRing, G: Rng>(f: &F, rng: &mut G) -> F::Elem {
    f.elem(rng.gen_range(1..f.order()))
}

// ---------------------------------------------------------------- census

pub fn census(cfg: &ExperimentConfig) -> Res<Report> {
    match cfg.model {
        Model::Odd => census_odd(cfg),
        Model::Pair => census_pair(cfg),
    }
}

fn census_odd(cfg: &ExperimentConfig) -> Res<Report> {
    let rep = odd_rep(cfg)?;
    let f = &rep.field;
    check_size(cfg.q.checked_pow(rep.dim() as u32), cfg.budget)?;
    let shards = cfg.jobs as u64;
    let counts = (0..shards)
        .into_par_iter()
        .map(|s| vinberg_odd::odd_census_counts(&rep, s, shards))
        .reduce_with(|mut a, b| {
            a.merge(&b);
            a
        })
        .expect("at least one shard");
    let space = OrthSpace::split(f.clone(), cfg.n)?;
    let orbits = match orthogonal::so_enumerate(&space, cfg.budget) {
        Ok(g) => Some(vinberg_odd::odd_regular_orbits(&rep, &g)),
        Err(Error::Budget { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let mut fibers = Vec::with_capacity(counts.fiber_regular.len());
    for (idx, &size) in counts.fiber_regular.iter().enumerate() {
        let c = rep.invariants_at(idx as u64);
        let cp = rep.char_poly(&c);
        fibers.push(json!({
            "invariants": elems(f, &c),
            "size": size,
            "orbits": orbits.as_ref().map(|o| o.get(&(idx as u64)).cloned().unwrap_or_default()),
            "stabilizer_order": vinberg_odd::norm_kernel_order(f, &cp)?,
            "discriminant_zero": f.is_zero(&rep.discriminant(&c)),
        }));
    }
    let group_order = orthogonal::so_order(cfg.n, cfg.q).map(|g| g as u64);
    Ok(Report::new(json!({
        "model": "odd",
        "n": cfg.n,
        "q": cfg.q,
        "total": counts.total,
        "regular": counts.regular,
        "group_order": group_order,
        "fibers": fibers,
    }))
    .with_table(fiber_table(&fibers)))
}

fn census_pair(cfg: &ExperimentConfig) -> Res<Report> {
    let rep = pair_rep(cfg)?;
    let f = &rep.field;
    let n = rep.n();
    check_size(cfg.q.checked_pow((n * n) as u32), cfg.budget)?;
    let shards = cfg.jobs as u64;
    let counts = (0..shards)
        .into_par_iter()
        .map(|s| vinberg_pair::pair_census_counts(&rep, s, shards))
        .reduce_with(|mut a, b| {
            a.merge(&b);
            a
        })
        .expect("at least one shard");
    let space = OrthSpace::split(f.clone(), cfg.m)?;
    let group_order = orthogonal::so_order(cfg.m, cfg.q).and_then(|g| g.checked_mul(g)).map(|g| g as u64);
    let orbits = match group_order {
        Some(g) if g <= cfg.budget => Some(vinberg_pair::pair_regular_orbits(&rep, &orthogonal::so_enumerate(&space, cfg.budget)?)),
        _ => None,
    };
    let mut fibers = Vec::with_capacity(counts.fiber_regular.len());
    for (idx, &size) in counts.fiber_regular.iter().enumerate() {
        let c = rep.invariants_at(idx as u64);
        let cp = rep.char_poly(&c);
        let disc_zero = f.is_zero(&rep.discriminant(&c));
        fibers.push(json!({
            "invariants": elems(f, &c),
            "size": size,
            "orbits": orbits.as_ref().map(|o| o.get(&(idx as u64)).cloned().unwrap_or_default()),
            "stabilizer_order": vinberg_pair::stabilizer_order_pair(f, &cp)?,
            "discriminant_zero": disc_zero,
            "transversal": !disc_zero && !vinberg_pair::x_squared_divides(f, &c),
            "kostant_hits": [rep.is_regular(&rep.kostant(&c, 1)), rep.is_regular(&rep.kostant(&c, 2))],
        }));
    }
    Ok(Report::new(json!({
        "model": "pair",
        "m": cfg.m,
        "q": cfg.q,
        "total": counts.total,
        "regular": counts.regular,
        "products_regular": counts.products_regular,
        "products_failures": counts.products_failures,
        "group_order": group_order,
        "fibers": fibers,
    }))
    .with_table(fiber_table(&fibers)))
}

fn fiber_table(fibers: &[Value]) -> Table {
    let header = ["invariants", "size", "orbit_count", "stabilizer_order", "discriminant_zero"];
    let rows = fibers
        .iter()
        .map(|fb| {
            let inv = fb["invariants"]
                .as_array()
                .map(|a| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .unwrap_or_default();
            let orbits = fb["orbits"].as_array().map(|a| a.len().to_string()).unwrap_or_default();
            vec![
                inv,
                fb["size"].to_string(),
                orbits,
                fb["stabilizer_order"].to_string(),
                fb["discriminant_zero"].to_string(),
            ]
        })
        .collect();
    Table { header: header.iter().map(|s| s.to_string()).collect(), rows }
}

// ---------------------------------------------------------------- density

pub fn density(cfg: &ExperimentConfig) -> Res<Report> {
    match cfg.model {
        Model::Odd => density_for(cfg, &odd_rep(cfg)?),
        Model::Pair => density_for(cfg, &pair_rep(cfg)?),
    }
}

fn count_json(c: &Count) -> Value {
    json!({ "bad": c.bad.to_string(), "total": c.total.to_string() })
}

fn density_for<M: DensityModel + Sync>(cfg: &ExperimentConfig, m: &M) -> Res<Report> {
    let predicted = densities::predicted_ratio(m);
    let model = match cfg.model {
        Model::Odd => "odd",
        Model::Pair => "pair",
    };
    let (alpha, beta_val, ratio_val, matched, extra) = match cfg.method.as_str() {
        "fibered" | "brute" => {
            let (a, b) = if cfg.method == "brute" {
                let (a, _) = densities::alpha_brute(m, cfg.budget)?;
                (a, densities::beta_brute(m, cfg.budget)?)
            } else {
                let a = densities::alpha_fibered(m, cfg.budget)?;
                let shards = cfg.jobs as u64;
                let parts = (0..shards)
                    .into_par_iter()
                    .map(|s| densities::beta_fibered_shard(m, cfg.budget, s, shards))
                    .collect::<Result<Vec<_>, _>>()?;
                let total = parts[0].total;
                (a, Count { bad: parts.iter().map(|c| c.bad).sum(), total })
            };
            let ratio = densities::density_ratio(&a.ratio(), &b.ratio())
                .ok_or_else(|| CliError::Core(Error::Domain("alpha equals 1".into())))?;
            let matched = ratio == predicted;
            let extra = json!({ "alpha_counts": count_json(&a), "beta_counts": count_json(&b) });
            (a, Value::String(rat(&b.ratio())), Value::String(rat(&ratio)), matched, extra)
        }
        "sampled" => {
            let a = densities::alpha_fibered(m, cfg.budget)?;
            let (beta, sigma) = densities::beta_sampled(m, cfg.samples, cfg.seed)?;
            let one_minus_alpha = 1.0 - a.ratio().to_f64().unwrap_or(f64::NAN);
            let ratio = (1.0 - beta) / one_minus_alpha;
            let sigma_ratio = sigma / one_minus_alpha;
            let pred = predicted.to_f64().unwrap_or(f64::NAN);
            let matched = (ratio - pred).abs() <= (3.0 * sigma_ratio).max(1e-12);
            let extra = json!({
                "alpha_counts": count_json(&a),
                "beta_sigma": sigma,
                "ratio_sigma": sigma_ratio,
                "samples": cfg.samples,
            });
            (a, json!(beta), json!(ratio), matched, extra)
        }
        other => return Err(CliError::Usage(format!("unknown density method `{other}`"))),
    };
    let mut body = json!({
        "model": model,
        "q": cfg.q,
        "method": cfg.method,
        "alpha": rat(&alpha.ratio()),
        "beta": beta_val,
        "ratio": ratio_val,
        "predicted": rat(&predicted),
        "match": matched,
        "dim_v": m.dim_v(),
        "dim_s": m.dim_s(),
    });
    body[rank_key(cfg)] = json!(cfg.rank());
    for (k, v) in extra.as_object().expect("object") {
        body[k] = v.clone();
    }
    let cell = |v: &Value| match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    };
    let table = Table {
        header: ["model", "q", "alpha", "beta", "ratio", "predicted", "match"].iter().map(|s| s.to_string()).collect(),
        rows: vec![vec![
            model.to_string(),
            cfg.q.to_string(),
            rat(&alpha.ratio()),
            cell(&body["beta"]),
            cell(&body["ratio"]),
            rat(&predicted),
            matched.to_string(),
        ]],
    };
    Ok(Report::new(body).with_table(table))
}

fn rank_key(cfg: &ExperimentConfig) -> &'static str {
    match cfg.model {
        Model::Odd => "n",
        Model::Pair => "m",
    }
}

// ---------------------------------------------------------------- lift-check

pub fn lift_check(cfg: &ExperimentConfig) -> Res<Report> {
    match cfg.model {
        Model::Odd => {
            let rep = odd_rep(cfg)?;
            let base = |c: &[u32]| rep.to_coords(&rep.kostant(c));
            lift_check_for(cfg, &rep, &base, |x| rep.is_regular(&rep.from_coords(x)))
        }
        Model::Pair => {
            let rep = pair_rep(cfg)?;
            let base = |c: &[u32]| rep.kostant(c, 1).data().to_vec();
            lift_check_for(cfg, &rep, &base, |x| rep.is_regular_at(x))
        }
    }
}

fn lift_check_for<M: DensityModel<F = FiniteField> + Sync>(
    cfg: &ExperimentConfig,
    m: &M,
    kostant_coords: &(dyn Fn(&[u32]) -> Vec<u32> + Sync),
    regular: impl Fn(&[u32]) -> bool + Sync,
) -> Res<Report> {
    let f = m.field();
    let expected = cfg
        .q
        .checked_pow((m.dim_v() - m.dim_s()) as u32)
        .ok_or_else(|| CliError::Core(Error::Domain("fiber size overflows".into())))?;
    let trial = |i: u64| -> Res<(u64, u64)> {
        let mut rng = selmer_core::rng::stream(cfg.seed, i);
        let tb = loop {
            let x = random_vec(f, m.dim_v(), &mut rng);
            if regular(&x) {
                break x;
            }
        };
        let h = densities::lift_histogram(m, &tb, cfg.budget)?;
        Ok((*h.iter().min().unwrap(), *h.iter().max().unwrap()))
    };
    let results = (0..cfg.samples).into_par_iter().map(trial).collect::<Res<Vec<_>>>()?;
    let mut rng = selmer_core::rng::stream(cfg.seed, u64::MAX);
    let c = random_vec(f, m.dim_s(), &mut rng);
    let hk = densities::lift_histogram(m, &kostant_coords(&c), cfg.budget)?;
    let kostant_ok = hk.iter().all(|&x| x == expected);
    let min = results.iter().map(|r| r.0).min().unwrap_or(0);
    let max = results.iter().map(|r| r.1).max().unwrap_or(0);
    let mut body = json!({
        "model": match cfg.model { Model::Odd => "odd", Model::Pair => "pair" },
        "q": cfg.q,
        "trials": cfg.samples,
        "expected": expected,
        "min_count": min,
        "max_count": max,
        "kostant_base": { "invariants": elems(f, &c), "all_match": kostant_ok },
        "all_match": min == expected && max == expected && kostant_ok,
    });
    body[rank_key(cfg)] = json!(cfg.rank());
    Ok(Report::new(body))
}

// ---------------------------------------------------------------- family

fn scan_mode(name: &str) -> Res<ScanMode> {
    match name {
        "transversal" => Ok(ScanMode::Transversal),
        "minimal" => Ok(ScanMode::Minimal),
        "two-torsion" => Ok(ScanMode::TwoTorsion),
        other => Err(CliError::Usage(format!("unknown family mode `{other}`"))),
    }
}

fn binomial_sigma(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n.max(1) as f64).max(0.0).sqrt()
}

pub fn family(cfg: &ExperimentConfig) -> Res<Report> {
    let mode = scan_mode(&cfg.mode)?;
    let ch = chapter(cfg);
    let f = FiniteField::prime(u32::try_from(cfg.q).map_err(|_| Error::Domain("q too large".into()))?)?;
    let counts = ranges(cfg.samples, cfg.jobs)
        .into_par_iter()
        .map(|(a, b)| p1::family_scan_range(&f, ch, cfg.d, mode, cfg.seed, a, b))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(ScanCounts::default(), |mut acc, c| {
            acc.merge(&c);
            acc
        });
    let observed = counts.fraction();
    let pred = match mode {
        ScanMode::TwoTorsion => None,
        _ => Some(p1::predicted_fraction(cfg.q, ch, mode, cfg.trunc_b, cfg.budget)?),
    };
    let sigma = binomial_sigma(pred.as_ref().map_or(observed, |p| p.value()), counts.samples);
    let within = pred.as_ref().map(|p| (observed - p.value()).abs() <= 3.0 * sigma + p.tail_bound);
    let histogram: serde_json::Map<String, Value> =
        counts.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    Ok(Report::new(json!({
        "chapter": ch.name(),
        "rank": ch.rank(),
        "q": cfg.q,
        "d": cfg.d,
        "mode": mode.name(),
        "samples": counts.samples,
        "hits": counts.hits,
        "observed": observed,
        "sigma": sigma,
        "predicted_truncated": pred.as_ref().map(|p| rat(&p.truncated)),
        "predicted": pred.as_ref().map(|p| p.value()),
        "truncation_bound": pred.as_ref().map(|p| p.tail_bound),
        "B": cfg.trunc_b,
        "seed": cfg.seed,
        "local": pred.as_ref().map(|p| p.local.iter().map(rat).collect::<Vec<_>>()),
        "histogram": histogram,
        "within": within,
    })))
}

// ---------------------------------------------------------------- mc-regular

pub fn mc_regular(cfg: &ExperimentConfig) -> Res<Report> {
    let ch = chapter(cfg);
    let f = FiniteField::prime(u32::try_from(cfg.q).map_err(|_| Error::Domain("q too large".into()))?)?;
    let counts = ranges(cfg.samples, cfg.jobs)
        .into_par_iter()
        .map(|(a, b)| bundles::mc_regular_range(&f, ch, cfg.d, cfg.seed, a, b))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(bundles::RegularCounts::default(), |mut acc, c| {
            acc.merge(&c);
            acc
        });
    let observed = counts.fraction();
    let pred = bundles::mc_regular_predicted(cfg.q, ch);
    let pv = pred.as_ref().map(bundles::to_f64);
    let sigma = binomial_sigma(pv.unwrap_or(observed), counts.samples);
    let tolerance = bundles::mc_tolerance(pv.unwrap_or(observed), counts.samples);
    Ok(Report::new(json!({
        "chapter": ch.name(),
        "rank": ch.rank(),
        "q": cfg.q,
        "d": cfg.d,
        "mode": "everywhere-regular",
        "samples": counts.samples,
        "hits": counts.regular,
        "observed": observed,
        "sigma": sigma,
        "predicted_truncated": pred.as_ref().map(rat),
        "predicted": pv,
        "truncation_bound": 0.0,
        "B": Value::Null,
        "seed": cfg.seed,
        "tolerance": tolerance,
        "within": pv.map(|p| (observed - p).abs() <= tolerance),
    })))
}

// ---------------------------------------------------------------- mass

pub fn mass(cfg: &ExperimentConfig) -> Res<Report> {
    let group = Group::parse(&cfg.group)?;
    field(cfg.q)?;
    let series = bundles::mass_series(&group, cfg.q, cfg.cutoff)?;
    let prediction = bundles::mass_predicted(&group, cfg.q);
    let closed = bundles::mass_closed_form(&group, cfg.q)?;
    let err = (&series.partial - &prediction).abs();
    Ok(Report::new(json!({
        "group": cfg.group,
        "q": cfg.q,
        "cutoff": cfg.cutoff,
        "terms": series.terms,
        "tamagawa": group.tamagawa(),
        "partial_sum": rat(&series.partial),
        "partial_sum_f64": bundles::to_f64(&series.partial),
        "prediction": rat(&prediction),
        "prediction_f64": bundles::to_f64(&prediction),
        "closed_form": rat(&closed),
        "closed_form_matches": closed == prediction,
        "abs_error": bundles::to_f64(&err),
        "abs_error_bound": rat(&series.tail_bound),
        "abs_error_bound_f64": bundles::to_f64(&series.tail_bound),
        "within": err <= series.tail_bound,
    })))
}

// ---------------------------------------------------------------- kostant

pub fn kostant(cfg: &ExperimentConfig) -> Res<Report> {
    let check = |i: u64| -> Res<Option<String>> {
        let mut rng = selmer_core::rng::stream(cfg.seed, i);
        match (cfg.model, cfg.op.as_str()) {
            (Model::Odd, "round-trip") => odd_round_trip(cfg, &mut rng),
            (Model::Pair, "round-trip") => pair_round_trip(cfg, &mut rng),
            (Model::Odd, "reduce") => odd_reduce(cfg, &mut rng),
            (Model::Pair, "reduce") => pair_reduce(cfg, &mut rng),
            (_, other) => Err(CliError::Usage(format!("unknown kostant op `{other}`"))),
        }
    };
    let results = (0..cfg.samples).into_par_iter().map(check).collect::<Res<Vec<_>>>()?;
    let failures: Vec<&String> = results.iter().flatten().collect();
    let mut body = json!({
        "model": match cfg.model { Model::Odd => "odd", Model::Pair => "pair" },
        "q": cfg.q,
        "op": cfg.op,
        "samples": cfg.samples,
        "passed": cfg.samples - failures.len() as u64,
        "failed": failures.len(),
        "first_failure": failures.first().map(|s| s.to_string()),
        "all_passed": failures.is_empty(),
    });
    body[rank_key(cfg)] = json!(cfg.rank());
    Ok(Report::new(body))
}

fn odd_round_trip<G: Rng>(cfg: &ExperimentConfig, rng: &mut G) -> Res<Option<String>> {
    let rep = odd_rep(cfg)?;
    let c = random_vec(&rep.field, 2 * rep.n, rng);
    let t = rep.kostant(&c);
    Ok(if rep.invariants(&t) != c {
        Some(format!("invariants differ at {c:?}"))
    } else if !rep.is_element(&t) || !rep.is_regular(&t) {
        Some(format!("section not regular at {c:?}"))
    } else {
        None
    })
}

fn pair_round_trip<G: Rng>(cfg: &ExperimentConfig, rng: &mut G) -> Res<Option<String>> {
    let rep = pair_rep(cfg)?;
    let f = &rep.field;
    let c = random_vec(f, rep.n(), rng);
    for which in [1, 2] {
        let a = rep.kostant(&c, which);
        if rep.invariants(&a) != c {
            return Ok(Some(format!("section {which} invariants differ at {c:?}")));
        }
        if matrix::det_gauss(f, &a) != c[c.len() - 1] {
            return Ok(Some(format!("section {which} determinant differs at {c:?}")));
        }
        if !rep.is_regular(&a) {
            return Ok(Some(format!("section {which} not regular at {c:?}")));
        }
    }
    Ok(None)
}

/// Self-adjoint traceless, zero below the subdiagonal, nonzero subdiagonal.
pub fn random_borel_odd<G: Rng>(rep: &OddRep<FiniteField>, rng: &mut G) -> Mat<u32> {
    let f = &rep.field;
    let x: Vec<u32> = rep
        .coordinates()
        .iter()
        .map(|&(i, j)| {
            if i > j + 1 {
                0
            } else if i == j + 1 {
                random_nonzero(f, rng)
            } else {
                f.elem(rng.gen_range(0..f.q() as u64))
            }
        })
        .collect();
    rep.from_coords(&x)
}

/// Nonzero band entries at row `i` (1-indexed, `i ≥ 2`) and zeros to their right.
pub fn random_band_pair<G: Rng>(rep: &PairRep<FiniteField>, rng: &mut G) -> Mat<u32> {
    let f = &rep.field;
    let (m, n) = (rep.m, rep.n());
    let mut a = Mat::from_vec(n, n, random_vec(f, n * n, rng));
    for i in 2..=n {
        let c = if i <= m + 1 { n + 2 - i } else { 2 * m + 2 - i };
        a[(i - 1, c - 1)] = random_nonzero(f, rng);
        for j in c + 1..=n {
            a[(i - 1, j - 1)] = 0;
        }
    }
    a
}

fn odd_reduce<G: Rng>(cfg: &ExperimentConfig, rng: &mut G) -> Res<Option<String>> {
    let rep = odd_rep(cfg)?;
    let t = random_borel_odd(&rep, rng);
    let space = OrthSpace::split(rep.field.clone(), rep.n)?;
    Ok(match vinberg_odd::kostant_reduce_odd(&rep, &t) {
        Ok(g) if orthogonal::is_special_orthogonal(&space, &g) && rep.act(&g, &t) == rep.kostant(&rep.invariants(&t)) => None,
        Ok(_) => Some(format!("conjugator fails verification for {:?}", t.to_rows())),
        Err(e) => Some(format!("{e} for {:?}", t.to_rows())),
    })
}

fn pair_reduce<G: Rng>(cfg: &ExperimentConfig, rng: &mut G) -> Res<Option<String>> {
    let rep = pair_rep(cfg)?;
    let a = random_band_pair(&rep, rng);
    let space = OrthSpace::split(rep.field.clone(), rep.m)?;
    Ok(match vinberg_pair::kostant_reduce_pair(&rep, &a) {
        Ok((b, c))
            if orthogonal::is_special_orthogonal(&space, &b)
                && orthogonal::is_special_orthogonal(&space, &c)
                && rep.act(&b, &c, &a) == rep.kostant(&rep.invariants(&a), 1) =>
        {
            None
        }
        Ok(_) => Some(format!("conjugators fail verification for {:?}", a.to_rows())),
        Err(e) => Some(format!("{e} for {:?}", a.to_rows())),
    })
}
