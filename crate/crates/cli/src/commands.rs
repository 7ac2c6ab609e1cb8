use std::path::Path;

use hypercover::dense::{self, DenseParams, McReport, EXACT_LIMIT};
use hypercover::ep::{class_bounds, default_k, ep_fractional, ep_partition, Orientation};
use hypercover::lift::{hyper_fractional, hyper_partition, lift_bounds, weights_are_multiples, EdgeSplit};
use hypercover::oracle::{opt_load, Limits, OracleValue};
use hypercover::random::{density_lower_bound, gen_random, RandomModel};
use hypercover::{density, load_profile, validate_cover, Cover, Family, Hypergraph, Mode, Rational, Relax, Scalar};
use num_traits::One;

use crate::args::{Auto, BoundArgs, DenseArgs, EpArgs, LiftArgs, OracleArgs, RandomArgs, VerifyArgs};
use crate::formats::{self, FormatError};
use crate::summary::{RunSummary, Value};
use crate::CliError;

/// A finished run: its summary, whether every verdict passed, and the file to write.
pub struct Report {
    pub summary: RunSummary,
    pub ok: bool,
    pub output: Option<String>,
}

fn load_host(path: &Path) -> Result<Hypergraph, CliError> {
    let text = formats::read_file(path)?;
    formats::parse_uhg(&text).map_err(|e| CliError::Format { path: path.display().to_string(), source: e })
}

fn instance(s: &mut RunSummary, h: &Hypergraph) {
    s.push("n", h.n());
    s.push("d", h.d());
    s.push("edges", h.num_edges());
}

/// Item count, weights, loads and verdicts of `cover`; returns its max load.
fn cover_stats(s: &mut RunSummary, cover: &Cover<'_>) -> Rational {
    let report = validate_cover(cover);
    let loads = load_profile(cover);
    s.push("family", cover.family().to_string());
    s.push("items", cover.len());
    s.push("total_weight", cover.total_weight());
    s.push("max_load", &loads.max);
    s.push("min_coverage", report.min.clone());
    s.push("max_coverage", report.max.clone());
    s.push("uncovered_edges", report.uncovered.len());
    s.push("overcovered_edges", report.overcovered.len());
    s.push("foreign_items", report.foreign.len());
    s.push("is_cover", report.is_cover);
    s.push("is_partition", report.is_partition);
    loads.max
}

fn resolve_k(k: &Auto<usize>, n: usize) -> usize {
    match k {
        Auto::Auto => default_k(n),
        Auto::Value(k) => *k,
    }
}

pub fn ep(args: &EpArgs) -> Result<Report, CliError> {
    let g = load_host(&args.input)?;
    let mut s = RunSummary::new();
    instance(&mut s, &g);
    let k = resolve_k(&args.k, g.n());
    s.push("k", k);
    let bounds = class_bounds(g.n(), k);
    let cover: Cover<'_> = match args.relax {
        Relax::Integral => {
            let orient = match args.seed {
                Some(seed) => Orientation::random(&g, seed),
                None => Orientation::low_to_high(&g),
            };
            s.push("construction", "ep_partition");
            s.push("orientation", args.seed.map_or("low-to-high".to_string(), |seed| format!("random seed {seed}")));
            ep_partition(&g, k, &orient)?
        }
        Relax::Fractional => {
            s.push("construction", "ep_fractional");
            ep_fractional(&g, k)?
        }
    };
    let max = cover_stats(&mut s, &cover);
    let mut ok = validate_cover(&cover).is_partition;
    match args.relax {
        Relax::Integral => {
            let items_ok = Rational::from_usize(cover.len()) < bounds.items;
            s.push("item_bound", &bounds.items);
            s.push("items_below_bound", items_ok);
            s.push("load_bound", &bounds.integral_load);
            ok &= items_ok && max <= bounds.integral_load;
            s.push("load_within_bound", max <= bounds.integral_load);
        }
        Relax::Fractional => {
            let half = Rational::ratio(1, 2);
            let weights_ok = cover.items().iter().all(|(_, w)| *w == half || w.is_one());
            s.push("weights_half_integral", weights_ok);
            s.push("load_bound", &bounds.fractional_load);
            s.push("load_within_bound", max <= bounds.fractional_load);
            ok &= weights_ok && max <= bounds.fractional_load;
        }
    }
    s.push("ok", ok);
    Ok(Report { summary: s, ok, output: Some(formats::render_cover(&cover)) })
}

pub fn lift(args: &LiftArgs) -> Result<Report, CliError> {
    let h = load_host(&args.input)?;
    let mut s = RunSummary::new();
    instance(&mut s, &h);
    let k = resolve_k(&args.k, h.n());
    s.push("k", k);
    let bounds = lift_bounds(h.n(), h.d(), k);
    let (cover, bound): (Cover<'_>, Rational) = match args.relax {
        Relax::Integral => {
            let split = match args.seed {
                Some(seed) => EdgeSplit::random(&h, seed),
                None => EdgeSplit::smallest(&h),
            };
            s.push("construction", "hyper_partition");
            s.push("split", args.seed.map_or("smallest".to_string(), |seed| format!("random seed {seed}")));
            (hyper_partition(&h, k, &split)?, bounds.integral_load)
        }
        Relax::Fractional => {
            s.push("construction", "hyper_fractional");
            (hyper_fractional(&h, k)?, bounds.fractional_load)
        }
    };
    let max = cover_stats(&mut s, &cover);
    let mut ok = validate_cover(&cover).is_partition;
    if args.relax == Relax::Fractional {
        let multiples = weights_are_multiples(&cover);
        s.push("weights_multiple_of_unit", multiples);
        ok &= multiples;
    }
    s.push("load_bound", &bound);
    s.push("load_within_bound", max <= bound);
    ok &= max <= bound;
    s.push("ok", ok);
    Ok(Report { summary: s, ok, output: Some(formats::render_cover(&cover)) })
}

fn dense_params(h: &Hypergraph, p: &Auto<crate::args::Rat>, m: &Auto<usize>) -> Result<DenseParams, CliError> {
    let m = match m {
        Auto::Auto => dense::hyper_slack(h),
        Auto::Value(m) => *m,
    };
    let p = match p {
        Auto::Auto => dense::default_p(m),
        Auto::Value(r) => r.0.clone(),
    };
    Ok(DenseParams::new(p, m)?)
}

fn mc_stats(s: &mut RunSummary, reports: &[(Vec<usize>, McReport)]) -> bool {
    let max_abs = |z: &mut dyn Iterator<Item = f64>| z.map(f64::abs).fold(0.0, f64::max);
    let edge_z = max_abs(&mut reports.iter().flat_map(|(_, r)| (0..r.edge_hits.len()).map(|e| r.edge_z(e))));
    let vertex_z = max_abs(&mut reports.iter().flat_map(|(_, r)| (0..r.vertex_hits.len()).map(|v| r.vertex_z(v))));
    let flagged_edges: usize = reports.iter().map(|(_, r)| r.flagged_edges().len()).sum();
    let flagged_vertices: usize = reports.iter().map(|(_, r)| r.flagged_vertices().len()).sum();
    if let Some((_, r)) = reports.first() {
        s.push("edge_expected", r.edge_expected);
        s.push("vertex_expected", r.vertex_expected);
        s.push("edge_se", r.edge_se());
        s.push("vertex_se", r.vertex_se());
        s.push("z_threshold", r.z_threshold);
    }
    s.push("projections", reports.len());
    s.push("max_abs_edge_z", edge_z);
    s.push("max_abs_vertex_z", vertex_z);
    s.push("flagged_edges", flagged_edges);
    s.push("flagged_vertices", flagged_vertices);
    let ok = flagged_edges == 0 && flagged_vertices == 0;
    s.push("within_threshold", ok);
    ok
}

pub fn dense(args: &DenseArgs) -> Result<Report, CliError> {
    let h = load_host(&args.input)?;
    let mut s = RunSummary::new();
    instance(&mut s, &h);
    let params = dense_params(&h, &args.p, &args.m)?;
    s.push("p", params.p());
    s.push("m", params.m());
    s.push("normalization", params.normalization());
    s.push("target_load", params.target_load());
    if let Some(samples) = args.samples {
        if args.output.is_some() {
            return Err(CliError::Usage("--output needs exact mode (omit --samples)".into()));
        }
        s.push("method", "mc");
        s.push("samples", samples);
        s.push("seed", args.seed);
        let reports = dense::dense_hyper_mc(&h, &params, samples, args.seed)?;
        let ok = mc_stats(&mut s, &reports);
        s.push("ok", ok);
        return Ok(Report { summary: s, ok, output: None });
    }
    s.push("method", "exact");
    s.push("keep_degenerate", args.keep_degenerate);
    let limit = args.limit.unwrap_or(EXACT_LIMIT);
    let result = dense::dense_hyper_with_limit(&h, &params, args.keep_degenerate, limit)?;
    s.push("construction", "dense");
    cover_stats(&mut s, &result.cover);
    s.push("degenerate_weight", &result.degenerate.total);
    let mut ok = validate_cover(&result.cover).is_partition;
    if args.keep_degenerate {
        s.push("total_weight_with_degenerate", result.total_weight());
        s.push("max_load_with_degenerate", result.max_load());
        if h.d() == 2 {
            let expected = params.total_weight();
            let weight_ok = result.total_weight() == expected;
            let loads_ok = result.loads().iter().all(|l| *l == params.target_load());
            s.push("expected_total_weight", &expected);
            s.push("total_weight_matches", weight_ok);
            s.push("loads_equal_target", loads_ok);
            ok &= weight_ok && loads_ok;
        }
    }
    s.push("ok", ok);
    Ok(Report { summary: s, ok, output: Some(formats::render_cover(&result.cover)) })
}

fn limits(limit: Option<usize>) -> Limits {
    match limit {
        Some(l) => Limits { cb_graph: l, cm_graph: l, hypergraph: l },
        None => Limits::default(),
    }
}

pub fn oracle(args: &OracleArgs) -> Result<Report, CliError> {
    let h = load_host(&args.input)?;
    let mut s = RunSummary::new();
    instance(&mut s, &h);
    s.push("family", args.family.to_string());
    s.push("mode", args.mode.to_string());
    s.push("relax", args.relax.to_string());
    let res = opt_load(&h, args.family, args.mode, args.relax, &limits(args.limit))?;
    match &res.value {
        OracleValue::Finite(v) => s.push("optimum", v),
        OracleValue::Infinite => s.push("optimum", "inf"),
    }
    s.push("catalog_size", res.stats.catalog_size);
    s.push("pivots", res.stats.pivots);
    s.push("search_nodes", res.stats.nodes);
    let mut ok = true;
    let output = match &res.certificate {
        Some(cert) => {
            let mut c = RunSummary::new();
            let max = cover_stats(&mut c, cert);
            s.push("certificate_items", cert.len());
            s.push("certificate_max_load", &max);
            let valid = validate_cover(cert).is_valid(args.mode);
            let attains = res.value.finite() == Some(&max);
            s.push("certificate_valid", valid);
            s.push("certificate_attains_optimum", attains);
            ok = valid && attains;
            Some(formats::render_cover(cert))
        }
        None => None,
    };
    s.push("ok", ok);
    Ok(Report { summary: s, ok, output })
}

pub fn random(args: &RandomArgs) -> Result<Report, CliError> {
    let model = RandomModel::new(args.n, args.d, args.p.0.clone(), args.seed)?;
    let h = gen_random(&model)?;
    let mut s = RunSummary::new();
    instance(&mut s, &h);
    s.push("p", model.p());
    s.push("seed", args.seed);
    let all = hypercover::combin::choose(args.n as i64, args.d as i64);
    s.push("expected_edges", Rational::from_integer(all) * model.p());
    s.push("density", density(&h)?);
    let lim = limits(args.limit);
    let mut ok = true;
    if lim.check(&h, Family::Cm).is_ok() {
        let b = density_lower_bound(&h, model.p(), args.with_lp, &lim)?;
        s.push("analysis", "exact");
        s.push("threshold", b.threshold.clone());
        s.push("max_cuph_density", b.max_cuph_density.as_ref().map(|(d, _)| d.clone()));
        s.push("densest_cuph", b.max_cuph_density.as_ref().map(|(_, c)| format!("{:?}", c.parts())));
        s.push("condition_holds", b.condition_holds);
        s.push("lower_bound", b.lower_bound.clone());
        s.push("lp_optimum", b.lp_optimum.as_ref().map(|v| match v {
            OracleValue::Finite(r) => Value::Rat(r.clone()),
            OracleValue::Infinite => Value::Text("inf".into()),
        }).unwrap_or(Value::None));
        s.push("violated", b.violated());
        ok = !b.violated();
    } else if args.with_lp {
        lim.check(&h, Family::Cm)?;
    } else {
        s.push("analysis", "skipped (vertex limit)");
    }
    s.push("ok", ok);
    Ok(Report { summary: s, ok, output: Some(formats::render_uhg(&h)) })
}

pub fn verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let h = load_host(&args.input)?;
    let text = formats::read_file(&args.cover)?;
    let path = args.cover.display().to_string();
    let file = formats::parse_cover(&text).map_err(|e| CliError::Format { path: path.clone(), source: e })?;
    let cover = file.attach(&h, args.mode, args.family).map_err(|e| match e {
        e @ (FormatError::HostMismatch { .. } | FormatError::Item { .. }) => CliError::Invalid(format!("{path}: {e}")),
        e => CliError::Format { path: path.clone(), source: e },
    })?;
    let mut s = RunSummary::new();
    instance(&mut s, &h);
    s.push("mode", args.mode.to_string());
    cover_stats(&mut s, &cover);
    let ok = validate_cover(&cover).is_valid(args.mode);
    s.push("valid", ok);
    Ok(Report { summary: s, ok, output: None })
}

/// Runs one construction for `bound`; `Ok(None)` when it does not apply to the host.
type Attempt<'h> = Result<Option<Cover<'h>>, CliError>;

fn dense_attempt<'h>(h: &'h Hypergraph, limit: usize) -> Attempt<'h> {
    let m = dense::hyper_slack(h);
    let params = DenseParams::new(dense::default_p(m), m)?;
    match dense::dense_hyper_with_limit(h, &params, false, limit) {
        Ok(r) => Ok(Some(r.cover)),
        Err(hypercover::Error::LimitExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn bound(args: &BoundArgs) -> Result<Report, CliError> {
    let h = load_host(&args.input)?;
    let mut s = RunSummary::new();
    instance(&mut s, &h);
    let k = default_k(h.n());
    s.push("k", k);
    let mut candidates: Vec<(&str, Attempt<'_>)> = Vec::new();
    if h.d() == 2 {
        candidates.push(("ep_partition", ep_partition(&h, k, &Orientation::low_to_high(&h)).map(Some).map_err(Into::into)));
        candidates.push(("ep_fractional", ep_fractional(&h, k).map(Some).map_err(Into::into)));
    } else {
        candidates.push(("hyper_partition", hyper_partition(&h, k, &EdgeSplit::smallest(&h)).map(Some).map_err(Into::into)));
        candidates.push(("hyper_fractional", hyper_fractional(&h, k).map(Some).map_err(Into::into)));
    }
    candidates.push(("dense", dense_attempt(&h, args.limit.unwrap_or(EXACT_LIMIT))));
    let mut ok = true;
    let mut best: Option<(&str, Rational, Cover<'_>)> = None;
    for (name, attempt) in candidates {
        let Some(cover) = attempt? else {
            s.push(format!("{name}.max_load"), "skipped (vertex limit)");
            continue;
        };
        let valid = validate_cover(&cover).is_partition;
        let max = load_profile(&cover).max;
        s.push(format!("{name}.items"), cover.len());
        s.push(format!("{name}.max_load"), &max);
        s.push(format!("{name}.valid"), valid);
        ok &= valid;
        if valid && best.as_ref().is_none_or(|(_, b, _)| max < *b) {
            best = Some((name, max, cover));
        }
    }
    s.push("bound_kind", "ideal biclique decomposition: sigma <= max load");
    let output = match &best {
        Some((name, max, cover)) => {
            s.push("sigma_upper_bound", max);
            s.push("achieved_by", *name);
            Some(formats::render_cover(cover))
        }
        None => {
            s.push("sigma_upper_bound", Value::None);
            None
        }
    };
    if args.oracle {
        let res = opt_load(&h, Family::Cb, Mode::Cover, Relax::Fractional, &limits(args.limit))?;
        let consistent = match (&res.value, &best) {
            (OracleValue::Finite(opt), Some((_, b, _))) => b >= opt,
            _ => true,
        };
        s.push("oracle_cb_cover_fractional", res.value.finite());
        s.push("bound_at_least_oracle", consistent);
        ok &= consistent;
    }
    s.push("ok", ok);
    Ok(Report { summary: s, ok, output })
}
