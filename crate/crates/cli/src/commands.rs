use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use graphgeom::calculus::extended::{Bracket, ExtendedCalculus};
use graphgeom::calculus::{arrow_form, commutator, d, ker_d_dimension, surjectivity_rank, theta, ScalarFunction};
use graphgeom::cayley::{
    cayley_graph, circulant_eigenvectors, invariant_form_laplacian, invariant_integer_spectrum,
    invariant_laplacian_consistent, maurer_cartan, CayleyGraph, FiniteGroup, GeneratingSet,
};
use graphgeom::geometry::{
    check_braid, check_metric_compat, check_torsion_compatible, cotorsion, curvature, derham, parse_connection,
    pairing_is_sigma_invariant, ricci, ricci_permutation_formula, ricci_scalar, torsion, torsion_compatibility_failures,
    ConnectionData, ConnectionSpec, Metric, TwoFormSpace,
};
use graphgeom::graph::{parse_digraph, Digraph};
use graphgeom::laplacian::{mgon_spectrum, spectrum_by_component, theorem49_verify, SpectrumReport, Verdict};
use graphgeom::linalg::{format_rational, parse_rational, RatMatrix, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Report;
use crate::{Cli, Command, GroupArgs};

const MAX_LISTED: usize = 10;

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Spectrum { graph } => spectrum(&read_graph(graph)?, cli.tol),
        Command::Verify {
            graph,
            cayley,
            connection,
            metric,
            checks,
        } => {
            let mut report = verify(graph.as_deref(), cayley, connection, metric)?;
            if let Some(list) = checks {
                report.restrict(&split_list(list));
            }
            Ok(report)
        }
        Command::Cayley { spec, table, gens, emit } => {
            let group = build_group(spec.as_deref(), table.as_deref())?;
            cayley(&group, gens, emit.as_deref(), cli.tol)
        }
        Command::Calculus { graph, samples, lambda } => calculus(&read_graph(graph)?, *samples, lambda, cli.seed),
        Command::Mgon { m } => mgon(*m, cli.tol),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Digraph> {
    parse_digraph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

fn build_group(spec: Option<&str>, table: Option<&Path>) -> Result<FiniteGroup> {
    match (spec, table) {
        (Some(spec), None) => Ok(FiniteGroup::from_spec(spec)?),
        (None, Some(path)) => Ok(FiniteGroup::from_csv(&read(path)?)?),
        _ => bail!("give exactly one of a group spec or --table"),
    }
}

fn build_cayley(group: &FiniteGroup, gens: &str) -> Result<CayleyGraph> {
    let c = GeneratingSet::from_labels(group, &split_list(gens))?;
    Ok(cayley_graph(group, &c)?)
}

fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|q| Value::String(format_rational(q))).collect()))
            .collect(),
    )
}

fn spectrum_line(r: &SpectrumReport) -> String {
    let parts: Vec<String> = r
        .exact_multiset()
        .into_iter()
        .map(|(v, k)| if k == 1 { v } else { format!("{v}({k})") })
        .collect();
    format!("spectrum: {{{}}}", parts.join(", "))
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

fn spectrum_checks(report: &mut Report, reports: &[&SpectrumReport]) {
    report.check(
        "spectrum-certificate",
        reports.iter().all(|r| r.certificate.product_matches),
        Value::Null,
    );
    report.check(
        "block-triangular",
        reports.iter().all(|r| r.certificate.block_triangular),
        Value::Null,
    );
    report.check(
        "positivity",
        reports.iter().all(|r| r.positive && r.zero_modes == 1),
        json!(reports.iter().map(|r| r.zero_modes).collect::<Vec<_>>()),
    );
}

fn spectrum(g: &Digraph, tol: f64) -> Result<Report> {
    let mut report = Report::new("spectrum");
    if !g.is_bidirected() {
        bail!("graph is not bidirected");
    }
    if g.is_weakly_connected() {
        let r = theorem49_verify(g, tol)?;
        report.line(spectrum_line(&r));
        report.line(format!("diagonalizable: {}", verdict_str(r.diagonalizable)));
        spectrum_checks(&mut report, &[&r]);
        report.set("connected", json!(true));
        report.set("report", serde_json::to_value(&r)?);
    } else {
        let comps = spectrum_by_component(g, tol)?;
        for (i, c) in comps.iter().enumerate() {
            match &c.report {
                Some(r) => report.line(format!(
                    "component {i} {:?}: {}; diagonalizable: {}",
                    c.vertices,
                    spectrum_line(r),
                    verdict_str(r.diagonalizable)
                )),
                None => report.line(format!("component {i} {:?}: isolated vertex", c.vertices)),
            }
        }
        let rs: Vec<&SpectrumReport> = comps.iter().filter_map(|c| c.report.as_ref()).collect();
        spectrum_checks(&mut report, &rs);
        report.set("connected", json!(false));
        report.set("components", serde_json::to_value(&comps)?);
    }
    Ok(report)
}

fn verify(graph: Option<&Path>, group: &GroupArgs, connection: &str, metric: &str) -> Result<Report> {
    let cayley = match (&group.group, &group.table) {
        (None, None) => None,
        (spec, table) => {
            let g = build_group(spec.as_deref(), table.as_deref())?;
            let gens = group.gens.as_deref().ok_or_else(|| anyhow!("--gens is required with a group"))?;
            Some(build_cayley(&g, gens)?)
        }
    };
    let g = match (graph, &cayley) {
        (Some(path), None) => read_graph(path)?,
        (None, Some(cg)) => cg.graph().clone(),
        _ => bail!("give exactly one of --graph or --group/--table"),
    };
    let named = |name: &str| -> Result<ConnectionData> {
        match name {
            "canonical" => Ok(ConnectionData::canonical(&g)),
            "maurer-cartan" => {
                let cg = cayley
                    .as_ref()
                    .ok_or_else(|| anyhow!("the maurer-cartan connection needs --group"))?;
                Ok(maurer_cartan(cg)?)
            }
            other => bail!("unknown named connection '{other}'"),
        }
    };
    let conn = match connection {
        "canonical" | "maurer-cartan" => named(connection)?,
        path => match parse_connection(&g, &read(Path::new(path))?)? {
            ConnectionSpec::Named(name) => named(&name)?,
            ConnectionSpec::Explicit(c) => c,
        },
    };
    let met = match metric {
        "euclidean" => Metric::euclidean(&g)?,
        path => Metric::from_json(&g, &read(Path::new(path))?)?,
    };

    let mut report = Report::new("verify");
    report.set("n_vertices", json!(g.n_vertices()));
    report.set("n_arrows", json!(g.n_arrows()));
    report.set("permutation_type", json!(conn.is_permutation_type()));
    report.set("alpha_zero", json!(conn.alpha_is_zero()));
    report.set("pairing_sigma_invariant", json!(pairing_is_sigma_invariant(&conn, &met)));

    let braid = check_braid(&conn);
    let listed: Vec<_> = braid.violations.iter().take(MAX_LISTED).collect();
    report.check("braid", braid.holds, json!({ "violations": listed, "total": braid.violations.len() }));

    let compat = check_metric_compat(&conn, &met)?;
    let nonzero: Vec<Value> = compat
        .nabla_g
        .terms()
        .take(MAX_LISTED)
        .map(|(k, c)| json!([k[0], k[1], k[2], k[3], format_rational(c)]))
        .collect();
    report.check(
        "metric-compat",
        compat.compatible,
        json!({ "nabla_g_nonzero": nonzero, "quadratic_equations_hold": compat.quadratic_equations_hold }),
    );

    let arrows: Vec<(usize, usize)> = g.arrows().to_vec();
    match TwoFormSpace::new(&conn) {
        Ok(space) => {
            report.set("omega2_dimension", json!(space.dimension()));
            report.line(format!("dim Ω² = {}", space.dimension()));
            let fails = torsion_compatibility_failures(&conn, &space);
            report.check(
                "torsion-compat",
                check_torsion_compatible(&conn, &space),
                json!({ "failing_two_paths": fails.iter().take(MAX_LISTED).collect::<Vec<_>>() }),
            );
            let torsionful: Vec<_> = arrows
                .iter()
                .filter(|&&(x, y)| !torsion(&conn, &space, &arrow_form(x, y)).is_zero())
                .copied()
                .collect();
            report.check("torsion-free", torsionful.is_empty(), json!({ "arrows": torsionful }));
            let curved: Vec<_> = arrows
                .iter()
                .filter(|&&(x, y)| !curvature(&conn, &space, &arrow_form(x, y)).is_zero())
                .copied()
                .collect();
            report.check("curvature-free", curved.is_empty(), json!({ "arrows": curved }));
            let cot = cotorsion(&conn, &space, &met)?;
            report.check("cotorsion-free", cot.is_zero(), json!({ "nonzero_terms": cot.len() }));
            report.set("derham", serde_json::to_value(derham(&conn, &space))?);
        }
        Err(e) => {
            let reason = e.to_string();
            report.set("omega2_dimension", Value::Null);
            report.line(format!("Ω² unavailable: {reason}"));
            for id in ["torsion-compat", "torsion-free", "curvature-free", "cotorsion-free"] {
                report.skip(id, &reason);
            }
        }
    }

    let s = ricci(&conn, &met)?;
    let scalar = ricci_scalar(&conn, &met)?;
    report.set("ricci", serde_json::to_value(&s)?);
    report.set("ricci_scalar", serde_json::to_value(&scalar)?);
    if conn.is_permutation_type() && conn.alpha_is_zero() && met.is_euclidean() {
        let closed = ricci_permutation_formula(&conn)?;
        report.check("ricci-closed-form", closed == s, Value::Null);
    } else {
        report.skip("ricci-closed-form", "needs a permutation connection with alpha = 0 and Euclidean metric");
    }
    Ok(report)
}

fn cayley(group: &FiniteGroup, gens: &str, emit: Option<&Path>, tol: f64) -> Result<Report> {
    let cg = build_cayley(group, gens)?;
    let c = cg.generators();
    let mut report = Report::new("cayley");
    report.set(
        "group",
        json!({ "order": group.order(), "abelian": group.is_abelian(), "labels": group.labels() }),
    );
    let gen_labels: Vec<&str> = c.elements().iter().map(|&a| group.label(a)).collect();
    report.set(
        "generators",
        json!({
            "labels": gen_labels,
            "closed_under_inverse": c.closed_under_inverse,
            "ad_stable": c.ad_stable,
            "generates": c.generates,
        }),
    );
    report.set("graph", json!(cg.graph().to_edge_list()));
    report.line(format!(
        "|G| = {}, C = {{{}}}, {} arrows",
        group.order(),
        gen_labels.join(", "),
        cg.graph().n_arrows()
    ));

    let conn = if c.ad_stable {
        let conn = maurer_cartan(&cg)?;
        let met = Metric::euclidean(cg.graph())?;
        report.check("maurer-cartan-braid", check_braid(&conn).holds, Value::Null);
        report.check(
            "maurer-cartan-metric-compat",
            check_metric_compat(&conn, &met)?.compatible,
            Value::Null,
        );
        let m = invariant_form_laplacian(&cg)?;
        let (spec, rest) = invariant_integer_spectrum(&m)?;
        let spec_json: Vec<Value> = spec.iter().map(|(v, k)| json!([format_rational(v), k])).collect();
        report.line(format!(
            "invariant-form Laplacian eigenvalues: {}",
            spec.iter()
                .map(|(v, k)| format!("{}({k})", format_rational(v)))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        report.set(
            "invariant_laplacian",
            json!({ "matrix": matrix_json(&m), "integer_eigenvalues": spec_json, "non_integer_count": rest }),
        );
        report.check("invariant-laplacian-embedding", invariant_laplacian_consistent(&cg)?, Value::Null);
        report.set("connection", conn.to_json());
        Some(conn)
    } else {
        report.skip("maurer-cartan-braid", "generating set is not stable under conjugation");
        report.skip("maurer-cartan-metric-compat", "generating set is not stable under conjugation");
        report.skip("invariant-laplacian-embedding", "generating set is not stable under conjugation");
        None
    };

    let r = theorem49_verify(cg.graph(), tol)?;
    report.line(spectrum_line(&r));
    report.line(format!("diagonalizable: {}", verdict_str(r.diagonalizable)));
    spectrum_checks(&mut report, &[&r]);
    report.set("spectrum", serde_json::to_value(&r)?);

    if group.is_abelian() {
        let circ = circulant_eigenvectors(&cg, tol)?;
        report.line(format!(
            "character candidates: {} (exactly independent {}, numeric rank {})",
            circ.candidates.len(),
            circ.exact_independent,
            circ.numeric_rank
        ));
        report.check(
            "character-eigenvectors",
            circ.residuals_ok,
            json!({ "max_residual": circ.max_residual }),
        );
        report.check(
            "character-rank-agreement",
            circ.exact_independent == circ.numeric_rank,
            json!({ "exact": circ.exact_independent, "numeric": circ.numeric_rank }),
        );
        report.set("characters", serde_json::to_value(&circ)?);
    } else {
        report.skip("character-eigenvectors", "group is not abelian");
        report.skip("character-rank-agreement", "group is not abelian");
    }

    if let Some(dir) = emit {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        std::fs::write(dir.join("graph.txt"), cg.graph().to_edge_list())?;
        if let Some(conn) = &conn {
            let text = serde_json::to_string_pretty(&conn.to_json())?;
            std::fs::write(dir.join("connection.json"), text + "\n")?;
        }
    }
    Ok(report)
}

fn random_function(rng: &mut ChaCha8Rng, n: usize) -> ScalarFunction {
    ScalarFunction::new(
        (0..n)
            .map(|_| Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into()))
            .collect(),
    )
}

fn calculus(g: &Digraph, samples: usize, lambdas: &str, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n_vertices();
    let mut report = Report::new("calculus");
    let th = theta(g);
    let mut leibniz = true;
    let mut inner = true;
    for _ in 0..samples {
        let f = random_function(&mut rng, n);
        let h = random_function(&mut rng, n);
        let lhs = d(g, &f.mul(&h));
        let rhs = d(g, &f).right_act(&h).add(&d(g, &h).left_act(&f));
        leibniz &= lhs == rhs;
        inner &= commutator(&th, &f) == d(g, &f);
    }
    report.check("leibniz", leibniz, json!({ "samples": samples }));
    report.check("inner", inner, json!({ "samples": samples }));
    let rank = surjectivity_rank(g);
    report.check(
        "surjectivity",
        rank == g.n_arrows(),
        json!({ "rank": rank, "arrows": g.n_arrows() }),
    );
    let kernel = ker_d_dimension(g);
    let components = g.components().len();
    report.check(
        "kernel-is-locally-constant",
        kernel == components,
        json!({ "ker_d": kernel, "components": components }),
    );
    report.line(format!(
        "{} vertices, {} arrows, ker d = {kernel}, connected: {}",
        n,
        g.n_arrows(),
        g.is_weakly_connected()
    ));

    let lambdas: Vec<Rational> = split_list(lambdas)
        .iter()
        .map(|s| parse_rational(s))
        .collect::<std::result::Result<_, _>>()?;
    if !g.is_bidirected() {
        report.skip("extended-leibniz", "extended calculus needs a bidirected graph");
        report.skip("extended-inner", "extended calculus needs a bidirected graph");
        return Ok(report);
    }
    let met = Metric::euclidean(g)?;
    let mut ext_leibniz = true;
    let mut ext_inner = true;
    for lambda in &lambdas {
        let calc = ExtendedCalculus::inner(g, Bracket::from_pairing(&met), lambda.clone())?;
        for _ in 0..samples {
            let f = random_function(&mut rng, n);
            let h = random_function(&mut rng, n);
            let lhs = calc.d_tilde(&f.mul(&h));
            let rhs = calc.right_act(&calc.d_tilde(&f), &h).add(&calc.d_tilde(&h).left_act(&f));
            ext_leibniz &= lhs == rhs;
            ext_inner &= calc.commutator(&calc.theta(), &f) == calc.d_tilde(&f);
        }
    }
    let ls: Vec<String> = lambdas.iter().map(format_rational).collect();
    report.check("extended-leibniz", ext_leibniz, json!({ "lambda": ls }));
    report.check("extended-inner", ext_inner, json!({ "lambda": ls }));
    Ok(report)
}

fn mgon(m: usize, tol: f64) -> Result<Report> {
    let r = mgon_spectrum(m, tol)?;
    let mut report = Report::new("mgon");
    report.line(spectrum_line(&r.report));
    report.line(format!("diagonalizable: {}", verdict_str(r.report.diagonalizable)));
    report.check(
        "closed-form",
        r.max_deviation <= tol.max(1e-9),
        json!({ "max_deviation": r.max_deviation }),
    );
    report.check(
        "disjointness-rule",
        r.report.disjoint == (m % 6 != 0),
        json!({ "disjoint": r.report.disjoint }),
    );
    spectrum_checks(&mut report, &[&r.report]);
    report.set("mgon", serde_json::to_value(&r)?);
    Ok(report)
}
