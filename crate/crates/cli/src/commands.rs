use monomideal::cellres::{
    betti_formulas, betti_identities, boundary_maps, build_complex, multigraded_betti_oracle, to_dot,
    verify_resolution, ResolutionSummary,
};
use monomideal::ferrers::{
    alexander_dual, complement_edge_ideal, ferrers_dual_primary_decomposition, ferrers_ideal,
    generalized_ferrers_ideal, intersect_components, is_irredundant, partition_from_strongly_stable, specialize,
    strongly_stable_from_partition, BipartiteGraph, Partition, PrimeComponent, Shift,
};
use monomideal::fiber::{fiber_dimension, symmetric_minors, toric_relations, verify_fiber_isomorphism};
use monomideal::sampling::{random_equigenerated, random_ideal, IdealShape};
use monomideal::text::{format_ideal, parse_ideal, IdealJson, VarNames};
use monomideal::MonomialIdeal;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;
use std::collections::BTreeSet;

use crate::report::{CliError, Report};

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| CliError::Parse(format!("bad {what} entry `{}`", p.trim()))))
        .collect()
}

fn parse_partition(s: &str) -> Result<Partition, CliError> {
    Partition::new(parse_list(s, "partition")?).map_err(domain)
}

fn parse_plain(text: &str, vars: Option<usize>) -> Result<MonomialIdeal, CliError> {
    parse_ideal(text, vars, &VarNames::Plain).map_err(|e| CliError::Parse(e.to_string()))
}

fn ideal_json(ideal: &MonomialIdeal, names: &VarNames) -> serde_json::Value {
    json!({ "text": format_ideal(ideal, names), "structured": IdealJson::from(ideal) })
}

pub fn dual(text: &str, vars: Option<usize>) -> Result<Report, CliError> {
    let ideal = parse_plain(text, vars)?;
    if ideal.is_zero() {
        return Err(domain("the zero ideal has no LCM-dual"));
    }
    let names = VarNames::Plain;
    let lcm = ideal.lcm().map_err(domain)?;
    let dual = ideal.lcm_dual().map_err(domain)?;
    let double = dual.lcm_dual().map_err(domain)?;
    let height = ideal.height().ok();

    let mut r = Report::default();
    r.line(format!("ideal: {}", format_ideal(&ideal, &names)));
    r.line(format!("lcm: {lcm}"));
    r.line(format!("dual: {}", format_ideal(&dual, &names)));
    match &height {
        Some(h) => {
            let prime: Vec<String> = h.witness_prime.iter().map(|&v| names.name(v)).collect();
            r.line(format!("height: {} (prime ({}))", h.height, prime.join(", ")));
        }
        None => r.line("height: undefined for the unit ideal"),
    }
    let restores = double == ideal;
    r.line(format!(
        "double dual: {} ({})",
        format_ideal(&double, &names),
        if restores { "equals I" } else { "differs from I" }
    ));
    if let Some(h) = height.as_ref().filter(|h| h.height < 2 && !restores) {
        r.note(format!("height {}: double dual differs", h.height));
    }
    r.payload = json!({
        "ideal": ideal_json(&ideal, &names),
        "lcm": lcm.to_string(),
        "dual": ideal_json(&dual, &names),
        "height": height.as_ref().map(|h| h.height),
        "height_witness": height.as_ref().map(|h| h.witness_prime.iter().map(|&v| names.name(v)).collect::<Vec<_>>()),
        "double_dual": ideal_json(&double, &names),
        "double_dual_equals_ideal": restores,
    });
    Ok(r)
}

fn format_components(components: &[PrimeComponent], names: &VarNames) -> Vec<String> {
    components.iter().map(|c| format!("({})", c.names(names).join(", "))).collect()
}

pub fn ferrers(
    lambda: &str,
    mu: Option<&str>,
    do_specialize: bool,
    decompose: bool,
    verify: bool,
) -> Result<Report, CliError> {
    let lambda = parse_partition(lambda)?;
    let (m, n) = (lambda.m(), lambda.n());
    let names = VarNames::Bipartite { m, n };
    let ideal = match mu {
        Some(mu) => {
            if decompose || verify {
                return Err(domain("--decompose and --verify apply to Ferrers ideals; drop --mu"));
            }
            let shift = Shift::new(parse_list(mu, "shift")?, &lambda).map_err(domain)?;
            generalized_ferrers_ideal(&lambda, &shift).map_err(domain)?
        }
        None => ferrers_ideal(&lambda),
    };
    let mut r = Report::default();
    r.line(format!("ideal: {}", format_ideal(&ideal, &names)));
    r.line(format!("generators: {}", ideal.len()));
    let dual = ideal.lcm_dual().map_err(domain)?;
    r.line(format!("dual: {}", format_ideal(&dual, &names)));
    let mut payload = json!({
        "lambda": lambda.parts(),
        "mu": mu.map(|s| parse_list(s, "shift")).transpose()?,
        "ideal": ideal_json(&ideal, &names),
        "dual": ideal_json(&dual, &names),
    });

    if do_specialize {
        let special = specialize(&ideal, m, n).map_err(domain)?;
        r.line(format!("specialized: {}", format_ideal(&special, &VarNames::Plain)));
        r.line(format!("specialized generators: {}", special.len()));
        if let Ok(shape) = partition_from_strongly_stable(&special) {
            r.line(format!("strongly stable with partition {shape}"));
        }
        payload["specialized"] = ideal_json(&special, &VarNames::Plain);
    }

    if decompose || verify {
        let components = ferrers_dual_primary_decomposition(&lambda);
        let formatted = format_components(&components, &names);
        if decompose {
            let listed = if formatted.is_empty() { "none".to_string() } else { formatted.join(" ∩ ") };
            r.line(format!("components ({}): {listed}", components.len()));
        }
        payload["components"] = json!(components.iter().map(|c| c.names(&names)).collect::<Vec<_>>());
        if verify {
            let intersection = intersect_components(&components, m + n).map_err(domain)?;
            let graph = BipartiteGraph::ferrers(&lambda).to_simple();
            let alexander = alexander_dual(&complement_edge_ideal(&graph)).map_err(domain)?;
            let complement: BTreeSet<PrimeComponent> =
                graph.complement().edges().iter().map(|&(a, b)| PrimeComponent::new([a, b])).collect();
            let as_set: BTreeSet<PrimeComponent> = components.iter().cloned().collect();
            r.check("irredundant", is_irredundant(&components), format!("{} components", components.len()));
            r.check("components are the complement's edges", as_set == complement, "closed form vs complement graph");
            r.check("intersection equals dual", intersection == dual, format_ideal(&intersection, &names));
            r.check("Alexander dual of complement equals dual", alexander == dual, format_ideal(&alexander, &names));
        }
    }
    r.payload = payload;
    Ok(r)
}

fn format_shifts(summary: &ResolutionSummary) -> String {
    let parts: Vec<String> = summary
        .shifts
        .iter()
        .map(|s| match s.as_slice() {
            [] => "-".to_string(),
            [d] => d.to_string(),
            many => format!("{many:?}"),
        })
        .collect();
    format!("({})", parts.join(","))
}

pub fn resolve(lambda: &str, verify: bool, dot: bool) -> Result<Report, CliError> {
    let lambda = parse_partition(lambda)?;
    let x = build_complex(&lambda).map_err(domain)?;
    let mut r = Report::default();
    if dot {
        r.raw = Some(to_dot(&x, &VarNames::Plain));
        return Ok(r);
    }
    let complex = boundary_maps(&x).map_err(domain)?;
    let summary = ResolutionSummary::from_complex(&complex);
    let (nu, eps, f) = x.counts();
    let [b1, b2, b3] = summary.betti;
    r.line(format!("complex: {nu} vertices, {eps} edges, {f} faces; m_I = {}", x.m_i()));
    r.line(format!(
        "β=({b1},{b2},{b3}), shifts={}, reg={}, pd={}, {}",
        format_shifts(&summary),
        summary.regularity,
        summary.projective_dimension,
        if summary.is_linear { "linear" } else { "not linear" }
    ));
    let degenerate = lambda.m() == 1 || f == 0;
    if degenerate {
        r.note("degenerate case (m = 1 or no faces): the regularity and pd = 3 statements are not applied");
    }

    if verify {
        match verify_resolution(&lambda) {
            Ok(s) => r.check("acyclicity and minimality", s == summary, "every X_<=b over the label-lcm closure"),
            Err(e) => r.check("acyclicity and minimality", false, e.to_string()),
        };
        let formulas = betti_formulas(&lambda);
        r.check("closed-form Betti numbers", formulas.betti == summary.betti, format!("{:?}", formulas.betti));
        match betti_identities(&lambda) {
            Ok(ok) => r.check("Betti identities in μ, height, n", ok, "β1 = μ, β2 = 2μ-g-n, β3 = μ-g-n+1"),
            Err(e) => r.check("Betti identities in μ, height, n", false, e.to_string()),
        };
        let oracle = strongly_stable_from_partition(&lambda)
            .map_err(|e| e.to_string())
            .and_then(|i| i.lcm_dual().map_err(|e| e.to_string()))
            .and_then(|d| multigraded_betti_oracle(&d).map_err(|e| e.to_string()));
        match oracle {
            Ok(o) => {
                let mut totals = o.totals();
                totals.resize(3, 0);
                let shifts_agree = (0..3).all(|k| summary.betti[k] == 0 || o.shifts(k + 1) == summary.shifts[k]);
                r.check(
                    "multigraded oracle",
                    totals == summary.betti.to_vec() && shifts_agree,
                    format!("totals {totals:?}"),
                )
            }
            Err(e) => r.check("multigraded oracle", false, e),
        };
        if !degenerate {
            let reg = (lambda.n() + lambda.m()) as i64 - 3;
            r.check(
                "regularity and pd",
                summary.regularity == reg && summary.projective_dimension == 3,
                format!("expected reg {reg}, pd 3"),
            );
        }
    }
    r.payload = json!({
        "lambda": lambda.parts(),
        "counts": { "vertices": nu, "edges": eps, "faces": f },
        "m_I": x.m_i().to_string(),
        "summary": summary,
        "d0": complex.d0.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "d1": complex.d1.to_json().map_err(domain)?,
        "d2": complex.d2.to_json().map_err(domain)?,
    });
    Ok(r)
}

pub enum FiberSource {
    Ideal(String, Option<usize>),
    Lambda(String),
}

pub fn fiber(source: FiberSource, r_max: usize) -> Result<Report, CliError> {
    let (ideal, lambda) = match source {
        FiberSource::Ideal(text, vars) => (parse_plain(&text, vars)?, None),
        FiberSource::Lambda(s) => {
            let lambda = parse_partition(&s)?;
            (strongly_stable_from_partition(&lambda).map_err(domain)?, Some(lambda))
        }
    };
    let cmp = verify_fiber_isomorphism(&ideal, r_max).map_err(domain)?;
    let dual = ideal.lcm_dual().map_err(domain)?;
    let mut r = Report::default();
    r.line(format!("ideal: {}", format_ideal(&ideal, &VarNames::Plain)));
    r.line(format!("dual: {}", format_ideal(&dual, &VarNames::Plain)));
    for d in &cmp.degrees {
        r.line(format!(
            "degree {}: relations I = {}, dual = {} ({})",
            d.degree,
            d.ideal_relations,
            d.dual_relations,
            if d.equal { "match" } else { "MISMATCH" }
        ));
    }
    r.check(
        "fiber relations",
        cmp.is_isomorphic(),
        match cmp.first_mismatch() {
            None => format!("relations match through degree {r_max}"),
            Some(k) => format!("first mismatch in degree {k}"),
        },
    );
    let dims = (fiber_dimension(&ideal).map_err(domain)?, fiber_dimension(&dual).map_err(domain)?);
    r.line(format!("dim F = {}", dims.0));
    r.check("fiber dimensions agree", dims.0 == dims.1, format!("{} and {}", dims.0, dims.1));
    let mut payload = json!({
        "ideal": ideal_json(&ideal, &VarNames::Plain),
        "comparison": cmp,
        "fiber_dimension": dims.0,
        "degree_two_relations": toric_relations(&ideal, 2),
    });
    if let Some(lambda) = lambda {
        r.check("dim F = λ1", dims.0 == lambda.n(), format!("λ1 = {}", lambda.n()));
        let minors = symmetric_minors(&lambda).map_err(domain)?;
        let from_minors = minors.index_relations(&ideal);
        let same = from_minors.as_ref() == Some(&toric_relations(&ideal, 2));
        r.line(format!("S_λ: {} admissible 2x2 minors, {} skipped", minors.minors.len(), minors.skipped));
        r.check("minors == degree-2 relations", same, format!("{} distinct binomials", minors.relations().len()));
        payload["minor_count"] = json!(minors.minors.len());
    }
    r.payload = payload;
    Ok(r)
}

fn summary(bad: &[String], samples: usize) -> String {
    match bad.first() {
        None => format!("{samples} samples"),
        Some(first) => format!("{} failures, first: {first}", bad.len()),
    }
}

pub fn selftest(seed: u64, samples: usize) -> Result<Report, CliError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut r = Report::default();
    r.line(format!("seed {seed}, {samples} samples per check"));

    let shape = IdealShape { max_vars: 5, max_exponent: 5, max_generators: 8 };
    let mut bad = Vec::new();
    for _ in 0..samples {
        let i = random_ideal(&mut rng, shape);
        let tall = i.height().map_err(domain)?.height >= 2;
        let back = i.lcm_dual().and_then(|d| d.lcm_dual()).map_err(domain)?;
        if (back == i) != tall {
            bad.push(i.to_string());
        }
    }
    r.check("double dual iff height >= 2", bad.is_empty(), summary(&bad, samples));

    let mut bad = Vec::new();
    for _ in 0..samples {
        let n = rng.gen_range(1..=4);
        let (d, e) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let i = random_equigenerated(&mut rng, n, d, 5);
        let j = random_equigenerated(&mut rng, n, e, 5);
        let lhs = i.product(&j).and_then(|p| p.lcm_dual()).map_err(domain)?;
        let rhs = i.lcm_dual().and_then(|a| a.product(&j.lcm_dual()?)).map_err(domain)?;
        if lhs != rhs {
            bad.push(format!("I = {i}, J = {j}"));
        }
    }
    r.check("product law", bad.is_empty(), summary(&bad, samples));

    let shapes: Vec<Partition> =
        Partition::all_within(4, 6).into_iter().filter(Partition::supports_strongly_stable).collect();
    let mut bad = Vec::new();
    for _ in 0..samples.min(shapes.len()) {
        let lambda = &shapes[rng.gen_range(0..shapes.len())];
        let complex = build_complex(lambda).and_then(|x| boundary_maps(&x)).map_err(domain)?;
        let n = complex.d0[0].n();
        let values: Vec<_> = (0..n).map(|_| rng.gen_range(2i64..1_000_000).into()).collect();
        let vanishes = complex.vanishes_numerically(&values).map_err(domain)?;
        let resolves = verify_resolution(lambda).is_ok_and(|s| s.betti == betti_formulas(lambda).betti);
        if !(vanishes && resolves) {
            bad.push(lambda.to_string());
        }
    }
    r.check("cellular resolutions", bad.is_empty(), summary(&bad, samples));

    let fibers: Vec<Partition> =
        Partition::all_within(3, 4).into_iter().filter(|l| l.supports_strongly_stable() && l.m() >= 2).collect();
    let mut bad = Vec::new();
    for _ in 0..samples.min(fibers.len()) {
        let lambda = &fibers[rng.gen_range(0..fibers.len())];
        let ideal = strongly_stable_from_partition(lambda).map_err(domain)?;
        if !verify_fiber_isomorphism(&ideal, 3).is_ok_and(|c| c.is_isomorphic()) {
            bad.push(lambda.to_string());
        }
    }
    r.check("fiber relations", bad.is_empty(), summary(&bad, samples));
    r.payload = json!({ "seed": seed, "samples": samples });
    Ok(r)
}
