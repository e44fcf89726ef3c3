use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use epr_universe::cosmology::{expansion_series, flatness_score, ExpansionReport};
use epr_universe::generators::{complete, cycle, gnp, path, petersen, star};
use epr_universe::macrotime::{entropy_series, generate_chain, validate_chain, DecayChain, DecayPolicy, EntropyReport, Measure};
use epr_universe::symmetry::{brute_force_automorphisms, frucht_realize, symmetry_score};
use epr_universe::universe::{aspects_extending, count_aspects_extending, join_in_aspect, UniverseError};
use epr_universe::{automorphisms, leq, meet, Aspect, EprComplex, SpectralBasis};

use crate::input::{expect_inputs, load_complex, load_group, named_group};
use crate::report::{csv_table, envelope, to_value};
use crate::{ChainArgs, Cli, CliError, Command, EnsembleArgs, Format, GenKind, GlobalArgs, PosetOp};

/// Runs the parsed command and returns the full text to emit.
pub fn execute(cli: &Cli, threads: usize) -> Result<String, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen { kind, n_phi } => gen(g, kind, *n_phi),
        Command::Poset { op } => poset(g, op),
        Command::Aut { brute } => aut(g, *brute),
        Command::Frucht { group } => frucht(g, group.as_deref()),
        Command::Spectral { vectors } => spectral(g, *vectors),
        Command::Chain { chain, full } => chain_cmd(g, chain, *full),
        Command::Entropy { chain, ensemble } => entropy(g, chain, ensemble, threads),
        Command::Expand { chain, ensemble } => expand(g, chain, ensemble, threads),
        Command::Flatness => flatness(g),
    }
}

fn json_only(g: &GlobalArgs, command: &str) -> Result<(), CliError> {
    match g.format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!("{command} has no csv output"))),
    }
}

fn single_input(g: &GlobalArgs, command: &str) -> Result<EprComplex, CliError> {
    load_complex(&expect_inputs(&g.inputs, 1, command)?[0])
}

/// Group orders as JSON numbers when they fit, decimal strings otherwise.
fn order_value(order: &num_bigint::BigUint) -> Value {
    match order.to_u64() {
        Some(n) => json!(n),
        None => json!(order.to_string()),
    }
}

fn gen(g: &GlobalArgs, kind: &GenKind, n_phi: Option<usize>) -> Result<String, CliError> {
    let e = match kind {
        GenKind::Cycle { n } => cycle(*n),
        GenKind::Complete { n } => complete(*n),
        GenKind::Path { n } => path(*n),
        GenKind::Star { n } => star(*n),
        GenKind::Petersen => petersen(),
        GenKind::Gnp { n, p } => {
            if !(0.0..=1.0).contains(p) {
                return Err(CliError::Usage(format!("gnp probability {p} outside [0, 1]")));
            }
            gnp(*n, *p, g.seed)
        }
        GenKind::File => single_input(g, "gen file")?,
    };
    let e = match n_phi {
        Some(m) => EprComplex::new(m, e.objects().to_vec(), e.edges().to_vec())?,
        None => e,
    };
    match g.format {
        Format::Json => Ok(format!("{}\n", e.to_json())),
        Format::Csv => {
            let rows: Vec<Vec<String>> = e
                .edges()
                .iter()
                .map(|(a, b)| vec![a.0.to_string(), b.0.to_string()])
                .collect();
            csv_table("gen", g, &["a", "b"], &rows)
        }
    }
}

fn poset(g: &GlobalArgs, op: &PosetOp) -> Result<String, CliError> {
    json_only(g, "poset")?;
    let (name, result) = match op {
        PosetOp::Leq => {
            let paths = expect_inputs(&g.inputs, 2, "poset leq")?;
            let (e, f) = (load_complex(&paths[0])?, load_complex(&paths[1])?);
            ("poset leq", json!({"leq": leq(&e, &f), "geq": leq(&f, &e)}))
        }
        PosetOp::Join => {
            if g.inputs.len() < 2 {
                return Err(CliError::Usage("poset join takes an aspect then at least one part".into()));
            }
            let aspect = Aspect::new(load_complex(&g.inputs[0])?)?;
            let parts = g.inputs[1..]
                .iter()
                .map(|p| load_complex(p))
                .collect::<Result<Vec<_>, _>>()?;
            let j = join_in_aspect(&aspect, &parts)?;
            ("poset join", json!({"join": to_value(&j)}))
        }
        PosetOp::Meet => {
            let paths = expect_inputs(&g.inputs, 2, "poset meet")?;
            let m = meet(&load_complex(&paths[0])?, &load_complex(&paths[1])?);
            let mut v = to_value(&m);
            v["selected_bound"] = to_value(m.selected());
            ("poset meet", v)
        }
        PosetOp::Aspects => {
            let e = single_input(g, "poset aspects")?;
            let count = count_aspects_extending(&e);
            let listed = match aspects_extending(&e, g.limit_enum) {
                Ok(list) => Some(list),
                Err(UniverseError::EnumerationTooLarge { .. }) => None,
                Err(other) => return Err(other.into()),
            };
            (
                "poset aspects",
                json!({
                    "count": order_value(&count),
                    "enumerated": listed.is_some(),
                    "aspects": listed.map(|l| to_value(&l)),
                }),
            )
        }
    };
    Ok(envelope(name, g, json!({}), result))
}

fn aut(g: &GlobalArgs, brute: bool) -> Result<String, CliError> {
    json_only(g, "aut")?;
    let e = single_input(g, "aut")?;
    let group = automorphisms(&e);
    let objects = e.objects();
    let generators: Vec<Value> = group.generators().iter().map(|p| to_value(&p.object_images(&e))).collect();
    let orbits: Vec<Vec<u32>> = group
        .orbits()
        .iter()
        .map(|orbit| orbit.iter().map(|&i| objects[i].0).collect())
        .collect();
    let mut result = json!({
        "objects": to_value(&objects),
        "generators": generators,
        "order": order_value(&group.order()),
        "orbits": orbits,
        "symmetry_score": to_value(&symmetry_score(&e).ok()),
    });
    if brute {
        result["brute_force_order"] = order_value(&brute_force_automorphisms(&e)?.order());
    }
    Ok(envelope("aut", g, json!({"brute": brute}), result))
}

fn frucht(g: &GlobalArgs, name: Option<&str>) -> Result<String, CliError> {
    json_only(g, "frucht")?;
    let group = match name {
        Some(n) => {
            if !g.inputs.is_empty() {
                return Err(CliError::Usage("frucht takes either --group or --in".into()));
            }
            named_group(n)?
        }
        None => load_group(&expect_inputs(&g.inputs, 1, "frucht")?[0])?,
    };
    let r = frucht_realize(&group, g.limit_frucht)?;
    let result = json!({
        "group_order": r.order(),
        "vertex_count": r.complex.len(),
        "edge_count": r.complex.edge_count(),
        "realized_order": order_value(&automorphisms(&r.complex).order()),
        "complex": to_value(&r.complex),
    });
    Ok(envelope("frucht", g, json!({"group": name}), result))
}

fn spectral(g: &GlobalArgs, vectors: bool) -> Result<String, CliError> {
    let e = single_input(g, "spectral")?;
    let basis = SpectralBasis::of(&e)?;
    if g.format == Format::Csv {
        let rows: Vec<Vec<String>> = basis
            .eigenvalues()
            .iter()
            .enumerate()
            .map(|(k, v)| vec![k.to_string(), v.to_string()])
            .collect();
        return csv_table("spectral", g, &["k", "eigenvalue"], &rows);
    }
    let mut result = to_value(&basis.report(vectors));
    result["objects"] = to_value(&e.objects());
    result["blocks"] = basis.blocks().iter().map(|b| json!([b.start, b.end])).collect();
    Ok(envelope("spectral", g, json!({"vectors": vectors}), result))
}

fn policy(args: &ChainArgs, seed: u64) -> DecayPolicy {
    let mut p = DecayPolicy::new(args.removals, args.steps, seed);
    p.rewire_to_matter = args.rewire;
    p
}

/// The basis from the first input and the aspect from the second, or the
/// basis padded with isolated objects when there is no second input.
fn chain_inputs(g: &GlobalArgs, command: &str) -> Result<(EprComplex, Aspect), CliError> {
    match g.inputs.len() {
        1 => {
            let e = load_complex(&g.inputs[0])?;
            let a = Aspect::isolated_extension(&e);
            Ok((e, a))
        }
        2 => Ok((load_complex(&g.inputs[0])?, Aspect::new(load_complex(&g.inputs[1])?)?)),
        n => Err(CliError::Usage(format!("{command} takes a basis and an optional aspect, got {n} inputs"))),
    }
}

fn chain_config(args: &ChainArgs, extra: Value) -> Value {
    let mut v = json!({
        "removals": args.removals,
        "steps": args.steps,
        "measure": args.measure,
        "rewire": args.rewire,
    });
    if let (Some(base), Value::Object(more)) = (v.as_object_mut(), extra) {
        base.extend(more);
    }
    v
}

fn parse_measure(args: &ChainArgs) -> Result<Measure, CliError> {
    Ok(args.measure.parse::<Measure>()?)
}

fn chain_cmd(g: &GlobalArgs, args: &ChainArgs, full: bool) -> Result<String, CliError> {
    let measure = parse_measure(args)?;
    let (e, a) = chain_inputs(g, "chain")?;
    let c = generate_chain(&e, &a, &policy(args, g.seed))?;
    let report = entropy_series(&c, measure)?;
    let sizes = c.basis_sizes();
    if g.format == Format::Csv {
        let rows: Vec<Vec<String>> = (0..c.len())
            .map(|i| {
                let removed = if i == 0 { 0 } else { c.removed[i - 1].len() };
                vec![i.to_string(), sizes[i].to_string(), removed.to_string(), report.values[i].to_string()]
            })
            .collect();
        return csv_table("chain", g, &["step", "basis_size", "removed", measure.name()], &rows);
    }
    let validation = validate_chain(&c);
    let mut result = json!({
        "policy": to_value(&policy(args, g.seed)),
        "basis_sizes": sizes,
        "removed": to_value(&c.removed),
        "valid": validation.is_valid(),
        "entropy": to_value(&report),
    });
    if full {
        result["chain"] = to_value(&c);
    }
    Ok(envelope("chain", g, chain_config(args, json!({"full": full})), result))
}

/// Runs `f` for seeds `seed..seed + n` on at most `threads` workers and
/// returns the results in seed order.
fn over_seeds<T, F>(g: &GlobalArgs, n: usize, threads: usize, f: F) -> Result<Vec<(u64, T)>, CliError>
where
    T: Send,
    F: Fn(u64) -> Result<T, CliError> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} worker threads: {e}")))?;
    let seeds: Vec<u64> = (0..n as u64).map(|i| g.seed.wrapping_add(i)).collect();
    let results: Vec<Result<T, CliError>> = pool.install(|| seeds.par_iter().map(|&s| f(s)).collect());
    seeds
        .into_iter()
        .zip(results)
        .map(|(s, r)| r.map(|v| (s, v)))
        .collect()
}

fn ensemble_output(
    command: &str,
    g: &GlobalArgs,
    config: Value,
    fractions: &[(u64, f64)],
) -> Result<String, CliError> {
    if g.format == Format::Csv {
        let rows: Vec<Vec<String>> = fractions
            .iter()
            .map(|(s, f)| vec![s.to_string(), f.to_string()])
            .collect();
        return csv_table(command, g, &["seed", "monotone_fraction"], &rows);
    }
    let values: Vec<f64> = fractions.iter().map(|(_, f)| *f).collect();
    let mean = values.iter().sum::<f64>() / values.len().max(1) as f64;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let result = json!({
        "seeds": fractions.iter().map(|(s, _)| *s).collect::<Vec<_>>(),
        "monotone_fractions": values,
        "mean_monotone_fraction": mean,
        "min_monotone_fraction": if values.is_empty() { Value::Null } else { json!(min) },
    });
    Ok(envelope(command, g, config, result))
}

fn entropy(g: &GlobalArgs, args: &ChainArgs, ens: &EnsembleArgs, threads: usize) -> Result<String, CliError> {
    let measure = parse_measure(args)?;
    let (e, a) = chain_inputs(g, "entropy")?;
    let run = |seed: u64| -> Result<(DecayChain, EntropyReport), CliError> {
        let c = generate_chain(&e, &a, &policy(args, seed))?;
        let r = entropy_series(&c, measure)?;
        Ok((c, r))
    };
    let config = chain_config(args, json!({"ensemble": ens.ensemble, "threads": threads}));
    if let Some(n) = ens.ensemble {
        let fractions: Vec<(u64, f64)> = over_seeds(g, n, threads, |s| Ok(run(s)?.1.monotone_fraction))?;
        return ensemble_output("entropy", g, config, &fractions);
    }
    let (c, r) = run(g.seed)?;
    let sizes = c.basis_sizes();
    if g.format == Format::Csv {
        let rows: Vec<Vec<String>> = (0..c.len())
            .map(|i| {
                let delta = if i == 0 { String::new() } else { r.deltas[i - 1].to_string() };
                vec![i.to_string(), sizes[i].to_string(), r.values[i].to_string(), delta]
            })
            .collect();
        return csv_table("entropy", g, &["step", "basis_size", "value", "delta"], &rows);
    }
    let result = json!({"basis_sizes": sizes, "entropy": to_value(&r)});
    Ok(envelope("entropy", g, config, result))
}

fn expand(g: &GlobalArgs, args: &ChainArgs, ens: &EnsembleArgs, threads: usize) -> Result<String, CliError> {
    let (e, a) = chain_inputs(g, "expand")?;
    let run = |seed: u64| -> Result<(DecayChain, ExpansionReport), CliError> {
        let c = generate_chain(&e, &a, &policy(args, seed))?;
        let r = expansion_series(&c)?;
        Ok((c, r))
    };
    let config = chain_config(args, json!({"ensemble": ens.ensemble, "threads": threads}));
    if let Some(n) = ens.ensemble {
        let fractions: Vec<(u64, f64)> = over_seeds(g, n, threads, |s| Ok(run(s)?.1.monotone_fraction))?;
        return ensemble_output("expand", g, config, &fractions);
    }
    let (c, r) = run(g.seed)?;
    let sizes = c.basis_sizes();
    if g.format == Format::Csv {
        let rows: Vec<Vec<String>> = (0..c.len())
            .map(|i| {
                vec![
                    i.to_string(),
                    sizes[i].to_string(),
                    r.cutoff_series[i].to_string(),
                    r.spread_series[i].to_string(),
                    r.expansion_factor_series[i].to_string(),
                ]
            })
            .collect();
        return csv_table("expand", g, &["step", "basis_size", "cutoff", "spread", "expansion_factor"], &rows);
    }
    let result = json!({"basis_sizes": sizes, "expansion": to_value(&r)});
    Ok(envelope("expand", g, config, result))
}

fn flatness(g: &GlobalArgs) -> Result<String, CliError> {
    json_only(g, "flatness")?;
    let e = single_input(g, "flatness")?;
    let score = symmetry_score(&e)?;
    let result = json!({
        "flatness": flatness_score(&e)?,
        "orbit_count": score.orbit_count,
        "object_count": e.len(),
    });
    Ok(envelope("flatness", g, json!({}), result))
}
