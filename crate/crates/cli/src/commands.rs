use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use orl_core::constructions::{
    alternating_cycle, alternating_path, blowup_path, complete_bipartite, eff_graph,
    nested_matching, order_max_degree_two, order_two_regular, quadratic_lb_instance, tee_graph,
    BlockedOrderedGraph, TwoRegularSpec,
};
use orl_core::embedder::{
    find_alternating_path, find_blowup_path, find_nested_matching_via_path, find_tee, Extraction,
};
use orl_core::format::{
    parse_coloring, parse_matrix, parse_ordered_graph, parse_sizes, parse_unordered_graph,
    parse_upper_certificate, serialize_blocks, serialize_coloring, serialize_matrix,
    serialize_ordered_graph, serialize_unordered_graph, serialize_upper_certificate,
};
use orl_core::patterns::{complement, pattern_contained, permutation_unavoidable, permutation_unavoidable_sampled};
use orl_core::ramsey::{
    count_rho_regular, default_cap, min_max_ordered_ramsey, ordered_ramsey, verify_certificate,
    Certificate, CertificateKind, RamseyValue,
};
use orl_core::stochastic::{
    blown_up_random_coloring, matching_pair_probability, monte_carlo_avoidance, pair_query_corpus,
    sample_permutation_matching, sample_rho_regular, sampled_partition_coverage,
    set_partition_coverage, ExperimentConfig, PairSetQuery, RegularMode, Seed,
};
use orl_core::{contains, Embedding};
use serde_json::json;

use crate::manifest::{sha256_hex, RunManifest, Session};
use crate::{
    CliError, Command, ConstructKind, EmbedAlgo, EmbedArgs, ExperimentKind, MatrixAction, ModeArg,
    Output, RamseyAction, SampleModel, VerifyArgs, EXIT_INCONCLUSIVE, EXIT_INVARIANT, EXIT_OK,
};

type Outcome = Result<u8, CliError>;

pub(crate) fn run(cmd: &Command, s: &mut Session, o: &mut String) -> Outcome {
    match cmd {
        Command::Construct { kind } => construct(kind, s, o),
        Command::Embed(args) => embed(args, s, o),
        Command::Ramsey { action } => ramsey(action, s, o),
        Command::Sample { model } => sample(model, s, o),
        Command::Experiment { kind } => experiment(kind, s, o),
        Command::Matrix { action } => matrix(action, s, o),
        Command::Verify(args) => verify(args, s, o),
        Command::Replay { manifest_file } => replay(manifest_file, o),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Writes `text` to the requested file, or appends it to standard output.
fn emit(s: &mut Session, o: &mut String, out: &Output, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => s.write(path, text),
        None => {
            o.push_str(text);
            Ok(())
        }
    }
}

/// The graph plus its `.blocks` sidecar; on stdout the sidecar follows as
/// comment lines.
fn emit_blocked(s: &mut Session, o: &mut String, out: &Output, b: &BlockedOrderedGraph) -> Outcome {
    let graph = serialize_ordered_graph(&b.graph);
    let blocks = serialize_blocks(b);
    match &out.output {
        Some(path) => {
            s.write(path, &graph)?;
            s.write(&path.with_extension("blocks"), &blocks)?;
        }
        None => {
            o.push_str(&graph);
            for line in blocks.lines() {
                writeln!(o, "# {line}").unwrap();
            }
        }
    }
    Ok(EXIT_OK)
}

fn construct(kind: &ConstructKind, s: &mut Session, o: &mut String) -> Outcome {
    let plain = |s: &mut Session, o: &mut String, out: &Output, g: orl_core::OrderedGraph| -> Outcome {
        emit(s, o, out, &serialize_ordered_graph(&g))?;
        Ok(EXIT_OK)
    };
    match kind {
        ConstructKind::Altpath { n, out } => plain(s, o, out, alternating_path(*n)?),
        ConstructKind::Nestmatch { pairs, out } => plain(s, o, out, nested_matching(*pairs)?),
        ConstructKind::Kbip { r, s: cols, out } => plain(s, o, out, complete_bipartite(*r, *cols)?),
        ConstructKind::Altcycle { m, out } => emit_blocked(s, o, out, &alternating_cycle(*m)?),
        ConstructKind::Blowup { n, k, out } => emit_blocked(s, o, out, &blowup_path(*n, *k)?),
        ConstructKind::Tee { n, k, out } => emit_blocked(s, o, out, &tee_graph(*n, *k)?),
        ConstructKind::Eff { n, k, out } => emit_blocked(s, o, out, &eff_graph(*n, *k)?),
        ConstructKind::Tworeg { lengths, bipartite, out } => {
            let spec = TwoRegularSpec::new(lengths.clone())?;
            let ordered = order_two_regular(&spec, *bipartite)?;
            let mut text = serialize_ordered_graph(&ordered.graph);
            for cyc in &ordered.cycles {
                let list: Vec<String> = cyc.iter().map(usize::to_string).collect();
                writeln!(text, "# cycle {}", list.join(" ")).unwrap();
            }
            emit(s, o, out, &text)?;
            Ok(EXIT_OK)
        }
        ConstructKind::Maxdeg2 { graph, bipartite, out } => {
            let g = s.load(graph, parse_unordered_graph)?;
            let (og, order) = order_max_degree_two(&g, *bipartite)?;
            let mut text = serialize_ordered_graph(&og);
            let list: Vec<String> = order.iter().map(usize::to_string).collect();
            writeln!(text, "# order {}", list.join(" ")).unwrap();
            emit(s, o, out, &text)?;
            Ok(EXIT_OK)
        }
        ConstructKind::Quadlb { n, out, coloring } => {
            let q = quadratic_lb_instance(*n)?;
            emit(s, o, out, &serialize_ordered_graph(&q.graph))?;
            let target = coloring.clone().or_else(|| out.output.as_ref().map(|p| p.with_extension("col")));
            match target {
                Some(path) => s.write(&path, &serialize_coloring(&q.coloring))?,
                None => writeln!(o, "# colouring on {} vertices: pass --coloring FILE", q.coloring.n()).unwrap(),
            }
            Ok(EXIT_OK)
        }
    }
}

fn positions(e: &Embedding) -> String {
    let list: Vec<String> = e.image().iter().map(usize::to_string).collect();
    list.join(" ")
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("{flag} is required for this algorithm")))
}

fn embed(args: &EmbedArgs, s: &mut Session, o: &mut String) -> Outcome {
    let host = s.load(&args.host, parse_ordered_graph)?;
    let parts = || -> Result<_, CliError> {
        let text = args.parts.as_deref().ok_or_else(|| usage("--parts is required for this algorithm"))?;
        Ok(parse_sizes(text)?)
    };
    let found: Result<Embedding, String> = match args.algo {
        EmbedAlgo::Altpath => find_alternating_path(&host, need(args.n, "--n")?)?.ok_or_else(String::new),
        EmbedAlgo::Nested => find_nested_matching_via_path(&host, need(args.n, "--n")?)?.ok_or_else(String::new),
        EmbedAlgo::Contains => {
            let path = args.pattern.as_ref().ok_or_else(|| usage("--pattern is required for contains"))?;
            let pattern = s.load(path, parse_ordered_graph)?;
            contains(&host, &pattern).ok_or_else(String::new)
        }
        EmbedAlgo::Blowup => extraction(find_blowup_path(&host, &parts()?, need(args.n, "--n")?, args.k)?),
        EmbedAlgo::Tee => extraction(find_tee(&host, &parts()?, need(args.n, "--n")?, args.k, args.eps)?),
    };
    match found {
        Ok(e) => {
            writeln!(o, "{}", positions(&e)).unwrap();
            Ok(EXIT_OK)
        }
        Err(stage) if stage.is_empty() => {
            writeln!(o, "NONE").unwrap();
            Ok(EXIT_INCONCLUSIVE)
        }
        Err(stage) => {
            writeln!(o, "NONE {stage}").unwrap();
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn extraction(x: Extraction) -> Result<Embedding, String> {
    match x {
        Extraction::Found(e) => Ok(e),
        Extraction::Failed(stage) => Err(stage.to_string()),
    }
}

fn show(v: RamseyValue) -> String {
    match v {
        RamseyValue::Exact(n) => n.to_string(),
        RamseyValue::AtLeast(n) => format!(">={n}"),
    }
}

fn ramsey(action: &RamseyAction, s: &mut Session, o: &mut String) -> Outcome {
    match action {
        RamseyAction::Exact { pattern, nmax, emit_cert } => {
            let p = s.load(pattern, parse_ordered_graph)?;
            let cap = nmax.unwrap_or_else(|| default_cap(&p));
            let outcome = ordered_ramsey(&p, cap)?;
            if !verify_certificate(&outcome.lower)? {
                return Err(CliError::Invariant("lower-bound colouring contains the pattern".into()));
            }
            if let Some(dir) = emit_cert {
                if let CertificateKind::LowerBound(c) = &outcome.lower.kind {
                    s.write(&dir.join("lower.col"), &serialize_coloring(c))?;
                }
                if let Some(Certificate { kind: CertificateKind::UpperBound { n, stats }, .. }) = &outcome.upper {
                    s.write(&dir.join("upper.cert"), &serialize_upper_certificate(*n, stats))?;
                }
            }
            writeln!(o, "{}", show(outcome.value)).unwrap();
            Ok(match outcome.value {
                RamseyValue::Exact(_) => EXIT_OK,
                RamseyValue::AtLeast(_) => EXIT_INCONCLUSIVE,
            })
        }
        RamseyAction::Minmax { graph, nmax } => {
            let g = s.load(graph, parse_unordered_graph)?;
            let report = min_max_ordered_ramsey(&g, *nmax)?;
            let mut capped = false;
            for r in &report.orderings {
                let order: Vec<String> = r.order.iter().map(usize::to_string).collect();
                capped |= matches!(r.outcome.value, RamseyValue::AtLeast(_));
                writeln!(o, "ordering {} : {}", order.join(" "), show(r.outcome.value)).unwrap();
            }
            writeln!(o, "minr {}", show(report.minr)).unwrap();
            writeln!(o, "maxr {}", show(report.maxr)).unwrap();
            Ok(if capped { EXIT_INCONCLUSIVE } else { EXIT_OK })
        }
        RamseyAction::Verify(args) => verify(args, s, o),
        RamseyAction::CountRegular { rho, n } => {
            let r = count_rho_regular(*rho, *n)?;
            writeln!(o, "rho {}", r.rho).unwrap();
            writeln!(o, "n {}", r.n).unwrap();
            writeln!(o, "degree_sum {}", r.shape.degree_sum).unwrap();
            writeln!(o, "low_degree {}", r.shape.low_degree).unwrap();
            writeln!(o, "high_count {}", r.shape.high_count).unwrap();
            writeln!(o, "count {}", r.exact_count).unwrap();
            writeln!(o, "formula {:.6e}", r.formula_lower_bound).unwrap();
            writeln!(o, "formula_applies {}", r.formula_applies).unwrap();
            Ok(EXIT_OK)
        }
    }
}

fn verify(args: &VerifyArgs, s: &mut Session, o: &mut String) -> Outcome {
    let pattern = s.load(&args.pattern, parse_ordered_graph)?;
    let text = s.read(&args.cert)?;
    let is_upper = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("orcert"));
    let kind = if is_upper {
        let (n, stats) = parse_upper_certificate(&text).map_err(|e| CliError::in_file(&args.cert, e))?;
        CertificateKind::UpperBound { n, stats }
    } else {
        CertificateKind::LowerBound(parse_coloring(&text).map_err(|e| CliError::in_file(&args.cert, e))?)
    };
    let ok = verify_certificate(&Certificate { pattern, kind })?;
    writeln!(o, "{ok}").unwrap();
    Ok(if ok { EXIT_OK } else { EXIT_INCONCLUSIVE })
}

fn sample(model: &SampleModel, s: &mut Session, o: &mut String) -> Outcome {
    match model {
        SampleModel::Matching { n, seed, out } => {
            s.seed = Some(*seed);
            let g = sample_permutation_matching(*n, Seed(*seed))?;
            emit(s, o, out, &serialize_ordered_graph(&g))?;
        }
        SampleModel::Regular { rho, n, seed, mode, out } => {
            s.seed = Some(*seed);
            let mode = match mode {
                ModeArg::Exact => RegularMode::Exact,
                ModeArg::Configuration => RegularMode::Configuration,
            };
            let g = sample_rho_regular(*rho, *n, Seed(*seed), mode)?;
            emit(s, o, out, &serialize_unordered_graph(&g))?;
        }
        SampleModel::Coloring { t, s: size, seed, out } => {
            s.seed = Some(*seed);
            let b = blown_up_random_coloring(*t, *size, Seed(*seed))?;
            emit(s, o, out, &serialize_coloring(&b.coloring))?;
        }
    }
    Ok(EXIT_OK)
}

fn parse_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| usage(format!("`{t}` is not a position"))))
        .collect()
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (i, j) = t.split_once(':').ok_or_else(|| usage(format!("pair `{t}` is not `i:j`")))?;
            let num = |x: &str| x.trim().parse::<usize>().map_err(|_| usage(format!("pair `{t}` is not `i:j`")));
            Ok((num(i)?, num(j)?))
        })
        .collect()
}

fn pair_record(n: usize, q: &PairSetQuery) -> Result<serde_json::Value, CliError> {
    let p = matching_pair_probability(q, n)?;
    let exact = *p.exact.numer() as f64 / *p.exact.denom() as f64;
    Ok(json!({
        "n": n,
        "x_sets": q.x_sets,
        "y_sets": q.y_sets,
        "pairs": q.pairs,
        "exact": p.exact.to_string(),
        "bound": p.bound,
        "d": p.d,
        "r": p.r,
        "s": p.s,
        "z": p.z,
        "below_bound": exact < p.bound,
    }))
}

fn jsonl(records: &[serde_json::Value]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}

fn experiment(kind: &ExperimentKind, s: &mut Session, o: &mut String) -> Outcome {
    match kind {
        ExperimentKind::Pairprob { n, x_sets, y_sets, pairs, corpus, seed, out } => {
            s.seed = Some(*seed);
            let records = match corpus {
                Some(max_n) => {
                    if *max_n > 8 {
                        return Err(usage("the corpus is limited to n <= 8"));
                    }
                    pair_query_corpus(*max_n)
                        .iter()
                        .map(|(n, q)| pair_record(*n, q))
                        .collect::<Result<Vec<_>, _>>()?
                }
                None => {
                    let n = n.ok_or_else(|| usage("--n is required without --corpus"))?;
                    let q = PairSetQuery {
                        x_sets: x_sets.iter().map(|t| parse_list(t)).collect::<Result<_, _>>()?,
                        y_sets: y_sets.iter().map(|t| parse_list(t)).collect::<Result<_, _>>()?,
                        pairs: pairs.as_deref().map(parse_pairs).transpose()?.unwrap_or_default(),
                    };
                    vec![pair_record(n, &q)?]
                }
            };
            emit(s, o, out, &jsonl(&records))?;
            Ok(EXIT_OK)
        }
        ExperimentKind::Coverage { graph, rho, n, t, s: size, threshold, samples, seed, out } => {
            s.seed = Some(*seed);
            let g = match (graph, rho, n) {
                (Some(path), _, _) => s.load(path, parse_unordered_graph)?,
                (None, Some(rho), Some(n)) => {
                    let mode = if *n <= 8 { RegularMode::Exact } else { RegularMode::Configuration };
                    sample_rho_regular(*rho, *n, Seed(*seed), mode)?
                }
                _ => return Err(usage("give --graph, or --rho and --n to sample one")),
            };
            let report = match samples {
                Some(k) => sampled_partition_coverage(&g, *t, *size, *threshold, *k, Seed(*seed))?,
                None => set_partition_coverage(&g, *t, *size, *threshold)?,
            };
            let record = json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "t": t,
                "s": size,
                "report": report,
            });
            emit(s, o, out, &jsonl(&[record]))?;
            Ok(EXIT_OK)
        }
        ExperimentKind::Montecarlo { pattern, config_n, t, s: size, trials, seed, inject, cert_dir, out } => {
            s.seed = Some(*seed);
            let (pattern, cfg) = match (pattern, config_n) {
                (Some(path), _) => (s.load(path, parse_ordered_graph)?, None),
                (None, Some(n)) => (
                    sample_permutation_matching(*n, Seed(*seed))?,
                    Some(ExperimentConfig::new(*n, *trials, Seed(*seed))?),
                ),
                (None, None) => return Err(usage("give --pattern or --config-n")),
            };
            let pick = |v: Option<usize>, from: fn(&ExperimentConfig) -> usize, flag: &str| {
                v.or_else(|| cfg.as_ref().map(from))
                    .ok_or_else(|| usage(format!("{flag} is required without --config-n")))
            };
            let t = pick(*t, |c| c.t.value, "--t")?;
            let size = pick(*size, |c| c.s.value, "--s")?;
            let injected = inject.as_ref().map(|p| s.load(p, parse_coloring)).transpose()?;
            let report = monte_carlo_avoidance(&pattern, t, size, *trials, Seed(*seed), injected)?;
            let mut cert_path: Option<(u64, PathBuf)> = None;
            if let (Some(dir), Some(cert)) = (cert_dir, &report.certificate) {
                if let CertificateKind::LowerBound(c) = &cert.kind {
                    let trial = report.records.iter().find(|r| r.avoided).map_or(0, |r| r.trial);
                    let path = dir.join(format!("trial-{trial}.col"));
                    s.write(&path, &serialize_coloring(c))?;
                    cert_path = Some((trial, path));
                }
            }
            let records: Vec<serde_json::Value> = report
                .records
                .iter()
                .map(|r| {
                    let cert = cert_path
                        .as_ref()
                        .filter(|(k, _)| *k == r.trial)
                        .map(|(_, p)| p.display().to_string());
                    json!({
                        "trial": r.trial,
                        "seed": r.seed,
                        "outcome": if r.avoided { "avoided" } else { "copy" },
                        "red_copy": r.red_copy,
                        "blue_copy": r.blue_copy,
                        "injected": r.injected,
                        "certificate": cert,
                    })
                })
                .collect();
            emit(s, o, out, &jsonl(&records))?;
            let summary = json!({
                "summary": true,
                "pattern_vertices": pattern.n(),
                "t": t,
                "s": size,
                "trials": report.trials,
                "avoiding": report.avoiding,
                "fraction": report.fraction().to_string(),
                "ramsey_at_least": report.certificate.as_ref().map(|_| report.size + 1),
            });
            writeln!(o, "{summary}").unwrap();
            Ok(EXIT_OK)
        }
        ExperimentKind::Config { config_n, trials, seed } => {
            s.seed = Some(*seed);
            let cfg = ExperimentConfig::new(*config_n, *trials, Seed(*seed))?;
            writeln!(o, "{}", serde_json::to_string(&cfg).expect("config serialises")).unwrap();
            Ok(EXIT_OK)
        }
    }
}

fn matrix(action: &MatrixAction, s: &mut Session, o: &mut String) -> Outcome {
    match action {
        MatrixAction::Contains { a, b } => {
            let a = s.load(a, parse_matrix)?;
            let b = s.load(b, parse_matrix)?;
            writeln!(o, "{}", pattern_contained(&a, &b)).unwrap();
        }
        MatrixAction::Complement { a, out } => {
            let a = s.load(a, parse_matrix)?;
            emit(s, o, out, &serialize_matrix(&complement(&a)))?;
        }
        MatrixAction::Unavoid { n, big_n, trials, seed } => {
            let report = match trials {
                Some(k) => {
                    let seed = seed.ok_or_else(|| usage("--seed is required with --trials"))?;
                    s.seed = Some(seed);
                    permutation_unavoidable_sampled(*n, *big_n, *k, Seed(seed))?
                }
                None => permutation_unavoidable(*n, *big_n)?,
            };
            writeln!(o, "{}", report.holds).unwrap();
            writeln!(o, "# matrices checked: {}", report.matrices_checked).unwrap();
            if let Some((a, p)) = &report.counterexample {
                writeln!(o, "# counterexample").unwrap();
                o.push_str(&serialize_matrix(a));
                writeln!(o, "# permutation matrix in neither it nor its complement").unwrap();
                o.push_str(&serialize_matrix(p));
            }
        }
    }
    Ok(EXIT_OK)
}

/// Re-runs the recorded arguments and compares standard output, output
/// files and exit code against the manifest.
fn replay(path: &Path, o: &mut String) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let record: RunManifest =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if record.argv.first().is_some_and(|a| a == "replay") {
        return Err(usage("a replay manifest cannot be replayed"));
    }
    let args: Vec<String> = std::iter::once("orl".to_string()).chain(record.argv.iter().cloned()).collect();
    let mut captured = Vec::new();
    let code = crate::dispatch(&args, &mut captured);
    let mut mismatches = Vec::new();
    if code != record.exit_code {
        mismatches.push(format!("exit code {code} != {}", record.exit_code));
    }
    if sha256_hex(&captured) != record.stdout_sha256 {
        mismatches.push("stdout differs".to_string());
    }
    for f in &record.outputs {
        match std::fs::read(&f.path) {
            Ok(bytes) if sha256_hex(&bytes) == f.sha256 => {}
            Ok(_) => mismatches.push(format!("{} differs", f.path)),
            Err(e) => mismatches.push(format!("{}: {e}", f.path)),
        }
    }
    if mismatches.is_empty() {
        writeln!(o, "identical").unwrap();
        Ok(EXIT_OK)
    } else {
        for m in &mismatches {
            writeln!(o, "mismatch: {m}").unwrap();
        }
        Ok(EXIT_INVARIANT)
    }
}
