use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use parteval::benchgen::{
    gen_clique_chain, gen_fixed_clique_mu, gen_hierarchical_sbm, gen_ring_of_cliques, gen_sbm,
    ring_paired_partition,
};
use parteval::pareto::frontier_mask;
use parteval::report::{self, MetricRow, ScoreTable};
use parteval::{
    alpha_envelope, metric_report, run_trials, two_fq, Graph, NullModelKind, Partition, PlantedGraph,
    ScorePoint,
};
use serde::Serialize;

use crate::{Cli, Command, CriteriaPair, DetectorSpec, Format, GenOutput, Generator};

/// Outcome of a command that ran to completion. Each failure has already
/// been reported on stderr.
pub struct RunReport {
    pub failures: usize,
}

const CLEAN: RunReport = RunReport { failures: 0 };

/// Writes one JSON error record to stderr.
pub fn error_record(command: &str, input: Option<&Path>, err: &anyhow::Error) {
    let kind = if let Some(e) = err.downcast_ref::<parteval::Error>() {
        e.kind()
    } else if err.downcast_ref::<std::io::Error>().is_some() {
        "io"
    } else {
        "error"
    };
    let record = serde_json::json!({
        "command": command,
        "input": input.map(|p| p.display().to_string()),
        "kind": kind,
        "message": format!("{err:#}"),
    });
    eprintln!("{record}");
}

pub fn usage_record(message: &str) {
    let record = serde_json::json!({
        "command": null,
        "input": null,
        "kind": "usage",
        "message": message.trim_end(),
    });
    eprintln!("{record}");
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let Cli {
        null, format, seed, ..
    } = *cli;
    match &cli.command {
        Command::Metrics {
            graph,
            partitions,
            out,
        } => metrics(graph, partitions, out.as_deref(), null, format),
        Command::Compare {
            graph,
            partitions,
            criteria,
            out,
            intervals,
            alpha_grid,
            grid_out,
            two_fq,
        } => {
            let opts = CompareOptions {
                criteria: *criteria,
                out,
                intervals: intervals.as_deref(),
                alpha_grid: *alpha_grid,
                grid_out: grid_out.as_deref(),
                mode: *two_fq,
            };
            compare(graph, partitions, &opts, null, format)
        }
        Command::Pareto { scores, x, y, out } => pareto(scores, x, y, out.as_deref(), format),
        Command::Envelope { scores, x, y, out } => envelope(scores, x, y, out.as_deref(), format),
        Command::EvalPr {
            graph,
            detector,
            p,
            trials,
            out,
        } => eval_pr(graph, detector, *p, *trials, seed, out.as_deref(), null, format),
        Command::Gen { generator } => generate(generator, seed, format),
        Command::Detect {
            graph,
            method,
            out,
            all_levels,
        } => detect(
            graph,
            *method,
            out.as_deref(),
            all_levels.as_deref(),
            seed,
            null,
            format,
        ),
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("graph {}", path.display()))
}

fn read_partition(path: &Path, g: &Graph) -> Result<Partition> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Partition::parse(&text, g).with_context(|| format!("partition {}", path.display()))
}

fn read_scores(path: &Path) -> Result<ScoreTable> {
    let file = fs::File::open(path).with_context(|| format!("reading {}", path.display()))?;
    ScoreTable::read(file).with_context(|| format!("scores {}", path.display()))
}

fn serialize_partition(part: &Partition, g: &Graph, format: Format) -> String {
    match format {
        Format::Csv => part.to_tsv(g),
        Format::Json => part.to_json(g),
    }
}

fn rows_bytes(rows: &[MetricRow], format: Format) -> Result<Vec<u8>> {
    Ok(match format {
        Format::Csv => {
            let mut buf = Vec::new();
            report::write_metrics_csv(&mut buf, rows)?;
            buf
        }
        Format::Json => report::to_json(rows)?.into_bytes(),
    })
}

/// Scores every readable partition; unreadable or invalid ones are reported
/// and skipped.
fn score_partitions(
    command: &str,
    g: &Graph,
    paths: &[PathBuf],
    null: NullModelKind,
) -> (Vec<MetricRow>, usize) {
    let mut rows = Vec::with_capacity(paths.len());
    let mut failures = 0;
    for path in paths {
        let scored = read_partition(path, g).and_then(|part| {
            let report = metric_report(g, &part, null)?;
            Ok(MetricRow {
                label: path.display().to_string(),
                communities: part.community_count(),
                report,
                on_frontier: None,
            })
        });
        match scored {
            Ok(row) => rows.push(row),
            Err(err) => {
                error_record(command, Some(path), &err);
                failures += 1;
            }
        }
    }
    (rows, failures)
}

fn metrics(
    graph: &Path,
    partitions: &[PathBuf],
    out: Option<&Path>,
    null: NullModelKind,
    format: Format,
) -> Result<RunReport> {
    let g = read_graph(graph)?;
    let (rows, failures) = score_partitions("metrics", &g, partitions, null);
    emit(out, &rows_bytes(&rows, format)?)?;
    Ok(RunReport { failures })
}

struct CompareOptions<'a> {
    criteria: CriteriaPair,
    out: &'a Path,
    intervals: Option<&'a Path>,
    alpha_grid: Option<usize>,
    grid_out: Option<&'a Path>,
    mode: parteval::TwoFqMode,
}

/// `dir/stem.suffix.ext` next to `out`.
fn sibling(out: &Path, suffix: &str, format: Format) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy()).unwrap_or_default();
    out.with_file_name(format!("{stem}.{suffix}.{}", format.extension()))
}

#[derive(Serialize)]
struct GridRow<'a> {
    label: &'a str,
    alpha: f64,
    two_fq: f64,
}

fn compare(
    graph: &Path,
    partitions: &[PathBuf],
    opts: &CompareOptions,
    null: NullModelKind,
    format: Format,
) -> Result<RunReport> {
    let g = read_graph(graph)?;
    let (mut rows, failures) = score_partitions("compare", &g, partitions, null);
    let value = |row: &MetricRow, name: &str| row.report.get(name).expect("criteria are metric columns");

    let points: Vec<ScorePoint> = rows
        .iter()
        .map(|r| {
            ScorePoint::new(
                r.label.clone(),
                value(r, opts.criteria.x),
                value(r, opts.criteria.y),
            )
        })
        .collect();
    for (row, on) in rows.iter_mut().zip(frontier_mask(&points)?) {
        row.on_frontier = Some(on);
    }
    emit(Some(opts.out), &rows_bytes(&rows, format)?)?;

    if opts.criteria.is_modularity_mdensity() && !rows.is_empty() {
        let lines: Vec<(String, f64, f64)> = rows
            .iter()
            .map(|r| (r.label.clone(), r.report.modularity, r.report.mdensity))
            .collect();
        let intervals = alpha_envelope(&lines)?;
        let path = opts
            .intervals
            .map_or_else(|| sibling(opts.out, "intervals", format), Path::to_path_buf);
        emit(Some(&path), &intervals_bytes(&intervals, format)?)?;
    }

    if let Some(steps) = opts.alpha_grid {
        if steps == 0 {
            bail!(parteval::Error::InvalidParameter(
                "--alpha-grid needs at least one step".into()
            ));
        }
        let mut grid = Vec::with_capacity(rows.len() * (steps + 1));
        for row in &rows {
            for i in 0..=steps {
                let alpha = i as f64 / steps as f64;
                grid.push(GridRow {
                    label: &row.label,
                    alpha,
                    two_fq: two_fq(row.report.modularity, row.report.mdensity, alpha, opts.mode)?,
                });
            }
        }
        let bytes = match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for r in &grid {
                    w.serialize(r)?;
                }
                w.into_inner().map_err(|e| anyhow::anyhow!("{}", e.error()))?
            }
            Format::Json => report::to_json(&grid)?.into_bytes(),
        };
        let path = opts
            .grid_out
            .map_or_else(|| sibling(opts.out, "2fq", format), Path::to_path_buf);
        emit(Some(&path), &bytes)?;
    }
    Ok(RunReport { failures })
}

fn intervals_bytes(intervals: &[parteval::AlphaInterval], format: Format) -> Result<Vec<u8>> {
    Ok(match format {
        Format::Csv => {
            let mut buf = Vec::new();
            report::write_intervals_csv(&mut buf, intervals)?;
            buf
        }
        Format::Json => report::to_json(intervals)?.into_bytes(),
    })
}

fn score_points(table: &ScoreTable, x: &str, y: &str) -> Result<Vec<ScorePoint>> {
    let xs = table.numbers(x)?;
    let ys = table.numbers(y)?;
    Ok(table
        .ids()
        .into_iter()
        .zip(xs.into_iter().zip(ys))
        .map(|(id, (x, y))| ScorePoint::new(id, x, y))
        .collect())
}

fn pareto(scores: &Path, x: &str, y: &str, out: Option<&Path>, format: Format) -> Result<RunReport> {
    let table = read_scores(scores)?;
    let points = score_points(&table, x, y)?;
    let mask = frontier_mask(&points)?;
    let bytes = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            table.write_rows(&mut buf, &mask)?;
            buf
        }
        Format::Json => {
            let kept: Vec<&ScorePoint> = points
                .iter()
                .zip(&mask)
                .filter(|(_, &k)| k)
                .map(|(p, _)| p)
                .collect();
            report::to_json(&kept)?.into_bytes()
        }
    };
    emit(out, &bytes)?;
    Ok(CLEAN)
}

fn envelope(scores: &Path, x: &str, y: &str, out: Option<&Path>, format: Format) -> Result<RunReport> {
    let table = read_scores(scores)?;
    let lines: Vec<(String, f64, f64)> = score_points(&table, x, y)?
        .into_iter()
        .map(|p| (p.id, p.x, p.y))
        .collect();
    emit(out, &intervals_bytes(&alpha_envelope(&lines)?, format)?)?;
    Ok(CLEAN)
}

#[allow(clippy::too_many_arguments)]
fn eval_pr(
    graph: &Path,
    detector: &DetectorSpec,
    removal_fraction: f64,
    trials: u64,
    seed: u64,
    out: Option<&Path>,
    null: NullModelKind,
    format: Format,
) -> Result<RunReport> {
    let g = read_graph(graph)?;
    if trials == 0 {
        bail!(parteval::Error::InvalidParameter(
            "--trials must be positive".into()
        ));
    }
    let seeds: Vec<u64> = (0..trials).map(|i| seed.wrapping_add(i)).collect();
    let summary = match detector {
        DetectorSpec::File(path) => {
            // training graphs keep every node, so the file parses against the full graph
            let part = read_partition(path, &g)?;
            run_trials(&g, removal_fraction, &seeds, |_, _| Ok(part.clone()))?
        }
        DetectorSpec::Builtin(kind) => {
            run_trials(&g, removal_fraction, &seeds, |t, s| kind.detect(t, s, null))?
        }
    };
    let bytes = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            report::write_pr_csv(&mut buf, &summary.results)?;
            buf
        }
        Format::Json => report::to_json(&summary)?.into_bytes(),
    };
    emit(out, &bytes)?;
    if format == Format::Csv {
        let line = serde_json::json!({
            "summary": {"trials": trials, "mean_precision": summary.mean_precision, "mean_recall": summary.mean_recall}
        });
        eprintln!("{line}");
    }
    Ok(CLEAN)
}

fn generate(generator: &Generator, seed: u64, format: Format) -> Result<RunReport> {
    let (planted, truth, output) = match generator {
        Generator::Sbm {
            sizes,
            p_in,
            p_out,
            output,
        } => {
            let pg = gen_sbm(sizes, *p_in, *p_out, seed)?;
            let truth = pg.planted.clone();
            (pg, truth, output)
        }
        Generator::Hsbm {
            groups,
            blocks_per_group,
            block_size,
            p_in,
            p_mid,
            p_out,
            coarse_truth,
            output,
        } => {
            let (pg, coarse) = gen_hierarchical_sbm(
                *groups,
                *blocks_per_group,
                *block_size,
                (*p_in, *p_mid, *p_out),
                seed,
            )?;
            if let Some(path) = coarse_truth {
                emit(
                    Some(path),
                    serialize_partition(&coarse, &pg.graph, format).as_bytes(),
                )?;
            }
            let truth = pg.planted.clone();
            (pg, truth, output)
        }
        Generator::FixedClique {
            cliques,
            size,
            mu,
            output,
        } => {
            let pg = gen_fixed_clique_mu(*cliques, *size, *mu, seed)?;
            let truth = pg.planted.clone();
            (pg, truth, output)
        }
        Generator::Ring {
            cliques,
            size,
            paired,
            output,
        } => {
            let pg = gen_ring_of_cliques(*cliques, *size)?;
            let truth = if *paired {
                ring_paired_partition(*cliques, *size)?
            } else {
                pg.planted.clone()
            };
            (pg, truth, output)
        }
        Generator::Chain {
            components,
            chain_len,
            clique_size,
            output,
        } => {
            let pg = gen_clique_chain(*components, *chain_len, *clique_size)?;
            let truth = pg.planted.clone();
            (pg, truth, output)
        }
    };
    write_generated(&planted, &truth, output, format)?;
    Ok(CLEAN)
}

fn write_generated(pg: &PlantedGraph, truth: &Partition, output: &GenOutput, format: Format) -> Result<()> {
    emit(Some(&output.out), pg.graph.to_edge_list().as_bytes())?;
    if let Some(path) = &output.truth {
        emit(
            Some(path),
            serialize_partition(truth, &pg.graph, format).as_bytes(),
        )?;
    }
    if let Some(path) = &output.params {
        emit(Some(path), report::to_json(&pg.params)?.as_bytes())?;
    }
    Ok(())
}

fn detect(
    graph: &Path,
    method: parteval::DetectorKind,
    out: Option<&Path>,
    all_levels: Option<&Path>,
    seed: u64,
    null: NullModelKind,
    format: Format,
) -> Result<RunReport> {
    let g = read_graph(graph)?;
    let part = method.detect(&g, seed, null)?;
    emit(out, serialize_partition(&part, &g, format).as_bytes())?;
    if let Some(dir) = all_levels {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let ext = match format {
            Format::Csv => "tsv",
            Format::Json => "json",
        };
        for (i, level) in method.all_levels(&g, seed, null)?.iter().enumerate() {
            let path = dir.join(format!("level-{i:03}.{ext}"));
            emit(Some(&path), serialize_partition(level, &g, format).as_bytes())?;
        }
    }
    Ok(CLEAN)
}
