//! Batch front door: build edge links, classify edges against the table,
//! compute shortcut sets, run surgery paths, the girth pipeline, and the
//! constants audit.

use clap::{Parser, Subcommand};
use curvelab::config::{OutputFormat, RunConfig};
use curvelab::farey::{farey_edge_link, Slope, SlopeModel};
use curvelab::fillingsystem::{genus2_std, genus3_jsep, genus_g_std, oneedge_g2};
use curvelab::girth::{
    audit_constants, girth, girth_bound_audit, random_filling_instance, short_curve,
    verify_short_curve,
};
use curvelab::links::{
    classify_base_edge, classify_code_edge, classify_slope_edge, link_diameter,
    min_shortcut_set, GraphFamily,
};
use curvelab::report;
use curvelab::surfaces::SurfaceType;
use curvelab::surgery::{path_length_bound, zero_edge_path};
use curvelab::Error;

#[derive(Parser)]
#[command(name = "curvelab", version, about = "Exact curve-graph computations at desk scale")]
struct Cli {
    /// Optional key = value config file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    #[arg(long, global = true)]
    surface: Option<String>,
    #[arg(long, global = true)]
    family: Option<String>,
    #[arg(long, global = true)]
    k: Option<u64>,
    /// Edge as two slopes "p/q,r/s" (slope models).
    #[arg(long, global = true)]
    edge: Option<String>,
    /// Named edge configuration (filling-pair, one-edge,
    /// disjoint-jointly-separating, disjoint-jointly-nonseparating).
    #[arg(long = "edge-preset", global = true)]
    edge_preset: Option<String>,
    /// Word-length budget for truncated links.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an edge link, report its diameter, dump the graph.
    Link,
    /// Classify an edge against the table rows.
    Classify,
    /// Minimal shortcut set of an exact link.
    Shortcut,
    /// Zero-edge surgery path between twisted curves on the genus-2 pair.
    SurgeryPath {
        /// Twist power applied to v along u to produce the start curve.
        #[arg(long, default_value_t = 1)]
        twist: i64,
    },
    /// Run the short-curve pipeline on a random filling instance.
    ShortCurve {
        #[arg(long, default_value_t = 540)]
        chi: u64,
    },
    /// Girth bound audit on seeded random graphs.
    GirthAudit {
        #[arg(long, default_value_t = 100)]
        graphs: u64,
        #[arg(long, default_value_t = 256)]
        max_vertices: usize,
    },
    /// The exact constants audit.
    Constants,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => std::process::exit(0),
        Err(Error::InvalidInput(msg)) => {
            eprintln!("invalid configuration: {msg}");
            std::process::exit(2);
        }
        Err(Error::Precondition(msg)) => {
            eprintln!("precondition violated: {msg}");
            std::process::exit(3);
        }
        Err(Error::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            std::process::exit(1);
        }
    }
}

fn build_config(cli: &Cli) -> curvelab::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read config: {e}")))?;
            RunConfig::from_file_text(&text)?
        }
        None => RunConfig::default(),
    };
    if cli.surface.is_some() {
        cfg.surface = cli.surface.clone();
    }
    if cli.family.is_some() {
        cfg.family = cli.family.clone();
    }
    if cli.k.is_some() {
        cfg.k = cli.k;
    }
    if cli.edge.is_some() {
        cfg.edge = cli.edge.clone();
    }
    if cli.edge_preset.is_some() {
        cfg.edge_preset = cli.edge_preset.clone();
    }
    if cli.budget.is_some() {
        cfg.budget = cli.budget;
    }
    cfg.seed = cli.seed;
    if let Some(f) = &cli.format {
        cfg.format = OutputFormat::parse(f)?;
    }
    let _ = cfg.thread_cap();
    Ok(cfg)
}

fn slope_model_of(surface: &SurfaceType) -> Option<SlopeModel> {
    if *surface == SurfaceType::new(1, 1) {
        Some(SlopeModel::Torus)
    } else if *surface == SurfaceType::new(0, 4) {
        Some(SlopeModel::Sphere4)
    } else {
        None
    }
}

fn parse_edge_slopes(cfg: &RunConfig, model: SlopeModel) -> curvelab::Result<(Slope, Slope)> {
    let spec = cfg
        .edge
        .as_deref()
        .ok_or_else(|| Error::InvalidInput("--edge p/q,r/s required".into()))?;
    let (a, b) = spec
        .split_once(',')
        .ok_or_else(|| Error::InvalidInput("edge must be two slopes separated by a comma".into()))?;
    Ok((Slope::parse(a, model)?, Slope::parse(b, model)?))
}

fn family_of(cfg: &RunConfig) -> curvelab::Result<GraphFamily> {
    let name = cfg.family.as_deref().unwrap_or("ck");
    let k = cfg.k.unwrap_or(1);
    GraphFamily::parse(name, k, cfg.sc_separating_pairs)
}

fn run(cli: Cli) -> curvelab::Result<()> {
    let cfg = build_config(&cli)?;
    match &cli.command {
        Command::Constants => {
            let audit = audit_constants();
            match cfg.format {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&audit).unwrap())
                }
                _ => {
                    println!(
                        "D = 512 passes 1/36 > 9/512: {}\nD = 256 passes: {}\nminimal passing D: {} (in (36, 512]: {})",
                        audit.d512_passes,
                        audit.d256_passes,
                        audit.minimal_passing_d,
                        audit.minimal_exceeds_36 && audit.minimal_at_most_512
                    );
                }
            }
            Ok(())
        }
        Command::Link => {
            let surface = SurfaceType::parse(
                cfg.surface
                    .as_deref()
                    .ok_or_else(|| Error::InvalidInput("--surface required".into()))?,
            )?;
            let model = slope_model_of(&surface).ok_or_else(|| {
                Error::InvalidInput(
                    "link building via slopes needs the g1p1 or g0p4 model".into(),
                )
            })?;
            let (u, v) = parse_edge_slopes(&cfg, model)?;
            let k = cfg.k.unwrap_or(1);
            let link = farey_edge_link(u, v, k)?;
            let diam = link_diameter(&link);
            match cfg.format {
                OutputFormat::Dot => println!("{}", report::link_dot(&link)),
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report::link_json(&link, &diam)).unwrap()
                ),
                _ => {
                    println!(
                        "link of ({u}, {v}) at k = {k}: {} vertices, {} edges, diameter {:?}",
                        link.vertices.len(),
                        link.edge_count(),
                        diam
                    );
                }
            }
            Ok(())
        }
        Command::Shortcut => {
            let surface = SurfaceType::parse(
                cfg.surface
                    .as_deref()
                    .ok_or_else(|| Error::InvalidInput("--surface required".into()))?,
            )?;
            let model = slope_model_of(&surface).ok_or_else(|| {
                Error::InvalidInput("shortcut sets are computed on exact slope links".into())
            })?;
            let (u, v) = parse_edge_slopes(&cfg, model)?;
            let k = cfg.k.unwrap_or(3);
            let link = farey_edge_link(u, v, k)?;
            let s = min_shortcut_set(&link)?;
            match cfg.format {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&s).unwrap())
                }
                _ => println!(
                    "diameter {}, {} diametral pairs, minimal shortcut set {:?}",
                    s.diameter,
                    s.diametral_pairs.len(),
                    s.vertices
                        .iter()
                        .map(|&i| link.vertices[i].label())
                        .collect::<Vec<_>>()
                ),
            }
            Ok(())
        }
        Command::Classify => {
            let family = family_of(&cfg)?;
            let classification = match cfg.edge_preset.as_deref() {
                Some("filling-pair") => {
                    let surface = cfg.surface.as_deref().unwrap_or("g2p0");
                    let st = SurfaceType::parse(surface)?;
                    if st.punctures != 0 || st.genus < 2 {
                        return Err(Error::InvalidInput(
                            "filling-pair preset lives on closed surfaces of genus >= 2".into(),
                        ));
                    }
                    let sys = if st.genus == 2 {
                        genus2_std()
                    } else {
                        genus_g_std(st.genus)?
                    };
                    classify_base_edge(&sys.deco, 0, 1, &family)?
                }
                Some("one-edge") => {
                    let sys = oneedge_g2()?;
                    classify_base_edge(&sys.deco, 0, 1, &family)?
                }
                Some("disjoint-jointly-separating") => {
                    let surface = cfg.surface.as_deref().unwrap_or("g3p0");
                    if surface == "g2p0" {
                        return Err(Error::Precondition(
                            "on the closed genus-2 surface, disjoint non-isotopic \
                             non-separating curves are never jointly separating \
                             (one complementary side would be an annulus); use g3p0"
                                .into(),
                        ));
                    }
                    let sys = genus3_jsep()?;
                    classify_base_edge(&sys.deco, 0, 1, &family)?
                }
                Some("disjoint-jointly-nonseparating") => {
                    let sys = genus2_std();
                    let (a, b) = curvelab::links::disjoint_jnonsep_pair(&sys)?;
                    classify_code_edge(&sys.deco, &a, &b, &family)?
                }
                Some(other) => {
                    return Err(Error::InvalidInput(format!("unknown edge preset '{other}'")))
                }
                None => {
                    // Slope edge on a model surface.
                    let surface = SurfaceType::parse(
                        cfg.surface
                            .as_deref()
                            .ok_or_else(|| Error::InvalidInput("--surface required".into()))?,
                    )?;
                    let model = slope_model_of(&surface).ok_or_else(|| {
                        Error::InvalidInput("--edge-preset required off the slope models".into())
                    })?;
                    let (u, v) = parse_edge_slopes(&cfg, model)?;
                    classify_slope_edge(u, v, &family)?
                }
            };
            match cfg.format {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&classification).unwrap())
                }
                OutputFormat::Csv => {
                    println!("{}", report::CLASSIFY_CSV_HEADER);
                    println!("{}", report::classification_csv_row(&classification));
                }
                _ => println!(
                    "{}: row {}, predicted |L| {}, diameter {}, shortcut {}",
                    classification.edge_label,
                    classification.row_name(),
                    classification.predicted_cardinality,
                    classification.predicted_diameter,
                    classification.predicted_shortcut
                ),
            }
            Ok(())
        }
        Command::SurgeryPath { twist } => {
            let sys = genus2_std();
            let v = sys.pushoff(1, 0)?;
            let start = curvelab::fillingsystem::dehn_twist(&sys.deco, &v, "u", *twist)?;
            let k = curvelab::fillingsystem::geometric_intersection(&sys.deco, &start, &v)?;
            let path = zero_edge_path(&sys.deco, &start, &v)?;
            let value = serde_json::json!({
                "start_intersection": k,
                "length": path.length(),
                "length_bound": path_length_bound(k),
                "curves": path.curves,
                "consecutive_intersections": path.consecutive,
                "against_target": path.against_target,
            });
            match cfg.format {
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
                _ => println!(
                    "path of length {} (bound {}) from a curve with i = {k}",
                    path.length(),
                    path_length_bound(k)
                ),
            }
            Ok(())
        }
        Command::ShortCurve { chi } => {
            let k = cfg.k.unwrap_or(16);
            let inst = random_filling_instance(*chi, k, cfg.seed)?;
            let out = short_curve(&inst.system, &inst.arcs, k)?;
            verify_short_curve(&inst.system, &inst.arcs, &out, k)?;
            match cfg.format {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&out).unwrap())
                }
                OutputFormat::Csv => {
                    println!("{}", report::SHORT_CURVE_CSV_HEADER);
                    println!(
                        "{}",
                        report::short_curve_csv_row(
                            inst.system.abs_chi(),
                            k,
                            out.cycle_length,
                            out.weighted_intersection
                        )
                    );
                }
                _ => println!(
                    "|chi| = {}, cycle length {}, weighted intersection {} <= k = {k}",
                    inst.system.abs_chi(),
                    out.cycle_length,
                    out.weighted_intersection
                ),
            }
            Ok(())
        }
        Command::GirthAudit {
            graphs,
            max_vertices,
        } => {
            let mut pass = 0u64;
            let mut na = 0u64;
            for g in 0..*graphs {
                let span = (*max_vertices).max(65) - 63;
                let n = 64 + ((cfg.seed + g) as usize * 97) % span;
                let graph = curvelab::girth::random_graph_with_min_avg_degree(n, 5, 2, cfg.seed + g);
                match girth_bound_audit(&graph) {
                    curvelab::girth::GirthBoundReport::Checked { bound_holds, .. } => {
                        if bound_holds {
                            pass += 1;
                        } else {
                            return Err(Error::Internal(format!(
                                "girth bound failed on seed {} (girth {:?})",
                                cfg.seed + g,
                                girth(&graph)
                            )));
                        }
                    }
                    curvelab::girth::GirthBoundReport::NotApplicable { .. } => na += 1,
                }
            }
            println!("girth bound: {pass}/{graphs} pass, {na} not applicable");
            Ok(())
        }
    }
}
