//! Thin command-line front end over the `saddleconn` library.
//!
//! Exit codes: 0 success, 2 certificate failure, 3 stability refusal,
//! 4 input error.

use clap::{Args, Parser, Subcommand};
use saddleconn::arc::CombinatorialArc;
use saddleconn::cert::csv;
use saddleconn::geom::{parse_q, Q};
use saddleconn::graph::{build_sc_graph, build_slope_graph};
use saddleconn::io::parse_surface;
use saddleconn::saddle::{enumerate, SaddleConnection, Slope};
use saddleconn::suite::{run_suite, RunConfig, SuiteError};
use saddleconn::tri::{Side, Triangulation};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CERT_FAILURE: u8 = 2;
const EXIT_STABILITY: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "saddleconn",
    about = "Saddle connections, flat geodesics, ladder paths, and quasitree certificates on half-translation surfaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SurfaceArgs {
    /// Surface description file (origami or polygons form).
    #[arg(long)]
    surface: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate saddle connections up to squared length --lsq (CSV).
    Enumerate {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Squared length bound, as a rational like 25 or 25/4.
        #[arg(long)]
        lsq: String,
    },
    /// Emit the truncated saddle connection graph as DOT (or its BFS
    /// distance matrix as CSV).
    Graph {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        lsq: String,
        #[arg(long)]
        distances: bool,
    },
    /// Emit the truncated graph of slopes as DOT (or its BFS distance matrix
    /// as CSV).
    Slopes {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        lsq: String,
        #[arg(long)]
        distances: bool,
    },
    /// The left and right ladder paths between two saddle connections (CSV).
    Ladder {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Holonomy of alpha as "x,y" with rational components.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Holonomy of beta as "x,y".
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Remove consecutive duplicate entries.
        #[arg(long)]
        dedup: bool,
    },
    /// Straighten a combinatorial arc; emits its saddle-connection
    /// decomposition as CSV. Arc spec: "T.K; T.eE T.eE ...; T.K" (start
    /// corner; crossed edges in order; end corner).
    Straighten {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        arc: String,
    },
    /// Farey oracle for the once-marked torus.
    Farey {
        #[command(subcommand)]
        op: FareyOp,
    },
    /// Build the interval tree and slices (DOT + CSV into --outdir).
    Tree {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        lsq: String,
        /// Basepoint slope, e.g. 1/0 or -3/4.
        #[arg(long, allow_hyphen_values = true)]
        theta0: String,
        #[arg(long)]
        kmax: u32,
        #[arg(long, default_value = "out")]
        outdir: PathBuf,
    },
    /// Run certificate suites. KIND: bottleneck | linking | centre | qi | all.
    Certify {
        kind: String,
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value = "16")]
        lsq: String,
        #[arg(long, default_value = "1/0", allow_hyphen_values = true)]
        theta0: String,
        #[arg(long, default_value_t = 1)]
        kmax: u32,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Optional config file of "key = value" lines (surface, lsq, theta0,
        /// kmax, samples, seed, outdir); explicit flags win.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        outdir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FareyOp {
    /// Exact Farey distance between two slopes.
    Dist {
        #[arg(allow_hyphen_values = true)]
        s1: String,
        #[arg(allow_hyphen_values = true)]
        s2: String,
    },
    /// The two fan paths between two slopes (CSV).
    Fan {
        #[arg(allow_hyphen_values = true)]
        s1: String,
        #[arg(allow_hyphen_values = true)]
        s2: String,
    },
    /// Farey adjacency of two slopes.
    Adjacent {
        #[arg(allow_hyphen_values = true)]
        s1: String,
        #[arg(allow_hyphen_values = true)]
        s2: String,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn load_surface(path: &Path) -> Result<Triangulation, String> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let s = parse_surface(&src).map_err(|e| e.to_string())?;
    s.triangulate().map_err(|e| e.to_string())
}

fn parse_lsq(s: &str) -> Result<Q, String> {
    let q = parse_q(s).ok_or_else(|| format!("invalid rational '{s}'"))?;
    if q <= Q::from_integer(0.into()) {
        return Err("squared length bound must be positive".into());
    }
    Ok(q)
}

fn parse_holonomy(s: &str) -> Result<(Q, Q), String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("holonomy must be 'x,y', found '{s}'"))?;
    Ok((
        parse_q(x).ok_or_else(|| format!("invalid rational '{x}'"))?,
        parse_q(y).ok_or_else(|| format!("invalid rational '{y}'"))?,
    ))
}

fn find_sc(tr: &Triangulation, hol: (Q, Q)) -> Result<SaddleConnection, String> {
    let p = saddleconn::geom::Pt::new(hol.0, hol.1);
    let canonical = {
        use num_traits::{Signed, Zero};
        if p.y.is_negative() || (p.y.is_zero() && p.x.is_negative()) {
            p.neg()
        } else {
            p.clone()
        }
    };
    let l = canonical.norm_sq();
    enumerate(tr, &l)
        .into_iter()
        .find(|sc| sc.holonomy == canonical)
        .ok_or_else(|| format!("no saddle connection with holonomy ({}, {})", p.x, p.y))
}

fn parse_arc(tr: &Triangulation, spec: &str) -> Result<CombinatorialArc, String> {
    let parts: Vec<&str> = spec.split(';').map(str::trim).collect();
    if parts.len() != 3 {
        return Err("arc spec must be 'T.K; T.eE T.eE ...; T.K'".into());
    }
    let corner = |s: &str| -> Result<(usize, usize), String> {
        let (t, k) = s
            .split_once('.')
            .ok_or_else(|| format!("corner must be 'T.K', found '{s}'"))?;
        Ok((
            t.parse().map_err(|_| format!("bad triangle '{t}'"))?,
            k.parse().map_err(|_| format!("bad corner '{k}'"))?,
        ))
    };
    let mut portals = Vec::new();
    for w in parts[1].split_whitespace() {
        let (t, e) = w
            .split_once(".e")
            .ok_or_else(|| format!("portal must be 'T.eE', found '{w}'"))?;
        portals.push(Side::new(
            t.parse().map_err(|_| format!("bad triangle '{t}'"))?,
            e.parse().map_err(|_| format!("bad edge '{e}'"))?,
        ));
    }
    let arc = CombinatorialArc {
        start: corner(parts[0])?,
        portals,
        end: corner(parts[2])?,
    };
    arc.validate(tr).map_err(|e| e.to_string())?;
    Ok(arc)
}

fn parse_slope(s: &str) -> Result<Slope, String> {
    Slope::parse(s).ok_or_else(|| format!("invalid slope '{s}'"))
}

fn sc_rows(scs: &[SaddleConnection]) -> Vec<Vec<String>> {
    scs.iter()
        .map(|sc| {
            vec![
                sc.holonomy.x.to_string(),
                sc.holonomy.y.to_string(),
                sc.start.to_string(),
                sc.end.to_string(),
                sc.slope().to_string(),
            ]
        })
        .collect()
}

fn write_files(dir: &Path, files: &[(String, Vec<u8>)]) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    for (name, bytes) in files {
        let target = dir.join(name);
        let tmp = dir.join(format!("{name}.tmp"));
        std::fs::write(&tmp, bytes).map_err(|e| format!("cannot write {}: {e}", tmp.display()))?;
        std::fs::rename(&tmp, &target)
            .map_err(|e| format!("cannot rename into {}: {e}", target.display()))?;
    }
    Ok(())
}

struct ConfigFile {
    surface: Option<PathBuf>,
    lsq: Option<String>,
    theta0: Option<String>,
    kmax: Option<u32>,
    samples: Option<usize>,
    seed: Option<u64>,
    outdir: Option<PathBuf>,
}

fn parse_config_file(path: &Path) -> Result<ConfigFile, String> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut cf = ConfigFile {
        surface: None,
        lsq: None,
        theta0: None,
        kmax: None,
        samples: None,
        seed: None,
        outdir: None,
    };
    for (ln, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected 'key = value'", path.display(), ln + 1))?;
        let v = v.trim();
        match k.trim() {
            "surface" => cf.surface = Some(PathBuf::from(v)),
            "lsq" => cf.lsq = Some(v.into()),
            "theta0" => cf.theta0 = Some(v.into()),
            "kmax" => cf.kmax = Some(v.parse().map_err(|_| format!("bad kmax '{v}'"))?),
            "samples" => cf.samples = Some(v.parse().map_err(|_| format!("bad samples '{v}'"))?),
            "seed" => cf.seed = Some(v.parse().map_err(|_| format!("bad seed '{v}'"))?),
            "outdir" => cf.outdir = Some(PathBuf::from(v)),
            other => return Err(format!("unknown config key '{other}'")),
        }
    }
    Ok(cf)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err((code, msg)) => fail(code, msg),
    }
}

fn run(cli: Cli) -> Result<ExitCode, (u8, String)> {
    let input = |m: String| (EXIT_INPUT, m);
    match cli.cmd {
        Cmd::Enumerate { surface, lsq } => {
            let tr = load_surface(&surface.surface).map_err(input)?;
            let l = parse_lsq(&lsq).map_err(input)?;
            let scs = enumerate(&tr, &l);
            print!(
                "{}",
                csv(
                    &["holonomy_x", "holonomy_y", "start", "end", "slope"],
                    &sc_rows(&scs)
                )
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Graph {
            surface,
            lsq,
            distances,
        } => {
            let tr = load_surface(&surface.surface).map_err(input)?;
            let l = parse_lsq(&lsq).map_err(input)?;
            let g = build_sc_graph(&tr, &l);
            let labels: Vec<String> = g
                .scs
                .iter()
                .map(|s| format!("({},{})", s.holonomy.x, s.holonomy.y))
                .collect();
            if distances {
                print!("{}", saddleconn::cert::distance_matrix_csv(&g.graph, &labels));
            } else {
                print!(
                    "{}",
                    saddleconn::cert::graph_dot("saddle_connections", &labels, &g.graph.edges())
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Slopes {
            surface,
            lsq,
            distances,
        } => {
            let tr = load_surface(&surface.surface).map_err(input)?;
            let l = parse_lsq(&lsq).map_err(input)?;
            let sg = build_slope_graph(&build_sc_graph(&tr, &l));
            let labels: Vec<String> = sg.slopes.iter().map(|s| s.to_string()).collect();
            if distances {
                print!("{}", saddleconn::cert::distance_matrix_csv(&sg.graph, &labels));
            } else {
                print!(
                    "{}",
                    saddleconn::cert::graph_dot("slopes", &labels, &sg.graph.edges())
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ladder {
            surface,
            alpha,
            beta,
            dedup,
        } => {
            let tr = load_surface(&surface.surface).map_err(input)?;
            let a = find_sc(&tr, parse_holonomy(&alpha).map_err(input)?).map_err(input)?;
            let b = find_sc(&tr, parse_holonomy(&beta).map_err(input)?).map_err(input)?;
            let (l, r) = saddleconn::ladder::ladder_paths(&tr, &a, &b)
                .map_err(|e| (EXIT_INPUT, e.to_string()))?;
            let mut rows = Vec::new();
            for path in [&l, &r] {
                let entries = if dedup {
                    path.dedup()
                } else {
                    path.entries.clone()
                };
                for (i, e) in entries.iter().enumerate() {
                    rows.push(vec![
                        format!("{:?}", path.side),
                        i.to_string(),
                        e.holonomy.x.to_string(),
                        e.holonomy.y.to_string(),
                        e.slope().to_string(),
                    ]);
                }
            }
            print!(
                "{}",
                csv(&["side", "i", "holonomy_x", "holonomy_y", "slope"], &rows)
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Straighten { surface, arc } => {
            let tr = load_surface(&surface.surface).map_err(input)?;
            let a = parse_arc(&tr, &arc).map_err(input)?;
            let dec = saddleconn::arc::straighten(&tr, &a)
                .map_err(|e| (EXIT_INPUT, e.to_string()))?;
            let rows: Vec<Vec<String>> = dec
                .iter()
                .enumerate()
                .map(|(i, sc)| {
                    vec![
                        i.to_string(),
                        sc.holonomy.x.to_string(),
                        sc.holonomy.y.to_string(),
                        sc.start.to_string(),
                        sc.end.to_string(),
                    ]
                })
                .collect();
            print!(
                "{}",
                csv(&["index", "holonomy_x", "holonomy_y", "start", "end"], &rows)
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Farey { op } => {
            match op {
                FareyOp::Dist { s1, s2 } => {
                    let (u, v) = (parse_slope(&s1).map_err(input)?, parse_slope(&s2).map_err(input)?);
                    println!("{}", saddleconn::farey::distance(&u, &v));
                }
                FareyOp::Fan { s1, s2 } => {
                    let (u, v) = (parse_slope(&s1).map_err(input)?, parse_slope(&s2).map_err(input)?);
                    if u == v {
                        return Err((EXIT_INPUT, "fan endpoints must be distinct".into()));
                    }
                    let (a, b) = saddleconn::farey::fan(&u, &v);
                    let mut rows = Vec::new();
                    for (side, path) in [("a", &a), ("b", &b)] {
                        for (i, s) in path.iter().enumerate() {
                            rows.push(vec![side.to_string(), i.to_string(), s.to_string()]);
                        }
                    }
                    print!("{}", csv(&["path", "i", "slope"], &rows));
                }
                FareyOp::Adjacent { s1, s2 } => {
                    let (u, v) = (parse_slope(&s1).map_err(input)?, parse_slope(&s2).map_err(input)?);
                    println!("{}", saddleconn::farey::adjacent(&u, &v));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Tree {
            surface,
            lsq,
            theta0,
            kmax,
            outdir,
        } => {
            let tr = load_surface(&surface.surface).map_err(input)?;
            let l = parse_lsq(&lsq).map_err(input)?;
            let theta = parse_slope(&theta0).map_err(input)?;
            let cfg = RunConfig {
                l_sq: l,
                theta0: theta,
                k_max: kmax,
                samples: 4,
                seed: 1,
            };
            let out = run_suite(&tr, &cfg).map_err(map_suite_err)?;
            let keep: Vec<(String, Vec<u8>)> = out
                .files
                .into_iter()
                .filter(|(n, _)| n == "tree.dot" || n == "slices.csv")
                .collect();
            write_files(&outdir, &keep).map_err(input)?;
            println!("wrote tree.dot and slices.csv to {}", outdir.display());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Certify {
            kind,
            surface,
            lsq,
            theta0,
            kmax,
            samples,
            seed,
            config,
            outdir,
        } => {
            // Optional config file; explicit flags win over it, so only
            // defaulted values are replaced.
            let mut surface_path = surface.surface;
            let (mut lsq, mut theta0, mut kmax, mut samples, mut seed, mut outdir) =
                (lsq, theta0, kmax, samples, seed, outdir);
            if let Some(cf_path) = config {
                let cf = parse_config_file(&cf_path).map_err(input)?;
                if let Some(s) = cf.surface {
                    surface_path = s;
                }
                if lsq == "16" {
                    if let Some(v) = cf.lsq {
                        lsq = v;
                    }
                }
                if theta0 == "1/0" {
                    if let Some(v) = cf.theta0 {
                        theta0 = v;
                    }
                }
                if kmax == 1 {
                    if let Some(v) = cf.kmax {
                        kmax = v;
                    }
                }
                if samples == 8 {
                    if let Some(v) = cf.samples {
                        samples = v;
                    }
                }
                if seed == 1 {
                    if let Some(v) = cf.seed {
                        seed = v;
                    }
                }
                if outdir.is_none() {
                    outdir = cf.outdir;
                }
            }
            let tr = load_surface(&surface_path).map_err(input)?;
            let cfg = RunConfig {
                l_sq: parse_lsq(&lsq).map_err(input)?,
                theta0: parse_slope(&theta0).map_err(input)?,
                k_max: kmax,
                samples,
                seed,
            };
            let out = run_suite(&tr, &cfg).map_err(map_suite_err)?;
            let wanted: Vec<&saddleconn::cert::Certificate> = out
                .certificates
                .iter()
                .filter(|c| kind == "all" || c.kind.to_string() == kind)
                .collect();
            if wanted.is_empty() {
                return Err((
                    EXIT_INPUT,
                    format!("unknown certificate kind '{kind}' (bottleneck|linking|centre|qi|all)"),
                ));
            }
            for c in &wanted {
                print!("{}", c.render());
            }
            if let Some(dir) = outdir {
                write_files(&dir, &out.files).map_err(input)?;
            }
            if wanted.iter().all(|c| c.pass) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_CERT_FAILURE))
            }
        }
    }
}

fn map_suite_err(e: SuiteError) -> (u8, String) {
    match e {
        SuiteError::Stability(inner) => (EXIT_STABILITY, inner.to_string()),
        SuiteError::Input(m) => (EXIT_INPUT, m),
        SuiteError::Internal(m) => (EXIT_INPUT, format!("internal: {m}")),
    }
}
