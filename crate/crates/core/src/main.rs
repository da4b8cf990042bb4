use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vgraph::arr::{self, write_cut_certificate, write_cycle, write_path_certificate};
use vgraph::connectivity::{
    self, certify_distance_two, max_disjoint_paths, proof_paths, vertex_connectivity,
    CertifyOutcome, ConnectivityError, PathRole, ProofError,
};
use vgraph::dual::{dual, winkler_extend_with, ExtendError};
use vgraph::generators::{GenError, GeneratorSpec};
use vgraph::hamilton::{find_hamilton_with, HamiltonError, SearchConfig};
use vgraph::render::{render_svg, RenderOptions};
use vgraph::validate::{self, VennError, VennMode};
use vgraph::PlaneGraph;

const HOLDS: u8 = 0;
const FAILS: u8 = 1;
const USAGE: u8 = 2;
const FALSIFIED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "vgraph",
    version,
    about = "Check and build curve arrangements stored as ARR files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// General position, connectivity, UFI and 2-faces.
    Validate { input: Option<PathBuf> },
    /// Region labels and the simple Venn property.
    VennCheck {
        input: Option<PathBuf>,
        /// Accept labels occurring more than once (independent family).
        #[arg(long)]
        at_least_once: bool,
    },
    /// Exact vertex connectivity with a minimum separator.
    Connectivity {
        input: Option<PathBuf>,
        /// Connectivity required for exit code 0.
        #[arg(long, default_value_t = 4)]
        min: usize,
    },
    /// Certify k-connectivity through every distance-two pair.
    Certify {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// The four constructive disjoint paths for a distance-two triple.
    Paths {
        u: usize,
        z: usize,
        v: usize,
        input: Option<PathBuf>,
    },
    /// Find a Hamilton cycle.
    Hamilton {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = SearchConfig::default().node_budget)]
        budget: u64,
    },
    /// Print the planar dual as face adjacency lists.
    Dual { input: Option<PathBuf> },
    /// Add one curve through a Hamilton cycle of the dual.
    Extend {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = SearchConfig::default().node_budget)]
        budget: u64,
    },
    /// Generate an arrangement: venn3, venn:N, weave:K.
    Gen { spec: String },
    /// Draw as SVG.
    Render {
        input: Option<PathBuf>,
        /// Overlay a Hamilton cycle.
        #[arg(long)]
        hamilton: bool,
        /// Label faces with their regions in binary.
        #[arg(long)]
        labels: bool,
        /// Overlay the constructive paths for the triple U Z V.
        #[arg(long, num_args = 3, value_names = ["U", "Z", "V"])]
        paths: Option<Vec<usize>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 600)]
        size: u32,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: USAGE,
            message: message.to_string(),
        }
    }

    fn fails(message: impl ToString) -> Self {
        Failure {
            code: FAILS,
            message: message.to_string(),
        }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { HOLDS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((text, code)) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load(input: &Option<PathBuf>) -> Result<PlaneGraph, Failure> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(Failure::usage)?;
            s
        }
    };
    arr::parse_arr(&text).map_err(Failure::usage)
}

fn flag(ok: bool) -> u8 {
    if ok {
        HOLDS
    } else {
        FAILS
    }
}

fn ids(v: &[usize]) -> String {
    write_cycle(v)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { input } => cmd_validate(&load(&input)?),
        Command::VennCheck {
            input,
            at_least_once,
        } => {
            let mode = if at_least_once {
                VennMode::AtLeastOnce
            } else {
                VennMode::Exact
            };
            cmd_venn(&load(&input)?, mode)
        }
        Command::Connectivity { input, min } => cmd_connectivity(&load(&input)?, min),
        Command::Certify { input, k } => cmd_certify(&load(&input)?, k),
        Command::Paths { u, z, v, input } => cmd_paths(&load(&input)?, u, z, v),
        Command::Hamilton { input, budget } => cmd_hamilton(&load(&input)?, budget),
        Command::Dual { input } => Ok((cmd_dual(&load(&input)?), HOLDS)),
        Command::Extend { input, budget } => cmd_extend(&load(&input)?, budget),
        Command::Gen { spec } => cmd_gen(&spec),
        Command::Render {
            input,
            hamilton,
            labels,
            paths,
            output,
            size,
        } => cmd_render(&load(&input)?, hamilton, labels, paths, output, size),
    }
}

fn cmd_validate(g: &PlaneGraph) -> Outcome {
    let r = validate::validate(g);
    let mut out = String::new();
    let curves = r.curve_count.map_or("-".to_string(), |n| n.to_string());
    out += &format!("vertices: {}\n", g.vertex_count());
    out += &format!("curves: {curves}\n");
    out += &format!("general_position: {}\n", r.is_general_position);
    for v in &r.position_violations {
        out += &format!("position_violation: {v:?}\n");
    }
    out += &format!("connected: {}\n", r.is_connected);
    out += &format!("ufi_violations: {}\n", r.ufi_violations.len());
    for v in &r.ufi_violations {
        out += &format!("ufi: face {} curve {} edges {}\n", v.face, v.curve, v.count);
    }
    out += &format!("two_faces: {}\n", ids(&r.two_faces));
    out += &format!("digon_faces: {}\n", ids(&r.digon_faces));
    if let Some(venn) = &r.venn {
        out += &format!("simple_venn: {}\n", venn.is_simple_venn);
    }
    out += &format!("vgraph: {}\n", r.is_vgraph);
    Ok((out, flag(r.is_vgraph)))
}

fn cmd_venn(g: &PlaneGraph, mode: VennMode) -> Outcome {
    let r = match validate::venn_check_mode(g, mode) {
        Ok(r) => r,
        Err(e @ (VennError::NotGeneralPosition | VennError::Disconnected)) => {
            return Ok((format!("simple_venn: false\nreason: {e}\n"), FAILS))
        }
        Err(e) => return Err(Failure::fails(e)),
    };
    let join = |ls: &[validate::RegionLabel]| {
        ls.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    out += &format!("curves: {}\n", r.n);
    out += &format!("faces: {}\n", r.face_count);
    out += &format!("distinct_labels: {}\n", r.distinct_labels);
    out += &format!("missing: {}\n", join(&r.missing_labels));
    out += &format!("duplicated: {}\n", join(&r.duplicated_labels));
    for (f, l) in r.labels.iter().enumerate() {
        out += &format!("label: {f} {l}\n");
    }
    out += &format!("simple_venn: {}\n", r.is_simple_venn);
    Ok((out, flag(r.is_simple_venn)))
}

fn cmd_connectivity(g: &PlaneGraph, min: usize) -> Outcome {
    let adj = g.adjacency();
    match vertex_connectivity(adj) {
        Ok(c) => {
            let mut out = format!("kappa: {}\n", c.kappa);
            if let Some(cut) = &c.cut {
                out += &write_cut_certificate(cut);
            }
            Ok((out, flag(c.kappa >= min)))
        }
        Err(ConnectivityError::Disconnected(cut)) => {
            let out = format!("kappa: 0\n{}", write_cut_certificate(&cut));
            Ok((out, flag(min == 0)))
        }
        Err(e) => Err(Failure::usage(e)),
    }
}

fn cmd_certify(g: &PlaneGraph, k: usize) -> Outcome {
    match certify_distance_two(g, k) {
        Ok(CertifyOutcome::Certified {
            k,
            pairs,
            fallbacks,
        }) => {
            let mut out = format!(
                "certified: {k}\npairs: {}\nfallbacks: {fallbacks}\n",
                pairs.len()
            );
            for p in &pairs {
                out += &format!("witness: {}\n", p.z);
                out += &write_path_certificate(&p.certificate);
            }
            Ok((out, HOLDS))
        }
        Ok(CertifyOutcome::Counterexample(c)) => {
            let out = format!(
                "certified: false\npair: {} {}\nflow: {}\n{}",
                c.u,
                c.v,
                c.flow,
                write_cut_certificate(&c.cut)
            );
            Ok((out, FAILS))
        }
        Err(ConnectivityError::Disconnected(cut)) => Ok((
            format!("certified: false\n{}", write_cut_certificate(&cut)),
            FAILS,
        )),
        Err(e) => Err(Failure::fails(e)),
    }
}

fn role_name(role: PathRole) -> &'static str {
    match role {
        PathRole::Direct => "direct",
        PathRole::GreenRemainder => "green-remainder",
        PathRole::PerimeterA => "perimeter-a",
        PathRole::PerimeterB => "perimeter-b",
        PathRole::FaceArc => "face-arc",
        PathRole::PerimeterRest => "perimeter-rest",
        PathRole::GreenThenRed => "green-then-red",
        PathRole::Flow => "flow",
    }
}

fn cmd_paths(g: &PlaneGraph, u: usize, z: usize, v: usize) -> Outcome {
    let r = match proof_paths(g, u, z, v) {
        Ok(r) => r,
        Err(ProofError::NotVGraph) => return Err(Failure::fails(ProofError::NotVGraph)),
        Err(e) => return Err(Failure::usage(e)),
    };
    let mut out = format!(
        "case: {}\ngreen: {}\nred: {}\nfallback: {}\n",
        r.case.number(),
        r.green,
        r.red,
        r.used_fallback
    );
    out += &format!("pair: {} {}\n", r.u, r.v);
    for p in &r.paths {
        out += &format!("# {}\npath: {}\n", role_name(p.role), ids(&p.vertices));
    }
    let cert = connectivity::PathCertificate {
        u,
        v,
        paths: r.paths.iter().map(|p| p.vertices.clone()).collect(),
    };
    Ok((out, flag(r.paths.len() >= 4 && cert.verify(g.adjacency()))))
}

fn is_four_connected(g: &PlaneGraph) -> bool {
    vertex_connectivity(g.adjacency()).is_ok_and(|c| c.kappa >= 4)
}

fn cmd_hamilton(g: &PlaneGraph, budget: u64) -> Outcome {
    let config = SearchConfig {
        node_budget: budget,
    };
    match find_hamilton_with(g.adjacency(), config) {
        Ok(c) => Ok((format!("cycle: {}\n", ids(&c.order)), HOLDS)),
        Err(HamiltonError::Exhausted) if is_four_connected(g) => Err(Failure {
            code: FALSIFIED,
            message: "no Hamilton cycle in a 4-connected plane graph".into(),
        }),
        Err(e @ HamiltonError::BudgetExceeded(_)) => Err(Failure::fails(e)),
        Err(e) => Ok((format!("cycle: none\nreason: {e}\n"), FAILS)),
    }
}

fn cmd_dual(g: &PlaneGraph) -> String {
    let d = dual(g);
    let mut out = format!("dual {} {}\n", d.vertex_count(), d.edge_count());
    for f in 0..d.vertex_count() {
        let around: Vec<usize> = d
            .rotation_at(f)
            .into_iter()
            .map(|x| d.vertex_of(d.twin(x)))
            .collect();
        out += &format!("f {f} {}\n", ids(&around));
    }
    out
}

fn cmd_extend(g: &PlaneGraph, budget: u64) -> Outcome {
    let config = SearchConfig {
        node_budget: budget,
    };
    match winkler_extend_with(g, config) {
        Ok(e) => Ok((arr::write_arr(&e.graph), HOLDS)),
        Err(ExtendError::DualNotHamiltonian { n }) if n <= 5 => Err(Failure {
            code: FALSIFIED,
            message: ExtendError::DualNotHamiltonian { n }.to_string(),
        }),
        Err(e) => Err(Failure::fails(e)),
    }
}

fn cmd_gen(spec: &str) -> Outcome {
    let spec: GeneratorSpec = spec.parse().map_err(Failure::usage)?;
    match spec.generate() {
        Ok(g) => Ok((arr::write_arr(&g), HOLDS)),
        Err(e @ (GenError::VennTooSmall(_) | GenError::WeaveTooSmall(_))) => Err(Failure::usage(e)),
        Err(e) => Err(Failure::fails(e)),
    }
}

fn cmd_render(
    g: &PlaneGraph,
    hamilton: bool,
    labels: bool,
    paths: Option<Vec<usize>>,
    output: Option<PathBuf>,
    size: u32,
) -> Outcome {
    let mut options = RenderOptions {
        face_labels: labels,
        size,
        ..RenderOptions::default()
    };
    if hamilton {
        let cycle =
            find_hamilton_with(g.adjacency(), SearchConfig::default()).map_err(Failure::fails)?;
        options.hamilton = Some(cycle.order);
    }
    if let Some(t) = paths {
        let (u, z, v) = (t[0], t[1], t[2]);
        options.paths = match proof_paths(g, u, z, v) {
            Ok(r) => r.paths.into_iter().map(|p| p.vertices).collect(),
            Err(ProofError::NotVGraph) => {
                max_disjoint_paths(g.adjacency(), u, v)
                    .map_err(Failure::usage)?
                    .certificate
                    .paths
            }
            Err(e) => return Err(Failure::usage(e)),
        };
    }
    let svg = render_svg(g, &options).map_err(Failure::fails)?;
    match output {
        Some(p) => {
            fs::write(&p, svg).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
            Ok((String::new(), HOLDS))
        }
        None => Ok((svg, HOLDS)),
    }
}
