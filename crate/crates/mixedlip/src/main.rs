use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mixedlip::analysis::{analyze, Options};
use mixedlip::arcs::{estimate_contact, ComponentRef, Radii};
use mixedlip::invariants::{compare, family_check, Decision, LinkAssertion, Verdict};
use mixedlip::links::{compute_link, LinkOptions};
use mixedlip::newton::{gamma_inn, FaceCache};
use mixedlip::nondegen::Tolerances;
use mixedlip::poly::{parse, parse_any, MixedPoly, Side};
use mixedlip::svg::{braid_svg, newton_svg};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NOT_EQUIVALENT: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "mixedlip", version, about = "Lipschitz invariants of two-variable mixed polynomials")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Base-angle grid for link computations.
    #[arg(long, default_value_t = 1024)]
    grid: usize,
    /// Newton polishing tolerance of the singular-point search.
    #[arg(long)]
    tol_polish: Option<f64>,
    /// Relative residual accepted for a singular-point witness.
    #[arg(long)]
    tol_witness: Option<f64>,
    /// Box budget of the branch-and-bound certification.
    #[arg(long)]
    tol_max_boxes: Option<usize>,
    /// Also write the JSON output here.
    #[arg(long)]
    json: Option<PathBuf>,
}

impl Common {
    fn options(&self) -> Options {
        let d = Tolerances::default();
        Options {
            tol: Tolerances {
                polish: self.tol_polish.unwrap_or(d.polish),
                witness: self.tol_witness.unwrap_or(d.witness),
                max_boxes: self.tol_max_boxes.unwrap_or(d.max_boxes),
            },
            link: LinkOptions { grid: self.grid, ..LinkOptions::default() },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LinkType {
    TrivialKnot,
    Hopf,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Newton,
    Braid,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    U,
    V,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full invariant report of one polynomial.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        common: Common,
        /// Write the Newton diagram here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Decide bi-Lipschitz V-equivalence of two polynomials.
    Compare {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        common: Common,
        /// Isotopy type of the link of the Type-II side, taken as given.
        #[arg(long, value_enum)]
        assert_link_type: Option<LinkType>,
    },
    /// Triviality of the family f + εθ.
    Family {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        theta: String,
        #[command(flatten)]
        common: Common,
    },
    /// Newton diagram or face braid as SVG.
    Svg {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, default_value_t = 1)]
        face: usize,
        /// Side for braids (default: the component's natural side).
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        /// Output file (stdout if absent).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Numeric contact estimate between two components FACE:SIDE:IDX.
    Oracle {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, required = true, num_args = 2, value_names = ["C1", "C2"])]
        pair: Vec<String>,
        /// Radii schedule a:b:n (geometric).
        #[arg(long, default_value = "0.1:0.0001:40")]
        radii: String,
        /// Number of base-angle pairs to pool.
        #[arg(long, default_value_t = 32)]
        pairs: usize,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write (pair, rho, distance) rows here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

enum Failure {
    Parse(String),
    Other(String),
}

fn parse_poly(s: &str) -> Result<MixedPoly, Failure> {
    parse(s).map_err(|e| Failure::Parse(format!("{s:?}: {e}")))
}

fn write(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Other(format!("{}: {e}", p.display()))),
        None => Ok(()),
    }
}

fn emit<T: Serialize>(value: &T, path: &Option<PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Other(e.to_string()))? + "\n";
    write(path, &text)?;
    print!("{text}");
    Ok(())
}

fn verdict_code(v: &Verdict) -> u8 {
    match v.decision {
        Decision::AmbientEquivalent => 0,
        Decision::NotBilipschitzEquivalent => EXIT_NOT_EQUIVALENT,
        Decision::TopologicallyEquivalentAtLeast | Decision::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Analyze { poly, common, svg } => {
            let a = analyze(&poly, &common.options()).map_err(|e| Failure::Parse(format!("{poly:?}: {e}")))?;
            if svg.is_some() {
                write(&svg, &newton_svg(&a.support, &a.gamma, Some(&a.gamma_inn.diagram)))?;
            }
            emit(&a, &common.json)?;
            Ok(0)
        }
        Cmd::Compare { a, b, common, assert_link_type } => {
            let opts = common.options();
            let (fa, fb) = (parse_poly(&a)?, parse_poly(&b)?);
            let (aa, ab) = rayon::join(
                || mixedlip::analysis::analyze_poly(&a, fa, &opts),
                || mixedlip::analysis::analyze_poly(&b, fb, &opts),
            );
            let asrt = assert_link_type.map(|t| match t {
                LinkType::TrivialKnot => LinkAssertion::TrivialKnot,
                LinkType::Hopf => LinkAssertion::Hopf,
            });
            let v = compare(&aa, &ab, asrt);
            emit(&v, &common.json)?;
            Ok(verdict_code(&v))
        }
        Cmd::Family { f, theta, common } => {
            let ff = parse_poly(&f)?;
            // θ may be zero or carry a constant term
            let th = parse_any(&theta).map_err(|e| Failure::Parse(format!("{theta:?}: {e}")))?;
            let v = family_check(&ff, &th, &common.options());
            emit(&v, &common.json)?;
            Ok(verdict_code(&v))
        }
        Cmd::Svg { poly, what, face, side, grid, svg } => {
            let f = parse_poly(&poly)?;
            let tol = Tolerances::default();
            let gi = gamma_inn(&f, &tol, &mut FaceCache::default());
            let text = match what {
                What::Newton => {
                    let sup: Vec<[i64; 2]> = mixedlip::newton::support(&f).into_iter().map(|(a, b)| [a, b]).collect();
                    newton_svg(&sup, &mixedlip::newton::newton_boundary(&f), Some(&gi.diagram))
                }
                What::Braid => {
                    let opts = LinkOptions { grid, ..LinkOptions::default() };
                    let comps = match side {
                        Some(s) => {
                            let s = if matches!(s, SideArg::U) { Side::U } else { Side::V };
                            compute_link(&f, &gi, face, s, &opts).map_err(|e| Failure::Other(e.to_string()))?
                        }
                        None => mixedlip::links::face_link(&f, &gi, face, &opts).map_err(|e| Failure::Other(e.to_string()))?.components,
                    };
                    braid_svg(&comps, &format!("face {face} link"))
                }
            };
            match svg {
                Some(_) => write(&svg, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Cmd::Oracle { poly, pair, radii, pairs, grid, json, csv } => {
            let f = parse_poly(&poly)?;
            let refs: Vec<ComponentRef> = pair.iter().map(|s| s.parse()).collect::<Result<_, String>>().map_err(Failure::Parse)?;
            let radii: Radii = radii.parse().map_err(Failure::Parse)?;
            let gi = gamma_inn(&f, &Tolerances::default(), &mut FaceCache::default());
            let opts = LinkOptions { grid, ..LinkOptions::default() };
            let est = estimate_contact(&f, &gi, refs[0], refs[1], pairs, &radii, &opts).map_err(|e| Failure::Other(e.to_string()))?;
            write(&csv, &est.csv())?;
            emit(&est, &json)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("MIXEDLIP_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Parse(msg)) => {
            eprintln!("mixedlip: parse error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("mixedlip: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
