//! Command-line surface: construct, run, serialize, and independently
//! re-verify every object and chain. One job per process; outputs are
//! deterministic for fixed inputs and seed, and chain files embed all
//! intermediate parametrizations so `verify` is search-free.
//!
//! Exit codes: 0 ok, 2 parse error, 3 search exhausted, 4 verification
//! failed, 1 other errors.

use crate::dejonquieres::{dj_from_constraints, dj_solve_escalating, quadro_quadric};
use crate::equivalence::{contract_union, pipeline_equivalence, points_equivalence, SearchOptions};
use crate::error::{Error, Result};
use crate::interpolation::{monoid_system, pick_member, system_dimension};
use crate::json::*;
use crate::monoid::{BiVertexMonoid, Monoid};
use crate::projective::Sampler;
use crate::ratmap::{map_compose, verify_inverse_pair};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(
    name = "cremona",
    about = "Exact construction and verification of Cremona transformations",
    version
)]
pub struct JobSpec {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Seed for every randomized choice; required for reproducibility.
    #[arg(long)]
    pub seed: u64,
    /// Degree cap for escalating searches.
    #[arg(long, default_value_t = 10)]
    pub max_degree: usize,
    /// Verified samples per component per step.
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            degree_cap: self.max_degree,
            samples: self.samples,
            resample_budget: 16,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cremona equivalence of two reduced point sets.
    PointsEquiv {
        /// Input file: {"ambient_dim", "from": [point...], "to": [point...]}
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double-projection pipeline between two parametrized schemes.
    PipelineEquiv {
        /// Source scheme file.
        #[arg(long)]
        x: PathBuf,
        /// Target scheme file (component-matched).
        #[arg(long)]
        y: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contract a union of rational varieties to distinct points.
    Contract {
        #[arg(long)]
        scheme: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Projective dimension of the monoid system containing a scheme.
    MonoidDim {
        #[arg(long)]
        scheme: PathBuf,
        /// Vertex as a JSON array of rationals, e.g. '["0","1","0","0"]'.
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        d: usize,
    },
    /// Seeded cone-avoiding member of the monoid system.
    MonoidFind {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// de Jonquières map from move/fixed-point constraints.
    Dejonquieres {
        /// Input file: {"ambient_dim", "vertex", "moves": [{"from","to"}...],
        /// "fixed": [point...], "degree": optional}
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quadro-quadric map from a point and a codimension-two quadric.
    QuadroQuadric {
        /// Input file: {"p": point, "hyperplane": [point...], "q": form}
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stereographic projection of a monoid and its explicit inverse.
    Stereographic {
        /// Input file: {"equation": form, "vertex": point}
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double projection of a bi-vertex monoid.
    DoubleProjection {
        /// Input file: either {"equation", "p1", "p2"} or the serialized
        /// bi-vertex parts {ambient_dim, degree, frame, f_d, g_dm1, f_dm1,
        /// f_dm2}.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compose maps (applied left to right); no factor cancellation.
    Compose {
        #[arg(long, num_args = 2..)]
        maps: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check every certificate and claim in a chain file, search-free.
    Verify {
        #[arg(long)]
        chain: PathBuf,
    },
}

#[derive(Serialize, Deserialize)]
struct PointsInput {
    ambient_dim: usize,
    from: Vec<Vec<String>>,
    to: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct MoveJson {
    from: Vec<String>,
    to: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ConstraintsInput {
    ambient_dim: usize,
    vertex: Vec<String>,
    #[serde(default)]
    moves: Vec<MoveJson>,
    #[serde(default)]
    fixed: Vec<Vec<String>>,
    #[serde(default)]
    degree: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct QuadroQuadricInput {
    p: Vec<String>,
    hyperplane: Vec<Vec<String>>,
    q: FormJson,
}

#[derive(Serialize, Deserialize)]
struct StereographicInput {
    equation: FormJson,
    vertex: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DoubleProjectionInput {
    Equation {
        equation: FormJson,
        p1: Vec<String>,
        p2: Vec<String>,
    },
    Parts(BiVertexJson),
}

#[derive(Serialize)]
struct MapWithInverseOutput {
    seed: Option<u64>,
    map: DeJonquieresJson,
    forward: MapJson,
    inverse: MapJson,
    certificate: CertificateJson,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_output<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    let text = to_pretty_string(value)?;
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Run a job; the returned value is the process exit code.
pub fn run(job: JobSpec) -> Result<()> {
    match job.command {
        Command::PointsEquiv { input, search, out } => {
            let data: PointsInput = read_json(&input)?;
            let from = data
                .from
                .iter()
                .map(|p| point_from_json(p))
                .collect::<Result<Vec<_>>>()?;
            let to = data
                .to
                .iter()
                .map(|p| point_from_json(p))
                .collect::<Result<Vec<_>>>()?;
            let mut sampler = Sampler::new(search.seed);
            let chain = points_equivalence(&from, &to, &mut sampler, &search.options())?;
            chain.verify()?;
            eprintln!(
                "points-equiv: {} steps, seed {}, verified",
                chain.steps.len(),
                search.seed
            );
            write_output(&out, &chain_to_json(&chain))
        }
        Command::PipelineEquiv { x, y, search, out } => {
            let xs = scheme_from_json(&read_json(&x)?)?;
            let ys = scheme_from_json(&read_json(&y)?)?;
            let mut sampler = Sampler::new(search.seed);
            let chain = pipeline_equivalence(&xs, &ys, &mut sampler, &search.options())?;
            chain.verify()?;
            eprintln!(
                "pipeline-equiv: {} steps, seed {}, verified",
                chain.steps.len(),
                search.seed
            );
            write_output(&out, &chain_to_json(&chain))
        }
        Command::Contract {
            scheme,
            search,
            out,
        } => {
            let z = scheme_from_json(&read_json(&scheme)?)?;
            let mut sampler = Sampler::new(search.seed);
            let chain = contract_union(&z, &mut sampler, &search.options())?;
            chain.verify()?;
            if let crate::chain::FinalClaim::Contraction { points } = &chain.final_claim {
                eprintln!(
                    "contract: {} steps, {} distinct points, seed {}, verified",
                    chain.steps.len(),
                    points.len(),
                    search.seed
                );
                for p in points {
                    eprintln!("  point {:?}", point_to_json(p));
                }
            }
            write_output(&out, &chain_to_json(&chain))
        }
        Command::MonoidDim { scheme, vertex, d } => {
            let z = scheme_from_json(&read_json(&scheme)?)?;
            let v: Vec<String> = serde_json::from_str(&vertex)
                .map_err(|e| Error::Parse(format!("vertex: {e}")))?;
            let v = point_from_json(&v)?;
            let sys = monoid_system(&z, &v, d)?;
            println!("{}", system_dimension(&sys));
            Ok(())
        }
        Command::MonoidFind {
            scheme,
            vertex,
            d,
            seed,
            out,
        } => {
            let z = scheme_from_json(&read_json(&scheme)?)?;
            let v: Vec<String> = serde_json::from_str(&vertex)
                .map_err(|e| Error::Parse(format!("vertex: {e}")))?;
            let v = point_from_json(&v)?;
            let sys = monoid_system(&z, &v, d)?;
            let mut sampler = Sampler::new(seed);
            let (coeffs, equation) = pick_member(&sys, &z, &mut sampler)?;
            let m = sys.member_monoid(&coeffs)?;
            #[derive(Serialize)]
            struct MonoidFindOutput {
                seed: u64,
                dimension: i64,
                monoid: MonoidJson,
                equation: FormJson,
                system: MonoidSystemJson,
            }
            write_output(
                &out,
                &MonoidFindOutput {
                    seed,
                    dimension: system_dimension(&sys),
                    monoid: monoid_to_json(&m),
                    equation: form_to_json(&equation),
                    system: system_to_json(&sys),
                },
            )
        }
        Command::Dejonquieres { input, search, out } => {
            let data: ConstraintsInput = read_json(&input)?;
            let vertex = point_from_json(&data.vertex)?;
            let moves = data
                .moves
                .iter()
                .map(|m| Ok((point_from_json(&m.from)?, point_from_json(&m.to)?)))
                .collect::<Result<Vec<_>>>()?;
            let fixed = data
                .fixed
                .iter()
                .map(|p| point_from_json(p))
                .collect::<Result<Vec<_>>>()?;
            let mut sampler = Sampler::new(search.seed);
            let dj = match data.degree {
                Some(d) => dj_from_constraints(&vertex, &moves, &fixed, d, &mut sampler)?,
                None => dj_solve_escalating(
                    &vertex,
                    &moves,
                    &fixed,
                    2,
                    search.max_degree,
                    &mut sampler,
                )?,
            };
            let forward = dj.forward();
            let inverse = dj.inverse().forward();
            let certificate = verify_inverse_pair(&forward, &inverse)?;
            write_output(
                &out,
                &MapWithInverseOutput {
                    seed: Some(search.seed),
                    map: dejonquieres_to_json(&dj),
                    forward: map_to_json(&forward),
                    inverse: map_to_json(&inverse),
                    certificate: certificate_to_json(&certificate),
                },
            )
        }
        Command::QuadroQuadric { input, out } => {
            let data: QuadroQuadricInput = read_json(&input)?;
            let p = point_from_json(&data.p)?;
            let h = subspace_from_json(&data.hyperplane)?;
            let q = form_from_json(&data.q)?;
            let qq = quadro_quadric(&p, &h, &q)?;
            let forward = qq.map.forward();
            let inverse = qq.map.inverse().forward();
            let certificate = verify_inverse_pair(&forward, &inverse)?;
            #[derive(Serialize)]
            struct QuadroQuadricOutput {
                basis: Vec<FormJson>,
                map: DeJonquieresJson,
                forward: MapJson,
                inverse: MapJson,
                certificate: CertificateJson,
            }
            write_output(
                &out,
                &QuadroQuadricOutput {
                    basis: qq.system_basis.iter().map(form_to_json).collect(),
                    map: dejonquieres_to_json(&qq.map),
                    forward: map_to_json(&forward),
                    inverse: map_to_json(&inverse),
                    certificate: certificate_to_json(&certificate),
                },
            )
        }
        Command::Stereographic { input, out } => {
            let data: StereographicInput = read_json(&input)?;
            let eq = form_from_json(&data.equation)?;
            let vertex = point_from_json(&data.vertex)?;
            let m = Monoid::from_equation(&eq, &vertex)?;
            let (proj, inv) = m.stereographic();
            #[derive(Serialize)]
            struct StereographicOutput {
                monoid: MonoidJson,
                proj: MapJson,
                inv: MapJson,
            }
            write_output(
                &out,
                &StereographicOutput {
                    monoid: monoid_to_json(&m),
                    proj: map_to_json(&proj),
                    inv: map_to_json(&inv),
                },
            )
        }
        Command::DoubleProjection { input, out } => {
            let data: DoubleProjectionInput = read_json(&input)?;
            let w = match data {
                DoubleProjectionInput::Equation { equation, p1, p2 } => {
                    BiVertexMonoid::from_equation(
                        &form_from_json(&equation)?,
                        &point_from_json(&p1)?,
                        &point_from_json(&p2)?,
                    )?
                }
                DoubleProjectionInput::Parts(parts) => bivertex_from_json(&parts)?,
            };
            let dj = w.double_projection()?;
            let forward = dj.forward();
            let inverse = dj.inverse().forward();
            let certificate = verify_inverse_pair(&forward, &inverse)?;
            #[derive(Serialize)]
            struct DoubleProjectionOutput {
                monoid: BiVertexJson,
                map: DeJonquieresJson,
                forward: MapJson,
                inverse: MapJson,
                certificate: CertificateJson,
            }
            write_output(
                &out,
                &DoubleProjectionOutput {
                    monoid: bivertex_to_json(&w),
                    map: dejonquieres_to_json(&dj),
                    forward: map_to_json(&forward),
                    inverse: map_to_json(&inverse),
                    certificate: certificate_to_json(&certificate),
                },
            )
        }
        Command::Compose { maps, out } => {
            if maps.len() < 2 {
                return Err(Error::Parse("compose needs at least two maps".into()));
            }
            let mut acc = map_from_json(&read_json(&maps[0])?)?;
            for path in &maps[1..] {
                let next = map_from_json(&read_json(path)?)?;
                acc = map_compose(&next, &acc)?;
            }
            write_output(&out, &map_to_json(&acc))
        }
        Command::Verify { chain } => {
            let parsed: ChainJson = read_json(&chain)?;
            let c = chain_from_json(&parsed)?;
            c.verify()?;
            println!("OK: {} steps verified", c.steps.len());
            Ok(())
        }
    }
}

/// Entry point used by the binary.
pub fn main() -> std::process::ExitCode {
    let job = JobSpec::parse();
    match run(job) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            std::process::ExitCode::from(e.exit_code() as u8)
        }
    }
}
