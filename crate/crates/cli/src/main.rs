use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use surfalg_core::brauer::{self, BrauerGraph};
use surfalg_core::constructions::{self, IdempotentSelection};
use surfalg_core::io::{self as docs, AnyDocument, LoadError, QuiverDocument};
use surfalg_core::presentation::{self, PresentationKind};
use surfalg_core::{dot, iso, surface, weighted, Error, VertexId, WeightedBiserialQuiver};

#[derive(Parser)]
#[command(name = "surfalg", version, about = "Brauer graphs, biserial quivers and their algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Perm {
    F,
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Biserial,
    Border,
    Weighted,
}

#[derive(Subcommand)]
enum Command {
    /// Check a quiver or Brauer graph document.
    Validate { input: Option<PathBuf> },
    /// Cycles of f or g.
    Orbits {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        perm: Perm,
    },
    /// Brauer graph document to quiver document.
    FromBrauer { input: Option<PathBuf> },
    /// Quiver document to Brauer graph document.
    ToBrauer { input: Option<PathBuf> },
    /// The star construction.
    Star {
        input: Option<PathBuf>,
        /// Leave f-fixed loops and loopless triangles untouched.
        #[arg(long)]
        minimal: bool,
    },
    /// The sharp construction (keeps border loops).
    Sharp { input: Option<PathBuf> },
    /// Star applied twice.
    DoubleStar { input: Option<PathBuf> },
    /// Idempotent reduction to the kept vertices.
    Reduce {
        input: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<String>,
    },
    /// Barycentric division of a Brauer graph.
    Barycentric { input: Option<PathBuf> },
    /// Relations of the biserial, border or weighted triangulation algebra.
    Relations {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "biserial")]
        kind: Kind,
    },
    /// Dimension of the algebra.
    Dim { input: Option<PathBuf> },
    /// Cartan matrix of the biserial algebra.
    Cartan { input: Option<PathBuf> },
    /// Gabriel quiver (virtual loops removed).
    Gabriel { input: Option<PathBuf> },
    /// Euler characteristic and genus of the ribbon surface.
    Surface { input: Option<PathBuf> },
    /// One walk per f-orbit.
    GreenWalks { input: Option<PathBuf> },
    /// Isomorphism of two weighted quivers.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Largest vertex count the search accepts.
        #[arg(long, default_value_t = iso::DEFAULT_SIZE_LIMIT)]
        limit: usize,
    },
    /// Weighted triangulation quiver containing the input as an idempotent algebra.
    Envelope { input: Option<PathBuf> },
    /// Graphviz export of a quiver or Brauer graph.
    ExportDot { input: Option<PathBuf> },
    /// Seeded random weighted biserial quiver.
    Random {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        max_weight: u32,
    },
}

enum Failure {
    Load(LoadError),
    Core(Error),
    Io(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Load(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<String, Failure>;

fn read(input: &Option<PathBuf>) -> Result<String, Failure> {
    match input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(e.to_string()))?;
            Ok(s)
        }
    }
}

fn quiver(input: &Option<PathBuf>) -> Result<WeightedBiserialQuiver, Failure> {
    Ok(docs::load_quiver(&read(input)?)?)
}

fn graph(input: &Option<PathBuf>) -> Result<BrauerGraph, Failure> {
    Ok(docs::load_brauer(&read(input)?)?)
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("outputs serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Components {
    components: Vec<QuiverDocument>,
}

#[derive(Serialize)]
struct EnvelopeOutput {
    quiver: QuiverDocument,
    selection: IdempotentSelection,
    stars: usize,
}

fn cycles_text(cycles: &[Vec<String>]) -> String {
    cycles.iter().map(|c| format!("({})\n", c.join(" "))).collect()
}

fn run(cli: &Cli) -> Outcome {
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::Validate { input } => match docs::load_any(&read(input)?)? {
            AnyDocument::Quiver(w) => {
                let bq = w.bq();
                let v = json!({
                    "valid": true,
                    "kind": "quiver",
                    "vertices": bq.vertex_count(),
                    "arrows": bq.arrow_count(),
                    "triangulation": bq.is_triangulation(),
                    "single_vertex": bq.is_single_vertex(),
                });
                Ok(if text { format!("valid quiver: {} vertices, {} arrows\n", bq.vertex_count(), bq.arrow_count()) } else { pretty(&v) })
            }
            AnyDocument::Brauer(g) => {
                let v = json!({"valid": true, "kind": "brauer", "vertices": g.vertices().len(), "edges": g.edges().len()});
                Ok(if text { format!("valid Brauer graph: {} vertices, {} edges\n", g.vertices().len(), g.edges().len()) } else { pretty(&v) })
            }
        },
        Command::Orbits { input, perm } => {
            let w = quiver(input)?;
            let orbits = match perm {
                Perm::F => w.bq().f_orbits(),
                Perm::G => w.bq().g_orbits(),
            };
            let cycles: Vec<Vec<String>> = orbits.orbits().iter().map(|o| o.iter().map(|a| a.to_string()).collect()).collect();
            Ok(if text { cycles_text(&cycles) } else { pretty(&json!(cycles)) })
        }
        Command::FromBrauer { input } => Ok(docs::save_quiver(&brauer::brauer_to_biserial(&graph(input)?)?)),
        Command::ToBrauer { input } => Ok(docs::save_brauer(&brauer::biserial_to_brauer(&quiver(input)?))),
        Command::Star { input, minimal } => {
            let w = quiver(input)?;
            let s = if *minimal { constructions::star_minimal(&w)? } else { constructions::star(&w)? };
            Ok(docs::save_quiver(&s))
        }
        Command::Sharp { input } => Ok(docs::save_quiver(&constructions::sharp(&quiver(input)?)?)),
        Command::DoubleStar { input } => Ok(docs::save_quiver(&constructions::double_star(&quiver(input)?)?)),
        Command::Reduce { input, keep } => {
            let w = quiver(input)?;
            let sel = IdempotentSelection::new(keep.iter().filter(|k| !k.is_empty()).map(|k| VertexId::new(k.trim())))?;
            let comps = constructions::reduce(&w, &sel)?;
            Ok(pretty(&Components { components: comps.iter().map(QuiverDocument::from_wbq).collect() }))
        }
        Command::Barycentric { input } => Ok(docs::save_brauer(&constructions::barycentric_division(&graph(input)?)?)),
        Command::Relations { input, kind } => {
            let w = quiver(input)?;
            let kind = match kind {
                Kind::Biserial => PresentationKind::Biserial,
                Kind::Border => PresentationKind::Border,
                Kind::Weighted => PresentationKind::WeightedTriangulation,
            };
            let pres = presentation::relations(&w, kind)?;
            if text {
                return Ok(pres.to_text());
            }
            Ok(pretty(&json!({
                "kind": pres.kind,
                "relations": pres.relations,
                "virtual_loops": pres.virtual_loops(),
                "gabriel_arrows": pres.gabriel_arrows(),
            })))
        }
        Command::Dim { input } => Ok(format!("{}\n", quiver(input)?.dimension())),
        Command::Cartan { input } => {
            let pres = presentation::relations_biserial(&quiver(input)?)?;
            let c = presentation::cartan_matrix(&pres)?;
            if text {
                let mut out = format!("\t{}\n", c.vertices.iter().map(|v| v.as_str()).collect::<Vec<_>>().join("\t"));
                for (v, row) in c.vertices.iter().zip(&c.entries) {
                    out.push_str(&format!("{v}\t{}\n", row.iter().map(u64::to_string).collect::<Vec<_>>().join("\t")));
                }
                return Ok(out);
            }
            Ok(pretty(&json!(c)))
        }
        Command::Gabriel { input } => {
            let pres = presentation::relations_biserial(&quiver(input)?)?;
            let q = presentation::gabriel_quiver(&pres)?;
            let arrows: Vec<Value> = q.arrows().map(|a| json!({"id": a.id, "source": a.source, "target": a.target})).collect();
            Ok(pretty(&json!({"vertices": q.vertices(), "arrows": arrows})))
        }
        Command::Surface { input } => {
            let r = surface::surface_report(quiver(input)?.bq())?;
            if text {
                let genus = r.genus.map_or("-".to_string(), |g| g.to_string());
                return Ok(format!(
                    "g-orbits\t{}\nquiver vertices\t{}\nf-orbits\t{}\neuler characteristic\t{}\ngenus\t{genus}\nborder loops\t{}\ntriangle faces\t{}\n",
                    r.n_g_orbits, r.n_quiver_vertices, r.n_f_orbits, r.euler_characteristic, r.n_border_loops, r.n_triangle_faces
                ));
            }
            Ok(pretty(&json!(r)))
        }
        Command::GreenWalks { input } => {
            let walks: Vec<Vec<String>> =
                brauer::green_walks(quiver(input)?.bq()).into_iter().map(|w| w.into_iter().map(|v| v.to_string()).collect()).collect();
            Ok(if text { cycles_text(&walks) } else { pretty(&json!(walks)) })
        }
        Command::Iso { a, b, limit } => {
            let (x, y) = (quiver(&Some(a.clone()))?, quiver(&Some(b.clone()))?);
            let found = iso::isomorphic_bounded(&x, &y, *limit)?;
            if text {
                return Ok(if found.is_some() { "isomorphic\n" } else { "not isomorphic\n" }.to_string());
            }
            Ok(pretty(&match found {
                Some(m) => json!({"isomorphic": true, "vertices": m.vertices, "arrows": m.arrows}),
                None => json!({"isomorphic": false}),
            }))
        }
        Command::Envelope { input } => {
            let e = constructions::periodic_envelope(&quiver(input)?)?;
            Ok(pretty(&EnvelopeOutput { quiver: QuiverDocument::from_wbq(&e.wbq), selection: e.selection, stars: e.stars }))
        }
        Command::ExportDot { input } => Ok(match docs::load_any(&read(input)?)? {
            AnyDocument::Quiver(w) => dot::quiver_to_dot(&w),
            AnyDocument::Brauer(g) => dot::brauer_to_dot(&g),
        }),
        Command::Random { vertices, seed, max_weight } => {
            if *vertices == 0 {
                return Err(Failure::Io("--vertices must be at least 1".into()));
            }
            Ok(docs::save_quiver(&weighted::random_weighted(*vertices, *seed, *max_weight)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match failure {
                Failure::Load(LoadError::Invalid { pointer, error: Error::Invalid(diag) }) => {
                    eprintln!("error: invalid biserial quiver (at `{pointer}`)");
                    for v in &diag.0 {
                        eprintln!("  {v}");
                    }
                }
                Failure::Core(Error::Invalid(diag)) => {
                    eprintln!("error: invalid biserial quiver");
                    for v in &diag.0 {
                        eprintln!("  {v}");
                    }
                }
                Failure::Load(e) => eprintln!("error: {e}"),
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Io(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(1)
        }
    }
}
