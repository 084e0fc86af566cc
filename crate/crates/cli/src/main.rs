//! `tropjac`: exact tropical plane curves from the command line.
//!
//! Exit codes: 0 on success, 1 when the request is outside what the theory
//! covers (e.g. the bunch is not a bouquet), 2 on bad input.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use tropjac::bunch::{bouquet_structure, bunch, BouquetVerdict};
use tropjac::curve::CurveFile;
use tropjac::exact::{format_rational, parse_rational, RationalVector};
use tropjac::intersect::{bezout_degree, perturbation_oracle, stable_intersection, DivisorTerm};
use tropjac::jacobian::{reduce, AbelCoordinate, Jacobian};
use tropjac::newton::{newton_complex, newton_polygon, LatticePolygon};
use tropjac::params::sigma_walk;
use tropjac::poly::{parse, Convention};
use tropjac::{Divisor, Error, TropicalCurve};

use render::{render, CurveLayer, Scene};

const POLY_HELP: &str = "Tropical polynomial, e.g. \"0 + x + y + (-1)*x*y\".

Grammar:  poly := term ('+' term)*   term := factor ('*' factor)*
          factor := number | '(' number ')' | x['^'n] | y['^'n]
          number := ['-'] digits ['/' digits]
'+' is the tropical sum, '*' the tropical product; a monomial without a
number has coefficient 0.";

#[derive(Parser)]
#[command(name = "tropjac", version, about = "Exact tropical plane curves, stable intersection and Jacobian coordinates")]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the balancing condition at every vertex.
    Validate { curve: PathBuf },
    /// Newton polygon and Newton complex.
    Newton {
        curve: PathBuf,
        /// Also write the curve and its Newton complex side by side.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Stable intersection divisor, hosted on the first curve.
    Intersect {
        c1: PathBuf,
        c2: PathBuf,
        /// Use the perturbation limit along this direction, e.g. "2,1" or "1/3,-1".
        #[arg(long, value_name = "X,Y")]
        oracle: Option<String>,
        /// Also write an overlay with multiplicity labels.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Mixed area of two Newton polygons.
    Bezout {
        /// Degrees of two projective curves.
        #[arg(long, num_args = 2, value_names = ["C", "D"])]
        deg: Option<Vec<i64>>,
        /// Two curve files, when --deg is not given.
        curves: Vec<PathBuf>,
    },
    /// Tentacle/cycle classification, genus and bouquet verdict.
    Bunch {
        curve: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Cycle lengths of the Jacobian torus, and Abel coordinates of a divisor.
    Jacobi { curve: PathBuf, divisor: Option<PathBuf> },
    /// Decide linear equivalence of two divisors.
    Equiv { curve: PathBuf, d1: PathBuf, d2: PathBuf },
    /// Abel coordinate of the stable intersection with a mobile curve.
    Sigma { host: PathBuf, mobile: PathBuf },
    /// Random walk of the mobile curve through its parameter cone; one JSON line per step.
    Walk {
        host: PathBuf,
        mobile: PathBuf,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Corner locus of a tropical polynomial, as a curve file.
    FromPoly {
        #[arg(help = POLY_HELP)]
        expr: String,
        #[arg(long, default_value = "max", value_parser = ["max", "min"])]
        convention: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a curve as SVG.
    Render {
        curve: PathBuf,
        /// Second panel with the Newton complex.
        #[arg(long)]
        newton: bool,
        /// Color tentacles, rays and cycle edges.
        #[arg(long)]
        bunch: bool,
        #[arg(long)]
        overlay: Option<PathBuf>,
        #[arg(long)]
        divisor: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Refusal(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::Disconnected | Error::Inconsistent(_) | Error::EmptyLocus(_) | Error::NonGeneric { .. } => {
                Failure::Refusal(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Outcome<T> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        Failure::Input(format!("{}: field `{field}`: {}", path.display(), e.inner()))
    })
}

fn read_curve(path: &Path) -> Outcome<TropicalCurve> {
    let file: CurveFile = read_json(path)?;
    TropicalCurve::try_from(&file).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_divisor(path: &Path, host: &TropicalCurve) -> Outcome<Divisor> {
    let terms: Vec<DivisorTerm> = read_json(path)?;
    let d = Divisor::from_file(&terms).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if let Some(p) = d.off_curve_point(host) {
        return Err(Failure::Input(format!("{}: point {p} is not on the curve", path.display())));
    }
    Ok(d.with_host(host))
}

fn write_output(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_value(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn divisor_value(d: &Divisor) -> Value {
    json!({ "divisor": d.to_file(), "degree": d.degree() })
}

fn parse_direction(text: &str) -> Outcome<RationalVector> {
    let bad = || Failure::Input(format!("--oracle: expected X,Y, got {text:?}"));
    let (x, y) = text.split_once(',').ok_or_else(bad)?;
    Ok(RationalVector::new(
        parse_rational(x.trim()).map_err(|_| bad())?,
        parse_rational(y.trim()).map_err(|_| bad())?,
    ))
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Validate { curve } => {
            let c = read_curve(&curve)?;
            let report = c.validate()?;
            if json {
                print_value(&json!({
                    "balanced": report.balanced,
                    "residuals": report.residuals.iter().map(|r| [r.x, r.y]).collect::<Vec<_>>(),
                }));
            } else {
                println!("balanced: {}", report.balanced);
                for v in report.unbalanced_vertices() {
                    let r = report.residuals[v];
                    println!("vertex {v} at {}: residual ({}, {})", c.vertex(v), r.x, r.y);
                }
            }
            if !report.balanced {
                return Err(Failure::Refusal("curve is not balanced".into()));
            }
        }
        Command::Newton { curve, svg } => {
            let c = read_curve(&curve)?;
            let polygon = newton_polygon(&c)?;
            let complex = newton_complex(&c)?;
            if json {
                print_value(&json!({ "polygon": polygon.to_json(), "area2": polygon.area2(), "complex": complex.to_json() }));
            } else {
                let vs: Vec<String> = polygon.vertices().iter().map(|v| format!("({}, {})", v.x, v.y)).collect();
                println!("polygon: {}", vs.join(" "));
                println!("area: {}/2", polygon.area2());
                println!("complex: {} points, {} edges", complex.points.len(), complex.edges.len());
                for (a, b) in complex.segments() {
                    println!("  ({}, {}) -- ({}, {})", a.x, a.y, b.x, b.y);
                }
            }
            if let Some(path) = svg {
                let mut scene = Scene::new().curve(c, "black");
                scene.complex = Some(complex);
                write_output(Some(&path), &render(&scene))?;
            }
        }
        Command::Intersect { c1, c2, oracle, svg } => {
            let (a, b) = (read_curve(&c1)?, read_curve(&c2)?);
            let d = match oracle {
                Some(dir) => perturbation_oracle(&a, &b, &parse_direction(&dir)?)?,
                None => stable_intersection(&a, &b)?,
            };
            if json {
                print_value(&divisor_value(&d));
            } else {
                println!("divisor: {d}");
                println!("degree: {}", d.degree());
            }
            if let Some(path) = svg {
                let mut scene = Scene::new().curve(a, "black").curve(b, "#1f78b4");
                scene.divisor = Some(d);
                write_output(Some(&path), &render(&scene))?;
            }
        }
        Command::Bezout { deg, curves } => {
            let (p, q) = match (deg, curves.as_slice()) {
                (Some(d), []) => (LatticePolygon::simplex(d[0]), LatticePolygon::simplex(d[1])),
                (None, [a, b]) => (newton_polygon(&read_curve(a)?)?, newton_polygon(&read_curve(b)?)?),
                _ => return Err(Failure::Input("give either --deg C D or two curve files".into())),
            };
            let n = bezout_degree(&p, &q);
            if json {
                print_value(&json!({ "degree": n }));
            } else {
                println!("{n}");
            }
        }
        Command::Bunch { curve, svg } => {
            let c = read_curve(&curve)?;
            let b = bunch(&c)?;
            let verdict = bouquet_structure(&c, &b);
            let kinds: Vec<String> = b.classification.edges.iter().map(|k| k.to_string()).collect();
            if json {
                let bouquet = match &verdict {
                    BouquetVerdict::Bouquet(s) => json!({
                        "center_vertices": (0..c.vertices().len()).filter(|&v| b.node_of_vertex[v] == s.center).collect::<Vec<_>>(),
                        "cycles": s.cycles.iter().map(|cy| cy.edges.iter().map(|e| e.0).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    }),
                    BouquetVerdict::NotABouquet(why) => json!({ "refused": why }),
                };
                print_value(&json!({
                    "edges": kinds,
                    "rays": b.classification.rays,
                    "nodes": b.node_count,
                    "genus": b.genus(),
                    "bouquet": bouquet,
                }));
            } else {
                for (k, kind) in kinds.iter().enumerate() {
                    let [u, v] = c.edges()[k].ends;
                    println!("edge {k} ({u}-{v}): {kind}");
                }
                println!("rays: {}", b.classification.rays);
                println!("genus: {}", b.genus());
                match &verdict {
                    BouquetVerdict::Bouquet(s) => println!("bouquet: yes, {} cycle(s)", s.cycles.len()),
                    BouquetVerdict::NotABouquet(why) => println!("bouquet: no ({why})"),
                }
            }
            if let Some(path) = svg {
                let scene = Scene {
                    curves: vec![CurveLayer { curve: c, color: "black", classes: Some(b.classification) }],
                    ..Scene::new()
                };
                write_output(Some(&path), &render(&scene))?;
            }
        }
        Command::Jacobi { curve, divisor } => {
            let c = read_curve(&curve)?;
            let j = Jacobian::new(&c)?;
            let abel = divisor.map(|p| read_divisor(&p, &c).and_then(|d| Ok(j.abel_coordinate(&d)?))).transpose()?;
            let lengths: Vec<String> = j.lengths().iter().map(format_rational).collect();
            if json {
                print_value(&json!({
                    "genus": j.genus(),
                    "lengths": lengths,
                    "abel": abel.as_ref().map(AbelCoordinate::to_json),
                }));
            } else {
                println!("genus: {}", j.genus());
                println!("lengths: ({})", lengths.join(", "));
                if let Some(a) = abel {
                    println!("abel: {a}");
                }
            }
        }
        Command::Equiv { curve, d1, d2 } => {
            let c = read_curve(&curve)?;
            let j = Jacobian::for_theorem(&c)?;
            let (a, b) = (read_divisor(&d1, &c)?, read_divisor(&d2, &c)?);
            let verdict = j.linearly_equivalent(&a, &b)?;
            let (ca, cb) = (j.abel_coordinate(&a)?, j.abel_coordinate(&b)?);
            let diff: Vec<String> = ca
                .residues
                .iter()
                .zip(&cb.residues)
                .zip(j.lengths())
                .map(|((x, y), l)| format_rational(&reduce(&(x - y), &l)))
                .collect();
            if json {
                print_value(&json!({
                    "equivalent": verdict,
                    "left": ca.to_json(),
                    "right": cb.to_json(),
                    "degree_difference": ca.degree - cb.degree,
                    "difference": diff,
                }));
            } else {
                println!("equivalent: {verdict}");
                println!("left:  {ca}");
                println!("right: {cb}");
                println!("difference: degree {}, residues ({})", ca.degree - cb.degree, diff.join(", "));
            }
        }
        Command::Sigma { host, mobile } => {
            let j = Jacobian::new(&read_curve(&host)?)?;
            let s = j.sigma(&read_curve(&mobile)?)?;
            if json {
                print_value(&s.to_json());
            } else {
                println!("sigma: {s}");
            }
        }
        Command::Walk { host, mobile, steps, seed } => {
            let j = Jacobian::new(&read_curve(&host)?)?;
            for record in sigma_walk(&j, &read_curve(&mobile)?, steps, seed)? {
                println!("{}", serde_json::to_string(&record.to_json()).expect("values serialize"));
            }
        }
        Command::FromPoly { expr, convention, output } => {
            let conv: Convention = convention.parse()?;
            let f = parse(&expr, conv)?;
            let c = f.corner_locus()?;
            write_output(output.as_deref(), &(c.to_json() + "\n"))?;
        }
        Command::Render { curve, newton, bunch: colored, overlay, divisor, output } => {
            let c = read_curve(&curve)?;
            let classes = if colored { Some(bunch(&c)?.classification) } else { None };
            let mut scene = Scene::new();
            scene.curves.push(CurveLayer { curve: c.clone(), color: "black", classes });
            if let Some(path) = overlay {
                scene.curves.push(CurveLayer { curve: read_curve(&path)?, color: "#1f78b4", classes: None });
            }
            if let Some(path) = divisor {
                scene.divisor = Some(read_divisor(&path, &c)?);
            }
            if newton {
                scene.complex = Some(newton_complex(&c)?);
            }
            write_output(output.as_deref(), &render(&scene))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Refusal(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
