//! Command-line driver: every subcommand reads the quiver from a JSON file
//! and prints deterministic output.
//!
//! Exit codes: 0 success, 1 rejection with output (incomparable pair, no
//! triangle, unrelated objects), 2 usage or input error, 3 verification
//! counterexample.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use meshdeg::degeneration::{deg_set, leq_delta, verify_equivalence, verify_triangle_bound};
use meshdeg::hammock::{ext1_dim, hom_dim, Hammock};
use meshdeg::monomial::{downward_closure, nakajima_leq, strata, GradedDims, LaurentMonomial};
use meshdeg::type_a::{formula_a_monomial, parallelogram_solve, Condition, Parallelogram};
use meshdeg::{DerivedObject, Repetition, Vertex};

#[derive(Parser)]
#[command(
    name = "meshdeg",
    version,
    about = "Exact degeneration-order and monomial-order computations on repetition quivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the morphism space between two indecomposables.
    Hom {
        /// Quiver description file (JSON).
        #[arg(long = "q", value_name = "FILE")]
        quiver: PathBuf,
        /// Source vertex as "i,p".
        #[arg(long)]
        from: String,
        /// Target vertex as "i,p".
        #[arg(long)]
        to: String,
        /// Print the first extension dimension instead.
        #[arg(long, default_value_t = false)]
        ext: bool,
    },
    /// The supported Hom grid from a source vertex over a level window.
    Hammock {
        #[arg(long = "q", value_name = "FILE")]
        quiver: PathBuf,
        #[arg(long)]
        from: String,
        /// Level window as "P0..P1".
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Solve for the triangle certificate with the given ends (type A).
    Triangle {
        #[arg(long = "q", value_name = "FILE")]
        quiver: PathBuf,
        #[arg(long)]
        start: String,
        #[arg(long)]
        end: String,
    },
    /// The closed-form witness box for an explicit parallelogram (type A).
    Formula {
        #[arg(long = "q", value_name = "FILE")]
        quiver: PathBuf,
        #[arg(long)]
        start: String,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        /// Parallelogram orientation: C1 or C2.
        #[arg(long)]
        cond: String,
    },
    /// Decide whether n <= m in the monomial order.
    Order {
        #[arg(long = "q", value_name = "FILE")]
        quiver: PathBuf,
        /// Candidate lower monomial, e.g. "Y[2,2]".
        #[arg(long)]
        n: String,
        /// Upper monomial, e.g. "Y[1,1]*Y[1,3]".
        #[arg(long)]
        m: String,
    },
    /// All dominant monomials below m, with relation and covers.
    Closure {
        #[arg(long = "q", value_name = "FILE")]
        quiver: PathBuf,
        #[arg(long)]
        m: String,
        /// Exponent floor for the bounded search outside type A.
        #[arg(long)]
        search_bound: Option<i64>,
        /// Output format: json, dot or table.
        #[arg(long, default_value = "json")]
        emit: String,
        /// Also write the DOT Hasse diagram to a file.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Nonempty strata below the weight monomial w.
    Strata {
        #[arg(long = "q", value_name = "FILE")]
        quiver: PathBuf,
        /// Weights as a dominant monomial, e.g. "Y[2,-2]*Y[2,0]*Y[2,2]".
        #[arg(long)]
        w: String,
        #[arg(long)]
        search_bound: Option<i64>,
    },
    /// The degeneration downset of an object (type A).
    Deg {
        #[arg(long = "q", value_name = "FILE")]
        quiver: PathBuf,
        /// Object shorthand, e.g. "V(2,-2)+V(2,0)+V(2,2)".
        #[arg(long)]
        object: String,
        /// Output format: json, dot or table.
        #[arg(long, default_value = "table")]
        emit: String,
        /// Also write the DOT Hasse diagram to a file.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Also write the full poset as JSON to a file.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Decide x <= y in the degeneration order, with witness chains.
    OrderDelta {
        #[arg(long = "q", value_name = "FILE")]
        quiver: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Also print the saturated chain of covers.
        #[arg(long, default_value_t = false)]
        covers: bool,
    },
    /// Exhaustive agreement check of the two orders over a window (type A).
    Verify {
        #[arg(long = "q", value_name = "FILE")]
        quiver: PathBuf,
        /// Level window as "P0..P1".
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        max_factors: i64,
    },
    /// Check every certified triangle's middle against the product of its
    /// ends over a window (type A).
    VerifyLemma {
        #[arg(long = "q", value_name = "FILE")]
        quiver: PathBuf,
        /// Level window as "P0..P1".
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
}

fn main() {
    let code = match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

fn run() -> Result<i32, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Hom {
            quiver,
            from,
            to,
            ext,
        } => {
            let rep = load_quiver(&quiver)?;
            let x = parse_vertex(&from)?;
            let y = parse_vertex(&to)?;
            let dim = if ext {
                ext1_dim(&rep, x, y)
            } else {
                hom_dim(&rep, x, y)
            }
            .map_err(|e| e.to_string())?;
            println!("{dim}");
            Ok(0)
        }
        Command::Hammock {
            quiver,
            from,
            window,
        } => {
            let rep = load_quiver(&quiver)?;
            let source = parse_vertex(&from)?;
            let (p_lo, p_hi) = parse_window(&window)?;
            let hammock = Hammock::knit(&rep, source, p_hi).map_err(|e| e.to_string())?;
            let dims: Vec<serde_json::Value> = hammock
                .entries()
                .filter(|(v, _)| v.p >= p_lo)
                .map(|(v, d)| serde_json::json!([v.i, v.p, d]))
                .collect();
            let out = serde_json::json!({
                "source": [source.i, source.p],
                "window": [p_lo, p_hi],
                "dims": dims,
            });
            println!("{out}");
            Ok(0)
        }
        Command::Triangle { quiver, start, end } => {
            let rep = load_quiver(&quiver)?;
            let y1 = parse_vertex(&start)?;
            let y2 = parse_vertex(&end)?;
            match parallelogram_solve(&rep, y1, y2).map_err(|e| e.to_string())? {
                Some(par) => {
                    println!("{}", par.to_json(&rep));
                    Ok(0)
                }
                None => {
                    println!("{}", serde_json::json!({ "triangle": null }));
                    Ok(1)
                }
            }
        }
        Command::Formula {
            quiver,
            start,
            a,
            b,
            cond,
        } => {
            let rep = load_quiver(&quiver)?;
            let start = parse_vertex(&start)?;
            let condition: Condition = cond.parse().map_err(|e: meshdeg::Error| e.to_string())?;
            let par = Parallelogram::from_parameters(&rep, start, a, b, condition)
                .map_err(|e| e.to_string())?;
            println!("{}", formula_a_monomial(&par).to_json());
            Ok(0)
        }
        Command::Order { quiver, n, m } => {
            let rep = load_quiver(&quiver)?;
            let n = parse_monomial(&rep, &n)?;
            let m = parse_monomial(&rep, &m)?;
            match nakajima_leq(&rep, &n, &m).map_err(|e| e.to_string())? {
                Some(v) => {
                    println!(
                        "{}",
                        serde_json::json!({ "comparable": true, "v": v.to_json() })
                    );
                    Ok(0)
                }
                None => {
                    println!("{}", serde_json::json!({ "comparable": false, "v": null }));
                    Ok(1)
                }
            }
        }
        Command::Closure {
            quiver,
            m,
            search_bound,
            emit,
            dot,
        } => {
            let rep = load_quiver(&quiver)?;
            let m = parse_monomial(&rep, &m)?;
            let poset = downward_closure(&rep, &m, search_bound).map_err(|e| e.to_string())?;
            if let Some(path) = dot {
                std::fs::write(&path, poset.to_dot())
                    .map_err(|e| format!("writing {}: {e}", path.display()))?;
            }
            match emit.as_str() {
                "json" => println!("{}", poset.to_json()),
                "dot" => print!("{}", poset.to_dot()),
                "table" => {
                    for (k, element) in poset.elements().iter().enumerate() {
                        println!("{k}: {element}");
                    }
                    for &(lo, hi) in poset.covers() {
                        println!("cover: {hi} -> {lo}");
                    }
                }
                other => return Err(format!("unknown emit format \"{other}\"")),
            }
            Ok(0)
        }
        Command::Strata {
            quiver,
            w,
            search_bound,
        } => {
            let rep = load_quiver(&quiver)?;
            let w = parse_monomial(&rep, &w)?;
            let dims = GradedDims::from_w_monomial(&rep, &w).map_err(|e| e.to_string())?;
            let result = strata(&rep, &dims, search_bound).map_err(|e| e.to_string())?;
            println!("{}", result.to_json());
            Ok(0)
        }
        Command::Deg {
            quiver,
            object,
            emit,
            dot,
            json,
        } => {
            let rep = load_quiver(&quiver)?;
            let top = parse_object(&rep, &object)?;
            let poset = deg_set(&rep, &top).map_err(|e| e.to_string())?;
            if let Some(path) = dot {
                std::fs::write(&path, poset.to_dot())
                    .map_err(|e| format!("writing {}: {e}", path.display()))?;
            }
            if let Some(path) = json {
                std::fs::write(&path, poset.to_json().to_string())
                    .map_err(|e| format!("writing {}: {e}", path.display()))?;
            }
            match emit.as_str() {
                "json" => println!("{}", poset.to_json()),
                "dot" => print!("{}", poset.to_dot()),
                "table" => {
                    for (k, element) in poset.elements().iter().enumerate() {
                        let marker = if k == poset.top() { " (top)" } else { "" };
                        println!("{k}: {element} = {}{marker}", element.to_monomial());
                    }
                    for (lo, hi) in poset.cover_pairs() {
                        println!("cover: {hi} -> {lo}");
                    }
                }
                other => return Err(format!("unknown emit format \"{other}\"")),
            }
            Ok(0)
        }
        Command::OrderDelta {
            quiver,
            x,
            y,
            covers,
        } => {
            let rep = load_quiver(&quiver)?;
            let x = parse_object(&rep, &x)?;
            let y = parse_object(&rep, &y)?;
            match leq_delta(&rep, &x, &y).map_err(|e| e.to_string())? {
                Some(chain) => {
                    let mut out = serde_json::json!({
                        "related": true,
                        "witness": chain.iter().map(|mv| mv.to_json(&rep)).collect::<Vec<_>>(),
                    });
                    if covers {
                        let poset = deg_set(&rep, &y).map_err(|e| e.to_string())?;
                        let lo = poset.index_of(&x).expect("member of its own downset");
                        let refined = poset
                            .cover_chain(lo, poset.top())
                            .expect("related pair refines to covers");
                        out["cover_chain"] = serde_json::Value::Array(
                            refined.iter().map(|e| e.mv.to_json(&rep)).collect(),
                        );
                    }
                    println!("{out}");
                    Ok(0)
                }
                None => {
                    println!("{}", serde_json::json!({ "related": false }));
                    Ok(1)
                }
            }
        }
        Command::Verify {
            quiver,
            window,
            max_factors,
        } => {
            let rep = load_quiver(&quiver)?;
            let (p_lo, p_hi) = parse_window(&window)?;
            let report =
                verify_equivalence(&rep, p_lo, p_hi, max_factors).map_err(|e| e.to_string())?;
            println!("{}", report.to_json());
            Ok(if report.passed() { 0 } else { 3 })
        }
        Command::VerifyLemma { quiver, window } => {
            let rep = load_quiver(&quiver)?;
            let (p_lo, p_hi) = parse_window(&window)?;
            let report = verify_triangle_bound(&rep, p_lo, p_hi).map_err(|e| e.to_string())?;
            println!("{}", report.to_json());
            Ok(if report.passed() { 0 } else { 3 })
        }
    }
}

fn load_quiver(path: &PathBuf) -> Result<Repetition, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    Repetition::from_json(&text).map_err(|e| e.to_string())
}

// Keeps all downstream i64 arithmetic far from overflow.
const COORD_BOUND: i64 = 1_000_000_000;

fn parse_vertex(text: &str) -> Result<Vertex, String> {
    let (si, sp) = text
        .split_once(',')
        .ok_or_else(|| format!("expected \"i,p\", got \"{text}\""))?;
    let i: i64 = si
        .trim()
        .parse()
        .map_err(|_| format!("bad vertex index in \"{text}\""))?;
    let p: i64 = sp
        .trim()
        .parse()
        .map_err(|_| format!("bad vertex level in \"{text}\""))?;
    if i.abs() > COORD_BOUND || p.abs() > COORD_BOUND {
        return Err(format!("coordinates in \"{text}\" out of range"));
    }
    Ok(Vertex::new(i, p))
}

fn parse_window(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected \"P0..P1\", got \"{text}\""))?;
    let p_lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad window start in \"{text}\""))?;
    let p_hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad window end in \"{text}\""))?;
    if p_lo > p_hi {
        return Err(format!("empty window \"{text}\""));
    }
    if p_lo.abs() > COORD_BOUND || p_hi.abs() > COORD_BOUND {
        return Err(format!("window \"{text}\" out of range"));
    }
    Ok((p_lo, p_hi))
}

fn parse_monomial(rep: &Repetition, text: &str) -> Result<LaurentMonomial, String> {
    let m = LaurentMonomial::parse(text).map_err(|e| e.to_string())?;
    m.validate_support(rep).map_err(|e| e.to_string())?;
    Ok(m)
}

fn parse_object(rep: &Repetition, text: &str) -> Result<DerivedObject, String> {
    DerivedObject::parse(rep, text).map_err(|e| e.to_string())
}
