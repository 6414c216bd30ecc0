use std::fmt::Display;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use quantic::genext::GammaMonoidElem;
use quantic::json::{self, CartanJson, QuiverJson};
use quantic::repcalc::{fold, unfold};
use quantic::rewrite::{self, MonoidElem, Word};
use quantic::ring;
use quantic::roots::{CartanDatum, MultFn, RootSystem};
use quantic::Realization;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// `println!` that ignores a closed stdout (e.g. when piped into `head`).
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "quantic",
    version,
    about = "Root systems, straightening normal forms and generic extensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CartanSpec {
    /// Named Cartan type such as B3, G2 or F4.
    #[arg(long = "type", value_name = "NAME", conflicts_with = "cartan")]
    type_name: Option<String>,
    /// Path to a Cartan JSON file {"order": [...], "matrix": [[...]]}.
    #[arg(long, value_name = "FILE")]
    cartan: Option<String>,
    /// Reorder the index set: labels separated by commas or spaces.
    #[arg(long)]
    order: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots in directed enumeration order and the Euler matrix.
    Roots(CartanSpec),
    /// The defining relations.
    Relations(CartanSpec),
    /// Normal form of a word.
    Nf {
        #[command(flatten)]
        spec: CartanSpec,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Product of two words in normal form.
    Mult {
        #[command(flatten)]
        spec: CartanSpec,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Straightening table of all out-of-order pairs of root elements.
    Table(CartanSpec),
    /// Graded dimensions by three routes for all weights up to a height.
    Count {
        #[command(flatten)]
        spec: CartanSpec,
        #[arg(long, default_value_t = 4)]
        height: i64,
    },
    /// Run the invariant checks.
    Verify {
        #[command(flatten)]
        spec: CartanSpec,
        /// Compare generic extensions with normal forms on all short words.
        #[arg(long)]
        eta: bool,
        /// Check associativity of generic extensions on random triples.
        #[arg(long)]
        assoc: bool,
        #[arg(long, default_value_t = 5)]
        maxlen: usize,
        #[arg(long, default_value_t = 4)]
        height: i64,
    },
    /// Quiver with automorphism unfolding the Cartan datum, as JSON.
    Unfold(CartanSpec),
    /// Cartan datum folded from a quiver JSON file.
    Fold {
        #[arg(long, value_name = "FILE")]
        quiver: String,
    },
}

enum Failure {
    Input(String),
    Check(String),
}

fn input<E: Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

type Outcome = Result<(), Failure>;

fn resolve(spec: &CartanSpec) -> Result<CartanDatum, Failure> {
    let datum = match (&spec.type_name, &spec.cartan) {
        (Some(name), None) => CartanDatum::named(name).map_err(input)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            json::parse_cartan(&text).map_err(input)?
        }
        _ => return Err(Failure::Input("give exactly one of --type and --cartan".into())),
    };
    match &spec.order {
        Some(order) => {
            let labels: Vec<String> = order
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            datum.reordered(&labels).map_err(input)
        }
        None => Ok(datum),
    }
}

fn system(spec: &CartanSpec) -> Result<Arc<RootSystem>, Failure> {
    Ok(Arc::new(RootSystem::new(resolve(spec)?).map_err(input)?))
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_roots(spec: &CartanSpec) -> Outcome {
    let sys = system(spec)?;
    if spec.json {
        print_json(&serde_json::to_value(json::root_system_json(&sys)).expect("serializable"));
        return Ok(());
    }
    out!("labels: {}", sys.datum().labels().join(" "));
    out!("symmetrizers: {:?}", sys.datum().symmetrizers());
    out!("positive roots ({}):", sys.num_roots());
    for (k, r) in sys.roots().iter().enumerate() {
        let w = rewrite::root_element(&sys, r).map_err(input)?;
        out!(
            "  {:>3}  {}  {}",
            k,
            RootSystem::format_vector(r),
            w.display(sys.datum())
        );
    }
    out!("euler matrix:");
    for row in sys.euler_matrix() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        out!("  {}", cells.join(""));
    }
    Ok(())
}

fn cmd_relations(spec: &CartanSpec) -> Outcome {
    let sys = system(spec)?;
    let rels = rewrite::defining_relations(&sys).map_err(input)?;
    let datum = sys.datum();
    if spec.json {
        let v: Vec<Value> = rels
            .relations()
            .iter()
            .map(|(l, r)| json!([l.labels(datum), r.labels(datum)]))
            .collect();
        print_json(&Value::Array(v));
        return Ok(());
    }
    if rels.is_empty() {
        out!("no relations");
    }
    for (l, r) in rels.relations() {
        out!("{} = {}", l.labels(datum).join(" "), r.labels(datum).join(" "));
    }
    Ok(())
}

fn show_elem(sys: &RootSystem, e: &MonoidElem, as_json: bool) {
    if as_json {
        print_json(&serde_json::to_value(json::monoid_elem_json(e)).expect("serializable"));
        return;
    }
    let weight: Vec<String> = e.weight().iter().map(i64::to_string).collect();
    out!("weight: ({})", weight.join(","));
    let mults: Vec<String> = e
        .nf()
        .iter()
        .map(|(k, m)| format!("{}:{m}", RootSystem::format_vector(sys.root(k))))
        .collect();
    out!("nf: {{{}}}", mults.join(", "));
    out!("normal form: {e}");
    out!("word: {}", e.to_word().labels(sys.datum()).join(" "));
}

fn cmd_nf(spec: &CartanSpec, word: &str) -> Outcome {
    let sys = system(spec)?;
    let w = Word::parse(sys.datum(), word).map_err(input)?;
    let e = rewrite::normal_form(&sys, &w).map_err(input)?;
    show_elem(&sys, &e, spec.json);
    Ok(())
}

fn cmd_mult(spec: &CartanSpec, a: &str, b: &str) -> Outcome {
    let sys = system(spec)?;
    let x = rewrite::normal_form(&sys, &Word::parse(sys.datum(), a).map_err(input)?).map_err(input)?;
    let y = rewrite::normal_form(&sys, &Word::parse(sys.datum(), b).map_err(input)?).map_err(input)?;
    let p = rewrite::multiply(&x, &y).map_err(input)?;
    show_elem(&sys, &p, spec.json);
    Ok(())
}

fn cmd_table(spec: &CartanSpec) -> Outcome {
    let sys = system(spec)?;
    let n = sys.num_roots();
    let name = |k: usize| -> Result<String, Failure> {
        Ok(rewrite::root_element(&sys, sys.root(k))
            .map_err(input)?
            .display(sys.datum()))
    };
    let mut cells = Vec::new();
    for row in 1..n {
        let mut line = Vec::new();
        for col in 0..row {
            let a = MonoidElem::from_nf(sys.clone(), MultFn::single(row, 1));
            let b = MonoidElem::from_nf(sys.clone(), MultFn::single(col, 1));
            let p = rewrite::multiply(&a, &b).map_err(input)?;
            line.push(p);
        }
        cells.push(line);
    }
    if spec.json {
        let mut v = Vec::new();
        for (r, line) in cells.iter().enumerate() {
            for (c, p) in line.iter().enumerate() {
                v.push(json!({"row": name(r + 1)?, "col": name(c)?, "product": json::monoid_elem_json(p), "text": p.to_string()}));
            }
        }
        print_json(&Value::Array(v));
        return Ok(());
    }
    let cols: Vec<String> = (0..n - 1).map(name).collect::<Result<_, _>>()?;
    let mut width = cols.iter().map(String::len).max().unwrap_or(1);
    for line in &cells {
        for p in line {
            width = width.max(p.to_string().chars().count());
        }
    }
    let rows: Vec<String> = (1..n).map(name).collect::<Result<_, _>>()?;
    let rw = rows.iter().map(String::len).max().unwrap_or(1);
    let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
    let header: Vec<String> = cols.iter().map(|c| pad(c, width)).collect();
    out!("{}  {}", pad("", rw), header.join("  ").trim_end());
    for (r, line) in cells.iter().enumerate() {
        let entries: Vec<String> = line.iter().map(|p| pad(&p.to_string(), width)).collect();
        out!("{}  {}", pad(&rows[r], rw), entries.join("  ").trim_end());
    }
    Ok(())
}

fn nonzero_weights(sys: &RootSystem, height: i64) -> Vec<Vec<i64>> {
    sys.weights_up_to(height)
        .into_iter()
        .filter(|d| d.iter().any(|&x| x > 0))
        .collect()
}

fn cmd_count(spec: &CartanSpec, height: i64) -> Outcome {
    let sys = system(spec)?;
    let mut rows = Vec::new();
    let mut failure = None;
    for d in nonzero_weights(&sys, height) {
        match ring::graded_dimension_report(&sys, &d) {
            Ok(r) => rows.push(r),
            Err(ring::RingError::Rewrite(e)) => return Err(input(e)),
            Err(e) => {
                failure = Some(e.to_string());
                break;
            }
        }
    }
    if spec.json {
        let v: Vec<Value> = rows
            .iter()
            .map(|r| json!({"d": r.d, "kostant": r.kostant, "normal_forms": r.normal_forms, "classes": r.classes}))
            .collect();
        print_json(&Value::Array(v));
    } else {
        out!("{:<16} {:>8} {:>8} {:>8}", "d", "P(d)", "#nf", "#classes");
        for r in &rows {
            out!(
                "{:<16} {:>8} {:>8} {:>8}",
                RootSystem::format_vector(&r.d),
                r.kostant,
                r.normal_forms,
                r.classes
            );
        }
    }
    match failure {
        Some(msg) => Err(Failure::Check(msg)),
        None => Ok(()),
    }
}

fn random_element<R: Rng>(sys: &Arc<RootSystem>, max_len: usize, rng: &mut R) -> Result<MultFn, Failure> {
    let len = rng.gen_range(0..=max_len);
    let w = Word::new((0..len).map(|_| rng.gen_range(0..sys.rank())).collect());
    Ok(rewrite::normal_form(sys, &w).map_err(input)?.into_nf())
}

fn report(name: &str, result: Result<String, String>, failures: &mut usize) {
    match result {
        Ok(detail) => out!("PASS {name}: {detail}"),
        Err(detail) => {
            *failures += 1;
            out!("FAIL {name}: {detail}");
        }
    }
}

fn cmd_verify(spec: &CartanSpec, eta: bool, assoc: bool, maxlen: usize, height: i64) -> Outcome {
    let sys = system(spec)?;
    let mut failures = 0;
    let weights = nonzero_weights(&sys, height);

    let confluence = (|| {
        for d in &weights {
            ring::graded_dimension_report(&sys, d).map_err(|e| e.to_string())?;
        }
        Ok(format!("{} weights up to height {height}", weights.len()))
    })();
    report("confluence and graded dimensions", confluence, &mut failures);

    let udec = (|| {
        for d in &weights {
            let found: Vec<MultFn> = sys
                .kostant_partitions(d)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|a| sys.is_ext_free(a))
                .collect();
            let canonical = sys.canonical_decomposition(d).map_err(|e| e.to_string())?;
            if found != vec![canonical] {
                return Err(format!(
                    "weight {}: {} ext-free partitions",
                    RootSystem::format_vector(d),
                    found.len()
                ));
            }
        }
        Ok(format!("{} weights", weights.len()))
    })();
    report("unique ext-free decomposition", udec, &mut failures);

    if eta || assoc {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let real = Realization::new(sys.clone(), &mut rng).map_err(input)?;
        if eta {
            let r = match real.eta_exhaustive(maxlen, &mut rng) {
                Ok((n, None)) => Ok(format!("{n} words up to length {maxlen}")),
                Ok((_, Some(bad))) => Err(format!(
                    "word {}: generic extension {} vs normal form {}",
                    bad.word.display(sys.datum()),
                    rewrite::format_nf(&sys, &bad.eta),
                    rewrite::format_nf(&sys, &bad.nf)
                )),
                Err(e) => Err(e.to_string()),
            };
            report("realization", r, &mut failures);
        }
        if assoc {
            let r = (|| {
                let trials = 50;
                for _ in 0..trials {
                    let mut el = Vec::new();
                    for _ in 0..3 {
                        let m = random_element(&sys, 3, &mut rng).map_err(|_| "bad word".to_string())?;
                        el.push(GammaMonoidElem::from_mults(sys.clone(), m));
                    }
                    let mul = |a: &GammaMonoidElem, b: &GammaMonoidElem, rng: &mut ChaCha8Rng| {
                        real.monoid_mult(a, b, rng).map_err(|e| e.to_string())
                    };
                    let left = mul(&mul(&el[0], &el[1], &mut rng)?, &el[2], &mut rng)?;
                    let right = mul(&el[0], &mul(&el[1], &el[2], &mut rng)?, &mut rng)?;
                    if left != right {
                        return Err(format!(
                            "({} * {}) * {} = {left} but x*(y*z) = {right}",
                            el[0], el[1], el[2]
                        ));
                    }
                }
                Ok(format!("{trials} random triples"))
            })();
            report("associativity", r, &mut failures);
        }
    }
    if failures > 0 {
        Err(Failure::Check(format!("{failures} check(s) failed")))
    } else {
        Ok(())
    }
}

fn cmd_unfold(spec: &CartanSpec) -> Outcome {
    let q = unfold(&resolve(spec)?).map_err(input)?;
    print_json(&serde_json::to_value(json::quiver_json(&q)).expect("serializable"));
    Ok(())
}

fn cmd_fold(path: &str) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    let j: QuiverJson = serde_json::from_str(&text).map_err(input)?;
    let q = json::quiver_from_json(&j).map_err(input)?;
    let c = fold(&q).map_err(input)?;
    let mut v = serde_json::to_value(CartanJson::from_datum(&c)).expect("serializable");
    v["symmetrizers"] = json!(c.symmetrizers());
    print_json(&v);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Roots(s) => cmd_roots(s),
        Command::Relations(s) => cmd_relations(s),
        Command::Nf { spec, word } => cmd_nf(spec, word),
        Command::Mult { spec, a, b } => cmd_mult(spec, a, b),
        Command::Table(s) => cmd_table(s),
        Command::Count { spec, height } => cmd_count(spec, *height),
        Command::Verify {
            spec,
            eta,
            assoc,
            maxlen,
            height,
        } => cmd_verify(spec, *eta, *assoc, *maxlen, *height),
        Command::Unfold(s) => cmd_unfold(s),
        Command::Fold { quiver } => cmd_fold(quiver),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
