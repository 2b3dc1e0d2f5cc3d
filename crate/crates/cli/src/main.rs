//! Command-line front door: parse ring/matrix/row documents, dispatch to the
//! library operations, emit canonical JSON (or an aligned text table with
//! `--format table`). Exit codes: 0 success, 1 domain error, 2 usage or
//! parse error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wittkit::altform::AlternatingMatrix;
use wittkit::census::{
    compare_generator_sets, orbit_bfs, path_to_witness_word, CensusJob, GeneratorSet, ObjectKind,
    DEFAULT_BUDGET,
};
use wittkit::error::Error;
use wittkit::jsonio;
use wittkit::matrix::ExactMatrix;
use wittkit::vaserstein::{
    kernel_idempotent, sl4_act, suslin_matrix, vaserstein_symbol, Orientation, SymbolInput,
    SUSLIN_DEFAULT_CAP,
};
use wittkit::witt::{check_equiv_witness, eta, hyperbolic, xi_triple, FreeTriple, GroupFlag, WittRep};
use wittkit::UnimodularRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser)]
#[command(name = "wittkit", version, about = "Exact workbench for alternating forms, Pfaffians, Suslin matrices, the Vaserstein symbol and finite-ring orbit censuses")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output rendering; JSON is the machine interface, tables are for eyes.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output document to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pfaffian of an alternating matrix.
    Pf {
        #[arg(long)]
        matrix: String,
    },
    /// Division-free determinant of a square matrix.
    Det {
        #[arg(long)]
        matrix: String,
    },
    /// Suslin matrix of a row document (size 2^(n-1)).
    Suslin {
        #[arg(long)]
        row: String,
        /// Skip the unimodularity certificate (the determinant identity
        /// holds for arbitrary pairs).
        #[arg(long)]
        raw: bool,
        /// Row-length cap.
        #[arg(long, default_value_t = SUSLIN_DEFAULT_CAP)]
        cap: usize,
    },
    /// Kernel idempotent I - b a of a certified row.
    Kernel {
        #[arg(long)]
        row: String,
    },
    /// Vaserstein symbol of a certified length-3 row.
    Vsymbol {
        #[arg(long)]
        row: String,
        #[arg(long, default_value = "+1")]
        orientation: String,
    },
    /// SL4-action on a length-3 row through the symbol.
    Act {
        #[arg(long)]
        row: String,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value = "+1")]
        orientation: String,
    },
    /// Orthogonal sum of two representatives.
    WittAdd {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Representative-level negation sigma M^{-1} sigma.
    WittNeg {
        #[arg(long)]
        matrix: String,
    },
    /// Hyperbolic map M -> M^t psi M.
    Hyp {
        #[arg(long)]
        matrix: String,
    },
    /// Formal difference [M] - [psi] (data only).
    Eta {
        #[arg(long)]
        matrix: String,
    },
    /// Xi map of a free triple (g, f, optional alpha).
    Xi {
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Check a stabilized congruence witness.
    VerifyWitness {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        witness: String,
        #[arg(long, default_value = "E")]
        group: String,
    },
    /// Exhaustive orbit census over a finite ring.
    Census {
        #[arg(long)]
        ring: String,
        /// Object kind: "umrows" or "alt".
        #[arg(long)]
        object: String,
        /// Row length or matrix size.
        #[arg(long)]
        n: usize,
        /// Generator set: E, SL, Sp or ESp.
        #[arg(long, default_value = "E")]
        gens: String,
        #[arg(long, default_value_t = 0)]
        stab_cap: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include re-checkable witness words in the output document.
        #[arg(long)]
        witnesses: bool,
    },
    /// Compare the orbit partitions of two generator sets.
    CompareGens {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gens_a: String,
        #[arg(long)]
        gens_b: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Inputs are file paths or inline JSON (anything starting with '{').
fn read_input(spec: &str) -> Result<Value, Error> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        fs::read_to_string(spec)
            .map_err(|e| Error::Parse(format!("cannot read {}: {}", spec, e)))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("invalid JSON: {}", e)))
}

fn load_alt(spec: &str) -> Result<AlternatingMatrix, Error> {
    jsonio::alt_from_value(&read_input(spec)?)
}

fn load_matrix(spec: &str) -> Result<ExactMatrix, Error> {
    jsonio::matrix_from_value(&read_input(spec)?)
}

fn load_row(spec: &str) -> Result<UnimodularRow, Error> {
    jsonio::row_from_value(&read_input(spec)?)
}

fn orientation(tag: &str) -> Result<Orientation, Error> {
    Orientation::from_tag(tag)
        .ok_or_else(|| Error::Parse(format!("orientation must be +1 or -1, got {:?}", tag)))
}

fn group_flag(tag: &str) -> Result<GroupFlag, Error> {
    GroupFlag::from_tag(tag)
        .ok_or_else(|| Error::Parse(format!("group must be E or SL, got {:?}", tag)))
}

fn object_kind(tag: &str, n: usize) -> Result<ObjectKind, Error> {
    match tag {
        "umrows" => Ok(ObjectKind::UnimodularRows { n }),
        "alt" => Ok(ObjectKind::AlternatingInvertible { size: n }),
        other => Err(Error::Parse(format!(
            "object must be \"umrows\" or \"alt\", got {:?}",
            other
        ))),
    }
}

fn generator_set(tag: &str) -> Result<GeneratorSet, Error> {
    GeneratorSet::from_tag(tag)
        .ok_or_else(|| Error::Parse(format!("unknown generator set {:?}", tag)))
}

fn rep_doc(rep: &WittRep) -> Value {
    json!({
        "pf": rep.pfaffian().to_canonical_string(),
        "rep": jsonio::alt_to_value(rep.rep()),
    })
}

fn run(cmd: &Cmd) -> Result<Value, Error> {
    match cmd {
        Cmd::Pf { matrix } => {
            let m = load_alt(matrix)?;
            Ok(json!({"pf": m.pfaffian().to_canonical_string()}))
        }
        Cmd::Det { matrix } => {
            let m = load_matrix(matrix)?;
            Ok(json!({"det": m.det()?.to_canonical_string()}))
        }
        Cmd::Suslin { row, raw, cap } => {
            let (ring, a, b) = jsonio::raw_row_from_value(&read_input(row)?)?;
            if !raw {
                UnimodularRow::new(ring, a.clone(), b.clone())?;
            }
            let m = suslin_matrix(&a, &b, *cap)?;
            Ok(jsonio::matrix_to_value(&m))
        }
        Cmd::Kernel { row } => {
            let r = load_row(row)?;
            Ok(jsonio::matrix_to_value(&kernel_idempotent(&r)))
        }
        Cmd::Vsymbol { row, orientation: o } => {
            let inp = SymbolInput::new(load_row(row)?, orientation(o)?)?;
            Ok(jsonio::alt_to_value(&vaserstein_symbol(&inp)?))
        }
        Cmd::Act { row, phi, orientation: o } => {
            let inp = SymbolInput::new(load_row(row)?, orientation(o)?)?;
            let phi = load_matrix(phi)?;
            Ok(jsonio::row_to_value(&sl4_act(&inp, &phi)?))
        }
        Cmd::WittAdd { left, right } => {
            let x = WittRep::new(load_alt(left)?, GroupFlag::Elementary);
            let y = WittRep::new(load_alt(right)?, GroupFlag::Elementary);
            Ok(rep_doc(&x.add(&y)?))
        }
        Cmd::WittNeg { matrix } => {
            let x = WittRep::new(load_alt(matrix)?, GroupFlag::Elementary);
            Ok(rep_doc(&x.neg()?))
        }
        Cmd::Hyp { matrix } => {
            let m = load_matrix(matrix)?;
            Ok(rep_doc(&hyperbolic(&m, None)?))
        }
        Cmd::Eta { matrix } => {
            let x = WittRep::new(load_alt(matrix)?, GroupFlag::Elementary);
            let v = eta(&x)?;
            Ok(json!({
                "plus": jsonio::alt_to_value(&v.plus),
                "minus": jsonio::alt_to_value(&v.minus),
                "zero": v.zero,
            }))
        }
        Cmd::Xi { g, f, alpha } => {
            let g = load_alt(g)?;
            let f = load_alt(f)?;
            let alpha = alpha.as_deref().map(load_matrix).transpose()?;
            let t = FreeTriple::new(g, f, alpha)?;
            Ok(rep_doc(&xi_triple(&t, None)?))
        }
        Cmd::VerifyWitness { left, right, witness, group } => {
            let m = load_alt(left)?;
            let n = load_alt(right)?;
            let w = jsonio::witness_from_value(&read_input(witness)?, m.ring())?;
            let flag = group_flag(group)?;
            let check = check_equiv_witness(&m, &n, &w, flag)?;
            Ok(jsonio::witness_check_to_value(&check))
        }
        Cmd::Census { ring, object, n, gens, stab_cap, budget, seed, witnesses } => {
            let ring = jsonio::ring_from_value(&read_input(ring)?)?;
            let mut job = CensusJob::new(ring, object_kind(object, *n)?, generator_set(gens)?);
            job.stab_cap = *stab_cap;
            job.budget = *budget;
            job.seed = *seed;
            let res = orbit_bfs(&job)?;
            let mut doc = jsonio::census_report(&res);
            if *witnesses {
                let mut ws = Vec::new();
                for path in &res.witnesses {
                    let word = match job.object {
                        ObjectKind::AlternatingInvertible { .. } => {
                            let (w, _) = path_to_witness_word(&job, path)?;
                            jsonio::witness_to_value(&w)
                        }
                        ObjectKind::UnimodularRows { .. } => json!(null),
                    };
                    ws.push(json!({
                        "rep": path.rep_key,
                        "object": path.object_key,
                        "word": word,
                    }));
                }
                doc.as_object_mut()
                    .expect("report is an object")
                    .insert("witnesses".into(), Value::Array(ws));
            }
            Ok(doc)
        }
        Cmd::CompareGens { ring, object, n, gens_a, gens_b, budget, seed } => {
            let ring = jsonio::ring_from_value(&read_input(ring)?)?;
            let mut job = CensusJob::new(ring, object_kind(object, *n)?, generator_set(gens_a)?);
            job.budget = *budget;
            job.seed = *seed;
            let report = compare_generator_sets(&job, generator_set(gens_a)?, generator_set(gens_b)?)?;
            Ok(jsonio::compare_report_value(&report))
        }
    }
}

/// Minimal aligned-text rendering; the JSON document stays the interface.
fn render_table(doc: &Value) -> String {
    fn matrix_lines(rows: &[Value], out: &mut String) {
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .map(|xs| xs.iter().map(cell_string).collect())
                    .unwrap_or_default()
            })
            .collect();
        let widths: Vec<usize> = (0..cells.first().map(|r| r.len()).unwrap_or(0))
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(widths.iter())
                .map(|(c, w)| format!("{:>width$}", c, width = w))
                .collect();
            out.push_str(&format!("[ {} ]\n", line.join("  ")));
        }
    }
    fn cell_string(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }

    let mut out = String::new();
    if let Some(obj) = doc.as_object() {
        if let Some(Value::Array(rows)) = obj.get("rows") {
            matrix_lines(rows, &mut out);
            return out;
        }
        if let Some(Value::Array(orbits)) = obj.get("orbits") {
            out.push_str(&format!(
                "objects: {}   orbits: {}\n",
                obj.get("object_count").map(cell_string).unwrap_or_default(),
                orbits.len()
            ));
            for (i, orbit) in orbits.iter().enumerate() {
                let size = orbit.get("size").map(cell_string).unwrap_or_default();
                let pf = orbit
                    .get("pf")
                    .map(|p| format!("  pf = {}", cell_string(p)))
                    .unwrap_or_default();
                out.push_str(&format!("orbit {}: size {}{}\n", i, size, pf));
            }
            return out;
        }
        for (k, v) in obj {
            out.push_str(&format!("{} = {}\n", k, cell_string(v)));
        }
        return out;
    }
    format!("{}\n", doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(doc) => {
            let rendered = match cli.format {
                Format::Json => format!("{}\n", jsonio::to_canonical_string(&doc)),
                Format::Table => render_table(&doc),
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, rendered) {
                        eprintln!(
                            "{}",
                            jsonio::to_canonical_string(&json!({
                                "error": {"code": "Io", "message": e.to_string()}
                            }))
                        );
                        return ExitCode::from(1);
                    }
                }
                None => print!("{}", rendered),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!(
                "{}",
                jsonio::to_canonical_string(&json!({
                    "error": {"code": err.code(), "message": err.to_string()}
                }))
            );
            match err {
                Error::Parse(_) | Error::BadRing(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
