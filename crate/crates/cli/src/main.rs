//! `timely`: check, canonicalise, solve and compare timely constraints.
//!
//! Exit status is 0 for an affirmative verdict, 1 for a well-formed negative
//! one (unsatisfiable, violated, not contained) and 2 for usage or input
//! errors.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use timely_core::oracle::{oracle_max_difference, oracle_minimum, EnumerationBox};
use timely_core::{
    canonicalise_with, compare, load_schedule, load_spec, minimal_schedule, subsumption_witness, tight_witness,
    unbounded_witness, Bound, CanonicalForm, Engine, Error, TimelySpec,
};

use render::{bound_json, matrix_json, matrix_table, schedule_table, unsat_reason_json, unsat_reason_text};

#[derive(Parser)]
#[command(name = "timely", version, about = "Solver for timely constraints on action schedules")]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,

    /// All-pairs shortest-path algorithm: auto, dense or sparse.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_engine)]
    engine: Engine,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability; explain an unsatisfiable spec.
    Check { spec: PathBuf },
    /// Print the canonical form.
    Canon {
        spec: PathBuf,
        /// Print the class matrix (all -inf when unsatisfiable).
        #[arg(long)]
        class: bool,
    },
    /// Print the minimal satisfying schedule.
    Solve { spec: PathBuf },
    /// Check a schedule against a spec and list violated constraints.
    Verify { spec: PathBuf, schedule: PathBuf },
    /// Print a schedule reaching the canonical bound on t(to) - t(from).
    Witness {
        spec: PathBuf,
        from: String,
        to: String,
        /// For unbounded pairs: the difference the schedule must reach.
        #[arg(long, value_name = "BOUND")]
        at_least: Option<String>,
    },
    /// Compare two specs by strictness.
    Compare {
        first: PathBuf,
        second: PathBuf,
        /// Also print a schedule satisfying the first spec but not the second.
        #[arg(long)]
        separating: bool,
    },
    /// Write the pointwise minimum of two specs.
    Conjoin {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Brute-force reference results for small specs.
    #[command(hide = true)]
    Oracle {
        spec: PathBuf,
        /// Also report the largest t(to) - t(from) found in the box.
        #[arg(long, num_args = 2, value_names = ["FROM", "TO"])]
        pair: Option<Vec<String>>,
        /// Upper limit of the enumeration box (default: sum of |bounds|).
        #[arg(long, value_name = "BOUND")]
        upper: Option<String>,
    },
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A finished command: text for stdout and the exit status.
struct Report {
    stdout: String,
    code: u8,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report { stdout, code: 0 }
    }

    fn negative(stdout: String) -> Self {
        Report { stdout, code: 1 }
    }
}

enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<Report, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_spec(path: &Path) -> Result<TimelySpec, Failure> {
    let text = read(path)?;
    load_spec(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.stdout);
            ExitCode::from(report.code)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let engine = cli.engine;
    match &cli.command {
        Command::Check { spec } => cmd_check(&read_spec(spec)?, engine, cli.json),
        Command::Canon { spec, class } => cmd_canon(&read_spec(spec)?, engine, *class, cli.json),
        Command::Solve { spec } => cmd_solve(&read_spec(spec)?, engine, cli.json),
        Command::Verify { spec, schedule } => cmd_verify(&read_spec(spec)?, schedule, cli.json),
        Command::Witness {
            spec,
            from,
            to,
            at_least,
        } => cmd_witness(&read_spec(spec)?, engine, from, to, at_least.as_deref(), cli.json),
        Command::Compare {
            first,
            second,
            separating,
        } => cmd_compare(&read_spec(first)?, &read_spec(second)?, engine, *separating, cli.json),
        Command::Conjoin { first, second, output } => {
            cmd_conjoin(&read_spec(first)?, &read_spec(second)?, output.as_deref())
        }
        Command::Oracle { spec, pair, upper } => {
            cmd_oracle(&read_spec(spec)?, pair.as_deref(), upper.as_deref(), cli.json)
        }
    }
}

fn unsat_report(form: &CanonicalForm, json: bool, command: &str) -> Report {
    let reason = form.reason().expect("unsatisfiable forms carry a reason");
    if json {
        Report::negative(pretty(&json!({
            "command": command,
            "satisfiable": false,
            "reason": unsat_reason_json(form, reason),
        })))
    } else {
        Report::negative(format!("UNSATISFIABLE: {}\n", unsat_reason_text(form, reason)))
    }
}

fn cmd_check(spec: &TimelySpec, engine: Engine, json: bool) -> Outcome {
    let form = canonicalise_with(spec, engine);
    if !form.satisfiable() {
        return Ok(unsat_report(&form, json, "check"));
    }
    Ok(Report::ok(if json {
        pretty(&json!({"command": "check", "satisfiable": true}))
    } else {
        "SATISFIABLE\n".to_string()
    }))
}

fn cmd_canon(spec: &TimelySpec, engine: Engine, class: bool, json: bool) -> Outcome {
    let form = canonicalise_with(spec, engine);
    let matrix = if class { form.class_matrix() } else { form.matrix() };
    if json {
        // A spec document with extra fields, so the output loads as a spec.
        let mut doc = serde_json::to_value(form.to_spec().to_document()).expect("documents serialize");
        let obj = doc.as_object_mut().expect("spec documents are objects");
        obj.insert("satisfiable".into(), json!(form.satisfiable()));
        obj.insert("matrix".into(), matrix_json(matrix));
        if let Some(reason) = form.reason() {
            obj.insert("reason".into(), unsat_reason_json(&form, reason));
        }
        return Ok(Report::ok(pretty(&doc)));
    }
    Ok(Report::ok(matrix_table(form.actions(), matrix)))
}

fn cmd_solve(spec: &TimelySpec, engine: Engine, json: bool) -> Outcome {
    let form = canonicalise_with(spec, engine);
    if !form.satisfiable() {
        return Ok(unsat_report(&form, json, "solve"));
    }
    let schedule = minimal_schedule(&form, spec)?;
    Ok(Report::ok(if json {
        schedule.to_json() + "\n"
    } else {
        schedule_table(&schedule)
    }))
}

fn cmd_verify(spec: &TimelySpec, schedule_path: &Path, json: bool) -> Outcome {
    let text = read(schedule_path)?;
    let schedule = load_schedule(&text, spec).map_err(|e| Failure::Input(format!("{}: {e}", schedule_path.display())))?;
    let violations = spec.check_schedule(&schedule)?;
    if json {
        let list: Vec<Value> = violations
            .iter()
            .map(|v| {
                json!({
                    "from": v.from,
                    "to": v.to,
                    "bound": bound_json(&v.bound),
                    "actual": v.actual.to_string(),
                })
            })
            .collect();
        let body = pretty(&json!({"command": "verify", "ok": violations.is_empty(), "violations": list}));
        return Ok(if violations.is_empty() { Report::ok(body) } else { Report::negative(body) });
    }
    if violations.is_empty() {
        return Ok(Report::ok("OK\n".to_string()));
    }
    let noun = if violations.len() == 1 { "constraint" } else { "constraints" };
    let mut out = format!("VIOLATED: {} {noun}\n", violations.len());
    for v in &violations {
        out.push_str(&format!("  {v}\n"));
    }
    Ok(Report::negative(out))
}

fn cmd_witness(
    spec: &TimelySpec,
    engine: Engine,
    from: &str,
    to: &str,
    at_least: Option<&str>,
    json: bool,
) -> Outcome {
    let (i, j) = (spec.index_of(from)?, spec.index_of(to)?);
    if i == j {
        return Err(Error::SameAction(from.to_string()).into());
    }
    let form = canonicalise_with(spec, engine);
    if !form.satisfiable() {
        return Ok(unsat_report(&form, json, "witness"));
    }
    let schedule = match (form.get(i, j), at_least) {
        (Bound::Finite(_), None) => tight_witness(spec, &form, i, j)?,
        (Bound::Finite(v), Some(_)) => {
            return Err(Failure::Input(format!(
                "t({to}) - t({from}) is bounded by {v}; omit --at-least for a tight witness"
            )))
        }
        (_, Some(text)) => {
            let k = match Bound::parse(text, spec.model())? {
                Bound::Finite(k) => k,
                other => return Err(Failure::Input(format!("--at-least needs a finite bound, got {other}"))),
            };
            unbounded_witness(spec, &form, i, j, &k)?
        }
        (_, None) => {
            return Err(Failure::Input(format!(
                "t({to}) - t({from}) is unbounded; pass --at-least <BOUND>"
            )))
        }
    };
    Ok(Report::ok(if json {
        schedule.to_json() + "\n"
    } else {
        schedule_table(&schedule)
    }))
}

fn cmd_compare(first: &TimelySpec, second: &TimelySpec, engine: Engine, separating: bool, json: bool) -> Outcome {
    if !first.same_domain(second) {
        return Err(Error::DomainMismatch("compared specs must declare the same actions".into()).into());
    }
    let (f1, f2) = (canonicalise_with(first, engine), canonicalise_with(second, engine));
    let verdict = compare(&f1, &f2)?;
    let separator = if separating && !verdict.relation.first_contained() && f1.satisfiable() {
        subsumption_witness(first, &f1, &f2)?
    } else {
        None
    };
    let entry = |pos: Option<(usize, usize)>, a: &CanonicalForm, b: &CanonicalForm| {
        pos.map(|(i, j)| {
            (
                f1.actions()[i].clone(),
                f1.actions()[j].clone(),
                a.class_matrix().get(i, j).clone(),
                b.class_matrix().get(i, j).clone(),
            )
        })
    };
    let first_exceeds = entry(verdict.first_exceeds, &f1, &f2);
    let second_exceeds = entry(verdict.second_exceeds, &f2, &f1);
    let out = if json {
        let ent = |e: &Option<(String, String, Bound, Bound)>| match e {
            None => Value::Null,
            Some((a, b, x, y)) => json!({"from": a, "to": b, "larger": bound_json(x), "smaller": bound_json(y)}),
        };
        let mut doc = json!({
            "command": "compare",
            "relation": verdict.relation.as_str(),
            "first_exceeds": ent(&first_exceeds),
            "second_exceeds": ent(&second_exceeds),
        });
        if let Some(s) = &separator {
            doc["separating_schedule"] = serde_json::to_value(s.to_document()).expect("documents serialize");
        }
        pretty(&doc)
    } else {
        let mut out = format!("{}\n", verdict.relation.as_str());
        if let Some((a, b, x, y)) = &first_exceeds {
            out.push_str(&format!("first exceeds second at ({a},{b}): {x} > {y}\n"));
        }
        if let Some((a, b, x, y)) = &second_exceeds {
            out.push_str(&format!("second exceeds first at ({a},{b}): {x} > {y}\n"));
        }
        if let Some(s) = &separator {
            out.push_str("separating schedule:\n");
            out.push_str(&schedule_table(s));
        }
        out
    };
    Ok(if verdict.relation.first_contained() {
        Report::ok(out)
    } else {
        Report::negative(out)
    })
}

fn cmd_conjoin(first: &TimelySpec, second: &TimelySpec, output: Option<&Path>) -> Outcome {
    let both = first.conjoin(second)?;
    let text = both.to_json() + "\n";
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(Report::ok(String::new()))
        }
        None => Ok(Report::ok(text)),
    }
}

fn cmd_oracle(spec: &TimelySpec, pair: Option<&[String]>, upper: Option<&str>, json: bool) -> Outcome {
    let mut bx = EnumerationBox::for_spec(spec);
    if let Some(text) = upper {
        match Bound::parse(text, spec.model())? {
            Bound::Finite(u) if !u.is_negative() => bx.upper = u,
            other => return Err(Failure::Input(format!("--upper needs a nonnegative bound, got {other}"))),
        }
    }
    let minimum = oracle_minimum(spec)?;
    let max = match pair {
        Some([from, to]) => {
            let (i, j) = (spec.index_of(from)?, spec.index_of(to)?);
            Some((from, to, oracle_max_difference(spec, &bx, i, j)?))
        }
        _ => None,
    };
    let out = if json {
        let mut doc = json!({
            "command": "oracle",
            "box": {"upper": bx.upper.to_string(), "step": bx.step.to_string()},
            "satisfiable": minimum.is_some(),
            "minimum": minimum.as_ref().map(|m| {
                spec.actions().iter().zip(m).map(|(a, t)| (a.clone(), Value::String(t.to_string()))).collect::<serde_json::Map<_, _>>()
            }),
        });
        if let Some((from, to, best)) = &max {
            doc["max_difference"] = json!({"from": from, "to": to, "value": best.as_ref().map(ToString::to_string)});
        }
        pretty(&doc)
    } else {
        let mut out = format!("box: [0, {}] step {}\n", bx.upper, bx.step);
        match &minimum {
            Some(m) => {
                out.push_str("SATISFIABLE\nminimum:\n");
                let schedule = timely_core::Schedule::new(spec, m.clone())?;
                out.push_str(&schedule_table(&schedule));
            }
            None => out.push_str("UNSATISFIABLE\n"),
        }
        if let Some((from, to, best)) = &max {
            let value = best.as_ref().map_or("none".to_string(), ToString::to_string);
            out.push_str(&format!("max t({to}) - t({from}) in box: {value}\n"));
        }
        out
    };
    Ok(if minimum.is_some() { Report::ok(out) } else { Report::negative(out) })
}
