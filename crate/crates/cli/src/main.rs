mod json;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wzforms::batch::{fuzz_params, round_trip};
use wzforms::{
    conjugate_polygamma, decompose, generate, integer_linear_decompose, is_wz_form, orbital_residue, parse_expression,
    parse_polynomial, Error, RationalFunction, WZForm,
};

use json::{RepJson, TupleJson};

#[derive(Parser)]
#[command(name = "wzforms", version, about = "Exact computations with rational WZ-forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Inputs {
    /// Variable order, comma separated. Optional for a JSON tuple input.
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    /// One expression file per component, or a single JSON tuple document.
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Checks the compatibility conditions.
    Verify(Inputs),
    /// Additive decomposition, written as JSON.
    Decompose {
        #[command(flatten)]
        inputs: Inputs,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prints the components described by a JSON representation.
    Generate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Orbital residue of one rational function.
    Residue {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// The shifted variable.
        #[arg(long)]
        wrt: String,
        /// The irreducible base polynomial.
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = 1)]
        mult: u32,
        file: PathBuf,
    },
    /// Integer-linear decomposition of a polynomial.
    Intlinear {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        poly: String,
    },
    /// Polygamma conjugate of a JSON representation.
    Conjugate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        latex: bool,
    },
    /// Random generate, decompose, generate round trips.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: u64,
    },
}

/// Exit status and the message for the diagnostic stream.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 3, message: message.into() }
}

fn from_lib(e: Error) -> Failure {
    match e {
        Error::NotAWZForm(_) => Failure { code: 2, message: e.to_string() },
        _ => usage(e.to_string()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_in(text: &str, vars: &[String], path: &Path) -> Result<RationalFunction, Failure> {
    parse_expression(text, vars).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_tuple(inputs: &Inputs) -> Result<(Vec<String>, Vec<RationalFunction>), Failure> {
    if let [path] = inputs.files.as_slice() {
        if path.extension().is_some_and(|e| e == "json") {
            let t: TupleJson = serde_json::from_str(&read(path)?)
                .map_err(|e| usage(format!("{}: malformed JSON: {e}", path.display())))?;
            if !inputs.vars.is_empty() && inputs.vars != t.vars {
                return Err(usage("--vars disagrees with the tuple document"));
            }
            let comps = t.components.iter().map(|c| parse_in(c, &t.vars, path)).collect::<Result<_, _>>()?;
            return Ok((t.vars, comps));
        }
    }
    if inputs.vars.is_empty() {
        return Err(usage("--vars is required for expression files"));
    }
    let comps = inputs.files.iter().map(|p| parse_in(&read(p)?, &inputs.vars, p)).collect::<Result<Vec<_>, _>>()?;
    if comps.len() != inputs.vars.len() {
        return Err(usage(format!("{} components for {} variables", comps.len(), inputs.vars.len())));
    }
    Ok((inputs.vars.clone(), comps))
}

fn load_rep(path: &Path) -> Result<(Vec<String>, wzforms::AdditiveRepresentation), Failure> {
    let j = RepJson::parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let rep = j.to_rep().map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok((j.vars, rep))
}

fn var_index(vars: &[String], name: &str) -> Result<usize, Failure> {
    vars.iter().position(|v| v == name).ok_or_else(|| usage(format!("`{name}` is not among --vars")))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Verify(inputs) => {
            let (_, comps) = load_tuple(&inputs)?;
            let ok = is_wz_form(&comps);
            println!("WZ-form: {}", if ok { "yes" } else { "no" });
            Ok(if ok { 0 } else { 1 })
        }
        Command::Decompose { inputs, out } => {
            let (vars, comps) = load_tuple(&inputs)?;
            let rep = decompose(&WZForm::new(comps).map_err(from_lib)?).map_err(from_lib)?;
            let text = RepJson::from_rep(&rep, &vars).to_pretty_string();
            match out {
                Some(p) => std::fs::write(&p, text + "\n").map_err(|e| usage(format!("{}: {e}", p.display())))?,
                None => println!("{text}"),
            }
            Ok(0)
        }
        Command::Generate { input } => {
            let (vars, rep) = load_rep(&input)?;
            for c in generate(&rep).components() {
                println!("{}", c.display(&vars));
            }
            Ok(0)
        }
        Command::Residue { vars, wrt, at, mult, file } => {
            let i = var_index(&vars, &wrt)?;
            let f = parse_in(&read(&file)?, &vars, &file)?;
            let d = parse_polynomial(&at, &vars).map_err(|e| usage(format!("--at: {e}")))?;
            match orbital_residue(&f, &d, mult, i).map_err(from_lib)? {
                Some(class) => println!("[{}]", class.representative.display(&vars)),
                None => println!("0"),
            }
            Ok(0)
        }
        Command::Intlinear { vars, poly } => {
            let p = parse_polynomial(&poly, &vars).map_err(|e| usage(e.to_string()))?;
            match integer_linear_decompose(&p).map_err(from_lib)? {
                Some(d) => {
                    let v: Vec<String> = d.v.entries().iter().map(|a| a.to_string()).collect();
                    println!("({}, ({}))", d.p.display(&["Z".to_string()]), v.join(","));
                }
                None => println!("not integer-linear"),
            }
            Ok(0)
        }
        Command::Conjugate { input, latex } => {
            let (vars, rep) = load_rep(&input)?;
            let e = conjugate_polygamma(&rep);
            println!("{}", if latex { e.latex(&vars) } else { e.display(&vars) });
            Ok(0)
        }
        Command::Fuzz { seed, count } => {
            for s in seed..seed.saturating_add(count) {
                if let Err(c) = round_trip(s, &fuzz_params(s)) {
                    let names: Vec<String> = (1..=c.rep.nvars()).map(|k| format!("x{k}")).collect();
                    println!("counterexample at seed {}: {}", c.seed, c.reason);
                    println!("{}", RepJson::from_rep(&c.rep, &names).to_pretty_string());
                    return Ok(1);
                }
            }
            println!("{count} round trips from seed {seed}: ok");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
