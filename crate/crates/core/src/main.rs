use std::fmt::Display;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nappi_witten::classify::{actions_of_window, classify, iso_check, twist, Outcome};
use nappi_witten::exactpoly::Var;
use nappi_witten::irreducible::{decide, orbit_oracle, reduction_chain, witness, Verdict};
use nappi_witten::modfam::{ModuleSpec, Representation};
use nappi_witten::specdsl::{
    format_action_data, format_spec, parse_action_data, parse_poly_in, parse_spec, SpecDocument,
};
use nappi_witten::verify::verify_module;

const FORMATS: &str = "\
SPEC FILES
  key = value lines, `#` starts a comment.
    algebra      H4 | AffineH4 | Vir00 | AffineVirasoroH4
    family       Mg0 M0g Mhb Mbh Mab M0 (H4), MTildeAlphaBeta MTildeF (AffineH4),
                 Vir00 (Vir00), AffVir (AffineVirasoroH4)
    g            polynomial in s (Mg0, M0g)
    a1 a2 b      rationals (Mhb, Mbh);  a b  rationals (Mab)
    base         H4 family of an MTildeAlphaBeta or AffVir module, plus its keys
    alpha        nonzero rational
    beta.K       rational for every K in [-window, window], beta.0 = 0
    f.K          polynomial in s for every K in [-window, window], f.0 = s
    lambda       nonzero rational (Vir00, AffVir)
    fpoly        polynomial in w0 (Vir00)
    window       loop window; a run default for H4 and Vir00 documents
    test_degree  default test degree for `verify`
  Polynomials: + - * ^, parentheses, variables s d d0 w0, rationals like 3/4.

ACTION DATA FILES
  algebra = <algebra>, window = <N> (not needed for H4), then one line per
  generator, e.g. `p@-1 = 2*s + d`, `dvir@1 = d0 + 3`, `w@2 = 1`.

REPORTS
  verify       PAIR <x> <y> POLY <v> RESIDUAL <r> PASS|FAIL|SKIP ... SUMMARY
  classify     RESULT classified + normal-form spec, or RESULT rejected + REASON
  irreducible  VERDICT, then STEP lines (certificate) or IDEAL/CLOSURE lines
               (witness), then ORACLE
  iso          ISO true|false

EXIT STATUS
  0 success (verification passed, data classified, isomorphic), 1 negative
  result (failure, rejection, not isomorphic), 2 invalid input.";

#[derive(Parser)]
#[command(name = "nwmod", version, about = "Cartan-free rank-one modules over H4 and its extensions", after_help = FORMATS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the bracket relations of a spec on a window of generators.
    Verify {
        spec: PathBuf,
        #[arg(long)]
        window: Option<i64>,
        #[arg(long)]
        test_degree: Option<u32>,
    },
    /// Print the action data of a spec.
    Actions {
        spec: PathBuf,
        #[arg(long)]
        window: Option<i64>,
    },
    /// Recover the family of raw action data, or name the violated condition.
    Classify { actions: PathBuf },
    /// Decide irreducibility and print a certificate or witness.
    Irreducible {
        spec: PathBuf,
        /// Seed of the reduction chain and the orbit oracle.
        #[arg(long)]
        seed_poly: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        #[arg(long, default_value_t = 6)]
        cap_degree: u32,
    },
    /// Twist an H4 spec by p -> -q, q -> p, r -> r, s -> -s.
    Twist { spec: PathBuf },
    /// Compare two MTildeAlphaBeta specs.
    Iso { a: PathBuf, b: PathBuf },
}

const DEFAULT_WINDOW: i64 = 3;
const DEFAULT_TEST_DEGREE: u32 = 3;

enum Failure {
    Negative,
    Input(String),
}

fn input<E: Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(input)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<SpecDocument, Failure> {
    parse_spec(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run_window(doc: &SpecDocument, flag: Option<i64>) -> i64 {
    flag.or(doc.window)
        .or(doc.spec.window())
        .unwrap_or(DEFAULT_WINDOW)
}

fn verify(path: &Path, window: Option<i64>, test_degree: Option<u32>) -> Result<(), Failure> {
    let doc = load_spec(path)?;
    let n = run_window(&doc, window);
    let d = test_degree
        .or(doc.test_degree)
        .unwrap_or(DEFAULT_TEST_DEGREE);
    let report = verify_module(&doc.spec, n, d).map_err(input)?;
    print!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn actions(path: &Path, window: Option<i64>) -> Result<(), Failure> {
    let doc = load_spec(path)?;
    let n = match doc.spec {
        ModuleSpec::H4(_) => 0,
        _ => run_window(&doc, window),
    };
    let data = actions_of_window(&doc.spec, n).map_err(input)?;
    print!("{}", format_action_data(&data));
    Ok(())
}

fn classify_cmd(path: &Path) -> Result<(), Failure> {
    let text = read(path)?;
    let data =
        parse_action_data(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    match classify(&data).map_err(input)? {
        Outcome::Classified(spec) => {
            println!("RESULT classified");
            let doc = SpecDocument {
                spec,
                window: None,
                test_degree: None,
            };
            print!("{}", format_spec(&doc));
            Ok(())
        }
        Outcome::Rejected(v) => {
            println!("RESULT rejected");
            println!("REASON {v}");
            Err(Failure::Negative)
        }
    }
}

fn irreducible(
    path: &Path,
    seed: Option<String>,
    max_degree: u32,
    cap_degree: u32,
) -> Result<(), Failure> {
    let doc = load_spec(path)?;
    let spec = &doc.spec;
    let ring = spec.var_set();
    let seed_text = seed.unwrap_or_else(|| {
        if ring.vars().contains(&Var::S) {
            "s^3".into()
        } else {
            "d0^3".into()
        }
    });
    let seed =
        parse_poly_in(&seed_text, ring).map_err(|e| Failure::Input(format!("--seed-poly: {e}")))?;
    let decision = decide(spec).map_err(input)?;
    println!("VERDICT {} BASIS {}", decision.verdict, decision.basis);
    match decision.verdict {
        Verdict::Irreducible => {
            let cert = reduction_chain(spec, &seed).map_err(input)?;
            print!("{cert}");
        }
        Verdict::Reducible => {
            let w = witness(spec).map_err(input)?;
            print!("{w}");
        }
    }
    let reaches = orbit_oracle(spec, &seed, max_degree, cap_degree).map_err(input)?;
    println!(
        "ORACLE seed {} max_degree {max_degree} cap_degree {cap_degree} generates {reaches}",
        seed.compact()
    );
    Ok(())
}

fn twist_cmd(path: &Path) -> Result<(), Failure> {
    let doc = load_spec(path)?;
    let ModuleSpec::H4(fam) = &doc.spec else {
        return Err(Failure::Input(format!(
            "twist is defined on H4 families, got {}",
            doc.spec.family_name()
        )));
    };
    let twisted = twist(fam).map_err(input)?;
    let out = SpecDocument {
        spec: ModuleSpec::H4(twisted),
        ..doc
    };
    print!("{}", format_spec(&out));
    Ok(())
}

fn iso(a: &Path, b: &Path) -> Result<(), Failure> {
    let (da, db) = (load_spec(a)?, load_spec(b)?);
    let (ModuleSpec::Affine(sa), ModuleSpec::Affine(sb)) = (&da.spec, &db.spec) else {
        return Err(Failure::Input(
            "iso compares two MTildeAlphaBeta specs".into(),
        ));
    };
    let same = iso_check(sa, sb).map_err(input)?;
    println!("ISO {same}");
    if same {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            spec,
            window,
            test_degree,
        } => verify(&spec, window, test_degree),
        Command::Actions { spec, window } => actions(&spec, window),
        Command::Classify { actions } => classify_cmd(&actions),
        Command::Irreducible {
            spec,
            seed_poly,
            max_degree,
            cap_degree,
        } => irreducible(&spec, seed_poly, max_degree, cap_degree),
        Command::Twist { spec } => twist_cmd(&spec),
        Command::Iso { a, b } => iso(&a, &b),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
