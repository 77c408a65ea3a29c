//! Command-line front end: check algebraic structures from text files,
//! build derived objects, search for CHYBE solutions, and substitute
//! rational values for the function-field indeterminate.
//!
//! Exit codes: 0 all checks pass, 1 a check or domain precondition fails,
//! 2 the input cannot be parsed. Certificates go to standard output,
//! diagnostics to standard error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use homlie::cert::Certificate;
use homlie::error::HomlieError;
use homlie::format::{
    parse, parse_scalar, resolve_associative, resolve_representation, serialize, substitute_file,
    AlgebraFile, Block, FieldDecl,
};
use homlie::homlie::{check_hom_lie, HomLieAlgebra};
use homlie::linmap::LinearMap;
use homlie::report::CheckReport;
use homlie::reps::{check_representation, dual_rep, semidirect};
use homlie::bialgebra::{
    check_bialgebra, check_manin_triple, check_quadratic, double, split, HomLieBialgebra,
    ManinTriple, QuadraticHomLie,
};
use homlie::derivations::{compute_derivations, derivation_homlie};
use homlie::multilinear::extend_map;
use homlie::scalar::Scalar;
use homlie::yangbaxter::{
    check_chybe, check_conr, check_o_operator, coboundary_delta, induced_dual_bracket,
    search_chybe, OOperator, RMatrix,
};

#[derive(Parser)]
#[command(name = "homlie", version, about = "Exact checks for Hom-Lie structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckWhat {
    Homlie,
    Rep,
    Quadratic,
    Manin,
    Bialgebra,
    Ooperator,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildWhat {
    Double,
    Split,
    DualRep,
    Semidirect,
    DerivationAlgebra,
    Delta,
}

#[derive(Subcommand)]
enum Command {
    /// Run the named structural check on a file.
    Check {
        #[arg(long, value_enum)]
        what: CheckWhat,
        path: PathBuf,
    },
    /// Construct a derived object, re-check it, and write it out.
    Build {
        #[arg(long, value_enum)]
        what: BuildWhat,
        #[arg(long)]
        out: PathBuf,
        path: PathBuf,
    },
    /// Enumerate CHYBE solutions over a finite coefficient grid.
    Search {
        /// Semicolon-separated 1-based index pairs, e.g. `1,2;1,3`.
        /// Defaults to all ordered pairs of distinct indices.
        #[arg(long)]
        support: Option<String>,
        /// Comma-separated scalar values, e.g. `-1,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Prefix for the solution files (`<prefix>-<k>.homlie`).
        #[arg(long)]
        out: Option<PathBuf>,
        path: PathBuf,
    },
    /// Evaluate every function-field scalar at a rational value.
    Substitute {
        #[arg(long)]
        var: String,
        #[arg(long)]
        value: String,
        #[arg(long)]
        out: Option<PathBuf>,
        path: PathBuf,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("HOMLIE_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                HomlieError::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn read_input(path: &PathBuf) -> Result<(Vec<u8>, AlgebraFile), HomlieError> {
    let bytes = std::fs::read(path).map_err(|e| HomlieError::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| HomlieError::Parse {
        line: 0,
        msg: "input is not UTF-8".to_string(),
    })?;
    let file = parse(&text)?;
    Ok((bytes, file))
}

fn missing(kind: &str) -> HomlieError {
    HomlieError::UnknownKey(format!("input file has no `{kind}` block"))
}

fn first_homlie(file: &AlgebraFile) -> Result<&HomLieAlgebra, HomlieError> {
    match file.find("homlie") {
        Some(Block::HomLie { algebra, .. }) => Ok(algebra),
        _ => Err(missing("homlie")),
    }
}

fn first_dual(file: &AlgebraFile) -> Result<&HomLieAlgebra, HomlieError> {
    match file.find("dual-algebra") {
        Some(Block::DualAlgebra { algebra, .. }) => Ok(algebra),
        _ => Err(missing("dual-algebra")),
    }
}

fn first_form(file: &AlgebraFile) -> Result<&LinearMap, HomlieError> {
    match file.find("bilinear-form") {
        Some(Block::BilinearForm { matrix, .. }) => Ok(matrix),
        _ => Err(missing("bilinear-form")),
    }
}

fn named_map<'a>(file: &'a AlgebraFile, name: &str) -> Result<&'a LinearMap, HomlieError> {
    match file.find_named("linear-map", name) {
        Some(Block::LinearMapBlock { map, .. }) => Ok(map),
        _ => Err(missing(&format!("linear-map named `{name}`"))),
    }
}

fn first_rmatrix(file: &AlgebraFile) -> Result<RMatrix, HomlieError> {
    match file.find("rmatrix") {
        Some(Block::RMatrixBlock { r, .. }) => RMatrix::new(r.dim, r.clone()),
        _ => Err(missing("rmatrix")),
    }
}

fn manin_from_file(file: &AlgebraFile) -> Result<ManinTriple, HomlieError> {
    let ambient = QuadraticHomLie {
        algebra: first_homlie(file)?.clone(),
        form: first_form(file)?.clone(),
    };
    Ok(ManinTriple {
        ambient,
        g_basis: named_map(file, "g")?.clone(),
        gprime_basis: named_map(file, "gprime")?.clone(),
    })
}

fn bialgebra_from_file(file: &AlgebraFile) -> Result<HomLieBialgebra, HomlieError> {
    HomLieBialgebra::new(first_homlie(file)?.clone(), first_dual(file)?.clone())
}

fn emit(cert: &Certificate) -> ExitCode {
    println!("{}", cert.to_json());
    for item in &cert.checks {
        eprintln!(
            "{}: {}{}",
            item.name,
            if item.pass { "pass" } else { "FAIL" },
            item.witness
                .as_deref()
                .map(|w| format!(" ({w})"))
                .unwrap_or_default()
        );
    }
    if cert.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, HomlieError> {
    match cli.command {
        Command::Check { what, path } => {
            let (bytes, file) = read_input(&path)?;
            let (label, report) = run_check(what, &file)?;
            let cert = Certificate::new(format!("check --what {label}"), &bytes, &report);
            Ok(emit(&cert))
        }
        Command::Build { what, out, path } => {
            let (bytes, file) = read_input(&path)?;
            let (label, report, built) = run_build(what, &file)?;
            let cert = Certificate::new(format!("build --what {label}"), &bytes, &report);
            if cert.passed() {
                std::fs::write(&out, serialize(&built)).map_err(|e| {
                    HomlieError::UnknownKey(format!("cannot write {}: {e}", out.display()))
                })?;
                eprintln!("wrote {}", out.display());
            }
            Ok(emit(&cert))
        }
        Command::Search {
            support,
            grid,
            out,
            path,
        } => {
            let (bytes, file) = read_input(&path)?;
            let g = first_homlie(&file)?;
            let support = parse_support(support.as_deref(), g.dim)?;
            let grid = parse_grid(&grid, &file.field)?;
            let found = search_chybe(g, &support, &grid)?;
            let mut report = CheckReport::new();
            report.push(
                "solutions",
                true,
                Some(format!("{} of {} candidates", found.len(), {
                    if support.is_empty() {
                        1
                    } else {
                        grid.len().pow(support.len() as u32)
                    }
                })),
            );
            for (k, rm) in found.iter().enumerate() {
                let terms: Vec<String> = rm
                    .r
                    .terms()
                    .map(|(t, c)| format!("({},{}) -> {c}", t[0] + 1, t[1] + 1))
                    .collect();
                report.push(
                    &format!("solution-{k}"),
                    true,
                    Some(if terms.is_empty() {
                        "r = 0".to_string()
                    } else {
                        terms.join(", ")
                    }),
                );
                if let Some(prefix) = &out {
                    let solution_file = solution_to_file(&file, g, rm)?;
                    let path = PathBuf::from(format!("{}-{k}.homlie", prefix.display()));
                    std::fs::write(&path, serialize(&solution_file)).map_err(|e| {
                        HomlieError::UnknownKey(format!("cannot write {}: {e}", path.display()))
                    })?;
                    eprintln!("wrote {}", path.display());
                }
            }
            let cert = Certificate::new("search", &bytes, &report);
            Ok(emit(&cert))
        }
        Command::Substitute {
            var,
            value,
            out,
            path,
        } => {
            let (_, file) = read_input(&path)?;
            let value = BigRational::from_str(&value).map_err(|e| HomlieError::Parse {
                line: 0,
                msg: format!("bad rational value: {e}"),
            })?;
            let result = substitute_file(&file, &var, &value)?;
            let text = serialize(&result);
            match out {
                Some(p) => {
                    std::fs::write(&p, text).map_err(|e| {
                        HomlieError::UnknownKey(format!("cannot write {}: {e}", p.display()))
                    })?;
                    eprintln!("wrote {}", p.display());
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_check(what: CheckWhat, file: &AlgebraFile) -> Result<(&'static str, CheckReport), HomlieError> {
    match what {
        CheckWhat::Homlie => Ok(("homlie", check_hom_lie(first_homlie(file)?))),
        CheckWhat::Rep => {
            let block = file.find("representation").ok_or_else(|| missing("representation"))?;
            let rep = resolve_representation(file, block)?;
            Ok(("rep", check_representation(&rep)))
        }
        CheckWhat::Quadratic => {
            let q = QuadraticHomLie {
                algebra: first_homlie(file)?.clone(),
                form: first_form(file)?.clone(),
            };
            Ok(("quadratic", check_quadratic(&q)))
        }
        CheckWhat::Manin => Ok(("manin", check_manin_triple(&manin_from_file(file)?))),
        CheckWhat::Bialgebra => {
            // A twist pairing violation is a failed check, not a crash.
            let report = match bialgebra_from_file(file) {
                Ok(b) => check_bialgebra(&b),
                Err(e @ HomlieError::TwistMismatch) => {
                    let mut r = CheckReport::new();
                    r.fail("twist-pairing", e.to_string());
                    r
                }
                Err(other) => return Err(other),
            };
            Ok(("bialgebra", report))
        }
        CheckWhat::Ooperator => {
            let block = file.find("representation").ok_or_else(|| missing("representation"))?;
            let rep = resolve_representation(file, block)?;
            let t = match file.find("linear-map") {
                Some(Block::LinearMapBlock { map, .. }) => map.clone(),
                _ => return Err(missing("linear-map")),
            };
            let op = OOperator::new(rep, t)?;
            Ok(("ooperator", check_o_operator(&op)))
        }
    }
}

fn run_build(
    what: BuildWhat,
    file: &AlgebraFile,
) -> Result<(&'static str, CheckReport, AlgebraFile), HomlieError> {
    let field = file.field.clone();
    match what {
        BuildWhat::Double => {
            let b = bialgebra_from_file(file)?;
            let triple = double(&b)?;
            let report = check_manin_triple(&triple);
            let out = AlgebraFile {
                field,
                blocks: vec![
                    Block::HomLie {
                        name: "double".to_string(),
                        algebra: triple.ambient.algebra.clone(),
                    },
                    Block::BilinearForm {
                        name: "pairing".to_string(),
                        over: "double".to_string(),
                        matrix: triple.ambient.form.clone(),
                    },
                    Block::LinearMapBlock {
                        name: "g".to_string(),
                        map: triple.g_basis.clone(),
                    },
                    Block::LinearMapBlock {
                        name: "gprime".to_string(),
                        map: triple.gprime_basis.clone(),
                    },
                ],
            };
            Ok(("double", report, out))
        }
        BuildWhat::Split => {
            let triple = manin_from_file(file)?;
            let b = split(&triple)?;
            let report = check_bialgebra(&b);
            let out = AlgebraFile {
                field,
                blocks: vec![
                    Block::HomLie {
                        name: "g".to_string(),
                        algebra: b.g.clone(),
                    },
                    Block::DualAlgebra {
                        name: "g-dual".to_string(),
                        algebra: b.dual.clone(),
                    },
                ],
            };
            Ok(("split", report, out))
        }
        BuildWhat::DualRep => {
            let block = file.find("representation").ok_or_else(|| missing("representation"))?;
            let rep = resolve_representation(file, block)?;
            let dual = dual_rep(&rep)?;
            let report = check_representation(&dual);
            let over = block.name();
            let _ = over;
            let out = AlgebraFile {
                field,
                blocks: vec![
                    Block::HomLie {
                        name: "g".to_string(),
                        algebra: dual.algebra.clone(),
                    },
                    representation_block("dual", "g", &dual),
                ],
            };
            Ok(("dual-rep", report, out))
        }
        BuildWhat::Semidirect => {
            let block = file.find("representation").ok_or_else(|| missing("representation"))?;
            let rep = resolve_representation(file, block)?;
            let big = semidirect(&rep.algebra.clone(), &rep)?;
            let report = check_hom_lie(&big);
            let out = AlgebraFile {
                field,
                blocks: vec![Block::HomLie {
                    name: "semidirect".to_string(),
                    algebra: big,
                }],
            };
            Ok(("semidirect", report, out))
        }
        BuildWhat::DerivationAlgebra => {
            let block = file.find("associative").ok_or_else(|| missing("associative"))?;
            let (algebra, sigma) = resolve_associative(block)?;
            let space = compute_derivations(&algebra, &sigma, &sigma)?;
            let g = derivation_homlie(&space, 1, 1)?;
            let mut report = check_hom_lie(&g);
            report.push(
                "derivation-basis-dimension",
                true,
                Some(space.basis.len().to_string()),
            );
            let out = AlgebraFile {
                field,
                blocks: vec![Block::HomLie {
                    name: "derivations".to_string(),
                    algebra: g,
                }],
            };
            Ok(("derivation-algebra", report, out))
        }
        BuildWhat::Delta => {
            let g = first_homlie(file)?;
            let rm = first_rmatrix(file)?;
            let delta = coboundary_delta(g, &rm)?;
            let mut report = CheckReport::new();
            report.push("conr", true, None);
            let lhs = delta.mul(&g.twist);
            let rhs = extend_map(&g.twist, 2)?.mul(&delta);
            if lhs.eq_promoted(&rhs) {
                report.pass("delta-twist-compatibility");
            } else {
                report.fail(
                    "delta-twist-compatibility",
                    "Δ∘φ differs from (φ∧φ)∘Δ".to_string(),
                );
            }
            let out = AlgebraFile {
                field,
                blocks: vec![Block::LinearMapBlock {
                    name: "delta".to_string(),
                    map: delta,
                }],
            };
            Ok(("delta", report, out))
        }
    }
}

fn representation_block(name: &str, over: &str, rep: &homlie::reps::Representation) -> Block {
    Block::Representation {
        name: name.to_string(),
        over: over.to_string(),
        dim: rep.dim,
        rho: rep
            .matrices
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(x, m)| (x, m.clone()))
            .collect(),
        beta: rep.twist.clone(),
    }
}

fn solution_to_file(
    input: &AlgebraFile,
    g: &HomLieAlgebra,
    rm: &RMatrix,
) -> Result<AlgebraFile, HomlieError> {
    let mut blocks = vec![
        Block::HomLie {
            name: "g".to_string(),
            algebra: g.clone(),
        },
        Block::RMatrixBlock {
            name: "r".to_string(),
            over: "g".to_string(),
            r: rm.r.clone(),
        },
    ];
    // Attach the induced triangular dual when it is a Hom-Lie algebra.
    debug_assert!(check_conr(g, rm));
    if check_chybe(g, rm)?.1 {
        let dual = induced_dual_bracket(g, rm)?;
        blocks.push(Block::DualAlgebra {
            name: "g-dual".to_string(),
            algebra: dual,
        });
    }
    Ok(AlgebraFile {
        field: input.field.clone(),
        blocks,
    })
}

fn parse_support(spec: Option<&str>, dim: usize) -> Result<Vec<(usize, usize)>, HomlieError> {
    match spec {
        None => {
            let mut all = Vec::new();
            for i in 0..dim {
                for j in 0..dim {
                    if i != j {
                        all.push((i, j));
                    }
                }
            }
            Ok(all)
        }
        Some(s) => {
            let mut out = Vec::new();
            for part in s.split(';').filter(|p| !p.trim().is_empty()) {
                let idx: Vec<&str> = part.split(',').map(str::trim).collect();
                if idx.len() != 2 {
                    return Err(HomlieError::Parse {
                        line: 0,
                        msg: format!("bad support pair `{part}`"),
                    });
                }
                let i: usize = idx[0].parse().map_err(|_| HomlieError::Parse {
                    line: 0,
                    msg: format!("bad index `{}`", idx[0]),
                })?;
                let j: usize = idx[1].parse().map_err(|_| HomlieError::Parse {
                    line: 0,
                    msg: format!("bad index `{}`", idx[1]),
                })?;
                if i == 0 || j == 0 {
                    return Err(HomlieError::Parse {
                        line: 0,
                        msg: "support indices are 1-based".to_string(),
                    });
                }
                out.push((i - 1, j - 1));
            }
            Ok(out)
        }
    }
}

fn parse_grid(spec: &str, field: &FieldDecl) -> Result<Vec<Scalar>, HomlieError> {
    spec.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| parse_scalar(p, field, 0))
        .collect()
}
