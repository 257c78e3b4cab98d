//! Command-line front end: measures, cyclotomicity, canonical forms, the
//! catalog and the growing searches.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use cyclograph::catalog::{self, Category, CatalogError};
use cyclograph::equiv::{are_equivalent, canonical_form, canonical_key, EquivError, Flavor};
use cyclograph::grow::{
    load_checkpoint, registered_config, registered_searches, save_checkpoint, GrowConfig, GrowError, SearchReport,
    SearchState,
};
use cyclograph::poly::{reciprocal_transform, PolyError};
use cyclograph::{
    char_poly, is_cyclotomic_matrix, mahler_measure, mahler_of_matrix, GraphError, HermitianMatrix, IntPolynomial, Ring,
    MAX_VERTICES,
};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Equiv(#[from] EquivError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Grow(#[from] GrowError),
    #[error("{0} vertices exceeds the bound of {MAX_VERTICES}")]
    Capacity(usize),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Capacity(_) | CliError::Equiv(EquivError::Capacity(_)) | CliError::Grow(GrowError::Capacity(_)) => 3,
            CliError::Verification(_) => 4,
            _ => 2,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

#[derive(Parser)]
#[command(name = "cyclograph", version, about = "Cyclotomic matrices over Z, Z[i] and Z[w]: measures, canonical forms and growing searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mahler measure of a polynomial file (ascending coefficients) or of R_A for a matrix file.
    Measure { input: PathBuf },
    /// Characteristic and reciprocal polynomials of a matrix file.
    Charpoly { input: PathBuf },
    /// Exact cyclotomicity test of a matrix file.
    Cyclotomic { input: PathBuf },
    /// Are two matrix files equivalent?
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Strong equivalence: no global negation.
        #[arg(long)]
        strong: bool,
    },
    /// Canonical representative and key of a matrix file.
    Canon {
        input: PathBuf,
        #[arg(long)]
        strong: bool,
    },
    /// Named graphs: list, dump or verify.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Runs a registered search or a TOML search config.
    Search {
        /// Registered search name or path to a TOML config.
        search: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Continues a search from a checkpoint file.
    Resume {
        #[arg(value_name = "CHECKPOINT")]
        from: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Runs the gated desk-scale searches and prints their tables.
    Tables {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "CYCLOGRAPH_THREADS")]
        threads: Option<usize>,
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Names by category.
    List,
    /// A named graph in the matrix file format.
    Dump {
        name: String,
        k: Option<usize>,
        #[arg(long)]
        ring: Option<Ring>,
    },
    /// Checks every maximal graph is cyclotomic and maximal and every sporadic matches its golden file.
    Verify {
        #[arg(long, default_value_t = 8)]
        k_max: usize,
        /// Directory of golden files to compare against instead of the built-in ones.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Grow until the frontier has this many vertices.
    #[arg(long)]
    stop: usize,
    #[arg(long, env = "CYCLOGRAPH_THREADS")]
    threads: Option<usize>,
    /// Write a checkpoint after every this many rounds.
    #[arg(long)]
    checkpoint_every: Option<usize>,
    /// Checkpoint path; defaults to `<out>/<search>.ckpt` when --out is given.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Directory for the CSV, table and witness files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append per-round statistics with wall-clock times.
    #[arg(long)]
    timings: bool,
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err(path))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(io_err(path))
}

fn read_matrix(path: &Path) -> Result<HermitianMatrix, CliError> {
    Ok(HermitianMatrix::parse_text(&read_input(path)?)?)
}

fn flavor(strong: bool) -> Flavor {
    if strong {
        Flavor::Strong
    } else {
        Flavor::Full
    }
}

fn cmd_measure(input: &Path) -> Result<String, CliError> {
    let text = read_input(input)?;
    let is_matrix = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).is_some_and(|l| l.starts_with("ring:"));
    let m = if is_matrix {
        mahler_of_matrix(&HermitianMatrix::parse_text(&text)?)
    } else {
        mahler_measure(&IntPolynomial::parse(&text)?)?
    };
    Ok(format!("{}\n", m.display()))
}

fn cmd_charpoly(input: &Path) -> Result<String, CliError> {
    let a = read_matrix(input)?;
    let chi = char_poly(&a);
    let r = reciprocal_transform(&chi);
    let coeffs = |p: &IntPolynomial| p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    Ok(format!(
        "chi(x) = {}\nchi coefficients: {}\nR(z) = {}\nR coefficients: {}\n",
        chi.to_pretty('x'),
        coeffs(&chi),
        r.to_pretty('z'),
        coeffs(&r)
    ))
}

fn cmd_cyclotomic(input: &Path) -> Result<String, CliError> {
    let a = read_matrix(input)?;
    Ok(format!("cyclotomic: {}\n", if is_cyclotomic_matrix(&a) { "yes" } else { "no" }))
}

fn check_capacity(a: &HermitianMatrix) -> Result<(), CliError> {
    if a.n() > MAX_VERTICES {
        return Err(CliError::Capacity(a.n()));
    }
    Ok(())
}

fn cmd_equiv(a: &Path, b: &Path, strong: bool) -> Result<String, CliError> {
    let (a, b) = (read_matrix(a)?, read_matrix(b)?);
    check_capacity(&a)?;
    check_capacity(&b)?;
    let eq = a.n() == b.n() && a.ring() == b.ring() && are_equivalent(&a, &b, flavor(strong))?;
    Ok(format!("{}\n", if eq { "equivalent" } else { "not equivalent" }))
}

fn cmd_canon(input: &Path, strong: bool) -> Result<String, CliError> {
    let a = read_matrix(input)?;
    check_capacity(&a)?;
    let f = flavor(strong);
    let key = canonical_key(&a, f)?;
    Ok(format!("# key {}\n{}", key.as_str(), canonical_form(&a, f)?.to_text()))
}

fn cmd_catalog(cmd: &CatalogCommand) -> Result<String, CliError> {
    match cmd {
        CatalogCommand::List => {
            let mut s = String::new();
            for (label, cat) in [
                ("family", Category::Family),
                ("sporadic", Category::Sporadic),
                ("seed", Category::Seed),
                ("forbidden", Category::Forbidden),
                ("type-I", Category::TypeI),
                ("type-II", Category::TypeII),
                ("included", Category::Included),
            ] {
                s.push_str(&format!("{label}: {}\n", catalog::names(cat).join(" ")));
            }
            s.push_str(&format!("searches: {}\n", registered_searches().join(" ")));
            Ok(s)
        }
        CatalogCommand::Dump { name, k, ring } => {
            let g = catalog::build(name, *k, *ring)?;
            match g.matrix() {
                Some(m) => Ok(m.to_text()),
                None => Err(CliError::Usage(format!("`{name}` is a pattern with wildcards, not a matrix"))),
            }
        }
        CatalogCommand::Verify { k_max, golden_dir } => verify_catalog(*k_max, golden_dir.as_deref()),
    }
}

fn verify_catalog(k_max: usize, golden_dir: Option<&Path>) -> Result<String, CliError> {
    let mut s = String::new();
    let mut failed = Vec::new();
    for ring in Ring::ALL {
        for g in catalog::maximal_graphs(ring, k_max) {
            let m = g.matrix().expect("maximal graphs are concrete");
            let cyc = is_cyclotomic_matrix(m);
            let max = cyc && catalog::verify_maximal(m, 4);
            let ok = cyc && max;
            s.push_str(&format!(
                "{:<4} {} over {ring}: cyclotomic {} maximal {}\n",
                if ok { "ok" } else { "FAIL" },
                g.label(),
                yes_no(cyc),
                yes_no(max)
            ));
            if !ok {
                failed.push(format!("{} over {ring}", g.label()));
            }
        }
    }
    for (name, builtin) in catalog::golden_files() {
        let text = match golden_dir {
            Some(dir) => {
                let path = dir.join(format!("{}.txt", catalog::file_stem(name)));
                fs::read_to_string(&path).map_err(io_err(&path))?
            }
            None => builtin.to_string(),
        };
        let built = catalog::build(name, None, None)?;
        let ok = HermitianMatrix::parse_text(&text).ok().as_ref() == built.matrix();
        s.push_str(&format!("{:<4} {name}: golden file {}\n", if ok { "ok" } else { "FAIL" }, if ok { "matches" } else { "differs" }));
        if !ok {
            failed.push(format!("golden {name}"));
        }
    }
    if failed.is_empty() {
        Ok(s)
    } else {
        print!("{s}");
        Err(CliError::Verification(failed.join(", ")))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load_config(search: &str) -> Result<GrowConfig, CliError> {
    let path = Path::new(search);
    if search.ends_with(".toml") || path.is_file() {
        Ok(GrowConfig::from_toml(&fs::read_to_string(path).map_err(io_err(path))?)?)
    } else {
        Ok(registered_config(search)?)
    }
}

fn set_threads(threads: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn timings(state: &SearchState) -> String {
    let mut s = String::from("round timings\n");
    for r in &state.stats {
        s.push_str(&format!(
            "  j={} parents={} additions={} cyclotomic={} noncyclotomic={} sigma={} minimal={} ms={}\n",
            r.j, r.parents, r.additions, r.cyclotomic, r.noncyclotomic, r.sigma, r.minimal, r.elapsed_ms
        ));
    }
    s
}

fn write_outputs(state: &SearchState, out: &Path) -> Result<(), CliError> {
    fs::create_dir_all(out).map_err(io_err(out))?;
    let rep = SearchReport::from_state(state);
    let name = &rep.search;
    let files = [(format!("{name}.csv"), rep.to_csv()), (format!("{name}.txt"), rep.to_table())];
    for (file, text) in files {
        let path = out.join(file);
        fs::write(&path, text).map_err(io_err(&path))?;
    }
    for r in &rep.rows {
        if let Some(w) = &r.witness {
            let path = out.join(rep.witness_file(r.j));
            fs::write(&path, w.to_text()).map_err(io_err(&path))?;
        }
    }
    Ok(())
}

fn drive(mut state: SearchState, run: &RunArgs) -> Result<String, CliError> {
    if run.stop > MAX_VERTICES {
        return Err(CliError::Capacity(run.stop));
    }
    if run.checkpoint_every == Some(0) {
        return Err(CliError::Usage("--checkpoint-every must be positive".into()));
    }
    let ckpt = run.checkpoint.clone().or_else(|| run.out.as_ref().map(|o| o.join(format!("{}.ckpt", state.config.name))));
    if let (Some(path), Some(dir)) = (&ckpt, ckpt.as_ref().and_then(|p| p.parent())) {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(io_err(path))?;
        }
    }
    let mut rounds = 0;
    state.run(run.stop, |s| {
        rounds += 1;
        if let (Some(every), Some(path)) = (run.checkpoint_every, &ckpt) {
            if rounds % every == 0 {
                save_checkpoint(s, path)?;
            }
        }
        Ok(())
    })?;
    if let Some(path) = &ckpt {
        save_checkpoint(&state, path)?;
    }
    if let Some(out) = &run.out {
        write_outputs(&state, out)?;
    }
    let mut s = SearchReport::from_state(&state).to_table();
    if run.timings {
        s.push_str(&timings(&state));
    }
    Ok(s)
}

const TABLES: &[(&str, &str, usize)] = &[
    ("weight-2 Z[i] graphs", "weight2-zi", 4),
    ("uncharged triangle-free Z[i] graphs", "uncharged-trianglefree-zi", 5),
    ("charged triangle-free Z[i] graphs", "charged-trianglefree-zi", 5),
    ("charged triangle-free Z[w] graphs", "charged-trianglefree-zw", 5),
];

fn cmd_tables(out: Option<&Path>, show_timings: bool) -> Result<String, CliError> {
    let mut s = String::new();
    for (title, name, stop) in TABLES {
        let cfg = registered_config(name)?;
        let mut state = SearchState::new(&cfg)?;
        state.run(*stop, |_| Ok(()))?;
        if let Some(dir) = out {
            write_outputs(&state, dir)?;
        }
        s.push_str(&format!("{title}\n{}", SearchReport::from_state(&state).to_table()));
        if show_timings {
            s.push_str(&timings(&state));
        }
        s.push('\n');
    }
    Ok(s)
}

fn execute(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Measure { input } => cmd_measure(&input),
        Command::Charpoly { input } => cmd_charpoly(&input),
        Command::Cyclotomic { input } => cmd_cyclotomic(&input),
        Command::Equiv { a, b, strong } => cmd_equiv(&a, &b, strong),
        Command::Canon { input, strong } => cmd_canon(&input, strong),
        Command::Catalog(cmd) => cmd_catalog(&cmd),
        Command::Search { search, run } => {
            set_threads(run.threads)?;
            let cfg = load_config(&search)?;
            drive(SearchState::new(&cfg)?, &run)
        }
        Command::Resume { from, run } => {
            set_threads(run.threads)?;
            let state = load_checkpoint(&from)?;
            let run = RunArgs { checkpoint: run.checkpoint.clone().or(Some(from)), ..run };
            drive(state, &run)
        }
        Command::Tables { out, threads, timings } => {
            set_threads(threads)?;
            cmd_tables(out.as_deref(), timings)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Capacity(17).exit_code(), 3);
        assert_eq!(CliError::Grow(GrowError::Capacity(20)).exit_code(), 3);
        assert_eq!(CliError::Verification("x".into()).exit_code(), 4);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Poly(PolyError::Parse("x".into())).exit_code(), 2);
    }
}
