use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oliver::catalog::{self, GroupSpec};
use oliver::chartab::CharacterTable;
use oliver::verify::{self, Options, Subject, Suite};
use oliver::{Error, FiniteGroup};

/// Laitinen numbers, rank invariants, Oliver and gap predicates for finite permutation groups.
#[derive(Parser)]
#[command(name = "oliver", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of one group.
    Info {
        /// Catalog id, constructor expression like `Alt(6)` or `Z2^2xZ3`, or a name from `--catalog`.
        selector: String,
        #[command(flatten)]
        common: Common,
        /// Print the complex character table as TSV.
        #[arg(long)]
        char_table: bool,
    },
    /// Run a verification suite over the catalog.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        common: Common,
        /// Include heavy groups such as M22 and PΣL(2,27).
        #[arg(long)]
        include_heavy: bool,
    },
}

#[derive(Args)]
struct Common {
    /// Extra group files (text or `.json`).
    #[arg(long = "catalog", value_name = "PATH")]
    catalogs: Vec<PathBuf>,
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = 200_000)]
    max_order: usize,
    /// Decide the gap property exactly via character tables and linear programming.
    #[arg(long)]
    exact_gap: bool,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Ranks,
    Classification,
    Vgg,
    A2,
    Keylemma,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Ranks => Suite::Ranks,
            SuiteArg::Classification => Suite::Classification,
            SuiteArg::Vgg => Suite::Vgg,
            SuiteArg::A2 => Suite::A2,
            SuiteArg::Keylemma => Suite::Orientation,
            SuiteArg::All => Suite::All,
        }
    }
}

/// `case5`, `case:5` or `case=5`.
fn case_tag(tags: &[String]) -> Option<u8> {
    tags.iter().find_map(|t| {
        t.strip_prefix("case")?
            .trim_start_matches([':', '=', '-'])
            .parse()
            .ok()
    })
}

fn load_extra(common: &Common) -> Result<Vec<Subject>, Error> {
    let mut out = Vec::new();
    for path in &common.catalogs {
        let specs: Vec<GroupSpec> = catalog::load_specs(path)?;
        for spec in specs {
            let g = spec.build(common.max_order)?;
            out.push(Subject {
                id: spec.name.clone(),
                group: Arc::new(g),
                expected_a: spec.a_g,
                case: case_tag(&spec.tags),
            });
        }
    }
    Ok(out)
}

fn find_group(
    selector: &str,
    extra: &[Subject],
    max_order: usize,
) -> Result<Arc<FiniteGroup>, Error> {
    if let Some(s) = extra.iter().find(|s| s.id == selector) {
        return Ok(s.group.clone());
    }
    if let Some(e) = catalog::lookup(selector) {
        if e.order as usize > max_order {
            return Err(Error::CapExceeded {
                name: selector.into(),
                cap: max_order,
            });
        }
    }
    let g = catalog::shared(selector)?;
    if g.order() > max_order {
        return Err(Error::CapExceeded {
            name: selector.into(),
            cap: max_order,
        });
    }
    Ok(g)
}

fn write_json(path: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), Error> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
        std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Info {
            selector,
            common,
            char_table,
        } => {
            let extra = load_extra(&common)?;
            let g = find_group(&selector, &extra, common.max_order)?;
            let info = verify::group_info(&g, common.exact_gap)?;
            let value = serde_json::to_value(&info).expect("serializable");
            write_json(&common.json, &value)?;
            match common.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("serializable")
                ),
                Format::Tsv => print!("{}", info.rank_tsv()),
                Format::Text => print!("{}", info.to_text()),
            }
            if char_table {
                print!("{}", CharacterTable::compute(&g)?.to_tsv());
            }
            Ok(true)
        }
        Command::Verify {
            suite,
            common,
            include_heavy,
        } => {
            let opts = Options {
                max_order: common.max_order,
                exact_gap: common.exact_gap,
                include_heavy,
                extra: load_extra(&common)?,
            };
            let report = verify::run(suite.into(), &opts)?;
            let value = serde_json::to_value(&report).expect("serializable");
            write_json(&common.json, &value)?;
            match common.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("serializable")
                ),
                Format::Tsv => print!("{}", report.to_tsv()),
                Format::Text => print!("{}", report.to_text()),
            }
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
