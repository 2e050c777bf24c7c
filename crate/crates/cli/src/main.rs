use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qhelix_cli::manifest::{bundled_names, bundled_text, parse_field};
use qhelix_cli::report::{render_json, render_table};
use qhelix_cli::{commands, execute, parse_window, CliError, Options};

#[derive(Parser)]
#[command(name = "qhelix", version, about = "Workbench for graded algebras, graded modules and helices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Run a command against a bundled manifest or a manifest file.
    Run {
        command: String,
        manifest: String,
        /// Command arguments as key=value.
        args: Vec<String>,
        #[arg(long)]
        truncation: Option<u32>,
        #[arg(long)]
        hbound: Option<usize>,
        /// Degree window a..b for Hom/Ext tables and helix checks.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// q or p:<prime>.
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List bundled manifests and commands.
    List,
    /// Print a bundled manifest.
    Show { name: String },
}

fn options(
    truncation: Option<u32>,
    hbound: Option<usize>,
    window: Option<String>,
    field: Option<String>,
) -> Result<Options, CliError> {
    Ok(Options {
        truncation,
        hbound,
        window: window.as_deref().map(parse_window).transpose()?,
        field: field.as_deref().map(parse_field).transpose()?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            let mut text = String::from("manifests:\n");
            for n in bundled_names() {
                text.push_str(&format!("  {n}\n"));
            }
            text.push_str("commands:\n");
            for c in commands::COMMANDS {
                let keys: Vec<String> = c.keys.iter().map(|k| format!("{k}=")).collect();
                text.push_str(&format!("  {:<18} {:<22} {}\n", c.name, keys.join(" "), c.summary));
            }
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Command::Show { name } => match bundled_text(&name) {
            Some(t) => {
                let _ = std::io::stdout().write_all(t.as_bytes());
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("no bundled manifest named {name}");
                ExitCode::from(2)
            }
        },
        Command::Run { command, manifest, args, truncation, hbound, window, field, format, out } => {
            let result =
                options(truncation, hbound, window, field).and_then(|o| execute(&manifest, &command, &args, &o));
            let report = match result {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("qhelix: {e}");
                    return ExitCode::from(e.exit_code() as u8);
                }
            };
            let text = match format {
                Format::Json => render_json(&report.value),
                Format::Table => render_table(&report.value),
            };
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &text) {
                        eprintln!("qhelix: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => {
                    let _ = std::io::stdout().write_all(text.as_bytes());
                }
            }
            ExitCode::from(report.exit_code as u8)
        }
    }
}
