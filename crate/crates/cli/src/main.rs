use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pinlef_cli::{execute, Command, Format, KindSelection, EXIT_INPUT};

/// Decide, count and enumerate Pin- and Pin+ structures on Lefschetz
/// fibrations and handle-decomposed 3-manifolds.
#[derive(Parser)]
#[command(name = "pinlef", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// A `.pinlef` input document.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    kind: KindSelection,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.file) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let report = execute(args.command, &text, args.kind, args.format);
    if report.exit_code == EXIT_INPUT {
        eprint!("{}", report.text);
    } else {
        print!("{}", report.text);
    }
    ExitCode::from(report.exit_code as u8)
}
