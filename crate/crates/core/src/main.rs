use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use qgs::cli::{self, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            eprint!("{}", cli::error_record("usage", msg.trim(), cli::EXIT_USAGE));
            return ExitCode::from(cli::EXIT_USAGE);
        }
    };
    let record = match cli::execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprint!("{}", cli::library_error_record(&e));
            return ExitCode::from(cli::exit_code(&e));
        }
    };
    if let Err(e) = emit(&cli, &record) {
        eprint!("{}", cli::error_record("io", &format!("{e:#}"), cli::EXIT_FAIL));
        return ExitCode::from(cli::EXIT_FAIL);
    }
    if record.pass {
        ExitCode::from(cli::EXIT_PASS)
    } else {
        ExitCode::from(cli::EXIT_FAIL)
    }
}

fn emit(cli: &Cli, record: &qgs::report::ReportRecord) -> anyhow::Result<()> {
    let text = cli::render(record, cli.global.format).context("rendering CSV")?;
    match &cli.global.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).context("writing to stdout")?;
        }
    }
    Ok(())
}
