use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = cgeom::Cli::parse();
    let outcome = match cgeom::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = cgeom::write_files(&outcome) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    print!("{}", outcome.render(cli.json));
    ExitCode::from(outcome.status.code())
}
