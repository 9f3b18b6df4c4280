use std::process::ExitCode;

use shellkit::cli::run;
use shellkit::render::Style;

fn main() -> ExitCode {
    let code = run(
        std::env::args_os(),
        Style::from_env(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    ExitCode::from(code as u8)
}
