use std::io;
use std::process::ExitCode;

use ffdet::harness::{parse_args, run};

fn main() -> ExitCode {
    env_logger::init();
    let config = match parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let code = run(&config, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
