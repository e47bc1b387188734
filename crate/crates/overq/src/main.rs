use std::io;
use std::process::ExitCode;

use overq_core::identities::Verifier;

fn main() -> ExitCode {
    let code = overq::run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
        &Verifier::default(),
    );
    ExitCode::from(code as u8)
}
