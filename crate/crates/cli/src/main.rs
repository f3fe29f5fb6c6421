use std::process::ExitCode;

fn main() -> ExitCode {
    match annulus_cli::execute(std::env::args_os()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", serde_json::to_string(&e.document()).expect("error documents serialize"));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
