use std::process::ExitCode;

fn main() -> ExitCode {
    match formeq_cli::run(std::env::args()) {
        Ok(output) => {
            if let Some(json) = output.printed {
                println!("{json}");
            }
            ExitCode::from(output.exit_code)
        }
        Err(err) => err.exit(),
    }
}
