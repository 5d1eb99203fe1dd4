use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = slabchrom_cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    if let Some(msg) = outcome.report.get("error").and_then(|e| e.get("message")).and_then(|m| m.as_str()) {
        let msg = msg.trim_end();
        eprintln!("{}", if msg.starts_with("error:") { msg.to_string() } else { format!("error: {msg}") });
    }
    ExitCode::from(outcome.exit_code as u8)
}
