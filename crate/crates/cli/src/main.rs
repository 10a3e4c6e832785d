use std::io::Write;

fn main() {
    let cap = std::env::var(torcone_cli::DIM_CAP_VAR).ok();
    let out = torcone_cli::run(std::env::args_os(), cap.as_deref());
    // Nothing useful to do if the pipes are gone.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
