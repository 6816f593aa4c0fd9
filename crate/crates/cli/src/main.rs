use std::io::Write;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = fuzzysched_cli::run(std::env::args_os(), &mut out, &mut err);
    std::io::stdout().write_all(&out).ok();
    std::io::stderr().write_all(&err).ok();
    std::process::exit(code);
}
