use std::io::IsTerminal;

fn main() {
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let status = anonlevel::cli::run(std::env::args_os(), &mut out, &mut err, color);
    std::process::exit(status.code());
}
