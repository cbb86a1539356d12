use std::io::{self, Write};

fn main() {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = harnack_cli::main_with_args(std::env::args_os(), &mut out, &mut io::stderr());
    let flushed = out.flush();
    drop(out);
    if flushed.is_err() && code == 0 {
        std::process::exit(2);
    }
    std::process::exit(code);
}
