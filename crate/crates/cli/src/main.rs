use std::io;

use affine_moduli_tool::{run, Streams};

fn main() {
    let (stdin, stdout, stderr) = (io::stdin(), io::stdout(), io::stderr());
    let mut s = Streams { stdin: &mut stdin.lock(), stdout: &mut stdout.lock(), stderr: &mut stderr.lock() };
    let code = run(std::env::args_os(), &mut s);
    std::process::exit(code);
}
