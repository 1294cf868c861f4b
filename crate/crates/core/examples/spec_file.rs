//! Driving the pipelines from spec-file text without the binary.

use pimsner_lab::cli::{parse_spec, run, Command, Overrides};

const SPEC: &str = "\
# the (1,2) block fixture
name block12
blocks 1 2
mult 1 0 ; 2 0
ideal 1
opt trials 5
";

fn main() {
    let spec = parse_spec(SPEC).expect("valid spec");
    for command in [Command::Reduce, Command::Classify, Command::Canonical] {
        let outcome = run(command, &spec, &Overrides::default());
        print!("{}", outcome.report.machine());
        println!("exit code {}\n", outcome.exit_code);
    }
    match parse_spec("blocks 1 1\nmult 3 0 ; 0 0\nideal\n") {
        Ok(_) => unreachable!(),
        Err(d) => println!("row-fit violation: {d}"),
    }
}
