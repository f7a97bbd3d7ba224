use clap::Parser;

use minrep::cli::{run, wants_json, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    if wants_json(&cli) {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
    } else {
        println!("{}", out.text);
    }
    std::process::exit(out.code);
}
