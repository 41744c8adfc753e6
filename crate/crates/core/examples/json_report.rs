//! Drive the command line in-process and read back its JSON report.

use omloq::cli;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        ["omloq", "check", "catalog:mo:3", "--json"],
        &mut out,
        &mut err,
    );
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    println!("exit {code}, status {}, seed {}", v["status"], v["seed"]);
    for c in v["reports"][0]["checks"].as_array().unwrap() {
        println!("  {} {}", c["name"], c["status"]);
    }
}
