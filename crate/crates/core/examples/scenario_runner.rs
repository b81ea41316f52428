//! Runs a scenario document in-process, as the `vsmetric run` command does.
use vsmetric::scenario::{parse_scenario, run};

const SCENARIO: &str = r#"
id = "inline"
mode = "solve_two_map"
seed = 4
x0 = 0.75

[carrier]
lo = 0
hi = 1

[maps]
p = { a = "1/12" }
k = { a = "1/3" }

[coefficients]
h1 = "1/4"
"#;

fn main() -> vsmetric::Result<()> {
    let scenario = parse_scenario(SCENARIO)?;
    let dir = std::env::temp_dir().join("vsmetric-example");
    let result = run(&scenario, Some(&dir))?;
    println!("{}", result.payload());
    println!("exit code {}", result.exit_code);

    let broken = SCENARIO.replace("h1 = \"1/4\"", "h1 = 0.5");
    println!("{}", parse_scenario(&broken).unwrap_err());
    Ok(())
}
