//! Layered run configuration: defaults, a config file, then overrides.
//!
//! cargo run --example run_config

use hgs::config::RunConfig;

fn main() -> hgs::Result<()> {
    let text = "\
# Watt governor, mild load
beta = 0.5
alpha = 1.0
ratio = 0.98   # just below the Hopf point
grid = 50x50
";
    let mut cfg = RunConfig::default();
    cfg.apply_text(text)?;
    cfg.set("beta", "0.6").map_err(hgs::HgsError::Usage)?;
    cfg.validate()?;
    println!("{}", serde_json::to_string_pretty(&cfg).unwrap_or_default());

    let mut bad = RunConfig::default();
    if let Err(e) = bad.apply_text("beta = 0.5\nkappa = 1.0\n") {
        println!("rejected: {e}");
    }
    Ok(())
}
