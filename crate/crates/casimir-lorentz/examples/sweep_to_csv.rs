//! Driving the library through the same TOML configuration the CLI uses:
//! parse, sweep in parallel, and emit CSV with the commented metadata
//! header. Identical configs produce bit-identical output.
//!
//! ```bash
//! cargo run --example sweep_to_csv
//! ```

use casimir_lorentz::config::{parse_config, render, run_sweep};

const CONFIG: &str = r#"
mode = "slab-force"

[cavity]
d1_m = inf            # mirror 1 removed: exact semi-infinite geometry
d2_m = 1e-6
mirror2 = { kind = "ideal-conductive" }
slab = { kind = "ideal-conductive" }

[cavity.medium]
eps = { model = "lorentz", oscillators = [{ strength = 0.5, resonance_rad_per_s = 9e15 }] }

[sweep]
variable = "d2"
start_m = 2e-7
stop_m = 2e-6
points = 6
spacing = "log"

[quadrature]
rel_tol = 1e-6

[output]
units = "both"
format = "csv"
"#;

fn main() {
    let config = parse_config(CONFIG).expect("valid config");

    // Round-trip guarantee: rendering and reparsing is the identity.
    let reparsed = parse_config(&render(&config)).expect("rendered config");
    assert_eq!(config, reparsed);

    let table = run_sweep(&config).expect("sweep runs");
    assert_eq!(table.unconverged_points, 0);

    let mut out = Vec::new();
    table.write_csv(&mut out).expect("in-memory write");
    print!("{}", String::from_utf8(out).expect("utf8"));
}
