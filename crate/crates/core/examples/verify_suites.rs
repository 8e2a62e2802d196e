//! Runs every verification suite with a small sample count.

use rostlab::suites::{run_suite, SuiteConfig, SUITES};
use rostlab::Result;

fn main() -> Result<()> {
    let cfg = SuiteConfig {
        samples: 200,
        ..SuiteConfig::default()
    };
    let mut worst = 0;
    for name in SUITES {
        let rep = run_suite(name, &cfg)?;
        println!("{name:>18}: {:?}, {} cells", rep.status, rep.cells);
        worst = worst.max(rep.exit_code());
    }
    std::process::exit(worst);
}
