//! One line per acceptance criterion; exits nonzero if any fails.

use wnalg::verify::{run_suite, Suite};

fn main() {
    let outcomes = run_suite(Suite::All);
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
