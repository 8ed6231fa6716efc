//! Times the oracle on one component: `oracle_timing <identities> <n> [p]`.

use std::time::Instant;

use wnalg::oracle::{IdentitySet, Oracle};
use wnalg::scalar::Field;
use wnalg::word::Multidegree;

fn main() {
    env_logger::init();
    let args: Vec<String> = std::env::args().collect();
    let ids = IdentitySet::resolve(args.get(1).map_or("wnov2", String::as_str)).expect("identity set");
    let n: u32 = args.get(2).map_or(5, |s| s.parse().expect("degree"));
    let field = match args.get(3) {
        Some(p) => Field::prime(p.parse().expect("prime")).expect("prime"),
        None => Field::Rational,
    };
    let start = Instant::now();
    let dim = Oracle::over(field)
        .quotient_dimension(&ids, &Multidegree::multilinear(n))
        .expect("oracle");
    println!("{} n={n} over {field}: dimension {dim} in {:?}", ids.name(), start.elapsed());
}
