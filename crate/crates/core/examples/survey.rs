//! Runs the bounded check for every catalog identity under each of its orders.
//!
//! `cargo run --release --example survey [--bounds Z,L,D] [ID ...]`

use std::time::Instant;

use opalg_core::catalog::catalog;
use opalg_core::gs::{check_gs, Bounds, CheckOptions};
use opalg_core::pattern::Params;

fn main() {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    let mut bounds = Bounds::default();
    if let Some(i) = args.iter().position(|a| a == "--bounds") {
        let arg = args.get(i + 1).expect("--bounds needs Z,L,D").clone();
        let v: Vec<u32> = arg.split(',').map(|x| x.parse().expect("integer bound")).collect();
        (bounds.max_z_degree, bounds.max_l_degree, bounds.max_depth) = (v[0], v[1], v[2]);
        args.drain(i..i + 2);
    }
    let wanted: Vec<String> = args.iter().map(|s| s.to_lowercase()).collect();
    for e in catalog() {
        if !wanted.is_empty() && !wanted.contains(&e.id().to_lowercase()) {
            continue;
        }
        let orders = e.sound.iter().chain(e.unstable.iter());
        for &o in orders {
            let t = Instant::now();
            let line = match check_gs(
                std::slice::from_ref(&e.pattern),
                o,
                &bounds,
                &Params::defaults(),
                CheckOptions::default(),
            ) {
                Ok(r) => format!(
                    "{:<10} inst {:>6} int {:>8} inc {:>7} nontriv {:>6} {}",
                    o.name(),
                    r.n_instances,
                    r.n_intersection,
                    r.n_including,
                    r.n_nontrivial,
                    r.verdict.name()
                ),
                Err(err) => format!("{:<10} error: {err}", o.name()),
            };
            println!("{:<22} {line} ({:.1}s)", e.id(), t.elapsed().as_secs_f64());
        }
    }
}
