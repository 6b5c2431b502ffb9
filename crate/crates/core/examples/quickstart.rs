use qubosat_core::formula::random_3sat;
use qubosat_core::solve::solve_exhaustive;
use qubosat_core::{Method, MethodKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let formula = random_3sat(5, 21, 42)?;
    let translation = Method::from(MethodKind::NuessleinNm).translate(&formula)?;
    let best = solve_exhaustive(&translation.qubo)?;
    let assignment = translation.decode(&best.best)?;
    println!("{} of {} clauses", formula.satisfied_count(&assignment), formula.num_clauses());
    Ok(())
}
