//! Runs every acceptance criterion and prints one PASS/WARN/FAIL line each.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use pentamap_core::conformal::{build_quad, solve_field, DEFAULT_MESH_SIZE};
use pentamap_core::verify::{
    cell_complex_criterion, conjecture_criteria, continuity_criterion, degeneracy_criterion,
    group_relations_criterion, modulus_criterion, recipe_invariants_criterion, requirement_suite_criterion,
    springborn_oracle_criterion, CriterionResult, RECIPE_SAMPLES,
};

const SEED: u64 = 20_240_517;

fn main() -> ExitCode {
    // `cargo test -- --list` and filters are not meaningful here; run everything.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let field = match solve_field(&build_quad(), DEFAULT_MESH_SIZE) {
        Ok(f) => f,
        Err(e) => {
            println!("FAIL field: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut results: Vec<Result<CriterionResult, String>> = vec![
        modulus_criterion().map_err(|e| format!("modulus: {e}")),
        Ok(cell_complex_criterion()),
        Ok(group_relations_criterion(SEED)),
        recipe_invariants_criterion(&field, RECIPE_SAMPLES, SEED).map_err(|e| format!("recipe-invariants: {e}")),
        requirement_suite_criterion(&field, 100, SEED).map_err(|e| format!("requirement-suite: {e}")),
        degeneracy_criterion(&field, SEED).map_err(|e| format!("degeneracy-placement: {e}")),
        continuity_criterion(&field, SEED).map_err(|e| format!("continuity: {e}")),
    ];
    match conjecture_criteria(&field) {
        Ok(c) => results.extend(c.into_iter().map(Ok)),
        Err(e) => results.push(Err(format!("conjectures: {e}"))),
    }
    results.push(springborn_oracle_criterion(SEED).map_err(|e| format!("springborn-oracle: {e}")));

    let mut failed = 0;
    for r in &results {
        match r {
            Ok(c) => {
                println!("{}", c.line());
                if !c.passed() {
                    failed += 1;
                    println!("    {}", c.detail);
                }
            }
            Err(msg) => {
                println!("FAIL {msg}");
                failed += 1;
            }
        }
    }
    println!(
        "acceptance: {} criteria, {failed} failed, {:.1}s",
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
