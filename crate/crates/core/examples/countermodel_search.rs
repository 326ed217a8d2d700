// Searches finite models of the axioms of ZnMinus(1) without axiom (12)
// for a refutation of each part of axiom (12).
//
// ```bash
// cargo run -p paraneg --example countermodel_search --release
// ```
use paraneg::acceptance::axiom12_targets;
use paraneg::algebra::{countermodel_search, Bounds, DEFAULT_MAX_LATTICE};
use paraneg::calculus::{axiom_formulas, SystemDef};
use paraneg::syntax::Formula;

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let sys = SystemDef::builtin("ZnMinus", Some(1))?;
    let axioms: Vec<Formula> = axiom_formulas(&sys, 1)
        .into_iter()
        .filter(|(name, _)| *name != "12")
        .map(|(_, f)| f)
        .collect();
    for (label, target) in axiom12_targets(1) {
        let r = countermodel_search(&axioms, &target, Bounds::with_max_lattice(DEFAULT_MAX_LATTICE))?;
        print!("{label:<12} ");
        match &r.found {
            Some(hit) => println!(
                "found: {} at {}",
                hit.model.describe_neg(),
                hit.valuation.render(&hit.model)
            ),
            None => println!("not found"),
        }
        println!(
            "             scanned {} lattices, {} negations, {} axiom models",
            r.lattices, r.negations, r.axiom_models
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
