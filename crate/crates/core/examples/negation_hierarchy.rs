// Classifies every negation table on small distributive lattices and shows
// which hierarchy laws fail for which class.
//
// ```bash
// cargo run -p paraneg --example negation_hierarchy
// ```
use paraneg::algebra::{builtin_model, classify_negation, distributive_lattices, right_adjoint, BUILTIN_MODELS};

fn run() -> Result<(), Box<dyn std::error::Error>> {
    for k in 1..=6 {
        let count = distributive_lattices(6).iter().filter(|a| a.size() == k).count();
        println!("distributive lattices with {k} elements: {count}");
    }

    for name in BUILTIN_MODELS {
        let m = builtin_model(name)?;
        let cl = classify_negation(&m);
        let adjoint = match right_adjoint(&m)? {
            Some(t) => format!("{t:?}"),
            None => "absent".into(),
        };
        println!("{name:<13} {:<12} adjoint {adjoint}", cl.class.to_string());
        for p in cl.violations() {
            println!("    breaks {} ({})", p.name, p.witness.as_deref().unwrap_or(""));
        }
    }

    let tally = paraneg::acceptance::hierarchy_tally(4)?;
    println!("{} tables on lattices <= 4, by class {:?}", tally.models, tally.by_class);
    for (law, count, example) in tally.laws.iter().filter(|l| l.1 > 0) {
        println!("  {law}: {count} violations, e.g. {}", example.as_deref().unwrap_or(""));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
