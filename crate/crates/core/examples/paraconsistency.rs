// The two-element algebra with constantly-true negation: every mZn axiom is
// valid, yet a contradiction does not entail everything.
//
// ```bash
// cargo run -p paraneg --example paraconsistency
// ```
use paraneg::algebra::{builtin_model, entails, is_valid};
use paraneg::calculus::{axiom_formulas, SystemDef};
use paraneg::syntax::parse;

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let m = builtin_model("B2_TRIV")?;
    println!("B2_TRIV: {}", m.describe_neg());

    for system in ["mZn", "mCZn", "Zn"] {
        let def = SystemDef::builtin(system, Some(1))?;
        let failing: Vec<&str> = axiom_formulas(&def, 1)
            .iter()
            .filter(|(_, f)| !is_valid(f, &m).valid())
            .map(|(name, _)| *name)
            .collect();
        println!("{:<10} failing axioms: {failing:?}", def.label());
    }

    let e = entails(&[parse("A")?, parse("~A")?], &parse("B")?, &m);
    match &e.witness {
        Some(w) => println!("A, ~A |= B fails; witness {}", w.render(&m)),
        None => println!("A, ~A |= B holds"),
    }
    for text in ["(A & ~A) -> B", "(A & ~A) -> ~B", "~1 -> 0"] {
        let v = is_valid(&parse(text)?, &m);
        match v.falsifier {
            None => println!("{text:<16} valid"),
            Some(w) if w.0.is_empty() => println!("{text:<16} invalid"),
            Some(w) => println!("{text:<16} invalid at {}", w.render(&m)),
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
