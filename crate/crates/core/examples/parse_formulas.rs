// Parsing, canonical rendering, sugared rendering and schematic matching.
//
// ```bash
// cargo run -p paraneg --example parse_formulas
// ```
use paraneg::syntax::{match_pattern, parse, parse_fixed, parse_pattern, render, render_sugared};

fn run() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["p -> q -> r", "~(p & ~p)", "p^o", "(p -> q)^(2)", "~1 -> 0"] {
        let f = parse(text)?;
        println!("{text:<18} => {:<40} sugared {}", render(&f), render_sugared(&f));
    }

    // `^n` and `^(n)` stay symbolic in schemas until n is fixed.
    let f = parse_fixed("A^(n) -> (~A)^(n)", Some(2))?;
    println!("A^(n) -> (~A)^(n) at n=2 => {}", render_sugared(&f));

    let schema = parse_pattern("(A -> B) -> ~B -> ~A")?;
    let instance = parse("(p -> q & r) -> ~(q & r) -> ~p")?;
    let s = match_pattern(&schema, &instance).ok_or("no match")?;
    println!("{schema}  matches with {s}");

    match parse("p -> (q &") {
        Err(e) => println!("error: {e}"),
        Ok(f) => println!("unexpected parse {f}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
