// Writing a proof script by hand, checking it, and building another from a
// proof term with hypotheses (compiled by the deduction theorem).
//
// ```bash
// cargo run -p paraneg --example check_proof
// ```
use paraneg::calculus::{check_proof, parse_script, render_script, Builder, Registry, SystemDef, Term};
use paraneg::syntax::parse;

const IDENTITY: &str = "\
system IPCplus
theorem ID: A -> A
1. A -> (A -> A) -> A | axiom 1 {A:=A, B:=A -> A}
2. (A -> A -> A) -> (A -> (A -> A) -> A) -> A -> A | axiom 2 {A:=A, B:=A -> A, C:=A}
3. A -> A -> A | axiom 1 {A:=A, B:=A}
4. (A -> (A -> A) -> A) -> A -> A | mp 3 2
5. A -> A | mp 1 4
";

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let registry = Registry::new();
    let script = parse_script(IDENTITY)?;
    let verdict = check_proof(&script, &registry);
    println!("ID: accepted={}", verdict.accepted());

    // Swapping the operands of an MP line is caught at that line.
    let broken = parse_script(&IDENTITY.replace("mp 1 4", "mp 4 1"))?;
    for f in check_proof(&broken, &registry).failures {
        println!("broken ID: {f}");
    }

    // Transitivity of implication from hypotheses.
    let a = parse("A")?;
    let ab = parse("A -> B")?;
    let bc = parse("B -> C")?;
    let body = Term::hyp(&a).then(Term::hyp(&ab)).then(Term::hyp(&bc));
    let term = Term::lam(&ab, Term::lam(&bc, Term::lam(&a, body)));
    let goal = parse("(A -> B) -> (B -> C) -> A -> C")?;
    let builder = Builder::new(SystemDef::builtin("IPCplus", None)?);
    let syl = builder.compile("SYL", &goal, &term)?;
    let verdict = check_proof(&syl, &registry);
    println!("SYL: {} lines, accepted={}", syl.lines.len(), verdict.accepted());
    for line in render_script(&syl).lines().take(6) {
        println!("  {line}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
