// Polarity frames: lambda/rho, selfadjointness, the induced up-set algebra
// and Kripke evaluation.
//
// ```bash
// cargo run -p paraneg --example polarity_frames
// ```
use std::collections::BTreeMap;

use paraneg::algebra::classify_negation;
use paraneg::calculus::SystemDef;
use paraneg::polarity::{build_frame_named, check_galois, kripke_eval, upset_algebra, verify_frame_axioms};
use paraneg::syntax::parse;

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let frame = build_frame_named(&["a", "b"], &[("a", "b")], &[("a", "b"), ("b", "b")])?;
    println!("{frame}");
    for u in frame.upsets() {
        println!(
            "  lambda {:<6} = {:<6} rho {:<6} = {}",
            frame.set_name(u),
            frame.set_name(frame.lambda(u)),
            frame.set_name(u),
            frame.set_name(frame.rho(u))
        );
    }
    println!("selfadjoint: {}", frame.is_selfadjoint());
    for law in check_galois(&frame, false) {
        println!("  {:<36} {}", law.law, if law.holds() { "holds" } else { "fails" });
    }

    let ua = upset_algebra(&frame)?;
    println!("induced: {} ({})", ua.model.describe_neg(), classify_negation(&ua.model).class);
    let mzn = SystemDef::builtin("mZn", Some(1))?;
    for status in verify_frame_axioms(&frame, &mzn, 1)? {
        if let Some(d) = &status.detail {
            println!("  axiom {} fails at {d}", status.name);
        }
    }

    let v: BTreeMap<String, u64> = [("p".to_string(), 0b10)].into();
    for f in ["p", "~p", "p -> ~p", "~~p"] {
        let worlds: Vec<&str> = (0..frame.size())
            .filter(|&w| kripke_eval(&frame, &v, w, &parse(f).unwrap()).unwrap())
            .map(|w| frame.world(w))
            .collect();
        println!("  p={{b}}: {f:<8} holds at {worlds:?}");
    }

    match build_frame_named(&["a", "b"], &[("a", "b")], &[("a", "a")]) {
        Err(e) => println!("rejected: {e}"),
        Ok(f) => println!("unexpectedly accepted {f}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
