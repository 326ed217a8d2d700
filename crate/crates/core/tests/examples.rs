//! Runs every cargo example as a smoke test. `emit_corpus` writes into the
//! workspace, so its output is compared in `generated_files.rs` instead.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                run().unwrap();
            }
        }
    };
}

example!(parse_formulas);
example!(check_proof);
example!(verify_corpus);
example!(paraconsistency);
example!(negation_hierarchy);
example!(countermodel_search);
example!(polarity_frames);
