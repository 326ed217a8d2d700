// Writes the corpus scripts to `proofs/` and the built-in models and frames
// to `models/` at the workspace root.
//
// ```bash
// cargo run -p paraneg --example emit_corpus
// ```
use std::path::{Path, PathBuf};

use paraneg::algebra::{builtin_model, model_to_toml, BUILTIN_MODELS};
use paraneg::calculus::corpus;
use paraneg::polarity::{builtin_frame, frame_to_toml, BUILTIN_FRAMES};

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let root = workspace_root();
    let scripts = corpus::scripts();
    corpus::write_dir(&root.join("proofs"), &scripts)?;
    println!("wrote {} scripts to proofs/", scripts.len());

    let models = root.join("models");
    std::fs::create_dir_all(&models)?;
    for name in BUILTIN_MODELS {
        let text = model_to_toml(&builtin_model(name)?, Some(name));
        std::fs::write(models.join(format!("{}.toml", name.to_lowercase())), text)?;
    }
    for name in BUILTIN_FRAMES {
        let text = frame_to_toml(&builtin_frame(name)?, Some(name));
        std::fs::write(models.join(format!("{}.toml", name.to_lowercase())), text)?;
    }
    println!("wrote {} model and frame files to models/", BUILTIN_MODELS.len() + BUILTIN_FRAMES.len());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
