use std::fs;
use std::path::{Path, PathBuf};

use paraneg::algebra::{builtin_model, load_model, model_to_toml, BUILTIN_MODELS};
use paraneg::calculus::{corpus, render_script};
use paraneg::polarity::{builtin_frame, frame_to_toml, load_frame, BUILTIN_FRAMES};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

#[test]
fn proofs_dir_matches_generator() {
    let scripts = corpus::scripts();
    let dir = root().join("proofs");
    let on_disk = fs::read_dir(&dir).unwrap().filter(|e| {
        e.as_ref().unwrap().path().extension().is_some_and(|x| x == "prf")
    });
    assert_eq!(on_disk.count(), scripts.len());
    for s in &scripts {
        let text = fs::read_to_string(dir.join(corpus::file_name(s))).unwrap();
        assert_eq!(text, render_script(s), "{} is stale; rerun the emit_corpus example", s.name);
    }
}

#[test]
fn model_files_round_trip() {
    for name in BUILTIN_MODELS {
        let m = builtin_model(name).unwrap();
        let path = root().join("models").join(format!("{}.toml", name.to_lowercase()));
        assert_eq!(fs::read_to_string(&path).unwrap(), model_to_toml(&m, Some(name)));
        assert_eq!(load_model(path.to_str().unwrap()).unwrap().neg_table(), m.neg_table());
    }
    for name in BUILTIN_FRAMES {
        let f = builtin_frame(name).unwrap();
        let path = root().join("models").join(format!("{}.toml", name.to_lowercase()));
        assert_eq!(fs::read_to_string(&path).unwrap(), frame_to_toml(&f, Some(name)));
        assert_eq!(load_frame(path.to_str().unwrap()).unwrap(), f);
    }
}
