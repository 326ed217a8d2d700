use serde::{Deserialize, Serialize};

use super::{build_frame, builtin_frame, PolarityError, PolarityFrame};

/// On-disk frame description.
///
/// ```toml
/// worlds = ["a", "b"]
/// order = [["a", "b"]]
/// R = [["a", "b"], ["b", "b"]]
/// ```
///
/// `order` is closed reflexively and transitively; `R` must be hereditary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub worlds: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
    #[serde(rename = "R", default)]
    pub r: Vec<(String, String)>,
}

impl FrameFile {
    /// Strict order pairs and all of `R`, in world order.
    pub fn of(frame: &PolarityFrame, name: Option<&str>) -> FrameFile {
        let named = |ps: Vec<(usize, usize)>| {
            ps.into_iter()
                .map(|(u, w)| (frame.world(u).to_string(), frame.world(w).to_string()))
                .collect()
        };
        FrameFile {
            name: name.map(str::to_string),
            worlds: frame.worlds().to_vec(),
            order: named(frame.order_pairs()),
            r: named(frame.r_pairs()),
        }
    }

    pub fn to_frame(&self) -> Result<PolarityFrame, PolarityError> {
        let idx = |n: &str| {
            self.worlds
                .iter()
                .position(|w| w == n)
                .ok_or_else(|| PolarityError::InvalidSpec(format!("unknown world {n}")))
        };
        let pairs = |ps: &[(String, String)]| {
            ps.iter()
                .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
                .collect::<Result<Vec<_>, PolarityError>>()
        };
        build_frame(&self.worlds, &pairs(&self.order)?, &pairs(&self.r)?)
    }
}

pub fn frame_to_toml(frame: &PolarityFrame, name: Option<&str>) -> String {
    toml::to_string(&FrameFile::of(frame, name)).expect("frame files serialize")
}

pub fn frame_from_toml(text: &str) -> Result<PolarityFrame, PolarityError> {
    let file: FrameFile =
        toml::from_str(text).map_err(|e| PolarityError::InvalidSpec(e.message().to_string()))?;
    file.to_frame()
}

pub fn load_frame(path: &str) -> Result<PolarityFrame, PolarityError> {
    let text = std::fs::read_to_string(path).map_err(|e| PolarityError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    frame_from_toml(&text)
}

/// `builtin:NAME` or a path to a frame file.
pub fn resolve_frame(spec: &str) -> Result<PolarityFrame, PolarityError> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin_frame(name),
        None => load_frame(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::model_to_toml;
    use crate::polarity::upset_algebra;

    #[test]
    fn round_trip() {
        let text = "worlds = [\"a\", \"b\"]\norder = [[\"a\", \"b\"]]\nR = [[\"a\", \"b\"], [\"b\", \"b\"]]\n";
        let f = frame_from_toml(text).unwrap();
        assert_eq!(frame_to_toml(&f, None), text);
        let full = builtin_frame("FRAME_FULL_R").unwrap();
        assert_eq!(frame_from_toml(&frame_to_toml(&full, Some("FRAME_FULL_R"))).unwrap(), full);
    }

    #[test]
    fn rejects_non_hereditary_file() {
        let text = "worlds = [\"a\", \"b\"]\norder = [[\"a\", \"b\"]]\nR = [[\"a\", \"a\"]]\n";
        assert!(matches!(frame_from_toml(text), Err(PolarityError::NotHereditary(_))));
    }

    #[test]
    fn induced_model_file_uses_upset_names() {
        let f = frame_from_toml("worlds = [\"a\", \"b\"]\norder = [[\"a\", \"b\"]]\n").unwrap();
        let text = model_to_toml(&upset_algebra(&f).unwrap().model, None);
        assert_eq!(
            text,
            "elements = [\"{}\", \"{b}\", \"{a,b}\"]\norder = [[\"{}\", \"{b}\"], [\"{b}\", \"{a,b}\"]]\nneg = [\"{a,b}\", \"{}\", \"{}\"]\n"
        );
    }
}
