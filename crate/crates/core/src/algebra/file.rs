use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{build_algebra, builtin_model, AlgebraError, NegationModel};

/// On-disk model description.
///
/// ```toml
/// name = "CHAIN3"
/// elements = ["0", "m", "1"]
/// order = [["0", "m"], ["m", "1"]]
/// neg = ["1", "1", "m"]
/// ```
///
/// `order` may list any generating pairs; it is closed reflexively and
/// transitively. `neg[i]` is the negation of `elements[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
    pub neg: Vec<String>,
}

impl ModelFile {
    /// The canonical description: covering pairs only, in element order.
    pub fn of(m: &NegationModel, name: Option<&str>) -> ModelFile {
        let l = m.algebra().lattice();
        let k = m.size();
        let covers = |a: usize, b: usize| {
            a != b && l.leq(a, b) && !(0..k).any(|c| c != a && c != b && l.leq(a, c) && l.leq(c, b))
        };
        let order = (0..k)
            .flat_map(|a| (0..k).map(move |b| (a, b)))
            .filter(|&(a, b)| covers(a, b))
            .map(|(a, b)| (l.name(a).to_string(), l.name(b).to_string()))
            .collect();
        ModelFile {
            name: name.map(str::to_string),
            elements: l.names().to_vec(),
            order,
            neg: (0..k).map(|x| m.name(m.neg(x)).to_string()).collect(),
        }
    }

    pub fn to_model(&self) -> Result<NegationModel, AlgebraError> {
        let idx = |n: &str| {
            self.elements
                .iter()
                .position(|e| e == n)
                .ok_or_else(|| AlgebraError::InvalidSpec(format!("unknown element {n}")))
        };
        let mut seen = std::collections::BTreeSet::new();
        if let Some(dup) = self.elements.iter().find(|e| !seen.insert(e.as_str())) {
            return Err(AlgebraError::InvalidSpec(format!("element {dup} listed twice")));
        }
        let pairs = self
            .order
            .iter()
            .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let alg = build_algebra(&self.elements, &pairs)?;
        let neg = self
            .neg
            .iter()
            .map(|n| idx(n))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        NegationModel::new(Arc::new(alg), neg)
    }
}

pub fn model_to_toml(m: &NegationModel, name: Option<&str>) -> String {
    toml::to_string(&ModelFile::of(m, name)).expect("model files serialize")
}

pub fn model_from_toml(text: &str) -> Result<NegationModel, AlgebraError> {
    let file: ModelFile = toml::from_str(text).map_err(|e| AlgebraError::InvalidSpec(e.message().to_string()))?;
    file.to_model()
}

pub fn load_model(path: &str) -> Result<NegationModel, AlgebraError> {
    let text = std::fs::read_to_string(path).map_err(|e| AlgebraError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    model_from_toml(&text).map_err(|e| AlgebraError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })
}

/// `builtin:NAME` or a path to a model file.
pub fn resolve_model(spec: &str) -> Result<NegationModel, AlgebraError> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin_model(name),
        None => load_model(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BUILTIN_MODELS;

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_MODELS {
            let m = builtin_model(name).unwrap();
            let text = model_to_toml(&m, Some(name));
            assert_eq!(model_from_toml(&text).unwrap(), m, "{text}");
        }
    }

    #[test]
    fn canonical_text() {
        let text = model_to_toml(&builtin_model("CHAIN3").unwrap(), Some("CHAIN3"));
        assert_eq!(
            text,
            "name = \"CHAIN3\"\nelements = [\"0\", \"m\", \"1\"]\norder = [[\"0\", \"m\"], [\"m\", \"1\"]]\nneg = [\"1\", \"1\", \"m\"]\n"
        );
    }

    #[test]
    fn rejects_bad_files() {
        let bad_neg = "elements = [\"0\", \"1\"]\norder = [[\"0\", \"1\"]]\nneg = [\"1\"]\n";
        assert!(matches!(model_from_toml(bad_neg), Err(AlgebraError::InvalidSpec(_))));
        let m3 = "elements = [\"0\", \"x\", \"y\", \"z\", \"1\"]\n\
                  order = [[\"0\", \"x\"], [\"0\", \"y\"], [\"0\", \"z\"], [\"x\", \"1\"], [\"y\", \"1\"], [\"z\", \"1\"]]\n\
                  neg = [\"1\", \"0\", \"0\", \"0\", \"0\"]\n";
        assert!(matches!(model_from_toml(m3), Err(AlgebraError::NotDistributive(_))));
        assert!(matches!(model_from_toml("elements = 3"), Err(AlgebraError::InvalidSpec(_))));
        assert!(matches!(resolve_model("builtin:NOPE"), Err(AlgebraError::UnknownBuiltin(_))));
        assert!(matches!(resolve_model("/no/such/file.toml"), Err(AlgebraError::Io { .. })));
    }
}
