//! Named collections of algebras, actions, tensors and related data, loaded
//! from one JSON file.
//!
//! ```json
//! {
//!   "settings": { "maxDegree": 4, "arityCap": 4 },
//!   "algebras": { "H3": { "dim": 3, "flavor": "lie", "sc": [[[], [0,0,1]], [[0,0,-1]]] } },
//!   "actions": { "ad": { "source": "H3", "target": "H3", "rho": "adjoint" } },
//!   "tensors": { "T1": { "action": "ad", "matrix": [[0,0,0],[1,0,0],[2,3,0]] } }
//! }
//! ```
//!
//! Besides `algebras`, `actions`, `tensors` and `leibnizLie`, a workspace may
//! hold `directions` (deformation directions of a named tensor), `cochains`
//! (multilinear maps) and `matrices`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, Flavor};
use crate::cohomology::Limits;
use crate::deformation::DeformationDirection;
use crate::error::{Error, Result};
use crate::graded::MultiMap;
use crate::leibniz_lie::LeibnizLie;
use crate::linalg::{Matrix, Vector};
use crate::tensor::{ActionMap, TensorMap};

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RawWorkspace {
    #[serde(default)]
    settings: RawSettings,
    #[serde(default)]
    algebras: BTreeMap<String, RawAlgebra>,
    #[serde(default)]
    actions: BTreeMap<String, RawAction>,
    #[serde(default)]
    tensors: BTreeMap<String, RawTensor>,
    #[serde(default)]
    leibniz_lie: BTreeMap<String, RawLeibnizLie>,
    #[serde(default)]
    directions: BTreeMap<String, RawDirection>,
    #[serde(default)]
    cochains: BTreeMap<String, MultiMap>,
    #[serde(default)]
    matrices: BTreeMap<String, Matrix>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RawSettings {
    #[serde(default = "default_max_degree")]
    max_degree: usize,
    #[serde(default = "default_arity_cap")]
    arity_cap: usize,
}

fn default_max_degree() -> usize {
    Limits::default().max_degree
}

fn default_arity_cap() -> usize {
    Limits::default().arity_cap
}

impl Default for RawSettings {
    fn default() -> Self {
        RawSettings {
            max_degree: default_max_degree(),
            arity_cap: default_arity_cap(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    flavor: Flavor,
    #[serde(default)]
    sc: Vec<Vec<Vector>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRho {
    Keyword(String),
    Matrices(Vec<Matrix>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    source: String,
    target: String,
    rho: RawRho,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTensor {
    action: String,
    matrix: Matrix,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawLieRef {
    Name(String),
    Inline(RawAlgebra),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLeibnizLie {
    lie: RawLieRef,
    triangle: Vec<Vec<Vector>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDirection {
    base: String,
    direction: Matrix,
}

/// A named tensor and the name of its action.
#[derive(Clone, Debug)]
pub struct TensorEntry {
    pub action: String,
    pub tensor: TensorMap,
}

/// A Leibniz-Lie algebra and the name of its Lie algebra, when it refers to one.
#[derive(Clone, Debug)]
pub struct LeibnizLieEntry {
    pub lie: Option<String>,
    pub value: LeibnizLie,
}

#[derive(Clone, Debug)]
pub struct DirectionEntry {
    pub base: String,
    pub direction: DeformationDirection,
}

/// A fully resolved workspace. All maps iterate in name order.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub settings: Limits,
    pub algebras: BTreeMap<String, Algebra>,
    pub actions: BTreeMap<String, ActionMap>,
    pub tensors: BTreeMap<String, TensorEntry>,
    pub leibniz_lie: BTreeMap<String, LeibnizLieEntry>,
    pub directions: BTreeMap<String, DirectionEntry>,
    pub cochains: BTreeMap<String, MultiMap>,
    pub matrices: BTreeMap<String, Matrix>,
}

fn unresolved(category: &str, name: &str) -> Error {
    Error::UnresolvedReference {
        category: category.to_string(),
        name: name.to_string(),
    }
}

fn build_algebra(name: &str, raw: RawAlgebra) -> Result<Algebra> {
    let _ = raw.name;
    Algebra::from_json_parts(name.to_string(), raw.dim, raw.sc, raw.flavor)
}

impl Workspace {
    pub fn load(path: &Path) -> Result<Workspace> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        Workspace::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Workspace> {
        let raw: RawWorkspace = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut ws = Workspace {
            settings: Limits {
                max_degree: raw.settings.max_degree,
                arity_cap: raw.settings.arity_cap,
            },
            cochains: raw.cochains,
            matrices: raw.matrices,
            ..Workspace::default()
        };
        for (name, a) in raw.algebras {
            let alg = build_algebra(&name, a)?;
            ws.algebras.insert(name, alg);
        }
        for (name, a) in raw.actions {
            let source = ws.algebra(&a.source)?.clone();
            let target = ws.algebra(&a.target)?.clone();
            let action = match a.rho {
                RawRho::Keyword(k) if k == "adjoint" => {
                    if a.source != a.target {
                        return Err(Error::DimensionMismatch(format!(
                            "action {name}: adjoint needs source = target"
                        )));
                    }
                    ActionMap::adjoint(&source)
                }
                RawRho::Keyword(k) if k == "zero" => ActionMap::zero(&source, &target),
                RawRho::Keyword(k) => {
                    return Err(Error::DimensionMismatch(format!(
                        "action {name}: unknown rho keyword {k:?}, expected \"adjoint\", \"zero\" or a list of matrices"
                    )))
                }
                RawRho::Matrices(ms) => ActionMap::new(source, target, ms)?,
            };
            ws.actions.insert(name, action);
        }
        for (name, t) in raw.tensors {
            let action = ws.action(&t.action)?.clone();
            let tensor = TensorMap::new(action, t.matrix)?;
            ws.tensors.insert(name, TensorEntry { action: t.action, tensor });
        }
        for (name, l) in raw.leibniz_lie {
            let (lie_name, lie) = match l.lie {
                RawLieRef::Name(n) => {
                    let a = ws.algebra(&n)?.clone();
                    (Some(n), a)
                }
                RawLieRef::Inline(raw) => {
                    let n = raw.name.clone().unwrap_or_else(|| name.clone());
                    (None, build_algebra(&n, raw)?)
                }
            };
            if lie.flavor() != Flavor::Lie {
                return Err(Error::FlavorViolation {
                    name: lie.name().to_string(),
                    flavor: lie.flavor().to_string(),
                    detail: format!("Leibniz-Lie algebra {name} needs a Lie algebra"),
                });
            }
            let value = LeibnizLie::new(lie, l.triangle)?;
            ws.leibniz_lie.insert(name, LeibnizLieEntry { lie: lie_name, value });
        }
        for (name, d) in raw.directions {
            let base = ws.tensor(&d.base)?.clone();
            let direction = DeformationDirection::new(base, d.direction)?;
            ws.directions.insert(name, DirectionEntry { base: d.base, direction });
        }
        Ok(ws)
    }

    pub fn algebra(&self, name: &str) -> Result<&Algebra> {
        self.algebras.get(name).ok_or_else(|| unresolved("algebra", name))
    }

    pub fn action(&self, name: &str) -> Result<&ActionMap> {
        self.actions.get(name).ok_or_else(|| unresolved("action", name))
    }

    pub fn tensor(&self, name: &str) -> Result<&TensorMap> {
        self.tensors
            .get(name)
            .map(|e| &e.tensor)
            .ok_or_else(|| unresolved("tensor", name))
    }

    pub fn leibniz_lie(&self, name: &str) -> Result<&LeibnizLie> {
        self.leibniz_lie
            .get(name)
            .map(|e| &e.value)
            .ok_or_else(|| unresolved("leibnizLie", name))
    }

    pub fn direction(&self, name: &str) -> Result<&DeformationDirection> {
        self.directions
            .get(name)
            .map(|e| &e.direction)
            .ok_or_else(|| unresolved("direction", name))
    }

    pub fn cochain(&self, name: &str) -> Result<&MultiMap> {
        self.cochains.get(name).ok_or_else(|| unresolved("cochain", name))
    }

    pub fn matrix(&self, name: &str) -> Result<&Matrix> {
        self.matrices.get(name).ok_or_else(|| unresolved("matrix", name))
    }

    /// Canonical JSON form; `parse(to_json())` reproduces the workspace.
    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        root.insert(
            "settings".into(),
            json!({ "maxDegree": self.settings.max_degree, "arityCap": self.settings.arity_cap }),
        );
        let mut algebras = Map::new();
        for (name, a) in &self.algebras {
            algebras.insert(name.clone(), algebra_json(a));
        }
        root.insert("algebras".into(), Value::Object(algebras));
        let mut actions = Map::new();
        for (name, a) in &self.actions {
            actions.insert(name.clone(), to_value(a));
        }
        root.insert("actions".into(), Value::Object(actions));
        let mut tensors = Map::new();
        for (name, e) in &self.tensors {
            tensors.insert(name.clone(), tensor_json(&e.action, &e.tensor));
        }
        root.insert("tensors".into(), Value::Object(tensors));
        let mut lls = Map::new();
        for (name, e) in &self.leibniz_lie {
            lls.insert(name.clone(), leibniz_lie_json(e.lie.as_deref(), &e.value));
        }
        root.insert("leibnizLie".into(), Value::Object(lls));
        let mut dirs = Map::new();
        for (name, e) in &self.directions {
            dirs.insert(
                name.clone(),
                json!({ "base": e.base, "direction": to_value(&e.direction.direction) }),
            );
        }
        root.insert("directions".into(), Value::Object(dirs));
        root.insert("cochains".into(), to_value(&self.cochains));
        root.insert("matrices".into(), to_value(&self.matrices));
        Value::Object(root)
    }
}

fn to_value<T: Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// `{ dim, flavor, sc }`, without the name, which is the map key.
pub fn algebra_json(a: &Algebra) -> Value {
    json!({ "dim": a.dim(), "flavor": a.flavor(), "sc": to_value(&a.sc()) })
}

pub fn tensor_json(action: &str, t: &TensorMap) -> Value {
    json!({ "action": action, "matrix": to_value(t.matrix()) })
}

/// Refers to the Lie algebra by name when given one, and inlines it otherwise.
pub fn leibniz_lie_json(lie: Option<&str>, l: &LeibnizLie) -> Value {
    let lie_value = match lie {
        Some(n) => Value::String(n.to_string()),
        None => {
            let mut v = algebra_json(l.lie());
            v["name"] = Value::String(l.lie().name().to_string());
            v
        }
    };
    json!({ "lie": lie_value, "triangle": to_value(&l.triangle_table()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_lie;
    use crate::fixtures::*;

    const H3: &str = r#"{
      "algebras": {
        "H3": { "dim": 3, "flavor": "lie", "sc": [[[], [0,0,1]], [[0,0,-1]]] }
      },
      "actions": { "ad": { "source": "H3", "target": "H3", "rho": "adjoint" } },
      "tensors": {
        "T1": { "action": "ad", "matrix": [[0,0,0],[1,0,0],[2,3,0]] },
        "Tzero": { "action": "ad", "matrix": [[0,0,0],[0,0,0],[0,0,0]] }
      },
      "leibnizLie": {
        "L": { "lie": "H3", "triangle": [[[0,0,-1],[0,0,1],[0,0,0]],[[0,0,-1],[0,0,1],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]]] }
      },
      "directions": { "D": { "base": "T1", "direction": [[0,0,0],[0,0,0],["-1",0,0]] } }
    }"#;

    #[test]
    fn empty_workspace() {
        let ws = Workspace::parse("{}").unwrap();
        assert!(ws.algebras.is_empty() && ws.tensors.is_empty());
        assert_eq!(ws.settings, Limits::default());
    }

    #[test]
    fn heisenberg_workspace() {
        let ws = Workspace::parse(H3).unwrap();
        let h = ws.algebra("H3").unwrap();
        assert!(check_lie(h).passed());
        assert!(h.same_structure(&heisenberg()));
        assert_eq!(ws.tensor("T1").unwrap(), &example_net());
        assert_eq!(ws.leibniz_lie("L").unwrap(), &heisenberg_leibniz_lie());
        assert_eq!(ws.direction("D").unwrap().direction.column(0)[2], crate::rational::qi(-1));
    }

    #[test]
    fn round_trip() {
        let ws = Workspace::parse(H3).unwrap();
        let text = serde_json::to_string_pretty(&ws.to_json()).unwrap();
        let back = Workspace::parse(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back.to_json()).unwrap(), text);
    }

    #[test]
    fn broken_jacobi_is_a_flavor_violation() {
        // [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e3 fails Jacobi
        let text = r#"{ "algebras": { "bad": { "dim": 3, "flavor": "lie",
            "sc": [[[], [0,0,1], [0,0,-1]], [[0,0,-1], [], [1,0,0]], [[0,0,1], [-1,0,0], []]] } } }"#;
        match Workspace::parse(text) {
            Err(Error::FlavorViolation { name, detail, .. }) => {
                assert_eq!(name, "bad");
                assert!(detail.contains("jacobi"), "{detail}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        match Workspace::parse("{\n  \"algebras\": {\n    \"A\": { \"dim\": }\n  }\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Workspace::parse(r#"{"algebra": {}}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn unresolved_references() {
        let text = r#"{ "tensors": { "T": { "action": "nope", "matrix": [] } } }"#;
        assert!(matches!(
            Workspace::parse(text),
            Err(Error::UnresolvedReference { category, name }) if category == "action" && name == "nope"
        ));
    }
}
