//! Command-line front end.
//!
//! Exit codes: 0 when the check passes, 1 when it fails (with a report), 2 on
//! usage, parse or reference errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::{check_leibniz, check_lie, quotient_lie, Algebra};
use crate::cohomology::{class_equals, cohomology};
use crate::deformation::{
    check_equivalence, check_linear_deformation, check_nijenhuis_element, check_nijenhuis_operator,
    trivial_deformation_from_nijenhuis, DeformationDirection, NijenhuisCandidate,
};
use crate::error::{Error, Result};
use crate::graded::{mc_deform_check, mc_net_check, MultiMap};
use crate::leibniz_lie::{check_leibniz_lie, ell_net, induced_leibniz_lie, quotient_projection_net, subadjacent};
use crate::linalg::Vector;
use crate::rational::Rational;
use crate::report::Report;
use crate::tensor::{check_coherent_action, check_net, descendent, hemisemidirect, projection_net, ActionMap, TensorMap};
use crate::workspace::{algebra_json, leibniz_lie_json, tensor_json, Workspace};

#[derive(Parser, Debug)]
#[command(name = "etensor", version, about = "Exact checks and constructions for embedding tensors between Lie algebras")]
pub struct Cli {
    /// Workspace file declaring algebras, actions, tensors and related data
    #[arg(long, global = true)]
    pub workspace: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify axioms and identities
    #[command(subcommand)]
    Check(CheckCommand),
    /// Construct derived objects; output is a workspace fragment
    #[command(subcommand)]
    Build(BuildCommand),
    /// Maurer-Cartan checks in the controlling graded Lie algebra
    #[command(subcommand)]
    Mc(McCommand),
    /// Cocycles, coboundaries and cohomology of a tensor in one degree
    Cohomology {
        #[arg(long)]
        tensor: String,
        #[arg(long)]
        degree: usize,
    },
    /// Whether two cocycles of a tensor differ by a coboundary
    ClassEquals {
        #[arg(long)]
        tensor: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Cochain or direction name
        #[arg(long)]
        first: String,
        /// Cochain or direction name
        #[arg(long)]
        second: String,
    },
}

#[derive(Args, Debug)]
pub struct ElementArgs {
    #[arg(long)]
    pub tensor: String,
    /// Coordinates of x, e.g. "1,0,-1/2"
    #[arg(long, value_parser = parse_element)]
    pub element: Vector,
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    Lie {
        #[arg(long)]
        algebra: String,
    },
    Leibniz {
        #[arg(long)]
        algebra: String,
    },
    /// Coherent action: derivations, homomorphism and [ρ(x)u, v] = 0
    Action {
        #[arg(long)]
        action: String,
    },
    Net {
        #[arg(long)]
        tensor: String,
    },
    LeibnizLie {
        #[arg(long = "leibniz-lie")]
        leibniz_lie: String,
    },
    /// Nijenhuis element x of a tensor
    Nijenhuis(ElementArgs),
    /// Nijenhuis operator, given as a named matrix on a named algebra or as
    /// ρ(x) on the descendent algebra of a tensor
    NijenhuisOperator {
        #[arg(long, requires = "operator", conflicts_with_all = ["tensor", "element"])]
        algebra: Option<String>,
        /// Matrix name
        #[arg(long)]
        operator: Option<String>,
        #[arg(long, requires = "element")]
        tensor: Option<String>,
        #[arg(long, value_parser = parse_element)]
        element: Option<Vector>,
    },
    /// Whether a direction generates a linear deformation
    Deform {
        #[arg(long)]
        direction: String,
    },
    /// Whether (Id + t ad_x, Id + t ρ(x)) maps the deformation along
    /// --direction to the one along --target (the zero direction if omitted).
    /// Several --element values are tried in order.
    Equivalence {
        #[arg(long)]
        direction: String,
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_parser = parse_element, required = true)]
        element: Vec<Vector>,
    },
}

#[derive(Subcommand, Debug)]
pub enum BuildCommand {
    Hemisemidirect {
        #[arg(long)]
        action: String,
        #[arg(long)]
        name: Option<String>,
    },
    Descendent {
        #[arg(long)]
        tensor: String,
        #[arg(long)]
        name: Option<String>,
    },
    Subadjacent {
        #[arg(long = "leibniz-lie")]
        leibniz_lie: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// u ▷ v = ρ(Tu)v
    InducedTriangle {
        #[arg(long)]
        tensor: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Projection onto the coherent derivations (from --algebra) or onto the
    /// Lie quotient of the subadjacent algebra (from --leibniz-lie)
    ProjectionNet {
        #[arg(long, conflicts_with = "leibniz_lie", required_unless_present = "leibniz_lie")]
        algebra: Option<String>,
        #[arg(long = "leibniz-lie")]
        leibniz_lie: Option<String>,
        #[arg(long)]
        name: Option<String>,
    },
    EllNet {
        #[arg(long = "leibniz-lie")]
        leibniz_lie: String,
        #[arg(long)]
        name: Option<String>,
    },
    QuotientLie {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum McCommand {
    Net {
        #[arg(long)]
        tensor: String,
    },
    /// d_T T' + ½⟦T', T'⟧ = 0 for the direction's matrix T'
    Deform {
        #[arg(long)]
        direction: String,
    },
}

fn parse_element(s: &str) -> std::result::Result<Vector, String> {
    s.split(',')
        .map(|p| p.trim().parse::<Rational>().map_err(|e| e.to_string()))
        .collect()
}

/// What a command produced.
pub struct Outcome {
    pub passed: bool,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    fn report(r: &Report) -> Outcome {
        Outcome {
            passed: r.passed(),
            json: to_value(r),
            text: r.to_string(),
        }
    }

    fn fragment(json: Value) -> Outcome {
        let text = pretty(&json);
        Outcome {
            passed: true,
            json,
            text,
        }
    }
}

fn to_value<T: Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn fmt_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Parses `argv` (including the program name), runs the command and writes
/// the report. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let body = match cli.format {
                Format::Json => pretty(&outcome.json),
                Format::Text => outcome.text,
            };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, body.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let ws = match &cli.workspace {
        Some(p) => Workspace::load(p)?,
        None => Workspace::default(),
    };
    match &cli.command {
        Command::Check(c) => run_check(&ws, c),
        Command::Build(b) => run_build(&ws, b),
        Command::Mc(m) => run_mc(&ws, m),
        Command::Cohomology { tensor, degree } => {
            let r = cohomology(ws.tensor(tensor)?, *degree, ws.settings)?;
            let mut text = format!(
                "H^{}({tensor}): dim Z = {}, dim B = {}, dim H = {}\n",
                r.degree, r.dim_z, r.dim_b, r.dim_h
            );
            text.push_str("cocycle basis:\n");
            for b in r.cocycle_basis.basis() {
                text.push_str(&format!("  {}\n", fmt_vector(b)));
            }
            text.push_str("coboundary basis:\n");
            for b in r.coboundary_basis.basis() {
                text.push_str(&format!("  {}\n", fmt_vector(b)));
            }
            Ok(Outcome {
                passed: true,
                json: to_value(&r),
                text,
            })
        }
        Command::ClassEquals {
            tensor,
            degree,
            first,
            second,
        } => {
            let t = ws.tensor(tensor)?;
            let f = cochain_or_direction(&ws, first)?;
            let g = cochain_or_direction(&ws, second)?;
            let equal = class_equals(t, &f, &g, *degree, ws.settings)?;
            Ok(Outcome {
                passed: equal,
                json: json!({ "degree": degree, "first": first, "second": second, "equal": equal }),
                text: format!(
                    "{first} and {second} {} the same class in degree {degree}\n",
                    if equal { "represent" } else { "do not represent" }
                ),
            })
        }
    }
}

fn cochain_or_direction(ws: &Workspace, name: &str) -> Result<MultiMap> {
    if let Ok(c) = ws.cochain(name) {
        return Ok(c.clone());
    }
    match ws.direction(name) {
        Ok(d) => Ok(MultiMap::from_matrix(&d.direction)),
        Err(_) => Err(Error::UnresolvedReference {
            category: "cochain or direction".into(),
            name: name.into(),
        }),
    }
}

fn run_check(ws: &Workspace, c: &CheckCommand) -> Result<Outcome> {
    match c {
        CheckCommand::Lie { algebra } => Ok(Outcome::report(&check_lie(ws.algebra(algebra)?))),
        CheckCommand::Leibniz { algebra } => Ok(Outcome::report(&check_leibniz(ws.algebra(algebra)?))),
        CheckCommand::Action { action } => Ok(Outcome::report(&check_coherent_action(ws.action(action)?))),
        CheckCommand::Net { tensor } => Ok(Outcome::report(&check_net(ws.tensor(tensor)?))),
        CheckCommand::LeibnizLie { leibniz_lie } => Ok(Outcome::report(&check_leibniz_lie(ws.leibniz_lie(leibniz_lie)?))),
        CheckCommand::Nijenhuis(args) => {
            let cand = NijenhuisCandidate::new(ws.tensor(&args.tensor)?.clone(), args.element.clone())?;
            let report = check_nijenhuis_element(&cand)?;
            let mut out = Outcome::report(&report);
            if report.passed() {
                let d = trivial_deformation_from_nijenhuis(&cand)?;
                out.json = json!({ "report": report, "trivialDeformation": d.direction });
                out.text.push_str("trivial deformation ∂_T x:\n");
                for row in d.direction.row_vectors() {
                    out.text.push_str(&format!("  {}\n", fmt_vector(&row)));
                }
            }
            Ok(out)
        }
        CheckCommand::NijenhuisOperator {
            algebra,
            operator,
            tensor,
            element,
        } => {
            let (a, n) = match (algebra, operator, tensor, element) {
                (Some(a), Some(op), None, None) => (ws.algebra(a)?.clone(), ws.matrix(op)?.clone()),
                (None, None, Some(t), Some(x)) => {
                    let t = ws.tensor(t)?;
                    if x.len() != t.g().dim() {
                        return Err(Error::DimensionMismatch(format!("element has {} coordinates", x.len())));
                    }
                    (descendent(t)?, t.action().rho(x))
                }
                _ => {
                    return Err(Error::Usage(
                        "check nijenhuis-operator needs --algebra with --operator, or --tensor with --element".into(),
                    ))
                }
            };
            Ok(Outcome::report(&check_nijenhuis_operator(&a, &n)?))
        }
        CheckCommand::Deform { direction } => {
            let r = check_linear_deformation(ws.direction(direction)?)?;
            let mut text = r.coefficients.to_string();
            for (t, ok) in &r.probes {
                text.push_str(&format!("  probe t = {t}: {}\n", if *ok { "tensor" } else { "not a tensor" }));
            }
            text.push_str(&format!("  routes agree: {}\n", if r.routes_agree { "yes" } else { "no" }));
            Ok(Outcome {
                passed: r.passed(),
                json: to_value(&r),
                text,
            })
        }
        CheckCommand::Equivalence {
            direction,
            target,
            element,
        } => {
            let source = ws.direction(direction)?;
            let target_dir = match target {
                Some(n) => ws.direction(n)?.clone(),
                None => DeformationDirection::zero(source.base.clone()),
            };
            let mut reports = Vec::new();
            let mut text = String::new();
            let mut witness = None;
            for x in element {
                let r = check_equivalence(source, &target_dir, x)?;
                text.push_str(&format!("x = {}\n{}", fmt_vector(x), r));
                if r.passed() && witness.is_none() {
                    witness = Some(x.clone());
                }
                reports.push(json!({ "element": x, "report": r }));
            }
            Ok(Outcome {
                passed: witness.is_some(),
                json: json!({ "candidates": reports, "witness": witness }),
                text,
            })
        }
    }
}

fn run_mc(ws: &Workspace, m: &McCommand) -> Result<Outcome> {
    let (residual, report) = match m {
        McCommand::Net { tensor } => mc_net_check(ws.tensor(tensor)?)?,
        McCommand::Deform { direction } => {
            let d = ws.direction(direction)?;
            mc_deform_check(&d.base, &d.direction)?
        }
    };
    Ok(Outcome {
        passed: report.passed(),
        json: json!({ "report": report, "residual": residual }),
        text: report.to_string(),
    })
}

/// Collects the pieces of a workspace fragment.
#[derive(Default)]
struct Fragment {
    algebras: Map<String, Value>,
    actions: Map<String, Value>,
    tensors: Map<String, Value>,
    leibniz_lie: Map<String, Value>,
    matrices: Map<String, Value>,
}

impl Fragment {
    /// Adds `a` unless the workspace already holds it under the same name.
    fn algebra(&mut self, ws: &Workspace, a: &Algebra) {
        let known = ws.algebras.get(a.name()).is_some_and(|b| b.same_structure(a) && b.flavor() == a.flavor());
        if !known {
            self.algebras.insert(a.name().to_string(), algebra_json(a));
        }
    }

    fn tensor(&mut self, ws: &Workspace, name: &str, t: &TensorMap) {
        let action_name = format!("{name}_action");
        self.algebra(ws, t.g());
        self.algebra(ws, t.h());
        self.actions.insert(action_name.clone(), to_value(t.action()));
        self.tensors.insert(name.to_string(), tensor_json(&action_name, t));
    }

    fn into_value(self) -> Value {
        let mut root = Map::new();
        for (key, m) in [
            ("algebras", self.algebras),
            ("actions", self.actions),
            ("tensors", self.tensors),
            ("leibnizLie", self.leibniz_lie),
            ("matrices", self.matrices),
        ] {
            if !m.is_empty() {
                root.insert(key.into(), Value::Object(m));
            }
        }
        Value::Object(root)
    }
}

/// Renames the source and target algebras of a tensor's action.
fn rename_tensor(t: &TensorMap, g: &str, h: &str) -> Result<TensorMap> {
    let a = t.action();
    let action = ActionMap::new(
        a.source().clone().with_name(g),
        a.target().clone().with_name(h),
        a.rho_basis().to_vec(),
    )?;
    TensorMap::new(action, t.matrix().clone())
}

fn run_build(ws: &Workspace, b: &BuildCommand) -> Result<Outcome> {
    let mut frag = Fragment::default();
    match b {
        BuildCommand::Hemisemidirect { action, name } => {
            let name = name.clone().unwrap_or_else(|| format!("{action}_hemi"));
            frag.algebra(ws, &hemisemidirect(ws.action(action)?)?.with_name(name));
        }
        BuildCommand::Descendent { tensor, name } => {
            let name = name.clone().unwrap_or_else(|| format!("{tensor}_desc"));
            frag.algebra(ws, &descendent(ws.tensor(tensor)?)?.with_name(name));
        }
        BuildCommand::Subadjacent { leibniz_lie, name } => {
            let name = name.clone().unwrap_or_else(|| format!("{leibniz_lie}_sub"));
            frag.algebra(ws, &subadjacent(ws.leibniz_lie(leibniz_lie)?)?.with_name(name));
        }
        BuildCommand::InducedTriangle { tensor, name } => {
            let name = name.clone().unwrap_or_else(|| format!("{tensor}_tri"));
            let t = ws.tensor(tensor)?;
            let l = induced_leibniz_lie(t)?;
            let h_name = t.h().name().to_string();
            frag.algebra(ws, t.h());
            frag.leibniz_lie.insert(name, leibniz_lie_json(Some(&h_name), &l));
        }
        BuildCommand::ProjectionNet {
            algebra,
            leibniz_lie,
            name,
        } => match (algebra, leibniz_lie) {
            (Some(a), _) => {
                let name = name.clone().unwrap_or_else(|| format!("{a}_proj"));
                let t = projection_net(ws.algebra(a)?)?;
                let t = rename_tensor(&t, &format!("{a}_der"), &format!("{a}_der_sum"))?;
                frag.tensor(ws, &name, &t);
            }
            (None, Some(l)) => {
                let name = name.clone().unwrap_or_else(|| format!("{l}_proj"));
                let ll = ws.leibniz_lie(l)?;
                let t = quotient_projection_net(ll)?;
                let t = rename_tensor(&t, &format!("{l}_lie"), ll.lie().name())?;
                frag.tensor(ws, &name, &t);
            }
            (None, None) => unreachable!("clap requires one source"),
        },
        BuildCommand::EllNet { leibniz_lie, name } => {
            let name = name.clone().unwrap_or_else(|| format!("{leibniz_lie}_ell"));
            let ll = ws.leibniz_lie(leibniz_lie)?;
            let h = ll.lie().name().to_string();
            let t = ell_net(ll)?;
            let t = rename_tensor(&t, &format!("{h}_der"), &h)?;
            frag.tensor(ws, &name, &t);
        }
        BuildCommand::QuotientLie { algebra, name } => {
            let name = name.clone().unwrap_or_else(|| format!("{algebra}_lie"));
            let q = quotient_lie(ws.algebra(algebra)?)?;
            frag.algebra(ws, &q.algebra.clone().with_name(name.clone()));
            frag.matrices.insert(format!("{name}_projection"), to_value(&q.projection));
        }
    }
    Ok(Outcome::fragment(frag.into_value()))
}
