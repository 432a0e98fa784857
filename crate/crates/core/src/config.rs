//! Problem configuration files.
//!
//! A config is flat `key = value` text; `#` starts a comment. Keys carry a
//! dotted section prefix and vectors/matrices are whitespace-separated
//! (matrices row-major):
//!
//! ```text
//! objective.kind = quadratic
//! objective.a = 1 1
//! objective.Q = 1 0 0 1
//! set.kind = halfspace_simplex
//! solver.x0 = 1 0
//! solver.gap_tolerance = 1e-8
//! seed = 7
//! ```
//!
//! Objective kinds: `quadratic` (`a`, `Q`), `regularized_norm` (`a`, `alpha`,
//! `beta`), `sqrt_quadratic` (`a`, `beta`), `log_sum_exp` (`n`). Set kinds:
//! `halfspace_simplex`, `product_set`, `monotone_cone`, `orthant` (optional
//! `n`, defaulting to the objective dimension) and `polyhedron` (`A`, `b`).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::linalg::Matrix;
use crate::objectives::{LogSumExp, ObjectiveError, Quadratic, RegularizedNorm, SqrtQuadratic};
use crate::oracles::{FeasibleSet, SetError};
use crate::solver::SolverConfig;
use crate::{DynObjective64, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}: {}", self.field, self.message),
            None => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// How strictly objective and set preconditions are enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    /// Shapes, parameter signs and the sign conditions that make the
    /// assumptions hold (`a > 0`, `Q ≥ 0`, the curvature condition).
    Strict,
    /// Shapes and parameter signs only, so `check` can report on objectives
    /// that violate the assumptions.
    Structural,
}

const KNOWN_KEYS: &[&str] = &[
    "objective.kind",
    "objective.a",
    "objective.Q",
    "objective.alpha",
    "objective.beta",
    "objective.n",
    "set.kind",
    "set.n",
    "set.A",
    "set.b",
    "solver.x0",
    "solver.gap_tolerance",
    "solver.max_iterations",
    "solver.lipschitz_override",
    "seed",
];

#[derive(Debug, Clone)]
struct Entry {
    line: usize,
    value: String,
}

/// Parsed but not yet validated key-value pairs.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, Entry>,
}

impl FromStr for RawConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError {
                    line: Some(line),
                    field: content.to_string(),
                    message: "expected `key = value`".into(),
                });
            };
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(ConfigError {
                    line: Some(line),
                    field: key.to_string(),
                    message: "unknown key".into(),
                });
            }
            let prev = entries.insert(
                key.to_string(),
                Entry {
                    line,
                    value: value.trim().to_string(),
                },
            );
            if let Some(prev) = prev {
                return Err(ConfigError {
                    line: Some(line),
                    field: key.to_string(),
                    message: format!("duplicate key (first set on line {})", prev.line),
                });
            }
        }
        Ok(Self { entries })
    }
}

impl RawConfig {
    fn err(&self, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError {
            line: self.entries.get(key).map(|e| e.line),
            field: key.to_string(),
            message: message.into(),
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.value.as_str())
    }

    fn require(&self, key: &str) -> Result<&str, ConfigError> {
        self.get(key).ok_or_else(|| self.err(key, "missing"))
    }

    fn parse<V: FromStr>(&self, key: &str) -> Result<Option<V>, ConfigError> {
        self.get(key)
            .map(|s| {
                s.parse()
                    .map_err(|_| self.err(key, format!("cannot parse `{s}`")))
            })
            .transpose()
    }

    fn vector(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        self.get(key)
            .map(|s| {
                let v = s
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<f64>()
                            .ok()
                            .filter(|v| v.is_finite())
                            .ok_or_else(|| self.err(key, format!("`{t}` is not a finite number")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if v.is_empty() {
                    Err(self.err(key, "empty vector"))
                } else {
                    Ok(v)
                }
            })
            .transpose()
    }

    fn require_vector(&self, key: &str) -> Result<Vec<f64>, ConfigError> {
        self.vector(key)?.ok_or_else(|| self.err(key, "missing"))
    }

    fn require_positive(&self, key: &str) -> Result<f64, ConfigError> {
        let v: f64 = self.parse(key)?.ok_or_else(|| self.err(key, "missing"))?;
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(self.err(key, "must be positive"))
        }
    }
}

/// A validated problem ready to solve.
pub struct Problem {
    pub objective: DynObjective64,
    pub set: FeasibleSet<f64>,
    pub x0: Vec<f64>,
    pub solver: SolverConfig<f64>,
    pub seed: u64,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("objective", &self.objective.name())
            .field("set", &self.set)
            .field("x0", &self.x0)
            .field("solver", &self.solver)
            .field("seed", &self.seed)
            .finish()
    }
}

impl Problem {
    pub fn parse(text: &str, validation: Validation) -> Result<Self, ConfigError> {
        let raw: RawConfig = text.parse()?;
        build(&raw, validation)
    }

    pub fn load(path: &Path, validation: Validation) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
            line: None,
            field: path.display().to_string(),
            message: format!("cannot read config: {e}"),
        })?;
        Self::parse(&text, validation)
    }
}

fn objective_err(raw: &RawConfig, e: ObjectiveError) -> ConfigError {
    let key = match e {
        ObjectiveError::MatrixShape { .. } | ObjectiveError::NegativeMatrixEntry { .. } => {
            "objective.Q"
        }
        ObjectiveError::NonPositiveParameter("alpha")
        | ObjectiveError::CurvatureCondition { .. } => "objective.alpha",
        ObjectiveError::NonPositiveParameter(_) => "objective.beta",
        ObjectiveError::ZeroDimension if raw.get("objective.n").is_some() => "objective.n",
        _ => "objective.a",
    };
    raw.err(key, e.to_string())
}

fn build(raw: &RawConfig, validation: Validation) -> Result<Problem, ConfigError> {
    let strict = validation == Validation::Strict;
    let kind = raw.require("objective.kind")?;
    let objective: DynObjective64 = match kind {
        "quadratic" => {
            let a = raw.require_vector("objective.a")?;
            let n = a.len();
            let q = raw.require_vector("objective.Q")?;
            let q = Matrix::from_row_major(n, n, q)
                .map_err(|e| raw.err("objective.Q", format!("must be {n}x{n}: {e}")))?;
            let f = if strict {
                Quadratic::new(a, q)
            } else {
                Quadratic::new_unchecked(a, q)
            };
            Box::new(f.map_err(|e| objective_err(raw, e))?)
        }
        "regularized_norm" => {
            let a = raw.require_vector("objective.a")?;
            let alpha = raw.require_positive("objective.alpha")?;
            let beta = raw.require_positive("objective.beta")?;
            let f = if strict {
                RegularizedNorm::new(a, alpha, beta)
            } else {
                RegularizedNorm::new_unchecked(a, alpha, beta)
            };
            Box::new(f.map_err(|e| objective_err(raw, e))?)
        }
        "sqrt_quadratic" => {
            let a = raw.require_vector("objective.a")?;
            let beta = raw.require_positive("objective.beta")?;
            let f = if strict {
                SqrtQuadratic::new(a, beta)
            } else {
                SqrtQuadratic::new_unchecked(a, beta)
            };
            Box::new(f.map_err(|e| objective_err(raw, e))?)
        }
        "log_sum_exp" => {
            let n: usize = raw
                .parse("objective.n")?
                .ok_or_else(|| raw.err("objective.n", "missing"))?;
            Box::new(LogSumExp::new(n).map_err(|e| objective_err(raw, e))?)
        }
        other => {
            return Err(raw.err(
                "objective.kind",
                format!(
                    "unknown kind `{other}` (expected quadratic, regularized_norm, sqrt_quadratic or log_sum_exp)"
                ),
            ))
        }
    };

    let n = objective.dim();
    let set_kind = raw.require("set.kind")?;
    let set_dim = || -> Result<usize, ConfigError> {
        match raw.parse::<usize>("set.n")? {
            Some(m) if m != n => Err(raw.err(
                "set.n",
                format!("set dimension {m} does not match objective dimension {n}"),
            )),
            _ => Ok(n),
        }
    };
    let set_result = match set_kind {
        "halfspace_simplex" => FeasibleSet::halfspace_simplex(set_dim()?),
        "product_set" => FeasibleSet::product_set(set_dim()?),
        "monotone_cone" => FeasibleSet::monotone_cone(set_dim()?),
        "orthant" => FeasibleSet::orthant(set_dim()?),
        "polyhedron" => {
            let b = raw.require_vector("set.b")?;
            let m = b.len();
            let a = raw.require_vector("set.A")?;
            let a = Matrix::from_row_major(m, n, a)
                .map_err(|e| raw.err("set.A", format!("must be {m}x{n} row-major: {e}")))?;
            FeasibleSet::polyhedron(a, b)
        }
        other => {
            return Err(raw.err(
                "set.kind",
                format!(
                    "unknown kind `{other}` (expected halfspace_simplex, product_set, polyhedron, monotone_cone or orthant)"
                ),
            ))
        }
    };
    let set = set_result.map_err(|e| {
        let key = match e {
            SetError::NonPositiveRhs(_) | SetError::RhsLength { .. } => "set.b",
            SetError::NonPositiveMatrix { .. } => "set.A",
            SetError::ZeroDimension => "set.n",
        };
        raw.err(key, e.to_string())
    })?;

    let x0 = match raw.vector("solver.x0")? {
        Some(x0) => {
            if x0.len() != n {
                return Err(raw.err(
                    "solver.x0",
                    format!("has {} entries, expected {n}", x0.len()),
                ));
            }
            if !set.contains(&x0) {
                return Err(raw.err("solver.x0", "not in the feasible set"));
            }
            x0
        }
        None => set.anchor(),
    };

    let mut solver = SolverConfig::<f64>::default();
    if let Some(tol) = raw.parse::<f64>("solver.gap_tolerance")? {
        if !(tol >= 0.0) {
            return Err(raw.err("solver.gap_tolerance", "must be >= 0"));
        }
        solver.gap_tolerance = tol;
    }
    if let Some(it) = raw.parse::<usize>("solver.max_iterations")? {
        if it == 0 {
            return Err(raw.err("solver.max_iterations", "must be >= 1"));
        }
        solver.max_iterations = it;
    }
    if let Some(l) = raw.parse::<f64>("solver.lipschitz_override")? {
        if !(l > 0.0 && l.is_finite()) {
            return Err(raw.err("solver.lipschitz_override", "must be positive"));
        }
        solver.lipschitz_override = Some(l);
    }
    let seed = raw.parse::<u64>("seed")?.unwrap_or(0);

    Ok(Problem {
        objective,
        set,
        x0,
        solver,
        seed,
    })
}

/// Formats a vector the way configs expect it.
pub fn format_vector<T: Scalar>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
