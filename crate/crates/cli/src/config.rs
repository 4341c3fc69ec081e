//! JSON run configuration.

use std::path::Path;
use std::str::FromStr;

use bethe_core::bethe::SolverOptions;
use bethe_core::{Complex, Rational, Scalar};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A number given as an integer, a float or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    pub fn to_rational(&self) -> Result<Rational, CliError> {
        match self {
            Number::Int(v) => Ok(Rational::from_i64(*v)),
            Number::Float(v) if v.is_finite() => Ok(Rational::from_f64(*v)),
            Number::Float(v) => Err(CliError::Config(format!("non-finite number {v}"))),
            Number::Text(s) => {
                Rational::from_str(s.trim()).map_err(|_| CliError::Config(format!("cannot parse {s:?} as a rational")))
            }
        }
    }
}

/// A list of numbers or a keyword standing for one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ListOrKeyword {
    Keyword(String),
    List(Vec<Number>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "defaults::newton")]
    pub newton: f64,
    #[serde(default = "defaults::dedup")]
    pub dedup: f64,
    #[serde(default = "defaults::offdiag")]
    pub offdiag: f64,
    #[serde(default = "defaults::eig")]
    pub eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { newton: defaults::newton(), dedup: defaults::dedup(), offdiag: defaults::offdiag(), eig: defaults::eig() }
    }
}

mod defaults {
    pub fn newton() -> f64 {
        1e-12
    }
    pub fn dedup() -> f64 {
        1e-6
    }
    pub fn offdiag() -> f64 {
        1e-8
    }
    pub fn eig() -> f64 {
        1e-8
    }
    pub fn cutoff() -> usize {
        3
    }
}

/// Raw configuration as read from disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "N", default)]
    pub n_colours: Option<usize>,
    #[serde(rename = "n", default)]
    pub n_slots: Option<usize>,
    pub lambda: Vec<usize>,
    pub q: ListOrKeyword,
    #[serde(default = "generic")]
    pub b: ListOrKeyword,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub smax: Option<usize>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "defaults::cutoff")]
    pub cutoff: usize,
    /// Step budget of one continuation path.
    #[serde(default)]
    pub max_steps: Option<usize>,
    #[serde(default)]
    pub output: Option<String>,
    /// Negative control: perturbs the operators checked by `verify-algebra`.
    #[serde(default)]
    pub corrupt: bool,
}

fn generic() -> ListOrKeyword {
    ListOrKeyword::Keyword("generic".into())
}

/// A validated configuration with exact parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Run {
    pub n_colours: usize,
    pub n_slots: usize,
    pub lambda: Vec<usize>,
    pub q: Vec<Rational>,
    pub b: Vec<Rational>,
    pub mode: Mode,
    pub smax: usize,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub cutoff: usize,
    pub max_steps: Option<usize>,
    pub output: Option<String>,
    pub corrupt: bool,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<Run, CliError> {
        let n_colours = self.n_colours.unwrap_or(self.lambda.len());
        let n_slots = self.n_slots.unwrap_or(self.lambda.iter().sum());
        if n_colours == 0 {
            return Err(CliError::Config("N must be positive".into()));
        }
        if self.lambda.len() != n_colours {
            return Err(CliError::Config(format!("lambda has {} parts, N = {n_colours}", self.lambda.len())));
        }
        if self.lambda.iter().sum::<usize>() != n_slots {
            return Err(CliError::Config(format!("lambda {:?} does not sum to n = {n_slots}", self.lambda)));
        }
        let q = match &self.q {
            ListOrKeyword::Keyword(k) if k == "ones" => vec![Rational::from_i64(1); n_colours],
            ListOrKeyword::Keyword(k) => return Err(CliError::Config(format!("unknown q keyword {k:?}"))),
            ListOrKeyword::List(v) => v.iter().map(Number::to_rational).collect::<Result<_, _>>()?,
        };
        if q.len() != n_colours {
            return Err(CliError::Config(format!("q has {} entries, N = {n_colours}", q.len())));
        }
        if q.iter().any(|x| x.is_zero()) {
            return Err(CliError::Config("q must be nonzero".into()));
        }
        let b = match &self.b {
            ListOrKeyword::Keyword(k) if k == "generic" => (0..n_slots as i64).map(|s| Rational::from_i64(2 * s)).collect(),
            ListOrKeyword::Keyword(k) => return Err(CliError::Config(format!("unknown b keyword {k:?}"))),
            ListOrKeyword::List(v) => v.iter().map(Number::to_rational).collect::<Result<Vec<_>, _>>()?,
        };
        if b.len() != n_slots {
            return Err(CliError::Config(format!("b has {} entries, n = {n_slots}", b.len())));
        }
        let t = &self.tolerances;
        if [t.newton, t.dedup, t.offdiag, t.eig].iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(CliError::Config("tolerances must be positive".into()));
        }
        Ok(Run {
            n_colours,
            n_slots,
            lambda: self.lambda.clone(),
            q,
            b,
            mode: self.mode,
            smax: self.smax.unwrap_or(n_slots + n_colours + 2),
            tolerances: self.tolerances.clone(),
            seed: self.seed,
            cutoff: self.cutoff,
            max_steps: self.max_steps,
            output: self.output.clone(),
            corrupt: self.corrupt,
        })
    }
}

impl Run {
    pub fn q_complex(&self) -> Vec<Complex> {
        self.q.iter().map(Scalar::to_complex).collect()
    }

    pub fn b_complex(&self) -> Vec<Complex> {
        self.b.iter().map(Scalar::to_complex).collect()
    }

    pub fn q_is_ones(&self) -> bool {
        self.q.iter().all(|x| *x == Rational::from_i64(1))
    }

    pub fn is_partition(&self) -> bool {
        self.lambda.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn solver_options(&self) -> SolverOptions {
        let mut opts = SolverOptions {
            newton_tol: self.tolerances.newton,
            dedup_tol: self.tolerances.dedup,
            offdiag_tol: self.tolerances.offdiag,
            seed: self.seed,
            ..SolverOptions::default()
        };
        if let Some(steps) = self.max_steps {
            opts.max_steps = steps;
        }
        opts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_b_and_defaults() {
        let run = RunConfig::from_json(r#"{"lambda": [2, 1], "q": [1, "2"]}"#).unwrap().validate().unwrap();
        assert_eq!(run.b, vec![Rational::from_i64(0), Rational::from_i64(2), Rational::from_i64(4)]);
        assert_eq!((run.n_colours, run.n_slots, run.smax, run.cutoff), (2, 3, 7, 3));
        assert_eq!(run.mode, Mode::Exact);
    }

    #[test]
    fn rationals_and_keywords() {
        let run = RunConfig::from_json(r#"{"lambda": [1, 1], "q": "ones", "b": ["1/2", 3.5], "mode": "float"}"#)
            .unwrap()
            .validate()
            .unwrap();
        assert!(run.q_is_ones());
        assert_eq!(run.b, vec![Rational::new(1.into(), 2.into()), Rational::new(7.into(), 2.into())]);
        assert_eq!(run.mode, Mode::Float);
    }

    #[test]
    fn schema_errors() {
        for bad in [
            r#"{"lambda": [1, 1], "q": [1, 2], "extra": 1}"#,
            r#"{"lambda": [1, 1], "q": [1]}"#,
            r#"{"lambda": [1, 1], "q": "twos"}"#,
            r#"{"lambda": [1, 1], "q": [1, 2], "b": [0]}"#,
            r#"{"N": 3, "lambda": [1, 1], "q": [1, 2]}"#,
            r#"{"lambda": [1, 1], "q": [0, 2]}"#,
            r#"{"lambda": [1, 1], "q": ["x/y", 2]}"#,
        ] {
            let r = RunConfig::from_json(bad).and_then(|c| c.validate());
            assert!(matches!(r, Err(CliError::Config(_))), "{bad}");
        }
    }
}
