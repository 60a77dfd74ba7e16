//! Textual algorithm descriptions used by the command line.
//!
//! ```text
//! spec    := base ("+sweep" | "+norm")*
//! base    := "ppr:" alpha | "hk:" t | "gf:" w0 ("," w)* | "tuned"
//!          | "ppr." digits      (ppr.85 == ppr:0.85)
//!          | "hk" number        (hk3 == hk:3)
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algorithm::{GraphFilter, SharedAlgorithm};
use crate::error::{Error, Result};
use crate::filters::{ConvergenceManager, GenericGraphFilter, HeatKernel, PageRank};
use crate::normalize::Preprocessor;
use crate::postprocess::{Normalize, Sweep};
use crate::tuner::default_tuner;

#[derive(Debug, Clone, PartialEq)]
pub enum BaseSpec {
    PageRank(f64),
    HeatKernel(f64),
    Generic(Vec<f64>),
    Tuned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wrapper {
    Sweep,
    Normalize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSpec {
    text: String,
    base: BaseSpec,
    wrappers: Vec<Wrapper>,
}

fn number(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::InvalidParameter(format!("bad {what} `{s}`")))
}

fn parse_base(s: &str) -> Result<BaseSpec> {
    let lower = s.to_ascii_lowercase();
    let base = if lower == "tuned" {
        BaseSpec::Tuned
    } else if let Some(alpha) = lower.strip_prefix("ppr:") {
        BaseSpec::PageRank(number(alpha, "PageRank alpha")?)
    } else if let Some(digits) = lower.strip_prefix("ppr.") {
        BaseSpec::PageRank(number(&format!("0.{digits}"), "PageRank alpha")?)
    } else if let Some(t) = lower.strip_prefix("hk:") {
        BaseSpec::HeatKernel(number(t, "heat kernel t")?)
    } else if let Some(t) = lower.strip_prefix("hk") {
        BaseSpec::HeatKernel(number(t, "heat kernel t")?)
    } else if let Some(weights) = lower.strip_prefix("gf:") {
        BaseSpec::Generic(
            weights
                .split(',')
                .map(|w| number(w, "filter weight"))
                .collect::<Result<_>>()?,
        )
    } else {
        return Err(Error::InvalidParameter(format!("unknown algorithm `{s}`")));
    };
    // range checks happen here so bad specs fail at parse time
    match &base {
        BaseSpec::PageRank(alpha) => {
            PageRank::new(*alpha)?;
        }
        BaseSpec::HeatKernel(t) => {
            HeatKernel::new(*t)?;
        }
        BaseSpec::Generic(w) => {
            GenericGraphFilter::new(w.clone())?;
        }
        BaseSpec::Tuned => {}
    }
    Ok(base)
}

impl FromStr for AlgorithmSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut rest = text.trim();
        let mut wrappers = Vec::new();
        loop {
            let lower = rest.to_ascii_lowercase();
            if lower.ends_with("+sweep") {
                wrappers.push(Wrapper::Sweep);
                rest = &rest[..rest.len() - "+sweep".len()];
            } else if lower.ends_with("+norm") {
                wrappers.push(Wrapper::Normalize);
                rest = &rest[..rest.len() - "+norm".len()];
            } else {
                break;
            }
        }
        wrappers.reverse();
        Ok(AlgorithmSpec {
            text: text.trim().to_string(),
            base: parse_base(rest)?,
            wrappers,
        })
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl AlgorithmSpec {
    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn base(&self) -> &BaseSpec {
        &self.base
    }

    pub fn wrappers(&self) -> &[Wrapper] {
        &self.wrappers
    }

    /// The bare filter, when the spec names one without wrappers.
    pub fn build_filter(
        &self,
        preprocessor: &Arc<Preprocessor>,
        convergence: ConvergenceManager,
    ) -> Result<Option<Arc<dyn GraphFilter>>> {
        if !self.wrappers.is_empty() {
            return Ok(None);
        }
        let pre = preprocessor.clone();
        Ok(match &self.base {
            BaseSpec::PageRank(alpha) => Some(Arc::new(
                PageRank::new(*alpha)?
                    .with_preprocessor(pre)
                    .with_convergence(convergence),
            )),
            BaseSpec::HeatKernel(t) => Some(Arc::new(
                HeatKernel::new(*t)?
                    .with_preprocessor(pre)
                    .with_convergence(convergence),
            )),
            BaseSpec::Generic(w) => Some(Arc::new(
                GenericGraphFilter::new(w.clone())?
                    .with_preprocessor(pre)
                    .with_convergence(convergence),
            )),
            BaseSpec::Tuned => None,
        })
    }

    pub fn build(&self, preprocessor: &Arc<Preprocessor>, convergence: ConvergenceManager) -> Result<SharedAlgorithm> {
        let unwrapped = AlgorithmSpec {
            wrappers: Vec::new(),
            ..self.clone()
        };
        let mut alg: SharedAlgorithm = match unwrapped.build_filter(preprocessor, convergence)? {
            Some(filter) => filter,
            None => Arc::new(default_tuner(preprocessor.clone())),
        };
        for wrapper in &self.wrappers {
            alg = match wrapper {
                Wrapper::Sweep => Sweep::wrap(alg),
                Wrapper::Normalize => Normalize::wrap(alg),
            };
        }
        Ok(alg)
    }
}

/// Splits a comma-separated list of specs. Numeric tokens following a
/// `gf:` spec are treated as more of its weights.
pub fn parse_algorithm_list(list: &str) -> Result<Vec<AlgorithmSpec>> {
    let mut texts: Vec<String> = Vec::new();
    for token in list.split(',').map(str::trim) {
        let continues_weights = texts.last().is_some_and(|prev| {
            let prev = prev.to_ascii_lowercase();
            prev.starts_with("gf:") && !prev.contains("+sweep") && !prev.contains("+norm")
        }) && token
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_digit() || c == '.' || c == '-');
        if continues_weights {
            let last = texts.last_mut().expect("checked above");
            last.push(',');
            last.push_str(token);
        } else if !token.is_empty() {
            texts.push(token.to_string());
        }
    }
    if texts.is_empty() {
        return Err(Error::InvalidParameter("no algorithms given".into()));
    }
    texts.iter().map(|t| t.parse()).collect()
}
