//! `mutate` and `verify` subcommands.

use std::path::Path;

use thiserror::Error;

use hqp::gca::mutate_seed;
use hqp::io::{export_document, Document};
use hqp::pathalg::mutate_qp;
use hqp::verify::{run_suite, Suite, SuiteReport, VerifyConfig};

use crate::session::{parse_document, SessionOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot parse input: {0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("verification failed")]
    Failed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Io(_) | CliError::Failed => 1,
        }
    }
}

/// Parses `"1,2 1"`-style paths; the empty string is the empty path.
pub fn parse_path(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| CliError::Usage(format!("bad vertex '{t}' in path"))))
        .collect()
}

pub fn mutate_document(text: &str, path: &[usize], opts: &SessionOptions) -> Result<String, CliError> {
    let doc = parse_document(text, opts).map_err(|e| CliError::Parse(e.to_string()))?;
    let out = match doc {
        Document::Seed(mut s) => {
            for &k in path {
                s = mutate_seed(&s, k).map_err(|e| CliError::Precondition(e.to_string()))?;
            }
            Document::Seed(s)
        }
        Document::Qp(mut q) => {
            for &k in path {
                q = mutate_qp(&q, k).map_err(|e| CliError::Precondition(e.to_string()))?;
            }
            Document::Qp(q)
        }
    };
    Ok(export_document(&out))
}

pub fn cmd_mutate(input: &Path, path: &str, output: &Path, opts: &SessionOptions) -> Result<(), CliError> {
    let path = parse_path(path)?;
    let text = std::fs::read_to_string(input)?;
    let out = mutate_document(&text, &path, opts)?;
    std::fs::write(output, out)?;
    Ok(())
}

pub fn cmd_verify(suite: &str, cfg: &VerifyConfig) -> Result<SuiteReport, CliError> {
    let suite: Suite = suite.parse().map_err(CliError::Usage)?;
    Ok(run_suite(suite, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths() {
        assert_eq!(parse_path("").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_path("1,2 3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_path("x").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn unknown_suite_is_usage_error() {
        assert_eq!(cmd_verify("bogus", &VerifyConfig::default()).unwrap_err().exit_code(), 2);
    }
}
