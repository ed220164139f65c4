use crate::args::{AnalyzeArgs, TreeArgs};
use anyhow::{bail, Context, Result};
use boolfun::textfmt::parse_function;
use boolfun::{greedy_influence_tree, tree_error, Family, FamilySpec, Fourier64};
use std::fmt::Write as _;
use std::path::PathBuf;

/// Loads the function either from a family spec (seeded) or from a one-line
/// function file; returns it with a printable label.
pub fn load_function(
    family: &Option<String>,
    input: &Option<PathBuf>,
    seed: u64,
) -> Result<(Fourier64, String)> {
    match (family, input) {
        (Some(spec), None) => {
            let family: Family = spec
                .parse()
                .with_context(|| format!("bad --family value {spec:?}"))?;
            let label = family.to_string();
            let (f, _) = FamilySpec::new(family, seed).generate()?;
            Ok((f, label))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .context("input file holds no function line")?;
            Ok((parse_function(line)?, path.display().to_string()))
        }
        (Some(_), Some(_)) => bail!("--family and --input are mutually exclusive"),
        (None, None) => bail!("provide either --family or --input"),
    }
}

pub fn cmd_analyze(args: &AnalyzeArgs, seed: u64) -> Result<String> {
    let (f, label) = load_function(&args.family, &args.input, seed)?;
    let influences = f.influences();
    let mut out = String::new();
    let _ = writeln!(out, "source: {label}");
    let _ = writeln!(out, "n: {}", f.n());
    let _ = writeln!(out, "degree: {}", f.degree());
    let _ = writeln!(out, "mean: {}", f.mean());
    let _ = writeln!(out, "variance: {}", f.variance());
    let _ = writeln!(out, "total_influence: {}", f.total_influence());
    let joined: Vec<String> = influences.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "influences: {}", joined.join(" "));
    let _ = writeln!(out, "terms: {}", f.term_count());
    for (s, c) in f.terms() {
        let _ = writeln!(out, "{s} {c}");
    }
    Ok(out)
}

pub fn cmd_tree(args: &TreeArgs, seed: u64) -> Result<String> {
    anyhow::ensure!(
        args.var_threshold.is_finite() && args.var_threshold >= 0.0,
        "--var-threshold must be nonnegative"
    );
    let (f, label) = load_function(&args.family, &args.input, seed)?;
    let tree = greedy_influence_tree(&f, args.var_threshold, args.depth_budget, args.clamp)?;
    let error = tree_error(&f, &tree)?;
    let mut out = String::new();
    let _ = writeln!(out, "source: {label}");
    let _ = writeln!(out, "tree: {tree}");
    let _ = writeln!(out, "depth: {}", tree.depth());
    let _ = writeln!(out, "leaves: {}", tree.leaf_count());
    let _ = writeln!(out, "error: {error}");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::{AnalyzeArgs, TreeArgs};

    #[test]
    fn analyze_dictator_text() {
        let args = AnalyzeArgs {
            family: Some("dictator:n=2".into()),
            input: None,
            seed: None,
        };
        let text = cmd_analyze(&args, 0).unwrap();
        assert!(text.contains("degree: 1"));
        assert!(text.contains("variance: 0.25"));
        assert!(text.contains("influences: 0.25 0"));
        assert!(text.contains("0 0.5\n"));
        assert!(text.contains("1 0.5\n"));
    }

    #[test]
    fn tree_of_dictator_is_one_query() {
        let args = TreeArgs {
            family: Some("dictator:n=2".into()),
            input: None,
            seed: None,
            var_threshold: 0.0,
            depth_budget: 4,
            clamp: false,
        };
        let text = cmd_tree(&args, 0).unwrap();
        assert!(text.contains("tree: (q=0 + leaf(1) - leaf(0))"));
        assert!(text.contains("error: 0\n"));
    }

    #[test]
    fn source_exclusivity_enforced() {
        let args = AnalyzeArgs {
            family: None,
            input: None,
            seed: None,
        };
        assert!(cmd_analyze(&args, 0).is_err());
    }
}
