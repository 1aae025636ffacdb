use anyhow::{bail, Context, Result};
use rdl_core::graphs::{FiniteGraph, GraphFamily};

/// Parses family specs such as `pathpower:1`, `karytree:2`, `grid:2`,
/// `omega-kbip:2,1`, `omega:FILE`, `forest:FILE` and `graph:FILE`, where FILE
/// holds an edge list.
pub fn parse_family(spec: &str) -> Result<GraphFamily> {
    let (kind, arg) = spec.split_once(':').with_context(|| format!("family {spec:?} needs the form kind:arg"))?;
    let num = || arg.parse::<usize>().with_context(|| format!("family {spec:?}: {arg:?} is not a natural number"));
    let file = || -> Result<FiniteGraph> {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        Ok(FiniteGraph::parse_edge_list(&text)?)
    };
    let family = match kind {
        "pathpower" | "path" => GraphFamily::PathPower(num()?),
        "karytree" => GraphFamily::KAryTree(num()?),
        "grid" => GraphFamily::Grid(num()?),
        "omega-kbip" => {
            let (r, s) = arg.split_once(',').with_context(|| format!("family {spec:?} needs omega-kbip:r,s"))?;
            GraphFamily::OmegaFactor(FiniteGraph::complete_bipartite(r.trim().parse()?, s.trim().parse()?))
        }
        "omega" => GraphFamily::OmegaFactor(file()?),
        "forest" => GraphFamily::ExplicitForest(file()?),
        "graph" => GraphFamily::Explicit(file()?),
        other => bail!("unknown family kind {other:?}"),
    };
    family.validate()?;
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_builtin_families() {
        assert_eq!(parse_family("karytree:2").unwrap(), GraphFamily::KAryTree(2));
        assert_eq!(parse_family("path:3").unwrap(), GraphFamily::PathPower(3));
        assert_eq!(parse_family("grid:2").unwrap(), GraphFamily::Grid(2));
        assert_eq!(parse_family("omega-kbip:1,2").unwrap(), GraphFamily::OmegaFactor(FiniteGraph::complete_bipartite(1, 2)));
        assert!(parse_family("karytree:0").is_err());
        assert!(parse_family("tree").is_err());
        assert!(parse_family("blob:1").is_err());
    }
}
