//! JSON input formats.
//!
//! A group spec is `{"degree": n, "generators": [[[cycle], …], …], "name": …}`
//! with 0-based cycles and fixed points omitted. A catalog is a list of
//! `(G, H, g)` triples, each with `H` and `g` given the same way.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

pub type CycleList = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<CycleList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(format!("group spec: {e}")))
    }

    pub fn from_group(g: &PermutationGroup, name: Option<String>) -> Self {
        GroupSpec {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.cycles()).collect(),
            name,
        }
    }

    pub fn to_group(&self) -> Result<PermutationGroup> {
        let gens = self
            .generators
            .iter()
            .map(|c| perm_from_cycles(self.degree, c))
            .collect::<Result<Vec<_>>>()?;
        PermutationGroup::new(self.degree, gens).map_err(spec_error)
    }
}

fn spec_error(e: Error) -> Error {
    match e {
        Error::Domain(m) | Error::Precondition(m) => Error::Spec(m),
        other => other,
    }
}

pub fn perm_from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
    Permutation::from_cycles(degree, cycles).map_err(spec_error)
}

/// Parses cycle notation such as `"(0 3)(1 2)"` or `"()"`; commas between
/// points are accepted.
pub fn parse_permutation(degree: usize, text: &str) -> Result<Permutation> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::Spec(format!("malformed cycle notation {text:?}")))?;
        let points = body
            .0
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| Error::Spec(format!("bad point {s:?} in {text:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body.1.trim_start();
    }
    perm_from_cycles(degree, &cycles)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntrySpec {
    pub name: String,
    pub group: GroupSpec,
    /// Generators of the vertex stabilizer `H`, on the group's points.
    pub stabilizer: Vec<CycleList>,
    pub flip: CycleList,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogSpec {
    pub entries: Vec<CatalogEntrySpec>,
}

impl CatalogSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(format!("catalog: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_spec_roundtrip() {
        let text = r#"{"degree": 4, "generators": [[[0, 1]], [[0, 1, 2, 3]]], "name": "S4"}"#;
        let spec = GroupSpec::from_json(text).unwrap();
        let g = spec.to_group().unwrap();
        assert_eq!(g.order(), 24);
        let back = GroupSpec::from_group(&g, Some("S4".into()));
        assert_eq!(back, spec);
        let again: GroupSpec = serde_json::from_str(&serde_json::to_string(&back).unwrap()).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn malformed_specs() {
        assert!(matches!(GroupSpec::from_json("{"), Err(Error::Spec(_))));
        assert!(matches!(GroupSpec::from_json(r#"{"degree": 3}"#), Err(Error::Spec(_))));
        let bad = GroupSpec::from_json(r#"{"degree": 3, "generators": [[[0, 5]]]}"#).unwrap();
        assert!(matches!(bad.to_group(), Err(Error::Spec(_))));
        let repeated = GroupSpec::from_json(r#"{"degree": 3, "generators": [[[0, 1, 0]]]}"#).unwrap();
        assert!(matches!(repeated.to_group(), Err(Error::Spec(_))));
    }

    #[test]
    fn cycle_notation() {
        let p = parse_permutation(4, "(0 3)(1 2)").unwrap();
        assert_eq!(p.to_string(), "(0 3)(1 2)");
        assert!(parse_permutation(4, "()").unwrap().is_identity());
        assert_eq!(parse_permutation(5, " (0,1, 2) ").unwrap().to_string(), "(0 1 2)");
        assert!(matches!(parse_permutation(4, "(0 1"), Err(Error::Spec(_))));
        assert!(matches!(parse_permutation(4, "(0 x)"), Err(Error::Spec(_))));
        assert!(matches!(parse_permutation(4, "(0 9)"), Err(Error::Spec(_))));
    }
}
