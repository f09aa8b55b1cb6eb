//! Text formats: network JSON literals, weighted split system JSON, distance
//! matrices (PHYLIP-style square or `i,j,d` CSV), and report JSON.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, WeightedSplitSystem};
use crate::network::Network;
use crate::optimize::OptimizationResult;
use crate::polytope::FaceReport;
use crate::rational::{self, Rational};
use crate::split::{CircularOrdering, Split};
use crate::vector::pair_count;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkLiteral {
    n: usize,
    ordering: Vec<usize>,
    #[serde(default)]
    bridges: Vec<Vec<usize>>,
}

fn malformed(e: impl std::fmt::Display) -> Error {
    Error::Malformed(e.to_string())
}

/// `{"n":5,"ordering":[1,2,3,4,5],"bridges":[[4,5]]}`; bridges may name
/// either side.
pub fn parse_network(text: &str) -> Result<Network> {
    let lit: NetworkLiteral = serde_json::from_str(text).map_err(malformed)?;
    if lit.ordering.len() != lit.n {
        return Err(Error::AmbientMismatch(lit.ordering.len(), lit.n));
    }
    let c = CircularOrdering::new(&lit.ordering)?;
    let bridges = lit.bridges.iter().map(|b| Split::new(lit.n, b)).collect::<Result<Vec<_>>>()?;
    Network::new(&c, &bridges)
}

pub fn network_value(net: &Network) -> Value {
    let bridges: Vec<Vec<usize>> = net.bridges().iter().map(|b| b.part()).collect();
    json!({"n": net.n(), "ordering": net.ordering().as_slice(), "bridges": bridges})
}

/// Compact single-line literal, the inverse of [`parse_network`].
pub fn network_to_json(net: &Network) -> String {
    network_value(net).to_string()
}

#[derive(Deserialize)]
struct WeightedSplitLiteral {
    part: Vec<usize>,
    #[serde(deserialize_with = "crate::rational::serde_text::deserialize")]
    weight: Rational,
}

#[derive(Deserialize)]
struct WeightedSystemLiteral {
    n: usize,
    #[serde(default)]
    ordering: Option<Vec<usize>>,
    splits: Vec<WeightedSplitLiteral>,
}

/// `{"n":5,"ordering":[...],"splits":[{"part":[4,5],"weight":"1/2"}]}`.
pub fn parse_weighted_splits(text: &str) -> Result<WeightedSplitSystem> {
    let lit: WeightedSystemLiteral = serde_json::from_str(text).map_err(malformed)?;
    let ordering = lit.ordering.as_deref().map(CircularOrdering::new).transpose()?;
    let weights =
        lit.splits.iter().map(|s| Ok((Split::new(lit.n, &s.part)?, s.weight.clone()))).collect::<Result<Vec<_>>>()?;
    WeightedSplitSystem::new(lit.n, weights, ordering)
}

pub fn weighted_splits_to_json(ws: &WeightedSplitSystem) -> String {
    let splits: Vec<Value> =
        ws.weights().iter().map(|(s, w)| json!({"part": s.part(), "weight": rational::format(w)})).collect();
    let mut v = json!({"n": ws.n(), "splits": splits});
    if let Some(c) = ws.ordering() {
        v["ordering"] = json!(c.as_slice());
    }
    v.to_string()
}

/// A parsed distance matrix and the taxon labels in input order (taxon `t`
/// is `labels[t - 1]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledMatrix {
    pub matrix: DistanceMatrix,
    pub labels: Vec<String>,
}

/// Reads either format: a first line holding a single integer selects the
/// square format, anything else is read as `i,j,d` rows.
pub fn parse_distance_matrix(text: &str) -> Result<LabelledMatrix> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).ok_or(Error::EmptyInput)?;
    if first.parse::<usize>().is_ok() {
        parse_phylip(text)
    } else {
        parse_csv(text)
    }
}

pub fn parse_phylip(text: &str) -> Result<LabelledMatrix> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n: usize = lines.next().ok_or(Error::EmptyInput)?.parse().map_err(malformed)?;
    let mut labels = Vec::with_capacity(n);
    let mut full: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for row in 0..n {
        let line = lines.next().ok_or_else(|| Error::Malformed(format!("missing row {}", row + 1)))?;
        let mut fields = line.split_whitespace();
        labels.push(fields.next().expect("nonempty line").to_string());
        let values = fields.map(rational::parse).collect::<Result<Vec<_>>>()?;
        if values.len() != n {
            return Err(Error::Malformed(format!("row {} has {} entries, expected {n}", row + 1, values.len())));
        }
        full.push(values);
    }
    if lines.next().is_some() {
        return Err(Error::Malformed("trailing rows after the matrix".into()));
    }
    let mut seen = BTreeMap::new();
    for (t, l) in labels.iter().enumerate() {
        if let Some(prev) = seen.insert(l.clone(), t) {
            return Err(Error::Malformed(format!("label {l:?} on rows {} and {}", prev + 1, t + 1)));
        }
    }
    let mut entries = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        if !full[i][i].is_zero() {
            return Err(Error::Malformed(format!("nonzero diagonal entry at row {}", i + 1)));
        }
        for j in i + 1..n {
            if full[i][j] != full[j][i] {
                return Err(Error::AsymmetricInput(i + 1, j + 1));
            }
            entries.push(full[i][j].clone());
        }
    }
    Ok(LabelledMatrix { matrix: DistanceMatrix::new(n, entries)?, labels })
}

/// `i,j,d_ij` rows over taxa `1..=n`, an optional header line, each
/// unordered pair exactly once (or both orders with equal values).
pub fn parse_csv(text: &str) -> Result<LabelledMatrix> {
    let mut given: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    let mut n = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::Malformed(format!("line {}: expected i,j,d", lineno + 1)));
        }
        let (Ok(i), Ok(j)) = (fields[0].parse::<usize>(), fields[1].parse::<usize>()) else {
            if given.is_empty() {
                continue; // header
            }
            return Err(Error::Malformed(format!("line {}: bad taxon index", lineno + 1)));
        };
        if i == 0 || j == 0 {
            return Err(Error::Malformed(format!("line {}: taxa are numbered from 1", lineno + 1)));
        }
        let d = rational::parse(fields[2])?;
        if i == j {
            if !d.is_zero() {
                return Err(Error::Malformed(format!("nonzero diagonal entry for taxon {i}")));
            }
            n = n.max(i);
            continue;
        }
        let key = (i.min(j), i.max(j));
        if let Some(prev) = given.get(&key) {
            if prev != &d {
                return Err(Error::AsymmetricInput(key.0, key.1));
            }
        }
        given.insert(key, d);
        n = n.max(i).max(j);
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut entries = Vec::with_capacity(pair_count(n));
    for i in 1..=n {
        for j in i + 1..=n {
            entries.push(given.remove(&(i, j)).ok_or_else(|| Error::Malformed(format!("missing entry {i},{j}")))?);
        }
    }
    let labels = (1..=n).map(|t| t.to_string()).collect();
    Ok(LabelledMatrix { matrix: DistanceMatrix::new(n, entries)?, labels })
}

pub fn face_report_value(r: &FaceReport) -> Value {
    let coeffs: Vec<String> = r.functional.coeffs.entries().iter().map(rational::format).collect();
    json!({
        "family": r.family.as_str(),
        "label": r.label,
        "functional": {
            "coeffs": coeffs,
            "bound": rational::format(&r.functional.bound),
            "sense": r.functional.sense.as_str(),
        },
        "valid": r.valid,
        "tight_count": r.tight_count,
        "tight_dim": r.tight_dim,
        "tight": r.tight.iter().map(network_value).collect::<Vec<_>>(),
    })
}

pub fn optimization_value(r: &OptimizationResult) -> Value {
    json!({
        "minimum": rational::format(&r.minimum),
        "argmin": r.argmin.iter().map(network_value).collect::<Vec<_>>(),
        "evaluated": r.evaluated.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn network_round_trip() {
        let net = parse_network(r#"{"n":5,"ordering":[1,2,3,4,5],"bridges":[[2,3],[4,5]]}"#).unwrap();
        assert_eq!(net.k(), 2);
        let text = network_to_json(&net);
        assert_eq!(parse_network(&text).unwrap(), net);
        // Bridges may be given by the side holding taxon 1.
        let other = parse_network(r#"{"n":5,"ordering":[5,4,3,2,1],"bridges":[[1,2,3]]}"#).unwrap();
        assert_eq!(other, parse_network(r#"{"n":5,"ordering":[1,2,3,4,5],"bridges":[[4,5]]}"#).unwrap());
    }

    #[test]
    fn network_errors() {
        assert!(matches!(parse_network("{"), Err(Error::Malformed(_))));
        assert!(matches!(
            parse_network(r#"{"n":5,"ordering":[1,2,3,4],"bridges":[]}"#),
            Err(Error::AmbientMismatch(4, 5))
        ));
        assert!(matches!(
            parse_network(r#"{"n":5,"ordering":[1,2,3,4,5],"bridges":[[2,4]]}"#),
            Err(Error::NotAnArc(_))
        ));
    }

    #[test]
    fn weighted_round_trip() {
        let text = r#"{"n":5,"ordering":[1,2,3,4,5],"splits":[{"part":[4,5],"weight":"1/2"},{"part":[2],"weight":"0.25"},{"part":[3],"weight":2}]}"#;
        let ws = parse_weighted_splits(text).unwrap();
        assert_eq!(ws.weight(&Split::new(5, &[4, 5]).unwrap()), Some(&ratio(1, 2)));
        assert_eq!(ws.weight(&Split::new(5, &[2]).unwrap()), Some(&ratio(1, 4)));
        assert_eq!(ws.weight(&Split::new(5, &[3]).unwrap()), Some(&int(2)));
        assert_eq!(parse_weighted_splits(&weighted_splits_to_json(&ws)).unwrap(), ws);
    }

    #[test]
    fn phylip_and_csv_agree() {
        let phylip = "4\na 0 1 2 3\nb 1 0 4 5\nc 2 4 0 6.5\nd 3 5 6.5 0\n";
        let p = parse_distance_matrix(phylip).unwrap();
        assert_eq!(p.labels, vec!["a", "b", "c", "d"]);
        assert_eq!(p.matrix.get(3, 4), ratio(13, 2));
        let csv = "i,j,d_ij\n1,2,1\n1,3,2\n1,4,3\n2,3,4\n2,4,5\n3,4,6.5\n";
        assert_eq!(parse_distance_matrix(csv).unwrap().matrix, p.matrix);
    }

    #[test]
    fn matrix_errors() {
        assert!(matches!(parse_distance_matrix("3\na 0 1 2\nb 1 0 3\nc 2 4 0\n"), Err(Error::AsymmetricInput(2, 3))));
        assert!(matches!(
            parse_distance_matrix("3\na 0 -1 2\nb -1 0 3\nc 2 3 0\n"),
            Err(Error::NegativeDistance(1, 2))
        ));
        assert!(matches!(parse_distance_matrix("3\na 1 1 2\nb 1 0 3\nc 2 3 0\n"), Err(Error::Malformed(_))));
        assert!(matches!(parse_distance_matrix(""), Err(Error::EmptyInput)));
        assert!(matches!(parse_distance_matrix("1,2,1\n"), Err(Error::BadTaxonCount(2))));
        assert!(matches!(parse_distance_matrix("1,2,1\n1,3,1\n"), Err(Error::Malformed(_))));
        assert!(matches!(parse_distance_matrix("1,2,x\n"), Err(Error::Malformed(_))));
    }
}
