use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const PAIRS_FILE: &str = "pairs.txt";
pub const GROUPS_FILE: &str = "groups.txt";

/// A graph with known communities, loaded from `<dir>/<name>/pairs.txt`
/// (edge list) and `<dir>/<name>/groups.txt` (one community per line).
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub graph: Arc<Graph>,
    pub communities: Vec<Vec<usize>>,
}

/// One benchmark task: a graph and the single community to recover.
#[derive(Debug, Clone)]
pub struct CommunityTask {
    pub name: String,
    pub graph: Arc<Graph>,
    pub community: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommunitySelection {
    /// Largest community, first one on ties.
    #[default]
    Largest,
    /// First community with at least this many members.
    FirstMinSize(usize),
}

impl CommunitySelection {
    pub fn select<'a>(&self, communities: &'a [Vec<usize>]) -> Option<&'a Vec<usize>> {
        match *self {
            CommunitySelection::Largest => communities
                .iter()
                .rev()
                .max_by_key(|c| c.len()),
            CommunitySelection::FirstMinSize(k) => communities.iter().find(|c| c.len() >= k),
        }
    }
}

impl FromStr for CommunitySelection {
    type Err = Error;

    /// `largest` or `min:<k>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "largest" {
            return Ok(CommunitySelection::Largest);
        }
        s.strip_prefix("min:")
            .and_then(|k| k.parse().ok())
            .map(CommunitySelection::FirstMinSize)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown community selection `{s}`")))
    }
}

impl fmt::Display for CommunitySelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommunitySelection::Largest => f.write_str("largest"),
            CommunitySelection::FirstMinSize(k) => write!(f, "min:{k}"),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn dataset_dir(data_dir: &Path, name: &str) -> PathBuf {
    data_dir.join(name)
}

pub fn load_dataset(data_dir: impl AsRef<Path>, name: &str) -> Result<Dataset> {
    let dir = dataset_dir(data_dir.as_ref(), name);
    let pairs = read(&dir.join(PAIRS_FILE))?;
    let groups = read(&dir.join(GROUPS_FILE))?;
    let graph = Graph::from_edge_list(pairs.lines(), false)
        .map_err(|e| Error::Dataset(format!("{}: {e}", dir.join(PAIRS_FILE).display())))?;
    let communities = parse_groups(&graph, groups.lines())
        .map_err(|e| Error::Dataset(format!("{}: {e}", dir.join(GROUPS_FILE).display())))?;
    Ok(Dataset {
        name: name.to_string(),
        graph: Arc::new(graph),
        communities,
    })
}

/// One community per non-empty line of whitespace-separated node ids.
pub fn parse_groups<I, S>(graph: &Graph, lines: I) -> Result<Vec<Vec<usize>>>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut communities = Vec::new();
    for (lineno, line) in lines.into_iter().enumerate() {
        let line = line.as_ref().trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut members = Vec::new();
        for id in line.split_whitespace() {
            let u = graph.index_of(id).ok_or_else(|| Error::Parse {
                line: lineno + 1,
                message: format!("unknown node `{id}`"),
            })?;
            members.push(u);
        }
        members.sort_unstable();
        members.dedup();
        communities.push(members);
    }
    if communities.is_empty() {
        return Err(Error::Dataset("no communities".into()));
    }
    Ok(communities)
}

/// Lazily loads each dataset and picks one community per the selection
/// policy.
pub fn load_datasets_one_community<'a>(
    names: &'a [String],
    data_dir: &'a Path,
    selection: CommunitySelection,
) -> impl Iterator<Item = Result<CommunityTask>> + 'a {
    names.iter().map(move |name| {
        let dataset = load_dataset(data_dir, name)?;
        let community = selection
            .select(&dataset.communities)
            .cloned()
            .ok_or_else(|| {
                Error::Dataset(format!("{name}: no community matches selection `{selection}`"))
            })?;
        Ok(CommunityTask {
            name: dataset.name,
            graph: dataset.graph,
            community,
        })
    })
}
