//! Conversion of SNAP-style downloads into the `pairs.txt` / `groups.txt`
//! dataset layout.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use super::dataset::{GROUPS_FILE, PAIRS_FILE};
use crate::error::{Error, Result};

/// Source of community memberships.
#[derive(Debug, Clone, Copy)]
pub enum CommunitySource<'a> {
    /// `node label` lines; one community per distinct label.
    Labels(&'a str),
    /// One community per line (already in groups format).
    Lines(&'a str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionSummary {
    pub nodes: usize,
    pub edges: usize,
    pub communities: usize,
    pub dropped_self_loops: usize,
    pub dropped_members: usize,
}

#[derive(Debug, Clone)]
pub struct Converted {
    pub pairs: String,
    pub groups: String,
    pub summary: ConversionSummary,
}

/// Undirected, deduplicated, self-loop-free edges in first-seen order, and
/// communities restricted to nodes that appear in some edge.
pub fn convert_snap(edges: &str, communities: CommunitySource<'_>) -> Result<Converted> {
    let mut seen_nodes: HashSet<&str> = HashSet::new();
    let mut seen_edges: HashSet<(&str, &str)> = HashSet::new();
    let mut pairs = String::new();
    let mut dropped_self_loops = 0;
    for (lineno, line) in edges.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: lineno + 1,
                message: "expected at least 2 columns".into(),
            });
        };
        if a == b {
            dropped_self_loops += 1;
            continue;
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if seen_edges.insert(key) {
            seen_nodes.insert(a);
            seen_nodes.insert(b);
            pairs.push_str(a);
            pairs.push(' ');
            pairs.push_str(b);
            pairs.push('\n');
        }
    }

    let raw: Vec<Vec<&str>> = match communities {
        CommunitySource::Labels(text) => {
            // numeric labels sort numerically, others lexically after them
            let mut by_label: BTreeMap<(u64, &str), Vec<&str>> = BTreeMap::new();
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let mut tokens = line.split_whitespace();
                let (Some(node), Some(label)) = (tokens.next(), tokens.next()) else {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: "expected `node label`".into(),
                    });
                };
                let order = label.parse::<u64>().unwrap_or(u64::MAX);
                by_label.entry((order, label)).or_default().push(node);
            }
            by_label.into_values().collect()
        }
        CommunitySource::Lines(text) => text
            .lines()
            .map(|l| l.split_whitespace().collect::<Vec<_>>())
            .filter(|c| !c.is_empty() && !c[0].starts_with('#'))
            .collect(),
    };

    let mut groups = String::new();
    let mut kept = 0;
    let mut dropped_members = 0;
    for community in raw {
        let members: Vec<&str> = community
            .iter()
            .copied()
            .filter(|m| seen_nodes.contains(m))
            .collect();
        dropped_members += community.len() - members.len();
        if members.is_empty() {
            continue;
        }
        groups.push_str(&members.join(" "));
        groups.push('\n');
        kept += 1;
    }

    Ok(Converted {
        summary: ConversionSummary {
            nodes: seen_nodes.len(),
            edges: seen_edges.len(),
            communities: kept,
            dropped_self_loops,
            dropped_members,
        },
        pairs,
        groups,
    })
}

pub fn write_dataset(dir: &Path, converted: &Converted) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let pairs = dir.join(PAIRS_FILE);
    fs::write(&pairs, &converted.pairs).map_err(|e| Error::io(&pairs, e))?;
    let groups = dir.join(GROUPS_FILE);
    fs::write(&groups, &converted.groups).map_err(|e| Error::io(&groups, e))?;
    Ok(())
}
