use std::collections::HashMap;
use std::fmt::Write;

use sha2::{Digest, Sha256};

use super::graph::LabeledGraph;

/// Digest of one relabeling step.
///
/// The canonical form is the node's own label followed by its neighbors'
/// labels in byte-lexicographic order, each written as `<byte length>:<text>`
/// with no separator. The result is the first 16 bytes of its SHA-256 in
/// lowercase hex.
pub fn wl_digest(own: &str, sorted_neighbors: &[&str]) -> String {
    let mut canonical = String::with_capacity(own.len() + 8);
    for part in std::iter::once(&own).chain(sorted_neighbors) {
        write!(canonical, "{}:{}", part.len(), part).unwrap();
    }
    hex::encode(&Sha256::digest(canonical.as_bytes())[..16])
}

/// Weisfeiler-Lehman rooted subgraph labels of `g` for depths `0..=depth`.
///
/// Depth-0 entries are the raw node labels; each later depth relabels every
/// node from its previous label and its neighbors' previous labels. The
/// result is ordered by depth, then node, and has `|N| * (depth + 1)` entries.
pub fn extract_rooted_subgraphs(g: &LabeledGraph, depth: usize) -> Vec<String> {
    let adj = g.neighbors();
    let mut current: Vec<String> = g.labels().to_vec();
    let mut out = Vec::with_capacity(current.len() * (depth + 1));
    out.extend(current.iter().cloned());
    for _ in 0..depth {
        let next: Vec<String> = adj
            .iter()
            .enumerate()
            .map(|(i, nbrs)| {
                let mut labels: Vec<&str> = nbrs.iter().map(|&j| current[j].as_str()).collect();
                labels.sort_unstable();
                wl_digest(&current[i], &labels)
            })
            .collect();
        out.extend(next.iter().cloned());
        current = next;
    }
    out
}

/// Subgraph label → dense id, with per-graph contexts.
#[derive(Debug, Clone, PartialEq)]
pub struct SubgraphVocabulary {
    labels: Vec<String>,
    counts: Vec<u64>,
    index: HashMap<String, u32>,
    contexts: Vec<Vec<u32>>,
    total_count: u64,
}

impl SubgraphVocabulary {
    /// Ids follow first appearance across `documents`. Labels seen fewer than
    /// `min_count` times in the corpus are dropped.
    pub fn build(documents: &[Vec<String>], min_count: u64) -> Self {
        let mut raw: HashMap<&str, u64> = HashMap::new();
        for label in documents.iter().flatten() {
            *raw.entry(label.as_str()).or_default() += 1;
        }
        let mut vocab = SubgraphVocabulary {
            labels: Vec::new(),
            counts: Vec::new(),
            index: HashMap::new(),
            contexts: Vec::with_capacity(documents.len()),
            total_count: 0,
        };
        for doc in documents {
            let mut ctx = Vec::with_capacity(doc.len());
            for label in doc {
                if raw[label.as_str()] < min_count {
                    continue;
                }
                let next = vocab.labels.len() as u32;
                let id = *vocab.index.entry(label.clone()).or_insert_with(|| {
                    vocab.labels.push(label.clone());
                    vocab.counts.push(0);
                    next
                });
                vocab.counts[id as usize] += 1;
                ctx.push(id);
            }
            vocab.total_count += ctx.len() as u64;
            vocab.contexts.push(ctx);
        }
        vocab
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn id(&self, label: &str) -> Option<u32> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: u32) -> &str {
        &self.labels[id as usize]
    }

    /// Occurrences of each subgraph id across the corpus.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Subgraph ids occurring in each graph, with repetition.
    pub fn contexts(&self) -> &[Vec<u32>] {
        &self.contexts
    }

    /// Total subgraph occurrences in the corpus.
    pub fn total_count(&self) -> u64 {
        self.total_count
    }
}
