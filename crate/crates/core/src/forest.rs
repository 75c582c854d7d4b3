//! Random-forest classifier built from scratch: bagged CART trees with
//! entropy splits, per-node random feature subsets, and mean-decrease-in-
//! impurity feature importance.
//!
//! Training is deterministic per seed: each tree derives its own generator,
//! candidate features are scanned in ascending index order, and equal-gain
//! splits resolve to the lowest feature index, then the lowest threshold.
//! Trees train in parallel; results do not depend on the thread count.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::Dataset;
use crate::seed::derived_rng;

#[derive(Debug, Error)]
pub enum ForestError {
    #[error("training data is empty")]
    EmptyDataset,
    #[error("training data contains a single class only")]
    SingleClass,
    #[error("need more than min_samples_leaf ({0}) rows, got {1}")]
    TooFewRows(usize, usize),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("prediction rows have {got} features, forest was trained on {expected}")]
    WidthMismatch { got: usize, expected: usize },
}

/// Feature-subset size scanned at each node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxFeatures {
    Sqrt,
    Log2,
    All,
}

impl MaxFeatures {
    fn count(self, m: usize) -> usize {
        let c = match self {
            MaxFeatures::Sqrt => (m as f64).sqrt() as usize,
            MaxFeatures::Log2 => (m as f64).log2() as usize,
            MaxFeatures::All => m,
        };
        c.clamp(1, m)
    }
}

/// Split quality criterion. Only entropy is supported.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitCriterion {
    #[default]
    Entropy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForestParams {
    pub n_trees: usize,
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    pub max_features: MaxFeatures,
    pub split_criterion: SplitCriterion,
    pub seed: u64,
}

impl Default for ForestParams {
    /// 50 trees, depth 10, minimum 50 samples per leaf, sqrt feature
    /// subsets, entropy splits.
    fn default() -> Self {
        ForestParams {
            n_trees: 50,
            max_depth: 10,
            min_samples_leaf: 50,
            max_features: MaxFeatures::Sqrt,
            split_criterion: SplitCriterion::Entropy,
            seed: 0,
        }
    }
}

impl ForestParams {
    /// Same parameters with a different seed.
    pub fn with_seed(self, seed: u64) -> Self {
        ForestParams { seed, ..self }
    }

    fn validate(&self) -> Result<(), ForestError> {
        if self.n_trees < 1 || self.max_depth < 1 || self.min_samples_leaf < 1 {
            return Err(ForestError::BadParams(
                "n_trees, max_depth, min_samples_leaf must all be >= 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
enum Node {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        prob_one: f64,
    },
}

#[derive(Debug, Clone)]
struct Tree {
    nodes: Vec<Node>,
}

impl Tree {
    fn predict_row(&self, data: &Dataset, row: usize) -> f64 {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf { prob_one } => return *prob_one,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if data.column(*feature)[row] < *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }
}

/// Trained ensemble with normalized MDI feature importance.
#[derive(Debug, Clone)]
pub struct Forest {
    trees: Vec<Tree>,
    importance: Vec<f64>,
    n_features: usize,
    params: ForestParams,
}

fn entropy(pos: usize, total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let p = pos as f64 / total as f64;
    let mut h = 0.0;
    if p > 0.0 {
        h -= p * p.ln();
    }
    if p < 1.0 {
        h -= (1.0 - p) * (1.0 - p).ln();
    }
    h
}

struct TreeGrower<'a> {
    data: &'a Dataset,
    params: &'a ForestParams,
    n_bootstrap: f64,
    nodes: Vec<Node>,
    importance: Vec<f64>,
    feature_pool: Vec<usize>,
}

struct BestSplit {
    feature: usize,
    threshold: f64,
    gain: f64,
}

impl<'a> TreeGrower<'a> {
    fn grow(&mut self, rows: Vec<usize>, depth: usize, rng: &mut rand_chacha::ChaCha8Rng) -> usize {
        let n = rows.len();
        let pos = rows
            .iter()
            .filter(|&&r| self.data.labels()[r] == 1)
            .count();

        let stop = pos == 0
            || pos == n
            || depth >= self.params.max_depth
            || n < 2 * self.params.min_samples_leaf;
        let best = if stop { None } else { self.best_split(&rows, rng) };

        match best {
            None => {
                self.nodes.push(Node::Leaf {
                    prob_one: pos as f64 / n as f64,
                });
                self.nodes.len() - 1
            }
            Some(split) => {
                // Weight the gain by the fraction of the tree's samples
                // reaching this node (MDI contribution).
                self.importance[split.feature] += (n as f64 / self.n_bootstrap) * split.gain;

                let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
                    .into_iter()
                    .partition(|&r| self.data.column(split.feature)[r] < split.threshold);
                let index = self.nodes.len();
                self.nodes.push(Node::Leaf { prob_one: 0.0 }); // placeholder
                let left = self.grow(left_rows, depth + 1, rng);
                let right = self.grow(right_rows, depth + 1, rng);
                self.nodes[index] = Node::Split {
                    feature: split.feature,
                    threshold: split.threshold,
                    left,
                    right,
                };
                index
            }
        }
    }

    fn best_split(
        &mut self,
        rows: &[usize],
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> Option<BestSplit> {
        let m = self.data.n_features();
        let n_candidates = self.params.max_features.count(m);

        // Draw the candidate subset, then scan in ascending index order so
        // equal gains resolve to the lowest feature index.
        crate::seed::shuffle(&mut self.feature_pool, rng);
        let mut candidates: Vec<usize> = self.feature_pool[..n_candidates].to_vec();
        candidates.sort_unstable();

        let n = rows.len();
        let pos_total = rows
            .iter()
            .filter(|&&r| self.data.labels()[r] == 1)
            .count();
        let parent_entropy = entropy(pos_total, n);
        let min_leaf = self.params.min_samples_leaf;

        let mut best: Option<BestSplit> = None;
        let mut sorted: Vec<(f64, u8)> = Vec::with_capacity(n);
        for &feature in &candidates {
            let column = self.data.column(feature);
            sorted.clear();
            sorted.extend(rows.iter().map(|&r| (column[r], self.data.labels()[r])));
            sorted.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

            let mut pos_left = 0usize;
            for i in 0..n - 1 {
                pos_left += usize::from(sorted[i].1 == 1);
                if sorted[i].0 == sorted[i + 1].0 {
                    continue;
                }
                let n_left = i + 1;
                let n_right = n - n_left;
                if n_left < min_leaf || n_right < min_leaf {
                    continue;
                }
                let h_left = entropy(pos_left, n_left);
                let h_right = entropy(pos_total - pos_left, n_right);
                let gain = parent_entropy
                    - (n_left as f64 / n as f64) * h_left
                    - (n_right as f64 / n as f64) * h_right;
                if gain <= 1e-12 {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some(b) => gain > b.gain,
                };
                if better {
                    best = Some(BestSplit {
                        feature,
                        threshold: 0.5 * (sorted[i].0 + sorted[i + 1].0),
                        gain,
                    });
                }
            }
        }
        best
    }
}

/// Grow `params.n_trees` CART trees on bootstrap samples of `data`.
pub fn train_forest(data: &Dataset, params: &ForestParams) -> Result<Forest, ForestError> {
    params.validate()?;
    let n = data.n_rows();
    if n == 0 {
        return Err(ForestError::EmptyDataset);
    }
    if !data.has_both_classes() {
        return Err(ForestError::SingleClass);
    }
    if n <= params.min_samples_leaf {
        return Err(ForestError::TooFewRows(params.min_samples_leaf, n));
    }

    let grown: Vec<(Tree, Vec<f64>)> = (0..params.n_trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = derived_rng(params.seed, "forest.tree", t as u64);
            let rows: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let mut grower = TreeGrower {
                data,
                params,
                n_bootstrap: rows.len() as f64,
                nodes: Vec::new(),
                importance: vec![0.0; data.n_features()],
                feature_pool: (0..data.n_features()).collect(),
            };
            grower.grow(rows, 0, &mut rng);
            (
                Tree {
                    nodes: grower.nodes,
                },
                grower.importance,
            )
        })
        .collect();

    // Average per-tree importance in tree order, then normalize.
    let mut importance = vec![0.0; data.n_features()];
    let mut trees = Vec::with_capacity(params.n_trees);
    for (tree, tree_importance) in grown {
        for (acc, v) in importance.iter_mut().zip(&tree_importance) {
            *acc += v;
        }
        trees.push(tree);
    }
    for v in &mut importance {
        *v /= params.n_trees as f64;
    }
    let total: f64 = importance.iter().sum();
    if total > 0.0 {
        for v in &mut importance {
            *v /= total;
        }
    }

    Ok(Forest {
        trees,
        importance,
        n_features: data.n_features(),
        params: *params,
    })
}

impl Forest {
    /// Mean over trees of the leaf class-1 frequency, per row of `data`.
    pub fn predict_proba(&self, data: &Dataset) -> Result<Vec<f64>, ForestError> {
        if data.n_features() != self.n_features {
            return Err(ForestError::WidthMismatch {
                got: data.n_features(),
                expected: self.n_features,
            });
        }
        let n_trees = self.trees.len() as f64;
        Ok((0..data.n_rows())
            .map(|row| {
                let sum: f64 = self.trees.iter().map(|t| t.predict_row(data, row)).sum();
                sum / n_trees
            })
            .collect())
    }

    /// Normalized mean-decrease-in-impurity importance; sums to 1 when any
    /// split occurred, all-zero otherwise.
    pub fn feature_importance(&self) -> &[f64] {
        &self.importance
    }

    pub fn params(&self) -> &ForestParams {
        &self.params
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }
}
