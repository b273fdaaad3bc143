//! Instance generators: the integrality gap family, the star instance,
//! seeded random instances with a planted clustering and unstructured
//! random instances.

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{EccError, Result};
use crate::hypergraph::{Edge, EdgeColoredHypergraph, NodeColoring};

/// Index of node `(i, j)`, `1 <= i < j <= k`, in the gap instance.
pub fn gap_node_index(k: u32, i: u32, j: u32) -> usize {
    debug_assert!(1 <= i && i < j && j <= k);
    let (k, i, j) = (k as usize, i as usize, j as usize);
    // pairs with first element < i come first
    let before: usize = (1..i).map(|a| k - a).sum();
    before + (j - i - 1)
}

/// The instance with one node per unordered color pair `{i, j}`, placed in
/// the edges of color `i` and `j`. Edge `c - 1` has color `c`.
pub fn gen_integrality_gap(k: u32) -> Result<EdgeColoredHypergraph> {
    if k < 3 {
        return Err(EccError::InvalidArgument(format!(
            "integrality gap instance needs k >= 3, got {k}"
        )));
    }
    let n = (k as usize) * (k as usize - 1) / 2;
    let mut members = vec![Vec::new(); k as usize];
    for i in 1..=k {
        for j in i + 1..=k {
            let v = gap_node_index(k, i, j);
            members[i as usize - 1].push(v);
            members[j as usize - 1].push(v);
        }
    }
    let edges = members
        .into_iter()
        .enumerate()
        .map(|(c, m)| Edge::unit(m, c as u32 + 1))
        .collect();
    EdgeColoredHypergraph::new(n, k, edges)
}

/// Center node 0 joined to leaves 1, 2, 3 by edges of colors 1, 2, 3.
pub fn gen_star() -> EdgeColoredHypergraph {
    let edges = (1..=3u32)
        .map(|i| Edge::unit(vec![0, i as usize], i))
        .collect();
    EdgeColoredHypergraph::new(4, 3, edges).expect("star instance is valid")
}

/// Random instance together with the clustering it was planted from.
#[derive(Debug, Clone, Serialize)]
pub struct PlantedInstance {
    pub hypergraph: EdgeColoredHypergraph,
    pub truth: NodeColoring,
    pub noise: f64,
}

/// Parameters of [`gen_random`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub num_nodes: usize,
    pub num_edges: usize,
    pub max_size: usize,
    pub num_colors: u32,
    pub noise: f64,
    pub seed: u64,
}

/// Planted random instance. Each node gets a uniform truth color; each edge
/// draws a size in `[2, max_size]` and its members from a single truth class
/// large enough to hold it, taking that class's color. When no class is large
/// enough the size shrinks to the largest class. With probability `noise` the
/// edge color is then redrawn uniformly.
pub fn gen_random(
    n: usize,
    m: usize,
    max_size: usize,
    k: u32,
    noise: f64,
    seed: u64,
) -> Result<PlantedInstance> {
    if n == 0 || m == 0 {
        return Err(EccError::InvalidArgument(
            "need at least one node and one edge".into(),
        ));
    }
    if max_size < 2 {
        return Err(EccError::InvalidArgument(format!(
            "max_size must be >= 2, got {max_size}"
        )));
    }
    if k == 0 {
        return Err(EccError::InvalidArgument("need at least one color".into()));
    }
    if !(0.0..=1.0).contains(&noise) {
        return Err(EccError::InvalidArgument(format!(
            "noise must be in [0, 1], got {noise}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let truth: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=k)).collect();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k as usize];
    for (v, &c) in truth.iter().enumerate() {
        classes[c as usize - 1].push(v);
    }
    let largest = classes.iter().map(Vec::len).max().unwrap_or(0);

    let mut edges = Vec::with_capacity(m);
    let mut fits = Vec::with_capacity(k as usize);
    for _ in 0..m {
        let mut size = rng.gen_range(2..=max_size);
        if size > largest {
            size = largest;
        }
        fits.clear();
        fits.extend((0..k as usize).filter(|&c| classes[c].len() >= size));
        let c = fits[rng.gen_range(0..fits.len())];
        let class = &classes[c];
        let members: Vec<usize> = sample(&mut rng, class.len(), size)
            .into_iter()
            .map(|i| class[i])
            .collect();
        let mut color = c as u32 + 1;
        if noise > 0.0 && rng.gen_bool(noise) {
            color = rng.gen_range(1..=k);
        }
        edges.push(Edge::unit(members, color));
    }
    let hypergraph = EdgeColoredHypergraph::new(n, k, edges)?;
    Ok(PlantedInstance {
        hypergraph,
        truth: NodeColoring::new(truth, k)?,
        noise,
    })
}

impl RandomSpec {
    pub fn generate(&self) -> Result<PlantedInstance> {
        gen_random(
            self.num_nodes,
            self.num_edges,
            self.max_size,
            self.num_colors,
            self.noise,
            self.seed,
        )
    }
}

/// Unstructured random instance: each edge takes a size in `[2, max_size]`
/// (capped at `n`), members uniform without replacement over all nodes, a
/// uniform color and unit weight. Unlike [`gen_random`] there is no planted
/// solution, so the LP is often fractional.
pub fn gen_uniform(
    n: usize,
    m: usize,
    max_size: usize,
    k: u32,
    seed: u64,
) -> Result<EdgeColoredHypergraph> {
    if n < 2 || m == 0 || k == 0 {
        return Err(EccError::InvalidArgument(
            "need at least two nodes, one edge and one color".into(),
        ));
    }
    if max_size < 2 {
        return Err(EccError::InvalidArgument(format!(
            "max_size must be >= 2, got {max_size}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..m)
        .map(|_| {
            let size = rng.gen_range(2..=max_size.min(n));
            let members = sample(&mut rng, n, size).into_vec();
            Edge::unit(members, rng.gen_range(1..=k))
        })
        .collect();
    EdgeColoredHypergraph::new(n, k, edges)
}
