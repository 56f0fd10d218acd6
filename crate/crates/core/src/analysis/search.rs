//! Backtracking over individualize-and-refine trees.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::refine::{cell, individualize, refine, shape, target_cell};
use super::SearchBudget;
use crate::error::SearchError;
use crate::scheme::{RelationTable, Scheme};

/// Generators and exact order of the group of permutations fixing every
/// relation. An empty generator list means the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismGroup {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(with = "decimal")]
    pub order: BigUint,
    /// Base points of the stabilizer chain and the orbit length at each.
    pub base: Vec<usize>,
    pub orbit_lengths: Vec<usize>,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl AutomorphismGroup {
    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || crate::algebra::orbit_under(self.degree, &self.generators, 0).len() == self.degree
    }
}

/// The first path of the search tree of one scheme.
struct Path {
    /// Colouring at each level before individualizing `base[i]`.
    colours: Vec<Vec<u32>>,
    shapes: Vec<Vec<u32>>,
    targets: Vec<u32>,
    base: Vec<usize>,
    /// Discrete colouring at the end of the path.
    leaf: Vec<u32>,
}

pub(crate) struct Counter<'a> {
    budget: &'a SearchBudget,
    pub(crate) nodes: u64,
}

impl<'a> Counter<'a> {
    pub(crate) fn new(budget: &'a SearchBudget) -> Self {
        Self { budget, nodes: 0 }
    }

    pub(crate) fn tick(&mut self) -> Result<(), SearchError> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(SearchError::BudgetExceeded(self.budget.max_nodes));
        }
        Ok(())
    }
}

fn first_path(table: &RelationTable, counter: &mut Counter<'_>) -> Result<Path, SearchError> {
    let n = table.points();
    let mut cur = refine(table, &vec![0; n]);
    let mut path =
        Path { colours: Vec::new(), shapes: Vec::new(), targets: Vec::new(), base: Vec::new(), leaf: Vec::new() };
    while let Some(t) = target_cell(&cur) {
        let b = cell(&cur, t)[0];
        path.shapes.push(shape(&cur));
        path.targets.push(t);
        path.base.push(b);
        counter.tick()?;
        let next = individualize(table, &cur, b);
        path.colours.push(std::mem::replace(&mut cur, next));
    }
    path.leaf = cur;
    Ok(path)
}

pub(crate) fn preserves(a: &RelationTable, b: &RelationTable, map: &[usize]) -> bool {
    let n = a.points();
    (0..n).all(|x| {
        let (ra, rb) = (a.row(x), b.row(map[x]));
        (0..n).all(|y| ra[y] == rb[map[y]])
    })
}

/// Looks below `colours` (a node of `table_b`'s tree at `depth`) for a leaf
/// whose correspondence with the first leaf of `table_a` preserves
/// relations.
fn search_subtree(
    path: &Path,
    table_a: &RelationTable,
    table_b: &RelationTable,
    colours: Vec<u32>,
    depth: usize,
    counter: &mut Counter<'_>,
) -> Result<Option<Vec<usize>>, SearchError> {
    if depth == path.base.len() {
        if shape(&colours) != shape(&path.leaf) {
            return Ok(None);
        }
        let mut point_of = vec![0usize; colours.len()];
        for (y, &c) in colours.iter().enumerate() {
            point_of[c as usize] = y;
        }
        let map: Vec<usize> = path.leaf.iter().map(|&c| point_of[c as usize]).collect();
        return Ok(preserves(table_a, table_b, &map).then_some(map));
    }
    if shape(&colours) != path.shapes[depth] {
        return Ok(None);
    }
    for w in cell(&colours, path.targets[depth]) {
        counter.tick()?;
        let child = individualize(table_b, &colours, w);
        if let Some(m) = search_subtree(path, table_a, table_b, child, depth + 1, counter)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn check_size(n: usize, budget: &SearchBudget) -> Result<(), SearchError> {
    if n > budget.max_points {
        return Err(SearchError::TooManyPoints { points: n, limit: budget.max_points });
    }
    Ok(())
}

/// Stabilizer-chain search: the chain is walked bottom-up, and at each level
/// a point of the target cell is tried only if the generators found so far
/// do not already move the base point onto it.
pub fn automorphisms_with(s: &Scheme, budget: &SearchBudget) -> Result<AutomorphismGroup, SearchError> {
    let table = s.table();
    let n = table.points();
    check_size(n, budget)?;
    let mut counter = Counter::new(budget);
    let path = first_path(table, &mut counter)?;
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut lengths = vec![0usize; path.base.len()];
    for i in (0..path.base.len()).rev() {
        let b = path.base[i];
        let candidates = cell(&path.colours[i], path.targets[i]);
        let mut orbit = crate::algebra::orbit_under(n, &gens, b);
        for v in candidates {
            if orbit.binary_search(&v).is_ok() {
                continue;
            }
            counter.tick()?;
            let child = individualize(table, &path.colours[i], v);
            if let Some(g) = search_subtree(&path, table, table, child, i + 1, &mut counter)? {
                debug_assert!(preserves(table, table, &g));
                gens.push(g);
                orbit = crate::algebra::orbit_under(n, &gens, b);
            }
        }
        lengths[i] = orbit.len();
    }
    let order = lengths.iter().fold(BigUint::from(1u32), |acc, &l| acc * BigUint::from(l));
    Ok(AutomorphismGroup { degree: n, generators: gens, order, base: path.base, orbit_lengths: lengths })
}

/// A point bijection `a -> b` preserving relation indices exactly, if any.
pub(crate) fn same_label_isomorphism(
    a: &RelationTable,
    b: &RelationTable,
    counter: &mut Counter<'_>,
) -> Result<Option<Vec<usize>>, SearchError> {
    let path = first_path(a, counter)?;
    let root = refine(b, &vec![0; b.points()]);
    search_subtree(&path, a, b, root, 0, counter)
}
