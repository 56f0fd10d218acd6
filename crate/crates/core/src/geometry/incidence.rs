use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::algebra::GroupAction;
use crate::error::GeometryError;

/// Points `0..points` and lines as sorted point sets of size at least two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawIncidence")]
pub struct IncidenceStructure {
    points: usize,
    lines: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawIncidence {
    points: usize,
    lines: Vec<Vec<usize>>,
}

impl TryFrom<RawIncidence> for IncidenceStructure {
    type Error = GeometryError;

    fn try_from(raw: RawIncidence) -> Result<Self, Self::Error> {
        Self::new(raw.points, raw.lines)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceClass {
    pub is_partial_linear: bool,
    pub is_linear: bool,
    pub max_lines_per_point: usize,
}

impl IncidenceStructure {
    /// Sorts each line; repeated points inside a line are merged.
    pub fn new(points: usize, lines: Vec<Vec<usize>>) -> Result<Self, GeometryError> {
        let mut out = Vec::with_capacity(lines.len());
        for (i, mut line) in lines.into_iter().enumerate() {
            if let Some(&point) = line.iter().find(|&&x| x >= points) {
                return Err(GeometryError::PointOutOfRange { line: i, point, points });
            }
            line.sort_unstable();
            line.dedup();
            if line.len() < 2 {
                return Err(GeometryError::ShortLine(i));
            }
            out.push(line);
        }
        Ok(Self { points, lines: out })
    }

    /// Lines `{i, i+1, i+3} mod 7`.
    pub fn fano() -> Self {
        let lines = (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
        Self::new(7, lines).expect("valid")
    }

    /// Three points, every pair a line.
    pub fn triangle() -> Self {
        Self::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).expect("valid")
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn lines_through(&self, x: usize) -> Vec<usize> {
        (0..self.lines.len()).filter(|&l| self.lines[l].binary_search(&x).is_ok()).collect()
    }

    /// `cover[x * n + y]` counts lines through both points.
    fn pair_cover(&self) -> Vec<usize> {
        let n = self.points;
        let mut cover = vec![0usize; n * n];
        for line in &self.lines {
            for &x in line {
                for &y in line {
                    cover[x * n + y] += 1;
                }
            }
        }
        cover
    }

    pub fn classify(&self) -> IncidenceClass {
        let n = self.points;
        let cover = self.pair_cover();
        let pairs = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y)));
        let is_partial_linear = pairs.clone().all(|(x, y)| cover[x * n + y] <= 1);
        let is_linear = pairs.clone().all(|(x, y)| cover[x * n + y] == 1);
        let max_lines_per_point = (0..n).map(|x| self.lines_through(x).len()).max().unwrap_or(0);
        IncidenceClass { is_partial_linear, is_linear, max_lines_per_point }
    }

    /// Image of the line set under a point map.
    pub fn image(&self, map: &[usize]) -> Vec<Vec<usize>> {
        let mut lines: Vec<Vec<usize>> = self
            .lines
            .iter()
            .map(|l| {
                let mut m: Vec<usize> = l.iter().map(|&x| map[x]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        lines.sort();
        lines
    }

    fn line_set(&self) -> HashSet<Vec<usize>> {
        self.lines.iter().cloned().collect()
    }

    /// Whether `map` is a point bijection sending the line set onto itself.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        let mut sorted = self.lines.clone();
        sorted.sort();
        sorted.dedup();
        let mut image = self.image(map);
        image.dedup();
        image == sorted
    }
}

pub fn classify_incidence(i: &IncidenceStructure) -> IncidenceClass {
    i.classify()
}

/// A point bijection carrying the lines of `a` onto the lines of `b`, found
/// by backtracking; `None` when there is none.
pub fn incidence_isomorphic(a: &IncidenceStructure, b: &IncidenceStructure) -> Option<Vec<usize>> {
    let n = a.points;
    let mut la = a.lines.clone();
    la.sort();
    la.dedup();
    let mut lb = b.lines.clone();
    lb.sort();
    lb.dedup();
    if n != b.points || la.len() != lb.len() {
        return None;
    }
    let mut sizes_a: Vec<usize> = la.iter().map(Vec::len).collect();
    let mut sizes_b: Vec<usize> = lb.iter().map(Vec::len).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return None;
    }
    let a = IncidenceStructure { points: n, lines: la };
    let b = IncidenceStructure { points: n, lines: lb };
    let deg_a: Vec<usize> = (0..n).map(|x| a.lines_through(x).len()).collect();
    let deg_b: Vec<usize> = (0..n).map(|x| b.lines_through(x).len()).collect();
    let (cover_a, cover_b) = (a.pair_cover(), b.pair_cover());
    let lines_b = b.line_set();
    // Lines of `a` to check once their largest point is mapped.
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, l) in a.lines.iter().enumerate() {
        closing[*l.last().expect("non-empty")].push(i);
    }

    struct Search<'a> {
        n: usize,
        a: &'a IncidenceStructure,
        deg_a: &'a [usize],
        deg_b: &'a [usize],
        cover_a: &'a [usize],
        cover_b: &'a [usize],
        lines_b: &'a HashSet<Vec<usize>>,
        closing: &'a [Vec<usize>],
        map: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn go(&mut self, x: usize) -> bool {
            if x == self.n {
                return true;
            }
            for y in 0..self.n {
                if self.used[y] || self.deg_a[x] != self.deg_b[y] {
                    continue;
                }
                let n = self.n;
                if (0..x).any(|z| self.cover_a[x * n + z] != self.cover_b[y * n + self.map[z]]) {
                    continue;
                }
                self.map[x] = y;
                let ok = self.closing[x].iter().all(|&l| {
                    let mut img: Vec<usize> = self.a.lines[l].iter().map(|&p| self.map[p]).collect();
                    img.sort_unstable();
                    self.lines_b.contains(&img)
                });
                if ok {
                    self.used[y] = true;
                    if self.go(x + 1) {
                        return true;
                    }
                    self.used[y] = false;
                }
            }
            false
        }
    }

    let mut s = Search {
        n,
        a: &a,
        deg_a: &deg_a,
        deg_b: &deg_b,
        cover_a: &cover_a,
        cover_b: &cover_b,
        lines_b: &lines_b,
        closing: &closing,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    s.go(0).then_some(s.map)
}

/// Whether the action is regular on the points and every element maps lines
/// to lines.
pub fn regular_line_preserving(i: &IncidenceStructure, action: &GroupAction) -> Result<bool, GeometryError> {
    if action.degree() != i.points {
        return Err(GeometryError::DegreeMismatch { degree: action.degree(), points: i.points });
    }
    if !action.is_regular() {
        return Ok(false);
    }
    Ok((0..action.group().order()).all(|g| i.is_automorphism(&action.perm(g))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;

    fn rotation(n: usize) -> GroupAction {
        let perms = (0..n).map(|g| (0..n).map(|x| (x + g) % n).collect()).collect();
        GroupAction::new(FiniteGroup::cyclic(n), perms).unwrap()
    }

    #[test]
    fn classification() {
        let t = IncidenceStructure::triangle().classify();
        assert_eq!((t.is_partial_linear, t.is_linear, t.max_lines_per_point), (true, true, 2));
        let f = IncidenceStructure::fano().classify();
        assert_eq!((f.is_partial_linear, f.is_linear, f.max_lines_per_point), (true, true, 3));
        let two = IncidenceStructure::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap().classify();
        assert_eq!((two.is_partial_linear, two.is_linear, two.max_lines_per_point), (true, false, 1));
        assert!(matches!(IncidenceStructure::new(3, vec![vec![1]]), Err(GeometryError::ShortLine(0))));
        assert!(IncidenceStructure::new(3, vec![vec![0, 3]]).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let t = IncidenceStructure::triangle();
        assert_eq!(incidence_isomorphic(&t, &t), Some(vec![0, 1, 2]));
        assert!(incidence_isomorphic(&IncidenceStructure::fano(), &t).is_none());
        // Fano relabelled by x -> 3x mod 7.
        let f = IncidenceStructure::fano();
        let relabelled = IncidenceStructure::new(7, f.image(&(0..7).map(|x| 3 * x % 7).collect::<Vec<_>>())).unwrap();
        let m = incidence_isomorphic(&f, &relabelled).unwrap();
        assert_eq!(f.image(&m), relabelled.image(&(0..7).collect::<Vec<_>>()));
        // Three collinear points vs a triangle.
        let line = IncidenceStructure::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(incidence_isomorphic(&line, &t).is_none());
    }

    #[test]
    fn line_preserving_actions() {
        assert!(regular_line_preserving(&IncidenceStructure::triangle(), &rotation(3)).unwrap());
        assert!(regular_line_preserving(&IncidenceStructure::fano(), &rotation(7)).unwrap());
        // {0,1,2} is not a line of any Singer labelling of this kind.
        let scrambled = IncidenceStructure::new(
            7,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap();
        assert!(scrambled.classify().is_linear);
        assert!(!regular_line_preserving(&scrambled, &rotation(7)).unwrap());
        assert!(regular_line_preserving(&scrambled, &rotation(3)).is_err());
    }
}
