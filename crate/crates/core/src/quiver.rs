//! Finite graded quivers, paths, and walks in the underlying graph.
//!
//! Paths compose left to right: `pq` traverses `p` first and then `q`, so the
//! span of paths from `i` to `j` is `e_i A e_j`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
    pub degree: i32,
    pub weight: u32,
}

/// A finite quiver whose arrows carry an integer degree and a positive weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: BTreeMap<String, VertexId>,
    arrow_index: BTreeMap<String, ArrowId>,
}

impl GradedQuiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        let id = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    /// Adds an arrow between named vertices.
    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str, degree: i32, weight: u32) -> Result<ArrowId> {
        let s = self.vertex_id(source)?;
        let t = self.vertex_id(target)?;
        self.add_arrow_between(name, s, t, degree, weight)
    }

    pub fn add_arrow_between(
        &mut self,
        name: &str,
        source: VertexId,
        target: VertexId,
        degree: i32,
        weight: u32,
    ) -> Result<ArrowId> {
        if self.arrow_index.contains_key(name) {
            return Err(Error::DuplicateArrow(name.to_string()));
        }
        if weight == 0 {
            return Err(Error::ZeroWeight(name.to_string()));
        }
        for v in [source, target] {
            if v >= self.vertices.len() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        let id = self.arrows.len();
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
            degree,
            weight,
        });
        self.arrow_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// The same quiver with every arrow weight replaced.
    pub fn with_weights(&self, weights: &[u32]) -> Result<GradedQuiver> {
        assert_eq!(weights.len(), self.arrows.len());
        let mut q = self.clone();
        for (a, &w) in q.arrows.iter_mut().zip(weights) {
            if w == 0 {
                return Err(Error::ZeroWeight(a.name.clone()));
            }
            a.weight = w;
        }
        Ok(q)
    }

    /// Arrows leaving `v`, in insertion order.
    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    /// Monomial order: weight, then length, then lexicographic on arrow names
    /// (trivial paths compare by vertex name).
    pub fn cmp_paths(&self, p: &Path, q: &Path) -> Ordering {
        self.path_weight(p)
            .cmp(&self.path_weight(q))
            .then(p.len().cmp(&q.len()))
            .then_with(|| {
                if p.is_trivial() && q.is_trivial() {
                    return self.vertices[p.source].cmp(&self.vertices[q.source]);
                }
                for (&a, &b) in p.arrows.iter().zip(&q.arrows) {
                    match self.arrows[a].name.cmp(&self.arrows[b].name) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                (p.source, p.target).cmp(&(q.source, q.target))
            })
    }

    pub fn path_weight(&self, p: &Path) -> u32 {
        p.arrows.iter().map(|&a| self.arrows[a].weight).sum()
    }

    pub fn path_degree(&self, p: &Path) -> i32 {
        p.arrows.iter().map(|&a| self.arrows[a].degree).sum()
    }

    /// Human-readable form: arrow names separated by spaces, `e_<v>` for trivial paths.
    pub fn format_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e_{}", self.vertices[p.source]);
        }
        let names: Vec<&str> = p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect();
        names.join(" ")
    }

    /// Every path (trivial ones included) of weight at most `max_weight`.
    pub fn paths_up_to_weight(&self, max_weight: u32) -> Vec<Path> {
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            let mut stack = vec![(Path::trivial(v), 0u32)];
            while let Some((p, w)) = stack.pop() {
                for a in self.arrows_from(p.target) {
                    let nw = w + self.arrows[a].weight;
                    if nw <= max_weight {
                        let mut q = p.clone();
                        q.push(self, a);
                        stack.push((q, nw));
                    }
                }
                out.push(p);
            }
        }
        out.sort_by(|a, b| self.cmp_paths(a, b));
        out
    }

    /// Connected components of the underlying undirected multigraph, each
    /// flagged with whether it is a tree.
    pub fn tree_report(&self) -> TreeReport {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut cyclic = vec![false; n];
        for a in &self.arrows {
            let (ra, rb) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if ra == rb {
                cyclic[ra] = true;
            } else {
                parent[ra] = rb;
                cyclic[rb] |= cyclic[ra];
            }
        }
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut components: Vec<Component> = groups
            .into_iter()
            .map(|(root, vertices)| Component {
                is_tree: !cyclic[root],
                vertices,
            })
            .collect();
        components.sort_by_key(|c| c.vertices[0]);
        TreeReport { components }
    }

    /// True when the underlying graph is a forest.
    pub fn is_tree(&self) -> bool {
        self.tree_report().components.iter().all(|c| c.is_tree)
    }

    /// The unique reduced walk from `from` to `to` in the underlying forest,
    /// or `None` when they lie in different components.
    pub fn unique_walk(&self, from: VertexId, to: VertexId) -> Result<Option<Walk>> {
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        let n = self.vertices.len();
        let mut came_by: Vec<Option<(VertexId, Step)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for (id, a) in self.arrows.iter().enumerate() {
                let (next, inverse) = if a.source == v {
                    (a.target, false)
                } else if a.target == v {
                    (a.source, true)
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    came_by[next] = Some((v, Step { arrow: id, inverse }));
                    queue.push_back(next);
                }
            }
        }
        if !seen[to] {
            return Ok(None);
        }
        let mut steps = Vec::new();
        let mut cur = to;
        while cur != from {
            let (prev, step) = came_by[cur].expect("walk back to start");
            steps.push(step);
            cur = prev;
        }
        steps.reverse();
        Ok(Some(Walk { start: from, steps }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub is_tree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeReport {
    pub components: Vec<Component>,
}

/// A path of the quiver: trivial at a vertex, or a composable arrow sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub source: VertexId,
    pub target: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &GradedQuiver, a: ArrowId) -> Path {
        let ar = q.arrow(a);
        Path {
            source: ar.source,
            target: ar.target,
            arrows: vec![a],
        }
    }

    /// Builds a path from an arrow sequence, checking composability.
    pub fn from_arrows(q: &GradedQuiver, arrows: &[ArrowId]) -> Result<Path> {
        let (first, rest) = arrows
            .split_first()
            .ok_or_else(|| Error::NotComposable("empty arrow sequence".into()))?;
        let mut p = Path::arrow(q, *first);
        for &a in rest {
            if q.arrow(a).source != p.target {
                return Err(Error::NotComposable(format!(
                    "`{}` does not start where `{}` ends",
                    q.arrow(a).name,
                    q.format_path(&p)
                )));
            }
            p.push(q, a);
        }
        Ok(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    fn push(&mut self, q: &GradedQuiver, a: ArrowId) {
        debug_assert_eq!(q.arrow(a).source, self.target);
        self.arrows.push(a);
        self.target = q.arrow(a).target;
    }

    /// Concatenation `self` then `other`.
    pub fn compose(&self, q: &GradedQuiver, other: &Path) -> Result<Path> {
        if self.target != other.source {
            return Err(Error::NotComposable(format!(
                "`{}` ends at {} but `{}` starts at {}",
                q.format_path(self),
                q.vertex_name(self.target),
                q.format_path(other),
                q.vertex_name(other.source)
            )));
        }
        Ok(self.concat_unchecked(other))
    }

    pub(crate) fn concat_unchecked(&self, other: &Path) -> Path {
        let mut arrows = Vec::with_capacity(self.arrows.len() + other.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Path {
            source: self.source,
            target: other.target,
            arrows,
        }
    }

    /// Subpath on arrow positions `start..end` (a trivial path when empty).
    pub fn slice(&self, q: &GradedQuiver, start: usize, end: usize) -> Path {
        if start == end {
            let v = if start == 0 {
                self.source
            } else {
                q.arrow(self.arrows[start - 1]).target
            };
            return Path::trivial(v);
        }
        let arrows = self.arrows[start..end].to_vec();
        Path {
            source: q.arrow(arrows[0]).source,
            target: q.arrow(arrows[arrows.len() - 1]).target,
            arrows,
        }
    }
}

/// One step of a walk: an arrow traversed forwards or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub arrow: ArrowId,
    pub inverse: bool,
}

/// A walk in the underlying graph, ignoring orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: VertexId,
    pub steps: Vec<Step>,
}

impl Walk {
    pub fn end(&self, q: &GradedQuiver) -> VertexId {
        self.steps.iter().fold(self.start, |v, s| {
            let a = q.arrow(s.arrow);
            if s.inverse {
                debug_assert_eq!(a.target, v);
                a.source
            } else {
                debug_assert_eq!(a.source, v);
                a.target
            }
        })
    }

    pub fn last_step(&self) -> Option<Step> {
        self.steps.last().copied()
    }

    /// The same walk traversed backwards, with every direction flipped.
    pub fn reversed(&self, q: &GradedQuiver) -> Walk {
        Walk {
            start: self.end(q),
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| Step {
                    arrow: s.arrow,
                    inverse: !s.inverse,
                })
                .collect(),
        }
    }
}
