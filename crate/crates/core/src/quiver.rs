//! Dynkin diagrams with orientation, height functions, and the doubly infinite
//! coordinate grid everything else runs on.
//!
//! A [`Repetition`] couples a [`Quiver`] with a [`HeightFunction`]. A point
//! `(i, p)` with `p - height(i)` even lies on the Y-grid: it is the coordinate
//! of an indecomposable object and of the variable `Y[i,p]`. Points with odd
//! offset form the A-grid, carrying the `A` variables and stratum dimension
//! vectors. Classes in the Grothendieck group are integer vectors indexed by
//! diagram vertices, bootstrapped from the injective slice and extended in
//! both directions by mesh additivity.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::collections::VecDeque;

use serde::Deserialize;

use crate::error::{Error, GridKind, Result};

/// Simply laced Dynkin families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A,
    D,
    E,
}

impl std::fmt::Display for DynkinType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DynkinType::A => write!(f, "A"),
            DynkinType::D => write!(f, "D"),
            DynkinType::E => write!(f, "E"),
        }
    }
}

impl DynkinType {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(DynkinType::A),
            "D" => Ok(DynkinType::D),
            "E" => Ok(DynkinType::E),
            other => Err(Error::InvalidSpec {
                field: "type",
                message: format!("expected \"A\", \"D\" or \"E\", got \"{other}\""),
            }),
        }
    }

    /// Undirected edges of the diagram, as `(min, max)` pairs.
    ///
    /// Conventions: `A_n` is the path `1 - 2 - ... - n`; `D_n` is the path
    /// `1 - ... - (n-1)` with the extra vertex `n` attached to `n-2`; `E_n`
    /// is the path `1 - 3 - 4 - ... - n` with vertex `2` attached to `4`.
    fn edges(self, rank: i64) -> Result<BTreeSet<(i64, i64)>> {
        let bad_rank = |message: String| Error::InvalidSpec {
            field: "rank",
            message,
        };
        let mut edges = BTreeSet::new();
        match self {
            DynkinType::A => {
                if rank < 1 {
                    return Err(bad_rank(format!("type A needs rank >= 1, got {rank}")));
                }
                for i in 1..rank {
                    edges.insert((i, i + 1));
                }
            }
            DynkinType::D => {
                if rank < 4 {
                    return Err(bad_rank(format!("type D needs rank >= 4, got {rank}")));
                }
                for i in 1..rank - 1 {
                    edges.insert((i, i + 1));
                }
                edges.insert((rank - 2, rank));
            }
            DynkinType::E => {
                if !(6..=8).contains(&rank) {
                    return Err(bad_rank(format!("type E needs rank 6, 7 or 8, got {rank}")));
                }
                edges.insert((1, 3));
                edges.insert((2, 4));
                for i in 3..rank {
                    edges.insert((i, i + 1));
                }
            }
        }
        Ok(edges)
    }
}

/// An orientation of a simply laced Dynkin diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    dynkin: DynkinType,
    rank: i64,
    arrows: Vec<(i64, i64)>,
    adjacency: Vec<Vec<i64>>,
}

impl Quiver {
    /// Validate an arrow list against the expected diagram shape. Every edge
    /// of the diagram must appear exactly once, with either orientation.
    pub fn new(dynkin: DynkinType, rank: i64, arrows: &[(i64, i64)]) -> Result<Self> {
        let expected = dynkin.edges(rank)?;
        let mut seen = BTreeSet::new();
        for &(s, t) in arrows {
            for v in [s, t] {
                if !(1..=rank).contains(&v) {
                    return Err(Error::InvalidSpec {
                        field: "arrows",
                        message: format!("arrow ({s},{t}) mentions unknown vertex {v}"),
                    });
                }
            }
            let edge = (s.min(t), s.max(t));
            if !expected.contains(&edge) {
                return Err(Error::InvalidSpec {
                    field: "arrows",
                    message: format!("({s},{t}) is not an edge of {dynkin}{rank}"),
                });
            }
            if !seen.insert(edge) {
                return Err(Error::InvalidSpec {
                    field: "arrows",
                    message: format!("edge {{{},{}}} oriented more than once", edge.0, edge.1),
                });
            }
        }
        if seen.len() != expected.len() {
            let missing = expected.difference(&seen).next().unwrap();
            return Err(Error::InvalidSpec {
                field: "arrows",
                message: format!(
                    "missing orientation for edge {{{},{}}} of {dynkin}{rank}",
                    missing.0, missing.1
                ),
            });
        }

        let mut adjacency = vec![Vec::new(); rank as usize + 1];
        for &(s, t) in arrows {
            adjacency[s as usize].push(t);
            adjacency[t as usize].push(s);
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }

        let quiver = Quiver {
            dynkin,
            rank,
            arrows: arrows.to_vec(),
            adjacency,
        };
        debug_assert!(quiver.is_connected_tree());
        Ok(quiver)
    }

    // Trees are acyclic and connected by construction once the edge multiset
    // matches; asserted independently anyway.
    fn is_connected_tree(&self) -> bool {
        let mut seen = vec![false; self.rank as usize + 1];
        let mut queue = VecDeque::from([1i64]);
        seen[1] = true;
        let mut count = 0;
        while let Some(v) = queue.pop_front() {
            count += 1;
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
        count == self.rank && self.arrows.len() as i64 == self.rank - 1
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn arrows(&self) -> &[(i64, i64)] {
        &self.arrows
    }

    pub fn is_vertex(&self, i: i64) -> bool {
        (1..=self.rank).contains(&i)
    }

    pub fn neighbors(&self, i: i64) -> &[i64] {
        if self.is_vertex(i) {
            &self.adjacency[i as usize]
        } else {
            &[]
        }
    }

    pub fn coxeter_number(&self) -> i64 {
        match self.dynkin {
            DynkinType::A => self.rank + 1,
            DynkinType::D => 2 * self.rank - 2,
            DynkinType::E => match self.rank {
                6 => 12,
                7 => 18,
                _ => 30,
            },
        }
    }

    /// The bilinear form `<d, e> = sum_i d_i e_i - sum_{s->t} d_s e_t`.
    pub fn euler_form(&self, d: &K0Class, e: &K0Class) -> i64 {
        let mut total = 0;
        for i in 1..=self.rank {
            total += d.coord(i) * e.coord(i);
        }
        for &(s, t) in &self.arrows {
            total -= d.coord(s) * e.coord(t);
        }
        total
    }
}

/// Integer labels on diagram vertices dropping by one along each arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightFunction {
    values: Vec<i64>,
}

impl HeightFunction {
    /// Wrap explicit values, checking the arrow rule `h(s) - h(t) = 1`.
    pub fn explicit(quiver: &Quiver, values: &[(i64, i64)]) -> Result<Self> {
        let mut table = vec![None; quiver.rank() as usize + 1];
        for &(i, value) in values {
            if !quiver.is_vertex(i) {
                return Err(Error::UnknownVertex(i));
            }
            if table[i as usize].replace(value).is_some() {
                return Err(Error::InvalidSpec {
                    field: "height",
                    message: format!("vertex {i} assigned twice"),
                });
            }
        }
        let mut out = Vec::with_capacity(quiver.rank() as usize + 1);
        out.push(0);
        for i in 1..=quiver.rank() {
            match table[i as usize] {
                Some(v) => out.push(v),
                None => {
                    return Err(Error::InvalidSpec {
                        field: "height",
                        message: format!("vertex {i} has no height value"),
                    })
                }
            }
        }
        let height = HeightFunction { values: out };
        height.check_arrow_rule(quiver)?;
        Ok(height)
    }

    /// Propagate a single root value over the tree. Deterministic: the same
    /// root and value always produce the same function.
    pub fn synthesize(quiver: &Quiver, root: i64, value: i64) -> Result<Self> {
        if !quiver.is_vertex(root) {
            return Err(Error::UnknownVertex(root));
        }
        let mut values = vec![None; quiver.rank() as usize + 1];
        values[root as usize] = Some(value);
        let mut queue = VecDeque::from([root]);
        let mut oriented = BTreeMap::new();
        for &(s, t) in quiver.arrows() {
            oriented.insert((s, t), ());
        }
        while let Some(v) = queue.pop_front() {
            let hv = values[v as usize].unwrap();
            for &w in quiver.neighbors(v) {
                if values[w as usize].is_none() {
                    let hw = if oriented.contains_key(&(v, w)) {
                        hv - 1
                    } else {
                        hv + 1
                    };
                    values[w as usize] = Some(hw);
                    queue.push_back(w);
                }
            }
        }
        let out: Vec<i64> = std::iter::once(0)
            .chain((1..=quiver.rank()).map(|i| values[i as usize].unwrap()))
            .collect();
        Ok(HeightFunction { values: out })
    }

    fn check_arrow_rule(&self, quiver: &Quiver) -> Result<()> {
        for &(s, t) in quiver.arrows() {
            let (lhs, rhs) = (self.value(s), self.value(t));
            if lhs - rhs != 1 {
                return Err(Error::HeightRule {
                    tail: s,
                    head: t,
                    lhs,
                    rhs,
                });
            }
        }
        Ok(())
    }

    pub fn value(&self, i: i64) -> i64 {
        self.values[i as usize]
    }
}

/// A point `(i, p)` of the coordinate grid. Indices 0 and `rank + 1` are
/// boundary sentinels standing for the zero object; they appear transiently
/// in the type A triangle calculus and nowhere else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub i: i64,
    pub p: i64,
}

impl Vertex {
    pub fn new(i: i64, p: i64) -> Self {
        Vertex { i, p }
    }

    /// The k-th power of the translation: `(i, p) -> (i, p - 2k)`.
    pub fn translate(self, k: i64) -> Vertex {
        Vertex::new(self.i, self.p - 2 * k)
    }
}

// Canonical order: by level, then by diagram index.
impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.p, self.i).cmp(&(other.p, other.i))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.i, self.p)
    }
}

/// A class in the Grothendieck group, as an integer vector indexed by diagram
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K0Class {
    coords: Vec<i64>,
}

impl K0Class {
    pub fn zero(rank: i64) -> Self {
        K0Class {
            coords: vec![0; rank as usize],
        }
    }

    pub fn from_coords(coords: Vec<i64>) -> Self {
        K0Class { coords }
    }

    /// Coordinate at diagram vertex `i` (1-based).
    pub fn coord(&self, i: i64) -> i64 {
        self.coords[i as usize - 1]
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn add(&self, other: &K0Class) -> K0Class {
        K0Class {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &K0Class) -> K0Class {
        K0Class {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> K0Class {
        K0Class {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&a| a == 0)
    }
}

impl std::fmt::Display for K0Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// On-disk quiver description.
///
/// ```json
/// {"format":1,"type":"A","rank":3,"arrows":[[1,2],[3,2]],"height":{"1":1,"2":0,"3":1}}
/// ```
///
/// `format` and `height` are optional; a missing height is synthesized from
/// vertex 1 with value 0.
#[derive(Debug, Clone, Deserialize)]
pub struct QuiverSpec {
    #[serde(default = "default_format")]
    pub format: u32,
    #[serde(rename = "type")]
    pub dynkin: String,
    pub rank: i64,
    pub arrows: Vec<(i64, i64)>,
    #[serde(default)]
    pub height: Option<BTreeMap<String, i64>>,
}

fn default_format() -> u32 {
    1
}

/// The repetition grid: a quiver together with a height function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Repetition {
    quiver: Quiver,
    height: HeightFunction,
}

impl Repetition {
    pub fn new(quiver: Quiver, height: HeightFunction) -> Result<Self> {
        height.check_arrow_rule(&quiver)?;
        Ok(Repetition { quiver, height })
    }

    /// Build from a parsed spec, synthesizing the height function when absent.
    pub fn from_spec(spec: &QuiverSpec) -> Result<Self> {
        if spec.format != 1 {
            return Err(Error::InvalidSpec {
                field: "format",
                message: format!("unsupported format {}, expected 1", spec.format),
            });
        }
        let dynkin = DynkinType::parse(&spec.dynkin)?;
        let quiver = Quiver::new(dynkin, spec.rank, &spec.arrows)?;
        let height = match &spec.height {
            Some(map) => {
                let mut pairs = Vec::new();
                for (key, &value) in map {
                    let i: i64 = key.parse().map_err(|_| Error::InvalidSpec {
                        field: "height",
                        message: format!("key \"{key}\" is not a vertex index"),
                    })?;
                    pairs.push((i, value));
                }
                HeightFunction::explicit(&quiver, &pairs)?
            }
            None => HeightFunction::synthesize(&quiver, 1, 0)?,
        };
        Repetition::new(quiver, height)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: QuiverSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "quiver file",
            message: e.to_string(),
        })?;
        Repetition::from_spec(&spec)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rank(&self) -> i64 {
        self.quiver.rank()
    }

    pub fn height(&self, i: i64) -> i64 {
        self.height.value(i)
    }

    pub fn is_sentinel(&self, i: i64) -> bool {
        i == 0 || i == self.rank() + 1
    }

    pub fn on_y_grid(&self, v: Vertex) -> bool {
        self.quiver.is_vertex(v.i) && (v.p - self.height(v.i)).rem_euclid(2) == 0
    }

    pub fn on_a_grid(&self, v: Vertex) -> bool {
        self.quiver.is_vertex(v.i) && (v.p - self.height(v.i)).rem_euclid(2) == 1
    }

    pub fn y_vertex(&self, i: i64, p: i64) -> Result<Vertex> {
        let v = Vertex::new(i, p);
        if self.on_y_grid(v) {
            Ok(v)
        } else {
            Err(Error::WrongGrid {
                i,
                p,
                expected: GridKind::Y,
            })
        }
    }

    pub fn a_vertex(&self, i: i64, p: i64) -> Result<Vertex> {
        let v = Vertex::new(i, p);
        if self.on_a_grid(v) {
            Ok(v)
        } else {
            Err(Error::WrongGrid {
                i,
                p,
                expected: GridKind::A,
            })
        }
    }

    /// Sources of the grid arrows into `(i, p)`: the points `(j, p - 1)` for
    /// `j` adjacent to `i` in the diagram. Empty for sentinel input.
    pub fn mesh_predecessors(&self, v: Vertex) -> Vec<Vertex> {
        self.quiver
            .neighbors(v.i)
            .iter()
            .map(|&j| Vertex::new(j, v.p - 1))
            .collect()
    }

    /// Y-grid points with level in `p_lo..=p_hi`, in canonical order.
    pub fn y_grid_window(&self, p_lo: i64, p_hi: i64) -> Vec<Vertex> {
        self.grid_window(p_lo, p_hi, 0)
    }

    /// A-grid points with level in `p_lo..=p_hi`, in canonical order.
    pub fn a_grid_window(&self, p_lo: i64, p_hi: i64) -> Vec<Vertex> {
        self.grid_window(p_lo, p_hi, 1)
    }

    fn grid_window(&self, p_lo: i64, p_hi: i64, parity: i64) -> Vec<Vertex> {
        let mut out = Vec::new();
        for p in p_lo..=p_hi {
            for i in 1..=self.rank() {
                if (p - self.height(i)).rem_euclid(2) == parity {
                    out.push(Vertex::new(i, p));
                }
            }
        }
        out
    }

    /// Dimension vector of the injective at `i`: 1 at each vertex with a
    /// directed path into `i`, 0 elsewhere.
    pub fn injective_class(&self, i: i64) -> Result<K0Class> {
        if !self.quiver.is_vertex(i) {
            return Err(Error::UnknownVertex(i));
        }
        let mut coords = vec![0; self.rank() as usize];
        let mut seen = vec![false; self.rank() as usize + 1];
        let mut queue = VecDeque::from([i]);
        seen[i as usize] = true;
        while let Some(t) = queue.pop_front() {
            coords[t as usize - 1] = 1;
            for &(s, t2) in self.quiver.arrows() {
                if t2 == t && !seen[s as usize] {
                    seen[s as usize] = true;
                    queue.push_back(s);
                }
            }
        }
        Ok(K0Class::from_coords(coords))
    }

    /// Class of the indecomposable at `v` in the Grothendieck group.
    ///
    /// Bootstrapped from the injective slice (the class at `(i, height(i))`
    /// is the dimension vector of the injective at `i`) and extended to all
    /// levels by mesh additivity; shifted copies pick up alternating signs
    /// through the recursion. Sentinels give the zero class.
    pub fn k0_class(&self, v: Vertex) -> Result<K0Class> {
        if self.is_sentinel(v.i) {
            return Ok(K0Class::zero(self.rank()));
        }
        if !self.on_y_grid(v) {
            return Err(Error::WrongGrid {
                i: v.i,
                p: v.p,
                expected: GridKind::Y,
            });
        }
        let eps = self.height(v.i);
        let mut table: BTreeMap<Vertex, K0Class> = BTreeMap::new();
        for i in 1..=self.rank() {
            table.insert(Vertex::new(i, self.height(i)), self.injective_class(i)?);
        }
        if v.p > eps {
            // Climbing: the class at (i, l) closes the mesh whose middles sit
            // at level l - 1 and whose tail sits at (i, l - 2); every input is
            // on or above the injective slice.
            let lo = (1..=self.rank()).map(|i| self.height(i)).min().unwrap();
            for l in lo + 1..=v.p {
                for i in 1..=self.rank() {
                    let d = l - self.height(i);
                    if d > 0 && d % 2 == 0 {
                        let mut class = K0Class::zero(self.rank());
                        for &j in self.quiver.neighbors(i) {
                            class = class.add(&table[&Vertex::new(j, l - 1)]);
                        }
                        class = class.sub(&table[&Vertex::new(i, l - 2)]);
                        table.insert(Vertex::new(i, l), class);
                    }
                }
            }
        } else if v.p < eps {
            let hi = (1..=self.rank()).map(|i| self.height(i)).max().unwrap();
            for l in (v.p..hi).rev() {
                for i in 1..=self.rank() {
                    let d = self.height(i) - l;
                    if d > 0 && d % 2 == 0 {
                        let mut class = K0Class::zero(self.rank());
                        for &j in self.quiver.neighbors(i) {
                            class = class.add(&table[&Vertex::new(j, l + 1)]);
                        }
                        class = class.sub(&table[&Vertex::new(i, l + 2)]);
                        table.insert(Vertex::new(i, l), class);
                    }
                }
            }
        }
        Ok(table.remove(&v).unwrap())
    }
}
