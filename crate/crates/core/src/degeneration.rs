//! The type A degeneration engine: fusion moves, reachability posets below a
//! fixed object, witness chains, Hasse covers, and the exhaustive
//! order-equivalence harness.
//!
//! The elementary step replaces two summands by the middle term of the
//! non-split triangle they certify. Every degeneration decomposes into a
//! chain of such steps, so the reachability closure of fusion moves below an
//! object is its entire degeneration downset; minimality is read off the
//! Hasse diagram of that finite poset. All minimality statements are
//! relative to the enumerated downset.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::collections::HashSet;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::monomial::{nakajima_leq, AMonomialVector, LaurentMonomial};
use crate::object::DerivedObject;
use crate::poset::StrictOrder;
use crate::quiver::{DynkinType, Repetition, Vertex};
use crate::type_a::{parallelogram_solve, Parallelogram};

/// One fusion step: two summands of `source` replaced by the middle term of
/// their certified triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionMove {
    pub source: DerivedObject,
    pub pair: (Vertex, Vertex),
    pub parallelogram: Parallelogram,
    pub result: DerivedObject,
}

impl FusionMove {
    /// Deterministic ordering key for tie-breaking.
    pub fn signature(&self) -> (Vertex, Vertex) {
        self.pair
    }

    pub fn to_json(&self, rep: &Repetition) -> serde_json::Value {
        serde_json::json!({
            "source": self.source.to_json(),
            "pair": [[self.pair.0.i, self.pair.0.p], [self.pair.1.i, self.pair.1.p]],
            "parallelogram": self.parallelogram.to_json(rep),
            "result": self.result.to_json(),
        })
    }
}

fn require_type_a(rep: &Repetition) -> Result<()> {
    if rep.quiver().dynkin() != DynkinType::A {
        return Err(Error::TypeAOnly("the degeneration engine"));
    }
    Ok(())
}

/// All fusion moves available from `y`, in signature order, deduplicated by
/// fused pair.
pub fn fusion_moves(rep: &Repetition, y: &DerivedObject) -> Result<Vec<FusionMove>> {
    require_type_a(rep)?;
    let coords: Vec<Vertex> = y.summands().map(|(v, _)| v).collect();
    let mut moves = Vec::new();
    for &c1 in &coords {
        for &c2 in &coords {
            if c1 == c2 {
                continue;
            }
            if let Some(par) = parallelogram_solve(rep, c1, c2)? {
                let mut result = y.clone();
                result.remove_one(c1);
                result.remove_one(c2);
                let result = result.union(&par.middle_object(rep)?)?;
                debug_assert_eq!(
                    result.k0_class(rep)?,
                    y.k0_class(rep)?,
                    "fusion must conserve the class"
                );
                moves.push(FusionMove {
                    source: y.clone(),
                    pair: (c1, c2),
                    parallelogram: par,
                    result,
                });
            }
        }
    }
    moves.sort_by_key(FusionMove::signature);
    Ok(moves)
}

/// A fusion edge inside a [`DegPoset`], between element indices.
#[derive(Debug, Clone)]
pub struct MoveEdge {
    pub from: usize,
    pub to: usize,
    pub mv: FusionMove,
}

/// The degeneration downset of a fixed object: elements in canonical order,
/// the strict order as reachability under fusion moves, and the Hasse covers
/// with one certifying move each.
#[derive(Debug, Clone)]
pub struct DegPoset {
    elements: Vec<DerivedObject>,
    top: usize,
    edges: Vec<MoveEdge>,
    order: StrictOrder,
    covers: Vec<usize>,
}

impl DegPoset {
    pub fn elements(&self) -> &[DerivedObject] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn index_of(&self, x: &DerivedObject) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.order.lt(a, b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn order(&self) -> &StrictOrder {
        &self.order
    }

    /// Every fusion edge discovered during the closure.
    pub fn edges(&self) -> &[MoveEdge] {
        &self.edges
    }

    /// The Hasse edges, each carrying its smallest-signature certifying move.
    pub fn covers(&self) -> impl Iterator<Item = &MoveEdge> + '_ {
        self.covers.iter().map(|&k| &self.edges[k])
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.covers().map(|e| (e.to, e.from)).collect()
    }

    /// Hasse covers directly below the element at `idx`.
    pub fn covers_below(&self, idx: usize) -> Vec<&MoveEdge> {
        self.covers().filter(|e| e.from == idx).collect()
    }

    /// Shortest fusion path from the top down to `target`, found by
    /// breadth-first search with moves explored in signature order. Empty
    /// for the top itself.
    pub fn witness_chain(&self, target: usize) -> Vec<&FusionMove> {
        let mut pred: Vec<Option<usize>> = vec![None; self.elements.len()];
        let mut seen = vec![false; self.elements.len()];
        seen[self.top] = true;
        let mut queue = VecDeque::from([self.top]);
        while let Some(u) = queue.pop_front() {
            if u == target {
                break;
            }
            for (k, edge) in self.edges.iter().enumerate() {
                if edge.from == u && !seen[edge.to] {
                    seen[edge.to] = true;
                    pred[edge.to] = Some(k);
                    queue.push_back(edge.to);
                }
            }
        }
        let mut chain = Vec::new();
        let mut cur = target;
        while let Some(k) = pred[cur] {
            chain.push(&self.edges[k].mv);
            cur = self.edges[k].from;
        }
        chain.reverse();
        chain
    }

    /// A saturated chain of covers from `hi` down to `lo`, when `lo <= hi`.
    /// Ties resolve to the smallest move signature.
    pub fn cover_chain(&self, lo: usize, hi: usize) -> Option<Vec<&MoveEdge>> {
        if !self.leq(lo, hi) {
            return None;
        }
        let mut chain = Vec::new();
        let mut cur = hi;
        while cur != lo {
            let step = self
                .covers_below(cur)
                .into_iter()
                .filter(|e| self.leq(lo, e.to))
                .min_by_key(|e| e.mv.signature())
                .expect("a finite interval has a cover toward its bottom");
            chain.push(step);
            cur = step.to;
        }
        Some(chain)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "top": self.top,
            "elements": self.elements.iter().map(|x| serde_json::json!({
                "object": x.to_json(),
                "monomial": x.to_monomial().to_string(),
            })).collect::<Vec<_>>(),
            "relation": self.order.pairs(),
            "covers": self.cover_pairs(),
        })
    }

    /// DOT rendering, one node per element labeled by its monomial, edges
    /// from an element to each cover below it.
    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = self
            .elements
            .iter()
            .map(|x| x.to_monomial().to_string())
            .collect();
        crate::poset::hasse_dot(&labels, &self.cover_pairs())
    }
}

/// Close `y` under fusion moves and assemble the order.
pub fn deg_set(rep: &Repetition, y: &DerivedObject) -> Result<DegPoset> {
    require_type_a(rep)?;
    let mut set: BTreeSet<DerivedObject> = BTreeSet::from([y.clone()]);
    let mut stack = vec![y.clone()];
    while let Some(cur) = stack.pop() {
        for mv in fusion_moves(rep, &cur)? {
            if set.insert(mv.result.clone()) {
                stack.push(mv.result);
            }
        }
    }
    let elements: Vec<DerivedObject> = set.into_iter().collect();
    let index: HashMap<&DerivedObject, usize> =
        elements.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let mut edges = Vec::new();
    for (u, element) in elements.iter().enumerate() {
        for mv in fusion_moves(rep, element)? {
            edges.push(MoveEdge {
                from: u,
                to: index[&mv.result],
                mv,
            });
        }
    }
    let order = StrictOrder::from_below_edges(elements.len(), edges.iter().map(|e| (e.to, e.from)));
    let mut covers = Vec::new();
    for (lo, hi) in order.covers() {
        let k = edges
            .iter()
            .position(|e| e.from == hi && e.to == lo)
            .expect("a cover inside a move-generated poset is a single move");
        covers.push(k);
    }
    let top = index[y];
    Ok(DegPoset {
        elements,
        top,
        edges,
        order,
        covers,
    })
}

/// Decide whether `x` degenerates from `y`, returning the witness chain of
/// fusion moves when it does. The reflexive case returns an empty chain.
pub fn leq_delta(
    rep: &Repetition,
    x: &DerivedObject,
    y: &DerivedObject,
) -> Result<Option<Vec<FusionMove>>> {
    let poset = deg_set(rep, y)?;
    match poset.index_of(x) {
        Some(idx) => Ok(Some(
            poset.witness_chain(idx).into_iter().cloned().collect(),
        )),
        None => Ok(None),
    }
}

/// The Hasse covers directly below `y` inside its own downset, with one
/// certifying fusion move each. Fusions that are not covers are excluded.
pub fn minimal_covers(
    rep: &Repetition,
    y: &DerivedObject,
) -> Result<Vec<(DerivedObject, FusionMove)>> {
    let poset = deg_set(rep, y)?;
    Ok(poset
        .covers_below(poset.top())
        .into_iter()
        .map(|e| (poset.elements()[e.to].clone(), e.mv.clone()))
        .collect())
}

/// Why a checked pair failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CounterexampleKind {
    /// The order solver and the engine disagree on comparability.
    OrderMismatch { solver: bool, engine: bool },
    /// An accepted witness does not multiply back to the quotient.
    ReconstructionFailure,
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub n: LaurentMonomial,
    pub m: LaurentMonomial,
    pub kind: CounterexampleKind,
}

/// Outcome of the exhaustive order-equivalence check over a window.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub window: (i64, i64),
    pub max_factors: i64,
    pub monomial_count: usize,
    pub pair_count: u64,
    pub comparable_count: u64,
    pub reconstruction_checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "window": [self.window.0, self.window.1],
            "max_factors": self.max_factors,
            "monomials": self.monomial_count,
            "pairs": self.pair_count,
            "comparable": self.comparable_count,
            "reconstruction_checked": self.reconstruction_checked,
            "counterexamples": self.counterexamples.iter().map(|c| serde_json::json!({
                "n": c.n.to_string(),
                "m": c.m.to_string(),
                "kind": format!("{:?}", c.kind),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Enumerate all dominant monomials supported in the window with at most
/// `max_factors` factors.
pub fn dominant_monomials_in_window(
    rep: &Repetition,
    p_lo: i64,
    p_hi: i64,
    max_factors: i64,
) -> Result<Vec<DerivedObject>> {
    if p_lo > p_hi {
        return Err(Error::InvalidSpec {
            field: "window",
            message: format!("empty window {p_lo}..{p_hi}"),
        });
    }
    let verts = rep.y_grid_window(p_lo, p_hi);
    let mut out = Vec::new();
    let mut current: Vec<Vertex> = Vec::new();
    fn rec(
        rep: &Repetition,
        verts: &[Vertex],
        start: usize,
        remaining: i64,
        current: &mut Vec<Vertex>,
        out: &mut Vec<DerivedObject>,
    ) -> Result<()> {
        out.push(DerivedObject::from_summands(rep, current.iter().copied())?);
        if remaining == 0 {
            return Ok(());
        }
        for k in start..verts.len() {
            current.push(verts[k]);
            rec(rep, verts, k, remaining - 1, current, out)?;
            current.pop();
        }
        Ok(())
    }
    rec(rep, &verts, 0, max_factors, &mut current, &mut out)?;
    Ok(out)
}

/// Exhaustively check, over every ordered pair of dominant monomials in the
/// window, that the order solver and the degeneration engine agree, and that
/// every accepted witness reconstructs the quotient exactly.
pub fn verify_equivalence(
    rep: &Repetition,
    p_lo: i64,
    p_hi: i64,
    max_factors: i64,
) -> Result<EquivalenceReport> {
    require_type_a(rep)?;
    let objects = dominant_monomials_in_window(rep, p_lo, p_hi, max_factors)?;
    let monomials: Vec<LaurentMonomial> = objects.iter().map(DerivedObject::to_monomial).collect();
    let mut report = EquivalenceReport {
        window: (p_lo, p_hi),
        max_factors,
        monomial_count: objects.len(),
        pair_count: 0,
        comparable_count: 0,
        reconstruction_checked: 0,
        counterexamples: Vec::new(),
    };
    for (mi, m_obj) in objects.iter().enumerate() {
        let m = &monomials[mi];
        let poset = deg_set(rep, m_obj)?;
        let members: HashSet<LaurentMonomial> = poset
            .elements()
            .iter()
            .map(DerivedObject::to_monomial)
            .collect();
        for n in &monomials {
            report.pair_count += 1;
            let solver_witness = nakajima_leq(rep, n, m)?;
            let engine = members.contains(n);
            match solver_witness {
                Some(v) => {
                    report.comparable_count += 1;
                    if !engine {
                        report.counterexamples.push(Counterexample {
                            n: n.clone(),
                            m: m.clone(),
                            kind: CounterexampleKind::OrderMismatch {
                                solver: true,
                                engine: false,
                            },
                        });
                    }
                    report.reconstruction_checked += 1;
                    if n.mul(&v.product(rep)?)? != *m {
                        report.counterexamples.push(Counterexample {
                            n: n.clone(),
                            m: m.clone(),
                            kind: CounterexampleKind::ReconstructionFailure,
                        });
                    }
                }
                None => {
                    if engine {
                        report.counterexamples.push(Counterexample {
                            n: n.clone(),
                            m: m.clone(),
                            kind: CounterexampleKind::OrderMismatch {
                                solver: false,
                                engine: true,
                            },
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Outcome of the pairwise triangle-bound check over a window.
#[derive(Debug, Clone)]
pub struct TriangleBoundReport {
    pub window: (i64, i64),
    pub vertex_count: usize,
    pub pair_count: u64,
    pub triangle_count: u64,
    pub failures: Vec<(Vertex, Vertex)>,
}

impl TriangleBoundReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "window": [self.window.0, self.window.1],
            "vertices": self.vertex_count,
            "pairs": self.pair_count,
            "triangles": self.triangle_count,
            "failures": self.failures.iter().map(|(x, y)| {
                serde_json::json!([[x.i, x.p], [y.i, y.p]])
            }).collect::<Vec<_>>(),
        })
    }
}

/// For every ordered vertex pair in the window: the split pair must be
/// reflexively comparable with the zero witness, and whenever a triangle
/// certificate exists, the middle's monomial must sit below the product of
/// the ends.
pub fn verify_triangle_bound(
    rep: &Repetition,
    p_lo: i64,
    p_hi: i64,
) -> Result<TriangleBoundReport> {
    require_type_a(rep)?;
    if p_lo > p_hi {
        return Err(Error::InvalidSpec {
            field: "window",
            message: format!("empty window {p_lo}..{p_hi}"),
        });
    }
    let verts = rep.y_grid_window(p_lo, p_hi);
    let mut report = TriangleBoundReport {
        window: (p_lo, p_hi),
        vertex_count: verts.len(),
        pair_count: 0,
        triangle_count: 0,
        failures: Vec::new(),
    };
    for &y1 in &verts {
        for &y2 in &verts {
            report.pair_count += 1;
            let ends = LaurentMonomial::variable(y1).mul(&LaurentMonomial::variable(y2))?;
            let split = nakajima_leq(rep, &ends, &ends)?;
            if split != Some(AMonomialVector::zero()) {
                report.failures.push((y1, y2));
                continue;
            }
            if let Some(par) = parallelogram_solve(rep, y1, y2)? {
                report.triangle_count += 1;
                let middle = par.middle_object(rep)?.to_monomial();
                match nakajima_leq(rep, &middle, &ends)? {
                    Some(v) if !v.is_zero() => {}
                    _ => report.failures.push((y1, y2)),
                }
            }
        }
    }
    Ok(report)
}
