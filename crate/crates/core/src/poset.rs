//! Small dense strict-order helper: reachability closures, axiom checks, and
//! transitive reduction for the finite posets the engines produce.

/// A strict partial order on `0..n`, stored densely.
#[derive(Debug, Clone)]
pub struct StrictOrder {
    n: usize,
    lt: Vec<bool>,
}

impl StrictOrder {
    /// Closure of a set of direct `(lower, upper)` edges under reachability.
    pub fn from_below_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut down: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (lo, hi) in edges {
            down[hi].push(lo);
        }
        let mut lt = vec![false; n * n];
        for start in 0..n {
            let mut stack: Vec<usize> = down[start].clone();
            while let Some(v) = stack.pop() {
                if !lt[v * n + start] {
                    lt[v * n + start] = true;
                    stack.extend_from_slice(&down[v]);
                }
            }
        }
        StrictOrder { n, lt }
    }

    /// Build from an explicit list of strict `(lower, upper)` pairs, assumed
    /// already transitive; verify with [`StrictOrder::check_axioms`].
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut lt = vec![false; n * n];
        for &(lo, hi) in pairs {
            lt[lo * n + hi] = true;
        }
        StrictOrder { n, lt }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// True when `a` is strictly below `b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a * self.n + b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    /// All strict pairs `(lower, upper)`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Irreflexivity, antisymmetry and transitivity, checked exhaustively.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.n;
        for a in 0..n {
            if self.lt(a, a) {
                return Err(format!("relation is reflexive at {a}"));
            }
            for b in 0..n {
                if self.lt(a, b) && self.lt(b, a) {
                    return Err(format!("antisymmetry fails on ({a},{b})"));
                }
                for c in 0..n {
                    if self.lt(a, b) && self.lt(b, c) && !self.lt(a, c) {
                        return Err(format!("transitivity fails on ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Hasse edges `(lower, upper)`: strict pairs with nothing in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for lo in 0..self.n {
            'pair: for hi in 0..self.n {
                if !self.lt(lo, hi) {
                    continue;
                }
                for mid in 0..self.n {
                    if self.lt(lo, mid) && self.lt(mid, hi) {
                        continue 'pair;
                    }
                }
                out.push((lo, hi));
            }
        }
        out
    }

    /// The covers must generate the relation transitively.
    pub fn check_covers_generate(&self) -> Result<(), String> {
        let regenerated = StrictOrder::from_below_edges(self.n, self.covers());
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) != regenerated.lt(a, b) {
                    return Err(format!(
                        "covers do not regenerate the relation at ({a},{b})"
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Render a Hasse diagram in DOT; edges point from an element to each cover
/// below it.
pub fn hasse_dot(labels: &[String], covers: &[(usize, usize)]) -> String {
    let mut out = String::from("digraph hasse {\n");
    for (k, label) in labels.iter().enumerate() {
        out.push_str(&format!("  n{k} [label=\"{label}\"];\n"));
    }
    for &(lo, hi) in covers {
        out.push_str(&format!("  n{hi} -> n{lo};\n"));
    }
    out.push_str("}\n");
    out
}
