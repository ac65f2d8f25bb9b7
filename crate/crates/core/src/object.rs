//! Objects of the derived category as finite multisets of Y-grid coordinates,
//! one coordinate per indecomposable summand.

use std::collections::BTreeMap;

use crate::error::{Error, GridKind, Result};
use crate::monomial::LaurentMonomial;
use crate::quiver::{K0Class, Repetition, Vertex};

/// Which part of a multiset a [`DerivedObject::slice`] call keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Summands whose level equals the threshold (top slice).
    MaxAt,
    /// Summands strictly above the threshold.
    Above,
    /// Summands whose level equals the threshold (bottom slice).
    MinAt,
    /// Summands strictly below the threshold.
    Below,
}

/// A finite multiset of Y-grid vertices; the empty multiset is the zero
/// object. Canonical order is by (level, index).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivedObject {
    summands: BTreeMap<Vertex, u32>,
}

impl DerivedObject {
    pub fn zero() -> Self {
        DerivedObject::default()
    }

    pub fn from_summands<I: IntoIterator<Item = Vertex>>(
        rep: &Repetition,
        summands: I,
    ) -> Result<Self> {
        let mut out = DerivedObject::zero();
        for v in summands {
            if !rep.on_y_grid(v) {
                return Err(Error::WrongGrid {
                    i: v.i,
                    p: v.p,
                    expected: GridKind::Y,
                });
            }
            out.push(v, 1)?;
        }
        Ok(out)
    }

    fn push(&mut self, v: Vertex, mult: u32) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        let slot = self.summands.entry(v).or_insert(0);
        *slot = slot
            .checked_add(mult)
            .ok_or(Error::Overflow("summand multiplicity"))?;
        Ok(())
    }

    /// Summand at `(i, p)` with multiplicity equal to the exponent of
    /// `Y[i,p]`; inverse of [`DerivedObject::to_monomial`].
    pub fn from_monomial(rep: &Repetition, m: &LaurentMonomial) -> Result<Self> {
        m.validate_support(rep)?;
        m.require_dominant()?;
        let mut out = DerivedObject::zero();
        for (v, e) in m.exponents() {
            let mult = u32::try_from(e).map_err(|_| Error::Overflow("summand multiplicity"))?;
            out.push(v, mult)?;
        }
        Ok(out)
    }

    pub fn to_monomial(&self) -> LaurentMonomial {
        LaurentMonomial::from_exponents(self.summands().map(|(v, mult)| (v, i64::from(mult))))
            .expect("multiplicities fit in i64")
    }

    pub fn summands(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.summands.iter().map(|(&v, &m)| (v, m))
    }

    /// One entry per summand copy, in canonical order.
    pub fn iter_copies(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.summands()
            .flat_map(|(v, m)| std::iter::repeat_n(v, m as usize))
    }

    pub fn multiplicity(&self, v: Vertex) -> u32 {
        self.summands.get(&v).copied().unwrap_or(0)
    }

    /// Number of indecomposable summands, counted with multiplicity.
    pub fn summand_count(&self) -> u64 {
        self.summands.values().map(|&m| u64::from(m)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Lowest and highest summand level. Undefined on the zero object.
    pub fn p_extremes(&self) -> Result<(i64, i64)> {
        if self.is_zero() {
            return Err(Error::ZeroObject("p_extremes"));
        }
        let lo = self.summands.keys().map(|v| v.p).min().unwrap();
        let hi = self.summands.keys().map(|v| v.p).max().unwrap();
        Ok((lo, hi))
    }

    /// Partition the multiset by comparing each summand's level against the
    /// threshold. Returns `(part, rest)` with `part ⊎ rest` equal to the
    /// whole.
    pub fn slice(&self, threshold: i64, side: Side) -> (DerivedObject, DerivedObject) {
        let mut part = DerivedObject::zero();
        let mut rest = DerivedObject::zero();
        for (v, mult) in self.summands() {
            let keep = match side {
                Side::MaxAt | Side::MinAt => v.p == threshold,
                Side::Above => v.p > threshold,
                Side::Below => v.p < threshold,
            };
            let target = if keep { &mut part } else { &mut rest };
            target.summands.insert(v, mult);
        }
        (part, rest)
    }

    /// Multiset union.
    pub fn union(&self, other: &DerivedObject) -> Result<DerivedObject> {
        let mut out = self.clone();
        for (v, mult) in other.summands() {
            out.push(v, mult)?;
        }
        Ok(out)
    }

    /// Multiset difference, defined only when `other` is contained in `self`.
    pub fn checked_sub(&self, other: &DerivedObject) -> Option<DerivedObject> {
        let mut out = self.clone();
        for (v, mult) in other.summands() {
            let have = out.multiplicity(v);
            if have < mult {
                return None;
            }
            if have == mult {
                out.summands.remove(&v);
            } else {
                out.summands.insert(v, have - mult);
            }
        }
        Some(out)
    }

    /// Remove a single copy of `v`; false when absent.
    pub fn remove_one(&mut self, v: Vertex) -> bool {
        match self.summands.get_mut(&v) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.summands.remove(&v);
                true
            }
            None => false,
        }
    }

    /// Sum of the summand classes in the Grothendieck group.
    pub fn k0_class(&self, rep: &Repetition) -> Result<K0Class> {
        let mut total = K0Class::zero(rep.rank());
        for (v, mult) in self.summands() {
            total = total.add(&rep.k0_class(v)?.scaled(i64::from(mult)));
        }
        Ok(total)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.summands()
                .map(|(v, m)| serde_json::json!([v.i, v.p, m]))
                .collect(),
        )
    }

    /// Parse the JSON form `[[i,p,mult],...]`.
    pub fn from_json(rep: &Repetition, value: &serde_json::Value) -> Result<Self> {
        let mut out = DerivedObject::zero();
        for (v, mult) in crate::monomial::parse_triples(value, "object")? {
            if !rep.on_y_grid(v) {
                return Err(Error::WrongGrid {
                    i: v.i,
                    p: v.p,
                    expected: GridKind::Y,
                });
            }
            let mult = u32::try_from(mult).map_err(|_| Error::Overflow("summand multiplicity"))?;
            out.push(v, mult)?;
        }
        Ok(out)
    }

    /// Parse the text shorthand, e.g. `"V(2,-2)+V(2,0)"` or `"0"`. Repeated
    /// summands raise the multiplicity.
    pub fn parse(rep: &Repetition, text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed == "0" {
            return Ok(DerivedObject::zero());
        }
        let mut out = DerivedObject::zero();
        for raw in trimmed.split('+') {
            let term = raw.trim();
            let bad = |message: String| Error::Parse {
                what: "object",
                message,
            };
            let inner = term
                .strip_prefix("V(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| bad(format!("expected V(i,p), got \"{term}\"")))?;
            let (si, sp) = inner
                .split_once(',')
                .ok_or_else(|| bad(format!("expected two coordinates in \"{term}\"")))?;
            let i: i64 = si
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad index in \"{term}\"")))?;
            let p: i64 = sp
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad level in \"{term}\"")))?;
            let v = rep.y_vertex(i, p)?;
            out.push(v, 1)?;
        }
        Ok(out)
    }
}

impl std::fmt::Display for DerivedObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, v) in self.iter_copies().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "V({},{})", v.i, v.p)?;
        }
        Ok(())
    }
}
