//! The type A triangle calculus: parallelogram certificates for non-split
//! triangles between indecomposables, the coordinate action of the shift, and
//! the closed-form witness vector for a certified triangle.
//!
//! For ends `V(i,p)` and `V(i',p')` a non-split triangle exists exactly when
//! positive integers `a >= b >= 1` solve one of two parallelogram
//! configurations; the middle term consists of the two opposite corners, with
//! corners at index 0 or `rank + 1` standing for the zero object and dropped.

use crate::error::{Error, Result};
use crate::monomial::AMonomialVector;
use crate::object::DerivedObject;
use crate::quiver::{DynkinType, Repetition, Vertex};

/// The two parallelogram orientations. `C1` slants the first middle toward
/// lower indices, `C2` toward higher ones; for equal end indices both give
/// the same middle multiset and `C1` is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    C1,
    C2,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Condition::C1 => write!(f, "C1"),
            Condition::C2 => write!(f, "C2"),
        }
    }
}

impl std::str::FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C1" | "c1" => Ok(Condition::C1),
            "C2" | "c2" => Ok(Condition::C2),
            other => Err(Error::Parse {
                what: "condition",
                message: format!("expected C1 or C2, got \"{other}\""),
            }),
        }
    }
}

/// A solved configuration certifying the non-split triangle
/// `V(start) -> middles -> V(end) -> V(start)[1]`.
///
/// Middles are stored raw; sentinels mean the corresponding corner is the
/// zero object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parallelogram {
    pub start: Vertex,
    pub end: Vertex,
    pub a: i64,
    pub b: i64,
    pub condition: Condition,
    pub middles: (Vertex, Vertex),
}

impl Parallelogram {
    /// Build from explicit parameters, validating the index ranges.
    pub fn from_parameters(
        rep: &Repetition,
        start: Vertex,
        a: i64,
        b: i64,
        condition: Condition,
    ) -> Result<Parallelogram> {
        require_type_a(rep, "parallelogram construction")?;
        if !rep.on_y_grid(start) {
            return Err(Error::WrongGrid {
                i: start.i,
                p: start.p,
                expected: crate::error::GridKind::Y,
            });
        }
        if !(1 <= b && b <= a) {
            return Err(Error::InvalidSpec {
                field: "a,b",
                message: format!("need a >= b >= 1, got a={a}, b={b}"),
            });
        }
        let n = rep.rank();
        let (i, p) = (start.i, start.p);
        let (m1, m2, end) = match condition {
            Condition::C1 => (
                Vertex::new(i - b, p + b),
                Vertex::new(i + a, p + a),
                Vertex::new(i + a - b, p + a + b),
            ),
            Condition::C2 => (
                Vertex::new(i + b, p + b),
                Vertex::new(i - a, p + a),
                Vertex::new(i + b - a, p + a + b),
            ),
        };
        for corner in [m1, m2] {
            if !(0..=n + 1).contains(&corner.i) {
                return Err(Error::InvalidSpec {
                    field: "a,b",
                    message: format!("corner index {} outside 0..={}", corner.i, n + 1),
                });
            }
        }
        Ok(Parallelogram {
            start,
            end,
            a,
            b,
            condition,
            middles: (m1, m2),
        })
    }

    /// Middle corners that are genuine vertices, sentinels dropped.
    pub fn middle_vertices(&self, rep: &Repetition) -> Vec<Vertex> {
        [self.middles.0, self.middles.1]
            .into_iter()
            .filter(|v| !rep.is_sentinel(v.i))
            .collect()
    }

    /// The middle term as an object; zero when both corners are sentinels.
    pub fn middle_object(&self, rep: &Repetition) -> Result<DerivedObject> {
        DerivedObject::from_summands(rep, self.middle_vertices(rep))
    }

    pub fn to_json(&self, rep: &Repetition) -> serde_json::Value {
        serde_json::json!({
            "start": [self.start.i, self.start.p],
            "end": [self.end.i, self.end.p],
            "a": self.a,
            "b": self.b,
            "condition": self.condition.to_string(),
            "middles": [
                [self.middles.0.i, self.middles.0.p],
                [self.middles.1.i, self.middles.1.p],
            ],
            "middle_object": self.middle_object(rep).map(|o| o.to_json()).unwrap_or(serde_json::Value::Null),
        })
    }
}

fn require_type_a(rep: &Repetition, what: &'static str) -> Result<()> {
    if rep.quiver().dynkin() != DynkinType::A {
        return Err(Error::TypeAOnly(what));
    }
    Ok(())
}

/// Solve for the unique parallelogram with the given ends, if any.
///
/// Points off the Y-grid (including sentinels) never admit a configuration.
/// A returned certificate always has `a >= b >= 1` and, when the end indices
/// agree, reports `C1`.
pub fn parallelogram_solve(
    rep: &Repetition,
    y1: Vertex,
    y2: Vertex,
) -> Result<Option<Parallelogram>> {
    require_type_a(rep, "parallelogram_solve")?;
    if !rep.on_y_grid(y1) || !rep.on_y_grid(y2) {
        return Ok(None);
    }
    let n = rep.rank();
    let dp = y2.p - y1.p;
    let di = y2.i - y1.i;
    if (dp + di) % 2 != 0 {
        return Ok(None);
    }
    let candidates = [
        (Condition::C1, (dp + di) / 2, (dp - di) / 2),
        (Condition::C2, (dp - di) / 2, (dp + di) / 2),
    ];
    for (condition, a, b) in candidates {
        if !(1 <= b && b <= a) {
            continue;
        }
        let in_range = match condition {
            Condition::C1 => y1.i - b >= 0 && y1.i + a <= n + 1,
            Condition::C2 => y1.i + b <= n + 1 && y1.i - a >= 0,
        };
        if !in_range {
            continue;
        }
        let par = Parallelogram::from_parameters(rep, y1, a, b, condition)?;
        debug_assert_eq!(par.end, y2);
        return Ok(Some(par));
    }
    Ok(None)
}

/// Coordinate action of the shift functor in type `A_n`:
/// `(i, p) -> (n + 1 - i, p + n + 1)`.
pub fn shift(rep: &Repetition, x: Vertex) -> Result<Vertex> {
    require_type_a(rep, "shift")?;
    if !rep.on_y_grid(x) {
        return Err(Error::WrongGrid {
            i: x.i,
            p: x.p,
            expected: crate::error::GridKind::Y,
        });
    }
    let n = rep.rank();
    Ok(Vertex::new(n + 1 - x.i, x.p + n + 1))
}

/// The closed-form witness for a certified triangle: an indicator box of
/// `A`-exponents, `a` wide and `b` deep, hanging off the start corner.
pub fn formula_a_monomial(par: &Parallelogram) -> AMonomialVector {
    let (i, p) = (par.start.i, par.start.p);
    let mut entries = Vec::new();
    for r in 0..par.a {
        for l in 0..par.b {
            let index = match par.condition {
                Condition::C1 => i + r - l,
                Condition::C2 => i - r + l,
            };
            entries.push((Vertex::new(index, p + r + l + 1), 1));
        }
    }
    AMonomialVector::from_entries(entries).expect("indicator box fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hammock::ext1_dim;
    use crate::monomial::{nakajima_leq, LaurentMonomial};
    use crate::quiver::{HeightFunction, Quiver};

    fn a1() -> Repetition {
        let q = Quiver::new(DynkinType::A, 1, &[]).unwrap();
        let h = HeightFunction::synthesize(&q, 1, 0).unwrap();
        Repetition::new(q, h).unwrap()
    }

    fn a2() -> Repetition {
        let q = Quiver::new(DynkinType::A, 2, &[(1, 2)]).unwrap();
        let h = HeightFunction::explicit(&q, &[(1, 1), (2, 0)]).unwrap();
        Repetition::new(q, h).unwrap()
    }

    fn a3() -> Repetition {
        let q = Quiver::new(DynkinType::A, 3, &[(1, 2), (3, 2)]).unwrap();
        let h = HeightFunction::explicit(&q, &[(1, 1), (2, 0), (3, 1)]).unwrap();
        Repetition::new(q, h).unwrap()
    }

    #[test]
    fn solve_the_mesh() {
        let rep = a3();
        let par = parallelogram_solve(&rep, Vertex::new(2, -2), Vertex::new(2, 0))
            .unwrap()
            .unwrap();
        assert_eq!((par.a, par.b), (1, 1));
        assert_eq!(par.condition, Condition::C1);
        assert_eq!(
            par.middle_vertices(&rep),
            vec![Vertex::new(1, -1), Vertex::new(3, -1)]
        );
    }

    #[test]
    fn solve_the_annihilation() {
        let rep = a3();
        let par = parallelogram_solve(&rep, Vertex::new(2, -2), Vertex::new(2, 2))
            .unwrap()
            .unwrap();
        assert_eq!((par.a, par.b), (2, 2));
        assert!(par.middle_vertices(&rep).is_empty());
        assert!(par.middle_object(&rep).unwrap().is_zero());
    }

    #[test]
    fn solve_with_one_sentinel() {
        let rep = a3();
        let par = parallelogram_solve(&rep, Vertex::new(3, -1), Vertex::new(3, 1))
            .unwrap()
            .unwrap();
        assert_eq!((par.a, par.b), (1, 1));
        // Equal end indices: C1 is the reported representative.
        assert_eq!(par.condition, Condition::C1);
        let middles = par.middle_vertices(&rep);
        assert_eq!(middles, vec![Vertex::new(2, 0)]);
    }

    #[test]
    fn solve_rejects_off_grid_end() {
        let rep = a2();
        assert!(
            parallelogram_solve(&rep, Vertex::new(1, 1), Vertex::new(1, 2))
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn solve_rejects_other_types() {
        let q = Quiver::new(DynkinType::D, 4, &[(1, 2), (3, 2), (4, 2)]).unwrap();
        let h = HeightFunction::synthesize(&q, 2, 0).unwrap();
        let rep = Repetition::new(q, h).unwrap();
        let err = parallelogram_solve(&rep, Vertex::new(2, 0), Vertex::new(2, 2)).unwrap_err();
        assert!(matches!(err, Error::TypeAOnly(_)));
    }

    #[test]
    fn shift_examples() {
        let rep3 = a3();
        assert_eq!(shift(&rep3, Vertex::new(2, -2)).unwrap(), Vertex::new(2, 2));
        let rep1 = a1();
        assert_eq!(shift(&rep1, Vertex::new(1, 0)).unwrap(), Vertex::new(1, 2));
    }

    #[test]
    fn shift_twice_is_a_translation() {
        let rep = a3();
        let n = rep.rank();
        for x in rep.y_grid_window(-4, 4) {
            let twice = shift(&rep, shift(&rep, x).unwrap()).unwrap();
            assert_eq!(twice, x.translate(-(n + 1)));
        }
    }

    #[test]
    fn annihilation_triangle_from_shift() {
        for rep in [a1(), a2(), a3()] {
            for x in rep.y_grid_window(-4, 4) {
                let sx = shift(&rep, x).unwrap();
                let par = parallelogram_solve(&rep, x, sx).unwrap().unwrap();
                assert!(par.middle_vertices(&rep).is_empty(), "at {x}");
            }
        }
    }

    #[test]
    fn formula_box_mesh_case() {
        let rep = a3();
        let par =
            Parallelogram::from_parameters(&rep, Vertex::new(2, -2), 1, 1, Condition::C1).unwrap();
        assert_eq!(
            formula_a_monomial(&par),
            AMonomialVector::from_entries([(Vertex::new(2, -1), 1)]).unwrap()
        );
    }

    #[test]
    fn formula_box_two_by_two() {
        let rep = a3();
        let par =
            Parallelogram::from_parameters(&rep, Vertex::new(2, -2), 2, 2, Condition::C1).unwrap();
        let expected = AMonomialVector::from_entries([
            (Vertex::new(2, -1), 1),
            (Vertex::new(1, 0), 1),
            (Vertex::new(3, 0), 1),
            (Vertex::new(2, 1), 1),
        ])
        .unwrap();
        assert_eq!(formula_a_monomial(&par), expected);
    }

    #[test]
    fn formula_box_two_by_one() {
        let rep = a3();
        let par =
            Parallelogram::from_parameters(&rep, Vertex::new(1, -1), 2, 1, Condition::C1).unwrap();
        let expected =
            AMonomialVector::from_entries([(Vertex::new(1, 0), 1), (Vertex::new(2, 1), 1)])
                .unwrap();
        assert_eq!(formula_a_monomial(&par), expected);
        // Cross-check against the order solver on the certified pair.
        let n = LaurentMonomial::parse("Y[3,1]").unwrap();
        let m = LaurentMonomial::parse("Y[1,-1]*Y[2,2]").unwrap();
        let v = nakajima_leq(&rep, &n, &m).unwrap().unwrap();
        assert_eq!(v, expected);
    }

    #[test]
    fn middle_has_at_most_two_summands() {
        let rep = a3();
        for y1 in rep.y_grid_window(-4, 4) {
            for y2 in rep.y_grid_window(-4, 4) {
                if let Some(par) = parallelogram_solve(&rep, y1, y2).unwrap() {
                    assert!(par.middle_object(&rep).unwrap().summand_count() <= 2);
                }
            }
        }
    }

    #[test]
    fn solver_agreement_on_window() {
        // The formula box must equal the order solver's unique witness for
        // every certified pair in the window.
        let rep = a3();
        for y1 in rep.y_grid_window(-4, 4) {
            for y2 in rep.y_grid_window(-4, 4) {
                if let Some(par) = parallelogram_solve(&rep, y1, y2).unwrap() {
                    let middle = par.middle_object(&rep).unwrap().to_monomial();
                    let ends = LaurentMonomial::variable(y1)
                        .mul(&LaurentMonomial::variable(y2))
                        .unwrap();
                    let solved = nakajima_leq(&rep, &middle, &ends).unwrap().unwrap();
                    assert_eq!(solved, formula_a_monomial(&par), "pair ({y1},{y2})");
                }
            }
        }
    }

    #[test]
    fn certificates_match_ext_dimensions() {
        for rep in [a2(), a3()] {
            for y1 in rep.y_grid_window(-4, 4) {
                for y2 in rep.y_grid_window(-4, 4) {
                    let has_par = parallelogram_solve(&rep, y1, y2).unwrap().is_some();
                    let ext = ext1_dim(&rep, y2, y1).unwrap();
                    assert_eq!(has_par, ext == 1, "pair ({y1},{y2})");
                }
            }
        }
    }
}
