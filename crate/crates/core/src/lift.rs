//! Lifts of closed tours into the strip and plane covers, and homotopy
//! classification from the lift endpoint.
//!
//! The strip cover of a cylinder with `m` columns has vertices `(a, b)` with
//! `0 <= a < m` and any integer `b`; the plane cover of a torus has all
//! integer pairs. Lifting a tour starting on the base square `(0,0)` means
//! adding up its knight pairs without any wrap. A closed tour on `C(m,n)` ends
//! at `(0, k*n)` and has class `k`; one on `T(m,n)` ends at `(p*m, q*n)` and
//! has class `(p, q)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::board::{BoardSpec, Square, Topology};
use crate::error::{Error, Result};
use crate::tour::Tour;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LiftPoint {
    pub a: i64,
    pub b: i64,
}

impl LiftPoint {
    pub const ORIGIN: LiftPoint = LiftPoint { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        LiftPoint { a, b }
    }

    pub fn offset(self, dx: i64, dy: i64) -> Self {
        LiftPoint::new(self.a + dx, self.b + dy)
    }

    /// The square this vertex covers.
    pub fn project(self, spec: BoardSpec) -> Square {
        match spec.topology() {
            Topology::Regular => Square::new(self.a, self.b),
            Topology::Cylinder => Square::new(self.a, self.b.rem_euclid(spec.n())),
            Topology::Torus => Square::new(self.a.rem_euclid(spec.m()), self.b.rem_euclid(spec.n())),
        }
    }
}

impl fmt::Display for LiftPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftPath {
    pub points: Vec<LiftPoint>,
}

impl LiftPath {
    pub fn endpoint(&self) -> LiftPoint {
        *self.points.last().expect("a lift has at least its base point")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomotopyClass {
    /// Winding number around a cylinder.
    Cylinder(i64),
    /// Latitudinal and longitudinal winding on a torus.
    Torus(i64, i64),
}

impl HomotopyClass {
    pub fn is_identity(self) -> bool {
        matches!(self, HomotopyClass::Cylinder(0) | HomotopyClass::Torus(0, 0))
    }

    pub fn topology(self) -> Topology {
        match self {
            HomotopyClass::Cylinder(_) => Topology::Cylinder,
            HomotopyClass::Torus(..) => Topology::Torus,
        }
    }

    /// Lift endpoint of a tour in this class.
    pub fn endpoint(self, spec: BoardSpec) -> LiftPoint {
        match self {
            HomotopyClass::Cylinder(k) => LiftPoint::new(0, k * spec.n()),
            HomotopyClass::Torus(p, q) => LiftPoint::new(p * spec.m(), q * spec.n()),
        }
    }
}

impl std::ops::Neg for HomotopyClass {
    type Output = HomotopyClass;

    fn neg(self) -> HomotopyClass {
        match self {
            HomotopyClass::Cylinder(k) => HomotopyClass::Cylinder(-k),
            HomotopyClass::Torus(p, q) => HomotopyClass::Torus(-p, -q),
        }
    }
}

impl fmt::Display for HomotopyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyClass::Cylinder(k) => write!(f, "k={k}"),
            HomotopyClass::Torus(p, q) => write!(f, "(p,q)=({p},{q})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTarget {
    Identity,
    /// Cylinder class `+1` or `-1`.
    Generator,
    /// Torus class `(0, +1)` or `(0, -1)`.
    Longitude,
    /// The given class or its inverse.
    Exact(HomotopyClass),
    Any,
}

impl ClassTarget {
    pub fn check_topology(self, topology: Topology) -> Result<()> {
        let ok = match self {
            ClassTarget::Any | ClassTarget::Identity => true,
            ClassTarget::Generator => topology == Topology::Cylinder,
            ClassTarget::Longitude => topology == Topology::Torus,
            ClassTarget::Exact(c) => c.topology() == topology,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::TargetTopologyMismatch {
                target: self.to_string(),
                topology,
            })
        }
    }

    /// Admissible lift endpoints, or `None` when any endpoint will do.
    pub fn endpoints(self, spec: BoardSpec) -> Result<Option<Vec<LiftPoint>>> {
        self.check_topology(spec.topology())?;
        let n = spec.n();
        let pts = match self {
            ClassTarget::Any => return Ok(None),
            ClassTarget::Identity => vec![LiftPoint::ORIGIN],
            ClassTarget::Generator | ClassTarget::Longitude => {
                vec![LiftPoint::new(0, -n), LiftPoint::new(0, n)]
            }
            ClassTarget::Exact(c) => {
                let e = c.endpoint(spec);
                let mut v = vec![e];
                if -c != c {
                    v.insert(0, (-c).endpoint(spec));
                }
                v
            }
        };
        Ok(Some(pts))
    }
}

impl fmt::Display for ClassTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTarget::Identity => f.write_str("identity"),
            ClassTarget::Generator => f.write_str("generator"),
            ClassTarget::Longitude => f.write_str("longitude"),
            ClassTarget::Any => f.write_str("any"),
            ClassTarget::Exact(HomotopyClass::Cylinder(k)) => write!(f, "exact:{k}"),
            ClassTarget::Exact(HomotopyClass::Torus(p, q)) => write!(f, "exact:{p},{q}"),
        }
    }
}

impl FromStr for ClassTarget {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "identity" => return Ok(ClassTarget::Identity),
            "generator" => return Ok(ClassTarget::Generator),
            "longitude" => return Ok(ClassTarget::Longitude),
            "any" => return Ok(ClassTarget::Any),
            _ => {}
        }
        let rest = s
            .strip_prefix("exact:")
            .ok_or_else(|| format!("unknown target `{s}`"))?;
        let nums: std::result::Result<Vec<i64>, _> = rest.split(',').map(|t| t.trim().parse()).collect();
        match nums.map_err(|e| format!("bad class `{rest}`: {e}"))?.as_slice() {
            [k] => Ok(ClassTarget::Exact(HomotopyClass::Cylinder(*k))),
            [p, q] => Ok(ClassTarget::Exact(HomotopyClass::Torus(*p, *q))),
            _ => Err(format!("bad class `{rest}`")),
        }
    }
}

fn check_surface(spec: BoardSpec) -> Result<()> {
    if spec.topology().is_surface() {
        Ok(())
    } else {
        Err(Error::NotASurface(spec.topology()))
    }
}

/// Lifts a closed tour, rotated so that it leaves the base square `(0,0)`
/// first, to a path starting at the base point.
pub fn lift_tour(spec: BoardSpec, tour: &Tour) -> Result<LiftPath> {
    check_surface(spec)?;
    if !tour.is_closed() {
        return Err(Error::InvalidTour("only closed tours have homotopy classes".into()));
    }
    let tour = if tour.spec() == spec {
        tour.clone()
    } else {
        tour.on_board(spec)?
    };
    let base = Square::new(0, 0);
    let tour = tour
        .starting_at(base)
        .ok_or_else(|| Error::InvalidTour("tour does not visit the base square".into()))?;
    let mut at = LiftPoint::ORIGIN;
    let mut points = Vec::with_capacity(tour.len() + 1);
    points.push(at);
    for j in tour.jumps() {
        at = at.offset(j.pair.x, j.pair.y);
        points.push(at);
    }
    Ok(LiftPath { points })
}

pub fn classify(spec: BoardSpec, tour: &Tour) -> Result<HomotopyClass> {
    let end = lift_tour(spec, tour)?.endpoint();
    let (m, n) = (spec.m(), spec.n());
    match spec.topology() {
        Topology::Cylinder => {
            debug_assert!(end.a == 0 && end.b % n == 0);
            Ok(HomotopyClass::Cylinder(end.b / n))
        }
        Topology::Torus => {
            debug_assert!(end.a % m == 0 && end.b % n == 0);
            Ok(HomotopyClass::Torus(end.a / m, end.b / n))
        }
        Topology::Regular => unreachable!(),
    }
}

pub fn matches_target(spec: BoardSpec, cls: HomotopyClass, target: ClassTarget) -> Result<bool> {
    if cls.topology() != spec.topology() {
        return Err(Error::TargetTopologyMismatch {
            target: cls.to_string(),
            topology: spec.topology(),
        });
    }
    target.check_topology(spec.topology())?;
    Ok(match target {
        ClassTarget::Any => true,
        ClassTarget::Identity => cls.is_identity(),
        ClassTarget::Generator => matches!(cls, HomotopyClass::Cylinder(1 | -1)),
        ClassTarget::Longitude => matches!(cls, HomotopyClass::Torus(0, 1 | -1)),
        ClassTarget::Exact(c) => cls == c || cls == -c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    Blocked,
    NotBlocked,
}

/// True when a closed tour of class `cls` satisfies the two-colouring
/// congruence: `k*n = m*n (mod 2)` on cylinders, `p*m + q*n = m*n (mod 2)` on
/// tori. A tour has `m*n` moves and each move flips the colour of the lift.
pub fn parity_admits(spec: BoardSpec, cls: HomotopyClass) -> bool {
    let (m, n) = (spec.m(), spec.n());
    if m * n == 1 {
        return true;
    }
    let lhs = match cls {
        HomotopyClass::Cylinder(k) => k * n,
        HomotopyClass::Torus(p, q) => p * m + q * n,
    };
    (lhs - m * n).rem_euclid(2) == 0
}

pub fn parity_obstruction(spec: BoardSpec, target: ClassTarget) -> Result<Obstruction> {
    check_surface(spec)?;
    let Some(ends) = target.endpoints(spec)? else {
        return Ok(Obstruction::NotBlocked);
    };
    let (m, n) = (spec.m(), spec.n());
    let admitted = ends.iter().any(|e| {
        let cls = match spec.topology() {
            Topology::Cylinder => HomotopyClass::Cylinder(e.b / n),
            _ => HomotopyClass::Torus(e.a / m, e.b / n),
        };
        parity_admits(spec, cls)
    });
    Ok(if admitted {
        Obstruction::NotBlocked
    } else {
        Obstruction::Blocked
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Red,
    Blue,
}

pub fn color(pt: LiftPoint) -> Color {
    if (pt.a + pt.b).rem_euclid(2) == 0 {
        Color::Red
    } else {
        Color::Blue
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::KnightPair;

    fn kp(x: i64, y: i64) -> KnightPair {
        KnightPair::new(x, y).unwrap()
    }

    fn pts(v: &[(i64, i64)]) -> Vec<LiftPoint> {
        v.iter().map(|&(a, b)| LiftPoint::new(a, b)).collect()
    }

    #[test]
    fn lifts_by_hand_sum() {
        let c11 = BoardSpec::cylinder(1, 1).unwrap();
        let lift = lift_tour(c11, &Tour::empty(c11).unwrap()).unwrap();
        assert_eq!(lift.points, pts(&[(0, 0)]));

        let c21 = BoardSpec::cylinder(2, 1).unwrap();
        let t = Tour::from_moves(c21, Square::new(0, 0), &[kp(1, 2), kp(-1, 2)], true).unwrap();
        assert_eq!(lift_tour(c21, &t).unwrap().points, pts(&[(0, 0), (1, 2), (0, 4)]));

        let t12 = BoardSpec::torus(1, 2).unwrap();
        let t = Tour::from_moves(t12, Square::new(0, 0), &[kp(2, 1), kp(-2, 1)], true).unwrap();
        assert_eq!(lift_tour(t12, &t).unwrap().points, pts(&[(0, 0), (2, 1), (0, 2)]));
        assert_eq!(classify(t12, &t).unwrap(), HomotopyClass::Torus(0, 1));
    }

    #[test]
    fn regular_boards_do_not_lift() {
        let r = BoardSpec::regular(1, 1).unwrap();
        assert!(matches!(
            lift_tour(r, &Tour::empty(r).unwrap()),
            Err(Error::NotASurface(_))
        ));
    }

    #[test]
    fn small_classes() {
        let c11 = BoardSpec::cylinder(1, 1).unwrap();
        assert_eq!(
            classify(c11, &Tour::empty(c11).unwrap()).unwrap(),
            HomotopyClass::Cylinder(0)
        );
        let t11 = BoardSpec::torus(1, 1).unwrap();
        assert_eq!(
            classify(t11, &Tour::empty(t11).unwrap()).unwrap(),
            HomotopyClass::Torus(0, 0)
        );

        let c21 = BoardSpec::cylinder(2, 1).unwrap();
        let t = Tour::from_moves(c21, Square::new(0, 0), &[kp(1, 2), kp(-1, 2)], true).unwrap();
        assert_eq!(classify(c21, &t).unwrap(), HomotopyClass::Cylinder(4));
        assert_eq!(classify(c21, &t.reversed()).unwrap(), HomotopyClass::Cylinder(-4));
    }

    #[test]
    fn rotated_tours_lift_from_the_base_square() {
        let t12 = BoardSpec::torus(1, 2).unwrap();
        let t = Tour::from_moves(t12, Square::new(0, 0), &[kp(2, 1), kp(-2, 1)], true).unwrap();
        let lift = lift_tour(t12, &t.rotated(1)).unwrap();
        assert_eq!(lift.points[0], LiftPoint::ORIGIN);
        assert_eq!(classify(t12, &t.rotated(1)).unwrap(), HomotopyClass::Torus(0, 1));
    }

    #[test]
    fn target_matching() {
        let c = BoardSpec::cylinder(3, 3).unwrap();
        let t = BoardSpec::torus(3, 3).unwrap();
        assert!(matches_target(c, HomotopyClass::Cylinder(-1), ClassTarget::Generator).unwrap());
        assert!(!matches_target(c, HomotopyClass::Cylinder(4), ClassTarget::Generator).unwrap());
        assert!(!matches_target(t, HomotopyClass::Torus(0, 1), ClassTarget::Identity).unwrap());
        assert!(matches_target(t, HomotopyClass::Torus(0, -1), ClassTarget::Longitude).unwrap());
        assert!(!matches_target(t, HomotopyClass::Torus(1, 1), ClassTarget::Longitude).unwrap());
        assert!(matches_target(
            c,
            HomotopyClass::Cylinder(-4),
            ClassTarget::Exact(HomotopyClass::Cylinder(4))
        )
        .unwrap());
        assert!(matches_target(c, HomotopyClass::Cylinder(7), ClassTarget::Any).unwrap());
        assert!(matches!(
            matches_target(c, HomotopyClass::Cylinder(1), ClassTarget::Longitude),
            Err(Error::TargetTopologyMismatch { .. })
        ));
        assert!(matches_target(c, HomotopyClass::Torus(0, 0), ClassTarget::Identity).is_err());
    }

    #[test]
    fn parity_examples() {
        let blocked = |spec: BoardSpec, t| parity_obstruction(spec, t).unwrap() == Obstruction::Blocked;
        assert!(blocked(BoardSpec::cylinder(3, 3).unwrap(), ClassTarget::Identity));
        assert!(blocked(BoardSpec::cylinder(4, 3).unwrap(), ClassTarget::Generator));
        assert!(!blocked(BoardSpec::torus(5, 4).unwrap(), ClassTarget::Longitude));
        assert!(!blocked(BoardSpec::cylinder(1, 1).unwrap(), ClassTarget::Identity));
        assert!(!blocked(BoardSpec::cylinder(1, 1).unwrap(), ClassTarget::Generator));
        assert!(blocked(BoardSpec::torus(5, 3).unwrap(), ClassTarget::Identity));
        assert!(!blocked(BoardSpec::cylinder(4, 3).unwrap(), ClassTarget::Any));
        assert!(parity_obstruction(BoardSpec::regular(4, 3).unwrap(), ClassTarget::Identity).is_err());
    }

    #[test]
    fn parity_matches_stated_rules() {
        for m in 1..=9 {
            for n in 1..=9 {
                for topo in [Topology::Cylinder, Topology::Torus] {
                    let spec = BoardSpec::new(topo, m, n).unwrap();
                    let id = parity_obstruction(spec, ClassTarget::Identity).unwrap();
                    let expect_id = m % 2 == 1 && n % 2 == 1 && m * n > 1;
                    assert_eq!(id == Obstruction::Blocked, expect_id, "{spec}");
                    let gen = if topo == Topology::Cylinder {
                        ClassTarget::Generator
                    } else {
                        ClassTarget::Longitude
                    };
                    let g = parity_obstruction(spec, gen).unwrap();
                    assert_eq!(g == Obstruction::Blocked, m % 2 == 0 && n % 2 == 1, "{spec}");
                }
            }
        }
    }

    #[test]
    fn colours() {
        assert_eq!(color(LiftPoint::new(0, 0)), Color::Red);
        assert_eq!(color(LiftPoint::new(1, 2)), Color::Blue);
        assert_eq!(color(LiftPoint::new(-1, -2)), Color::Blue);
        for p in crate::board::KNIGHT_PAIRS {
            let q = LiftPoint::new(p.x, p.y);
            assert_ne!(color(LiftPoint::ORIGIN), color(q));
        }
    }

    #[test]
    fn target_parsing() {
        assert_eq!("generator".parse::<ClassTarget>().unwrap(), ClassTarget::Generator);
        assert_eq!(
            "exact:-4".parse::<ClassTarget>().unwrap(),
            ClassTarget::Exact(HomotopyClass::Cylinder(-4))
        );
        assert_eq!(
            "exact:0,1".parse::<ClassTarget>().unwrap(),
            ClassTarget::Exact(HomotopyClass::Torus(0, 1))
        );
        assert!("exact:".parse::<ClassTarget>().is_err());
        assert!("sideways".parse::<ClassTarget>().is_err());
        for t in ["identity", "any", "exact:3", "exact:1,-2"] {
            assert_eq!(t.parse::<ClassTarget>().unwrap().to_string(), t);
        }
    }
}
