//! The three concrete self-dual groups: elements, Gaussian exponential,
//! Fourier kernel, bicharacter, the subgroup `B`, `epsilon` and `gamma`.

use crate::cmath::{c, cis, powi, root_of_unity, C64, ONE, PI};
use crate::error::{Error, Result};

/// Moduli closer to 1 than this count as on the torus.
const TORUS_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupId {
    /// The real line with `B = Z`.
    RealLine,
    /// `R x Z/NZ` with `B` generated by `(1/sqrt N, 1)`.
    RealTimesCyclic(u32),
    /// `T x Z`, circle coordinate written multiplicatively.
    CircleTimesIntegers,
}

/// A point of one of the groups.
///
/// The continuous coordinate is complex so that the same type carries
/// analytically continued arguments; see [`GroupElement::is_continued`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GroupElement {
    Real(C64),
    /// `(x, m)` with `m` kept in `0..N`.
    RealCyclic(C64, i64),
    /// `(z, m)` with `z != 0`; `|z| = 1` is the group itself.
    CircleInt(C64, i64),
}

impl GroupElement {
    pub fn real(x: f64) -> Self {
        GroupElement::Real(c(x, 0.0))
    }

    pub fn circle(z: C64, m: i64) -> Self {
        GroupElement::CircleInt(z, m)
    }

    /// True when the element is off the group and only makes sense for
    /// continuation-safe operations.
    pub fn is_continued(&self) -> bool {
        match *self {
            GroupElement::Real(x) | GroupElement::RealCyclic(x, _) => x.im != 0.0,
            GroupElement::CircleInt(z, _) => (z.norm() - 1.0).abs() > TORUS_TOL,
        }
    }

    /// Continuous coordinate (`x` or `z`).
    pub fn coord(&self) -> C64 {
        match *self {
            GroupElement::Real(x) | GroupElement::RealCyclic(x, _) => x,
            GroupElement::CircleInt(z, _) => z,
        }
    }

    /// Discrete coordinate (0 on the real line).
    pub fn index(&self) -> i64 {
        match *self {
            GroupElement::Real(_) => 0,
            GroupElement::RealCyclic(_, m) | GroupElement::CircleInt(_, m) => m,
        }
    }
}

/// Haar measure normalization: `scale * (continuous measure) x (counting weight)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HaarMeasure {
    /// Lebesgue on R, or `d theta / 2 pi` on the circle.
    pub continuous: ContinuousMeasure,
    /// Weight of each point of the discrete factor (1 when absent).
    pub counting_weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContinuousMeasure {
    Lebesgue,
    NormalizedCircle,
}

impl GroupId {
    fn order(&self) -> Option<i64> {
        match *self {
            GroupId::RealTimesCyclic(n) => Some(n as i64),
            _ => None,
        }
    }

    /// Checks membership and canonical form.
    pub fn check(&self, x: &GroupElement) -> Result<()> {
        match (*self, *x) {
            (GroupId::RealLine, GroupElement::Real(_)) => Ok(()),
            (GroupId::RealTimesCyclic(n), GroupElement::RealCyclic(_, m)) => {
                if n == 0 {
                    Err(Error::OutOfDomain("cyclic order must be positive"))
                } else if !(0..n as i64).contains(&m) {
                    Err(Error::GroupMismatch)
                } else {
                    Ok(())
                }
            }
            (GroupId::CircleTimesIntegers, GroupElement::CircleInt(z, _)) => {
                if z == C64::new(0.0, 0.0) {
                    Err(Error::OutOfDomain("circle coordinate must be nonzero"))
                } else {
                    Ok(())
                }
            }
            _ => Err(Error::GroupMismatch),
        }
    }

    /// Builds an element, reducing residues mod `N`.
    pub fn element(&self, x: C64, m: i64) -> GroupElement {
        match *self {
            GroupId::RealLine => GroupElement::Real(x),
            GroupId::RealTimesCyclic(n) => GroupElement::RealCyclic(x, m.rem_euclid(n.max(1) as i64)),
            GroupId::CircleTimesIntegers => GroupElement::CircleInt(x, m),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match *self {
            GroupId::CircleTimesIntegers => GroupElement::CircleInt(ONE, 0),
            _ => self.element(C64::new(0.0, 0.0), 0),
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (*a, *b) {
            (GroupElement::Real(x), GroupElement::Real(y)) => GroupElement::Real(x + y),
            (GroupElement::RealCyclic(x, m), GroupElement::RealCyclic(y, n)) => self.element(x + y, m + n),
            (GroupElement::CircleInt(z, m), GroupElement::CircleInt(w, n)) => GroupElement::CircleInt(z * w, m + n),
            _ => return Err(Error::GroupMismatch),
        })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(match *a {
            GroupElement::Real(x) => GroupElement::Real(-x),
            GroupElement::RealCyclic(x, m) => self.element(-x, -m),
            GroupElement::CircleInt(z, m) => GroupElement::CircleInt(z.inv(), -m),
        })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    /// Gaussian exponential `<x>`. Continuation-safe.
    pub fn gaussian(&self, x: &GroupElement) -> Result<C64> {
        self.check(x)?;
        Ok(match *x {
            GroupElement::Real(x) => (C64::new(0.0, PI) * x * x).exp(),
            GroupElement::RealCyclic(x, m) => {
                let n = self.order().unwrap_or(1);
                (C64::new(0.0, PI) * x * x).exp() * root_of_unity(-(m * (m + n)), n)
            }
            GroupElement::CircleInt(z, m) => powi(z, m),
        })
    }

    /// Fourier kernel `<x, y>`. Continuation-safe.
    pub fn fourier_kernel(&self, a: &GroupElement, b: &GroupElement) -> Result<C64> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (*a, *b) {
            (GroupElement::Real(x), GroupElement::Real(y)) => (C64::new(0.0, 2.0 * PI) * x * y).exp(),
            (GroupElement::RealCyclic(x, m), GroupElement::RealCyclic(y, n)) => {
                let order = self.order().unwrap_or(1);
                (C64::new(0.0, 2.0 * PI) * x * y).exp() * root_of_unity(-2 * ((m * n) % order), order)
            }
            (GroupElement::CircleInt(z, m), GroupElement::CircleInt(w, n)) => powi(z, n) * powi(w, m),
            _ => return Err(Error::GroupMismatch),
        })
    }

    /// Bicharacter `chi` with `chi(x,y) chi(y,x) = <x,y>`. Continuation-safe.
    pub fn bicharacter(&self, a: &GroupElement, b: &GroupElement) -> Result<C64> {
        if let GroupId::RealTimesCyclic(n) = *self {
            if n % 2 == 0 {
                return Err(Error::EvenCyclicOrder);
            }
        }
        self.check(a)?;
        self.check(b)?;
        Ok(match (*a, *b) {
            (GroupElement::Real(x), GroupElement::Real(y)) => (C64::new(0.0, PI) * x * y).exp(),
            (GroupElement::RealCyclic(x, m), GroupElement::RealCyclic(y, n)) => {
                let order = self.order().unwrap_or(1);
                let k = (m * n % (2 * order)) * (order - 1);
                (C64::new(0.0, PI) * x * y).exp() * root_of_unity(k, order)
            }
            (GroupElement::CircleInt(_, k), GroupElement::CircleInt(y, _)) => powi(y, k),
            _ => return Err(Error::GroupMismatch),
        })
    }

    /// `b_k`, the k-th element of the self-perpendicular subgroup `B`.
    pub fn embed_b(&self, k: i64) -> GroupElement {
        match *self {
            GroupId::RealLine => GroupElement::Real(c(k as f64, 0.0)),
            GroupId::RealTimesCyclic(n) => {
                let s = (n as f64).sqrt();
                self.element(c(k as f64 / s, 0.0), k)
            }
            GroupId::CircleTimesIntegers => GroupElement::CircleInt(ONE, k),
        }
    }

    /// Representative of the class with `<epsilon, b> = <b>` on `B`.
    /// Unique only modulo `B`.
    pub fn epsilon(&self) -> GroupElement {
        match *self {
            GroupId::RealLine => GroupElement::Real(c(0.5, 0.0)),
            GroupId::RealTimesCyclic(n) => self.element(c(0.5 * (n as f64).sqrt(), 0.0), 0),
            GroupId::CircleTimesIntegers => GroupElement::CircleInt(ONE, 0),
        }
    }

    /// `gamma = integral of the Gaussian` under the normalized Haar measure.
    pub fn gamma_constant(&self) -> C64 {
        match *self {
            GroupId::RealLine => cis(PI / 4.0),
            GroupId::RealTimesCyclic(n) => {
                let n = n as i64;
                let mut sum = C64::new(0.0, 0.0);
                for m in 0..n {
                    sum += root_of_unity(-(m * (m + n)), n);
                }
                cis(PI / 4.0) * sum / (n as f64).sqrt()
            }
            GroupId::CircleTimesIntegers => ONE,
        }
    }

    pub fn haar_normalization(&self) -> HaarMeasure {
        match *self {
            GroupId::RealLine => HaarMeasure { continuous: ContinuousMeasure::Lebesgue, counting_weight: 1.0 },
            GroupId::RealTimesCyclic(n) => {
                HaarMeasure { continuous: ContinuousMeasure::Lebesgue, counting_weight: 1.0 / (n as f64).sqrt() }
            }
            GroupId::CircleTimesIntegers => {
                HaarMeasure { continuous: ContinuousMeasure::NormalizedCircle, counting_weight: 1.0 }
            }
        }
    }
}

/// The subgroup `B` together with its `epsilon` representative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubgroupB {
    pub group: GroupId,
    pub epsilon: GroupElement,
}

impl SubgroupB {
    pub fn of(group: GroupId) -> Self {
        SubgroupB { group, epsilon: group.epsilon() }
    }

    pub fn generator(&self, k: i64) -> GroupElement {
        self.group.embed_b(k)
    }
}
