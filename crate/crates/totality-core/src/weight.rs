//! Weights: finite maps from priorities to `ℤ ∪ {∞}`.

use alloc::collections::BTreeMap;
use core::fmt;

/// Priority of a constructor, record or projection.
pub type Priority = u32;

/// An integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZInf {
    Fin(i64),
    Inf,
}

impl core::ops::Add for ZInf {
    type Output = ZInf;

    fn add(self, other: ZInf) -> ZInf {
        match (self, other) {
            (ZInf::Fin(a), ZInf::Fin(b)) => ZInf::Fin(a.saturating_add(b)),
            _ => ZInf::Inf,
        }
    }
}

impl ZInf {
    /// `∞` is never negative.
    pub fn is_negative(self) -> bool {
        matches!(self, ZInf::Fin(v) if v < 0)
    }

    /// Collapse into `{-B, ..., B-1, ∞}`.
    pub fn collapse(self, bound: u32) -> ZInf {
        let b = i64::from(bound);
        match self {
            ZInf::Inf => ZInf::Inf,
            ZInf::Fin(v) if v < -b => ZInf::Fin(-b),
            ZInf::Fin(v) if v < b => ZInf::Fin(v),
            ZInf::Fin(_) => ZInf::Inf,
        }
    }
}

impl fmt::Display for ZInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZInf::Fin(v) => write!(f, "{v}"),
            ZInf::Inf => f.write_str("inf"),
        }
    }
}

/// A weight `⟨W⟩`; absent priorities are 0. Zero components are never stored,
/// so structural equality is equality of weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(BTreeMap<Priority, ZInf>);

impl Weight {
    pub fn zero() -> Weight {
        Weight(BTreeMap::new())
    }

    pub fn single(p: Priority, v: ZInf) -> Weight {
        let mut w = Weight::zero();
        w.set(p, v);
        w
    }

    pub fn unit(p: Priority, v: i64) -> Weight {
        Weight::single(p, ZInf::Fin(v))
    }

    pub fn from_pairs<I: IntoIterator<Item = (Priority, ZInf)>>(pairs: I) -> Weight {
        let mut w = Weight::zero();
        for (p, v) in pairs {
            w.set(p, w.get(p) + v);
        }
        w
    }

    pub fn get(&self, p: Priority) -> ZInf {
        self.0.get(&p).copied().unwrap_or(ZInf::Fin(0))
    }

    pub fn set(&mut self, p: Priority, v: ZInf) {
        if v == ZInf::Fin(0) {
            self.0.remove(&p);
        } else {
            self.0.insert(p, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Nonzero components in increasing priority order.
    pub fn iter(&self) -> impl Iterator<Item = (Priority, ZInf)> + '_ {
        self.0.iter().map(|(p, v)| (*p, *v))
    }

    pub fn add(&self, other: &Weight) -> Weight {
        let mut out = self.clone();
        for (p, v) in other.iter() {
            out.set(p, out.get(p) + v);
        }
        out
    }

    pub fn add_at(&self, p: Priority, delta: i64) -> Weight {
        let mut out = self.clone();
        out.set(p, out.get(p) + ZInf::Fin(delta));
        out
    }

    /// Pointwise natural order.
    pub fn zi_leq(&self, other: &Weight) -> bool {
        self.support(other).all(|p| self.get(p) <= other.get(p))
    }

    /// The order on coefficients: pointwise reverse of [`Weight::zi_leq`].
    pub fn coef_leq(&self, other: &Weight) -> bool {
        other.zi_leq(self)
    }

    pub fn collapse(&self, bound: u32) -> Weight {
        Weight::from_pairs(self.iter().map(|(p, v)| (p, v.collapse(bound))))
    }

    /// The least priority of the given parity whose component is strictly
    /// negative while every higher component is `≥ 0`.
    pub fn decreasing_priority(&self, odd: bool) -> Option<Priority> {
        let (p, _) = self.iter().filter(|(_, v)| v.is_negative()).last()?;
        if (p % 2 == 1) == odd {
            Some(p)
        } else {
            None
        }
    }

    fn support<'a>(&'a self, other: &'a Weight) -> impl Iterator<Item = Priority> + 'a {
        self.0.keys().chain(other.0.keys()).copied()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}:{v}")?;
        }
        f.write_str("}")
    }
}
