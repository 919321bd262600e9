use crate::error::{Error, Result};
use crate::graph::Params;
use std::fmt;

/// A row of the classification by the ratio q/p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    QZeroP,
    PZeroQ,
    Beyond2,
    OneTo2,
    Eq1,
    TwoThirdsTo1,
    EqTwoThirds,
    HalfToTwoThirds,
    UpToHalf,
}

/// The problem a regime reduces from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    EdgeColouring,
    Colouring,
    Nae3,
    OneIn3,
    TwoIn4,
}

impl Regime {
    pub const ALL: [Regime; 9] = [
        Regime::QZeroP,
        Regime::PZeroQ,
        Regime::Beyond2,
        Regime::OneTo2,
        Regime::Eq1,
        Regime::TwoThirdsTo1,
        Regime::EqTwoThirds,
        Regime::HalfToTwoThirds,
        Regime::UpToHalf,
    ];

    /// Short command-line tag.
    pub fn tag(self) -> &'static str {
        match self {
            Regime::QZeroP => "q0",
            Regime::PZeroQ => "p0",
            Regime::Beyond2 => "gt2",
            Regime::OneTo2 => "1to2",
            Regime::Eq1 => "eq1",
            Regime::TwoThirdsTo1 => "23to1",
            Regime::EqTwoThirds => "eq23",
            Regime::HalfToTwoThirds => "12to23",
            Regime::UpToHalf => "le12",
        }
    }

    pub fn from_tag(s: &str) -> Option<Regime> {
        Regime::ALL.into_iter().find(|r| r.tag() == s)
    }

    pub fn source(self) -> SourceKind {
        match self {
            Regime::QZeroP => SourceKind::EdgeColouring,
            Regime::PZeroQ | Regime::Eq1 | Regime::TwoThirdsTo1 => SourceKind::Colouring,
            Regime::Beyond2 | Regime::OneTo2 | Regime::UpToHalf => SourceKind::Nae3,
            Regime::EqTwoThirds => SourceKind::OneIn3,
            Regime::HalfToTwoThirds => SourceKind::TwoIn4,
        }
    }

    pub fn constructible(self) -> bool {
        !matches!(self, Regime::Eq1 | Regime::UpToHalf)
    }

    /// Row of a pair with gcd already divided out (or not; the test is
    /// homogeneous).
    pub fn classify(p: u32, q: u32) -> Result<Regime> {
        let (p, q) = (p as u64, q as u64);
        Ok(match (p, q) {
            (0, 0) => return Err(Error::Trivial),
            (0, _) => Regime::PZeroQ,
            (_, 0) => Regime::QZeroP,
            _ if q > 2 * p => Regime::Beyond2,
            _ if q > p => Regime::OneTo2,
            _ if q == p => Regime::Eq1,
            _ if 3 * q > 2 * p => Regime::TwoThirdsTo1,
            _ if 3 * q == 2 * p => Regime::EqTwoThirds,
            _ if 2 * q > p => Regime::HalfToTwoThirds,
            _ => Regime::UpToHalf,
        })
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest n >= 4 with (n-3)p >= q.
pub fn star_degree(p: u32, q: u32) -> u32 {
    4.max(3 + q.div_ceil(p.max(1)))
}

fn label_count(regime: Regime, p: u32, q: u32) -> u32 {
    match regime {
        Regime::QZeroP => 3 * p,
        Regime::PZeroQ => 3 * q,
        Regime::Beyond2 => (star_degree(p, q) - 1) * p + q + 1,
        Regime::OneTo2 => 5 * p + 1,
        Regime::Eq1 => 4 * p,
        Regime::TwoThirdsTo1 => 3 * p + q + 1,
        Regime::EqTwoThirds => 4 * p,
        Regime::HalfToTwoThirds => p + 4 * q + 1,
        Regime::UpToHalf => 3 * p + 1,
    }
}

/// A parameter pair placed in its row, with the label count the hardness
/// result is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeSpec {
    pub p: u32,
    pub q: u32,
    pub regime: Regime,
    pub k: u32,
    pub star_degree: Option<u32>,
    pub gcd: u32,
}

impl RegimeSpec {
    /// Classifies (p, q) without rejecting rows that have no construction.
    pub fn classify(p: u32, q: u32) -> Result<RegimeSpec> {
        let regime = Regime::classify(p, q)?;
        let d = gcd(p, q);
        Ok(RegimeSpec {
            p,
            q,
            regime,
            k: label_count(regime, p, q),
            star_degree: (regime == Regime::Beyond2).then(|| star_degree(p, q)),
            gcd: d,
        })
    }

    pub fn params(&self) -> Params {
        Params {
            p: self.p,
            q: self.q,
            k: self.k,
        }
    }

    /// The coprime pair (a, b) = (p, q) / gcd.
    pub fn reduced_pair(&self) -> (u32, u32) {
        (self.p / self.gcd, self.q / self.gcd)
    }

    /// Params at the coprime pair; gadgets and templates live here.
    pub fn reduced_params(&self) -> Params {
        let (a, b) = self.reduced_pair();
        Params {
            p: a,
            q: b,
            k: label_count(self.regime, a, b),
        }
    }

    pub fn source(&self) -> SourceKind {
        self.regime.source()
    }

    /// Literal count of one clause (edges for the colouring sources).
    pub fn clause_width(&self) -> usize {
        match self.source() {
            SourceKind::EdgeColouring | SourceKind::Colouring => 2,
            SourceKind::Nae3 | SourceKind::OneIn3 => 3,
            SourceKind::TwoIn4 => 4,
        }
    }

    pub fn ensure_constructible(&self) -> Result<()> {
        match self.regime {
            Regime::Eq1 => Err(Error::Unsupported(format!(
                "q/p = 1 at ({}, {}) is delegated to prior work",
                self.p, self.q
            ))),
            Regime::UpToHalf => Err(Error::Unsupported(format!(
                "0 < q/p <= 1/2 at ({}, {}) needs figure-only gadgets",
                self.p, self.q
            ))),
            _ => Ok(()),
        }
    }
}

/// Selects the row for (p, q), refusing rows without a construction.
pub fn dispatch(p: u32, q: u32) -> Result<RegimeSpec> {
    let spec = RegimeSpec::classify(p, q)?;
    spec.ensure_constructible()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_examples() {
        let s = dispatch(0, 5).unwrap();
        assert_eq!((s.regime, s.k, s.gcd), (Regime::PZeroQ, 15, 5));
        assert_eq!(s.reduced_params(), Params { p: 0, q: 1, k: 3 });

        let s = dispatch(3, 2).unwrap();
        assert_eq!((s.regime, s.k), (Regime::EqTwoThirds, 12));

        let s = dispatch(1, 3).unwrap();
        assert_eq!(
            (s.regime, s.k, s.star_degree),
            (Regime::Beyond2, 9, Some(6))
        );
    }

    #[test]
    fn rows_at_smallest_pairs() {
        let rows = [
            ((2, 0), Regime::QZeroP, 6),
            ((2, 3), Regime::OneTo2, 11),
            ((4, 3), Regime::TwoThirdsTo1, 16),
            ((5, 3), Regime::HalfToTwoThirds, 18),
            ((1, 2), Regime::OneTo2, 6),
        ];
        for ((p, q), r, k) in rows {
            let s = dispatch(p, q).unwrap();
            assert_eq!((s.regime, s.k), (r, k), "({p},{q})");
        }
    }

    #[test]
    fn unsupported_and_trivial() {
        assert_eq!(dispatch(0, 0), Err(Error::Trivial));
        assert!(matches!(dispatch(2, 2), Err(Error::Unsupported(_))));
        assert!(matches!(dispatch(2, 1), Err(Error::Unsupported(_))));
        assert!(matches!(dispatch(3, 1), Err(Error::Unsupported(_))));
        assert_eq!(RegimeSpec::classify(2, 2).unwrap().k, 8);
    }

    #[test]
    fn star_degree_is_minimal() {
        for p in 1..6 {
            for q in (2 * p + 1)..(8 * p) {
                let n = star_degree(p, q);
                assert!(n >= 4 && (n - 3) * p >= q);
                assert!(n == 4 || (n - 4) * p < q);
            }
        }
    }

    #[test]
    fn scaling_keeps_the_row() {
        for p in 0..7 {
            for q in 0..7 {
                let Ok(r) = Regime::classify(p, q) else {
                    continue;
                };
                for d in [2, 3] {
                    assert_eq!(Regime::classify(d * p, d * q).unwrap(), r);
                }
            }
        }
    }

    #[test]
    fn tags_round_trip() {
        for r in Regime::ALL {
            assert_eq!(Regime::from_tag(r.tag()), Some(r));
        }
    }
}
