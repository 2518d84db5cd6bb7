use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SuperError;

/// The classical Lie superalgebras handled here, each with its matrix
/// realization inside an ambient `gl(M|N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Gl { m: usize, n: usize },
    Sl { m: usize, n: usize },
    /// `osp(2m+1|2n)`; `m = 0` gives `osp(1|2n)`.
    OspOdd { m: usize, n: usize },
    /// `osp(2m|2n)`.
    OspEven { m: usize, n: usize },
    Q { n: usize },
    P { n: usize },
}

impl AlgebraKind {
    /// Sizes `(M, N)` of the ambient `gl(M|N)`.
    pub fn ambient(&self) -> (usize, usize) {
        match *self {
            AlgebraKind::Gl { m, n } | AlgebraKind::Sl { m, n } => (m, n),
            AlgebraKind::OspOdd { m, n } => (2 * m + 1, 2 * n),
            AlgebraKind::OspEven { m, n } => (2 * m, 2 * n),
            AlgebraKind::Q { n } | AlgebraKind::P { n } => (n, n),
        }
    }

    pub fn is_gl(&self) -> bool {
        matches!(self, AlgebraKind::Gl { .. })
    }

    pub fn is_osp(&self) -> bool {
        matches!(self, AlgebraKind::OspOdd { .. } | AlgebraKind::OspEven { .. })
    }

    fn validate(self) -> Result<Self, SuperError> {
        let ok = match self {
            AlgebraKind::Gl { m, n } | AlgebraKind::Sl { m, n } => m > 0 && n > 0,
            AlgebraKind::OspOdd { n, .. } => n > 0,
            AlgebraKind::OspEven { m, n } => m > 0 && n > 0,
            AlgebraKind::Q { n } | AlgebraKind::P { n } => n > 0,
        };
        if ok {
            Ok(self)
        } else {
            Err(SuperError::InvalidKind(self.to_string()))
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlgebraKind::Gl { m, n } => write!(f, "gl({m}|{n})"),
            AlgebraKind::Sl { m, n } => write!(f, "sl({m}|{n})"),
            AlgebraKind::OspOdd { m, n } => write!(f, "osp({}|{})", 2 * m + 1, 2 * n),
            AlgebraKind::OspEven { m, n } => write!(f, "osp({}|{})", 2 * m, 2 * n),
            AlgebraKind::Q { n } => write!(f, "q({n})"),
            AlgebraKind::P { n } => write!(f, "p({n})"),
        }
    }
}

impl FromStr for AlgebraKind {
    type Err = SuperError;

    /// Parses `gl(2|3)`, `sl(2|3)`, `osp(5|4)`, `q(3)`, `p(4)`. The osp
    /// arguments are the ambient sizes, so `osp(5|4)` is `OspOdd { m: 2, n: 2 }`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SuperError::InvalidKind(s.to_string());
        let (name, rest) = s.trim().split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let pair = || -> Result<(usize, usize), SuperError> {
            let (a, b) = args.split_once('|').ok_or_else(bad)?;
            Ok((num(a)?, num(b)?))
        };
        let kind = match name.trim() {
            "gl" => {
                let (m, n) = pair()?;
                AlgebraKind::Gl { m, n }
            }
            "sl" => {
                let (m, n) = pair()?;
                AlgebraKind::Sl { m, n }
            }
            "osp" => {
                let (a, b) = pair()?;
                if b % 2 != 0 {
                    return Err(bad());
                }
                if a % 2 == 1 {
                    AlgebraKind::OspOdd { m: a / 2, n: b / 2 }
                } else {
                    AlgebraKind::OspEven { m: a / 2, n: b / 2 }
                }
            }
            "q" => AlgebraKind::Q { n: num(args)? },
            "p" => AlgebraKind::P { n: num(args)? },
            _ => return Err(bad()),
        };
        kind.validate()
    }
}

impl Serialize for AlgebraKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlgebraKind {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
