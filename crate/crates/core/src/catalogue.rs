//! Named scalar functions used to build symbol families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarFn {
    Identity,
    Square,
    Abs,
    /// `log(1 + e^x)`.
    Softplus,
    Sin,
    /// `|x|^{1/2}`.
    SqrtAbs,
    /// `e^{-|x|}`.
    ExpNegAbs,
    /// `sign(x)` with `sign(0) = 0`.
    Sign,
}

impl ScalarFn {
    pub const ALL: [ScalarFn; 8] = [
        ScalarFn::Identity,
        ScalarFn::Square,
        ScalarFn::Abs,
        ScalarFn::Softplus,
        ScalarFn::Sin,
        ScalarFn::SqrtAbs,
        ScalarFn::ExpNegAbs,
        ScalarFn::Sign,
    ];

    pub fn eval(self, x: f64) -> f64 {
        match self {
            ScalarFn::Identity => x,
            ScalarFn::Square => x * x,
            ScalarFn::Abs => x.abs(),
            ScalarFn::Softplus => x.max(0.0) + (-x.abs()).exp().ln_1p(),
            ScalarFn::Sin => x.sin(),
            ScalarFn::SqrtAbs => x.abs().sqrt(),
            ScalarFn::ExpNegAbs => (-x.abs()).exp(),
            ScalarFn::Sign => {
                if x > 0.0 {
                    1.0
                } else if x < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ScalarFn::Identity => "identity",
            ScalarFn::Square => "square",
            ScalarFn::Abs => "abs",
            ScalarFn::Softplus => "softplus",
            ScalarFn::Sin => "sin",
            ScalarFn::SqrtAbs => "sqrt_abs",
            ScalarFn::ExpNegAbs => "exp_neg_abs",
            ScalarFn::Sign => "sign",
        }
    }

    /// Global Lipschitz constant on the real line, if finite.
    pub fn lipschitz(self) -> Option<f64> {
        match self {
            ScalarFn::Identity
            | ScalarFn::Abs
            | ScalarFn::Softplus
            | ScalarFn::Sin
            | ScalarFn::ExpNegAbs => Some(1.0),
            ScalarFn::Square | ScalarFn::SqrtAbs | ScalarFn::Sign => None,
        }
    }

    /// Global `α`-Hölder constant on the real line, if known and finite.
    pub fn holder(self, alpha: f64) -> Option<f64> {
        match self {
            ScalarFn::SqrtAbs if alpha == 0.5 => Some(1.0),
            _ if alpha == 1.0 => self.lipschitz(),
            _ => None,
        }
    }
}

impl fmt::Display for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScalarFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "x" => return Ok(ScalarFn::Identity),
            "|x|" => return Ok(ScalarFn::Abs),
            "log1pexp" => return Ok(ScalarFn::Softplus),
            _ => {}
        }
        ScalarFn::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown function {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in ScalarFn::ALL {
            assert_eq!(f.name().parse::<ScalarFn>().unwrap(), f);
            let json = serde_json::to_string(&f).unwrap();
            assert_eq!(json, format!("\"{}\"", f.name()));
        }
        assert!("cosh".parse::<ScalarFn>().is_err());
    }

    #[test]
    fn values() {
        assert_eq!(ScalarFn::Sign.eval(0.0), 0.0);
        assert_eq!(ScalarFn::Sign.eval(-3.0), -1.0);
        assert!((ScalarFn::Softplus.eval(0.0) - 2f64.ln()).abs() < 1e-15);
        assert!((ScalarFn::Softplus.eval(800.0) - 800.0).abs() < 1e-12);
        assert!(ScalarFn::Softplus.eval(-800.0) >= 0.0);
        assert_eq!(ScalarFn::SqrtAbs.eval(-4.0), 2.0);
    }

    #[test]
    fn lipschitz_constants_hold_on_samples() {
        let xs: Vec<f64> = (-400..=400).map(|i| i as f64 * 0.0173).collect();
        for f in ScalarFn::ALL {
            let Some(l) = f.lipschitz() else { continue };
            let mut worst = 0.0f64;
            for w in xs.windows(2) {
                worst = worst.max((f.eval(w[1]) - f.eval(w[0])).abs() / (w[1] - w[0]));
            }
            assert!(worst <= l + 1e-12, "{f}: {worst}");
            assert!(worst >= 0.95 * l, "{f}: {worst}");
        }
    }
}
