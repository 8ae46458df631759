use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::GenError;
use crate::graph::{Weight, WeightMode};

/// Distribution of i.i.d. edge weights.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightDist {
    /// `U(lo, hi) + mean_shift`; only valid for real-mode graphs.
    UniformShifted { lo: f64, hi: f64, mean_shift: f64 },
    /// Uniform over the integers `lo..=hi`.
    UniformInt { lo: i64, hi: i64 },
    Constant { w: f64 },
}

impl Default for WeightDist {
    /// `U(-1, 1) + 0.25`: mixed signs with positive expectation.
    fn default() -> Self {
        WeightDist::shifted(0.25)
    }
}

impl WeightDist {
    pub fn shifted(mean_shift: f64) -> Self {
        WeightDist::UniformShifted {
            lo: -1.0,
            hi: 1.0,
            mean_shift,
        }
    }

    /// Checks parameters and that the distribution can produce weights of mode `mode`.
    pub fn check(&self, mode: WeightMode) -> Result<(), GenError> {
        let bad = |why: &str| Err(GenError::InvalidWeights(format!("{self}: {why}")));
        match *self {
            WeightDist::UniformShifted { lo, hi, mean_shift } => {
                if !(lo.is_finite() && hi.is_finite() && mean_shift.is_finite()) {
                    return bad("non-finite parameter");
                }
                if lo >= hi {
                    return bad("lo must be < hi");
                }
                if mode == WeightMode::Integer {
                    return bad("real-valued distribution for an integer graph");
                }
            }
            WeightDist::UniformInt { lo, hi } => {
                if lo > hi {
                    return bad("lo must be <= hi");
                }
            }
            WeightDist::Constant { w } => {
                if !w.is_finite() {
                    return bad("non-finite constant");
                }
                if mode == WeightMode::Integer && (w.fract() != 0.0 || w.abs() > i64::MAX as f64) {
                    return bad("non-integral constant for an integer graph");
                }
            }
        }
        Ok(())
    }

    /// Draws one weight. Call [`WeightDist::check`] first.
    pub fn sample<W: GenWeight, R: Rng + ?Sized>(&self, rng: &mut R) -> W {
        match *self {
            WeightDist::UniformShifted { lo, hi, mean_shift } => W::from_real(rng.gen_range(lo..hi) + mean_shift),
            WeightDist::UniformInt { lo, hi } => W::from_int(rng.gen_range(lo..=hi)),
            WeightDist::Constant { w } => match W::MODE {
                WeightMode::Integer => W::from_int(w as i64),
                WeightMode::Real => W::from_real(w),
            },
        }
    }

    pub fn can_be_negative(&self) -> bool {
        match *self {
            WeightDist::UniformShifted { lo, mean_shift, .. } => lo + mean_shift < 0.0,
            WeightDist::UniformInt { lo, .. } => lo < 0,
            WeightDist::Constant { w } => w < 0.0,
        }
    }

    /// Natural graph mode for this distribution.
    pub fn mode(&self) -> WeightMode {
        match self {
            WeightDist::UniformShifted { .. } => WeightMode::Real,
            WeightDist::UniformInt { .. } => WeightMode::Integer,
            WeightDist::Constant { w } if w.fract() == 0.0 => WeightMode::Integer,
            WeightDist::Constant { .. } => WeightMode::Real,
        }
    }
}

impl fmt::Display for WeightDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightDist::UniformShifted { lo, hi, mean_shift } => write!(f, "uniform:{lo}:{hi}:{mean_shift}"),
            WeightDist::UniformInt { lo, hi } => write!(f, "int:{lo}:{hi}"),
            WeightDist::Constant { w } => write!(f, "const:{w}"),
        }
    }
}

/// Parses `uniform:LO:HI[:SHIFT]`, `int:LO:HI` or `const:W`.
impl FromStr for WeightDist {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || GenError::InvalidWeights(format!("cannot parse weight distribution `{s}`"));
        let real = |t: &str| t.parse::<f64>().map_err(|_| bad());
        let int = |t: &str| t.parse::<i64>().map_err(|_| bad());
        match parts.as_slice() {
            ["uniform", lo, hi] => Ok(WeightDist::UniformShifted {
                lo: real(lo)?,
                hi: real(hi)?,
                mean_shift: 0.0,
            }),
            ["uniform", lo, hi, shift] => Ok(WeightDist::UniformShifted {
                lo: real(lo)?,
                hi: real(hi)?,
                mean_shift: real(shift)?,
            }),
            ["int", lo, hi] => Ok(WeightDist::UniformInt { lo: int(lo)?, hi: int(hi)? }),
            ["const", w] => Ok(WeightDist::Constant { w: real(w)? }),
            _ => Err(bad()),
        }
    }
}

/// Weight types the generators can produce.
pub trait GenWeight: Weight {
    fn from_int(v: i64) -> Self;
    fn from_real(v: f64) -> Self;
    /// `total` split into `parts` summands that add back to `total`.
    fn split(total: Self, parts: usize) -> Vec<Self>;
}

impl GenWeight for i64 {
    fn from_int(v: i64) -> Self {
        v
    }

    fn from_real(v: f64) -> Self {
        v as i64
    }

    fn split(total: Self, parts: usize) -> Vec<Self> {
        let k = parts as i64;
        let (q, r) = (total.div_euclid(k), total.rem_euclid(k));
        (0..k).map(|i| if i < r { q + 1 } else { q }).collect()
    }
}

impl GenWeight for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_real(v: f64) -> Self {
        v
    }

    fn split(total: Self, parts: usize) -> Vec<Self> {
        let share = total / parts as f64;
        let mut out = vec![share; parts];
        out[parts - 1] = total - share * (parts - 1) as f64;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::rng::rng_from_seed;

    #[test]
    fn parse_and_display() {
        let d: WeightDist = "uniform:-1:1:0.25".parse().unwrap();
        assert_eq!(d, WeightDist::default());
        assert_eq!(d.to_string().parse::<WeightDist>().unwrap(), d);
        assert_eq!("int:-3:7".parse::<WeightDist>().unwrap(), WeightDist::UniformInt { lo: -3, hi: 7 });
        assert!("gauss:0:1".parse::<WeightDist>().is_err());
    }

    #[test]
    fn mode_checks() {
        assert!(WeightDist::default().check(WeightMode::Integer).is_err());
        assert!(WeightDist::default().check(WeightMode::Real).is_ok());
        assert!(WeightDist::UniformShifted { lo: 1.0, hi: 1.0, mean_shift: 0.0 }.check(WeightMode::Real).is_err());
        assert!(WeightDist::Constant { w: 0.5 }.check(WeightMode::Integer).is_err());
        assert!(WeightDist::Constant { w: 2.0 }.check(WeightMode::Integer).is_ok());
    }

    #[test]
    fn samples_in_range() {
        let mut rng = rng_from_seed(1);
        let d = WeightDist::default();
        let xs: Vec<f64> = (0..10_000).map(|_| d.sample(&mut rng)).collect();
        assert!(xs.iter().all(|&x| (-0.75..1.25).contains(&x)));
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((mean - 0.25).abs() < 0.03, "mean {mean}");
        let d = WeightDist::UniformInt { lo: -2, hi: 2 };
        let ys: Vec<i64> = (0..1000).map(|_| d.sample(&mut rng)).collect();
        assert!(ys.iter().all(|y| (-2..=2).contains(y)));
        assert!(ys.contains(&-2) && ys.contains(&2));
    }

    #[test]
    fn splits_sum_exactly() {
        for total in [-1i64, -7, -100] {
            for parts in 1..6 {
                let s = i64::split(total, parts);
                assert_eq!(s.len(), parts);
                assert_eq!(s.iter().sum::<i64>(), total);
            }
        }
        let s = f64::split(-1.0, 3);
        assert!(s.iter().sum::<f64>() < 0.0);
    }
}
