//! Growth functions `f(q) -> infinity`, given either as a finite table or as
//! one of a few named closed forms.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest exponent accepted when inverting `ceil(log2)`.
const MAX_LOG_EXPONENT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthFn {
    Identity,
    CeilLog2,
    CeilSqrt,
    /// `values[q - 1] = f(q)` for `q = 1..=values.len()`; stored together
    /// with its running minimum from the right.
    Table { values: Vec<u64>, star: Vec<u64> },
}

/// On-disk form: `{"values": [...]}` or `{"named": "identity"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GrowthFile {
    Table { values: Vec<u64> },
    Named { named: String },
}

fn ceil_log2(q: &BigUint) -> BigUint {
    if q <= &BigUint::one() {
        BigUint::zero()
    } else {
        BigUint::from((q - 1u32).bits())
    }
}

fn ceil_sqrt(q: &BigUint) -> BigUint {
    let s = q.sqrt();
    if &(&s * &s) == q {
        s
    } else {
        s + 1u32
    }
}

impl GrowthFn {
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "identity" => Ok(GrowthFn::Identity),
            "ceil-log" | "ceil-log2" => Ok(GrowthFn::CeilLog2),
            "ceil-sqrt" => Ok(GrowthFn::CeilSqrt),
            other => Err(Error::InvalidParameter(format!("unknown growth function `{other}`"))),
        }
    }

    pub fn table(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("growth table is empty".into()));
        }
        let mut star = values.clone();
        for i in (0..star.len() - 1).rev() {
            star[i] = star[i].min(star[i + 1]);
        }
        Ok(GrowthFn::Table { values, star })
    }

    pub fn from_file(file: GrowthFile) -> Result<Self> {
        match file {
            GrowthFile::Table { values } => Self::table(values),
            GrowthFile::Named { named } => Self::named(&named),
        }
    }

    pub fn to_file(&self) -> GrowthFile {
        match self {
            GrowthFn::Identity => GrowthFile::Named { named: "identity".into() },
            GrowthFn::CeilLog2 => GrowthFile::Named { named: "ceil-log2".into() },
            GrowthFn::CeilSqrt => GrowthFile::Named { named: "ceil-sqrt".into() },
            GrowthFn::Table { values, .. } => GrowthFile::Table { values: values.clone() },
        }
    }

    /// `f(q)`, or `None` past the end of a table.
    pub fn eval(&self, q: &BigUint) -> Option<BigUint> {
        match self {
            GrowthFn::Identity => Some(q.clone()),
            GrowthFn::CeilLog2 => Some(ceil_log2(q)),
            GrowthFn::CeilSqrt => Some(ceil_sqrt(q)),
            GrowthFn::Table { values, .. } => {
                let i = q.to_usize()?;
                (1..=values.len()).contains(&i).then(|| BigUint::from(values[i - 1]))
            }
        }
    }

    /// `f*(q) = inf{f(q') : q' >= q}`, taken over the table horizon for
    /// tables. The named forms are nondecreasing, so `f* = f`.
    pub fn star(&self, q: &BigUint) -> Option<BigUint> {
        match self {
            GrowthFn::Table { star, .. } => {
                let i = q.to_usize()?;
                (1..=star.len()).contains(&i).then(|| BigUint::from(star[i - 1]))
            }
            _ => self.eval(q),
        }
    }

    /// A lower bound for `f*(q)` valid for every `q` when `f` is
    /// nondecreasing past the table: exact inside the horizon, `f*(K)` beyond.
    pub fn star_floor(&self, q: &BigUint) -> BigUint {
        match self {
            GrowthFn::Table { star, .. } => self
                .star(q)
                .unwrap_or_else(|| BigUint::from(*star.last().expect("nonempty"))),
            _ => self.eval(q).expect("closed forms are total"),
        }
    }

    /// Smallest `x >= 1` with `f*(x) > y`.
    pub fn min_arg_exceeding(&self, y: &BigUint) -> Result<BigUint> {
        match self {
            GrowthFn::Identity => Ok(y + 1u32),
            GrowthFn::CeilSqrt => Ok(y * y + 1u32),
            GrowthFn::CeilLog2 => {
                let e = y
                    .to_u64()
                    .filter(|&e| e <= MAX_LOG_EXPONENT)
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "ceil-log2 inverse at {y} needs more than 2^{MAX_LOG_EXPONENT}"
                        ))
                    })?;
                Ok((BigUint::one() << e) + 1u32)
            }
            GrowthFn::Table { star, .. } => star
                .iter()
                .position(|&v| BigUint::from(v) > *y)
                .map(|i| BigUint::from(i + 1))
                .ok_or_else(|| {
                    Error::TableExhausted(format!(
                        "no q <= {} with f*(q) > {y}",
                        star.len()
                    ))
                }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn closed_forms() {
        assert_eq!(ceil_log2(&b(1)), b(0));
        assert_eq!(ceil_log2(&b(2)), b(1));
        assert_eq!(ceil_log2(&b(5)), b(3));
        assert_eq!(ceil_log2(&b(8)), b(3));
        assert_eq!(ceil_sqrt(&b(16)), b(4));
        assert_eq!(ceil_sqrt(&b(17)), b(5));
    }

    #[test]
    fn inverses_are_minimal() {
        for f in [GrowthFn::Identity, GrowthFn::CeilLog2, GrowthFn::CeilSqrt] {
            for y in 0..20u64 {
                let x = f.min_arg_exceeding(&b(y)).unwrap();
                assert!(f.star(&x).unwrap() > b(y), "{f:?} {y}");
                if x > b(1) {
                    assert!(f.star(&(&x - 1u32)).unwrap() <= b(y), "{f:?} {y}");
                }
            }
        }
    }

    #[test]
    fn table_running_minimum() {
        let f = GrowthFn::table(vec![1, 5, 3, 4, 9]).unwrap();
        assert_eq!(f.star(&b(2)), Some(b(3)));
        assert_eq!(f.star(&b(5)), Some(b(9)));
        assert_eq!(f.star(&b(6)), None);
        assert_eq!(f.star_floor(&b(100)), b(9));
        assert_eq!(f.min_arg_exceeding(&b(3)).unwrap(), b(4));
        assert!(matches!(
            f.min_arg_exceeding(&b(9)),
            Err(Error::TableExhausted(_))
        ));
    }

    #[test]
    fn file_forms() {
        let f: GrowthFile = serde_json::from_str(r#"{"values": [1, 2, 3]}"#).unwrap();
        assert!(matches!(GrowthFn::from_file(f).unwrap(), GrowthFn::Table { .. }));
        let f: GrowthFile = serde_json::from_str(r#"{"named": "ceil-sqrt"}"#).unwrap();
        assert_eq!(GrowthFn::from_file(f).unwrap(), GrowthFn::CeilSqrt);
    }
}
