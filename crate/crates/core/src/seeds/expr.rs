//! Cluster variables as exchange-expression DAGs over Plücker symbols.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::{fmt_subset, Subset};

/// A cluster variable: a Plücker coordinate, or the result of one exchange
/// `(prod out + prod in) / old` built from earlier variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClusterExpression {
    Plucker(Subset),
    Exchange {
        /// Variables at the heads of arrows leaving the mutated vertex, with multiplicity.
        out_prod: Vec<(Arc<ClusterExpression>, u32)>,
        /// Variables at the tails of arrows entering the mutated vertex, with multiplicity.
        in_prod: Vec<(Arc<ClusterExpression>, u32)>,
        old: Arc<ClusterExpression>,
    },
}

impl ClusterExpression {
    pub fn plucker(set: Subset) -> Arc<ClusterExpression> {
        Arc::new(ClusterExpression::Plucker(set))
    }

    /// The Plücker index set, if this is a plain Plücker coordinate.
    pub fn as_plucker(&self) -> Option<&Subset> {
        match self {
            ClusterExpression::Plucker(s) => Some(s),
            ClusterExpression::Exchange { .. } => None,
        }
    }

    /// Exact value, given the values of the Plücker coordinates.
    ///
    /// Shared subexpressions are evaluated once. Fails with
    /// [`Error::Precondition`] when a denominator vanishes.
    pub fn evaluate<F>(&self, minor: &mut F) -> Result<BigRational>
    where
        F: FnMut(&Subset) -> BigRational,
    {
        let mut memo = HashMap::new();
        self.evaluate_memo(minor, &mut memo)
    }

    fn evaluate_memo<F>(&self, minor: &mut F, memo: &mut HashMap<*const ClusterExpression, BigRational>) -> Result<BigRational>
    where
        F: FnMut(&Subset) -> BigRational,
    {
        match self {
            ClusterExpression::Plucker(s) => Ok(minor(s)),
            ClusterExpression::Exchange { out_prod, in_prod, old } => {
                let mut product = |factors: &[(Arc<ClusterExpression>, u32)],
                                   memo: &mut HashMap<*const ClusterExpression, BigRational>|
                 -> Result<BigRational> {
                    let mut acc = BigRational::one();
                    for (e, m) in factors {
                        let value = cached(e, minor, memo)?;
                        for _ in 0..*m {
                            acc *= &value;
                        }
                    }
                    Ok(acc)
                };
                let numerator = product(out_prod, memo)? + product(in_prod, memo)?;
                let denominator = cached(old, minor, memo)?;
                if denominator.is_zero() {
                    return Err(Error::Precondition("exchange denominator vanishes at this point".into()));
                }
                Ok(numerator / denominator)
            }
        }
    }

    /// Number of exchanges in the expression, counting shared nodes once.
    pub fn exchange_count(&self) -> usize {
        fn walk(e: &ClusterExpression, seen: &mut std::collections::HashSet<*const ClusterExpression>) -> usize {
            match e {
                ClusterExpression::Plucker(_) => 0,
                ClusterExpression::Exchange { out_prod, in_prod, old } => {
                    let mut total = 1;
                    for child in out_prod.iter().chain(in_prod).map(|(c, _)| c).chain(std::iter::once(old)) {
                        if seen.insert(Arc::as_ptr(child)) {
                            total += walk(child, seen);
                        }
                    }
                    total
                }
            }
        }
        walk(self, &mut std::collections::HashSet::new())
    }

    /// JSON form: a sorted index array, or an object describing the exchange.
    pub fn to_json(&self) -> Value {
        match self {
            ClusterExpression::Plucker(s) => json!(s.iter().collect::<Vec<_>>()),
            ClusterExpression::Exchange { out_prod, in_prod, old } => {
                let factors = |list: &[(Arc<ClusterExpression>, u32)]| -> Vec<Value> {
                    list.iter().map(|(e, m)| json!({"expr": e.to_json(), "power": m})).collect()
                };
                json!({"out": factors(out_prod), "in": factors(in_prod), "old": old.to_json()})
            }
        }
    }

    /// Inverse of [`ClusterExpression::to_json`].
    pub fn from_json(value: &Value) -> Result<Arc<ClusterExpression>> {
        let bad = || Error::Parse(format!("not a cluster expression: {value}"));
        if let Some(items) = value.as_array() {
            let set = items.iter().map(|x| x.as_u64().map(|x| x as usize).ok_or_else(bad)).collect::<Result<Subset>>()?;
            return Ok(ClusterExpression::plucker(set));
        }
        let obj = value.as_object().ok_or_else(bad)?;
        let factors = |key: &str| -> Result<Vec<(Arc<ClusterExpression>, u32)>> {
            obj.get(key)
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(|f| {
                    let e = ClusterExpression::from_json(f.get("expr").ok_or_else(bad)?)?;
                    let m = f.get("power").and_then(Value::as_u64).ok_or_else(bad)? as u32;
                    Ok((e, m))
                })
                .collect()
        };
        Ok(Arc::new(ClusterExpression::Exchange {
            out_prod: factors("out")?,
            in_prod: factors("in")?,
            old: ClusterExpression::from_json(obj.get("old").ok_or_else(bad)?)?,
        }))
    }
}

fn cached<F>(e: &Arc<ClusterExpression>, minor: &mut F, memo: &mut HashMap<*const ClusterExpression, BigRational>) -> Result<BigRational>
where
    F: FnMut(&Subset) -> BigRational,
{
    let key = Arc::as_ptr(e);
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let v = e.evaluate_memo(minor, memo)?;
    memo.insert(key, v.clone());
    Ok(v)
}

impl fmt::Display for ClusterExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClusterExpression::Plucker(s) => write!(f, "D{}", fmt_subset(s)),
            ClusterExpression::Exchange { out_prod, in_prod, old } => {
                let product = |list: &[(Arc<ClusterExpression>, u32)]| -> String {
                    if list.is_empty() {
                        return "1".into();
                    }
                    list.iter().map(|(e, m)| if *m == 1 { e.to_string() } else { format!("{e}^{m}") }).collect::<Vec<_>>().join("*")
                };
                write!(f, "({} + {})/{}", product(out_prod), product(in_prod), old)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn set(s: &str) -> Subset {
        crate::parse_subset(s).unwrap()
    }

    #[test]
    fn three_term_exchange_evaluates() {
        // D13 D24 = D12 D34 + D14 D23 for the 2 x 4 matrix with columns
        // (1,0), (0,1), (1,1), (1,2).
        let cols = [(1, 0), (0, 1), (1, 1), (1, 2)];
        let mut minor = |s: &Subset| {
            let v: Vec<usize> = s.iter().copied().collect();
            let (a, b) = (cols[v[0] - 1], cols[v[1] - 1]);
            BigRational::from_integer(BigInt::from(a.0 * b.1 - a.1 * b.0))
        };
        let p = |s: &str| ClusterExpression::plucker(set(s));
        let e = ClusterExpression::Exchange {
            out_prod: vec![(p("12"), 1), (p("34"), 1)],
            in_prod: vec![(p("14"), 1), (p("23"), 1)],
            old: p("13"),
        };
        let expected = ClusterExpression::Plucker(set("24")).evaluate(&mut minor).unwrap();
        assert_eq!(e.evaluate(&mut minor).unwrap(), expected);
        assert_eq!(e.exchange_count(), 1);
        let round = ClusterExpression::from_json(&e.to_json()).unwrap();
        assert_eq!(*round, e);
        assert_eq!(e.to_string(), "(D12*D34 + D14*D23)/D13");
    }

    #[test]
    fn zero_denominator_is_reported() {
        let p = |s: &str| ClusterExpression::plucker(set(s));
        let e = ClusterExpression::Exchange { out_prod: vec![], in_prod: vec![], old: p("12") };
        let mut zero = |_: &Subset| BigRational::zero();
        assert!(e.evaluate(&mut zero).is_err());
    }
}
