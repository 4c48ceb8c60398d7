//! Closed-form bounds on `f_k(n)`, the least number of edges in an
//! `n`-vertex `k`-critical graph. All arithmetic is exact.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("{what} is undefined for k={k}, n={n}: requires {domain}")]
    Domain {
        what: &'static str,
        k: i64,
        n: i64,
        domain: &'static str,
    },
}

fn domain(what: &'static str, k: i64, n: i64, domain: &'static str) -> BoundsError {
    BoundsError::Domain { what, k, n, domain }
}

/// `F(k, n) = ceil(((k+1)(k-2)n - k(k-3)) / (2(k-1)))`, the sparsity bound
/// for `k`-critical graphs.
pub fn sparsity_bound(k: i64, n: i64) -> Result<i64, BoundsError> {
    if k < 4 || n < k || n == k + 1 {
        return Err(domain("F", k, n, "k >= 4, n >= k, n != k+1"));
    }
    let num = (k + 1) * (k - 2) * n - k * (k - 3);
    Ok(Integer::div_ceil(&num, &(2 * (k - 1))))
}

/// `ceil((5n - 2) / 3)`: the `k = 4` case of [`sparsity_bound`], defined for every `n >= 1`.
pub fn four_critical_bound(n: i64) -> i64 {
    Integer::div_ceil(&(5 * n - 2), &3)
}

/// Exact `f_k(n)` for `k + 2 <= n <= 2k - 1`: `((k-1)n + (n-k)(2k-n))/2 - 1`.
pub fn gallai_exact(k: i64, n: i64) -> Result<i64, BoundsError> {
    if k < 4 || n < k + 2 || n > 2 * k - 1 {
        return Err(domain("gallai_exact", k, n, "k >= 4, k+2 <= n <= 2k-1"));
    }
    let twice = (k - 1) * n + (n - k) * (2 * k - n);
    debug_assert!(twice % 2 == 0);
    Ok(twice / 2 - 1)
}

/// `(k-1)n/2 + (k-3)/2`.
pub fn dirac_lower(k: i64, n: i64) -> Result<Rational, BoundsError> {
    if k < 4 || n < k + 2 {
        return Err(domain("dirac_lower", k, n, "k >= 4, n >= k+2"));
    }
    Ok(Rational::new((k - 1) * n + k - 3, 2))
}

/// `(k-1)n/2 + (k-3)n / (2(k^2-3))`.
pub fn gallai_lower(k: i64, n: i64) -> Result<Rational, BoundsError> {
    if k < 4 || n < k + 2 {
        return Err(domain("gallai_lower", k, n, "k >= 4, n >= k+2"));
    }
    Ok(Rational::new((k - 1) * n, 2) + Rational::new((k - 3) * n, 2 * (k * k - 3)))
}

/// Minimum-degree bound `(k-1)n/2`.
pub fn trivial_lower(k: i64, n: i64) -> Rational {
    Rational::new((k - 1) * n, 2)
}

/// Upper bound on `lim f_k(n)/n`: `k/2 - 1/(k-1)`.
pub fn phi_k(k: i64) -> Rational {
    Rational::new(k, 2) - Rational::new(1, k - 1)
}

/// Per-step edge growth of the Hajós/Ore composition: `(k-2)(k+1)/2` edges
/// for `k-1` new vertices.
pub fn ore_increment(k: i64) -> Rational {
    Rational::new((k - 2) * (k + 1), 2)
}

pub fn ceil(r: Rational) -> i64 {
    r.ceil().to_integer()
}

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(*r))
}

pub(crate) fn ser_opt_rational<S: Serializer>(
    r: &Option<Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_rational(r, s),
        None => s.serialize_none(),
    }
}

/// `"7/2"`, or `"3"` for integers.
pub fn format_rational(r: Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Every formula evaluated at one `(k, n)`; undefined entries are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRecord {
    pub k: i64,
    pub n: i64,
    #[serde(serialize_with = "ser_opt_rational")]
    pub dirac: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub gallai_lower: Option<Rational>,
    #[serde(rename = "F")]
    pub sparsity: Option<i64>,
    pub gallai_exact: Option<i64>,
    #[serde(serialize_with = "ser_rational")]
    pub trivial: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub phi_k: Rational,
}

impl BoundsRecord {
    pub fn new(k: i64, n: i64) -> Result<Self, BoundsError> {
        if k < 4 || n < 1 {
            return Err(domain("bounds record", k, n, "k >= 4, n >= 1"));
        }
        Ok(BoundsRecord {
            k,
            n,
            dirac: dirac_lower(k, n).ok(),
            gallai_lower: gallai_lower(k, n).ok(),
            sparsity: sparsity_bound(k, n).ok(),
            gallai_exact: gallai_exact(k, n).ok(),
            trivial: trivial_lower(k, n),
            phi_k: phi_k(k),
        })
    }
}
