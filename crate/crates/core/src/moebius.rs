//! Möbius function, characteristic polynomial and the closed-form products
//! they are compared against. All arithmetic is arbitrary precision.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poset::{PosetError, RankedPoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoebiusError {
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error(transparent)]
    NotGraded(#[from] PosetError),
    #[error("(n, |G|, |S|) = (1, 1, 0) gives the empty proper part")]
    DegenerateCase,
    #[error("n must be at least 1 and |G| at least 1")]
    BadParameters,
}

/// Dense integer polynomial, `coeffs[i]` multiplies `t^i`. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// `t - a`.
    pub fn linear_root(a: BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let show_coeff = !abs.is_one() || d == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{d}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Möbius values `μ(x, ·)` computed one row at a time and cached.
///
/// Row `x` is indexed by element; entries outside the up-set of `x` are zero.
pub struct MoebiusTable<'a> {
    poset: &'a RankedPoset,
    rows: Mutex<HashMap<usize, Arc<Vec<BigInt>>>>,
}

impl<'a> MoebiusTable<'a> {
    pub fn new(poset: &'a RankedPoset) -> Self {
        Self {
            poset,
            rows: Mutex::new(HashMap::new()),
        }
    }

    pub fn row(&self, x: usize) -> Arc<Vec<BigInt>> {
        if let Some(r) = self.rows.lock().unwrap().get(&x) {
            return r.clone();
        }
        let row = Arc::new(compute_row(self.poset, x));
        self.rows.lock().unwrap().insert(x, row.clone());
        row
    }

    pub fn value(&self, x: usize, y: usize) -> Result<BigInt, MoebiusError> {
        if x >= self.poset.len() || y >= self.poset.len() {
            return Err(PosetError::OutOfRange(x.max(y)).into());
        }
        if !self.poset.leq(x, y) {
            return Err(MoebiusError::NotComparable(x, y));
        }
        Ok(self.row(x)[y].clone())
    }
}

fn compute_row(poset: &RankedPoset, x: usize) -> Vec<BigInt> {
    let up = &poset.above()[x];
    let mut members: Vec<usize> = up.ones().collect();
    members.sort_by_key(|&z| (poset.rank_of(z), z));
    let mut row = vec![BigInt::zero(); poset.len()];
    row[x] = BigInt::one();
    for &z in &members[1..] {
        let mut between = poset.below()[z].clone();
        between.intersect_with(up);
        let s: BigInt = between.ones().filter(|&w| w != z).map(|w| &row[w]).sum();
        row[z] = -s;
    }
    row
}

pub fn moebius(poset: &RankedPoset, x: usize, y: usize) -> Result<BigInt, MoebiusError> {
    MoebiusTable::new(poset).value(x, y)
}

/// `Σ_x μ(0̂, x) t^(rk P - rk x)` over all elements of a graded poset.
pub fn characteristic_polynomial(poset: &RankedPoset) -> Result<Polynomial, MoebiusError> {
    poset.check_graded()?;
    let top_rank = poset.rank();
    let row = compute_row(poset, poset.bottom());
    let mut coeffs = vec![BigInt::zero(); top_rank + 1];
    for (x, m) in row.iter().enumerate() {
        coeffs[top_rank - poset.rank_of(x)] += m;
    }
    Ok(Polynomial::new(coeffs))
}

/// Closed form of the characteristic polynomial of `D_n(G,S)`:
/// `∏_{i=0}^{n-1} (t - |S| - |G| i)` for `|S| > 0`, `∏_{i=1}^{n-1} (t - |G| i)` otherwise.
pub fn closed_form_charpoly(n: usize, group_order: usize, set_size: usize) -> Polynomial {
    let start = usize::from(set_size == 0);
    (start..n).fold(Polynomial::one(), |p, i| {
        p.mul(&Polynomial::linear_root(BigInt::from(set_size + group_order * i)))
    })
}

/// `(-1)^ε ∏_{i=0}^{n-1} (|S| - 1 + |G| i)` with `ε = 1` iff `|S| = 0`, without
/// excluding any parameters.
pub fn sphere_count_product(n: usize, group_order: usize, set_size: usize) -> BigInt {
    let s = BigInt::from(set_size) - 1;
    let p: BigInt = (0..n)
        .map(|i| &s + BigInt::from(group_order * i))
        .product();
    if set_size == 0 {
        -p
    } else {
        p
    }
}

/// Number of spheres in the wedge for the proper part of `D̂_n(G,S)`.
pub fn sphere_count_formula(
    n: usize,
    group_order: usize,
    set_size: usize,
) -> Result<BigInt, MoebiusError> {
    if n == 0 || group_order == 0 {
        return Err(MoebiusError::BadParameters);
    }
    if (n, group_order, set_size) == (1, 1, 0) {
        return Err(MoebiusError::DegenerateCase);
    }
    Ok(sphere_count_product(n, group_order, set_size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::tests::{boolean2, chain};

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::new(c.iter().map(|&v| bi(v)).collect())
    }

    #[test]
    fn moebius_of_chain_and_boolean_lattice() {
        let c = chain(3);
        assert_eq!(moebius(&c, 0, 0).unwrap(), bi(1));
        assert_eq!(moebius(&c, 0, 1).unwrap(), bi(-1));
        assert_eq!(moebius(&c, 0, 2).unwrap(), bi(0));
        let b = boolean2();
        assert_eq!(moebius(&b, 0, 3).unwrap(), bi(1));
        assert_eq!(moebius(&b, 1, 2), Err(MoebiusError::NotComparable(1, 2)));
    }

    #[test]
    fn charpoly_of_boolean_lattice() {
        // (t - 1)^2
        assert_eq!(characteristic_polynomial(&boolean2()).unwrap(), poly(&[1, -2, 1]));
    }

    #[test]
    fn charpoly_rejects_rank_jumps() {
        let p = RankedPoset::from_parts(vec![vec![1, 2], vec![2], vec![]], vec![0, 1, 2], 0, None);
        assert!(matches!(
            characteristic_polynomial(&p),
            Err(MoebiusError::NotGraded(PosetError::NotGraded(0, 2, 2)))
        ));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_charpoly(2, 2, 1), poly(&[3, -4, 1]));
        assert_eq!(closed_form_charpoly(2, 2, 0), poly(&[-2, 1]));
        assert_eq!(closed_form_charpoly(1, 5, 4), poly(&[-4, 1]));
        assert_eq!(closed_form_charpoly(1, 1, 0), Polynomial::one());
        assert_eq!(sphere_count_formula(3, 2, 2).unwrap(), bi(15));
        assert_eq!(sphere_count_formula(2, 2, 2).unwrap(), bi(3));
        assert_eq!(sphere_count_formula(4, 3, 1).unwrap(), bi(0));
        assert_eq!(sphere_count_formula(2, 2, 0).unwrap(), bi(1));
        assert_eq!(sphere_count_formula(1, 1, 0), Err(MoebiusError::DegenerateCase));
        assert_eq!(sphere_count_product(1, 1, 0), bi(1));
    }

    #[test]
    fn polynomial_display_and_eval() {
        let p = poly(&[3, -4, 1]);
        assert_eq!(p.to_string(), "t^2 - 4t + 3");
        assert_eq!(p.eval(&bi(1)), bi(0));
        assert_eq!(poly(&[-2, 1]).to_string(), "t - 2");
        assert_eq!(Polynomial::default().to_string(), "0");
        assert_eq!(poly(&[0, 0, -1]).to_string(), "-t^2");
    }
}
