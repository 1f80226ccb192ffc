//! Exact arithmetic in the real field ℚ(√2,√3,√5) and exact linear algebra
//! over it. The field is stored as an 8-dimensional ℚ-algebra with basis
//! {1, √2, √3, √5, √6, √10, √15, √30}; since the square-free radicals are
//! linearly independent over ℚ, equality of values is equality of the eight
//! coordinates. This is enough for the geometric representation of any
//! Coxeter matrix with labels in {1,2,3,4,5,6,∞}.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Make a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Make a rational from a fraction; panics on zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Sign of a real value, decided exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Basis index is a bitmask over the primes {2, 3, 5}:
/// bit 0 ↔ 2, bit 1 ↔ 3, bit 2 ↔ 5, so index m represents √(radical(m)).
const BASIS_DIM: usize = 8;

fn radical(mask: usize) -> u32 {
    let mut r = 1;
    if mask & 1 != 0 {
        r *= 2;
    }
    if mask & 2 != 0 {
        r *= 3;
    }
    if mask & 4 != 0 {
        r *= 5;
    }
    r
}

/// An element of ℚ(√2,√3,√5) in canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    coords: [Rational; 8],
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            coords: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut s = Self::zero();
        s.coords[0] = q;
        s
    }

    /// q·√(radical(mask)); mask 0 is the rational component.
    pub fn radical_term(q: Rational, mask: usize) -> Self {
        assert!(mask < BASIS_DIM);
        let mut s = Self::zero();
        s.coords[mask] = q;
        s
    }

    pub fn sqrt2() -> Self {
        Self::radical_term(rat(1), 1)
    }

    pub fn sqrt3() -> Self {
        Self::radical_term(rat(1), 2)
    }

    pub fn sqrt5() -> Self {
        Self::radical_term(rat(1), 4)
    }

    pub fn coords(&self) -> &[Rational; 8] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True when the value lies in ℚ (all radical coordinates vanish).
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.coords[0]
    }

    fn conjugate_flip(&self, prime_bit: usize) -> Self {
        let mut out = self.clone();
        for (m, c) in out.coords.iter_mut().enumerate() {
            if m & prime_bit != 0 {
                *c = -c.clone();
            }
        }
        out
    }

    /// Multiplicative inverse via the tower of conjugates: multiplying by the
    /// three flipped conjugates pushes the value down to ℚ.
    pub fn inverse(&self) -> crate::Result<Self> {
        if self.is_zero() {
            return Err(crate::Error::DivisionByZero);
        }
        let c2 = self.conjugate_flip(1);
        let p = self * &c2;
        let c3 = p.conjugate_flip(2);
        let q = &p * &c3;
        let c5 = q.conjugate_flip(4);
        let r = &q * &c5;
        debug_assert!(r.is_rational() && !r.coords[0].is_zero());
        let scale = Rational::one() / r.coords[0].clone();
        let mut inv = &c2 * &(&c3 * &c5);
        for c in inv.coords.iter_mut() {
            *c = c.clone() * scale.clone();
        }
        Ok(inv)
    }

    pub fn div(&self, rhs: &QScalar) -> crate::Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Exact sign. Zero is decided by the canonical form; nonzero values are
    /// decided by dyadic interval arithmetic with doubling precision, which
    /// terminates because a nonzero value eventually separates from 0.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let mut bits: u32 = 32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "sign determination runaway");
        }
    }

    /// Rational interval [lo, hi] containing the value, with √r enclosed to
    /// `bits` binary digits.
    fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        let denom = BigInt::one() << bits;
        for (m, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if m == 0 {
                lo += c;
                hi += c;
                continue;
            }
            let n = BigInt::from(radical(m)) << (2 * bits);
            let s = n.sqrt();
            let rlo = Rational::new(s.clone(), denom.clone());
            let rhi = Rational::new(s + BigInt::one(), denom.clone());
            if c.is_positive() {
                lo += c * rlo;
                hi += c * rhi;
            } else {
                lo += c * rhi;
                hi += c * rlo;
            }
        }
        (lo, hi)
    }

    /// Floating approximation; used only as a sanity cross-check, never for
    /// decisions.
    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0;
        for (m, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let f = to_f64_rational(c);
            acc += f * (radical(m) as f64).sqrt();
        }
        acc
    }
}

fn to_f64_rational(q: &Rational) -> f64 {
    // Good enough for the sanity property; exact paths never use this.
    let n = q.numer();
    let d = q.denom();
    str_to_f64(n) / str_to_f64(d)
}

fn str_to_f64(n: &BigInt) -> f64 {
    n.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*sqrt{}", radical(m))?;
            }
        }
        Ok(())
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(rhs.coords.iter()) {
            *a = a.clone() + b;
        }
        out
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(rhs.coords.iter()) {
            *a = a.clone() - b;
        }
        out
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        let mut out = self.clone();
        for a in out.coords.iter_mut() {
            *a = -a.clone();
        }
        out
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        let mut out = QScalar::zero();
        for (a, ca) in self.coords.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in rhs.coords.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                // √(r_a)·√(r_b) = radical(a∧b) · √(radical(a⊻b))
                let common = radical(a & b);
                let target = a ^ b;
                out.coords[target] += ca * cb * rat(common as i64);
            }
        }
        out
    }
}

/// Square matrix over ℚ(√2,√3,√5), row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    dim: usize,
    entries: Vec<QScalar>,
}

impl QMatrix {
    pub fn zero(dim: usize) -> Self {
        QMatrix {
            dim,
            entries: vec![QScalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = QScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<QScalar>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        QMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &QScalar {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: QScalar) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity(self.dim)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &QMatrix) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    out.set(i, j, &cur + &(a * b));
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &QMatrix) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(rhs.entries.iter()) {
            *a = &*a - b;
        }
        out
    }

    pub fn apply(&self, v: &[QScalar]) -> Vec<QScalar> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let mut acc = QScalar::zero();
                for (j, x) in v.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    acc = &acc + &(self.at(i, j) * x);
                }
                acc
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> QScalar {
        let (_, _, det) = bareiss_echelon(self.clone());
        det
    }

    /// Leading principal minors det(M[..k][..k]) for k = 1..=dim.
    pub fn leading_principal_minors(&self) -> Vec<QScalar> {
        (1..=self.dim)
            .map(|k| self.principal_submatrix(&(0..k).collect::<Vec<_>>()).det())
            .collect()
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> QMatrix {
        let k = idx.len();
        let mut out = QMatrix::zero(k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.at(i, j).clone());
            }
        }
        out
    }

    /// Exact basis of the kernel of (M − I): the linear core of the fixed
    /// locus of M.
    pub fn fixed_space(&self) -> Vec<Vec<QScalar>> {
        let a = self.sub(&QMatrix::identity(self.dim));
        kernel_basis(&a)
    }

    /// Rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (_, pivots, _) = bareiss_echelon(self.clone());
        pivots.len()
    }

    /// Coefficients of the characteristic polynomial, highest degree first
    /// (monic): [1, c₁, …, cₙ] with χ(λ) = λⁿ + c₁λⁿ⁻¹ + … + cₙ.
    pub fn char_poly(&self) -> Vec<QScalar> {
        // Faddeev–LeVerrier; exact since the field has characteristic zero.
        let n = self.dim;
        let mut coeffs = vec![QScalar::one()];
        let mut m = QMatrix::identity(n);
        for k in 1..=n {
            let p = self.mul(&m);
            let mut tr = QScalar::zero();
            for i in 0..n {
                tr = &tr + p.at(i, i);
            }
            let ck = &(-&tr) * &QScalar::from_rational(ratio(1, k as i64));
            m = p;
            for i in 0..n {
                let cur = m.at(i, i).clone();
                m.set(i, i, &cur + &ck);
            }
            coeffs.push(ck);
        }
        coeffs
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            write!(f, "[")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Fraction-free row echelon form. Returns the echelon matrix, the pivot
/// columns, and the determinant (zero when rank-deficient, sign-correct).
fn bareiss_echelon(mut m: QMatrix) -> (QMatrix, Vec<usize>, QScalar) {
    let n = m.dim;
    let mut prev = QScalar::one();
    let mut pivots = Vec::new();
    let mut row = 0;
    let mut sign = 1i64;
    for col in 0..n {
        // find a pivot in this column at or below `row`
        let Some(p) = (row..n).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..n {
                let a = m.at(row, j).clone();
                let b = m.at(p, j).clone();
                m.set(row, j, b);
                m.set(p, j, a);
            }
            sign = -sign;
        }
        let pivot = m.at(row, col).clone();
        for r in row + 1..n {
            for j in 0..n {
                if j == col {
                    continue;
                }
                let v = &(&pivot * m.at(r, j)) - &(m.at(r, col) * m.at(row, j));
                let v = v.div(&prev).expect("Bareiss divisor is nonzero");
                m.set(r, j, v);
            }
            m.set(r, col, QScalar::zero());
        }
        prev = pivot;
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let det = if pivots.len() == n {
        let last = m.at(n - 1, *pivots.last().unwrap()).clone();
        if sign < 0 {
            -&last
        } else {
            last
        }
    } else {
        QScalar::zero()
    };
    (m, pivots, det)
}

/// Exact kernel basis of a square matrix: one vector per free column.
pub fn kernel_basis(a: &QMatrix) -> Vec<Vec<QScalar>> {
    let n = a.dim();
    let (ech, pivots, _) = bareiss_echelon(a.clone());
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![QScalar::zero(); n];
        v[fc] = QScalar::one();
        // back-substitute pivot rows from the bottom
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = QScalar::zero();
            for j in pc + 1..n {
                if v[j].is_zero() {
                    continue;
                }
                acc = &acc + &(ech.at(r, j) * &v[j]);
            }
            v[pc] = (-&acc)
                .div(ech.at(r, pc))
                .expect("pivot is nonzero");
        }
        basis.push(v);
    }
    basis
}
