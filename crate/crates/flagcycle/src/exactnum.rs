//! Exact arithmetic over the Gaussian rationals ℚ(i) and exact matrix
//! algebra.
//!
//! Every geometric predicate in this crate reduces to ranks of matrices over
//! ℚ(i), so this module is the foundation everything else certifies against.
//! All arithmetic is exact: scalars are pairs of arbitrary-precision
//! rationals, rank and determinant use fraction-free (Bareiss) elimination,
//! and no rounding can ever occur.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::Error;

/// A Gaussian rational a + b·i with arbitrary-precision rational a, b.
///
/// The parts are kept in the canonical form maintained by `BigRational`
/// itself (reduced, positive denominator), so structural equality is value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    /// The real rational numer/denom.  Panics if denom is 0.
    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(numer), BigInt::from(denom)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugate a − b·i.
    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |z|² = a² + b², a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text form: "a/b+c/di" with zero parts omitted, "/1" omitted,
/// and a unit imaginary coefficient written as bare "i".  Examples:
/// "0", "3", "-3/4", "i", "-i", "2i", "1+i", "3/4-1/2i".
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag_part(f: &mut fmt::Formatter<'_>, im: &BigRational) -> fmt::Result {
            if im.abs() == BigRational::one() {
                write!(f, "i")
            } else {
                write!(f, "{}i", im.abs())
            }
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            }
            return imag_part(f, &self.im);
        }
        write!(f, "{}", self.re)?;
        write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
        imag_part(f, &self.im)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    BigRational::from_str(s)
        .map_err(|_| Error::InvalidInput(format!("cannot parse rational from '{s}'")))
}

/// Parses the canonical form and common variants ("1i", whitespace).
impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self, Error> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty Gaussian rational".into()));
        }
        // The coefficient of i, from a token like "i", "-i", "2i", "-3/4i".
        fn parse_imag(tok: &str) -> Result<BigRational, Error> {
            let body = tok.strip_suffix('i').ok_or_else(|| {
                Error::InvalidInput(format!("imaginary part '{tok}' must end in i"))
            })?;
            match body {
                "" | "+" => Ok(BigRational::one()),
                "-" => Ok(-BigRational::one()),
                _ => parse_rational(body),
            }
        }
        // A sign past position 0 separates the real and imaginary terms;
        // rationals contain '+'/'-' only as a leading sign.
        let split = s
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx);
        match split {
            Some(idx) => {
                let re = parse_rational(&s[..idx])?;
                let im = parse_imag(&s[idx..])?;
                Ok(Self::new(re, im))
            }
            None => {
                if s.ends_with('i') {
                    Ok(Self::new(BigRational::zero(), parse_imag(&s)?))
                } else {
                    Ok(Self::new(parse_rational(&s)?, BigRational::zero()))
                }
            }
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    /// Exact division.  Panics on a zero divisor.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let n = rhs.norm_sqr();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        let c = rhs.conj();
        let p = self * &c;
        GaussianRational::new(p.re / &n, p.im / &n)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

/// Which pairing to use between column vectors: the standard symmetric
/// bilinear form b(v,w) = vᵗ·w, or the Hermitian form h(v,w) = b(v̄,w).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Bilinear,
    Hermitian,
}

/// A dense matrix over the Gaussian rationals, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    /// Builds from a list of rows (each of equal length).
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("rows of unequal length".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds from a list of column vectors (each of equal length).
    pub fn from_columns(cols: Vec<Vec<GaussianRational>>) -> Result<Self, Error> {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        if cols.iter().any(|col| col.len() != r) {
            return Err(Error::ShapeMismatch("columns of unequal length".into()));
        }
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// The submatrix of the first `k` columns.
    pub fn columns_prefix(&self, k: usize) -> ExactMatrix {
        assert!(k <= self.cols);
        let mut m = Self::zeros(self.rows, k);
        for r in 0..self.rows {
            for c in 0..k {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        m
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {}x{} beside {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(m)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.conj()).collect(),
        }
    }

    pub fn matmul(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = GaussianRational::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(r, k) * other.get(k, c));
                }
                m.set(r, c, acc);
            }
        }
        Ok(m)
    }

    /// Exact rank by fraction-free (Bareiss) elimination with full pivoting.
    ///
    /// Rows are first scaled by the lcm of their denominators — a positive
    /// integer, so the row space is untouched — which keeps every
    /// intermediate entry a Gaussian integer; Bareiss's exact divisions then
    /// bound entry growth to minor-sized values instead of compounding.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<GaussianRational>> =
            (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect()).collect();
        for row in &mut a {
            let mut l = BigInt::one();
            for e in row.iter() {
                l = l.lcm(e.re().denom());
                l = l.lcm(e.im().denom());
            }
            if !l.is_one() {
                let f = GaussianRational::from_rational(BigRational::from_integer(l));
                for e in row.iter_mut() {
                    *e = &*e * &f;
                }
            }
        }
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = GaussianRational::one();
        for step in 0..m.min(n) {
            // Full pivot search: any nonzero entry of the trailing block.
            let pivot = (step..m)
                .flat_map(|i| (step..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero());
            let Some((pi, pj)) = pivot else { break };
            a.swap(step, pi);
            if pj != step {
                for row in a.iter_mut() {
                    row.swap(step, pj);
                }
            }
            for i in step + 1..m {
                for j in step + 1..n {
                    let num = &(&a[step][step] * &a[i][j]) - &(&a[i][step] * &a[step][j]);
                    a[i][j] = &num / &prev;
                }
                a[i][step] = GaussianRational::zero();
            }
            prev = a[step][step].clone();
            rank += 1;
        }
        rank
    }

    /// Exact determinant of a square matrix by Bareiss elimination with row
    /// pivoting (the final pivot equals the determinant up to swap sign).
    pub fn det(&self) -> Result<GaussianRational, Error> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(GaussianRational::one());
        }
        let mut a: Vec<Vec<GaussianRational>> =
            (0..n).map(|r| (0..n).map(|c| self.get(r, c).clone()).collect()).collect();
        let mut sign = GaussianRational::one();
        let mut prev = GaussianRational::one();
        for step in 0..n - 1 {
            if a[step][step].is_zero() {
                let Some(pi) = (step + 1..n).find(|&i| !a[i][step].is_zero()) else {
                    return Ok(GaussianRational::zero());
                };
                a.swap(step, pi);
                sign = -sign;
            }
            for i in step + 1..n {
                for j in step + 1..n {
                    let num = &(&a[step][step] * &a[i][j]) - &(&a[i][step] * &a[step][j]);
                    a[i][j] = &num / &prev;
                }
                a[i][step] = GaussianRational::zero();
            }
            prev = a[step][step].clone();
        }
        Ok(&sign * &a[n - 1][n - 1])
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// The matrix of pairwise form values between the columns of `a` and the
/// columns of `b`: entry (i,j) is form(aᵢ, bⱼ).  Bilinear pairs aᵗ·b,
/// Hermitian pairs ā ᵗ·b.  Errors if the column vectors live in different
/// ambient dimensions.
pub fn gram(a: &ExactMatrix, b: &ExactMatrix, form: Form) -> Result<ExactMatrix, Error> {
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "gram of columns in ambient dimensions {} and {}",
            a.rows(),
            b.rows()
        )));
    }
    let left = match form {
        Form::Bilinear => a.transpose(),
        Form::Hermitian => a.conjugate().transpose(),
    };
    left.matmul(b)
}
