//! Exact coefficient fields.
//!
//! Every matrix in this crate has integer entries; a [`Field`] decides how
//! those integers are interpreted when ranks and kernels are computed.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LinalgError;

/// Default modulus, the usual characteristic-zero proxy in computer algebra.
pub const DEFAULT_PRIME: u32 = 32003;

pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, x: &Self::Elem) -> Self::Elem;

    /// Short name used in reports and cache keys, e.g. `gf32003`.
    fn descriptor(&self) -> String;

    /// `dst[i] -= factor * src[i]` over the common length.
    fn sub_scaled(&self, dst: &mut [Self::Elem], factor: &Self::Elem, src: &[Self::Elem]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.sub(d, &self.mul(factor, s));
            }
        }
    }

    /// Rank of a dense list of equal-length vectors.
    ///
    /// Pivots are chosen deterministically: vectors are processed in order
    /// and each surviving vector pivots on its first nonzero coordinate.
    fn dense_rank(&self, vectors: Vec<Vec<Self::Elem>>) -> usize {
        generic_dense_rank(self, vectors)
    }
}

pub(crate) fn generic_dense_rank<F: Field>(field: &F, vectors: Vec<Vec<F::Elem>>) -> usize {
    let len = vectors.first().map_or(0, Vec::len);
    let mut pivots: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    for mut v in vectors {
        if pivots.len() == len {
            break;
        }
        for (col, p) in &pivots {
            if !field.is_zero(&v[*col]) {
                let f = v[*col].clone();
                field.sub_scaled(&mut v[*col..], &f, &p[*col..]);
            }
        }
        if let Some(col) = v.iter().position(|x| !field.is_zero(x)) {
            let inv = field.inv(&v[col]);
            for x in v[col..].iter_mut() {
                *x = field.mul(x, &inv);
            }
            pivots.push((col, v));
        }
    }
    pivots.len()
}

/// The prime field GF(q) for an odd prime q < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u32,
}

impl PrimeField {
    pub fn new(modulus: u32) -> Result<Self, LinalgError> {
        if modulus < 3 || modulus.is_multiple_of(2) || modulus >= (1 << 31) || !is_prime(modulus) {
            return Err(LinalgError::InvalidModulus(modulus));
        }
        Ok(Self { modulus })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    fn reduce(&self, v: u64) -> u32 {
        (v % self.modulus as u64) as u32
    }

    fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.reduce(acc as u64 * base as u64);
            }
            base = self.reduce(base as u64 * base as u64);
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { modulus: DEFAULT_PRIME }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.modulus as i64) as u32
    }
    fn is_zero(&self, x: &u32) -> bool {
        *x == 0
    }
    fn add(&self, x: &u32, y: &u32) -> u32 {
        self.reduce(*x as u64 + *y as u64)
    }
    fn sub(&self, x: &u32, y: &u32) -> u32 {
        self.reduce(*x as u64 + (self.modulus - *y) as u64)
    }
    fn mul(&self, x: &u32, y: &u32) -> u32 {
        self.reduce(*x as u64 * *y as u64)
    }
    fn neg(&self, x: &u32) -> u32 {
        if *x == 0 {
            0
        } else {
            self.modulus - *x
        }
    }
    fn inv(&self, x: &u32) -> u32 {
        assert!(*x != 0, "inverse of zero in GF({})", self.modulus);
        self.pow(*x, self.modulus - 2)
    }
    fn descriptor(&self) -> String {
        format!("gf{}", self.modulus)
    }

    fn dense_rank(&self, vectors: Vec<Vec<u32>>) -> usize {
        prime_dense_rank(self.modulus, vectors)
    }
}

/// Incremental echelon form with delayed modular reduction.
///
/// Working rows are kept as `u64` and only reduced when an entry is read
/// as a multiplier or when the accumulation budget runs out.
fn prime_dense_rank(modulus: u32, vectors: Vec<Vec<u32>>) -> usize {
    let len = vectors.first().map_or(0, Vec::len);
    if len == 0 {
        return 0;
    }
    let q = modulus as u64;
    let max_term = (q - 1) * (q - 1);
    // number of products that can be added to a reduced entry without overflow
    let budget = ((u64::MAX - q) / max_term).max(1);

    let mut pivots: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut work = vec![0u64; len];
    for v in vectors {
        if pivots.len() == len {
            break;
        }
        for (w, x) in work.iter_mut().zip(&v) {
            *w = *x as u64;
        }
        let mut pending = 0u64;
        for (col, p) in &pivots {
            let f = work[*col] % q;
            if f == 0 {
                work[*col] = 0;
                continue;
            }
            if pending >= budget {
                for w in work.iter_mut() {
                    *w %= q;
                }
                pending = 0;
            }
            let g = q - f;
            for (w, s) in work[*col..].iter_mut().zip(&p[*col..]) {
                *w += g * (*s as u64);
            }
            pending += 1;
        }
        let lead = work.iter_mut().enumerate().find_map(|(i, w)| {
            *w %= q;
            (*w != 0).then_some(i)
        });
        if let Some(col) = lead {
            let inv = PrimeField { modulus }.inv(&((work[col]) as u32)) as u64;
            let mut row = vec![0u32; len];
            for (r, w) in row[col..].iter_mut().zip(&work[col..]) {
                *r = ((w % q) * inv % q) as u32;
            }
            pivots.push((col, row));
        }
    }
    pivots.len()
}

/// The rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }
    fn inv(&self, x: &BigRational) -> BigRational {
        assert!(!x.is_zero(), "inverse of zero rational");
        x.recip()
    }
    fn descriptor(&self) -> String {
        "rational".to_string()
    }
}

/// Run-time choice of coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Prime(PrimeField),
    Rational,
}

impl Default for FieldChoice {
    fn default() -> Self {
        FieldChoice::Prime(PrimeField::default())
    }
}

impl FieldChoice {
    pub fn descriptor(&self) -> String {
        match self {
            FieldChoice::Prime(f) => f.descriptor(),
            FieldChoice::Rational => Rationals.descriptor(),
        }
    }

    /// Parses `rational`, `gf<q>` or a bare prime `q`.
    pub fn parse(s: &str) -> Result<Self, LinalgError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("rational") || s.eq_ignore_ascii_case("q") {
            return Ok(FieldChoice::Rational);
        }
        let digits = s.strip_prefix("gf").unwrap_or(s);
        let q: u32 = digits
            .parse()
            .map_err(|_| LinalgError::UnknownField(s.to_string()))?;
        Ok(FieldChoice::Prime(PrimeField::new(q)?))
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// Evaluates `$body` with `$f` bound to the concrete field of `$choice`.
#[macro_export]
macro_rules! with_field {
    ($choice:expr, |$f:ident| $body:expr) => {
        match $choice {
            $crate::linalg::FieldChoice::Prime(prime) => {
                let $f = prime;
                $body
            }
            $crate::linalg::FieldChoice::Rational => {
                let $f = $crate::linalg::Rationals;
                $body
            }
        }
    };
}

/// Exact value of a rational as `num/den` text.
pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_validation() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(2_147_483_659).is_err());
        assert!(PrimeField::new(2_147_483_629).is_ok());
    }

    #[test]
    fn canonical_representatives() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_int(-1), 6);
        assert_eq!(f.from_int(15), 1);
        assert_eq!(f.mul(&f.inv(&3), &3), 1);
        assert_eq!(f.sub(&2, &5), 4);
    }

    #[test]
    fn parse_choices() {
        assert_eq!(FieldChoice::parse("rational").unwrap(), FieldChoice::Rational);
        assert_eq!(FieldChoice::parse("gf101").unwrap().descriptor(), "gf101");
        assert_eq!(FieldChoice::parse("32003").unwrap(), FieldChoice::default());
        assert!(FieldChoice::parse("gf100").is_err());
        assert!(FieldChoice::parse("reals").is_err());
    }

    #[test]
    fn large_modulus_lazy_reduction() {
        // 3x3 matrix with rank 2 over a modulus near 2^31
        let f = PrimeField::new(2_147_483_629).unwrap();
        let m = f.modulus() as i64;
        let rows = vec![
            vec![f.from_int(m - 1), f.from_int(2), f.from_int(3)],
            vec![f.from_int(2), f.from_int(m - 4), f.from_int(m - 6)],
            vec![f.from_int(1), f.from_int(1), f.from_int(1)],
        ];
        assert_eq!(f.dense_rank(rows.clone()), 2);
        assert_eq!(generic_dense_rank(&f, rows), 2);
    }
}
