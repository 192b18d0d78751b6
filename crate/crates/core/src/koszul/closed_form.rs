//! Closed formulas for Betti numbers, used as oracles against the engine.

use super::EngineError;

/// `C(n, k)`, zero when `k < 0` or `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `κ_{p,1}` at the end of the first row, for `3 <= a <= b` and `p >= ab+a-1`:
/// `p·C((a+1)b, p+1)`, plus `p` when `p = ab+a-1`.
pub fn closed_form_first_row(a: u32, b: u32, p: u32) -> Result<u128, EngineError> {
    if a < 3 || a > b {
        return Err(EngineError::InvalidParameters(format!("need 3 <= a <= b, got a={a}, b={b}")));
    }
    let start = a * b + a - 1;
    if p < start {
        return Err(EngineError::OutOfTheoremRange { p, min_p: start });
    }
    let base = p as u128 * binomial(((a + 1) * b) as i64, p as i64 + 1);
    Ok(if p == start { base + p as u128 } else { base })
}

/// The full Betti table of the `a = 2` Segre surfaces:
/// `κ_{p,2} = max(p-2b-1, 0)·C(3b, p)` and
/// `κ_{p,1} = κ_{p-1,2} + p·C(3b+2, p+1) - 4b·C(3b, p-1)`.
pub fn closed_form_a2(b: u32, p: u32, q: u32) -> Result<u128, EngineError> {
    if b < 2 {
        return Err(EngineError::InvalidParameters(format!("need b >= 2, got b={b}")));
    }
    let (b, p) = (b as i128, p as i128);
    let k2 = |p: i128| (p - 2 * b - 1).max(0) * binomial(3 * b as i64, p as i64) as i128;
    let value = match q {
        1 => {
            k2(p - 1) + p * binomial((3 * b + 2) as i64, (p + 1) as i64) as i128
                - 4 * b * binomial((3 * b) as i64, (p - 1) as i64) as i128
        }
        2 => k2(p),
        _ => 0,
    };
    if value < 0 {
        return Err(EngineError::InvalidParameters(format!("formula is negative at b={b}, p={p}, q={q}")));
    }
    Ok(value as u128)
}
