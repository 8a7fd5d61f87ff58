//! Exact non-negative rationals parsed from decimal text. Thresholds are
//! compared by cross-multiplication so that values like 0.6 never suffer
//! float rounding at the boundary.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn exceeds_one(&self) -> bool {
        self.num > self.den
    }

    pub fn div_by(&self, k: u64) -> Self {
        Ratio::new(self.num, self.den * k)
    }

    /// `ceil(self × n)` in integer arithmetic.
    pub fn ceil_mul(&self, n: u64) -> u64 {
        let p = self.num as u128 * n as u128;
        let d = self.den as u128;
        p.div_ceil(d) as u64
    }

    /// True when `a / b ≥ self`. `b` must be positive.
    pub fn le_ratio_of(&self, a: u64, b: u64) -> bool {
        a as u128 * self.den as u128 >= self.num as u128 * b as u128
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_percent_string(&self) -> String {
        let pct = self.num as f64 * 100.0 / self.den as f64;
        format!("{pct}")
    }
}

/// Parses an unsigned decimal like `15`, `0.6` or `12.5`.
pub fn parse_decimal(s: &str) -> Option<Ratio> {
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 18 {
        return None;
    }
    let den = 10u64.checked_pow(frac.len() as u32)?;
    let int_v: u64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let frac_v: u64 = if frac.is_empty() {
        0
    } else {
        frac.parse().ok()?
    };
    let num = int_v.checked_mul(den)?.checked_add(frac_v)?;
    Some(Ratio::new(num, den))
}
