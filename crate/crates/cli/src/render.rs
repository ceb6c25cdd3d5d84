use ditcalc::{Partition, Rational};

/// Float with 12 significant digits, trailing zeros trimmed.
pub fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// `3/4 (0.75)`
pub fn exact(r: Rational) -> String {
    if r.denom() == 1 {
        r.to_string()
    } else {
        format!("{r} ({})", sig(r.to_f64()))
    }
}

pub fn blocks(p: &Partition) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(2.0), "2");
        assert_eq!(sig(0.75), "0.75");
        assert_eq!(sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig(123456.789), "123456.789");
        assert_eq!(sig(-1e-17), "-0.00000000000000001");
        assert_eq!(sig(0.0), "0");
        assert_eq!(exact(Rational::new(3, 4)), "3/4 (0.75)");
        assert_eq!(exact(Rational::ZERO), "0");
    }
}
