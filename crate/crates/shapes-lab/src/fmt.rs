/// Fixed 12-significant-digit formatting shared by every text output.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            format!("{x}")
        };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(0.45798279709123), "0.457982797091");
        assert_eq!(sig12(2.0), "2");
        assert_eq!(sig12(-1.5e-13), "-0.00000000000015");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(123456.7890123456), "123456.789012");
    }
}
