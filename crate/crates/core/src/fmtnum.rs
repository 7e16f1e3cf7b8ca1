//! Locale-independent significant-digit formatting for CSV emission.

/// Format `x` with `sig` significant digits, positional notation for
/// moderate magnitudes and scientific for very small or very large values.
/// Always uses `.` as the decimal separator.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mant, exp) = sci.split_once('e').expect("scientific form");
    let p: i32 = exp.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    if !(-4..=12).contains(&p) {
        let m = trim_fraction(&insert_point(&digits, 1));
        return format!("{}{m}e{p}", if neg { "-" } else { "" });
    }
    let body = if p >= 0 {
        let int_len = (p + 1) as usize;
        if int_len >= digits.len() {
            let mut s = digits.clone();
            s.push_str(&"0".repeat(int_len - digits.len()));
            s
        } else {
            trim_fraction(&insert_point(&digits, int_len))
        }
    } else {
        let mut s = String::from("0.");
        s.push_str(&"0".repeat((-p - 1) as usize));
        s.push_str(&digits);
        trim_fraction(&s)
    };
    format!("{}{body}", if neg { "-" } else { "" })
}

fn insert_point(digits: &str, int_len: usize) -> String {
    format!("{}.{}", &digits[..int_len], &digits[int_len..])
}

fn trim_fraction(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Join already-formatted fields into one CSV record.
pub fn csv_row<S: AsRef<str>>(fields: &[S]) -> String {
    fields.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(",")
}
