//! Complex-literal parsing for CLI flags: "2.5", "i", "-i", "100i",
//! "1+11i", "1-0.6i", "1e-3i".

use susy_painleve::C64;

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Ok(re) = t.parse::<f64>() {
        return Ok(C64::new(re, 0.0));
    }
    let body = t
        .strip_suffix(['i', 'I'])
        .ok_or_else(|| format!("cannot parse '{s}' as a complex number"))?;
    // split before the last +/- that is neither leading nor an exponent sign
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let c = bytes[idx];
        if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    match split {
        Some(idx) => {
            let re: f64 = body[..idx]
                .parse()
                .map_err(|_| format!("bad real part in '{s}'"))?;
            Ok(C64::new(re, imaginary_coefficient(&body[idx..], s)?))
        }
        None => Ok(C64::new(0.0, imaginary_coefficient(body, s)?)),
    }
}

fn imaginary_coefficient(t: &str, original: &str) -> Result<f64, String> {
    match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        other => other
            .parse()
            .map_err(|_| format!("bad imaginary part in '{original}'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_forms() {
        let cases = [
            ("2.5", (2.5, 0.0)),
            ("-1", (-1.0, 0.0)),
            ("i", (0.0, 1.0)),
            ("-i", (0.0, -1.0)),
            ("100i", (0.0, 100.0)),
            ("1+11i", (1.0, 11.0)),
            ("1-0.6i", (1.0, -0.6)),
            ("1-i", (1.0, -1.0)),
            ("1e-3i", (0.0, 1e-3)),
            ("2e2+1e-1i", (200.0, 0.1)),
            (" 1 + 2i ", (1.0, 2.0)),
        ];
        for (text, (re, im)) in cases {
            let z = parse_complex(text).unwrap();
            assert_eq!((z.re, z.im), (re, im), "{text}");
        }
    }

    #[test]
    fn rejected_forms() {
        for text in ["", "abc", "1+2j", "i1", "1++2i"] {
            assert!(parse_complex(text).is_err(), "{text}");
        }
    }
}
