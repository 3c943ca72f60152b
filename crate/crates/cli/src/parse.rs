//! Command-line number syntax: complex scalars as `a+bi` and comma-separated
//! vectors.

use cs_geometry::Complex64;

/// Parses `3`, `-2.5i`, `1-2i`, `1e-3+4e-2i`, `i`, `-i`.
pub fn complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex number".into());
    }
    let bad = || format!("cannot parse '{text}' as a complex number (expected a+bi)");
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return s
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |part: &str| -> Result<f64, String> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            p => p.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&body[i..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Comma-separated complex vector. The empty string is the empty vector.
pub fn complex_vec(text: &str) -> Result<Vec<Complex64>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(complex).collect()
}

/// Comma-separated reals, or `start:stop:count` for an inclusive linear grid.
pub fn real_grid(text: &str) -> Result<Vec<f64>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if let [start, stop, count] = text.split(':').collect::<Vec<_>>()[..] {
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad range bound '{s}'"))
        };
        let (a, b) = (parse(start)?, parse(stop)?);
        let n: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("bad range count '{count}'"))?;
        return Ok(match n {
            0 => Vec::new(),
            1 => vec![a],
            _ => (0..n)
                .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                .collect(),
        });
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("cannot parse '{s}' as a number"))
        })
        .collect()
}
