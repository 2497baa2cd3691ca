use super::spec::ParseError;

/// `%.17g`: 17 significant digits, fixed notation for exponents in
/// `[-4, 17)`, trailing zeros dropped. Round-trips every finite `f64`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

fn grid_error(message: impl Into<String>, token: &str, position: usize) -> ParseError {
    ParseError {
        message: message.into(),
        token: token.into(),
        position,
    }
}

/// `v1,v2,...`, `lin:start:stop:count` or `geom:start:stop:count`.
/// Descriptors include both ends.
pub fn parse_grid(src: &str) -> Result<Vec<f64>, ParseError> {
    let number = |tok: &str, at: usize| {
        tok.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| grid_error("expected a finite number", tok.trim(), at))
    };
    if let Some((kind, rest)) = src.split_once(':') {
        let base = kind.len() + 1;
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(grid_error("descriptor needs start:stop:count", src, 0));
        }
        let start = number(parts[0], base)?;
        let stop = number(parts[1], base + parts[0].len() + 1)?;
        let count_at = base + parts[0].len() + parts[1].len() + 2;
        let count: usize = parts[2]
            .trim()
            .parse()
            .ok()
            .filter(|&c| c >= 1)
            .ok_or_else(|| grid_error("count must be a positive integer", parts[2].trim(), count_at))?;
        let step = |i: usize| if count == 1 { 0.0 } else { i as f64 / (count - 1) as f64 };
        match kind.trim() {
            "lin" => Ok((0..count).map(|i| start + (stop - start) * step(i)).collect()),
            "geom" => {
                if !(start > 0.0 && stop > 0.0) {
                    return Err(grid_error("geometric grid needs positive ends", src, base));
                }
                let (a, b) = (start.ln(), stop.ln());
                Ok((0..count)
                    .map(|i| match i {
                        0 => start,
                        _ if i + 1 == count => stop,
                        _ => (a + (b - a) * step(i)).exp(),
                    })
                    .collect())
            }
            other => Err(grid_error("unknown grid kind, expected lin or geom", other, 0)),
        }
    } else {
        let mut out = Vec::new();
        let mut at = 0;
        for tok in src.split(',') {
            out.push(number(tok, at)?);
            at += tok.len() + 1;
        }
        Ok(out)
    }
}

/// Like [`parse_grid`], each value rounded to a count of at least 2.
pub fn parse_counts(src: &str) -> Result<Vec<usize>, ParseError> {
    parse_grid(src)?
        .into_iter()
        .map(|v| {
            let r = v.round();
            if r >= 2.0 && r <= u32::MAX as f64 {
                Ok(r as usize)
            } else {
                Err(grid_error("sample sizes must be at least 2", &fmt_num(v), 0))
            }
        })
        .collect()
}
