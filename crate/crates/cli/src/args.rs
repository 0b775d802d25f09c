//! Flag-value parsing shared by the subcommands.

/// Accepts plain integers and scientific notation: `250`, `1e6`, `3.2e4`.
pub fn parse_quantity(text: &str) -> Result<u64, String> {
    if let Ok(v) = text.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = text
        .parse()
        .map_err(|_| format!("{text:?} is not a number"))?;
    if !v.is_finite() || v < 0.0 {
        return Err(format!("{text:?} is not a non-negative finite number"));
    }
    if v >= u64::MAX as f64 {
        return Err(format!("{text:?} exceeds the u64 range"));
    }
    let rounded = v.round();
    if (v - rounded).abs() > 1e-6 * v.max(1.0) {
        return Err(format!("{text:?} is not a whole number"));
    }
    Ok(rounded as u64)
}

/// `lo..hi` (inclusive) or a single value.
pub fn parse_quantity_range(text: &str) -> Result<(u64, u64), String> {
    match text.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (parse_quantity(lo)?, parse_quantity(hi)?);
            if hi < lo {
                return Err(format!("range {text:?} is empty"));
            }
            Ok((lo, hi))
        }
        None => parse_quantity(text).map(|v| (v, v)),
    }
}

/// Comma-separated values or inclusive ranges: `3`, `1..5`, `1,2,10..12`.
pub fn parse_m_list(text: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let (lo, hi) = parse_quantity_range(item)?;
        if hi - lo > 10_000 {
            return Err(format!("range {item:?} is unreasonably wide"));
        }
        for m in lo..=hi {
            out.push(u32::try_from(m).map_err(|_| format!("{m} exceeds the u32 range"))?);
        }
    }
    if out.is_empty() {
        return Err("no m values given".into());
    }
    Ok(out)
}

/// The powers of ten from `lo` to `hi`, e.g. `1e3..1e10` -> eight decades.
pub fn decades(text: &str) -> Result<Vec<u64>, String> {
    let (lo, hi) = parse_quantity_range(text)?;
    if lo == 0 {
        return Err("decade sweep needs a positive start".into());
    }
    let mut out = Vec::new();
    let mut x = lo;
    while x <= hi {
        out.push(x);
        match x.checked_mul(10) {
            Some(next) => x = next,
            None => break,
        }
    }
    Ok(out)
}
