//! Flag value parsing: spaces, spectral parameters and point lists.

use zonal::spectral::parse_complex;
use zonal::{Complex64, RankOneSpace, SpectralParam, Units};

use crate::CliError;

const MAX_POINTS: usize = 1_000_000;

/// `P,Q`.
pub fn parse_space(s: &str) -> Result<RankOneSpace, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(CliError::Validation(format!("--space expects P,Q, got '{s}'")));
    }
    let num = |x: &str| x.parse::<u32>().map_err(|_| CliError::Validation(format!("bad multiplicity '{x}' in --space")));
    let (p, q) = (num(parts[0])?, num(parts[1])?);
    RankOneSpace::new(p, q).map_err(|e| CliError::Validation(e.to_string()))
}

pub fn parse_units(s: &str) -> Result<Units, CliError> {
    s.parse::<Units>().map_err(CliError::Validation)
}

pub fn parse_lambda(s: &str, units: Units) -> Result<SpectralParam, CliError> {
    let v = parse_complex(s).map_err(CliError::Validation)?;
    Ok(SpectralParam::new(v, units))
}

/// `START:STOP:STEP` (inclusive, real) or a comma list of complex values.
pub fn parse_points(s: &str) -> Result<Vec<Complex64>, CliError> {
    let s = s.trim();
    if s.contains(':') {
        return Ok(parse_range(s)?.into_iter().map(|x| Complex64::new(x, 0.0)).collect());
    }
    let out: Vec<Complex64> = s
        .split(',')
        .map(|x| parse_complex(x).map_err(CliError::Validation))
        .collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err(CliError::Validation("empty point list".into()));
    }
    Ok(out)
}

/// Same as [`parse_points`] but every point must be real.
pub fn parse_real_points(s: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    parse_points(s)?
        .into_iter()
        .map(|z| {
            if z.im == 0.0 {
                Ok(z.re)
            } else {
                Err(CliError::Validation(format!("{flag} takes real values, got {z}")))
            }
        })
        .collect()
}

fn parse_range(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Validation(format!("range '{s}' must be START:STOP:STEP")));
    }
    let num = |x: &str| -> Result<f64, CliError> {
        let v: f64 = x.trim().parse().map_err(|_| CliError::Validation(format!("bad number '{x}' in range")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(CliError::Validation(format!("non-finite '{x}' in range")))
        }
    };
    let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
    if !(step > 0.0) || stop < start {
        return Err(CliError::Validation(format!("range '{s}' needs STEP > 0 and STOP >= START")));
    }
    let n = ((stop - start) / step + 1e-9).floor();
    if n >= MAX_POINTS as f64 {
        return Err(CliError::Validation(format!("range '{s}' has more than {MAX_POINTS} points")));
    }
    // multiply rather than accumulate so the points do not drift
    Ok((0..=n as usize).map(|k| start + step * k as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_points("0:1:0.5").unwrap().len(), 3);
        assert_eq!(parse_range("0:3:0.5").unwrap().last().copied(), Some(3.0));
        let l = parse_points("0+3.2i,1").unwrap();
        assert_eq!(l[0], Complex64::new(0.0, 3.2));
        assert!(parse_points("1:0:0.1").is_err());
        assert!(parse_points("0:1:0").is_err());
        assert!(parse_real_points("1i", "--grid").is_err());
    }

    #[test]
    fn spaces() {
        assert!(parse_space("1,0").unwrap().is_sl2());
        assert!(parse_space("1").is_err());
        assert!(parse_space("0,0").is_err());
        assert!(parse_space("a,0").is_err());
    }
}
