use qborel::{LogPoint, Ratio, C64 as Complex64};

pub fn complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"re,im\", got {s:?}"))?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| format!("bad real part in {s:?}"))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| format!("bad imaginary part in {s:?}"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(format!("non-finite value {s:?}"));
    }
    Ok(Complex64::new(re, im))
}

/// `r@theta` on the logarithmic surface, or `re,im` lifted to the principal sheet.
pub fn log_point(s: &str) -> Result<LogPoint, String> {
    if let Some((r, t)) = s.split_once('@') {
        let r: f64 = r
            .trim()
            .parse()
            .map_err(|_| format!("bad modulus in {s:?}"))?;
        let t: f64 = t
            .trim()
            .parse()
            .map_err(|_| format!("bad argument in {s:?}"))?;
        return LogPoint::new(r, t).map_err(|e| e.to_string());
    }
    LogPoint::from_complex(complex(s)?).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<LogPoint>);

#[derive(Debug, Clone, PartialEq)]
pub struct Reals(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct Orders(pub Vec<Ratio<i64>>);

pub fn grid_arg(s: &str) -> Result<Grid, String> {
    grid(s).map(Grid)
}

pub fn reals_arg(s: &str) -> Result<Reals, String> {
    reals(s).map(Reals)
}

pub fn orders_arg(s: &str) -> Result<Orders, String> {
    orders(s).map(Orders)
}

/// Points separated by `;`.
pub fn grid(s: &str) -> Result<Vec<LogPoint>, String> {
    let pts: Vec<LogPoint> = s
        .split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(log_point)
        .collect::<Result<_, _>>()?;
    if pts.is_empty() {
        return Err("grid is empty".into());
    }
    Ok(pts)
}

pub fn reals(s: &str) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("bad number {p:?}"))
        })
        .collect::<Result<_, _>>()?;
    if v.is_empty() {
        return Err("list is empty".into());
    }
    Ok(v)
}

/// Comma-separated rationals such as `1,2` or `1/2,1`.
pub fn orders(s: &str) -> Result<Vec<Ratio<i64>>, String> {
    s.split(',')
        .map(str::trim)
        .map(|p| {
            let (n, d) = p.split_once('/').unwrap_or((p, "1"));
            let n: i64 = n.trim().parse().map_err(|_| format!("bad order {p:?}"))?;
            let d: i64 = d.trim().parse().map_err(|_| format!("bad order {p:?}"))?;
            if d == 0 {
                return Err(format!("zero denominator in {p:?}"));
            }
            Ok(Ratio::new(n, d))
        })
        .collect()
}
