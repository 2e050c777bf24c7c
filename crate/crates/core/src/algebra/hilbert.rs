use std::fmt;

/// Truncated Hilbert series `Σ dims[i] t^(offset + i)`, optionally with a
/// rational closed form whose expansion matches every stored coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub offset: i32,
    pub dims: Vec<i64>,
    pub closed_form: Option<ClosedForm>,
}

/// `t^shift · numerator(t) / ((1-t)^a (1-t^2)^b (1-t^3)^c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub shift: i32,
    pub numerator: Vec<i64>,
    pub denominator: [u32; 3],
}

fn mul_poly(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl ClosedForm {
    fn denominator_poly(&self) -> Vec<i64> {
        let mut d = vec![1];
        for (k, &e) in self.denominator.iter().enumerate() {
            let mut f = vec![0; k + 2];
            f[0] = 1;
            f[k + 1] = -1;
            for _ in 0..e {
                d = mul_poly(&d, &f);
            }
        }
        d
    }

    /// First `n` coefficients of the expansion (starting at `t^shift`).
    pub fn expand(&self, n: usize) -> Vec<i64> {
        let den = self.denominator_poly();
        let mut out = vec![0i64; n];
        for i in 0..n {
            let mut v = self.numerator.get(i).copied().unwrap_or(0);
            for k in 1..den.len().min(i + 1) {
                v -= den[k] * out[i - k];
            }
            out[i] = v;
        }
        out
    }

    fn complexity(&self) -> (usize, u32) {
        let dd = self.denominator[0] + 2 * self.denominator[1] + 3 * self.denominator[2];
        (self.numerator.len() + dd as usize, dd)
    }
}

fn render_monomial(c: i64, e: i32, first: bool) -> String {
    let mut s = String::new();
    let mag = c.abs();
    if c < 0 {
        s.push('-');
    } else if !first {
        s.push('+');
    }
    let var = match e {
        0 => String::new(),
        1 => "t".to_string(),
        _ => format!("t^{e}"),
    };
    if mag != 1 || var.is_empty() {
        s.push_str(&mag.to_string());
    }
    s.push_str(&var);
    s
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, i32)> = self
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (*c, i as i32 + self.shift))
            .collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let mut num = String::new();
        for (k, (c, e)) in terms.iter().enumerate() {
            num.push_str(&render_monomial(*c, *e, k == 0));
        }
        let mut den = Vec::new();
        for (k, &e) in self.denominator.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = if k == 0 { "(1-t)".to_string() } else { format!("(1-t^{})", k + 1) };
            den.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        if den.is_empty() {
            return f.write_str(&num);
        }
        if terms.len() > 1 {
            num = format!("({num})");
        }
        if den.len() > 1 {
            return write!(f, "{num}/({})", den.concat());
        }
        write!(f, "{num}/{}", den.concat())
    }
}

impl HilbertSeries {
    /// Builds the series and searches for the simplest closed form that
    /// reproduces all coefficients with at least two degrees to spare.
    pub fn new(offset: i32, dims: Vec<i64>) -> HilbertSeries {
        let closed_form = find_closed_form(offset, &dims);
        HilbertSeries { offset, dims, closed_form }
    }

    pub fn without_closed_form(offset: i32, dims: Vec<i64>) -> HilbertSeries {
        HilbertSeries { offset, dims, closed_form: None }
    }

    pub fn coefficient(&self, degree: i32) -> Option<i64> {
        let i = degree - self.offset;
        if i < 0 {
            return Some(0);
        }
        self.dims.get(i as usize).copied()
    }

    pub fn closed_form_string(&self) -> Option<String> {
        self.closed_form.as_ref().map(|c| c.to_string())
    }
}

fn find_closed_form(offset: i32, dims: &[i64]) -> Option<ClosedForm> {
    // strip leading zeros into the shift
    let lead = dims.iter().position(|&c| c != 0);
    let Some(lead) = lead else {
        return Some(ClosedForm { shift: 0, numerator: vec![], denominator: [0, 0, 0] });
    };
    let series = &dims[lead..];
    let shift = offset + lead as i32;
    let n = series.len();
    let mut best: Option<ClosedForm> = None;
    for a in 0..=5u32 {
        for b in 0..=2u32 {
            for c in 0..=1u32 {
                let mut cf = ClosedForm { shift, numerator: vec![], denominator: [a, b, c] };
                let den = cf.denominator_poly();
                let full = mul_poly(series, &den);
                let mut num: Vec<i64> = full[..n].to_vec();
                while num.last() == Some(&0) {
                    num.pop();
                }
                if num.len() + 2 > n {
                    continue;
                }
                cf.numerator = num;
                if cf.expand(n) != series {
                    continue;
                }
                if best.as_ref().is_none_or(|b| cf.complexity() < b.complexity()) {
                    best = Some(cf);
                }
            }
        }
    }
    best
}
