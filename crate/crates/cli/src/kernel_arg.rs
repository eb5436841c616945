//! Kernel selector grammar:
//! `conformable | shifted:<a> | gamma | expr:<expression>,a=<a>,b=<b>`.

use localfrac::expr::parse;
use localfrac::kernel::{builtin_kernel, custom_kernel, KernelKind, KernelSpec};

pub fn parse_kernel(selector: &str) -> Result<KernelSpec, String> {
    if selector == "conformable" {
        return builtin_kernel(KernelKind::Conformable, 0.0).map_err(|e| e.to_string());
    }
    if selector == "gamma" {
        return builtin_kernel(KernelKind::GammaShifted, 0.0).map_err(|e| e.to_string());
    }
    if let Some(rest) = selector.strip_prefix("shifted:") {
        let a: f64 = rest
            .parse()
            .map_err(|_| format!("--kernel shifted:<a>: {rest:?} is not a number"))?;
        return builtin_kernel(KernelKind::Shifted, a).map_err(|e| e.to_string());
    }
    if let Some(rest) = selector.strip_prefix("expr:") {
        // The expression language has no commas, so the last two
        // comma-separated pieces are the bounds.
        let mut pieces = rest.rsplitn(3, ',');
        let b_piece = pieces.next().unwrap_or("");
        let a_piece = pieces.next().unwrap_or("");
        let body_text = pieces.next().ok_or_else(|| {
            "--kernel expr:<expression>,a=<a>,b=<b>: missing bounds".to_string()
        })?;
        let a: f64 = a_piece
            .strip_prefix("a=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| format!("--kernel expr: expected a=<number>, got {a_piece:?}"))?;
        let b: f64 = b_piece
            .strip_prefix("b=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| format!("--kernel expr: expected b=<number>, got {b_piece:?}"))?;
        let body = parse(body_text).map_err(|e| format!("--kernel expr: {e}"))?;
        return custom_kernel(body, a, b).map_err(|e| e.to_string());
    }
    Err(format!(
        "unknown kernel selector {selector:?} \
         (expected conformable | shifted:<a> | gamma | expr:<expression>,a=<a>,b=<b>)"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_selectors() {
        assert_eq!(parse_kernel("conformable").unwrap().domain_start(), 0.0);
        assert_eq!(parse_kernel("shifted:1.5").unwrap().domain_start(), 1.5);
        assert!(parse_kernel("gamma").unwrap().alpha_dependent());
    }

    #[test]
    fn custom_selector() {
        let k = parse_kernel("expr:t^2,a=0,b=10").unwrap();
        assert_eq!(k.kind(), KernelKind::Custom);
        assert_eq!(k.domain_start(), 0.0);
        assert_eq!(k.domain_end(), 10.0);
    }

    #[test]
    fn bad_selectors() {
        assert!(parse_kernel("triangular").is_err());
        assert!(parse_kernel("shifted:abc").is_err());
        assert!(parse_kernel("expr:t^2").is_err());
        assert!(parse_kernel("expr:t^2,a=0,b=oops").is_err());
        assert!(parse_kernel("expr:t^^,a=0,b=1").is_err());
    }
}
