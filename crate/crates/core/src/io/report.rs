use std::fmt::Write;

use crate::error::Result;
use crate::regime::{Comparison, CostReport};

use super::format::format_fixed;

/// Human-readable comparison summary. Every number appears at full
/// precision followed by its 2-decimal display form.
pub fn write_report(c: &Comparison) -> String {
    let num = |v: f64| format!("{v} ({})", format_fixed(v, 2));
    let mut out = String::new();
    let _ = writeln!(out, "regime comparison: {} vs {}", c.name_a, c.name_b);
    let _ = writeln!(out, "  V[{}] = {}", c.name_a, num(c.total_a));
    let _ = writeln!(out, "  V[{}] = {}", c.name_b, num(c.total_b));
    let _ = writeln!(
        out,
        "  delta V = V[{}] - V[{}] = {}",
        c.name_a,
        c.name_b,
        num(c.delta)
    );
    for (name, cost) in [(&c.name_a, &c.cost_a), (&c.name_b, &c.cost_b)] {
        if let Some(cost) = cost {
            write_cost(&mut out, name, cost, &num);
        }
    }
    out
}

fn write_cost(out: &mut String, name: &str, cost: &CostReport, num: &dyn Fn(f64) -> String) {
    let verdict = if cost.within_budget {
        "within budget"
    } else {
        "OVER BUDGET"
    };
    let _ = writeln!(
        out,
        "  cost[{name}] = {} (base {} + install {} + competencies {}), budget {}: {verdict}",
        num(cost.total_cost),
        cost.base_cost,
        cost.install_cost,
        cost.competency_cost,
        cost.budget,
    );
}

pub fn write_report_json(c: &Comparison) -> String {
    serde_json::to_string_pretty(c).expect("comparison serializes")
}

pub fn parse_report_json(text: &str) -> Result<Comparison> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regime::{audit_costs, compare_regimes, CostInput};

    #[test]
    fn reference_delta_is_displayed() {
        let c = compare_regimes(("taxonomy", 5491.18), ("basic", 5069.93), None).unwrap();
        let text = write_report(&c);
        assert!(text.contains("421.25"), "{text}");
        assert!(text.contains("(5491.18)"));
    }

    #[test]
    fn identical_regimes() {
        let c = compare_regimes(("a", 3.0), ("b", 3.0), None).unwrap();
        assert!(write_report(&c).contains("delta V = V[a] - V[b] = 0 (0.00)"));
    }

    #[test]
    fn costs_and_json() {
        let a = audit_costs(
            &CostInput {
                base_cost: 5_641_442.0,
                install_cost: 32_809.0,
                competency_cost: 0.0,
            },
            5_600_000.0,
        );
        let b = audit_costs(
            &CostInput {
                base_cost: 5_641_442.0,
                ..Default::default()
            },
            5_700_000.0,
        );
        let c = compare_regimes(("taxonomy", 5491.18), ("basic", 5069.93), Some((a, b))).unwrap();
        let text = write_report(&c);
        assert!(text.contains("5674251 (5674251.00)"));
        assert!(text.contains("OVER BUDGET") && text.contains("within budget"));
        assert_eq!(parse_report_json(&write_report_json(&c)).unwrap(), c);
    }
}
