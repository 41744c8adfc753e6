//! Per-axiom validation of a candidate orthomodular lattice.

use super::Oml;
use crate::report::{Mode, Tally, ValidationReport};

/// Check every orthomodular lattice axiom exhaustively, recording the first
/// witness for each failure.
///
/// Axioms are evaluated against the stored tables, so this also detects
/// inconsistent structures built with [`Oml::from_raw_parts`].
pub fn validate_oml(l: &Oml) -> ValidationReport {
    let n = l.len();
    let lb = |x| l.label(x).to_string();
    let mut report = ValidationReport::new(format!("OML axioms for {}", l.name()));
    let ex = Mode::Exhaustive;

    let mut po = Tally::new("partial-order", ex);
    for x in l.elements() {
        po.case(l.up[x].contains(x), || {
            format!("not reflexive at {}", lb(x))
        });
        for y in l.up[x].ones() {
            po.case(x == y || !l.up[y].contains(x), || {
                format!("{} <= {} <= {}", lb(x), lb(y), lb(x))
            });
            po.case(l.up[y].is_subset(&l.up[x]), || {
                let z = l.up[y].difference(&l.up[x]).next().unwrap_or(y);
                format!(
                    "{} <= {} <= {} but not {} <= {}",
                    lb(x),
                    lb(y),
                    lb(z),
                    lb(x),
                    lb(z)
                )
            });
        }
    }
    report.push(po.finish());

    let mut lat = Tally::new("lattice", ex);
    for x in 0..n {
        for y in 0..n {
            let m = l.meet(x, y);
            let mut lower = l.down[x].clone();
            lower.intersect_with(&l.down[y]);
            lat.case(lower.contains(m) && lower.is_subset(&l.down[m]), || {
                format!(
                    "meet({}, {}) = {} is not the greatest lower bound",
                    lb(x),
                    lb(y),
                    lb(m)
                )
            });
            let j = l.join(x, y);
            let mut upper = l.up[x].clone();
            upper.intersect_with(&l.up[y]);
            lat.case(upper.contains(j) && upper.is_subset(&l.up[j]), || {
                format!(
                    "join({}, {}) = {} is not the least upper bound",
                    lb(x),
                    lb(y),
                    lb(j)
                )
            });
        }
    }
    report.push(lat.finish());

    let mut bounds = Tally::new("bounds", ex);
    for x in l.elements() {
        bounds.case(l.leq(l.bot(), x) && l.leq(x, l.top()), || {
            format!("{} not between {} and {}", lb(x), lb(l.bot()), lb(l.top()))
        });
    }
    report.push(bounds.finish());

    let mut comp = Tally::new("complement", ex);
    for x in l.elements() {
        let p = l.perp(x);
        comp.case(l.meet(x, p) == l.bot() && l.join(x, p) == l.top(), || {
            format!("x = {}, x' = {}", lb(x), lb(p))
        });
    }
    report.push(comp.finish());

    let mut anti = Tally::new("antitone", ex);
    for x in l.elements() {
        for y in l.up[x].ones() {
            anti.case(l.leq(l.perp(y), l.perp(x)), || {
                format!(
                    "{} <= {} but not {} <= {}",
                    lb(x),
                    lb(y),
                    lb(l.perp(y)),
                    lb(l.perp(x))
                )
            });
        }
    }
    report.push(anti.finish());

    let mut inv = Tally::new("involution", ex);
    for x in l.elements() {
        inv.case(l.perp(l.perp(x)) == x, || {
            format!("{}'' = {}", lb(x), lb(l.perp(l.perp(x))))
        });
    }
    report.push(inv.finish());

    let mut om = Tally::new("orthomodular", ex);
    for x in l.elements() {
        for y in l.up[x].ones() {
            let rhs = l.join(x, l.meet(l.perp(x), y));
            om.case(rhs == y, || {
                format!(
                    "({}, {}): {} v ({}' ^ {}) = {}",
                    lb(x),
                    lb(y),
                    lb(x),
                    lb(x),
                    lb(y),
                    lb(rhs)
                )
            });
        }
    }
    report.push(om.finish());
    report
}
