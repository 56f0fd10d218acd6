use super::lc::subgroups_order_p;
use super::twisted::{assemble, Twist};
use super::{BuildOptions, ConstructionReport};
use crate::algebra::GroupAction;
use crate::error::ConstructionError;
use crate::geometry::{regular_line_preserving, IncidenceStructure};

/// Twisted scheme on `F_p^2 x G` read off a linear space with a regular,
/// line-preserving group `G`.
///
/// Point `q` is identified with `g_q^-1`, where `g_q` carries point 0 to `q`;
/// lines then become left-translation invariant subsets of `G`. The lines
/// through the identity get the first canonical order-`p` subgroups (in
/// sorted order of their point sets) and the central subgroup is the next
/// one. For `a != 1` the relation between fibres `b` and `ba` uses the
/// subgroups of the lines joining the identity to `a` and to `a^-1`.
///
/// Fibre `g` of the result carries input point `fibre_points[g]`.
pub fn build_from_linear_space(
    space: &IncidenceStructure,
    action: &GroupAction,
    p: u64,
    opts: &BuildOptions,
) -> Result<ConstructionReport, ConstructionError> {
    let subgroups = subgroups_order_p(p)?;
    let class = space.classify();
    if !class.is_linear {
        return Err(ConstructionError::NotLinearSpace("some pair of points is not on exactly one line".into()));
    }
    let line_preserving =
        regular_line_preserving(space, action).map_err(|e| ConstructionError::BadAction(e.to_string()))?;
    if !line_preserving {
        return Err(ConstructionError::BadAction("not regular, or some element does not preserve lines".into()));
    }
    let group = action.group();
    let n = space.points();
    opts.guard(n * (p * p) as usize)?;

    let through_base = space.lines_through(0);
    let bound = p as usize + 1;
    if through_base.len() >= bound {
        return Err(ConstructionError::TooManyLines { lines: through_base.len(), bound });
    }

    // Fibre g carries 0^{g^-1}, so point q sits on fibre g_q^-1.
    let fibre_points: Vec<usize> = (0..group.order()).map(|g| action.image(0, group.inv(g))).collect();

    let mut base_lines: Vec<Vec<usize>> = through_base.iter().map(|&l| space.lines()[l].clone()).collect();
    base_lines.sort();
    let line_of = |g: usize| {
        let q = fibre_points[g];
        base_lines.iter().position(|l| l.binary_search(&q).is_ok()).expect("linear space")
    };
    let central = subgroups[base_lines.len()];

    let mut twists = vec![None; group.order()];
    for (a, slot) in twists.iter_mut().enumerate() {
        if a != group.identity() {
            *slot = Some(Twist { first: subgroups[line_of(a)], second: subgroups[line_of(group.inv(a))], central });
        }
    }
    let (scheme, layout, labels) = assemble(p, group, &twists)?;
    let params = serde_json::json!({ "points": n, "lines": space.lines().len() });
    let mut report = ConstructionReport::new("thm51", p, params, scheme, labels)?;
    report.layout = Some(layout);
    report.fibre_points = Some(fibre_points);
    Ok(report)
}
