//! Panel grids on `[2, T]` with breakpoints.

use crate::error::Result;
use crate::kernel::QuadratureSpec;

/// Panel count the default quadrature spec stands for; `panels / 16` is a
/// density multiplier on top of the spacing rule.
pub(crate) const REFERENCE_PANELS: f64 = 16.0;

/// `min(0.25, π / (4·(1 + ln cutoff)))`.
pub fn node_spacing(cutoff: usize) -> f64 {
    let c = (cutoff.max(1)) as f64;
    0.25f64.min(std::f64::consts::PI / (4.0 * (1.0 + c.ln())))
}

#[derive(Debug, Clone)]
pub(crate) struct PathGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `ends[i]` is one past the last node with `t ≤ samples[i]`.
    pub ends: Vec<usize>,
    pub panels: usize,
}

impl PathGrid {
    /// Panels of width at most `nodes_per_panel · h / multiplier` on every
    /// segment between consecutive breakpoints. `samples` are always
    /// breakpoints; `extra` adds more (jumps of the integrand).
    pub fn build(samples: &[f64], extra: &[f64], h: f64, quad: &QuadratureSpec) -> Result<Self> {
        let start = 2.0;
        let t_max = *samples.last().expect("non-empty samples");
        let mut breaks: Vec<f64> = extra.iter().copied().filter(|&x| x > start && x < t_max).collect();
        breaks.extend(samples.iter().copied().filter(|&x| x > start));
        breaks.push(start);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));

        let rule = quad.panel_rule();
        let multiplier = (quad.panels() as f64 / REFERENCE_PANELS).max(1.0 / REFERENCE_PANELS);
        let max_width = quad.nodes_per_panel() as f64 * h / multiplier;
        let mut panel_count = 0usize;
        for w in breaks.windows(2) {
            panel_count += ((w[1] - w[0]) / max_width).ceil().max(1.0) as usize;
        }
        quad.check_budget(panel_count)?;

        let mut nodes = Vec::with_capacity(panel_count * rule.len());
        let mut weights = Vec::with_capacity(panel_count * rule.len());
        let mut ends = Vec::with_capacity(samples.len());
        let mut sample_iter = samples.iter().peekable();
        while sample_iter.peek().is_some_and(|&&s| s <= start) {
            ends.push(0);
            sample_iter.next();
        }
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            let count = ((b - a) / max_width).ceil().max(1.0) as usize;
            let width = (b - a) / count as f64;
            for p in 0..count {
                let lo = a + width * p as f64;
                let hi = if p + 1 == count { b } else { lo + width };
                for (x, wt) in rule.mapped(lo, hi) {
                    nodes.push(x);
                    weights.push(wt);
                }
            }
            while sample_iter.peek().is_some_and(|&&s| s <= b + 1e-12 * b) {
                ends.push(nodes.len());
                sample_iter.next();
            }
        }
        Ok(Self { nodes, weights, ends, panels: panel_count })
    }
}
