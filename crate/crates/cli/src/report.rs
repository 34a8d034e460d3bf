//! Flat `path.key = value` reports.

use std::fmt::Display;

use fibercone_core::invariants::{
    Classification, CmReport, FiberReport, GorboundReport, GorensteinReason, GorensteinReport,
    MultreesReport, Numerator, SallySuite, Stabilized, SuperficialReport, VvReport, WReport,
};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
    /// Set when a checked identity or assertion fails.
    pub failed: bool,
}

pub fn list<T: Display>(xs: &[T]) -> String {
    let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    v.join(" ")
}

fn opt<T: Display>(x: &Option<T>) -> String {
    x.as_ref()
        .map_or_else(|| "none".to_string(), |v| v.to_string())
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn extend(&mut self, lines: impl IntoIterator<Item = (String, String)>) {
        self.lines.extend(lines);
    }

    pub fn lines(&self) -> &[(String, String)] {
        &self.lines
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    fn stabilized(&mut self, key: &str, s: &Stabilized<i64>) {
        self.push(format!("{key}.value"), s.value);
        self.push(format!("{key}.stabilized_at"), s.at);
    }

    pub fn series(&mut self, n: &Numerator, d: usize) {
        self.push("series.numerator", list(&n.coeffs));
        self.push("series.denominator_power", d);
        self.push("series.stabilized_at", n.stabilized_at);
    }

    pub fn mixed(&mut self, i: usize, j: usize, e: &Stabilized<i64>) {
        self.push(format!("mixed.e_{i}_{j}"), e.value);
        self.push(format!("mixed.e_{i}_{j}.stabilized_at"), e.at);
    }

    pub fn cm(&mut self, c: &CmReport) {
        self.push("cm.verdict", c.verdict);
        self.push("cm.f0", c.f0);
        self.push("cm.colength_fiber", c.colength_fiber);
        self.push("cm.lengths", list(&c.lengths));
    }

    pub fn vv(&mut self, v: &VvReport) {
        self.push("vv.holds", v.holds);
        self.push("vv.failing_n", opt(&v.failing_n));
        self.push("vv.witness", opt(&v.witness));
    }

    pub fn gorenstein(&mut self, g: &GorensteinReport) {
        self.push("gorenstein.verdict", g.verdict);
        let reason = match g.reason {
            GorensteinReason::NotCm => "not_cm".to_string(),
            GorensteinReason::SocleLength(n) => format!("socle_length {n}"),
        };
        self.push("gorenstein.reason", reason);
        self.push(
            "gorenstein.socle",
            g.socle
                .as_ref()
                .map_or_else(|| "none".to_string(), |s| list(s)),
        );
        let fired: Vec<&str> = g
            .checks
            .iter()
            .filter(|c| c.applies)
            .map(|c| c.name)
            .collect();
        self.push(
            "gorenstein.criteria_applied",
            if fired.is_empty() {
                "none".into()
            } else {
                fired.join(" ")
            },
        );
        for c in &g.checks {
            let key = format!("gorenstein.check.{}", c.name);
            self.push(format!("{key}.applies"), c.applies);
            self.push(format!("{key}.criterion"), opt(&c.criterion));
            self.push(format!("{key}.consistent"), c.consistent);
        }
        self.push("gorenstein.r2_witness", opt(&g.r2_witness));
        self.push("gorenstein.consistent", g.consistent());
    }

    pub fn classification(&mut self, c: &Classification) {
        self.push("classify.sally", c.sally);
        self.push("classify.goto_min_mult", c.goto_min);
        self.push("classify.goto_almost_min_mult", c.goto_almost_min);
        self.push("classify.min_mixed", c.min_mixed);
        self.push("classify.almost_min_mixed", c.almost_min_mixed);
        self.push("classify.len_i2_over_ji", c.len_i2_over_ji);
        self.push("classify.len_mi_over_mj", c.len_mi_over_mj);
        self.push("classify.chuai", c.chuai);
        self.push("classify.multiplicity_identity", c.multiplicity_identity);
        self.push("classify.ammm_dichotomy", opt(&c.ammm_dichotomy));
    }

    pub fn w(&mut self, w: &WReport) {
        self.push("w.equal", w.equal);
        self.push("w.witness_in_w", opt(&w.witness_w));
        self.push("w.witness_in_target", opt(&w.witness_target));
        self.push("w.hyp_f_cm", w.hyp_f_cm);
        self.push("w.hyp_g_cm", w.hyp_g_cm);
        self.push("w.hyp_almost_min_mult", w.hyp_almost_min);
        self.push("w.hyp_r2", w.hyp_r2);
        self.push("w.applicable", w.applicable);
        self.push("w.consistent", w.consistent);
    }

    pub fn gorbound(&mut self, g: &GorboundReport) {
        self.push("gorbound.colon_length", g.colon_length);
        self.push("gorbound.colength", g.colength);
        self.push("gorbound.mu", g.mu);
        self.push("gorbound.mu_m_plus_d", g.mu_m_plus_d);
        self.push("gorbound.length_equal", g.length_equal);
        self.push("gorbound.mu_bound", g.mu_bound);
        self.push("gorbound.hypotheses", g.hypotheses);
        self.push("gorbound.consistent", g.consistent);
    }

    pub fn multrees(&mut self, m: &MultreesReport) {
        self.push("multrees.g", list(&m.g));
        self.push("multrees.predicted", list(&m.predicted));
        self.push("multrees.actual", list(&m.actual));
        self.push("multrees.agree", m.agree);
        self.push("multrees.bp_matches_on_grid", m.bp_matches_on_grid);
        self.push("multrees.grid_size", m.grid_size);
    }

    pub fn sally(&mut self, s: &SallySuite) {
        for (name, v) in &s.conditions {
            self.push(format!("sally.{name}"), v);
        }
        self.push("sally.all_agree", s.all_agree);
    }

    pub fn superficial(&mut self, s: &SuperficialReport) {
        self.push(
            "superficial.variant",
            format!("{:?}", s.variant).to_lowercase(),
        );
        self.stabilized("superficial.limit", &s.limit);
        self.push("superficial.base", s.base);
        self.push("superficial.f0", s.f0);
        self.push("superficial.consistent", s.consistent);
        self.push("superficial.pointwise", opt(&s.pointwise));
        self.push("superficial.certified", false);
    }

    pub fn fiber_report(&mut self, r: &FiberReport) {
        self.push("ideal.mu", r.mu);
        self.push("ideal.colength", r.colength);
        self.push("maximal.mu", r.mu_maximal);
        let e = &r.multiplicity;
        self.push("e.value", e.value());
        self.push("e.via_reduction", e.via_reduction);
        self.push("e.via_samuel", e.via_samuel.value);
        self.push("e.stabilized_at", e.via_samuel.at);
        self.push("e.agree", e.agree);
        self.stabilized("e_m", &r.multiplicity_maximal);
        self.stabilized("f0", &r.f0);
        self.series(&r.numerator, r.dimension);
        for (i, s) in r.mixed.iter().enumerate() {
            self.mixed(i, r.dimension - i, s);
        }
        self.push("h_lengths", list(&r.cm.lengths));
        self.cm(&r.cm);
        self.vv(&r.vv);
        self.classification(&r.classification);
        self.gorenstein(&r.gorenstein);
        self.w(&r.w);
        self.gorbound(&r.gorbound);
        self.multrees(&r.multrees);
        for (name, ok) in &r.identities {
            self.push(format!("identity.{name}"), ok);
        }
        if !r.all_identities_hold() {
            self.failed = true;
        }
    }
}
