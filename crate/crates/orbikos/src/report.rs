//! Machine- and human-readable reports for the verification pipeline.

use serde::Serialize;

#[derive(Serialize)]
pub struct CoverReport {
    pub group: String,
    pub g_alpha: String,
    pub g_beta: String,
    pub g_gamma: String,
    pub genus: u64,
    pub punctures: u64,
    pub punctures_per_end: [u64; 3],
}

#[derive(Serialize)]
pub struct KsStatus {
    pub chain_map_ok: bool,
    pub weights_preserved: bool,
    pub quasi_iso: bool,
    pub invariant_quasi_iso: bool,
    pub dropped_soft: Vec<String>,
}

#[derive(Serialize)]
pub struct SectorReport {
    pub chi: String,
    pub fixed_variables: String,
    /// Human-readable twisted differential, one line per generator.
    pub cf_differential: Vec<String>,
    pub sc_hilbert: Vec<usize>,
    pub cf_hilbert: Vec<usize>,
    pub kos_hilbert: Vec<usize>,
    pub sc_hilbert_invariant: Vec<usize>,
    pub cf_hilbert_invariant: Vec<usize>,
    pub kos_hilbert_invariant: Vec<usize>,
    pub cocycle_flags: Option<CocycleFlags>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_status: Option<KsStatus>,
}

#[derive(Serialize)]
pub struct CocycleFlags {
    pub p: bool,
    pub q: bool,
    pub r: bool,
    pub u: bool,
    pub v: bool,
    pub w: bool,
    pub expected_u: bool,
    pub expected_v: bool,
    pub expected_w: bool,
}

#[derive(Serialize)]
pub struct MfReport {
    pub delta_squares: Vec<DeltaCheck>,
    pub hom_differential_squares: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sector_products: Option<SectorProducts>,
    /// Untwisted diagonal transported to the Floer basis vs the
    /// deformed-intersection matrix.
    pub delta_matrix_rows: Vec<DeltaMatrixRow>,
    pub convention_rows: Vec<ConventionRow>,
}

#[derive(Serialize)]
pub struct DeltaMatrixRow {
    pub input: String,
    pub output: String,
    pub transported: String,
    pub matrix: String,
    pub relation: String,
}

#[derive(Serialize)]
pub struct DeltaCheck {
    pub chi: String,
    pub ok: bool,
}

#[derive(Serialize)]
pub struct SectorProducts {
    pub explicit_lifts_closed: bool,
    pub even_even: String,
    pub odd_even: String,
    pub odd_odd: String,
    pub matches_expected: bool,
}

#[derive(Serialize)]
pub struct ConventionRow {
    pub sector: String,
    pub input: String,
    pub output: String,
    pub labeled: String,
    pub substituted: String,
    pub relation: String,
}

#[derive(Serialize)]
pub struct FullReport {
    pub cover: CoverReport,
    pub cutoff: i64,
    pub convention: String,
    pub sectors: Vec<SectorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mf: Option<MfReport>,
    pub checks: Vec<CheckResult>,
    pub verdict: String,
}

#[derive(Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

fn dims_row(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_markdown(report: &FullReport) -> String {
    let mut out = String::new();
    let c = &report.cover;
    out.push_str(&format!(
        "# Cover {} (ga = {}, gb = {}, gg = {})\n\n",
        c.group, c.g_alpha, c.g_beta, c.g_gamma
    ));
    out.push_str(&format!(
        "genus: {}, punctures: {} (per end: {}, {}, {})\n\n",
        c.genus,
        c.punctures,
        c.punctures_per_end[0],
        c.punctures_per_end[1],
        c.punctures_per_end[2]
    ));
    out.push_str(&format!(
        "cutoff: {}, convention: {}\n\n",
        report.cutoff, report.convention
    ));
    if !report.sectors.is_empty() {
        out.push_str("## Sectors\n\n");
        for s in &report.sectors {
            out.push_str(&format!(
                "### sector {} (fixed variables: {})\n\n",
                s.chi, s.fixed_variables
            ));
            if !s.cf_differential.is_empty() {
                out.push_str("Floer differential:\n\n");
                for line in &s.cf_differential {
                    out.push_str(&format!("    {}\n", line));
                }
                out.push('\n');
            }
            out.push_str("| graded dimensions (degree 0..cutoff) | values |\n|---|---|\n");
            out.push_str(&format!("| SC sector | {} |\n", dims_row(&s.sc_hilbert)));
            out.push_str(&format!("| CF sector | {} |\n", dims_row(&s.cf_hilbert)));
            out.push_str(&format!("| Koszul sector | {} |\n", dims_row(&s.kos_hilbert)));
            out.push_str(&format!(
                "| SC invariant | {} |\n",
                dims_row(&s.sc_hilbert_invariant)
            ));
            out.push_str(&format!(
                "| CF invariant | {} |\n",
                dims_row(&s.cf_hilbert_invariant)
            ));
            out.push_str(&format!(
                "| Koszul invariant | {} |\n",
                dims_row(&s.kos_hilbert_invariant)
            ));
            if let Some(f) = &s.cocycle_flags {
                out.push_str(&format!(
                    "\ncocycles: P {} Q {} R {}; U {} (expected {}), V {} (expected {}), W {} (expected {})\n",
                    f.p, f.q, f.r, f.u, f.expected_u, f.v, f.expected_v, f.w, f.expected_w
                ));
            }
            if let Some(k) = &s.ks_status {
                out.push_str(&format!(
                    "\nchain map: {}, quasi-iso: {}, invariant quasi-iso: {}",
                    k.chain_map_ok, k.quasi_iso, k.invariant_quasi_iso
                ));
                if !k.dropped_soft.is_empty() {
                    out.push_str(&format!(
                        " (soft pins dropped: {})",
                        k.dropped_soft.join(", ")
                    ));
                }
                out.push('\n');
            }
            out.push('\n');
        }
    }
    if let Some(mf) = &report.mf {
        out.push_str("## Matrix factorizations\n\n");
        for d in &mf.delta_squares {
            out.push_str(&format!(
                "- twisted diagonal, sector {}: d^2 = potential * id: {}\n",
                d.chi,
                if d.ok { "ok" } else { "FAILED" }
            ));
        }
        out.push_str(&format!(
            "- hom differential squares to zero: {}\n",
            if mf.hom_differential_squares {
                "ok"
            } else {
                "FAILED"
            }
        ));
        if let Some(p) = &mf.sector_products {
            out.push_str(&format!(
                "\nexplicit lifts closed: {}\n\nproducts in the order-2 twisted sector:\n\n",
                p.explicit_lifts_closed
            ));
            out.push_str(&format!("- txy . txy = {}\n", p.even_even));
            out.push_str(&format!("- txyz . txy = {}\n", p.odd_even));
            out.push_str(&format!("- txyz . txyz = {}\n", p.odd_odd));
            out.push_str(&format!("- matches expected table: {}\n", p.matches_expected));
        }
        if !mf.delta_matrix_rows.is_empty() {
            out.push_str("\n### Untwisted diagonal vs deformed-intersection matrix\n\n");
            out.push_str("| input | output | transported | matrix | relation |\n");
            out.push_str("|---|---|---|---|---|\n");
            for r in &mf.delta_matrix_rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    r.input, r.output, r.transported, r.matrix, r.relation
                ));
            }
        }
        if !mf.convention_rows.is_empty() {
            out.push_str("\n### Differential convention comparison\n\n");
            out.push_str("| sector | input | output | labeled | substituted | relation |\n");
            out.push_str("|---|---|---|---|---|---|\n");
            for r in &mf.convention_rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    r.sector, r.input, r.output, r.labeled, r.substituted, r.relation
                ));
            }
        }
        out.push('\n');
    }
    if !report.checks.is_empty() {
        out.push_str("## Checks\n\n");
        for ch in &report.checks {
            out.push_str(&format!(
                "- {}: {}{}\n",
                ch.name,
                if ch.pass { "pass" } else { "FAIL" },
                if ch.detail.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", ch.detail)
                }
            ));
        }
        out.push('\n');
    }
    out.push_str(&format!("verdict: {}\n", report.verdict));
    out
}
