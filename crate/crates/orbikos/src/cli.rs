//! Command-line driver: parse a cover specification, run the verification
//! pipeline, and emit machine- or human-readable reports.
//!
//! Exit codes: 0 all checks pass, 1 a check failed (the first failing check
//! is named in the report), 2 configuration error.

use crate::abelian::{enumerate_characters, parse_group_token, Character, CoverSpec, FinAbGroup};
use crate::cyclotomic::CycNum;
use crate::report::*;
use crate::twisted::SectorComplex;
use crate::{amodel, floer, koszul, ks, mf, twisted};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "orbikos",
    about = "Exact verifier for closed-string mirror symmetry of abelian covers of the pair-of-pants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// Curve-labeled twisted differential.
    Labeled,
    /// Character substitution into the deformed-intersection matrix.
    Substituted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(clap::Args)]
pub struct CoverArgs {
    /// Group token, e.g. Z2, Z3xZ3, Z2xZ4, or 1 for the trivial group.
    #[arg(long)]
    pub group: String,
    /// Image of the first boundary loop, e.g. "1" or "1,0".
    #[arg(long)]
    pub ga: Option<String>,
    /// Image of the second boundary loop (the third is derived).
    #[arg(long)]
    pub gb: Option<String>,
    /// Top tripled degree for slice computations.
    #[arg(long, default_value_t = crate::DEFAULT_CUTOFF)]
    pub cutoff: i64,
    /// Winding truncation for dump-curves; other commands derive it from
    /// the cutoff (cutoff/2 + 1) so Hilbert functions are truncation-stable.
    #[arg(long)]
    pub winding: Option<u32>,
    /// Which twisted differential drives the Floer-side tables.
    #[arg(long, value_enum, default_value_t = Convention::Labeled)]
    pub convention: Convention,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
}

#[derive(Subcommand)]
pub enum Command {
    /// Genus and puncture counts of the cover.
    CoverInfo(CoverArgs),
    /// Per-sector graded dimension tables for all three models.
    Sectors(CoverArgs),
    /// Solve and verify the sector chain maps.
    Ks(CoverArgs),
    /// Twisted diagonal checks, sector products, convention comparison.
    Mf(CoverArgs),
    /// The full pipeline: every check of every module.
    Verify(CoverArgs),
    /// Emit the curve data of both models in the text format.
    DumpCurves(CoverArgs),
}

pub fn run(cli: Cli) -> i32 {
    let (args, kind) = match &cli.command {
        Command::CoverInfo(a) => (a, Kind::CoverInfo),
        Command::Sectors(a) => (a, Kind::Sectors),
        Command::Ks(a) => (a, Kind::Ks),
        Command::Mf(a) => (a, Kind::Mf),
        Command::Verify(a) => (a, Kind::Verify),
        Command::DumpCurves(a) => (a, Kind::DumpCurves),
    };
    let cover = match build_cover(args) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("configuration error: {}", msg);
            return 2;
        }
    };
    if args.cutoff < 3 {
        eprintln!("configuration error: cutoff must be at least 3");
        return 2;
    }
    if let Kind::DumpCurves = kind {
        let n_max = args
            .winding
            .unwrap_or((args.cutoff / 2 + 1) as u32)
            .max(1);
        print!("{}", floer::cf_complex(&cover).serialize());
        println!();
        print!("{}", amodel::sc_complex(&cover, n_max).serialize());
        return 0;
    }
    let report = build_report(&cover, args, kind);
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable report")
        ),
        Format::Markdown => print!("{}", render_markdown(&report)),
    }
    if report.verdict.starts_with("pass") {
        0
    } else {
        1
    }
}

enum Kind {
    CoverInfo,
    Sectors,
    Ks,
    Mf,
    Verify,
    DumpCurves,
}

fn build_cover(args: &CoverArgs) -> Result<CoverSpec, String> {
    let moduli = parse_group_token(&args.group).map_err(|e| e.to_string())?;
    let (group, map) = FinAbGroup::from_moduli(&moduli).map_err(|e| e.to_string())?;
    if group.rank() == 0 {
        return Ok(CoverSpec::trivial());
    }
    let parse_elem = |s: &Option<String>, name: &str| -> Result<Vec<u32>, String> {
        let raw = s
            .as_ref()
            .ok_or_else(|| format!("--{} is required for nontrivial groups", name))?;
        let parts: Result<Vec<u32>, _> = raw.split(',').map(|p| p.trim().parse()).collect();
        parts.map_err(|_| format!("cannot parse --{} {:?}", name, raw))
    };
    let ga = map
        .convert(&parse_elem(&args.ga, "ga")?)
        .map_err(|e| e.to_string())?;
    let gb = map
        .convert(&parse_elem(&args.gb, "gb")?)
        .map_err(|e| e.to_string())?;
    CoverSpec::new(group, ga, gb).map_err(|e| e.to_string())
}

fn cover_report(cover: &CoverSpec) -> Result<CoverReport, String> {
    let inv = cover.invariants().map_err(|e| e.to_string())?;
    let g = &cover.group;
    Ok(CoverReport {
        group: format!("{}", g),
        g_alpha: g.elem_string(&cover.g_alpha),
        g_beta: g.elem_string(&cover.g_beta),
        g_gamma: g.elem_string(&cover.g_gamma),
        genus: inv.genus,
        punctures: inv.punctures,
        punctures_per_end: inv.punctures_per_end,
    })
}

fn cf_sector(cover: &CoverSpec, chi: &Character, convention: Convention) -> SectorComplex {
    match convention {
        Convention::Labeled => floer::cf_complex(cover).sector(chi),
        Convention::Substituted => floer::cfkos_substituted_sector(cover, chi),
    }
}

fn fixed_variables(cover: &CoverSpec, chi: &Character) -> String {
    let names = ["x", "y", "z"];
    let vals = cover.chi_values(chi);
    let fixed: Vec<&str> = (0..3)
        .filter(|&i| vals[i].is_one())
        .map(|i| names[i])
        .collect();
    if fixed.is_empty() {
        "none".to_string()
    } else {
        fixed.join(",")
    }
}

fn build_report(cover: &CoverSpec, args: &CoverArgs, kind: Kind) -> FullReport {
    let mut checks: Vec<CheckResult> = Vec::new();
    let push = |checks: &mut Vec<CheckResult>, name: &str, pass: bool, detail: String| {
        checks.push(CheckResult {
            name: name.to_string(),
            pass,
            detail,
        });
    };
    let cutoff = args.cutoff;
    let convention_name = match args.convention {
        Convention::Labeled => "labeled",
        Convention::Substituted => "substituted",
    };
    let cover_rep = match cover_report(cover) {
        Ok(c) => c,
        Err(e) => {
            return FullReport {
                cover: CoverReport {
                    group: format!("{}", cover.group),
                    g_alpha: String::new(),
                    g_beta: String::new(),
                    g_gamma: String::new(),
                    genus: 0,
                    punctures: 0,
                    punctures_per_end: [0; 3],
                },
                cutoff,
                convention: convention_name.to_string(),
                sectors: vec![],
                mf: None,
                checks: vec![CheckResult {
                    name: "cover invariants".into(),
                    pass: false,
                    detail: e,
                }],
                verdict: "fail: cover invariants".to_string(),
            }
        }
    };

    let chars = enumerate_characters(&cover.group);
    let mut sectors: Vec<SectorReport> = Vec::new();
    let mut mf_report: Option<MfReport> = None;

    let want_sectors = matches!(kind, Kind::Sectors | Kind::Verify | Kind::Ks);
    let want_ks = matches!(kind, Kind::Ks | Kind::Verify);
    let want_mf = matches!(kind, Kind::Mf | Kind::Verify);
    let want_full = matches!(kind, Kind::Verify);

    if want_sectors {
        let cf_complex = floer::cf_complex(cover);
        if want_full {
            let ok = cf_complex.validate().is_ok() && cf_complex.d_squared_symbolic().is_ok();
            push(&mut checks, "Floer curve data: homogeneity and d^2 = 0", ok, String::new());
            let n_max = (cutoff / 2 + 1) as u32;
            let sc_complex = amodel::sc_complex(cover, n_max);
            let ok = sc_complex.validate().is_ok() && sc_complex.d_squared_symbolic().is_ok();
            push(&mut checks, "cochain model: homogeneity and d^2 = 0", ok, String::new());
        }
        for chi in &chars {
            let cf = cf_sector(cover, chi, args.convention);
            let sc_hilbert = amodel::sh_hilbert(cover, Some(chi), cutoff).unwrap_or_default();
            let cf_hilbert = cf.homology_dims(cutoff, false).unwrap_or_default();
            let kos_sector = koszul::build_sector(cover, chi);
            let kos_hilbert = kos_sector.homology_dims(cutoff, false);
            let sc_inv =
                amodel::sh_sector_invariant_hilbert(cover, chi, cutoff).unwrap_or_default();
            let cf_inv = cf.homology_dims(cutoff, true).unwrap_or_default();
            let kos_inv = kos_sector.homology_dims(cutoff, true);
            let cocycle_flags = if chi.is_trivial() {
                None
            } else {
                let labeled_sector = floer::cf_complex(cover).sector(chi);
                let sc = floer::special_cocycles(cover, chi, &labeled_sector);
                let [ca, cb, cg] = cover.chi_values(chi);
                Some(CocycleFlags {
                    p: sc.p_closed,
                    q: sc.q_closed,
                    r: sc.r_closed,
                    u: sc.u_closed,
                    v: sc.v_closed,
                    w: sc.w_closed,
                    expected_u: ca.is_one(),
                    expected_v: cb.is_one(),
                    expected_w: cg.is_one(),
                })
            };
            if want_full {
                let oracle = floer::cf_oracle_dims(cover, chi, cutoff);
                push(
                    &mut checks,
                    &format!("sector {}: Floer dims match closed forms", chi.label()),
                    cf_hilbert == oracle,
                    String::new(),
                );
                let kos_oracle: Vec<usize> = (0..=cutoff)
                    .map(|d| koszul::oracle_dim(kos_sector.shape, d))
                    .collect();
                push(
                    &mut checks,
                    &format!("sector {}: Koszul dims match oracle", chi.label()),
                    kos_hilbert == kos_oracle,
                    String::new(),
                );
                push(
                    &mut checks,
                    &format!("sector {}: Floer and Koszul dims agree", chi.label()),
                    cf_hilbert == kos_hilbert,
                    String::new(),
                );
                if let Some(f) = &cocycle_flags {
                    let ok = f.p
                        && f.q
                        && f.r
                        && f.u == f.expected_u
                        && f.v == f.expected_v
                        && f.w == f.expected_w;
                    push(
                        &mut checks,
                        &format!("sector {}: cocycle flags", chi.label()),
                        ok,
                        String::new(),
                    );
                }
            }
            let cf_differential = (0..cf.gens.len())
                .map(|g| {
                    format!(
                        "d({}) = {}",
                        cf.gens[g].name,
                        cf.diff[g].render(&cf.gens)
                    )
                })
                .collect();
            sectors.push(SectorReport {
                chi: chi.label(),
                fixed_variables: fixed_variables(cover, chi),
                cf_differential,
                sc_hilbert,
                cf_hilbert,
                kos_hilbert,
                sc_hilbert_invariant: sc_inv,
                cf_hilbert_invariant: cf_inv,
                kos_hilbert_invariant: kos_inv,
                cocycle_flags,
                ks_status: None,
            });
        }
    }

    if want_ks {
        for (i, chi) in chars.iter().enumerate() {
            match ks::solve_sector(cover, chi, cutoff) {
                Ok(sol) => {
                    let rep = ks::verify_sector(&sol, cutoff);
                    let ok = rep.chain_map_ok
                        && rep.weights_preserved
                        && rep.quasi_iso
                        && rep.invariant_quasi_iso;
                    if want_full || matches!(kind, Kind::Ks) {
                        push(
                            &mut checks,
                            &format!("sector {}: chain map is a quasi-isomorphism", chi.label()),
                            ok,
                            if ok {
                                String::new()
                            } else {
                                format!("{:?}", rep.full.iter().find(|c| !c.ok))
                            },
                        );
                    }
                    if let Some(s) = sectors.get_mut(i) {
                        s.ks_status = Some(KsStatus {
                            chain_map_ok: rep.chain_map_ok,
                            weights_preserved: rep.weights_preserved,
                            quasi_iso: rep.quasi_iso,
                            invariant_quasi_iso: rep.invariant_quasi_iso,
                            dropped_soft: rep.dropped_soft,
                        });
                    }
                }
                Err(e) => {
                    push(
                        &mut checks,
                        &format!("sector {}: chain map solve", chi.label()),
                        false,
                        e.to_string(),
                    );
                }
            }
        }
    }

    if want_full {
        // Averaging isomorphisms and sector dimension sums for both models.
        let psi_cutoff = cutoff;
        let cf_complex = floer::cf_complex(cover);
        let ok = twisted::verify_psi(&cf_complex, psi_cutoff).is_ok();
        push(&mut checks, "Floer averaging map intertwines and inverts", ok, String::new());
        let up = twisted::UpstairsComplex::new(&cf_complex)
            .homology_dims(cutoff)
            .unwrap_or_default();
        let sum = twisted::invariant_sector_dim_sum(&cf_complex, cutoff).unwrap_or_default();
        push(
            &mut checks,
            "Floer sector sum equals lifted cohomology",
            up == sum,
            String::new(),
        );
        let n_max = (cutoff / 2 + 1) as u32;
        let sc_complex = amodel::sc_complex(cover, n_max);
        let ok = twisted::verify_psi(&sc_complex, psi_cutoff).is_ok();
        push(&mut checks, "cochain averaging map intertwines and inverts", ok, String::new());
        let up = twisted::UpstairsComplex::new(&sc_complex)
            .homology_dims(cutoff)
            .unwrap_or_default();
        let sum = twisted::invariant_sector_dim_sum(&sc_complex, cutoff).unwrap_or_default();
        push(
            &mut checks,
            "cochain sector sum equals lifted cohomology",
            up == sum,
            String::new(),
        );
        // Graded-module isomorphism: invariant sums against the orbifold
        // Koszul algebra.
        let kos = koszul::orbifold_hilbert(cover, cutoff);
        push(
            &mut checks,
            "total symplectic cohomology equals orbifold Koszul algebra",
            sum == kos,
            format!("sh {:?} vs kos {:?}", sum, kos),
        );
    }

    if want_mf {
        let mut delta_squares = Vec::new();
        let mut all_ok = true;
        for chi in &chars {
            let ok = mf::build_delta(cover, chi).is_ok();
            all_ok &= ok;
            delta_squares.push(DeltaCheck {
                chi: chi.label(),
                ok,
            });
        }
        push(
            &mut checks,
            "twisted diagonals square to the potential",
            all_ok,
            String::new(),
        );
        // D^2 = 0 on basis words between the trivial sector and each sector.
        let trivial = Character::trivial(&cover.group);
        let mut hom_ok = true;
        'outer: for chi in &chars {
            for w in crate::clifford::CliffWord::all() {
                let phi = mf::HomElement {
                    source: trivial.clone(),
                    target: chi.clone(),
                    parity: w.parity(),
                    op: crate::clifford::CliffOp::from_word(w, crate::poly::Poly::one()),
                };
                let d1 = match mf::hom_diff(cover, &phi) {
                    Ok(d) => d,
                    Err(_) => {
                        hom_ok = false;
                        break 'outer;
                    }
                };
                let d2 = mf::hom_diff(cover, &d1).expect("shapes compose");
                if !d2.op.is_zero() {
                    hom_ok = false;
                    break 'outer;
                }
            }
        }
        push(&mut checks, "hom differential squares to zero", hom_ok, String::new());

        // Products in an order-2 twisted sector acting by (-1, -1, +1).
        let mut sector_products = None;
        for chi in &chars {
            let (Some(even), Some(odd)) = (
                mf::explicit_lift_theta_xy(cover, chi),
                mf::explicit_lift_theta_xyz(cover, chi),
            ) else {
                continue;
            };
            let closed = mf::hom_diff(cover, &even)
                .map(|d| d.op.is_zero())
                .unwrap_or(false)
                && mf::hom_diff(cover, &odd)
                    .map(|d| d.op.is_zero())
                    .unwrap_or(false);
            let p1 = mf::cup_from_lifts_raw(cover, &even, &even).unwrap();
            let p2 = mf::cup_from_lifts_raw(cover, &odd, &even).unwrap();
            let p3 = mf::cup_from_lifts(cover, &odd, &odd).unwrap();
            let quarter = CycNum::from_ratio(1, 4);
            let expected1 = koszul::Cochain::scalar(crate::poly::Poly::monomial(
                crate::poly::Mono::from_xyz(0, 0, 2),
                quarter.clone(),
            ));
            let mut expected2 = koszul::Cochain::word(
                0b100,
                crate::poly::Poly::monomial(crate::poly::Mono::from_xyz(0, 0, 2), quarter.clone()),
            );
            expected2.add_term(
                0b010,
                &crate::poly::Poly::monomial(crate::poly::Mono::from_xyz(0, 1, 1), quarter),
            );
            expected2.add_term(
                0b001,
                &crate::poly::Poly::monomial(
                    crate::poly::Mono::from_xyz(1, 0, 1),
                    CycNum::from_ratio(-1, 2),
                ),
            );
            let matches = p1 == expected1 && p2 == expected2 && p3.is_zero();
            push(
                &mut checks,
                &format!("sector {}: product table", chi.label()),
                closed && matches,
                String::new(),
            );
            sector_products = Some(SectorProducts {
                explicit_lifts_closed: closed,
                even_even: format!("{}", p1),
                odd_even: format!("{}", p2),
                odd_odd: format!("{}", p3),
                matches_expected: matches,
            });
            break;
        }

        let delta_matrix_rows = mf::delta_matrix_comparison(cover)
            .map(|rows| {
                rows.into_iter()
                    .map(|r| DeltaMatrixRow {
                        input: r.input,
                        output: r.output,
                        transported: r.transported,
                        matrix: r.matrix,
                        relation: r.relation,
                    })
                    .collect()
            })
            .unwrap_or_default();
        let mut convention_rows = Vec::new();
        for chi in &chars {
            for row in floer::compare_conventions(cover, chi) {
                convention_rows.push(ConventionRow {
                    sector: chi.label(),
                    input: row.input,
                    output: row.output,
                    labeled: row.labeled,
                    substituted: row.substituted,
                    relation: row.relation,
                });
            }
        }
        mf_report = Some(MfReport {
            delta_squares,
            hom_differential_squares: hom_ok,
            sector_products,
            delta_matrix_rows,
            convention_rows,
        });
    }

    if want_full {
        // Untwisted ring match through the product pipeline.
        match ks::ring_match(cutoff.min(12)) {
            Ok(rep) => push(
                &mut checks,
                "untwisted ring match",
                rep.all_ok,
                String::new(),
            ),
            Err(e) => push(&mut checks, "untwisted ring match", false, e.to_string()),
        }
    }

    let verdict = match checks.iter().find(|c| !c.pass) {
        None => "pass".to_string(),
        Some(c) => format!("fail: {}", c.name),
    };
    FullReport {
        cover: cover_rep,
        cutoff,
        convention: convention_name.to_string(),
        sectors,
        mf: mf_report,
        checks,
        verdict,
    }
}
