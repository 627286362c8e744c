use std::f64::consts::FRAC_1_SQRT_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use probdel::analysis::{
    self, build_table1, build_table2, default_table1_grid, default_table2_grid, max_f2,
    max_f2_curve, max_f2_printed, minimax_f2, optimal_p, optimal_q, RetentionForm, SweepSpec,
    SweepVariable, PUBLISHED_TABLE1, PUBLISHED_TABLE2, TABLE1_AB, TABLE2_P,
};
use probdel::fidelity::{f1_closed, f1_printed, f2_closed_general, oracle_fidelities};
use probdel::linalg::{fidelity_pure, MATRIX_TOL, MODE1, MODE2, PSD_TOL};
use probdel::machine::ISOMETRY_TOL;
use probdel::{sampling, BlankState, Complex, DeletionMachine, MachineParams, Mode, QubitState};

use crate::args::{
    FidelityArgs, OptimizeArgs, Retention, SweepArgs, SweepVar, TableArgs, VerifyArgs,
};
use crate::record::OutputRecord;
use crate::{CliError, Outcome};

/// Closed form vs. simulation tolerance used by `verify`.
pub const ORACLE_TOL: f64 = 1e-10;
/// Amplitude pairs typed on the command line may be off by this much in
/// squared norm; they are then rescaled onto the unit sphere.
pub const INPUT_NORM_TOL: f64 = 1e-6;
/// Published values carry four decimals.
const PUBLISHED_TOL: f64 = 1e-3;

fn fmt_complex(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{},{}", z.re, z.im)
    }
}

/// Accepts a pair whose squared norm is within [`INPUT_NORM_TOL`] of one and
/// rescales it; anything further off is rejected naming `constraint`.
fn normalize_pair(
    x: Complex,
    y: Complex,
    constraint: &str,
    notes: &mut Vec<String>,
) -> Result<(Complex, Complex), CliError> {
    let n2 = x.norm_sqr() + y.norm_sqr();
    if (n2 - 1.0).abs() > INPUT_NORM_TOL {
        return Err(CliError::Usage(format!(
            "constraint {constraint} violated: squared norm is {n2}"
        )));
    }
    if (n2 - 1.0).abs() > probdel::linalg::NORM_TOL {
        notes.push(format!("{constraint}: rescaled from squared norm {n2:.12}"));
    }
    let n = n2.sqrt();
    Ok((x / n, y / n))
}

/// Random-draw checks with a caller-supplied machine constructor.
pub fn verify_with<F>(trials: usize, seed: u64, build: F) -> Outcome
where
    F: Fn(MachineParams, BlankState) -> DeletionMachine,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gram_dev = 0.0f64;
    let mut f1_dev = 0.0f64;
    let mut f2_dev = 0.0f64;
    let mut herm_dev = 0.0f64;
    let mut trace_dev = 0.0f64;
    let mut min_eig = f64::INFINITY;
    let mut failed_draws = 0usize;

    for _ in 0..trials {
        let (input, params, blank) = sampling::configuration(&mut rng);
        let machine = build(params, blank);
        gram_dev = gram_dev.max(machine.verify_isometry().max_deviation);

        let simulated = (|| -> probdel::Result<_> {
            let rho1 = machine.reduced_state(&input, Mode::Mode1)?;
            let rho2 = machine.reduced_state(&input, Mode::Mode2)?;
            let f1 = fidelity_pure(&input.to_pure(MODE1), &rho1)?;
            let f2 = fidelity_pure(&blank.to_pure(MODE2), &rho2)?;
            Ok((rho1, rho2, f1, f2))
        })();
        match simulated {
            Ok((rho1, rho2, f1, f2)) => {
                f1_dev = f1_dev.max((f1_closed(&input, params.q()) - f1).abs());
                f2_dev = f2_dev.max((f2_closed_general(&input, &params, &blank) - f2).abs());
                for rho in [&rho1, &rho2] {
                    herm_dev = herm_dev.max(rho.hermitian_deviation());
                    trace_dev = trace_dev.max((rho.trace().re - 1.0).abs());
                    min_eig = min_eig.min(rho.min_eigenvalue());
                }
            }
            Err(_) => failed_draws += 1,
        }
    }
    if trials == 0 || failed_draws == trials {
        min_eig = 0.0;
    }

    let mut record = OutputRecord::new(
        "verify",
        &[
            "trials",
            "max_gram_deviation",
            "max_f1_deviation",
            "max_f2_deviation",
            "max_hermitian_deviation",
            "max_trace_deviation",
            "min_eigenvalue",
            "failed_draws",
        ],
    );
    record.param("trials", trials).param("seed", seed);
    record.push_row(vec![
        trials as f64,
        gram_dev,
        f1_dev,
        f2_dev,
        herm_dev,
        trace_dev,
        min_eig,
        failed_draws as f64,
    ]);

    let checks = [
        (
            "isometry",
            gram_dev <= ISOMETRY_TOL,
            format!("max Gram deviation {gram_dev:e} (limit {ISOMETRY_TOL:e})"),
        ),
        (
            "simulation",
            failed_draws == 0,
            format!("{failed_draws} draws without a valid output state"),
        ),
        (
            "oracle-f1",
            f1_dev <= ORACLE_TOL,
            format!("max |F1 closed − simulated| {f1_dev:e} (limit {ORACLE_TOL:e})"),
        ),
        (
            "oracle-f2",
            f2_dev <= ORACLE_TOL,
            format!("max |F2 closed − simulated| {f2_dev:e} (limit {ORACLE_TOL:e})"),
        ),
        (
            "density-matrix",
            herm_dev <= MATRIX_TOL && trace_dev <= MATRIX_TOL && min_eig >= PSD_TOL,
            format!("Hermitian {herm_dev:e}, trace {trace_dev:e}, min eigenvalue {min_eig:e}"),
        ),
    ];
    let mut failed_check = None;
    for (name, ok, detail) in checks {
        record.note(format!(
            "{name}: {} ({detail})",
            if ok { "pass" } else { "FAIL" }
        ));
        if !ok && failed_check.is_none() {
            failed_check = Some(name.to_owned());
        }
    }
    Outcome {
        record,
        failed_check,
    }
}

pub fn verify(args: &VerifyArgs, seed: u64) -> Outcome {
    verify_with(args.trials, seed, DeletionMachine::new)
}

pub fn fidelity(args: &FidelityArgs) -> Result<OutputRecord, CliError> {
    let mut notes = Vec::new();
    let (a, b) = normalize_pair(args.a, args.b, "|a|² + |b|² = 1", &mut notes)?;
    let (p, q) = match args.q {
        Some(q) => normalize_pair(args.p, q, "|p|² + |q|² = 1", &mut notes)?,
        None => {
            let p2 = args.p.norm_sqr();
            if p2 > 1.0 + INPUT_NORM_TOL {
                return Err(CliError::Usage(format!(
                    "constraint |p|² + |q|² = 1 violated: |p|² = {p2} exceeds 1"
                )));
            }
            let q = Complex::new((1.0 - p2).max(0.0).sqrt(), 0.0);
            normalize_pair(args.p, q, "|p|² + |q|² = 1", &mut notes)?
        }
    };
    if p.norm() == 0.0 {
        return Err(probdel::Error::ZeroDeletionAmplitude.into());
    }
    let (m0, m1) = match (args.blank_m0, args.blank_m1) {
        (None, None) => (
            Complex::new(FRAC_1_SQRT_2, 0.0),
            Complex::new(FRAC_1_SQRT_2, 0.0),
        ),
        (Some(m0), Some(m1)) => normalize_pair(m0, m1, "|M0|² + |M1|² = 1", &mut notes)?,
        _ => {
            return Err(CliError::Usage(
                "--blank-m0 and --blank-m1 must be given together".into(),
            ))
        }
    };

    let input = QubitState::new(a, b)?;
    let params = MachineParams::new(p, q)?;
    let blank = BlankState::new(m0, m1)?;

    let f1 = f1_closed(&input, q);
    let f2 = f2_closed_general(&input, &params, &blank);
    let oracle = oracle_fidelities(&input, &params, &blank)?;

    let mut record = OutputRecord::new(
        "fidelity",
        &[
            "f1_closed",
            "f2_closed",
            "delta_closed",
            "f1_oracle",
            "f2_oracle",
            "delta_oracle",
            "f1_printed",
        ],
    );
    record
        .param("a", fmt_complex(a))
        .param("b", fmt_complex(b))
        .param("p", fmt_complex(p))
        .param("q", fmt_complex(q))
        .param("blank_m0", fmt_complex(m0))
        .param("blank_m1", fmt_complex(m1));
    record.push_row(vec![
        f1,
        f2,
        f2 - f1,
        oracle.f1,
        oracle.f2,
        oracle.delta,
        f1_printed(&input, q),
    ]);
    record.notes = notes;
    record.note("f1_printed uses 1 − (2 + q + q*)|a|²|b|², which disagrees with simulation whenever Re q ≠ 0");
    Ok(record)
}

pub fn sweep(args: &SweepArgs) -> Result<OutputRecord, CliError> {
    let mut notes = Vec::new();
    let (variable, lo, hi, steps) = match args.var {
        SweepVar::P => {
            let a = args.a.unwrap_or(FRAC_1_SQRT_2);
            let b = args.b.unwrap_or(FRAC_1_SQRT_2);
            let (a, b) = normalize_pair(a.into(), b.into(), "a² + b² = 1", &mut notes)?;
            (
                SweepVariable::P { a: a.re, b: b.re },
                analysis::P_GRID_MIN,
                1.0,
                1000,
            )
        }
        SweepVar::Ab => {
            let p = args
                .p
                .ok_or_else(|| CliError::Usage("--var ab needs --p".into()))?;
            (SweepVariable::Ab { p }, -0.5, 0.5, 1001)
        }
        SweepVar::A => {
            let p = args
                .p
                .ok_or_else(|| CliError::Usage("--var a needs --p".into()))?;
            (SweepVariable::A { p }, 0.0, 1.0, 1001)
        }
    };
    let retention = match args.retention {
        Retention::Simulated => RetentionForm::Simulated,
        Retention::Printed => RetentionForm::Printed,
    };
    let spec = SweepSpec::new(
        variable,
        args.min.unwrap_or(lo),
        args.max.unwrap_or(hi),
        args.steps.unwrap_or(steps),
    )?
    .with_retention(retention);
    let result = analysis::sweep(&spec)?;

    let mut record = OutputRecord::new("sweep", &["x", "f1", "f2", "delta"]);
    match spec.variable {
        SweepVariable::P { a, b } => record.param("var", "p").param("a", a).param("b", b),
        SweepVariable::Ab { p } => record.param("var", "ab").param("p", p),
        SweepVariable::A { p } => record.param("var", "a").param("p", p),
    };
    record
        .param("min", spec.grid_min)
        .param("max", spec.grid_max)
        .param("steps", spec.steps)
        .param("retention", format!("{:?}", retention).to_lowercase());
    for row in result.rows {
        record.push_row(vec![row.x, row.f1, row.f2, row.delta]);
    }
    record.notes = notes;
    if retention == RetentionForm::Printed {
        record.note("f1 uses 1 − 2a²b²(1 + q), which disagrees with simulation for q > 0");
    }
    Ok(record)
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

pub fn table(args: &TableArgs) -> Result<OutputRecord, CliError> {
    match args.which {
        1 => table1(),
        2 => table2(),
        n => Err(CliError::Usage(format!("unknown table {n}"))),
    }
}

fn table1() -> Result<OutputRecord, CliError> {
    let grid = default_table1_grid();
    let rows = build_table1(&TABLE1_AB, &grid)?;
    let mut record = OutputRecord::new(
        "table",
        &[
            "ab",
            "f2_min",
            "p_at_min",
            "min_is_limit",
            "f2_max",
            "p_at_max",
            "max_is_limit",
            "f2_sd",
            "published_f2_min",
            "published_p_at_min",
            "published_f2_max",
            "published_p_at_max",
            "published_f2_sd",
            "diff_f2_min",
            "diff_f2_max",
            "diff_p_at_max",
            "diff_f2_sd",
        ],
    );
    record
        .param("which", 1)
        .param("p_grid_min", grid.grid_min)
        .param("p_grid_max", grid.grid_max)
        .param("p_grid_steps", grid.steps);
    for (row, publ) in rows.iter().zip(PUBLISHED_TABLE1.iter()) {
        let diffs = [
            ("f2_min", row.f2_min - publ.f2_min),
            ("f2_max", row.f2_max - publ.f2_max),
            ("p_at_max", row.p_at_max - publ.p_at_max),
            ("f2_sd", row.f2_sd - publ.f2_sd),
        ];
        record.push_row(vec![
            row.ab,
            row.f2_min,
            row.p_at_min,
            flag(row.min_is_limit),
            row.f2_max,
            row.p_at_max,
            flag(row.max_is_limit),
            row.f2_sd,
            publ.f2_min,
            publ.p_at_min.unwrap_or(0.0),
            publ.f2_max,
            publ.p_at_max,
            publ.f2_sd,
            diffs[0].1,
            diffs[1].1,
            diffs[2].1,
            diffs[3].1,
        ]);
        for (name, d) in diffs {
            if d.abs() > PUBLISHED_TOL {
                record.note(format!(
                    "ab = {}: {name} differs from published value by {d:+.4e}",
                    row.ab
                ));
            }
        }
    }
    record.note(
        "limit rows (flag 1) are p → 0⁺ values obtained at q = 1; published p = ε appears as 0",
    );
    record.note("f2_sd is the population standard deviation over a uniform grid in p");
    Ok(record)
}

fn table2() -> Result<OutputRecord, CliError> {
    let grid = default_table2_grid();
    let rows = build_table2(&TABLE2_P, &grid)?;
    let mut record = OutputRecord::new(
        "table",
        &[
            "p",
            "f2_min",
            "ab_at_min",
            "min_is_symmetric",
            "f2_max",
            "ab_at_max",
            "max_is_interior",
            "published_f2_min",
            "published_ab_at_min",
            "published_f2_max",
            "published_ab_at_max",
            "published_max_is_limit",
            "diff_f2_min",
            "diff_f2_max",
            "diff_ab_at_max",
        ],
    );
    record
        .param("which", 2)
        .param("ab_grid_min", grid.grid_min)
        .param("ab_grid_max", grid.grid_max)
        .param("ab_grid_steps", grid.steps);
    for (row, publ) in rows.iter().zip(PUBLISHED_TABLE2.iter()) {
        let diffs = [
            ("f2_min", row.f2_min - publ.f2_min),
            ("f2_max", row.f2_max - publ.f2_max),
            ("ab_at_max", row.ab_at_max - publ.ab_at_max),
        ];
        record.push_row(vec![
            row.p,
            row.f2_min,
            row.ab_at_min,
            flag(row.min_is_symmetric),
            row.f2_max,
            row.ab_at_max,
            flag(row.max_is_interior),
            publ.f2_min,
            publ.ab_at_min,
            publ.f2_max,
            publ.ab_at_max,
            flag(publ.max_is_limit),
            diffs[0].1,
            diffs[1].1,
            diffs[2].1,
        ]);
        for (name, d) in diffs {
            if d.abs() > PUBLISHED_TOL {
                record.note(format!(
                    "p = {}: {name} differs from published value by {d:+.4e}",
                    row.p
                ));
            }
        }
    }
    record.note("published 1 − ε at ab = ε appears as 1 at 0 with published_max_is_limit = 1");
    Ok(record)
}

const FORMULA_NOTE: &str = "maximum uses 1 − A + A/(2(1 − 2A)) with A = (ab)²; \
     the printed 1 − A + A/(1 − 2A) exceeds 1 (column max_f2_printed_formula)";

pub fn optimize(args: &OptimizeArgs) -> Result<OutputRecord, CliError> {
    let target = &args.target;
    if let Some(ab) = target.ab {
        let q = optimal_q(ab)?;
        let mut record = OutputRecord::new(
            "optimize",
            &["ab", "q_star", "p_star", "max_f2", "max_f2_printed_formula"],
        );
        record.param("ab", ab);
        record.push_row(vec![ab, q, optimal_p(ab)?, max_f2(ab)?, max_f2_printed(ab)]);
        if q < 0.0 {
            record.note("q* < 0 lies outside the non-negative real branch; over q ∈ [0, 1] the best is p = 1");
        }
        record.note(FORMULA_NOTE);
        Ok(record)
    } else if target.minimax {
        let m = minimax_f2();
        let mut record = OutputRecord::new(
            "optimize",
            &[
                "a_star",
                "overlap_weight",
                "value",
                "grid_overlap_weight",
                "grid_value",
            ],
        );
        record.param("minimax", true);
        record.push_row(vec![
            m.a,
            m.overlap_weight,
            m.value,
            m.grid_overlap_weight,
            m.grid_value,
        ]);
        record.note(FORMULA_NOTE);
        Ok(record)
    } else if target.curve {
        let curve = max_f2_curve(args.steps)?;
        let mut record =
            OutputRecord::new("optimize", &["a", "ab", "q_star", "max_f2", "is_limit"]);
        record.param("curve", true).param("steps", args.steps);
        for pt in curve {
            record.push_row(vec![pt.a, pt.ab, pt.q_star, pt.f2_max, flag(pt.is_limit)]);
        }
        record.note(FORMULA_NOTE);
        Ok(record)
    } else {
        Err(CliError::Usage(
            "one of --ab, --minimax, --curve is required".into(),
        ))
    }
}
