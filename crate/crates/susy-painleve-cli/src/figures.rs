//! Named figure configurations: each key reruns the parameter sets of one
//! catalogued figure and returns its curves plus verification results.

use crate::output::{complex_json, rows_json};
use serde_json::{json, Value};
use susy_painleve::oscillators::{Mixing, SeedParams, SystemKind};
use susy_painleve::painleve_iv::{piv_residual, PivFamily, PivSolution};
use susy_painleve::painleve_v::{pv_residual, PvSolution};
use susy_painleve::susy::ChainSpec;
use susy_painleve::{C64, Error, Result};

pub const KEYS: &[&str] = &[
    "piv-fig1",
    "piv-fig2",
    "piv-fig3",
    "piv-complex1",
    "piv-complex-param",
    "pv-fig1",
    "pv-fig-k2",
    "pv-complex1",
    "pv-complex2",
    "susy1",
    "potro",
];

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn uniform(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Run a figure key; returns the report and whether every curve passed.
pub fn run(key: &str) -> Result<(Value, bool)> {
    match key {
        "piv-fig1" => piv_real_figure(
            key,
            1,
            &[(0.25, 0.99), (0.0, 0.1), (-1.0, 0.5), (-4.0, 0.5)],
        ),
        "piv-fig2" => piv_real_figure(
            key,
            2,
            &[(0.25, 0.99), (0.25, 0.5), (-0.75, 0.5), (-2.75, 0.5)],
        ),
        "piv-fig3" => piv_real_figure(
            key,
            3,
            &[(0.25, 0.99), (0.25, 0.5), (-0.75, 0.5), (-2.75, 0.5)],
        ),
        "piv-complex1" => piv_complex_figure(
            key,
            &[
                (2, re(7.0), 1.0, 1.0, PivFamily::II),
                (1, re(2.5), 1.0, 1.0, PivFamily::III),
            ],
        ),
        "piv-complex-param" => {
            piv_complex_figure(key, &[(1, re(5.0), 2.0, 2.0, PivFamily::I)])
        }
        "pv-fig1" => pv_figure(
            key,
            &[
                (1, 1.0, re(1.0), re(0.905)),
                (1, 1.0, re(1.0), re(0.913)),
                (1, 1.0, re(1.0), re(1.0)),
                (1, 1.0, re(1.0), re(10.0)),
            ],
        ),
        "pv-fig-k2" => pv_figure(
            key,
            &[
                (2, 0.0, re(0.25), re(0.0)),
                (2, 0.0, re(-0.75), re(0.0)),
                (2, 0.0, re(-1.75), re(0.0)),
                (2, 0.0, re(-2.75), re(0.0)),
            ],
        ),
        "pv-complex1" => pv_figure(
            key,
            &[
                (1, 3.0, re(0.0), C64::new(0.0, 100.0)),
                (1, 2.0, re(2.0), C64::new(0.0, 1.0)),
            ],
        ),
        "pv-complex2" => pv_figure(
            key,
            &[
                (1, 3.0, C64::new(1.0, 11.0), C64::new(0.0, 100.0)),
                (1, 1.0, C64::new(1.0, -0.6), C64::new(1.0, -1.0)),
            ],
        ),
        "susy1" => potential_figure(
            key,
            SystemKind::Harmonic,
            &[(1, re(0.0), re(0.9))],
            (-5.0, 5.0),
        ),
        "potro" => potential_figure(
            key,
            SystemKind::Radial { j: 2.0 },
            &[
                (1, re(0.5), re(-0.59)),
                (1, re(0.5), re(-0.4)),
                (1, re(0.5), re(1.0)),
            ],
            (0.05, 10.0),
        )
        .and_then(|(mut v, mut pass)| {
            // right panel: second-order chains on j = 5
            let (v2, pass2) = potential_figure(
                "potro-right",
                SystemKind::Radial { j: 5.0 },
                &[
                    (2, re(0.0), re(1.0)),
                    (2, re(-2.0), re(1.0)),
                    (2, re(-4.0), re(1.0)),
                ],
                (0.05, 10.0),
            )?;
            let curves = v["curves"].as_array_mut().unwrap();
            curves.extend(v2["curves"].as_array().unwrap().iter().cloned());
            pass &= pass2;
            Ok((v, pass))
        }),
        _ => Err(Error::Invalid(format!(
            "unknown figure key '{key}'; known keys: {}",
            KEYS.join(", ")
        ))),
    }
}

fn piv_real_figure(key: &str, k: usize, configs: &[(f64, f64)]) -> Result<(Value, bool)> {
    let grid = uniform(-5.0, 5.0, 2001);
    let mut curves = Vec::new();
    let mut pass = true;
    for &(eps, nu) in configs {
        let chain = ChainSpec::new(SystemKind::Harmonic, k, SeedParams::real_nu(eps, nu))?;
        let sol = PivSolution::new(chain)?;
        let rows = sample_piv(&sol, &grid);
        let report = piv_residual(&sol, &grid);
        let ok = report.passes(1e-7);
        pass &= ok;
        curves.push(json!({
            "label": format!("k={k}, eps1={eps}, nu1={nu}"),
            "params": {"a": complex_json(sol.params.a), "b": complex_json(sol.params.b)},
            "verification": {
                "max_normalized_residual": report.max_normalized,
                "argmax": report.argmax,
                "samples": report.samples,
                "excluded": report.excluded,
                "tolerance": 1e-7,
                "pass": ok,
                "decay": sol.decay_check().unwrap_or(false),
            },
            "data": rows_json(&rows),
        }));
    }
    Ok((figure_value(key, "x", curves), pass))
}

fn piv_complex_figure(
    key: &str,
    configs: &[(usize, C64, f64, f64, PivFamily)],
) -> Result<(Value, bool)> {
    let grid = uniform(-5.0, 5.0, 2001);
    let scan_grid = uniform(-10.0, 10.0, 2001);
    let mut curves = Vec::new();
    let mut pass = true;
    for &(k, eps, lambda, kappa, family) in configs {
        let chain = ChainSpec::new(
            SystemKind::Harmonic,
            k,
            SeedParams {
                epsilon: eps,
                mixing: Mixing::LambdaKappa { lambda, kappa },
            },
        )?;
        let scan = chain.pole_scan(&scan_grid)?;
        let sol = PivSolution::with_family(chain, family)?;
        let rows = sample_piv(&sol, &grid);
        let report = piv_residual(&sol, &grid);
        let ok = report.passes(1e-6) && scan.passes();
        pass &= ok;
        curves.push(json!({
            "label": format!("k={k}, eps1={eps}, lambda={lambda}, kappa={kappa}, family={family:?}"),
            "params": {"a": complex_json(sol.params.a), "b": complex_json(sol.params.b)},
            "verification": {
                "max_normalized_residual": report.max_normalized,
                "argmax": report.argmax,
                "samples": report.samples,
                "excluded": report.excluded,
                "tolerance": 1e-6,
                "pole_scan_min_ratio": scan.min_ratio,
                "pole_scan_singular_points": scan.singular_points.len(),
                "pass": ok,
            },
            "data": rows_json(&rows),
        }));
    }
    Ok((figure_value(key, "x", curves), pass))
}

fn pv_figure(key: &str, configs: &[(usize, f64, C64, C64)]) -> Result<(Value, bool)> {
    let zgrid = uniform(0.01, 25.0, 2001);
    let mut curves = Vec::new();
    let mut pass = true;
    for &(k, j, eps, nu) in configs {
        let chain = ChainSpec::new(
            SystemKind::Radial { j },
            k,
            SeedParams {
                epsilon: eps,
                mixing: Mixing::Nu(nu),
            },
        )?;
        let sol = PvSolution::new(chain)?;
        let mut rows = Vec::new();
        for &z in &zgrid {
            if let Ok((w, _, _)) = sol.eval_w(z) {
                rows.push([z, w.re, w.im]);
            }
        }
        let report = pv_residual(&sol, &zgrid);
        let ok = report.passes(1e-6);
        pass &= ok;
        curves.push(json!({
            "label": format!("k={k}, j={j}, eps1={eps}, nu1={nu}"),
            "params": {
                "a": complex_json(sol.params.a),
                "b": complex_json(sol.params.b),
                "c": complex_json(sol.params.c),
                "d": complex_json(sol.params.d),
            },
            "verification": {
                "max_normalized_residual": report.max_normalized,
                "argmax": report.argmax,
                "samples": report.samples,
                "excluded": report.excluded,
                "tolerance": 1e-6,
                "pass": ok,
            },
            "data": rows_json(&rows),
        }));
    }
    Ok((figure_value(key, "z", curves), pass))
}

fn potential_figure(
    key: &str,
    system: SystemKind,
    configs: &[(usize, C64, C64)],
    bounds: (f64, f64),
) -> Result<(Value, bool)> {
    let grid = uniform(bounds.0, bounds.1, 1001);
    let mut curves = Vec::new();
    let mut pass = true;
    for &(k, eps, nu) in configs {
        let chain = ChainSpec::new(
            system,
            k,
            SeedParams {
                epsilon: eps,
                mixing: Mixing::Nu(nu),
            },
        )?;
        chain.ensure_usable()?;
        let mut rows = Vec::new();
        for &x in &grid {
            let v = chain.partner_potential(x)?;
            rows.push([x, v.re, v.im]);
        }
        // two-path agreement: Riccati chain against the Wronskian route
        let mut worst = 0.0f64;
        for &x in grid.iter().step_by(25) {
            let a = chain.partner_potential(x)?;
            let b = chain.partner_potential_via_riccati(x)?;
            worst = worst.max((a - b).norm() / (1.0 + a.norm()));
        }
        let ok = worst <= 1e-9;
        pass &= ok;
        curves.push(json!({
            "label": format!("k={k}, eps1={eps}, nu1={nu}"),
            "verification": {
                "two_path_max_relative_deviation": worst,
                "tolerance": 1e-9,
                "pass": ok,
            },
            "data": rows_json(&rows),
        }));
    }
    Ok((figure_value(key, "x", curves), pass))
}

fn sample_piv(sol: &PivSolution, grid: &[f64]) -> Vec<[f64; 3]> {
    let mut rows = Vec::new();
    for &x in grid {
        if let Ok((g, _, _)) = sol.eval(x) {
            rows.push([x, g.re, g.im]);
        }
    }
    rows
}

fn figure_value(key: &str, var: &str, curves: Vec<Value>) -> Value {
    json!({
        "meta": {"figure": key, "variable": var},
        "curves": curves,
    })
}
