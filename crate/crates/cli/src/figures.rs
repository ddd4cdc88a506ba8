//! The `trace` and `figures` subcommands.

use crate::csvio::CsvWriter;
use crate::svg;
use crate::{EXIT_IO, EXIT_OK, EXIT_USAGE};
use std::path::Path;
use wkspin_core::moduli::{trace_branch, Branch, CurveBranch};
use wkspin_core::Error;

pub const TRACE_HEADER: &str = "M,L,A,B,C,S,lambda,vol,invariant,error";

fn write_trace_csv(curve: &CurveBranch, path: &Path) -> std::io::Result<()> {
    let mut w = CsvWriter::create(path, TRACE_HEADER)?;
    for t in &curve.samples {
        match &t.sample {
            Ok(s) => {
                let mut cells: Vec<String> =
                    [s.m, s.l, s.a, s.b, s.c, s.s, s.lambda, s.vol, s.invariant]
                        .iter()
                        .map(|x| crate::csvio::fmt(*x))
                        .collect();
                cells.push(String::new());
                w.raw_row(&cells)?;
            }
            Err(e) => {
                let mut cells = vec![crate::csvio::fmt(t.m)];
                cells.extend(std::iter::repeat_n(String::new(), 8));
                cells.push(e.to_string().replace(',', ";"));
                w.raw_row(&cells)?;
            }
        }
    }
    w.finish()
}

pub fn run_trace(branch: Branch, m_min: f64, m_max: f64, samples: usize, out: &Path) -> i32 {
    let curve = match trace_branch(m_min, m_max, samples, branch) {
        Ok(c) => c,
        Err(Error::InvalidInput(msg)) => {
            eprintln!("usage error: {msg}");
            return EXIT_USAGE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match write_trace_csv(&curve, out) {
        Ok(()) => {
            let ok = curve.ok_samples().count();
            eprintln!(
                "traced branch {} over [{m_min}, {m_max}]: {ok}/{} samples -> {}",
                branch.label(),
                curve.samples.len(),
                out.display()
            );
            EXIT_OK
        }
        Err(e) => {
            eprintln!("i/o error writing {}: {e}", out.display());
            EXIT_IO
        }
    }
}

struct FigureData {
    m: Vec<f64>,
    plus: CurveBranch,
    minus: CurveBranch,
}

fn collect(m_min: f64, m_max: f64, samples: usize) -> Result<FigureData, Error> {
    let plus = trace_branch(m_min, m_max, samples, Branch::Plus)?;
    let minus = trace_branch(m_min, m_max, samples, Branch::Minus)?;
    let m = plus.samples.iter().map(|t| t.m).collect();
    Ok(FigureData { m, plus, minus })
}

fn column<F: Fn(&wkspin_core::moduli::BranchSample) -> f64>(
    curve: &CurveBranch,
    f: F,
) -> Vec<Option<f64>> {
    curve
        .samples
        .iter()
        .map(|t| t.sample.as_ref().ok().map(&f))
        .collect()
}

fn write_two_column(
    path: &Path,
    header: &str,
    m: &[f64],
    a: &[Option<f64>],
    b: &[Option<f64>],
) -> std::io::Result<()> {
    let mut w = CsvWriter::create(path, header)?;
    for i in 0..m.len() {
        w.row(&[Some(m[i]), a[i], b[i]])?;
    }
    w.finish()
}

fn write_ricci(path: &Path, m: &[f64], curve: &CurveBranch) -> std::io::Result<()> {
    let a = column(curve, |s| s.a);
    let b = column(curve, |s| s.b);
    let c = column(curve, |s| s.c);
    let mut w = CsvWriter::create(path, "M,A,B,C")?;
    for i in 0..m.len() {
        w.row(&[Some(m[i]), a[i], b[i], c[i]])?;
    }
    w.finish()
}

fn write_single(path: &Path, header: &str, m: &[f64], col: &[Option<f64>]) -> std::io::Result<()> {
    let mut w = CsvWriter::create(path, header)?;
    for i in 0..m.len() {
        w.row(&[Some(m[i]), col[i]])?;
    }
    w.finish()
}

fn emit_all(data: &FigureData, dir: &Path, render_svg: bool) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let m = &data.m;

    let l_plus = column(&data.plus, |s| s.l);
    let l_minus = column(&data.minus, |s| s.l);
    write_two_column(
        &dir.join("fig1_L.csv"),
        "M,L_plus,L_minus",
        m,
        &l_plus,
        &l_minus,
    )?;

    let s_plus = column(&data.plus, |s| s.s);
    let s_minus = column(&data.minus, |s| s.s);
    write_two_column(
        &dir.join("fig2_S.csv"),
        "M,S_plus,S_minus",
        m,
        &s_plus,
        &s_minus,
    )?;

    write_ricci(&dir.join("fig3_ricci_plus.csv"), m, &data.plus)?;
    write_ricci(&dir.join("fig4_ricci_minus.csv"), m, &data.minus)?;

    let inv_plus = column(&data.plus, |s| s.invariant);
    let inv_minus = column(&data.minus, |s| s.invariant);
    write_single(&dir.join("fig5_inv_plus.csv"), "M,invariant", m, &inv_plus)?;
    write_single(
        &dir.join("fig6_inv_minus.csv"),
        "M,invariant",
        m,
        &inv_minus,
    )?;

    if render_svg {
        svg::plot(
            &dir.join("fig1.svg"),
            "L(M) on both branches",
            m,
            &[("L_plus", &l_plus), ("L_minus", &l_minus)],
        )?;
        svg::plot(
            &dir.join("fig2.svg"),
            "scalar curvature S(M)",
            m,
            &[("S_plus", &s_plus), ("S_minus", &s_minus)],
        )?;
        let (ap, bp, cp) = (
            column(&data.plus, |s| s.a),
            column(&data.plus, |s| s.b),
            column(&data.plus, |s| s.c),
        );
        svg::plot(
            &dir.join("fig3.svg"),
            "Ricci eigenvalues, plus branch",
            m,
            &[("A", &ap), ("B", &bp), ("C", &cp)],
        )?;
        let (am, bm, cm) = (
            column(&data.minus, |s| s.a),
            column(&data.minus, |s| s.b),
            column(&data.minus, |s| s.c),
        );
        svg::plot(
            &dir.join("fig4.svg"),
            "Ricci eigenvalues, minus branch",
            m,
            &[("A", &am), ("B", &bm), ("C", &cm)],
        )?;
        svg::plot(
            &dir.join("fig5.svg"),
            "lambda^2 vol^(2/3), plus branch",
            m,
            &[("invariant", &inv_plus)],
        )?;
        svg::plot(
            &dir.join("fig6.svg"),
            "lambda^2 vol^(2/3), minus branch",
            m,
            &[("invariant", &inv_minus)],
        )?;
    }
    Ok(())
}

pub fn run_figures(dir: &Path, render_svg: bool, m_min: f64, m_max: f64, samples: usize) -> i32 {
    let data = match collect(m_min, m_max, samples) {
        Ok(d) => d,
        Err(Error::InvalidInput(msg)) => {
            eprintln!("usage error: {msg}");
            return EXIT_USAGE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match emit_all(&data, dir, render_svg) {
        Ok(()) => {
            eprintln!("figure data written to {}", dir.display());
            EXIT_OK
        }
        Err(e) => {
            eprintln!("i/o error writing {}: {e}", dir.display());
            EXIT_IO
        }
    }
}
