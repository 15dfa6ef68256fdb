//! Gnuplot scripts that render the standard figures from a sweep CSV.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sweep::BOUNDARY_MODE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureKind {
    /// Work and efficiency against `J`, with the two-spin-1/2 bound dashed.
    Fig1,
    /// Efficiency against work.
    Fig2,
    /// Work and efficiency out to strong coupling.
    Fig3,
    /// Local works against `J`.
    Fig4,
    /// Local works at strong coupling.
    Fig5,
    /// Spin-1/2 temperatures against `s` at fixed `J`.
    Fig6,
}

impl FromStr for FigureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fig1" => Ok(Self::Fig1),
            "fig2" => Ok(Self::Fig2),
            "fig3" => Ok(Self::Fig3),
            "fig4" => Ok(Self::Fig4),
            "fig5" => Ok(Self::Fig5),
            "fig6" => Ok(Self::Fig6),
            _ => Err(Error::UnknownFigure(s.to_string())),
        }
    }
}

struct CsvInfo {
    param: String,
    spins: Vec<String>,
    x_values: Vec<String>,
}

fn inspect_csv(text: &str) -> Result<CsvInfo> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty CSV".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    let expected = crate::sweep::csv_header(crate::sweep::SweptParam::J);
    let expected: Vec<&str> = expected.split(',').collect();
    let param_ok = cols.get(1).is_some_and(|p| ["J", "B2", "T2"].contains(p));
    if cols.len() != expected.len() || !param_ok || cols[0] != "s" || cols[2..] != expected[2..] {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    let mut spins: Vec<String> = Vec::new();
    let mut x_values: Vec<String> = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 8 || fields[7] == BOUNDARY_MODE {
            continue;
        }
        if !spins.iter().any(|s| s == fields[0]) {
            spins.push(fields[0].to_string());
        }
        if !x_values.iter().any(|x| x == fields[1]) {
            x_values.push(fields[1].to_string());
        }
    }
    Ok(CsvInfo { param: cols[1].to_string(), spins, x_values })
}

/// Builds the script text. `csv_path` must hold a sweep CSV.
pub fn emit_plot_script(csv_path: &Path, kind: FigureKind) -> Result<String> {
    let text = std::fs::read_to_string(csv_path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", csv_path.display())))?;
    let info = inspect_csv(&text)?;
    let csv = csv_path.display().to_string().replace('\'', "''");
    let mut out = String::new();
    let _ = writeln!(out, "# gnuplot script generated by spinotto");
    let _ = writeln!(out, "set datafile separator ','");
    let _ = writeln!(out, "set datafile missing 'nan'");
    let _ = writeln!(out, "set datafile columnheaders");
    let _ = writeln!(out, "csv = '{csv}'");
    let _ = writeln!(out, "grid_row(m) = (m ne '{BOUNDARY_MODE}')");

    let x = format!("column('{}')", info.param);
    let per_spin = |col: &str, xexpr: &str, title_prefix: &str| -> String {
        info.spins
            .iter()
            .map(|s| {
                format!(
                    "csv using ({xexpr}):((column('s') == {s} && grid_row(strcol('mode'))) ? column('{col}') : 1/0) \
                     with lines title '{title_prefix}s={s}'"
                )
            })
            .collect::<Vec<_>>()
            .join(", \\\n     ")
    };

    match kind {
        FigureKind::Fig1 | FigureKind::Fig3 => {
            let _ = writeln!(out, "set multiplot layout 2,1");
            let _ = writeln!(out, "set xlabel '{}'\nset ylabel 'W'", info.param);
            let _ = writeln!(out, "plot {}", per_spin("W", &x, ""));
            let _ = writeln!(out, "set ylabel 'eta'");
            let mut eta = per_spin("eta", &x, "");
            if kind == FigureKind::Fig1 {
                let _ = write!(
                    eta,
                    ", \\\n     csv using ({x}):((column('s') == 0.5 && grid_row(strcol('mode'))) ? column('eta_bound') : 1/0) \
                     with lines dashtype 2 title 'eta_b'"
                );
            }
            let _ = writeln!(out, "plot {eta}");
            let _ = writeln!(out, "unset multiplot");
        }
        FigureKind::Fig2 => {
            let _ = writeln!(out, "set xlabel 'W'\nset ylabel 'eta'");
            let _ = writeln!(out, "plot {}", per_spin("eta", "column('W')", ""));
        }
        FigureKind::Fig4 | FigureKind::Fig5 => {
            let _ = writeln!(out, "set multiplot layout 2,1");
            let _ = writeln!(out, "set xlabel '{}'\nset ylabel 'w_A'", info.param);
            let _ = writeln!(out, "plot {}", per_spin("wA", &x, ""));
            let _ = writeln!(out, "set ylabel 'w_B'");
            let _ = writeln!(out, "plot {}", per_spin("wB", &x, ""));
            let _ = writeln!(out, "unset multiplot");
        }
        FigureKind::Fig6 => {
            let _ = writeln!(out, "set xlabel 's'\nset ylabel 'T_A'");
            let _ = writeln!(out, "set multiplot layout {},1", info.x_values.len().max(1));
            for xv in &info.x_values {
                let sel = format!("(abs({x} - {xv}) <= 1e-12 * (1 + abs({xv})) && grid_row(strcol('mode')))");
                let _ = writeln!(out, "set title '{} = {xv}'", info.param);
                let _ = writeln!(
                    out,
                    "plot csv using (column('s')):({sel} ? column('TA_hot') : 1/0) with linespoints title 'T_A^H', \\\n     \
                     csv using (column('s')):({sel} ? column('TA_cold') : 1/0) with linespoints title 'T_A^L'"
                );
            }
            let _ = writeln!(out, "unset multiplot");
        }
    }
    Ok(out)
}
