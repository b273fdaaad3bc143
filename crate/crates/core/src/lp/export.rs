//! LP text in the CPLEX LP layout, and import of "name value" primal files.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::model::{LinearProgram, Relation, Sense};
use crate::error::{EccError, Result};

const TERMS_PER_LINE: usize = 8;

fn write_terms(out: &mut String, terms: impl Iterator<Item = (f64, String)>) {
    let mut count = 0;
    for (a, name) in terms {
        if a == 0.0 {
            continue;
        }
        if count > 0 && count % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if a < 0.0 { '-' } else { '+' };
        if count == 0 && sign == '+' {
            let _ = write!(out, " {} {}", a, name);
        } else {
            let _ = write!(out, " {} {} {}", sign, a.abs(), name);
        }
        count += 1;
    }
    if count == 0 {
        out.push_str(" 0");
    }
}

fn write_number(out: &mut String, x: f64) {
    if x == f64::INFINITY {
        out.push_str("+inf");
    } else if x == f64::NEG_INFINITY {
        out.push_str("-inf");
    } else {
        let _ = write!(out, "{x}");
    }
}

pub fn export_lp_text(lp: &LinearProgram) -> String {
    let mut out = String::new();
    if lp.constant != 0.0 {
        let _ = writeln!(out, "\\ objective constant {}", lp.constant);
    }
    out.push_str(match lp.sense {
        Sense::Minimize => "Minimize\n",
        Sense::Maximize => "Maximize\n",
    });
    out.push_str(" obj:");
    write_terms(
        &mut out,
        lp.objective
            .iter()
            .enumerate()
            .map(|(j, &c)| (c, lp.names[j].clone())),
    );
    out.push('\n');

    out.push_str("Subject To\n");
    for c in &lp.constraints {
        let _ = write!(out, " {}:", c.name);
        write_terms(
            &mut out,
            c.coeffs.iter().map(|&(j, a)| (a, lp.names[j].clone())),
        );
        let rel = match c.relation {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        let _ = write!(out, " {rel} ");
        write_number(&mut out, c.rhs);
        out.push('\n');
    }

    out.push_str("Bounds\n");
    for j in 0..lp.num_vars() {
        let (l, u) = (lp.lower[j], lp.upper[j]);
        let name = &lp.names[j];
        out.push(' ');
        if l == u {
            let _ = write!(out, "{name} = ");
            write_number(&mut out, l);
        } else if l == f64::NEG_INFINITY && u == f64::INFINITY {
            let _ = write!(out, "{name} free");
        } else if u == f64::INFINITY {
            let _ = write!(out, "{name} >= ");
            write_number(&mut out, l);
        } else {
            write_number(&mut out, l);
            let _ = write!(out, " <= {name} <= ");
            write_number(&mut out, u);
        }
        out.push('\n');
    }
    out.push_str("End\n");
    out
}

/// Reads whitespace separated "name value" lines into a primal vector
/// ordered like `lp`. Names absent from the file default to 0; unknown names
/// are errors. Lines starting with '#' are skipped.
pub fn import_primal(lp: &LinearProgram, text: &str) -> Result<Vec<f64>> {
    let index: HashMap<&str, usize> = lp
        .names
        .iter()
        .enumerate()
        .map(|(j, n)| (n.as_str(), j))
        .collect();
    let mut x = vec![0.0; lp.num_vars()];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let (Some(name), Some(val), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(EccError::Parse {
                line: i + 1,
                message: "expected 'name value'".into(),
            });
        };
        let j = *index.get(name).ok_or_else(|| EccError::Parse {
            line: i + 1,
            message: format!("unknown variable '{name}'"),
        })?;
        x[j] = val.parse().map_err(|_| EccError::Parse {
            line: i + 1,
            message: format!("bad value '{val}'"),
        })?;
    }
    Ok(x)
}
