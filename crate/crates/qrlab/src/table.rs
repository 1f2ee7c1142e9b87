//! Data-table generation: the three published value tables (M_p and the
//! two harmonic tables) plus a combined per-prime invariants table.

use crate::classfield;
use crate::error::{Error, Result};
use crate::modcore::primes_in_range;
use crate::quartic;
use crate::verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// M_p mod p over p = 3 (mod 4).
    Mp,
    /// H^(1)_{R,(p-1)/2} mod p over p = 1 (mod 4).
    H1,
    /// H^(2)_{R,(p-1)/2} mod p over p = 3 (mod 4).
    H2,
    /// Class data, L-value and quartic data for every odd prime.
    Invariants,
}

impl TableKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "mp" => Ok(TableKind::Mp),
            "h1" => Ok(TableKind::H1),
            "h2" => Ok(TableKind::H2),
            "invariants" => Ok(TableKind::Invariants),
            _ => Err(Error::InvalidArgument(format!("unknown table name '{s}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON-lines, one object per row; the prime is numeric, everything
    /// else stays a string (units and rationals do not fit in i64).
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let mut obj = serde_json::Map::new();
            for (col, val) in self.columns.iter().zip(row) {
                if *col == "p" {
                    obj.insert(
                        (*col).into(),
                        serde_json::json!(val.parse::<u64>().unwrap()),
                    );
                } else {
                    obj.insert((*col).into(), serde_json::json!(val));
                }
            }
            out.push_str(&serde_json::Value::Object(obj).to_string());
            out.push('\n');
        }
        out
    }
}

pub fn generate_table(kind: TableKind, max_p: u64) -> Result<Table> {
    if max_p < 3 {
        return Err(Error::InvalidArgument(format!(
            "max_p must be >= 3, got {max_p}"
        )));
    }
    let primes = primes_in_range(3, max_p);
    match kind {
        TableKind::Mp => {
            let mut rows = Vec::new();
            for p in primes.into_iter().filter(|p| p % 4 == 3) {
                rows.push(vec![p.to_string(), verify::brute_mp(p)?.value.to_string()]);
            }
            Ok(Table {
                columns: vec!["p", "mp"],
                rows,
            })
        }
        TableKind::H1 => {
            let mut rows = Vec::new();
            for p in primes.into_iter().filter(|p| p % 4 == 1) {
                rows.push(vec![
                    p.to_string(),
                    verify::harmonic_sum(p, 1)?.value.to_string(),
                ]);
            }
            Ok(Table {
                columns: vec!["p", "h1"],
                rows,
            })
        }
        TableKind::H2 => {
            let mut rows = Vec::new();
            for p in primes.into_iter().filter(|p| p % 4 == 3) {
                rows.push(vec![
                    p.to_string(),
                    verify::harmonic_sum(p, 2)?.value.to_string(),
                ]);
            }
            Ok(Table {
                columns: vec!["p", "h2"],
                rows,
            })
        }
        TableKind::Invariants => {
            let columns = vec![
                "p",
                "p_mod_8",
                "A",
                "B",
                "h",
                "u",
                "v",
                "l_minus_one",
                "h_imag",
                "a",
                "b_abs",
                "c_p",
            ];
            let mut rows = Vec::new();
            for p in primes {
                let sums = classfield::residue_sums(p)?;
                let mut row = vec![
                    p.to_string(),
                    (p % 8).to_string(),
                    sums.a.to_string(),
                    sums.b.to_string(),
                ];
                if p % 4 == 1 {
                    let unit = classfield::fundamental_unit(p)?;
                    let l = classfield::l_minus_one(p)?;
                    row.push(unit.h.to_string());
                    row.push(unit.u.to_string());
                    row.push(unit.v.to_string());
                    row.push(l.l_minus1.to_string());
                    row.push(String::new());
                } else {
                    row.extend([String::new(), String::new(), String::new(), String::new()]);
                    row.push(classfield::class_number_imag(p)?.h.to_string());
                }
                if p % 8 == 1 {
                    let d = quartic::decompose(p)?;
                    row.push(d.a.to_string());
                    row.push(d.b_abs.to_string());
                    row.push(format!("{:+}", quartic::c_sign(p)?));
                } else {
                    row.extend([String::new(), String::new(), String::new()]);
                }
                rows.push(row);
            }
            Ok(Table { columns, rows })
        }
    }
}
