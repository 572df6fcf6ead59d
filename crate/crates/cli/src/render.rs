//! Text, JSON and CSV renderings of invariant reports.

use std::fmt::Write;

use knotinv::obstructions::InvariantReport;

use crate::TableFormat;

pub fn text(r: &InvariantReport) -> String {
    let mut s = String::new();
    let opt = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
    let _ = writeln!(s, "name: {}", r.name);
    let _ = writeln!(s, "source: {}", r.source);
    let _ = writeln!(s, "jones: {}", r.jones);
    let _ = writeln!(s, "alexander: {}", r.alexander);
    let _ = writeln!(s, "conway: {}", r.conway);
    let _ = writeln!(s, "a2: {}", r.a2);
    let _ = writeln!(s, "a4: {}", r.a4);
    let _ = writeln!(s, "v2: {}", r.v2);
    let _ = writeln!(s, "v3: {}", r.v3);
    let _ = writeln!(s, "w3: {}", r.w3);
    let _ = writeln!(s, "big_o: {}", r.big_o);
    let _ = writeln!(s, "chirally cosmetic: {}", r.chirally_verdict());
    let _ = writeln!(s, "purely cosmetic: {}", r.purely_verdict());
    let _ = writeln!(s, "unknot parameters: {}", opt(r.is_unknot_parameters));
    if let Some(ok) = r.triviality_consistent {
        let _ = writeln!(s, "triviality consistent: {ok}");
    }
    s
}

pub fn json(r: &InvariantReport) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize")
}

pub const CSV_HEADER: [&str; 13] =
    ["name", "r", "n", "a2", "a4", "v2", "v3", "w3", "big_o", "chirally", "purely", "jones", "alexander"];

pub fn table(reports: &[InvariantReport], format: TableFormat) -> Result<String, csv::Error> {
    match format {
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            Ok(s)
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in reports {
                let (rr, nn) = r.family_parameters().map_or((String::new(), String::new()), |(r, n)| {
                    (r.to_string(), n.to_string())
                });
                w.write_record([
                    r.name.clone(),
                    rr,
                    nn,
                    r.a2.to_string(),
                    r.a4.to_string(),
                    r.v2.to_string(),
                    r.v3.to_string(),
                    r.w3.to_string(),
                    r.big_o.to_string(),
                    r.chirally_verdict().to_string(),
                    r.purely_verdict().to_string(),
                    r.jones.to_string(),
                    r.alexander.to_string(),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn summary(reports: &[InvariantReport]) -> String {
    let count = |f: &dyn Fn(&InvariantReport) -> bool| reports.iter().filter(|r| f(r)).count();
    let chir = count(&|r| r.chirally_obstructed);
    let pure = count(&|r| r.purely_obstructed);
    let total = reports.len();
    format!(
        "{total} rows; chirally cosmetic: {chir} OBSTRUCTED, {} INCONCLUSIVE; purely cosmetic: {pure} OBSTRUCTED, {} INCONCLUSIVE",
        total - chir,
        total - pure
    )
}
