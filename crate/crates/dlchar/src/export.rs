use crate::pipeline::{ClassFunction, Pipeline};
use coxdl_torus::TorusChar;
use coxdl_variety::digit_hash;
use serde_json::{json, Value};

fn rep_hash(p: &Pipeline, class: usize) -> String {
    let g = p.group().element(p.classes().reps[class]);
    let raw: Vec<u32> = g.digits.iter().map(|d| d.raw()).collect();
    format!("{:016x}", digit_hash(&[&raw]))
}

/// One JSON object per class: representative hash, size, exact coordinates and a float rendering.
pub fn character_table_json(p: &Pipeline, rows: &[(TorusChar, ClassFunction)]) -> Value {
    let classes: Vec<Value> = (0..p.classes().count())
        .map(|c| json!({ "class": c, "rep_hash": rep_hash(p, c), "size": p.classes().sizes[c] }))
        .collect();
    let chars: Vec<Value> = rows
        .iter()
        .map(|(theta, f)| {
            let values: Vec<Value> = f
                .values
                .iter()
                .map(|v| {
                    let (num, den) = v.coords();
                    let (re, im) = v.to_complex();
                    json!({ "conductor": v.conductor(), "num": num.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                            "den": den.to_string(), "approx": [re, im] })
                })
                .collect();
            json!({ "theta": theta.to_string(), "genuine": f.genuine, "values": values })
        })
        .collect();
    json!({ "spec": p.spec(), "classes": classes, "characters": chars })
}

/// A CSV table with one row per (character, class).
pub fn character_table_csv(p: &Pipeline, rows: &[(TorusChar, ClassFunction)]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theta", "class", "rep_hash", "size", "value", "re", "im"])?;
    for (theta, f) in rows {
        for (c, v) in f.values.iter().enumerate() {
            let (re, im) = v.to_complex();
            w.write_record([
                theta.to_string(),
                c.to_string(),
                rep_hash(p, c),
                p.classes().sizes[c].to_string(),
                v.to_string(),
                format!("{re:.6}"),
                format!("{im:.6}"),
            ])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}
