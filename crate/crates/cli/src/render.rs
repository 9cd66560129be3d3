use hyperarr::discriminantal::CensusReport;
use hyperarr::exactnum::format_rational;
use hyperarr::grassmannian::{PluckerTable, QuadricReportDoc, RelationCheck};
use hyperarr::partitions::PartitionEvaluation;
use hyperarr::Arrangement;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy)]
pub enum Format {
    Json,
    Table,
}

impl Format {
    pub fn emit(self, doc: &Value, table: &str) -> String {
        match self {
            Format::Json => pretty(doc),
            Format::Table => table.to_string(),
        }
    }
}

pub fn pretty(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("json value serializes");
    s.push('\n');
    s
}

fn set(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

pub fn plucker_json(t: &PluckerTable, relations: &RelationCheck) -> Value {
    let coordinates: Vec<Value> = t
        .iter()
        .map(|(idx, beta)| json!({"subset": one_based(idx), "value": format_rational(beta)}))
        .collect();
    json!({
        "n": t.n(),
        "k": t.k(),
        "coordinates": coordinates,
        "relations": {"checked": relations.checked, "hold": relations.holds()},
    })
}

pub fn plucker_table(t: &PluckerTable, relations: &RelationCheck) -> String {
    let rows: Vec<(String, String)> =
        t.iter().map(|(idx, beta)| (set(&one_based(idx)), format_rational(beta))).collect();
    let w = rows.iter().map(|(s, _)| s.len()).max().unwrap_or(0).max("subset".len());
    let mut out = format!("{:<w$}  beta\n", "subset");
    for (s, v) in rows {
        out += &format!("{s:<w$}  {v}\n");
    }
    out += &format!(
        "Plücker relations: {} checked, {}\n",
        relations.checked,
        if relations.holds() { "all hold" } else { "VIOLATED" }
    );
    out
}

pub fn census_table(r: &CensusReport) -> String {
    let mut out = format!("n = {}, k = {}, {} discriminantal hyperplanes\n", r.n, r.k, r.hyperplanes);
    out += "multiplicity  strata\n";
    let mut rows: Vec<(usize, usize)> =
        r.census.iter().map(|(m, c)| (m.parse().expect("numeric multiplicity"), *c)).collect();
    rows.sort_by_key(|r| std::cmp::Reverse(r.0));
    for (m, c) in rows {
        out += &format!("{m:>12}  {c:>6}\n");
    }
    if !r.dependent_triples.is_empty() {
        out += "multiplicity-3 strata:\n";
        for t in &r.dependent_triples {
            let parts: Vec<String> = t.iter().map(|l| format!("D{}", set(l))).collect();
            out += &format!("  {}\n", parts.join(" "));
        }
    }
    out
}

pub fn partitions_json(a: &Arrangement, evals: &[PartitionEvaluation], checked: usize) -> Value {
    let entries: Vec<Value> = evals
        .iter()
        .map(|e| {
            let doc = e.partition.to_doc();
            json!({
                "s": doc.s,
                "blocks": doc.blocks,
                "tail": doc.tail,
                "dependent": e.dependent(),
                "rank_a_t": e.rank_a_t,
                "p_t": format_rational(&e.p_t),
                "p_tilde": format_rational(&e.p_tilde),
            })
        })
        .collect();
    let dependent = evals.iter().filter(|e| e.dependent()).count();
    json!({
        "n": a.n(),
        "k": a.k(),
        "partitions": entries,
        "summary": {"checked": checked, "listed": evals.len(), "dependent": dependent},
    })
}

pub fn partitions_table(evals: &[PartitionEvaluation], checked: usize) -> String {
    let mut out = String::new();
    for e in evals {
        let doc = e.partition.to_doc();
        let blocks: Vec<String> = doc.blocks.iter().map(|b| set(b)).collect();
        let tail = if doc.tail.is_empty() { String::new() } else { format!(" tail {}", set(&doc.tail)) };
        out += &format!(
            "{}{tail}  rank {}  p_T {}  p~ {}{}\n",
            blocks.join(" "),
            e.rank_a_t,
            format_rational(&e.p_t),
            format_rational(&e.p_tilde),
            if e.dependent() { "  dependent" } else { "" }
        );
    }
    let dependent = evals.iter().filter(|e| e.dependent()).count();
    out += &format!("checked {checked}, dependent {dependent}\n");
    out
}

pub fn quadric_table(doc: &QuadricReportDoc) -> String {
    let mut out = String::new();
    for e in &doc.entries {
        let pairs: Vec<String> = e.pairing.iter().map(|p| format!("({},{})", p[0], p[1])).collect();
        out += &format!(
            "{}  {}  {}{}\n",
            set(&e.support),
            pairs.join(""),
            e.value,
            if e.vanishes { "  vanishes" } else { "" }
        );
    }
    out += &format!("checked {}, vanishing {}\n", doc.summary.checked, doc.summary.vanishing);
    out
}
