use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use spalperin::bijection::{build_bijection, group_orbits, verify_equivariance};
use spalperin::blocks::{enum_blocks, enum_labels, label_count, BlockLabel, BlockwiseLabel, SymplecticPart};
use spalperin::caps::Caps;
use spalperin::error::{BijectionError, BlockError, FieldError};
use spalperin::ffpoly::FieldContext;
use spalperin::qseries::identity_suite;
use spalperin::symplectic::{for_each_scu, for_each_scu1, for_each_sct, for_each_sct_prime, ScTElement, ScUElement};

use crate::{cell, Command, Failure, LabelKind, Report, Table, MAX_COUNT_N, MAX_TRUNCATION};

pub(crate) fn execute(command: &Command, caps: Caps) -> Result<Report, Failure> {
    match command {
        Command::Identities { max_degree } => identities(*max_degree, caps),
        Command::Counts { n } => counts(*n, caps),
        Command::Divisors {
            q,
            max_degree,
            odd_order_only,
        } => divisors(*q, *max_degree, *odd_order_only, caps),
        Command::Blocks { n, q } => blocks(*n, *q, caps),
        Command::Labels { n, q, block, kind } => labels(*n, *q, *block, *kind, caps),
        Command::Orbits { n, q, block } => orbits(*n, *q, *block, caps),
        Command::Bijection { n, q, block, out } => bijection(*n, *q, *block, out.as_deref(), caps),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialise to JSON")
}

fn field_failure(e: FieldError) -> Failure {
    match e {
        FieldError::Cap { .. } => Failure::cap(e.to_string()),
        other => Failure::usage(other.to_string()),
    }
}

fn block_failure(e: BlockError) -> Failure {
    match e {
        BlockError::Field(f) => field_failure(f),
        other => Failure::usage(other.to_string()),
    }
}

fn bijection_failure(e: BijectionError) -> Failure {
    match e {
        BijectionError::Block(b) => block_failure(b),
        other => Failure::assertion(other.to_string()),
    }
}

fn unlimited(caps: &Caps) -> bool {
    *caps == Caps::unlimited()
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn identities(max_degree: usize, caps: Caps) -> Result<Report, Failure> {
    if max_degree > MAX_TRUNCATION && !unlimited(&caps) {
        return Err(Failure::cap(format!("max_degree = {max_degree} exceeds the cap {MAX_TRUNCATION}")));
    }
    let suite = identity_suite(max_degree);
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for c in &suite {
        let mut v = to_value(c);
        v["status"] = json!(status(c.passed()));
        checks.push(v);
        rows.push(vec![
            c.name.to_string(),
            c.max_degree.to_string(),
            status(c.passed()).to_string(),
            c.first_mismatch.map_or(String::new(), |d| d.to_string()),
        ]);
    }
    let failed: Vec<&str> = suite.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    Ok(Report {
        json: json!({"max_degree": max_degree, "checks": checks, "all_passed": failed.is_empty()}),
        table: Table {
            header: vec!["identity", "max_degree", "status", "first_mismatch"],
            rows,
        },
        assertion_failure: (!failed.is_empty()).then(|| format!("identities failed: {}", failed.join(", "))),
    })
}

fn counts(n: u32, caps: Caps) -> Result<Report, Failure> {
    if n > MAX_COUNT_N && !unlimited(&caps) {
        return Err(Failure::cap(format!("n = {n} exceeds the cap {MAX_COUNT_N}")));
    }
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for k in 0..=n {
        let (mut u, mut u1, mut t, mut t1) = (0u64, 0u64, 0u64, 0u64);
        for_each_scu(k, |_| u += 1);
        for_each_scu1(k, |_| u1 += 1);
        for_each_sct(k, |_| t += 1);
        for_each_sct_prime(k, |y| t1 += u64::from(y.is_symmetric()));
        let ok = u == t && u1 == t1;
        if !ok {
            bad.push(k.to_string());
        }
        entries.push(json!({"n": k, "scU": u, "scU1": u1, "scT": t, "scT1prime": t1, "status": status(ok)}));
        rows.push([u64::from(k), u, u1, t, t1].iter().map(|x| x.to_string()).chain([status(ok).to_string()]).collect());
    }
    Ok(Report {
        json: json!({"n": n, "rows": entries, "all_passed": bad.is_empty()}),
        table: Table {
            header: vec!["n", "scU", "scU1", "scT", "scT1prime", "status"],
            rows,
        },
        assertion_failure: (!bad.is_empty()).then(|| format!("counts differ at n = {}", bad.join(", "))),
    })
}

fn divisors(q: u64, max_degree: u32, odd_only: bool, caps: Caps) -> Result<Report, Failure> {
    let ctx = FieldContext::with_caps(q, caps).map_err(field_failure)?;
    let list = ctx.divisors(max_degree, odd_only).map_err(field_failure)?;
    let rows = list
        .iter()
        .map(|d| {
            vec![
                d.class().name().to_string(),
                d.poly().to_string(),
                d.degree().to_string(),
                d.delta().to_string(),
                d.eps().to_string(),
                d.alpha().to_string(),
                d.odd_red_degree().to_string(),
                d.root_order().to_string(),
            ]
        })
        .collect();
    Ok(Report {
        json: json!({
            "field": to_value(&ctx),
            "max_degree": max_degree,
            "odd_order_only": odd_only,
            "count": list.len(),
            "divisors": to_value(&list),
        }),
        table: Table {
            header: vec!["class", "poly", "d", "delta", "eps", "alpha", "odd_red_degree", "root_order"],
            rows,
        },
        assertion_failure: None,
    })
}

fn all_blocks(n: u32, q: u64, caps: Caps) -> Result<(FieldContext, Vec<Arc<BlockLabel>>), Failure> {
    let ctx = FieldContext::with_caps(q, caps).map_err(field_failure)?;
    let list = enum_blocks(&ctx, n).map_err(block_failure)?;
    Ok((ctx, list.into_iter().map(Arc::new).collect()))
}

fn one_block(n: u32, q: u64, index: usize, caps: Caps) -> Result<(FieldContext, Arc<BlockLabel>), Failure> {
    let (ctx, list) = all_blocks(n, q, caps)?;
    let count = list.len();
    let block = list
        .into_iter()
        .nth(index)
        .ok_or_else(|| Failure::usage(format!("block index {index} out of range: Sp({}, {q}) has {count} blocks", 2 * n)))?;
    Ok((ctx, block))
}

fn blocks(n: u32, q: u64, caps: Caps) -> Result<Report, Failure> {
    let (ctx, list) = all_blocks(n, q, caps)?;
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    let (mut total_brauer, mut total_weight) = (0u64, 0u64);
    for (i, b) in list.iter().enumerate() {
        let brauer = label_count::<ScUElement>(b);
        let weight = label_count::<ScTElement>(b);
        total_brauer += brauer;
        total_weight += weight;
        if brauer != weight {
            bad.push(i.to_string());
        }
        let shape = b.centralizer_shape();
        entries.push(json!({
            "index": i,
            "label": b.to_string(),
            "block": to_value(b.as_ref()),
            "centralizer": shape.to_string(),
            "centralizer_factors": to_value(&shape.factors),
            "twist_stabilizer": b.twist_stabilizer_order(),
            "brauer_count": brauer,
            "weight_count": weight,
            "agree": brauer == weight,
        }));
        rows.push(vec![
            i.to_string(),
            b.to_string(),
            b.w_x_minus_1().to_string(),
            shape.to_string(),
            brauer.to_string(),
            weight.to_string(),
            status(brauer == weight).to_string(),
        ]);
    }
    Ok(Report {
        json: json!({
            "n": n,
            "field": to_value(&ctx),
            "block_count": list.len(),
            "blocks": entries,
            "total_brauer": total_brauer,
            "total_weight": total_weight,
        }),
        table: Table {
            header: vec!["index", "label", "w_x_minus_1", "centralizer", "brauer_count", "weight_count", "status"],
            rows,
        },
        assertion_failure: (!bad.is_empty()).then(|| format!("label counts differ for blocks {}", bad.join(", "))),
    })
}

fn label_rows<S: SymplecticPart>(labels: &[BlockwiseLabel<S>]) -> (Vec<Value>, Vec<Vec<String>>) {
    let values: Vec<Value> = labels.iter().map(to_value).collect();
    let rows = values
        .iter()
        .enumerate()
        .map(|(i, v)| vec![i.to_string(), cell(&v["symplectic"]), cell(&v["gl"])])
        .collect();
    (values, rows)
}

fn labels(n: u32, q: u64, index: usize, kind: LabelKind, caps: Caps) -> Result<Report, Failure> {
    let (ctx, block) = one_block(n, q, index, caps)?;
    let (values, rows) = match kind {
        LabelKind::Brauer => label_rows(&enum_labels::<ScUElement>(&block)),
        LabelKind::Weight => label_rows(&enum_labels::<ScTElement>(&block)),
    };
    let kind_name = match kind {
        LabelKind::Brauer => "brauer",
        LabelKind::Weight => "weight",
    };
    Ok(Report {
        json: json!({
            "n": n,
            "field": to_value(&ctx),
            "block_index": index,
            "block": to_value(block.as_ref()),
            "label": block.to_string(),
            "kind": kind_name,
            "count": values.len(),
            "labels": values,
        }),
        table: Table {
            header: vec!["index", "symplectic", "gl"],
            rows,
        },
        assertion_failure: None,
    })
}

struct OrbitSummary {
    json: Value,
    rows: Vec<Vec<String>>,
}

fn orbit_summary<S: SymplecticPart>(side: &str, labels: &[BlockwiseLabel<S>], stab: u32) -> OrbitSummary {
    let orbits = group_orbits(labels, stab);
    let delta_fixed = labels.iter().filter(|x| x.act_delta() == **x).count();
    let mut sizes = std::collections::BTreeMap::<usize, usize>::new();
    let mut list = Vec::new();
    let mut rows = Vec::new();
    for (i, o) in orbits.iter().enumerate() {
        *sizes.entry(o.len()).or_default() += 1;
        let fixed = o.iter().all(|x| x.act_delta() == *x);
        let members = to_value(o);
        rows.push(vec![side.to_string(), i.to_string(), o.len().to_string(), fixed.to_string(), cell(&members)]);
        list.push(json!({"size": o.len(), "delta_fixed": fixed, "labels": members}));
    }
    let histogram: Vec<Value> = sizes.iter().map(|(s, c)| json!({"size": s, "orbits": c})).collect();
    OrbitSummary {
        json: json!({
            "labels": labels.len(),
            "delta_fixed": delta_fixed,
            "orbit_count": orbits.len(),
            "orbit_sizes": histogram,
            "orbits": list,
        }),
        rows,
    }
}

fn orbits(n: u32, q: u64, index: usize, caps: Caps) -> Result<Report, Failure> {
    let (ctx, block) = one_block(n, q, index, caps)?;
    let stab = block.twist_stabilizer_order();
    let brauer = orbit_summary("brauer", &enum_labels::<ScUElement>(&block), stab);
    let weight = orbit_summary("weight", &enum_labels::<ScTElement>(&block), stab);
    let mut rows = brauer.rows;
    rows.extend(weight.rows);
    Ok(Report {
        json: json!({
            "n": n,
            "field": to_value(&ctx),
            "block_index": index,
            "block": to_value(block.as_ref()),
            "label": block.to_string(),
            "twist_stabilizer": stab,
            "brauer": brauer.json,
            "weight": weight.json,
        }),
        table: Table {
            header: vec!["side", "orbit", "size", "delta_fixed", "labels"],
            rows,
        },
        assertion_failure: None,
    })
}

fn bijection(
    n: u32,
    q: u64,
    index: Option<usize>,
    out: Option<&std::path::Path>,
    caps: Caps,
) -> Result<Report, Failure> {
    let (ctx, selected) = match index {
        Some(i) => {
            let (ctx, b) = one_block(n, q, i, caps)?;
            (ctx, vec![(i, b)])
        }
        None => {
            let (ctx, list) = all_blocks(n, q, caps)?;
            (ctx, list.into_iter().enumerate().collect())
        }
    };
    let mut full = Vec::new();
    let mut summaries = Vec::new();
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (i, block) in &selected {
        let pairing = build_bijection(block).map_err(bijection_failure)?;
        let report = verify_equivariance(&pairing);
        if !report.passed() {
            bad.push(i.to_string());
        }
        for p in pairing.pairs() {
            let (b, w) = (to_value(&p.brauer), to_value(&p.weight));
            rows.push(vec![
                i.to_string(),
                cell(&b["symplectic"]),
                cell(&b["gl"]),
                cell(&w["symplectic"]),
                cell(&w["gl"]),
            ]);
        }
        let report = to_value(&report);
        summaries.push(json!({"index": i, "label": block.to_string(), "report": report}));
        full.push(json!({"index": i, "label": block.to_string(), "pairing": to_value(&pairing), "report": report}));
    }
    let all_passed = bad.is_empty();
    let document = json!({
        "n": n,
        "field": to_value(&ctx),
        "blocks": full,
        "all_passed": all_passed,
    });
    let json = match out {
        Some(path) => {
            let mut doc = document;
            doc["schema_version"] = json!(crate::SCHEMA_VERSION);
            doc["command"] = json!("bijection");
            std::fs::write(path, crate::pretty(&doc))
                .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
            json!({
                "n": n,
                "field": to_value(&ctx),
                "blocks": summaries,
                "all_passed": all_passed,
                "out": path.display().to_string(),
            })
        }
        None => document,
    };
    Ok(Report {
        json,
        table: Table {
            header: vec!["block", "brauer_symplectic", "brauer_gl", "weight_symplectic", "weight_gl"],
            rows,
        },
        assertion_failure: (!all_passed).then(|| format!("equivariance checks failed for blocks {}", bad.join(", "))),
    })
}
