//! Output formatting for decoded trees: indented text or JSON.

use serde_json::{json, Value as Json};

use crate::decode::{DecodedValue, Node};
use crate::schema::SchemaExpr;

/// Indented text in the annotated hex-dump style: every line carries the
/// value and the half-open byte range it came from.
pub fn render_tree(schema: &SchemaExpr, value: &DecodedValue) -> String {
    let mut out = String::new();
    render_node(schema, value, "", 0, &mut out);
    out
}

fn push_line(out: &mut String, depth: usize, text: &str) {
    out.push_str(&"  ".repeat(depth));
    out.push_str(text);
    out.push('\n');
}

fn scalar_text(node: &Node) -> Option<String> {
    match node {
        Node::Unsigned(v) => Some(v.to_string()),
        Node::Signed(v) => Some(v.to_string()),
        Node::F32(v) => Some(format!("{v:?}")),
        Node::F64(v) => Some(format!("{v:?}")),
        Node::Bool(v) => Some(v.to_string()),
        Node::Str(v) => Some(format!("{v:?}")),
        _ => None,
    }
}

fn render_node(schema: &SchemaExpr, value: &DecodedValue, label: &str, depth: usize, out: &mut String) {
    let range = format!("@[{},{})", value.range.start, value.range.end);
    let prefix = if label.is_empty() {
        String::new()
    } else {
        format!("{label} ")
    };
    if let Some(text) = scalar_text(&value.node) {
        push_line(
            out,
            depth,
            &format!("{prefix}{} = {text} {range}", schema.kind_name()),
        );
        return;
    }
    match (&value.node, schema) {
        (Node::Seq { count_range, children }, SchemaExpr::Seq(elem))
        | (Node::Set { count_range, children }, SchemaExpr::Set(elem)) => {
            push_line(out, depth, &format!("{prefix}{} {range}", schema.kind_name()));
            push_line(
                out,
                depth + 1,
                &format!(
                    "count = {} @[{},{})",
                    children.len(),
                    count_range.start,
                    count_range.end
                ),
            );
            for (i, child) in children.iter().enumerate() {
                render_node(elem, child, &format!("[{i}]"), depth + 1, out);
            }
        }
        (Node::Map { count_range, entries }, SchemaExpr::Map(key, val)) => {
            push_line(out, depth, &format!("{prefix}map {range}"));
            push_line(
                out,
                depth + 1,
                &format!(
                    "count = {} @[{},{})",
                    entries.len(),
                    count_range.start,
                    count_range.end
                ),
            );
            for (i, (k, v)) in entries.iter().enumerate() {
                render_node(key, k, &format!("[{i}].key"), depth + 1, out);
                render_node(val, v, &format!("[{i}].value"), depth + 1, out);
            }
        }
        (Node::Pair(first, second), SchemaExpr::Pair(a, b)) => {
            push_line(out, depth, &format!("{prefix}pair {range}"));
            render_node(a, first, ".0", depth + 1, out);
            render_node(b, second, ".1", depth + 1, out);
        }
        (Node::Record(fields), SchemaExpr::Record(schema_fields)) => {
            push_line(out, depth, &format!("{prefix}record {range}"));
            for ((name, field), (_, field_schema)) in fields.iter().zip(schema_fields) {
                render_node(field_schema, field, &format!(".{name}"), depth + 1, out);
            }
        }
        // Decode produces nodes in lockstep with the schema, so the arms
        // above are exhaustive in practice.
        _ => push_line(out, depth, &format!("{prefix}? {range}")),
    }
}

/// Structured output with the same information as the tree.
pub fn render_json(schema: &SchemaExpr, value: &DecodedValue) -> Json {
    let range = json!([value.range.start, value.range.end]);
    let ty = schema.kind_name();
    match (&value.node, schema) {
        (Node::Unsigned(v), _) => json!({"type": ty, "range": range, "value": v}),
        (Node::Signed(v), _) => json!({"type": ty, "range": range, "value": v}),
        (Node::F32(v), _) => json!({"type": ty, "range": range, "value": float_json(*v as f64)}),
        (Node::F64(v), _) => json!({"type": ty, "range": range, "value": float_json(*v)}),
        (Node::Bool(v), _) => json!({"type": ty, "range": range, "value": v}),
        (Node::Str(v), _) => json!({"type": ty, "range": range, "value": v}),
        (Node::Seq { count_range, children }, SchemaExpr::Seq(elem))
        | (Node::Set { count_range, children }, SchemaExpr::Set(elem)) => json!({
            "type": ty,
            "range": range,
            "count": children.len(),
            "count_range": [count_range.start, count_range.end],
            "children": children.iter().map(|c| render_json(elem, c)).collect::<Vec<_>>(),
        }),
        (Node::Map { count_range, entries }, SchemaExpr::Map(key, val)) => json!({
            "type": "map",
            "range": range,
            "count": entries.len(),
            "count_range": [count_range.start, count_range.end],
            "entries": entries.iter().map(|(k, v)| json!({
                "key": render_json(key, k),
                "value": render_json(val, v),
            })).collect::<Vec<_>>(),
        }),
        (Node::Pair(first, second), SchemaExpr::Pair(a, b)) => json!({
            "type": "pair",
            "range": range,
            "first": render_json(a, first),
            "second": render_json(b, second),
        }),
        (Node::Record(fields), SchemaExpr::Record(schema_fields)) => json!({
            "type": "record",
            "range": range,
            "fields": fields.iter().zip(schema_fields).map(|((name, field), (_, fs))| json!({
                "name": name,
                "value": render_json(fs, field),
            })).collect::<Vec<_>>(),
        }),
        _ => json!({"type": "?", "range": range}),
    }
}

/// JSON numbers cannot carry NaN or infinities; those render as strings.
fn float_json(v: f64) -> Json {
    if v.is_finite() {
        json!(v)
    } else {
        json!(format!("{v:?}"))
    }
}
