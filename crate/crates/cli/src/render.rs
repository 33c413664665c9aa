//! Text and JSON renderings of hierarchy trees.

use onerel::{BreakdownStep, HierarchyNode};
use serde_json::{json, Value};

fn relator_text(node: &HierarchyNode) -> String {
    let p = &node.presentation;
    p.alphabet().format_word(p.relator())
}

fn describe(node: &HierarchyNode) -> String {
    let p = &node.presentation;
    let a = p.alphabet();
    let mut s = format!(
        "{} <{} | {}>",
        node.case_name(),
        a.names().join(","),
        relator_text(node)
    );
    if !node.free_generators.is_empty() {
        s += &format!(" free factor on {}", node.free_generators.join(","));
    }
    match &node.step {
        BreakdownStep::ZeroCase(z) => {
            let ranges: Vec<String> = z
                .ranges()
                .iter()
                .map(|(g, lo, hi)| format!("{} in [{lo},{hi}]", a.name(*g)))
                .collect();
            s += &format!(" stable {}; {}", a.name(z.stable), ranges.join(", "));
        }
        BreakdownStep::NonZeroCase(e) => {
            let img = e.image_presentation().alphabet();
            let image = |g| img.format_word(&e.translate(&onerel::Word::gen(g)));
            s += &format!(
                " {} -> {}, {} -> {}",
                a.name(e.src_a),
                image(e.src_a),
                a.name(e.src_b),
                image(e.src_b)
            );
        }
        BreakdownStep::BaseSingleGen { exponent, .. } => s += &format!(" order {}", exponent.abs()),
        BreakdownStep::BaseFree => {}
    }
    s
}

pub fn hierarchy_text(root: &HierarchyNode) -> String {
    fn go(node: &HierarchyNode, indent: usize, out: &mut String) {
        out.push_str(&"  ".repeat(indent));
        out.push_str(&describe(node));
        out.push('\n');
        for c in &node.children {
            go(c, indent + 1, out);
        }
    }
    let mut out = String::new();
    go(root, 0, &mut out);
    out.push_str(&format!(
        "zero-exponent descents: {}\n",
        root.descent_depth()
    ));
    out
}

/// `{case, relator, generators, stable?, ranges?, embedding?, children}`.
pub fn hierarchy_json(node: &HierarchyNode) -> Value {
    let a = node.presentation.alphabet();
    let mut v = json!({
        "case": node.case_name(),
        "relator": relator_text(node),
        "generators": a.names(),
    });
    if !node.free_generators.is_empty() {
        v["free_generators"] = json!(node.free_generators);
    }
    match &node.step {
        BreakdownStep::ZeroCase(z) => {
            v["stable"] = json!(a.name(z.stable));
            v["ranges"] = z
                .ranges()
                .iter()
                .map(|(g, lo, hi)| json!({"generator": a.name(*g), "min": lo, "max": hi}))
                .collect();
            let base = z.base();
            v["rewritten_relator"] = json!(base.alphabet().format_word(base.relator()));
        }
        BreakdownStep::NonZeroCase(e) => {
            let img = e.image_presentation().alphabet();
            v["embedding"] = json!({
                "a": a.name(e.src_a),
                "b": a.name(e.src_b),
                "alpha": e.alpha,
                "beta": e.beta,
                "x": img.name(e.x()),
                "y": img.name(e.y()),
            });
        }
        BreakdownStep::BaseSingleGen { exponent, .. } => v["order"] = json!(exponent.abs()),
        BreakdownStep::BaseFree => {}
    }
    v["children"] = node.children.iter().map(hierarchy_json).collect();
    v
}
