use std::fmt::Write;

use itertools::Itertools;

use crate::groupoid::{FinGroup, FinGroupoid, GroupoidFunctor};

use super::{Decl, Document};

/// Canonical text of a document. Declarations are separated by blank lines;
/// groupoids list every composite of two non-identity morphisms and
/// functors list the images of non-identity morphisms only.
pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    for (i, item) in doc.items().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match &item.decl {
            Decl::Group { name, group } => write_group(&mut out, name, group),
            Decl::Groupoid { name, groupoid } => write_groupoid(&mut out, name, groupoid),
            Decl::Builtin { name, builtin, .. } => {
                let _ = writeln!(out, "builtin {name} = {}({})", builtin.ctor(), builtin.args().join(", "));
            }
            Decl::Functor { name, dom, cod, functor } => write_functor(&mut out, name, dom, cod, functor),
        }
    }
    out
}

fn write_group(out: &mut String, name: &str, group: &FinGroup) {
    let _ = writeln!(out, "group {name} {{");
    let _ = writeln!(out, "  elements {}", group.names().join(" "));
    out.push_str("  table\n");
    for row in group.rows() {
        let _ = writeln!(out, "    {}", row.iter().map(|&x| group.name(x)).join(" "));
    }
    out.push_str("}\n");
}

fn write_groupoid(out: &mut String, name: &str, g: &FinGroupoid) {
    let _ = writeln!(out, "groupoid {name} {{");
    let _ = writeln!(out, "  objects {}", g.object_names().join(" "));
    let raw = g.to_raw();
    for m in &raw.morphisms {
        let _ = writeln!(out, "  mor {} : {} -> {}", m.name, m.src, m.tgt);
    }
    for c in &raw.composites {
        let _ = writeln!(out, "  comp {} . {} = {}", c.after, c.before, c.result);
    }
    out.push_str("}\n");
}

fn write_functor(out: &mut String, name: &str, dom: &str, cod: &str, f: &GroupoidFunctor) {
    let (d, c) = (f.dom(), f.cod());
    let _ = writeln!(out, "functor {name} : {dom} -> {cod} {{");
    for a in d.objects() {
        let _ = writeln!(out, "  obj {} -> {}", d.object_name(a), c.object_name(f.obj(a)));
    }
    for m in d.non_identity_morphisms() {
        let _ = writeln!(out, "  mor {} -> {}", d.morphism_name(m), c.morphism_name(f.mor(m)));
    }
    out.push_str("}\n");
}
