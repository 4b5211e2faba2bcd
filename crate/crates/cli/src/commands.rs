use std::fs;
use std::sync::Arc;

use serde_json::{json, Value};
use trunckit::dsl::{parse, Decl, Document};
use trunckit::elim::{
    check_null, enumerate_factorizations, factor_through_pi0, factor_through_proptrunc, ElimError, PropTruncFactor,
};
use trunckit::groupoid::{enumerate_functors, EnumerationError, FinGroupoid, GroupoidFunctor, ObjId};
use trunckit::hit::{
    build_hit, descent_to_functor, enumerate_descent_data, functor_to_descent, hit_equiv_pi0, hit_is_truncated,
    restricted_induction_check, DescentData, HitError, HitGroupoid,
};
use trunckit::represent::{enumerate_representations, is_braided, represent, RepresentError};
use trunckit::trunc::{decompose, pi0};

use crate::{Cli, CommandKind, Report, Status};

/// Malformed input or a refused request. `message` is the diagnostic and
/// `detail` ends up under `payload.error`.
struct Invalid {
    message: String,
    detail: Value,
}

impl Invalid {
    fn new(kind: &str, message: impl Into<String>) -> Self {
        let message = message.into();
        Self { detail: json!({ "kind": kind, "message": message }), message }
    }
}

impl From<EnumerationError> for Invalid {
    fn from(e: EnumerationError) -> Self {
        let EnumerationError::SearchSpaceTooLarge { estimate, cap } = e;
        Self {
            message: format!("{e}; raise it with --cap"),
            detail: json!({ "kind": "search-space-too-large", "estimate": estimate, "cap": cap, "message": e.to_string() }),
        }
    }
}

impl From<HitError> for Invalid {
    fn from(e: HitError) -> Self {
        match e {
            HitError::Enumeration(e) => e.into(),
            other => Invalid::new("internal", other.to_string()),
        }
    }
}

struct Outcome {
    status: Status,
    payload: Value,
    text: Vec<String>,
}

impl Outcome {
    fn new(holds: bool, payload: Value, text: Vec<String>) -> Self {
        let status = if holds { Status::Ok } else { Status::PropertyFailed };
        Self { status, payload, text }
    }
}

type Result<T> = std::result::Result<T, Invalid>;

pub(crate) fn execute(cli: &Cli) -> Report {
    let command = cli.command.as_str().to_string();
    match load(cli).and_then(|doc| dispatch(&Ctx { cli, doc: &doc })) {
        Ok(o) => Report { command, status: o.status, payload: o.payload, text: o.text, diagnostic: None },
        Err(e) => Report {
            command,
            status: Status::InvalidInput,
            payload: json!({ "error": e.detail }),
            text: Vec::new(),
            diagnostic: Some(e.message),
        },
    }
}

fn load(cli: &Cli) -> Result<Document> {
    let path = cli.file.display();
    let text = fs::read_to_string(&cli.file).map_err(|e| Invalid::new("io", format!("{path}: {e}")))?;
    parse(&text).map_err(|e| Invalid {
        message: format!("{path}:{e}"),
        detail: json!({ "kind": e.kind(), "line": e.line(), "col": e.col(), "message": e.to_string() }),
    })
}

struct Ctx<'a> {
    cli: &'a Cli,
    doc: &'a Document,
}

impl Ctx<'_> {
    fn required<'b>(&self, flag: &str, value: &'b Option<String>) -> Result<&'b str> {
        value.as_deref().ok_or_else(|| {
            Invalid::new("usage", format!("`{}` needs --{flag} NAME", self.cli.command.as_str()))
        })
    }

    fn groupoid(&self) -> Result<(&str, &Arc<FinGroupoid>)> {
        let name = self.required("groupoid", &self.cli.groupoid)?;
        let g = self.doc.groupoid(name).map_err(|e| unknown(name, e))?;
        Ok((name, g))
    }

    fn functor(&self) -> Result<(&str, &GroupoidFunctor)> {
        let name = self.required("functor", &self.cli.functor)?;
        let f = self.doc.functor(name).map_err(|e| unknown(name, e))?;
        Ok((name, f))
    }

    /// Declared codomain name of a functor.
    fn codomain_name(&self, functor: &str) -> &str {
        self.doc
            .items()
            .iter()
            .find_map(|item| match &item.decl {
                Decl::Functor { name, cod, .. } if name == functor => Some(cod.as_str()),
                _ => None,
            })
            .unwrap_or("?")
    }
}

fn unknown(name: &str, e: impl std::fmt::Display) -> Invalid {
    Invalid {
        message: e.to_string(),
        detail: json!({ "kind": "unknown-reference", "name": name, "message": e.to_string() }),
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn object_names(g: &FinGroupoid, objects: impl IntoIterator<Item = ObjId>) -> Vec<String> {
    objects.into_iter().map(|a| g.object_name(a).to_string()).collect()
}

fn dispatch(ctx: &Ctx) -> Result<Outcome> {
    match ctx.cli.command {
        CommandKind::Validate => Ok(validate(ctx.doc)),
        CommandKind::Pi0 => components(ctx),
        CommandKind::Decompose => decomposition(ctx),
        CommandKind::Loops => loops(ctx),
        CommandKind::Null => null(ctx),
        CommandKind::Factor => match ctx.cli.n {
            0 => factor_set(ctx),
            -1 => factor_prop(ctx),
            n => Err(Invalid::new("usage", format!("--n must be 0 or -1, got {n}"))),
        },
        CommandKind::Hit => hit(ctx),
        CommandKind::HitCheck => hit_check(ctx),
        CommandKind::Descent => descent(ctx),
        CommandKind::Braided => braided(ctx),
        CommandKind::Represent => representation(ctx),
        CommandKind::Oracle => oracle(ctx),
    }
}

fn validate(doc: &Document) -> Outcome {
    let (mut groups, mut groupoids, mut functors) = (Vec::new(), Vec::new(), Vec::new());
    let mut text = Vec::new();
    for item in doc.items() {
        match &item.decl {
            Decl::Group { name, group } => {
                text.push(format!("group {name}: order {}", group.order()));
                groups.push(json!({ "name": name, "order": group.order() }));
            }
            Decl::Groupoid { name, groupoid } | Decl::Builtin { name, groupoid, .. } => {
                let (o, m) = (groupoid.object_count(), groupoid.morphism_count());
                text.push(format!("groupoid {name}: {}, {}", plural(o, "object"), plural(m, "morphism")));
                groupoids.push(json!({ "name": name, "objects": o, "morphisms": m }));
            }
            Decl::Functor { name, dom, cod, .. } => {
                text.push(format!("functor {name}: {dom} -> {cod}"));
                functors.push(json!({ "name": name, "dom": dom, "cod": cod }));
            }
        }
    }
    text.insert(
        0,
        format!(
            "valid: {}, {}, {}",
            plural(groups.len(), "group"),
            plural(groupoids.len(), "groupoid"),
            plural(functors.len(), "functor")
        ),
    );
    Outcome::new(true, json!({ "groups": groups, "groupoids": groupoids, "functors": functors }), text)
}

fn components(ctx: &Ctx) -> Result<Outcome> {
    let (name, g) = ctx.groupoid()?;
    let p = pi0(g);
    let mut text = vec![plural(p.count(), "component")];
    let comps: Vec<Value> = p
        .components()
        .map(|c| {
            let members = object_names(g, p.members(c).iter().copied());
            text.push(format!("  {c}: {}", members.join(", ")));
            json!({ "id": c.0, "rep": g.object_name(p.rep(c)), "members": members })
        })
        .collect();
    Ok(Outcome::new(true, json!({ "groupoid": name, "count": p.count(), "components": comps }), text))
}

fn decomposition(ctx: &Ctx) -> Result<Outcome> {
    let (name, g) = ctx.groupoid()?;
    let d = decompose(g);
    let equivalence = d.equivalence.check();
    let mut text = vec![format!("{} of {name}", plural(d.components.len(), "component"))];
    let comps: Vec<Value> = d
        .components
        .iter()
        .map(|c| {
            let objects = object_names(g, c.sub.objects().map(|x| c.inclusion.obj(x)));
            let rep = c.sub.objects().next().expect("components are nonempty");
            let order = c.sub.loops(rep).len();
            text.push(format!(
                "  {}: {{{}}}, {}, loop group of order {order}",
                c.id,
                objects.join(", "),
                plural(c.sub.morphism_count(), "morphism")
            ));
            json!({ "id": c.id.0, "objects": objects, "morphisms": c.sub.morphism_count(), "loop_group_order": order })
        })
        .collect();
    match &equivalence {
        Ok(()) => text.push("equivalent to the union of its components".into()),
        Err(e) => text.push(format!("equivalence check failed: {e}")),
    }
    let payload = json!({
        "groupoid": name,
        "components": comps,
        "union": { "objects": d.union.object_count(), "morphisms": d.union.morphism_count() },
        "equivalence": equivalence.is_ok(),
    });
    Ok(Outcome::new(equivalence.is_ok(), payload, text))
}

fn loops(ctx: &Ctx) -> Result<Outcome> {
    let (name, g) = ctx.groupoid()?;
    let objects: Vec<ObjId> = match &ctx.cli.object {
        Some(o) => vec![g
            .find_object(o)
            .ok_or_else(|| unknown(o, format!("unknown object `{o}` in `{name}`")))?],
        None => g.objects().collect(),
    };
    let mut text = Vec::new();
    let entries: Vec<Value> = objects
        .into_iter()
        .map(|a| {
            let elements: Vec<&str> = g.loops(a).iter().map(|&m| g.morphism_name(m)).collect();
            let abelian = g.loop_group(a).is_abelian();
            text.push(format!(
                "{}: order {}, {}: {}",
                g.object_name(a),
                elements.len(),
                if abelian { "abelian" } else { "non-abelian" },
                elements.join(", ")
            ));
            json!({ "object": g.object_name(a), "order": elements.len(), "abelian": abelian, "elements": elements })
        })
        .collect();
    Ok(Outcome::new(true, json!({ "groupoid": name, "loops": entries }), text))
}

fn not_null(e: &ElimError) -> Option<(Value, String)> {
    match e {
        ElimError::NotNull { object, loop_name, image } => Some((
            json!({ "object": object, "loop": loop_name, "image": image }),
            format!("not null: loop `{loop_name}` at `{object}` goes to `{image}`"),
        )),
        _ => None,
    }
}

fn elim_failure(e: ElimError) -> Invalid {
    match e {
        ElimError::Enumeration(e) => e.into(),
        other => Invalid::new("invalid-premise", other.to_string()),
    }
}

fn null(ctx: &Ctx) -> Result<Outcome> {
    let (name, f) = ctx.functor()?;
    match check_null(f) {
        Ok(cert) => {
            let n = cert.per_loop.len();
            let text = vec![format!("null: all {} go to identities", plural(n, "loop"))];
            Ok(Outcome::new(true, json!({ "functor": name, "null": true, "loops_checked": n }), text))
        }
        Err(e) => {
            let (cx, line) = not_null(&e).ok_or_else(|| elim_failure(e))?;
            Ok(Outcome::new(false, json!({ "functor": name, "null": false, "counterexample": cx }), vec![line]))
        }
    }
}

fn factor_set(ctx: &Ctx) -> Result<Outcome> {
    let (name, f) = ctx.functor()?;
    let (a, b) = (f.dom(), f.cod());
    let fac = match factor_through_pi0(f) {
        Ok(fac) => fac,
        Err(e) => {
            let (cx, line) = not_null(&e).ok_or_else(|| elim_failure(e))?;
            let payload = json!({ "functor": name, "n": 0, "factors": false, "counterexample": cx });
            return Ok(Outcome::new(false, payload, vec![line]));
        }
    };
    let p = &fac.through;
    let mut text = vec![format!("factors through {}", plural(p.count(), "component"))];
    let comps: Vec<Value> = p
        .components()
        .map(|c| {
            let (rep, image) = (a.object_name(p.rep(c)), b.object_name(fac.f_prime[c.0]));
            text.push(format!("  {c} (rep {rep}) -> {image}"));
            json!({ "id": c.0, "rep": rep, "image": image })
        })
        .collect();
    let witness: Vec<Value> = a
        .objects()
        .map(|x| {
            let m = b.morphism_name(fac.witness.component(x));
            text.push(format!("  witness at {}: {m}", a.object_name(x)));
            json!({ "object": a.object_name(x), "morphism": m })
        })
        .collect();
    let payload = json!({ "functor": name, "n": 0, "factors": true, "components": comps, "witness": witness });
    Ok(Outcome::new(true, payload, text))
}

/// Factoring through inhabitedness needs a set as codomain; its elements
/// are the components of the codomain groupoid.
fn factor_prop(ctx: &Ctx) -> Result<Outcome> {
    let (name, f) = ctx.functor()?;
    let (a, b) = (f.dom(), f.cod());
    if let Some((o, m)) = b
        .objects()
        .find_map(|o| b.loops(o).iter().find(|&&m| !b.is_identity(m)).map(|&m| (o, m)))
    {
        return Err(Invalid::new(
            "not-a-set",
            format!(
                "--n -1 needs a set as codomain, but `{}` has the loop `{}` at `{}`",
                ctx.codomain_name(name),
                b.morphism_name(m),
                b.object_name(o)
            ),
        ));
    }
    let pb = pi0(b);
    let element = |c: usize| b.object_name(pb.rep(trunckit::trunc::ComponentId(c))).to_string();
    let values: Vec<usize> = a.objects().map(|x| pb.proj(f.obj(x)).0).collect();
    match factor_through_proptrunc(&values, a) {
        Ok(PropTruncFactor::Value(v)) => {
            let payload = json!({ "functor": name, "n": -1, "factors": true, "value": element(v) });
            Ok(Outcome::new(true, payload, vec![format!("constant: every object goes to `{}`", element(v))]))
        }
        Ok(PropTruncFactor::Empty) => {
            let payload = json!({ "functor": name, "n": -1, "factors": true, "value": Value::Null });
            Ok(Outcome::new(true, payload, vec!["factors: the domain is empty".into()]))
        }
        Err(ElimError::NotConstant { x, y, fx, fy }) => {
            let (fx, fy) = (element(fx), element(fy));
            let line = format!("not constant: `{x}` goes to `{fx}` but `{y}` goes to `{fy}`");
            let cx = json!({ "x": x, "y": y, "fx": fx, "fy": fy });
            Ok(Outcome::new(false, json!({ "functor": name, "n": -1, "factors": false, "counterexample": cx }), vec![line]))
        }
        Err(e) => Err(elim_failure(e)),
    }
}

fn hit(ctx: &Ctx) -> Result<Outcome> {
    let (name, g) = ctx.groupoid()?;
    let h = build_hit(g);
    let c = &h.carrier;
    let arrows: Vec<Value> = c
        .non_identity_morphisms()
        .map(|m| json!({ "name": c.morphism_name(m), "src": c.object_name(c.src(m)), "tgt": c.object_name(c.tgt(m)) }))
        .collect();
    let text = vec![format!(
        "carrier of {name}: {}, {}, {}",
        plural(c.object_count(), "object"),
        plural(c.morphism_count(), "morphism"),
        plural(h.pi0.count(), "component")
    )];
    let payload = json!({
        "groupoid": name,
        "objects": c.object_count(),
        "morphisms": c.morphism_count(),
        "components": h.pi0.count(),
        "arrows": arrows,
    });
    Ok(Outcome::new(true, payload, text))
}

fn induction_rows(h: &HitGroupoid, cap: u64, text: &mut Vec<String>) -> Result<(Vec<Value>, bool)> {
    let mut rows = Vec::new();
    let mut all = true;
    for s in 1..=3 {
        let v = restricted_induction_check(h, s, cap)?;
        all &= v.holds();
        text.push(format!(
            "  |S| = {s}: {} from the carrier, {} constant on components{}",
            plural(v.functors, "map"),
            v.component_constant_maps,
            if v.holds() { "" } else { " (mismatch)" }
        ));
        rows.push(json!({
            "set_size": s,
            "functors": v.functors,
            "component_constant_maps": v.component_constant_maps,
            "holds": v.holds(),
        }));
    }
    Ok((rows, all))
}

fn hit_check(ctx: &Ctx) -> Result<Outcome> {
    let (name, g) = ctx.groupoid()?;
    let h = build_hit(g);
    let mut text = Vec::new();
    let truncated = match hit_is_truncated(&h) {
        Ok(_) => {
            text.push("carrier is a set: every loop group is trivial".into());
            json!({ "holds": true })
        }
        Err(HitError::NontrivialLoop { object, loop_name }) => {
            text.push(format!("carrier is not a set: loop `{loop_name}` at `{object}`"));
            json!({ "holds": false, "counterexample": { "object": object, "loop": loop_name } })
        }
        Err(e) => {
            text.push(format!("carrier is not a set: {e}"));
            json!({ "holds": false, "message": e.to_string() })
        }
    };
    let equivalent = hit_equiv_pi0(&h).is_valid();
    text.push(format!("equivalent to its component set: {}", if equivalent { "yes" } else { "no" }));
    text.push("maps into finite sets:".into());
    let (rows, induction) = induction_rows(&h, ctx.cli.cap, &mut text)?;
    let holds = truncated["holds"] == json!(true) && equivalent && induction;
    let payload = json!({
        "groupoid": name,
        "truncated": truncated,
        "equivalent_to_components": equivalent,
        "restricted_induction": rows,
    });
    Ok(Outcome::new(holds, payload, text))
}

fn descent(ctx: &Ctx) -> Result<Outcome> {
    let (name, f) = ctx.functor()?;
    let (a, b) = (f.dom(), f.cod());
    let h = build_hit(a);
    let data = enumerate_descent_data(&h, b, ctx.cli.cap)?;
    let maps = enumerate_functors(&h.carrier, b, ctx.cli.cap)?;
    let round_trips = data
        .iter()
        .all(|d| descent_to_functor(d, &h).and_then(|k| functor_to_descent(&k, &h)).as_ref() == Ok(d));
    let bijective = round_trips && data.len() == maps.len();
    let mut text = vec![format!(
        "{} into {}, {} out of the carrier{}",
        if data.len() == 1 { "1 descent datum".to_string() } else { format!("{} descent data", data.len()) },
        ctx.codomain_name(name),
        plural(maps.len(), "map"),
        if bijective { ", in bijection" } else { ", NOT in bijection" }
    )];
    let mut payload = json!({
        "functor": name,
        "descent_data": data.len(),
        "carrier_functors": maps.len(),
        "bijective": bijective,
    });
    let descends = match check_null(f) {
        Ok(_) => {
            let e = a
                .objects()
                .flat_map(|x| a.objects().map(move |y| (x, y)))
                .map(|(x, y)| a.hom(x, y).first().map(|&q| f.mor(q)))
                .collect();
            let d = DescentData { f: f.clone(), e };
            match descent_to_functor(&d, &h) {
                Ok(k) => {
                    let c = &h.carrier;
                    let induced: Vec<Value> = c
                        .non_identity_morphisms()
                        .map(|m| json!({ "morphism": c.morphism_name(m), "image": b.morphism_name(k.mor(m)) }))
                        .collect();
                    text.push(format!("{name} descends to the carrier"));
                    payload["induced"] = json!(induced);
                    true
                }
                Err(e) => {
                    text.push(format!("{name} does not descend: {e}"));
                    payload["message"] = json!(e.to_string());
                    false
                }
            }
        }
        Err(e) => {
            let (cx, line) = not_null(&e).ok_or_else(|| elim_failure(e))?;
            text.push(format!("{name} does not descend, {line}"));
            payload["counterexample"] = cx;
            false
        }
    };
    payload["descends"] = json!(descends);
    Ok(Outcome::new(descends && bijective, payload, text))
}

fn non_braided(e: RepresentError) -> Result<(Value, String)> {
    match e {
        RepresentError::NonBraided { object, p, q } => Ok((
            json!({ "object": object, "p": p, "q": q }),
            format!("not braided: `{p}` and `{q}` do not commute at `{object}`"),
        )),
        RepresentError::Enumeration(e) => Err(e.into()),
        other => Err(Invalid::new("internal", other.to_string())),
    }
}

fn braided(ctx: &Ctx) -> Result<Outcome> {
    let (name, g) = ctx.groupoid()?;
    match is_braided(g) {
        Ok(()) => Ok(Outcome::new(
            true,
            json!({ "groupoid": name, "braided": true }),
            vec!["braided: every loop group is abelian".into()],
        )),
        Err(e) => {
            let (cx, line) = non_braided(e)?;
            Ok(Outcome::new(false, json!({ "groupoid": name, "braided": false, "counterexample": cx }), vec![line]))
        }
    }
}

fn representation(ctx: &Ctx) -> Result<Outcome> {
    let (name, g) = ctx.groupoid()?;
    let r = match represent(g) {
        Ok(r) => r,
        Err(e) => {
            let (cx, line) = non_braided(e)?;
            let payload = json!({ "groupoid": name, "represented": false, "counterexample": cx });
            return Ok(Outcome::new(false, payload, vec![line]));
        }
    };
    let checked = r.check();
    let mut text = vec![format!("represented over {}", plural(r.pi0.count(), "component"))];
    let comps: Vec<Value> = r
        .pi0
        .components()
        .map(|c| {
            let group = &r.family[c.0];
            text.push(format!("  {c}: group of order {} on {}", group.order(), group.names().join(", ")));
            json!({ "id": c.0, "rep": g.object_name(r.pi0.rep(c)), "order": group.order(), "elements": group.names() })
        })
        .collect();
    let iso: Vec<Value> = g
        .objects()
        .map(|a| {
            let loops: Vec<&str> = r.iso[a.0].iter().map(|&m| g.morphism_name(m)).collect();
            json!({ "object": g.object_name(a), "loops": loops })
        })
        .collect();
    let equations = r.naturality_equations();
    match &checked {
        Ok(()) => text.push(format!("{} checked", plural(equations, "naturality equation"))),
        Err(e) => text.push(format!("check failed: {e}")),
    }
    let payload = json!({
        "groupoid": name,
        "represented": checked.is_ok(),
        "components": comps,
        "iso": iso,
        "naturality_equations": equations,
    });
    Ok(Outcome::new(checked.is_ok(), payload, text))
}

fn oracle(ctx: &Ctx) -> Result<Outcome> {
    if ctx.cli.functor.is_none() && ctx.cli.groupoid.is_none() {
        return Err(Invalid::new("usage", "`oracle` needs --functor NAME or --groupoid NAME"));
    }
    let mut text = Vec::new();
    let mut payload = json!({});
    let mut holds = true;
    if ctx.cli.functor.is_some() {
        let (name, f) = ctx.functor()?;
        let fg = enumerate_factorizations(f, ctx.cli.cap).map_err(elim_failure)?;
        let shape_ok = (fg.is_empty() || fg.is_contractible()) && fg.is_closed();
        holds &= shape_ok;
        text.push(format!(
            "{name}: {}, {}, {}",
            plural(fg.objects.len(), "factorization"),
            plural(fg.morphisms.len(), "isomorphism"),
            if fg.is_empty() {
                "empty"
            } else if fg.is_contractible() {
                "contractible"
            } else {
                "NOT contractible"
            }
        ));
        payload["factorizations"] = json!({
            "functor": name,
            "objects": fg.objects.len(),
            "morphisms": fg.morphisms.len(),
            "empty": fg.is_empty(),
            "contractible": fg.is_contractible(),
            "closed": fg.is_closed(),
        });
    }
    if ctx.cli.groupoid.is_some() {
        let (name, g) = ctx.groupoid()?;
        let count = enumerate_representations(g, ctx.cli.cap).map_err(|e| match e {
            RepresentError::Enumeration(e) => Invalid::from(e),
            other => Invalid::new("internal", other.to_string()),
        })?;
        let braided = is_braided(g).is_ok();
        text.push(format!(
            "{name}: {}, {}",
            plural(count as usize, "natural representation"),
            if braided { "braided" } else { "not braided" }
        ));
        text.push("maps into finite sets:".into());
        let (rows, induction) = induction_rows(&build_hit(g), ctx.cli.cap, &mut text)?;
        holds &= induction;
        payload["groupoid"] = json!({
            "groupoid": name,
            "representations": count,
            "braided": braided,
            "restricted_induction": rows,
        });
    }
    Ok(Outcome::new(holds, payload, text))
}
