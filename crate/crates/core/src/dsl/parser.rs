use std::collections::HashMap;
use std::sync::Arc;

use crate::groupoid::{
    identity_name, validate_groupoid, FinGroup, FinGroupoid, GroupError, GroupoidError, GroupoidFunctor, MorId, ObjId,
    RawGroupoid,
};

use super::error::{ParseError, ValidationError};
use super::lexer::{tokenize, Keyword, Tok, Token};
use super::{Builtin, BuiltinFailure, Decl, Document, Kind, Location, MAX_GROUP_ORDER, MAX_MORPHISMS};

/// Parses a whole document. Every declaration is validated as soon as it is
/// read, so later declarations can only see well-formed values.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, doc: Document::new() };
    parser.document()?;
    Ok(parser.doc)
}

#[derive(Clone, Debug)]
struct Spanned {
    text: String,
    at: Location,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    doc: Document,
}

fn loc(t: &Token) -> Location {
    Location { line: t.line, col: t.col }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::Syntax { line: t.line, col: t.col, expected: expected.to_string(), found: t.tok.to_string() }
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn keyword(&mut self, k: Keyword) -> Result<Token, ParseError> {
        self.expect(Tok::Kw(k))
    }

    fn name(&mut self, what: &str) -> Result<Spanned, ParseError> {
        match &self.peek().tok {
            Tok::Name(n) => {
                let text = n.clone();
                let at = loc(&self.bump());
                Ok(Spanned { text, at })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn names(&mut self, what: &str) -> Result<Vec<Spanned>, ParseError> {
        let mut out = vec![self.name(what)?];
        while matches!(self.peek().tok, Tok::Name(_)) {
            out.push(self.name(what)?);
        }
        Ok(out)
    }

    fn document(&mut self) -> Result<(), ParseError> {
        loop {
            let start = loc(self.peek());
            let decl = match self.peek().tok {
                Tok::Eof => return Ok(()),
                Tok::Kw(Keyword::Group) => self.group()?,
                Tok::Kw(Keyword::Groupoid) => self.groupoid()?,
                Tok::Kw(Keyword::Builtin) => self.builtin()?,
                Tok::Kw(Keyword::Functor) => self.functor()?,
                _ => return Err(self.unexpected("`group`, `groupoid`, `builtin` or `functor`")),
            };
            self.doc.insert(decl, start).expect("duplicates are rejected while parsing");
        }
    }

    fn fresh(&self, name: &Spanned, kind: Kind) -> Result<(), ParseError> {
        if self.doc.contains(&name.text, kind) {
            return Err(ParseError::DuplicateName {
                name: name.text.clone(),
                what: kind.as_str(),
                line: name.at.line,
                col: name.at.col,
            });
        }
        Ok(())
    }

    fn lookup_groupoid(&self, name: &Spanned) -> Result<Arc<FinGroupoid>, ParseError> {
        self.doc.groupoid(&name.text).cloned().map_err(|_| unknown(name, "groupoid"))
    }

    fn group(&mut self) -> Result<Decl, ParseError> {
        self.keyword(Keyword::Group)?;
        let name = self.name("a group name")?;
        self.fresh(&name, Kind::Group)?;
        self.expect(Tok::LBrace)?;
        self.keyword(Keyword::Elements)?;
        let elements = self.names("an element name")?;
        if let Some(extra) = elements.get(MAX_GROUP_ORDER) {
            return Err(too_large("group order", MAX_GROUP_ORDER, extra.at));
        }
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.text.as_str(), i).is_some() {
                let source = GroupError::DuplicateName(e.text.clone()).into();
                return Err(invalid(&name, e.at, source));
            }
        }
        self.keyword(Keyword::Table)?;
        let n = elements.len();
        let mut rows = vec![Vec::with_capacity(n); n];
        for i in 0..n * n {
            let entry = self.name("a table entry")?;
            let &value = index.get(entry.text.as_str()).ok_or_else(|| unknown(&entry, "element"))?;
            rows[i / n].push(value);
        }
        self.expect(Tok::RBrace)?;
        let names = elements.into_iter().map(|e| e.text).collect();
        let group = FinGroup::from_table(names, rows).map_err(|e| invalid(&name, name.at, e.into()))?;
        Ok(Decl::Group { name: name.text, group })
    }

    fn groupoid(&mut self) -> Result<Decl, ParseError> {
        self.keyword(Keyword::Groupoid)?;
        let name = self.name("a groupoid name")?;
        self.fresh(&name, Kind::Groupoid)?;
        self.expect(Tok::LBrace)?;
        self.keyword(Keyword::Objects)?;
        let objects = self.names("an object name")?;

        let mut raw = RawGroupoid::new();
        let mut morphism_names: HashMap<String, Location> = HashMap::new();
        let mut object_names: HashMap<&str, Location> = HashMap::new();
        for o in &objects {
            if object_names.insert(&o.text, o.at).is_some() {
                return Err(invalid(&name, o.at, GroupoidError::DuplicateName(o.text.clone()).into()));
            }
            morphism_names.insert(identity_name(&o.text), o.at);
            raw.object(o.text.clone());
        }

        let mut comps: Vec<[Spanned; 3]> = Vec::new();
        loop {
            match self.peek().tok {
                Tok::Kw(Keyword::Mor) => {
                    self.bump();
                    let m = self.name("a morphism name")?;
                    self.expect(Tok::Colon)?;
                    let src = self.name("an object name")?;
                    self.expect(Tok::Arrow)?;
                    let tgt = self.name("an object name")?;
                    for end in [&src, &tgt] {
                        if !object_names.contains_key(end.text.as_str()) {
                            return Err(unknown(end, "object"));
                        }
                    }
                    if morphism_names.contains_key(&m.text) {
                        return Err(invalid(&name, m.at, GroupoidError::DuplicateName(m.text.clone()).into()));
                    }
                    if morphism_names.len() >= MAX_MORPHISMS {
                        return Err(too_large("morphism count", MAX_MORPHISMS, m.at));
                    }
                    morphism_names.insert(m.text.clone(), m.at);
                    raw.morphism(m.text, src.text, tgt.text);
                }
                Tok::Kw(Keyword::Comp) => {
                    self.bump();
                    let g = self.name("a morphism name")?;
                    self.expect(Tok::Dot)?;
                    let f = self.name("a morphism name")?;
                    self.expect(Tok::Equals)?;
                    let h = self.name("a morphism name")?;
                    comps.push([g, f, h]);
                }
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                _ => return Err(self.unexpected("`mor`, `comp` or `}`")),
            }
        }
        if objects.len() > MAX_MORPHISMS {
            return Err(too_large("morphism count", MAX_MORPHISMS, objects[MAX_MORPHISMS].at));
        }

        // composites may mention morphisms declared further down the block
        for [g, f, h] in &comps {
            for m in [g, f, h] {
                if !morphism_names.contains_key(&m.text) {
                    return Err(unknown(m, "morphism"));
                }
            }
            raw.composite(g.text.clone(), f.text.clone(), h.text.clone());
        }
        let groupoid = validate_groupoid(&raw).map_err(|e| {
            let at = blame(&e, &comps, &morphism_names).unwrap_or(name.at);
            invalid(&name, at, e.into())
        })?;
        Ok(Decl::Groupoid { name: name.text, groupoid: Arc::new(groupoid) })
    }

    fn builtin(&mut self) -> Result<Decl, ParseError> {
        self.keyword(Keyword::Builtin)?;
        let name = self.name("a groupoid name")?;
        self.fresh(&name, Kind::Groupoid)?;
        self.expect(Tok::Equals)?;
        let ctor = self.name("`discrete`, `codiscrete`, `delooping`, `union` or `product`")?;
        self.expect(Tok::LParen)?;
        let mut refs: Vec<Spanned> = Vec::new();
        let builtin = match ctor.text.as_str() {
            "discrete" => Builtin::Discrete(self.count(ctor.at)?),
            "codiscrete" => Builtin::Codiscrete(self.count(ctor.at)?),
            "delooping" => {
                let g = self.name("a group name")?;
                refs.push(g.clone());
                Builtin::Delooping(g.text)
            }
            "union" => {
                let mut parts = vec![self.name("a groupoid name")?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    parts.push(self.name("a groupoid name")?);
                }
                refs.extend(parts.iter().cloned());
                Builtin::Union(parts.into_iter().map(|p| p.text).collect())
            }
            "product" => {
                let a = self.name("a groupoid name")?;
                self.expect(Tok::Comma)?;
                let b = self.name("a groupoid name")?;
                refs.extend([a.clone(), b.clone()]);
                Builtin::Product(a.text, b.text)
            }
            _ => {
                return Err(ParseError::Syntax {
                    line: ctor.at.line,
                    col: ctor.at.col,
                    expected: "`discrete`, `codiscrete`, `delooping`, `union` or `product`".into(),
                    found: format!("`{}`", ctor.text),
                })
            }
        };
        self.expect(Tok::RParen)?;

        let groupoid = builtin.evaluate(&self.doc).map_err(|e| match e {
            BuiltinFailure::Unknown { name: missing, kind } => {
                let at = refs.iter().find(|r| r.text == missing).map_or(ctor.at, |r| r.at);
                ParseError::UnknownReference { name: missing, what: kind.as_str(), line: at.line, col: at.col }
            }
            BuiltinFailure::TooLarge { what, limit } => too_large(&what, limit, ctor.at),
            BuiltinFailure::Invalid(source) => invalid(&name, name.at, source),
        })?;
        Ok(Decl::Builtin { name: name.text, builtin, groupoid: Arc::new(groupoid) })
    }

    fn count(&mut self, ctor: Location) -> Result<usize, ParseError> {
        let arg = self.name("a non-negative integer")?;
        if !arg.text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::Syntax {
                line: arg.at.line,
                col: arg.at.col,
                expected: "a non-negative integer".into(),
                found: format!("`{}`", arg.text),
            });
        }
        arg.text.parse().map_err(|_| too_large("size argument", MAX_MORPHISMS, ctor))
    }

    fn functor(&mut self) -> Result<Decl, ParseError> {
        self.keyword(Keyword::Functor)?;
        let name = self.name("a functor name")?;
        self.fresh(&name, Kind::Functor)?;
        self.expect(Tok::Colon)?;
        let dom_name = self.name("a groupoid name")?;
        let dom = self.lookup_groupoid(&dom_name)?;
        self.expect(Tok::Arrow)?;
        let cod_name = self.name("a groupoid name")?;
        let cod = self.lookup_groupoid(&cod_name)?;
        self.expect(Tok::LBrace)?;

        let mut obj_map: Vec<Option<ObjId>> = vec![None; dom.object_count()];
        let mut mor_map: Vec<Option<MorId>> = vec![None; dom.morphism_count()];
        loop {
            match self.peek().tok {
                Tok::Kw(Keyword::Obj) => {
                    self.bump();
                    let a = self.name("an object name")?;
                    self.expect(Tok::Arrow)?;
                    let b = self.name("an object name")?;
                    let src = dom.find_object(&a.text).ok_or_else(|| unknown(&a, "object"))?;
                    let tgt = cod.find_object(&b.text).ok_or_else(|| unknown(&b, "object"))?;
                    if obj_map[src.0].replace(tgt).is_some() {
                        let msg = format!("object `{}` is mapped twice", a.text);
                        return Err(invalid(&name, a.at, ValidationError::Incomplete(msg)));
                    }
                }
                Tok::Kw(Keyword::Mor) => {
                    self.bump();
                    let m = self.name("a morphism name")?;
                    self.expect(Tok::Arrow)?;
                    let n = self.name("a morphism name")?;
                    let src = dom.find_morphism(&m.text).ok_or_else(|| unknown(&m, "morphism"))?;
                    let tgt = cod.find_morphism(&n.text).ok_or_else(|| unknown(&n, "morphism"))?;
                    if mor_map[src.0].replace(tgt).is_some() {
                        let msg = format!("morphism `{}` is mapped twice", m.text);
                        return Err(invalid(&name, m.at, ValidationError::Incomplete(msg)));
                    }
                }
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                _ => return Err(self.unexpected("`obj`, `mor` or `}`")),
            }
        }

        let missing = |what: &str, item: &str| {
            invalid(&name, name.at, ValidationError::Incomplete(format!("{what} `{item}` has no image")))
        };
        let mut objs = Vec::with_capacity(obj_map.len());
        for a in dom.objects() {
            objs.push(obj_map[a.0].ok_or_else(|| missing("object", dom.object_name(a)))?);
        }
        let mut mors = Vec::with_capacity(mor_map.len());
        for m in dom.morphisms() {
            let image = match mor_map[m.0] {
                Some(image) => image,
                None if dom.is_identity(m) => cod.identity(objs[dom.src(m).0]),
                None => return Err(missing("morphism", dom.morphism_name(m))),
            };
            mors.push(image);
        }
        let functor =
            GroupoidFunctor::new(dom, cod, objs, mors).map_err(|e| invalid(&name, name.at, e.into()))?;
        Ok(Decl::Functor { name: name.text, dom: dom_name.text, cod: cod_name.text, functor })
    }
}

fn unknown(name: &Spanned, what: &'static str) -> ParseError {
    ParseError::UnknownReference { name: name.text.clone(), what, line: name.at.line, col: name.at.col }
}

fn invalid(decl: &Spanned, at: Location, source: ValidationError) -> ParseError {
    ParseError::Validation { name: decl.text.clone(), line: at.line, col: at.col, source: Box::new(source) }
}

fn too_large(what: &str, limit: usize, at: Location) -> ParseError {
    ParseError::TooLarge { what: what.to_string(), limit, line: at.line, col: at.col }
}

/// Best source position for a groupoid law violation: the offending
/// `comp` line, or the declaration of the offending morphism.
fn blame(e: &GroupoidError, comps: &[[Spanned; 3]], morphisms: &HashMap<String, Location>) -> Option<Location> {
    let comp_line = |g: &str, f: &str| comps.iter().rev().find(|[x, y, _]| x.text == g && y.text == f).map(|c| c[0].at);
    match e {
        GroupoidError::NotComposable { f, g }
        | GroupoidError::BadEndpoints { f, g, .. }
        | GroupoidError::ConflictingComposite { f, g, .. } => comp_line(g, f),
        GroupoidError::IdentityLaw { morphism, .. } | GroupoidError::NoInverse(morphism) => {
            comp_line(morphism, morphism).or_else(|| morphisms.get(morphism).copied())
        }
        _ => None,
    }
}
