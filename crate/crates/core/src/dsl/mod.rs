//! Text format for groups, groupoids and functors.
//!
//! ```text
//! # comments run to the end of the line
//! group Z2 {
//!   elements e g
//!   table
//!     e g
//!     g e
//! }
//! builtin BZ2 = delooping(Z2)
//! builtin C2 = codiscrete(2)
//! functor F : C2 -> BZ2 {
//!   obj x0 -> o
//!   obj x1 -> o
//!   mor m_x0_x1 -> g
//!   mor m_x1_x0 -> g
//! }
//! ```
//!
//! Explicit groupoids list `objects`, then `mor f : x -> y` and
//! `comp g . f = h` lines (`h` is `g` after `f`). Identities are implicit
//! and named `id_<object>`. Builtin constructors are `discrete(n)`,
//! `codiscrete(n)`, `delooping(Group)`, `union(G, H, ...)` and
//! `product(G, H)`. Whitespace, including newlines, only separates tokens.

mod error;
mod lexer;
mod parser;
mod print;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::groupoid::{
    codiscrete, coproduct, delooping, discrete, is_valid_name, product, FinGroup, FinGroupoid, GroupoidFunctor,
};

pub use error::{DocumentError, ParseError, ValidationError};
pub use parser::parse;
pub use print::print;

/// Upper bound on the morphism count of any groupoid a document declares.
pub const MAX_MORPHISMS: usize = 512;
/// Upper bound on the order of a declared group.
pub const MAX_GROUP_ORDER: usize = 128;

/// Namespaces of a document. Builtins live in the groupoid namespace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Group,
    Groupoid,
    Functor,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Groupoid => "groupoid",
            Kind::Functor => "functor",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Discrete(usize),
    Codiscrete(usize),
    Delooping(String),
    Union(Vec<String>),
    Product(String, String),
}

impl Builtin {
    pub fn ctor(&self) -> &'static str {
        match self {
            Builtin::Discrete(_) => "discrete",
            Builtin::Codiscrete(_) => "codiscrete",
            Builtin::Delooping(_) => "delooping",
            Builtin::Union(_) => "union",
            Builtin::Product(..) => "product",
        }
    }

    /// Arguments as they appear between the parentheses.
    pub fn args(&self) -> Vec<String> {
        match self {
            Builtin::Discrete(n) | Builtin::Codiscrete(n) => vec![n.to_string()],
            Builtin::Delooping(g) => vec![g.clone()],
            Builtin::Union(parts) => parts.clone(),
            Builtin::Product(a, b) => vec![a.clone(), b.clone()],
        }
    }
}

pub(crate) enum BuiltinFailure {
    Unknown { name: String, kind: Kind },
    TooLarge { what: String, limit: usize },
    Invalid(ValidationError),
}

fn too_large(what: String, count: usize) -> Result<(), BuiltinFailure> {
    if count > MAX_MORPHISMS {
        Err(BuiltinFailure::TooLarge { what, limit: MAX_MORPHISMS })
    } else {
        Ok(())
    }
}

impl Builtin {
    /// Builds the groupoid, looking arguments up in `doc`. Sizes are checked
    /// before anything is allocated.
    pub(crate) fn evaluate(&self, doc: &Document) -> Result<FinGroupoid, BuiltinFailure> {
        let groupoid = |name: &str| {
            doc.groupoid(name).map_err(|_| BuiltinFailure::Unknown { name: name.to_string(), kind: Kind::Groupoid })
        };
        let invalid = |e| BuiltinFailure::Invalid(ValidationError::Groupoid(e));
        match self {
            Builtin::Discrete(n) => {
                too_large(format!("discrete({n})"), *n)?;
                Ok(discrete(*n))
            }
            Builtin::Codiscrete(n) => {
                too_large(format!("codiscrete({n})"), n.saturating_mul(*n))?;
                Ok(codiscrete(*n))
            }
            Builtin::Delooping(g) => {
                let group = doc
                    .group(g)
                    .map_err(|_| BuiltinFailure::Unknown { name: g.clone(), kind: Kind::Group })?;
                delooping(group).map_err(invalid)
            }
            Builtin::Union(parts) => {
                let parts: Vec<&Arc<FinGroupoid>> = parts.iter().map(|p| groupoid(p)).collect::<Result<_, _>>()?;
                too_large("union".into(), parts.iter().map(|p| p.morphism_count()).sum())?;
                let refs: Vec<&FinGroupoid> = parts.iter().map(|p| p.as_ref()).collect();
                coproduct(&refs).map_err(invalid)
            }
            Builtin::Product(a, b) => {
                let (a, b) = (groupoid(a)?, groupoid(b)?);
                too_large("product".into(), a.morphism_count().saturating_mul(b.morphism_count()))?;
                product(a, b).map_err(invalid)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Group { name: String, group: FinGroup },
    Groupoid { name: String, groupoid: Arc<FinGroupoid> },
    Builtin { name: String, builtin: Builtin, groupoid: Arc<FinGroupoid> },
    Functor { name: String, dom: String, cod: String, functor: GroupoidFunctor },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Group { name, .. }
            | Decl::Groupoid { name, .. }
            | Decl::Builtin { name, .. }
            | Decl::Functor { name, .. } => name,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Decl::Group { .. } => Kind::Group,
            Decl::Groupoid { .. } | Decl::Builtin { .. } => Kind::Groupoid,
            Decl::Functor { .. } => Kind::Functor,
        }
    }
}

/// A declaration with the position of its leading keyword. Equality ignores
/// the position.
#[derive(Clone, Debug)]
pub struct Item {
    pub decl: Decl,
    pub location: Location,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.decl == other.decl
    }
}

impl Eq for Item {}

/// A resolved core value.
#[derive(Clone, Copy, Debug)]
pub enum Value<'a> {
    Group(&'a FinGroup),
    Groupoid(&'a Arc<FinGroupoid>),
    Functor(&'a GroupoidFunctor),
}

/// Ordered declarations whose references all point backwards.
#[derive(Clone, Debug, Default)]
pub struct Document {
    items: Vec<Item>,
    index: HashMap<(Kind, String), usize>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
    }
}

impl Eq for Document {}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, name: &str, kind: Kind) -> bool {
        self.index.contains_key(&(kind, name.to_string()))
    }

    /// Declared names of one kind, in declaration order.
    pub fn names(&self, kind: Kind) -> impl Iterator<Item = &str> + '_ {
        self.items.iter().filter(move |i| i.decl.kind() == kind).map(|i| i.decl.name())
    }

    pub fn resolve(&self, name: &str, kind: Kind) -> Result<Value<'_>, DocumentError> {
        let unknown = || DocumentError::UnknownReference { name: name.to_string(), kind };
        let &idx = self.index.get(&(kind, name.to_string())).ok_or_else(unknown)?;
        Ok(match &self.items[idx].decl {
            Decl::Group { group, .. } => Value::Group(group),
            Decl::Groupoid { groupoid, .. } | Decl::Builtin { groupoid, .. } => Value::Groupoid(groupoid),
            Decl::Functor { functor, .. } => Value::Functor(functor),
        })
    }

    pub fn group(&self, name: &str) -> Result<&FinGroup, DocumentError> {
        match self.resolve(name, Kind::Group)? {
            Value::Group(g) => Ok(g),
            _ => unreachable!("group namespace holds groups"),
        }
    }

    pub fn groupoid(&self, name: &str) -> Result<&Arc<FinGroupoid>, DocumentError> {
        match self.resolve(name, Kind::Groupoid)? {
            Value::Groupoid(g) => Ok(g),
            _ => unreachable!("groupoid namespace holds groupoids"),
        }
    }

    pub fn functor(&self, name: &str) -> Result<&GroupoidFunctor, DocumentError> {
        match self.resolve(name, Kind::Functor)? {
            Value::Functor(f) => Ok(f),
            _ => unreachable!("functor namespace holds functors"),
        }
    }

    /// Source location of a declaration.
    pub fn location(&self, name: &str, kind: Kind) -> Option<Location> {
        self.index.get(&(kind, name.to_string())).map(|&i| self.items[i].location)
    }

    pub fn push_group(&mut self, name: &str, group: FinGroup) -> Result<(), DocumentError> {
        printable(name)?;
        group.names().iter().try_for_each(|n| printable(n))?;
        self.insert(Decl::Group { name: name.to_string(), group }, Location::default())
    }

    /// Adds an explicit groupoid. The text format needs at least one object,
    /// so the empty groupoid must go through [`Builtin::Discrete`].
    pub fn push_groupoid(&mut self, name: &str, groupoid: FinGroupoid) -> Result<(), DocumentError> {
        printable(name)?;
        if groupoid.object_count() == 0 {
            return Err(DocumentError::EmptyGroupoid(name.to_string()));
        }
        printable_groupoid(&groupoid)?;
        self.insert(Decl::Groupoid { name: name.to_string(), groupoid: Arc::new(groupoid) }, Location::default())
    }

    pub fn push_builtin(&mut self, name: &str, builtin: Builtin) -> Result<(), DocumentError> {
        printable(name)?;
        let groupoid = builtin.evaluate(self).map_err(|e| match e {
            BuiltinFailure::Unknown { name, kind } => DocumentError::UnknownReference { name, kind },
            BuiltinFailure::TooLarge { what, limit } => DocumentError::TooLarge { what, limit },
            BuiltinFailure::Invalid(source) => DocumentError::Builtin { name: name.to_string(), source },
        })?;
        printable_groupoid(&groupoid)?;
        self.insert(Decl::Builtin { name: name.to_string(), builtin, groupoid: Arc::new(groupoid) }, Location::default())
    }

    /// Adds a functor between two groupoids already in the document. Its
    /// endpoints are rebound to the document's copies.
    pub fn push_functor(&mut self, name: &str, dom: &str, cod: &str, functor: &GroupoidFunctor) -> Result<(), DocumentError> {
        printable(name)?;
        let (d, c) = (self.groupoid(dom)?.clone(), self.groupoid(cod)?.clone());
        if *d != **functor.dom() || *c != **functor.cod() {
            return Err(DocumentError::EndpointMismatch { dom: dom.to_string(), cod: cod.to_string() });
        }
        let functor = GroupoidFunctor::new(d, c, functor.obj_map().to_vec(), functor.mor_map().to_vec())
            .expect("a valid functor stays valid between equal groupoids");
        let decl = Decl::Functor { name: name.to_string(), dom: dom.to_string(), cod: cod.to_string(), functor };
        self.insert(decl, Location::default())
    }

    pub(crate) fn insert(&mut self, decl: Decl, location: Location) -> Result<(), DocumentError> {
        let key = (decl.kind(), decl.name().to_string());
        if self.index.contains_key(&key) {
            return Err(DocumentError::DuplicateName { name: key.1, kind: key.0 });
        }
        self.index.insert(key, self.items.len());
        self.items.push(Item { decl, location });
        Ok(())
    }
}

/// Names the text format can carry: valid tokens that are not keywords.
pub fn is_printable_name(name: &str) -> bool {
    is_valid_name(name) && !lexer::is_keyword(name)
}

fn printable(name: &str) -> Result<(), DocumentError> {
    if is_printable_name(name) {
        Ok(())
    } else {
        Err(DocumentError::UnprintableName(name.to_string()))
    }
}

fn printable_groupoid(g: &FinGroupoid) -> Result<(), DocumentError> {
    g.object_names().iter().try_for_each(|n| printable(n))?;
    g.morphisms().try_for_each(|m| printable(g.morphism_name(m)))
}
