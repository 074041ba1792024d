//! Declared and built-in types, constructors and destructors.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::TypeExpr;
use crate::surface::{Polarity, TypeDecl};
use crate::term::{name, Name};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeInfo {
    pub params: Vec<Name>,
    pub polarity: Polarity,
    /// Constructors with their argument type, or destructors with their
    /// result type, over `params`.
    pub items: Vec<(Name, TypeExpr)>,
}

/// Everything the checker knows about types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeEnv {
    pub types: BTreeMap<Name, TypeInfo>,
    /// Constructor or destructor name to its type.
    owner: BTreeMap<Name, Name>,
}

fn var(v: &str) -> TypeExpr {
    TypeExpr::Var(name(v))
}

/// Argument type of a constructor written with `args` curried arguments.
pub fn ctor_argument(args: &[TypeExpr]) -> TypeExpr {
    match args.len() {
        0 => TypeExpr::con("unit"),
        1 => args[0].clone(),
        2 => TypeExpr::App(name("prod"), args.to_vec()),
        _ => TypeExpr::App(name("prod3"), args.to_vec()),
    }
}

impl TypeEnv {
    /// Environment of a validated program.
    pub fn new(decls: &[TypeDecl]) -> TypeEnv {
        let mut types = BTreeMap::new();
        let codata = |params: &[&str], items: &[(&str, &str)]| TypeInfo {
            params: params.iter().map(|p| name(p)).collect(),
            polarity: Polarity::Codata,
            items: items.iter().map(|(d, v)| (name(d), var(v))).collect(),
        };
        types.insert(name("unit"), codata(&[], &[]));
        types.insert(name("prod"), codata(&["a", "b"], &[("Fst", "a"), ("Snd", "b")]));
        types.insert(name("prod3"), codata(&["a", "b", "c"], &[("Fst", "a"), ("Snd", "b"), ("Thd", "c")]));
        for d in decls {
            let items = d
                .items
                .iter()
                .map(|i| {
                    let t = match d.polarity {
                        Polarity::Data => ctor_argument(&i.args),
                        Polarity::Codata => i.result.clone(),
                    };
                    (i.name.clone(), t)
                })
                .collect();
            types.insert(d.name.clone(), TypeInfo { params: d.params.clone(), polarity: d.polarity, items });
        }
        let mut owner = BTreeMap::new();
        for (t, info) in &types {
            if t.starts_with("prod") {
                continue;
            }
            for (i, _) in &info.items {
                owner.insert(i.clone(), t.clone());
            }
        }
        for f in ["Fst", "Snd"] {
            owner.insert(name(f), name("prod"));
        }
        owner.insert(name("Thd"), name("prod3"));
        TypeEnv { types, owner }
    }

    /// The type a constructor builds, or a destructor takes apart. `Fst`
    /// and `Snd` belong to `prod` here; `prod3` shares them.
    pub fn owner(&self, item: &str) -> Option<&Name> {
        self.owner.get(item)
    }

    /// The codata type whose destructors are exactly `fields`.
    pub fn record_type(&self, fields: &[Name]) -> Option<&Name> {
        let mut wanted: Vec<&Name> = fields.iter().collect();
        wanted.sort();
        let mut found = self.types.iter().filter(|(_, info)| {
            let mut have: Vec<&Name> = info.items.iter().map(|i| &i.0).collect();
            have.sort();
            info.polarity == Polarity::Codata && have == wanted
        });
        let first = found.next().map(|x| x.0);
        if found.next().is_some() {
            None
        } else {
            first
        }
    }

    pub fn polarity(&self, t: &TypeExpr) -> Option<Polarity> {
        t.head().and_then(|h| self.types.get(h)).map(|i| i.polarity)
    }

    /// `(argument or result type, instantiated at args)` of `item` in type `t`.
    pub fn item_type(&self, t: &Name, item: &str, args: &[TypeExpr]) -> Option<TypeExpr> {
        let info = self.types.get(t)?;
        let (_, ty) = info.items.iter().find(|i| &*i.0 == item)?;
        Some(instantiate(ty, &info.params, args))
    }

    /// Constructor argument types, or destructor result types, of an
    /// instance.
    pub fn unfold(&self, t: &TypeExpr) -> Vec<TypeExpr> {
        let TypeExpr::App(h, args) = t else { return Vec::new() };
        let Some(info) = self.types.get(h) else { return Vec::new() };
        info.items.iter().map(|(_, ty)| instantiate(ty, &info.params, args)).collect()
    }
}

fn instantiate(ty: &TypeExpr, params: &[Name], args: &[TypeExpr]) -> TypeExpr {
    ty.subst(&|v| params.iter().position(|p| p == v).and_then(|k| args.get(k).cloned()))
}
