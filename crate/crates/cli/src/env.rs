//! Resolved manifest objects.

use std::collections::HashMap;

use defcoh::algebra::{Algebra, Bimodule};
use defcoh::gs::PresheafExtension;
use defcoh::hochschild::KnAlgebra;
use defcoh::linalg::{Field, Matrix, Scalar};
use defcoh::obstruction::{glue_inner, twisted_split, CechCochain};
use defcoh::site::{AlgebraPresheaf, BimodulePresheaf, FiniteSite};

use crate::manifest::{BimoduleSpec, Builtin, CommandKind, Item, Manifest, ManifestError, Rows};

pub struct NamedBimodule {
    pub algebra: String,
    pub module: Bimodule,
}

pub struct NamedBimodulePresheaf {
    pub presheaf: String,
    pub modules: BimodulePresheaf,
}

pub struct NamedExtension {
    pub over: String,
    pub extension: PresheafExtension,
    pub cochain: Option<CechCochain>,
}

/// A command with arguments checked against the declared names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub line: usize,
    pub kind: CommandKind,
    pub args: Vec<String>,
}

pub struct Env {
    pub field: Field,
    pub algebras: HashMap<String, Algebra>,
    pub bimodules: HashMap<String, NamedBimodule>,
    pub site: Option<FiniteSite>,
    pub presheaves: HashMap<String, AlgebraPresheaf>,
    pub bimodule_presheaves: HashMap<String, NamedBimodulePresheaf>,
    pub deformations: HashMap<String, KnAlgebra>,
    pub extensions: HashMap<String, NamedExtension>,
    pub commands: Vec<Command>,
}

fn invariant(line: usize) -> impl Fn(defcoh::Error) -> ManifestError {
    move |source| ManifestError::Invariant { line, source }
}

fn unknown(line: usize, kind: &'static str, name: &str) -> ManifestError {
    ManifestError::UnknownName { line, kind, name: name.to_string() }
}

fn matrix(field: Field, line: usize, rows: &Rows, shape: (usize, usize), what: &str) -> Result<Matrix, ManifestError> {
    let bad = rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1);
    if bad {
        return Err(ManifestError::Syntax {
            line,
            message: format!("{what} must be {} x {}", shape.0, shape.1),
        });
    }
    Matrix::from_rows(field, shape.1, rows.clone()).map_err(invariant(line))
}

fn label_index(line: usize, a: &Algebra, label: &str) -> Result<usize, ManifestError> {
    a.labels().iter().position(|l| l == label).ok_or_else(|| unknown(line, "basis label", label))
}

impl Env {
    fn site(&self, line: usize) -> Result<&FiniteSite, ManifestError> {
        self.site.as_ref().ok_or_else(|| ManifestError::Syntax { line, message: "no site declared".into() })
    }

    fn object(&self, line: usize, name: &str) -> Result<usize, ManifestError> {
        self.site(line)?.index_of(name).ok_or_else(|| unknown(line, "object", name))
    }

    fn algebra(&self, line: usize, name: &str) -> Result<&Algebra, ManifestError> {
        self.algebras.get(name).ok_or_else(|| unknown(line, "algebra", name))
    }

    fn restrictions(&self, line: usize, restrict: &[(String, String, Rows)], dims: &[usize], what: &str) -> Result<Vec<((usize, usize), Matrix)>, ManifestError> {
        restrict
            .iter()
            .map(|(u, v, rows)| {
                let (ui, vi) = (self.object(line, u)?, self.object(line, v)?);
                let m = matrix(self.field, line, rows, (dims[vi], dims[ui]), &format!("{what} restriction {u} -> {v}"))?;
                Ok(((ui, vi), m))
            })
            .collect()
    }

    fn assignment<'a>(&self, line: usize, at: &'a [(String, String)]) -> Result<Vec<&'a str>, ManifestError> {
        let site = self.site(line)?;
        let mut out: Vec<Option<&str>> = vec![None; site.len()];
        for (o, x) in at {
            let i = self.object(line, o)?;
            if out[i].replace(x.as_str()).is_some() {
                return Err(ManifestError::Syntax { line, message: format!("object {o} assigned twice") });
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| ManifestError::Syntax { line, message: format!("nothing assigned to object {}", site.name(i)) }))
            .collect()
    }

    fn declare(&mut self, line: usize, item: &Item) -> Result<(), ManifestError> {
        let f = self.field;
        match item {
            Item::Algebra { name, basis, unit, mul } => {
                let d = basis.len();
                let mut products = vec![vec![f.zero(); d]; d * d];
                let index = |l: &str| basis.iter().position(|b| b == l).ok_or_else(|| unknown(line, "basis label", l));
                for (x, y, v) in mul {
                    if v.len() != d {
                        return Err(ManifestError::Syntax { line, message: format!("product {x} {y} needs {d} coordinates") });
                    }
                    products[index(x)? * d + index(y)?] = v.clone();
                }
                let a = match unit {
                    Some(u) => Algebra::new(f, basis.clone(), products, u.clone()),
                    None => Algebra::with_solved_unit(f, basis.clone(), products),
                }
                .map_err(invariant(line))?;
                self.algebras.insert(name.clone(), a);
            }
            Item::Builtin { name, kind } => {
                let a = match *kind {
                    Builtin::Ground => Algebra::ground(f),
                    Builtin::DualNumbers => Algebra::dual_numbers(f),
                    Builtin::Truncated(n) => Algebra::truncated_poly(f, n),
                    Builtin::Matrix(n) => Algebra::matrix(f, n),
                    Builtin::Triangular(n) => Algebra::upper_triangular(f, n),
                    Builtin::Diagonal(n) => Algebra::diagonal(f, n),
                    Builtin::SquareZero(n) => Algebra::square_zero(f, n),
                };
                self.algebras.insert(name.clone(), a);
            }
            Item::Bimodule { name, over, spec } => {
                let a = self.algebra(line, over)?;
                let module = match spec {
                    BimoduleSpec::Regular => Bimodule::regular(a),
                    BimoduleSpec::Zero => Bimodule::zero(a),
                    BimoduleSpec::Characters(chi, psi) => Bimodule::characters(a, chi, psi).map_err(invariant(line))?,
                    BimoduleSpec::Actions { dim, left, right } => {
                        let fill = |side: &[(String, Rows)], what: &str| -> Result<Vec<Matrix>, ManifestError> {
                            let mut out = vec![Matrix::zeros(f, *dim, *dim); a.dim()];
                            for (label, rows) in side {
                                out[label_index(line, a, label)?] = matrix(f, line, rows, (*dim, *dim), &format!("{what} action of {label}"))?;
                            }
                            Ok(out)
                        };
                        Bimodule::new(a, *dim, fill(left, "left")?, fill(right, "right")?).map_err(invariant(line))?
                    }
                };
                self.bimodules.insert(name.clone(), NamedBimodule { algebra: over.clone(), module });
            }
            Item::Site { objects, below, cover } => {
                if self.site.is_some() {
                    return Err(ManifestError::Syntax { line, message: "site declared twice".into() });
                }
                let index = |o: &str| objects.iter().position(|x| x == o).ok_or_else(|| unknown(line, "object", o));
                let rel = below.iter().map(|(v, u)| Ok((index(v)?, index(u)?))).collect::<Result<Vec<_>, ManifestError>>()?;
                let mut site = FiniteSite::new(objects.clone(), &rel).map_err(invariant(line))?;
                if let Some(c) = cover {
                    let members = c.iter().map(|o| index(o)).collect::<Result<Vec<_>, _>>()?;
                    site = site.with_cover(members).map_err(invariant(line))?;
                }
                self.site = Some(site);
            }
            Item::Presheaf { name, at, restrict } => {
                let names = self.assignment(line, at)?;
                let algebras = names.iter().map(|n| self.algebra(line, n).cloned()).collect::<Result<Vec<_>, _>>()?;
                let dims: Vec<usize> = algebras.iter().map(Algebra::dim).collect();
                let given = self.restrictions(line, restrict, &dims, "algebra")?;
                let p = AlgebraPresheaf::new(self.site(line)?, algebras, given).map_err(invariant(line))?;
                self.presheaves.insert(name.clone(), p);
            }
            Item::BimodulePresheaf { name, over, at, restrict } => {
                let ap = self.presheaves.get(over).ok_or_else(|| unknown(line, "presheaf", over))?;
                let site = self.site(line)?;
                let names = self.assignment(line, at)?;
                let mut modules = Vec::with_capacity(names.len());
                for (u, n) in names.iter().enumerate() {
                    let b = self.bimodules.get(*n).ok_or_else(|| unknown(line, "bimodule", n))?;
                    if self.algebras.get(&b.algebra) != Some(ap.algebra(u)) {
                        return Err(ManifestError::Syntax {
                            line,
                            message: format!("bimodule {n} is over {}, not the algebra at {}", b.algebra, site.name(u)),
                        });
                    }
                    modules.push(b.module.clone());
                }
                let dims: Vec<usize> = modules.iter().map(Bimodule::dim).collect();
                let given = self.restrictions(line, restrict, &dims, "bimodule")?;
                let m = BimodulePresheaf::new(site, ap, modules, given).map_err(invariant(line))?;
                self.bimodule_presheaves.insert(name.clone(), NamedBimodulePresheaf { presheaf: over.clone(), modules: m });
            }
            Item::Deformation { name, from, order, terms } => {
                let a = self.algebra(line, from)?;
                let d = a.dim();
                let mut tables = vec![a.products()];
                for (s, x, y, v) in terms {
                    if *s == 0 || s > order {
                        return Err(ManifestError::Syntax { line, message: format!("term index {s} outside 1..={order}") });
                    }
                    if v.len() != d {
                        return Err(ManifestError::Syntax { line, message: format!("term {s} {x} {y} needs {d} coordinates") });
                    }
                    while tables.len() <= *s {
                        tables.push(vec![vec![f.zero(); d]; d * d]);
                    }
                    tables[*s][label_index(line, a, x)? * d + label_index(line, a, y)?] = v.clone();
                }
                let b = KnAlgebra::from_terms(a, *order, &tables).map_err(invariant(line))?;
                self.deformations.insert(name.clone(), b);
            }
            Item::Extension { name, over, twists, glue } => {
                let m = self.bimodule_presheaves.get(over).ok_or_else(|| unknown(line, "bimodule presheaf", over))?;
                let ap = &self.presheaves[&m.presheaf];
                let site = self.site(line)?;
                let (extension, cochain) = if glue.is_empty() {
                    let mut ds = Vec::with_capacity(twists.len());
                    for (u, v, rows) in twists {
                        let (ui, vi) = (self.object(line, u)?, self.object(line, v)?);
                        let shape = (m.modules.module(vi).dim(), ap.algebra(vi).dim());
                        ds.push(((ui, vi), matrix(f, line, rows, shape, &format!("twist {u} -> {v}"))?));
                    }
                    (twisted_split(site, ap, &m.modules, ds).map_err(invariant(line))?, None)
                } else {
                    let entries: Vec<((usize, usize), Vec<Scalar>)> = glue.iter().map(|(i, j, v)| ((*i, *j), v.clone())).collect();
                    let c = CechCochain::new(site, &m.modules, entries).map_err(invariant(line))?;
                    (glue_inner(site, ap, &m.modules, &c).map_err(invariant(line))?, Some(c))
                };
                self.extensions.insert(name.clone(), NamedExtension { over: over.clone(), extension, cochain });
            }
            Item::Command { kind, args } => {
                self.check_command(line, *kind, args)?;
                self.commands.push(Command { line, kind: *kind, args: args.clone() });
            }
        }
        Ok(())
    }

    fn check_command(&self, line: usize, kind: CommandKind, args: &[String]) -> Result<(), ManifestError> {
        let arity = |lo: usize, hi: usize| {
            if args.len() < lo || args.len() > hi {
                Err(ManifestError::Syntax { line, message: format!("{kind} takes {lo} to {hi} arguments") })
            } else {
                Ok(())
            }
        };
        let bimodule_over = |m: &str, a: &str| match self.bimodules.get(m) {
            Some(b) if b.algebra == a => Ok(()),
            Some(b) => Err(ManifestError::Syntax { line, message: format!("bimodule {m} is over {}, not {a}", b.algebra) }),
            None => Err(unknown(line, "bimodule", m)),
        };
        let bp = |n: &str| self.bimodule_presheaves.get(n).map(|_| ()).ok_or_else(|| unknown(line, "bimodule presheaf", n));
        match kind {
            CommandKind::Hochschild | CommandKind::Exal if args.first().is_some_and(|a| self.bimodule_presheaves.contains_key(a)) => {
                if kind == CommandKind::Hochschild {
                    return Err(ManifestError::Syntax { line, message: "hochschild takes an algebra".into() });
                }
                arity(1, 1)
            }
            CommandKind::Hochschild | CommandKind::Exal => {
                arity(1, 2)?;
                self.algebra(line, &args[0])?;
                match args.get(1) {
                    Some(m) => bimodule_over(m, &args[0]),
                    None => Ok(()),
                }
            }
            CommandKind::Nerve | CommandKind::Gs | CommandKind::Les => {
                arity(1, 1)?;
                bp(&args[0])
            }
            CommandKind::Cech => {
                arity(1, 1)?;
                bp(&args[0])?;
                match self.site(line)?.cover() {
                    Some(_) => Ok(()),
                    None => Err(ManifestError::Syntax { line, message: "cech needs a cover in the site".into() }),
                }
            }
            CommandKind::Obstruct => {
                arity(1, 1)?;
                self.extensions.get(&args[0]).map(|_| ()).ok_or_else(|| unknown(line, "extension", &args[0]))
            }
            CommandKind::Diffop => {
                arity(1, 1)?;
                if self.algebras.contains_key(&args[0]) || self.deformations.contains_key(&args[0]) {
                    Ok(())
                } else {
                    Err(unknown(line, "algebra or deformation", &args[0]))
                }
            }
            CommandKind::Induced => {
                arity(1, 1)?;
                self.deformations.get(&args[0]).map(|_| ()).ok_or_else(|| unknown(line, "deformation", &args[0]))
            }
            CommandKind::Selftest => arity(0, 0),
        }
    }

    /// Resolves and validates every declaration in order.
    pub fn build(m: &Manifest) -> Result<Env, ManifestError> {
        let mut env = Env {
            field: m.field,
            algebras: HashMap::new(),
            bimodules: HashMap::new(),
            site: None,
            presheaves: HashMap::new(),
            bimodule_presheaves: HashMap::new(),
            deformations: HashMap::new(),
            extensions: HashMap::new(),
            commands: Vec::new(),
        };
        let mut names: HashMap<String, usize> = HashMap::new();
        for l in &m.items {
            let name = match &l.item {
                Item::Algebra { name, .. }
                | Item::Builtin { name, .. }
                | Item::Bimodule { name, .. }
                | Item::Presheaf { name, .. }
                | Item::BimodulePresheaf { name, .. }
                | Item::Deformation { name, .. }
                | Item::Extension { name, .. } => Some(name),
                Item::Site { .. } | Item::Command { .. } => None,
            };
            if let Some(n) = name {
                if let Some(first) = names.insert(n.clone(), l.line) {
                    return Err(ManifestError::Syntax { line: l.line, message: format!("`{n}` already declared on line {first}") });
                }
            }
            env.declare(l.line, &l.item)?;
        }
        Ok(env)
    }
}

/// Parses and validates; every failure carries the line it comes from.
pub fn parse_manifest(text: &str) -> Result<(Manifest, Env), ManifestError> {
    let m = crate::manifest::parse_syntax(text)?;
    let env = Env::build(&m)?;
    Ok((m, env))
}
