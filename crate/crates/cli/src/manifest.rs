//! The line-oriented manifest format.
//!
//! ```text
//! field Q                      # or: field F 5
//! cap degree 3
//! cap order 8
//! cap size 100000
//!
//! algebra L
//!   basis 1 x
//!   unit 1 0
//!   mul 1 1 = 1 0
//!   mul 1 x = 0 1
//!   mul x 1 = 0 1
//! end
//! builtin T triangular 2
//! bimodule R regular L
//! bimodule K over L
//!   dim 1
//!   left 1 = [1]
//!   right 1 = [1]
//! end
//!
//! site
//!   objects U V W
//!   below W U
//!   below W V
//!   cover U V
//! end
//! presheaf A
//!   at U L
//!   restrict U W [1 0; 0 1]
//! end
//! bimodule_presheaf M over A
//!   at U R
//!   restrict U W [1 0; 0 1]
//! end
//! deformation B from L order 1
//!   term 1 x x = 0 1
//! end
//! extension E over M
//!   twist U W [0 0; 0 1]
//! end
//! command hochschild L R
//! ```

use std::fmt::{self, Write as _};

use defcoh::linalg::{Field, Scalar};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: unknown {kind} `{name}`")]
    UnknownName { line: usize, kind: &'static str, name: String },

    #[error("line {line}: {source}")]
    Invariant { line: usize, source: defcoh::Error },
}

impl ManifestError {
    pub fn line(&self) -> usize {
        match self {
            ManifestError::Syntax { line, .. } | ManifestError::UnknownName { line, .. } | ManifestError::Invariant { line, .. } => *line,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ManifestError {
    ManifestError::Syntax { line, message: message.into() }
}

/// Rows of scalars; the column count comes from context.
pub type Rows = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Ground,
    DualNumbers,
    Truncated(usize),
    Matrix(usize),
    Triangular(usize),
    Diagonal(usize),
    SquareZero(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimoduleSpec {
    Regular,
    Zero,
    Characters(Vec<Scalar>, Vec<Scalar>),
    Actions { dim: usize, left: Vec<(String, Rows)>, right: Vec<(String, Rows)> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommandKind {
    Hochschild,
    Exal,
    Nerve,
    Cech,
    Gs,
    Les,
    Obstruct,
    Diffop,
    Induced,
    Selftest,
}

impl CommandKind {
    pub const ALL: [CommandKind; 10] = [
        CommandKind::Hochschild,
        CommandKind::Exal,
        CommandKind::Nerve,
        CommandKind::Cech,
        CommandKind::Gs,
        CommandKind::Les,
        CommandKind::Obstruct,
        CommandKind::Diffop,
        CommandKind::Induced,
        CommandKind::Selftest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Hochschild => "hochschild",
            CommandKind::Exal => "exal",
            CommandKind::Nerve => "nerve",
            CommandKind::Cech => "cech",
            CommandKind::Gs => "gs",
            CommandKind::Les => "les",
            CommandKind::Obstruct => "obstruct",
            CommandKind::Diffop => "diffop",
            CommandKind::Induced => "induced",
            CommandKind::Selftest => "selftest",
        }
    }

    pub fn parse(s: &str) -> Option<CommandKind> {
        CommandKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Algebra { name: String, basis: Vec<String>, unit: Option<Vec<Scalar>>, mul: Vec<(String, String, Vec<Scalar>)> },
    Builtin { name: String, kind: Builtin },
    Bimodule { name: String, over: String, spec: BimoduleSpec },
    Site { objects: Vec<String>, below: Vec<(String, String)>, cover: Option<Vec<String>> },
    Presheaf { name: String, at: Vec<(String, String)>, restrict: Vec<(String, String, Rows)> },
    BimodulePresheaf { name: String, over: String, at: Vec<(String, String)>, restrict: Vec<(String, String, Rows)> },
    Deformation { name: String, from: String, order: usize, terms: Vec<(usize, String, String, Vec<Scalar>)> },
    Extension { name: String, over: String, twists: Vec<(String, String, Rows)>, glue: Vec<(usize, usize, Vec<Scalar>)> },
    Command { kind: CommandKind, args: Vec<String> },
}

/// An item with the line it starts on; equality ignores the line.
#[derive(Clone, Debug)]
pub struct Located {
    pub line: usize,
    pub item: Item,
}

impl PartialEq for Located {
    fn eq(&self, other: &Located) -> bool {
        self.item == other.item
    }
}

impl Eq for Located {}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Caps {
    /// Highest cohomological degree computed; defaults to 3.
    pub degree: Option<usize>,
    /// Order cap for differential operators; defaults to `2 dim^2`.
    pub order: Option<usize>,
    /// Largest Hochschild cochain space, in coordinates; defaults to one million.
    pub size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub field: Field,
    pub caps: Caps,
    pub items: Vec<Located>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Word(String),
    Equals,
    Bracket(String),
}

fn lex(line: usize, text: &str) -> Result<Vec<Token>, ManifestError> {
    let text = text.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '=' => {
                chars.next();
                out.push(Token::Equals);
            }
            '[' => {
                chars.next();
                let mut inner = String::new();
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some('[') => return Err(syntax(line, "nested bracket")),
                        Some(c) => inner.push(c),
                        None => return Err(syntax(line, "unclosed bracket")),
                    }
                }
                out.push(Token::Bracket(inner));
            }
            ']' => return Err(syntax(line, "unmatched `]`")),
            _ => {
                let mut w = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || "=[]".contains(c) {
                        break;
                    }
                    w.push(c);
                    chars.next();
                }
                out.push(Token::Word(w));
            }
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    line: usize,
    toks: &'a [Token],
    pos: usize,
    field: Field,
}

impl<'a> Cursor<'a> {
    fn word(&mut self, what: &str) -> Result<String, ManifestError> {
        match self.toks.get(self.pos) {
            Some(Token::Word(w)) => {
                self.pos += 1;
                Ok(w.clone())
            }
            _ => Err(syntax(self.line, format!("expected {what}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ManifestError> {
        match self.toks.get(self.pos) {
            Some(Token::Word(w)) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(syntax(self.line, format!("expected `{kw}`"))),
        }
    }

    fn equals(&mut self) -> Result<(), ManifestError> {
        match self.toks.get(self.pos) {
            Some(Token::Equals) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(syntax(self.line, "expected `=`")),
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, ManifestError> {
        let w = self.word(what)?;
        w.parse().map_err(|_| syntax(self.line, format!("expected {what}, found `{w}`")))
    }

    fn scalar_text(&self, text: &str) -> Result<Scalar, ManifestError> {
        self.field.parse_scalar(text).ok_or_else(|| syntax(self.line, format!("`{text}` is not a scalar of {}", self.field)))
    }

    /// Remaining words as scalars.
    fn scalars(&mut self) -> Result<Vec<Scalar>, ManifestError> {
        let mut out = Vec::new();
        while self.pos < self.toks.len() {
            let w = self.word("scalar")?;
            out.push(self.scalar_text(&w)?);
        }
        Ok(out)
    }

    fn rows(&mut self) -> Result<Rows, ManifestError> {
        match self.toks.get(self.pos) {
            Some(Token::Bracket(inner)) => {
                self.pos += 1;
                if inner.trim().is_empty() {
                    return Ok(Vec::new());
                }
                inner
                    .split(';')
                    .map(|row| row.split_whitespace().map(|t| self.scalar_text(t)).collect::<Result<Vec<_>, _>>())
                    .collect()
            }
            _ => Err(syntax(self.line, "expected a bracketed matrix")),
        }
    }

    fn row(&mut self) -> Result<Vec<Scalar>, ManifestError> {
        let mut rows = self.rows()?;
        match rows.len() {
            0 => Ok(Vec::new()),
            1 => Ok(rows.remove(0)),
            _ => Err(syntax(self.line, "expected a single row")),
        }
    }

    fn words(&mut self) -> Result<Vec<String>, ManifestError> {
        let mut out = Vec::new();
        while self.pos < self.toks.len() {
            out.push(self.word("name")?);
        }
        Ok(out)
    }

    fn done(&self) -> Result<(), ManifestError> {
        if self.pos < self.toks.len() {
            return Err(syntax(self.line, "unexpected trailing input"));
        }
        Ok(())
    }
}

type Lines<'a> = std::iter::Peekable<Box<dyn Iterator<Item = (usize, Vec<Token>)> + 'a>>;

/// Lines of a block up to its `end`, with the line of the `end`.
fn block(lines: &mut Lines<'_>, start: usize) -> Result<Vec<(usize, Vec<Token>)>, ManifestError> {
    let mut body = Vec::new();
    for (line, toks) in lines.by_ref() {
        if toks == [Token::Word("end".into())] {
            return Ok(body);
        }
        body.push((line, toks));
    }
    Err(syntax(start, "block is missing `end`"))
}

fn parse_builtin(c: &mut Cursor<'_>) -> Result<Builtin, ManifestError> {
    let kind = c.word("builtin kind")?;
    let b = match kind.as_str() {
        "ground" => Builtin::Ground,
        "dual_numbers" => Builtin::DualNumbers,
        "truncated" => Builtin::Truncated(c.number("size")?),
        "matrix" => Builtin::Matrix(c.number("size")?),
        "triangular" => Builtin::Triangular(c.number("size")?),
        "diagonal" => Builtin::Diagonal(c.number("size")?),
        "square_zero" => Builtin::SquareZero(c.number("number of generators")?),
        other => return Err(syntax(c.line, format!("unknown builtin `{other}`"))),
    };
    c.done()?;
    Ok(b)
}

/// Parses the text without resolving names; see [`crate::env::Env::build`] for validation.
pub fn parse_syntax(text: &str) -> Result<Manifest, ManifestError> {
    let lexed = text
        .lines()
        .enumerate()
        .map(|(i, l)| lex(i + 1, l).map(|t| (i + 1, t)))
        .collect::<Result<Vec<_>, _>>()?;
    let it: Box<dyn Iterator<Item = (usize, Vec<Token>)>> = Box::new(lexed.into_iter().filter(|(_, t)| !t.is_empty()));
    let mut lines: Lines<'_> = it.peekable();
    let mut field = None;
    let mut caps = Caps::default();
    let mut items = Vec::new();
    while let Some((line, toks)) = lines.next() {
        let f = field.unwrap_or(Field::Rational);
        let mut c = Cursor { line, toks: &toks, pos: 0, field: f };
        let head = c.word("a declaration")?;
        if head != "field" && field.is_none() {
            return Err(syntax(line, "the first declaration must be `field`"));
        }
        let item = match head.as_str() {
            "field" => {
                if field.is_some() {
                    return Err(syntax(line, "field declared twice"));
                }
                let k = c.word("Q or F")?;
                field = Some(match k.as_str() {
                    "Q" => Field::Rational,
                    "F" => {
                        let p = c.number("prime")? as u64;
                        Field::prime(p).map_err(|source| ManifestError::Invariant { line, source })?
                    }
                    other => return Err(syntax(line, format!("unknown field `{other}`"))),
                });
                c.done()?;
                continue;
            }
            "cap" => {
                let which = c.word("degree, order or size")?;
                let n = c.number("cap")?;
                c.done()?;
                match which.as_str() {
                    "degree" => caps.degree = Some(n),
                    "order" => caps.order = Some(n),
                    "size" => caps.size = Some(n),
                    other => return Err(syntax(line, format!("unknown cap `{other}`"))),
                }
                continue;
            }
            "algebra" => {
                let name = c.word("algebra name")?;
                c.done()?;
                let (mut basis, mut unit, mut mul) = (None, None, Vec::new());
                for (l, t) in block(&mut lines, line)? {
                    let mut b = Cursor { line: l, toks: &t, pos: 0, field: f };
                    match b.word("algebra entry")?.as_str() {
                        "basis" => basis = Some(b.words()?),
                        "unit" => unit = Some(b.scalars()?),
                        "mul" => {
                            let (x, y) = (b.word("basis label")?, b.word("basis label")?);
                            b.equals()?;
                            mul.push((x, y, b.scalars()?));
                        }
                        other => return Err(syntax(l, format!("unknown algebra entry `{other}`"))),
                    }
                }
                let basis = basis.ok_or_else(|| syntax(line, "algebra without `basis`"))?;
                Item::Algebra { name, basis, unit, mul }
            }
            "builtin" => {
                let name = c.word("algebra name")?;
                Item::Builtin { name, kind: parse_builtin(&mut c)? }
            }
            "bimodule" => {
                let name = c.word("bimodule name")?;
                let how = c.word("`over`, `regular`, `zero` or `characters`")?;
                let over = c.word("algebra name")?;
                let spec = match how.as_str() {
                    "regular" => BimoduleSpec::Regular,
                    "zero" => BimoduleSpec::Zero,
                    "characters" => {
                        let chi = c.row()?;
                        let psi = c.row()?;
                        BimoduleSpec::Characters(chi, psi)
                    }
                    "over" => {
                        c.done()?;
                        let (mut dim, mut left, mut right) = (None, Vec::new(), Vec::new());
                        for (l, t) in block(&mut lines, line)? {
                            let mut b = Cursor { line: l, toks: &t, pos: 0, field: f };
                            match b.word("bimodule entry")?.as_str() {
                                "dim" => dim = Some(b.number("dimension")?),
                                side @ ("left" | "right") => {
                                    let label = b.word("basis label")?;
                                    b.equals()?;
                                    let m = b.rows()?;
                                    if side == "left" { left.push((label, m)) } else { right.push((label, m)) }
                                }
                                other => return Err(syntax(l, format!("unknown bimodule entry `{other}`"))),
                            }
                            b.done()?;
                        }
                        let dim = dim.ok_or_else(|| syntax(line, "bimodule without `dim`"))?;
                        BimoduleSpec::Actions { dim, left, right }
                    }
                    other => return Err(syntax(line, format!("unknown bimodule form `{other}`"))),
                };
                c.done()?;
                Item::Bimodule { name, over, spec }
            }
            "site" => {
                c.done()?;
                let (mut objects, mut below, mut cover) = (Vec::new(), Vec::new(), None);
                for (l, t) in block(&mut lines, line)? {
                    let mut b = Cursor { line: l, toks: &t, pos: 0, field: f };
                    match b.word("site entry")?.as_str() {
                        "objects" => objects.extend(b.words()?),
                        "below" => {
                            below.push((b.word("object")?, b.word("object")?));
                            b.done()?;
                        }
                        "cover" => cover = Some(b.words()?),
                        other => return Err(syntax(l, format!("unknown site entry `{other}`"))),
                    }
                }
                Item::Site { objects, below, cover }
            }
            kind @ ("presheaf" | "bimodule_presheaf") => {
                let name = c.word("presheaf name")?;
                let over = if kind == "bimodule_presheaf" {
                    c.keyword("over")?;
                    Some(c.word("presheaf name")?)
                } else {
                    None
                };
                c.done()?;
                let (mut at, mut restrict) = (Vec::new(), Vec::new());
                for (l, t) in block(&mut lines, line)? {
                    let mut b = Cursor { line: l, toks: &t, pos: 0, field: f };
                    match b.word("presheaf entry")?.as_str() {
                        "at" => at.push((b.word("object")?, b.word("name")?)),
                        "restrict" => restrict.push((b.word("object")?, b.word("object")?, b.rows()?)),
                        other => return Err(syntax(l, format!("unknown presheaf entry `{other}`"))),
                    }
                    b.done()?;
                }
                match over {
                    Some(over) => Item::BimodulePresheaf { name, over, at, restrict },
                    None => Item::Presheaf { name, at, restrict },
                }
            }
            "deformation" => {
                let name = c.word("deformation name")?;
                c.keyword("from")?;
                let from = c.word("algebra name")?;
                c.keyword("order")?;
                let order = c.number("order")?;
                c.done()?;
                let mut terms = Vec::new();
                for (l, t) in block(&mut lines, line)? {
                    let mut b = Cursor { line: l, toks: &t, pos: 0, field: f };
                    b.keyword("term")?;
                    let s = b.number("term index")?;
                    let (x, y) = (b.word("basis label")?, b.word("basis label")?);
                    b.equals()?;
                    terms.push((s, x, y, b.scalars()?));
                }
                Item::Deformation { name, from, order, terms }
            }
            "extension" => {
                let name = c.word("extension name")?;
                c.keyword("over")?;
                let over = c.word("bimodule presheaf name")?;
                c.done()?;
                let (mut twists, mut glue) = (Vec::new(), Vec::new());
                for (l, t) in block(&mut lines, line)? {
                    let mut b = Cursor { line: l, toks: &t, pos: 0, field: f };
                    match b.word("extension entry")?.as_str() {
                        "twist" => {
                            twists.push((b.word("object")?, b.word("object")?, b.rows()?));
                            b.done()?;
                        }
                        "glue" => {
                            let (i, j) = (b.number("cover index")?, b.number("cover index")?);
                            glue.push((i, j, b.scalars()?));
                        }
                        other => return Err(syntax(l, format!("unknown extension entry `{other}`"))),
                    }
                }
                if !twists.is_empty() && !glue.is_empty() {
                    return Err(syntax(line, "an extension is given by twists or by gluing values, not both"));
                }
                Item::Extension { name, over, twists, glue }
            }
            "command" => {
                let k = c.word("command")?;
                let kind = CommandKind::parse(&k).ok_or_else(|| syntax(line, format!("unknown command `{k}`")))?;
                Item::Command { kind, args: c.words()? }
            }
            "end" => return Err(syntax(line, "`end` without a block")),
            other => return Err(syntax(line, format!("unknown declaration `{other}`"))),
        };
        items.push(Located { line, item });
    }
    let field = field.ok_or_else(|| syntax(1, "missing `field` declaration"))?;
    Ok(Manifest { field, caps, items })
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn bracket(rows: &Rows) -> String {
    format!("[{}]", rows.iter().map(|r| join(r)).collect::<Vec<_>>().join("; "))
}

impl Manifest {
    /// Text that parses back to an equal manifest.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self.field {
            Field::Rational => s.push_str("field Q\n"),
            Field::Prime(p) => {
                let _ = writeln!(s, "field F {p}");
            }
        }
        if let Some(d) = self.caps.degree {
            let _ = writeln!(s, "cap degree {d}");
        }
        if let Some(o) = self.caps.order {
            let _ = writeln!(s, "cap order {o}");
        }
        if let Some(n) = self.caps.size {
            let _ = writeln!(s, "cap size {n}");
        }
        for l in &self.items {
            let _ = match &l.item {
                Item::Algebra { name, basis, unit, mul } => {
                    let _ = writeln!(s, "algebra {name}\n  basis {}", join(basis));
                    if let Some(u) = unit {
                        let _ = writeln!(s, "  unit {}", join(u));
                    }
                    for (x, y, v) in mul {
                        let _ = writeln!(s, "  mul {x} {y} = {}", join(v));
                    }
                    writeln!(s, "end")
                }
                Item::Builtin { name, kind } => {
                    let k = match kind {
                        Builtin::Ground => "ground".to_string(),
                        Builtin::DualNumbers => "dual_numbers".to_string(),
                        Builtin::Truncated(n) => format!("truncated {n}"),
                        Builtin::Matrix(n) => format!("matrix {n}"),
                        Builtin::Triangular(n) => format!("triangular {n}"),
                        Builtin::Diagonal(n) => format!("diagonal {n}"),
                        Builtin::SquareZero(n) => format!("square_zero {n}"),
                    };
                    writeln!(s, "builtin {name} {k}")
                }
                Item::Bimodule { name, over, spec } => match spec {
                    BimoduleSpec::Regular => writeln!(s, "bimodule {name} regular {over}"),
                    BimoduleSpec::Zero => writeln!(s, "bimodule {name} zero {over}"),
                    BimoduleSpec::Characters(chi, psi) => writeln!(s, "bimodule {name} characters {over} [{}] [{}]", join(chi), join(psi)),
                    BimoduleSpec::Actions { dim, left, right } => {
                        let _ = writeln!(s, "bimodule {name} over {over}\n  dim {dim}");
                        for (label, m) in left {
                            let _ = writeln!(s, "  left {label} = {}", bracket(m));
                        }
                        for (label, m) in right {
                            let _ = writeln!(s, "  right {label} = {}", bracket(m));
                        }
                        writeln!(s, "end")
                    }
                },
                Item::Site { objects, below, cover } => {
                    let _ = writeln!(s, "site\n  objects {}", join(objects));
                    for (v, u) in below {
                        let _ = writeln!(s, "  below {v} {u}");
                    }
                    if let Some(c) = cover {
                        let _ = writeln!(s, "  cover {}", join(c));
                    }
                    writeln!(s, "end")
                }
                Item::Presheaf { name, at, restrict } | Item::BimodulePresheaf { name, at, restrict, .. } => {
                    match &l.item {
                        Item::BimodulePresheaf { over, .. } => {
                            let _ = writeln!(s, "bimodule_presheaf {name} over {over}");
                        }
                        _ => {
                            let _ = writeln!(s, "presheaf {name}");
                        }
                    }
                    for (o, x) in at {
                        let _ = writeln!(s, "  at {o} {x}");
                    }
                    for (u, v, m) in restrict {
                        let _ = writeln!(s, "  restrict {u} {v} {}", bracket(m));
                    }
                    writeln!(s, "end")
                }
                Item::Deformation { name, from, order, terms } => {
                    let _ = writeln!(s, "deformation {name} from {from} order {order}");
                    for (k, x, y, v) in terms {
                        let _ = writeln!(s, "  term {k} {x} {y} = {}", join(v));
                    }
                    writeln!(s, "end")
                }
                Item::Extension { name, over, twists, glue } => {
                    let _ = writeln!(s, "extension {name} over {over}");
                    for (u, v, m) in twists {
                        let _ = writeln!(s, "  twist {u} {v} {}", bracket(m));
                    }
                    for (i, j, v) in glue {
                        let _ = writeln!(s, "  glue {i} {j} {}", join(v));
                    }
                    writeln!(s, "end")
                }
                Item::Command { kind, args } => {
                    if args.is_empty() {
                        writeln!(s, "command {kind}")
                    } else {
                        writeln!(s, "command {kind} {}", join(args))
                    }
                }
            };
        }
        s
    }

    pub fn commands(&self) -> impl Iterator<Item = (usize, CommandKind, &[String])> {
        self.items.iter().filter_map(|l| match &l.item {
            Item::Command { kind, args } => Some((l.line, *kind, args.as_slice())),
            _ => None,
        })
    }
}
