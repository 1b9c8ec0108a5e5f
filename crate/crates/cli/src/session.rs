//! Session files. See `docs/session-format.md` for the grammar.

use std::collections::BTreeMap;
use std::fmt;

use golodkit::exactmath::{Field, MonomialOrder, VarContext, parse_poly};
use golodkit::homology::ModulePresentation;
use golodkit::ringkit::{connected_sum, fiber_product, teter_quotient, tensor_product, QuotientRing};

#[derive(Debug)]
pub struct SessionError {
    pub line: usize,
    pub column: usize,
    pub msg: String,
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.msg)
    }
}

impl std::error::Error for SessionError {}

fn fail<T>(line: usize, column: usize, msg: impl Into<String>) -> Result<T, SessionError> {
    Err(SessionError {
        line,
        column,
        msg: msg.into(),
    })
}

/// One value item with its 1-based column.
#[derive(Clone, Debug)]
struct Item {
    text: String,
    quoted: bool,
    line: usize,
    column: usize,
}

#[derive(Clone, Debug)]
struct Entry {
    key: String,
    items: Vec<Item>,
    line: usize,
    column: usize,
}

#[derive(Clone, Debug)]
struct Section {
    kind: String,
    name: Option<String>,
    line: usize,
    entries: Vec<Entry>,
}

impl Section {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.key == key)
    }

    fn single(&self, key: &str) -> Result<Option<&Item>, SessionError> {
        match self.get(key) {
            None => Ok(None),
            Some(e) if e.items.len() == 1 => Ok(Some(&e.items[0])),
            Some(e) => fail(e.line, e.column, format!("'{key}' takes a single value")),
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), SessionError> {
        for e in &self.entries {
            if !allowed.contains(&e.key.as_str()) {
                return fail(
                    e.line,
                    e.column,
                    format!("unknown key '{}' in [{}]; expected one of {}", e.key, self.kind, allowed.join(", ")),
                );
            }
        }
        let mut seen = Vec::new();
        for e in &self.entries {
            if e.key != "column" && seen.contains(&e.key) {
                return fail(e.line, e.column, format!("duplicate key '{}'", e.key));
            }
            seen.push(e.key.clone());
        }
        Ok(())
    }
}

/// Items of one physical line, and whether it ends with a ',' that
/// continues the list on the next line.
fn split_items(value: &str, line: usize, offset: usize) -> Result<(Vec<Item>, bool), SessionError> {
    let mut items = Vec::new();
    let chars: Vec<char> = value.chars().collect();
    let skip_ws = |mut i: usize| {
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        i
    };
    let mut i = skip_ws(0);
    if i >= chars.len() {
        return Ok((items, false));
    }
    loop {
        let start = i;
        let item = if chars[i] == '"' {
            let Some(close) = chars[i + 1..].iter().position(|c| *c == '"') else {
                return fail(line, offset + i, "unterminated string");
            };
            let text: String = chars[i + 1..i + 1 + close].iter().collect();
            i += close + 2;
            Item {
                text,
                quoted: true,
                line,
                column: offset + start,
            }
        } else {
            while i < chars.len() && chars[i] != ',' {
                if chars[i] == '"' {
                    return fail(line, offset + i, "stray quote");
                }
                i += 1;
            }
            let text = chars[start..i].iter().collect::<String>().trim_end().to_string();
            if text.is_empty() {
                return fail(line, offset + start, "empty item");
            }
            Item {
                text,
                quoted: false,
                line,
                column: offset + start,
            }
        };
        items.push(item);
        i = skip_ws(i);
        if i >= chars.len() {
            return Ok((items, false));
        }
        if chars[i] != ',' {
            return fail(line, offset + i, format!("expected ',' but found '{}'", chars[i]));
        }
        i = skip_ws(i + 1);
        if i >= chars.len() {
            return Ok((items, true));
        }
    }
}

/// Drops a `#` comment that is not inside a quoted string.
fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

fn is_name(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

fn lex(text: &str) -> Result<Vec<Section>, SessionError> {
    let mut sections: Vec<Section> = Vec::new();
    let mut continued = false;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = strip_comment(raw);
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        if continued {
            let entry = sections
                .last_mut()
                .and_then(|s| s.entries.last_mut())
                .expect("continuation follows an entry");
            let (items, more) = split_items(body, line, 1)?;
            entry.items.extend(items);
            continued = more;
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(inner) = rest.strip_suffix(']') else {
                return fail(line, indent + 1, "section header must end with ']'");
            };
            let mut words = inner.split_whitespace();
            let kind = words.next().unwrap_or("").to_string();
            let name = words.next().map(str::to_string);
            if words.next().is_some() {
                return fail(line, indent + 1, "section header takes at most one name");
            }
            match (kind.as_str(), &name) {
                ("field" | "construct", None) | ("ring", _) => {}
                ("module", Some(_)) => {}
                ("module", None) => return fail(line, indent + 1, "[module] needs a name"),
                ("field" | "construct", Some(_)) => {
                    return fail(line, indent + 1, format!("[{kind}] takes no name"))
                }
                _ => return fail(line, indent + 2, format!("unknown section '{kind}'")),
            }
            if let Some(nm) = &name {
                if !is_name(nm) {
                    return fail(line, indent + 1, format!("invalid name '{nm}'"));
                }
            }
            sections.push(Section {
                kind,
                name,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let Some(eq) = body.find('=') else {
            return fail(line, indent + 1, "expected 'key = value' or a section header");
        };
        let key = body[..eq].trim();
        if !is_name(key) {
            return fail(line, indent + 1, format!("invalid key '{key}'"));
        }
        let Some(sec) = sections.last_mut() else {
            return fail(line, indent + 1, "entry before any section header");
        };
        let (items, more) = split_items(&body[eq + 1..], line, eq + 2)?;
        if items.is_empty() {
            return fail(line, eq + 2, format!("'{key}' has no value"));
        }
        continued = more;
        sec.entries.push(Entry {
            key: key.to_string(),
            items,
            line,
            column: indent + 1,
        });
    }
    if continued {
        return fail(text.lines().count(), 1, "list ends with ','");
    }
    Ok(sections)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructOp {
    Tensor,
    Fiber,
    ConnSum,
    Teter,
}

impl ConstructOp {
    pub fn parse(s: &str) -> Option<ConstructOp> {
        Some(match s {
            "tensor" => ConstructOp::Tensor,
            "fiber" => ConstructOp::Fiber,
            "connsum" => ConstructOp::ConnSum,
            "teter" => ConstructOp::Teter,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstructOp::Tensor => "tensor",
            ConstructOp::Fiber => "fiber",
            ConstructOp::ConnSum => "connsum",
            ConstructOp::Teter => "teter",
        }
    }

    pub fn binary(self) -> bool {
        self != ConstructOp::Teter
    }

    pub fn apply(self, left: &QuotientRing, right: Option<&QuotientRing>) -> golodkit::Result<QuotientRing> {
        match (self, right) {
            (ConstructOp::Teter, _) => teter_quotient(left),
            (ConstructOp::Tensor, Some(r)) => tensor_product(left, r),
            (ConstructOp::Fiber, Some(r)) => fiber_product(left, r),
            (ConstructOp::ConnSum, Some(r)) => connected_sum(left, r),
            (_, None) => Err(golodkit::Error::Invalid(format!("{} needs two rings", self.name()))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub op: ConstructOp,
    pub left: String,
    pub right: Option<String>,
}

pub struct Session {
    pub field: Field,
    pub ring: QuotientRing,
    /// named `[ring NAME]` blocks
    pub rings: BTreeMap<String, QuotientRing>,
    pub construction: Option<Construction>,
    pub modules: BTreeMap<String, ModulePresentation>,
}

impl Session {
    /// Named module; `k` is the residue field unless a module of that name exists.
    pub fn module(&self, name: &str) -> Option<ModulePresentation> {
        match self.modules.get(name) {
            Some(m) => Some(m.clone()),
            None if name == "k" => Some(ModulePresentation::residue_field(&self.ring)),
            None => None,
        }
    }
}

fn parse_field(sec: &Section) -> Result<Field, SessionError> {
    sec.check_keys(&["name"])?;
    let Some(item) = sec.single("name")? else {
        return fail(sec.line, 1, "[field] needs 'name = QQ' or 'name = GF(p)'");
    };
    let t = item.text.as_str();
    if matches!(t, "QQ" | "Q") {
        return Ok(Field::Rational);
    }
    let p = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|p| p.trim().parse::<u32>().ok());
    match p.map(Field::prime) {
        Some(Ok(f)) => Ok(f),
        Some(Err(e)) => fail(sec.line + 1, item.column, e.to_string()),
        None => fail(sec.line + 1, item.column, format!("unknown field '{t}'")),
    }
}

fn parse_ring(sec: &Section, field: Field) -> Result<QuotientRing, SessionError> {
    sec.check_keys(&["variables", "relations", "order"])?;
    let Some(vars) = sec.get("variables") else {
        return fail(sec.line, 1, "ring needs 'variables'");
    };
    let names: Vec<&str> = vars.items.iter().map(|i| i.text.as_str()).collect();
    let ctx = VarContext::new(&names).map_err(|e| SessionError {
        line: vars.line,
        column: vars.items[0].column,
        msg: e.to_string(),
    })?;
    let order = match sec.single("order")? {
        None => MonomialOrder::DegRevLex,
        Some(i) if i.text == "degrevlex" => MonomialOrder::DegRevLex,
        Some(i) if i.text == "deglex" => MonomialOrder::DegLex,
        Some(i) => {
            let line = sec.get("order").map_or(sec.line, |e| e.line);
            return fail(line, i.column, format!("unknown order '{}'", i.text));
        }
    };
    let mut rels = Vec::new();
    if let Some(e) = sec.get("relations") {
        for item in &e.items {
            if !item.quoted {
                return fail(item.line, item.column, "relations must be quoted strings");
            }
            let p = parse_poly(&item.text, &ctx, field).map_err(|err| {
                let pos = match &err {
                    golodkit::Error::Syntax { pos, .. } | golodkit::Error::Exponent { pos, .. } => *pos,
                    _ => 0,
                };
                SessionError {
                    line: item.line,
                    column: item.column + 1 + pos,
                    msg: format!("in \"{}\": {err}", item.text),
                }
            })?;
            rels.push((p, item.line, item.column));
        }
    }
    let fallback = sec.get("relations").map_or(sec.line, |e| e.line);
    let polys: Vec<_> = rels.iter().map(|(p, _, _)| p.clone()).collect();
    QuotientRing::new(field, &ctx, &polys, order).map_err(|err| {
        let (line, column) = rels
            .iter()
            .find(|(p, _, _)| {
                let s = p.to_string();
                err == golodkit::Error::NotHomogeneous(s.clone()) || err == golodkit::Error::LowDegree(s)
            })
            .map_or((fallback, 1), |(_, l, c)| (*l, *c));
        SessionError {
            line,
            column,
            msg: err.to_string(),
        }
    })
}

fn parse_construct(sec: &Section) -> Result<Construction, SessionError> {
    sec.check_keys(&["op", "left", "right"])?;
    let Some(op) = sec.single("op")? else {
        return fail(sec.line, 1, "[construct] needs 'op'");
    };
    let line = sec.get("op").map_or(sec.line, |e| e.line);
    let Some(kind) = ConstructOp::parse(&op.text) else {
        return fail(line, op.column, format!("unknown op '{}'; expected tensor, fiber, connsum or teter", op.text));
    };
    let Some(left) = sec.single("left")? else {
        return fail(sec.line, 1, "[construct] needs 'left'");
    };
    let right = sec.single("right")?.map(|i| i.text.clone());
    if kind.binary() && right.is_none() {
        return fail(sec.line, 1, format!("{} needs 'right'", kind.name()));
    }
    if !kind.binary() && right.is_some() {
        let e = sec.get("right").expect("present");
        return fail(e.line, e.column, "teter takes only 'left'");
    }
    Ok(Construction {
        op: kind,
        left: left.text.clone(),
        right,
    })
}

fn parse_module(sec: &Section, r: &QuotientRing) -> Result<ModulePresentation, SessionError> {
    sec.check_keys(&["kind", "ideal", "rank", "degrees", "column"])?;
    let wrap = |line: usize, e: golodkit::Error| SessionError {
        line,
        column: 1,
        msg: e.to_string(),
    };
    let kind = match sec.single("kind")? {
        Some(i) => i.text.clone(),
        None if sec.get("ideal").is_some() => "quotient".into(),
        None if sec.get("rank").is_some() => "free".into(),
        None if sec.get("column").is_some() => "matrix".into(),
        None => return fail(sec.line, 1, "module needs 'ideal', 'rank', 'column' or 'kind'"),
    };
    let quoted = |e: &Entry| -> Result<Vec<Item>, SessionError> {
        e.items
            .iter()
            .map(|i| {
                if i.quoted {
                    Ok(i.clone())
                } else {
                    fail(i.line, i.column, "polynomials must be quoted")
                }
            })
            .collect()
    };
    let element = |i: &Item| {
        r.parse_element(&i.text).map_err(|err| SessionError {
            line: i.line,
            column: i.column,
            msg: format!("in \"{}\": {err}", i.text),
        })
    };
    match kind.as_str() {
        "residue" => Ok(ModulePresentation::residue_field(r)),
        "quotient" => {
            let Some(e) = sec.get("ideal") else {
                return fail(sec.line, 1, "quotient module needs 'ideal'");
            };
            let gens = quoted(e)?
                .iter()
                .map(element)
                .collect::<Result<Vec<_>, _>>()?;
            ModulePresentation::quotient_by_ideal(r, &gens).map_err(|err| wrap(e.line, err))
        }
        "free" => {
            let Some(i) = sec.single("rank")? else {
                return fail(sec.line, 1, "free module needs 'rank'");
            };
            let line = sec.get("rank").expect("present").line;
            match i.text.parse::<usize>() {
                Ok(n) if n > 0 => Ok(ModulePresentation::free(r, n)),
                _ => fail(line, i.column, format!("invalid rank '{}'", i.text)),
            }
        }
        "matrix" => {
            let Some(d) = sec.get("degrees") else {
                return fail(sec.line, 1, "matrix module needs 'degrees'");
            };
            let degrees = d
                .items
                .iter()
                .map(|i| i.text.parse::<i64>().or_else(|_| fail(i.line, i.column, "degree must be an integer")))
                .collect::<Result<Vec<_>, _>>()?;
            let mut columns = Vec::new();
            let mut line = d.line;
            for e in sec.all("column") {
                line = e.line;
                let entries = quoted(e)?;
                if entries.len() != degrees.len() {
                    return fail(
                        e.line,
                        e.column,
                        format!("column has {} entries, expected {}", entries.len(), degrees.len()),
                    );
                }
                columns.push(entries.iter().map(element).collect::<Result<Vec<_>, _>>()?);
            }
            ModulePresentation::from_matrix(r, degrees, &columns).map_err(|err| wrap(line, err))
        }
        other => fail(sec.line, 1, format!("unknown module kind '{other}'")),
    }
}

pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    let sections = lex(text)?;
    let mut field = Field::Rational;
    let fields: Vec<&Section> = sections.iter().filter(|s| s.kind == "field").collect();
    if fields.len() > 1 {
        return fail(fields[1].line, 1, "duplicate [field]");
    }
    if let Some(f) = fields.first() {
        field = parse_field(f)?;
    }

    let mut main_ring = None;
    let mut rings = BTreeMap::new();
    let mut construction = None;
    for sec in &sections {
        match (sec.kind.as_str(), &sec.name) {
            ("ring", None) => {
                if main_ring.is_some() {
                    return fail(sec.line, 1, "duplicate unnamed [ring]");
                }
                main_ring = Some(parse_ring(sec, field)?);
            }
            ("ring", Some(n)) => {
                if rings.contains_key(n) {
                    return fail(sec.line, 1, format!("duplicate ring '{n}'"));
                }
                rings.insert(n.clone(), parse_ring(sec, field)?);
            }
            ("construct", _) => {
                if construction.is_some() {
                    return fail(sec.line, 1, "duplicate [construct]");
                }
                construction = Some((sec.line, parse_construct(sec)?));
            }
            _ => {}
        }
    }

    let ring = match (main_ring, &construction) {
        (Some(_), Some((line, _))) => return fail(*line, 1, "a session has either an unnamed [ring] or a [construct]"),
        (Some(r), None) => r,
        (None, Some((line, c))) => {
            let get = |n: &str| {
                rings.get(n).ok_or_else(|| SessionError {
                    line: *line,
                    column: 1,
                    msg: format!("unknown ring '{n}'"),
                })
            };
            let left = get(&c.left)?;
            let right = c.right.as_deref().map(get).transpose()?;
            c.op.apply(left, right).map_err(|e| SessionError {
                line: *line,
                column: 1,
                msg: format!("{}: {e}", c.op.name()),
            })?
        }
        (None, None) => match rings.len() {
            1 => rings.values().next().expect("one ring").clone(),
            _ => return fail(1, 1, "no session ring: add an unnamed [ring] or a [construct]"),
        },
    };

    let mut modules = BTreeMap::new();
    for sec in sections.iter().filter(|s| s.kind == "module") {
        let name = sec.name.clone().expect("validated");
        if modules.contains_key(&name) {
            return fail(sec.line, 1, format!("duplicate module '{name}'"));
        }
        modules.insert(name, parse_module(sec, &ring)?);
    }
    Ok(Session {
        field,
        ring,
        rings,
        construction: construction.map(|(_, c)| c),
        modules,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const COMPRESSED: &str = r#"
# compressed Gorenstein ring
[field]
name = QQ

[ring]
variables = x, y, z
relations = "x*z", "z^2 + x*y", "y^2*z", "x^2", "y^3"

[module M]
ideal = "x"
"#;

    #[test]
    fn compressed_session() {
        let s = parse_session(COMPRESSED).unwrap();
        assert_eq!(s.ring.length(), 8);
        assert!(s.modules.contains_key("M"));
        assert!(s.module("k").is_some());
        assert!(s.module("N").is_none());
    }

    #[test]
    fn linear_relation_is_rejected_with_position() {
        let e = parse_session("[ring]\nvariables = x, y\nrelations = \"x\"\n").err().unwrap();
        assert_eq!(e.line, 3);
        assert_eq!(e.column, 13);
        assert!(e.msg.contains("degree"), "{e}");
    }

    #[test]
    fn syntax_error_column_points_into_string() {
        let e = parse_session("[ring]\nvariables = x\nrelations = \"x^2 + \"\n").err().unwrap();
        assert_eq!(e.line, 3);
        assert!(e.column > 13, "{e}");
    }

    #[test]
    fn connsum_block() {
        let text = r#"
[ring S]
variables = x, y
relations = "x^2", "y^2"
[ring T]
variables = z
relations = "z^3"
[construct]
op = connsum
left = S
right = T
"#;
        let s = parse_session(text).unwrap();
        assert_eq!(s.ring.length(), 5);
        assert!(s.ring.invariants().gorenstein);
    }

    #[test]
    fn trailing_comma_continues_the_list() {
        let text = "[ring]\nvariables = x, y\nrelations = \"x^2\",\n    \"y^2\"  # both squares\n";
        let s = parse_session(text).unwrap();
        assert_eq!(s.ring.length(), 4);
        let bad = "[ring]\nvariables = x, y\nrelations = \"x^2\",\n    \"y\"\n";
        let e = parse_session(bad).err().unwrap();
        assert_eq!((e.line, e.column), (4, 5));
        let dangling = "[ring]\nvariables = x, y\nrelations = \"x^2\",\n";
        assert!(parse_session(dangling).is_err());
    }

    #[test]
    fn lexer_errors() {
        for (text, line) in [
            ("[ring\n", 1),
            ("x = 1\n", 1),
            ("[ring]\nvariables x\n", 2),
            ("[ring]\nvariables = x\nrelations = \"x^2\n", 3),
            ("[bogus]\n", 1),
            ("[ring]\nvariables = x\ncolour = red\n", 3),
            ("[field]\nname = GF(8)\n", 2),
        ] {
            let e = parse_session(text).err().unwrap_or_else(|| panic!("{text} accepted"));
            assert_eq!(e.line, line, "{text}: {e}");
        }
    }

    #[test]
    fn matrix_module() {
        let text = "[ring]\nvariables = x, y\nrelations = \"x^2\", \"y^2\"\n[module M]\ndegrees = 0, 0\ncolumn = \"x\", \"y\"\ncolumn = \"0\", \"x\"\n";
        let s = parse_session(text).unwrap();
        assert_eq!(s.modules["M"].gen_degrees(), &[0, 0]);
    }
}
