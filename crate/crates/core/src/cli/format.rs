//! The object file format.
//!
//! ```text
//! # comments run to the end of the line
//! ring Z
//! split S = [0,1] [2,1]
//! complex C
//!   degree -1 [0,1]
//!   degree 0 S
//!   d -1 [2,0,0,0,-2]
//! end
//! seq A
//!   window 0 1
//!   dims 1 1
//!   t 0 [[0]]
//! end
//! filt F
//!   window 0 1
//!   dims 2 1
//!   t 0 [[1],[1]]
//! end
//! ```
//!
//! A split object lists `[twist, rank]` blocks. A complex lists its degrees and the
//! nonzero differential entries `[row twist, row, column twist, column, coefficient]`,
//! rows and columns counted inside the block of that twist. `t n` is the transition
//! `a_{n+1} → a_n`; transitions with an empty matrix may be omitted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::filtered::{FiltObject, SeqObject};
use crate::homotopy::{FiltComplex, SplitObject};
use crate::linalg::{BaseRing, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Split(SplitObject),
    Complex(FiltComplex),
    Seq(SeqObject),
    Filt(FiltObject),
}

impl Item {
    /// The item viewed as a complex: split objects sit in degree zero.
    pub fn as_complex(&self, ring: BaseRing) -> Option<FiltComplex> {
        match self {
            Item::Split(s) => Some(FiltComplex::concentrated(ring, s, 0)),
            Item::Complex(c) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Item::Split(_) => "split",
            Item::Complex(_) => "complex",
            Item::Seq(_) => "seq",
            Item::Filt(_) => "filt",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectFile {
    pub ring: BaseRing,
    pub items: Vec<(String, Item)>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Atom(String),
    List(Vec<Node>),
}

/// Whitespace-separated words; bracket groups may contain spaces.
fn tokenize(line: &str, ln: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in line.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(perr(ln, "unbalanced ']'"));
                }
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(perr(ln, "unbalanced '['"));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_node(s: &str, ln: usize) -> Result<Node> {
    fn go(chars: &[char], pos: &mut usize, ln: usize) -> Result<Node> {
        if chars.get(*pos) == Some(&'[') {
            *pos += 1;
            let mut items = Vec::new();
            if chars.get(*pos) == Some(&']') {
                *pos += 1;
                return Ok(Node::List(items));
            }
            loop {
                items.push(go(chars, pos, ln)?);
                match chars.get(*pos) {
                    Some(',') => *pos += 1,
                    Some(']') => {
                        *pos += 1;
                        return Ok(Node::List(items));
                    }
                    _ => return Err(perr(ln, "expected ',' or ']'")),
                }
            }
        }
        let start = *pos;
        while *pos < chars.len() && !matches!(chars[*pos], ',' | ']' | '[') {
            *pos += 1;
        }
        if start == *pos {
            return Err(perr(ln, "empty list entry"));
        }
        Ok(Node::Atom(chars[start..*pos].iter().collect()))
    }
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0;
    let n = go(&chars, &mut pos, ln)?;
    if pos != chars.len() {
        return Err(perr(ln, format!("trailing characters in '{s}'")));
    }
    Ok(n)
}

fn atoms(n: &Node, ln: usize) -> Result<Vec<String>> {
    match n {
        Node::List(v) => v
            .iter()
            .map(|x| match x {
                Node::Atom(a) => Ok(a.clone()),
                Node::List(_) => Err(perr(ln, "nested list where a flat list was expected")),
            })
            .collect(),
        Node::Atom(_) => Err(perr(ln, "expected a bracketed list")),
    }
}

fn int<T: std::str::FromStr>(s: &str, ln: usize) -> Result<T> {
    s.parse().map_err(|_| perr(ln, format!("expected an integer, got '{s}'")))
}

fn parse_matrix(ring: BaseRing, s: &str, rows: usize, cols: usize, ln: usize) -> Result<Matrix> {
    let node = parse_node(s, ln)?;
    let Node::List(rs) = node else {
        return Err(perr(ln, "expected a matrix [[..],..]"));
    };
    if rows * cols == 0 {
        return Ok(Matrix::zeros(ring, rows, cols));
    }
    if rs.len() != rows {
        return Err(perr(ln, format!("expected {rows} rows, got {}", rs.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in &rs {
        let a = atoms(r, ln)?;
        if a.len() != cols {
            return Err(perr(ln, format!("expected {cols} columns, got {}", a.len())));
        }
        for x in a {
            data.push(ring.parse_elem(&x).map_err(|e| perr(ln, e.to_string()))?);
        }
    }
    Matrix::from_entries(ring, rows, cols, data).map_err(|e| perr(ln, e.to_string()))
}

fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|i| format!("[{}]", (0..m.cols()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>().join(","))).collect();
    format!("[{}]", rows.join(","))
}

fn parse_split(tokens: &[String], ln: usize) -> Result<SplitObject> {
    let mut blocks = Vec::new();
    for t in tokens {
        let a = atoms(&parse_node(t, ln)?, ln)?;
        if a.len() != 2 {
            return Err(perr(ln, format!("split blocks are [twist, rank], got '{t}'")));
        }
        blocks.push((int::<i64>(&a[0], ln)?, int::<usize>(&a[1], ln)?));
    }
    Ok(SplitObject::new(blocks))
}

fn split_text(s: &SplitObject) -> String {
    s.blocks().iter().map(|(t, r)| format!("[{t},{r}]")).collect::<Vec<_>>().join(" ")
}

/// Index of `(twist, i)` in the sorted basis of `s`.
fn basis_index(s: &SplitObject, twist: i64, i: usize, ln: usize) -> Result<usize> {
    let mut off = 0;
    for &(t, r) in s.blocks() {
        if t == twist {
            if i >= r {
                return Err(perr(ln, format!("index {i} outside the block of twist {twist} (rank {r})")));
            }
            return Ok(off + i);
        }
        off += r;
    }
    Err(perr(ln, format!("no block of twist {twist}")))
}

fn block_position(s: &SplitObject, idx: usize) -> (i64, usize) {
    let mut off = 0;
    for &(t, r) in s.blocks() {
        if idx < off + r {
            return (t, idx - off);
        }
        off += r;
    }
    unreachable!("index inside the object")
}

struct Block {
    kind: String,
    name: String,
    start: usize,
    lines: Vec<(usize, Vec<String>)>,
    end: usize,
}

impl ObjectFile {
    pub fn new(ring: BaseRing) -> Self {
        ObjectFile { ring, items: vec![] }
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn complex(&self, name: &str) -> Result<FiltComplex> {
        self.get(name)
            .ok_or_else(|| perr(0, format!("no object named '{name}'")))?
            .as_complex(self.ring)
            .ok_or_else(|| perr(0, format!("'{name}' is not a complex or split object")))
    }

    pub fn push(&mut self, name: &str, item: Item) {
        self.items.push((name.to_string(), item));
    }

    pub fn parse(text: &str) -> Result<ObjectFile> {
        let mut ring = None;
        let mut file: Option<ObjectFile> = None;
        let mut block: Option<Block> = None;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("");
            let toks = tokenize(line, ln)?;
            if toks.is_empty() {
                continue;
            }
            if let Some(b) = block.as_mut() {
                if toks[0] == "end" {
                    let mut b = block.take().expect("open block");
                    b.end = ln;
                    let f = file.as_mut().expect("ring declared");
                    let item = build_block(f, &b)?;
                    f.items.push((b.name, item));
                } else {
                    b.lines.push((ln, toks));
                }
                continue;
            }
            match toks[0].as_str() {
                "ring" => {
                    if ring.is_some() {
                        return Err(perr(ln, "ring declared twice"));
                    }
                    let r: BaseRing =
                        toks.get(1).ok_or_else(|| perr(ln, "ring needs a value"))?.parse().map_err(|e: Error| perr(ln, e.to_string()))?;
                    ring = Some(r);
                    file = Some(ObjectFile::new(r));
                }
                kind @ ("split" | "complex" | "seq" | "filt") => {
                    let f = file.as_mut().ok_or_else(|| perr(ln, "the ring must be declared first"))?;
                    let name = toks.get(1).ok_or_else(|| perr(ln, "missing name"))?.clone();
                    if f.get(&name).is_some() {
                        return Err(perr(ln, format!("duplicate name '{name}'")));
                    }
                    if kind == "split" {
                        if toks.get(2).map(String::as_str) != Some("=") {
                            return Err(perr(ln, "expected 'split NAME = [twist,rank] ...'"));
                        }
                        let s = parse_split(&toks[3..], ln)?;
                        f.items.push((name, Item::Split(s)));
                    } else {
                        if toks.len() > 2 {
                            return Err(perr(ln, "unexpected tokens after the name"));
                        }
                        block = Some(Block { kind: kind.to_string(), name, start: ln, lines: vec![], end: 0 });
                    }
                }
                other => return Err(perr(ln, format!("unknown declaration '{other}'"))),
            }
        }
        if let Some(b) = block {
            return Err(perr(b.start, format!("{} '{}' is missing 'end'", b.kind, b.name)));
        }
        file.ok_or_else(|| perr(1, "missing ring declaration"))
    }

    /// Canonical text; `parse` inverts it.
    pub fn to_text(&self) -> String {
        let mut out = format!("ring {}\n", self.ring);
        for (name, item) in &self.items {
            match item {
                Item::Split(s) => {
                    let _ = writeln!(out, "split {name} = {}", split_text(s));
                }
                Item::Complex(c) => {
                    let _ = writeln!(out, "complex {name}");
                    out.push_str(&complex_body(c));
                    out.push_str("end\n");
                }
                Item::Seq(a) => {
                    let _ = writeln!(out, "seq {name}");
                    out.push_str(&seq_body(a));
                    out.push_str("end\n");
                }
                Item::Filt(a) => {
                    let _ = writeln!(out, "filt {name}");
                    out.push_str(&seq_body(a));
                    out.push_str("end\n");
                }
            }
        }
        out
    }
}

fn complex_body(c: &FiltComplex) -> String {
    let (c, _) = c.sorted();
    let mut out = String::new();
    for k in c.degrees() {
        let line = format!("  degree {k} {}", split_text(&c.split_object(k)));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    for k in c.degrees() {
        let d = c.diff(k);
        let (src, tgt) = (c.split_object(k), c.split_object(k + 1));
        let mut entries = Vec::new();
        for r in 0..d.rows() {
            for col in 0..d.cols() {
                let v = d.get(r, col);
                if !v.is_zero() {
                    let (rt, ri) = block_position(&tgt, r);
                    let (ct, ci) = block_position(&src, col);
                    entries.push(format!("[{rt},{ri},{ct},{ci},{v}]"));
                }
            }
        }
        if !entries.is_empty() {
            let _ = writeln!(out, "  d {k} {}", entries.join(" "));
        }
    }
    out
}

fn seq_body(a: &SeqObject) -> String {
    let mut out = format!("  window {} {}\n  dims {}\n", a.lo(), a.hi(), a.dims().iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
    for (i, t) in a.transitions().iter().enumerate() {
        if t.rows() * t.cols() > 0 {
            let _ = writeln!(out, "  t {} {}", a.lo() + i as i64, matrix_text(t));
        }
    }
    out
}

fn build_block(f: &ObjectFile, b: &Block) -> Result<Item> {
    match b.kind.as_str() {
        "complex" => build_complex(f, b).map(Item::Complex),
        "seq" => build_seq(f.ring, b).map(Item::Seq),
        _ => {
            let a = build_seq(f.ring, b)?;
            FiltObject::try_from(a).map(Item::Filt).map_err(|e| perr(b.start, e.to_string()))
        }
    }
}

fn build_complex(f: &ObjectFile, b: &Block) -> Result<FiltComplex> {
    let ring = f.ring;
    let mut objects: BTreeMap<i64, SplitObject> = BTreeMap::new();
    let mut entries: Vec<(usize, i64, Vec<String>)> = Vec::new();
    let mut d_lines: BTreeMap<i64, usize> = BTreeMap::new();
    for (ln, toks) in &b.lines {
        let ln = *ln;
        match toks[0].as_str() {
            "degree" => {
                let k: i64 = int(toks.get(1).ok_or_else(|| perr(ln, "degree needs a number"))?, ln)?;
                if objects.contains_key(&k) {
                    return Err(perr(ln, format!("degree {k} declared twice")));
                }
                let obj = match toks.get(2) {
                    Some(t) if !t.starts_with('[') => {
                        if toks.len() > 3 {
                            return Err(perr(ln, "a named object stands alone"));
                        }
                        match f.get(t) {
                            Some(Item::Split(s)) => s.clone(),
                            _ => return Err(perr(ln, format!("'{t}' is not a split object"))),
                        }
                    }
                    _ => parse_split(&toks[2..], ln)?,
                };
                objects.insert(k, obj);
            }
            "d" => {
                let k: i64 = int(toks.get(1).ok_or_else(|| perr(ln, "d needs a degree"))?, ln)?;
                d_lines.insert(k, ln);
                for t in &toks[2..] {
                    let a = atoms(&parse_node(t, ln)?, ln)?;
                    if a.len() != 5 {
                        return Err(perr(ln, format!("entries are [row twist, row, col twist, col, coefficient], got '{t}'")));
                    }
                    entries.push((ln, k, a));
                }
            }
            other => return Err(perr(ln, format!("unknown complex line '{other}'"))),
        }
    }
    let mut diffs: BTreeMap<i64, Matrix> = BTreeMap::new();
    for (ln, k, a) in entries {
        let (src, tgt) = match (objects.get(&k), objects.get(&(k + 1))) {
            (Some(s), Some(t)) => (s, t),
            _ => return Err(perr(ln, format!("degrees {k} and {} must both be declared", k + 1))),
        };
        let (rt, ri, ct, ci) = (int::<i64>(&a[0], ln)?, int::<usize>(&a[1], ln)?, int::<i64>(&a[2], ln)?, int::<usize>(&a[3], ln)?);
        if rt < ct {
            return Err(perr(ln, format!("entry from twist {ct} to twist {rt} needs β^{}, a negative power", rt - ct)));
        }
        let r = basis_index(tgt, rt, ri, ln)?;
        let c = basis_index(src, ct, ci, ln)?;
        let v = ring.parse_elem(&a[4]).map_err(|e| perr(ln, e.to_string()))?;
        let m = diffs.entry(k).or_insert_with(|| Matrix::zeros(ring, tgt.rank(), src.rank()));
        if !m.get(r, c).is_zero() {
            return Err(perr(ln, "entry given twice"));
        }
        m.set(r, c, v);
    }
    let objs: BTreeMap<i64, Vec<i64>> = objects.iter().map(|(&k, s)| (k, s.basis())).collect();
    FiltComplex::from_parts(ring, &objs, &diffs).map_err(|e| {
        let ln = match &e {
            Error::NotAComplex(k) => d_lines.get(&(k + 1)).or_else(|| d_lines.get(k)).copied().unwrap_or(b.end),
            _ => b.end,
        };
        perr(ln, e.to_string())
    })
}

fn build_seq(ring: BaseRing, b: &Block) -> Result<SeqObject> {
    let mut window = None;
    let mut dims: Option<Vec<usize>> = None;
    let mut trans: BTreeMap<i64, (usize, String)> = BTreeMap::new();
    for (ln, toks) in &b.lines {
        let ln = *ln;
        match toks[0].as_str() {
            "window" if toks.len() == 3 => window = Some((int::<i64>(&toks[1], ln)?, int::<i64>(&toks[2], ln)?)),
            "dims" => dims = Some(toks[1..].iter().map(|t| int::<usize>(t, ln)).collect::<Result<_>>()?),
            "t" if toks.len() == 3 => {
                trans.insert(int::<i64>(&toks[1], ln)?, (ln, toks[2].clone()));
            }
            other => return Err(perr(ln, format!("unknown or malformed line '{other}'"))),
        }
    }
    let (lo, hi) = window.ok_or_else(|| perr(b.start, "missing window"))?;
    let dims = dims.ok_or_else(|| perr(b.start, "missing dims"))?;
    if hi < lo || dims.len() as i64 != hi - lo + 1 {
        return Err(perr(b.start, format!("window [{lo}, {hi}] needs {} dims, got {}", (hi - lo + 1).max(0), dims.len())));
    }
    let mut ms = Vec::new();
    for n in lo..hi {
        let (r, c) = (dims[(n - lo) as usize], dims[(n - lo + 1) as usize]);
        match trans.remove(&n) {
            Some((ln, s)) => ms.push(parse_matrix(ring, &s, r, c, ln)?),
            None if r * c == 0 => ms.push(Matrix::zeros(ring, r, c)),
            None => return Err(perr(b.end, format!("missing transition t {n}"))),
        }
    }
    if let Some((&n, &(ln, _))) = trans.iter().next() {
        return Err(perr(ln, format!("transition t {n} outside the window")));
    }
    SeqObject::new(ring, lo, dims, ms).map_err(|e| perr(b.end, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "ring Q
split S = [0,1] [2,1]
complex C
  degree -1 [0,1]
  degree 0 [1,1]
  d -1 [1,0,0,0,-2]
end
seq A
  window 0 1
  dims 1 1
  t 0 [[0]]
end
filt F
  window 0 1
  dims 2 1
  t 0 [[1],[1]]
end
";

    #[test]
    fn round_trip() {
        let f = ObjectFile::parse(SAMPLE).unwrap();
        assert_eq!(f.to_text(), SAMPLE);
        assert_eq!(f.complex("C").unwrap(), FiltComplex::cone_beta_power(BaseRing::Rationals, 1, 2));
        assert_eq!(ObjectFile::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn named_degrees_and_comments() {
        let text = "ring Fp:2 # two\nsplit S = [0,1]\ncomplex C\n  degree 3 S\nend\n";
        let f = ObjectFile::parse(text).unwrap();
        assert_eq!(f.complex("C").unwrap(), FiltComplex::twisted_unit(BaseRing::PrimeField(2), 0, -3));
    }

    fn line_of(text: &str) -> usize {
        match ObjectFile::parse(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn twist_violation_is_reported_on_its_line() {
        assert_eq!(line_of("ring Z\ncomplex C\n  degree 0 [1,1]\n  degree 1 [0,1]\n  d 0 [0,0,1,0,1]\nend\n"), 5);
    }

    #[test]
    fn non_complex_is_reported() {
        let text = "ring Q\ncomplex C\n  degree 0 [0,1]\n  degree 1 [0,1]\n  degree 2 [0,1]\n  d 0 [0,0,0,0,1]\n  d 1 [0,0,0,0,1]\nend\n";
        assert_eq!(line_of(text), 7);
    }

    #[test]
    fn other_diagnostics() {
        assert_eq!(line_of("split S = [0,1]\n"), 1);
        assert_eq!(line_of("ring Q\n\nfilt F\n  window 0 1\n  dims 1 1\n  t 0 [[0]]\nend\n"), 3);
        assert_eq!(line_of("ring Z\ncomplex C\n  degree 0 [0,1\nend\n"), 3);
        assert_eq!(line_of("ring Q\nseq A\n  window 0 0\n  dims 1\n"), 2);
    }
}
