//! Line-oriented text formats.
//!
//! Vertex indices are 0-based; class labels in `class` and `j` lines are
//! 1-based. Blank lines and lines starting with `#` are ignored.
//!
//! ```text
//! phc 1 colouring        phc 1 hypergraph       phc 1 box
//! 2 2 2                  2 2 2                  class 1 0 1
//! 0 0 5                  0 0                    class 2 0 1
//! 0 1 5                  1 1
//! 1 0 5
//! 1 1 5
//! ```
//!
//! A witness adds `j <labels>` and `fiber <coords> : <colour>` lines to the
//! box layout under the header `phc 1 witness`; witness files are accepted
//! wherever a box is expected.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::canonical::CanonicalWitness;
use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::hypergraph::PartiteHypergraph;
use crate::partite::{ClassSizes, JSet, SubBox};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    /// Next meaningful line with its 1-based number.
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        self.inner.by_ref().map(|(i, l)| (i + 1, l.trim())).find(|(_, l)| !l.is_empty() && !l.starts_with('#'))
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn numbers<T: std::str::FromStr>(line: usize, text: &str) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|w| w.parse().map_err(|_| perr(line, format!("`{w}` is not a non-negative integer"))))
        .collect()
}

fn header<'a>(lines: &mut Lines<'a>, accepted: &[&'static str]) -> Result<&'static str> {
    let (no, l) = lines.next_line().ok_or_else(|| perr(1, "empty input"))?;
    let words: Vec<&str> = l.split_whitespace().collect();
    match words.as_slice() {
        ["phc", "1", kind] if accepted.contains(kind) => {
            Ok(accepted.iter().find(|a| *a == kind).expect("matched"))
        }
        ["phc", v, _] if *v != "1" => Err(perr(no, format!("unsupported format version {v}"))),
        _ => Err(perr(no, format!("expected header `phc 1 {}`", accepted.join("|")))),
    }
}

fn sizes_line(lines: &mut Lines<'_>) -> Result<ClassSizes> {
    let (no, l) = lines.next_line().ok_or_else(|| perr(2, "missing size line"))?;
    let v: Vec<usize> = numbers(no, l)?;
    let (&k, sizes) = v.split_first().ok_or_else(|| perr(no, "missing k"))?;
    if sizes.len() != k {
        return Err(perr(no, format!("k = {k} but {} class sizes given", sizes.len())));
    }
    ClassSizes::new(sizes.to_vec()).map_err(|e| perr(no, e.to_string()))
}

fn size_header(sizes: &ClassSizes) -> String {
    let mut s = sizes.k().to_string();
    for n in sizes.sizes() {
        let _ = write!(s, " {n}");
    }
    s
}

fn join(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn write_colouring(col: &Colouring) -> String {
    let mut out = format!("phc 1 colouring\n{}\n", size_header(col.sizes()));
    for (e, c) in col.sizes().edges().zip(col.colours()) {
        let _ = writeln!(out, "{} {c}", join(&e));
    }
    out
}

/// Parses a colouring; every edge must appear exactly once.
pub fn parse_colouring(text: &str) -> Result<Colouring> {
    let mut lines = Lines::new(text);
    header(&mut lines, &["colouring"])?;
    let sizes = sizes_line(&mut lines)?;
    let k = sizes.k();
    let mut colours: Vec<Option<Colour>> = vec![None; sizes.num_edges()];
    while let Some((no, l)) = lines.next_line() {
        let v: Vec<u64> = numbers(no, l)?;
        if v.len() != k + 1 {
            return Err(perr(no, format!("expected {k} indices and a colour")));
        }
        let e: Vec<usize> = v[..k].iter().map(|&x| x as usize).collect();
        let i = sizes.index_of(&e).map_err(|err| perr(no, err.to_string()))?;
        if colours[i].replace(v[k]).is_some() {
            return Err(perr(no, format!("edge ({}) listed twice", join(&e))));
        }
    }
    if let Some(i) = colours.iter().position(Option::is_none) {
        return Err(perr(0, format!("edge ({}) has no colour", join(&sizes.coords_of(i)))));
    }
    Colouring::new(sizes, colours.into_iter().map(|c| c.expect("checked")).collect())
}

pub fn write_hypergraph(h: &PartiteHypergraph) -> String {
    let mut out = format!("phc 1 hypergraph\n{}\n", size_header(h.sizes()));
    for e in h.edges() {
        let _ = writeln!(out, "{}", join(&e));
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<PartiteHypergraph> {
    let mut lines = Lines::new(text);
    header(&mut lines, &["hypergraph"])?;
    let sizes = sizes_line(&mut lines)?;
    let k = sizes.k();
    let mut h = PartiteHypergraph::empty(sizes);
    while let Some((no, l)) = lines.next_line() {
        let e: Vec<usize> = numbers(no, l)?;
        if e.len() != k {
            return Err(perr(no, format!("expected {k} indices")));
        }
        if !h.insert(&e).map_err(|err| perr(no, err.to_string()))? {
            return Err(perr(no, format!("edge ({}) listed twice", join(&e))));
        }
    }
    Ok(h)
}

fn write_classes(out: &mut String, b: &SubBox) {
    for (j, class) in b.classes().iter().enumerate() {
        let _ = writeln!(out, "class {} {}", j + 1, join(class));
    }
}

pub fn write_box(b: &SubBox) -> String {
    let mut out = String::from("phc 1 box\n");
    write_classes(&mut out, b);
    out
}

struct BoxParts {
    j_set: Option<JSet>,
    sub_box: SubBox,
    fibers: BTreeMap<Vec<usize>, Colour>,
}

fn parse_box_parts(text: &str) -> Result<BoxParts> {
    let mut lines = Lines::new(text);
    header(&mut lines, &["box", "witness"])?;
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut j_set = None;
    let mut fibers = BTreeMap::new();
    while let Some((no, l)) = lines.next_line() {
        let (word, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        match word {
            "class" => {
                let v: Vec<usize> = numbers(no, rest)?;
                let (&label, verts) = v.split_first().ok_or_else(|| perr(no, "missing class label"))?;
                if label == 0 {
                    return Err(perr(no, "class labels start at 1"));
                }
                if classes.insert(label, verts.to_vec()).is_some() {
                    return Err(perr(no, format!("class {label} given twice")));
                }
            }
            "j" => {
                let labels: Vec<usize> = numbers(no, rest)?;
                j_set = Some(JSet::from_labels(labels).map_err(|e| perr(no, e.to_string()))?);
            }
            "fiber" => {
                let (coords, colour) =
                    rest.split_once(':').ok_or_else(|| perr(no, "expected `fiber <coords> : <colour>`"))?;
                let coords: Vec<usize> = numbers(no, coords)?;
                let colour: Vec<Colour> = numbers(no, colour)?;
                if colour.len() != 1 {
                    return Err(perr(no, "expected one colour"));
                }
                fibers.insert(coords, colour[0]);
            }
            other => return Err(perr(no, format!("unknown record `{other}`"))),
        }
    }
    let k = classes.len();
    if classes.keys().copied().ne(1..=k) {
        return Err(perr(0, "classes must be labelled 1..k"));
    }
    let sub_box = SubBox::from_unsorted(classes.into_values().collect())
        .map_err(|e| perr(0, e.to_string()))?;
    Ok(BoxParts { j_set, sub_box, fibers })
}

/// Parses a box; witness files are accepted and their extra lines ignored.
pub fn parse_box(text: &str) -> Result<SubBox> {
    Ok(parse_box_parts(text)?.sub_box)
}

pub fn write_witness(w: &CanonicalWitness) -> String {
    let mut out = String::from("phc 1 witness\n");
    out.push('j');
    for l in w.j_set.labels() {
        let _ = write!(out, " {l}");
    }
    out.push('\n');
    write_classes(&mut out, &w.sub_box);
    for (coords, c) in &w.fiber_map {
        out.push_str("fiber");
        for x in coords {
            let _ = write!(out, " {x}");
        }
        let _ = writeln!(out, " : {c}");
    }
    out
}

pub fn parse_witness(text: &str) -> Result<CanonicalWitness> {
    let parts = parse_box_parts(text)?;
    let j_set = parts.j_set.ok_or_else(|| perr(0, "witness has no `j` line"))?;
    Ok(CanonicalWitness { j_set, sub_box: parts.sub_box, fiber_map: parts.fibers })
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_colouring(path: &Path) -> Result<Colouring> {
    parse_colouring(&read_to_string(path)?)
}

pub fn load_hypergraph(path: &Path) -> Result<PartiteHypergraph> {
    parse_hypergraph(&read_to_string(path)?)
}

pub fn load_box(path: &Path) -> Result<SubBox> {
    parse_box(&read_to_string(path)?)
}
