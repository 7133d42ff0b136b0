//! Demonstrations (sequences and sequences of sequences of labelled points) and
//! the cell complex a demonstration learner glues from them.
//!
//! Text format, one statement per line (`#` starts a comment):
//!
//! ```text
//! point a1 0.0 1.0        # optional coordinates
//! seq a b c a             # a closed loop: first label repeated at the end
//! sos {
//!   seq a1 a2 a3 a1;
//!   seq b1 b2 b3 b1;
//! }
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::complex::{Simplex, StaticComplex};
use crate::error::{Error, Result};
use crate::shapes::Point;

#[derive(Debug, Clone, PartialEq)]
pub enum DemoItem {
    Sequence(Vec<String>),
    /// Member sequences all have the same length.
    SequenceOfSequences(Vec<Vec<String>>),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DemonstrationSet {
    pub points: BTreeMap<String, Option<Point>>,
    pub items: Vec<DemoItem>,
}

fn owned(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

impl DemonstrationSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_sequence(mut self, labels: &[&str]) -> Self {
        self.items.push(DemoItem::Sequence(owned(labels)));
        self
    }

    pub fn with_sequences(mut self, seqs: &[&[&str]]) -> Self {
        self.items
            .push(DemoItem::SequenceOfSequences(seqs.iter().map(|s| owned(s)).collect()));
        self
    }

    pub fn validate(&self) -> Result<()> {
        for item in &self.items {
            match item {
                DemoItem::Sequence(seq) if seq.is_empty() => {
                    return Err(Error::InvalidArgument("empty sequence".into()))
                }
                DemoItem::SequenceOfSequences(seqs) => {
                    let expected = seqs.first().map_or(0, Vec::len);
                    if expected == 0 {
                        return Err(Error::InvalidArgument("empty sequence of sequences".into()));
                    }
                    if let Some(bad) = seqs.iter().find(|s| s.len() != expected) {
                        return Err(Error::RaggedSequences {
                            expected,
                            found: bad.len(),
                        });
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Distinct labels used by the items, in order of first appearance.
    pub fn labels(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let seqs = self.items.iter().flat_map(|item| match item {
            DemoItem::Sequence(s) => std::slice::from_ref(s),
            DemoItem::SequenceOfSequences(ss) => ss.as_slice(),
        });
        for l in seqs.flatten() {
            if seen.insert(l.as_str()) {
                out.push(l.as_str());
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut set = DemonstrationSet::new();
        // tokens with their line numbers; braces and semicolons are tokens
        let mut tokens: Vec<(usize, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let spaced = line.replace('{', " { ").replace('}', " } ").replace(';', " ; ");
            tokens.extend(spaced.split_whitespace().map(|t| (idx + 1, t.to_string())));
        }
        let mut it = tokens.into_iter().peekable();
        while let Some((line, tok)) = it.next() {
            match tok.as_str() {
                "point" => {
                    let (_, label) = it
                        .next()
                        .filter(|(l, _)| *l == line)
                        .ok_or_else(|| Error::parse(line, "point needs a label"))?;
                    check_label(line, &label)?;
                    let mut coords = Vec::new();
                    while let Some((l, t)) = it.peek() {
                        if *l != line {
                            break;
                        }
                        let v: f64 = t
                            .parse()
                            .map_err(|_| Error::parse(line, format!("bad coordinate {t:?}")))?;
                        coords.push(v);
                        it.next();
                    }
                    let p = match coords.len() {
                        0 => None,
                        2 | 3 => Some(
                            Point::from_slice(&coords).map_err(|e| Error::parse(line, e.to_string()))?,
                        ),
                        k => return Err(Error::parse(line, format!("point has {k} coordinates"))),
                    };
                    if set.points.insert(label.clone(), p).is_some() {
                        return Err(Error::parse(line, format!("point {label:?} declared twice")));
                    }
                }
                "seq" => {
                    let mut seq = Vec::new();
                    while let Some((l, t)) = it.peek() {
                        if *l != line || t == ";" {
                            break;
                        }
                        check_label(*l, t)?;
                        seq.push(t.clone());
                        it.next();
                    }
                    if seq.is_empty() {
                        return Err(Error::parse(line, "seq needs at least one label"));
                    }
                    set.items.push(DemoItem::Sequence(seq));
                }
                "sos" => {
                    match it.next() {
                        Some((_, t)) if t == "{" => {}
                        _ => return Err(Error::parse(line, "expected '{' after sos")),
                    }
                    let mut seqs: Vec<Vec<String>> = Vec::new();
                    loop {
                        let (l, t) = it
                            .next()
                            .ok_or_else(|| Error::parse(line, "unterminated sos block"))?;
                        match t.as_str() {
                            "}" => break,
                            ";" => continue,
                            "seq" => {
                                let mut seq = Vec::new();
                                loop {
                                    let (l2, t2) = it.peek().cloned().ok_or_else(|| {
                                        Error::parse(l, "unterminated sequence in sos block")
                                    })?;
                                    if t2 == ";" || t2 == "}" || t2 == "seq" {
                                        break;
                                    }
                                    check_label(l2, &t2)?;
                                    seq.push(t2);
                                    it.next();
                                }
                                if seq.is_empty() {
                                    return Err(Error::parse(l, "seq needs at least one label"));
                                }
                                if let Some(first) = seqs.first() {
                                    if first.len() != seq.len() {
                                        return Err(Error::parse(
                                            l,
                                            format!(
                                                "ragged sequence of sequences: expected length {}, found {}",
                                                first.len(),
                                                seq.len()
                                            ),
                                        ));
                                    }
                                }
                                seqs.push(seq);
                            }
                            other => {
                                return Err(Error::parse(l, format!("unexpected token {other:?} in sos block")))
                            }
                        }
                    }
                    if seqs.is_empty() {
                        return Err(Error::parse(line, "empty sos block"));
                    }
                    set.items.push(DemoItem::SequenceOfSequences(seqs));
                }
                other => return Err(Error::parse(line, format!("unknown statement {other:?}"))),
            }
        }
        Ok(set)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (label, p) in &self.points {
            let _ = write!(out, "point {label}");
            if let Some(p) = p {
                for c in p.coords() {
                    let _ = write!(out, " {}", crate::io::fmt_sig17(*c));
                }
            }
            out.push('\n');
        }
        for item in &self.items {
            match item {
                DemoItem::Sequence(s) => {
                    let _ = writeln!(out, "seq {}", s.join(" "));
                }
                DemoItem::SequenceOfSequences(ss) => {
                    out.push_str("sos {\n");
                    for s in ss {
                        let _ = writeln!(out, "  seq {};", s.join(" "));
                    }
                    out.push_str("}\n");
                }
            }
        }
        out
    }
}

fn check_label(line: usize, label: &str) -> Result<()> {
    if matches!(label, "seq" | "sos" | "point" | "{" | "}" | ";") {
        return Err(Error::parse(line, format!("{label:?} is not a valid label")));
    }
    Ok(())
}

/// The complex glued by a demonstration learner. Edges are unordered pairs and
/// are stored once no matter how often they are demonstrated.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DemoComplex {
    pub vertices: BTreeSet<String>,
    pub edges: BTreeSet<(String, String)>,
    pub triangles: BTreeSet<[String; 3]>,
}

impl DemoComplex {
    fn add_vertex(&mut self, v: &str) {
        if !self.vertices.contains(v) {
            self.vertices.insert(v.to_string());
        }
    }

    fn add_edge(&mut self, a: &str, b: &str) {
        if a == b {
            return;
        }
        self.add_vertex(a);
        self.add_vertex(b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.edges.insert((lo.to_string(), hi.to_string()));
    }

    fn add_triangle(&mut self, a: &str, b: &str, c: &str) {
        if a == b || b == c || a == c {
            return;
        }
        self.add_edge(a, b);
        self.add_edge(b, c);
        self.add_edge(a, c);
        let mut t = [a.to_string(), b.to_string(), c.to_string()];
        t.sort();
        self.triangles.insert(t);
    }

    fn add_path(&mut self, seq: &[String]) {
        for v in seq {
            self.add_vertex(v);
        }
        for w in seq.windows(2) {
            self.add_edge(&w[0], &w[1]);
        }
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.triangles.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.counts();
        v as i64 - e as i64 + f as i64
    }

    /// Re-index labels (in sorted order) as integer vertices.
    pub fn to_static(&self) -> StaticComplex {
        let index: BTreeMap<&str, u32> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i as u32))
            .collect();
        let mut simplices: Vec<Simplex> = index.values().map(|&i| Simplex::vertex(i)).collect();
        for (a, b) in &self.edges {
            simplices.push(Simplex::new(&[index[a.as_str()], index[b.as_str()]]).expect("distinct"));
        }
        for [a, b, c] in &self.triangles {
            simplices.push(
                Simplex::new(&[index[a.as_str()], index[b.as_str()], index[c.as_str()]])
                    .expect("distinct"),
            );
        }
        StaticComplex::new_unchecked(simplices)
    }
}

/// Glue the demonstration complex.
///
/// Each sequence contributes a path through its labels. Consecutive sequences
/// `s`, `t` of a sequence of sequences are joined by rungs `{s[i], t[i]}` and by
/// the quads `(s[i], s[i+1], t[i+1], t[i])`, each split along the diagonal
/// `{s[i], t[i+1]}`. Degenerate triangles (repeated labels) are skipped and every
/// edge is stored once.
pub fn build_demo_complex(d: &DemonstrationSet) -> Result<DemoComplex> {
    d.validate()?;
    let mut cx = DemoComplex::default();
    for item in &d.items {
        match item {
            DemoItem::Sequence(seq) => cx.add_path(seq),
            DemoItem::SequenceOfSequences(seqs) => {
                for s in seqs {
                    cx.add_path(s);
                }
                for pair in seqs.windows(2) {
                    let (s, t) = (&pair[0], &pair[1]);
                    for i in 0..s.len() {
                        cx.add_edge(&s[i], &t[i]);
                    }
                    for i in 0..s.len().saturating_sub(1) {
                        cx.add_edge(&s[i], &t[i + 1]);
                        cx.add_triangle(&s[i], &s[i + 1], &t[i + 1]);
                        cx.add_triangle(&s[i], &t[i + 1], &t[i]);
                    }
                }
            }
        }
    }
    Ok(cx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> DemonstrationSet {
        DemonstrationSet::new().with_sequences(&[
            &["a1", "a2", "a3", "a1"],
            &["b1", "b2", "b3", "b1"],
            &["c1", "c2", "c3", "c1"],
            &["a1", "a2", "a3", "a1"],
        ])
    }

    #[test]
    fn circle_loop() {
        let d = DemonstrationSet::new().with_sequence(&["a", "b", "c", "a"]);
        let cx = build_demo_complex(&d).unwrap();
        assert_eq!(cx.counts(), (3, 3, 0));
    }

    #[test]
    fn open_path() {
        let d = DemonstrationSet::new().with_sequence(&["a", "b"]);
        assert_eq!(build_demo_complex(&d).unwrap().counts(), (2, 1, 0));
    }

    #[test]
    fn torus_counts() {
        let cx = build_demo_complex(&torus()).unwrap();
        assert_eq!(cx.counts(), (9, 27, 18));
        assert_eq!(cx.euler_characteristic(), 0);
    }

    #[test]
    fn pants_counts() {
        let d = DemonstrationSet::new()
            .with_sequences(&[&["a1", "a2", "a3", "a6"], &["b1", "b2", "b3", "b6"]])
            .with_sequences(&[&["a1", "a4", "a5", "a6"], &["b1", "b4", "b5", "b6"]]);
        assert_eq!(build_demo_complex(&d).unwrap().counts(), (12, 24, 12));
    }

    #[test]
    fn degenerate_gluing_quads() {
        // two loops sharing b1: rungs b1-b1 vanish, triangles touching them too
        let d = DemonstrationSet::new()
            .with_sequences(&[&["b1", "b2", "b3", "b1"], &["b1", "b4", "b5", "b1"]]);
        let cx = build_demo_complex(&d).unwrap();
        assert_eq!(cx.vertices.len(), 5);
        // 6 loop edges + rungs b2b4, b3b5 + diagonals b2b5 (b1b4, b3b1 already loop edges)
        assert_eq!(cx.edges.len(), 9);
        // quad 1: (b1,b2,b4) only; quad 2: (b2,b3,b5),(b2,b5,b4); quad 3: (b3,b1,b5) only
        assert_eq!(cx.triangles.len(), 4);
    }

    #[test]
    fn ragged_rejected() {
        let d = DemonstrationSet::new().with_sequences(&[&["a", "b", "c"], &["d", "e"]]);
        assert!(matches!(
            build_demo_complex(&d),
            Err(Error::RaggedSequences { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn repetition_is_idempotent() {
        let mut d = torus();
        let once = build_demo_complex(&d).unwrap();
        d.items.push(d.items[0].clone());
        assert_eq!(build_demo_complex(&d).unwrap(), once);
    }

    #[test]
    fn parse_and_print() {
        let text = "# torus\npoint a1 0 1\npoint q\nseq a b c a\nsos {\n  seq a1 a2 a3 a1;\n  seq b1 b2 b3 b1;\n}\n";
        let d = DemonstrationSet::parse(text).unwrap();
        assert_eq!(d.items.len(), 2);
        assert_eq!(d.points.len(), 2);
        assert!(d.points["q"].is_none());
        let again = DemonstrationSet::parse(&d.to_text()).unwrap();
        assert_eq!(again, d);
        let inline = DemonstrationSet::parse("sos { seq a b a; seq c d c; }").unwrap();
        assert_eq!(
            inline.items,
            vec![DemoItem::SequenceOfSequences(vec![
                owned(&["a", "b", "a"]),
                owned(&["c", "d", "c"])
            ])]
        );
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = DemonstrationSet::parse("seq a b\nbogus x\n").unwrap_err();
        assert_eq!(err, Error::parse(2, "unknown statement \"bogus\""));
        let err = DemonstrationSet::parse("sos {\n seq a b c;\n seq d e;\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = DemonstrationSet::parse("point p 1 x").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(DemonstrationSet::parse("sos { seq a b;").is_err());
    }
}
