//! MUC-style `COREF` markup.
//!
//! Mentions are `<COREF ID="..." REF="..." MIN="..." TYPE="...">text</COREF>`
//! elements embedded in running text. Classes are the connected components of
//! the REF links. Other tags are skipped; `MIN`, `TYPE` and unknown attributes
//! are read and ignored. An element without `ID` is identified by its span,
//! written `@start-end` in character offsets.

use std::collections::HashMap;

use crate::error::FormatError;
use crate::mention::{Mention, MentionId, Span};

use super::{decode_utf8, PartitionDocument, SourceFormat};

struct Open {
    tag_offset: usize,
    start: usize,
    id: Option<String>,
    reference: Option<(String, usize)>,
    surface: String,
    order: usize,
}

struct Element {
    order: usize,
    id: Option<String>,
    reference: Option<(String, usize)>,
    surface: String,
    span: Span,
}

pub fn parse_muc_sgml(bytes: &[u8]) -> Result<PartitionDocument, FormatError> {
    let text = decode_utf8(bytes)?;
    let chars: Vec<char> = text.chars().collect();
    let mut open: Vec<Open> = Vec::new();
    let mut closed: Vec<Element> = Vec::new();
    let mut opened = 0;
    let mut docno: Option<String> = None;
    let mut in_docno = false;

    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '<' && chars.get(i + 1).is_some_and(|&n| starts_markup(n)) {
            if chars[i + 1..].starts_with(&['!', '-', '-']) {
                i = find_seq(&chars, i + 4, &['-', '-', '>'])
                    .ok_or_else(|| malformed(i, "unterminated comment"))?
                    + 3;
                continue;
            }
            let end = find_tag_end(&chars, i + 1).ok_or_else(|| malformed(i, "unterminated tag"))?;
            let inner: String = chars[i + 1..end].iter().collect();
            match parse_tag(&inner, i)? {
                Tag::Close(name) if name.eq_ignore_ascii_case("COREF") => {
                    let o = open.pop().ok_or_else(|| FormatError::NestingViolation {
                        offset: i,
                        message: "</COREF> without an open COREF".into(),
                    })?;
                    closed.push(o.close(i));
                }
                Tag::Close(name) if name.eq_ignore_ascii_case("DOCNO") => in_docno = false,
                Tag::Open { name, .. } if name.eq_ignore_ascii_case("DOCNO") => {
                    in_docno = true;
                    docno.get_or_insert_with(String::new);
                }
                Tag::Open {
                    name,
                    attrs,
                    self_closing,
                } if name.eq_ignore_ascii_case("COREF") => {
                    let mut id = None;
                    let mut reference = None;
                    for (key, value, at) in attrs {
                        if key.eq_ignore_ascii_case("ID") {
                            if value.is_empty() {
                                return Err(malformed(at, "empty ID"));
                            }
                            id = Some(value);
                        } else if key.eq_ignore_ascii_case("REF") {
                            reference = Some((value, at));
                        }
                    }
                    let o = Open {
                        tag_offset: i,
                        start: end + 1,
                        id,
                        reference,
                        surface: String::new(),
                        order: opened,
                    };
                    opened += 1;
                    if self_closing {
                        closed.push(o.close(end + 1));
                    } else {
                        open.push(o);
                    }
                }
                _ => {}
            }
            i = end + 1;
            continue;
        }
        for o in &mut open {
            o.surface.push(c);
        }
        if in_docno {
            if let Some(d) = docno.as_mut() {
                d.push(c);
            }
        }
        i += 1;
    }

    if let Some(o) = open.last() {
        return Err(FormatError::NestingViolation {
            offset: o.tag_offset,
            message: "COREF element is never closed".into(),
        });
    }

    closed.sort_by_key(|e| e.order);
    build_document(docno.map(|d| d.trim().to_owned()).unwrap_or_default(), closed)
}

impl Open {
    fn close(self, end: usize) -> Element {
        Element {
            order: self.order,
            id: self.id,
            reference: self.reference,
            surface: self.surface,
            span: Span {
                start: self.start,
                end,
            },
        }
    }
}

fn build_document(doc_id: String, elements: Vec<Element>) -> Result<PartitionDocument, FormatError> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut mentions = Vec::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        let id = match &e.id {
            Some(id) => id.clone(),
            None => format!("@{}-{}", e.span.start, e.span.end),
        };
        if index.insert(id.clone(), i).is_some() {
            return Err(FormatError::DuplicateId { id });
        }
        mentions.push(Mention {
            id: MentionId::new(id),
            surface: Some(e.surface.clone()),
            span: Some(e.span),
        });
    }

    let mut links = DisjointSets::new(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if let Some((target, offset)) = &e.reference {
            // Span-derived ids are not addressable.
            let j = index
                .get(target.as_str())
                .copied()
                .filter(|&j| elements[j].id.is_some())
                .ok_or_else(|| FormatError::DanglingRef {
                    target: target.clone(),
                    offset: *offset,
                })?;
            links.union(i, j);
        }
    }

    let mut groups: Vec<Vec<MentionId>> = Vec::new();
    let mut group_of_root: HashMap<usize, usize> = HashMap::new();
    for (i, mention) in mentions.iter().enumerate() {
        let root = links.find(i);
        let g = *group_of_root.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(mention.id.clone());
    }
    groups.retain(|g| g.len() > 1);

    Ok(PartitionDocument {
        doc_id,
        mentions,
        classes: groups,
        source_format: SourceFormat::MucSgml,
    })
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}

enum Tag {
    Open {
        name: String,
        attrs: Vec<(String, String, usize)>,
        self_closing: bool,
    },
    Close(String),
    Other,
}

fn starts_markup(c: char) -> bool {
    c.is_ascii_alphabetic() || matches!(c, '/' | '!' | '?')
}

fn malformed(offset: usize, message: &str) -> FormatError {
    FormatError::MalformedTag {
        offset,
        message: message.to_owned(),
    }
}

fn find_seq(chars: &[char], from: usize, seq: &[char]) -> Option<usize> {
    (from..chars.len()).find(|&i| chars[i..].starts_with(seq))
}

/// Index of the `>` closing a tag, skipping quoted attribute values.
fn find_tag_end(chars: &[char], from: usize) -> Option<usize> {
    let mut quote = None;
    for (i, &c) in chars.iter().enumerate().skip(from) {
        match (quote, c) {
            (None, '"' | '\'') => quote = Some(c),
            (Some(q), c) if c == q => quote = None,
            (None, '>') => return Some(i),
            (None, '<') => return None,
            _ => {}
        }
    }
    None
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.' | ':')
}

/// `inner` is the text between `<` and `>`; `offset` is the position of `<`.
fn parse_tag(inner: &str, offset: usize) -> Result<Tag, FormatError> {
    if inner.starts_with('!') || inner.starts_with('?') {
        return Ok(Tag::Other);
    }
    if let Some(rest) = inner.strip_prefix('/') {
        let name = rest.trim();
        if name.is_empty() || !name.chars().all(is_name_char) {
            return Err(malformed(offset, "bad closing tag"));
        }
        return Ok(Tag::Close(name.to_owned()));
    }

    let chars: Vec<char> = inner.chars().collect();
    let name_len = chars.iter().take_while(|&&c| is_name_char(c)).count();
    let name: String = chars[..name_len].iter().collect();
    if !name.eq_ignore_ascii_case("COREF") && !name.eq_ignore_ascii_case("DOCNO") {
        return Ok(Tag::Open {
            name,
            attrs: Vec::new(),
            self_closing: false,
        });
    }

    let mut attrs: Vec<(String, String, usize)> = Vec::new();
    let mut self_closing = false;
    let mut i = name_len;
    let at = |i: usize| offset + 1 + i;
    loop {
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if i == chars.len() {
            break;
        }
        if chars[i] == '/' && i + 1 == chars.len() {
            self_closing = true;
            break;
        }
        if i == name_len {
            return Err(malformed(at(i), "expected whitespace after tag name"));
        }
        let key_start = i;
        while i < chars.len() && is_name_char(chars[i]) {
            i += 1;
        }
        if i == key_start {
            return Err(malformed(at(i), "expected attribute name"));
        }
        let key: String = chars[key_start..i].iter().collect();
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if chars.get(i) != Some(&'=') {
            return Err(malformed(at(i), "attribute without value"));
        }
        i += 1;
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        let value_at = at(i);
        let value: String = match chars.get(i) {
            Some(&q @ ('"' | '\'')) => {
                let close = (i + 1..chars.len())
                    .find(|&j| chars[j] == q)
                    .ok_or_else(|| malformed(value_at, "unterminated attribute value"))?;
                let v = chars[i + 1..close].iter().collect();
                i = close + 1;
                v
            }
            Some(_) => {
                let s = i;
                while i < chars.len() && !chars[i].is_whitespace() && !(chars[i] == '/' && i + 1 == chars.len()) {
                    i += 1;
                }
                chars[s..i].iter().collect()
            }
            None => return Err(malformed(value_at, "missing attribute value")),
        };
        if chars.get(i).is_some_and(|c| !c.is_whitespace() && *c != '/') {
            return Err(malformed(at(i), "expected whitespace between attributes"));
        }
        if attrs.iter().any(|(k, ..)| k.eq_ignore_ascii_case(&key)) {
            return Err(malformed(value_at, "repeated attribute"));
        }
        attrs.push((key, value, value_at));
    }
    Ok(Tag::Open {
        name,
        attrs,
        self_closing,
    })
}
