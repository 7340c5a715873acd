//! graph6 and edge-list formats.
//!
//! graph6: a size prefix, then the upper triangle column by column
//! (`x(0,1), x(0,2), x(1,2), x(0,3), …`) packed six bits per byte, each byte
//! offset by 63. Padding bits must be zero. An optional `>>graph6<<` header is
//! accepted; a file may hold one graph per line.
//!
//! Edge list: one `u v` pair per line, 0-based, `#` starts a comment. The
//! comment `# n N` fixes the vertex count so isolated vertices survive a
//! round trip.

use std::path::Path;

use crate::error::{input, Error, Result};
use crate::graph::{Graph, GraphBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl GraphFormat {
    /// `.g6` / `.graph6` files are graph6; everything else is an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => GraphFormat::Graph6,
            _ => GraphFormat::EdgeList,
        }
    }
}

fn perr(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

const HEADER: &[u8] = b">>graph6<<";
/// Largest order graph6 can encode with the 6-byte size field.
const MAX_ORDER: u64 = (1 << 36) - 1;

pub fn parse_graph(bytes: &[u8], format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Graph6 => {
            let mut graphs = parse_graph6_list(bytes)?;
            match graphs.len() {
                1 => Ok(graphs.pop().unwrap()),
                0 => Err(perr(0, "no graph in graph6 input")),
                k => Err(input(format!("expected one graph, found {k}"))),
            }
        }
        GraphFormat::EdgeList => parse_edge_list(bytes),
    }
}

pub fn emit_graph(g: &Graph, format: GraphFormat) -> Vec<u8> {
    match format {
        GraphFormat::Graph6 => {
            let mut out = emit_graph6(g);
            out.push(b'\n');
            out
        }
        GraphFormat::EdgeList => emit_edge_list(g),
    }
}

/// Every graph in a graph6 file, one per nonempty line.
pub fn parse_graph6_list(bytes: &[u8]) -> Result<Vec<Graph>> {
    let mut start = 0;
    if bytes.starts_with(HEADER) {
        start = HEADER.len();
    }
    let mut out = Vec::new();
    let mut offset = start;
    for line in bytes[start..].split(|&b| b == b'\n') {
        let body = line.strip_suffix(b"\r").unwrap_or(line);
        if !body.is_empty() {
            out.push(parse_graph6_line(body, offset)?);
        }
        offset += line.len() + 1;
    }
    Ok(out)
}

fn parse_graph6_line(line: &[u8], base: usize) -> Result<Graph> {
    for (i, &b) in line.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(perr(base + i, format!("byte {b:#04x} outside the graph6 range 63..=126")));
        }
    }
    let val = |i: usize| (line[i] - 63) as u64;
    let need = |k: usize| {
        if line.len() < k {
            Err(perr(base + line.len(), "truncated size field"))
        } else {
            Ok(())
        }
    };
    let (n, mut pos) = if line[0] != 126 {
        (val(0), 1)
    } else if line.len() > 1 && line[1] == 126 {
        need(8)?;
        ((2..8).fold(0, |acc, i| acc << 6 | val(i)), 8)
    } else {
        need(4)?;
        ((1..4).fold(0, |acc, i| acc << 6 | val(i)), 4)
    };
    if n > MAX_ORDER {
        return Err(perr(base, "graph order out of range"));
    }
    let n = usize::try_from(n).map_err(|_| perr(base, "graph order does not fit in memory"))?;
    let bits = n.saturating_mul(n.saturating_sub(1)) / 2;
    let body_len = bits.div_ceil(6);
    if line.len() - pos != body_len {
        return Err(perr(
            base + pos,
            format!("expected {body_len} adjacency bytes for n = {n}, found {}", line.len() - pos),
        ));
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = val(pos + k / 6);
            if byte >> (5 - k % 6) & 1 == 1 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = val(pos + k / 6);
        if last & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(perr(base + pos + k / 6, "nonzero padding bits"));
        }
    }
    pos += body_len;
    debug_assert_eq!(pos, line.len());
    Ok(b.build())
}

/// Canonical graph6 for the given labeling (no header, no newline).
pub fn emit_graph6(g: &Graph) -> Vec<u8> {
    let n = g.n() as u64;
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..g.n() {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    out
}

pub fn parse_edge_list(bytes: &[u8]) -> Result<Graph> {
    let text = std::str::from_utf8(bytes).map_err(|e| perr(e.valid_up_to(), "input is not UTF-8"))?;
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut offset = 0;
    for line in text.split('\n') {
        let line_start = offset;
        offset += line.len() + 1;
        let (content, comment) = match line.find('#') {
            Some(i) => (&line[..i], Some(&line[i + 1..])),
            None => (line, None),
        };
        if let Some(c) = comment {
            let mut toks = c.split_whitespace();
            if toks.next() == Some("n") {
                let tok = toks.next().ok_or_else(|| perr(line_start, "missing vertex count after '# n'"))?;
                let n = tok
                    .parse::<usize>()
                    .map_err(|_| perr(line_start, format!("bad vertex count {tok:?}")))?;
                declared = Some(n);
            }
        }
        let toks: Vec<(usize, &str)> = content
            .split_whitespace()
            .map(|t| (t.as_ptr() as usize - text.as_ptr() as usize, t))
            .collect();
        match toks.as_slice() {
            [] => {}
            [(ou, u), (ov, v)] => {
                let u = u.parse::<usize>().map_err(|_| perr(*ou, format!("bad vertex {u:?}")))?;
                let v = v.parse::<usize>().map_err(|_| perr(*ov, format!("bad vertex {v:?}")))?;
                if u == v {
                    return Err(Error::Validation(format!("self-loop at vertex {u} (byte {ou})")));
                }
                edges.push((u, v, *ou));
            }
            _ => return Err(perr(line_start, "expected exactly two vertex ids per line")),
        }
    }
    let max_seen = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < max_seen => {
            return Err(input(format!("edge uses vertex {} but '# n {n}' was declared", max_seen - 1)))
        }
        Some(n) => n,
        None => max_seen,
    };
    let mut b = GraphBuilder::new(n);
    for (u, v, off) in edges {
        if b.has_edge(u, v) {
            return Err(perr(off, format!("duplicate edge {u} {v}")));
        }
        b.add_edge(u, v)?;
    }
    Ok(b.build())
}

pub fn emit_edge_list(g: &Graph) -> Vec<u8> {
    let mut s = format!("# n {}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s.into_bytes()
}

pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let bytes = std::fs::read(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_graph(&bytes, GraphFormat::from_path(path))
}

pub fn read_graph_list_file(path: &Path) -> Result<Vec<Graph>> {
    let bytes = std::fs::read(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    match GraphFormat::from_path(path) {
        GraphFormat::Graph6 => parse_graph6_list(&bytes),
        GraphFormat::EdgeList => Ok(vec![parse_edge_list(&bytes)?]),
    }
}

pub fn write_graph_file(path: &Path, g: &Graph) -> Result<()> {
    std::fs::write(path, emit_graph(g, GraphFormat::from_path(path)))
        .map_err(|e| input(format!("{}: {e}", path.display())))
}
