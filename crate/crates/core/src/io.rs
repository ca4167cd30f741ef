//! Reading graphs and writing result tables.
//!
//! Edge lists use 0-based ids:
//!
//! ```text
//! # comment
//! n m
//! u v
//! ...
//! ```
//!
//! Matrix Market input must be a symmetric coordinate matrix; its 1-based
//! row/column indices become 0-based vertex ids.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::harness::{AggregateStats, ExValue, RunReport};

/// SuiteSparse selection rule: at most this many stored entries per row.
pub const MTX_MAX_NNZ_PER_ROW: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    MatrixMarket,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" => Ok(GraphFormat::EdgeList),
            "mtx" => Ok(GraphFormat::MatrixMarket),
            other => Err(Error::input(format!("unknown graph format '{other}'"))),
        }
    }
}

impl GraphFormat {
    /// `.mtx` files are Matrix Market, everything else an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("mtx") => GraphFormat::MatrixMarket,
            _ => GraphFormat::EdgeList,
        }
    }
}

/// A parsed graph together with what was dropped or flagged on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub duplicates: usize,
    pub self_loops: usize,
    /// Matrix Market only: more than 20 stored entries per row.
    pub too_dense: bool,
}

impl ParsedGraph {
    pub fn warnings(&self) -> usize {
        self.duplicates + self.self_loops + usize::from(self.too_dense)
    }
}

fn count_dropped(edges: &[(Vertex, Vertex)], graph: &Graph) -> (usize, usize) {
    let loops = edges.iter().filter(|(u, v)| u == v).count();
    (edges.len() - loops - graph.m(), loops)
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found '{tok}'")))
}

pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 'n m' header"))?;
    let mut tokens = header.split_whitespace();
    let (Some(n_tok), Some(m_tok), None) = (tokens.next(), tokens.next(), tokens.next()) else {
        return Err(Error::parse(header_line, "header must be 'n m'"));
    };
    let n = parse_usize(n_tok, header_line, "vertex count")?;
    let m = parse_usize(m_tok, header_line, "edge count")?;

    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        let mut tokens = content.split_whitespace();
        let (Some(u), Some(v), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::parse(line, "edge line must be 'u v'"));
        };
        let u = parse_usize(u, line, "vertex id")?;
        let v = parse_usize(v, line, "vertex id")?;
        if u >= n || v >= n {
            return Err(Error::Input(format!(
                "line {line}: edge ({u}, {v}) has an endpoint outside 0..{n}"
            )));
        }
        if edges.len() == m {
            return Err(Error::parse(
                line,
                format!("more than the declared {m} edges"),
            ));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(
            last_line + 1,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }

    let graph = Graph::from_edges_unchecked(n, edges.iter().copied());
    let (duplicates, self_loops) = count_dropped(&edges, &graph);
    Ok(ParsedGraph {
        graph,
        duplicates,
        self_loops,
        too_dense: false,
    })
}

/// Serializes `g` as an edge list that [`parse_edge_list`] reads back.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_matrix_market(text: &str) -> Result<ParsedGraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

    let (_, banner) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty Matrix Market file"))?;
    let fields: Vec<String> = banner
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(Error::parse(
            1,
            "expected '%%MatrixMarket matrix ...' banner",
        ));
    }
    if fields[2] != "coordinate" {
        return Err(Error::UnsupportedFormat(format!(
            "Matrix Market '{}' storage, only coordinate is supported",
            fields[2]
        )));
    }
    if !matches!(
        fields[3].as_str(),
        "pattern" | "real" | "integer" | "complex"
    ) {
        return Err(Error::parse(
            1,
            format!("unknown field type '{}'", fields[3]),
        ));
    }
    if fields[4] != "symmetric" {
        return Err(Error::UnsupportedFormat(format!(
            "'{}' matrix, only symmetric matrices can be read as graphs",
            fields[4]
        )));
    }

    let mut lines = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_line, size) = lines
        .next()
        .ok_or_else(|| Error::parse(2, "missing 'rows cols nnz' line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    if dims.len() != 3 {
        return Err(Error::parse(size_line, "size line must be 'rows cols nnz'"));
    }
    let rows = parse_usize(dims[0], size_line, "row count")?;
    let cols = parse_usize(dims[1], size_line, "column count")?;
    let nnz = parse_usize(dims[2], size_line, "entry count")?;
    if rows != cols {
        return Err(Error::Input(format!(
            "adjacency matrix must be square, got {rows}x{cols}"
        )));
    }

    let mut edges = Vec::with_capacity(nnz);
    let mut entries = 0;
    let mut last_line = size_line;
    for (line, content) in lines {
        last_line = line;
        let mut tokens = content.split_whitespace();
        let (Some(i), Some(j)) = (tokens.next(), tokens.next()) else {
            return Err(Error::parse(line, "entry must start with 'row col'"));
        };
        let i = parse_usize(i, line, "row index")?;
        let j = parse_usize(j, line, "column index")?;
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(Error::Input(format!(
                "line {line}: entry ({i}, {j}) outside 1..={rows}"
            )));
        }
        entries += 1;
        if entries > nnz {
            return Err(Error::parse(
                line,
                format!("more than the declared {nnz} entries"),
            ));
        }
        edges.push((i - 1, j - 1));
    }
    if entries != nnz {
        return Err(Error::parse(
            last_line + 1,
            format!("declared {nnz} entries, found {entries}"),
        ));
    }

    let graph = Graph::from_edges_unchecked(rows, edges.iter().copied());
    let (duplicates, self_loops) = count_dropped(&edges, &graph);
    Ok(ParsedGraph {
        graph,
        duplicates,
        self_loops,
        too_dense: nnz > MTX_MAX_NNZ_PER_ROW * rows,
    })
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<ParsedGraph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::MatrixMarket => parse_matrix_market(text),
    }
}

/// Reads a graph file; `format` defaults to a guess from the extension.
pub fn read_graph(path: &Path, format: Option<GraphFormat>) -> Result<ParsedGraph> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_graph(
        &text,
        format.unwrap_or_else(|| GraphFormat::from_path(path)),
    )
}

/// `(aa - la) * 100 / ex` rounded half-up to two decimals, or `--` when
/// there is no improvement.
pub fn format_imprv(aa: usize, la: usize, ex: usize) -> String {
    if aa <= la || ex == 0 {
        return "--".to_string();
    }
    let hundredths = ((aa - la) as u128 * 20_000 + ex as u128) / (2 * ex as u128);
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

fn format_ex(ex: Option<ExValue>) -> String {
    match ex {
        None => "--".to_string(),
        Some(ExValue {
            value,
            proven: true,
        }) => value.to_string(),
        Some(ExValue {
            value,
            proven: false,
        }) => format!("~{value}"),
    }
}

pub const REPORT_HEADER: &str = "id,n,m,ex,aa,la,imprv";

/// One CSV line (without newline) in the report table layout.
pub fn format_report_row(r: &RunReport) -> String {
    let imprv = match r.ex {
        Some(ex) => format_imprv(r.aa, r.la, ex.value),
        None => "--".to_string(),
    };
    format!(
        "{},{},{},{},{},{},{}",
        r.id,
        r.n,
        r.m,
        format_ex(r.ex),
        r.aa,
        r.la,
        imprv
    )
}

pub fn format_report_csv(rows: &[RunReport]) -> String {
    let mut out = String::new();
    out.push_str(REPORT_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format_report_row(r));
        out.push('\n');
    }
    out
}

/// Aggregate block, one `# ` comment line per category after a header line.
pub fn format_aggregate_block(stats: &[AggregateStats]) -> String {
    let mut out = String::from("# category,count,pct_improved,avg_imprv\n");
    for s in stats {
        let avg = s
            .avg_imprv
            .map(|a| format!("{a:.2}"))
            .unwrap_or_else(|| "--".to_string());
        writeln!(
            out,
            "# {},{},{:.2},{}",
            s.category, s.count, s.pct_improved, avg
        )
        .unwrap();
    }
    out
}

pub fn write_report_csv(rows: &[RunReport], path: &Path) -> Result<()> {
    fs::write(path, format_report_csv(rows)).map_err(|e| Error::io(path, e))
}

/// Report rows followed by the aggregate block.
pub fn write_experiment_csv(
    rows: &[RunReport],
    stats: &[AggregateStats],
    path: &Path,
) -> Result<()> {
    let mut text = format_report_csv(rows);
    text.push_str(&format_aggregate_block(stats));
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
