//! AMR corpus files: blank-line-separated records, optional `# ::key value`
//! metadata lines, UTF-8.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::{parse_penman, AmrGraph, Metadata, PenmanError, Pos};

/// One record of an AMR file: the parsed graph plus its location.
#[derive(Debug, Clone)]
pub struct AmrRecord {
    pub graph: AmrGraph,
    /// 0-based record index within the file.
    pub index: usize,
    /// 1-based line where the record starts.
    pub line: usize,
}

/// Errors from reading a corpus carry the record index and a file line so
/// diagnostics point at the real position.
#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("record {index} (line {line}): {source}")]
    Record {
        index: usize,
        line: usize,
        #[source]
        source: PenmanError,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// Reads every record of an AMR file. See [`read_amr_str`].
pub fn read_amr_file(path: &Path) -> Result<Vec<AmrRecord>, CorpusError> {
    let text = fs::read_to_string(path)?;
    read_amr_str(&text)
}

/// Parses corpus text: records separated by one or more blank lines,
/// metadata lines beginning `# ::key value` (recognized keys `id`, `snt`,
/// `lang`; others ignored), remaining lines forming the Penman expression.
pub fn read_amr_str(text: &str) -> Result<Vec<AmrRecord>, CorpusError> {
    struct Block {
        start_line: usize,
        meta: Metadata,
        body: String,
        body_line: usize,
    }

    let mut blocks: Vec<Block> = Vec::new();
    let mut current: Option<Block> = None;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            if let Some(block) = current.take() {
                blocks.push(block);
            }
            continue;
        }
        let block = current.get_or_insert_with(|| Block {
            start_line: line_no,
            meta: Metadata::default(),
            body: String::new(),
            body_line: line_no,
        });
        if let Some(comment) = line.trim_start().strip_prefix('#') {
            parse_metadata_line(comment, &mut block.meta);
            continue;
        }
        if block.body.is_empty() {
            block.body_line = line_no;
        }
        block.body.push_str(line);
        block.body.push('\n');
    }
    if let Some(block) = current.take() {
        blocks.push(block);
    }

    let mut records = Vec::new();
    for block in blocks {
        let index = records.len();
        let graph = parse_penman(&block.body, Some(block.meta)).map_err(|e| {
            let line = match e.pos() {
                Some(Pos { line, .. }) => block.body_line + line - 1,
                None => block.start_line,
            };
            CorpusError::Record {
                index,
                line,
                source: e,
            }
        })?;
        records.push(AmrRecord {
            graph,
            index,
            line: block.start_line,
        });
    }
    Ok(records)
}

fn parse_metadata_line(comment: &str, meta: &mut Metadata) {
    // A comment line may carry several `::key value` fields.
    let mut rest = comment;
    while let Some(start) = rest.find("::") {
        rest = &rest[start + 2..];
        let key_end = rest
            .find(|c: char| c.is_whitespace())
            .unwrap_or(rest.len());
        let key = &rest[..key_end];
        rest = &rest[key_end..];
        let value_end = rest.find(" ::").unwrap_or(rest.len());
        let value = rest[..value_end].trim();
        match key {
            "id" => meta.id = Some(value.to_string()),
            "snt" => meta.snt = Some(value.to_string()),
            "lang" => meta.lang = Some(value.to_string()),
            _ => {}
        }
        rest = &rest[value_end..];
    }
}

/// Writes records back out, one blank line between them.
pub fn write_amr_file<W: Write>(out: &mut W, graphs: &[AmrGraph]) -> std::io::Result<()> {
    for (i, graph) in graphs.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        let meta = graph.metadata();
        if let Some(id) = &meta.id {
            writeln!(out, "# ::id {id}")?;
        }
        if let Some(snt) = &meta.snt {
            writeln!(out, "# ::snt {snt}")?;
        }
        if let Some(lang) = &meta.lang {
            writeln!(out, "# ::lang {lang}")?;
        }
        writeln!(out, "{}", graph.to_penman())?;
    }
    Ok(())
}
