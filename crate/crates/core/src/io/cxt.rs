use crate::fca::{AttributeSet, FormalContext};
use crate::partial::{PartialContext, PartialObjectDescription};

use super::IoError;

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let lines = if text.is_empty() {
            Vec::new()
        } else {
            body.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect()
        };
        Self { lines, pos: 0 }
    }

    /// 1-based number of the next line.
    fn line_no(&self) -> usize {
        self.pos + 1
    }

    fn next(&mut self, what: &str) -> Result<&'a str, IoError> {
        let line = self.lines.get(self.pos).copied().ok_or_else(|| IoError::Format {
            line: self.line_no(),
            message: format!("unexpected end of file, expected {what}"),
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn expect(&mut self, exact: &str, what: &str) -> Result<(), IoError> {
        let line = self.line_no();
        let got = self.next(what)?;
        if got == exact {
            Ok(())
        } else {
            Err(IoError::Format {
                line,
                message: format!("expected {what}, found {got:?}"),
            })
        }
    }

    fn count(&mut self, what: &str) -> Result<usize, IoError> {
        let line = self.line_no();
        let got = self.next(what)?;
        got.trim().parse().map_err(|_| IoError::Format {
            line,
            message: format!("expected {what}, found {got:?}"),
        })
    }

    fn finish(&self) -> Result<(), IoError> {
        if self.pos < self.lines.len() {
            Err(IoError::Format {
                line: self.line_no(),
                message: "trailing content after the last row".into(),
            })
        } else {
            Ok(())
        }
    }
}

struct Grid<'a> {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<(usize, &'a str)>,
}

fn read_grid<'a>(lines: &mut Lines<'a>, header: &str) -> Result<Grid<'a>, IoError> {
    lines.expect(header, &format!("header {header:?}"))?;
    lines.expect("", "a blank line")?;
    let n = lines.count("the object count")?;
    let m = lines.count("the attribute count")?;
    lines.expect("", "a blank line")?;
    let mut objects = Vec::with_capacity(n);
    for _ in 0..n {
        objects.push(lines.next("an object name")?.to_owned());
    }
    let mut attributes = Vec::with_capacity(m);
    for _ in 0..m {
        attributes.push(lines.next("an attribute name")?.to_owned());
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines.line_no();
        let row = lines.next("an incidence row")?;
        let width = row.chars().count();
        if width != m {
            return Err(IoError::Format {
                line,
                message: format!("row has {width} cells, expected {m}"),
            });
        }
        rows.push((line, row));
    }
    lines.finish()?;
    Ok(Grid {
        objects,
        attributes,
        rows,
    })
}

fn bad_cell(line: usize, column: usize, c: char, allowed: &str) -> IoError {
    IoError::Format {
        line,
        message: format!("illegal cell {c:?} in column {column}, expected one of {allowed}"),
    }
}

/// Read a Burmeister context: `B`, blank, object count, attribute count,
/// blank, object names, attribute names, rows of `.`/`X`.
pub fn read_cxt(text: &str) -> Result<FormalContext, IoError> {
    let grid = read_grid(&mut Lines::new(text), "B")?;
    let m = grid.attributes.len();
    let mut ctx = FormalContext::new(grid.attributes)?;
    for (name, (line, row)) in grid.objects.into_iter().zip(grid.rows) {
        let mut set = AttributeSet::empty(m);
        for (j, c) in row.chars().enumerate() {
            match c {
                'X' | 'x' => {
                    set.insert(j);
                }
                '.' => {}
                other => return Err(bad_cell(line, j + 1, other, "'X' '.'")),
            }
        }
        ctx.add_object(name, set)?;
    }
    Ok(ctx)
}

pub fn write_cxt(ctx: &FormalContext) -> String {
    let mut out = format!("B\n\n{}\n{}\n\n", ctx.objects().len(), ctx.universe());
    for o in ctx.objects() {
        out.push_str(o);
        out.push('\n');
    }
    for a in ctx.attributes() {
        out.push_str(a);
        out.push('\n');
    }
    for row in ctx.rows() {
        out.extend((0..ctx.universe()).map(|j| if row.contains(j) { 'X' } else { '.' }));
        out.push('\n');
    }
    out
}

/// Read the partial-context dialect: header `BP`, cells `+` (present),
/// `-` (absent) and `?` (unknown).
pub fn read_pcxt(text: &str) -> Result<PartialContext, IoError> {
    let grid = read_grid(&mut Lines::new(text), "BP")?;
    let m = grid.attributes.len();
    let mut pctx = PartialContext::new(grid.attributes)?;
    for (name, (line, row)) in grid.objects.into_iter().zip(grid.rows) {
        let mut pos = AttributeSet::empty(m);
        let mut neg = AttributeSet::empty(m);
        for (j, c) in row.chars().enumerate() {
            match c {
                '+' => {
                    pos.insert(j);
                }
                '-' => {
                    neg.insert(j);
                }
                '?' => {}
                other => return Err(bad_cell(line, j + 1, other, "'+' '-' '?'")),
            }
        }
        pctx.add_pod(PartialObjectDescription::new(name, pos, neg)?)?;
    }
    Ok(pctx)
}

pub fn write_pcxt(pctx: &PartialContext) -> String {
    let m = pctx.universe();
    let mut out = format!("BP\n\n{}\n{}\n\n", pctx.pods().len(), m);
    for p in pctx.pods() {
        out.push_str(&p.id);
        out.push('\n');
    }
    for a in pctx.attributes() {
        out.push_str(a);
        out.push('\n');
    }
    for p in pctx.pods() {
        out.extend((0..m).map(|j| {
            if p.positives.contains(j) {
                '+'
            } else if p.negatives.contains(j) {
                '-'
            } else {
                '?'
            }
        }));
        out.push('\n');
    }
    out
}
