use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::MatrixHandle;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmFormat {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmField {
    Real,
    Integer,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmSymmetry {
    General,
    Symmetric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixMarketHeader {
    pub format: MmFormat,
    pub field: MmField,
    pub symmetry: MmSymmetry,
    pub rows: usize,
    pub cols: usize,
    /// Declared entry count (coordinate format only).
    pub entries: Option<usize>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_banner(line: &str, lineno: usize) -> Result<(MmFormat, MmField, MmSymmetry)> {
    let tokens: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.first().map(String::as_str) != Some("%%matrixmarket") {
        return Err(parse_err(lineno, "missing %%MatrixMarket banner"));
    }
    if tokens.len() != 5 {
        return Err(parse_err(
            lineno,
            "banner must read: %%MatrixMarket matrix <format> <field> <symmetry>",
        ));
    }
    if tokens[1] != "matrix" {
        return Err(parse_err(lineno, format!("unsupported object '{}'", tokens[1])));
    }
    let format = match tokens[2].as_str() {
        "coordinate" => MmFormat::Coordinate,
        "array" => MmFormat::Array,
        other => return Err(parse_err(lineno, format!("unsupported format '{other}'"))),
    };
    let field = match tokens[3].as_str() {
        "real" | "double" => MmField::Real,
        "integer" => MmField::Integer,
        "pattern" => MmField::Pattern,
        other => return Err(parse_err(lineno, format!("unsupported field '{other}'"))),
    };
    let symmetry = match tokens[4].as_str() {
        "general" => MmSymmetry::General,
        "symmetric" => MmSymmetry::Symmetric,
        other => return Err(parse_err(lineno, format!("unsupported symmetry '{other}'"))),
    };
    if format == MmFormat::Array && field == MmField::Pattern {
        return Err(parse_err(lineno, "pattern field requires coordinate format"));
    }
    Ok((format, field, symmetry))
}

fn parse_usize(token: Option<&str>, what: &str, lineno: usize) -> Result<usize> {
    let token = token.ok_or_else(|| parse_err(lineno, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_err(lineno, format!("invalid {what} '{token}'")))
}

fn parse_value<T: Scalar>(token: Option<&str>, lineno: usize) -> Result<T> {
    let token = token.ok_or_else(|| parse_err(lineno, "missing value"))?;
    let v: f64 = token
        .parse()
        .map_err(|_| parse_err(lineno, format!("invalid value '{token}'")))?;
    if !v.is_finite() {
        return Err(parse_err(lineno, format!("non-finite value '{token}'")));
    }
    Ok(T::of(v))
}

/// Parses Matrix Market text into a CSR matrix. Symmetric storage is expanded,
/// pattern entries become 1.0 and duplicate coordinates are summed.
pub fn read_matrix_market<T: Scalar, R: BufRead>(reader: R) -> Result<MatrixHandle<T>> {
    read_matrix_market_with_header(reader).map(|(_, m)| m)
}

pub fn read_matrix_market_file<T: Scalar>(path: impl AsRef<Path>) -> Result<MatrixHandle<T>> {
    let file = File::open(path)?;
    read_matrix_market(BufReader::new(file))
}

pub fn read_matrix_market_with_header<T: Scalar, R: BufRead>(
    reader: R,
) -> Result<(MatrixMarketHeader, MatrixHandle<T>)> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (lineno, banner) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let (format, field, symmetry) = parse_banner(&banner?, lineno)?;

    // content lines: skip comments and blanks
    let mut content = lines.filter_map(|(no, line)| match line {
        Ok(l) => {
            let t = l.trim();
            if t.is_empty() || t.starts_with('%') {
                None
            } else {
                Some(Ok((no, t.to_string())))
            }
        }
        Err(e) => Some(Err(Error::from(e))),
    });

    let (size_line, size) = content
        .next()
        .ok_or_else(|| parse_err(lineno, "missing size line"))??;
    let mut tok = size.split_whitespace();
    let rows = parse_usize(tok.next(), "row count", size_line)?;
    let cols = parse_usize(tok.next(), "column count", size_line)?;
    let entries = match format {
        MmFormat::Coordinate => Some(parse_usize(tok.next(), "entry count", size_line)?),
        MmFormat::Array => None,
    };
    if tok.next().is_some() {
        return Err(parse_err(size_line, "trailing tokens on size line"));
    }
    if rows == 0 || cols == 0 {
        return Err(parse_err(size_line, "matrix dimensions must be positive"));
    }
    if symmetry == MmSymmetry::Symmetric && rows != cols {
        return Err(parse_err(size_line, "symmetric matrix must be square"));
    }
    let header = MatrixMarketHeader {
        format,
        field,
        symmetry,
        rows,
        cols,
        entries,
    };

    let mut triplets: Vec<(usize, usize, T)> = Vec::new();
    let mut push = |i: usize, j: usize, v: T| {
        triplets.push((i, j, v));
        if symmetry == MmSymmetry::Symmetric && i != j {
            triplets.push((j, i, v));
        }
    };
    let mut last_line = size_line;

    match format {
        MmFormat::Coordinate => {
            let declared = entries.expect("coordinate header has an entry count");
            let mut seen = 0;
            for item in content.by_ref() {
                let (no, line) = item?;
                last_line = no;
                seen += 1;
                if seen > declared {
                    return Err(parse_err(no, format!("more than the declared {declared} entries")));
                }
                let mut tok = line.split_whitespace();
                let i = parse_usize(tok.next(), "row index", no)?;
                let j = parse_usize(tok.next(), "column index", no)?;
                if i == 0 || i > rows || j == 0 || j > cols {
                    return Err(parse_err(
                        no,
                        format!("entry ({i}, {j}) outside a {rows}x{cols} matrix"),
                    ));
                }
                let v = match field {
                    MmField::Pattern => T::one(),
                    _ => parse_value(tok.next(), no)?,
                };
                if tok.next().is_some() {
                    return Err(parse_err(no, "trailing tokens after entry"));
                }
                push(i - 1, j - 1, v);
            }
            if seen < declared {
                return Err(parse_err(
                    last_line,
                    format!("expected {declared} entries, found {seen}"),
                ));
            }
        }
        MmFormat::Array => {
            // column-major; symmetric files list the lower triangle only
            let positions: Vec<(usize, usize)> = (0..cols)
                .flat_map(|j| {
                    let start = if symmetry == MmSymmetry::Symmetric { j } else { 0 };
                    (start..rows).map(move |i| (i, j))
                })
                .collect();
            let mut next = positions.iter();
            for item in content.by_ref() {
                let (no, line) = item?;
                last_line = no;
                for token in line.split_whitespace() {
                    let &(i, j) = next
                        .next()
                        .ok_or_else(|| parse_err(no, "more values than the declared size"))?;
                    let v: T = parse_value(Some(token), no)?;
                    if !v.is_zero() {
                        push(i, j, v);
                    }
                }
            }
            let missing = next.count();
            if missing > 0 {
                return Err(parse_err(last_line, format!("{missing} values missing")));
            }
        }
    }

    let mut row_has_value = vec![false; rows];
    for &(i, _, v) in &triplets {
        row_has_value[i] |= !v.is_zero();
    }
    if let Some(i) = row_has_value.iter().position(|&nz| !nz) {
        return Err(Error::Validation(format!(
            "row {} (1-based) has no nonzero entries after assembly",
            i + 1
        )));
    }
    let matrix = MatrixHandle::from_triplets(rows, cols, &triplets)?;
    Ok((header, matrix))
}

/// Writes `matrix coordinate real general` with 1-based indices and
/// shortest round-trip values.
pub fn write_matrix_market<T: Scalar, W: Write>(a: &MatrixHandle<T>, mut w: W) -> Result<()> {
    let mut entries = Vec::new();
    for i in 0..a.rows() {
        for (j, v) in a.row(i).entries() {
            if !v.is_zero() {
                entries.push((i, j, v));
            }
        }
    }
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", a.rows(), a.cols(), entries.len())?;
    for (i, j, v) in entries {
        writeln!(w, "{} {} {:e}", i + 1, j + 1, v)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `matrix array real general`, values in column-major order.
pub fn write_matrix_market_array<T: Scalar, W: Write>(a: &MatrixHandle<T>, mut w: W) -> Result<()> {
    let dense = a.to_row_major();
    writeln!(w, "%%MatrixMarket matrix array real general")?;
    writeln!(w, "{} {}", a.rows(), a.cols())?;
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            writeln!(w, "{:e}", dense[i * a.cols() + j])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(text: &str) -> Result<MatrixHandle<f64>> {
        read_matrix_market(text.as_bytes())
    }

    #[test]
    fn diagonal_coordinate() {
        let a = read("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 3.0\n2 2 4.0\n").unwrap();
        assert!(a.is_sparse());
        assert_eq!(a.to_row_major(), vec![3.0, 0.0, 0.0, 4.0]);
    }

    #[test]
    fn comments_and_case_are_tolerated() {
        let text = "%%MatrixMarket Matrix Coordinate Integer General\n% a comment\n\n2 3 3\n1 1 1\n2 3 -2\n1 2 5\n";
        let (header, a) = read_matrix_market_with_header::<f64, _>(text.as_bytes()).unwrap();
        assert_eq!(header.field, MmField::Integer);
        assert_eq!(header.entries, Some(3));
        assert_eq!(a.to_row_major(), vec![1.0, 5.0, 0.0, 0.0, 0.0, -2.0]);
    }

    #[test]
    fn symmetric_is_expanded() {
        let text = "%%MatrixMarket matrix coordinate real symmetric\n3 3 4\n1 1 2\n2 1 -1\n3 2 0.5\n3 3 1\n";
        let a = read(text).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a.get(i, j), a.get(j, i));
            }
        }
        assert_eq!(a.get(0, 1), -1.0);
        assert_eq!(a.get(1, 2), 0.5);
        assert_eq!(a.get(1, 1), 0.0);
    }

    #[test]
    fn pattern_and_duplicates() {
        let text = "%%MatrixMarket matrix coordinate pattern general\n2 2 3\n1 1\n1 1\n2 2\n";
        let a = read(text).unwrap();
        assert_eq!(a.to_row_major(), vec![2.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn array_formats() {
        let a = read("%%MatrixMarket matrix array real general\n2 2\n1\n3\n2\n4\n").unwrap();
        assert_eq!(a.to_row_major(), vec![1.0, 2.0, 3.0, 4.0]);
        let s = read("%%MatrixMarket matrix array real symmetric\n2 2\n1\n3\n4\n").unwrap();
        assert_eq!(s.to_row_major(), vec![1.0, 3.0, 3.0, 4.0]);
    }

    #[test]
    fn empty_row_is_named() {
        let text = "%%MatrixMarket matrix coordinate real general\n3 2 2\n1 1 1\n3 2 1\n";
        let err = read(text).unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
        let text = "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n2 2 0\n";
        assert!(read(text).unwrap_err().to_string().contains("row 2"));
    }

    #[test]
    fn malformed_inputs_report_line_numbers() {
        let cases = [
            ("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n", 1),
            ("%%MatrixMarket matrix coordinate real skew-symmetric\n1 1 1\n1 1 1\n", 1),
            ("%MatrixMarket matrix coordinate real general\n", 1),
            ("%%MatrixMarket matrix coordinate real general\n% c\n2 2\n", 3),
            ("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n3 1 1\n", 4),
            ("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 x\n", 3),
            ("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1\n2 2 1\n", 4),
            ("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n2 2 1\n", 4),
            ("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n", 5),
            ("%%MatrixMarket matrix coordinate real symmetric\n2 3 1\n1 1 1\n", 2),
        ];
        for (text, line) in cases {
            match read(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn writers_round_trip() {
        let a = MatrixHandle::from_rows(&[[0.1, 0.0, -3.5e-300], [0.0, 2.0 / 3.0, 0.0]]).unwrap();
        let mut buf = Vec::new();
        write_matrix_market(&a, &mut buf).unwrap();
        let back = read(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back.to_row_major(), a.to_row_major());

        let mut buf = Vec::new();
        write_matrix_market_array(&a, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("%%MatrixMarket matrix array real general\n2 3\n"));
        assert_eq!(read(&text).unwrap().to_row_major(), a.to_row_major());
    }
}
