//! Embedding files.
//!
//! CSV: header `id,d0,d1,...`, one row per program.
//!
//! Binary: an ASCII header line `<dimension> <count>\n`, then for each program
//! its id on one line (`<id>\n`) followed by `dimension` little-endian `f32`s.

use std::collections::BTreeMap;
use std::io::{BufRead, Read, Write};

#[derive(Debug, thiserror::Error)]
pub enum EmbeddingIoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("malformed embedding file: {0}")]
    Format(String),
}

fn check_dimension(vectors: &BTreeMap<String, Vec<f32>>) -> Result<usize, EmbeddingIoError> {
    let dim = vectors.values().next().map_or(0, Vec::len);
    if let Some((id, v)) = vectors.iter().find(|(_, v)| v.len() != dim) {
        return Err(EmbeddingIoError::Format(format!(
            "`{id}` has length {} instead of {dim}",
            v.len()
        )));
    }
    Ok(dim)
}

pub fn write_embeddings_csv<W: Write>(
    vectors: &BTreeMap<String, Vec<f32>>,
    out: W,
) -> Result<(), EmbeddingIoError> {
    let dim = check_dimension(vectors)?;
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["id".to_string()];
    header.extend((0..dim).map(|i| format!("d{i}")));
    w.write_record(&header)?;
    for (id, v) in vectors {
        let mut record = vec![id.clone()];
        record.extend(v.iter().map(f32::to_string));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_embeddings_csv<R: Read>(
    input: R,
) -> Result<BTreeMap<String, Vec<f32>>, EmbeddingIoError> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers.get(0) != Some("id") {
        return Err(EmbeddingIoError::Format("first column must be `id`".into()));
    }
    let mut out = BTreeMap::new();
    for record in r.records() {
        let record = record?;
        let v = record
            .iter()
            .skip(1)
            .map(|x| {
                x.parse::<f32>()
                    .map_err(|e| EmbeddingIoError::Format(format!("`{x}`: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.insert(record[0].to_string(), v);
    }
    Ok(out)
}

pub fn write_embeddings_bin<W: Write>(
    vectors: &BTreeMap<String, Vec<f32>>,
    mut out: W,
) -> Result<(), EmbeddingIoError> {
    let dim = check_dimension(vectors)?;
    writeln!(out, "{dim} {}", vectors.len())?;
    for (id, v) in vectors {
        if id.contains('\n') {
            return Err(EmbeddingIoError::Format(format!(
                "id {id:?} contains a newline"
            )));
        }
        writeln!(out, "{id}")?;
        for x in v {
            out.write_all(&x.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_embeddings_bin<R: BufRead>(
    mut input: R,
) -> Result<BTreeMap<String, Vec<f32>>, EmbeddingIoError> {
    let mut line = String::new();
    input.read_line(&mut line)?;
    let mut parts = line.split_whitespace().map(str::parse::<usize>);
    let (Some(Ok(dim)), Some(Ok(count)), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(EmbeddingIoError::Format(format!("bad header {line:?}")));
    };
    let mut out = BTreeMap::new();
    let mut buf = vec![0u8; dim * 4];
    for _ in 0..count {
        line.clear();
        if input.read_line(&mut line)? == 0 {
            return Err(EmbeddingIoError::Format("truncated file".into()));
        }
        input.read_exact(&mut buf)?;
        let v = buf
            .chunks_exact(4)
            .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
            .collect();
        out.insert(line.trim_end_matches('\n').to_string(), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn corpus() -> impl Strategy<Value = BTreeMap<String, Vec<f32>>> {
        (1usize..6).prop_flat_map(|dim| {
            proptest::collection::btree_map(
                "[a-z0-9_./ -]{1,12}",
                proptest::collection::vec(-1e6f32..1e6, dim),
                0..6,
            )
        })
    }

    proptest! {
        #[test]
        fn csv_round_trip(v in corpus()) {
            let mut buf = Vec::new();
            write_embeddings_csv(&v, &mut buf).unwrap();
            prop_assert_eq!(read_embeddings_csv(buf.as_slice()).unwrap(), v);
        }

        #[test]
        fn binary_round_trip(v in corpus()) {
            let mut buf = Vec::new();
            write_embeddings_bin(&v, &mut buf).unwrap();
            prop_assert_eq!(read_embeddings_bin(buf.as_slice()).unwrap(), v);
        }
    }

    #[test]
    fn binary_layout() {
        let v = BTreeMap::from([("a".to_string(), vec![1.0f32, -2.0])]);
        let mut buf = Vec::new();
        write_embeddings_bin(&v, &mut buf).unwrap();
        let mut expected = b"2 1\na\n".to_vec();
        expected.extend(1.0f32.to_le_bytes());
        expected.extend((-2.0f32).to_le_bytes());
        assert_eq!(buf, expected);
    }

    #[test]
    fn ragged_vectors_are_rejected() {
        let v = BTreeMap::from([
            ("a".to_string(), vec![1.0f32]),
            ("b".to_string(), vec![1.0, 2.0]),
        ]);
        assert!(write_embeddings_csv(&v, Vec::new()).is_err());
    }
}
