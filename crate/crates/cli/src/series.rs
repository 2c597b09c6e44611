//! Observation series: CSV with header `t,lo,hi`. Crisp values repeat the
//! number in both columns.

use belief_markov::Interval;

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub period: u64,
    pub interval: Interval<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFile {
    pub records: Vec<Record>,
}

impl SeriesFile {
    pub fn intervals(&self) -> Vec<Interval<f64>> {
        self.records.iter().map(|r| r.interval.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn emit(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["t", "lo", "hi"])
            .expect("in-memory write");
        for r in &self.records {
            writer
                .write_record([
                    r.period.to_string(),
                    r.interval.lo().to_string(),
                    r.interval.hi().to_string(),
                ])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

fn field(record: &csv::StringRecord, i: usize, line: usize) -> Result<&str, ParseError> {
    record
        .get(i)
        .ok_or_else(|| ParseError::new(line, "expected 3 fields"))
}

pub fn parse_series(text: &str) -> Result<SeriesFile, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());

    let headers = reader
        .headers()
        .map_err(|e| ParseError::new(1, e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != ["t", "lo", "hi"] {
        return Err(ParseError::new(1, "header must be `t,lo,hi`"));
    }

    let mut records: Vec<Record> = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            ParseError::new(line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        if row.len() != 3 {
            return Err(ParseError::new(
                line,
                format!("expected 3 fields, found {}", row.len()),
            ));
        }
        let period: u64 = field(&row, 0, line)?
            .parse()
            .map_err(|_| ParseError::new(line, "period index must be a positive integer"))?;
        let expected = records.last().map_or(1, |r| r.period + 1);
        if period != expected {
            return Err(ParseError::new(
                line,
                format!("period index {period} out of sequence, expected {expected}"),
            ));
        }
        let bound = |i: usize| -> Result<f64, ParseError> {
            let token = field(&row, i, line)?;
            let value: f64 = token
                .parse()
                .map_err(|_| ParseError::new(line, format!("`{token}` is not a number")))?;
            if !value.is_finite() {
                return Err(ParseError::new(line, format!("`{token}` is not finite")));
            }
            Ok(value)
        };
        let (lo, hi) = (bound(1)?, bound(2)?);
        let interval = Interval::new(lo, hi).map_err(|e| ParseError::new(line, e.to_string()))?;
        records.push(Record { period, interval });
    }

    if records.len() < 2 {
        return Err(ParseError::new(
            text.lines().count().max(1),
            format!("need at least 2 records, found {}", records.len()),
        ));
    }
    Ok(SeriesFile { records })
}
