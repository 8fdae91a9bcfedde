//! JSON Lines reports: one record per instance, then one summary object.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

/// A named check and the statement it exercises. The anchor travels with
/// every record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub anchor: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct Record {
    pub index: u64,
    pub status: Status,
    pub fields: Map<String, Value>,
}

impl Record {
    pub fn new(index: u64, status: Status, fields: Value) -> Record {
        let fields = match fields {
            Value::Object(m) => m,
            other => Map::from_iter([("value".to_string(), other)]),
        };
        Record { index, status, fields }
    }

    /// A record for an instance whose computation itself errored.
    pub fn error(index: u64, inputs: Value, err: impl std::fmt::Display) -> Record {
        let mut r = Record::new(index, Status::Fail, inputs);
        r.fields.insert("error".into(), Value::String(err.to_string()));
        r
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub check: Check,
    pub ground: String,
    pub seed: Option<u64>,
    pub records: Vec<Record>,
    /// Extra summary fields, e.g. budgets used.
    pub extra: Map<String, Value>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Tally {
    pub fn total(&self) -> usize {
        self.pass + self.fail + self.inconclusive
    }
}

impl Report {
    pub fn new(check: Check, ground: impl Into<String>, seed: Option<u64>, records: Vec<Record>) -> Report {
        Report { check, ground: ground.into(), seed, records, extra: Map::new() }
    }

    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for r in &self.records {
            match r.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::Inconclusive => t.inconclusive += 1,
            }
        }
        t
    }

    /// 1 on any failure, otherwise 3 if anything was inconclusive, else 0.
    pub fn exit_code(&self) -> i32 {
        let t = self.tally();
        if t.fail > 0 {
            1
        } else if t.inconclusive > 0 {
            3
        } else {
            0
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn record_json(&self, r: &Record) -> Value {
        let mut m = Map::new();
        m.insert("check".into(), json!(self.check.name));
        m.insert("anchor".into(), json!(self.check.anchor));
        m.insert("ground".into(), json!(self.ground));
        m.insert("index".into(), json!(r.index));
        m.insert("status".into(), json!(r.status.as_str()));
        m.extend(r.fields.clone());
        Value::Object(m)
    }

    pub fn summary_json(&self) -> Value {
        let t = self.tally();
        let mut m = Map::new();
        m.insert("summary".into(), json!(true));
        m.insert("check".into(), json!(self.check.name));
        m.insert("anchor".into(), json!(self.check.anchor));
        m.insert("ground".into(), json!(self.ground));
        m.insert("seed".into(), json!(self.seed));
        m.insert("total".into(), json!(t.total()));
        m.insert("pass".into(), json!(t.pass));
        m.insert("fail".into(), json!(t.fail));
        m.insert("inconclusive".into(), json!(t.inconclusive));
        m.insert("result".into(), json!(format!("{}/{} pass", t.pass, t.total())));
        m.extend(self.extra.clone());
        Value::Object(m)
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for r in &self.records {
            writeln!(out, "{}", self.record_json(r))?;
        }
        writeln!(out, "{}", self.summary_json())?;
        out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHECK: Check = Check { name: "demo", anchor: "demo anchor" };

    #[test]
    fn exit_codes_follow_tallies() {
        let rec = |s| Record::new(0, s, json!({}));
        let mut r = Report::new(CHECK, "A1", Some(1), vec![rec(Status::Pass)]);
        assert_eq!(r.exit_code(), 0);
        r.records.push(rec(Status::Inconclusive));
        assert_eq!(r.exit_code(), 3);
        r.records.push(rec(Status::Fail));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn every_line_carries_the_anchor() {
        let r = Report::new(CHECK, "A1", None, vec![Record::new(0, Status::Pass, json!({"x": 1}))]);
        let mut buf = Vec::new();
        r.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        for line in text.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["anchor"], "demo anchor");
        }
        assert!(text.contains("\"result\":\"1/1 pass\""));
    }
}
