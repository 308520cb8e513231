//! Run reports: an ordered list of `key=value` claims plus optional columnar
//! plot sections, serialized line by line.

use std::fmt::Write as _;

use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Every requested question received a definite answer.
    Definite,
    /// Something is Unknown or a hypothesis refused a verdict.
    Undecided,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Definite => 0,
            Outcome::Undecided => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Outcome::Definite => "definite",
            Outcome::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plot {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub outcome: Outcome,
    pub seed: Option<u64>,
    pub inputs: Vec<(String, String)>,
    pub entries: Vec<(String, String)>,
    pub timings: Vec<(String, f64)>,
    pub plots: Vec<Plot>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("report line {line}: {message}")]
pub struct ReportParseError {
    pub line: usize,
    pub message: String,
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            outcome: Outcome::Definite,
            seed: None,
            inputs: Vec::new(),
            entries: Vec::new(),
            timings: Vec::new(),
            plots: Vec::new(),
        }
    }

    pub fn input(&mut self, name: &str, value: impl ToString) {
        self.inputs.push((name.to_string(), value.to_string()));
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        let v = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = v,
            None => self.entries.push((key.to_string(), v)),
        }
    }

    pub fn flag(&mut self, key: &str, value: bool) {
        self.set(key, yes_no(value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn undecided(&mut self) {
        self.outcome = Outcome::Undecided;
    }

    pub fn timing(&mut self, key: &str, ms: f64) {
        self.timings.push((key.to_string(), ms));
    }

    pub fn plot(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<String>>) {
        self.plots.push(Plot {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
    }

    /// Appends another report's inputs and entries under `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: RunReport) {
        for (k, v) in other.inputs {
            self.inputs.push((format!("{prefix}.{k}"), v));
        }
        for (k, v) in other.entries {
            self.entries.push((format!("{prefix}.{k}"), v));
        }
        for (k, v) in other.timings {
            self.timings.push((format!("{prefix}.{k}"), v));
        }
        for mut p in other.plots {
            p.name = format!("{prefix}.{}", p.name);
            self.plots.push(p);
        }
        if other.outcome == Outcome::Undecided {
            self.outcome = Outcome::Undecided;
        }
    }

    fn write_kv(&self, with_timings: bool) -> String {
        let mut s = String::new();
        writeln!(s, "schema_version={SCHEMA_VERSION}").unwrap();
        writeln!(s, "command={}", self.command).unwrap();
        writeln!(s, "outcome={}", self.outcome.as_str()).unwrap();
        if let Some(seed) = self.seed {
            writeln!(s, "seed={seed}").unwrap();
        }
        for (k, v) in &self.inputs {
            writeln!(s, "input.{k}={v}").unwrap();
        }
        for (k, v) in &self.entries {
            writeln!(s, "{k}={v}").unwrap();
        }
        if with_timings {
            for (k, v) in &self.timings {
                writeln!(s, "timing.{k}={v:.3}").unwrap();
            }
        }
        for p in &self.plots {
            writeln!(s, "# plot {} {}", p.name, p.columns.join(" ")).unwrap();
            for r in &p.rows {
                writeln!(s, "{}", r.join(" ")).unwrap();
            }
            writeln!(s, "# end").unwrap();
        }
        s
    }

    pub fn to_kv(&self) -> String {
        self.write_kv(true)
    }

    /// The key-value form without timings; a function of inputs, seed and budgets.
    pub fn deterministic_kv(&self) -> String {
        self.write_kv(false)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "command: {}", self.command).unwrap();
        for (k, v) in &self.inputs {
            writeln!(s, "{k}: {v}").unwrap();
        }
        if let Some(seed) = self.seed {
            writeln!(s, "seed: {seed}").unwrap();
        }
        for (k, v) in &self.entries {
            writeln!(s, "{}: {v}", k.replace('_', "-")).unwrap();
        }
        writeln!(s, "outcome: {}", self.outcome.as_str()).unwrap();
        for (k, v) in &self.timings {
            writeln!(s, "time {k}: {v:.1} ms").unwrap();
        }
        for p in &self.plots {
            writeln!(s, "\n[{}]", p.name).unwrap();
            writeln!(s, "{}", p.columns.join("\t")).unwrap();
            for r in &p.rows {
                writeln!(s, "{}", r.join("\t")).unwrap();
            }
        }
        s
    }

    pub fn parse_kv(text: &str) -> Result<RunReport, ReportParseError> {
        let err = |line: usize, m: &str| ReportParseError {
            line,
            message: m.to_string(),
        };
        let mut r = RunReport::new("");
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut saw_schema = false;
        let mut saw_command = false;
        while let Some((no, line)) = lines.next() {
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# plot ") {
                let mut parts = rest.split_whitespace();
                let name = parts.next().ok_or_else(|| err(no, "plot without a name"))?;
                let columns: Vec<String> = parts.map(str::to_string).collect();
                let mut rows = Vec::new();
                loop {
                    let (_, l) = lines.next().ok_or_else(|| err(no, "unterminated plot"))?;
                    if l == "# end" {
                        break;
                    }
                    rows.push(l.split_whitespace().map(str::to_string).collect());
                }
                r.plots.push(Plot {
                    name: name.to_string(),
                    columns,
                    rows,
                });
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| err(no, "expected key=value"))?;
            match k {
                "schema_version" => {
                    if v != SCHEMA_VERSION.to_string() {
                        return Err(err(no, "unsupported schema version"));
                    }
                    saw_schema = true;
                }
                "command" => {
                    r.command = v.to_string();
                    saw_command = true;
                }
                "outcome" => {
                    r.outcome = match v {
                        "definite" => Outcome::Definite,
                        "undecided" => Outcome::Undecided,
                        _ => return Err(err(no, "bad outcome")),
                    }
                }
                "seed" => r.seed = Some(v.parse().map_err(|_| err(no, "bad seed"))?),
                _ => {
                    if let Some(name) = k.strip_prefix("input.") {
                        r.inputs.push((name.to_string(), v.to_string()));
                    } else if let Some(name) = k.strip_prefix("timing.") {
                        let ms = v.parse().map_err(|_| err(no, "bad timing"))?;
                        r.timings.push((name.to_string(), ms));
                    } else {
                        r.entries.push((k.to_string(), v.to_string()));
                    }
                }
            }
        }
        if !saw_schema || !saw_command {
            return Err(err(0, "missing schema_version or command"));
        }
        Ok(r)
    }
}
