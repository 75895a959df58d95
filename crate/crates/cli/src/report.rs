//! Deterministic report assembly: human lines plus sorted `key=value` pairs.

use std::collections::BTreeMap;
use std::fmt::Display;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    human: Vec<String>,
    machine: BTreeMap<String, String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.human.push(text.into());
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Display) {
        self.machine.insert(key.into(), value.to_string());
    }

    /// A human line that is also recorded under `key`.
    pub fn both(&mut self, key: &str, label: &str, value: impl Display) {
        let v = value.to_string();
        self.human.push(format!("{label}: {v}"));
        self.machine.insert(key.to_string(), v);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.machine.get(key).map(String::as_str)
    }

    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        if machine {
            for (k, v) in &self.machine {
                out.push_str(k);
                out.push('=');
                out.push_str(v);
                out.push('\n');
            }
        } else {
            for l in &self.human {
                out.push_str(l);
                out.push('\n');
            }
        }
        out
    }
}

/// Space-separated decimal list.
pub fn list<T: Display>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_keys_are_sorted() {
        let mut r = Report::new();
        r.set("zeta", 1);
        r.both("alpha", "Alpha", "x y");
        assert_eq!(r.render(true), "alpha=x y\nzeta=1\n");
        assert_eq!(r.render(false), "Alpha: x y\n");
    }
}
