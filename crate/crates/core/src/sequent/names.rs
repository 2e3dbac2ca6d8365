//! Deterministic supplies of fresh (co)variable names.

use std::collections::BTreeSet;

const VARS: &[&str] = &["x", "y", "z", "u", "v", "w"];
const COVARS: &[&str] = &["ε", "κ", "ν", "μ", "ρ", "σ", "τ", "δ"];

/// Hands out names from a fixed cycle, skipping those already taken.
#[derive(Clone, Debug)]
pub struct Pool {
    base: &'static [&'static str],
    taken: BTreeSet<String>,
    at: usize,
}

impl Pool {
    pub fn vars(taken: BTreeSet<String>) -> Pool {
        Pool {
            base: VARS,
            taken,
            at: 0,
        }
    }

    pub fn covars(taken: BTreeSet<String>) -> Pool {
        Pool {
            base: COVARS,
            taken,
            at: 0,
        }
    }

    fn candidate(&self, i: usize) -> String {
        let round = i / self.base.len();
        let stem = self.base[i % self.base.len()];
        if round == 0 {
            stem.to_string()
        } else {
            format!("{}{}", stem, round)
        }
    }

    pub fn next_name(&mut self) -> String {
        loop {
            let n = self.candidate(self.at);
            self.at += 1;
            if self.taken.insert(n.clone()) {
                return n;
            }
        }
    }

    pub fn reserve(&mut self, name: &str) {
        self.taken.insert(name.to_string());
    }
}

/// Fresh names for one rule application: both pools share the taken set.
#[derive(Clone, Debug)]
pub struct Fresh {
    taken: BTreeSet<String>,
}

impl Fresh {
    pub fn new(taken: BTreeSet<String>) -> Fresh {
        Fresh { taken }
    }

    fn draw(&mut self, base: &'static [&'static str]) -> String {
        let mut p = Pool {
            base,
            taken: std::mem::take(&mut self.taken),
            at: 0,
        };
        let n = p.next_name();
        self.taken = p.taken;
        n
    }

    pub fn var(&mut self) -> String {
        self.draw(VARS)
    }

    pub fn covar(&mut self) -> String {
        self.draw(COVARS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_taken_names() {
        let taken: BTreeSet<String> = ["x", "z"].iter().map(|s| s.to_string()).collect();
        let mut p = Pool::vars(taken);
        assert_eq!(p.next_name(), "y");
        assert_eq!(p.next_name(), "u");
        let mut f = Fresh::new(["ε".to_string()].into_iter().collect());
        assert_eq!(f.covar(), "κ");
        assert_eq!(f.covar(), "ν");
        assert_eq!(f.var(), "x");
    }

    #[test]
    fn wraps_with_suffix() {
        let mut p = Pool::vars(BTreeSet::new());
        let names: Vec<_> = (0..8).map(|_| p.next_name()).collect();
        assert_eq!(names[6], "x1");
        assert_eq!(names[7], "y1");
    }
}
