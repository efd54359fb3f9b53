//! Minimal `--flag value` argument parsing with typed accessors.

use std::collections::BTreeMap;

pub struct Opts {
    flags: BTreeMap<String, String>,
    positional: Vec<String>,
}

impl Opts {
    /// Parse arguments, rejecting flags outside `allowed`.
    pub fn parse(args: &[String], allowed: &[&str]) -> Result<Opts, String> {
        let mut flags = BTreeMap::new();
        let mut positional = Vec::new();
        let mut iter = args.iter();
        while let Some(arg) = iter.next() {
            if let Some(name) = arg.strip_prefix("--") {
                if !allowed.contains(&name) {
                    return Err(format!("unknown flag --{name}"));
                }
                let value = iter
                    .next()
                    .ok_or_else(|| format!("flag --{name} needs a value"))?;
                if flags.insert(name.to_string(), value.clone()).is_some() {
                    return Err(format!("flag --{name} given twice"));
                }
            } else {
                positional.push(arg.clone());
            }
        }
        Ok(Opts { flags, positional })
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.flags.get(name).map(String::as_str)
    }

    pub fn positional(&self) -> &[String] {
        &self.positional
    }

    pub fn get_u64(&self, name: &str) -> Result<Option<u64>, String> {
        self.get(name)
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| format!("--{name} expects an unsigned integer, got '{v}'"))
            })
            .transpose()
    }

    pub fn u64_or(&self, name: &str, default: u64) -> Result<u64, String> {
        Ok(self.get_u64(name)?.unwrap_or(default))
    }

    pub fn require_u64(&self, name: &str) -> Result<u64, String> {
        self.get_u64(name)?
            .ok_or_else(|| format!("missing required flag --{name}"))
    }

    pub fn get_usize(&self, name: &str) -> Result<Option<usize>, String> {
        Ok(self.get_u64(name)?.map(|v| v as usize))
    }

    pub fn usize_or(&self, name: &str, default: usize) -> Result<usize, String> {
        Ok(self.get_usize(name)?.unwrap_or(default))
    }

    pub fn require_usize(&self, name: &str) -> Result<usize, String> {
        self.get_usize(name)?
            .ok_or_else(|| format!("missing required flag --{name}"))
    }

    pub fn u32_or(&self, name: &str, default: u32) -> Result<u32, String> {
        match self.get_u64(name)? {
            None => Ok(default),
            Some(v) => u32::try_from(v).map_err(|_| format!("--{name} value {v} too large")),
        }
    }
}
