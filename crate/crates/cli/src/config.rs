//! Optional flat `key = value` configuration file.
//!
//! Each key names a long flag of the chosen subcommand (`base_n` and
//! `base-n` are equivalent). Entries are spliced into the argument list
//! right after the subcommand unless the same flag was given explicitly, so
//! flags on the command line always win.

use std::ffi::OsString;
use std::path::Path;

use clap::{ArgAction, Command};

/// Parses `key = value` lines; `#` starts a comment line.
pub fn parse(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected `key = value`, got `{line}`", i + 1))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(format!("config line {}: empty key", i + 1));
        }
        entries.push((key, v.trim().trim_matches('"').to_string()));
    }
    Ok(entries)
}

/// Finds `--config PATH` or `--config=PATH` in the raw arguments.
fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

fn given_explicitly(tail: &[OsString], long: &str) -> bool {
    let flag = format!("--{long}");
    let with_value = format!("--{long}=");
    tail.iter().any(|a| {
        let s = a.to_string_lossy();
        s == flag || s.starts_with(&with_value)
    })
}

/// Returns `argv` with the config file's entries spliced in.
pub fn apply(argv: Vec<OsString>, cmd: &Command) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .map_err(|e| format!("cannot read config file {}: {e}", path.to_string_lossy()))?;
    let entries = parse(&text)?;
    let Some((pos, sub)) = argv.iter().enumerate().skip(1).find_map(|(i, a)| cmd.find_subcommand(a).map(|s| (i, s)))
    else {
        // no subcommand: let clap report it
        return Ok(argv);
    };
    let tail = &argv[pos + 1..];
    let mut injected = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            return Err("config files cannot include other config files".into());
        }
        let arg = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
            .ok_or_else(|| format!("unknown config key `{key}` for `{}`", sub.get_name()))?;
        if given_explicitly(tail, &key) {
            continue;
        }
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.as_str() {
                "true" | "yes" | "1" => injected.push(OsString::from(format!("--{key}"))),
                "false" | "no" | "0" => {}
                other => return Err(format!("config key `{key}` expects true or false, got `{other}`")),
            }
        } else {
            injected.push(OsString::from(format!("--{key}={value}")));
        }
    }
    let mut out: Vec<OsString> = argv[..=pos].to_vec();
    out.extend(injected);
    out.extend_from_slice(tail);
    Ok(out)
}
