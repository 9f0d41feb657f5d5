//! Command-line front end. Sweeps, simulations and spectra are written as
//! CSV (header first, one row per record) to `--output` or standard output;
//! `solve` and `optimal-lambda` print `key = value` records.

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::{CommandFactory, Parser};

pub use args::{Axis, Cli, Command, Scale};

use crate::error::{Error, Result};

/// Worker-count override for the trial thread pool.
pub const THREADS_ENV: &str = "DEPRIDGE_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;

/// Exit code for a failed command: 2 for solver/factorization failures,
/// 1 for everything caused by the input.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_numeric() {
        EXIT_NUMERIC
    } else {
        EXIT_USAGE
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match commands::dispatch(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Replaces `--config PATH` by the file's `key = value` entries, placed right
/// after the subcommand so that explicit flags, which come later, win.
fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut rest = Vec::with_capacity(args.len());
    let mut config = None;
    let mut it = args.into_iter();
    if let Some(prog) = it.next() {
        rest.push(prog);
    }
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            let path = it
                .next()
                .ok_or_else(|| Error::Parse("--config needs a path".into()))?;
            config = Some(path.to_string_lossy().into_owned());
        } else if let Some(path) = s.strip_prefix("--config=") {
            config = Some(path.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = config else {
        return Ok(rest);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Io(format!("cannot read config '{path}': {e}")))?;
    let mut entries = parse_config(&text)?;

    let sub_pos = rest
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|p| p + 1);
    let sub_pos = match sub_pos {
        Some(p) => p,
        None => {
            let i = entries
                .iter()
                .position(|(k, _)| k == "command")
                .ok_or_else(|| {
                    Error::Parse("no command given on the line or in the config".into())
                })?;
            let (_, name) = entries.remove(i);
            rest.insert(1, name.into());
            1
        }
    };
    entries.retain(|(k, _)| k != "command");

    let name = rest[sub_pos].to_string_lossy().into_owned();
    let root = Cli::command();
    let sub = root
        .find_subcommand(&name)
        .ok_or_else(|| Error::Parse(format!("unknown command '{name}'")))?;
    let mut inserted = Vec::new();
    for (key, value) in entries {
        let arg = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
            .ok_or_else(|| {
                Error::Parse(format!("config key '{key}' is not an option of '{name}'"))
            })?;
        if arg.get_action().takes_values() {
            inserted.push(OsString::from(format!("--{key}={value}")));
        } else {
            match value.as_str() {
                "true" | "" => inserted.push(OsString::from(format!("--{key}"))),
                "false" => {}
                v => {
                    return Err(Error::Parse(format!(
                        "config key '{key}' is a flag, got '{v}'"
                    )))
                }
            }
        }
    }
    let tail = rest.split_off(sub_pos + 1);
    rest.extend(inserted);
    rest.extend(tail);
    Ok(rest)
}

/// `key = value` lines; `#` starts a comment, keys may carry a leading `--`.
fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", i + 1)))?;
        let k = k.trim().trim_start_matches("--").to_string();
        if k.is_empty() {
            return Err(Error::Parse(format!("config line {}: empty key", i + 1)));
        }
        out.push((k, v.trim().to_string()));
    }
    Ok(out)
}

/// Shortest round-trip form (exponent notation for very large or small
/// magnitudes); `nan`/`inf` in lower case.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:?}")
    }
}

/// Axis values from `start` to `stop` inclusive.
pub fn grid(start: f64, stop: f64, steps: usize, scale: Scale) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && start < stop) {
        return Err(Error::InvalidParameter(format!(
            "grid needs start < stop, got {start} and {stop}"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidParameter(
            "grid needs at least 2 steps".into(),
        ));
    }
    let last = (steps - 1) as f64;
    let mut v: Vec<f64> = match scale {
        Scale::Lin => (0..steps)
            .map(|i| start + (stop - start) * i as f64 / last)
            .collect(),
        Scale::Log => {
            if start <= 0.0 {
                return Err(Error::InvalidParameter("log grid needs start > 0".into()));
            }
            let (a, b) = (start.ln(), stop.ln());
            (0..steps)
                .map(|i| (a + (b - a) * i as f64 / last).exp())
                .collect()
        }
    };
    v[0] = start;
    v[steps - 1] = stop;
    Ok(v)
}
