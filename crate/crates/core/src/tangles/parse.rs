//! The line-oriented tangle language and the built-in link presets.
//!
//! ```text
//! program := factor ( "---" factor )*
//! factor  := preset | slice*
//! preset  := "unknot f=<int>" | "hopf f1=<int> f2=<int>" | "u+" | "u-"
//! slice   := "id:<word>"
//!          | "x+:<pos>" | "x-:<pos>"
//!          | [ "@<pos>" ] ( "cup" | "cap" ) ":" ( "+-" | "-+" )
//! ```
//!
//! Slices are separated by newlines or `;`. Text after `#` is a comment.
//! Positions count from 0. A leading `id:<word>` fixes the source word
//! (default empty); a later `id:<word>` asserts the current word. A cup or
//! cap without `@` acts at position 0. Factors are placed side by side.

use super::{Gen, TangleProgram};
use crate::brauer::{parse_word, Sign, Word};
use crate::error::{Error, Result};

/// Parses a program.
pub fn parse(text: &str) -> Result<TangleProgram> {
    let mut factors: Vec<TangleProgram> = Vec::new();
    let mut current = FactorBuilder::default();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for stmt in content.split(';') {
            let col = offset + stmt.len() - stmt.trim_start().len() + 1;
            offset += stmt.len() + 1;
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, col, msg };
            if stmt == "---" {
                factors.push(std::mem::take(&mut current).finish());
                continue;
            }
            if let Some(p) = parse_preset(stmt).map_err(err)? {
                if current.started {
                    return Err(err("a preset must be the only statement of its factor".into()));
                }
                current.preset = Some(p);
                current.started = true;
                continue;
            }
            if current.preset.is_some() {
                return Err(err("a preset must be the only statement of its factor".into()));
            }
            current.statement(stmt).map_err(err)?;
        }
    }
    factors.push(current.finish());
    let mut it = factors.into_iter();
    let mut acc = it.next().unwrap_or_else(TangleProgram::empty);
    for f in it {
        acc = acc.tensor(&f);
    }
    Ok(acc)
}

/// Expands a preset name such as `"hopf f1=0 f2=1"`.
pub fn preset(text: &str) -> Result<TangleProgram> {
    match parse_preset(text.trim()) {
        Ok(Some(p)) => Ok(p),
        Ok(None) => Err(Error::Parse { line: 1, col: 1, msg: format!("unknown preset {:?}", text.trim()) }),
        Err(msg) => Err(Error::Parse { line: 1, col: 1, msg }),
    }
}

#[derive(Default)]
struct FactorBuilder {
    started: bool,
    preset: Option<TangleProgram>,
    source: Word,
    gens: Vec<Gen>,
    word: Word,
}

impl FactorBuilder {
    fn statement(&mut self, stmt: &str) -> std::result::Result<(), String> {
        if let Some(w) = stmt.strip_prefix("id:") {
            let w = parse_word(w).map_err(|e| e.to_string())?;
            if !self.started {
                self.source = w.clone();
                self.word = w;
                self.started = true;
            } else if w != self.word {
                return Err(format!(
                    "identity slice {} does not match current word {}",
                    crate::brauer::format_word(&w),
                    crate::brauer::format_word(&self.word)
                ));
            }
            return Ok(());
        }
        self.started = true;
        let gen = parse_gen(stmt)?;
        self.word = gen.apply(&self.word).map_err(|e| match e {
            Error::BoundaryMismatch(m) => format!("slice does not fit: {m}"),
            other => other.to_string(),
        })?;
        self.gens.push(gen);
        Ok(())
    }

    fn finish(self) -> TangleProgram {
        match self.preset {
            Some(p) => p,
            None => TangleProgram::new(self.source, self.gens).expect("validated while parsing"),
        }
    }
}

fn parse_pos(s: &str) -> std::result::Result<usize, String> {
    s.parse::<usize>().map_err(|_| format!("expected a position, found {s:?}"))
}

fn parse_pair(s: &str) -> std::result::Result<Sign, String> {
    match s {
        "+-" => Ok(Sign::Plus),
        "-+" => Ok(Sign::Minus),
        _ => Err(format!("expected +- or -+, found {s:?}")),
    }
}

fn parse_gen(stmt: &str) -> std::result::Result<Gen, String> {
    let mut parts = stmt.split_whitespace();
    let mut head = parts.next().unwrap_or("");
    let mut pos = 0;
    if let Some(p) = head.strip_prefix('@') {
        pos = parse_pos(p)?;
        head = parts.next().ok_or_else(|| "expected cup or cap after position".to_string())?;
        if !(head.starts_with("cup:") || head.starts_with("cap:")) {
            return Err(format!("a position prefix applies only to cup or cap, found {head:?}"));
        }
    }
    if let Some(extra) = parts.next() {
        return Err(format!("unexpected token {extra:?}"));
    }
    if let Some(p) = head.strip_prefix("x+:") {
        Ok(Gen::Cross { pos: parse_pos(p)?, positive: true })
    } else if let Some(p) = head.strip_prefix("x-:") {
        Ok(Gen::Cross { pos: parse_pos(p)?, positive: false })
    } else if let Some(w) = head.strip_prefix("cup:") {
        Ok(Gen::Cup { pos, first: parse_pair(w)? })
    } else if let Some(w) = head.strip_prefix("cap:") {
        Ok(Gen::Cap { pos, first: parse_pair(w)? })
    } else {
        Err(format!("unknown token {head:?}"))
    }
}

fn parse_int_field(tok: &str, key: &str) -> std::result::Result<i64, String> {
    let v = tok.strip_prefix(key).and_then(|r| r.strip_prefix('=')).ok_or_else(|| format!("expected {key}=<int>, found {tok:?}"))?;
    v.parse::<i64>().map_err(|_| format!("expected an integer for {key}, found {v:?}"))
}

fn parse_preset(stmt: &str) -> std::result::Result<Option<TangleProgram>, String> {
    let toks: Vec<&str> = stmt.split_whitespace().collect();
    match toks.as_slice() {
        ["u+"] => Ok(Some(unknot(1))),
        ["u-"] => Ok(Some(unknot(-1))),
        ["unknot", rest @ ..] => match rest {
            [f] => Ok(Some(unknot(parse_int_field(f, "f")?))),
            _ => Err("expected: unknot f=<int>".into()),
        },
        ["hopf", rest @ ..] => match rest {
            [a, b] => Ok(Some(hopf(parse_int_field(a, "f1")?, parse_int_field(b, "f2")?))),
            _ => Err("expected: hopf f1=<int> f2=<int>".into()),
        },
        _ => Ok(None),
    }
}

/// The slices of `|f|` kinks of sign `f` on the strand at `pos` of letter `s`.
pub fn kinks(pos: usize, s: Sign, f: i64) -> Vec<Gen> {
    let mut out = Vec::new();
    for _ in 0..f.unsigned_abs() {
        out.push(Gen::Cup { pos: pos + 1, first: s.flip() });
        out.push(Gen::Cross { pos, positive: f > 0 });
        out.push(Gen::Cap { pos, first: s.flip() });
    }
    out
}

/// The unknot with framing `f`.
pub fn unknot(f: i64) -> TangleProgram {
    let mut gens = vec![Gen::Cup { pos: 0, first: Sign::Plus }];
    gens.extend(kinks(0, Sign::Plus, f));
    gens.push(Gen::Cap { pos: 0, first: Sign::Plus });
    TangleProgram::new(vec![], gens).expect("preset is valid")
}

/// The Hopf link with linking number `1` and framings `f1`, `f2`.
pub fn hopf(f1: i64, f2: i64) -> TangleProgram {
    let mut gens = vec![
        Gen::Cup { pos: 0, first: Sign::Plus },
        Gen::Cup { pos: 2, first: Sign::Plus },
        Gen::Cross { pos: 1, positive: true },
        Gen::Cross { pos: 1, positive: true },
    ];
    gens.extend(kinks(0, Sign::Plus, f1));
    gens.extend(kinks(2, Sign::Plus, f2));
    gens.push(Gen::Cap { pos: 2, first: Sign::Plus });
    gens.push(Gen::Cap { pos: 0, first: Sign::Plus });
    TangleProgram::new(vec![], gens).expect("preset is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cup() {
        let t = parse("cup:+-").unwrap();
        assert_eq!(t.source(), []);
        assert_eq!(t.target(), [Sign::Plus, Sign::Minus]);
    }

    #[test]
    fn crossing_beyond_width_is_reported_with_position() {
        let e = parse("id:+\nx+:1").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, col: 1, .. }), "{e:?}");
    }

    #[test]
    fn unknot_preset_has_three_kinks() {
        let t = preset("unknot f=3").unwrap();
        let cups = t.gens().iter().filter(|g| matches!(g, Gen::Cup { .. })).count();
        let crossings = t.gens().iter().filter(|g| matches!(g, Gen::Cross { positive: true, .. })).count();
        assert_eq!((cups, crossings), (4, 3));
        assert!(t.is_closed());
    }

    #[test]
    fn text_round_trip() {
        let h = hopf(2, -1);
        assert_eq!(parse(&h.to_dsl()).unwrap(), h);
    }

    #[test]
    fn factors_are_juxtaposed() {
        let t = parse("u+\n---\nu-").unwrap();
        assert_eq!(t, unknot(1).tensor(&unknot(-1)));
    }

    #[test]
    fn rejects_unknown_tokens_and_mixed_factors() {
        assert!(parse("cup:++").is_err());
        assert!(parse("u+\ncup:+-").is_err());
        assert!(parse("cup:+-\nu+").is_err());
        assert!(parse("hopf f1=0").is_err());
        assert!(parse("id:+-\nid:-+").is_err());
        assert!(parse("x+:0 x+:0").is_err());
    }

    #[test]
    fn semicolons_separate_slices() {
        assert_eq!(parse("cup:+-; cap:+-").unwrap(), parse("cup:+-\ncap:+-").unwrap());
    }
}
