//! Plain-text sequence literals.
//!
//! A literal file holds either one line of single-character symbols or
//! whitespace-separated integer symbols. An optional header line
//! `#alphabet: a,b,c` declares the alphabet (symbol `i` is the i-th name);
//! otherwise it is inferred from the content.

use std::collections::BTreeSet;

use super::{Alphabet, LiteralSource, Symbol};
use crate::{Error, Result};

const HEADER: &str = "#alphabet:";

/// Parses a literal into its alphabet and symbols.
pub fn parse_literal(text: &str) -> Result<(Alphabet, Vec<Symbol>)> {
    let mut declared: Option<Alphabet> = None;
    let mut body = String::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix(HEADER) {
            let names: Vec<&str> = rest.split(',').map(str::trim).collect();
            declared = Some(Alphabet::with_names(names)?);
        } else if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        } else {
            body.push_str(trimmed);
            body.push('\n');
        }
    }
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(Error::Parse("literal contains no symbols".into()));
    }
    let whitespace_separated = tokens.len() > 1;
    let items: Vec<String> = if whitespace_separated {
        tokens.iter().map(|t| t.to_string()).collect()
    } else {
        tokens[0].chars().map(|c| c.to_string()).collect()
    };

    match declared {
        Some(alphabet) => {
            let symbols = items
                .iter()
                .map(|item| {
                    alphabet
                        .lookup(item)
                        .or_else(|| item.parse::<Symbol>().ok().filter(|s| alphabet.contains(*s)))
                        .ok_or_else(|| Error::Parse(format!("symbol {item:?} not declared in {alphabet}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((alphabet, symbols))
        }
        None => {
            let numeric: Option<Vec<Symbol>> = items.iter().map(|i| i.parse::<Symbol>().ok()).collect();
            match numeric {
                Some(symbols) => {
                    let alphabet = Alphabet::new(symbols.iter().copied().collect::<BTreeSet<_>>())?;
                    Ok((alphabet, symbols))
                }
                None if whitespace_separated => {
                    Err(Error::Parse("whitespace-separated symbols must be integers in 0..=255".into()))
                }
                None => {
                    let names: Vec<String> =
                        items.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
                    let alphabet = Alphabet::with_names(names)?;
                    let symbols = items.iter().map(|i| alphabet.lookup(i).expect("declared above")).collect();
                    Ok((alphabet, symbols))
                }
            }
        }
    }
}

/// Parses a literal into a finite source.
pub fn literal_source(text: &str) -> Result<LiteralSource> {
    let (alphabet, symbols) = parse_literal(text)?;
    LiteralSource::finite(alphabet, symbols)
}

/// Renders symbols in the literal format, header included.
pub fn format_literal(alphabet: &Alphabet, symbols: &[Symbol]) -> String {
    let names: Vec<String> = alphabet.symbols().iter().map(|&s| alphabet.name(s)).collect();
    let mut out = String::new();
    if alphabet.has_names() {
        out.push_str(HEADER);
        out.push(' ');
        out.push_str(&names.join(","));
        out.push('\n');
    }
    if alphabet.single_char_names() {
        out.extend(symbols.iter().map(|&s| alphabet.name(s)));
    } else {
        let parts: Vec<String> = symbols.iter().map(|&s| alphabet.name(s)).collect();
        out.push_str(&parts.join(" "));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line_digits() {
        let (a, s) = parse_literal("0102\n").unwrap();
        assert_eq!(a.symbols(), &[0, 1, 2]);
        assert_eq!(s, vec![0, 1, 0, 2]);
    }

    #[test]
    fn whitespace_integers() {
        let (a, s) = parse_literal("12 0 12\n  3").unwrap();
        assert_eq!(a.symbols(), &[0, 3, 12]);
        assert_eq!(s, vec![12, 0, 12, 3]);
    }

    #[test]
    fn header_declares_alphabet() {
        let (a, s) = parse_literal("#alphabet: a,b,c\nbca\n").unwrap();
        assert_eq!(a.size(), 3);
        assert_eq!(s, vec![1, 2, 0]);
        assert!(parse_literal("#alphabet: a,b\nabz").is_err());
    }

    #[test]
    fn inferred_letters_are_sorted() {
        let (a, s) = parse_literal("baab").unwrap();
        assert_eq!(a.name(0), "a");
        assert_eq!(s, vec![1, 0, 0, 1]);
    }

    #[test]
    fn rejects_empty_and_bad_tokens() {
        assert!(parse_literal("#alphabet: a,b\n").is_err());
        assert!(parse_literal("1 x 2").is_err());
    }

    #[test]
    fn format_round_trips() {
        let (a, s) = parse_literal("#alphabet: x,y\nxyyx").unwrap();
        let text = format_literal(&a, &s);
        assert_eq!(parse_literal(&text).unwrap(), (a, s));
        let wide = Alphabet::new([0, 11]).unwrap();
        assert_eq!(format_literal(&wide, &[11, 0]), "11 0\n");
    }
}
