//! Text grammar: `a,b | abAB^2`. Lowercase letters are generators, uppercase
//! their inverses, `^k` repeats the preceding letter `k` times (a negative
//! `k` inverts it) and `1` or the empty string is the identity.

use onerel::{Alphabet, Generator, Letter, OneRelatorPresentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown generator '{name}' at byte {offset}")]
    UnknownGenerator { offset: usize, name: char },
    #[error("relator is trivial in the free group")]
    EmptyRelator,
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownGenerator { offset, .. } => {
                Some(*offset)
            }
            ParseError::EmptyRelator => None,
        }
    }

    fn shifted(self, by: usize) -> Self {
        match self {
            ParseError::Syntax { offset, message } => ParseError::Syntax {
                offset: offset + by,
                message,
            },
            ParseError::UnknownGenerator { offset, name } => ParseError::UnknownGenerator {
                offset: offset + by,
                name,
            },
            e => e,
        }
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        offset,
        message: message.into(),
    }
}

pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if bytes.get(i) == Some(&b'1') {
        let mut j = i + 1;
        skip_ws(&mut j);
        if j == bytes.len() {
            return Ok(Word::identity());
        }
    }
    let mut letters = Vec::new();
    while {
        skip_ws(&mut i);
        i < bytes.len()
    } {
        let c = bytes[i];
        if !c.is_ascii_alphabetic() {
            return Err(syntax(
                i,
                format!("unexpected '{}'", text[i..].chars().next().unwrap()),
            ));
        }
        let name = (c.to_ascii_lowercase() as char).to_string();
        let g = alphabet.lookup(&name).ok_or(ParseError::UnknownGenerator {
            offset: i,
            name: name.chars().next().unwrap(),
        })?;
        let letter = Letter::new(g, c.is_ascii_lowercase());
        i += 1;
        let mut count: i64 = 1;
        if bytes.get(i) == Some(&b'^') {
            let start = i + 1;
            let mut j = start;
            if matches!(bytes.get(j), Some(b'-' | b'+')) {
                j += 1;
            }
            let digits = j;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j == digits {
                return Err(syntax(j, "expected an integer exponent"));
            }
            count = text[start..j]
                .parse()
                .map_err(|_| syntax(start, "exponent out of range"))?;
            if count == 0 {
                return Err(syntax(start, "exponent must be nonzero"));
            }
            if count.unsigned_abs() > 1 << 20 {
                return Err(syntax(start, "exponent out of range"));
            }
            i = j;
        }
        let l = if count < 0 { letter.inverse() } else { letter };
        letters.extend(std::iter::repeat_n(l, count.unsigned_abs() as usize));
    }
    Ok(Word::reduce(letters))
}

/// `g₁,g₂,… | relator` with single lowercase-letter generator names.
pub fn parse_presentation(text: &str) -> Result<OneRelatorPresentation, ParseError> {
    let bar = text
        .find('|')
        .ok_or_else(|| syntax(text.len(), "expected '|' between generators and relator"))?;
    let alphabet = parse_alphabet(&text[..bar])?;
    let relator = parse_word(&text[bar + 1..], &alphabet).map_err(|e| e.shifted(bar + 1))?;
    OneRelatorPresentation::new(alphabet, relator).map_err(|_| ParseError::EmptyRelator)
}

/// Comma-separated single lowercase letters, e.g. `a, b, c`.
pub fn parse_alphabet(text: &str) -> Result<Alphabet, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let lead = part.len() - part.trim_start().len();
        let name = part.trim();
        let at = offset + lead;
        match name.as_bytes() {
            [c] if c.is_ascii_lowercase() => {
                if names.iter().any(|n| n == name) {
                    return Err(syntax(at, format!("duplicate generator '{name}'")));
                }
                names.push(name.to_string());
            }
            [] => return Err(syntax(at, "expected a generator name")),
            _ => return Err(syntax(at, "generator names are single lowercase letters")),
        }
        offset += part.len() + 1;
    }
    Ok(Alphabet::new(names).expect("validated names"))
}

/// Inverse of [`parse_presentation`].
pub fn format_presentation(p: &OneRelatorPresentation) -> String {
    format!(
        "{} | {}",
        p.alphabet().names().join(","),
        p.alphabet().format_word(p.relator())
    )
}

pub fn parse_subset(text: &str, alphabet: &Alphabet) -> Result<Vec<Generator>, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let sub = parse_alphabet(text)?;
    sub.names()
        .iter()
        .map(|n| {
            alphabet
                .lookup(n)
                .ok_or_else(|| ParseError::UnknownGenerator {
                    offset: text.find(n.as_str()).unwrap_or(0),
                    name: n.chars().next().unwrap(),
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::letters(2)
    }

    #[test]
    fn words() {
        let w = parse_word("abAB", &ab()).unwrap();
        assert_eq!(ab().format_word(&w), "abAB");
        let w = parse_word("a^3B^2", &ab()).unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(ab().format_word(&w), "a^3B^2");
        assert_eq!(
            parse_word("a^-2", &ab()).unwrap(),
            parse_word("AA", &ab()).unwrap()
        );
        assert_eq!(
            parse_word("A^-1", &ab()).unwrap(),
            parse_word("a", &ab()).unwrap()
        );
        assert!(parse_word("", &ab()).unwrap().is_empty());
        assert!(parse_word("1", &ab()).unwrap().is_empty());
        assert!(parse_word("aA", &ab()).unwrap().is_empty());
        assert_eq!(parse_word("a b", &ab()).unwrap().len(), 2);
    }

    #[test]
    fn word_errors() {
        assert_eq!(
            parse_word("abx", &ab()),
            Err(ParseError::UnknownGenerator {
                offset: 2,
                name: 'x'
            })
        );
        assert_eq!(parse_word("ab^", &ab()).unwrap_err().offset(), Some(3));
        assert_eq!(parse_word("a^0", &ab()).unwrap_err().offset(), Some(2));
        assert_eq!(parse_word("a1", &ab()).unwrap_err().offset(), Some(1));
        assert_eq!(parse_word("^2", &ab()).unwrap_err().offset(), Some(0));
        assert_eq!(parse_word("aé", &ab()).unwrap_err().offset(), Some(1));
    }

    #[test]
    fn presentations() {
        let p = parse_presentation("a,b | abAB").unwrap();
        assert_eq!(format_presentation(&p), "a,b | abAB");
        let p = parse_presentation("a,b | abaB^2").unwrap();
        assert_eq!(p.alphabet().format_word(p.relator()), "abaB^2");
        assert_eq!(parse_presentation(" a , b , c |abc").unwrap().rank(), 3);
    }

    #[test]
    fn presentation_errors() {
        assert_eq!(
            parse_presentation("a,b abAB").unwrap_err().offset(),
            Some(8)
        );
        assert_eq!(
            parse_presentation("a,b | abx").unwrap_err().offset(),
            Some(8)
        );
        assert_eq!(
            parse_presentation("a,b | aA"),
            Err(ParseError::EmptyRelator)
        );
        assert_eq!(parse_presentation("a,b | 1"), Err(ParseError::EmptyRelator));
        assert_eq!(parse_presentation("a,a | a").unwrap_err().offset(), Some(2));
        assert_eq!(
            parse_presentation("a,,b | a").unwrap_err().offset(),
            Some(2)
        );
        assert_eq!(parse_presentation("ab | a").unwrap_err().offset(), Some(0));
        assert_eq!(parse_presentation("a,B | a").unwrap_err().offset(), Some(2));
    }
}
