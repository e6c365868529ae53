//! Extended dot-bracket notation.
//!
//! `.` marks an unpaired vertex. Arcs live on bracket pages `()`, `[]`, `{}`,
//! `<>`, then `Aa` through `Zz` (upper case opens, lower case closes). Pairs
//! are matched last-in first-out within their page.

use thiserror::Error;

use super::Diagram;

pub const PAGE_COUNT: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NotationError {
    #[error("unknown character {ch:?} at column {column}")]
    UnknownCharacter { ch: char, column: usize },

    #[error("closing {ch:?} at column {column} has no matching opener")]
    UnmatchedCloser { ch: char, column: usize },

    #[error("opening {ch:?} at column {column} is never closed")]
    UnmatchedOpener { ch: char, column: usize },

    #[error("diagram needs more than {PAGE_COUNT} bracket pages")]
    TooManyPages,

    #[error("invalid diagram: {0}")]
    Invalid(String),
}

fn page_chars(page: usize) -> (char, char) {
    const FIRST: [(char, char); 4] = [('(', ')'), ('[', ']'), ('{', '}'), ('<', '>')];
    if page < 4 {
        FIRST[page]
    } else {
        let k = (page - 4) as u8;
        ((b'A' + k) as char, (b'a' + k) as char)
    }
}

// (page, is_opener)
fn classify(ch: char) -> Option<(usize, bool)> {
    match ch {
        '(' => Some((0, true)),
        ')' => Some((0, false)),
        '[' => Some((1, true)),
        ']' => Some((1, false)),
        '{' => Some((2, true)),
        '}' => Some((2, false)),
        '<' => Some((3, true)),
        '>' => Some((3, false)),
        'A'..='Z' => Some((4 + (ch as usize - 'A' as usize), true)),
        'a'..='z' => Some((4 + (ch as usize - 'a' as usize), false)),
        _ => None,
    }
}

pub fn parse(text: &str) -> Result<Diagram, NotationError> {
    let chars: Vec<char> = text.trim().chars().collect();
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); PAGE_COUNT];
    let mut arcs = Vec::new();
    for (k, &ch) in chars.iter().enumerate() {
        let column = k + 1;
        if ch == '.' {
            continue;
        }
        let (page, open) = classify(ch).ok_or(NotationError::UnknownCharacter { ch, column })?;
        if open {
            stacks[page].push(column);
        } else {
            let i = stacks[page]
                .pop()
                .ok_or(NotationError::UnmatchedCloser { ch, column })?;
            arcs.push((i, column));
        }
    }
    if let Some((page, &column)) = stacks
        .iter()
        .enumerate()
        .filter_map(|(p, s)| s.first().map(|c| (p, c)))
        .min_by_key(|&(_, c)| *c)
    {
        return Err(NotationError::UnmatchedOpener {
            ch: page_chars(page).0,
            column,
        });
    }
    Diagram::new(chars.len(), arcs)
}

/// Renders with greedy page assignment: arcs in order of left endpoint take
/// the lowest page on which they cross nothing already placed.
pub fn emit(d: &Diagram) -> Result<String, NotationError> {
    let mut pages: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut out = vec!['.'; d.len()];
    for &arc in d.arcs() {
        let page = match pages
            .iter()
            .position(|p| !p.iter().any(|&b| Diagram::crossing(arc, b)))
        {
            Some(p) => p,
            None => {
                if pages.len() == PAGE_COUNT {
                    return Err(NotationError::TooManyPages);
                }
                pages.push(Vec::new());
                pages.len() - 1
            }
        };
        pages[page].push(arc);
        let (open, close) = page_chars(page);
        out[arc.0 - 1] = open;
        out[arc.1 - 1] = close;
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::testing::arb_diagram;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let d = parse("()").unwrap();
        assert_eq!((d.len(), d.arcs()), (2, &[(1, 2)][..]));
        let d = parse("([)]").unwrap();
        assert_eq!(d.arcs(), [(1, 3), (2, 4)]);
        let d = parse(".(.)").unwrap();
        assert_eq!((d.len(), d.arcs()), (4, &[(2, 4)][..]));
        let d = parse("Ab.aB").unwrap_err();
        assert_eq!(d, NotationError::UnmatchedCloser { ch: 'b', column: 2 });
    }

    #[test]
    fn parse_errors_carry_columns() {
        assert_eq!(
            parse("(.#)").unwrap_err(),
            NotationError::UnknownCharacter { ch: '#', column: 3 }
        );
        assert_eq!(
            parse(".)").unwrap_err(),
            NotationError::UnmatchedCloser { ch: ')', column: 2 }
        );
        assert_eq!(
            parse("[(.)").unwrap_err(),
            NotationError::UnmatchedOpener { ch: '[', column: 1 }
        );
    }

    #[test]
    fn emit_examples() {
        let d = Diagram::new(2, [(1, 2)]).unwrap();
        assert_eq!(emit(&d).unwrap(), "()");
        let d = Diagram::new(4, [(1, 3), (2, 4)]).unwrap();
        assert_eq!(emit(&d).unwrap(), "([)]");
        // {(1,4),(2,5),(3,6)} needs three pages
        let d = Diagram::new(6, [(1, 4), (2, 5), (3, 6)]).unwrap();
        assert_eq!(emit(&d).unwrap(), "([{)]}");
    }

    #[test]
    fn too_many_pages() {
        // 31 mutually crossing arcs
        let k = 31;
        let d = Diagram::new(2 * k, (1..=k).map(|i| (i, i + k))).unwrap();
        assert_eq!(emit(&d).unwrap_err(), NotationError::TooManyPages);
        let d = Diagram::new(60, (1..=30).map(|i| (i, i + 30))).unwrap();
        assert_eq!(parse(&emit(&d).unwrap()).unwrap(), d);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn round_trip(d in arb_diagram(24)) {
            let s = emit(&d).unwrap();
            prop_assert_eq!(parse(&s).unwrap(), d);
        }
    }
}
