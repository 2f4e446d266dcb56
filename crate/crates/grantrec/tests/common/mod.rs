//! Reference implementations shared by the integration suites. These are
//! deliberately independent of the library code paths they check.

/// Reference tag stripper: a hand-written scanner for the pattern
/// `<("[^"]*"|'[^']*'|[^'">])*>`. A match runs from `<` to the first `>`
/// that is not inside a quoted attribute value; an unterminated quote or a
/// missing `>` means no match. Matches are replaced by one space.
pub fn reference_strip_tags(input: &str) -> String {
    let chars: Vec<char> = input.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == '<' {
            if let Some(end) = match_tag(&chars, i) {
                out.push(' ');
                i = end;
                continue;
            }
        }
        out.push(chars[i]);
        i += 1;
    }
    out
}

fn match_tag(chars: &[char], start: usize) -> Option<usize> {
    let mut i = start + 1;
    loop {
        match chars.get(i)? {
            '>' => return Some(i + 1),
            '"' => {
                i += 1;
                while *chars.get(i)? != '"' {
                    i += 1;
                }
                i += 1;
            }
            '\'' => {
                i += 1;
                while *chars.get(i)? != '\'' {
                    i += 1;
                }
                i += 1;
            }
            _ => i += 1,
        }
    }
}

/// Reference entity decoder: single left-to-right pass over
/// `&amp; &lt; &gt; &quot; &#NN;`, no re-scanning of produced text.
pub fn reference_decode_entities(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] != '&' {
            out.push(chars[i]);
            i += 1;
            continue;
        }
        let rest: String = chars[i..].iter().collect();
        let named = [
            ("&amp;", '&'),
            ("&lt;", '<'),
            ("&gt;", '>'),
            ("&quot;", '"'),
        ]
        .into_iter()
        .find(|(name, _)| rest.starts_with(name));
        if let Some((name, ch)) = named {
            out.push(ch);
            i += name.chars().count();
            continue;
        }
        if let Some(body) = rest.strip_prefix("&#") {
            let digits: String = body.chars().take_while(char::is_ascii_digit).collect();
            if !digits.is_empty() && body[digits.len()..].starts_with(';') {
                if let Some(ch) = digits.parse::<u32>().ok().and_then(char::from_u32) {
                    out.push(ch);
                    i += 2 + digits.chars().count() + 1;
                    continue;
                }
            }
        }
        out.push('&');
        i += 1;
    }
    out
}

/// Full reference pipeline matching the documented `strip_html` contract.
pub fn reference_strip_html(input: &str) -> String {
    reference_decode_entities(&reference_strip_tags(input))
}
