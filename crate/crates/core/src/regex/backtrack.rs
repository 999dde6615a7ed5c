use super::ast::{Node, RegexAst};

/// Reference matcher: recursive backtracking with greedy stars, anchored at
/// both ends. Returns the verdict and the number of node-versus-character
/// comparisons made.
pub fn backtrack_match(ast: &RegexAst, text: &str) -> (bool, u64) {
    let chars: Vec<char> = text.chars().collect();
    let mut caps = vec![None; ast.captures + 1];
    let mut steps = 0;
    let ok = go(&ast.nodes, &chars, 0, 0, &mut caps, &mut steps);
    (ok, steps)
}

/// Unanchored matching, as a search for the pattern anywhere in `text`.
pub fn backtrack_search(ast: &RegexAst, text: &str) -> (bool, u64) {
    backtrack_match(&ast.search(), text)
}

fn go(nodes: &[Node], text: &[char], i: usize, pos: usize, caps: &mut [Option<char>], steps: &mut u64) -> bool {
    let Some(node) = nodes.get(i) else { return pos == text.len() };
    let here = text.get(pos).copied();
    match node {
        Node::Star(k) => {
            let mut run = 0;
            while text.get(pos + run).is_some_and(|&c| {
                *steps += 1;
                k.matches(c)
            }) {
                run += 1;
            }
            (0..=run).rev().any(|len| go(nodes, text, i + 1, pos + len, caps, steps))
        }
        _ => {
            *steps += 1;
            let Some(c) = here else { return false };
            match node {
                Node::Literal(l) => c == *l && go(nodes, text, i + 1, pos + 1, caps, steps),
                Node::Class(k) => k.matches(c) && go(nodes, text, i + 1, pos + 1, caps, steps),
                Node::Capture(g, k) => {
                    if !k.matches(c) {
                        return false;
                    }
                    let old = caps[*g].replace(c);
                    let ok = go(nodes, text, i + 1, pos + 1, caps, steps);
                    caps[*g] = old;
                    ok
                }
                Node::Backref(g) => caps[*g] == Some(c) && go(nodes, text, i + 1, pos + 1, caps, steps),
                Node::Star(_) => unreachable!(),
            }
        }
    }
}
