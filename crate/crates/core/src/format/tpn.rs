use super::automaton::RESERVED;
use super::lexer::{quote, Parser, Tok};
use crate::error::Result;
use crate::tpn::{Marking, Tpn, TpnTransition};

fn q(name: &str) -> String {
    quote(name, RESERVED)
}

fn place(p: &Parser, places: &[String], name: &str) -> Result<usize> {
    match places.iter().position(|x| x == name) {
        Some(i) => Ok(i),
        None => p.error(format!("unknown place `{name}`")),
    }
}

fn marking_items(p: &mut Parser, places: &[String]) -> Result<Marking> {
    let mut m = Marking::zeros(places.len());
    while p.is_name() {
        let name = p.name()?;
        let i = place(p, places, &name)?;
        let k = if p.eat_punct(":") { p.number()? } else { 1 };
        m[i] = m[i].saturating_add(u32::try_from(k).or_else(|_| p.error("token count out of range"))?);
        p.eat_punct(",");
    }
    Ok(m)
}

/// Parse `p1:2 p2:1` (or `p1:2, p2:1`) against a place list.
pub fn parse_marking(places: &[String], src: &str) -> Result<Marking> {
    let mut p = Parser::new(src)?;
    let m = marking_items(&mut p, places)?;
    if !p.at_end() {
        return p.error("expected `place:count`");
    }
    Ok(m)
}

pub fn parse_tpn(src: &str) -> Result<Tpn> {
    let mut p = Parser::new(src)?;
    if !p.eat_keyword("tpn") {
        return p.error("expected `tpn`");
    }
    let name = p.name()?;
    p.expect_punct("{")?;
    let mut places: Vec<String> = Vec::new();
    let mut initial: Option<Marking> = None;
    let mut transitions: Vec<TpnTransition> = Vec::new();
    while !p.eat_punct("}") {
        if p.at_end() {
            return p.error("expected `}`");
        }
        let is_header = p.is_name() && matches!(p.peek_at(1), Some(Tok::Punct(":")));
        if is_header {
            let tname = p.name()?;
            p.expect_punct(":")?;
            if places.is_empty() {
                return p.error("`places` must come before transitions");
            }
            let n = places.len();
            transitions.push(TpnTransition {
                name: tname,
                input: Marking::zeros(n),
                output: Marking::zeros(n),
                transfer: (0..n).collect(),
            });
            if p.eat_punct(";") {
                continue;
            }
        }
        if p.eat_keyword("places") {
            if !places.is_empty() {
                return p.error("duplicate `places` clause");
            }
            places = p.name_list()?;
            continue;
        }
        if p.eat_keyword("init") {
            initial = Some(marking_items(&mut p, &places)?);
            p.expect_punct(";")?;
            continue;
        }
        let clause = match p.peek() {
            Some(Tok::Ident(k)) if matches!(k.as_str(), "in" | "out" | "transfer") => k.clone(),
            _ => return p.error("expected a clause"),
        };
        p.next();
        let Some(t) = transitions.last_mut() else {
            return p.error(format!("`{clause}` outside a transition"));
        };
        match clause.as_str() {
            "in" => t.input = marking_items(&mut p, &places)?,
            "out" => t.output = marking_items(&mut p, &places)?,
            _ => {
                while p.is_name() {
                    let a = p.name()?;
                    let from = place(&p, &places, &a)?;
                    p.expect_punct("->")?;
                    let b = p.name()?;
                    t.transfer[from] = place(&p, &places, &b)?;
                    p.eat_punct(",");
                }
            }
        }
        p.expect_punct(";")?;
    }
    if !p.at_end() {
        return p.error("trailing input");
    }
    let initial = initial.unwrap_or_else(|| Marking::zeros(places.len()));
    let net = Tpn { name, places, transitions, initial };
    net.validate()?;
    Ok(net)
}

pub fn print_marking(places: &[String], m: &Marking) -> String {
    m.support().map(|p| format!("{}:{}", q(&places[p]), m[p])).collect::<Vec<_>>().join(" ")
}

fn clause(kw: &str, body: String) -> String {
    if body.is_empty() {
        format!("{kw};")
    } else {
        format!("{kw} {body};")
    }
}

pub fn print_tpn(net: &Tpn) -> String {
    let mut s = format!("tpn {} {{\n", q(&net.name));
    s += &format!("  {}\n", clause("places", net.places.iter().map(|p| q(p)).collect::<Vec<_>>().join(" ")));
    s += &format!("  {}\n", clause("init", print_marking(&net.places, &net.initial)));
    for t in &net.transitions {
        s += &format!("  {}: {}\n", q(&t.name), clause("in", print_marking(&net.places, &t.input)));
        s += &format!("    {}\n", clause("out", print_marking(&net.places, &t.output)));
        let moves: Vec<String> = t
            .transfer
            .iter()
            .enumerate()
            .filter(|(a, b)| a != *b)
            .map(|(a, &b)| format!("{}->{}", q(&net.places[a]), q(&net.places[b])))
            .collect();
        if !moves.is_empty() {
            s += &format!("    {}\n", clause("transfer", moves.join(" ")));
        }
    }
    s += "}\n";
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const NET: &str = "tpn n { places p1 p2 ; init p1:1 ; t1 : in p1:1 ; out p2:2 ; transfer p1->p2 ; }";

    #[test]
    fn parses_spec_shape() {
        let n = parse_tpn(NET).unwrap();
        assert_eq!(n.places, vec!["p1", "p2"]);
        assert_eq!(n.initial.0, vec![1, 0]);
        let t = &n.transitions[0];
        assert_eq!(t.input.0, vec![1, 0]);
        assert_eq!(t.output.0, vec![0, 2]);
        assert_eq!(t.transfer, vec![1, 1]);
    }

    #[test]
    fn round_trip() {
        let once = print_tpn(&parse_tpn(NET).unwrap());
        assert_eq!(print_tpn(&parse_tpn(&once).unwrap()), once);
    }

    #[test]
    fn markings() {
        let places = vec!["a".to_string(), "b".to_string()];
        assert_eq!(parse_marking(&places, "b:3, a").unwrap().0, vec![1, 3]);
        assert!(parse_marking(&places, "c:1").is_err());
    }
}
