use super::Formula;

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

/// Renders a formula so that `parse_formula` gives back the same tree.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write(f, 0, &mut out);
    out
}

fn write(f: &Formula, min: u8, out: &mut String) {
    // (own precedence, minimum accepted on the left, minimum on the right)
    let ((own, left_min, right_min), l, r, op) = match f {
        Formula::True => return out.push_str("true"),
        Formula::False => return out.push_str("false"),
        Formula::Var(v) => return out.push_str(v.as_str()),
        Formula::Not(x) => return unary("~", x, out),
        Formula::DiamondD(x) => return unary("<D> ", x, out),
        Formula::BoxD(x) => return unary("[D] ", x, out),
        Formula::Iff(l, r) => ((IFF, IFF, IMP), l, r, " <-> "),
        Formula::Implies(l, r) => ((IMP, OR, IMP), l, r, " -> "),
        Formula::Or(l, r) => ((OR, OR, AND), l, r, " | "),
        Formula::And(l, r) => ((AND, AND, UNARY), l, r, " & "),
    };
    let wrap = own < min;
    if wrap {
        out.push('(');
    }
    write(l, left_min, out);
    out.push_str(op);
    write(r, right_min, out);
    if wrap {
        out.push(')');
    }
}

fn unary(op: &str, x: &Formula, out: &mut String) {
    out.push_str(op);
    write(x, UNARY, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    #[test]
    fn atoms() {
        assert_eq!(print_formula(&Formula::atom("p")), "p");
        assert_eq!(print_formula(&Formula::boxd(Formula::False)), "[D] false");
    }

    #[test]
    fn parenthesization() {
        for text in [
            "a -> b -> c",
            "(a -> b) -> c",
            "a & (b | c)",
            "a | b & c",
            "a <-> (b <-> c)",
            "a <-> b <-> c",
            "~(a & b)",
            "<D> (a -> [D] ~b)",
            "(a | b) | c",
            "a | (b | c)",
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(parse_formula(&print_formula(&f)).unwrap(), f, "{text}");
        }
        assert_eq!(print_formula(&parse_formula("(a -> b) -> c").unwrap()), "(a -> b) -> c");
        assert_eq!(print_formula(&parse_formula("a & b & c").unwrap()), "a & b & c");
    }
}
