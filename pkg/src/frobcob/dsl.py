"""Text front-end: group literals, algebra files, cobordism expressions.

The three grammars are documented with examples in GRAMMAR.md.  All
parsing is hand-written recursive descent over a shared token stream;
every error carries a 1-based SourceSpan pointing into the input.
ParseError means the text does not match a grammar; ValidationError
means it parsed but the described structure fails an axiom check, and
its message names the violated axiom with a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cobordism import (Cobordism, Component, CompositionError, cap, closed,
                        compose, copants, cup, cylinder, identity, pants,
                        swap, tensor)
from .frobenius import (AFrobeniusAlgebra, FrobeniusAlgebra, check_action,
                        check_frobenius)
from .groups import TRIVIAL, AbelianGroup, GroupElement
from .linalg import LinearMap
from .scalar import ONE, ZERO, Scalar


@dataclass(frozen=True)
class SourceSpan:
    """A 1-based (line, column) position with a length of at least 1."""

    line: int
    column: int
    length: int = 1

    def __post_init__(self):
        if self.line < 1 or self.column < 1 or self.length < 1:
            raise ValueError(f"degenerate span: {self.line}:{self.column}+{self.length}")

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(Exception):
    """Input text does not match the grammar."""

    def __init__(self, span: SourceSpan, expected: str, found: str):
        self.span = span
        self.expected = expected
        self.found = found
        super().__init__(f"{span}: expected {expected}, found {found}")


class ValidationError(Exception):
    """Parsed structure fails an axiom check."""

    def __init__(self, message: str, span: SourceSpan = SourceSpan(1, 1, 1)):
        self.span = span
        super().__init__(message)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, max(1, len(self.text)))

    def describe(self) -> str:
        if self.kind == "EOF":
            return "end of input"
        if self.kind == "NEWLINE":
            return "end of line"
        return f'"{self.text}"'


_PUNCT = set("()[]{},;|/^=+-")


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    line, col, i, n = 1, 1, 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            toks.append(Token("NEWLINE", "\n", line, col))
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
                col += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            toks.append(Token("INT", text[start:i], line, col))
            col += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            toks.append(Token("NAME", text[start:i], line, col))
            col += i - start
            continue
        if text.startswith("->", i):
            toks.append(Token("->", "->", line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT:
            toks.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(SourceSpan(line, col), "a token", f"{ch!r}")
    toks.append(Token("EOF", "", line, col))
    return toks


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def skip_newlines(self):
        while self.toks[self.pos].kind == "NEWLINE":
            self.pos += 1

    def expect(self, kind: str, expected: str | None = None) -> Token:
        t = self.peek()
        if t.kind != kind:
            raise self.fail(expected or f'"{kind}"')
        return self.advance()

    def fail(self, expected: str) -> ParseError:
        t = self.peek()
        return ParseError(t.span, expected, t.describe())

    def end_line(self):
        t = self.peek()
        if t.kind == "NEWLINE":
            self.advance()
        elif t.kind != "EOF":
            raise self.fail("end of line")


# ---------------------------------------------------------------- groups

def _parse_group_tokens(p: _Parser) -> AbelianGroup:
    t = p.peek()
    if t.kind == "INT" and t.text == "1":
        p.advance()
        return TRIVIAL
    free = 0
    torsion: list[int] = []
    while True:
        t = p.peek()
        if t.kind != "NAME" or t.text != "Z":
            raise p.fail('a group factor ("Z", "Z^r" or "Z/m")')
        p.advance()
        nxt = p.peek()
        if nxt.kind == "^":
            p.advance()
            num = p.expect("INT", "a free rank")
            r = int(num.text)
            if r == 0:
                raise ParseError(num.span,
                                 'a positive rank ("Z^0" is omitted; the trivial group is "1")',
                                 num.text)
            if torsion:
                raise ParseError(t.span, "free factors before all torsion factors",
                                 '"Z^" after "Z/"')
            free += r
        elif nxt.kind == "/":
            p.advance()
            num = p.expect("INT", "a torsion order")
            m = int(num.text)
            if m < 2:
                raise ParseError(num.span, 'a torsion order of at least 2', num.text)
            if torsion and torsion[-1] > m:
                raise ParseError(num.span, "nondecreasing torsion orders", num.text)
            torsion.append(m)
        else:
            if torsion:
                raise ParseError(t.span, "free factors before all torsion factors",
                                 '"Z" after "Z/"')
            free += 1
        t = p.peek()
        if t.kind == "NAME" and t.text == "x":
            p.advance()
            continue
        return AbelianGroup(free, tuple(torsion))


def parse_group(text: str) -> AbelianGroup:
    p = _Parser(tokenize(text))
    p.skip_newlines()
    g = _parse_group_tokens(p)
    p.skip_newlines()
    p.expect("EOF", "end of input")
    return g


# -------------------------------------------------------------- elements

def _parse_signed_int(p: _Parser) -> int:
    sign = 1
    if p.peek().kind == "-":
        p.advance()
        sign = -1
    num = p.expect("INT", "an integer")
    return sign * int(num.text)


def _parse_int_list(p: _Parser, stop: set[str]) -> list[int]:
    if p.peek().kind in stop:
        return []
    vals = [_parse_signed_int(p)]
    while p.peek().kind == ",":
        p.advance()
        vals.append(_parse_signed_int(p))
    return vals


def _parse_element(p: _Parser, group: AbelianGroup) -> GroupElement:
    open_tok = p.expect("(", 'an element literal starting with "("')
    left = _parse_int_list(p, {";", ")"})
    r, k = group.free_rank, len(group.torsion_orders)
    if p.peek().kind == ";":
        p.advance()
        right = _parse_int_list(p, {")"})
        p.expect(")")
        if len(left) != r:
            raise ParseError(open_tok.span, f"{r} free component(s) for {group}",
                             f"{len(left)}")
        if len(right) != k:
            raise ParseError(open_tok.span, f"{k} torsion residue(s) for {group}",
                             f"{len(right)}")
        return group.element(*left, *right)
    p.expect(")")
    if r > 0 and k > 0:
        raise ParseError(open_tok.span,
                         f'";" between free and torsion parts of an element of {group}',
                         "a plain tuple")
    expected = r if k == 0 else k
    if len(left) != expected:
        raise ParseError(open_tok.span, f"{expected} component(s) for {group}",
                         f"{len(left)}")
    return group.element(*left)


def parse_element(text: str, group: AbelianGroup) -> GroupElement:
    p = _Parser(tokenize(text))
    p.skip_newlines()
    g = _parse_element(p, group)
    p.skip_newlines()
    p.expect("EOF", "end of input")
    return g


# --------------------------------------------------------------- scalars

def _parse_scalar_part(p: _Parser) -> tuple[Fraction, bool]:
    t = p.peek()
    if t.kind == "NAME" and t.text == "i":
        p.advance()
        return Fraction(1), True
    num = p.expect("INT", "a number")
    den = 1
    if p.peek().kind == "/":
        p.advance()
        den_tok = p.expect("INT", "a denominator")
        den = int(den_tok.text)
        if den == 0:
            raise ParseError(den_tok.span, "a nonzero denominator", "0")
    val = Fraction(int(num.text), den)
    t = p.peek()
    if t.kind == "NAME" and t.text == "i":
        p.advance()
        return val, True
    return val, False


def _parse_scalar_tokens(p: _Parser) -> Scalar:
    re_val: Fraction | None = None
    im_val: Fraction | None = None
    sign = 1
    if p.peek().kind == "-":
        p.advance()
        sign = -1
    part, imag = _parse_scalar_part(p)
    if imag:
        im_val = sign * part
    else:
        re_val = sign * part
    t = p.peek()
    if t.kind in ("+", "-"):
        op = p.advance()
        sign = 1 if op.kind == "+" else -1
        part, imag = _parse_scalar_part(p)
        if imag and im_val is None:
            im_val = sign * part
        elif not imag and re_val is None:
            re_val = sign * part
        else:
            raise ParseError(op.span, "at most one real and one imaginary part",
                             "a second one")
    return Scalar(0 if re_val is None else re_val, 0 if im_val is None else im_val)


def parse_scalar(text: str) -> Scalar:
    p = _Parser(tokenize(text))
    p.skip_newlines()
    s = _parse_scalar_tokens(p)
    p.skip_newlines()
    p.expect("EOF", "end of input")
    return s


# ------------------------------------------------------------ cobordisms

_ATOM_NAMES = {"id", "cup", "cap", "pants", "copants", "swap"}


def _parse_factor(p: _Parser, group: AbelianGroup) -> Cobordism:
    p.skip_newlines()
    t = p.peek()
    if t.kind == "(":
        p.advance()
        inner = _parse_expr(p, group)
        p.skip_newlines()
        p.expect(")")
        return inner
    if t.kind == "NAME":
        name = t.text
        if name == "id":
            p.advance()
            return identity(1, group)
        if name in _ATOM_NAMES:
            p.advance()
            return {"cup": cup, "cap": cap, "pants": pants,
                    "copants": copants, "swap": swap}[name](group)
        if name == "cyl":
            p.advance()
            p.expect("[")
            el = _parse_element(p, group)
            p.expect("]")
            return cylinder(el)
        if name == "closed":
            p.advance()
            p.expect("[")
            num = p.expect("INT", "a genus")
            p.expect(";")
            el = _parse_element(p, group)
            p.expect("]")
            return closed(int(num.text), el)
        if name == "cob":
            return _parse_cob_block(p, group)
    raise p.fail("a cobordism atom, \"(\" or a \"cob\" block")


def _parse_term(p: _Parser, group: AbelianGroup) -> Cobordism:
    acc = _parse_factor(p, group)
    while True:
        p.skip_newlines()
        if p.peek().kind == "|":
            p.advance()
            acc = tensor(acc, _parse_factor(p, group))
        else:
            return acc


def _parse_expr(p: _Parser, group: AbelianGroup) -> Cobordism:
    acc = _parse_term(p, group)
    while True:
        p.skip_newlines()
        t = p.peek()
        if t.kind != ";":
            return acc
        p.advance()
        nxt = _parse_term(p, group)
        try:
            acc = compose(nxt, acc)
        except CompositionError:
            raise ParseError(t.span,
                             f"a term consuming {acc.target} circle(s)",
                             f"one consuming {nxt.source}") from None


def _parse_port_set(p: _Parser) -> frozenset[int]:
    open_tok = p.expect("{", 'a port set like "{0,2}"')
    vals: list[int] = []
    if p.peek().kind != "}":
        vals.append(int(p.expect("INT", "a port number").text))
        while p.peek().kind == ",":
            p.advance()
            vals.append(int(p.expect("INT", "a port number").text))
    p.expect("}")
    if len(set(vals)) != len(vals):
        raise ParseError(open_tok.span, "distinct port numbers", f"{vals}")
    return frozenset(vals)


def _parse_cob_block(p: _Parser, group: AbelianGroup) -> Cobordism:
    kw = p.expect("NAME")
    m = int(p.expect("INT", "a source circle count").text)
    p.expect("->")
    n = int(p.expect("INT", "a target circle count").text)
    gt = p.expect("NAME", '"group"')
    if gt.text != "group":
        raise ParseError(gt.span, '"group"', f'"{gt.text}"')
    p.expect("=")
    block_group = _parse_group_tokens(p)
    if block_group != group:
        raise ParseError(kw.span, f"the ambient group {group}", f"{block_group}")
    p.expect("{")
    comps: list[Component] = []
    while True:
        p.skip_newlines()
        if p.peek().kind == "}":
            p.advance()
            break
        ct = p.expect("NAME", '"comp" or "}"')
        if ct.text != "comp":
            raise ParseError(ct.span, '"comp" or "}"', f'"{ct.text}"')
        for field in ("genus", "in", "out", "label"):
            ft = p.expect("NAME", f'"{field}="')
            if ft.text != field:
                raise ParseError(ft.span, f'"{field}="', f'"{ft.text}"')
            p.expect("=")
            if field == "genus":
                genus = int(p.expect("INT", "a genus").text)
            elif field == "in":
                inputs = _parse_port_set(p)
            elif field == "out":
                outputs = _parse_port_set(p)
            else:
                label = _parse_element(p, group)
        try:
            comps.append(Component(genus, inputs, outputs, label))
        except ValueError as e:
            raise ParseError(ct.span, "a valid component", str(e)) from None
        t = p.peek()
        if t.kind not in ("NEWLINE", "}"):
            raise p.fail('end of line or "}"')
    try:
        return Cobordism(group, m, n, tuple(comps))
    except ValueError as e:
        raise ParseError(kw.span, "a well-formed component list", str(e)) from None


def parse_cobordism(text: str, group: AbelianGroup) -> Cobordism:
    """Parse an expression over the given label group into a cobordism.

    ";" composes left to right (diagram order: "a ; b" does a first),
    "|" tensors and binds tighter.
    """
    p = _Parser(tokenize(text))
    c = _parse_expr(p, group)
    p.skip_newlines()
    p.expect("EOF", "end of input")
    return c


def format_cobordism(c: Cobordism) -> str:
    """Canonical block form; parse_cobordism inverts this exactly."""
    def ports(s: frozenset[int]) -> str:
        return "{" + ",".join(str(j) for j in sorted(s)) + "}"

    lines = [f"cob {c.source}->{c.target} group={c.group} {{"]
    for comp in c.components:
        lines.append(f"  comp genus={comp.genus} in={ports(comp.inputs)}"
                     f" out={ports(comp.outputs)} label={comp.label}")
    lines.append("}")
    return "\n".join(lines)


# --------------------------------------------------------- algebra files

def _parse_lincomb(p: _Parser, names: tuple[str, ...], index: dict[str, int]) -> list[Scalar]:
    vec = [ZERO] * len(names)
    t = p.peek()
    if t.kind == "INT" and t.text == "0" and \
            p.toks[p.pos + 1].kind in ("NEWLINE", "EOF"):
        p.advance()
        return vec
    sign = 1
    if t.kind == "-":
        p.advance()
        sign = -1
    while True:
        coeff = ONE
        t = p.peek()
        if t.kind == "INT":
            num = int(p.advance().text)
            den = 1
            if p.peek().kind == "/":
                p.advance()
                den_tok = p.expect("INT", "a denominator")
                den = int(den_tok.text)
                if den == 0:
                    raise ParseError(den_tok.span, "a nonzero denominator", "0")
            coeff = Scalar(Fraction(num, den))
        elif t.kind == "(":
            p.advance()
            coeff = _parse_scalar_tokens(p)
            p.expect(")")
        nt = p.expect("NAME", "a basis name")
        if nt.text not in index:
            raise ParseError(nt.span, f"a basis name ({', '.join(names)})", f'"{nt.text}"')
        k = index[nt.text]
        vec[k] = vec[k] + coeff * sign
        t = p.peek()
        if t.kind == "+":
            p.advance()
            sign = 1
        elif t.kind == "-":
            p.advance()
            sign = -1
        else:
            return vec


def _parse_bracket_matrix(p: _Parser, dim: int) -> LinearMap:
    open_tok = p.expect("[", 'a matrix starting with "["')
    rows: list[list[Scalar]] = []
    while True:
        row = [_parse_scalar_tokens(p)]
        while p.peek().kind == ",":
            p.advance()
            row.append(_parse_scalar_tokens(p))
        rows.append(row)
        t = p.peek()
        if t.kind == ";":
            p.advance()
            continue
        p.expect("]", '";" or "]"')
        break
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ParseError(open_tok.span, f"a {dim}x{dim} matrix",
                         f"{len(rows)} row(s) of widths {[len(r) for r in rows]}")
    return LinearMap.from_rows(dim, 1, 1, rows)


def parse_algebra(text: str, *, validate: bool = True) -> AFrobeniusAlgebra:
    """Parse an algebra file; see GRAMMAR.md for the declaration forms.

    With validate=True (the default) the parsed structure is swept by
    check_frobenius and check_action, and a failure raises
    ValidationError naming the first broken axiom.
    """
    p = _Parser(tokenize(text))
    dim: int | None = None
    names: tuple[str, ...] | None = None
    index: dict[str, int] = {}
    unit = counit = None
    group: AbelianGroup | None = None
    products: dict[tuple[int, int], list[Scalar]] = {}
    actions: dict[str, LinearMap] = {}
    spans: dict[object, SourceSpan] = {}

    while True:
        p.skip_newlines()
        t = p.peek()
        if t.kind == "EOF":
            break
        if t.kind != "NAME":
            raise p.fail("a declaration keyword")
        kw = t.text
        if kw == "dim":
            if dim is not None:
                raise ParseError(t.span, 'a single "dim" declaration', "a duplicate")
            p.advance()
            num = p.expect("INT", "the dimension")
            dim = int(num.text)
            if dim < 1:
                raise ParseError(num.span, "a dimension of at least 1", num.text)
            spans["dim"] = t.span
            p.end_line()
        elif kw == "basis":
            if dim is None:
                raise ParseError(t.span, '"dim" before "basis"', '"basis"')
            if names is not None:
                raise ParseError(t.span, 'a single "basis" declaration', "a duplicate")
            p.advance()
            collected: list[str] = []
            while p.peek().kind == "NAME":
                nt = p.advance()
                if nt.text == "i":
                    raise ParseError(nt.span, 'a basis name other than "i"', '"i"')
                if nt.text in collected:
                    raise ParseError(nt.span, "distinct basis names", f'"{nt.text}"')
                collected.append(nt.text)
            if len(collected) != dim:
                raise ParseError(t.span, f"{dim} basis name(s)", f"{len(collected)}")
            names = tuple(collected)
            index = {n: k for k, n in enumerate(names)}
            p.end_line()
        elif kw in ("unit", "counit"):
            if names is None:
                raise ParseError(t.span, f'"basis" before "{kw}"', f'"{kw}"')
            if (kw == "unit" and unit is not None) or (kw == "counit" and counit is not None):
                raise ParseError(t.span, f'a single "{kw}" declaration', "a duplicate")
            p.advance()
            vec = _parse_lincomb(p, names, index)
            spans[kw] = t.span
            if kw == "unit":
                unit = vec
            else:
                counit = vec
            p.end_line()
        elif kw == "mul":
            if names is None:
                raise ParseError(t.span, '"basis" before "mul"', '"mul"')
            p.advance()
            n1 = p.expect("NAME", "a basis name")
            if n1.text not in index:
                raise ParseError(n1.span, f"a basis name ({', '.join(names)})", f'"{n1.text}"')
            n2 = p.expect("NAME", "a basis name")
            if n2.text not in index:
                raise ParseError(n2.span, f"a basis name ({', '.join(names)})", f'"{n2.text}"')
            p.expect("=")
            key = (index[n1.text], index[n2.text])
            if key in products:
                raise ParseError(t.span, "a single definition per ordered product",
                                 f'a duplicate for {n1.text} {n2.text}')
            products[key] = _parse_lincomb(p, names, index)
            p.end_line()
        elif kw == "group":
            if group is not None:
                raise ParseError(t.span, 'a single "group" declaration', "a duplicate")
            p.advance()
            group = _parse_group_tokens(p)
            spans["group"] = t.span
            p.end_line()
        elif kw == "action":
            if group is None:
                raise ParseError(t.span, '"group" before "action"', '"action"')
            if names is None:
                raise ParseError(t.span, '"basis" before "action"', '"action"')
            p.advance()
            gname = p.expect("NAME", "a generator name")
            gen_names = group.generator_names()
            if gname.text not in gen_names:
                raise ParseError(gname.span,
                                 f"a generator of {group}"
                                 f" ({', '.join(gen_names) if gen_names else 'it has none'})",
                                 f'"{gname.text}"')
            if gname.text in actions:
                raise ParseError(t.span, "a single action per generator",
                                 f'a duplicate for {gname.text}')
            p.expect("=")
            actions[gname.text] = _parse_bracket_matrix(p, dim)
            spans[("action", gname.text)] = t.span
            p.end_line()
        else:
            raise ParseError(
                t.span,
                "a declaration keyword (dim, basis, unit, counit, mul, group, action)",
                f'"{kw}"')

    eof = p.peek()
    for req, val in (("dim", dim), ("basis", names), ("unit", unit), ("counit", counit)):
        if val is None:
            raise ParseError(eof.span, f'a "{req}" declaration', "end of input")
    if group is None:
        group = TRIVIAL
    for nm in group.generator_names():
        if nm not in actions:
            raise ParseError(spans.get("group", eof.span),
                             f'an "action {nm} = [...]" declaration', "none")

    structure = [[products.get((i, j), [ZERO] * dim) for j in range(dim)]
                 for i in range(dim)]
    algebra = FrobeniusAlgebra(names, structure, unit, counit)
    w = AFrobeniusAlgebra(algebra, group,
                          tuple(actions[nm] for nm in group.generator_names()))
    if validate:
        rep = check_frobenius(algebra)
        if not rep:
            where = spans["counit"] if rep.axiom == "nondegeneracy" else spans["dim"]
            raise ValidationError(f"frobenius: {rep}", where)
        rep = check_action(w)
        if not rep:
            where = next((spans[("action", nm)] for nm in group.generator_names()
                          if ("action", nm) in spans and nm in (rep.witness or "")),
                         spans.get("group", spans["dim"]))
            raise ValidationError(f"action: {rep}", where)
    return w


def _format_coeff_term(c: Scalar, name: str) -> str:
    if c.im:
        return f"({c}) {name}"
    if c == ONE:
        return name
    if c == -1:
        return f"-{name}"
    return f"{c} {name}"


def _format_lincomb(vec, names) -> str:
    parts = []
    for c, n in zip(vec, names):
        if not c:
            continue
        term = _format_coeff_term(c, n)
        if not parts:
            parts.append(term)
        elif term.startswith("-"):
            parts.append(f"- {term[1:]}")
        else:
            parts.append(f"+ {term}")
    return " ".join(parts) if parts else "0"


def format_algebra(w: AFrobeniusAlgebra) -> str:
    """Canonical file form; parse_algebra inverts this exactly."""
    v = w.algebra
    names = v.basis_names
    lines = [f"dim {v.dim}", "basis " + " ".join(names),
             f"unit {_format_lincomb(v.unit, names)}",
             f"counit {_format_lincomb(v.counit, names)}"]
    for i in range(v.dim):
        for j in range(v.dim):
            if any(v.structure[i][j]):
                lines.append(f"mul {names[i]} {names[j]} ="
                             f" {_format_lincomb(v.structure[i][j], names)}")
    lines.append(f"group {w.group}")
    for nm, mat in zip(w.group.generator_names(), w.generator_actions):
        lines.append(f"action {nm} = [{mat.to_text()}]")
    return "\n".join(lines) + "\n"
