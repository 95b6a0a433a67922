"""Readers for ``.grp`` / ``.ext`` files and the report emitter.

``.grp``::

    group NAME
    oracle free|dehn|abelian|none
    gen a b c
    rel WORD            # or: rel LHS = RHS, meaning LHS RHS^-1

``.ext``::

    name G
    kernel { ...grp statements... }
    quotient { ...grp statements...  adjusted m=4 }
    mono GEN { k -> WORD ; ... inverse { k -> WORD ; ... } }
    tail INDEX WORD
    surface genusF=2 genusB=2

Statements end at a newline or ``;``.  Kernel generators left out of a
``mono`` block (or its ``inverse`` block) are fixed.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Optional

from grouptool.errors import GroupToolError, InvalidExtension, ParseError
from grouptool.extensions import ExtensionData, from_unadjusted, validate_extension
from grouptool.oracles import ORACLE_TAGS
from grouptool.presentations import AdjustedPresentation, Presentation, adjusted_violations
from grouptool.words import Hom, Word, parse_syllables

_TOKEN_RE = re.compile(r"->|[{};=]|[^\s{};=]+|\n")


class _Tok:
    __slots__ = ("text", "line", "col")

    def __init__(self, text, line, col):
        self.text, self.line, self.col = text, line, col

    def __repr__(self):
        return f"{self.text!r}@{self.line}:{self.col}"


def _tokenize(text: str) -> list:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        for m in _TOKEN_RE.finditer(body):
            out.append(_Tok(m.group(0), lineno, m.start() + 1))
        out.append(_Tok("\n", lineno, len(body) + 1))
    return out


class _Stream:
    def __init__(self, tokens, source):
        self.toks = tokens
        self.i = 0
        self.source = source

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        if tok is None:
            return ParseError(msg, source=self.source)
        return ParseError(msg, tok.line, tok.col, self.source)

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input", self.toks[-1] if self.toks else None)
        self.i += 1
        return tok

    def expect(self, text) -> _Tok:
        tok = self.next()
        if tok.text != text:
            raise self.error(f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def skip_separators(self):
        while self.peek() is not None and self.peek().text in ("\n", ";"):
            self.i += 1

    def statement(self) -> list:
        """Tokens up to the next separator or brace (not consumed)."""
        out = []
        while self.peek() is not None and self.peek().text not in ("\n", ";", "{", "}"):
            out.append(self.next())
        return out


def _word(tokens, alphabet, source) -> Word:
    raw = []
    for tok in tokens:
        try:
            raw.extend(parse_syllables(tok.text, alphabet, line=tok.line, column_offset=tok.col - 1))
        except ParseError as exc:
            raise ParseError(str(exc).split(": ", 1)[-1].strip(), tok.line, exc.column or tok.col,
                             source) from None
    return Word(tuple(raw))


class _GroupBuilder:
    def __init__(self, source, allow_adjusted=False, default_name="P"):
        self.source = source
        self.name = default_name
        self.oracle = "none"
        self.gens = None
        self.rels = []
        self.allow_adjusted = allow_adjusted
        self.adjusted_m = None
        self.first_tok = None

    def feed(self, stmt):
        if not stmt:
            return
        head = stmt[0]
        self.first_tok = self.first_tok or head
        key, args = head.text, stmt[1:]
        err = lambda msg, tok=head: ParseError(msg, tok.line, tok.col, self.source)
        if key == "group":
            if len(args) != 1:
                raise err("'group' takes one name")
            self.name = args[0].text
        elif key == "oracle":
            if len(args) != 1 or args[0].text not in ORACLE_TAGS:
                raise err(f"'oracle' takes one of {', '.join(ORACLE_TAGS)}", args[0] if args else head)
            self.oracle = args[0].text
        elif key == "gen":
            if self.gens is not None:
                raise err("duplicate 'gen' line")
            names = []
            for tok in args:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok.text):
                    raise err(f"bad generator symbol {tok.text!r}", tok)
                if tok.text in names:
                    raise err(f"duplicate generator {tok.text!r}", tok)
                names.append(tok.text)
            if not names:
                raise err("a presentation needs at least one generator")
            self.gens = tuple(names)
        elif key == "rel":
            if self.gens is None:
                raise err("'rel' before 'gen'")
            eq = [i for i, t in enumerate(args) if t.text == "="]
            if len(eq) > 1:
                raise err("more than one '=' in relator", args[eq[1]])
            if eq:
                lhs = _word(args[:eq[0]], self.gens, self.source)
                rhs = _word(args[eq[0] + 1:], self.gens, self.source)
                w = lhs * rhs.inverse()
            else:
                w = _word(args, self.gens, self.source)
            if not w:
                raise err("relator reduces to the empty word")
            self.rels.append(w)
        elif key == "adjusted" and self.allow_adjusted:
            if len(args) != 3 or args[0].text != "m" or args[1].text != "=" \
                    or not args[2].text.isdigit():
                raise err("expected 'adjusted m=<int>'")
            self.adjusted_m = int(args[2].text)
        else:
            raise err(f"unknown directive {key!r}")

    def build(self) -> Presentation:
        if self.gens is None:
            raise ParseError("missing 'gen' line", source=self.source)
        try:
            return Presentation(self.name, self.gens, tuple(self.rels), self.oracle)
        except GroupToolError as exc:
            tok = self.first_tok
            raise ParseError(str(exc), tok.line if tok else None, None, self.source) from None


def parse_group_file(text: str, source: Optional[str] = None) -> Presentation:
    st = _Stream(_tokenize(text), source)
    g = _GroupBuilder(source)
    while st.peek() is not None:
        st.skip_separators()
        if st.peek() is None:
            break
        stmt = st.statement()
        if not stmt:
            raise st.error(f"unexpected {st.peek().text!r}")
        g.feed(stmt)
    return g.build()


def _block(st: _Stream, builder: _GroupBuilder):
    st.expect("{")
    while True:
        st.skip_separators()
        tok = st.peek()
        if tok is None:
            raise st.error("unterminated block", st.toks[-1])
        if tok.text == "}":
            st.next()
            return
        stmt = st.statement()
        if not stmt:
            raise st.error(f"unexpected {tok.text!r}")
        builder.feed(stmt)


def _map_entries(st: _Stream, kgens, source, allow_inverse):
    """Entries ``k -> WORD`` inside braces; returns (dict, inverse dict or None)."""
    st.expect("{")
    out, inv = {}, None
    while True:
        st.skip_separators()
        tok = st.peek()
        if tok is None:
            raise st.error("unterminated block", st.toks[-1])
        if tok.text == "}":
            st.next()
            return out, inv
        if tok.text == "inverse" and allow_inverse:
            st.next()
            if inv is not None:
                raise st.error("duplicate 'inverse' block", tok)
            inv, _ = _map_entries(st, kgens, source, False)
            continue
        stmt = st.statement()
        if len(stmt) < 2 or stmt[1].text != "->":
            raise st.error("expected 'GEN -> WORD'", stmt[0] if stmt else tok)
        k = stmt[0].text
        if k not in kgens:
            raise st.error(f"{k!r} is not a kernel generator", stmt[0])
        if k in out:
            raise st.error(f"duplicate image for {k!r}", stmt[0])
        out[k] = _word(stmt[2:], kgens, source)


def parse_extension_file(text: str, source: Optional[str] = None,
                         validate: bool = True) -> ExtensionData:
    """Parse and, unless ``validate`` is false, check the extension relations."""
    E = _parse_extension(text, source)
    if validate:
        bad = validate_extension(E)
        if bad:
            raise InvalidExtension(f"{source or 'extension'}: " + "; ".join(bad))
    return E


def _parse_extension(text: str, source: Optional[str]) -> ExtensionData:
    st = _Stream(_tokenize(text), source)
    kernel = quotient = None
    qbuilder = None
    monos: dict = {}
    tails: dict = {}
    surface = None
    name = "G"
    pending = []  # mono blocks seen before the kernel
    while True:
        st.skip_separators()
        tok = st.peek()
        if tok is None:
            break
        key = st.next()
        if key.text == "kernel":
            if kernel is not None:
                raise st.error("duplicate kernel block", key)
            b = _GroupBuilder(source, default_name="K")
            _block(st, b)
            kernel = b.build()
        elif key.text == "quotient":
            if quotient is not None:
                raise st.error("duplicate quotient block", key)
            qbuilder = _GroupBuilder(source, allow_adjusted=True, default_name="Gamma")
            _block(st, qbuilder)
            quotient = qbuilder.build()
        elif key.text == "mono":
            if kernel is None or quotient is None:
                raise st.error("'mono' must follow the kernel and quotient blocks", key)
            gen = st.next()
            if gen.text not in quotient.generators:
                raise st.error(f"{gen.text!r} is not a quotient generator", gen)
            if gen.text in monos:
                raise st.error(f"duplicate mono block for {gen.text!r}", gen)
            fwd, inv = _map_entries(st, kernel.generators, source, True)
            if inv is None:
                raise st.error(f"mono block for {gen.text!r} has no 'inverse' block", gen)
            full = {k: fwd.get(k, Word.gen(k)) for k in kernel.generators}
            full_inv = {k: inv.get(k, Word.gen(k)) for k in kernel.generators}
            monos[gen.text] = (Hom.from_dict(kernel.generators, kernel.generators, full, full_inv), gen)
        elif key.text == "tail":
            if kernel is None or quotient is None:
                raise st.error("'tail' must follow the kernel and quotient blocks", key)
            stmt = st.statement()
            if not stmt or not re.fullmatch(r"[+-]?\d+", stmt[0].text):
                raise st.error("expected 'tail INDEX WORD'", stmt[0] if stmt else key)
            idx = int(stmt[0].text)
            if not 1 <= idx <= len(quotient.relators):
                raise st.error(f"tail index {idx} out of range 1..{len(quotient.relators)}", stmt[0])
            if idx in tails:
                raise st.error(f"duplicate tail {idx}", stmt[0])
            tails[idx] = _word(stmt[1:], kernel.generators, source)
        elif key.text == "surface":
            stmt = st.statement()
            vals = {}
            j = 0
            while j < len(stmt):
                if j + 2 >= len(stmt) or stmt[j + 1].text != "=" or not stmt[j + 2].text.isdigit():
                    raise st.error("expected 'surface genusF=<int> genusB=<int>'", stmt[j])
                vals[stmt[j].text] = int(stmt[j + 2].text)
                j += 3
            if set(vals) != {"genusF", "genusB"}:
                raise st.error("surface needs genusF and genusB", key)
            surface = (vals["genusF"], vals["genusB"])
        elif key.text == "name":
            stmt = st.statement()
            if len(stmt) != 1:
                raise st.error("'name' takes one word", key)
            name = stmt[0].text
        else:
            raise st.error(f"unknown section {key.text!r}", key)
    if kernel is None or quotient is None:
        raise ParseError("extension needs kernel and quotient blocks", source=source)
    missing = [x for x in quotient.generators if x not in monos]
    if missing:
        raise ParseError(f"no mono block for quotient generator(s) {', '.join(missing)}",
                         source=source)
    missing = [str(j) for j in range(1, len(quotient.relators) + 1) if j not in tails]
    if missing:
        raise ParseError(f"no tail for quotient relator(s) {', '.join(missing)}", source=source)
    mono = {x: monos[x][0] for x in quotient.generators}
    tail_list = [tails[j] for j in range(1, len(quotient.relators) + 1)]
    m = qbuilder.adjusted_m
    try:
        if m is not None:
            bad = adjusted_violations(quotient, m)
            if bad:
                raise ParseError(f"quotient declared adjusted but {bad[0]}", source=source)
            return ExtensionData(kernel, AdjustedPresentation.trivial(quotient, m),
                                 tuple(mono[x] for x in quotient.generators), tuple(tail_list),
                                 surface, name)
        return from_unadjusted(kernel, quotient, mono, tail_list, surface, name)
    except InvalidExtension as exc:
        raise ParseError(str(exc), source=source) from None


def format_group(P: Presentation) -> str:
    lines = [f"group {P.name}", f"oracle {P.oracle}", "gen " + " ".join(P.generators)]
    lines += [f"rel {r}" for r in P.relators]
    return "\n".join(lines) + "\n"


def _hom_block(f: Hom) -> list:
    return [f"  {k} -> {w}" for k, w in zip(f.source, f.images)]


def format_extension(E: ExtensionData) -> str:
    Q = E.quotient.base
    out = [f"name {E.name}", "kernel {"]
    out += ["  " + l for l in format_group(E.kernel).splitlines()]
    out += ["}", "quotient {"]
    out += ["  " + l for l in format_group(Q).splitlines()]
    out += [f"  adjusted m={E.quotient.m}", "}"]
    for x, f in zip(Q.generators, E.monodromy):
        out.append(f"mono {x} {{")
        out += _hom_block(f)
        out.append("  inverse {")
        out += ["  " + l for l in _hom_block(f.inverse())]
        out += ["  }", "}"]
    for j, w in enumerate(E.tails, 1):
        out.append(f"tail {j} {w}")
    if E.surface:
        out.append(f"surface genusF={E.surface[0]} genusB={E.surface[1]}")
    return "\n".join(out) + "\n"


# report emission ------------------------------------------------------------

SAFE_INT = 2 ** 53


def to_json_value(x):
    """Exact data as JSON: big integers and rationals become strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= SAFE_INT else x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return to_json_value(int(x))
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): to_json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json_value(v) for v in x]
    if hasattr(x, "as_dict"):
        return to_json_value(x.as_dict())
    return str(x)


def _text_lines(x, indent=0) -> list:
    pad = "  " * indent
    if isinstance(x, dict):
        out = []
        for k, v in x.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out += _text_lines(v, indent + 1)
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
        return out
    if isinstance(x, list):
        out = []
        for v in x:
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}-")
                out += _text_lines(v, indent + 1)
            else:
                out.append(f"{pad}- {_scalar(v)}")
        return out
    return [pad + _scalar(x)]


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def emit_report(command: str, input_desc, result, certificates=None, provenance=None,
                fmt: str = "text") -> str:
    doc = {
        "command": command,
        "input": input_desc,
        "result": result,
        "certificates": certificates or [],
        "provenance": provenance or {},
    }
    doc = to_json_value(doc)
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"{command}: {doc['input']}"]
    lines += _text_lines(doc["result"], 1)
    if doc["certificates"]:
        lines.append("certificates:")
        lines += _text_lines(doc["certificates"], 1)
    if doc["provenance"]:
        lines.append("provenance:")
        lines += _text_lines(doc["provenance"], 1)
    return "\n".join(lines) + "\n"
