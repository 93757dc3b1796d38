"""Line-oriented model files describing semigroups, cocycles, and lattices.

Grammar, one declaration per line ('#' starts a comment):

    semigroup NAME gens=[[1,0],[1,1],[1,2]]
    cocycle NAME dim=2 params=[q] bichar:q=[[0,1],[0,0]] quad:q=[[0,1/2],[1/2,0]] lin:q=[0,0]
    lattice NAME elements=[a,b,c,d] covers=[[a,b],[a,c],[b,d],[c,d]]
    bound 6

Numbers are integers or rationals p/q; names are [A-Za-z_][A-Za-z0-9_]*.
Keys may carry a parameter suffix (bichar:q).  Errors carry line and column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ModelParseError, QtoricError
from .lattice_algebras import DistLattice
from .scalars_cocycles import Cocycle
from .semigroups import AffineSemigroup

_PUNCT = "[],=:"


@dataclass(frozen=True)
class _Tok:
    kind: str        # "name" | "number" | "punct"
    text: str
    col: int
    value: object = None


def _tokenize(line: str, lineno: int) -> list[_Tok]:
    out = []
    i = 0
    n = len(line)
    while i < n:
        c = line[i]
        if c in " \t":
            i += 1
            continue
        if c == "#":
            break
        col = i + 1
        if c in _PUNCT:
            out.append(_Tok("punct", c, col))
            i += 1
            continue
        if c == "-" or c.isdigit():
            j = i + 1 if c == "-" else i
            if j >= n or not line[j].isdigit():
                raise ModelParseError("expected digits after '-'", lineno, col)
            k = j
            while k < n and line[k].isdigit():
                k += 1
            value: object = int(line[i:k])
            if k < n and line[k] == "/":
                start = k + 1
                k2 = start
                while k2 < n and line[k2].isdigit():
                    k2 += 1
                if k2 == start:
                    raise ModelParseError("expected digits after '/'", lineno, k + 1)
                den = int(line[start:k2])
                if den == 0:
                    raise ModelParseError("zero denominator", lineno, start)
                value = Fraction(int(line[i:k]), den)
                k = k2
            out.append(_Tok("number", line[i:k], col, value))
            i = k
            continue
        if c.isalpha() or c == "_":
            k = i
            while k < n and (line[k].isalnum() or line[k] == "_"):
                k += 1
            out.append(_Tok("name", line[i:k], col))
            i = k
            continue
        raise ModelParseError(f"unexpected character {c!r}", lineno, col)
    return out


class _Cursor:
    def __init__(self, toks: list[_Tok], lineno: int, end_col: int):
        self.toks = toks
        self.pos = 0
        self.lineno = lineno
        self.end_col = end_col

    def done(self) -> bool:
        return self.pos >= len(self.toks)

    def peek(self) -> _Tok | None:
        return None if self.done() else self.toks[self.pos]

    def fail(self, message: str):
        col = self.end_col if self.done() else self.toks[self.pos].col
        raise ModelParseError(message, self.lineno, col)

    def take(self, kind: str | None = None, text: str | None = None) -> _Tok:
        t = self.peek()
        if t is None:
            self.fail(f"expected {text or kind}, found end of line")
        if kind is not None and t.kind != kind:
            self.fail(f"expected {text or kind}, found {t.text!r}")
        if text is not None and t.text != text:
            self.fail(f"expected {text!r}, found {t.text!r}")
        self.pos += 1
        return t


def _parse_value(cur: _Cursor):
    t = cur.peek()
    if t is None:
        cur.fail("expected a value")
    if t.kind == "punct" and t.text == "[":
        cur.take()
        items = []
        nxt = cur.peek()
        if nxt is not None and nxt.kind == "punct" and nxt.text == "]":
            cur.take()
            return items
        while True:
            items.append(_parse_value(cur))
            sep = cur.take("punct")
            if sep.text == "]":
                return items
            if sep.text != ",":
                raise ModelParseError("expected ',' or ']'", cur.lineno, sep.col)
    if t.kind == "number":
        cur.take()
        return t.value
    if t.kind == "name":
        cur.take()
        return t.text
    cur.fail("expected a value")


@dataclass(frozen=True)
class _Field:
    value: object
    line: int
    col: int


def _parse_fields(cur: _Cursor) -> dict[tuple[str, str | None], _Field]:
    fields: dict[tuple[str, str | None], _Field] = {}
    while not cur.done():
        key_tok = cur.take("name")
        param = None
        nxt = cur.peek()
        if nxt is not None and nxt.kind == "punct" and nxt.text == ":":
            cur.take()
            param = cur.take("name").text
        cur.take("punct", "=")
        value = _parse_value(cur)
        key = (key_tok.text, param)
        if key in fields:
            raise ModelParseError(f"duplicate field {key_tok.text!r}",
                                  cur.lineno, key_tok.col)
        fields[key] = _Field(value, cur.lineno, key_tok.col)
    return fields


def _require(fields, key: str, lineno: int, param: str | None = None) -> _Field:
    f = fields.pop((key, param), None)
    if f is None:
        label = f"{key}:{param}" if param else key
        raise ModelParseError(f"missing required field {label!r}", lineno, 1)
    return f


def _reject_extras(fields, what: str):
    for (key, param), f in fields.items():
        label = f"{key}:{param}" if param else key
        raise ModelParseError(f"unknown field {label!r} for {what}", f.line, f.col)


def _int_list_list(f: _Field, what: str) -> list[list[int]]:
    v = f.value
    if not isinstance(v, list) or not v or not all(isinstance(r, list) for r in v):
        raise ModelParseError(f"{what} must be a nonempty list of vectors", f.line, f.col)
    out = []
    for row in v:
        if not all(isinstance(x, int) for x in row):
            raise ModelParseError(f"{what} entries must be integers", f.line, f.col)
        out.append(list(row))
    return out


def _number_list_list(f: _Field, what: str) -> list[list[Fraction]]:
    v = f.value
    if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
        raise ModelParseError(f"{what} must be a list of rows", f.line, f.col)
    out = []
    for row in v:
        if not all(isinstance(x, (int, Fraction)) for x in row):
            raise ModelParseError(f"{what} entries must be numbers", f.line, f.col)
        out.append([Fraction(x) for x in row])
    return out


def _number_list(f: _Field, what: str) -> list[Fraction]:
    v = f.value
    if not isinstance(v, list) or not all(isinstance(x, (int, Fraction)) for x in v):
        raise ModelParseError(f"{what} must be a list of numbers", f.line, f.col)
    return [Fraction(x) for x in v]


def _name_list(f: _Field, what: str) -> list[str]:
    v = f.value
    if not isinstance(v, list) or not v or not all(isinstance(x, str) for x in v):
        raise ModelParseError(f"{what} must be a nonempty list of names", f.line, f.col)
    return list(v)


@dataclass(frozen=True)
class ModelFile:
    """Parsed model: named objects plus an optional default degree bound."""

    semigroups: dict[str, AffineSemigroup]
    cocycles: dict[str, Cocycle]
    lattices: dict[str, DistLattice]
    bound: int | None

    def semigroup(self, name: str) -> AffineSemigroup:
        if name not in self.semigroups:
            raise KeyError(f"model defines no semigroup named {name!r}")
        return self.semigroups[name]

    def cocycle(self, name: str) -> Cocycle:
        if name not in self.cocycles:
            raise KeyError(f"model defines no cocycle named {name!r}")
        return self.cocycles[name]

    def lattice(self, name: str) -> DistLattice:
        if name not in self.lattices:
            raise KeyError(f"model defines no lattice named {name!r}")
        return self.lattices[name]


def _parse_semigroup(cur: _Cursor, lineno: int) -> AffineSemigroup:
    fields = _parse_fields(cur)
    gens = _require(fields, "gens", lineno)
    _reject_extras(fields, "semigroup")
    vectors = _int_list_list(gens, "gens")
    width = len(vectors[0])
    if any(len(v) != width for v in vectors):
        raise ModelParseError("generators must all have the same length",
                              gens.line, gens.col)
    try:
        return AffineSemigroup(vectors)
    except (QtoricError, ValueError) as exc:
        raise ModelParseError(str(exc), gens.line, gens.col) from exc


def _parse_cocycle(cur: _Cursor, lineno: int) -> Cocycle:
    fields = _parse_fields(cur)
    dim_f = _require(fields, "dim", lineno)
    if not isinstance(dim_f.value, int) or dim_f.value < 1:
        raise ModelParseError("dim must be a positive integer", dim_f.line, dim_f.col)
    dim = dim_f.value
    params_f = _require(fields, "params", lineno)
    params = _name_list(params_f, "params")
    if len(set(params)) != len(params):
        raise ModelParseError("duplicate parameter names", params_f.line, params_f.col)
    bichar = {}
    quad = {}
    lin = {}
    for (key, param), f in list(fields.items()):
        if key not in ("bichar", "quad", "lin"):
            continue
        if param is None:
            raise ModelParseError(f"{key} needs a parameter suffix, e.g. {key}:q",
                                  f.line, f.col)
        if param not in params:
            raise ModelParseError(f"{key} names unknown parameter {param!r}",
                                  f.line, f.col)
        del fields[(key, param)]
        if key == "bichar":
            rows = _int_list_list(f, "bichar")
        elif key == "quad":
            rows = _number_list_list(f, "quad")
        else:
            rows = _number_list(f, "lin")
        if key != "lin" and (len(rows) != dim or any(len(r) != dim for r in rows)):
            raise ModelParseError(f"{key} must be a {dim}x{dim} matrix", f.line, f.col)
        if key == "lin" and len(rows) != dim:
            raise ModelParseError(f"lin must have length {dim}", f.line, f.col)
        {"bichar": bichar, "quad": quad, "lin": lin}[key][param] = rows
    _reject_extras(fields, "cocycle")
    zero = [[0] * dim for _ in range(dim)]
    try:
        alpha = Cocycle(dim, tuple(params),
                        tuple(tuple(map(tuple, bichar.get(p, zero))) for p in params))
        if quad or lin:
            alpha = alpha.with_coboundary(quad or None, lin or None)
        return alpha
    except (QtoricError, ValueError, TypeError) as exc:
        raise ModelParseError(str(exc), lineno, 1) from exc


def _parse_lattice(cur: _Cursor, lineno: int) -> DistLattice:
    fields = _parse_fields(cur)
    elements_f = _require(fields, "elements", lineno)
    covers_f = _require(fields, "covers", lineno)
    _reject_extras(fields, "lattice")
    labels = _name_list(elements_f, "elements")
    if len(set(labels)) != len(labels):
        raise ModelParseError("duplicate element names", elements_f.line, elements_f.col)
    covers_v = covers_f.value
    if not isinstance(covers_v, list) or not all(
            isinstance(c, list) and len(c) == 2 and all(isinstance(x, str) for x in c)
            for c in covers_v):
        raise ModelParseError("covers must be a list of [lower, upper] name pairs",
                              covers_f.line, covers_f.col)
    try:
        return DistLattice.from_covers(labels, [tuple(c) for c in covers_v])
    except QtoricError as exc:
        raise ModelParseError(str(exc), lineno, 1) from exc


def parse_model(text: str) -> ModelFile:
    semigroups: dict[str, AffineSemigroup] = {}
    cocycles: dict[str, Cocycle] = {}
    lattices: dict[str, DistLattice] = {}
    bound: int | None = None
    taken: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokenize(line, lineno)
        if not toks:
            continue
        cur = _Cursor(toks, lineno, len(line) + 1)
        head = cur.take("name")
        if head.text == "bound":
            t = cur.take("number")
            if not isinstance(t.value, int) or t.value < 0:
                raise ModelParseError("bound must be a nonnegative integer",
                                      lineno, t.col)
            if not cur.done():
                cur.fail("unexpected trailing input after bound")
            bound = t.value
            continue
        if head.text not in ("semigroup", "cocycle", "lattice"):
            raise ModelParseError(
                f"unknown declaration {head.text!r} "
                "(expected semigroup, cocycle, lattice, or bound)",
                lineno, head.col)
        name_tok = cur.take("name")
        if name_tok.text in taken:
            raise ModelParseError(
                f"name {name_tok.text!r} already declared on line {taken[name_tok.text]}",
                lineno, name_tok.col)
        taken[name_tok.text] = lineno
        if head.text == "semigroup":
            semigroups[name_tok.text] = _parse_semigroup(cur, lineno)
        elif head.text == "cocycle":
            cocycles[name_tok.text] = _parse_cocycle(cur, lineno)
        else:
            lattices[name_tok.text] = _parse_lattice(cur, lineno)
    return ModelFile(semigroups, cocycles, lattices, bound)


def load_model(path: str) -> ModelFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_model(fh.read())
    except OSError as exc:
        raise ModelParseError(f"cannot read model file: {exc}", 0, 0) from exc
