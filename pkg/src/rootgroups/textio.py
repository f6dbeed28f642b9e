"""Line-oriented text format for groups, homomorphisms, amalgams, series and certificates.

Every record starts with ``<kind> v1``.  Nested records are indented by two
spaces.  Permutations are written as dot-separated images (``1.0.2``);
wreath elements as ``top|b0,b1,...`` where ``top`` indexes the enumerated
``Y`` and each ``bi`` indexes the enumerated ``X``.  A permutation group::

    group v1
    degree 2
    gen 1.0

A group inside a wreath context replaces ``degree`` by ``wreath`` followed by
the nested ``X`` and ``Y`` group records.  Writing is canonical, so
``serialize(deserialize(text)) == text`` for any text that ``serialize``
produced.
"""

from __future__ import annotations

from .amalgam import Amalgam, AmalgamHom, Certificate
from .constructions import WreathContext, wreath_context
from .core import FiniteGroup, GroupHom, MulContext, PermContext, generate
from .errors import GroupError, ParseError
from .series import SeriesPair

VERSION = "v1"
IND = "  "


# WRITING
# -------


def _indent(lines: list[str], depth: int = 1) -> list[str]:
    return [IND * depth + ln for ln in lines]


def _context_lines(ctx: MulContext) -> list[str]:
    if isinstance(ctx, PermContext):
        return [f"degree {ctx.degree}"]
    if isinstance(ctx, WreathContext):
        return ["wreath", *_indent(_group_lines(ctx.X)), *_indent(_group_lines(ctx.Y))]
    raise TypeError(f"cannot serialize context {ctx!r}")


def _group_lines(G: FiniteGroup) -> list[str]:
    fmt = G.ctx.format_element
    return [f"group {VERSION}", *_context_lines(G.ctx), *(f"gen {fmt(g)}" for g in G.gens)]


def _hom_lines(h: GroupHom) -> list[str]:
    sf, tf = h.source.ctx.format_element, h.target.format_element
    return [
        f"hom {VERSION}",
        "source",
        *_indent(_group_lines(h.source)),
        "target",
        *_indent(_context_lines(h.target)),
        *(f"map {sf(g)} {tf(h.mapping[g])}" for g in h.source.elements),
    ]


def _amalgam_lines(am: Amalgam) -> list[str]:
    lines = [f"amalgam {VERSION}"]
    for label, G in (("A", am.A), ("B", am.B), ("H", am.H), ("K", am.K)):
        lines += [label, *_indent(_group_lines(G))]
    af, bf = am.A.ctx.format_element, am.B.ctx.format_element
    lines += [f"phi {af(h)} {bf(am.phi[h])}" for h in am.H.elements]
    return lines


def _series_lines(pair: SeriesPair) -> list[str]:
    lines = [f"series {VERSION}", "A"]
    for T in pair.series_a:
        lines += _indent(_group_lines(T))
    lines.append("B")
    for T in pair.series_b:
        lines += _indent(_group_lines(T))
    return lines


def _amalgam_hom_lines(h: AmalgamHom) -> list[str]:
    am = h.amalgam
    af, bf, tf = am.A.ctx.format_element, am.B.ctx.format_element, h.target.format_element
    return [
        f"amalgam-hom {VERSION}",
        "amalgam",
        *_indent(_amalgam_lines(am)),
        "target",
        *_indent(_context_lines(h.target)),
        *(f"alpha {af(a)} {tf(h.alpha.mapping[a])}" for a in am.A.elements),
        *(f"beta {bf(b)} {tf(h.beta.mapping[b])}" for b in am.B.elements),
    ]


_CERT_FIELDS = [
    ("class", "class_name", "str"),
    ("homs_verified", "homs_verified", "bool"),
    ("injective_on_A", "injective_on_A", "bool"),
    ("injective_on_B", "injective_on_B", "bool"),
    ("h_agreement", "h_agreement", "bool"),
    ("image_order", "image_order", "int"),
    ("derived_length", "derived_length", "int"),
    ("solvable", "solvable", "bool"),
    ("class_member", "class_member", "bool"),
    ("order_bound", "order_bound", "int"),
    ("derived_length_bound", "derived_length_bound", "int"),
    ("class_member_by_bound", "class_member_by_bound", "bool"),
]


def _fmt_value(v) -> str:
    if v is None:
        return "unknown"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _certificate_lines(c: Certificate) -> list[str]:
    lines = [f"certificate {VERSION}"]
    lines += [f"{key} {_fmt_value(getattr(c, attr))}" for key, attr, _ in _CERT_FIELDS]
    lines += [f"trace {t}" for t in c.trace]
    return lines


def serialize(obj) -> str:
    if isinstance(obj, FiniteGroup):
        lines = _group_lines(obj)
    elif isinstance(obj, GroupHom):
        lines = _hom_lines(obj)
    elif isinstance(obj, Amalgam):
        lines = _amalgam_lines(obj)
    elif isinstance(obj, SeriesPair):
        lines = _series_lines(obj)
    elif isinstance(obj, AmalgamHom):
        lines = _amalgam_hom_lines(obj)
    elif isinstance(obj, Certificate):
        lines = _certificate_lines(obj)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


# READING
# -------


class _Reader:
    def __init__(self, text: str):
        if text and not text.endswith("\n"):
            raise ParseError("missing final newline", text.count("\n") + 1)
        self.lines = text.split("\n")[:-1] if text else []
        self.pos = 0

    def error(self, msg: str, column: int = 1, line: int | None = None) -> ParseError:
        return ParseError(msg, (self.pos if line is None else line) + 1, column)

    def peek(self, depth: int) -> str | None:
        """Content of the next line if it sits exactly at ``depth``."""
        if self.pos >= len(self.lines):
            return None
        ln = self.lines[self.pos]
        pre = IND * depth
        if ln.startswith(pre) and not ln[len(pre) :].startswith(" "):
            return ln[len(pre) :]
        return None

    def take(self, depth: int, expect: str | None = None) -> str:
        if self.pos >= len(self.lines):
            raise self.error(f"unexpected end of input (wanted {expect or 'a line'})")
        s = self.peek(depth)
        if s is None:
            raise self.error(f"wrong indentation (wanted depth {depth})")
        if expect is not None and not (s == expect or s.startswith(expect + " ")):
            raise self.error(f"expected {expect!r}, got {s!r}", len(IND * depth) + 1)
        self.pos += 1
        return s

    def value(self, depth: int, key: str) -> str:
        s = self.take(depth, key)
        if not s.startswith(key + " "):
            raise self.error(f"{key} needs a value", line=self.pos - 1)
        return s[len(key) + 1 :]

    def parse_elem(self, ctx: MulContext, text: str, depth: int, col_offset: int):
        try:
            return ctx.parse_element(text)
        except ValueError as exc:
            raise ParseError(str(exc), self.pos, len(IND * depth) + col_offset + 1) from None

    def done(self) -> None:
        if self.pos != len(self.lines):
            raise self.error("trailing content")


def _read_context(r: _Reader, d: int) -> MulContext:
    s = r.take(d)
    if s.startswith("degree "):
        try:
            return PermContext(int(s[7:]))
        except ValueError:
            raise r.error("bad degree", len(IND * d) + 8, r.pos - 1) from None
    if s == "wreath":
        X = _read_group(r, d + 1)
        Y = _read_group(r, d + 1)
        return wreath_context(X, Y)
    raise r.error(f"expected 'degree' or 'wreath', got {s!r}", len(IND * d) + 1, r.pos - 1)


def _read_group(r: _Reader, d: int) -> FiniteGroup:
    r.take(d, f"group {VERSION}")
    ctx = _read_context(r, d)
    gens = []
    while (s := r.peek(d)) is not None and s.startswith("gen "):
        r.pos += 1
        gens.append(r.parse_elem(ctx, s[4:], d, 4))
    if not gens:
        raise r.error("group has no generators")
    return generate(ctx, gens)


def _read_pairs(r: _Reader, d: int, key: str, sctx: MulContext, tctx: MulContext) -> dict:
    out = {}
    while (s := r.peek(d)) is not None and s.startswith(key + " "):
        r.pos += 1
        parts = s.split(" ")
        if len(parts) != 3:
            raise ParseError(f"{key} line needs two keys", r.pos, 1)
        a = r.parse_elem(sctx, parts[1], d, len(key) + 1)
        b = r.parse_elem(tctx, parts[2], d, len(key) + 2 + len(parts[1]))
        out[a] = b
    return out


def _read_hom(r: _Reader, d: int) -> GroupHom:
    r.take(d, f"hom {VERSION}")
    r.take(d, "source")
    src = _read_group(r, d + 1)
    r.take(d, "target")
    tgt = _read_context(r, d + 1)
    m = _read_pairs(r, d, "map", src.ctx, tgt)
    if set(m) != set(src.elements):
        raise r.error("map is not total on the source")
    return GroupHom(src, tgt, {g: m[g] for g in src.elements})


def _read_amalgam(r: _Reader, d: int) -> Amalgam:
    r.take(d, f"amalgam {VERSION}")
    groups = {}
    for label in "ABHK":
        r.take(d, label)
        groups[label] = _read_group(r, d + 1)
    phi = _read_pairs(r, d, "phi", groups["A"].ctx, groups["B"].ctx)
    try:
        return Amalgam(groups["A"], groups["B"], groups["H"], groups["K"], phi)
    except GroupError as exc:
        raise r.error(f"invalid amalgam: {exc}") from None


def _read_series(r: _Reader, d: int) -> SeriesPair:
    r.take(d, f"series {VERSION}")
    chains = []
    for label in "AB":
        r.take(d, label)
        chain = []
        while r.peek(d + 1) == f"group {VERSION}":
            chain.append(_read_group(r, d + 1))
        chains.append(chain)
    return SeriesPair(chains[0], chains[1])


def _read_amalgam_hom(r: _Reader, d: int) -> AmalgamHom:
    r.take(d, f"amalgam-hom {VERSION}")
    r.take(d, "amalgam")
    am = _read_amalgam(r, d + 1)
    r.take(d, "target")
    tgt = _read_context(r, d + 1)
    alpha = _read_pairs(r, d, "alpha", am.A.ctx, tgt)
    beta = _read_pairs(r, d, "beta", am.B.ctx, tgt)
    if set(alpha) != set(am.A.elements) or set(beta) != set(am.B.elements):
        raise r.error("alpha and beta must be total")
    return AmalgamHom(
        am,
        tgt,
        GroupHom(am.A, tgt, {a: alpha[a] for a in am.A.elements}),
        GroupHom(am.B, tgt, {b: beta[b] for b in am.B.elements}),
    )


def _parse_value(r: _Reader, raw: str, kind: str):
    if raw == "unknown" and kind != "str":
        return None
    if kind == "bool":
        if raw not in ("true", "false"):
            raise r.error(f"bad boolean {raw!r}", line=r.pos - 1)
        return raw == "true"
    if kind == "int":
        try:
            return int(raw)
        except ValueError:
            raise r.error(f"bad integer {raw!r}", line=r.pos - 1) from None
    return raw


def _read_certificate(r: _Reader, d: int) -> Certificate:
    r.take(d, f"certificate {VERSION}")
    vals = {}
    for key, attr, kind in _CERT_FIELDS:
        vals[attr] = _parse_value(r, r.value(d, key), kind)
    trace = []
    while (s := r.peek(d)) is not None and s.startswith("trace "):
        r.pos += 1
        trace.append(s[6:])
    return Certificate(trace=trace, **vals)


_READERS = {
    "group": _read_group,
    "hom": _read_hom,
    "amalgam": _read_amalgam,
    "series": _read_series,
    "amalgam-hom": _read_amalgam_hom,
    "certificate": _read_certificate,
}


def deserialize(text: str):
    r = _Reader(text)
    head = r.peek(0)
    if head is None:
        raise r.error("empty input")
    kind, _, version = head.partition(" ")
    if kind not in _READERS:
        raise r.error(f"unknown record kind {kind!r}")
    if version != VERSION:
        raise r.error(f"unsupported version {version!r}", len(kind) + 2)
    obj = _READERS[kind](r, 0)
    r.done()
    return obj
