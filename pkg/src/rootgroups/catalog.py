"""Named small groups as permutation groups with fixed generators.

Entry names (dihedral groups are named by their total order)::

    trivial  cyclic(n)  dihedral(2n)  quaternion8  elementary_abelian(p,k)
    heisenberg(p)  symmetric(n)  alternating(n)

Short aliases: ``Cn``, ``Dn`` (order n), ``Sn``, ``An``, ``Q8``, ``V4``, ``Heis(p)``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import factorial

from .core import FiniteGroup, PermContext, generate, perm_from_cycles, perm_identity
from .errors import UnknownEntry


def cyclic(n: int) -> FiniteGroup:
    """Generated by the n-cycle ``(0 1 ... n-1)``."""
    ctx = PermContext(n)
    return generate(ctx, [perm_from_cycles(n, [list(range(n))]) if n > 1 else ctx.identity])


def dihedral(order: int) -> FiniteGroup:
    """Symmetries of the regular ``order/2``-gon: rotation ``i -> i+1`` and reflection ``i -> -i``.

    ``dihedral(4)`` is the Klein four group on 4 points and ``dihedral(2)`` is ``C2``.
    """
    if order < 2 or order % 2:
        raise UnknownEntry(f"dihedral order must be even and positive, got {order}")
    n = order // 2
    if n == 1:
        return cyclic(2)
    if n == 2:
        return elementary_abelian(2, 2)
    ctx = PermContext(n)
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return generate(ctx, [rot, ref])


def _regular(elements: list, mul) -> tuple[PermContext, dict]:
    # right regular representation: g -> (x -> x g)
    idx = {e: i for i, e in enumerate(elements)}
    ctx = PermContext(len(elements))
    return ctx, {g: tuple(idx[mul(x, g)] for x in elements) for g in elements}


def _quat_mul(a, b):
    # quaternion units as (sign, letter) with letters 1, i, j, k
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    s, letter = table[(a[1], b[1])]
    return (a[0] * b[0] * s, letter)


def quaternion8() -> FiniteGroup:
    """Right regular representation of Q8 on 8 points, generated by ``i`` and ``j``."""
    elements = [(s, l) for s in (1, -1) for l in "1ijk"]
    ctx, reg = _regular(elements, _quat_mul)
    return generate(ctx, [reg[(1, "i")], reg[(1, "j")]])


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    """``k`` disjoint p-cycles on ``p*k`` points."""
    if k == 0:
        return trivial()
    ctx = PermContext(p * k)
    gens = [perm_from_cycles(p * k, [list(range(i * p, (i + 1) * p))]) for i in range(k)]
    return generate(ctx, gens)


def heisenberg(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over F_p in the right regular representation.

    The matrix with entries ``(a, b, c)`` above the diagonal is stored as the
    triple ``(a, b, c)``; generators are ``(1, 0, 0)`` and ``(0, 0, 1)`` in
    positions (1,2) and (2,3).
    """
    elements = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

    def mul(x, y):
        # [[1,a,b],[0,1,c],[0,0,1]] products
        return ((x[0] + y[0]) % p, (x[1] + y[1] + x[0] * y[2]) % p, (x[2] + y[2]) % p)

    ctx, reg = _regular(elements, mul)
    return generate(ctx, [reg[(1, 0, 0)], reg[(0, 0, 1)]])


def symmetric(n: int) -> FiniteGroup:
    """Generated by ``(0 1)`` and ``(0 1 ... n-1)``."""
    if n <= 1:
        return trivial()
    ctx = PermContext(n)
    return generate(ctx, [perm_from_cycles(n, [(0, 1)]), perm_from_cycles(n, [list(range(n))])])


def alternating(n: int) -> FiniteGroup:
    """Generated by the 3-cycles ``(0 1 k)`` for ``k = 2..n-1``."""
    if n <= 2:
        return trivial(max(n, 1))
    ctx = PermContext(n)
    return generate(ctx, [perm_from_cycles(n, [(0, 1, k)]) for k in range(2, n)])


def trivial(degree: int = 1) -> FiniteGroup:
    ctx = PermContext(degree)
    return generate(ctx, [perm_identity(degree)], 1)


TEXTBOOK_ORDERS = {
    "cyclic": lambda n: n,
    "dihedral": lambda n: n,
    "quaternion8": lambda: 8,
    "elementary_abelian": lambda p, k: p**k,
    "heisenberg": lambda p: p**3,
    "symmetric": factorial,
    "alternating": lambda n: max(factorial(n) // 2, 1),
    "trivial": lambda: 1,
}

_BUILDERS = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "quaternion8": quaternion8,
    "elementary_abelian": elementary_abelian,
    "heisenberg": heisenberg,
    "symmetric": symmetric,
    "alternating": alternating,
    "trivial": trivial,
}

_ALIASES = [
    (re.compile(r"^C(\d+)$"), "cyclic"),
    (re.compile(r"^D(\d+)$"), "dihedral"),
    (re.compile(r"^S(\d+)$"), "symmetric"),
    (re.compile(r"^A(\d+)$"), "alternating"),
    (re.compile(r"^Heis\((\d+)\)$"), "heisenberg"),
]


def parse_name(name: str) -> tuple[str, tuple[int, ...]]:
    """Split a catalog name into constructor and integer parameters."""
    name = name.strip()
    if name == "Q8":
        return "quaternion8", ()
    if name == "V4":
        return "elementary_abelian", (2, 2)
    for rx, kind in _ALIASES:
        m = rx.match(name)
        if m:
            return kind, (int(m.group(1)),)
    m = re.match(r"^([a-z_0-9]+?)(?:\(([\d,\s]*)\))?$", name)
    if not m or m.group(1) not in _BUILDERS:
        raise UnknownEntry(f"unknown catalog entry {name!r}")
    kind = m.group(1)
    args = tuple(int(a) for a in m.group(2).split(",") if a.strip()) if m.group(2) else ()
    return kind, args


def canonical_name(name: str) -> str:
    kind, args = parse_name(name)
    return kind + (f"({','.join(map(str, args))})" if args else "")


@lru_cache(maxsize=None)
def catalog_get(name: str) -> FiniteGroup:
    kind, args = parse_name(name)
    try:
        G = _BUILDERS[kind](*args)
    except TypeError as exc:
        raise UnknownEntry(f"bad parameters for {kind}: {args}") from exc
    if G.order != TEXTBOOK_ORDERS[kind](*args):
        raise AssertionError(f"{name} built with order {G.order}")
    return G


DEFAULT_CATALOG = (
    "trivial",
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(4)",
    "cyclic(5)",
    "cyclic(6)",
    "elementary_abelian(2,2)",
    "symmetric(3)",
    "alternating(3)",
    "dihedral(8)",
    "quaternion8",
)
