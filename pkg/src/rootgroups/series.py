"""Commutators, central/derived series, class predicates and series compatibility."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .constructions import normal_closure
from .core import DEFAULT_CAP, FiniteGroup, generate, intersection, is_normal, subgroup_generated
from .errors import NotCentralSeries, NotSubgroup


def center(G: FiniteGroup) -> FiniteGroup:
    mul = G.ctx.mul
    elems = [z for z in G.elements if all(mul(z, g) == mul(g, z) for g in G.gens)]
    return subgroup_generated(G, elems, len(elems))


def commutator(ctx, u, v):
    """``u^-1 v^-1 u v``."""
    return ctx.mul(ctx.mul(ctx.inv(u), ctx.inv(v)), ctx.mul(u, v))


def commutator_subgroup(G: FiniteGroup, U: FiniteGroup, V: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """``[U, V]``: the normal closure in ``<U, V>`` of the commutators of generators.

    This equals the subgroup generated by all commutators ``[u, v]``.
    """
    if not (U.is_subgroup_of(G) and V.is_subgroup_of(G)):
        raise NotSubgroup("U and V must be subgroups of G")
    ctx = G.ctx
    if all(v in U for v in V.gens):
        UV = U
    elif all(u in V for u in U.gens):
        UV = V
    else:
        UV = generate(ctx, list(U.gens) + list(V.gens), cap)
    comms = [commutator(ctx, u, v) for u in U.gens for v in V.gens]
    return normal_closure(UV, comms, cap)


@dataclass
class Chain:
    """A descending series of subgroups with the index at which it stabilized."""

    terms: list[FiniteGroup]
    stabilized_at: int

    @property
    def orders(self) -> list[int]:
        return [T.order for T in self.terms]

    @property
    def last(self) -> FiniteGroup:
        return self.terms[-1]


def lower_central_series(G: FiniteGroup, cap: int = DEFAULT_CAP) -> Chain:
    """``gamma_1 = G``, ``gamma_{i+1} = [G, gamma_i]`` until two consecutive terms agree."""
    terms = [G]
    while True:
        nxt = commutator_subgroup(G, G, terms[-1], cap)
        if nxt.order == terms[-1].order:
            return Chain(terms, len(terms) - 1)
        terms.append(nxt)


def derived_series(G: FiniteGroup, cap: int = DEFAULT_CAP) -> Chain:
    terms = [G]
    while True:
        D = terms[-1]
        nxt = commutator_subgroup(D, D, D, cap)
        if nxt.order == D.order:
            return Chain(terms, len(terms) - 1)
        terms.append(nxt)


def is_nilpotent(G: FiniteGroup) -> tuple[bool, int | None]:
    """Nilpotency and class (number of steps for the lower central series to reach 1)."""
    ch = lower_central_series(G)
    if ch.last.order == 1:
        return True, len(ch.terms) - 1
    return False, None


def is_solvable(G: FiniteGroup) -> tuple[bool, int | None]:
    ch = derived_series(G)
    if ch.last.order == 1:
        return True, len(ch.terms) - 1
    return False, None


def derived_length(G: FiniteGroup) -> int | None:
    return is_solvable(G)[1]


def nilpotency_class(G: FiniteGroup) -> int | None:
    return is_nilpotent(G)[1]


def prime_power_exponent(n: int, p: int) -> int | None:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def is_p_group(G: FiniteGroup, p: int) -> bool:
    """True iff ``|G|`` is a power of ``p`` (the trivial group counts)."""
    return prime_power_exponent(G.order, p) is not None


# CLASSES OF GROUPS
# -----------------

_ROOT = {"finite": True, "p": True, "solvable": True, "nilpotent": False, "abelian": False}


@dataclass(frozen=True)
class ClassSpec:
    """A class of finite groups with a decidable membership predicate.

    ``kind`` is one of ``finite``, ``p``, ``solvable``, ``nilpotent``,
    ``abelian`` or ``intersection``.  ``is_root`` records the known answer:
    all finite groups, finite p-groups and finite solvable groups form root
    classes; nilpotent and abelian groups do not (``C2 wr C2`` is not
    abelian, ``C3 wr C2`` is not nilpotent).
    """

    kind: str
    p: int | None = None
    parts: tuple["ClassSpec", ...] = field(default=())

    def __post_init__(self):
        if self.kind not in (*_ROOT, "intersection"):
            raise ValueError(f"unknown class kind {self.kind!r}")
        if self.kind == "p" and not (self.p and is_prime(self.p)):
            raise ValueError("p-group class needs a prime")

    @classmethod
    def all_finite(cls):
        return cls("finite")

    @classmethod
    def p_group(cls, p: int):
        return cls("p", p)

    @classmethod
    def solvable(cls):
        return cls("solvable")

    @classmethod
    def nilpotent(cls):
        return cls("nilpotent")

    @classmethod
    def abelian(cls):
        return cls("abelian")

    @classmethod
    def intersection(cls, *parts: "ClassSpec"):
        flat: list[ClassSpec] = []
        for c in parts:
            flat.extend(c.parts if c.kind == "intersection" else [c])
        if len(flat) == 1:
            return flat[0]
        return cls("intersection", parts=tuple(flat))

    @property
    def name(self) -> str:
        if self.kind == "p":
            return f"p:{self.p}"
        if self.kind == "intersection":
            return "&".join(c.name for c in self.parts)
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "ClassSpec":
        parts = [t.strip() for t in text.replace("∩", "&").split("&") if t.strip()]
        specs = []
        for t in parts:
            if t.startswith("p:"):
                specs.append(cls.p_group(int(t[2:])))
            else:
                specs.append(cls(t))
        if not specs:
            raise ValueError("empty class name")
        return cls.intersection(*specs)

    @property
    def is_root(self) -> bool:
        if self.kind != "intersection":
            return _ROOT[self.kind]
        if all(c.is_root for c in self.parts):
            return True
        # an intersection containing p-groups of one prime and otherwise only
        # classes that contain every finite p-group is the p-group class itself
        primes = {c.p for c in self.parts if c.kind == "p"}
        return len(primes) == 1 and all(c.kind in ("finite", "solvable", "nilpotent", "p") for c in self.parts)

    @property
    def closed_under_quotients(self) -> bool:
        return True


def class_member(C: ClassSpec, G: FiniteGroup) -> bool:
    if C.kind == "finite":
        return True
    if C.kind == "p":
        return is_p_group(G, C.p)
    if C.kind == "solvable":
        return is_solvable(G)[0]
    if C.kind == "nilpotent":
        return is_nilpotent(G)[0]
    if C.kind == "abelian":
        return G.is_abelian()
    return all(class_member(c, G) for c in C.parts)


# SERIES PAIRS
# ------------


@dataclass
class SeriesPair:
    """Ascending chains ``1 = A_0 <= ... <= A_n = A`` and ``1 = B_0 <= ... <= B_n = B``."""

    series_a: list[FiniteGroup]
    series_b: list[FiniteGroup]

    @property
    def length(self) -> int:
        return len(self.series_a) - 1


def central_series_violation(G: FiniteGroup, chain: Sequence[FiniteGroup]) -> int | None:
    """First index ``i`` where ``[G, A_i] <= A_{i-1}`` fails, or where the chain is malformed.

    Generator commutators suffice: by induction each ``A_{i-1}`` is normal in
    ``G``, and commuting modulo a normal subgroup is a generator-wise test.
    """
    if not chain or chain[0].order != 1 or not chain[-1].same_elements(G):
        return 0
    for i in range(1, len(chain)):
        if not chain[i - 1].is_subgroup_of(chain[i]) or not chain[i].is_subgroup_of(G):
            return i
        ctx = G.ctx
        for g in G.gens:
            for a in chain[i].gens:
                if commutator(ctx, g, a) not in chain[i - 1]:
                    return i
    return None


def is_central_series(G: FiniteGroup, chain: Sequence[FiniteGroup]) -> bool:
    return central_series_violation(G, chain) is None


def compatible_series_check(am, pair: SeriesPair) -> tuple[bool, int | None]:
    """Check ``(A_i & H) phi = B_i & K`` for ``i = 1..n`` after checking both chains are central.

    Returns ``(True, None)`` or ``(False, i)`` with the first violating level.
    Raises :class:`NotCentralSeries` if either chain is not central.
    """
    if len(pair.series_a) != len(pair.series_b):
        raise NotCentralSeries("length", 0)
    for side, G, chain in (("A", am.A, pair.series_a), ("B", am.B, pair.series_b)):
        bad = central_series_violation(G, chain)
        if bad is not None:
            raise NotCentralSeries(side, bad)
    for i in range(1, len(pair.series_a)):
        Ai, Bi = pair.series_a[i], pair.series_b[i]
        left = {am.phi[h] for h in am.H.elements if h in Ai}
        right = {k for k in am.K.elements if k in Bi}
        if left != right:
            return False, i
    return True, None


__all__ = [
    "Chain",
    "ClassSpec",
    "SeriesPair",
    "center",
    "central_series_violation",
    "class_member",
    "commutator",
    "commutator_subgroup",
    "compatible_series_check",
    "derived_length",
    "derived_series",
    "intersection",
    "is_central_series",
    "is_nilpotent",
    "is_normal",
    "is_p_group",
    "is_prime",
    "is_solvable",
    "lower_central_series",
    "nilpotency_class",
]
