"""Permutations, multiplication contexts, enumerated finite groups and homomorphisms.

Every group here is finite and fully enumerated.  A group lives inside a
:class:`MulContext`, which only knows how to multiply, invert and print
elements; the same closure routine therefore serves permutation groups and the
wreath-product contexts built in :mod:`rootgroups.constructions`.

Conventions used throughout the package:

* permutations act on the right, ``(p * q)(i) = q(p(i))``;
* cosets are right cosets ``Y s``;
* conjugation is ``Z^s = s^-1 Z s``.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

from .errors import CapExceeded, NotSubgroup

DEFAULT_CAP = 200_000

Perm = tuple[int, ...]
Element = Hashable


# PERMUTATIONS
# ------------


def check_perm(images: Sequence[int]) -> Perm:
    """Validate an image sequence and return it as a permutation tuple."""
    p = tuple(int(i) for i in images)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation of 0..{len(p) - 1}: {list(images)}")
    return p


def perm_mul(p: Perm, q: Perm) -> Perm:
    # apply p first, then q
    return tuple([q[i] for i in p])


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_identity(degree: int) -> Perm:
    return tuple(range(degree))


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation of ``range(degree)`` from disjoint cycles.

    >>> perm_from_cycles(3, [(0, 1)])
    (1, 0, 2)
    """
    images = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            if a in seen or not 0 <= a < degree:
                raise ValueError(f"bad cycle {tuple(cyc)} for degree {degree}")
            seen.add(a)
            images[a] = b
    return check_perm(images)


def parse_cycles(degree: int, text: str) -> Perm:
    """Parse cycle notation such as ``"(0 1 2)(3 4)"``; ``"()"`` is the identity."""
    text = text.strip()
    cycles = []
    for chunk in text.replace(")", ")\0").split("\0"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ValueError(f"bad cycle notation: {text!r}")
        body = chunk[1:-1].replace(",", " ").split()
        if body:
            cycles.append([int(x) for x in body])
    return perm_from_cycles(degree, cycles)


def perm_cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


# CONTEXTS
# --------


class MulContext(ABC):
    """Multiplication context: identity, product, inverse and text form of elements.

    Elements must be hashable values that are their own canonical keys, so two
    elements are equal exactly when their keys are.
    """

    identity: Element
    order_bound: int | None = None

    @abstractmethod
    def mul(self, a: Element, b: Element) -> Element: ...

    @abstractmethod
    def inv(self, a: Element) -> Element: ...

    def eq(self, a: Element, b: Element) -> bool:
        return self.key(a) == self.key(b)

    def key(self, a: Element) -> Hashable:
        return a

    @abstractmethod
    def format_element(self, a: Element) -> str: ...

    @abstractmethod
    def parse_element(self, text: str) -> Element: ...


class PermContext(MulContext):
    """Permutations of ``range(degree)`` stored as image tuples."""

    def __init__(self, degree: int):
        if degree < 1:
            raise ValueError("degree must be at least 1")
        self.degree = degree
        self.identity = perm_identity(degree)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PermContext) and other.degree == self.degree

    def __hash__(self) -> int:
        return hash(("perm", self.degree))

    def __repr__(self) -> str:
        return f"PermContext({self.degree})"

    def mul(self, a: Perm, b: Perm) -> Perm:
        return tuple([b[i] for i in a])

    def inv(self, a: Perm) -> Perm:
        return perm_inv(a)

    def format_element(self, a: Perm) -> str:
        return ".".join(map(str, a))

    def parse_element(self, text: str) -> Perm:
        try:
            p = check_perm(int(x) for x in text.split("."))
        except ValueError as exc:
            raise ValueError(f"bad permutation key {text!r}") from exc
        if len(p) != self.degree:
            raise ValueError(f"permutation {text!r} has wrong degree (want {self.degree})")
        return p


# CLOSURE
# -------


class _Closure:
    """Incremental closure of a generator list under right multiplication.

    Adding generators only multiplies the old elements by the new generators
    and the new elements by all generators, so the running set stays closed.
    """

    def __init__(self, ctx: MulContext, cap: int = DEFAULT_CAP):
        self.ctx = ctx
        self.cap = cap
        self.gens: list[Element] = []
        self.elements: list[Element] = [ctx.identity]
        self.index: dict[Element, int] = {ctx.identity: 0}
        self.tree: list[tuple[int, int] | None] = [None]

    def add(self, new_gens: Iterable[Element]) -> bool:
        fresh = []
        for g in new_gens:
            if g not in self.index and g not in fresh:
                fresh.append(g)
        if not fresh:
            return False
        first = len(self.gens)
        self.gens.extend(fresh)
        n_old = len(self.elements)
        mul = self.ctx.mul
        elements = self.elements
        for i in range(n_old):
            x = elements[i]
            for gi in range(first, len(self.gens)):
                self._push(mul(x, self.gens[gi]), i, gi)
        j = n_old
        while j < len(elements):
            x = elements[j]
            for gi, g in enumerate(self.gens):
                self._push(mul(x, g), j, gi)
            j += 1
        return True

    def _push(self, y: Element, parent: int, gi: int) -> None:
        if y in self.index:
            return
        if len(self.elements) >= self.cap:
            raise CapExceeded(self.cap)
        self.index[y] = len(self.elements)
        self.elements.append(y)
        self.tree.append((parent, gi))

    def group(self) -> "FiniteGroup":
        gens = self.gens or [self.ctx.identity]
        return FiniteGroup(self.ctx, tuple(gens), tuple(self.elements), dict(self.index), list(self.tree))


class FiniteGroup:
    """A finite group given by generators, with its elements enumerated.

    ``elements[0]`` is always the identity.  Subgroups share the context of
    their parent, so membership is a plain dictionary lookup.
    """

    __slots__ = ("ctx", "gens", "elements", "_index", "_tree", "_cache")

    def __init__(self, ctx, gens, elements, index, tree):
        self.ctx: MulContext = ctx
        self.gens: tuple = gens
        self.elements: tuple = elements
        self._index: dict = index
        self._tree: list = tree
        self._cache: dict = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Element:
        return self.ctx.identity

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, g: Element) -> bool:
        return g in self._index

    def index(self, g: Element) -> int:
        return self._index[g]

    def __repr__(self) -> str:
        return f"<FiniteGroup order={self.order} gens={len(self.gens)} ctx={self.ctx!r}>"

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return self.order <= other.order and other.order % self.order == 0 and all(g in other for g in self.elements)

    def same_elements(self, other: "FiniteGroup") -> bool:
        return self.order == other.order and all(g in other for g in self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_abelian(self) -> bool:
        mul = self.ctx.mul
        return all(mul(a, b) == mul(b, a) for i, a in enumerate(self.gens) for b in self.gens[i + 1 :])

    def sorted_keys(self) -> list[str]:
        return sorted(self.ctx.format_element(g) for g in self.elements)


def generate(ctx: MulContext, gens: Iterable[Element], cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Closure of ``gens`` in ``ctx``; raises :class:`CapExceeded` past ``cap`` elements."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    c = _Closure(ctx, cap)
    c.add(gens)
    return c.group()


def trivial_group(ctx: MulContext) -> FiniteGroup:
    return generate(ctx, [ctx.identity], 1)


def subgroup_generated(G: FiniteGroup, S: Iterable[Element], cap: int = DEFAULT_CAP) -> FiniteGroup:
    S = list(S)
    for s in S:
        if s not in G:
            raise NotSubgroup(f"{G.ctx.format_element(s)} is not an element of the group")
    return generate(G.ctx, S, cap)


def subgroup_from_elements(G: FiniteGroup, elements: Iterable[Element]) -> FiniteGroup:
    """Subgroup of ``G`` with exactly the given element set, with greedily chosen generators."""
    target = set(elements)
    c = _Closure(G.ctx, max(len(target), 1))
    for g in G.elements:
        if g in target and g not in c.index:
            try:
                c.add([g])
            except CapExceeded:
                raise NotSubgroup("element set is not closed under multiplication") from None
    H = c.group()
    if H.order != len(target) or any(g not in target for g in H.elements):
        raise NotSubgroup("element set is not a subgroup")
    return H


def intersection(G: FiniteGroup, U: FiniteGroup, V: FiniteGroup) -> FiniteGroup:
    small, big = (U, V) if U.order <= V.order else (V, U)
    return subgroup_from_elements(G, [g for g in small.elements if g in big])


def conjugate_subgroup(G: FiniteGroup, Z: FiniteGroup, s: Element) -> FiniteGroup:
    """``s^-1 Z s`` as a subgroup of ``G``."""
    ctx = G.ctx
    si = ctx.inv(s)
    return subgroup_generated(G, [ctx.mul(ctx.mul(si, z), s) for z in Z.gens], Z.order)


def element_order(ctx: MulContext, g: Element) -> int:
    n, x = 1, g
    while x != ctx.identity:
        x = ctx.mul(x, g)
        n += 1
    return n


def exponent(G: FiniteGroup) -> int:
    from math import lcm

    e = 1
    for g in G.elements:
        e = lcm(e, element_order(G.ctx, g))
    return e


def order_statistics(G: FiniteGroup) -> dict[int, int]:
    stats: dict[int, int] = {}
    for g in G.elements:
        k = element_order(G.ctx, g)
        stats[k] = stats.get(k, 0) + 1
    return dict(sorted(stats.items()))


def is_normal(G: FiniteGroup, N: FiniteGroup) -> bool:
    """True iff ``g^-1 n g`` lies in ``N`` for all ``g`` in ``G`` and ``n`` in ``N``.

    Checking generators of both groups is equivalent: conjugation by a
    generator maps ``N`` injectively into itself, hence onto it.
    """
    if not N.is_subgroup_of(G):
        raise NotSubgroup("N is not a subgroup of G")
    ctx = G.ctx
    for g in G.gens:
        gi = ctx.inv(g)
        for n in N.gens:
            if ctx.mul(ctx.mul(gi, n), g) not in N:
                return False
    return True


def right_coset_reps(G: FiniteGroup, Y: FiniteGroup) -> list[Element]:
    """Representatives ``s`` of the right cosets ``Y s``; the identity represents ``Y``."""
    if not Y.is_subgroup_of(G):
        raise NotSubgroup("Y is not a subgroup of G")
    mul = G.ctx.mul
    covered: set = set()
    reps = []
    for g in G.elements:
        if g in covered:
            continue
        reps.append(g)
        covered.update(mul(y, g) for y in Y.elements)
    return reps


# HOMOMORPHISMS
# -------------


@dataclass
class GroupHom:
    """A total map from an enumerated group into a multiplication context."""

    source: FiniteGroup
    target: MulContext
    mapping: dict

    def __call__(self, g: Element) -> Element:
        return self.mapping[g]

    def image(self, S: FiniteGroup | None = None, cap: int = DEFAULT_CAP) -> FiniteGroup:
        S = self.source if S is None else S
        return generate(self.target, [self.mapping[g] for g in S.gens], cap)

    def kernel(self) -> FiniteGroup:
        e = self.target.identity
        return subgroup_from_elements(self.source, [g for g in self.source.elements if self.mapping[g] == e])

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``other`` after ``self``; ``other.source`` must contain the image of ``self``."""
        return GroupHom(self.source, other.target, {g: other.mapping[x] for g, x in self.mapping.items()})


def hom_from_images(source: FiniteGroup, target: MulContext, images: Sequence[Element]) -> GroupHom:
    """Extend generator images along the closure tree of ``source``.

    The result is a homomorphism only if the images satisfy the relations of
    ``source``; run :func:`hom_verify` on it.
    """
    if len(images) != len(source.gens):
        raise ValueError("need exactly one image per generator")
    mul = target.mul
    vals = [target.identity] * source.order
    for i in range(1, source.order):
        parent, gi = source._tree[i]
        vals[i] = mul(vals[parent], images[gi])
    return GroupHom(source, target, dict(zip(source.elements, vals)))


def hom_from_function(source: FiniteGroup, target: MulContext, fn: Callable[[Element], Element]) -> GroupHom:
    return GroupHom(source, target, {g: fn(g) for g in source.elements})


@dataclass
class HomReport:
    identity_ok: bool
    method: str
    checked: int
    violations: list = field(default_factory=list)
    missing: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.identity_ok and not self.violations and not self.missing


def hom_verify(h: GroupHom, pair_limit: int = 250_000, max_report: int = 50) -> HomReport:
    """Check that ``h`` is total and multiplicative.

    Small sources are checked on all pairs.  Larger ones are checked on all
    (element, generator) pairs, which proves the same thing: every element is
    a product of generators, so ``h(xg) = h(x)h(g)`` for all generators ``g``
    propagates to ``h(xy) = h(x)h(y)`` by induction on word length.
    """
    G, tgt, m = h.source, h.target, h.mapping
    missing = [g for g in G.elements if g not in m]
    if missing:
        return HomReport(False, "totality", 0, missing=missing[:max_report])
    identity_ok = m[G.identity] == tgt.identity
    if G.order * G.order <= pair_limit:
        method, right = "pairs", G.elements
    else:
        method, right = "generators", G.gens
    violations = []
    checked = 0
    gmul, tmul = G.ctx.mul, tgt.mul
    for a in G.elements:
        ma = m[a]
        for b in right:
            checked += 1
            if m[gmul(a, b)] != tmul(ma, m[b]):
                if len(violations) < max_report:
                    violations.append((a, b))
    return HomReport(identity_ok, method, checked, violations)


def hom_injective_on(h: GroupHom, S: Iterable[Element]) -> bool:
    S = list(S)
    return len({h.mapping[s] for s in S}) == len(set(S))


def verify_group_axioms(G: FiniteGroup, samples: int = 0, seed: int = 0) -> bool:
    """Associativity, identity and inverses: exhaustive when ``samples`` is 0, else random triples."""
    ctx = G.ctx
    e = ctx.identity
    for a in G.elements:
        if ctx.mul(a, e) != a or ctx.mul(e, a) != a or ctx.mul(a, ctx.inv(a)) != e:
            return False
    if samples:
        rng = random.Random(seed)
        triples: Any = ((rng.choice(G.elements), rng.choice(G.elements), rng.choice(G.elements)) for _ in range(samples))
    else:
        triples = ((a, b, c) for a in G.elements for b in G.elements for c in G.elements)
    mul = ctx.mul
    return all(mul(mul(a, b), c) == mul(a, mul(b, c)) for a, b, c in triples)
