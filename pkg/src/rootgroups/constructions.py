"""Direct products, Cartesian wreath products, quotients, normal closures and cores.

The wreath product ``X wr Y`` is the set of pairs ``(y, b)`` with ``b`` any
function ``Y -> X``, multiplied by

    (y1, b1)(y2, b2) = (y1 y2, b1^{y2} b2),    b^{u}(y) = b(u y).

``b -> b^u`` is a right action of ``Y`` on the base group, which is what makes
the product associative.  For finite ``Y`` the Cartesian and restricted wreath
products coincide, so there is only one construction here.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .core import (
    DEFAULT_CAP,
    Element,
    FiniteGroup,
    GroupHom,
    MulContext,
    PermContext,
    _Closure,
    generate,
    hom_from_images,
    hom_verify,
    intersection,
    is_normal,
    right_coset_reps,
    subgroup_from_elements,
    subgroup_generated,
    trivial_group,
)
from .errors import CapExceeded, GroupError, NotEnumerated, NotNormal, NotSubgroup


# DIRECT PRODUCTS
# ---------------


def direct_product(X: FiniteGroup, Y: FiniteGroup, cap: int = DEFAULT_CAP) -> tuple[FiniteGroup, GroupHom, GroupHom]:
    """``X x Y`` acting on the disjoint union of the two domains.

    Returns the product together with the two canonical injections.
    """
    if not (isinstance(X.ctx, PermContext) and isinstance(Y.ctx, PermContext)):
        raise TypeError("direct_product needs permutation groups")
    dx, dy = X.ctx.degree, Y.ctx.degree
    ctx = PermContext(dx + dy)
    left = lambda p: tuple(p) + tuple(range(dx, dx + dy))
    right = lambda q: tuple(range(dx)) + tuple(i + dx for i in q)
    if X.order * Y.order > cap:
        raise CapExceeded(cap, X.order * Y.order, "direct product")
    P = generate(ctx, [left(g) for g in X.gens] + [right(g) for g in Y.gens], cap)
    inj_x = GroupHom(X, ctx, {g: left(g) for g in X.elements})
    inj_y = GroupHom(Y, ctx, {g: right(g) for g in Y.elements})
    return P, inj_x, inj_y


def product_context(groups: list[FiniteGroup]) -> tuple[PermContext, list[int]]:
    """Permutation context for the direct product of several permutation groups, with domain offsets."""
    offsets, total = [], 0
    for G in groups:
        if not isinstance(G.ctx, PermContext):
            raise TypeError("product_context needs permutation groups")
        offsets.append(total)
        total += G.ctx.degree
    return PermContext(total), offsets


def embed_tuple(parts: list[tuple[int, ...]], offsets: list[int]) -> tuple[int, ...]:
    out: list[int] = []
    for p, off in zip(parts, offsets):
        out.extend(i + off for i in p)
    return tuple(out)


# WREATH PRODUCTS
# ---------------


class WreathElement(NamedTuple):
    """``top`` indexes ``Y.elements``; ``base[i]`` indexes ``X.elements`` and is the value at ``Y.elements[i]``."""

    top: int
    base: tuple[int, ...]


class _RowCache:
    """Lazy left-multiplication rows of an enumerated group: ``row(u)[i] = index(u * g_i)``."""

    def __init__(self, G: FiniteGroup):
        self.G = G
        self.rows: dict[int, tuple[int, ...]] = {}

    def row(self, u: int) -> tuple[int, ...]:
        r = self.rows.get(u)
        if r is None:
            G = self.G
            x = G.elements[u]
            mul, idx = G.ctx.mul, G._index
            r = tuple([idx[mul(x, g)] for g in G.elements])
            self.rows[u] = r
        return r


class WreathContext(MulContext):
    """Multiplication in ``X wr Y`` without enumerating the group."""

    def __init__(self, X: FiniteGroup, Y: FiniteGroup):
        self.X = X
        self.Y = Y
        self.ny = Y.order
        self.identity = WreathElement(0, (0,) * Y.order)
        self.order_bound = X.order ** Y.order * Y.order
        self._xrows = _RowCache(X)
        self._yrows = _RowCache(Y)
        self._xinv = None
        self._yinv = None

    def __repr__(self) -> str:
        return f"WreathContext(|X|={self.X.order}, |Y|={self.Y.order})"

    def _x_inverses(self) -> tuple[int, ...]:
        if self._xinv is None:
            X = self.X
            self._xinv = tuple(X.index(X.ctx.inv(x)) for x in X.elements)
        return self._xinv

    def _y_inverse(self, y: int) -> int:
        if self._yinv is None:
            self._yinv = {}
        v = self._yinv.get(y)
        if v is None:
            Y = self.Y
            v = self._yinv[y] = Y.index(Y.ctx.inv(Y.elements[y]))
        return v

    def mul(self, a: WreathElement, b: WreathElement) -> WreathElement:
        shift = self._yrows.row(b.top)
        xrow = self._xrows.row
        b1, b2 = a.base, b.base
        base = tuple([xrow(b1[shift[i]])[b2[i]] for i in range(self.ny)])
        return WreathElement(self._yrows.row(a.top)[b.top], base)

    def inv(self, a: WreathElement) -> WreathElement:
        yi = self._y_inverse(a.top)
        shift = self._yrows.row(yi)
        xinv = self._x_inverses()
        b = a.base
        return WreathElement(yi, tuple([xinv[b[shift[i]]] for i in range(self.ny)]))

    # helpers working with actual group elements

    def pack(self, top: Element, base: dict | list | tuple) -> WreathElement:
        """Build an element from a ``Y`` element and a function ``Y -> X`` (dict or list in ``Y`` order)."""
        X, Y = self.X, self.Y
        if isinstance(base, dict):
            vals = [base[y] for y in Y.elements]
        else:
            vals = list(base)
        if len(vals) != Y.order:
            raise ValueError("base must be total on Y")
        return WreathElement(Y.index(top), tuple(X.index(v) for v in vals))

    def unpack(self, a: WreathElement) -> tuple[Element, dict]:
        X, Y = self.X, self.Y
        return Y.elements[a.top], {y: X.elements[a.base[i]] for i, y in enumerate(Y.elements)}

    def top_element(self, a: WreathElement) -> Element:
        return self.Y.elements[a.top]

    def base_value(self, a: WreathElement, y: Element) -> Element:
        return self.X.elements[a.base[self.Y.index(y)]]

    def top(self, y: Element) -> WreathElement:
        return WreathElement(self.Y.index(y), (0,) * self.ny)

    def delta(self, y: Element, x: Element) -> WreathElement:
        """Base function with value ``x`` at ``y`` and the identity elsewhere."""
        base = [0] * self.ny
        base[self.Y.index(y)] = self.X.index(x)
        return WreathElement(0, tuple(base))

    def format_element(self, a: WreathElement) -> str:
        return f"{a.top}|" + ",".join(map(str, a.base))

    def parse_element(self, text: str) -> WreathElement:
        try:
            top, rest = text.split("|")
            base = tuple(int(v) for v in rest.split(","))
            t = int(top)
        except ValueError as exc:
            raise ValueError(f"bad wreath key {text!r}") from exc
        if len(base) != self.ny or not 0 <= t < self.ny or any(not 0 <= v < self.X.order for v in base):
            raise ValueError(f"wreath key {text!r} out of range")
        return WreathElement(t, base)


def wreath_context(X: FiniteGroup, Y: FiniteGroup) -> WreathContext:
    return WreathContext(X, Y)


def wreath_order(X: FiniteGroup, Y: FiniteGroup) -> int:
    return X.order ** Y.order * Y.order


def wreath_group(X: FiniteGroup, Y: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Enumerate ``X wr Y`` from the tops of ``gens(Y)`` and the identity-coordinate deltas of ``gens(X)``."""
    bound = wreath_order(X, Y)
    if bound > cap:
        raise CapExceeded(cap, bound, "wreath product")
    W = wreath_context(X, Y)
    gens = [W.top(y) for y in Y.gens] + [W.delta(Y.identity, x) for x in X.gens]
    G = generate(W, gens, cap)
    if G.order != bound:
        raise GroupError(f"wreath closure has order {G.order}, expected {bound}")
    return G


def _wreath_ctx(W: FiniteGroup) -> WreathContext:
    if not isinstance(W.ctx, WreathContext):
        raise NotEnumerated("group is not inside a wreath context")
    if W.order != W.ctx.order_bound:
        raise NotEnumerated("group is not the full enumerated wreath product")
    return W.ctx


def base_subgroup(W: FiniteGroup) -> FiniteGroup:
    """All elements of ``W`` with trivial top component."""
    _wreath_ctx(W)
    return subgroup_from_elements(W, [w for w in W.elements if w.top == 0])


def point_kernel(W: FiniteGroup, y: Element) -> FiniteGroup:
    """Base elements whose value at coordinate ``y`` is the identity."""
    ctx = _wreath_ctx(W)
    i = ctx.Y.index(y)
    return subgroup_from_elements(W, [w for w in W.elements if w.top == 0 and w.base[i] == 0])


# QUOTIENTS
# ---------


def quotient(G: FiniteGroup, N: FiniteGroup) -> tuple[FiniteGroup, GroupHom]:
    """``G/N`` as the permutation action of ``G`` on the right cosets of ``N``.

    Returns the quotient group and the verified natural projection.
    """
    if not N.is_subgroup_of(G):
        raise NotSubgroup("N is not a subgroup of G")
    if not is_normal(G, N):
        raise NotNormal("N is not normal in G")
    reps = right_coset_reps(G, N)
    mul = G.ctx.mul
    coset_of: dict = {}
    for i, r in enumerate(reps):
        for n in N.elements:
            coset_of[mul(n, r)] = i
    ctx = PermContext(len(reps))

    def act(g):
        return tuple(coset_of[mul(r, g)] for r in reps)

    Q = generate(ctx, [act(g) for g in G.gens], len(reps))
    proj = hom_from_images(G, ctx, [act(g) for g in G.gens])
    rep = hom_verify(proj)
    if not rep.ok:
        raise GroupError("quotient projection failed verification")
    ker = [g for g in G.elements if proj.mapping[g] == ctx.identity]
    if len(ker) != N.order or any(g not in N for g in ker):
        raise GroupError("quotient projection kernel differs from N")
    return Q, proj


def normal_closure(G: FiniteGroup, S: Iterable[Element], cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Smallest normal subgroup of ``G`` containing ``S``."""
    ctx = G.ctx
    S = [s for s in S]
    for s in S:
        if s not in G:
            raise NotSubgroup("S is not contained in G")
    c = _Closure(ctx, cap)
    queue = [s for s in S if s != ctx.identity]
    c.add(queue)
    inv_gens = [(g, ctx.inv(g)) for g in G.gens]
    while queue:
        n = queue.pop(0)
        for g, gi in inv_gens:
            x = ctx.mul(ctx.mul(gi, n), g)
            if x not in c.index:
                c.add([x])
                queue.append(x)
    return c.group()


def normal_core(G: FiniteGroup, Z: FiniteGroup) -> FiniteGroup:
    """Largest normal subgroup of ``G`` inside ``Z``: the intersection of ``s^-1 Z s`` over right-coset reps of ``Z``.

    ``Z^{zs} = Z^s`` for ``z`` in ``Z``, so one representative per coset suffices.
    """
    if not Z.is_subgroup_of(G):
        raise NotSubgroup("Z is not a subgroup of G")
    ctx = G.ctx
    core = set(Z.elements)
    for s in right_coset_reps(G, Z):
        si = ctx.inv(s)
        core = {z for z in core if ctx.mul(ctx.mul(s, z), si) in Z}
    # z in Z^s  <=>  s z s^-1 in Z
    return subgroup_from_elements(G, core)


def image_subgroup(h: GroupHom, S: FiniteGroup, target: FiniteGroup) -> FiniteGroup:
    """``h(S)`` as a subgroup of the enumerated ``target``."""
    return subgroup_generated(target, [h.mapping[g] for g in S.gens], target.order)


def preimage(h: GroupHom, T: FiniteGroup) -> FiniteGroup:
    return subgroup_from_elements(h.source, [g for g in h.source.elements if h.mapping[g] in T])


__all__ = [
    "WreathContext",
    "WreathElement",
    "base_subgroup",
    "direct_product",
    "image_subgroup",
    "intersection",
    "normal_closure",
    "normal_core",
    "point_kernel",
    "preimage",
    "quotient",
    "trivial_group",
    "wreath_context",
    "wreath_group",
    "wreath_order",
]
