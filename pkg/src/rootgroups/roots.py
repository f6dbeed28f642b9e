"""Root classes: Gruenberg witnesses, Remak and Kaloujnine-Krasner embeddings, closure sweeps."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constructions import (
    WreathContext,
    base_subgroup,
    embed_tuple,
    point_kernel,
    product_context,
    quotient,
    wreath_context,
    wreath_group,
    wreath_order,
)
from .core import (
    DEFAULT_CAP,
    Element,
    FiniteGroup,
    GroupHom,
    _Closure,
    conjugate_subgroup,
    generate,
    hom_injective_on,
    hom_verify,
    intersection,
    is_normal,
    right_coset_reps,
    subgroup_from_elements,
)
from .errors import (
    EmbedVerificationFailed,
    FactorsNotInClass,
    GroupError,
    NotNormal,
    NotSubnormal,
)
from .series import ClassSpec, class_member, derived_length, lower_central_series


# NORMAL SUBGROUP ENUMERATION
# ---------------------------


def _normal_closure_inside(G: FiniteGroup, S: Iterable[Element], Z: FiniteGroup) -> FiniteGroup | None:
    """Normal closure of ``S`` in ``G`` if it stays inside ``Z``, else ``None``."""
    ctx = G.ctx
    c = _Closure(ctx, Z.order)
    queue = [s for s in S if s != ctx.identity]
    c.add(queue)
    conj = [(g, ctx.inv(g)) for g in G.gens]
    while queue:
        n = queue.pop()
        for g, gi in conj:
            x = ctx.mul(ctx.mul(gi, n), g)
            if x not in Z:
                return None
            if x not in c.index:
                c.add([x])
                queue.append(x)
    return c.group()


def subgroup_sort_key(G: FiniteGroup) -> tuple:
    return (G.order, G.sorted_keys())


def normal_subgroups_within(G: FiniteGroup, Z: FiniteGroup) -> list[FiniteGroup]:
    """All normal subgroups of ``G`` contained in ``Z``, by ascending order then element keys.

    Every such subgroup is a join of normal closures of single elements of
    ``Z``, so those closures are joined until nothing new appears.
    """
    atoms: dict[frozenset, FiniteGroup] = {}
    for z in Z.elements[1:]:
        N = _normal_closure_inside(G, [z], Z)
        if N is not None:
            atoms.setdefault(frozenset(N.elements), N)
    trivial = generate(G.ctx, [G.identity], 1)
    found: dict[frozenset, FiniteGroup] = {frozenset(trivial.elements): trivial}
    frontier = [trivial]
    atom_list = list(atoms.values())
    while frontier:
        nxt = []
        for N in frontier:
            for A in atom_list:
                if all(a in N for a in A.gens):
                    continue
                J = generate(G.ctx, list(N.gens) + list(A.gens), Z.order)
                key = frozenset(J.elements)
                if key not in found:
                    found[key] = J
                    nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=subgroup_sort_key)


def normal_subgroups(G: FiniteGroup) -> list[FiniteGroup]:
    return normal_subgroups_within(G, G)


# GRUENBERG WITNESS
# -----------------


@dataclass
class RemakEmbedding:
    """The map ``yT -> (y Z^s)_s`` from ``Y/T`` into the product of the ``Y/Z^s``."""

    hom: GroupHom
    factors: list[FiniteGroup]
    target_order: int
    verified: bool
    injective: bool


def remak_embed(Y: FiniteGroup, conjugates: Sequence[FiniteGroup]) -> RemakEmbedding:
    if not conjugates:
        raise ValueError("need at least one subgroup")
    for N in conjugates:
        if not is_normal(Y, N):
            raise NotNormal("every conjugate must be normal in Y")
    T = conjugates[0]
    for N in conjugates[1:]:
        T = intersection(Y, T, N)
    QT, pT = quotient(Y, T)
    parts = [quotient(Y, N) for N in conjugates]
    ctx, offsets = product_context([Q for Q, _ in parts])
    mapping: dict = {}
    for y in Y.elements:
        img = embed_tuple([p.mapping[y] for _, p in parts], offsets)
        q = pT.mapping[y]
        if mapping.setdefault(q, img) != img:
            raise GroupError("Remak map is not well defined on Y/T")
    hom = GroupHom(QT, ctx, mapping)
    target_order = 1
    for Q, _ in parts:
        target_order *= Q.order
    return RemakEmbedding(
        hom,
        [Q for Q, _ in parts],
        target_order,
        hom_verify(hom).ok,
        hom_injective_on(hom, QT.elements),
    )


@dataclass
class GruenbergCertificate:
    T_normal_in_X: bool
    T_inside_Z: bool
    conjugate_orders: list[int]
    factor_order: int
    remak_injective: bool
    remak_target_order: int
    order_YT: int
    index_XY: int
    order_XT: int
    kernel_is_T: bool

    @property
    def ok(self) -> bool:
        return (
            self.T_normal_in_X
            and self.T_inside_Z
            and self.remak_injective
            and self.kernel_is_T
            and all(o == self.factor_order for o in self.conjugate_orders)
            and self.order_XT == self.order_YT * self.index_XY
        )


def check_subnormal(X: FiniteGroup, Y: FiniteGroup, Z: FiniteGroup) -> None:
    if not (Y.is_subgroup_of(X) and is_normal(X, Y)):
        raise NotSubnormal("Y is not normal in X")
    if not (Z.is_subgroup_of(Y) and is_normal(Y, Z)):
        raise NotSubnormal("Z is not normal in Y")


def gruenberg_T(X: FiniteGroup, Y: FiniteGroup, Z: FiniteGroup) -> tuple[FiniteGroup, GroupHom, GruenbergCertificate]:
    """``T`` = intersection of ``s^-1 Z s`` over right-coset representatives ``s`` of ``Y`` in ``X``.

    Returns ``T``, the projection ``X -> X/T`` and a certificate checking that
    ``T`` is normal in ``X``, lies in ``Z``, that ``Y/T`` embeds in the product
    of the ``Y/Z^s`` and that ``|X/T| = |Y/T| |X/Y|``.
    """
    check_subnormal(X, Y, Z)
    reps = right_coset_reps(X, Y)
    conjugates = [conjugate_subgroup(X, Z, s) for s in reps]
    # the conjugates live in Y because Y is normal in X
    conj_in_Y = [subgroup_from_elements(Y, C.elements) for C in conjugates]
    remak = remak_embed(Y, conj_in_Y)
    T = conjugates[0]
    for C in conjugates[1:]:
        T = intersection(X, T, C)
    T_in_Y = subgroup_from_elements(Y, T.elements)
    Q, proj = quotient(X, T)
    ker = [g for g in X.elements if proj.mapping[g] == Q.identity]
    YZ = Y.order // Z.order
    cert = GruenbergCertificate(
        T_normal_in_X=is_normal(X, T),
        T_inside_Z=T.is_subgroup_of(Z),
        conjugate_orders=[Y.order // C.order for C in conj_in_Y],
        factor_order=YZ,
        remak_injective=remak.verified and remak.injective,
        remak_target_order=remak.target_order,
        order_YT=Y.order // T_in_Y.order,
        index_XY=X.order // Y.order,
        order_XT=Q.order,
        kernel_is_T=len(ker) == T.order and all(k in T for k in ker),
    )
    return T, proj, cert


@dataclass
class GruenbergSearch:
    T: FiniteGroup | None
    trace: list[dict] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.T is not None


def gruenberg_search(C: ClassSpec, X: FiniteGroup, Y: FiniteGroup, Z: FiniteGroup) -> GruenbergSearch:
    """Exhaustive search for a normal ``T <= Z`` of ``X`` with ``X/T`` in ``C``.

    Candidates are tried by ascending order, then by sorted element keys; the
    trace records every candidate and its verdict.
    """
    check_subnormal(X, Y, Z)
    if not class_member(C, quotient(Y, Z)[0]) or not class_member(C, quotient(X, Y)[0]):
        raise FactorsNotInClass(f"chain factors are not all in class {C.name}")
    trace = []
    for T in normal_subgroups_within(X, Z):
        Q, _ = quotient(X, T)
        ok = class_member(C, Q)
        trace.append({"T_order": T.order, "quotient_order": Q.order, "in_class": ok})
        if ok:
            return GruenbergSearch(T, trace)
    return GruenbergSearch(None, trace)


# KALOUJNINE-KRASNER EMBEDDING
# ----------------------------


@dataclass
class KKEmbedding:
    hom: GroupHom
    wreath: WreathContext
    quotient: FiniteGroup
    projection: GroupHom
    transversal: dict


def kk_embed(Zg: FiniteGroup, N: FiniteGroup, chi: GroupHom | None = None, X: FiniteGroup | None = None) -> KKEmbedding:
    """Embed an extension ``Zg`` of ``N`` into ``X wr (Zg/N)`` through an injective ``chi: N -> X``.

    With transversal ``t`` (``t(1) = 1``) and projection ``pi``, the image of
    ``z`` has top ``pi(z)`` and base value at ``q`` equal to
    ``chi(t(pi(z) q)^-1 z t(q))``.  The result is verified to be an injective
    homomorphism whose top component is ``pi``.
    """
    if not (N.is_subgroup_of(Zg) and is_normal(Zg, N)):
        raise NotNormal("N must be a normal subgroup of Zg")
    if chi is None:
        chi = GroupHom(N, N.ctx, {n: n for n in N.elements})
        X = N
    if X is None:
        X = generate(chi.target, [chi.mapping[n] for n in N.gens])
    if not (hom_verify(chi).ok and hom_injective_on(chi, N.elements)):
        raise EmbedVerificationFailed("chi must be an injective homomorphism")
    Q, pi = quotient(Zg, N)
    W = wreath_context(X, Q)
    t: dict = {}
    for z in Zg.elements:
        t.setdefault(pi.mapping[z], z)
    ctx, qmul = Zg.ctx, Q.ctx.mul
    tinv = {q: ctx.inv(s) for q, s in t.items()}
    mapping = {}
    for z in Zg.elements:
        pz = pi.mapping[z]
        base = [chi.mapping[ctx.mul(ctx.mul(tinv[qmul(pz, q)], z), t[q])] for q in Q.elements]
        mapping[z] = W.pack(pz, base)
    theta = GroupHom(Zg, W, mapping)
    if not hom_verify(theta).ok:
        raise EmbedVerificationFailed("theta is not a homomorphism")
    if not hom_injective_on(theta, Zg.elements):
        raise EmbedVerificationFailed("theta is not injective")
    if any(W.top_element(mapping[z]) != pi.mapping[z] for z in Zg.elements):
        raise EmbedVerificationFailed("top component differs from the projection")
    return KKEmbedding(theta, W, Q, pi, t)


# CLOSURE SWEEPS
# --------------


@dataclass
class CheckRecord:
    cls: str
    construction: str
    operands: list[str]
    verdict: bool
    witness: str

    def as_json(self) -> str:
        return json.dumps(
            {"class": self.cls, "construction": self.construction, "operands": self.operands, "verdict": "pass" if self.verdict else "fail", "witness": self.witness},
            sort_keys=True,
            ensure_ascii=False,
        )


@dataclass
class RootReport:
    cls: ClassSpec
    records: list[CheckRecord]
    skipped: list[str]

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.verdict]

    @property
    def ok(self) -> bool:
        return not self.failures

    def text(self) -> str:
        n = len(self.records)
        lines = [f"class {self.cls.name}: {n - len(self.failures)}/{n} checks pass; known root class: {self.cls.is_root}"]
        for r in self.records:
            mark = "PASS" if r.verdict else "FAIL"
            lines.append(f"{mark} {r.construction} {' '.join(r.operands)}: {r.witness}")
        for s in self.skipped:
            lines.append(f"SKIP {s}")
        return "\n".join(lines)

    def jsonl(self) -> str:
        return "\n".join(r.as_json() for r in self.records)


def _describe_membership(C: ClassSpec, G: FiniteGroup) -> str:
    if C.kind == "nilpotent" or (C.kind == "intersection" and any(c.kind == "nilpotent" for c in C.parts)):
        return f"order {G.order}, lower central series orders {lower_central_series(G).orders}"
    if C.kind == "solvable":
        return f"order {G.order}, derived length {derived_length(G)}"
    return f"order {G.order}"


def verify_root_closure(
    C: ClassSpec,
    catalog: Sequence[tuple[str, FiniteGroup]],
    cap: int = DEFAULT_CAP,
    triple_limit: int = 200,
) -> RootReport:
    """Empirical closure evidence for ``C`` over a catalog.

    For every ordered pair of members ``(X, Y)`` with ``|X|^|Y| |Y| <= cap``:
    ``X wr Y`` and its base group (the Cartesian power) must be members.  For
    every catalog group (of order at most ``triple_limit``): every extension
    ``N, G/N`` in ``C`` must have ``G`` in ``C``, and every subnormal chain
    ``Z <| Y <| G`` with factors in ``C`` must admit a Gruenberg witness.
    """
    records: list[CheckRecord] = []
    skipped: list[str] = []
    members = [(n, G) for n, G in catalog if class_member(C, G)]
    for xn, X in members:
        for yn, Y in members:
            bound = wreath_order(X, Y)
            if bound > cap:
                skipped.append(f"wreath {xn} {yn}: order {bound} > cap {cap}")
                continue
            W = wreath_group(X, Y, cap)
            ok = class_member(C, W)
            records.append(CheckRecord(C.name, "wreath", [xn, yn], ok, _describe_membership(C, W)))
            B = base_subgroup(W)
            ok = class_member(C, B)
            records.append(CheckRecord(C.name, "power", [xn, yn], ok, _describe_membership(C, B)))
    for gn, G in catalog:
        if G.order > triple_limit:
            skipped.append(f"chains in {gn}: order {G.order} > {triple_limit}")
            continue
        normals = normal_subgroups(G)
        in_c = class_member(C, G)
        for N in normals:
            if N.order in (1, G.order):
                continue
            if class_member(C, N) and class_member(C, quotient(G, N)[0]):
                records.append(
                    CheckRecord(C.name, "extension", [gn, f"N{N.order}"], in_c, f"|N|={N.order}, |G/N|={G.order // N.order}, G in class: {in_c}")
                )
        for Yg in normals:
            for Zg in normal_subgroups(Yg):
                if not (class_member(C, quotient(Yg, Zg)[0]) and class_member(C, quotient(G, Yg)[0])):
                    continue
                res = gruenberg_search(C, G, Yg, Zg)
                steps = "; ".join(f"T{t['T_order']}->X/T order {t['quotient_order']} {'in' if t['in_class'] else 'not in'} class" for t in res.trace)
                witness = (f"T of order {res.T.order}" if res.found else "no T exists") + f" [searched: {steps}]"
                records.append(CheckRecord(C.name, "gruenberg", [gn, f"Y{Yg.order}", f"Z{Zg.order}"], res.found, witness))
    return RootReport(C, records, skipped)


def nontrivial_normals_in_point_kernel(W: FiniteGroup) -> list[FiniteGroup]:
    """Normal subgroups of the enumerated wreath ``W`` inside the identity-coordinate kernel, other than 1."""
    A = point_kernel(W, W.ctx.Y.identity)
    return [N for N in normal_subgroups_within(W, A) if N.order > 1]
