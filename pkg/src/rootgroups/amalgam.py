"""Amalgamated free products of finite groups and their solvable wreath quotients.

A homomorphism of ``G = <A * B; H = K, phi>`` into a group is a pair of
homomorphisms ``alpha`` on ``A`` and ``beta`` on ``B`` agreeing on the
amalgamated subgroup (``alpha(h) = beta(phi(h))``).  :func:`theorem2_build`
constructs such a pair, injective on both factors, by induction along
compatible central series; every constructed pair is verified exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .constructions import (
    WreathContext,
    direct_product,
    image_subgroup,
    normal_closure,
    quotient,
    wreath_context,
)
from .core import (
    DEFAULT_CAP,
    Element,
    FiniteGroup,
    GroupHom,
    MulContext,
    generate,
    hom_injective_on,
    hom_verify,
    right_coset_reps,
    subgroup_from_elements,
)
from .errors import (
    CapExceeded,
    CombineFailed,
    GroupError,
    IncompatibleKernels,
    NotCentralSeries,
    NotInjectiveOnFactor,
    PreconditionFailed,
    UntaggedLetter,
)
from .series import (
    ClassSpec,
    SeriesPair,
    class_member,
    compatible_series_check,
    derived_length,
    is_nilpotent,
    prime_power_exponent,
)


@dataclass
class Amalgam:
    """``<A * B; H = K, phi>`` with ``phi`` stored as an explicit table ``H -> K``."""

    A: FiniteGroup
    B: FiniteGroup
    H: FiniteGroup
    K: FiniteGroup
    phi: dict

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not self.H.is_subgroup_of(self.A) or not self.K.is_subgroup_of(self.B):
            raise GroupError("H and K must be subgroups of A and B")
        if set(self.phi) != set(self.H.elements):
            raise GroupError("phi must be total on H")
        if len(set(self.phi.values())) != self.H.order or any(k not in self.K for k in self.phi.values()):
            raise GroupError("phi must be a bijection H -> K")
        if self.phi[self.H.identity] != self.K.identity:
            raise GroupError("phi must preserve the identity")
        amul, bmul = self.A.ctx.mul, self.B.ctx.mul
        for h1 in self.H.elements:
            for h2 in self.H.elements:
                if self.phi[amul(h1, h2)] != bmul(self.phi[h1], self.phi[h2]):
                    raise GroupError("phi is not multiplicative")

    @property
    def phi_inverse(self) -> dict:
        return {k: h for h, k in self.phi.items()}


def identity_amalgam(A: FiniteGroup, B: FiniteGroup, H: FiniteGroup, K: FiniteGroup | None = None) -> Amalgam:
    """Amalgam of ``A`` and an identical copy ``B`` along ``H`` via the identity map."""
    K = H if K is None else K
    return Amalgam(A, B, H, K, {h: h for h in H.elements})


@dataclass
class AmalgamHom:
    """``(alpha, beta)`` into a common context; ``group`` is the enumerated target when known."""

    amalgam: Amalgam
    target: MulContext
    alpha: GroupHom
    beta: GroupHom
    group: FiniteGroup | None = None

    def agreement_violations(self) -> list:
        am = self.amalgam
        return [h for h in am.H.elements if self.alpha.mapping[h] != self.beta.mapping[am.phi[h]]]

    def image_generators(self) -> list:
        gens = [self.alpha.mapping[a] for a in self.amalgam.A.gens] + [self.beta.mapping[b] for b in self.amalgam.B.gens]
        out = []
        for g in gens:
            if g not in out:
                out.append(g)
        return out

    def image(self, cap: int = DEFAULT_CAP) -> FiniteGroup:
        return generate(self.target, self.image_generators(), cap)


def eval_word(h: AmalgamHom, word: Sequence[tuple[str, Element]]) -> Element:
    """Image of a tagged word ``[("A", a), ("B", b), ...]``; the empty word maps to the identity."""
    ctx = h.target
    out = ctx.identity
    for letter in word:
        try:
            tag, g = letter
        except (TypeError, ValueError):
            raise UntaggedLetter(f"letter {letter!r} is not a (tag, element) pair") from None
        if tag not in ("A", "B"):
            raise UntaggedLetter(f"unknown factor tag {tag!r}")
        table = h.alpha.mapping if tag == "A" else h.beta.mapping
        if g not in table:
            raise GroupError(f"{g!r} is not an element of {tag}")
        out = ctx.mul(out, table[g])
    return out


# BASE CASE
# ---------


def generalized_direct_product(am: Amalgam, cap: int = DEFAULT_CAP) -> AmalgamHom:
    """``(A x B) / N`` with ``N`` the normal closure of ``{h phi(h)^-1 : h in H}``."""
    P, iA, iB = direct_product(am.A, am.B, cap)
    ctx = P.ctx
    rel = [ctx.mul(iA.mapping[h], ctx.inv(iB.mapping[am.phi[h]])) for h in am.H.elements]
    N = normal_closure(P, rel, cap)
    Q, proj = quotient(P, N)
    alpha = iA.compose(proj)
    beta = iB.compose(proj)
    hom = AmalgamHom(am, Q.ctx, alpha, beta, Q)
    if hom.agreement_violations():
        raise GroupError("generalized direct product does not identify H with K")
    if not hom_injective_on(alpha, am.A.elements):
        raise NotInjectiveOnFactor("A")
    if not hom_injective_on(beta, am.B.elements):
        raise NotInjectiveOnFactor("B")
    return hom


# QUOTIENT AND SUB-AMALGAMS
# -------------------------


def _check_kernels(am: Amalgam, A1: FiniteGroup, B1: FiniteGroup) -> None:
    left = {am.phi[h] for h in am.H.elements if h in A1}
    right = {k for k in am.K.elements if k in B1}
    if left != right:
        raise IncompatibleKernels("(A1 & H) phi differs from B1 & K")


def quotient_amalgam(am: Amalgam, A1: FiniteGroup, B1: FiniteGroup) -> tuple[Amalgam, GroupHom, GroupHom]:
    """``<A/A1 * B/B1; HA1/A1 = KB1/B1, phibar>`` with ``phibar(h A1) = phi(h) B1``."""
    _check_kernels(am, A1, B1)
    Abar, pA = quotient(am.A, A1)
    Bbar, pB = quotient(am.B, B1)
    Hbar = image_subgroup(pA, am.H, Abar)
    Kbar = image_subgroup(pB, am.K, Bbar)
    phibar: dict = {}
    for h in am.H.elements:
        x, y = pA.mapping[h], pB.mapping[am.phi[h]]
        if phibar.setdefault(x, y) != y:
            raise IncompatibleKernels("induced map on HA1/A1 is not well defined")
    return Amalgam(Abar, Bbar, Hbar, Kbar, phibar), pA, pB


def sub_amalgam(am: Amalgam, A1: FiniteGroup, B1: FiniteGroup) -> Amalgam:
    """``<A1 * B1; H & A1 = K & B1, phi restricted>``."""
    _check_kernels(am, A1, B1)
    H1 = subgroup_from_elements(A1, [h for h in am.H.elements if h in A1])
    K1 = subgroup_from_elements(B1, [k for k in am.K.elements if k in B1])
    return Amalgam(A1, B1, H1, K1, {h: am.phi[h] for h in H1.elements})


def lift(am: Amalgam, pA: GroupHom, pB: GroupHom, psi_bar: AmalgamHom) -> AmalgamHom:
    """Compose a homomorphism of the quotient amalgam with the two projections."""
    return AmalgamHom(am, psi_bar.target, pA.compose(psi_bar.alpha), pB.compose(psi_bar.beta), psi_bar.group)


# WREATH COMBINATION
# ------------------


def _section(hom: GroupHom, elements: Sequence[Element]) -> dict:
    # first preimage in enumeration order; the identity comes first
    s: dict = {}
    for g in elements:
        s.setdefault(hom.mapping[g], g)
    return s


def _factor_map(
    F: FiniteGroup,
    psi_f: GroupHom,
    chi_f: GroupHom,
    Y: FiniteGroup,
    YF: FiniteGroup,
    YH: FiniteGroup,
    sH: dict,
    W: WreathContext,
    coset_reps_H: list,
    reorder: bool,
) -> dict:
    """Images ``(psi(f), base_f)`` for every ``f`` in ``F``.

    ``t(v w) = sH(v) tau(w)`` where ``w`` runs over right-coset reps of the
    image of ``H`` and ``tau(w)`` lifts ``w r(w)^-1`` for the rep ``r(w)`` of
    ``w``'s right coset of ``psi(F)``; then
    ``base_f(y) = chi(t(psi(f) y)^-1 f t(y))``.
    """
    ymul, yinv = Y.ctx.mul, Y.ctx.inv
    fmul, finv = F.ctx.mul, F.ctx.inv
    order = list(Y.elements)
    if reorder:
        order = order[:1] + order[1:][::-1]
    rep_F: dict = {}
    covered = set()
    for y in order:
        if y in covered:
            continue
        for u in YF.elements:
            x = ymul(u, y)
            covered.add(x)
            rep_F[x] = y
    sF = _section(psi_f, F.elements)
    t: dict = {}
    for w in coset_reps_H:
        tau = sF[ymul(w, yinv(rep_F[w]))]
        for v in YH.elements:
            t[ymul(v, w)] = fmul(sH[v], tau)
    tinv = {y: finv(x) for y, x in t.items()}
    out = {}
    for f in F.elements:
        pf = psi_f.mapping[f]
        base = [chi_f.mapping[fmul(fmul(tinv[ymul(pf, y)], f), t[y])] for y in Y.elements]
        out[f] = W.pack(pf, base)
    return out


def combine_wreath(
    am: Amalgam,
    psi: AmalgamHom,
    chi: AmalgamHom,
    cap: int = DEFAULT_CAP,
    variants: int = 2,
) -> AmalgamHom:
    """Combine ``psi`` (kernels ``A1``, ``B1``) and ``chi`` (injective on ``A1``, ``B1``) into ``X wr Y``.

    ``Y`` is the group generated by the images of ``psi`` and ``X`` the group
    generated by the images of ``chi``.  Top components equal ``psi``.  Base
    components come from transversals that agree on ``H`` (``t_B = phi t_A``
    there); when ``A1`` and ``B1`` are central this makes the pair agree on
    ``H``.  Each candidate is verified; a failed candidate is retried with
    reversed coset-representative order before giving up.
    """
    A1 = psi.alpha.kernel()
    B1 = psi.beta.kernel()
    sub = chi.amalgam
    if not (A1.same_elements(sub.A) and B1.same_elements(sub.B)):
        raise CombineFailed(["chi must be defined on the kernels of psi"])
    Y = psi.group if psi.group is not None else psi.image(cap)
    X = chi.group if chi.group is not None else chi.image(cap)
    W = wreath_context(X, Y)
    YA = image_subgroup(psi.alpha, am.A, Y)
    YB = image_subgroup(psi.beta, am.B, Y)
    YH = image_subgroup(psi.alpha, am.H, Y)
    sH = _section(psi.alpha, am.H.elements)
    sK = {v: am.phi[h] for v, h in sH.items()}
    reps_H = right_coset_reps(Y, YH)
    diagnostics = []
    for variant in range(variants):
        reorder = variant == 1
        alpha_map = _factor_map(am.A, psi.alpha, chi.alpha, Y, YA, YH, sH, W, reps_H, reorder)
        beta_map = _factor_map(am.B, psi.beta, chi.beta, Y, YB, YH, sK, W, reps_H, reorder)
        hom = AmalgamHom(am, W, GroupHom(am.A, W, alpha_map), GroupHom(am.B, W, beta_map))
        problems = []
        if not hom_verify(hom.alpha).ok:
            problems.append("alpha is not a homomorphism")
        if not hom_verify(hom.beta).ok:
            problems.append("beta is not a homomorphism")
        if not hom_injective_on(hom.alpha, am.A.elements):
            problems.append("alpha is not injective")
        if not hom_injective_on(hom.beta, am.B.elements):
            problems.append("beta is not injective")
        if hom.agreement_violations():
            problems.append(f"{len(hom.agreement_violations())} elements of H disagree")
        if any(W.top_element(alpha_map[a]) != psi.alpha.mapping[a] for a in am.A.elements) or any(
            W.top_element(beta_map[b]) != psi.beta.mapping[b] for b in am.B.elements
        ):
            problems.append("top components differ from psi")
        if not problems:
            return hom
        diagnostics.append(f"variant {variant}: " + ", ".join(problems))
    raise CombineFailed(diagnostics)


# CERTIFICATES
# ------------


@dataclass
class Certificate:
    """Evidence for a homomorphism of an amalgam, recomputed by :func:`certify`.

    Fields are ``None`` when the image was too large to enumerate; then the
    ``*_bound`` fields carry what follows from the image sitting inside the
    wreath product ``X wr Y`` with known ``X`` and ``Y``.
    """

    class_name: str
    homs_verified: bool
    injective_on_A: bool
    injective_on_B: bool
    h_agreement: bool
    image_order: int | None
    derived_length: int | None
    solvable: bool | None
    class_member: bool | None
    order_bound: int | None = None
    derived_length_bound: int | None = None
    class_member_by_bound: bool | None = None
    trace: list[str] = field(default_factory=list)

    @property
    def partial(self) -> bool:
        return self.image_order is None

    @property
    def clauses_ok(self) -> bool:
        """Injectivity, agreement and homomorphism clauses."""
        return self.homs_verified and self.injective_on_A and self.injective_on_B and self.h_agreement

    @property
    def fully_verified(self) -> bool:
        return self.clauses_ok and not self.partial and bool(self.solvable) and bool(self.class_member)

    @property
    def ok(self) -> bool:
        if self.fully_verified:
            return True
        return (
            self.clauses_ok
            and self.partial
            and self.derived_length_bound is not None
            and bool(self.class_member_by_bound)
        )


def _bound_member(C: ClassSpec, X: FiniteGroup, Y: FiniteGroup, bound: int) -> bool | None:
    if C.kind == "finite":
        return True
    if C.kind == "p":
        return prime_power_exponent(bound, C.p) is not None
    if C.kind == "solvable":
        return derived_length(X) is not None and derived_length(Y) is not None
    if C.kind == "intersection":
        votes = [_bound_member(c, X, Y, bound) for c in C.parts]
        if any(v is False for v in votes):
            return False
        return None if any(v is None for v in votes) else True
    return None


def certify(h: AmalgamHom, C: ClassSpec, cap: int = DEFAULT_CAP, trace: list[str] | None = None) -> Certificate:
    am = h.amalgam
    homs_ok = hom_verify(h.alpha).ok and hom_verify(h.beta).ok
    cert = Certificate(
        class_name=C.name,
        homs_verified=homs_ok,
        injective_on_A=hom_injective_on(h.alpha, am.A.elements),
        injective_on_B=hom_injective_on(h.beta, am.B.elements),
        h_agreement=not h.agreement_violations(),
        image_order=None,
        derived_length=None,
        solvable=None,
        class_member=None,
        trace=list(trace or []),
    )
    try:
        img = h.image(cap)
    except CapExceeded:
        img = None
    if img is not None:
        cert.image_order = img.order
        cert.derived_length = derived_length(img)
        cert.solvable = cert.derived_length is not None
        cert.class_member = class_member(C, img)
    if isinstance(h.target, WreathContext):
        X, Y = h.target.X, h.target.Y
        cert.order_bound = h.target.order_bound
        dx, dy = derived_length(X), derived_length(Y)
        if dx is not None and dy is not None:
            cert.derived_length_bound = dx + dy
        cert.class_member_by_bound = _bound_member(C, X, Y, cert.order_bound)
    elif img is not None:
        cert.order_bound = img.order
        cert.derived_length_bound = cert.derived_length
        cert.class_member_by_bound = cert.class_member
    return cert


# THE INDUCTIVE CONSTRUCTION
# --------------------------


def _shift_series(chain: Sequence[FiniteGroup], proj: GroupHom, target: FiniteGroup) -> list[FiniteGroup]:
    return [image_subgroup(proj, T, target) for T in chain[1:]]


def _build(am: Amalgam, pair: SeriesPair, cap: int, trace: list[str], depth: int) -> AmalgamHom:
    n = pair.length
    pad = "  " * depth
    if n <= 1:
        hom = generalized_direct_product(am, cap)
        trace.append(f"{pad}level {depth}: base case |A|={am.A.order} |B|={am.B.order} |H|={am.H.order} -> generalized direct product of order {hom.group.order}")
        return hom
    A1, B1 = pair.series_a[1], pair.series_b[1]
    trace.append(f"{pad}level {depth}: n={n} |A|={am.A.order} |B|={am.B.order} |H|={am.H.order} |A1|={A1.order} |B1|={B1.order}")
    qam, pA, pB = quotient_amalgam(am, A1, B1)
    shifted = SeriesPair(_shift_series(pair.series_a, pA, qam.A), _shift_series(pair.series_b, pB, qam.B))
    psi = lift(am, pA, pB, _build(qam, shifted, cap, trace, depth + 1))
    if psi.group is None:
        psi.group = psi.image(cap)
    sub = sub_amalgam(am, A1, B1)
    one_a = generate(sub.A.ctx, [sub.A.identity], 1)
    one_b = generate(sub.B.ctx, [sub.B.identity], 1)
    chi = _build(sub, SeriesPair([one_a, sub.A], [one_b, sub.B]), cap, trace, depth + 1)
    hom = combine_wreath(am, psi, chi, cap)
    trace.append(f"{pad}level {depth}: combined into X wr Y with |X|={hom.target.X.order} |Y|={hom.target.Y.order}")
    return hom


def theorem2_build(am: Amalgam, pair: SeriesPair, C: ClassSpec, cap: int = DEFAULT_CAP) -> tuple[AmalgamHom, Certificate]:
    """Homomorphism of the amalgam into a solvable group in ``C``, injective on ``A`` and ``B``.

    Preconditions (checked): ``A`` and ``B`` are nilpotent members of ``C``,
    ``C`` is a root class closed under quotients, and the two central series
    are compatible with ``phi`` at every level.
    """
    if not class_member(C, am.A):
        raise PreconditionFailed(f"A is not in class {C.name}")
    if not class_member(C, am.B):
        raise PreconditionFailed(f"B is not in class {C.name}")
    if not C.closed_under_quotients:
        raise PreconditionFailed("class is not closed under quotients")
    if not C.is_root:
        raise PreconditionFailed(f"class {C.name} is not a root class")
    if not (is_nilpotent(am.A)[0] and is_nilpotent(am.B)[0]):
        raise PreconditionFailed("A and B must be nilpotent")
    try:
        ok, bad = compatible_series_check(am, pair)
    except NotCentralSeries as exc:
        raise PreconditionFailed(str(exc)) from exc
    if not ok:
        raise PreconditionFailed(f"series are not phi-compatible at level {bad}")
    trace: list[str] = []
    hom = _build(am, pair, cap, trace, 0)
    return hom, certify(hom, C, cap, trace)
