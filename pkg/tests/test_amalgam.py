import pytest
from hypothesis import given, settings, strategies as st

from rootgroups import textio
from rootgroups.amalgam import (
    Amalgam,
    certify,
    combine_wreath,
    eval_word,
    generalized_direct_product,
    identity_amalgam,
    lift,
    quotient_amalgam,
    sub_amalgam,
    theorem2_build,
)
from rootgroups.catalog import catalog_get
from rootgroups.core import element_order, generate, hom_injective_on, hom_verify, perm_mul, subgroup_generated
from rootgroups.errors import GroupError, IncompatibleKernels, PreconditionFailed, UntaggedLetter
from rootgroups.series import ClassSpec, SeriesPair, center, class_member, is_nilpotent

P2, P3 = ClassSpec.p_group(2), ClassSpec.p_group(3)


def one(G):
    return generate(G.ctx, [G.identity], 1)


def power(G, g, k):
    out = G.identity
    for _ in range(k):
        out = perm_mul(out, g)
    return out


def square_sub(G):
    return subgroup_generated(G, [perm_mul(G.gens[0], G.gens[0])])


def central_pair(G, H):
    chain = [one(G), H, G]
    return SeriesPair(chain, list(chain))


def c4_instance():
    C4 = catalog_get("C4")
    H = square_sub(C4)
    return identity_amalgam(C4, C4, H), central_pair(C4, H)


def center_instance(name):
    G = catalog_get(name)
    Z = center(G)
    return identity_amalgam(G, G, Z), central_pair(G, Z)


def d8_q8_instance():
    D8, Q8 = catalog_get("D8"), catalog_get("Q8")
    ZD, ZQ = center(D8), center(Q8)
    phi = {ZD.identity: ZQ.identity, ZD.elements[1]: ZQ.elements[1]}
    am = Amalgam(D8, Q8, ZD, ZQ, phi)
    return am, SeriesPair([one(D8), ZD, D8], [one(Q8), ZQ, Q8])


def c4_v4_instance():
    C4, V4 = catalog_get("C4"), catalog_get("V4")
    H = square_sub(C4)
    K = subgroup_generated(V4, [V4.gens[0]])
    am = Amalgam(C4, V4, H, K, {H.identity: K.identity, H.gens[0]: K.gens[0]})
    return am, SeriesPair([one(C4), H, C4], [one(V4), K, V4])


def d16_instance():
    D16 = catalog_get("D16")
    r = next(g for g in D16.elements if element_order(D16.ctx, g) == 8)
    R2 = subgroup_generated(D16, [power(D16, r, 2)])
    R4 = subgroup_generated(D16, [power(D16, r, 4)])
    chain = [one(D16), R4, R2, D16]
    return identity_amalgam(D16, D16, R2), SeriesPair(chain, list(chain))


def assert_good(hom):
    am = hom.amalgam
    assert hom_verify(hom.alpha).ok and hom_verify(hom.beta).ok
    assert hom_injective_on(hom.alpha, am.A.elements)
    assert hom_injective_on(hom.beta, am.B.elements)
    assert hom.agreement_violations() == []


def test_amalgam_validation():
    C4 = catalog_get("C4")
    H = square_sub(C4)
    with pytest.raises(GroupError):
        Amalgam(C4, C4, H, H, {H.identity: H.identity})
    with pytest.raises(GroupError):
        Amalgam(C4, C4, H, H, {H.identity: H.gens[0], H.gens[0]: H.identity})


def test_generalized_direct_product_klein():
    C2 = catalog_get("C2")
    hom = generalized_direct_product(identity_amalgam(C2, C2, one(C2)))
    assert hom.group.order == 4
    assert hom.group.is_abelian()
    assert_good(hom)


def test_generalized_direct_product_c4_over_c2():
    am, _ = c4_instance()
    hom = generalized_direct_product(am)
    assert hom.group.order == 8
    assert_good(hom)
    common = set(hom.alpha.mapping.values()) & set(hom.beta.mapping.values())
    assert len(common) == 2


def test_generalized_direct_product_collapse():
    C2 = catalog_get("C2")
    hom = generalized_direct_product(identity_amalgam(C2, C2, C2))
    assert hom.group.order == 2
    assert_good(hom)


def test_eval_word():
    am, _ = c4_instance()
    hom = generalized_direct_product(am)
    a = am.A.gens[0]
    assert eval_word(hom, []) == hom.target.identity
    h = am.H.gens[0]
    assert eval_word(hom, [("A", h), ("B", am.phi[h])]) == hom.target.identity
    a3 = power(am.A, a, 3)
    b = am.B.gens[0]
    # a b a^3 = b, which is not the identity
    assert eval_word(hom, [("A", a), ("B", b), ("A", a3)]) == hom.beta.mapping[b] != hom.target.identity


def test_eval_word_rejects_bad_letters():
    am, _ = c4_instance()
    hom = generalized_direct_product(am)
    with pytest.raises(UntaggedLetter):
        eval_word(hom, [am.A.gens[0]])
    with pytest.raises(UntaggedLetter):
        eval_word(hom, [("C", am.A.gens[0])])
    with pytest.raises(GroupError):
        eval_word(hom, [("A", (0, 1))])


def test_quotient_amalgam_of_center_instance():
    am, _ = center_instance("D8")
    qam, pA, pB = quotient_amalgam(am, am.H, am.K)
    assert qam.A.order == qam.B.order == 4
    assert qam.H.order == 1
    assert hom_verify(pA).ok and hom_verify(pB).ok


def test_quotient_amalgam_keeps_part_of_h():
    am, pair = d16_instance()
    R4 = pair.series_a[1]
    qam, _, _ = quotient_amalgam(am, R4, R4)
    assert qam.A.order == 8 and qam.H.order == 2


def test_quotient_amalgam_incompatible_kernels():
    am, _ = c4_instance()
    with pytest.raises(IncompatibleKernels):
        quotient_amalgam(am, am.H, one(am.B))


def test_sub_amalgam():
    am, pair = d16_instance()
    R4 = pair.series_a[1]
    s = sub_amalgam(am, R4, R4)
    assert s.A.order == 2 and s.H.order == 2


def _psi_chi(am, A1, B1):
    qam, pA, pB = quotient_amalgam(am, A1, B1)
    psi = lift(am, pA, pB, generalized_direct_product(qam))
    chi = generalized_direct_product(sub_amalgam(am, A1, B1))
    return psi, chi


def test_combine_wreath_central_kernel():
    am, _ = center_instance("D8")
    psi, chi = _psi_chi(am, am.H, am.K)
    hom = combine_wreath(am, psi, chi)
    assert_good(hom)
    assert hom.target.Y.order == psi.group.order


def test_combine_wreath_trivial_top():
    am, _ = c4_instance()
    psi, chi = _psi_chi(am, am.A, am.B)
    assert psi.group.order == 1
    hom = combine_wreath(am, psi, chi)
    assert_good(hom)
    assert hom.target.order_bound == chi.group.order


def test_combine_wreath_trivial_base():
    am, _ = c4_instance()
    psi, chi = _psi_chi(am, one(am.A), one(am.B))
    assert chi.group.order == 1
    hom = combine_wreath(am, psi, chi)
    assert_good(hom)
    assert hom.target.order_bound == psi.group.order


INSTANCES = {
    "c4": (c4_instance, P2),
    "d8": (lambda: center_instance("D8"), P2),
    "q8": (lambda: center_instance("Q8"), P2),
    "heis3": (lambda: center_instance("Heis(3)"), P3),
    "d8-q8": (d8_q8_instance, P2),
    "c4-v4": (c4_v4_instance, P2),
    "d16": (d16_instance, P2),
}


@pytest.mark.parametrize("name", sorted(INSTANCES))
def test_build_instances(name):
    make, C = INSTANCES[name]
    am, pair = make()
    hom, cert = theorem2_build(am, pair, C)
    assert_good(hom)
    assert cert.fully_verified and cert.ok
    img = hom.image()
    assert class_member(C, img)
    assert cert.image_order == img.order
    assert cert.derived_length is not None
    assert cert.trace


def test_build_known_image_orders():
    assert theorem2_build(*c4_instance(), P2)[1].image_order == 8
    assert theorem2_build(*center_instance("D8"), P2)[1].image_order == 32


def test_build_is_deterministic():
    am, pair = center_instance("D8")
    first = theorem2_build(am, pair, P2)
    second = theorem2_build(am, pair, P2)
    assert textio.serialize(first[0]) == textio.serialize(second[0])
    assert textio.serialize(first[1]) == textio.serialize(second[1])


def test_build_solvable_class():
    am, pair = center_instance("Q8")
    _, cert = theorem2_build(am, pair, ClassSpec.solvable())
    assert cert.fully_verified


def test_build_precondition_failures():
    am, pair = c4_instance()
    with pytest.raises(PreconditionFailed):
        theorem2_build(am, pair, P3)
    with pytest.raises(PreconditionFailed):
        theorem2_build(am, pair, ClassSpec.nilpotent())
    C4 = am.A
    bad = SeriesPair([one(C4), am.H, C4], [one(C4), one(C4), C4])
    with pytest.raises(PreconditionFailed):
        theorem2_build(am, bad, P2)
    S3 = catalog_get("S3")
    A3 = subgroup_generated(S3, [(1, 2, 0)])
    s3am = identity_amalgam(S3, S3, one(S3))
    assert not is_nilpotent(S3)[0]
    with pytest.raises(PreconditionFailed):
        theorem2_build(s3am, SeriesPair([one(S3), A3, S3], [one(S3), A3, S3]), ClassSpec.solvable())


def test_build_non_central_series_rejected():
    D8 = catalog_get("D8")
    V = next(K for K in [subgroup_generated(D8, [a, b]) for a in D8.elements for b in D8.elements] if K.order == 4 and element_order(D8.ctx, K.gens[0]) == 2 and all(element_order(D8.ctx, g) <= 2 for g in K.elements))
    am = identity_amalgam(D8, D8, one(D8))
    T = subgroup_generated(D8, [next(g for g in V.elements if g not in center(D8))])
    bad = SeriesPair([one(D8), T, V, D8], [one(D8), T, V, D8])
    with pytest.raises(PreconditionFailed):
        theorem2_build(am, bad, P2)


def test_certify_generalized_direct_product():
    am, _ = c4_instance()
    cert = certify(generalized_direct_product(am), P2)
    assert cert.fully_verified
    assert cert.image_order == 8 and cert.derived_length == 1


def test_certify_detects_broken_agreement():
    am, _ = c4_instance()
    hom = generalized_direct_product(am)
    hom.beta.mapping = dict(hom.beta.mapping)
    g = am.B.gens[0]
    k = am.phi[am.H.gens[0]]
    # swap the images of g and g^2 = phi(h); beta stays injective
    hom.beta.mapping[g], hom.beta.mapping[k] = hom.beta.mapping[k], hom.beta.mapping[g]
    cert = certify(hom, P2)
    assert cert.injective_on_B
    assert not cert.homs_verified
    assert not cert.h_agreement
    assert not cert.ok


def test_certify_partial_under_small_cap():
    am, pair = center_instance("D8")
    hom, _ = theorem2_build(am, pair, P2)
    cert = certify(hom, P2, cap=10)
    assert cert.partial
    assert cert.clauses_ok
    assert cert.derived_length_bound is not None
    assert cert.class_member_by_bound is True
    assert cert.ok and not cert.fully_verified


_BUILT = {}


def _built(name):
    if name not in _BUILT:
        make, C = INSTANCES[name]
        am, pair = make()
        _BUILT[name] = theorem2_build(am, pair, C)[0]
    return _BUILT[name]


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from(["d8", "d8-q8", "c4-v4"]),
    st.lists(st.tuples(st.booleans(), st.integers(0, 10**6)), max_size=8),
    st.integers(0, 10**6),
)
def test_rewriting_h_into_phi_preserves_value(name, raw, pick):
    hom = _built(name)
    am = hom.amalgam
    word = [("A", am.A.elements[i % am.A.order]) if side else ("B", am.B.elements[i % am.B.order]) for side, i in raw]
    h = am.H.elements[pick % am.H.order]
    pos = pick % (len(word) + 1)
    with_a = word[:pos] + [("A", h)] + word[pos:]
    with_b = word[:pos] + [("B", am.phi[h])] + word[pos:]
    assert eval_word(hom, with_a) == eval_word(hom, with_b)
