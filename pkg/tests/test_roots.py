import json

import pytest

import oracles
from rootgroups.catalog import catalog_get, cyclic, dihedral, trivial
from rootgroups.constructions import quotient, wreath_group
from rootgroups.core import (
    GroupHom,
    PermContext,
    hom_verify,
    is_normal,
    perm_from_cycles,
    perm_inv,
    perm_mul,
    subgroup_from_elements,
    subgroup_generated,
)
from rootgroups.errors import EmbedVerificationFailed, FactorsNotInClass, NotNormal, NotSubnormal
from rootgroups.roots import (
    gruenberg_search,
    gruenberg_T,
    kk_embed,
    nontrivial_normals_in_point_kernel,
    normal_subgroups,
    remak_embed,
    verify_root_closure,
)
from rootgroups.series import ClassSpec, center, class_member


def one(G):
    return subgroup_generated(G, [])


def sub(G, *cycles):
    d = G.ctx.degree
    return subgroup_generated(G, [perm_from_cycles(d, c) for c in cycles])


def d8_parts():
    D8 = catalog_get("D8")
    Z = center(D8)
    klein = [K for K in normal_subgroups(D8) if K.order == 4 and K.is_abelian() and all(perm_mul(g, g) == D8.identity for g in K.elements)]
    V = klein[0]
    non_central = next(g for g in V.elements if g not in Z)
    return D8, V, Z, subgroup_generated(D8, [non_central])


def test_normal_subgroups_counts():
    assert [N.order for N in normal_subgroups(catalog_get("S3"))] == [1, 3, 6]
    assert len(normal_subgroups(catalog_get("D8"))) == 6
    assert len(normal_subgroups(catalog_get("Q8"))) == 6
    assert [N.order for N in normal_subgroups(catalog_get("S4"))] == [1, 4, 12, 24]


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "A4", "C6", "D12"])
def test_normal_subgroups_match_oracle(name):
    G = catalog_get(name)
    found = {frozenset(N.elements) for N in normal_subgroups(G)}
    # brute force: every subgroup generated by at most two elements, kept if normal
    brute = set()
    for a in G.elements:
        for b in G.elements:
            S = frozenset(oracles.closure(perm_mul, G.identity, [a, b]))
            if oracles.is_normal(G.elements, S, perm_mul, perm_inv):
                brute.add(S)
    assert brute <= found
    assert all(oracles.is_normal(G.elements, N, perm_mul, perm_inv) for N in found)


def test_gruenberg_t_s3_a3_trivial():
    S3 = catalog_get("S3")
    A3 = subgroup_from_elements(S3, catalog_get("A3").elements)
    T, proj, cert = gruenberg_T(S3, A3, one(A3))
    assert T.order == 1
    assert cert.ok
    assert cert.order_XT == 6


def test_gruenberg_t_d8_non_central_gives_trivial():
    D8, V, Z, W2 = d8_parts()
    T, _, cert = gruenberg_T(D8, V, W2)
    assert T.order == 1
    assert cert.ok
    assert cert.conjugate_orders == [2, 2]
    assert cert.remak_target_order == 4


def test_gruenberg_t_d8_center_is_fixed():
    D8, V, Z, _ = d8_parts()
    T, _, cert = gruenberg_T(D8, V, subgroup_from_elements(V, Z.elements))
    assert T.same_elements(Z)
    assert cert.ok and cert.order_XT == 4


def test_gruenberg_t_rejects_non_subnormal():
    S3 = catalog_get("S3")
    with pytest.raises(NotSubnormal):
        gruenberg_T(S3, sub(S3, [(0, 1)]), one(S3))


def test_remak_c6():
    C6 = catalog_get("C6")
    g = C6.gens[0]
    C2 = subgroup_generated(C6, [perm_mul(perm_mul(g, g), g)])
    C3 = subgroup_generated(C6, [perm_mul(g, g)])
    r = remak_embed(C6, [C2, C3])
    assert r.verified and r.injective
    assert r.target_order == 6
    assert r.hom.source.order == 6


def test_remak_single_subgroup_is_isomorphism():
    S3 = catalog_get("S3")
    A3 = subgroup_from_elements(S3, catalog_get("A3").elements)
    r = remak_embed(S3, [A3])
    assert r.injective and r.target_order == 2 == r.hom.source.order


def test_remak_klein_three_subgroups():
    V = catalog_get("V4")
    subs = [subgroup_generated(V, [g]) for g in V.elements[1:]]
    r = remak_embed(V, subs)
    assert r.injective and r.verified
    assert r.target_order == 8
    assert r.hom.source.order == 4


def test_remak_rejects_non_normal():
    S3 = catalog_get("S3")
    with pytest.raises(NotNormal):
        remak_embed(S3, [sub(S3, [(0, 1)])])


@pytest.mark.parametrize(
    "zg, n_spec, wreath_order",
    [
        ("S3", "A3", 3**2 * 2),
        ("D8", "C4", 4**2 * 2),
        ("C4", "C2", 2**2 * 2),
        ("Q8", "C4", 4**2 * 2),
    ],
)
def test_kk_embed_examples(zg, n_spec, wreath_order):
    G = catalog_get(zg)
    n = int(n_spec[1:])
    N = next(K for K in normal_subgroups(G) if K.order == n and any(len(set(_powers(g))) == n for g in K.elements))
    emb = kk_embed(G, N)
    assert emb.wreath.order_bound == wreath_order
    assert hom_verify(emb.hom).ok
    assert len(set(emb.hom.mapping.values())) == G.order
    assert emb.transversal[emb.quotient.identity] == G.identity


def _powers(g):
    out, x = [tuple(range(len(g)))], g
    while x != out[0]:
        out.append(x)
        x = perm_mul(x, g)
    return out


def test_kk_embed_klein_in_d8():
    D8, V, _, _ = d8_parts()
    emb = kk_embed(D8, V)
    assert emb.wreath.order_bound == 4**2 * 2
    assert hom_verify(emb.hom).ok


def test_kk_embed_whole_group_as_kernel():
    S3 = catalog_get("S3")
    emb = kk_embed(S3, S3)
    assert emb.quotient.order == 1
    assert emb.wreath.order_bound == 6


def test_kk_embed_trivial_kernel():
    S3 = catalog_get("S3")
    emb = kk_embed(S3, one(S3))
    assert emb.quotient.order == 6
    assert emb.wreath.order_bound == 6


def test_kk_embed_explicit_chi():
    C4 = catalog_get("C4")
    C2 = subgroup_generated(C4, [perm_mul(C4.gens[0], C4.gens[0])])
    target = cyclic(2)
    chi = GroupHom(C2, target.ctx, {C2.identity: target.identity, C2.gens[0]: target.gens[0]})
    emb = kk_embed(C4, C2, chi, target)
    assert hom_verify(emb.hom).ok


def test_kk_embed_rejects_non_injective_chi():
    C4 = catalog_get("C4")
    C2 = subgroup_generated(C4, [perm_mul(C4.gens[0], C4.gens[0])])
    chi = GroupHom(C2, PermContext(1), {g: (0,) for g in C2.elements})
    with pytest.raises(EmbedVerificationFailed):
        kk_embed(C4, C2, chi, trivial())


def test_gruenberg_search_nilpotent_fails_on_s3():
    S3 = catalog_get("S3")
    A3 = subgroup_from_elements(S3, catalog_get("A3").elements)
    res = gruenberg_search(ClassSpec.nilpotent(), S3, A3, one(A3))
    assert not res.found
    assert res.trace == [{"T_order": 1, "quotient_order": 6, "in_class": False}]


def test_gruenberg_search_solvable_succeeds():
    S3 = catalog_get("S3")
    A3 = subgroup_from_elements(S3, catalog_get("A3").elements)
    res = gruenberg_search(ClassSpec.solvable(), S3, A3, one(A3))
    assert res.found and res.T.order == 1


def test_gruenberg_search_rejects_bad_factors():
    S3 = catalog_get("S3")
    A3 = subgroup_from_elements(S3, catalog_get("A3").elements)
    with pytest.raises(FactorsNotInClass):
        gruenberg_search(ClassSpec.p_group(2), S3, A3, one(A3))


def _catalog(names):
    return [(n, catalog_get(n)) for n in names]


@pytest.mark.parametrize("text", ["solvable", "p:2", "finite"])
def test_root_classes_pass(text):
    rep = verify_root_closure(ClassSpec.parse(text), _catalog(["C2", "C3", "V4", "S3", "D8"]), cap=5000)
    assert rep.ok
    assert rep.records


def test_nilpotent_closure_fails_with_witnesses():
    rep = verify_root_closure(ClassSpec.nilpotent(), _catalog(["C2", "C3", "S3"]), cap=5000)
    assert not rep.ok
    kinds = {(r.construction, tuple(r.operands)) for r in rep.failures}
    assert ("wreath", ("C3", "C2")) in kinds
    assert ("gruenberg", ("S3", "Y3", "Z1")) in kinds
    assert "lower central series orders [18, 3]" in rep.text()
    for line in rep.jsonl().splitlines():
        assert json.loads(line)["verdict"] in ("pass", "fail")


def test_abelian_closure_fails():
    rep = verify_root_closure(ClassSpec.abelian(), _catalog(["C2"]), cap=5000)
    assert [r.operands for r in rep.failures] == [["C2", "C2"]]


@pytest.mark.parametrize("text", ["finite", "p:2", "solvable", "nilpotent", "abelian"])
def test_is_root_matches_closure_sweep(text):
    C = ClassSpec.parse(text)
    rep = verify_root_closure(C, _catalog(["C2", "C3", "S3", "D8"]), cap=5000)
    assert rep.ok == C.is_root


def test_closure_skips_large_pairs():
    rep = verify_root_closure(ClassSpec.p_group(2), _catalog(["D8"]), cap=100)
    assert rep.skipped and all(r.construction != "wreath" for r in rep.records)


@pytest.mark.parametrize("x, y", [("C2", "C2"), ("C3", "C2"), ("C2", "S3"), ("S3", "C2")])
def test_point_kernel_has_no_normal_subgroups(x, y):
    assert nontrivial_normals_in_point_kernel(wreath_group(catalog_get(x), catalog_get(y))) == []


def test_dihedral_16_quotients():
    D16 = dihedral(16)
    Q, _ = quotient(D16, center(D16))
    assert Q.order == 8 and class_member(ClassSpec.p_group(2), Q)
    assert is_normal(D16, center(D16))
