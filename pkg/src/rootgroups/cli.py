"""Batch command line interface.

Group arguments are catalog names (``cyclic(4)``, ``D8``, ``Q8`` ...) or
``@FILE`` pointing at a serialized group.  Subgroup arguments are resolved
against their parent and may also be ``center``, ``derived``, ``trivial``,
``whole`` or ``gens:<cycles>;<cycles>`` (cycle notation in the parent's
degree).

Exit status: 0 verified, 1 counterexample or failed check, 2 error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import textio
from .amalgam import AmalgamHom, eval_word, identity_amalgam, theorem2_build
from .catalog import DEFAULT_CATALOG, canonical_name, catalog_get
from .constructions import normal_core, quotient, wreath_group, wreath_order
from .core import (
    DEFAULT_CAP,
    FiniteGroup,
    PermContext,
    exponent,
    generate,
    hom_injective_on,
    hom_verify,
    is_normal,
    parse_cycles,
    subgroup_from_elements,
    subgroup_generated,
)
from .errors import GroupError
from .roots import gruenberg_search, gruenberg_T, kk_embed, verify_root_closure
from .series import (
    ClassSpec,
    SeriesPair,
    center,
    commutator_subgroup,
    derived_length,
    derived_series,
    lower_central_series,
    nilpotency_class,
)


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def load_group(spec: str) -> FiniteGroup:
    if spec.startswith("@"):
        obj = textio.deserialize(_read(spec[1:]))
        if not isinstance(obj, FiniteGroup):
            raise CliError(f"{spec[1:]} does not contain a group")
        return obj
    return catalog_get(spec)


def load_subgroup(parent: FiniteGroup, spec: str) -> FiniteGroup:
    if spec == "center":
        return center(parent)
    if spec == "derived":
        return commutator_subgroup(parent, parent, parent)
    if spec == "trivial":
        return generate(parent.ctx, [parent.identity], 1)
    if spec == "whole":
        return parent
    if spec.startswith("gens:"):
        if not isinstance(parent.ctx, PermContext):
            raise CliError("gens: subgroups need a permutation group")
        try:
            gens = [parse_cycles(parent.ctx.degree, c) for c in spec[5:].split(";") if c.strip()]
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        return subgroup_generated(parent, gens or [parent.identity])
    G = load_group(spec)
    if G.ctx != parent.ctx or not G.is_subgroup_of(parent):
        raise CliError(f"{spec} is not a subgroup of the given group")
    return subgroup_from_elements(parent, G.elements)


def parse_class(values: list[str] | None) -> ClassSpec:
    if not values:
        raise CliError("--class is required")
    try:
        return ClassSpec.intersection(*(ClassSpec.parse(v) for v in values))
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _yes(b) -> str:
    return "yes" if b else "no"


def _fingerprint(G: FiniteGroup) -> list[str]:
    return [
        f"order {G.order}",
        f"exponent {exponent(G)}",
        f"abelian {_yes(G.is_abelian())}",
        f"nilpotency class {nilpotency_class(G) if nilpotency_class(G) is not None else 'not nilpotent'}",
        f"derived length {derived_length(G) if derived_length(G) is not None else 'not solvable'}",
    ]


# COMMANDS
# --------


def cmd_catalog(args) -> int:
    names = [args.name] if args.name else list(DEFAULT_CATALOG)
    for n in names:
        G = catalog_get(n)
        if args.name:
            print(textio.serialize(G), end="")
        else:
            print(f"{canonical_name(n)}: order {G.order}")
    return 0


def cmd_wreath(args) -> int:
    X, Y = load_group(args.X), load_group(args.Y)
    bound = wreath_order(X, Y)
    W = wreath_group(X, Y, args.cap)
    print(f"wreath {args.X} {args.Y}")
    print(f"expected order {bound}")
    for ln in _fingerprint(W):
        print(ln)
    if args.out:
        _write(args.out, textio.serialize(W))
    return 0 if W.order == bound else 1


def cmd_quotient(args) -> int:
    G = load_group(args.G)
    N = load_subgroup(G, args.N)
    Q, proj = quotient(G, N)
    rep = hom_verify(proj)
    print(f"quotient {args.G} by {args.N}: |G|={G.order} |N|={N.order}")
    for ln in _fingerprint(Q):
        print(ln)
    print(f"projection verified {_yes(rep.ok)} ({rep.method})")
    if args.out:
        _write(args.out, textio.serialize(Q))
    return 0 if rep.ok else 1


def cmd_series(args) -> int:
    G = load_group(args.G)
    print(f"series {args.G}")
    for ln in _fingerprint(G):
        print(ln)
    print(f"center order {center(G).order}")
    print("lower central series orders " + " ".join(map(str, lower_central_series(G).orders)))
    print("derived series orders " + " ".join(map(str, derived_series(G).orders)))
    return 0


def cmd_core(args) -> int:
    G = load_group(args.G)
    Z = load_subgroup(G, args.Z)
    T = normal_core(G, Z)
    ctx = G.ctx
    brute = set(Z.elements)
    for g in G.elements:
        gi = ctx.inv(g)
        brute &= {ctx.mul(ctx.mul(gi, z), g) for z in Z.elements}
    agree = brute == set(T.elements)
    print(f"core of subgroup of order {Z.order} in {args.G}: order {T.order}")
    print(f"normal {_yes(is_normal(G, T))}")
    print(f"matches intersection of all conjugates {_yes(agree)}")
    if args.out:
        _write(args.out, textio.serialize(T))
    return 0 if agree else 1


def cmd_gruenberg(args) -> int:
    C = parse_class(args.cls)
    X = load_group(args.X)
    Y = load_subgroup(X, args.Y)
    Z = load_subgroup(Y, args.Z)
    T, proj, cert = gruenberg_T(X, Y, Z)
    print(f"chain |X|={X.order} |Y|={Y.order} |Z|={Z.order}")
    print(f"coset intersection T: order {T.order}, normal {_yes(cert.T_normal_in_X)}, inside Z {_yes(cert.T_inside_Z)}")
    print(f"Remak embedding of Y/T (order {cert.order_YT}) into product of order {cert.remak_target_order}: injective {_yes(cert.remak_injective)}")
    print(f"|X/T| = {cert.order_XT} = {cert.order_YT} * {cert.index_XY}: {_yes(cert.ok)}")
    res = gruenberg_search(C, X, Y, Z)
    for step in res.trace:
        print(f"search T order {step['T_order']}: X/T order {step['quotient_order']} in {C.name}: {_yes(step['in_class'])}")
    if res.found:
        print(f"witness T of order {res.T.order}")
    else:
        print(f"no normal T inside Z with X/T in {C.name}: Gruenberg condition fails")
    return 0 if res.found and cert.ok else 1


def _catalog_from(args) -> list[tuple[str, FiniteGroup]]:
    if args.catalog:
        names = [ln.strip() for ln in _read(args.catalog).splitlines() if ln.strip() and not ln.startswith("#")]
    else:
        names = list(DEFAULT_CATALOG)
    return [(n, load_group(n)) for n in names]


def cmd_verify_root(args) -> int:
    C = parse_class(args.cls)
    report = verify_root_closure(C, _catalog_from(args), args.cap, args.triple_limit)
    print(report.text())
    if args.jsonl:
        _write(args.jsonl, report.jsonl() + "\n")
    return 0 if report.ok else 1


def cmd_kk_embed(args) -> int:
    Zg = load_group(args.Z)
    N = load_subgroup(Zg, args.N)
    emb = kk_embed(Zg, N)
    verified = hom_verify(emb.hom).ok
    inj = hom_injective_on(emb.hom, Zg.elements)
    print(f"embedding of group of order {Zg.order} into X wr Q with |X|={N.order} |Q|={emb.quotient.order}")
    print(f"wreath order {emb.wreath.order_bound}")
    print(f"homomorphism verified {_yes(verified)}")
    print(f"injective {_yes(inj)}")
    if args.out:
        _write(args.out, textio.serialize(emb.hom))
    return 0 if verified and inj else 1


def cmd_amalgam_build(args) -> int:
    C = parse_class(args.cls)
    am = textio.deserialize(_read(args.amalgam))
    pair = textio.deserialize(_read(args.series))
    hom, cert = theorem2_build(am, pair, C, args.cap)
    text = textio.serialize(cert)
    print(text, end="")
    if args.out:
        _write(args.out, text)
    if args.hom_out:
        _write(args.hom_out, textio.serialize(hom))
    return 0 if cert.ok else 1


def cmd_eval_word(args) -> int:
    h = textio.deserialize(_read(args.hom))
    if not isinstance(h, AmalgamHom):
        raise CliError(f"{args.hom} does not contain an amalgam homomorphism")
    word = []
    for tok in args.word:
        tag, _, key = tok.partition(":")
        if tag not in ("A", "B"):
            raise CliError(f"letter {tok!r} must start with A: or B:")
        G = h.amalgam.A if tag == "A" else h.amalgam.B
        try:
            g = G.ctx.parse_element(key)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        if g not in G:
            raise CliError(f"{key} is not an element of {tag}")
        word.append((tag, g))
    img = eval_word(h, word)
    print(h.target.format_element(img))
    print(f"identity {_yes(img == h.target.identity)}")
    return 0


DEMOS = {
    "c4": ("cyclic(4)", "p:2"),
    "d8": ("dihedral(8)", "p:2"),
    "heis3": ("heisenberg(3)", "p:3"),
}


def cmd_amalgam_demo(args) -> int:
    """Write one of the desk amalgams: two copies of a group amalgamated along the center, series 1 <= Z <= G."""
    if args.name == "c4":
        G = catalog_get("cyclic(4)")
        H = subgroup_generated(G, [G.ctx.mul(G.gens[0], G.gens[0])])
    else:
        G = catalog_get(DEMOS[args.name][0])
        H = center(G)
    am = identity_amalgam(G, G, H)
    one = generate(G.ctx, [G.identity], 1)
    chain = [one, H, G]
    _write(args.amalgam_out, textio.serialize(am))
    _write(args.series_out, textio.serialize(SeriesPair(chain, list(chain))))
    print(f"{args.name}: |A|=|B|={G.order} |H|={H.order}, suggested class {DEMOS[args.name][1]}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rootgroups", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
        return sp

    sp = add("catalog", cmd_catalog, "list catalog entries or print one as a group record")
    sp.add_argument("name", nargs="?")
    sp = add("wreath", cmd_wreath, "enumerate X wr Y")
    sp.add_argument("X")
    sp.add_argument("Y")
    sp.add_argument("--out")
    sp = add("quotient", cmd_quotient, "quotient by a normal subgroup")
    sp.add_argument("G")
    sp.add_argument("N")
    sp.add_argument("--out")
    sp = add("series", cmd_series, "center, lower central and derived series")
    sp.add_argument("G")
    sp = add("core", cmd_core, "normal core of a subgroup")
    sp.add_argument("G")
    sp.add_argument("Z")
    sp.add_argument("--out")
    sp = add("gruenberg", cmd_gruenberg, "Gruenberg witness for a subnormal chain Z <| Y <| X")
    sp.add_argument("X")
    sp.add_argument("Y")
    sp.add_argument("Z")
    sp.add_argument("--class", dest="cls", action="append")
    sp = add("verify-root", cmd_verify_root, "closure evidence for a class over a catalog")
    sp.add_argument("--class", dest="cls", action="append")
    sp.add_argument("--catalog")
    sp.add_argument("--triple-limit", type=int, default=200)
    sp.add_argument("--jsonl")
    sp = add("kk-embed", cmd_kk_embed, "embed an extension of N into N wr (Z/N)")
    sp.add_argument("Z")
    sp.add_argument("N")
    sp.add_argument("--out")
    sp = add("amalgam-build", cmd_amalgam_build, "solvable quotient of an amalgam, injective on both factors")
    sp.add_argument("--amalgam", required=True)
    sp.add_argument("--series", required=True)
    sp.add_argument("--class", dest="cls", action="append")
    sp.add_argument("--out")
    sp.add_argument("--hom-out")
    sp = add("eval-word", cmd_eval_word, "evaluate a tagged word under an amalgam homomorphism")
    sp.add_argument("--hom", required=True)
    sp.add_argument("word", nargs="*", help="letters A:<key> or B:<key>")
    sp = add("amalgam-demo", cmd_amalgam_demo, "write a desk amalgam and its series")
    sp.add_argument("name", choices=sorted(DEMOS))
    sp.add_argument("--amalgam-out", required=True)
    sp.add_argument("--series-out", required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, GroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
