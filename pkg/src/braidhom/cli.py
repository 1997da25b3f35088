"""Command-line frontend with stable, machine-readable outputs.

Every subcommand echoes its fully resolved job (including defaulted caps and
the chosen field) as a header, writes CSV or JSON, and is byte-for-byte
deterministic across runs.  Exit codes: 0 success, 1 verification failure,
2 usage error.

Builtin groups: S2..S6, A3..A5, Z1..Z12 (also spelled Z/n), D4.  Class
selectors: 'all', 'transpositions', 'k-cycles' (e.g. '3-cycles'), or an
explicit cycle type such as '2+2'.  A group can instead be read from a file
('degree m' header, one generator per line in cycle notation).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import braided, fnf, hurwitz, koszul, malle, nichols, qsa
from .braided import ConjClassSet, PermGroup, cycle_notation, cycle_type, identity_perm, parse_cycles
from .exactla import QQ, CoefficientField, GF


class UsageError(ValueError):
    pass


# builtin groups and class selectors ------------------------------------------

def builtin_group(name: str) -> PermGroup:
    name = name.strip()
    key = name.upper().replace("/", "")
    if key.startswith("S") and key[1:].isdigit():
        m = int(key[1:])
        if 2 <= m <= 6:
            gens = [parse_cycles("(1 2)", m)]
            if m > 2:
                gens.append(tuple(list(range(1, m)) + [0]))
            return PermGroup(m, gens, name=f"S{m}")
    if key.startswith("A") and key[1:].isdigit():
        m = int(key[1:])
        if 3 <= m <= 5:
            gens = [parse_cycles("(1 2 3)", m)]
            if m == 4:
                gens.append(parse_cycles("(2 3 4)", m))
            elif m == 5:
                gens.append(parse_cycles("(1 2 3 4 5)", m))
            return PermGroup(m, gens, name=f"A{m}")
    if key.startswith("Z") and key[1:].isdigit():
        m = int(key[1:])
        if 1 <= m <= 12:
            gen = tuple(list(range(1, m)) + [0]) if m > 1 else (0,)
            return PermGroup(m, [gen], name=f"Z{m}")
    if key == "D4":
        return PermGroup(4, [parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 3)", 4)], name="D4")
    raise UsageError(f"unknown builtin group {name!r} (try S2..S6, A3..A5, Z1..Z12, D4)")


def resolve_group(args) -> PermGroup:
    if getattr(args, "group_file", None):
        with open(args.group_file) as fh:
            return braided.load_group(fh.read(), name=args.group_file)
    if getattr(args, "group", None):
        return builtin_group(args.group)
    raise UsageError("a group is required (--group or --group-file)")


def class_selector(G: PermGroup, spec: str) -> ConjClassSet:
    spec = spec.strip().lower()
    nontrivial = [g for g in G.elements if g != identity_perm(G.degree)]
    if spec in ("all", "nontrivial"):
        elems = nontrivial
    elif spec == "transpositions":
        elems = [g for g in nontrivial if cycle_type(g) == (2,)]
    elif spec.endswith("-cycles") and spec.split("-")[0].isdigit():
        k = int(spec.split("-")[0])
        elems = [g for g in nontrivial if cycle_type(g) == (k,)]
    else:
        try:
            target = tuple(sorted((int(t) for t in spec.split("+")), reverse=True))
        except ValueError:
            raise UsageError(f"unknown class selector {spec!r}")
        elems = [g for g in nontrivial if cycle_type(g) == target]
    if not elems:
        raise UsageError(f"class selector {spec!r} matches no elements of {G.name}")
    return ConjClassSet(G, elems)


def resolve_field(args, G: PermGroup | None) -> CoefficientField:
    spec = getattr(args, "field", None)
    if spec is None:
        order = G.order if G is not None else 1
        p = 2
        while order % p == 0:
            p += 1
            while not _is_prime(p):
                p += 1
        return GF(p)
    if spec.upper() == "Q":
        return QQ
    if spec.isdigit():
        return GF(int(spec))
    raise UsageError(f"field must be 'Q' or a prime, got {spec!r}")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def resolve_space(args):
    """(braided space, group or None, class set or None) from shared V flags."""
    if getattr(args, "rank1", False):
        sigma = Fraction(getattr(args, "sigma", "1"))
        if sigma.denominator == 1:
            sigma = int(sigma)
        V = braided.rank_one_space(sigma)
        if getattr(args, "epsilon", False):
            V = braided.sign_twist(V)
        return V, None, None
    G = resolve_group(args)
    c = class_selector(G, getattr(args, "classes", None) or "all")
    rack = braided.conjugation_rack(G, c)
    x = braided.Cocycle.constant(rack, int(getattr(args, "cocycle", "1")))
    V = braided.braided_space(rack, x, epsilon=getattr(args, "epsilon", False),
                              group=G, name=f"{G.name}[{args.classes or 'all'}]")
    return V, G, c


# output plumbing --------------------------------------------------------------

def job_meta(args, extra: dict) -> dict:
    skip = {"func", "out"}
    meta = {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}
    meta.update(extra)
    return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in sorted(meta.items())}


def emit(args, meta: dict, header: list[str], rows: list[list]) -> str:
    fmt = getattr(args, "format", "csv")
    if fmt == "json":
        obj = {"meta": meta, "columns": header, "rows": rows}
        text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"# {k}={meta[k]}" for k in sorted(meta)]
        lines.append(",".join(header))
        lines.extend(",".join(str(x) for x in row) for row in rows)
        text = "\n".join(lines) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


# subcommands -------------------------------------------------------------------

def cmd_betti(args) -> int:
    V, G, _c = resolve_space(args)
    F = resolve_field(args, G)
    nmax = args.nmax or qsa.default_nmax(V)
    rows = []
    for n in range(1, nmax + 1):
        for j, r in enumerate(fnf.braid_homology(V, n, F)):
            rows.append([n, j, r])
    emit(args, job_meta(args, {"field_resolved": str(F), "nmax_resolved": nmax,
                               "space": V.name, "schema": "betti"}),
         ["n", "j", "rank"], rows)
    return 0


def cmd_ext(args) -> int:
    V, G, _c = resolve_space(args)
    F = resolve_field(args, G)
    nmax = args.nmax or qsa.default_nmax(V)
    table = qsa.ext_table(V, nmax, F)
    rows = [[s, n, r] for (s, n), r in table.items()]
    emit(args, job_meta(args, {"field_resolved": str(F), "nmax_resolved": nmax,
                               "space": V.name, "schema": "ext"}),
         ["s", "n", "rank"], rows)
    return 0


def cmd_verify(args) -> int:
    V, G, _c = resolve_space(args)
    F = resolve_field(args, G)
    nmax = args.nmax or min(qsa.default_nmax(V), 5)
    rows = []
    all_ok = True
    for n in range(1, nmax + 1):
        rep = qsa.verify_main_cor(V, n, F)
        all_ok = all_ok and rep.ok
        for j in range(n + 1):
            rows.append([n, j, rep.betti[j], rep.ext_diagonal[j],
                         "pass" if rep.ok else "FAIL"])
    emit(args, job_meta(args, {"field_resolved": str(F), "nmax_resolved": nmax,
                               "space": V.name, "schema": "verify",
                               "result": "pass" if all_ok else "fail"}),
         ["n", "j", "betti", "ext", "status"], rows)
    return 0 if all_ok else 1


def cmd_nichols(args) -> int:
    V, G, _c = resolve_space(args)
    F = resolve_field(args, G)
    nmax = args.nmax or qsa.default_nmax(V)
    dims, stable = nichols.nichols_dims(V, nmax, F)
    rows = [[n, d] for n, d in enumerate(dims)]
    emit(args, job_meta(args, {"field_resolved": str(F), "nmax_resolved": nmax,
                               "space": V.name, "stably_zero": stable,
                               "schema": "nichols"}),
         ["n", "dim"], rows)
    return 0


def cmd_orbits(args) -> int:
    G = resolve_group(args)
    c = class_selector(G, args.classes or "all")
    F = resolve_field(args, G)
    nmax = args.nmax if args.nmax is not None else 5
    lat = hurwitz.subgroup_lattice(G, c)
    rows = []
    for n in range(nmax + 1):
        table = hurwitz.hurwitz_orbits(G, c, n, cap=args.cap)
        by_sub = {}
        for rec in table.orbits:
            if rec.monodromy is None or rec.monodromy not in lat:
                continue  # the n = 0 empty word has trivial monodromy, outside the lattice
            by_sub[lat.index(rec.monodromy)] = by_sub.get(lat.index(rec.monodromy), 0) + 1
        for i in sorted(by_sub):
            rows.append([n, len(table), f"H{i}", by_sub[i]])
        if args.components:
            comps, _ = hurwitz.nielsen_components(G, c, n, F, cap=args.cap)
            rows.append([n, len(table), "components", comps])
    meta = job_meta(args, {"field_resolved": str(F), "nmax_resolved": nmax,
                           "schema": "orbits",
                           "subgroups": "; ".join(lat.describe(i) for i in range(len(lat)))})
    emit(args, meta, ["n", "orbit_count", "subgroup", "count"], rows)
    return 0


def cmd_koszul(args) -> int:
    V, G, c = resolve_space(args)
    if V.rack is None or G is None:
        raise UsageError("the koszul subcommand needs a group-based space")
    if not args.epsilon and int(args.cocycle) == 1:
        raise UsageError("the Koszul complex expects the sign-twisted space; pass --epsilon")
    F = resolve_field(args, G)
    lat = hurwitz.subgroup_lattice(G, c)
    if args.module == "R":
        spec = "R"
    else:
        kind, _, idx = args.module.partition(":")
        if kind not in ("exact", "sub") or not idx.isdigit() or int(idx) >= len(lat):
            raise UsageError("module must be 'R', 'exact:<k>', or 'sub:<k>' with k a lattice index")
        spec = (kind, lat.subgroups[int(idx)])
    K = koszul.koszul_complex(V, spec, pmax=args.pmax, qmax=args.qmax, F=F, G=G, c=c)
    table = koszul.koszul_homology(K, qmax=args.qmax - 1, by_multigrade=args.multigrade)
    rows = [list(key) + [r] for key, r in table.items()]
    rep = koszul.verify_koszul_identities(K, pr=min(args.pmax, K.pmax), qr=args.qmax - 2)
    meta = job_meta(args, {
        "field_resolved": str(F), "space": V.name, "schema": "koszul",
        "module_resolved": K.module.name, "pmax_resolved": K.pmax,
        "identities_anticommute": rep.anticommute_ok,
        "identities_trivial_action": rep.trivial_action_ok,
        "identities_nullhomotopy": rep.nullhomotopy_ok,
    })
    emit(args, meta, list(table.axes) + ["rank"], rows)
    return 0 if rep.ok else 1


def cmd_malle(args) -> int:
    G = resolve_group(args)
    c = class_selector(G, args.classes or "all")
    window = None
    if args.window:
        window = [len(hurwitz.hurwitz_orbits(G, c, n, cap=args.cap))
                  for n in range(args.window + 1)]
    mc = malle.malle_constants(G, c, orbit_window=window)
    rows = [[i, cycle_notation(cl[0]), len(cl), ind]
            for i, (cl, ind) in enumerate(zip(c.classes, mc.class_indices))]
    extra = {"a": str(mc.a), "center_order": mc.center_order,
             "rational_classes": c.rational, "schema": "malle"}
    if window is not None:
        extra["growth_degree_windowed"] = "none" if mc.growth_degree is None else mc.growth_degree
        extra["orbit_window"] = " ".join(str(v) for v in window)
    emit(args, job_meta(args, extra), ["class", "representative", "size", "ind"], rows)
    return 0


def cmd_bound(args) -> int:
    if args.betti_file:
        with open(args.betti_file) as fh:
            betti = [int(t) for t in fh.read().replace(",", " ").split()]
    else:
        betti = [int(t) for t in args.betti.split(",")]
    b = malle.point_count_bound(args.q, args.n, betti, d=args.d)
    val = b.value()
    rows = [[str(b.rational_part), str(b.sqrt_part), str(val),
             str(b.normalized[0]), str(b.normalized[1])]]
    emit(args, job_meta(args, {"schema": "bound"}),
         ["rational_part", "sqrt_part", "value", "normalized_rational", "normalized_sqrt"],
         rows)
    return 0


# parser ------------------------------------------------------------------------

def _add_space_flags(p, group_required=False):
    p.add_argument("--group", help="builtin group name (S2..S6, A3..A5, Z1..Z12, D4)")
    p.add_argument("--group-file", help="group file: 'degree m' header, one generator per line")
    p.add_argument("--classes", help="class selector: all, transpositions, 3-cycles, or a cycle type like 2+2")
    p.add_argument("--cocycle", default="1", choices=["1", "-1"], help="constant rack cocycle")
    p.add_argument("--epsilon", action="store_true", help="apply the sign twist to the braiding")
    if not group_required:
        p.add_argument("--rank1", action="store_true", help="use a rank-one space instead of a group")
        p.add_argument("--sigma", default="1", help="braiding scalar for --rank1 (integer or fraction)")


def _add_common(p):
    p.add_argument("--field", help="'Q' or a prime p (default: smallest prime not dividing |G|)")
    p.add_argument("--format", default="csv", choices=["csv", "json"])
    p.add_argument("--out", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="braidhom",
                                 description="Exact braid group homology, shuffle algebra Ext, "
                                             "Hurwitz orbits, and related tables.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="braid group homology ranks H_j(B_n; V^n)")
    _add_space_flags(p)
    p.add_argument("--nmax", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("ext", help="Ext ranks of the quantum shuffle algebra")
    _add_space_flags(p)
    p.add_argument("--nmax", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("verify", help="cross-check braid homology against the Ext table")
    _add_space_flags(p)
    p.add_argument("--nmax", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("nichols", help="Nichols algebra Hilbert dimensions")
    _add_space_flags(p)
    p.add_argument("--nmax", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_nichols)

    p = sub.add_parser("orbits", help="Hurwitz orbit counts and monodromy stratification")
    _add_space_flags(p, group_required=True)
    p.add_argument("--nmax", type=int)
    p.add_argument("--components", action="store_true", help="also count connected-cover components")
    p.add_argument("--cap", type=int, default=hurwitz.DEFAULT_STATE_CAP)
    _add_common(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("koszul", help="Koszul complex homology and identity checks")
    _add_space_flags(p, group_required=True)
    p.add_argument("--module", default="R", help="'R', 'exact:<k>', or 'sub:<k>' (k = lattice index)")
    p.add_argument("--pmax", type=int, default=4)
    p.add_argument("--qmax", type=int, default=6)
    p.add_argument("--multigrade", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("malle", help="index arithmetic: per-class ind, a(G,c), center order")
    _add_space_flags(p, group_required=True)
    p.add_argument("--window", type=int, help="also fit a growth degree to orbit counts up to this n")
    p.add_argument("--cap", type=int, default=hurwitz.DEFAULT_STATE_CAP)
    _add_common(p)
    p.set_defaults(func=cmd_malle)

    p = sub.add_parser("bound", help="point-count upper bound from a Betti vector")
    p.add_argument("--betti", help="comma-separated ranks b_0,b_1,...")
    p.add_argument("--betti-file", help="file of whitespace- or comma-separated ranks")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_bound)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
