"""Command-line front end: ``fusioncat <group> <command> [flags]``.

Exit status is 0 on success, 2 on usage errors and 1 on domain errors (the
error class name is printed on stderr).  ``--json`` prints a single object
with ``command``, ``inputs`` and ``result`` keys.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction
from typing import Callable

from . import center as ctr
from . import channels as ch
from . import lsm
from . import spin_chain as sc
from . import temperley_lieb as tl
from .catalog import catalog_names, resolve_ring
from .errors import FusionCatError
from .fusion_ring import (
    format_ring,
    fp_dimensions,
    is_integral,
    regular_object,
    tensor_multiplicities,
    verify_ring,
)

__all__ = ["run", "main", "COMMANDS"]


def _num(x):
    """JSON number: integers stay integers, reals get 12 significant digits."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(f"{float(x):.12g}")
    if isinstance(x, float):
        return float(f"{x:.12g}")
    return x


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


def _table(headers, rows) -> list[str]:
    cells = [[str(h) for h in headers]] + [[_fmt(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    out = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    out.insert(1, "  ".join("-" * w for w in widths))
    return out


def _parse_group(text: str) -> ctr.AbelianGroup:
    try:
        return ctr.parse_group(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_elements(G: ctr.AbelianGroup, spec: str) -> list[tuple[int, ...]]:
    """Generators ``"1"`` or ``"1,0;0,1"`` (semicolon between elements)."""
    gens = []
    for part in spec.replace(" ", "").split(";"):
        if not part:
            continue
        coords = [int(v) for v in part.strip("()").split(",")]
        gens.append(G.normalize(coords))
    return gens


def _ring(args):
    return resolve_ring(args.ring)


def _object(ring, spec: str):
    vec = [0] * ring.rank
    for part in spec.split("+"):
        vec[ring.index(part.strip())] += 1
    return vec


def _combo(ring, spec: str) -> ch.ChannelCombo:
    weights = {}
    for part in spec.split(","):
        label, _, w = part.partition(":")
        weights[label.strip()] = Fraction(w) if w else Fraction(1)
    return ch.combo(ring, weights)


def _combo_json(c: ch.ChannelCombo) -> dict:
    return {l: _num(v) for l, v in zip(c.ring.labels, c.exact or c.coefficients) if v}


def _combo_text(c: ch.ChannelCombo) -> str:
    values = c.exact or c.coefficients
    return " + ".join(f"{_fmt(v)}*L[{l}]" for l, v in zip(c.ring.labels, values) if v)


def _lag_json(L: ctr.Lagrangian) -> dict:
    return {"label": L.label(), "elements": [list(x) for x in L.elements], "generators": [list(g) for g in L.subgroup.generators]}


# --- handlers: each returns (result, text lines) ------------------------------


def ring_list(args):
    """list catalog names"""
    names = catalog_names()
    return {"names": names}, names


def ring_verify(args):
    """check the fusion-ring axioms"""
    entry = _ring(args)
    rep = verify_ring(entry.ring)
    result = {"ring": entry.ring.name, "passed": rep.passed, "axiom": rep.axiom, "witness": rep.witness and list(rep.witness), "message": rep.message}
    return result, [f"{entry.ring.name}: {'pass' if rep.passed else 'FAIL'} ({rep.message})"]


def ring_dims(args):
    """Frobenius-Perron dimensions"""
    ring = _ring(args).ring
    dims = fp_dimensions(ring)
    rows = list(zip(ring.labels, dims.values))
    result = {"ring": ring.name, "dimensions": {l: _num(d) for l, d in rows}, "global_dimension": _num(dims.global_dimension)}
    return result, _table(["label", "d"], rows) + [f"Dim = {dims.global_dimension:.12g}"]


def ring_integral(args):
    """integrality of the dimensions"""
    ring = _ring(args).ring
    v = is_integral(ring)
    result = {"ring": ring.name, "integral": v.integral, "integers": v.integers and list(v.integers),
              "non_integral": {l: _num(d) for l, d in v.non_integral}}
    text = f"{ring.name}: integral {list(v.integers)}" if v.integral else (
        f"{ring.name}: not integral (" + ", ".join(f"d_{l} = {d:.10g}" for l, d in v.non_integral) + ")")
    return result, [text]


def ring_fuse(args):
    """multiplicities of a tensor word"""
    ring = _ring(args).ring
    word = [w.strip() for w in args.word.split(",") if w.strip()]
    m = tensor_multiplicities(ring, [_object(ring, w) for w in word])
    return {"ring": ring.name, "word": word, "multiplicities": dict(zip(ring.labels, m))}, _table(["label", "multiplicity"], zip(ring.labels, m))


def ring_regular(args):
    """regular object of an integral ring"""
    ring = _ring(args).ring
    R = regular_object(ring)
    return {"ring": ring.name, "regular": dict(zip(ring.labels, R))}, _table(["label", "multiplicity"], zip(ring.labels, R))


def ring_export(args):
    """print the ring in text format"""
    ring = _ring(args).ring
    text = format_ring(ring)
    return {"ring": ring.name, "text": text}, text.rstrip("\n").split("\n")


def center_lagrangians(args):
    """enumerate Lagrangian subgroups"""
    M = ctr.center_of_pointed(args.group)
    lags = ctr.enumerate_lagrangians(M)
    rows = [(i, L.label(), " ".join(f"({','.join(map(str, g))})" for g in L.subgroup.generators) or "-") for i, L in enumerate(lags)]
    return {"group": str(args.group), "count": len(lags), "lagrangians": [_lag_json(L) for L in lags]}, (
        _table(["#", "lagrangian", "generators"], rows) + [f"count: {len(lags)}"])


def center_from_pair(args):
    """Lagrangian L_H from generators of H"""
    M = ctr.center_of_pointed(args.group)
    H = ctr.Subgroup.generated_by(args.group, _parse_elements(args.group, args.h))
    L = ctr.lagrangian_from_pair(M, H)
    return {"group": str(args.group), "H": [list(h) for h in H], "lagrangian": _lag_json(L)}, [
        f"H = {{{', '.join(map(str, H.elements))}}}", f"L_(H,1) = {L.label()}"]


def center_anomaly(args):
    """anomaly verdict for the TY duality"""
    M = ctr.center_of_pointed(args.group)
    phi = ctr.ty_duality_auto(M, args.s)
    v = ctr.anomaly_verdict(M, phi)
    orbits = [[v.lagrangians[i].label() for i in o] for o in v.orbits]
    result = {"group": str(args.group), "s": args.s, "anomalous": v.anomalous, "automorphism_order": phi.order,
              "orbits": orbits, "fixed": [L.label() for L in v.fixed]}
    lines = [f"duality (a,g) -> ({args.s}g, {args.s}^-1 a) on Z(Vec({args.group})), order {phi.order}"]
    lines += _table(["orbit", "lagrangians"], [(i, " | ".join(o)) for i, o in enumerate(orbits)])
    lines.append("anomalous: no fixed Lagrangian" if v.anomalous else f"not anomalous: {len(v.fixed)} fixed")
    return result, lines


def center_boundaries(args):
    """count gapped boundaries of a finite group"""
    b = ctr.boundary_count_group(args.group)
    rows = [(c.name, c.order, c.class_size, c.multiplier) for c in b.classes]
    result = {"group": b.group, "classes": [dict(zip(["name", "order", "class_size", "multiplier"], r)) for r in rows], "total": b.total}
    return result, _table(["subgroup", "order", "conjugates", "|H^2|"], rows) + [f"total: {b.total}"]


def center_forced(args):
    """is a fixed point forced for a Z/p action"""
    forced = ctr.orbit_fixed_point_forced(args.count, args.order)
    return {"count": args.count, "order": args.order, "forced": forced}, [
        f"{args.count} points under Z/{args.order}: fixed point {'forced' if forced else 'not forced'}"]


def channels_table(args):
    """vertex channel table and conditional expectation"""
    ring = _ring(args).ring
    table = ch.composition_table(ring)
    E = ch.conditional_expectation(ring)
    rows = [(x, y, _combo_text(c)) for (x, y), c in table.items()]
    result = {"ring": ring.name, "compositions": [{"x": x, "y": y, "result": _combo_json(c)} for (x, y), c in table.items()],
              "conditional_expectation": _combo_json(E)}
    return result, _table(["X", "Y", "lambda_X o lambda_Y"], rows) + [f"E = {_combo_text(E)}"]


def channels_compose(args):
    """compose two channel combinations"""
    ring = _ring(args).ring
    a, b = _combo(ring, args.a), _combo(ring, args.b)
    c = ch.combo_compose(a, b)
    return {"ring": ring.name, "a": _combo_json(a), "b": _combo_json(b), "result": _combo_json(c)}, [_combo_text(c)]


def chain_dims(args):
    """chain Hilbert-space dimensions"""
    ring = _ring(args).ring
    dims = sc.chain_dims(ring, _object(ring, args.object), args.n)
    return {"ring": ring.name, "object": args.object, "dims": dims}, _table(["k", "dim End(X^k)"], enumerate(dims, start=1))


def chain_regular(args):
    """bigraded regular object"""
    ring = _ring(args).ring
    b = sc.regular_bigraded(ring)
    rows = [(ring.labels[x],) + row for x, row in enumerate(b.dims)]
    return {"ring": ring.name, "dims": [list(r) for r in b.dims], "onsite_dimension": b.onsite_dimension}, (
        _table(["X \\ Y"] + list(ring.labels), rows) + [f"d = {b.onsite_dimension}"])


def chain_embedding(args):
    """embedding dimension check"""
    ring = _ring(args).ring
    r = sc.embedding_dim_check(ring, args.k)
    result = {"ring": ring.name, "k": r.k, "power_matches": r.power_matches, "squared_sum": r.squared_sum,
              "bound": r.bound, "passed": r.passed}
    return result, [f"D^{r.k} == d_X d_Y d^{r.k - 1}: {r.power_matches}", f"{r.squared_sum} <= {r.bound}: {r.bound_holds}",
                    "pass" if r.passed else "FAIL"]


def chain_kw_pauli(args):
    """Pauli Kramers-Wannier map check"""
    v = sc.pauli_kw_check(args.n)
    result = {"n": v.n, "passed": v.passed, "surviving": v.surviving, "pairs_checked": v.pairs_checked,
              "failures": [list(f) for f in v.failures]}
    return result, [f"n = {v.n}: {v.surviving} surviving generators, {v.pairs_checked} pairs, {'pass' if v.passed else 'FAIL'}"]


def tl_dim(args):
    """dimension of the Temperley-Lieb algebra"""
    d = tl.tl_dim(args.m)
    return {"m": args.m, "dim": d}, [f"dim TL_{args.m} = {d}"]


def tl_semisimple(args):
    """dimension of the semisimple quotient"""
    d = tl.semisimple_dims(args.k, args.m)
    return {"k": args.k, "m": args.m, "dim": d}, [f"dim TL_{args.m}(delta_{args.k}) / negligibles = {d}"]


def tl_jw(args):
    """Jones-Wenzl projector checks"""
    delta = tl.loop_parameter(args.k)
    jw = tl.jones_wenzl(args.p, delta)
    idem = (jw * jw - jw).max_abs()
    ann = max((tl.jones_projection(i, args.p, delta) * jw).max_abs() for i in range(1, args.p)) if args.p > 1 else 0.0
    result = {"p": args.p, "k": args.k, "delta": _num(delta), "terms": len(jw), "idempotence_error": _num(idem),
              "annihilation_error": _num(ann), "trace": _num(float(tl.markov_trace(jw)))}
    return result, [f"JW_{args.p} at delta = {delta:.12g}: {len(jw)} diagrams",
                    f"|JW^2 - JW| = {idem:.3g}, max |e_i JW| = {ann:.3g}, trace = {float(tl.markov_trace(jw)):.6g}"]


def tl_relations(args):
    """Jones projection relations"""
    delta = tl.loop_parameter(args.k)
    e = {i: tl.jones_projection(i, args.m, delta) for i in range(1, args.m)}
    worst = 0.0
    for i in e:
        worst = max(worst, (tl.multiply(e[i], e[i]) - e[i]).max_abs())
        for j in e:
            if abs(i - j) >= 2:
                worst = max(worst, (e[i] * e[j] - e[j] * e[i]).max_abs())
            elif abs(i - j) == 1:
                worst = max(worst, (e[i] * e[j] * e[i] - e[i].scale(1 / delta ** 2)).max_abs())
    ok = worst <= 1e-10
    return {"m": args.m, "k": args.k, "max_error": _num(worst), "passed": ok}, [
        f"Jones projection relations in TL_{args.m}(delta_{args.k}): max error {worst:.3g}, {'pass' if ok else 'FAIL'}"]


def tl_kw_check(args):
    """half-shift duality checks"""
    v = tl.kw_shift_check(args.k, args.m)
    return {"k": v.k, "m": v.m, "delta": _num(v.delta), "passed": v.passed, "checks": len(v.checks), "failures": list(v.failures)}, [
        f"k = {v.k}, m = {v.m}: {len(v.checks)} checks, {'pass' if v.passed else 'FAIL: ' + ', '.join(v.failures)}"]


def lsm_verdict(args):
    """gapped/gapless verdict"""
    entry = _ring(args)
    v = lsm.lsm_verdict(entry)
    return {"ring": entry.ring.name, "kind": v.kind, "reason": v.reason, "vacua_count": v.vacua_count}, [f"{v.kind} ({v.reason})"]


def lsm_fiber(args):
    """fiber-functor status"""
    entry = _ring(args)
    v = lsm.fiber_functor_verdict(entry)
    return {"ring": entry.ring.name, "status": v.status, "witness": v.witness, "dimension": _num(v.dimension), "reason": v.reason}, [
        f"{v.status} ({v.reason})"]


def lsm_realizability(args):
    """realizability report"""
    r = lsm.realizability_report(_ring(args))
    result = {"ring": r.ring, "anyon_chain": r.anyon_chain, "tensor_product": r.tensor_product, "onsite_tensor_product": r.onsite_tensor_product}
    return result, _table(["ring", "anyon chain", "tensor product", "on-site"], [(r.ring, r.anyon_chain, r.tensor_product, r.onsite_tensor_product)])


def lsm_vacua(args):
    """ground-state count for two Lagrangians"""
    G = args.group
    M = ctr.center_of_pointed(G)
    state = ctr.lagrangian_from_pair(M, _parse_elements(G, args.state))  # H^perp x H
    ext = ctr.lagrangian_from_pair(M, _parse_elements(G, args.ext))
    n = lsm.vacua_count(state, ext)
    return {"group": str(G), "state": state.label(), "ext": ext.label(), "vacua": n}, [
        f"vacua({state.label()}, {ext.label()}) = {n}"]


def lsm_duality(args):
    """gaplessness from a duality"""
    M = ctr.center_of_pointed(args.group)
    v = lsm.duality_gapless_verdict(M, ctr.ty_duality_auto(M, args.s))
    evidence = {k: [[list(map(list, L)) for L in o] if k == "orbits" else list(map(list, o)) for o in val] for k, val in v.evidence.items()}
    return {"group": str(args.group), "s": args.s, "kind": v.kind, "reason": v.reason, "evidence": evidence}, [f"{v.kind} ({v.reason})"]


# --- parser -------------------------------------------------------------------

# (group, command) -> (handler, flags, module operations reached)
COMMANDS: dict[tuple[str, str], tuple[Callable, list[str], list[str]]] = {
    ("ring", "list"): (ring_list, [], ["catalog.build_named"]),
    ("ring", "verify"): (ring_verify, ["ring"], ["fusion_ring.verify_ring"]),
    ("ring", "dims"): (ring_dims, ["ring"], ["fusion_ring.fp_dimensions"]),
    ("ring", "integral"): (ring_integral, ["ring"], ["fusion_ring.is_integral"]),
    ("ring", "fuse"): (ring_fuse, ["ring", "word"], ["fusion_ring.tensor_multiplicities"]),
    ("ring", "regular"): (ring_regular, ["ring"], ["fusion_ring.regular_object"]),
    ("ring", "export"): (ring_export, ["ring"], ["fusion_ring.format_ring", "catalog.build_pointed", "catalog.build_ty", "catalog.build_psu2"]),
    ("center", "lagrangians"): (center_lagrangians, ["group"], ["center.center_of_pointed", "center.enumerate_lagrangians"]),
    ("center", "from-pair"): (center_from_pair, ["group", "h"], ["center.lagrangian_from_pair"]),
    ("center", "anomaly"): (center_anomaly, ["group", "s"], ["center.ty_duality_auto", "center.anomaly_verdict"]),
    ("center", "boundaries"): (center_boundaries, ["group-name"], ["center.boundary_count_group"]),
    ("center", "forced"): (center_forced, ["count", "order"], ["center.orbit_fixed_point_forced"]),
    ("channels", "table"): (channels_table, ["ring"], ["channels.lambda_compose", "channels.conditional_expectation"]),
    ("channels", "compose"): (channels_compose, ["ring", "a", "b"], ["channels.combo_compose"]),
    ("chain", "dims"): (chain_dims, ["ring", "object", "n"], ["spin_chain.chain_dims"]),
    ("chain", "regular"): (chain_regular, ["ring"], ["spin_chain.regular_bigraded"]),
    ("chain", "embedding"): (chain_embedding, ["ring", "k"], ["spin_chain.embedding_dim_check"]),
    ("chain", "kw-pauli"): (chain_kw_pauli, ["n"], ["spin_chain.pauli_kw_check"]),
    ("tl", "dim"): (tl_dim, ["m"], ["temperley_lieb.tl_dim"]),
    ("tl", "semisimple"): (tl_semisimple, ["k", "m"], ["temperley_lieb.semisimple_dims"]),
    ("tl", "jw"): (tl_jw, ["p", "k"], ["temperley_lieb.jones_wenzl"]),
    ("tl", "relations"): (tl_relations, ["m", "k"], ["temperley_lieb.jones_projection", "temperley_lieb.multiply"]),
    ("tl", "kw-check"): (tl_kw_check, ["k", "m"], ["temperley_lieb.kw_shift_check"]),
    ("lsm", "verdict"): (lsm_verdict, ["ring"], ["lsm.lsm_verdict"]),
    ("lsm", "fiber"): (lsm_fiber, ["ring"], ["lsm.fiber_functor_verdict"]),
    ("lsm", "realizability"): (lsm_realizability, ["ring"], ["lsm.realizability_report"]),
    ("lsm", "vacua"): (lsm_vacua, ["group", "state", "ext"], ["lsm.vacua_count"]),
    ("lsm", "duality"): (lsm_duality, ["group", "s"], ["lsm.duality_gapless_verdict"]),
}

_FLAGS = {
    "ring": dict(required=True, help="catalog name or path to a ring file"),
    "group": dict(required=True, type=_parse_group, help="Z/n or Z/a x Z/b"),
    "group-name": dict(required=True, dest="group", help="s3, s4, a4, d4, q8, dN or zN"),
    "word": dict(required=True, help="comma-separated labels, e.g. tau,tau"),
    "object": dict(required=True, help="label or sum of labels, e.g. X_0+X_1"),
    "h": dict(required=True, help="generators of H, e.g. 2 or '1,0;0,1' (empty for trivial)"),
    "state": dict(required=True, help="generators of H for the state Lagrangian L_H"),
    "ext": dict(required=True, help="generators of H for the extension Lagrangian L_H"),
    "a": dict(required=True, help="combo, e.g. '1:1/2,psi:1/2'"),
    "b": dict(required=True, help="combo, e.g. sigma"),
    "n": dict(required=True, type=int),
    "m": dict(required=True, type=int),
    "k": dict(required=True, type=int),
    "p": dict(required=True, type=int),
    "s": dict(required=True, type=int),
    "count": dict(required=True, type=int),
    "order": dict(required=True, type=int),
}


GROUP_HELP = {
    "ring": "fusion-ring axioms, dimensions and fusion",
    "center": "Lagrangians, dualities and boundary counts",
    "channels": "hypergroup channel composition",
    "chain": "chain Hilbert-space dimensions and Pauli KW map",
    "tl": "Temperley-Lieb algebra and Jones-Wenzl projectors",
    "lsm": "fiber functors, vacua and gaplessness verdicts",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusioncat", description="Fusion rings, Drinfeld centers, channels and lattice-model checks."
    )
    groups = parser.add_subparsers(dest="group_cmd", required=True, metavar="GROUP")
    sub = {}
    for (group, cmd), (handler, flags, _) in COMMANDS.items():
        if group not in sub:
            sub[group] = groups.add_parser(group, help=GROUP_HELP.get(group)).add_subparsers(dest="cmd", required=True, metavar="COMMAND")
        p = sub[group].add_parser(cmd, help=(handler.__doc__ or "").strip() or None)
        for flag in flags:
            name = "--group" if flag == "group-name" else f"--{flag}"
            p.add_argument(name, **_FLAGS[flag])
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(handler=handler, command=f"{group} {cmd}", flags=flags)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, lines = args.handler(args)
    except FusionCatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    if args.json:
        inputs = {}
        for flag in args.flags:
            key = "group" if flag == "group-name" else flag
            value = getattr(args, key)
            inputs[key] = value if isinstance(value, (int, str)) else str(value)
        json.dump({"command": args.command, "inputs": inputs, "result": result}, stdout, ensure_ascii=False)
        stdout.write("\n")
    else:
        for line in lines:
            print(line, file=stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
