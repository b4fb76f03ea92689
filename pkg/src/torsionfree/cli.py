"""Command-line front end.

Commands read groups from description files, run one operation, and print a
deterministic report (or a machine-readable one with --json).  Exit codes
separate three channels: 0 for definite answers, 2 for scope-limited
answers (a bounded search that found nothing, an Unknown verdict), 1 for
errors.  Semi-decided questions stay honest in shell pipelines that way.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .bases import b_representation, basis_record, is_basis, minimal_multiplier
from .corpus import PROFILES, generate
from .decomp import (
    automorphism_from_summand_isos,
    automorphism_check,
    complete_decomposition_search,
    decomposition_record,
    decompositions_isomorphic,
    partition_record,
)
from .fileformat import ParseError, format_group, parse_group_file
from .groups import (
    Compare,
    GroupError,
    GroupRep,
    compare,
    element_type,
    group_rep,
    index_and_quotient,
    member,
    purify,
    subgroup_leq,
)
from .indec import (
    property_si_check,
    strong_decomposability_witness_search,
    typeset_obstruction_certificate,
)
from .jonsson import (
    InfiniteIndexError,
    jonsson_basis_from_summands,
    lift_quotient_decomposition,
    regulating_search,
)
from .linalg import Subspace, vadd, vec, vscale
from .oracle import brute_force_member, brute_force_purify, sufficient_exponent
from .quasi import commensurable, quasi_automorphism_check, quasi_equal_strict, quasi_split_check
from .rank1 import format_type


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; that
        # channel is reserved for scope-limited answers here
        raise CliError(message)


# -- input parsing -------------------------------------------------------------


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad rational: {text.strip()!r}")


def _vector(text: str):
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body.strip():
        raise CliError("empty vector")
    return tuple(_fraction(p) for p in body.split(","))


def _vectors(text: str):
    return tuple(_vector(part) for part in text.split(";") if part.strip())


def _vector_blocks(text: str):
    blocks = []
    for part in text.split("|"):
        if part.strip():
            blocks.append(_vectors(part))
    if not blocks:
        raise CliError("no vectors given")
    return tuple(blocks)


def _index_blocks(text: str, size: int):
    blocks = []
    for part in text.split("|"):
        idx = []
        for token in part.split(","):
            token = token.strip()
            if not token:
                continue
            try:
                i = int(token)
            except ValueError:
                raise CliError(f"bad index: {token!r}")
            if not 1 <= i <= size:
                raise CliError(f"index {i} out of range 1..{size}")
            idx.append(i - 1)
        if idx:
            blocks.append(tuple(sorted(idx)))
    if not blocks:
        raise CliError("empty partition")
    return tuple(blocks)


def _matrix(text: str):
    return tuple(_vector(row) for row in text.split(";") if row.strip())


def _int_rows(text: str):
    if text.strip() in ("-", ""):
        return ()
    rows = []
    for part in text.split(";"):
        if not part.strip():
            continue
        rows.append(tuple(int(x) for x in _vector(part)))
    return tuple(rows)


def _load_groups(path: str) -> dict[str, GroupRep]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise CliError(str(e))
    try:
        groups = parse_group_file(text)
    except ParseError as e:
        raise CliError(f"{path}: {e}")
    if not groups:
        raise CliError(f"{path}: no groups found")
    return groups


def _pick(groups: dict[str, GroupRep], name: str | None, path: str):
    if name is None:
        first = next(iter(groups))
        return first, groups[first]
    if name not in groups:
        raise CliError(f"{path}: no group named {name!r}")
    return name, groups[name]


# -- output formatting ----------------------------------------------------------


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _vec_str(v) -> str:
    return "(%s)" % ", ".join(_frac_str(e) for e in v)


def _group_lines(g: GroupRep, indent: str = "  "):
    body = format_group("_", g).splitlines()[1:]
    if not body:
        return [indent + "(zero group)"]
    return [indent + line for line in body]


def _quotient_str(q) -> str:
    if not q.invariant_factors:
        return "trivial"
    return " x ".join(f"Z/{d}" for d in q.invariant_factors)


def _ints_str(t) -> str:
    return "(%s)" % ", ".join(str(x) for x in t)


def _j_vec(v):
    return [_frac_str(e) for e in v]


def _j_group(g: GroupRep):
    return {
        "ambient": g.ambient_dim,
        "generators": [
            {"vector": _j_vec(v), "inv": "ALL" if s.is_all else list(s.primes)}
            for v, s in g.generators
        ],
    }


def _j_quotient(q):
    return {
        "invariant_factors": list(q.invariant_factors),
        "order": q.order,
        "exponent": q.exponent,
        "generator_images": [list(t) for t in q.generator_images],
    }


def _j_description(d):
    if d.is_finite:
        return {"kind": "finite", **_j_quotient(d.quotient)}
    return {"kind": "infinite", "prime": d.prime, "direction": _j_vec(d.direction)}


# -- commands -------------------------------------------------------------------


def _cmd_member(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    x = _vector(args.vector)
    res = member(g, x)
    lines = [f"member: {str(res).lower()}"]
    payload = {"member": res}
    code = 0
    if args.oracle:
        bound = args.bound if args.bound is not None else sufficient_exponent(g, x)
        o = brute_force_member(g, x, bound)
        agree = o == res
        lines.append(f"oracle: {str(o).lower()} (bound {bound})")
        lines.append(f"agreement: {str(agree).lower()}")
        payload.update({"oracle": o, "oracle_bound": bound, "agreement": agree})
        if not agree:
            code = 1
    return code, lines, payload


def _cmd_type(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    t = element_type(g, _vector(args.vector))
    return 0, [f"type: {format_type(t)}"], {"type": format_type(t)}


def _cmd_purify(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    rows = _vectors(args.vectors)
    space = Subspace.span(list(rows), g.ambient_dim)
    p = purify(g, space)
    lines = ["purified subgroup:"] + _group_lines(p)
    payload = {"purified": _j_group(p)}
    code = 0
    if args.oracle:
        if space.dim != 1:
            raise CliError("--oracle needs a one-dimensional subspace")
        bound = args.bound if args.bound is not None else 4
        gens = brute_force_purify(g, rows[0], bound)
        agree = all(member(p, w) for w in gens)
        lines.append("oracle generators: " + "; ".join(_vec_str(w) for w in gens))
        lines.append(f"agreement: {str(agree).lower()}")
        payload.update(
            {"oracle_generators": [_j_vec(w) for w in gens], "agreement": agree}
        )
        if not agree:
            code = 1
    return code, lines, payload


def _cmd_basis_check(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    ok = is_basis(g, _vectors(args.basis))
    return 0, [f"basis: {str(ok).lower()}"], {"basis": ok}


def _cmd_minmul(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    m = minimal_multiplier(g, _vectors(args.basis))
    return 0, [f"minimal multiplier: {m}"], {"minimal_multiplier": m}


def _cmd_brep(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    basis = basis_record(g, _vectors(args.basis))
    rep = b_representation(g, basis, _vector(args.vector))
    lines = [f"k: {rep.k}", f"coefficients: {_ints_str(rep.coefficients)}"]
    return 0, lines, {"k": rep.k, "coefficients": list(rep.coefficients)}


def _cmd_split(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    elements = _vectors(args.basis)
    basis = basis_record(g, elements)
    partition = partition_record(basis, _index_blocks(args.partition, len(elements)))
    report = quasi_split_check(g, basis, partition)
    lines = [report.kind.value]
    payload = {"kind": report.kind.value}
    if report.kind.value != "NoSplit":
        for i, s in enumerate(report.summands, start=1):
            lines.append(f"summand {i}:")
            lines.extend(_group_lines(s, "  "))
        q = report.quotient.quotient
        lines.append(f"index: {q.order}")
        lines.append(f"quotient: {_quotient_str(q)}")
        payload["summands"] = [_j_group(s) for s in report.summands]
        payload["quotient"] = _j_quotient(q)
    else:
        d = report.quotient
        lines.append(f"witness: InfiniteTorsion(p={d.prime}, direction={_vec_str(d.direction)})")
        payload["witness"] = _j_description(d)
    return 0, lines, payload


def _cmd_decompose(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    found = complete_decomposition_search(
        g, height_bound=args.height, max_blocks=args.max_blocks
    )
    payload = {"height": args.height, "decompositions": []}
    if not found:
        lines = [f"none found (height {args.height})"]
        return 2, lines, payload
    lines = [f"decompositions found: {len(found)} (height {args.height})"]
    for i, record in enumerate(found, start=1):
        flags = ", ".join(f.value for f in record.flags)
        lines.append(f"decomposition {i}: [{flags}]")
        for s in record.summands:
            lines.extend(_group_lines(s, "  "))
        payload["decompositions"].append(
            {
                "flags": [f.value for f in record.flags],
                "summands": [_j_group(s) for s in record.summands],
            }
        )
    return 0, lines, payload


def _decomposition_from_blocks(g: GroupRep, blocks):
    summands = tuple(
        purify(g, Subspace.span(list(block), g.ambient_dim)) for block in blocks
    )
    return decomposition_record(g, summands)


def _cmd_iso(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    d1 = _decomposition_from_blocks(g, _vector_blocks(args.first))
    d2 = _decomposition_from_blocks(g, _vector_blocks(args.second))
    answer = decompositions_isomorphic(d1, d2)
    lines = [f"verdict: {answer.verdict.value}"]
    payload = {"verdict": answer.verdict.value}
    if answer.verdict.value == "Yes":
        m = automorphism_from_summand_isos(d1, d2, answer)
        lines.append("automorphism: " + "; ".join(_vec_str(row) for row in m))
        lines.append("verified: true")
        payload["automorphism"] = [_j_vec(row) for row in m]
    elif answer.reason:
        lines.append(f"reason: {answer.reason}")
        payload["reason"] = answer.reason
    code = 2 if answer.verdict.value == "Unknown" else 0
    return code, lines, payload


def _cmd_aut_check(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    m = _matrix(args.matrix)
    if args.quasi:
        got = quasi_automorphism_check(g, m)
        if got is None:
            return 0, ["quasi-automorphism: absent"], {"quasi_automorphism": None}
        r, alpha = got
        lines = [
            f"quasi-automorphism: r = {_frac_str(r)}",
            "alpha: " + "; ".join(_vec_str(row) for row in alpha),
        ]
        payload = {
            "quasi_automorphism": {
                "r": _frac_str(r),
                "alpha": [_j_vec(row) for row in alpha],
            }
        }
        return 0, lines, payload
    ok = automorphism_check(g, m)
    return 0, [f"automorphism: {str(ok).lower()}"], {"automorphism": ok}


def _cmd_quasi_eq(args):
    _name1, h = _pick(_load_groups(args.file), args.name, args.file)
    _name2, g = _pick(_load_groups(args.other), args.other_name, args.other)
    w = quasi_equal_strict(h, g)
    if w is None:
        return 0, ["strict: absent"], {"strict": None}
    return 0, [f"strict: r = {_frac_str(w.ratio)}"], {"strict": _frac_str(w.ratio)}


def _cmd_commensurable(args):
    _name1, h = _pick(_load_groups(args.file), args.name, args.file)
    _name2, g = _pick(_load_groups(args.other), args.other_name, args.other)
    w = commensurable(h, g)
    if w is None:
        return 0, ["commensurable: absent"], {"commensurable": None}
    a, b = w.pair
    return 0, [f"commensurable: (a, b) = ({a}, {b})"], {"commensurable": [a, b]}


def _candidate_summands(g: GroupRep, text: str):
    return [
        group_rep(g.ambient_dim, [(v, ()) for v in block])
        for block in _vector_blocks(text)
    ]


def _jonsson_lines(basis):
    lines = []
    for i, (s, flag) in enumerate(basis.summands, start=1):
        lines.append(f"summand {i} [{flag.value}]:")
        lines.extend(_group_lines(s, "  "))
    q = basis.quotient
    lines.append(f"index: {q.order}")
    lines.append(f"quotient: {_quotient_str(q)}")
    lines.append(
        "generator images: " + "; ".join(_ints_str(t) for t in q.generator_images)
    )
    return lines


def _j_jonsson(basis):
    return {
        "summands": [
            {"flag": flag.value, "group": _j_group(s)} for s, flag in basis.summands
        ],
        "index": basis.index,
        "quotient": _j_quotient(basis.quotient),
    }


def _cmd_jonsson(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    basis = jonsson_basis_from_summands(g, _candidate_summands(g, args.summands))
    return 0, _jonsson_lines(basis), {"jonsson": _j_jonsson(basis)}


def _cmd_regulating(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    best, index, exhaustive = regulating_search(g, args.height)
    lines = [
        f"index: {index}",
        f"exhaustive: {str(exhaustive).lower()} (height {args.height})",
    ] + _jonsson_lines(best)
    payload = {
        "index": index,
        "exhaustive": exhaustive,
        "height": args.height,
        "basis": _j_jonsson(best),
    }
    return 0, lines, payload


def _cmd_lift(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    basis = jonsson_basis_from_summands(g, _candidate_summands(g, args.summands))
    report = lift_quotient_decomposition(
        g, basis, _int_rows(args.u), _int_rows(args.w)
    )
    payload = {"found": report.found, "groupings_searched": report.groupings_searched}
    if not report.found:
        lines = [
            "lift: refused (no grouping matches)",
            f"groupings searched: {report.groupings_searched}",
        ]
        return 0, lines, payload
    blocks = " | ".join(",".join(str(i + 1) for i in b) for b in report.blocks)
    lines = ["lift: found", f"blocks: {blocks}"]
    for i, s in enumerate(report.lifted, start=1):
        lines.append(f"lifted {i}:")
        lines.extend(_group_lines(s, "  "))
    payload["blocks"] = [[i + 1 for i in b] for b in report.blocks]
    payload["lifted"] = [_j_group(s) for s in report.lifted]
    return 0, lines, payload


def _cmd_quotient(args):
    _name1, g = _pick(_load_groups(args.file), args.name, args.file)
    _name2, a = _pick(_load_groups(args.other), args.other_name, args.other)
    d = index_and_quotient(g, a)
    if not d.is_finite:
        lines = [f"InfiniteTorsion(p={d.prime}, direction={_vec_str(d.direction)})"]
        return 0, lines, {"quotient": _j_description(d)}
    q = d.quotient
    lines = [
        _quotient_str(q),
        f"order: {q.order}",
        f"exponent: {q.exponent}",
        "generator images: " + "; ".join(_ints_str(t) for t in q.generator_images),
    ]
    return 0, lines, {"quotient": _j_description(d)}


def _cmd_si_check(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    basis = basis_record(g, _vectors(args.basis))
    report = property_si_check(g, basis)
    lines = [report.verdict.value]
    hull_q = report.quotient
    if hull_q.is_finite:
        lines.append(f"hull quotient: {_quotient_str(hull_q.quotient)} (finite)")
    else:
        lines.append(
            f"hull quotient: InfiniteTorsion(p={hull_q.prime}, direction={_vec_str(hull_q.direction)})"
        )
    splits = [p for p, ok in report.split_attempts if ok]
    lines.append(f"partitions tried: {len(report.split_attempts)}, splitting: {len(splits)}")
    payload = {
        "verdict": report.verdict.value,
        "hull_quotient": _j_description(hull_q),
        "partitions_tried": len(report.split_attempts),
        "splitting_partitions": len(splits),
    }
    return 0, lines, payload


def _cmd_si_search(args):
    _name, g = _pick(_load_groups(args.file), args.name, args.file)
    cert = typeset_obstruction_certificate(g)
    witness = strong_decomposability_witness_search(g, args.height)
    lines = []
    payload = {"height": args.height, "bases_searched": witness.bases_searched}
    if witness.found:
        q = witness.report.quotient.quotient
        blocks = " | ".join(
            ",".join(_vec_str(witness.basis.elements[i]) for i in b)
            for b in witness.partition.blocks
        )
        lines.append(f"QuasiDecomposition ({witness.kind.value})")
        lines.append(f"blocks: {blocks}")
        lines.append(f"index: {q.order}")
        payload["witness"] = {
            "kind": witness.kind.value,
            "blocks": [[_j_vec(witness.basis.elements[i]) for i in b] for b in witness.partition.blocks],
            "index": q.order,
        }
        return 0, lines, payload
    lines.append(f"NoWitnessFound (height {args.height}, {witness.bases_searched} bases)")
    payload["witness"] = None
    if cert is not None:
        types = ", ".join(format_type(t) for t in cert.types)
        lines.append(f"certificate: types {{{types}}}")
        lines.append("certified: strongly indecomposable")
        payload["certificate"] = {
            "vectors": [_j_vec(v) for v in cert.vectors],
            "types": [format_type(t) for t in cert.types],
        }
        return 0, lines, payload
    payload["certificate"] = None
    return 2, lines, payload


# -- verify ---------------------------------------------------------------------


def _verify_one(name: str, g: GroupRep, seed: str):
    rng = random.Random(seed)
    checks = 0
    failures = []

    def check(ok: bool, label: str):
        nonlocal checks
        checks += 1
        if not ok:
            failures.append(label)

    check(compare(g, g) is Compare.EQUAL, "compare(g, g) is Equal")
    round_trip = parse_group_file(format_group(name or "g", g))
    check(
        compare(g, next(iter(round_trip.values()))) is Compare.EQUAL,
        "format/parse round trip",
    )
    gens = [v for v, _s in g.generators]
    for v, s in g.generators:
        check(member(g, v), f"generator {_vec_str(v)} is a member")
        if not s.is_all and s.primes:
            p = s.primes[0]
            check(member(g, vscale(Fraction(1, p), v)), f"{_vec_str(v)}/{p} is a member")
    for _ in range(4 if gens else 0):
        x = vec((0,) * g.ambient_dim)
        for v in gens:
            x = vadd(x, vscale(rng.randint(-2, 2), v))
        if rng.random() < 0.5:
            x = vscale(Fraction(1, rng.choice((2, 3, 5))), x)
        exact = member(g, x)
        brute = brute_force_member(g, x, sufficient_exponent(g, x))
        check(exact == brute, f"oracle agreement at {_vec_str(x)}")
    if gens:
        space = Subspace.span([gens[0]], g.ambient_dim)
        p = purify(g, space)
        check(subgroup_leq(p, g), "purification is a subgroup")
        check(p.span == space, "purification spans its input line")
    if g.rank:
        rows = g.lattice_hull.rows
        check(is_basis(g, rows), "lattice hull rows form a basis")
        basis = basis_record(g, rows)
        check(minimal_multiplier(g, rows) >= 1, "minimal multiplier is positive")
        target = gens[rng.randrange(len(gens))]
        rep = b_representation(g, basis, target)
        check(rep.vector(basis) == vec(target), "B-representation reconstructs")
    return name, checks, failures


def _cmd_verify(args):
    if args.file:
        groups = list(_load_groups(args.file).items())
    else:
        profile = args.profile or "mixed"
        if profile not in PROFILES:
            raise CliError(f"unknown profile: {profile}")
        groups = []
        for i in range(args.count):
            sample = generate(profile, args.seed + i)
            groups.append((f"{profile}-{args.seed + i}", sample.group))
    tasks = [
        (name, g, f"verify:{args.seed}:{i}") for i, (name, g) in enumerate(groups)
    ]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(lambda t: _verify_one(*t), tasks))
    else:
        results = [_verify_one(*t) for t in tasks]
    lines = []
    payload = {"groups": [], "all_ok": True}
    total = 0
    code = 0
    for name, checks, failures in results:
        total += checks
        if failures:
            code = 1
            payload["all_ok"] = False
            lines.append(f"{name}: FAIL ({len(failures)}/{checks} checks)")
            for f in failures:
                lines.append(f"  failed: {f}")
        else:
            lines.append(f"{name}: ok ({checks} checks)")
        payload["groups"].append(
            {"name": name, "ok": not failures, "checks": checks, "failures": failures}
        )
    lines.append(
        f"{'all ok' if code == 0 else 'FAILURES'} ({len(results)} groups, {total} checks)"
    )
    payload["total_checks"] = total
    return code, lines, payload


# -- wiring ---------------------------------------------------------------------


def _add_common(sp, name=True):
    if name:
        sp.add_argument("--name", help="group name within the file (default: first)")
    sp.add_argument("--json", action="store_true", help="emit a JSON report")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="torsionfree", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("member", help="membership of a vector")
    sp.add_argument("file")
    sp.add_argument("vector")
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--bound", type=int)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_member)

    sp = sub.add_parser("type", help="divisibility type of an element")
    sp.add_argument("file")
    sp.add_argument("vector")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_type)

    sp = sub.add_parser("purify", help="pure hull of a subspace")
    sp.add_argument("file")
    sp.add_argument("vectors")
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--bound", type=int)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_purify)

    sp = sub.add_parser("basis-check", help="is the tuple a basis of the group")
    sp.add_argument("file")
    sp.add_argument("--basis", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_basis_check)

    sp = sub.add_parser("minmul", help="minimal multiplier of a span basis")
    sp.add_argument("file")
    sp.add_argument("--basis", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_minmul)

    sp = sub.add_parser("brep", help="B-representation of an element")
    sp.add_argument("file")
    sp.add_argument("vector")
    sp.add_argument("--basis", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_brep)

    sp = sub.add_parser("split", help="classify a basis partition")
    sp.add_argument("file")
    sp.add_argument("--basis", required=True)
    sp.add_argument("--partition", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_split)

    sp = sub.add_parser("decompose", help="bounded complete-decomposition search")
    sp.add_argument("file")
    sp.add_argument("--height", type=int, default=1)
    sp.add_argument("--max-blocks", type=int, default=None)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_decompose)

    sp = sub.add_parser("iso", help="compare two decompositions given by blocks")
    sp.add_argument("file")
    sp.add_argument("--first", required=True)
    sp.add_argument("--second", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_iso)

    sp = sub.add_parser("aut-check", help="verify a span matrix as (quasi-)automorphism")
    sp.add_argument("file")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--quasi", action="store_true")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_aut_check)

    sp = sub.add_parser("quasi-eq", help="strict quasi-equality witness")
    sp.add_argument("file")
    sp.add_argument("other")
    sp.add_argument("--other-name")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_quasi_eq)

    sp = sub.add_parser("commensurable", help="mutual finite-index witness")
    sp.add_argument("file")
    sp.add_argument("other")
    sp.add_argument("--other-name")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_commensurable)

    sp = sub.add_parser("jonsson", help="build a Jonsson basis from summand spans")
    sp.add_argument("file")
    sp.add_argument("--summands", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_jonsson)

    sp = sub.add_parser("regulating", help="minimal-index Jonsson basis search")
    sp.add_argument("file")
    sp.add_argument("--height", type=int, default=2)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_regulating)

    sp = sub.add_parser("lift", help="lift a quotient decomposition")
    sp.add_argument("file")
    sp.add_argument("--summands", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--w", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_lift)

    sp = sub.add_parser("quotient", help="G/A invariant factors or infinite witness")
    sp.add_argument("file")
    sp.add_argument("other")
    sp.add_argument("--other-name")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_quotient)

    sp = sub.add_parser("si-check", help="Property SI for one basis")
    sp.add_argument("file")
    sp.add_argument("--basis", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_si_check)

    sp = sub.add_parser("si-search", help="certificate plus bounded witness search")
    sp.add_argument("file")
    sp.add_argument("--height", type=int, default=2)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_si_search)

    sp = sub.add_parser("verify", help="run the property suite on a file or corpus")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--profile", choices=PROFILES)
    sp.add_argument("--count", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code, lines, payload = args.fn(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ParseError, GroupError, InfiniteIndexError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.json:
        report = {"command": args.command, "result": payload}
        print(json.dumps(report, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
