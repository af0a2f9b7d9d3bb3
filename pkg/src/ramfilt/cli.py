"""Command line interface: ``ramfilt <command> <field.json> ...``.

Exit codes: 0 success/true, 1 semantic false or failed verification,
2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from . import classify, construct, ramification
from .errors import RamfiltError
from .fp_linalg import enumerate_subspaces
from .mult_group import coordinates, format_vector, kmodp
from .padic_core import field_from_json, format_element
from .units import find_omega_star

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _json_arg(value: str):
    """A JSON document given inline or as a path to a file."""
    if os.path.exists(value):
        with open(value) as fh:
            return json.load(fh)
    try:
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise InputError(f"{value!r} is neither a file nor valid JSON: {exc}") from None


def _load_field(path: str):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read field spec {path}: {exc}") from None
    precision = None
    if not data.get("precision") and os.environ.get("RAMFILT_PRECISION"):
        precision = int(os.environ["RAMFILT_PRECISION"])
    return field_from_json(data, precision)


def _emit(obj):
    print(json.dumps(obj))


def _seq_table(seq) -> list[str]:
    lines = ["   t   m"]
    lines += [f"{t:>4} {m:>3}" for t, m in seq]
    return lines


def _parse_seq(text: str):
    data = _json_arg(text)
    try:
        return [(int(t), int(m)) for t, m in data]
    except (TypeError, ValueError):
        raise InputError("--seq must be a list of [t, m] pairs") from None


def cmd_describe_field(args, field):
    space = kmodp(field)
    info = {
        "p": field.p, "e": field.e, "f": field.f, "n": field.n, "q": field.q,
        "precision": field.M, "crit": str(field.crit), "I": list(field.I),
        "zeta_p": field.zeta_flag, "dim_V": space.dim, "basis": list(space.labels),
        "omega_star": None,
    }
    if field.zeta_flag:
        om = find_omega_star(field)
        info["omega_star"] = {"element": om.element.to_json(), "c_star": list(om.c_star),
                              "display": format_element(om.element)}
    if not args.plain:
        _emit(info)
        return EXIT_OK
    print(f"K/Q_{field.p}: e = {field.e}, f = {field.f}, n = {field.n}, q = {field.q}, M = {field.M}")
    print(f"crit = {field.crit}; I = {list(field.I)}")
    print(f"zeta_p: {'yes' if field.zeta_flag else 'no'}")
    line = f"dim V = {space.dim}; basis {', '.join(space.labels)}"
    if field.zeta_flag:
        line += f"; omega_* = {info['omega_star']['display']}"
    print(line)
    return EXIT_OK


def cmd_ckp(args, field):
    closed = classify.ckp_filtration(field)
    computed = ramification.filtration(field, kmodp(field).zero())
    agree = closed == computed
    if args.plain:
        print("closed form:")
        print("\n".join(_seq_table(closed)))
        print("computed:")
        print("\n".join(_seq_table(computed)))
        print("\n".join(ramification.format_chain(closed, closed.total_size)))
        print("agree" if agree else "MISMATCH")
    else:
        _emit({"closed_form": closed.to_json(), "computed": computed.to_json(), "agree": agree,
               "chain": [list(c) for c in classify.ckp_chain(field)]})
    return EXIT_OK if agree else EXIT_FALSE


def cmd_jumps(args, field):
    space = kmodp(field)
    if args.norm is not None:
        rows = _json_arg(args.norm)
        if any(len(r) != space.dim for r in rows):
            raise InputError(f"norm subspace rows must have length dim V = {space.dim}")
        n = space.span(rows)
        seq = ramification.filtration(field, n)
        extra = {"normic": n.to_json()}
    else:
        elems = [field.element(x) for x in _json_arg(args.kummer)]
        coords = [coordinates(x) for x in elems]
        seq = ramification.kummer_filtration(field, coords)
        extra = {"classes": [list(c) for c in coords]}
    if args.plain:
        print("\n".join(_seq_table(seq)))
        print("\n".join(ramification.format_chain(seq, seq.total_size)))
    else:
        _emit({"jumps": seq.to_json(), **extra})
    return EXIT_OK


def cmd_admissible(args, field):
    verdict = classify.is_admissible(field, _parse_seq(args.seq))
    if args.plain:
        print("yes" if verdict else f"no ({verdict.code} at index {verdict.index})")
    else:
        _emit(verdict.to_json())
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_construct(args, field):
    seq = _parse_seq(args.seq)
    verdict = classify.is_admissible(field, seq)
    if not verdict:
        if args.plain:
            print(f"not admissible ({verdict.code} at index {verdict.index})")
        else:
            _emit({"error": "NotAdmissible", **verdict.to_json()})
        return EXIT_FALSE
    w = construct.construct_extension(field, seq)
    if not args.plain:
        _emit(w.to_json())
        return EXIT_OK
    space = kmodp(field)
    names = ["K^xp"] + [format_vector(space, r) for r in w.normic.basis]
    print(f"N = <{', '.join(names)}>   (index {classify.is_admissible(field, seq).degree})")
    if w.kummer_gens is not None:
        print("M = K(" + ", ".join(f"({format_element(g)})^(1/{field.p})" for g in w.kummer_gens) + ")")
    print("\n".join(_seq_table(w.claimed)))
    return EXIT_OK


def _hyperplane_jump(job):
    field, h = job
    return h.basis, ramification.jump_of_hyperplane(field, h)


def _subspace_verdict(job):
    field, n = job
    seq = ramification.filtration(field, n)
    return n.basis, seq.to_json(), bool(classify.is_admissible(field, seq.pairs))


def _map(fn, jobs, workers):
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs, chunksize=16))


def cmd_atlas(args, field):
    from .fp_linalg import enumerate_hyperplanes_above

    space = kmodp(field)
    hyps = _map(_hyperplane_jump, [(field, h) for h in enumerate_hyperplanes_above(space.zero())], args.jobs)
    hyps.sort()
    multiset = Counter(t for _, t in hyps)
    checks = {}
    if field.zeta_flag:
        checks["multiset_norm_vs_kummer"] = multiset == ramification.line_multiset(field)
    closed = classify.ckp_filtration(field)
    checks["ckp_closed_form"] = closed == ramification.filtration(field, space.zero())
    subspaces = [n for n in enumerate_subspaces(space.dim, field.p) if n.codim <= args.max_codim]
    verdicts = _map(_subspace_verdict, [(field, n) for n in subspaces], args.jobs)
    verdicts.sort()
    checks["all_filtrations_admissible"] = all(ok for _, _, ok in verdicts)
    passed = all(checks.values())
    if args.plain:
        print(f"{len(hyps)} hyperplanes (degree-{field.p} extensions)")
        print("jump  count")
        for t in sorted(multiset):
            print(f"{t:>4} {multiset[t]:>6}")
        for name, ok in checks.items():
            print(f"{'PASS' if ok else 'FAIL'} {name}")
        print(f"{len(verdicts)} subspaces with codim <= {args.max_codim} checked")
    else:
        _emit({
            "hyperplanes": [{"basis": [list(r) for r in b], "jump": t} for b, t in hyps],
            "multiset": {str(t): multiset[t] for t in sorted(multiset)},
            "subspaces_checked": len(verdicts),
            "checks": checks,
            "passed": passed,
        })
    return EXIT_OK if passed else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramfilt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("field", help="field spec JSON file")
        sp.add_argument("--plain", action="store_true", help="human readable tables instead of JSON")
        sp.set_defaults(func=fn)
        return sp

    add("describe-field", cmd_describe_field, "print the invariants of K and the basis of K^x/(K^x)^p")
    add("ckp", cmd_ckp, "filtration of the maximal elementary abelian p-extension")
    sp = add("jumps", cmd_jumps, "jumps of an extension given by norm image or Kummer generators")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--norm", help="JSON rows spanning the norm image in V (file or inline)")
    grp.add_argument("--kummer", help="JSON list of elements a, M = K(a^(1/p)) (file or inline)")
    sp = add("admissible", cmd_admissible, "decide whether a jump sequence is realizable")
    sp.add_argument("--seq", required=True, help='e.g. "[[-1,1],[1,1]]"')
    sp = add("construct", cmd_construct, "build a witnessing extension for a jump sequence")
    sp.add_argument("--seq", required=True)
    sp = add("atlas", cmd_atlas, "exhaustive verification over all degree-p extensions and subspaces")
    sp.add_argument("--max-codim", type=int, default=4)
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        field = _load_field(args.field)
        return args.func(args, field)
    except (InputError, RamfiltError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
