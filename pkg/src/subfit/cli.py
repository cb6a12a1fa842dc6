"""Command-line front end: ``subfit analyze|sweep|curious|space``.

Exit codes: 0 success, 1 parse or validation error, 2 when redundant
computations disagree or a theorem check fails.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Callable

from . import curious
from .errors import CapExceededError, InternalConsistencyError, SubfitError
from .frames import (
    ENUM_CAP,
    Operator,
    is_subfit,
    iterate_to_closure,
    preceq_relation,
    theorem2_check,
    witness_nucleus,
    xi_operator,
)
from .ideals import (
    CONGRUENCE_CAP,
    check_chi_characterisation,
    check_chi_equals_xi,
    check_top_lemma,
    heitmann_congruence,
    ideal_operator,
    jacobson_conditions,
    is_jacobson,
    quotient,
)
from .lattice import (
    FiniteLattice,
    downset_lattice,
    enumerate_posets,
    lattice_to_document,
    load_lattice,
    poset_canonical_form,
)
from .topology import (
    dump_space_document,
    is_jacobson_space,
    opens_frame,
    parse_space_document,
    preceq_points,
    spec_space,
)

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2


def _skipped(reason: str) -> dict:
    return {"skipped": reason}


def _capped(fn: Callable[[], object]):
    try:
        return fn()
    except CapExceededError as exc:
        return _skipped(str(exc))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _table(L: FiniteLattice, op: Operator) -> dict[str, str]:
    return {L.labels[a]: L.labels[v] for a, v in enumerate(op.table)}


def analyze_lattice(L: FiniteLattice, cap_enum: int = ENUM_CAP,
                    cap_cong: int = CONGRUENCE_CAP) -> dict:
    """Every analysis of one lattice as a JSON-ready dict (without input identity)."""
    report: dict = {"size": L.size, "distributive": L.is_distributive}
    if not L.is_distributive:
        reason = "lattice is not distributive"
        for key in ("subfit", "xi", "chi", "congruence_classes", "quotient", "jacobson",
                    "theorem2", "top_lemma", "chi_characterisation", "chi_equals_xi"):
            report[key] = _skipped(reason)
        return report
    xi_op = xi_operator(L)
    heit = heitmann_congruence(L)
    q = quotient(L, heit)
    qdoc = lattice_to_document(q.lattice)
    conds = jacobson_conditions(L)
    report.update({
        "subfit": is_subfit(L),
        "xi": _table(L, xi_op),
        "xi_closure_steps": iterate_to_closure(xi_op)[1],
        "chi": _table(L, ideal_operator(L, "chi")),
        "preceq": preceq_relation(L).to_json(),
        "congruence_classes": heit.to_json(),
        "quotient": {"elements": list(qdoc.elements), "covers": [list(c) for c in qdoc.covers]},
        "jacobson": {"verdict": is_jacobson(L), "conditions": conds},
        "theorem2": _capped(lambda: theorem2_check(L, cap_enum)),
        "top_lemma": _capped(lambda: check_top_lemma(L, cap_cong)),
        "chi_characterisation": _capped(lambda: check_chi_characterisation(L, cap_cong)),
        "chi_equals_xi": check_chi_equals_xi(L),
    })
    return report


def _analyze_text(rep: dict) -> str:
    lines = [f"input: {rep['input']['file']} (sha256 {rep['input']['sha256'][:16]})",
             f"size: {rep['size']}", f"distributive: {rep['distributive']}"]
    for key in ("subfit", "jacobson", "theorem2", "top_lemma", "chi_characterisation",
                "chi_equals_xi"):
        val = rep[key]
        if isinstance(val, dict) and "verdict" in val:
            val = val["verdict"]
        if isinstance(val, dict) and "skipped" in val:
            val = f"skipped ({val['skipped']})"
        lines.append(f"{key}: {val}")
    if "skipped" not in rep["xi"]:
        lines.append("xi: " + ", ".join(f"{a}->{b}" for a, b in rep["xi"].items()))
        lines.append("chi: " + ", ".join(f"{a}->{b}" for a, b in rep["chi"].items()))
        lines.append("classes: " + " ".join("{" + ",".join(c) + "}"
                                            for c in rep["congruence_classes"]))
    if "timing_s" in rep:
        lines.append(f"time: {rep['timing_s']:.3f}s")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    with open(args.path, "rb") as fh:
        raw = fh.read()
    L = load_lattice(raw)
    t0 = time.perf_counter()
    rep = {"input": {"file": args.path, "sha256": hashlib.sha256(raw).hexdigest()}}
    rep.update(analyze_lattice(L, args.cap_enum, args.cap_cong))
    if args.timing:
        rep["timing_s"] = time.perf_counter() - t0
    print(_dump(rep) if args.json else _analyze_text(rep))
    return EXIT_OK


def sweep(max_poset_size: int, cap_enum: int = ENUM_CAP, cap_cong: int = CONGRUENCE_CAP) -> dict:
    """Run every finite check on the downset lattice of each poset up to the given size."""
    checks = ("distributive", "theorem2", "witness", "xi_idempotent", "subfit_consistent",
              "jacobson_consistent", "top_lemma", "chi_characterisation", "chi_equals_xi_biconditional",
              "jacobson_space_agrees")
    counts = {c: {"pass": 0, "fail": 0, "skipped": 0} for c in checks}
    chi_equals_xi = 0
    failures = []
    lattices = []
    for k in range(max_poset_size + 1):
        for P in enumerate_posets(k):
            lattices.append((poset_canonical_form(P.leq), downset_lattice(P)))
    lattices.sort(key=lambda t: (t[1].size, t[0]))

    for sig, L in lattices:
        name = f"|L|={L.size} sig={sig.hex()}"

        def run(check: str, fn: Callable[[], bool]):
            try:
                ok = fn()
            except CapExceededError:
                counts[check]["skipped"] += 1
                return
            except InternalConsistencyError as exc:
                ok = False
                failures.append(f"{check} {name}: {exc}")
            else:
                if not ok:
                    failures.append(f"{check} {name}")
            counts[check]["pass" if ok else "fail"] += 1

        def witnesses() -> bool:
            rel = preceq_relation(L).rel
            for a in range(L.size):
                for b in range(L.size):
                    if rel[b, a]:
                        witness_nucleus(L, a, b)
            return True

        def biconditional() -> bool:
            nonlocal chi_equals_xi
            chi_equals_xi += check_chi_equals_xi(L)
            return True

        run("distributive", lambda: L.is_distributive)
        run("theorem2", lambda: theorem2_check(L, cap_enum))
        run("witness", witnesses)
        run("xi_idempotent", lambda: iterate_to_closure(xi_operator(L))[1] <= 1)
        run("subfit_consistent", lambda: is_subfit(L) in (True, False))
        run("jacobson_consistent", lambda: is_jacobson(L) in (True, False))
        run("top_lemma", lambda: check_top_lemma(L, cap_cong))
        run("chi_characterisation", lambda: check_chi_characterisation(L, cap_cong))
        run("chi_equals_xi_biconditional", biconditional)
        run("jacobson_space_agrees", lambda: is_jacobson_space(spec_space(L)) == is_jacobson(L))

    return {"max_poset_size": max_poset_size, "lattices": len(lattices),
            "counts": counts, "observed_chi_equals_xi": chi_equals_xi, "failures": failures}


def cmd_sweep(args) -> int:
    if args.max_poset_size > 5 and not args.force:
        print("max poset size above 5 needs --force", file=sys.stderr)
        return EXIT_INPUT
    summary = sweep(args.max_poset_size, args.cap_enum, args.cap_cong)
    if args.json:
        print(_dump(summary))
    else:
        print(f"lattices: {summary['lattices']} (posets with <= {args.max_poset_size} points)")
        for check, c in summary["counts"].items():
            print(f"{check}: pass={c['pass']} fail={c['fail']} skipped={c['skipped']}")
        print(f"chi == xi observed on {summary['observed_chi_equals_xi']} of {summary['lattices']}")
        for f in summary["failures"]:
            print("FAIL", f)
    return EXIT_INCONSISTENT if summary["failures"] else EXIT_OK


def cmd_curious(args) -> int:
    rep = curious.demonstrate_not_nucleus(samples=args.samples, seed=args.seed)
    if args.json:
        print(json.dumps(rep.to_dict(), sort_keys=False, separators=(",", ":")))
    else:
        print(f"xi(empty)   = {rep.xi_bottom.to_json()}")
        print(f"xi^2(empty) = {rep.xi2_bottom.to_json()}")
        print(f"xi is a nucleus: {rep.is_nucleus}")
        print(f"anchors: {'ok' if rep.anchors_ok else 'MISMATCH'}")
        for law, n in rep.checks.items():
            print(f"{law}: {n} checks")
        print(f"failures: {len(rep.failures)}")
    if not rep.anchors_ok or rep.failures or rep.is_nucleus:
        return EXIT_INCONSISTENT
    return EXIT_OK


def space_report(S) -> dict:
    frame = opens_frame(S)
    opens = S.sorted_opens
    rel = preceq_relation(frame).rel
    disagreements = [[frame.labels[i], frame.labels[j]]
                     for i, u in enumerate(opens) for j, w in enumerate(opens)
                     if preceq_points(S, u, w) != bool(rel[i, j])]
    return {
        "space": json.loads(dump_space_document(S)),
        "opens_frame": {"size": frame.size, "distributive": frame.is_distributive},
        "preceq_cross_check": not disagreements,
        "disagreements": disagreements,
        "jacobson_space": is_jacobson_space(S),
    }


def cmd_space(args) -> int:
    with open(args.path, "rb") as fh:
        raw = fh.read()
    if args.spec:
        L = load_lattice(raw)
        S = spec_space(L)
    else:
        S = parse_space_document(raw)
    rep = space_report(S)
    if args.json:
        print(_dump(rep))
    else:
        print("points: " + ", ".join(S.labels))
        print("opens: " + " ".join("{" + ",".join(u) + "}" for u in rep["space"]["opens"]))
        print(f"opens frame: {rep['opens_frame']['size']} elements")
        print(f"preceq cross-check: {'pass' if rep['preceq_cross_check'] else 'FAIL'}")
        print(f"jacobson_space: {rep['jacobson_space']}")
    return EXIT_OK if rep["preceq_cross_check"] else EXIT_INCONSISTENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subfit", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--cap-enum", type=int, default=ENUM_CAP,
                        help="largest lattice for exhaustive nucleus enumeration")
    common.add_argument("--cap-cong", type=int, default=CONGRUENCE_CAP,
                        help="largest lattice for exhaustive congruence enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="analyse a lattice document")
    p.add_argument("path")
    p.add_argument("--timing", action="store_true", help="include wall-clock time")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", parents=[common], help="check every downset lattice of small posets")
    p.add_argument("max_poset_size", type=int, nargs="?", default=3)
    p.add_argument("--force", action="store_true", help="allow posets with more than 5 points")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("curious", parents=[common], help="the omega x omega+ counterexample")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_curious)

    p = sub.add_parser("space", parents=[common], help="analyse a finite space document")
    p.add_argument("path")
    p.add_argument("--spec", action="store_true",
                   help="read a lattice document and analyse its prime spectrum")
    p.set_defaults(func=cmd_space)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (SubfitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
