"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on input or
usage errors. JSON output never contains timing or the ``--jobs`` value, so it
is byte-identical across job counts.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import theorems
from .deformation import (
    cocycle_space,
    deformation_check,
    deformation_equivalence_check,
    equivalence_witness_check,
    nijenhuis_element_scan,
    trivial_deformation,
)
from .dialgebra import Action, TriLeibnizDialgebra, check_action, check_dialgebra, check_homomorphic_et, induced_dialgebra, semidirect_bowtie
from .embedding import check_embedding_tensor, induced_tri_leibniz
from .errors import AlgebraError, CheckFailure, InputError
from .exact import Subspace
from .fileformat import DeformationScenario, EmbeddingScenario, RepresentationData, load, to_document
from .leibniz3 import (
    BinaryAlgebra,
    ThreeLeibnizAlgebra,
    adjoint_rep,
    check_fundamental_identity,
    check_leibniz,
    check_representation,
    quotient,
    semidirect_sum,
    three_from_binary,
)
from .report import DEFAULT_CAP
from .trileibniz import (
    TriLeibnizAlgebra,
    averaging_embedding,
    check_tri_leibniz,
    direct_sum_tri,
    from_differential,
    hemisemidirect,
    universal_quotient,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


# tasks: (name, function, args); functions are module level so they pickle

def _ternary_fi(alg, cap):
    return check_fundamental_identity(three_from_binary(alg), cap)


def check_tasks(obj, cap: int) -> list:
    """Named checks for a loaded object, in report order."""
    if isinstance(obj, ThreeLeibnizAlgebra):
        return [("fundamental-identity", check_fundamental_identity, (obj, cap))]
    if isinstance(obj, BinaryAlgebra):
        return [("leibniz-identity", check_leibniz, (obj, cap)),
                ("ternary-fundamental-identity", _ternary_fi, (obj, cap))]
    if isinstance(obj, TriLeibnizAlgebra):
        return [("tri-leibniz", check_tri_leibniz, (obj, cap))]
    if isinstance(obj, RepresentationData):
        return [("fundamental-identity", check_fundamental_identity, (obj.algebra, cap)),
                ("representation", check_representation, (obj.algebra, obj.rep, cap))]
    if isinstance(obj, Action):
        return [("action", check_action, (obj, cap))]
    if isinstance(obj, TriLeibnizDialgebra):
        return [("dialgebra", check_dialgebra, (obj, cap))]
    if isinstance(obj, EmbeddingScenario):
        tasks = [("fundamental-identity", check_fundamental_identity, (obj.algebra, cap))]
        if obj.action is not None:
            tasks.append(("action", check_action, (obj.action, cap)))
        else:
            tasks.append(("representation", check_representation, (obj.algebra, obj.rep, cap)))
        tasks.append(("embedding-tensor", check_embedding_tensor, (obj.op, obj.algebra, obj.rep, cap)))
        if obj.action is not None:
            tasks.append(("homomorphic-embedding-tensor", _homomorphic, (obj.op, obj.action, cap)))
        return tasks
    if isinstance(obj, DeformationScenario):
        tasks = [("fundamental-identity", check_fundamental_identity, (obj.algebra, cap)),
                 ("representation", check_representation, (obj.algebra, obj.rep, cap)),
                 ("embedding-tensor", check_embedding_tensor, (obj.op, obj.algebra, obj.rep, cap))]
        for key in ("direction", "direction_tilde"):
            if getattr(obj, key) is not None:
                tasks.append((f"deformation[{key}]", deformation_check, (obj.op, getattr(obj, key), obj.algebra, obj.rep, cap)))
        if obj.witness is not None and obj.direction is not None and obj.direction_tilde is not None:
            a, b = obj.witness
            tasks.append(("witness", equivalence_witness_check,
                          (obj.direction, obj.direction_tilde, a, b, obj.op, obj.algebra, obj.rep, cap)))
            tasks.append(("equivalence", deformation_equivalence_check,
                          (obj.op, obj.direction, obj.direction_tilde, a, b, obj.algebra, obj.rep, cap)))
        return tasks
    return []  # linear maps carry no identities


def _homomorphic(op, act, cap):
    try:
        return check_homomorphic_et(op, act, cap)
    except CheckFailure as err:
        return err.report


def _run(task):
    name, fn, args = task
    return name, fn(*args)


def run_tasks(tasks: list, jobs: int) -> list:
    """Run tasks, in parallel when jobs > 1; results keep task order."""
    if jobs <= 1 or len(tasks) <= 1:
        return [_run(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run, tasks))


# subcommands ---------------------------------------------------------------

def kind_of(obj) -> str:
    if hasattr(obj, "shape"):
        return "linmap"
    return {
        ThreeLeibnizAlgebra: "leibniz3", BinaryAlgebra: "leibniz2", TriLeibnizAlgebra: "trileibniz",
        RepresentationData: "representation", Action: "action", EmbeddingScenario: "embedding_scenario",
        TriLeibnizDialgebra: "dialgebra", DeformationScenario: "deformation_scenario",
    }[type(obj)]


def _expand_inputs(paths) -> list:
    """Files as given; a directory expands to its manifest (or sorted files)."""
    out = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            manifest = p / "manifest.json"
            if manifest.exists():
                out += [p / m["path"] for m in json.loads(manifest.read_text(encoding="utf-8"))["files"]]
            else:
                out += sorted(q for q in p.iterdir() if q.is_file() and q.suffix != ".json")
        else:
            out.append(p)
    return out


def cmd_check(args) -> tuple:
    files = _expand_inputs(args.files)
    loaded = [(str(f), load(f)) for f in files]
    tasks, owners = [], []
    for i, (_, obj) in enumerate(loaded):
        for t in check_tasks(obj, args.violation_cap):
            tasks.append(t)
            owners.append(i)
    results = run_tasks(tasks, args.jobs)
    per_file = [{"file": f, "kind": kind_of(obj), "checks": []} for f, obj in loaded]
    for i, (name, report) in zip(owners, results):
        per_file[i]["checks"].append({"name": name} | report.to_dict())
    for entry in per_file:
        entry["passed"] = all(c["passed"] for c in entry["checks"])
    body = {"files": per_file}
    return body, all(e["passed"] for e in per_file)


def _scenario(path) -> tuple:
    obj = load(path)
    if not isinstance(obj, (EmbeddingScenario, DeformationScenario)):
        raise UsageError(f"{path}: expected an embedding or deformation scenario, got {kind_of(obj)}")
    return obj.op, obj.algebra, obj.rep


def cmd_cohomology(args) -> tuple:
    op, alg, rep = _scenario(args.scenario)
    et = check_embedding_tensor(op, alg, rep, args.violation_cap)
    body = {"file": args.scenario, "checks": [{"name": "embedding-tensor"} | et.to_dict()]}
    if not et.passed:
        return body, False
    space = cocycle_space(op, alg, rep, args.violation_cap)
    body["dimensions"] = {
        "cochains": alg.dim * rep.space_dim,
        "Z1": space.cocycles.rank,
        "B1": space.coboundaries.rank,
        "B1_cap_Z1": space.coboundary_cocycles.rank,
        "H1": space.h1_dim,
    }
    return body, True


def _vec(v) -> list:
    return [str(x) for x in v]


def _trivial(a, b, op, alg, rep, cap):
    _, report = trivial_deformation(a, b, op, alg, rep, cap)
    return report


def cmd_nijenhuis_scan(args) -> tuple:
    op, alg, rep = _scenario(args.scenario)
    cap = args.violation_cap
    et = check_embedding_tensor(op, alg, rep, cap)
    body = {"file": args.scenario, "checks": [{"name": "embedding-tensor"} | et.to_dict()], "elements": []}
    if not et.passed:
        return body, False
    pairs = nijenhuis_element_scan(op, alg, rep)
    reports = run_tasks([("trivial-deformation", _trivial, (a, b, op, alg, rep, cap)) for a, b in pairs], args.jobs)
    for (a, b), (_, report) in zip(pairs, reports):
        body["elements"].append({"a": _vec(a), "b": _vec(b), "trivial_deformation": report.to_dict()})
    body["dimensions"] = {"candidates": alg.dim ** 2, "nijenhuis_elements": len(pairs)}
    return body, all(e["trivial_deformation"]["passed"] for e in body["elements"])


def cmd_verify_theorems(args) -> tuple:
    obj = load(args.file)
    results = theorems.theorems_for(obj, args.violation_cap)
    body = {"file": args.file, "kind": kind_of(obj), "theorems": [r.to_dict() for r in results]}
    return body, all(r.holds for r in results)


def _need(objs, kinds, construction):
    if len(objs) != len(kinds):
        raise UsageError(f"{construction} takes {len(kinds)} input file(s), got {len(objs)}")
    for obj, want in zip(objs, kinds):
        if not isinstance(obj, want):
            raise UsageError(f"{construction}: expected {want.__name__}, got {kind_of(obj)}")
    return objs


def construct(name: str, objs: list, copies: int, cap: int):
    """(constructed object, dimensions dict)."""
    if name == "hemisemidirect":
        (d,) = _need(objs, [RepresentationData], name)
        return hemisemidirect(d.algebra, d.rep), {}
    if name == "semidirect":
        (d,) = _need(objs, [RepresentationData], name)
        return semidirect_sum(d.algebra, d.rep), {}
    if name == "bowtie":
        (act,) = _need(objs, [Action], name)
        return semidirect_bowtie(act), {}
    if name == "quotient":
        alg, basis = _need(objs, [ThreeLeibnizAlgebra, object], name)
        ideal = Subspace(alg.dim, basis)
        quo, proj = quotient(alg, ideal, cap)
        return quo, {"ideal": ideal.rank, "quotient": quo.dim}
    if name == "universal-quotient":
        (tri,) = _need(objs, [TriLeibnizAlgebra], name)
        quo, rep, proj = universal_quotient(tri, cap)
        return EmbeddingScenario(quo, rep, proj), {"ideal": tri.dim - quo.dim, "quotient": quo.dim}
    if name == "averaging-embedding":
        (tri,) = _need(objs, [TriLeibnizAlgebra], name)
        big, op, _ = averaging_embedding(tri, cap)
        return EmbeddingScenario(big, adjoint_rep(big), op), {"algebra": big.dim}
    if name == "induced-tri":
        (sc,) = _need(objs, [EmbeddingScenario], name)
        return induced_tri_leibniz(sc.op, sc.algebra, sc.rep, cap), {}
    if name == "induced-dialgebra":
        (sc,) = _need(objs, [EmbeddingScenario], name)
        if sc.action is None:
            raise UsageError("induced-dialgebra needs a scenario with an action")
        return induced_dialgebra(sc.op, sc.action, cap), {}
    if name == "direct-sum-tri":
        (alg,) = _need(objs, [ThreeLeibnizAlgebra], name)
        return direct_sum_tri(alg, copies), {}
    if name == "from-differential":
        alg, d = _need(objs, [ThreeLeibnizAlgebra, object], name)
        return from_differential(alg, d, cap), {}
    raise UsageError(f"unknown construction {name!r}")


CONSTRUCTIONS = ("hemisemidirect", "semidirect", "bowtie", "quotient", "universal-quotient",
                 "averaging-embedding", "induced-tri", "induced-dialgebra", "direct-sum-tri", "from-differential")


def cmd_construct(args) -> tuple:
    objs = [load(f) for f in args.inputs]
    obj, dims = construct(args.construction, objs, args.copies, args.violation_cap)
    doc = to_document(obj, name=args.construction)
    if args.output:
        Path(args.output).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    tasks = check_tasks(obj, args.violation_cap)
    checks = [{"name": n} | r.to_dict() for n, r in run_tasks(tasks, args.jobs)]
    body = {"construction": args.construction, "inputs": list(args.inputs), "kind": doc["kind"],
            "dimensions": dims, "checks": checks}
    if not args.output:
        body["result"] = doc
    return body, all(c["passed"] for c in checks)


# output --------------------------------------------------------------------

def _text_checks(checks, indent="  ") -> list:
    lines = []
    for c in checks:
        verdict = "PASS" if c["passed"] else f"FAIL ({c['total_violations']} violations)"
        lines.append(f"{indent}{c['name']}: {verdict}")
        for tag, n in c["counts"].items():
            lines.append(f"{indent}  {tag}: {n}")
        for v in c["violations"]:
            lines.append(f"{indent}  at {v['tag']} {tuple(v['index'])}: residual ({', '.join(v['residual'])})")
    return lines


def render_text(body: dict) -> str:
    lines = []
    for entry in body.get("files", [body]):
        head = entry.get("file") or entry.get("construction", "")
        if "kind" in entry:
            head += f" [{entry['kind']}]"
        lines.append(head)
        lines += _text_checks(entry.get("checks", []))
        for k, v in entry.get("dimensions", {}).items():
            lines.append(f"  dim {k} = {v}")
        for e in entry.get("elements", []):
            tv = "PASS" if e["trivial_deformation"]["passed"] else "FAIL"
            lines.append(f"  nijenhuis element a=({', '.join(e['a'])}) b=({', '.join(e['b'])}): trivial deformation {tv}")
        for t in entry.get("theorems", []):
            lines.append(f"  {t['name']} ({t['mode']}): hypothesis={t['hypothesis']} conclusion={t['conclusion']} "
                         f"{'HOLDS' if t['holds'] else 'FAILS'}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    def options(defaults: bool) -> argparse.ArgumentParser:
        # subcommands suppress their defaults so flags given before the subcommand survive
        o = argparse.ArgumentParser(add_help=False)
        d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        o.add_argument("--format", choices=("text", "json"), default=d("text"))
        o.add_argument("--violation-cap", type=int, default=d(DEFAULT_CAP), metavar="N")
        o.add_argument("--jobs", type=int, default=d(1), metavar="N")
        return o

    common = options(False)
    p = argparse.ArgumentParser(prog="leibtensor", description="Exact checks for 3-Leibniz structures.",
                                parents=[options(True)])
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="check the identities of a file's declared kind")
    c.add_argument("files", nargs="+", help="files or corpus directories")
    c = sub.add_parser("construct", parents=[common], help="build a derived structure")
    c.add_argument("construction", choices=CONSTRUCTIONS)
    c.add_argument("inputs", nargs="+")
    c.add_argument("--copies", type=int, default=2)
    c.add_argument("-o", "--output")
    c = sub.add_parser("cohomology", parents=[common], help="dimensions of Z1, B1 cap Z1 and H1")
    c.add_argument("scenario")
    c = sub.add_parser("nijenhuis-scan", parents=[common], help="Nijenhuis elements among basis pairs")
    c.add_argument("scenario")
    c = sub.add_parser("verify-theorems", parents=[common], help="run the theorem suites on one instance")
    c.add_argument("file")
    return p


COMMANDS = {"check": cmd_check, "construct": cmd_construct, "cohomology": cmd_cohomology,
            "nijenhuis-scan": cmd_nijenhuis_scan, "verify-theorems": cmd_verify_theorems}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    if args.violation_cap < 1 or args.jobs < 1:
        print("error: --violation-cap and --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        body, ok = COMMANDS[args.command](args)
    except CheckFailure as err:
        body = {"error": type(err).__name__, "message": str(err), "checks": [{"name": "precondition"} | err.report.to_dict()]}
        ok = False
    except (InputError, AlgebraError, UsageError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    command = {"command": args.command, "violation_cap": args.violation_cap}
    if args.format == "json":
        print(json.dumps(command | body | {"passed": ok}, indent=1))
    else:
        if "error" in body:
            print(f"{body['error']}: {body['message']}")
            print("\n".join(_text_checks(body["checks"])))
        else:
            print(render_text(body))
        print(f"{'PASS' if ok else 'FAIL'} ({time.perf_counter() - start:.2f} s)")
    return EXIT_PASS if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
