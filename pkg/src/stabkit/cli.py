"""Batch front-end: JSON job documents in, JSON reports out.

One document describes one job; `stabkit run job.json` validates it against
the shipped schema, dispatches to the library, and emits a report whose
numbers are exact rational strings.  `stabkit corpus` executes the bundled
acceptance corpus and prints one pass/fail line per criterion.

Exit codes: 0 success, 2 input or validation error, 3 budget exhaustion.
Reports are byte-identical for identical (document, seed); the optional
timing block is off by default for that reason.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from . import __version__
from .algebra import (
    GREVLEX,
    LEX,
    Budget,
    BudgetError,
    Ideal,
    ParseError,
    eliminate,
    format_multi,
    format_laurent,
    format_rational,
    groebner,
    parse_laurent,
    parse_multi,
    parse_rational,
    saturate,
)
from .groups import (
    Arc,
    GroupPresentation,
    MatrixAction,
    TorusWeights,
    arc_norm,
    arcs_equivalent,
    check_arc,
    diagonal_action,
    mu_weight,
    sym_action,
)
from .kstab import (
    Crease,
    HilbCoeffs,
    ModelNumbers,
    PLFunction,
    Polytope,
    df_invariant,
    model_norm,
    toric_df_data,
    toric_hilb,
    toric_minnorm,
    toric_uniform_search,
)
from .locus import ActionProblem, FamilyPair, degeneration_locus, family_unstable_locus
from .locus import orbit_map_closure, point_degenerates
from .pairs import Pair, dr_stable_at, sample_falsifier, torus_semistable, torus_stable_at

SCHEMA_VERSION = 1
ORDERS = {"grevlex": GREVLEX, "lex": LEX}

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3


def _load_schema(name: str) -> dict:
    text = resources.files("stabkit").joinpath("schemas", name).read_text()
    return json.loads(text)


def _job_validator() -> jsonschema.Draft202012Validator:
    return jsonschema.Draft202012Validator(_load_schema("job-v1.schema.json"))


def _rat(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ValueError(f"expected a rational, got {type(value).__name__}")


def _rats(values) -> list[Fraction]:
    return [_rat(v) for v in values]


def _jsonable(obj):
    """Report-ready copy: exact rationals as strings, tuples as lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if obj is math.inf:
        return "infinity"
    if isinstance(obj, float):
        raise TypeError("floating point values never enter reports")
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        return [_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


def _build_group(desc: dict) -> GroupPresentation:
    kind, size = desc["kind"], desc["size"]
    if kind == "torus":
        return GroupPresentation.torus(size)
    if kind == "special-linear":
        return GroupPresentation.special_linear(size)
    return GroupPresentation.general_linear(size)


def _build_rep(desc: dict, group: GroupPresentation):
    kind = desc["kind"]
    if kind == "torus-weights":
        return TorusWeights(desc["weights"])
    if kind == "sym":
        return sym_action(group, desc["degree"])
    if kind == "matrix":
        ring = group.variables
        rows = [[parse_multi(s, ring) for s in row] for row in desc["entries"]]
        return MatrixAction(group, rows)
    if group.is_torus:
        return TorusWeights([(0,) * group.rank])
    return MatrixAction(group, [[parse_multi("1", group.variables)]])


def _build_action(desc: dict, group: GroupPresentation) -> MatrixAction:
    rep = _build_rep(desc, group)
    if isinstance(rep, TorusWeights):
        return diagonal_action(group, rep.weights)
    return rep


def _build_arc(rows) -> Arc:
    return Arc([[parse_laurent(s) for s in row] for row in rows])


def _arc_json(arc: Arc) -> list[list[str]]:
    return [[format_laurent(e) for e in row] for row in arc.matrix]


def _build_polytope(desc: dict) -> Polytope:
    vertices = [_rats(v) for v in desc["vertices"]]
    dims = {len(v) for v in vertices}
    if len(dims) != 1:
        raise ValueError("polytope vertices must share one dimension")
    return Polytope(dims.pop(), vertices)


def _build_pl(desc, dim: int) -> PLFunction:
    pieces = [(tuple(_rats(p["gradient"])), _rat(p["constant"])) for p in desc]
    return PLFunction(dim, pieces)


def _pl_json(f: PLFunction) -> dict:
    return {
        "pieces": [
            {"gradient": [format_rational(g) for g in grad], "constant": format_rational(c)}
            for grad, c in f.pieces
        ]
    }


def _ideal_json(ideal: Ideal) -> dict:
    return {
        "variables": list(ideal.variables),
        "generators": [format_multi(g) for g in ideal.generators],
    }


# ---------------------------------------------------------------- handlers


def _run_algebra_groebner(payload: dict, budget: Budget, seed):
    names = list(payload["variables"])
    if len(set(names)) != len(names):
        raise ValueError("duplicate variable names")
    gens = [parse_multi(s, names) for s in payload["generators"]]
    ideal = Ideal(names, gens)
    sat = payload.get("saturate")
    if sat is not None:
        ideal = saturate(ideal, parse_multi(sat, names), budget)
    drop = payload.get("eliminate", [])
    if drop:
        ideal = eliminate(ideal, drop, budget)
    order = ORDERS[payload.get("order", "grevlex")]
    basis = groebner(ideal, order, budget)
    values = {
        "variables": list(basis.variables),
        "basis": [format_multi(g, order) for g in basis.generators],
    }
    return "ok", values, None


def _pair_from_payload(payload: dict) -> Pair:
    group = GroupPresentation.torus(payload["rank"])
    return Pair(
        TorusWeights(payload["weights_v"]),
        TorusWeights(payload["weights_w"]),
        _rats(payload["v"]),
        _rats(payload["w"]),
        group,
    )


def _run_pairs_check(payload: dict, budget: Budget, seed):
    verdict = torus_semistable(_pair_from_payload(payload))
    return verdict.status, {}, _jsonable(verdict.certificate)


def _run_pairs_stable(payload: dict, budget: Budget, seed):
    pair = _pair_from_payload(payload)
    top = payload.get("max_level", 5)
    levels = {}
    least_assoc = None
    least_dr = None
    best_cert = None
    for level in range(1, top + 1):
        assoc = torus_stable_at(pair, level)
        dr = dr_stable_at(pair, level)
        levels[str(level)] = {"associated": assoc.status, "dr": dr.status}
        if assoc.status == "stable-at-l" and least_assoc is None:
            least_assoc = level
            best_cert = _jsonable(assoc.certificate)
        if dr.status == "stable-at-l" and least_dr is None:
            least_dr = level
    values = {
        "levels": levels,
        "least_stable_level": least_assoc,
        "least_dr_level": least_dr,
        "max_level": top,
    }
    status = "stable-at-l" if least_assoc is not None else "not-stable-at-l"
    return status, values, best_cert


def _run_pairs_falsify(payload: dict, budget: Budget, seed):
    group = _build_group(payload["group"])
    pair = Pair(
        _build_rep(payload["rep_v"], group),
        _build_rep(payload["rep_w"], group),
        _rats(payload["v"]),
        _rats(payload["w"]),
        group,
    )
    draws = payload.get("draws", 200)
    found = sample_falsifier(pair, budget=draws, seed=seed)
    if found is None:
        return "none-found", {"draws": draws}, None
    arc, mu = found
    cert = {"arc": _arc_json(arc), "mu": format_rational(mu)}
    return "destabilized", {"mu": format_rational(mu)}, cert


def _run_arcs_weight(payload: dict, budget: Budget, seed):
    group = _build_group(payload["group"])
    rep_v = _build_rep(payload["rep_v"], group)
    rep_w = _build_rep(payload["rep_w"], group)
    arc = _build_arc(payload["arc"])
    if not check_arc(group, arc):
        raise ValueError("arc does not satisfy the group relations")
    mu = mu_weight(rep_v, rep_w, _rats(payload["v"]), _rats(payload["w"]), arc)
    values = {"mu": "infinity" if mu is math.inf else format_rational(mu)}
    try:
        values["norm"] = format_rational(arc_norm(rep_v, _rats(payload["v"]), arc))
    except ValueError:
        pass
    return "ok", values, None


def _run_arcs_equiv(payload: dict, budget: Budget, seed):
    a = _build_arc(payload["arc_a"])
    b = _build_arc(payload["arc_b"])
    desc = payload.get("group")
    if desc is not None:
        group = _build_group(desc)
        for label, arc in (("arc_a", a), ("arc_b", b)):
            if not check_arc(group, arc):
                raise ValueError(f"{label} does not satisfy the group relations")
    same = arcs_equivalent(a, b)
    return ("equivalent" if same else "not-equivalent"), {"equivalent": same}, None


def _problem_from_payload(payload: dict) -> ActionProblem:
    group = _build_group(payload["group"])
    action = _build_action(payload["action"], group)
    space = list(payload["space"])
    limit = list(payload["limit"])
    ideal_y = Ideal(space, [parse_multi(s, space) for s in payload.get("variety", [])])
    target = payload.get("target")
    if target is None:
        ideal_w = ideal_y
    else:
        ideal_w = Ideal(space, [parse_multi(s, space) for s in target])
    return ActionProblem(
        space,
        limit,
        ideal_y,
        ideal_w,
        group,
        action,
        projective=payload.get("projective", False),
    )


def _run_locus_map(payload: dict, budget: Budget, seed):
    prob = _problem_from_payload(payload)
    return "ok", _ideal_json(orbit_map_closure(prob, budget)), None


def _run_locus_degeneration(payload: dict, budget: Budget, seed):
    prob = _problem_from_payload(payload)
    probes = [_rats(p) for p in payload.get("probes", [])]
    report = degeneration_locus(prob, probes, budget)
    values = _ideal_json(report.ideal)
    values["overapproximation"] = report.overapproximation
    values["oracle"] = [
        {
            "point": [format_rational(c) for c in row.point],
            "degenerates": row.degenerates,
            "in_locus": row.in_locus,
        }
        for row in report.oracle_table
    ]
    return "ok", values, None


def _run_locus_oracle(payload: dict, budget: Budget, seed):
    prob = _problem_from_payload(payload)
    hits = point_degenerates(prob, _rats(payload["point"]), budget)
    status = "degenerates" if hits else "does-not-degenerate"
    return status, {"degenerates": hits}, None


def _run_locus_family(payload: dict, budget: Budget, seed):
    group = GroupPresentation.torus(payload["rank"])
    base = list(payload["base"])
    fam = FamilyPair(
        base,
        TorusWeights(payload["weights_v"]),
        TorusWeights(payload["weights_w"]),
        [parse_multi(s, base) for s in payload["v"]],
        [parse_multi(s, base) for s in payload["w"]],
        group,
    )
    pieces = family_unstable_locus(fam, budget)
    values = {
        "base": base,
        "components": [[format_multi(g) for g in p.generators] for p in pieces],
    }
    return "ok", values, None


def _run_toric_hilb(payload: dict, budget: Budget, seed):
    coeffs = toric_hilb(_build_polytope(payload["polytope"]))
    values = {"a0": format_rational(coeffs.a0), "a1": format_rational(coeffs.a1)}
    return "ok", values, None


def _run_toric_df(payload: dict, budget: Budget, seed):
    P = _build_polytope(payload["polytope"])
    data = toric_df_data(P, _build_pl(payload["pieces"], P.dim))
    values = {
        "df": format_rational(data.df),
        "a0": format_rational(data.a0),
        "a1": format_rational(data.a1),
        "b0": format_rational(data.b0),
        "b1": format_rational(data.b1),
        "integral": format_rational(data.integral_f),
        "boundary_integral": format_rational(data.boundary_integral_f),
    }
    return "ok", values, None


def _run_toric_norm(payload: dict, budget: Budget, seed):
    P = _build_polytope(payload["polytope"])
    norm = toric_minnorm(P, _build_pl(payload["pieces"], P.dim))
    return "ok", {"minnorm": format_rational(norm)}, None


def _run_toric_uniform(payload: dict, budget: Budget, seed):
    P = _build_polytope(payload["polytope"])
    creases = [Crease(_rats(c["normal"]), _rat(c["offset"])) for c in payload["creases"]]
    res = toric_uniform_search(P, creases, _rat(payload["epsilon"]), budget)
    values = {
        "minimum": format_rational(res.minimum),
        "df": format_rational(res.df),
        "minnorm": format_rational(res.minnorm),
        "alpha": [format_rational(x) for x in res.alpha],
        "beta": [format_rational(x) for x in res.beta],
    }
    cert = None if res.certificate is None else _pl_json(res.certificate)
    return res.status, values, cert


def _run_model_df(payload: dict, budget: Budget, seed):
    a = HilbCoeffs(_rat(payload["a0"]), _rat(payload["a1"]))
    b = ModelNumbers(_rat(payload["b0"]), _rat(payload["b1"]))
    return "ok", {"df": format_rational(df_invariant(a, b))}, None


def _run_model_norm(payload: dict, budget: Budget, seed):
    b = ModelNumbers(
        0,
        0,
        r=_rat(payload["r"]),
        n=payload["n"],
        l_mix=_rat(payload["l_mix"]),
        l_top=_rat(payload["l_top"]),
        vol_ln=_rat(payload["vol"]),
    )
    return "ok", {"norm": format_rational(model_norm(b))}, None


_HANDLERS = {
    "algebra.groebner": _run_algebra_groebner,
    "arcs.weight": _run_arcs_weight,
    "arcs.equiv": _run_arcs_equiv,
    "pairs.check": _run_pairs_check,
    "pairs.stable": _run_pairs_stable,
    "pairs.falsify": _run_pairs_falsify,
    "locus.map": _run_locus_map,
    "locus.degeneration": _run_locus_degeneration,
    "locus.oracle": _run_locus_oracle,
    "locus.family": _run_locus_family,
    "toric.hilb": _run_toric_hilb,
    "toric.df": _run_toric_df,
    "toric.norm": _run_toric_norm,
    "toric.uniform": _run_toric_uniform,
    "model.df": _run_model_df,
    "model.norm": _run_model_norm,
}


def execute_job(
    document: dict,
    budget_override: int | None = None,
    seed_override: int | None = None,
    validator: jsonschema.Draft202012Validator | None = None,
    timing: bool = False,
) -> dict:
    """Validate and run one job document, returning the report dict."""
    if validator is None:
        validator = _job_validator()
    validator.validate(document)
    kind = document["kind"]
    limit = budget_override if budget_override is not None else document.get("budget")
    budget = Budget() if limit is None else Budget(limit)
    seed = seed_override if seed_override is not None else document.get("seed")
    if kind == "pairs.falsify" and seed is None:
        seed = 0
    started = time.monotonic()
    verdict, values, certificate = _HANDLERS[kind](document["payload"], budget, seed)
    elapsed_ms = int((time.monotonic() - started) * 1000)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "verdict": verdict,
        "values": values,
        "certificate": certificate,
        "budget": {"limit": budget.limit, "used": budget.used},
        "seed": seed,
        "modules": {"stabkit": __version__},
        "timing": {"milliseconds": elapsed_ms} if timing else None,
    }


def _render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _cmd_run(args) -> int:
    try:
        document = json.loads(Path(args.job).read_text())
    except OSError as exc:
        print(f"cannot read job document: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except json.JSONDecodeError as exc:
        print(f"job document is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        report = execute_job(
            document,
            budget_override=args.budget,
            seed_override=args.seed,
            timing=args.timing,
        )
    except jsonschema.ValidationError as exc:
        print(f"invalid job document: {exc.message} (at {exc.json_path})", file=sys.stderr)
        return EXIT_INVALID
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, ValueError, TypeError, KeyError) as exc:
        print(f"invalid job input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(_render(report), args.out)
    return EXIT_OK


def _criterion_sort_key(cid: str):
    return (cid[0], int(cid[1:])) if cid[1:].isdigit() else (cid, 0)


def _matches(expected, actual) -> bool:
    """Deep subset comparison: dict expectations may omit keys."""
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return False
        return all(k in actual and _matches(v, actual[k]) for k, v in expected.items())
    if isinstance(expected, list):
        if not isinstance(actual, list) or len(expected) != len(actual):
            return False
        return all(_matches(e, a) for e, a in zip(expected, actual))
    return expected == actual


def _first_mismatch(expected, actual, path: str = "") -> str:
    if isinstance(expected, dict) and isinstance(actual, dict):
        for k, v in expected.items():
            if k not in actual:
                return f"{path}.{k} missing"
            if not _matches(v, actual[k]):
                return _first_mismatch(v, actual[k], f"{path}.{k}")
        return f"{path} mismatch"
    if isinstance(expected, list) and isinstance(actual, list):
        if len(expected) != len(actual):
            return f"{path} length {len(actual)} != {len(expected)}"
        for i, (e, a) in enumerate(zip(expected, actual)):
            if not _matches(e, a):
                return _first_mismatch(e, a, f"{path}[{i}]")
        return f"{path} mismatch"
    return f"{path}: expected {expected!r}, got {actual!r}"


def _load_corpus(directory: Path) -> list[dict]:
    files = sorted(p for p in directory.iterdir() if p.suffix == ".json")
    validator = jsonschema.Draft202012Validator(_load_schema("corpus-v1.schema.json"))
    entries: list[dict] = []
    for path in files:
        batch = json.loads(path.read_text())
        validator.validate(batch)
        entries.extend(batch)
    ids = [e["id"] for e in entries]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate corpus entry ids")
    entries.sort(key=lambda e: e["id"])
    return entries


def _run_entry(entry: dict, budget_override, validator) -> tuple[bool, str]:
    try:
        report = execute_job(entry["job"], budget_override=budget_override, validator=validator)
    except Exception as exc:  # noqa: BLE001 - a crashing entry is a failing entry
        return False, f"{type(exc).__name__}: {exc}"
    expected = entry["expect"]
    if _matches(expected, report):
        return True, "ok"
    return False, _first_mismatch(expected, report)


def _cmd_corpus(args) -> int:
    if args.corpus is not None:
        directory = Path(args.corpus)
    else:
        directory = Path(str(resources.files("stabkit").joinpath("corpus")))
    if not directory.is_dir():
        print(f"corpus directory not found: {directory}", file=sys.stderr)
        return EXIT_INVALID
    try:
        entries = _load_corpus(directory)
    except (json.JSONDecodeError, jsonschema.ValidationError, ValueError) as exc:
        print(f"invalid corpus: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not entries:
        print("empty corpus directory", file=sys.stderr)
        return EXIT_INVALID
    validator = _job_validator()
    with ThreadPoolExecutor(max_workers=min(8, len(entries))) as pool:
        outcomes = list(
            pool.map(lambda e: _run_entry(e, args.budget, validator), entries)
        )
    by_criterion: dict[str, list[tuple[dict, bool, str]]] = {}
    for entry, (passed, detail) in zip(entries, outcomes):
        by_criterion.setdefault(entry["criterion"], []).append((entry, passed, detail))
    lines = []
    for entry, (passed, detail) in zip(entries, outcomes):
        mark = "ok" if passed else f"FAIL: {detail}"
        lines.append(f"[{entry['id']}] {mark}")
    all_pass = True
    for cid in sorted(by_criterion, key=_criterion_sort_key):
        rows = by_criterion[cid]
        good = sum(1 for _, passed, _ in rows if passed)
        if good == len(rows):
            lines.append(f"{cid} PASS ({good}/{len(rows)})")
        else:
            all_pass = False
            lines.append(f"{cid} FAIL ({good}/{len(rows)})")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out is not None:
        summary = {
            "criteria": {
                cid: all(passed for _, passed, _ in rows)
                for cid, rows in by_criterion.items()
            },
            "entries": [
                {"id": entry["id"], "passed": passed, "detail": detail}
                for entry, (passed, detail) in zip(entries, outcomes)
            ],
        }
        Path(args.out).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if all_pass else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="stabkit",
        description="Exact stability certificates over the rationals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute one JSON job document")
    run_p.add_argument("job", help="path to the job document")
    run_p.add_argument("--budget", type=int, default=None, help="step budget override")
    run_p.add_argument("--seed", type=int, default=None, help="seed override")
    run_p.add_argument("--out", default=None, help="write the report to this path")
    run_p.add_argument(
        "--timing", action="store_true", help="include wall-clock timing in the report"
    )
    run_p.set_defaults(func=_cmd_run)

    corpus_p = sub.add_parser("corpus", help="run the bundled acceptance corpus")
    corpus_p.add_argument("--corpus", default=None, help="corpus directory override")
    corpus_p.add_argument("--budget", type=int, default=None, help="step budget override")
    corpus_p.add_argument("--out", default=None, help="write a JSON summary to this path")
    corpus_p.set_defaults(func=_cmd_corpus)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
