"""Command-line surface: catalogs, realization, engine runs, tracing, sweeps.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error,
3 internal consistency error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from typing import Optional, Sequence

from . import __version__
from .covering import (
    CoveringData,
    dual_graph,
    riemann_hurwitz_genus,
    validate,
)
from .dihedral import DihedralGroup, GroupElement, Word, left_cosets, subgroup_generated
from .errors import ConsistencyError
from .families import (
    catalog_to_dot,
    catalog_to_json,
    catalog_to_table,
    enumerate_boundary,
    g4_structure,
)
from .pants import PRESETS, DTCoordinates, trace_components
from .pyramidal import phi_z, realize_g4
from .stable_graphs import (
    genus as graph_genus,
    invariant_key,
    is_isomorphic,
    validate_stability,
)


def _cmd_enumerate(args) -> int:
    entries = enumerate_boundary(args.genus)
    if args.format == "json":
        print(json.dumps(catalog_to_json(args.genus, entries), indent=2))
    elif args.format == "dot":
        print(catalog_to_dot(entries), end="")
    else:
        print(catalog_to_table(args.genus, entries), end="")
    return 0


def _cmd_realize(args) -> int:
    sigma1 = None
    if args.sigma1 is not None:
        sigma1 = GroupElement(args.sigma1, True, args.n)
    witness = realize_g4(args.n, args.m, args.d, eps=args.epsilon, sigma1=sigma1)
    print(json.dumps(witness.to_json(), indent=2))
    return 0


def _cmd_dual_graph(args) -> int:
    try:
        with open(args.input) as fh:
            obj = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: {args.input} is not valid JSON: {exc}", file=sys.stderr)
        return 2
    data = CoveringData.from_json(obj)
    diags = validate(data)
    if diags:
        for diag in diags:
            print(f"validation: {diag}", file=sys.stderr)
        return 2
    graph = dual_graph(data)
    report = {
        "graph": graph.to_json(),
        "genus": graph_genus(graph),
        "riemann_hurwitz_genus": riemann_hurwitz_genus(data),
        "stability": validate_stability(graph).to_json(),
    }
    if data.expected_genus is not None:
        report["expected_genus"] = data.expected_genus
    if args.format == "dot":
        print(f"// genus={report['genus']} riemann_hurwitz={report['riemann_hurwitz_genus']}")
        print(graph.to_dot())
    else:
        print(json.dumps(report, indent=2))
    return 0


def _cmd_trace(args) -> int:
    decomp = PRESETS[args.preset]()
    try:
        vec = [int(tok) for tok in args.coords.split(",")]
    except ValueError:
        raise ValueError(f"coordinates must be a comma-separated integer list, got {args.coords!r}")
    coords = DTCoordinates.from_vector(decomp, vec)
    system = trace_components(decomp, coords)
    if args.format == "json":
        print(json.dumps({"preset": args.preset, **system.to_json()}, indent=2))
        return 0
    pretty = " ".join(f"{lab}={v}" for lab, v in coords.entries)
    arcs = system.arcs
    closed = system.closed_components
    print(f"preset {args.preset}: {pretty}")
    print(f"{len(system.components)} component(s): {len(arcs)} arc(s), {len(closed)} closed")
    for comp in system.components:
        crossings = " ".join(f"{lab}={c}" for lab, c in comp.crossings)
        if comp.closed:
            print(f"  closed  crossings: {crossings}")
        else:
            a, b = comp.endpoints
            print(f"  arc {a} -- {b}  crossings: {crossings}")
    return 0


def _all_subgroups(n: int):
    """Every subgroup of D_n: <rho^d> and <rho^d, rho^j sigma> per divisor d."""
    group = DihedralGroup(n)
    subs = []
    for d in [d for d in range(1, n + 1) if n % d == 0]:
        subs.append(subgroup_generated([group.rho(d)], group))
        for j in range(d):
            subs.append(subgroup_generated([group.rho(d), group.sigma(j)], group))
    return group, subs


def _suite_group_axioms(n_max: int):
    checks, failures = 0, []
    for n in range(1, min(n_max, 20) + 1):
        group = DihedralGroup(n)
        elems = list(group.elements())
        ident = group.identity()
        for a in elems:
            checks += 2
            if a * ident != a or ident * a != a:
                failures.append(f"identity law fails for {a} in D_{n}")
            if a * a.inverse() != ident or a.inverse() * a != ident:
                failures.append(f"inverse law fails for {a} in D_{n}")
        for a in elems:
            for b in elems:
                ab = a * b
                for c in elems:
                    checks += 1
                    if ab * c != a * (b * c):
                        failures.append(f"associativity fails for ({a})({b})({c}) in D_{n}")
                        return checks, failures
    return checks, failures


def _suite_subgroups(n_max: int):
    checks, failures = 0, []
    for n in range(1, min(n_max, 20) + 1):
        group, subs = _all_subgroups(n)
        for sub in subs:
            checks += 2
            if not sub.is_closed():
                failures.append(f"closure fails for order-{sub.order} subgroup of D_{n}")
            if group.order % sub.order:
                failures.append(
                    f"Lagrange fails: |H|={sub.order} does not divide {group.order} in D_{n}"
                )
            cosets = left_cosets(sub, group)
            checks += 1
            if len(cosets) * sub.order != group.order or len(
                {g for c in cosets for g in c.members}
            ) != group.order:
                failures.append(f"cosets of order-{sub.order} subgroup do not partition D_{n}")
    return checks, failures


def _suite_word_identities(n_max: int):
    checks, failures = 0, []
    r, s = Word.sym("r"), Word.sym("s")
    for n in range(1, min(n_max, 50) + 1):
        group = DihedralGroup(n)
        assign = {"r": group.rho(1), "s": group.sigma(0)}
        for ell in range(0, 26):
            w1 = (s * r * s) ** (ell - 1) * s
            lhs1 = (w1 * (r * s) * w1.inverse()).evaluate(assign, group)
            checks += 1
            if lhs1 != group.sigma(1 - 2 * ell):
                failures.append(f"even-case identity fails at n={n}, l={ell}: {lhs1}")
            w2 = (r * s * s) ** ell
            lhs2 = (w2 * (r * s) * w2.inverse()).evaluate(assign, group)
            checks += 1
            if lhs2 != group.sigma(1 + 2 * ell):
                failures.append(f"odd-case identity fails at n={n}, l={ell}: {lhs2}")
            if failures:
                return checks, failures
    return checks, failures


def _suite_case_forms(n_max: int):
    checks, failures = 0, []
    for n in range(3, min(n_max, 30) + 1):
        group = DihedralGroup(n)
        for m in [m for m in range(1, n + 1) if n % m == 0]:
            k = n // m
            for eps in (1, -1):
                for j in range(n):
                    sigma1 = group.sigma(j)
                    for x in range(0, 2 * k + 3):
                        checks += 1
                        try:
                            phi_z(n, k, eps, sigma1, x)
                        except ConsistencyError as exc:
                            failures.append(str(exc))
                            return checks, failures
    return checks, failures


def _suite_families(n_max: int):
    checks, failures = 0, []
    for n in range(3, n_max + 1):
        entries = enumerate_boundary(n)
        for e in entries:
            checks += 2
            if graph_genus(e.graph) != n:
                failures.append(f"{e.tags[0]}: genus {graph_genus(e.graph)} != {n}")
            report = validate_stability(e.graph)
            if not report.ok:
                failures.append(f"{e.tags[0]}: stability violated at {report.unstable_vertices}")
        keys = [invariant_key(e.graph) for e in entries]
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                if keys[i] != keys[j]:
                    continue
                checks += 1
                if is_isomorphic(entries[i].graph, entries[j].graph):
                    failures.append(
                        f"catalog for n={n} contains isomorphic pair "
                        f"{entries[i].tags[0]} and {entries[j].tags[0]}"
                    )
        if failures:
            return checks, failures
    return checks, failures


def _realization_cases(n_max: int, sweep: bool):
    for n in range(3, n_max + 1):
        for m in [m for m in range(1, n + 1) if n % m == 0]:
            k = n // m
            for d in [d for d in range(1, k + 1) if k % d == 0]:
                if sweep:
                    for eps in (1, -1):
                        for j in range(n):
                            yield n, m, d, eps, j
                else:
                    yield n, m, d, 1, None
    return


def _suite_realization(n_max: int, sweep: bool):
    checks, failures = 0, []
    for n, m, d, eps, j in _realization_cases(n_max, sweep):
        sigma1 = None if j is None else GroupElement(j, True, n)
        checks += 1
        try:
            witness = realize_g4(n, m, d, eps=eps, sigma1=sigma1)
        except (ValueError, ConsistencyError) as exc:
            failures.append(f"realize_g4({n},{m},{d},eps={eps},sigma1_j={j}): {exc}")
            return checks, failures
        st = g4_structure(witness.graph)
        k = n // m
        if st is None or st["n"] != n or st["m"] != m or st["cycles"] != (d,) * (k // d):
            failures.append(
                f"realize_g4({n},{m},{d}): engine output profile {st} does not "
                f"match hub degree {n}, multiplicity {m}, {k // d} cycles of length {d}"
            )
            return checks, failures
    return checks, failures


def _conserves(system, coords) -> bool:
    totals: Counter = Counter()
    for comp in system.components:
        for lab, c in comp.crossings:
            totals[lab] += c
    return all(totals.get(lab, 0) == v for lab, v in coords.entries)


def _suite_tracer(n_max: int):
    checks, failures = 0, []
    o5 = PRESETS["O5"]()
    op4 = PRESETS["Oprime4"]()
    for x in range(1, 41):
        vec = (x, 0, 1, 1, 0, 0, 0) if x % 2 else (x, 0, 0, 1, 1, 0, 0)
        coords = DTCoordinates.from_vector(o5, vec)
        system = trace_components(o5, coords)
        want = ("p1", "p2") if x % 2 else ("p2", "p3")
        checks += 2
        if len(system.components) != 1 or system.components[0].closed:
            failures.append(f"arc coords x={x}: expected a single arc, got {system.to_json()}")
            return checks, failures
        if system.components[0].endpoints != want:
            failures.append(
                f"arc coords x={x}: endpoints {system.components[0].endpoints}, expected {want}"
            )
        if not _conserves(system, coords):
            failures.append(f"arc coords x={x}: crossing totals do not match coordinates")
    for x in range(0, 41):
        vec = (x, 0, 1, 1, 0) if x % 2 else (x, 1, 0, 1, 0)
        coords = DTCoordinates.from_vector(op4, vec)
        system = trace_components(op4, coords)
        checks += 2
        if len(system.components) != 1 or system.components[0].closed:
            failures.append(f"curve coords x={x}: expected a single arc")
            return checks, failures
        if x % 2 == 0 and system.components[0].endpoints != ("p1", "p3"):
            failures.append(
                f"curve coords x={x}: endpoints {system.components[0].endpoints}, "
                f"expected ('p1', 'p3')"
            )
        if not _conserves(system, coords):
            failures.append(f"curve coords x={x}: crossing totals do not match coordinates")
    return checks, failures


def _cmd_verify(args) -> int:
    if args.max_genus < 3:
        raise ValueError(f"--max-genus must be at least 3, got {args.max_genus}")
    suites = [
        ("group axioms", lambda: _suite_group_axioms(args.max_genus)),
        ("subgroup closure/Lagrange", lambda: _suite_subgroups(args.max_genus)),
        ("word identities", lambda: _suite_word_identities(args.max_genus)),
        ("case forms", lambda: _suite_case_forms(args.max_genus)),
        ("family soundness", lambda: _suite_families(args.max_genus)),
        ("dehn-thurston tracing", lambda: _suite_tracer(args.max_genus)),
        ("realization", lambda: _suite_realization(args.max_genus, args.sweep_params)),
    ]
    any_failure = False
    for name, run in suites:
        checks, failures = run()
        status = "ok" if not failures else "FAIL"
        print(f"{name:<28} {checks:>8} checks  {status}")
        for line in failures[:5]:
            any_failure = True
            print(f"  counterexample: {line}")
    if any_failure:
        print(f"verify: FAIL (max genus {args.max_genus})")
        return 1
    print(f"verify: PASS (max genus {args.max_genus})")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equistrata",
        description="Boundary strata of the dihedral pyramidal locus: "
        "catalogs, covering-data dual graphs, curve tracing, realization.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="list the genus-n boundary strata")
    p_enum.add_argument("--genus", type=int, required=True, help="target genus n >= 3")
    p_enum.add_argument("--format", choices=("table", "json", "dot"), default="table")
    p_enum.set_defaults(func=_cmd_enumerate)

    p_real = sub.add_parser("realize-g4", help="realize the stratum G4(n, m, d)")
    p_real.add_argument("--n", type=int, required=True)
    p_real.add_argument("--m", type=int, required=True)
    p_real.add_argument("--d", type=int, required=True)
    p_real.add_argument("--epsilon", type=int, choices=(1, -1), default=1)
    p_real.add_argument(
        "--sigma1", type=int, default=None, metavar="J", help="use the symmetry rho^J sigma"
    )
    p_real.set_defaults(func=_cmd_realize)

    p_dual = sub.add_parser("dual-graph", help="run the engine on a covering-data file")
    p_dual.add_argument("--input", required=True, help="covering data JSON file")
    p_dual.add_argument("--format", choices=("json", "dot"), default="json")
    p_dual.set_defaults(func=_cmd_dual_graph)

    p_trace = sub.add_parser("trace", help="trace a zero-twist coordinate vector")
    p_trace.add_argument("--preset", choices=tuple(PRESETS), required=True)
    p_trace.add_argument(
        "--coords", required=True, help="comma-separated values in the preset's label order"
    )
    p_trace.add_argument("--format", choices=("text", "json"), default="text")
    p_trace.set_defaults(func=_cmd_trace)

    p_verify = sub.add_parser("verify", help="run the property suites up to a genus bound")
    p_verify.add_argument("--max-genus", type=int, required=True)
    p_verify.add_argument("--sweep-params", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())