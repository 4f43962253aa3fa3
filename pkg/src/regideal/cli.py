"""Command line entry point: ``regideal {info,invariants,distance,export,verify}``.

Exit codes: 0 clean, 1 violations found by ``verify``, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from datetime import datetime, timezone

from . import closed_form as cf
from . import regular_graph as rg
from . import verify as vf
from .grammar import ParseError, format_ideal, format_ring, parse_ideal, parse_ring
from .graph_metrics import all_pairs_distances, is_connected_predicate, shortest_path
from .ring_core import ProductRing, RingError

SCHEMA = "regideal/1"


class UsageError(Exception):
    pass


def _ring(text: str) -> ProductRing:
    return parse_ring(text)


def _graph(R: ProductRing):
    g = rg.build_digraph(R)
    return g, rg.underlying(g), all_pairs_distances(rg.underlying(g))


def _engine(R: ProductRing) -> cf.Engine | None:
    return cf.engine(R) if is_connected_predicate(R) else None


def _class_tag(eng: cf.Engine | None, I) -> str | None:
    if eng is None:
        return None
    c = eng.classify(I)
    if c.tag == "reduced":
        return "support{" + ",".join(str(k + 1) for k in sorted(c.detail)) + "}"
    return c.tag


# info ----------------------------------------------------------------------------


def cmd_info(args) -> int:
    R = _ring(args.ring)
    _, _, m = _graph(R)
    info = {
        "schema": SCHEMA,
        "ring": format_ring(R),
        "components": [
            {"term": format_ring([c]), "order": c.order, "ideals": c.ideal_count, "field": c.is_field}
            for c in R.components
        ],
        "order": R.order,
        "n_fields": R.n_fields,
        "max_ideals": R.max_ideal_count,
        "reduced": R.is_reduced,
        "vertices": len(R.vertices),
        "connected_predicate": is_connected_predicate(R),
        "connected_bfs": m.connected,
    }
    if args.json:
        print(json.dumps(info, indent=2))
        return 0
    print(f"ring:         {info['ring']}")
    for c in info["components"]:
        kind = "field" if c["field"] else "local, not a field"
        print(f"  {c['term']:<18} order {c['order']:<5} {c['ideals']} ideals  ({kind})")
    print(f"n_F(R):       {info['n_fields']}")
    print(f"|Max(R)|:     {info['max_ideals']}")
    print(f"reduced:      {'yes' if info['reduced'] else 'no'}")
    print(f"vertices:     {info['vertices']}")
    print(f"connected:    predicate={'yes' if info['connected_predicate'] else 'no'}, "
          f"bfs={'yes' if info['connected_bfs'] else 'no'}")
    return 0


# invariants ------------------------------------------------------------------------


def invariants_report(R: ProductRing, mode: str = "both") -> dict:
    eng = _engine(R)
    if mode == "formula" and eng is None:
        raise UsageError("formula mode needs a connected ring (>= 3 maximal ideals and a field factor)")
    vs = R.vertices
    labels = [format_ideal(R, I) for I in vs]
    out: dict = {"schema": SCHEMA, "ring": format_ring(R), "mode": mode, "vertices": labels}
    if mode in ("bfs", "both"):
        _, _, m = _graph(R)
        out["connected"] = m.connected
        out["bfs"] = {
            "radius": m.radius if m.connected else None,
            "diameter": m.diameter if m.connected else None,
            "eccentricity": dict(zip(labels, m.eccentricities)),
            "center": [labels[i] for i in m.center] if m.connected else [],
            "distances": m.distance_rows(),
        }
    if mode in ("formula", "both") and eng is not None:
        rows = []
        for I in vs:
            row = []
            for J in vs:
                if I == J:
                    row.append(0)
                    continue
                d = eng.distance(I, J)
                row.append(d.exact if d.exact is not None else sorted(d.candidates))
            rows.append(row)
        if eng.reduced:
            ecc = {lab: 3 for lab in labels}
        else:
            ecc = {lab: eng.eccentricity(I).exact for lab, I in zip(labels, vs)}
        center = eng.center()
        out["formula"] = {
            "radius": eng.radius(),
            "diameter": eng.diameter(),
            "eccentricity": ecc,
            "center": [lab for lab, I in zip(labels, vs) if I in center],
            "classes": {lab: _class_tag(eng, I) for lab, I in zip(labels, vs)},
            "distances": rows,
        }
    if mode == "both":
        out["discrepancies"] = [asdict(d) for d in vf.cross_check(R)]
    return out


def cmd_invariants(args) -> int:
    R = _ring(args.ring)
    print(json.dumps(invariants_report(R, args.mode), indent=2))
    return 0


# distance ---------------------------------------------------------------------------


def cmd_distance(args) -> int:
    R = _ring(args.ring)
    I, J = parse_ideal(R, args.i), parse_ideal(R, args.j)
    for name, X in (("i", I), ("j", J)):
        if not R.is_nontrivial(X):
            raise UsageError(f"{name} is the zero or unit ideal, not a vertex")
    if I == J:
        raise UsageError("i and j are the same vertex")
    g, ug, m = _graph(R)
    eng = _engine(R)
    a, b = ug.index[I], ug.index[J]
    print(f"ring:    {format_ring(R)}")
    print(f"i:       {format_ideal(R, I)}" + (f"  [{_class_tag(eng, I)}]" if eng else ""))
    print(f"j:       {format_ideal(R, J)}" + (f"  [{_class_tag(eng, J)}]" if eng else ""))
    if eng is None:
        print("formula: n/a (ring fails the connectivity criterion)")
    else:
        d = eng.distance(I, J)
        print(f"formula: {d}  ({d.rule})")
    bfs = m.distance(a, b)
    print(f"bfs:     {'inf' if bfs is None else bfs}")
    path = shortest_path(ug, a, b)
    if path is not None:
        steps = [format_ideal(R, ug.vertices[path[0]])]
        for u, w in zip(path, path[1:]):
            arrow = "->" if g.arcs[u, w] else "<-"
            steps.append(f"{arrow} {format_ideal(R, ug.vertices[w])}")
        print("path:    " + " ".join(steps))
    return 0


# export -------------------------------------------------------------------------------


def export_text(R: ProductRing, fmt: str) -> str:
    g = rg.build_digraph(R)
    vs = R.vertices
    labels = [format_ideal(R, I) for I in vs]
    if fmt == "edges":
        return "".join(f"{i}\t{j}\n" for i, j in g.arc_list())
    if fmt == "dot":
        lines = [f"// {format_ring(R)}", "digraph regideal {"]
        lines += [f'  n{i} [label="{lab}"];' for i, lab in enumerate(labels)]
        lines += [f"  n{i} -> n{j};" for i, j in g.arc_list()]
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        eng = _engine(R)
        m = all_pairs_distances(rg.underlying(g))
        doc = {
            "schema": SCHEMA,
            "ring": format_ring(R),
            "vertices": [
                {"index": i, "label": lab, "class": _class_tag(eng, I),
                 "out_degree": int(g.out_degree[i]), "in_degree": int(g.in_degree[i])}
                for i, (lab, I) in enumerate(zip(labels, vs))
            ],
            "arcs": [list(a) for a in g.arc_list()],
            "metrics": {
                "connected": m.connected,
                "radius": m.radius if m.connected else None,
                "diameter": m.diameter if m.connected else None,
                "eccentricity": list(m.eccentricities),
                "center": list(m.center),
                "distances": m.distance_rows(),
            },
        }
        return json.dumps(doc, indent=2) + "\n"
    raise UsageError(f"unknown export format {fmt!r}")


def cmd_export(args) -> int:
    text = export_text(_ring(args.ring), args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# verify -----------------------------------------------------------------------------------


def verify_report(cfg: vf.FamilyConfig, controls: bool = True) -> dict:
    started = time.perf_counter()
    reports = vf.run_family(cfg, controls=controls)
    return {
        "schema": SCHEMA,
        "config": asdict(cfg),
        "summary": vf.summarize(reports),
        "rings": [r.to_json() for r in reports],
        "open_questions": cf.OPEN_QUESTIONS,
        # sidecar, excluded from golden comparisons
        "meta": {
            "generated_at": datetime.now(timezone.utc).isoformat(),
            "elapsed_seconds": round(time.perf_counter() - started, 3),
        },
    }


def cmd_verify(args) -> int:
    cfg = vf.FamilyConfig(
        seed=args.seed, count=args.count, max_vertices=args.max_vertices,
        max_components=args.max_components,
    )
    try:
        report = verify_report(cfg, controls=not args.no_controls)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    s = report["summary"]
    print(
        f"checked {s['rings']} rings ({s['connected']} connected): "
        f"{s['violations']} violations, {s['known_open']} known-open",
        file=sys.stderr,
    )
    return 1 if s["violations"] else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="regideal", description="Regular digraph of ideals of finite Artinian rings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="ring summary")
    s.add_argument("ring")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("invariants", help="radius, diameter, eccentricities, center")
    s.add_argument("ring")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--formula-only", dest="mode", action="store_const", const="formula")
    mode.add_argument("--bfs-only", dest="mode", action="store_const", const="bfs")
    mode.add_argument("--both", dest="mode", action="store_const", const="both")
    s.set_defaults(func=cmd_invariants, mode="both")

    s = sub.add_parser("distance", help="distance between two ideals")
    s.add_argument("ring")
    s.add_argument("i")
    s.add_argument("j")
    s.set_defaults(func=cmd_distance)

    s = sub.add_parser("export", help="write the digraph as dot, edges or json")
    s.add_argument("ring")
    s.add_argument("--format", default="dot", help="dot, edges or json")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("verify", help="cross-check closed forms against brute force")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=30)
    s.add_argument("--max-vertices", type=int, default=3000)
    s.add_argument("--max-components", type=int, default=4)
    s.add_argument("--no-controls", action="store_true", help="skip the disconnected control rings")
    s.add_argument("--out", help="write the JSON report here instead of stdout")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, RingError, UsageError, cf.FormulaError) as exc:
        print(f"regideal: error: {exc}", file=sys.stderr)
        return 2
    except rg.ArcMismatchError as exc:
        print(f"regideal: internal check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
