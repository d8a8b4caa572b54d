"""Command line entry point: ``qpcohom COMMAND FILE [options]``.

Exit codes: 0 ok, 1 an identity was violated, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import algebra, geometry, hochschild, potential, quiver, theorems
from .document import ParseError, parse_file, report_to_json
from .linalg import parse_field

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
ORACLE_MAX_DIM = 20


def field_name(spec) -> str:
    return (spec or os.environ.get("QP_FIELD", "q")).strip().lower()


def _yesno(b: bool) -> str:
    return "yes" if b else "no"


def _fmt_checks(checks: dict) -> list[str]:
    return [f"  [{'ok' if v else 'FAIL'}] {k}" for k, v in checks.items()]


def _qp_of(doc, args):
    if doc.is_geometry:
        return geometry.reduced_qp(doc.triangulation())
    return doc.qp()


# ---------------------------------------------------------------------------
# commands; each returns (lines, payload, ok)


def cmd_nw(doc, args):
    qp = _qp_of(doc, args)
    classes = potential.cycle_equivalence_classes(qp.potential)
    lines = [f"N_W = {len(classes)}"]
    for i, cls in enumerate(classes, 1):
        lines.append(f"class {i}: " + " | ".join(str(c) for c in cls))
    return lines, {"n_w": len(classes), "classes": [[str(c) for c in cls] for cls in classes]}, True


def cmd_extend(doc, args):
    qp = _qp_of(doc, args)
    q = qp.quiver
    lines = ["[quiver]", "vertices = " + " ".join(str(v) for v in q.vertices)]
    lines += [f"arrow {a.name} : {a.source} -> {a.target}" + (" new" if a.new else "") for a in q.arrows]
    lines += ["[potential]", f"potential W = {qp.potential}" if qp.potential else "# W = 0"]
    payload = {
        "vertices": list(q.vertices),
        "arrows": [[a.name, a.source, a.target, a.new] for a in q.arrows],
        "potential": str(qp.potential),
    }
    return lines, payload, True


def cmd_hh1(doc, args):
    field = parse_field(args.field)
    qp = _qp_of(doc, args)
    B = algebra.jacobian_algebra(qp, args.max_len, field)
    h = hochschild.hh1(B)
    lines = [f"dim B = {B.dim}", f"HH^1(B) = {h}"]
    payload = {"dim_b": B.dim, "hh1": h}
    ok = True
    if args.oracle:
        if B.dim <= ORACLE_MAX_DIM:
            bar = hochschild.bar_complex_hh1(B, ORACLE_MAX_DIM)
            ok = bar == h
            lines.append(f"bar complex HH^1(B) = {bar} ({'agrees' if ok else 'DISAGREES'})")
            payload["oracle_hh1"] = bar
        else:
            lines.append(f"bar complex check skipped (dim B > {ORACLE_MAX_DIM})")
            payload["oracle_hh1"] = None
    payload["oracle_agrees"] = ok
    return lines, payload, ok


def _theorem_a(doc, args):
    field = parse_field(args.field)
    return theorems.theorem_a_from_qp(doc.qp(), doc.declared_type, args.max_len, field)


def _theorem_a_lines(r) -> list[str]:
    lines = [
        f"dim B = {r.dim_b}, dim C = {r.dim_c}, dim E = {r.dim_e}",
        f"W = {r.potential or '0'}",
        f"N_W = {r.n_w}",
        f"N_BC = {r.n_bc}",
        f"dim End(E) = {r.end_e}",
        f"HH^1(B) = {r.hh1_b}",
        f"HH^1(C) = {r.hh1_c}",
        f"H^1(B,E) = {r.h1_b_e}",
        f"H^1(C,E) = {r.h1_c_e}",
        f"summand dims = {r.summand_dims}",
        f"Hom matrix = {r.hom_matrix}",
        f"cyclically oriented = {_yesno(r.cyclically_oriented)}",
        f"declared type = {r.declared_type}",
        f"theorem applies = {_yesno(r.theorem_applies)}",
    ]
    if r.theorem_applies:
        lines.append(f"HH^1(B) = N_W = dim End(E): {r.hh1_b} = {r.n_w} = {r.end_e}")
    return lines


def cmd_theorem_a(doc, args):
    r = _theorem_a(doc, args)
    checks = r.identities()
    lines = _theorem_a_lines(r) + ["identities:"] + _fmt_checks(checks)
    return lines, r.to_dict(), all(checks.values())


def _geometry_report(T, args):
    rep = geometry.relatedness(T)
    lines = [f"punctures = {' '.join(T.punctures)}"]
    for x in T.punctures:
        lines.append(
            f"{x}: valency {rep.valency[x]}, related {rep.rel[x]}, m = {rep.m[x]}"
        )
    lines += [f"not related = {rep.nrel}", f"m_pq = {rep.m_pq}", f"predicted dim HH^1 = {rep.dim}"]
    payload = {"relatedness": rep.to_dict(), "blocks": [b.kind for b in geometry.decompose_blocks(T)]}
    ok = True
    if args.reduce or args.oracle:
        red = geometry.reduce_local(geometry.adjacency_qp(T))
        lines.append(f"reduced W = {red.qp.potential or '0'}")
        lines.append(f"configurations = {dict(sorted(red.configurations.items()))}")
        payload["reduced_potential"] = str(red.qp.potential)
        payload["configurations"] = red.configurations
        payload["survived"] = red.survived
        if args.oracle:
            B = algebra.jacobian_algebra(red.qp, args.max_len, parse_field(args.field))
            h = hochschild.hh1(B)
            nw = potential.potential_invariant(red.qp.potential)
            ok = h == rep.dim
            lines.append(f"oracle HH^1 of reduced Jacobian algebra = {h} ({'agrees' if ok else 'DISAGREES'})")
            lines.append(f"N_W of reduced potential = {nw}")
            payload["oracle_hh1"] = h
            payload["n_w_reduced"] = nw
    return lines, payload, ok


def cmd_geom(doc, args):
    return _geometry_report(doc.triangulation(), args)


def cmd_cuts(doc, args):
    if doc.is_geometry:
        cuts = geometry.geometric_cuts(doc.triangulation(), args.max_len)
        lines, rows, ok = [], [], True
        for i, c in enumerate(cuts, 1):
            angles = ", ".join(f"{t}@{k}" for t, k in c.angles) or "-"
            lines.append(
                f"cut {i}: angles {angles}; arrows {sorted(c.arrows)}; admissible {_yesno(c.admissible)}; "
                f"dim {c.algebra_dim}; gldim <= 2 {_yesno(c.gldim_le_two)}"
            )
            ok &= c.admissible and c.gldim_le_two
            rows.append({"angles": [list(a) for a in c.angles], "arrows": sorted(c.arrows),
                         "admissible": c.admissible, "dim": c.algebra_dim, "gldim_le_two": c.gldim_le_two})
        return [f"{len(cuts)} geometric cuts"] + lines, {"cuts": rows}, ok
    qp = doc.qp()
    lines, rows = [], []
    for i, cut in enumerate(potential.admissible_cuts(qp.quiver), 1):
        A = geometry.cut_algebra(qp, cut, args.max_len)
        g = algebra.gldim_le_two(A)
        lines.append(f"cut {i}: arrows {sorted(cut)}; dim {A.dim}; gldim <= 2 {_yesno(g)}")
        rows.append({"arrows": sorted(cut), "dim": A.dim, "gldim_le_two": g})
    return [f"{len(rows)} admissible cuts"] + lines, {"cuts": rows}, True


def _keller_checks(qp) -> dict:
    new = {a.name for a in qp.quiver.new_arrows}
    return {
        f"W term {c} carries exactly one new arrow": sum(a in new for a in c.arrows) == 1
        for c in qp.potential.cycles()
    }


def cmd_verify(doc, args):
    if doc.is_geometry:
        T = doc.triangulation()
        args.oracle = True
        lines, payload, ok = _geometry_report(T, args)
        checks = {
            "predicted dim == oracle HH^1": payload["oracle_hh1"] == payload["relatedness"]["theorem_b_dim"],
            "oracle HH^1 == N_W of reduced potential": payload["oracle_hh1"] == payload["n_w_reduced"],
        }
        if all(T.valency(x) == 1 for x in T.punctures):
            cuts = geometry.geometric_cuts(T, args.max_len)
            checks["every geometric cut is admissible"] = all(c.admissible for c in cuts)
            checks["every cut algebra has gldim <= 2"] = all(c.gldim_le_two for c in cuts)
        payload["checks"] = checks
        return lines + ["checks:"] + _fmt_checks(checks), payload, all(checks.values())
    qp = doc.qp()
    keller = _keller_checks(qp)
    if not all(keller.values()):
        return ["checks:"] + _fmt_checks(keller), {"checks": keller}, False
    try:
        r = _theorem_a(doc, args)
    except algebra.ExtensionError as e:
        checks = {**keller, f"B is a split extension by a square-zero ideal ({e})": False}
        return ["checks:"] + _fmt_checks(checks), {"checks": checks}, False
    checks = dict(r.identities())
    payload = r.to_dict()
    lines = _theorem_a_lines(r)
    if r.dim_b <= ORACLE_MAX_DIM:
        B = algebra.jacobian_algebra(doc.qp(), args.max_len, parse_field(args.field))
        bar = hochschild.bar_complex_hh1(B, ORACLE_MAX_DIM)
        checks["bar complex HH^1 == derivation HH^1"] = bar == r.hh1_b
        payload["oracle_hh1"] = bar
    payload["checks"] = checks
    return lines + ["checks:"] + _fmt_checks(checks), payload, all(checks.values())


COMMANDS = {
    "nw": (cmd_nw, "print N_W and the cycle classes"),
    "extend": (cmd_extend, "print the extended quiver and its potential"),
    "hh1": (cmd_hh1, "dimension of HH^1 of the Jacobian algebra"),
    "theorem-a": (cmd_theorem_a, "full split-extension report"),
    "geom": (cmd_geom, "puncture coefficients and the predicted HH^1 dimension"),
    "cuts": (cmd_cuts, "admissible cuts and their cut algebras"),
    "verify": (cmd_verify, "run every applicable identity; exit 0 iff all hold"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qpcohom", description="Hochschild cohomology of relation extensions")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("--json", action="store_true", help="emit a JSON report")
        s.add_argument("--field", default=None, help="q (default, or $QP_FIELD) or fp:P")
        s.add_argument(
            "--max-len", type=int, default=None, help="path length cap for normal forms (default 2*|Q0|)"
        )
        if name == "hh1":
            s.add_argument("--oracle", action="store_true", help="cross-check with the bar complex")
        if name == "geom":
            s.add_argument("--reduce", action="store_true", help="print the reduced potential")
            s.add_argument("--oracle", action="store_true", help="compare with HH^1 of the reduced algebra")
        if name in ("verify", "geom"):
            s.set_defaults(reduce=False)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if args.max_len is not None and args.max_len < 1:
        print("error: --max-len must be positive", file=sys.stderr)
        return EXIT_INPUT
    fn = COMMANDS[args.command][0]
    t0 = time.perf_counter()
    try:
        parse_field(args.field)
        doc = parse_file(args.file)
        lines, payload, ok = fn(doc, args)
    except (algebra.NotFiniteDimensional, quiver.PathCapExceeded) as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except (potential.PotentialError, algebra.ExtensionError) as e:
        print(f"identity violated: {e}", file=sys.stderr)
        return EXIT_VIOLATED
    except (ParseError, quiver.QuiverError, geometry.TriangulationError, algebra.InvalidRelation,
            geometry.UnsupportedReduction, OSError, ValueError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        payload = dict(payload)
        payload.update({
            "command": args.command,
            "file": args.file,
            "config": {"field": field_name(args.field), "max_len": args.max_len},
            "seconds": round(time.perf_counter() - t0, 6),
            "ok": ok,
        })
        print(report_to_json(payload))
    else:
        print("\n".join(lines))
    return EXIT_OK if ok else EXIT_VIOLATED


if __name__ == "__main__":
    sys.exit(main())
