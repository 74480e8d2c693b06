"""Command line front end.

    relcell cartan usl2:p=3 --format csv
    relcell verify zigzag:cycS:3
    relcell mult annular:n=1 "1-2|v^|1-2" "1-2|v^|1-2"

Exit codes: 0 success / all checks pass, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .algebra import BasisLabel, table_to_json
from .annular import frobenius_gram
from .celldata import (
    cartan_matrix,
    core_subalgebra,
    decomposition_matrix,
    gram_matrix,
    report_dict,
    simple_set,
    verify_cell_datum,
)
from .diagrams import circle_decomposition_dict, format_basis_label, parse_basis_label
from .families import build_family, parse_family


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _matrix_text(rows, fmt: str, title: str = "") -> str:
    if fmt == "json":
        return json.dumps(rows)
    if fmt == "csv":
        return "\n".join(",".join(str(x) for x in row) for row in rows)
    head = [title] if title else []
    width = max((len(str(x)) for row in rows for x in row), default=1)
    body = [" ".join(str(x).rjust(width) for x in row) for row in rows]
    return "\n".join(head + body)


def _scalar_rows(matrix, field):
    return [[field.scalar_to_str(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


def cmd_build(args) -> int:
    alg, datum = build_family(args.family, args.max_dim)
    if args.format == "json":
        _emit(table_to_json(alg), args.out)
    else:
        lines = [
            f"family: {args.family}",
            f"field: {alg.field!r}",
            f"dimension: {alg.dim}",
            f"labels |X|: {len(datum.X)}",
            f"idempotents |E|: {len(datum.E)}",
        ]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_verify(args) -> int:
    _, datum = build_family(args.family, args.max_dim)
    if args.format == "json":
        doc = report_dict(datum)
        _emit(json.dumps(doc, indent=1, sort_keys=True), args.out)
        return 0 if all(a["passed"] for a in doc["axioms"]) else 1
    report = verify_cell_datum(datum)
    _emit(str(report), args.out)
    return 0 if report.all_passed else 1


def cmd_cartan(args) -> int:
    _, datum = build_family(args.family, args.max_dim)
    C, _, _ = cartan_matrix(datum)
    _emit(_matrix_text(C, args.format, f"Cartan matrix of {args.family}"), args.out)
    return 0


def cmd_decomp(args) -> int:
    _, datum = build_family(args.family, args.max_dim)
    D = decomposition_matrix(datum)
    _emit(_matrix_text(D, args.format, f"decomposition matrix of {args.family}"), args.out)
    return 0


def cmd_gram(args) -> int:
    alg, datum = build_family(args.family, args.max_dim)
    blocks = []
    doc = {}
    for lam in datum.X:
        g = gram_matrix(datum, lam)
        rows = _scalar_rows(g.matrix, alg.field)
        doc[str(lam)] = rows
        blocks.append(_matrix_text(rows, "csv" if args.format == "csv" else "pretty", f"# {lam}"))
        if args.format == "csv":
            blocks[-1] = f"# {lam}\n" + blocks[-1]
    if args.format == "json":
        _emit(json.dumps(doc, indent=1, sort_keys=True), args.out)
    else:
        _emit("\n".join(blocks), args.out)
    return 0


def cmd_simples(args) -> int:
    _, datum = build_family(args.family, args.max_dim)
    ss = simple_set(datum)
    if args.format == "json":
        _emit(
            json.dumps(
                {"X0": [str(l) for l in ss.X0], "dims": {str(l): ss.dims[l] for l in ss.X0}},
                indent=1,
                sort_keys=True,
            ),
            args.out,
        )
    else:
        lines = [f"L({lam}): dim {ss.dims[lam]}" for lam in ss.X0]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_mult(args) -> int:
    parsed = parse_family(args.family)
    if parsed[0] != "annular":
        print("mult takes diagram notation and needs an annular family", file=sys.stderr)
        return 2
    n = parsed[1]
    alg, _ = build_family(args.family, args.max_dim)
    Sa, wa, Ta = parse_basis_label(args.x, n)
    Sb, wb, Tb = parse_basis_label(args.y, n)
    a = alg.element_from_label(BasisLabel(wa, Sa, Ta))
    b = alg.element_from_label(BasisLabel(wb, Sb, Tb))
    prod = a * b
    terms = sorted(
        (alg.basis[i], alg.field.scalar_to_str(c)) for i, c in prod.coeffs.items()
    )
    if args.format == "json":
        doc = []
        for lab, c in terms:
            entry = {"coeff": c, "term": format_basis_label(lab.S, lab.lam, lab.T)}
            if args.circles:
                entry["circles"] = circle_decomposition_dict(lab.S, lab.T, lab.lam, n)
            doc.append(entry)
        _emit(json.dumps(doc, indent=1, sort_keys=True), args.out)
    else:
        if not terms:
            _emit("0", args.out)
        else:
            bits = []
            for lab, c in terms:
                s = format_basis_label(lab.S, lab.lam, lab.T)
                bits.append(s if c == "1" else f"{c}*{s}")
            _emit(" + ".join(bits), args.out)
    return 0


def cmd_core(args) -> int:
    _, datum = build_family(args.family, args.max_dim)
    if not 0 <= args.eps < len(datum.E):
        print(f"--eps must be in [0, {len(datum.E)})", file=sys.stderr)
        return 2
    core, cd = core_subalgebra(datum, args.eps)
    report = verify_cell_datum(cd)
    if args.format == "json":
        doc = {
            "dimension": core.dim,
            "X": [str(l) for l in cd.X],
            "cellular": report.all_passed,
        }
        _emit(json.dumps(doc, indent=1, sort_keys=True), args.out)
    else:
        _emit(
            f"core eps[{args.eps}]: dimension {core.dim}, |X| = {len(cd.X)}\n{report}",
            args.out,
        )
    return 0 if report.all_passed else 1


def cmd_frobenius(args) -> int:
    parsed = parse_family(args.family)
    if parsed[0] != "annular":
        print("the Frobenius form is defined for annular families", file=sys.stderr)
        return 2
    alg, _ = build_family(args.family, args.max_dim)
    G = frobenius_gram(alg)
    rank = G.rank()
    rng = random.Random(args.seed)
    trials = 200
    assoc_ok = True
    for _ in range(trials):
        i, j, k = (rng.randrange(alg.dim) for _ in range(3))
        x, y, z = (alg.basis_element(t) for t in (i, j, k))
        lhs = _sigma_of(alg, x * y, z, G)
        rhs = _sigma_of(alg, x, y * z, G)
        if lhs != rhs:
            assoc_ok = False
            break
    nondeg = rank == alg.dim
    if args.format == "json":
        _emit(
            json.dumps(
                {"dimension": alg.dim, "rank": rank, "nondegenerate": nondeg, "associative_sample": assoc_ok},
                indent=1,
                sort_keys=True,
            ),
            args.out,
        )
    else:
        _emit(
            f"sigma-Gram rank {rank} of {alg.dim}; nondegenerate: {nondeg}; "
            f"associativity sample ({trials} triples): {'ok' if assoc_ok else 'FAILED'}",
            args.out,
        )
    return 0 if (nondeg and assoc_ok) else 1


def _sigma_of(alg, x, y, G):
    f = alg.field
    total = f.zero
    for i, a in x.coeffs.items():
        for j, b in y.coeffs.items():
            total = f.add(total, f.mul(f.mul(a, b), G[i, j]))
    return total


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relcell", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("family", help="family spec, e.g. zigzag:A:3, usl2:p=5, annular:n=2")
        p.add_argument("--format", choices=("pretty", "csv", "json"), default="pretty")
        p.add_argument("--out", default=None, help="write output to a file instead of stdout")
        p.add_argument("--max-dim", type=int, default=None, help="size guard (env RELCELL_MAX_DIM)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized property sampling")

    for name, fn in [
        ("build", cmd_build),
        ("verify", cmd_verify),
        ("cartan", cmd_cartan),
        ("decomp", cmd_decomp),
        ("gram", cmd_gram),
        ("simples", cmd_simples),
        ("core", cmd_core),
        ("frobenius", cmd_frobenius),
    ]:
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(fn=fn)
        if name == "core":
            p.add_argument("--eps", type=int, default=0, help="index into the idempotent set E")

    p = sub.add_parser("mult")
    p.add_argument("family")
    p.add_argument("x", help="basis element, e.g. 1-2|v^|1-2")
    p.add_argument("y")
    p.add_argument("--format", choices=("pretty", "csv", "json"), default="pretty")
    p.add_argument("--out", default=None)
    p.add_argument("--max-dim", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--circles", action="store_true", help="include circle decompositions in JSON output")
    p.set_defaults(fn=cmd_mult)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
