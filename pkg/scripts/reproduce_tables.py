#!/usr/bin/env python3
"""Desk reproduction of the small-rank tables for every built family.

Prints, per family: dimension, the simple labels with their dimensions,
the decomposition matrix, the Cartan matrix with its determinant, and the
semisimplicity verdict.  Everything is computed twice over where a second
route exists (reciprocity, annular orientation fastpath, Gram formulas).
"""

import time

from relcell.annular import build_annular, decomposition_fastpath
from relcell.celldata import (
    cartan_matrix,
    decomposition_matrix,
    det_int,
    is_semisimple,
    simple_set,
    verify_cell_datum,
)
from relcell.field import QQ
from relcell.usl2 import build_usl2, gram_diagonal_formula
from relcell.zigzag import QuiverSpec, alternate_idempotent_datum, build_zigzag


def show(name, datum):
    t0 = time.time()
    report = verify_cell_datum(datum)
    ss = simple_set(datum)
    D = decomposition_matrix(datum, ss)
    C, _, minors = cartan_matrix(datum, ss, D)
    dt = time.time() - t0
    print(f"== {name}  (dim {datum.alg.dim}, {dt:.1f}s)")
    print(f"   axioms: {'all pass' if report.all_passed else 'FAILURES'}")
    print(f"   X0: {ss.X0}")
    print(f"   simple dims: {[ss.dims[lam] for lam in ss.X0]}")
    print(f"   D = {D}")
    print(f"   C = {C}   det C = {det_int(C)}")
    print(f"   semisimple: {is_semisimple(datum, ss)}")
    return datum, ss, D, C


def main():
    for variant, ns in (("A", (3, 4, 5)), ("cycS", (3, 4, 5)), ("cycL", (3, 4))):
        for n in ns:
            _, datum = build_zigzag(QuiverSpec(variant, n), QQ)
            show(f"zigzag:{variant}:{n}", datum)

    _, alt = alternate_idempotent_datum(QQ)
    show("zigzag:cycS:3 (three-idempotent datum)", alt)

    for p in (3, 5, 7):
        _, datum = build_usl2(p)
        _, ss, _, _ = show(f"usl2:p={p}", datum)
        formula = gram_diagonal_formula(p)
        agree = all(
            [ss.grams[lam].matrix[i, i] for i in range(p)] == formula[lam] for lam in range(p)
        )
        print(f"   Gram diagonal matches (S!)^2 * binom(lam, S): {agree}")

    for n in (1, 2):
        _, datum = build_annular(n, QQ)
        datum2, ss, D, _ = show(f"annular:n={n}", datum)
        fast = decomposition_fastpath(n, datum.X, ss.X0)
        print(f"   orientation fastpath equals engine D: {fast == D}")


if __name__ == "__main__":
    main()
