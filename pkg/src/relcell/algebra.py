"""Finite-dimensional algebras by structure constants, with anti-involution.

An AlgebraTable stores an ordered basis of (lambda, S, T) labels, a
multiplication rule on basis pairs (memoized callback or explicit table),
and the star permutation.  Modules are dense action matrices; hom spaces,
radicals and composition multiplicities are computed by exact linear
algebra over the table's field.
"""

from __future__ import annotations

import json
from typing import Any, Callable, NamedTuple, Optional

from .field import Field, field_from_str, field_to_str
from .linalg import Matrix, from_columns, stack_rows


class AlgebraMismatch(Exception):
    pass


class NotUnital(Exception):
    pass


class NonIntegralMultiplicity(Exception):
    pass


class BasisLabel(NamedTuple):
    lam: Any
    S: Any
    T: Any


class AlgebraTable:
    """Basis-indexed multiplication table with a star anti-involution.

    mult_fn(i, j) returns the structure constants of basis_i * basis_j as a
    sparse {index: scalar} dict.  Products are memoized, so families with a
    large basis (K_3 has dimension 1664) never materialize the full table
    unless asked to.
    """

    def __init__(
        self,
        field: Field,
        basis: list[BasisLabel],
        mult_fn: Callable[[int, int], dict[int, Any]],
        star: tuple[int, ...],
        generators: Optional[list[tuple[str, "Element"]]] = None,
        name: str = "",
    ):
        self.field = field
        self.basis = list(basis)
        self.index = {lab: i for i, lab in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise ValueError("duplicate basis labels")
        self._mult_fn = mult_fn
        self._memo: dict[tuple[int, int], dict[int, Any]] = {}
        self.star_perm = tuple(star)
        self.generators = generators
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def from_table(cls, field, basis, table: dict, star, generators=None, name=""):
        alg = cls(field, basis, lambda i, j: table.get((i, j), {}), star, generators, name)
        alg._memo = dict(table)
        return alg

    def mult_basis(self, i: int, j: int) -> dict[int, Any]:
        key = (i, j)
        got = self._memo.get(key)
        if got is None:
            got = {k: c for k, c in self._mult_fn(i, j).items() if c}
            self._memo[key] = got
        return got

    def materialize(self) -> dict:
        for i in range(self.dim):
            for j in range(self.dim):
                self.mult_basis(i, j)
        return self._memo

    def element(self, coeffs: dict[int, Any]) -> "Element":
        return Element(self, coeffs)

    def basis_element(self, i: int) -> "Element":
        return Element(self, {i: self.field.one})

    def element_from_label(self, label: BasisLabel) -> "Element":
        return self.basis_element(self.index[label])

    def zero_element(self) -> "Element":
        return Element(self, {})

    def star_element(self, x: "Element") -> "Element":
        return Element(self, {self.star_perm[i]: c for i, c in x.coeffs.items()})

    def generator_list(self) -> list[tuple[str, "Element"]]:
        """Registered generators, defaulting to the full basis."""
        if self.generators is not None:
            return self.generators
        return [(str(self.basis[i]), self.basis_element(i)) for i in range(self.dim)]


class Element:
    """Sparse algebra element {basis index: nonzero scalar}."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: AlgebraTable, coeffs: dict[int, Any]):
        self.alg = alg
        self.coeffs = {i: c for i, c in coeffs.items() if c}

    def _check(self, other: "Element"):
        if self.alg is not other.alg:
            raise AlgebraMismatch("elements of different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        f = self.alg.field
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = f.add(out.get(i, f.zero), c)
        return Element(self.alg, out)

    def __neg__(self) -> "Element":
        f = self.alg.field
        return Element(self.alg, {i: f.neg(c) for i, c in self.coeffs.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        f = self.alg.field
        return Element(self.alg, {i: f.mul(c, x) for i, x in self.coeffs.items()})

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        f = self.alg.field
        out: dict[int, Any] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                ab = f.mul(a, b)
                if not ab:
                    continue
                for k, c in self.alg.mult_basis(i, j).items():
                    v = f.add(out.get(k, f.zero), f.mul(ab, c))
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return Element(self.alg, out)

    def star(self) -> "Element":
        return self.alg.star_element(self)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Element) and self.alg is other.alg and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = [f"{c}*{self.alg.basis[i]}" for i, c in sorted(self.coeffs.items())]
        return " + ".join(bits)


def multiply(a: Element, b: Element, alg: AlgebraTable = None) -> Element:
    if alg is not None and (a.alg is not alg or b.alg is not alg):
        raise AlgebraMismatch("element/algebra mismatch")
    return a * b


def unit_element(alg: AlgebraTable, idempotents: list[Element]) -> Element:
    """Sum of the given idempotents, verified to be a two-sided unit."""
    u = alg.zero_element()
    for e in idempotents:
        u = u + e
    for i in range(alg.dim):
        x = alg.basis_element(i)
        if (u * x) != x or (x * u) != x:
            raise NotUnital(f"sum of idempotents is not a unit on basis element {alg.basis[i]}")
    return u


class RepModule:
    """Left module: dimension plus one action matrix per algebra basis index."""

    def __init__(self, alg: AlgebraTable, dim: int, action: list[Matrix]):
        if len(action) != alg.dim:
            raise AlgebraMismatch("need one action matrix per basis element")
        self.alg = alg
        self.dim = dim
        self.action = action

    def act_basis(self, i: int) -> Matrix:
        return self.action[i]

    def act(self, x: Element) -> Matrix:
        f = self.alg.field
        out = Matrix.zero(f, self.dim, self.dim)
        for i, c in x.coeffs.items():
            out = out.add(self.action[i].scale(c))
        return out

    def check_action(self, pairs=None) -> bool:
        """rho(x) rho(y) == rho(xy) on the given (default: all) basis pairs."""
        n = self.alg.dim
        if pairs is None:
            pairs = [(i, j) for i in range(n) for j in range(n)]
        f = self.alg.field
        for i, j in pairs:
            lhs = self.action[i] @ self.action[j]
            rhs = Matrix.zero(f, self.dim, self.dim)
            for k, c in self.alg.mult_basis(i, j).items():
                rhs = rhs.add(self.action[k].scale(c))
            if lhs != rhs:
                return False
        return True


def _left_inverse(B: Matrix) -> Matrix:
    """L with L @ B = I for a full-column-rank B."""
    f = B.field
    k = B.cols
    aug = Matrix.from_rows(f, [list(B.row(i)) + [f.one if j == i else f.zero for j in range(B.rows)] for i in range(B.rows)])
    red, pivots = aug.rref()
    if list(pivots[:k]) != list(range(k)):
        raise AlgebraMismatch("vectors are not linearly independent")
    return Matrix.from_rows(f, [list(red.row(r))[k:] for r in range(k)])


def _restrict_action(M: RepModule, basis_vectors: list[list]) -> RepModule:
    """Module structure on the span of the given vectors (must be stable)."""
    f = M.alg.field
    k = len(basis_vectors)
    if k == 0:
        return RepModule(M.alg, 0, [Matrix(f, 0, 0, []) for _ in range(M.alg.dim)])
    B = from_columns(f, basis_vectors, M.dim)
    L = _left_inverse(B)
    action = []
    for i in range(M.alg.dim):
        img = M.action[i] @ B
        X = L @ img
        if B @ X != img:
            raise AlgebraMismatch("subspace is not action-stable")
        action.append(X)
    return RepModule(M.alg, k, action)


def quotient_module(M: RepModule, sub_vectors: list[list]) -> tuple[RepModule, Matrix]:
    """Quotient of M by the span of sub_vectors; returns (module, projection).

    Quotient coordinates are the non-pivot coordinates of the relation rref:
    each pivot coordinate pc satisfies e_pc == -sum_f red[r,f] e_f mod N.
    """
    f = M.alg.field
    if not sub_vectors:
        P = Matrix.identity(f, M.dim)
        return RepModule(M.alg, M.dim, list(M.action)), P
    red, pivots = Matrix.from_rows(f, sub_vectors).rref()
    pivset = set(pivots)
    free = [j for j in range(M.dim) if j not in pivset]
    proj_rows = []
    for fi in free:
        row = [f.zero] * M.dim
        row[fi] = f.one
        for r, pc in enumerate(pivots):
            row[pc] = f.neg(red[r, fi])
        proj_rows.append(row)
    P = Matrix.from_rows(f, proj_rows) if free else Matrix(f, 0, M.dim, [])
    S = from_columns(f, [[f.one if i == fi else f.zero for i in range(M.dim)] for fi in free], M.dim)
    action = [P @ M.action[i] @ S for i in range(M.alg.dim)]
    return RepModule(M.alg, len(free), action), P


class _RowReducer:
    """Incremental row echelon accumulator; insertion keeps rows reduced."""

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self.pivot_rows: dict[int, list] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def insert(self, row: list) -> bool:
        f = self.field
        row = list(row)
        for c in range(self.width):
            x = row[c]
            if not x:
                continue
            piv = self.pivot_rows.get(c)
            if piv is None:
                inv = f.inv(x)
                if inv != f.one:
                    row = [f.mul(inv, y) if y else y for y in row]
                self.pivot_rows[c] = row
                return True
            row = [f.sub(a, f.mul(x, b)) if b else a for a, b in zip(row, piv)]
        return False

    def matrix(self) -> Matrix:
        f = self.field
        rows = [self.pivot_rows[c] for c in sorted(self.pivot_rows)]
        return Matrix.from_rows(f, rows) if rows else Matrix(f, 0, self.width, [])


def _action_pairs(M: RepModule, N: RepModule, alg: AlgebraTable):
    """Deduplicated (rho_M(g), rho_N(g)) pairs over the generator set."""
    pairs = []
    seen = set()
    if alg.generators is None:
        it = ((M.action[i], N.action[i]) for i in range(alg.dim))
    else:
        it = ((M.act(g), N.act(g)) for _, g in alg.generators)
    for A, B in it:
        key = (A.entries, B.entries)
        if key in seen:
            continue
        seen.add(key)
        if A.is_zero() and B.is_zero():
            continue
        pairs.append((A, B))
    return pairs


def hom_space(M: RepModule, N: RepModule, alg: AlgebraTable = None) -> list[Matrix]:
    """Basis of {X : X rho_M(g) = rho_N(g) X for all generators g}."""
    if alg is None:
        alg = M.alg
    if M.alg is not N.alg:
        raise AlgebraMismatch("modules over different algebras")
    f = alg.field
    nm, nn = M.dim, N.dim
    if nm == 0 or nn == 0:
        return []
    nunk = nn * nm
    red = _RowReducer(f, nunk)
    zero_row = [f.zero] * nunk
    for A, B in _action_pairs(M, N, alg):
        # constraint: X A - B X = 0, unknowns X[r][c] flattened r*nm+c
        for r in range(nn):
            for c in range(nm):
                row = list(zero_row)
                for k in range(nm):
                    a = A[k, c]
                    if a:
                        row[r * nm + k] = f.add(row[r * nm + k], a)
                for k in range(nn):
                    b = B[r, k]
                    if b:
                        row[k * nm + c] = f.sub(row[k * nm + c], b)
                if any(row):
                    red.insert(row)
        if red.rank == nunk:
            return []
    if red.rank == 0:
        sol = [[f.one if t == s else f.zero for s in range(nunk)] for t in range(nunk)]
    else:
        sol = red.matrix().nullspace_basis()
    return [Matrix(f, nn, nm, v) for v in sol]


def radical_of_module(M: RepModule, simples: list[RepModule]) -> tuple[list[list], RepModule]:
    """Intersection of kernels of all maps to the given (complete) simples."""
    f = M.alg.field
    homs = []
    for L in simples:
        homs.extend(hom_space(M, L))
    if not homs:
        vecs = [[f.one if i == j else f.zero for j in range(M.dim)] for i in range(M.dim)]
        return vecs, _restrict_action(M, vecs)
    H = stack_rows(f, homs)
    vecs = H.nullspace_basis()
    return vecs, _restrict_action(M, vecs)


def composition_multiplicities(M: RepModule, simples: list[RepModule]) -> list[int]:
    """Jordan-Hoelder multiplicities of each simple in M (radical series)."""
    f = M.alg.field
    end_dims = [len(hom_space(L, L)) for L in simples]
    mults = [0] * len(simples)
    current = M
    while current.dim > 0:
        head_dim = 0
        layer_homs = []
        for k, L in enumerate(simples):
            homs = hom_space(current, L)
            h = len(homs)
            if h % end_dims[k] != 0:
                raise NonIntegralMultiplicity(
                    f"hom dimension {h} not divisible by dim End = {end_dims[k]}"
                )
            m = h // end_dims[k]
            mults[k] += m
            head_dim += m * L.dim
            layer_homs.extend(homs)
        if head_dim == 0:
            raise NonIntegralMultiplicity("module has no map to any given simple; simples incomplete?")
        vecs = stack_rows(f, layer_homs).nullspace_basis()
        current = _restrict_action(current, vecs)
    if sum(m * L.dim for m, L in zip(mults, simples)) != M.dim:
        raise NonIntegralMultiplicity("multiplicities do not account for the full dimension")
    return mults


def regular_module(alg: AlgebraTable) -> RepModule:
    """The left regular module on the basis of the algebra itself."""
    f = alg.field
    n = alg.dim
    action = []
    for i in range(n):
        cols = []
        for j in range(n):
            prod = alg.mult_basis(i, j)
            cols.append([prod.get(r, f.zero) for r in range(n)])
        action.append(from_columns(f, cols, n))
    return RepModule(alg, n, action)


def left_ideal_module(alg: AlgebraTable, e: Element) -> RepModule:
    """The left module R*e on a column basis of the right-multiplication image."""
    f = alg.field
    n = alg.dim
    cols = []
    for i in range(n):
        prod = alg.basis_element(i) * e
        cols.append([prod.coeffs.get(r, f.zero) for r in range(n)])
    A = from_columns(f, cols, n)
    red, pivots = A.transpose().rref()
    vecs = [list(red.row(r)) for r in range(len(pivots))]
    reg = regular_module(alg)
    return _restrict_action(reg, vecs)


# --- serialization ----------------------------------------------------------


def table_to_json(alg: AlgebraTable, label_to_str=str) -> str:
    alg.materialize()
    f = alg.field
    entries = {}
    for (i, j), sc in sorted(alg._memo.items()):
        if sc:
            entries[f"{i},{j}"] = {str(k): f.scalar_to_str(c) for k, c in sorted(sc.items())}
    doc = {
        "field": field_to_str(f),
        "basis": [label_to_str(lab) for lab in alg.basis],
        "mult": entries,
        "star": list(alg.star_perm),
        "name": alg.name,
    }
    return json.dumps(doc, indent=1, sort_keys=True)


def table_from_json(text: str) -> AlgebraTable:
    """Inverse of table_to_json; basis labels come back as their strings, so
    a reloaded table re-serializes to the identical document."""
    doc = json.loads(text)
    field = field_from_str(doc["field"])
    basis = list(doc["basis"])
    table = {}
    for key, sc in doc["mult"].items():
        i, j = (int(x) for x in key.split(","))
        table[(i, j)] = {int(k): field.scalar_from_str(v) for k, v in sc.items()}
    n = len(basis)
    full = {(i, j): table.get((i, j), {}) for i in range(n) for j in range(n)}
    return AlgebraTable.from_table(field, basis, full, tuple(doc["star"]), name=doc.get("name", ""))
