"""Zigzag quiver algebras: the line C(A_n) and the two cycle quotients.

Paths are vertex tuples.  The relation "all 2-cycles at a vertex are
equal" generates a finite flip-equivalence on paths of fixed length; a
path is zero when some member of its class contains a forbidden straight
run (two steps for the short relation, a full cycle for the long one).
Normal form is the lexicographically smallest member of a nonzero class,
and the basis is enumerated by closure from the vertex idempotents.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import AlgebraTable, BasisLabel
from .celldata import CellDatum, chain_order
from .field import Field

LINE = "A"
CYCLE_SHORT = "cycS"
CYCLE_LONG = "cycL"
VARIANTS = (LINE, CYCLE_SHORT, CYCLE_LONG)


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class QuiverSpec:
    variant: str
    n: int

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InvalidSpec(f"unknown variant {self.variant!r}")
        # n = 2 is excluded outright; n = 1 has no edge so the standard
        # labels (the 2-cycle cell) do not exist either
        if self.n < 3:
            raise InvalidSpec(f"{self.variant} quiver needs n >= 3 (got {self.n})")

    def vertices(self):
        return list(range(1, self.n + 1))

    def neighbors(self, v: int) -> list[int]:
        if self.variant == LINE:
            out = []
            if v > 1:
                out.append(v - 1)
            if v < self.n:
                out.append(v + 1)
            return out
        return [((v - 2) % self.n) + 1, (v % self.n) + 1]


Path = tuple  # vertex sequence (v0, ..., vk); length k path


def _is_path(spec: QuiverSpec, p: Path) -> bool:
    return all(b in spec.neighbors(a) for a, b in zip(p, p[1:]))


def _has_forbidden_run(spec: QuiverSpec, p: Path) -> bool:
    if spec.variant in (LINE, CYCLE_SHORT):
        # two steps in one direction: (i|j|k) with i != k
        return any(p[i] != p[i + 2] for i in range(len(p) - 2))
    # cycle-long: a monotone run around the whole circle (n steps)
    n = spec.n
    if len(p) <= n:
        return False
    for start in range(len(p) - n):
        window = p[start : start + n + 1]
        steps = {(b - a) % n for a, b in zip(window, window[1:])}
        if steps == {1} or steps == {n - 1}:
            return True
    return False


def _flip_class(spec: QuiverSpec, p: Path) -> frozenset:
    """All paths reachable by replacing 2-cycle midpoints (a|b|a)->(a|c|a)."""
    seen = {p}
    queue = [p]
    while queue:
        cur = queue.pop()
        for i in range(1, len(cur) - 1):
            if cur[i - 1] != cur[i + 1]:
                continue
            for w in spec.neighbors(cur[i - 1]):
                if w == cur[i]:
                    continue
                alt = cur[:i] + (w,) + cur[i + 1 :]
                if alt not in seen:
                    seen.add(alt)
                    queue.append(alt)
    return frozenset(seen)


@lru_cache(maxsize=None)
def _normalize_cached(spec: QuiverSpec, p: Path):
    cls = _flip_class(spec, p)
    if any(_has_forbidden_run(spec, q) for q in cls):
        return None
    return min(cls)


def normalize(spec: QuiverSpec, p: Path):
    """Normal form of a path, or None if it is zero in the algebra."""
    if not _is_path(spec, p):
        raise InvalidSpec(f"{p} is not a path in {spec}")
    return _normalize_cached(spec, p)


def compose(spec: QuiverSpec, a: Path, b: Path):
    """a followed by b ((i|j) o (j|k) = (i|j|k)); None for 0."""
    if a[-1] != b[0]:
        return None
    return normalize(spec, a + b[1:])


def multiply_paths(a: Path, b: Path, spec: QuiverSpec) -> dict:
    """Product as a sparse {normal form: 1} dict (empty means zero)."""
    nf = compose(spec, a, b)
    return {} if nf is None else {nf: 1}


def star_path(p: Path) -> Path:
    return tuple(reversed(p))


def path_basis(spec: QuiverSpec) -> list[Path]:
    """All nonzero normal forms, by closure from the vertex idempotents."""
    basis = {(v,) for v in spec.vertices()}
    frontier = set(basis)
    while frontier:
        new = set()
        for p in frontier:
            for w in spec.neighbors(p[-1]):
                nf = normalize(spec, p + (w,))
                if nf is not None and nf not in basis:
                    basis.add(nf)
                    new.add(nf)
        frontier = new
    return sorted(basis, key=lambda p: (len(p), p))


def _msets(spec: QuiverSpec):
    """(X, M) for the standard datum of each variant."""
    n = spec.n
    if spec.variant == LINE:
        X = list(range(0, n + 1))
        M = {0: [(1, 2)]}
        for i in range(1, n):
            M[i] = [(i,), (i + 1, i)]
        M[n] = [(n,)]
        return X, M
    if spec.variant == CYCLE_SHORT:
        X = list(range(1, n + 1))
        M = {i: [(i,), ((i % n) + 1, i)] for i in X}
        return X, M
    # cycle-long: increasing runs into i of length 0..n-1
    X = list(range(1, n + 1))
    M = {}
    for i in X:
        runs = []
        for length in range(n):
            start = ((i - 1 - length) % n) + 1
            run = tuple(((start - 1 + t) % n) + 1 for t in range(length + 1))
            runs.append(run)
        M[i] = runs
    return X, M


def _datum_orders_and_eps(spec: QuiverSpec, X, M, alg, vertex_idem):
    """E, orders, eps_index for the standard datum of each variant."""
    n = spec.n
    if spec.variant == LINE:
        one = alg.zero_element()
        for v in spec.vertices():
            one = one + vertex_idem[v]
        E = [one]
        orders = [chain_order(X, X, "<_1")]
        eps_index = {(lam, S): 0 for lam in X for S in M[lam]}
        return E, orders, eps_index
    if spec.variant == CYCLE_SHORT:
        eps = alg.zero_element()
        for v in range(2, n + 1):
            eps = eps + vertex_idem[v]
        E = [vertex_idem[1], eps]
        # 2 < 3 < ... < n < 1 under e_1;  1 < 2 < ... < n under eps
        orders = [
            chain_order(X, list(range(2, n + 1)) + [1], "<_e1"),
            chain_order(X, list(range(1, n + 1)), "<_eps"),
        ]
        eps_index = {}
        for lam in X:
            for S in M[lam]:
                eps_index[(lam, S)] = 0 if S[0] == 1 else 1
        return E, orders, eps_index
    # cycle-long: E = all vertex idempotents; under e_i the top is i, below it
    # i+1, then i+2, ... (n=3: 3 < 2 < 1 under e_1)
    E = [vertex_idem[i] for i in X]
    orders = []
    for i in X:
        chain = [((i - 1 + k) % n) + 1 for k in range(n - 1, -1, -1)]
        orders.append(chain_order(X, chain, f"<_e{i}"))
    eps_index = {(lam, S): S[0] - 1 for lam in X for S in M[lam]}
    return E, orders, eps_index


def build_zigzag(spec: QuiverSpec, field: Field) -> tuple[AlgebraTable, CellDatum]:
    """The algebra with its standard relative cell datum."""
    X, M = _msets(spec)
    labels = []
    label_paths = {}
    for lam in X:
        for S in M[lam]:
            for T in M[lam]:
                nf = compose(spec, S, star_path(T))
                if nf is None:
                    raise InvalidSpec(f"cell label ({lam},{S},{T}) gives the zero path")
                lab = BasisLabel(lam, S, T)
                labels.append(lab)
                label_paths[lab] = nf
    paths = path_basis(spec)
    if sorted(label_paths.values()) != sorted(paths):
        raise InvalidSpec("cell labels do not biject onto the path basis")
    path_to_idx = {}
    for i, lab in enumerate(labels):
        path_to_idx[label_paths[lab]] = i

    one = field.one

    def mult(i, j):
        nf = compose(spec, label_paths[labels[i]], label_paths[labels[j]])
        return {} if nf is None else {path_to_idx[nf]: one}

    index = {lab: i for i, lab in enumerate(labels)}
    star = tuple(index[BasisLabel(lab.lam, lab.T, lab.S)] for lab in labels)
    alg = AlgebraTable(field, labels, mult, star, name=f"zigzag:{spec.variant}:{spec.n}")

    # star on labels must agree with path reversal
    for lab in labels:
        if path_to_idx[normalize(spec, star_path(label_paths[lab]))] != index[BasisLabel(lab.lam, lab.T, lab.S)]:
            raise InvalidSpec("star permutation disagrees with path reversal")

    vertex_idem = {v: alg.basis_element(path_to_idx[(v,)]) for v in spec.vertices()}
    E, orders, eps_index = _datum_orders_and_eps(spec, X, M, alg, vertex_idem)
    datum = CellDatum(
        alg=alg,
        X=X,
        M=M,
        E=E,
        orders=orders,
        eps_index=eps_index,
        name=alg.name,
    )
    if spec.variant == LINE:
        datum.primitive_idempotents = {i: vertex_idem[i] for i in range(1, spec.n + 1)}
    else:
        datum.primitive_idempotents = {i: vertex_idem[i] for i in X}
    return alg, datum


def alternate_idempotent_datum(field: Field) -> tuple[AlgebraTable, CellDatum]:
    """The cycle-short n=3 algebra with the finer three-idempotent datum."""
    spec = QuiverSpec(CYCLE_SHORT, 3)
    alg, std = build_zigzag(spec, field)
    X, M = std.X, std.M
    label_paths = {lab: compose(spec, lab.S, star_path(lab.T)) for lab in alg.basis}
    path_to_idx = {p: i for i, p in enumerate(label_paths[lab] for lab in alg.basis)}
    vertex_idem = {v: alg.basis_element(path_to_idx[(v,)]) for v in spec.vertices()}
    E = [vertex_idem[1], vertex_idem[2], vertex_idem[3]]
    # the three rotated orders: 3 < 1 < 2 under e1, 1 < 2 < 3 under e2, 2 < 3 < 1 under e3
    orders = [
        chain_order(X, [3, 1, 2], "<_e1"),
        chain_order(X, [1, 2, 3], "<_e2"),
        chain_order(X, [2, 3, 1], "<_e3"),
    ]
    eps_index = {(lam, S): S[0] - 1 for lam in X for S in M[lam]}
    datum = CellDatum(
        alg=alg,
        X=X,
        M=M,
        E=E,
        orders=orders,
        eps_index=eps_index,
        name="zigzag:cycS:3-alt",
        primitive_idempotents={i: vertex_idem[i] for i in X},
    )
    return alg, datum


def reversed_order_datum(field: Field) -> tuple[AlgebraTable, CellDatum]:
    """Deliberately faulty C(A_3) datum: the chain order turned around."""
    spec = QuiverSpec(LINE, 3)
    alg, std = build_zigzag(spec, field)
    bad = CellDatum(
        alg=alg,
        X=std.X,
        M=std.M,
        E=std.E,
        orders=[chain_order(std.X, list(reversed(std.X)), "<_1-reversed")],
        eps_index=std.eps_index,
        name="zigzag:A:3-reversed-order",
    )
    return alg, bad
