"""The annular arc algebra K_n: surgery multiplication and cell datum.

A product C(lam;S,T) * C(mu;U,V) is zero unless T = U; otherwise the two
circle diagrams are stacked and every mirror cap-cup pair in the middle is
replaced by vertical strands, one pair at a time.  A pair is available
once no other unprocessed pair's coverage strictly contains it (then the
cap and cup can be joined without crossing the remaining middle arcs).
Each replacement merges two circles or splits one, and the orientation
tags of the affected circles are rewritten by the merge rules (a)-(d) and
split rules (a)-(e); merges may kill a summand, splits may double it.
Finally the strands are collapsed and the surviving tags are read off as
a weight on S V*.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .algebra import AlgebraTable, BasisLabel, Element
from .celldata import CellDatum, StrictOrder
from .field import Field
from .diagrams import (
    ACW,
    CW,
    LEFT,
    RIGHT,
    Arc,
    CupDiagram,
    anticlockwise_weight,
    classify_diagram,
    clockwise_weight,
    cup_order_less,
    enumerate_cup_diagrams,
    orient_circle_with_tag,
    orientations_of,
    orients,
    rotate_cup,
    rotate_weight,
    weight_sort_key,
)


class SizeLimit(Exception):
    pass


# --- stacked-diagram surgery -------------------------------------------------
#
# Edges: ("S", arc) bottom cups, ("V", arc) top caps, ("mb", arc) middle caps,
# ("mt", arc) middle cups, ("st", vertex) strands.  Bottom nodes (0, v), top
# nodes (1, v); middle caps attach to the bottom line, middle cups to the top.


def _edge_nodes(edge):
    kind, obj = edge
    if kind == "S" or kind == "mb":
        return ((0, obj.p), (0, obj.q))
    if kind == "V" or kind == "mt":
        return ((1, obj.p), (1, obj.q))
    return ((0, obj), (1, obj))


def _components(edges):
    """Partition of the edge set into circles (each node has degree 2)."""
    adj = {}
    for e in edges:
        for node in _edge_nodes(e):
            adj.setdefault(node, []).append(e)
    seen = set()
    comps = []
    for e0 in edges:
        if e0 in seen:
            continue
        stack = [e0]
        comp = set()
        while stack:
            e = stack.pop()
            if e in comp:
                continue
            comp.add(e)
            seen.add(e)
            for node in _edge_nodes(e):
                for e2 in adj[node]:
                    if e2 not in comp:
                        stack.append(e2)
        comps.append(frozenset(comp))
    return comps


def _is_essential(comp) -> bool:
    wraps = sum(1 for kind, obj in comp if kind != "st" and obj.wrap)
    return wraps % 2 == 1


def _merge_tag(t1: str, t2: str) -> Optional[str]:
    if t1 == ACW:
        return t2
    if t2 == ACW:
        return t1
    if {t1, t2} == {LEFT, RIGHT}:
        return CW
    return None  # covers CW with anything but ACW, and L+L / R+R


def _split_tags(tag: str, ess_a: bool, ess_b: bool):
    """List of (tag_a, tag_b) summands for a circle with `tag` splitting."""
    if not ess_a and not ess_b:
        if tag == ACW:
            return [(CW, ACW), (ACW, CW)]
        if tag == CW:
            return [(CW, CW)]
        raise AssertionError("essential circle split into two usual circles")
    if ess_a and ess_b:
        if tag == ACW:
            return [(LEFT, RIGHT), (RIGHT, LEFT)]
        if tag == CW:
            return []
        raise AssertionError("essential circle split into two essential circles")
    if tag not in (LEFT, RIGHT):
        raise AssertionError("usual circle split into usual + essential")
    return [(tag, CW) if ess_a else (CW, tag)]


def _available_pairs(remaining: list[Arc], n: int) -> list[Arc]:
    out = []
    for a in remaining:
        ga = a.gaps(n)
        if not any(b != a and ga < b.gaps(n) for b in remaining):
            out.append(a)
    return out


def multiply_labels(n: int, a, b, order: Optional[list[Arc]] = None) -> dict:
    """Structure constants of C(lam;S,T) * C(mu;U,V); integer coefficients.

    order, if given, fixes the full surgery sequence (it must be admissible);
    by default the leftmost available pair is chosen at every step.
    """
    S, lam, T = a
    U, mu, V = b
    if T != U:
        return {}
    edges = (
        [("S", arc) for arc in S]
        + [("mb", arc) for arc in T]
        + [("mt", arc) for arc in T]
        + [("V", arc) for arc in V]
    )
    tags = {}
    bottom = classify_diagram(S, T, lam, n)
    top = classify_diagram(T, V, mu, n)
    for comp in _components(edges):
        kinds = {k for k, _ in comp}
        verts = tuple(sorted({node[1] for e in comp for node in _edge_nodes(e)}))
        if kinds <= {"S", "mb"}:
            tags[comp] = bottom[verts]
        elif kinds <= {"mt", "V"}:
            tags[comp] = top[verts]
        else:
            raise AssertionError("initial stacked diagram mixes the two halves")

    states = [tags]
    remaining = list(T)
    chosen = list(order) if order is not None else None
    while remaining:
        avail = _available_pairs(remaining, n)
        if chosen is not None:
            pair = chosen.pop(0)
            if pair not in avail:
                raise ValueError(f"surgery order picks unavailable pair {pair}")
        else:
            pair = min(avail)
        remaining.remove(pair)
        cap_e = ("mb", pair)
        cup_e = ("mt", pair)
        new_edges = [("st", pair.p), ("st", pair.q)]

        new_states = []
        for tags in states:
            by_edge = {}
            for comp in tags:
                for e in comp:
                    by_edge[e] = comp
            c1 = by_edge[cap_e]
            c2 = by_edge[cup_e]
            if c1 != c2:
                merged_tag = _merge_tag(tags[c1], tags[c2])
                if merged_tag is None:
                    continue
                new_comp = frozenset((c1 | c2) - {cap_e, cup_e}) | frozenset(new_edges)
                nt = {c: t for c, t in tags.items() if c not in (c1, c2)}
                nt[frozenset(new_comp)] = merged_tag
                new_states.append(nt)
            else:
                rest = (c1 - {cap_e, cup_e}) | set(new_edges)
                parts = _components(rest)
                if len(parts) != 2:
                    raise AssertionError("split did not produce two circles")
                pa, pb = parts
                for ta, tb in _split_tags(tags[c1], _is_essential(pa), _is_essential(pb)):
                    nt = {c: t for c, t in tags.items() if c != c1}
                    nt[pa] = ta
                    nt[pb] = tb
                    new_states.append(nt)
        states = new_states
        if not states:
            return {}

    out: dict = {}
    for tags in states:
        symbols = {}
        for comp, tag in tags.items():
            cups = [obj for kind, obj in comp if kind == "S"]
            caps = [obj for kind, obj in comp if kind == "V"]
            symbols.update(orient_circle_with_tag(cups, caps, n, tag))
        nu = "".join(symbols[v] for v in range(1, 2 * n + 1))
        key = (S, nu, V)
        out[key] = out.get(key, 0) + 1
    return out


def admissible_orders(n: int, T: CupDiagram) -> list[list[Arc]]:
    """Every admissible surgery sequence for middle diagram T."""
    out = []

    def rec(remaining, prefix):
        if not remaining:
            out.append(prefix)
            return
        for pair in _available_pairs(remaining, n):
            rec([x for x in remaining if x != pair], prefix + [pair])

    rec(list(T), [])
    return out


# --- the algebra and its datum ----------------------------------------------

DEFAULT_MAX_DIM = 2000


@lru_cache(maxsize=None)
def algebra_dimension(n: int) -> int:
    weights = weight_list(n)
    cups = enumerate_cup_diagrams(n)
    return sum(sum(1 for S in cups if orients(S, w)) ** 2 for w in weights)


@lru_cache(maxsize=None)
def weight_list(n: int) -> tuple:
    seen = set()
    for S in enumerate_cup_diagrams(n):
        seen.update(orientations_of(S))
    return tuple(sorted(seen, key=weight_sort_key))


def build_annular(n: int, field: Field, max_dim: int = DEFAULT_MAX_DIM) -> tuple[AlgebraTable, CellDatum]:
    if n < 1:
        raise ValueError("n must be positive")
    dim = algebra_dimension(n)
    if dim > max_dim:
        raise SizeLimit(f"K_{n} has dimension {dim} > limit {max_dim}")
    cups = enumerate_cup_diagrams(n)
    X = list(weight_list(n))
    M = {w: [S for S in cups if orients(S, w)] for w in X}
    labels = [
        BasisLabel(w, S, T) for w in X for S in M[w] for T in M[w]
    ]
    index = {lab: i for i, lab in enumerate(labels)}

    one = field.one

    def mult(i, j):
        la, lb = labels[i], labels[j]
        raw = multiply_labels(n, (la.S, la.lam, la.T), (lb.S, lb.lam, lb.T))
        return {index[BasisLabel(w, S, T)]: field.from_int(c) for (S, w, T), c in raw.items()}

    star = tuple(index[BasisLabel(lab.lam, lab.T, lab.S)] for lab in labels)
    alg = AlgebraTable(field, labels, mult, star, name=f"annular:n={n}")

    cup_index = {S: k for k, S in enumerate(cups)}
    E = []
    for S in cups:
        aw = anticlockwise_weight(S)
        if not orients(S, aw):
            raise AssertionError("anticlockwise weight fails to orient its own diagram")
        E.append(alg.element_from_label(BasisLabel(aw, S, S)))
    orders = [
        StrictOrder(X, (lambda S: (lambda a, b: cup_order_less(S, a, b, n)))(S), f"<_{S}")
        for S in cups
    ]
    eps_index = {(w, S): cup_index[S] for w in X for S in M[w]}
    datum = CellDatum(
        alg=alg,
        X=X,
        M=M,
        E=E,
        orders=orders,
        eps_index=eps_index,
        name=alg.name,
        primitive_idempotents={anticlockwise_weight(S): E[cup_index[S]] for S in cups},
    )
    # lambda <-> cup diagram bijection via the all-anticlockwise weight
    if sorted(anticlockwise_weight(S) for S in cups) != sorted(X):
        raise AssertionError("weights and cup diagrams are not in bijection")
    return alg, datum


def cup_of_weight(n: int, lam: str) -> CupDiagram:
    """The unique cup diagram whose all-anticlockwise weight is lam."""
    for S in enumerate_cup_diagrams(n):
        if anticlockwise_weight(S) == lam:
            return S
    raise ValueError(f"no cup diagram for weight {lam}")


class FastpathMismatch(Exception):
    pass


def decomposition_fastpath(n: int, X: list[str], X0: list[str]) -> list[list[int]]:
    """d[mu][lam] = 1 iff the cup diagram of lam is oriented by mu."""
    cups = {lam: cup_of_weight(n, lam) for lam in X0}
    return [[1 if orients(cups[lam], mu) else 0 for lam in X0] for mu in X]


def decomposition_fastpath_checked(n: int, datum: CellDatum) -> list[list[int]]:
    """The fastpath matrix, verified against the radical-series engine."""
    from .celldata import decomposition_matrix, simple_set

    ss = simple_set(datum)
    engine = decomposition_matrix(datum, ss)
    fast = decomposition_fastpath(n, datum.X, ss.X0)
    if fast != engine:
        raise FastpathMismatch(
            f"orientation fastpath disagrees with the radical series for K_{n}"
        )
    return fast


def projective_dimension(n: int, lam: str) -> int:
    """dim P(lam) as the sum over the 2^n orientations nu of its cup
    diagram of dim Delta(nu)."""
    S = cup_of_weight(n, lam)
    cups = enumerate_cup_diagrams(n)
    total = 0
    for nu in orientations_of(S):
        total += sum(1 for T in cups if orients(T, nu))
    return total


def frobenius_form(alg: AlgebraTable, i: int, j: int):
    """sigma(x_i, x_j): the all-clockwise coefficient of the product."""
    field = alg.field
    a = alg.basis[i]
    b = alg.basis[j]
    if a.S != b.T:
        return field.zero
    nu = clockwise_weight(a.S)
    target = BasisLabel(nu, a.S, a.S)
    if target not in alg.index:
        return field.zero
    return alg.mult_basis(i, j).get(alg.index[target], field.zero)


def frobenius_gram(alg: AlgebraTable):
    from .linalg import Matrix

    n = alg.dim
    return Matrix.from_rows(
        alg.field, [[frobenius_form(alg, i, j) for j in range(n)] for i in range(n)]
    )


def rotate_label(n: int, lab: BasisLabel) -> BasisLabel:
    return BasisLabel(rotate_weight(lab.lam), rotate_cup(lab.S, n), rotate_cup(lab.T, n))


def rotate_element(n: int, x: Element) -> Element:
    alg = x.alg
    return alg.element(
        {alg.index[rotate_label(n, alg.basis[i])]: c for i, c in x.coeffs.items()}
    )
