"""Cell datum container and the axioms-to-Cartan pipeline.

Everything here is generic over an AlgebraTable whose basis labels are
(lambda, S, T) triples: axiom verification with witnesses, cell modules,
Gram forms and radicals, the simple labels X0, decomposition and Cartan
matrices with the reciprocity check, semisimplicity, idempotent cores.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Callable, Optional

from .algebra import (
    AlgebraTable,
    BasisLabel,
    Element,
    RepModule,
    composition_multiplicities,
    left_ideal_module,
    quotient_module,
    unit_element,
)
from .linalg import Matrix


class InconsistentCoefficients(Exception):
    pass


class DependsOnUV(Exception):
    pass


class RouteMismatch(Exception):
    pass


class ReciprocityFailure(Exception):
    pass


class NotPrimitive(Exception):
    pass


class StrictOrder:
    """Strict partial order on X given by a comparison oracle."""

    def __init__(self, elements: list, less: Callable[[Any, Any], bool], name: str = ""):
        self.elements = list(elements)
        self._less = less
        self.name = name

    def less(self, a, b) -> bool:
        return self._less(a, b)

    def leq(self, a, b) -> bool:
        return a == b or self._less(a, b)

    def check_valid(self) -> Optional[str]:
        """None if a strict partial order; else a short witness string."""
        xs = self.elements
        for a in xs:
            if self.less(a, a):
                return f"not irreflexive at {a}"
        for a in xs:
            for b in xs:
                if a != b and self.less(a, b) and self.less(b, a):
                    return f"not antisymmetric on ({a},{b})"
        for a in xs:
            for b in xs:
                if not self.less(a, b):
                    continue
                for c in xs:
                    if self.less(b, c) and not self.less(a, c):
                        return f"not transitive on ({a},{b},{c})"
        return None

    def hasse_pairs(self) -> list[tuple]:
        out = []
        for a in self.elements:
            for b in self.elements:
                if self.less(a, b) and not any(
                    self.less(a, c) and self.less(c, b) for c in self.elements
                ):
                    out.append((a, b))
        return out


def chain_order(elements: list, chain: list, name: str = "") -> StrictOrder:
    """Total order with chain[0] smallest."""
    pos = {x: i for i, x in enumerate(chain)}
    return StrictOrder(elements, lambda a, b: pos[a] < pos[b], name)


@dataclass
class CellDatum:
    alg: AlgebraTable
    X: list
    M: dict
    E: list[Element]
    orders: list[StrictOrder]
    eps_index: dict  # (lam, S) -> index into E
    name: str = ""
    # optional per-family registrations
    primitive_idempotents: dict = dc_field(default_factory=dict)  # lam -> Element

    def label_index(self, lam, S, T) -> int:
        return self.alg.index[BasisLabel(lam, S, T)]

    def eps_of(self, lam, S) -> int:
        return self.eps_index[(lam, S)]

    def order_of(self, lam, S) -> StrictOrder:
        return self.orders[self.eps_of(lam, S)]


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    witness: Optional[str] = None

    def __str__(self):
        tag = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else f"  [{self.witness}]"
        return f"{self.axiom}: {tag}{extra}"


@dataclass
class VerificationReport:
    results: list[AxiomResult]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __str__(self):
        return "\n".join(str(r) for r in self.results)


def _term_label(d: CellDatum, k: int) -> BasisLabel:
    return d.alg.basis[k]


def verify_cell_datum(d: CellDatum) -> VerificationReport:
    """Run the full axiom suite; failures come with a concrete witness."""
    alg = d.alg
    f = alg.field
    results = []

    # (a) the labels enumerate the basis, M-sets nonempty
    witness = None
    want = set()
    for lam in d.X:
        if not d.M[lam]:
            witness = f"M({lam}) is empty"
            break
        for S in d.M[lam]:
            for T in d.M[lam]:
                want.add(BasisLabel(lam, S, T))
    if witness is None and want != set(alg.basis):
        missing = want.symmetric_difference(set(alg.basis))
        witness = f"label/basis mismatch, e.g. {next(iter(missing))}"
    results.append(AxiomResult("a:basis-bijection", witness is None, witness))

    # (b) star flips (S,T) and is an anti-automorphism
    witness = None
    for i, lab in enumerate(alg.basis):
        j = alg.star_perm[i]
        if alg.basis[j] != BasisLabel(lab.lam, lab.T, lab.S):
            witness = f"star({lab}) != C({lab.lam};{lab.T},{lab.S})"
            break
        if alg.star_perm[j] != i:
            witness = f"star not involutive at {lab}"
            break
    if witness is None:
        n = alg.dim
        for i in range(n):
            x = alg.basis_element(i)
            for j in range(n):
                y = alg.basis_element(j)
                if (x * y).star() != y.star() * x.star():
                    witness = f"star({alg.basis[i]}*{alg.basis[j]}) != star*star"
                    break
            if witness:
                break
    results.append(AxiomResult("b:anti-involution", witness is None, witness))

    # (c) idempotent set: idempotent, orthogonal, star-fixed
    witness = None
    for a, e in enumerate(d.E):
        if e * e != e:
            witness = f"E[{a}] not idempotent"
            break
        if e.star() != e:
            witness = f"E[{a}] not star-fixed"
            break
        for b, e2 in enumerate(d.E):
            if a != b and not (e * e2).is_zero():
                witness = f"E[{a}]*E[{b}] != 0"
                break
        if witness:
            break
    results.append(AxiomResult("c:idempotents", witness is None, witness))

    # orders are strict partial orders on X
    witness = None
    for a, order in enumerate(d.orders):
        bad = order.check_valid()
        if bad is not None:
            witness = f"order[{a}]: {bad}"
            break
    results.append(AxiomResult("c:orders-valid", witness is None, witness))

    # (c) eq idem-props-2: eps * C = C if eps_S matches, else 0
    witness = None
    for a, e in enumerate(d.E):
        for i, lab in enumerate(alg.basis):
            x = alg.basis_element(i)
            got = e * x
            expected = x if d.eps_of(lab.lam, lab.S) == a else alg.zero_element()
            if got != expected:
                witness = f"E[{a}]*{lab} = {got}, expected {expected}"
                break
        if witness:
            break
    results.append(AxiomResult("c:idem-props-2", witness is None, witness))

    # (c) eq idem-props-1: eps R eps * C(lam) lies in R(<=_eps lam)
    witness = None
    for a in range(len(d.E)):
        order = d.orders[a]
        core_idx = [
            i
            for i, lab in enumerate(alg.basis)
            if d.eps_of(lab.lam, lab.S) == a and d.eps_of(lab.lam, lab.T) == a
        ]
        for i in core_idx:
            for j, lab in enumerate(alg.basis):
                for k in alg.mult_basis(i, j):
                    mu = _term_label(d, k).lam
                    if not order.leq(mu, lab.lam):
                        witness = (
                            f"{alg.basis[i]} * {lab} has term {_term_label(d, k)} "
                            f"with {mu} not <=_E[{a}] {lab.lam}"
                        )
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    results.append(AxiomResult("c:idem-props-1", witness is None, witness))

    # (d) left multiplication rule, with T-independence of the coefficients
    witness = None
    rcoeffs: dict = {}
    for i in range(alg.dim):
        if witness:
            break
        for lam in d.X:
            if witness:
                break
            per_T = {}
            for T in d.M[lam]:
                eps_T = d.eps_of(lam, T)
                order_T = d.orders[eps_T]
                row = {}
                ok = True
                for S in d.M[lam]:
                    j = d.label_index(lam, S, T)
                    for k, c in alg.mult_basis(i, j).items():
                        klab = _term_label(d, k)
                        if klab.lam == lam and klab.T == T:
                            row[(klab.S, S)] = c
                        else:
                            if not (
                                order_T.less(klab.lam, lam)
                                and d.eps_of(klab.lam, klab.T) == eps_T
                            ):
                                witness = (
                                    f"{alg.basis[i]} * C({lam};{S},{T}) has term {klab} "
                                    f"outside sum + R(<_epsT {lam})epsT"
                                )
                                ok = False
                                break
                    if not ok:
                        break
                if not ok:
                    break
                per_T[T] = row
            if witness:
                break
            vals = list(per_T.values())
            for other in vals[1:]:
                if other != vals[0]:
                    witness = f"r_a(S',S) depends on T for a={alg.basis[i]}, lambda={lam}"
                    break
            if witness is None and vals:
                rcoeffs[(i, lam)] = vals[0]
    results.append(AxiomResult("d:mult-left", witness is None, witness))

    # unit: sum of E is a two-sided identity
    witness = None
    try:
        unit_element(alg, d.E)
    except Exception as exc:  # NotUnital
        witness = str(exc)
    results.append(AxiomResult("unit", witness is None, witness))

    return VerificationReport(results)


@dataclass
class CellModule:
    lam: Any
    rep: RepModule
    basis: list  # the M(lam) labels indexing coordinates

    @property
    def dim(self):
        return self.rep.dim


def cell_module(d: CellDatum, lam) -> CellModule:
    """Delta(lambda) with the action read off from left multiplication."""
    alg = d.alg
    f = alg.field
    Ms = d.M[lam]
    pos = {S: i for i, S in enumerate(Ms)}
    m = len(Ms)
    action = []
    for i in range(alg.dim):
        per_T = []
        for T in Ms:
            mat = [[f.zero] * m for _ in range(m)]
            for S in Ms:
                j = d.label_index(lam, S, T)
                for k, c in alg.mult_basis(i, j).items():
                    klab = alg.basis[k]
                    if klab.lam == lam and klab.T == T:
                        mat[pos[klab.S]][pos[S]] = c
            per_T.append(mat)
        for other in per_T[1:]:
            if other != per_T[0]:
                raise InconsistentCoefficients(
                    f"action of {alg.basis[i]} on Delta({lam}) depends on T"
                )
        action.append(Matrix.from_rows(f, per_T[0]))
    return CellModule(lam, RepModule(alg, m, action), list(Ms))


@dataclass
class GramForm:
    lam: Any
    matrix: Matrix


def gram_matrix(d: CellDatum, lam, check_pairs: Optional[int] = None) -> GramForm:
    """Phi_lambda: entry (S,T) is the C(lam;U,V)-coefficient of
    C(lam;U,S) * C(lam;T,V), independent of the auxiliary pair (U,V)."""
    alg = d.alg
    f = alg.field
    Ms = d.M[lam]
    m = len(Ms)
    uv_pairs = [(U, V) for U in Ms for V in Ms]
    if check_pairs is not None and len(uv_pairs) > check_pairs:
        uv_pairs = uv_pairs[:check_pairs]
    reference = None
    for (U, V) in uv_pairs:
        kv = d.label_index(lam, U, V)
        mat = []
        for S in Ms:
            i = d.label_index(lam, U, S)
            row = []
            for T in Ms:
                j = d.label_index(lam, T, V)
                row.append(alg.mult_basis(i, j).get(kv, f.zero))
            mat.append(row)
        if reference is None:
            reference = mat
        elif mat != reference:
            raise DependsOnUV(f"Gram extraction for {lam} differs between (U,V) pairs")
    M = Matrix.from_rows(f, reference) if m else Matrix(f, 0, 0, [])
    if M != M.transpose():
        raise DependsOnUV(f"Gram matrix for {lam} is not symmetric")
    return GramForm(lam, M)


@dataclass
class SimpleSet:
    X0: list
    modules: dict  # lam -> RepModule (quotient of Delta(lam))
    dims: dict  # lam -> int
    cell_modules: dict  # lam -> CellModule
    grams: dict  # lam -> GramForm


def simple_set(d: CellDatum) -> SimpleSet:
    X0 = []
    modules = {}
    dims = {}
    cells = {}
    grams = {}
    for lam in d.X:
        delta = cell_module(d, lam)
        phi = gram_matrix(d, lam)
        cells[lam] = delta
        grams[lam] = phi
        if phi.matrix.is_zero():
            continue
        X0.append(lam)
        rad = phi.matrix.nullspace_basis()
        L, _ = quotient_module(delta.rep, rad)
        modules[lam] = L
        dims[lam] = L.dim
        if L.dim != phi.matrix.rank():
            raise InconsistentCoefficients(f"dim L({lam}) != rank Phi_{lam}")
    return SimpleSet(X0, modules, dims, cells, grams)


def decomposition_matrix(d: CellDatum, ss: Optional[SimpleSet] = None) -> list[list[int]]:
    """d[mu][lam] = [Delta(mu) : L(lam)], rows over X, columns over X0."""
    if ss is None:
        ss = simple_set(d)
    simples = [ss.modules[lam] for lam in ss.X0]
    D = []
    for mu in d.X:
        row = composition_multiplicities(ss.cell_modules[mu].rep, simples)
        D.append(row)
    for ci, lam in enumerate(ss.X0):
        ri = d.X.index(lam)
        if D[ri][ci] != 1:
            raise RouteMismatch(f"d[{lam},{lam}] = {D[ri][ci]} != 1")
    # second route via registered primitive idempotents
    if d.primitive_idempotents:
        for ci, lam in enumerate(ss.X0):
            e = d.primitive_idempotents.get(lam)
            if e is None:
                continue
            estar = e.star()
            for ri, mu in enumerate(d.X):
                rk = ss.cell_modules[mu].rep.act(estar).rank()
                if rk != D[ri][ci]:
                    raise RouteMismatch(
                        f"[Delta({mu}):L({lam})] = {D[ri][ci]} but rank(e*|Delta) = {rk}"
                    )
    return D


def parent_idempotent_index(d: CellDatum, e: Element) -> Optional[int]:
    """The index of the eps in E with eps e = e = e eps, if any."""
    for a, eps in enumerate(d.E):
        if eps * e == e and e * eps == e:
            return a
    return None


def decomposition_support_ok(d: CellDatum, ss: SimpleSet, D: list[list[int]]) -> bool:
    """d_{mu,lam} = 0 unless mu <=_lambda lambda.

    The order attached to lambda is the one of the idempotent in E under
    which a primitive idempotent for L(lambda) sits; with no registered
    primitive the check falls back to the union over eps of M(lambda).
    """
    for ci, lam in enumerate(ss.X0):
        e = d.primitive_idempotents.get(lam)
        if e is not None:
            parent = parent_idempotent_index(d, e)
            candidates = {parent} if parent is not None else set()
        else:
            candidates = {d.eps_of(lam, S) for S in d.M[lam]}
        for ri, mu in enumerate(d.X):
            if D[ri][ci] == 0 or mu == lam:
                continue
            if not any(d.orders[a].less(mu, lam) for a in candidates):
                return False
    return True


def int_matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def int_transpose(A: list[list[int]]) -> list[list[int]]:
    return [list(r) for r in zip(*A)]


def leading_principal_minors(C: list[list[int]]) -> list[Fraction]:
    out = []
    n = len(C)
    for k in range(1, n + 1):
        m = [[Fraction(C[i][j]) for j in range(k)] for i in range(k)]
        det = Fraction(1)
        for c in range(k):
            piv = None
            for r in range(c, k):
                if m[r][c] != 0:
                    piv = r
                    break
            if piv is None:
                det = Fraction(0)
                break
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for r in range(c + 1, k):
                if m[r][c] != 0:
                    fac = m[r][c] * inv
                    m[r] = [x - fac * y for x, y in zip(m[r], m[c])]
        out.append(det)
    return out


def det_int(C: list[list[int]]) -> Fraction:
    if not C:
        return Fraction(1)
    return leading_principal_minors(C)[-1]


def cartan_matrix(d: CellDatum, ss: Optional[SimpleSet] = None, D: Optional[list[list[int]]] = None):
    """C = D^T D; cross-checked against [P(lam):L(mu)] when primitive
    idempotents are registered.  Returns (C, D, minors)."""
    if ss is None:
        ss = simple_set(d)
    if D is None:
        D = decomposition_matrix(d, ss)
    C = int_matmul(int_transpose(D), D)
    if C != int_transpose(C):
        raise ReciprocityFailure("Cartan matrix not symmetric")
    minors = leading_principal_minors(C)
    if any(m < 0 for m in minors):
        raise ReciprocityFailure("Cartan matrix not positive semidefinite")
    if d.primitive_idempotents:
        simples = [ss.modules[lam] for lam in ss.X0]
        for ri, lam in enumerate(ss.X0):
            e = d.primitive_idempotents.get(lam)
            if e is None:
                continue
            P = left_ideal_module(d.alg, e)
            row = composition_multiplicities(P, simples)
            if row != C[ri]:
                raise ReciprocityFailure(
                    f"[P({lam}):L(mu)] = {row} disagrees with (D^T D) row {C[ri]}"
                )
    return C, D, minors


def is_semisimple(d: CellDatum, ss: Optional[SimpleSet] = None) -> bool:
    if ss is None:
        ss = simple_set(d)
    full_rank = all(ss.grams[lam].matrix.rank() == len(d.M[lam]) for lam in d.X)
    all_in_x0 = list(ss.X0) == list(d.X) and all(
        ss.dims[lam] == len(d.M[lam]) for lam in ss.X0
    )
    if full_rank != all_in_x0:
        raise RouteMismatch("semisimplicity criteria disagree")
    return full_rank


def match_primitive_idempotent(d: CellDatum, e: Element, ss: Optional[SimpleSet] = None):
    """The unique lambda in X0 on whose simple e acts nonzero."""
    if ss is None:
        ss = simple_set(d)
    if e * e != e:
        raise NotPrimitive("element is not idempotent")
    hits = [lam for lam in ss.X0 if not ss.modules[lam].act(e).is_zero()]
    if len(hits) != 1:
        raise NotPrimitive(f"idempotent acts nonzero on {len(hits)} simples")
    return hits[0]


def core_subalgebra(d: CellDatum, eps_idx: int) -> tuple[AlgebraTable, CellDatum]:
    """The cellular core eps R eps with its single-order cell datum."""
    alg = d.alg
    f = alg.field
    keep = [
        i
        for i, lab in enumerate(alg.basis)
        if d.eps_of(lab.lam, lab.S) == eps_idx and d.eps_of(lab.lam, lab.T) == eps_idx
    ]
    old_to_new = {i: k for k, i in enumerate(keep)}
    basis = [alg.basis[i] for i in keep]

    def mult(i2, j2):
        prod = alg.mult_basis(keep[i2], keep[j2])
        out = {}
        for k, c in prod.items():
            if k not in old_to_new:
                raise RouteMismatch(f"core not multiplicatively closed at term {alg.basis[k]}")
            out[old_to_new[k]] = c
        return out

    star = tuple(old_to_new[alg.star_perm[i]] for i in keep)
    core = AlgebraTable(f, basis, mult, star, name=f"{alg.name}-core-eps{eps_idx}")

    eps = d.E[eps_idx]
    if any(i not in old_to_new for i in eps.coeffs):
        raise RouteMismatch("eps is not supported on the core basis")
    eps_core = core.element({old_to_new[i]: c for i, c in eps.coeffs.items()})

    Xc = [lam for lam in d.X if any(d.eps_of(lam, S) == eps_idx for S in d.M[lam])]
    Mc = {
        lam: [S for S in d.M[lam] if d.eps_of(lam, S) == eps_idx]
        for lam in Xc
    }
    order = d.orders[eps_idx]
    datum = CellDatum(
        alg=core,
        X=Xc,
        M=Mc,
        E=[eps_core],
        orders=[StrictOrder(Xc, order.less, order.name)],
        eps_index={(lam, S): 0 for lam in Xc for S in Mc[lam]},
        name=f"{d.name}-core-eps{eps_idx}",
    )
    return core, datum


def projective_dims(d: CellDatum, ss: Optional[SimpleSet] = None) -> dict:
    """dim R e for each registered primitive idempotent e(lam)."""
    out = {}
    for lam, e in d.primitive_idempotents.items():
        out[lam] = left_ideal_module(d.alg, e).dim
    return out


def report_dict(d: CellDatum) -> dict:
    """The JSON report: axioms, X0, simple dims, D, C, reciprocity, ss."""
    rep = verify_cell_datum(d)
    ss = simple_set(d)
    D = decomposition_matrix(d, ss)
    C, _, minors = cartan_matrix(d, ss, D)
    return {
        "axioms": [
            {"axiom": r.axiom, "passed": r.passed, "witness": r.witness} for r in rep.results
        ],
        "X0": [str(lam) for lam in ss.X0],
        "simple_dims": {str(lam): ss.dims[lam] for lam in ss.X0},
        "D": D,
        "C": C,
        "reciprocity_ok": True,
        "semisimple": is_semisimple(d, ss),
    }


def report_json(d: CellDatum) -> str:
    return json.dumps(report_dict(d), indent=1, sort_keys=True)
