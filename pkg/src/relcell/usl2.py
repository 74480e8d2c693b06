"""The restricted enveloping algebra of sl2 over F_p, p an odd prime.

Basis labels are (lam, S, T) for the elements F^S 1_lam E^T with all three
in [0, p).  Products are normal-ordered through the commutation rule

    E^T F^U 1_mu = sum_j  U!T!/((U-j)!(T-j)!) * binom(T-U+mu, j)
                          * F^{U-j} E^{T-j} 1_mu

(factorials and binomials mod p), where terms with an exponent >= p vanish
because E^p = F^p = 0.  The left H-weight of F^S 1_lam E^T is lam - 2S, so
the weight idempotent fixing it on the left is 1_{lam-2S}.
"""

from __future__ import annotations

from .algebra import AlgebraTable, BasisLabel, Element
from .celldata import CellDatum, StrictOrder
from .field import PrimeField, binomial_mod, factorial_mod
from .linalg import Matrix


class UnsupportedCharacteristic(Exception):
    pass


def _check_p(p: int):
    field = PrimeField(p)
    if p == 2:
        raise UnsupportedCharacteristic("p = 2 is excluded (the algebra is already cellular)")
    return field


def structure_constants(p: int, field: PrimeField):
    """Multiplication rule on labels: (lam,S,T) * (mu,U,V) -> {label: scalar}."""

    def mult_labels(a, b):
        lam, S, T = a
        mu, U, V = b
        if (lam - 2 * T) % p != (mu - 2 * U) % p:
            return {}
        out = {}
        for j in range(min(T, U) + 1):
            x = S + U - j
            z = T - j + V
            if x >= p or z >= p:
                continue
            coeff = field.mul(
                field.div(
                    field.mul(factorial_mod(T, field), factorial_mod(U, field)),
                    field.mul(factorial_mod(T - j, field), factorial_mod(U - j, field)),
                ),
                binomial_mod(T - U + mu, j, field),
            )
            if coeff == field.zero:
                continue
            nu = (mu + 2 * (T - j)) % p
            key = (nu, x, z)
            out[key] = field.add(out.get(key, field.zero), coeff)
        return {k: c for k, c in out.items() if c != field.zero}

    return mult_labels


def weight_idempotent_h_poly(lam: int, p: int) -> list:
    """Coefficients of 1_lam = -prod_{mu != lam}(H - mu) in powers of H."""
    field = _check_p(p)
    poly = [field.one]  # constant 1
    for mu in range(p):
        if mu == lam:
            continue
        # multiply by (H - mu)
        new = [field.zero] * (len(poly) + 1)
        for k, c in enumerate(poly):
            new[k + 1] = field.add(new[k + 1], c)
            new[k] = field.add(new[k], field.mul(field.neg(field.from_int(mu)), c))
        poly = new
    return [field.neg(c) for c in poly]


def build_usl2(p: int) -> tuple[AlgebraTable, CellDatum]:
    field = _check_p(p)
    labels = [BasisLabel(lam, S, T) for lam in range(p) for S in range(p) for T in range(p)]
    index = {lab: i for i, lab in enumerate(labels)}
    rule = structure_constants(p, field)

    def mult(i, j):
        return {index[BasisLabel(*k)]: c for k, c in rule(tuple(labels[i]), tuple(labels[j])).items()}

    star = tuple(index[BasisLabel(lab.lam, lab.T, lab.S)] for lab in labels)
    alg = AlgebraTable(field, labels, mult, star, name=f"usl2:p={p}")

    E_gen = alg.element({index[BasisLabel(lam, 0, 1)]: field.one for lam in range(p)})
    F_gen = alg.element({index[BasisLabel(lam, 1, 0)]: field.one for lam in range(p)})
    H_gen = alg.element(
        {index[BasisLabel(lam, 0, 0)]: field.from_int(lam) for lam in range(p) if lam % p != 0}
    )
    alg.generators = [("E", E_gen), ("F", F_gen), ("H", H_gen)] + [
        (f"1_{lam}", alg.basis_element(index[BasisLabel(lam, 0, 0)])) for lam in range(p)
    ]

    X = list(range(p))
    M = {lam: list(range(p)) for lam in X}
    E = [alg.basis_element(index[BasisLabel(nu, 0, 0)]) for nu in range(p)]

    # under 1_nu the maximum is nu, then nu+2, nu+4, ... (2 generates F_p)
    assert p > 2
    rank = [{(nu + 2 * k) % p: k for k in range(p)} for nu in range(p)]
    orders = [
        StrictOrder(X, (lambda nu: (lambda a, b: rank[nu][a] > rank[nu][b]))(nu), f"<_1_{nu}")
        for nu in range(p)
    ]
    eps_index = {(lam, S): (lam - 2 * S) % p for lam in X for S in M[lam]}
    datum = CellDatum(alg=alg, X=X, M=M, E=E, orders=orders, eps_index=eps_index, name=alg.name)
    return alg, datum


def weight_idempotent(lam: int, p: int, alg: AlgebraTable = None) -> Element:
    """1_lam as a cell-basis Element (the basis element C(lam;0,0))."""
    if alg is None:
        alg, _ = build_usl2(p)
    return alg.element_from_label(BasisLabel(lam, 0, 0))


def generator_element(name: str, alg: AlgebraTable) -> Element:
    for gname, g in alg.generators:
        if gname == name:
            return g
    raise KeyError(name)


def normal_order(word, alg: AlgebraTable) -> Element:
    """Product of a word of generator powers, expressed in the cell basis.

    word is a sequence of (name, exponent) with name in {"E","F","H"} or
    "1_k" for a weight idempotent.
    """
    field = alg.field
    out = None
    for name, exp in word:
        g = generator_element(name, alg)
        for _ in range(exp):
            out = g if out is None else out * g
    if out is None:
        # empty word = 1 = sum of the weight idempotents
        p = len({lab.lam for lab in alg.basis})
        out = alg.zero_element()
        for lam in range(p):
            out = out + alg.element_from_label(BasisLabel(lam, 0, 0))
    return out


def cell_to_pbw_matrix(p: int) -> Matrix:
    """Change of basis C(lam;S,T) -> F^x H^y E^z, block diagonal in (S,T).

    Row index: PBW monomial (x, y, z) flattened; column: label (lam, S, T)
    flattened the same way the algebra orders its basis.
    """
    field = _check_p(p)
    h_polys = [weight_idempotent_h_poly(lam, p) for lam in range(p)]
    n = p * p * p
    rows = [[field.zero] * n for _ in range(n)]

    def pbw_idx(x, y, z):
        return (x * p + y) * p + z

    def lab_idx(lam, S, T):
        return (lam * p + S) * p + T

    for lam in range(p):
        for S in range(p):
            for T in range(p):
                col = lab_idx(lam, S, T)
                for y, c in enumerate(h_polys[lam]):
                    if c != field.zero and y < p:
                        rows[pbw_idx(S, y, T)][col] = c
    return Matrix.from_rows(field, rows)


def verify_pbw_change_of_basis(p: int) -> bool:
    """The cell basis spans the PBW basis (the conversion is invertible)."""
    M = cell_to_pbw_matrix(p)
    return M.rank() == p * p * p


def verify_chi_zero_boundary(p: int, alg: AlgebraTable = None, datum: CellDatum = None) -> list:
    """Check that truncation by E^p = F^p = 0 keeps axiom (d) closed.

    For every product of basis elements, every surviving term must carry a
    label that is <= the right factor's label in the order of its right
    idempotent (strictly below except for the main terms).  Returns a list
    of violations (empty = pass).
    """
    if alg is None:
        alg, datum = build_usl2(p)
    bad = []
    for i, a in enumerate(alg.basis):
        for j, b in enumerate(alg.basis):
            mu, U, V = b.lam, b.S, b.T
            order = datum.orders[datum.eps_of(mu, V)]
            for k in alg.mult_basis(i, j):
                lab = alg.basis[k]
                if lab.lam not in datum.X:
                    bad.append((a, b, lab, "label outside X"))
                elif lab.lam != mu and not order.less(lab.lam, mu):
                    bad.append((a, b, lab, "friend not strictly smaller"))
    return bad


def gram_diagonal_formula(p: int):
    """Predicted Gram diagonal (S!)^2 * binom(lam, S) per lam."""
    field = PrimeField(p)
    out = {}
    for lam in range(p):
        out[lam] = [
            field.mul(
                field.mul(factorial_mod(S, field), factorial_mod(S, field)),
                binomial_mod(lam, S, field),
            )
            for S in range(p)
        ]
    return out
