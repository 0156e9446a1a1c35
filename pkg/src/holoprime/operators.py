"""Multiplication, 2-form rank and the T_alpha operator as exact matrices."""


from .algebra import Rational, Form, blades, hodge_star, wedge
from .linalg import Ambient, Echelon, LinearMap, Subspace


def mult_map(alpha, k):
    """Matrix of beta -> alpha ^ beta from Lambda^k to Lambda^(k + deg alpha)."""
    n = alpha.n
    if k < 0 or k + alpha.k > n:
        raise ValueError(f"degree overflow: {k} + {alpha.k} > {n}")
    cols = [wedge(alpha, Form(n, k, {b: 1})).to_vector() for b in blades(n, k)]
    return LinearMap(Ambient(n, k), Ambient(n, k + alpha.k), cols)


def skew_matrix(alpha):
    if alpha.k != 2:
        raise ValueError("expected a 2-form")
    n = alpha.n
    a = [[Rational(0)] * n for _ in range(n)]
    for (i, j), c in alpha.terms.items():
        a[i - 1][j - 1] = c
        a[j - 1][i - 1] = -c
    return a


def two_form_from_matrix(a):
    """Skew matrix -> sum_{i<j} a[i][j] w^{ij}."""
    n = len(a)
    return Form(n, 2, {(i + 1, j + 1): a[i][j] for i in range(n) for j in range(i + 1, n) if a[i][j]})


def rank_two_form(alpha):
    """Half the rank of the associated skew matrix."""
    rows = [{j: x for j, x in enumerate(r) if x} for r in skew_matrix(alpha)]
    return len(Echelon(r for r in rows if r)) // 2


def t_operator(alpha, k):
    """Matrix of beta -> *(alpha ^ beta) on Lambda^k, for deg alpha = n - 2k."""
    n = alpha.n
    if alpha.k != n - 2 * k:
        raise ValueError(f"T_alpha on Lambda^{k} needs a form of degree {n - 2 * k}, got {alpha.k}")
    cols = [hodge_star(wedge(alpha, Form(n, k, {b: 1}))).to_vector() for b in blades(n, k)]
    return LinearMap(Ambient(n, k), Ambient(n, k), cols)


def eigenspace(m, value):
    if m.domain.dim != m.codomain.dim:
        raise ValueError("eigenspace of a non-square map")
    amb = m.domain
    return Subspace(amb.n, amb.k, m.shifted(value).kernel_vectors())


def is_adjoint_pair(m, sign):
    """True if the matrix equals sign times its transpose."""
    d = m.dense()
    size = len(d)
    return all(d[i][j] == sign * d[j][i] for i in range(size) for j in range(size))
