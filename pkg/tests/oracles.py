"""Independent reference implementations used only by the tests.

These avoid the package's colex tables and echelon code: signs come from
cycle decomposition, ranks from sympy.
"""

from fractions import Fraction
from itertools import combinations

import sympy


def perm_sign(seq):
    """Sign of the permutation sorting seq (distinct entries), by cycle count."""
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    seen = [False] * len(seq)
    sign = 1
    for start in range(len(seq)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def terms_of(form):
    return {tuple(b): Fraction(int(c.numerator), int(c.denominator)) for b, c in form.items()}


def brute_wedge(a, b):
    out = {}
    for ia, ca in a.items():
        for ib, cb in b.items():
            idx = ia + ib
            if len(set(idx)) < len(idx):
                continue
            key = tuple(sorted(idx))
            out[key] = out.get(key, 0) + perm_sign(idx) * ca * cb
    return {k: v for k, v in out.items() if v}


def brute_star(n, a):
    out = {}
    for idx, c in a.items():
        rest = tuple(i for i in range(1, n + 1) if i not in idx)
        out[rest] = out.get(rest, 0) + perm_sign(idx + rest) * c
    return {k: v for k, v in out.items() if v}


def all_blades(n, k):
    return list(combinations(range(1, n + 1), k))


def rank(vectors, size):
    """Exact rank of sparse {column: value} vectors with sympy."""
    if not vectors:
        return 0
    m = sympy.zeros(len(vectors), size)
    for i, v in enumerate(vectors):
        for j, x in v.items():
            m[i, j] = sympy.Rational(int(x.numerator), int(x.denominator))
    return m.rank()


def form_rank_matrix(forms, n, k):
    """Coefficient vectors of forms keyed by lexicographic blade position."""
    pos = {b: i for i, b in enumerate(all_blades(n, k))}
    vecs = []
    for f in forms:
        vecs.append({pos[b]: c for b, c in terms_of(f).items()})
    return vecs, len(pos)


def span_rank(forms, n, k):
    vecs, size = form_rank_matrix(forms, n, k)
    return rank(vecs, size)


def substitute(form, g):
    """Pull a form through the linear map w^i -> sum_j g[i][j] w^j (extended multiplicatively)."""
    from holoprime.algebra import Form, wedge

    n = form.n
    images = [Form(n, 1, {(j + 1,): g[i][j] for j in range(n) if g[i][j]}) for i in range(n)]
    out = Form.zero(n, form.k)
    for b, c in form.items():
        term = Form.scalar(n, c)
        for i in b:
            term = wedge(term, images[i - 1])
        out = out + term
    return out


def derivation(a, terms):
    """Action of the matrix a (w^i -> sum_j a[j][i] w^j) on a form, as a derivation."""
    out = {}
    for idx, c in terms.items():
        for pos, i in enumerate(idx):
            for j in range(1, len(a) + 1):
                x = a[j - 1][i - 1]
                if not x:
                    continue
                new = idx[:pos] + (j,) + idx[pos + 1:]
                if len(set(new)) < len(new):
                    continue
                key = tuple(sorted(new))
                out[key] = out.get(key, 0) + perm_sign(new) * c * x
    return {k: v for k, v in out.items() if v}


def stabilizer(form):
    """Basis of skew matrices annihilating form, from a sympy nullspace."""
    n = form.n
    pairs = list(combinations(range(n), 2))
    target = terms_of(form)
    cols = []
    for i, j in pairs:
        a = [[0] * n for _ in range(n)]
        a[i][j], a[j][i] = 1, -1
        cols.append(derivation(a, target))
    keys = sorted({k for c in cols for k in c})
    m = sympy.Matrix([[c.get(k, 0) for c in cols] for k in keys])
    out = []
    for v in m.nullspace():
        a = [[0] * n for _ in range(n)]
        for (i, j), x in zip(pairs, v):
            a[i][j], a[j][i] = Fraction(int(x.p), int(x.q)), -Fraction(int(x.p), int(x.q))
        out.append(a)
    return out
