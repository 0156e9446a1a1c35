"""Exact exterior algebra over R^n.

Blades are ascending tuples of 1-based indices.  A blade of degree k is
placed in the colexicographic order of all k-subsets of {1..n}; the
position depends only on the blade, not on n, so vectors embed
unchanged when the ambient dimension grows.
"""

from fractions import Fraction

import gmpy2
from functools import lru_cache
from itertools import combinations
from math import comb

# mpq is an exact rational in lowest terms and several times faster than Fraction.
Rational = gmpy2.mpq
ZERO = Rational(0)
ONE = Rational(1)


def colex_index(blade):
    return sum(comb(b - 1, j + 1) for j, b in enumerate(blade))


@lru_cache(maxsize=None)
def blades(n, k):
    """All degree-k blades of R^n in colex order."""
    if k < 0 or k > n:
        return ()
    return tuple(sorted(combinations(range(1, n + 1), k), key=lambda b: b[::-1]))


def dim_exterior(n, k):
    return comb(n, k) if 0 <= k <= n else 0


def blade_product(a, b):
    """Return (sign, blade) for a^b, or (0, None) when an index repeats."""
    if set(a) & set(b):
        return 0, None
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(a + b))


def blade_complement(blade, n):
    """Return (sign, complement) with blade ^ complement = sign * vol."""
    comp = tuple(i for i in range(1, n + 1) if i not in blade)
    inv = sum(b - j - 1 for j, b in enumerate(blade))
    return (-1 if inv % 2 else 1), comp


def _as_rational(x):
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not allowed")
    if isinstance(x, Fraction):
        return Rational(x.numerator, x.denominator)
    return Rational(x)


class Form:
    """A homogeneous k-form on R^n with exact rational coefficients.

    Instances are immutable; ``terms`` maps blades to nonzero rationals.
    """

    __slots__ = ("n", "k", "_terms", "_hash")

    def __init__(self, n, k, terms=None):
        if n < 1:
            raise ValueError("ambient dimension must be positive")
        if k < 0:
            raise ValueError(f"negative degree {k}")
        clean = {}
        for blade, c in (terms or {}).items():
            blade = tuple(blade)
            if len(blade) != k or any(i < 1 or i > n for i in blade):
                raise ValueError(f"blade {blade} invalid for n={n}, k={k}")
            if any(blade[j] >= blade[j + 1] for j in range(k - 1)):
                raise ValueError(f"blade {blade} is not strictly increasing")
            c = _as_rational(c)
            if c:
                clean[blade] = clean.get(blade, 0) + c
                if not clean[blade]:
                    del clean[blade]
        self.n = n
        self.k = k
        self._terms = clean
        self._hash = None

    @classmethod
    def zero(cls, n, k):
        return cls(n, k)

    @classmethod
    def scalar(cls, n, c=1):
        return cls(n, 0, {(): c})

    @classmethod
    def basis(cls, n, idx, coeff=1):
        """The monomial coeff * dx_i ^ dx_j ^ ... (indices need not be sorted)."""
        idx = tuple(idx)
        if len(set(idx)) != len(idx):
            return cls(n, len(idx))
        order = sorted(range(len(idx)), key=lambda j: idx[j])
        inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
        sign = -1 if inv % 2 else 1
        return cls(n, len(idx), {tuple(idx[j] for j in order): sign * _as_rational(coeff)})

    @classmethod
    def from_vector(cls, n, k, vec):
        bl = blades(n, k)
        return cls(n, k, {bl[i]: c for i, c in vec.items()})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: colex_index(t[0]))

    def coefficient(self, blade):
        return self._terms.get(tuple(blade), ZERO)

    def to_vector(self):
        return {colex_index(b): c for b, c in self._terms.items()}

    def _check(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError(f"cannot combine {self.k}-form on R^{self.n} with {other.k}-form on R^{other.n}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        t = dict(self._terms)
        for b, c in other._terms.items():
            t[b] = t.get(b, 0) + c
        return Form(self.n, self.k, t)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Form(self.n, self.k, {b: -c for b, c in self._terms.items()})

    def __mul__(self, s):
        if isinstance(s, Form):
            return NotImplemented
        s = _as_rational(s)
        return Form(self.n, self.k, {b: s * c for b, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (ONE / _as_rational(s))

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.k, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return f"Form(n={self.n}, k={self.k}, 0)"
        parts = []
        for b, c in self.items():
            name = "w" + "".join(map(str, b)) if all(i < 10 for i in b) else "w" + str(b)
            if not b:
                name = "1"
            parts.append(f"{c}*{name}" if c != 1 else name)
        return f"Form(n={self.n}, k={self.k}, " + " + ".join(parts) + ")"


def wedge(a, b):
    if a.n != b.n:
        raise ValueError(f"ambient dimension mismatch: {a.n} vs {b.n}")
    n, k = a.n, a.k + b.k
    out = {}
    for ba, ca in a._terms.items():
        for bb, cb in b._terms.items():
            s, bl = blade_product(ba, bb)
            if s:
                out[bl] = out.get(bl, 0) + s * ca * cb
    return Form(n, k, out)


def hodge_star(a):
    out = {}
    for b, c in a._terms.items():
        s, comp = blade_complement(b, a.n)
        out[comp] = s * c
    return Form(a.n, a.n - a.k, out)


def inner_product(a, b):
    if (a.n, a.k) != (b.n, b.k):
        raise ValueError("inner product needs forms of equal degree and dimension")
    if len(a._terms) > len(b._terms):
        a, b = b, a
    return sum((c * b._terms[bl] for bl, c in a._terms.items() if bl in b._terms), ZERO)


def volume(n):
    return Form(n, n, {tuple(range(1, n + 1)): 1})


def embed(a, n):
    """View a form on R^m as a form on R^n (n >= m) via the first m coordinates."""
    if n < a.n:
        raise ValueError("can only embed into a larger space")
    return Form(n, a.k, a._terms)


def shift(a, n, offset):
    """Relabel coordinates i -> i + offset inside R^n."""
    return Form(n, a.k, {tuple(i + offset for i in b): c for b, c in a._terms.items()})
