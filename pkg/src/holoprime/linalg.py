"""Exact subspace arithmetic inside Lambda^k(R^n).

Vectors are sparse dicts ``{colex index: rational}`` with no stored
zeros.  Subspaces keep a reduced row-echelon basis, so two subspaces are
equal exactly when their bases are equal.
"""

from dataclasses import dataclass

from .algebra import ONE, Rational, Form, blades, dim_exterior, wedge

MAX_DIM_DEFAULT = 12


def _axpy(v, c, row):
    """v <- v - c * row, in place."""
    for col, x in row.items():
        y = v.get(col, 0) - c * x
        if y:
            v[col] = y
        else:
            v.pop(col, None)


def dot(u, v):
    if len(u) > len(v):
        u, v = v, u
    return sum((x * v[c] for c, x in u.items() if c in v), Rational(0))


class Echelon:
    """Incrementally maintained reduced row-echelon basis.

    With ``track=True`` every row remembers which combination of the
    inserted vectors produced it, which is what kernels and coordinate
    solves need.
    """

    def __init__(self, rows=(), track=False):
        self.rows = {}
        self.tags = {} if track else None
        for r in rows:
            self.insert(r)

    def copy(self):
        e = Echelon.__new__(Echelon)
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        e.tags = None if self.tags is None else {p: dict(t) for p, t in self.tags.items()}
        return e

    def __len__(self):
        return len(self.rows)

    def reduce(self, v, tag=None):
        v = dict(v)
        tag = None if tag is None else dict(tag)
        for p in [c for c in v if c in self.rows]:
            c = v.get(p)
            if c:
                _axpy(v, c, self.rows[p])
                if tag is not None:
                    _axpy(tag, c, self.tags[p])
        return v, tag

    def insert(self, v, tag=None):
        """Add v; return None if it was new, else the residual tag (or {})."""
        v, tag = self.reduce(v, tag)
        if not v:
            return tag if tag is not None else {}
        p = min(v)
        inv = ONE / v[p]
        v = {c: x * inv for c, x in v.items()}
        if tag is not None:
            tag = {c: x * inv for c, x in tag.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                _axpy(row, c, v)
                if tag is not None:
                    _axpy(self.tags[q], c, tag)
        self.rows[p] = v
        if tag is not None:
            self.tags[p] = tag
        return None

    def contains(self, v):
        return not self.reduce(v)[0]

    def sorted_rows(self):
        return [self.rows[p] for p in sorted(self.rows)]


def rank_of(vectors):
    return len(Echelon(vectors))


@dataclass(frozen=True)
class Ambient:
    n: int
    k: int

    @property
    def dim(self):
        return dim_exterior(self.n, self.k)

    def __str__(self):
        return f"L{self.k}(R{self.n})"


class Subspace:
    """Linear subspace of Lambda^k(R^n) in canonical RREF form."""

    __slots__ = ("n", "k", "_rows", "_key", "_gram_inv", "label")

    def __init__(self, n, k, vectors=(), label=None):
        if n > max_dim():
            raise ValueError(f"ambient dimension {n} exceeds cap {max_dim()}")
        ech = vectors if isinstance(vectors, Echelon) else Echelon(vectors)
        self.n = n
        self.k = k
        self._rows = ech.sorted_rows()
        size = dim_exterior(n, k)
        for r in self._rows:
            if max(r) >= size:
                raise ValueError("vector does not fit the ambient space")
        self._key = tuple(tuple(sorted(r.items())) for r in self._rows)
        self._gram_inv = None
        self.label = label

    @classmethod
    def zero(cls, n, k):
        return cls(n, k)

    @classmethod
    def full(cls, n, k):
        return cls(n, k, ({i: Rational(1)} for i in range(dim_exterior(n, k))))

    @property
    def dim(self):
        return len(self._rows)

    @property
    def ambient(self):
        return Ambient(self.n, self.k)

    @property
    def ambient_dim(self):
        return dim_exterior(self.n, self.k)

    @property
    def vectors(self):
        return [dict(r) for r in self._rows]

    @property
    def pivots(self):
        return [min(r) for r in self._rows]

    def basis(self):
        return [Form.from_vector(self.n, self.k, r) for r in self._rows]

    def echelon(self):
        e = Echelon()
        e.rows = {min(r): dict(r) for r in self._rows}
        return e

    def is_full(self):
        return self.dim == self.ambient_dim

    def contains(self, x):
        if isinstance(x, Subspace):
            self._same(x)
            ech = self.echelon()
            return all(ech.contains(v) for v in x._rows)
        if isinstance(x, Form):
            if (x.n, x.k) != (self.n, self.k):
                raise ValueError("form does not live in this ambient space")
            x = x.to_vector()
        return self.echelon().contains(x)

    __contains__ = contains

    def _same(self, other):
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.n, self.k, self._key) == (other.n, other.k, other._key)

    def __hash__(self):
        return hash((self.n, self.k, self._key))

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return subspace_intersect(self, other)

    def __repr__(self):
        name = f" {self.label}" if self.label else ""
        return f"<Subspace{name} dim {self.dim} in L{self.k}(R{self.n})>"

    def labelled(self, label):
        s = Subspace.__new__(Subspace)
        s.n, s.k, s._rows, s._key, s._gram_inv = self.n, self.k, self._rows, self._key, self._gram_inv
        s.label = label
        return s

    def complement(self):
        return orthogonal_complement(self)

    def project(self, x):
        """Orthogonal projection onto this subspace (Form or vector in, same out)."""
        as_form = isinstance(x, Form)
        v = x.to_vector() if as_form else x
        coeffs = self.coordinates_of_projection(v)
        out = {}
        for c, row in zip(coeffs, self._rows):
            if c:
                for col, y in row.items():
                    z = out.get(col, 0) + c * y
                    if z:
                        out[col] = z
                    else:
                        del out[col]
        return Form.from_vector(self.n, self.k, out) if as_form else out

    def coordinates_of_projection(self, v):
        """Coefficients, w.r.t. the RREF basis, of the orthogonal projection of v."""
        if self._gram_inv is None:
            gram = [[dot(a, b) for b in self._rows] for a in self._rows]
            self._gram_inv = _invert(gram)
        b = [dot(r, v) for r in self._rows]
        return [sum((g * y for g, y in zip(grow, b) if g and y), Rational(0)) for grow in self._gram_inv]

    def coordinates(self, x):
        """Exact coordinates of an element of the subspace in its RREF basis."""
        v = x.to_vector() if isinstance(x, Form) else x
        coeffs = [v.get(min(r), Rational(0)) for r in self._rows]
        check = dict(v)
        for c, r in zip(coeffs, self._rows):
            if c:
                _axpy(check, c, r)
        if check:
            raise ValueError("vector is not in the subspace")
        return coeffs


def _invert(m):
    size = len(m)
    a = [list(row) + [Rational(int(i == j)) for j in range(size)] for i, row in enumerate(m)]
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = ONE / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                c = a[r][col]
                a[r] = [x - c * y for x, y in zip(a[r], a[col])]
    return [row[size:] for row in a]


def max_dim():
    import os

    try:
        return int(os.environ.get("HOLOPRIME_MAX_DIM", MAX_DIM_DEFAULT))
    except ValueError:
        return MAX_DIM_DEFAULT


class QuotientSpace:
    """Lambda^k / E realised on the orthogonal complement of E."""

    def __init__(self, divisor):
        self.divisor = divisor
        self.n, self.k = divisor.n, divisor.k
        self.complement = orthogonal_complement(divisor)

    @classmethod
    def of(cls, n, k, divisor=None):
        return cls(divisor if divisor is not None else Subspace.zero(n, k))

    @property
    def dim(self):
        return self.complement.dim

    def project(self, x):
        return self.complement.project(x)

    def __repr__(self):
        return f"<Quotient L{self.k}(R{self.n}) / dim {self.divisor.dim}>"


class LinearMap:
    """Exact matrix between coordinate spaces; stored column by column."""

    def __init__(self, domain, codomain, columns):
        self.domain = domain
        self.codomain = codomain
        self.columns = [dict(c) for c in columns]
        if len(self.columns) != domain.dim:
            raise ValueError(f"{len(self.columns)} columns for a domain of dimension {domain.dim}")
        if any(c and max(c) >= codomain.dim for c in self.columns):
            raise ValueError("column does not fit the codomain")

    @property
    def shape(self):
        return (self.codomain.dim, self.domain.dim)

    def rank(self):
        return rank_of(self.columns)

    def kernel_vectors(self):
        ech = Echelon(track=True)
        out = []
        for j, col in enumerate(self.columns):
            res = ech.insert(col, {j: Rational(1)})
            if res is not None:
                out.append(res)
        return out

    def nullity(self):
        return self.domain.dim - self.rank()

    def apply(self, v):
        out = {}
        for j, c in v.items():
            if c:
                for i, x in self.columns[j].items():
                    y = out.get(i, 0) + c * x
                    if y:
                        out[i] = y
                    else:
                        del out[i]
        return out

    def dense(self):
        rows, cols = self.shape
        m = [[Rational(0)] * cols for _ in range(rows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                m[i][j] = x
        return m

    def trace(self):
        if self.shape[0] != self.shape[1]:
            raise ValueError("trace of a non-square map")
        return sum((c.get(j, Rational(0)) for j, c in enumerate(self.columns)), Rational(0))

    def shifted(self, value):
        """self - value * identity."""
        if self.shape[0] != self.shape[1]:
            raise ValueError("eigen computations need a square map")
        value = Rational(value)
        cols = []
        for j, c in enumerate(self.columns):
            c = dict(c)
            y = c.get(j, 0) - value
            if y:
                c[j] = y
            else:
                c.pop(j, None)
            cols.append(c)
        return LinearMap(self.domain, self.codomain, cols)

    def __repr__(self):
        return f"<LinearMap {self.shape[0]}x{self.shape[1]} rank {self.rank()}>"


def span(forms, n=None, k=None):
    forms = list(forms)
    if forms:
        n0, k0 = forms[0].n, forms[0].k
        if any((f.n, f.k) != (n0, k0) for f in forms):
            raise ValueError("span of forms with mixed degree or dimension")
        n, k = n0, k0
    if n is None or k is None:
        raise ValueError("span of nothing needs explicit n and k")
    return Subspace(n, k, [f.to_vector() for f in forms if f])


def subspace_sum(a, b):
    a._same(b)
    ech = a.echelon()
    for v in b._rows:
        ech.insert(v)
    return Subspace(a.n, a.k, ech)


def orthogonal_complement(e):
    size = e.ambient_dim
    rows = e._rows
    pivots = {min(r) for r in rows}
    vecs = []
    for f in range(size):
        if f in pivots:
            continue
        v = {f: Rational(1)}
        for r in rows:
            x = r.get(f)
            if x:
                v[min(r)] = -x
        vecs.append(v)
    return Subspace(e.n, e.k, vecs)


def subspace_intersect(a, b):
    a._same(b)
    return orthogonal_complement(subspace_sum(orthogonal_complement(a), orthogonal_complement(b)))


def contains(e, x):
    return e.contains(x)


def dim(e):
    return e.dim


def wedge_vector(lam, v, n, k):
    """lam ^ v for a form lam and a sparse vector v in Lambda^k(R^n)."""
    return wedge(lam, Form.from_vector(n, k, v)).to_vector()


def product_space(e, i):
    """E . Lambda^i: span of all e ^ B over a basis of E and blades B of degree i."""
    if e.k + i > e.n:
        raise ValueError(f"degree overflow: {e.k}+{i} > {e.n}")
    ech = Echelon()
    size = dim_exterior(e.n, e.k + i)
    for f in e.basis():
        for b in blades(e.n, i):
            if len(ech) < size:
                ech.insert(wedge(f, Form(e.n, i, {b: 1})).to_vector())
    return Subspace(e.n, e.k + i, ech)


def _times_lambda1(e):
    n, k = e.n, e.k
    ech = Echelon()
    size = dim_exterior(n, k + 1)
    for v in e._rows:
        for i in range(n):
            if len(ech) == size:
                return Subspace(n, k + 1, ech)
            lam = [0] * n
            lam[i] = 1
            ech.insert(lambda_wedge(lam, v, n, k))
    return Subspace(n, k + 1, ech)


def product_chain(e):
    """[E, E.L1, E.L2, ...] up to and including the first full power."""
    if e.dim == 0:
        raise ValueError("the zero subspace never saturates")
    chain = [e]
    while not chain[-1].is_full() and chain[-1].k < e.n:
        chain.append(_times_lambda1(chain[-1]))
    return chain


def saturation_degree(e):
    """Return r with E.L^r proper (or r = 0) and E.L^(r+1) full."""
    chain = product_chain(e)
    if not chain[-1].is_full():
        raise ValueError("subspace does not saturate below degree n")
    return max(len(chain) - 2, 0)


def induced_quotient_map(lam, source, target):
    """Matrix of lam^ : L^a/E -> L^(a+1)/E' on orthogonal-complement coordinates."""
    if lam.k != 1:
        raise ValueError("lambda must be a 1-form")
    if (source.n, source.k + 1) != (target.n, target.k) or lam.n != source.n:
        raise ValueError("source and target degrees are incompatible")
    n = source.n
    if lam:
        for v in source.divisor.vectors:
            if not target.divisor.contains(wedge_vector(lam, v, n, source.k)):
                raise ValueError("induced map is not well defined: lambda ^ E is not inside E'")
    cols = []
    for v in source.complement.vectors:
        w = wedge_vector(lam, v, n, source.k)
        cols.append(_sparse(target.complement.coordinates_of_projection(w)))
    return LinearMap(source, target, cols)


def _sparse(coeffs):
    return {i: c for i, c in enumerate(coeffs) if c}


_WEDGE_TABLES = {}


def _wedge_table(n, k):
    """For each degree-k blade index: [(i, sign, target index)] for w^i ^ blade."""
    key = (n, k)
    tab = _WEDGE_TABLES.get(key)
    if tab is None:
        from .algebra import blade_product, colex_index

        tab = []
        for b in blades(n, k):
            row = []
            for i in range(1, n + 1):
                s, t = blade_product((i,), b)
                if s:
                    row.append((i - 1, s, colex_index(t)))
            tab.append(row)
        _WEDGE_TABLES[key] = tab
    return tab


def covector(lam):
    """Dense coefficient list of a 1-form."""
    if lam.k != 1:
        raise ValueError("expected a 1-form")
    return [lam.coefficient((i,)) for i in range(1, lam.n + 1)]


def lambda_wedge(lam, v, n, k):
    """lam ^ v for a covector given as a dense list and v a sparse vector in Lambda^k."""
    tab = _wedge_table(n, k)
    out = {}
    for b, c in v.items():
        for i, s, t in tab[b]:
            x = lam[i]
            if x:
                y = out.get(t, 0) + (c * x if s > 0 else -c * x)
                if y:
                    out[t] = y
                else:
                    del out[t]
    return out


class BasisSolver:
    """Coordinates with respect to a fixed, arbitrary basis of a subspace."""

    def __init__(self, basis):
        self.size = len(basis)
        self._ech = Echelon(track=True)
        for i, b in enumerate(basis):
            v = b.to_vector() if isinstance(b, Form) else b
            if self._ech.insert(v, {i: ONE}) is not None:
                raise ValueError(f"basis vector {i} is dependent on the previous ones")

    def __call__(self, x):
        v = x.to_vector() if isinstance(x, Form) else x
        rest, tag = self._ech.reduce(v, {})
        if rest:
            raise ValueError("vector is not in the span of the basis")
        return [-tag.get(i, Rational(0)) for i in range(self.size)]


def greedy_basis(forms, limit=None):
    """The forms that are independent of their predecessors, in order."""
    ech = Echelon()
    out = []
    for f in forms:
        if ech.insert(f.to_vector()) is None:
            out.append(f)
            if limit is not None and len(out) == limit:
                break
    return out
