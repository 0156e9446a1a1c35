"""Shared machinery for invariant decompositions of Lambda*(R^n).

A decomposition is a dict ``{(k, l): Subspace}`` of pairwise orthogonal
components, l being the dimension label.  Invariant subspaces are the
sums of same-degree components.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .algebra import Form, dim_exterior, hodge_star, wedge
from .linalg import Subspace, span
from .primeness import (
    CERTIFIED,
    certify_complex,
    dual_stages,
    evaluate_complex,
    prime_check_invariant,
    type1_stages,
    type2_stages,
    unit_covector,
)


class ConsistencyError(AssertionError):
    """Raised when constructed tables violate a structural invariant."""


def label(k, l):
    return f"L{k}_{l}"


def sum_label(parts):
    return "+".join(label(k, l) for k, l in parts)


def covectors(n):
    return [None] + [Form(n, 1, {(i,): 1}) for i in range(1, n + 1)]


def star_span(s):
    return span([hodge_star(f) for f in s.basis()], n=s.n, k=s.n - s.k)


def times_form(form, forms):
    return [wedge(form, f) for f in forms]


def direct_sum(parts):
    it = iter(parts)
    out = next(it)
    for p in it:
        out = out + p
    return out


class Decomposition:
    def __init__(self, n, components):
        self.n = n
        self.components = {key: s.labelled(label(*key)) for key, s in components.items()}

    def degree(self, k):
        return sorted((key for key in self.components if key[0] == k), key=lambda t: t[1])

    def __getitem__(self, key):
        return self.components[key]

    def sum(self, keys):
        keys = sorted(keys, key=lambda t: (t[0], t[1]))
        return direct_sum(self.components[k] for k in keys).labelled(sum_label(keys))

    def invariant_sums(self, k, include_full=True):
        """All nonzero sums of degree-k components, smallest first."""
        keys = self.degree(k)
        out = []
        for r in range(1, len(keys) + 1):
            if r == len(keys) and not include_full:
                continue
            for combo in combinations(keys, r):
                out.append((combo, self.sum(combo)))
        return out

    def check(self):
        """Orthogonality, dimension labels and completeness per degree."""
        for k in range(self.n + 1):
            keys = self.degree(k)
            if not keys:
                continue
            total = 0
            for key in keys:
                s = self.components[key]
                if s.dim != key[1]:
                    raise ConsistencyError(f"{label(*key)} has dimension {s.dim}")
                total += s.dim
            if total != dim_exterior(self.n, k):
                raise ConsistencyError(f"degree {k} components sum to {total}")
            for a, b in combinations(keys, 2):
                if (self.components[a] & self.components[b]).dim:
                    raise ConsistencyError(f"{label(*a)} meets {label(*b)}")
                ca = self.components[a].complement()
                if not ca.contains(self.components[b]):
                    raise ConsistencyError(f"{label(*a)} is not orthogonal to {label(*b)}")

    def identify(self, s):
        """Name s as a sum of components of its degree, or None."""
        for combo, t in self.invariant_sums(s.k):
            if t == s:
                return sum_label(combo)
        if s.dim == 0:
            return "0"
        return None

    def dims(self):
        return {k: [l for _, l in self.degree(k)] for k in range(self.n + 1)}


@dataclass
class Relation:
    name: str
    lhs: str
    rhs: str
    lhs_dim: int
    rhs_dim: int
    holds: bool

    def to_dict(self):
        return dict(self.__dict__)


def check_relation(name, lhs_space, rhs_space):
    from .linalg import product_space

    prod = product_space(lhs_space, 1)
    return Relation(name, lhs_space.label or "", rhs_space.label or "", prod.dim, rhs_space.dim, prod == rhs_space)


@dataclass
class ClassificationEntry:
    name: str
    degree: int
    dim: int
    status: str
    witness_ok: bool = None
    witness: tuple = None

    def to_dict(self):
        from .serialize import form_to_json

        d = {"name": self.name, "degree": self.degree, "dim": self.dim, "status": self.status}
        if self.witness:
            d["witness"] = {"alpha": form_to_json(self.witness[0]), "lambda": form_to_json(self.witness[1])}
            d["witness_verified"] = self.witness_ok
        return d


def classify_primes(dec, degrees):
    lam = unit_covector(dec.n)
    out = []
    for k in degrees:
        for combo, s in dec.invariant_sums(k):
            v = prime_check_invariant(s, lam, transitive=True)
            entry = ClassificationEntry(sum_label(combo), k, s.dim, v.status)
            if v.witness:
                entry.witness = v.witness
                entry.witness_ok = v.check_witness()
            out.append(entry)
    return out


@dataclass
class ScanResult:
    type1: list = field(default_factory=list)
    type2: list = field(default_factory=list)
    dual_agrees: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "type1_generators": self.type1,
            "type2_pairs": [list(p) for p in self.type2],
            "dual_agrees": self.dual_agrees,
        }


def scan_complete_prime(dec, degrees):
    """Evaluate every type-1 generator and type-2 pair at w^1.

    Generators range over nonzero proper component sums of degree k in
    ``degrees``; F ranges over all nonzero sums one degree lower.
    """
    lam = unit_covector(dec.n)
    res = ScanResult()
    for k in degrees:
        for combo, e in dec.invariant_sums(k, include_full=False):
            name = sum_label(combo)
            st1 = type1_stages(e)
            r1 = evaluate_complex(st1, lam, "type1", name)
            rd = evaluate_complex(dual_stages(e), lam, "dual", name)
            res.dual_agrees[name] = r1.verdict == rd.verdict
            if r1.verdict:
                res.type1.append(name)
            for fcombo, f in dec.invariant_sums(k - 1):
                r2 = evaluate_complex(type2_stages(f, e), lam, "type2")
                if r2.verdict:
                    res.type2.append((sum_label(fcombo), name))
    return res


def certify_named(kind, stages, n, samples, seed, generator):
    return certify_complex(kind, stages, n, samples, seed, transitive=True, generator=generator)


def stage_names(dec, stages):
    """Identify each quotient stage S/D by the component sum equal to D^perp."""
    names = []
    for s in stages:
        if s.divisor.dim == 0 and s.space.is_full():
            names.append(f"L{s.degree}")
        elif s.divisor.dim == 0:
            names.append(dec.identify(s.space) or s.space.label or "?")
        else:
            names.append(dec.identify(s.divisor.complement()) or "?")
    return names


def prime_set(entries):
    return sorted(e.name for e in entries if e.status == CERTIFIED)
