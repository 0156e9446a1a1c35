"""Prime and complete prime certification via symbol-complex exactness."""

import random
from dataclasses import dataclass, field
from math import comb, gcd

import numpy as np

from .algebra import Rational, Form, dim_exterior
from .linalg import Echelon, Subspace, covector, lambda_wedge, product_chain
from .operators import mult_map

CERTIFIED = "certified_prime"
NOT_PRIME = "not_prime"
EVIDENCE = "evidence_only"

LAMBDA_RANGE = 9


@dataclass
class PrimeVerdict:
    status: str
    mode: str
    witness: tuple = None
    evidence: float = None
    transitive: bool = None
    lam: Form = None

    @property
    def is_prime(self):
        return self.status == CERTIFIED

    def check_witness(self):
        """Re-verify a non-prime witness with one wedge evaluation."""
        from .algebra import wedge

        alpha, lam = self.witness
        return bool(alpha) and bool(lam) and not wedge(alpha, lam)


def normalize(form):
    """Scale to integer coefficients with content 1 and a positive leading term."""
    if not form:
        return form
    items = form.items()
    den = 1
    for _, c in items:
        den = den * c.denominator // gcd(den, c.denominator)
    nums = [int(c * den) for _, c in items]
    g = 0
    for x in nums:
        g = gcd(g, x)
    s = Rational(den, g) * (1 if nums[0] > 0 else -1)
    return form * s


def unit_covector(n, i=1):
    return Form(n, 1, {(i,): 1})


def is_prime_form(alpha):
    """alpha is prime iff lambda -> alpha ^ lambda is injective on Lambda^1."""
    n = alpha.n
    if alpha.k + 1 > n:
        return PrimeVerdict(NOT_PRIME, "single_form_kernel", (alpha, unit_covector(n)) if alpha else None)
    ker = mult_map(alpha, 1).kernel_vectors()
    if not ker:
        return PrimeVerdict(CERTIFIED, "single_form_kernel")
    lam = normalize(Form.from_vector(n, 1, ker[0]))
    return PrimeVerdict(NOT_PRIME, "single_form_kernel", (alpha, lam))


def _restricted_kernel(vectors, lam_vec, n, k):
    """Kernel of x -> lam ^ x on span(vectors), as coefficient dicts."""
    ech = Echelon(track=True)
    out = []
    for j, v in enumerate(vectors):
        res = ech.insert(lambda_wedge(lam_vec, v, n, k), {j: Rational(1)})
        if res is not None:
            out.append(res)
    return out


def prime_check_invariant(e, lam, transitive):
    """Single-covector primeness test for an invariant subspace.

    Injectivity of lam ^ on E is the exactness of
    L^(k-2) -> L^(k-1) -> L^k / E at the middle term.  With a group acting
    transitively on the sphere this one covector decides primeness.
    """
    if lam.k != 1 or not lam:
        raise ValueError("lambda must be a nonzero 1-form")
    n, k = e.n, e.k
    vecs = e.vectors
    ker = _restricted_kernel(vecs, covector(lam), n, k)
    if ker:
        t = ker[0]
        acc = {}
        for j, c in t.items():
            for col, x in vecs[j].items():
                acc[col] = acc.get(col, 0) + c * x
        alpha = normalize(Form.from_vector(n, k, {c: x for c, x in acc.items() if x}))
        return PrimeVerdict(NOT_PRIME, "invariant_lambda", (alpha, lam), transitive=transitive, lam=lam)
    if transitive:
        return PrimeVerdict(CERTIFIED, "invariant_lambda", transitive=True, lam=lam)
    return PrimeVerdict(EVIDENCE, "invariant_lambda", transitive=False, lam=lam)


def _combine(basis, coeffs):
    out = None
    for c, b in zip(coeffs, basis):
        if c:
            out = b * c if out is None else out + b * c
    return out


def nonprime_witness_search(e, trials, seed):
    """Look for a non-prime element of E; None proves nothing.

    Scans basis vectors, then pairwise sums and differences, then seeded
    random integer combinations.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    basis = e.basis()
    rng = random.Random(seed)

    def candidates():
        for b in basis:
            yield b
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                yield basis[i] + basis[j]
                yield basis[i] - basis[j]
        for _ in range(trials):
            c = [rng.randint(-LAMBDA_RANGE, LAMBDA_RANGE) for _ in basis]
            f = _combine(basis, c)
            if f:
                yield f

    for alpha in candidates():
        v = is_prime_form(alpha)
        if v.status == NOT_PRIME:
            return v.witness
    return None


def numeric_prime_certificate(e, restarts, tolerance, seed, steps=200):
    """Multi-start descent for min over unit alpha in E of sigma_min(alpha ^ .).

    Returns a dict with the minimum, per-restart traces and an
    ``evidence_only`` status; a positive floor is never a proof.
    """
    if restarts < 1 or tolerance <= 0:
        raise ValueError("need restarts >= 1 and tolerance > 0")
    if e.dim == 0:
        return {"status": EVIDENCE, "minimum": None, "below_tolerance": False, "restarts": []}
    dense = np.array([[float(r.get(i, 0)) for i in range(e.ambient_dim)] for r in e.vectors])
    q, _ = np.linalg.qr(dense.T)
    onb = q.T
    mats = []
    for row in onb:
        f = Form.from_vector(e.n, e.k, {i: Rational(x) for i, x in enumerate(row) if abs(x) > 0})
        m = mult_map(f, 1).dense()
        mats.append(np.array(m, dtype=float))
    mats = np.array(mats)
    rng = np.random.default_rng(seed)

    def smin(c):
        m = np.tensordot(c, mats, axes=1)
        u, s, vt = np.linalg.svd(m)
        return s[-1], u[:, len(s) - 1], vt[-1]

    runs = []
    for _ in range(restarts):
        c = rng.standard_normal(len(mats))
        c /= np.linalg.norm(c)
        val, u, v = smin(c)
        step = 0.5
        trace = [float(val)]
        for _ in range(steps):
            grad = np.einsum("i,kij,j->k", u, mats, v)
            grad -= grad.dot(c) * c
            improved = False
            while step > 1e-12:
                trial = c - step * grad
                trial /= np.linalg.norm(trial)
                tval, tu, tv = smin(trial)
                if tval < val:
                    c, val, u, v = trial, tval, tu, tv
                    step *= 1.5
                    improved = True
                    break
                step *= 0.5
            trace.append(float(val))
            if not improved:
                break
        runs.append(trace)
    minimum = min(r[-1] for r in runs)
    return {
        "status": EVIDENCE,
        "minimum": minimum,
        "below_tolerance": minimum < tolerance,
        "restarts": runs,
    }


@dataclass
class Stage:
    """A stage S / D of a symbol complex, with D inside S."""

    label: str
    degree: int
    space: Subspace
    divisor: Subspace

    @property
    def dim(self):
        return self.space.dim - self.divisor.dim


@dataclass
class SymbolComplexReport:
    kind: str
    lam: Form
    stages: list
    ranks: list
    exact_at: list
    euler_characteristic: int
    verdict: bool
    generator: str = ""
    notes: list = field(default_factory=list)

    @property
    def rank_vector(self):
        return tuple(self.ranks)

    def failing_positions(self):
        return [i for i, ok in enumerate(self.exact_at) if not ok]

    def to_dict(self):
        from .serialize import form_to_json

        return {
            "kind": self.kind,
            "generator": self.generator,
            "lambda": form_to_json(self.lam),
            "stages": [
                {"label": s.label, "degree": s.degree, "dim": s.dim, "rank_out": r}
                for s, r in zip(self.stages, self.ranks)
            ],
            "exact_at": self.exact_at,
            "euler_characteristic": self.euler_characteristic,
            "exact": self.verdict,
        }


def _stage_label(j, div):
    if div.dim == 0:
        return f"L{j}"
    if div.label:
        return f"L{j}/{div.label}"
    return f"L{j}/E(dim {div.dim})"


def _map_rank(lam_vec, a, b):
    """Rank of the map induced by lam ^ from stage a to stage b."""
    n = a.space.n
    ech = b.divisor.echelon()
    base = len(ech)
    full = b.divisor.ambient_dim
    for v in a.space.vectors:
        if len(ech) == full:
            break
        ech.insert(lambda_wedge(lam_vec, v, n, a.degree))
    return len(ech) - base


def evaluate_complex(stages, lam, kind, generator=""):
    if lam.k != 1 or not lam:
        raise ValueError("lambda must be a nonzero 1-form")
    lam_vec = covector(lam)
    ranks = [_map_rank(lam_vec, stages[i], stages[i + 1]) for i in range(len(stages) - 1)] + [0]
    exact = []
    for i, s in enumerate(stages):
        rin = ranks[i - 1] if i else 0
        exact.append(rin == s.dim - ranks[i])
    euler = sum((-1) ** i * s.dim for i, s in enumerate(stages))
    return SymbolComplexReport(kind, lam, stages, ranks, exact, euler, all(exact), generator)


def _full(n, j):
    return Subspace.full(n, j)


def _zero(n, j):
    return Subspace.zero(n, j)


def type1_stages(e):
    n, k = e.n, e.k
    chain = product_chain(e)
    stages = [Stage(f"L{j}", j, _full(n, j), _zero(n, j)) for j in range(k)]
    for i, ei in enumerate(chain):
        if ei.is_full():
            break
        stages.append(Stage(_stage_label(k + i, ei), k + i, _full(n, k + i), ei))
    return stages


def type2_stages(f, e):
    if f.k + 1 != e.k or f.n != e.n:
        raise ValueError("F must sit one degree below E in the same ambient space")
    n = e.n
    stages = [Stage(f.label or f"F(dim {f.dim})", f.k, f, _zero(n, f.k))]
    for i, ei in enumerate(product_chain(e)):
        if ei.is_full():
            break
        stages.append(Stage(_stage_label(e.k + i, ei), e.k + i, _full(n, e.k + i), ei))
    return stages


def dual_stages(e):
    n = e.n
    chain = product_chain(e)
    stages = []
    for ei in chain:
        if ei.is_full():
            break
        stages.append(Stage(ei.label or f"E{ei.k}(dim {ei.dim})", ei.k, ei, _zero(n, ei.k)))
    for j in range(e.k + len(stages), n + 1):
        stages.append(Stage(f"L{j}", j, _full(n, j), _zero(n, j)))
    return stages


def build_type1_symbol_complex(e, lam, stages=None):
    if e.dim == 0:
        raise ValueError("generator must be nonzero")
    return evaluate_complex(stages or type1_stages(e), lam, "type1", e.label or "")


def build_type2_symbol_complex(f, e, lam, stages=None):
    if e.dim == 0:
        raise ValueError("generator must be nonzero")
    gen = f"({f.label or 'F'}, {e.label or 'E'})"
    return evaluate_complex(stages or type2_stages(f, e), lam, "type2", gen)


def build_dual_symbol_complex(e, lam, stages=None):
    if e.dim == 0:
        raise ValueError("generator must be nonzero")
    return evaluate_complex(stages or dual_stages(e), lam, "dual", e.label or "")


def alternating_binomial(n, k):
    return sum((-1) ** (k + i) * comb(n, i) for i in range(k + 1))


def euler_rank_condition(e, lam=None, transitive=True):
    """Ellipticity test for the complex truncated at Lambda^k -> E^perp."""
    if e.dim != alternating_binomial(e.n, e.k):
        return False
    lam = lam or unit_covector(e.n)
    return prime_check_invariant(e, lam, transitive).status == CERTIFIED


def lambda_sampler(n, count, seed):
    """Seeded integer covectors with entries in [-9, 9], never zero."""
    if count < 1:
        raise ValueError("count must be positive")
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        c = [rng.randint(-LAMBDA_RANGE, LAMBDA_RANGE) for _ in range(n)]
        if any(c):
            out.append(Form(n, 1, {(i + 1,): x for i, x in enumerate(c)}))
    return out


@dataclass
class ComplexCertificate:
    """Exactness of one complex at a canonical covector plus generic samples."""

    reference: SymbolComplexReport
    samples: int
    seed: int
    sample_exact: int
    rank_vectors: list
    transitive: bool

    @property
    def certified(self):
        return self.transitive and self.reference.verdict

    @property
    def all_exact(self):
        return self.reference.verdict and self.sample_exact == self.samples

    @property
    def status(self):
        if not self.reference.verdict:
            return "not_exact"
        if self.certified:
            return "certified"
        return f"generic-lambda evidence ({self.samples} samples)"

    def to_dict(self):
        d = self.reference.to_dict()
        d.update(
            status=self.status,
            samples=self.samples,
            seed=self.seed,
            sample_exact=self.sample_exact,
            distinct_rank_vectors=sorted({tuple(r) for r in self.rank_vectors}),
        )
        return d


def certify_complex(kind, stages, n, samples, seed, transitive=True, generator=""):
    """Evaluate a complex at w^1 and at seeded random covectors."""
    ref = evaluate_complex(stages, unit_covector(n), kind, generator)
    ranks = []
    ok = 0
    for lam in (lambda_sampler(n, samples, seed) if samples else []):
        rep = evaluate_complex(stages, lam, kind, generator)
        ranks.append(rep.ranks)
        ok += rep.verdict
    return ComplexCertificate(ref, samples, seed, ok, ranks, transitive)
