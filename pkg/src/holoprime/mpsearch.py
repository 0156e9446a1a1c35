"""Lower bounds for the maximal dimension MP(n) of a prime subspace of 2-forms.

A subspace E of Lambda^2(R^n) is prime when it contains no nonzero
decomposable form.  Prime subspaces grow one dimension of R at a time:
with e the new covector, E + <lambda_i ^ e + alpha_i> stays prime in
Lambda^2(R^(n+1)) as soon as the covectors lambda_i are independent and
the alpha_i are independent modulo the obstruction space
E + <lambda_1..lambda_s> ^ Lambda^1(R^n).

Proof sketch: write x = mu ^ e + gamma.  If mu = 0 then x lies in E.
Otherwise x ^ x = 0 forces mu ^ gamma = 0, so gamma = mu ^ nu, which puts
sum c_i alpha_i in the obstruction space.
"""

import random
from dataclasses import dataclass, field

from .algebra import Form, Rational, embed, wedge
from .linalg import Echelon, Subspace, span
from .operators import rank_two_form, two_form_from_matrix
from .primeness import numeric_prime_certificate
from .serialize import FormatError, form_from_json, form_to_json, subspace_from_json, subspace_to_json

BASELINES = ("su-embedding", "anti-self-dual")


def _nonzero_covector(lam):
    if lam.k != 1 or not lam:
        raise ValueError("lambda must be a nonzero 1-form")


def _wedge_lambda_space(lams, n):
    return span([wedge(lam, Form(n, 1, {(i,): 1})) for lam in lams for i in range(1, n + 1)], n=n, k=2)


def l_lambda(e, lam):
    """L(lambda) = E + lambda ^ Lambda^1(R^n)."""
    _nonzero_covector(lam)
    return e + _wedge_lambda_space([lam], e.n)


def obstruction_space(e, lams):
    """E + <lambda_1..lambda_s> ^ Lambda^1(R^n)."""
    for lam in lams:
        _nonzero_covector(lam)
    return e + _wedge_lambda_space(lams, e.n)


@dataclass
class ExtensionStep:
    base: Subspace
    lambdas: list
    alphas: list
    result: Subspace

    @property
    def n(self):
        return self.base.n

    @property
    def s(self):
        return len(self.lambdas)

    def to_dict(self):
        return {
            "op": "extend",
            "n_from": self.n,
            "s": self.s,
            "lambdas": [form_to_json(f) for f in self.lambdas],
            "alphas": [form_to_json(f) for f in self.alphas],
            "dimension": self.result.dim,
        }


def _independent(forms):
    return len(Echelon(f.to_vector() for f in forms)) == len(forms)


def extension_side_condition(e, lams, alphas):
    """Exact check of the hypotheses; returns (ok, reason)."""
    if len(lams) != len(alphas):
        return False, "one attachment form is needed per covector"
    if not _independent(lams):
        return False, "covectors are linearly dependent"
    obstruction = obstruction_space(e, lams)
    ech = obstruction.echelon()
    for a in alphas:
        if a.k != 2 or a.n != e.n:
            return False, "attachment forms must be 2-forms on the base space"
        if ech.insert(a.to_vector()) is not None:
            return False, "attachment forms are dependent modulo E + span(lambdas) ^ L1"
    return True, "ok"


def _attach(e, lams, alphas):
    n1 = e.n + 1
    new = Form(n1, 1, {(n1,): 1})
    vecs = [embed(b, n1) for b in e.basis()]
    vecs += [wedge(embed(lam, n1), new) + embed(a, n1) for lam, a in zip(lams, alphas)]
    return span(vecs, n=n1, k=2)


def extend_one(e, lam, alpha):
    """E + <lambda ^ e + alpha> when alpha lies outside L(lambda), else None."""
    _nonzero_covector(lam)
    if alpha in l_lambda(e, lam):
        return None
    return ExtensionStep(e, [lam], [alpha], _attach(e, [lam], [alpha]))


def extend_multi(e, lams, alphas):
    """Attach s covectors at once; ``alphas`` holds one 2-form per covector.

    A single shared form is accepted only for s = 1: with s >= 2 the
    result would contain (lambda_1 - lambda_2) ^ e, which is decomposable.
    """
    lams = list(lams)
    if isinstance(alphas, Form):
        if len(lams) != 1:
            raise ValueError("a shared attachment form makes (l_i - l_j) ^ e decomposable; pass one per covector")
        alphas = [alphas]
    alphas = list(alphas)
    for lam in lams:
        _nonzero_covector(lam)
    if not _independent(lams):
        raise ValueError("covectors must be linearly independent")
    ok, _ = extension_side_condition(e, lams, alphas)
    if not ok:
        return None
    return ExtensionStep(e, lams, alphas, _attach(e, lams, alphas))


def su_embedding_basis(m):
    """Standard su(m) basis pushed through a + ib -> [[a, -b], [b, a]] into 2-forms on R^(2m)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    size = 2 * m
    out = []

    def block(a, b):
        g = [[Rational(0)] * size for _ in range(size)]
        for i in range(m):
            for j in range(m):
                g[i][j] = a[i][j]
                g[i + m][j + m] = a[i][j]
                g[i][j + m] = -b[i][j]
                g[i + m][j] = b[i][j]
        return two_form_from_matrix(g)

    zero = [[Rational(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            a = [row[:] for row in zero]
            a[i][j], a[j][i] = Rational(1), Rational(-1)
            out.append(block(a, zero))
            b = [row[:] for row in zero]
            b[i][j] = b[j][i] = Rational(1)
            out.append(block(zero, b))
    for i in range(m - 1):
        b = [row[:] for row in zero]
        b[i][i], b[i + 1][i + 1] = Rational(1), Rational(-1)
        out.append(block(zero, b))
    return out


def su_embedding_space(m):
    return span(su_embedding_basis(m), n=2 * m, k=2).labelled(f"su({m})")


def anti_self_dual_r4():
    return span([
        Form(4, 2, {(1, 2): 1, (3, 4): -1}),
        Form(4, 2, {(1, 3): 1, (2, 4): 1}),
        Form(4, 2, {(1, 4): 1, (2, 3): -1}),
    ]).labelled("L-(R4)")


def su_rank_sampling(m, draws, seed, bound=9):
    """Count nonzero random integer elements of su(m) whose 2-form rank is below 2."""
    basis = su_embedding_basis(m)
    rng = random.Random(seed)
    low = 0
    done = 0
    while done < draws:
        c = [rng.randint(-bound, bound) for _ in basis]
        if not any(c):
            continue
        f = sum((b * x for b, x in zip(basis, c) if x), Form.zero(2 * m, 2))
        done += 1
        if rank_two_form(f) < 2:
            low += 1
    return low


def _baseline(op, n):
    if op == "anti-self-dual":
        return anti_self_dual_r4()
    if op == "su-embedding":
        return su_embedding_space(n // 2)
    raise FormatError(f"unknown baseline {op!r}")


def _standard_covectors(n, s):
    return [Form(n, 1, {(i,): 1}) for i in range(1, s + 1)]


def _complement_forms(space, count):
    comp = space.complement()
    return comp.basis()[:count]


def _greedy_step(e):
    """Largest s for which standard covectors and complement forms satisfy the side condition."""
    n = e.n
    best = ExtensionStep(e, [], [], _attach(e, [], []))
    for s in range(1, n + 1):
        lams = _standard_covectors(n, s)
        obstruction = obstruction_space(e, lams)
        if obstruction.ambient_dim - obstruction.dim < s:
            break
        alphas = _complement_forms(obstruction, s)
        best = ExtensionStep(e, lams, alphas, _attach(e, lams, alphas))
    return best


def _random_step(e, rng, bound=3):
    n = e.n
    best = ExtensionStep(e, [], [], _attach(e, [], []))
    for s in range(1, n + 1):
        lams = []
        while len(lams) < s:
            lam = Form(n, 1, {(i,): rng.randint(-bound, bound) for i in range(1, n + 1)})
            if lam and _independent(lams + [lam]):
                lams.append(lam)
        obstruction = obstruction_space(e, lams)
        comp = obstruction.complement().basis()
        if len(comp) < s:
            break
        alphas = []
        ech = obstruction.echelon()
        while len(alphas) < s:
            a = sum((b * rng.randint(-bound, bound) for b in comp), Form.zero(n, 2))
            if a and ech.insert(a.to_vector()) is None:
                alphas.append(a)
        best = ExtensionStep(e, lams, alphas, _attach(e, lams, alphas))
    return best


@dataclass
class MpCertificate:
    n: int
    dimension: int
    strategy: str
    seed: int
    budget: int
    trace: list
    space: Subspace
    evidence: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "n": self.n,
            "dimension": self.dimension,
            "target": (self.n // 2) ** 2 - 1,
            "strategy": self.strategy,
            "seed": self.seed,
            "budget": self.budget,
            "trace": self.trace,
            "basis": subspace_to_json(self.space),
            "evidence": self.evidence,
        }


def _chain(start_op, start_n, n, step_fn):
    e = _baseline(start_op, start_n)
    trace = [{"op": start_op, "n": start_n, "dimension": e.dim}]
    while e.n < n:
        st = step_fn(e)
        trace.append(st.to_dict())
        e = st.result
    return e, trace


def mp_lower_bound_search(n, strategy="greedy", budget=8, seed=0, numeric=True):
    """Best certified prime subspace of Lambda^2(R^n) over baselines and extension chains."""
    if n < 4:
        raise ValueError("n must be at least 4")
    if strategy not in ("greedy", "randomized"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if budget < 1:
        raise ValueError("budget must be positive")
    starts = [("anti-self-dual", 4)] + [("su-embedding", 2 * m) for m in range(2, n // 2 + 1)]
    candidates = []
    for op, n0 in starts:
        candidates.append(_chain(op, n0, n, _greedy_step))
    if strategy == "randomized":
        rng = random.Random(seed)
        for _ in range(budget):
            op, n0 = starts[rng.randrange(len(starts))]
            candidates.append(_chain(op, n0, n, lambda e: _random_step(e, rng)))
    best_space, best_trace = max(candidates, key=lambda c: c[0].dim)
    cert = MpCertificate(n, best_space.dim, strategy, seed, budget, best_trace, best_space)
    cert.evidence = {
        "steps": "each step satisfies the extension side condition exactly (replayable)",
    }
    if numeric:
        num = numeric_prime_certificate(best_space, restarts=3, tolerance=1e-6, seed=seed, steps=60)
        cert.evidence["numeric"] = {
            "status": num["status"],
            "minimum": round(float(num["minimum"]), 6),
            "below_tolerance": bool(num["below_tolerance"]),
        }
    return cert


class ReplayError(Exception):
    """A certificate step failed exact re-verification."""


def replay_certificate(data):
    """Rebuild the certified space from its trace, re-checking every side condition exactly."""
    try:
        trace = data["trace"]
        n = int(data["n"])
        claimed = subspace_from_json(data["basis"])
        dimension = int(data["dimension"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed certificate: {exc}") from exc
    if not trace:
        raise FormatError("empty trace")
    first = trace[0]
    if first.get("op") not in BASELINES:
        raise ReplayError(f"trace must start from a baseline, got {first.get('op')!r}")
    e = _baseline(first["op"], int(first["n"]))
    if e.n != int(first["n"]):
        raise ReplayError("baseline dimension mismatch")
    log = [f"{first['op']} on R^{e.n}: dimension {e.dim}"]
    for i, step in enumerate(trace[1:], 1):
        if step.get("op") != "extend":
            raise ReplayError(f"step {i}: unknown op {step.get('op')!r}")
        if int(step["n_from"]) != e.n:
            raise ReplayError(f"step {i}: starts from R^{step['n_from']} but the chain is at R^{e.n}")
        lams = [form_from_json(f) for f in step["lambdas"]]
        alphas = [form_from_json(f) for f in step["alphas"]]
        ok, reason = extension_side_condition(e, lams, alphas)
        if not ok:
            raise ReplayError(f"step {i}: {reason}")
        e = _attach(e, lams, alphas)
        if e.dim != int(step["dimension"]):
            raise ReplayError(f"step {i}: dimension {e.dim}, certificate says {step['dimension']}")
        log.append(f"extend R^{e.n - 1} -> R^{e.n} with s = {len(lams)}: dimension {e.dim}")
    if e.n != n:
        raise ReplayError(f"trace ends in R^{e.n}, certificate is for R^{n}")
    if e != claimed:
        raise ReplayError("rebuilt space differs from the certified basis")
    if e.dim != dimension:
        raise ReplayError(f"dimension {e.dim}, certificate says {dimension}")
    return log


def mp_suite(ns=range(4, 11), draws=1000, seed=0, strategy="greedy", budget=8):
    from .report import SuiteReport

    rep = SuiteReport("mp", seed, draws)
    for n in ns:
        cert = mp_lower_bound_search(n, strategy, budget, seed, numeric=False)
        target = (n // 2) ** 2 - 1
        try:
            replay_certificate(cert.to_dict())
            replayed = True
        except (ReplayError, FormatError):
            replayed = False
        rep.add(f"mp.n{n}", f"a certified prime subspace of L2(R^{n}) has dimension >= {target}",
                cert.dimension >= target and replayed, dimension=cert.dimension, target=target,
                trace=[t["op"] for t in cert.trace])
    for m in range(2, 6):
        low = su_rank_sampling(m, draws, seed + m)
        rep.add(f"mp.su{m}", f"no element of su({m}) among {draws} draws has 2-form rank below 2",
                low == 0, low_rank=low)
    return rep


__all__ = [
    "ExtensionStep",
    "MpCertificate",
    "ReplayError",
    "extend_multi",
    "extend_one",
    "extension_side_condition",
    "l_lambda",
    "mp_lower_bound_search",
    "obstruction_space",
    "replay_certificate",
    "su_embedding_space",
    "su_rank_sampling",
]

