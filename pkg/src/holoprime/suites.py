"""Verification suites that are not tied to a holonomy group, plus the suite registry."""

import random

from .algebra import Form, blades, hodge_star, wedge
from .linalg import Subspace, product_space, span
from .primeness import Stage, certify_complex, evaluate_complex, lambda_sampler, type1_stages
from .report import SuiteReport

SUITES = ("g2", "spin7", "r5", "koszul")


def r5_spaces():
    """Lambda^+(W) and Lambda^-(W) for W = <w1>^perp inside R^5."""
    basis4 = [Form(4, 2, {b: 1}) for b in blades(4, 2)]
    out = {}
    for sign, name in ((1, "L+(W)"), (-1, "L-(W)")):
        forms = [b + sign * hodge_star(b) for b in basis4]
        lifted = [Form(5, 2, {tuple(i + 1 for i in bl): c for bl, c in f.terms.items()}) for f in forms]
        out[name] = span(lifted, n=5, k=2).labelled(name)
    return out


def quadratic_form_on(e):
    """Matrix of alpha -> (alpha ^ alpha restricted to the top degree of its support) in the basis of E.

    For E inside Lambda^2 of the 4-space W the square lands in the line
    spanned by w2345, so the coefficient there is a quadratic form on E.
    """
    basis = e.basis()
    top = tuple(range(2, 6))
    return [[wedge(a, b).coefficient(top) for b in basis] for a in basis]


def _is_definite(m):
    """Sylvester: all leading minors positive, or alternating signs starting negative."""
    size = len(m)
    minors = []
    for r in range(1, size + 1):
        minors.append(_det([row[:r] for row in m[:r]]))
    pos = all(x > 0 for x in minors)
    neg = all((x < 0) if i % 2 == 0 else (x > 0) for i, x in enumerate(minors))
    return pos or neg


def _det(m):
    from .algebra import ONE

    a = [list(r) for r in m]
    size = len(a)
    det = ONE
    for c in range(size):
        p = next((r for r in range(c, size) if a[r][c]), None)
        if p is None:
            return 0 * ONE
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = ONE / a[c][c]
        for r in range(c + 1, size):
            if a[r][c]:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def r5_suite(samples=100, seed=0):
    rep = SuiteReport("r5", seed, samples)
    for name, e in r5_spaces().items():
        e1 = product_space(e, 1)
        rep.add(f"r5.dim {name}", f"dim {name}.L1 = 7 inside L3(R^5)", e1.dim == 7, dim=e1.dim)
        q = quadratic_form_on(e)
        rep.add(f"r5.prime {name}", f"alpha ^ alpha is a definite quadratic form on {name}, so it is prime",
                _is_definite(q))
        stages = type1_stages(e)
        euler = sum((-1) ** i * s.dim for i, s in enumerate(stages))
        rep.add(f"r5.euler {name}", "alternating sum of stage dimensions vanishes",
                euler == 0 and [s.degree for s in stages] == [0, 1, 2, 3], euler=euler)
        cert = certify_complex("type1", stages, 5, samples, seed, transitive=False, generator=name)
        rep.add(f"r5.complex {name}", f"L0 -> L1 -> L2/{name} -> L3/{name}.L1 is exact at w1 and {samples} random covectors",
                cert.all_exact, certificate=cert.to_dict())
    return rep


def koszul_stages(n):
    return [Stage(f"L{j}", j, Subspace.full(n, j), Subspace.zero(n, j)) for j in range(n + 1)]


def koszul_suite(samples=200, seed=0):
    """Random (n, lambda) draws: the full exterior complex under lambda ^ is exact."""
    rep = SuiteReport("koszul", seed, samples)
    rng = random.Random(seed)
    bad = []
    for t in range(samples):
        n = rng.randint(2, 8)
        lam = lambda_sampler(n, 1, rng.randrange(1 << 30))[0]
        r = evaluate_complex(koszul_stages(n), lam, "koszul")
        if not r.verdict:
            bad.append({"draw": t, "n": n})
    rep.add("koszul.exact", f"the Koszul complex is exact for {samples} seeded (n, lambda) draws",
            not bad, failures=bad)
    return rep


def run_suite(name, samples=100, seed=0):
    """Reports for one suite name or ``all``."""
    from .g2 import g2_suite
    from .spin7 import spin7_suite

    table = {
        "g2": lambda: g2_suite(samples, seed),
        "spin7": lambda: spin7_suite(samples, seed),
        "r5": lambda: r5_suite(samples, seed),
        "koszul": lambda: koszul_suite(max(samples, 1), seed),
    }
    if name == "all":
        return [table[s]() for s in SUITES]
    if name not in table:
        raise KeyError(name)
    return [table[name]()]
