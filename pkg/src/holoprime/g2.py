"""The G2 world on R^7: the calibration 3-form, its invariant pieces and checks."""

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Form, Rational, hodge_star, inner_product, wedge
from .holonomy import (
    ConsistencyError,
    Decomposition,
    certify_named,
    check_relation,
    classify_primes,
    covectors,
    prime_set,
    scan_complete_prime,
    stage_names,
    star_span,
)
from .linalg import Subspace, span
from .primeness import type1_stages, type2_stages
from .report import SuiteReport
from .serialize import form_to_json

N = 7

PHI_TERMS = {
    (1, 2, 3): 1, (1, 4, 5): 1, (1, 6, 7): 1, (2, 4, 6): 1,
    (2, 5, 7): -1, (3, 4, 7): -1, (3, 5, 6): -1,
}

EXPECTED_PRIMES = sorted(["L2_7", "L2_14", "L3_1", "L3_7", "L3_1+L3_7", "L4_1"])
EXPECTED_TYPE1 = sorted(["L2_14", "L4_1"])
EXPECTED_TYPE2 = sorted([("L2_7", "L3_27"), ("L3_1+L3_7", "L4_27")])


def phi_form(n=N, offset=0):
    return Form(n, 3, {tuple(i + offset for i in b): c for b, c in PHI_TERMS.items()})


@dataclass
class G2Tables:
    phi: Form
    psi: Form
    dec: Decomposition
    e2: list
    e3: list
    e4: list
    e5: list

    def __getitem__(self, key):
        return self.dec[key]

    def e(self, k, i):
        """Named basis element e_i^k, 1-based."""
        return {2: self.e2, 3: self.e3, 4: self.e4, 5: self.e5}[k][i - 1]


@lru_cache(maxsize=1)
def g2_build_tables():
    phi = phi_form()
    psi = hodge_star(phi)
    w = covectors(N)
    e2 = [hodge_star(wedge(psi, w[i])) for i in range(1, N + 1)]
    e3 = [hodge_star(wedge(phi, w[i])) for i in range(1, N + 1)]
    e4 = [wedge(phi, w[i]) for i in range(1, N + 1)]
    e5 = [wedge(psi, w[i]) for i in range(1, N + 1)]
    c = {
        (0, 1): Subspace.full(N, 0),
        (1, 7): Subspace.full(N, 1),
        (2, 7): span(e2),
        (3, 1): span([phi]),
        (3, 7): span(e3),
        (4, 1): span([psi]),
        (4, 7): span(e4),
        (5, 7): span(e5),
        (6, 7): Subspace.full(N, 6),
        (7, 1): Subspace.full(N, 7),
    }
    c[(2, 14)] = c[(2, 7)].complement()
    c[(3, 27)] = (c[(3, 1)] + c[(3, 7)]).complement()
    c[(4, 27)] = (c[(4, 1)] + c[(4, 7)]).complement()
    c[(5, 14)] = c[(5, 7)].complement()
    dec = Decomposition(N, c)
    dec.check()
    for (k, l), s in dec.components.items():
        if star_span(s) != dec[(N - k, l)]:
            raise ConsistencyError(f"star does not carry L{k}_{l} onto L{N - k}_{l}")
    return G2Tables(phi, psi, dec, e2, e3, e4, e5)


def g2_relations(t=None):
    t = t or g2_build_tables()
    d = t.dec
    full = {k: Subspace.full(N, k).labelled(f"L{k}") for k in range(N + 1)}
    return [
        check_relation("L2_7.L1 = L3", d[(2, 7)], full[3]),
        check_relation("L2_14.L1 = L3_7+L3_27", d[(2, 14)], d.sum([(3, 7), (3, 27)])),
        check_relation("L3_7.L1 = L4", d[(3, 7)], full[4]),
        check_relation("L3_27.L1 = L4_7+L4_27", d[(3, 27)], d.sum([(4, 7), (4, 27)])),
        check_relation("L4_7.L1 = L5", d[(4, 7)], full[5]),
        check_relation("L4_27.L1 = L5", d[(4, 27)], full[5]),
        check_relation("L5_7.L1 = L6", d[(5, 7)], full[6]),
        check_relation("L5_14.L1 = L6", d[(5, 14)], full[6]),
    ]


def g2_verify_relations():
    t = g2_build_tables()
    rels = g2_relations(t)
    rels.append(check_relation("L3_1.L1 = L4_7", t[(3, 1)], t[(4, 7)]))
    return rels


def g2_classify_prime_subspaces():
    t = g2_build_tables()
    entries = classify_primes(t.dec, range(2, N))
    found = prime_set(entries)
    return {
        "entries": entries,
        "certified": found,
        "expected": EXPECTED_PRIMES,
        "matches": found == EXPECTED_PRIMES,
        "witnesses_ok": all(e.witness_ok for e in entries if e.witness),
    }


def g2_complexes(t=None):
    """The displayed complexes plus the adjoint one, as (name, kind, stages, expected stage names)."""
    t = t or g2_build_tables()
    d = t.dec
    return [
        ("<*phi>", "type1", type1_stages(d[(4, 1)]),
         ["L0", "L1", "L2", "L3", "L4_7+L4_27", "L5_14"]),
        ("(L2_7, L3_27)", "type2", type2_stages(d[(2, 7)], d[(3, 27)]),
         ["L2_7", "L3_1+L3_7", "L4_1"]),
        ("(L3_1+L3_7, L4_27)", "type2", type2_stages(d.sum([(3, 1), (3, 7)]), d[(4, 27)]),
         ["L3_1+L3_7", "L4_1+L4_7"]),
        ("L2_14", "type1", type1_stages(d[(2, 14)]),
         ["L0", "L1", "L2_7", "L3_1"]),
    ]


def _proof_constants(t):
    """(description, computed, expected) triples for the G2 complex exactness identities."""
    d = t.dec
    w1 = covectors(N)[1]
    p1 = d.sum([(3, 1), (3, 7)]).project
    p2 = d[(4, 1)].project
    p3 = d.sum([(4, 1), (4, 7)]).project
    half = Rational(1, 2)
    out = [("p1(e2_1 ^ w1) = 3/7 phi", p1(wedge(t.e(2, 1), w1)), Rational(3, 7) * t.phi)]
    for i in (1, 2, 3):
        out.append((f"p1(e2_{2*i} ^ w1) = 1/2 e3_{2*i+1}", p1(wedge(t.e(2, 2 * i), w1)), half * t.e(3, 2 * i + 1)))
        out.append((f"p1(e2_{2*i+1} ^ w1) = -1/2 e3_{2*i}", p1(wedge(t.e(2, 2 * i + 1), w1)), -half * t.e(3, 2 * i)))
    out.append(("p2(e3_1 ^ w1) = -4/7 *phi", p2(wedge(t.e(3, 1), w1)), Rational(-4, 7) * t.psi))
    out.append(("p3(phi ^ w1) = e4_1", p3(wedge(t.phi, w1)), t.e(4, 1)))
    out.append(("p3(e3_1 ^ w1) = -4/7 *phi", p3(wedge(t.e(3, 1), w1)), Rational(-4, 7) * t.psi))
    for i in (1, 2, 3):
        out.append((f"p3(e3_{2*i} ^ w1) = -1/2 e4_{2*i+1}", p3(wedge(t.e(3, 2 * i), w1)), -half * t.e(4, 2 * i + 1)))
        out.append((f"p3(e3_{2*i+1} ^ w1) = 1/2 e4_{2*i}", p3(wedge(t.e(3, 2 * i + 1), w1)), half * t.e(4, 2 * i)))
    return out


def g2_verify_complexes(samples=100, seed=0, report=None):
    t = g2_build_tables()
    d = t.dec
    w = covectors(N)
    rep = report or SuiteReport("g2", seed, samples)

    for name, kind, stages, expected in g2_complexes(t):
        cert = certify_named(kind, stages, N, samples, seed, name)
        names = stage_names(d, stages)
        rep.add(
            f"g2.complex {name}",
            f"{kind} complex {' -> '.join(expected)} is exact at w1 and {samples} random covectors",
            cert.all_exact and names == expected and cert.reference.euler_characteristic == 0,
            stages=names,
            certificate=cert.to_dict(),
        )

    w1_l4 = span([wedge(w[1], Form(N, 4, {b: 1})) for b in _blades(4)])
    inter = w1_l4 & d[(5, 7)]
    rep.add("g2.claim", "w1.L4 meets L5_7 exactly in <w1 ^ psi>",
            inter == span([wedge(w[1], t.psi)]), dim=inter.dim)

    for desc, got, want in _proof_constants(t):
        rep.add("g2.constant", desc, got == want, computed=form_to_json(got))

    rep.add("g2.exhaustive p4", "p4(lambda ^ phi) = 0 in <*phi>", not d[(4, 1)].project(wedge(t.phi, w[1])))
    p5 = d[(4, 7)].project
    rep.add("g2.exhaustive p5", "p5(e3_i ^ w^i) = 0 for i = 1..7",
            all(not p5(wedge(t.e(3, i), w[i])) for i in range(1, N + 1)))

    scan = scan_complete_prime(d, range(2, N))
    rep.add("g2.scan type1", "type-1 generators among invariant sums: " + ", ".join(EXPECTED_TYPE1),
            sorted(scan.type1) == EXPECTED_TYPE1, found=sorted(scan.type1))
    rep.add("g2.scan type2", "type-2 pairs among invariant sums: " + ", ".join(map(str, EXPECTED_TYPE2)),
            sorted(scan.type2) == EXPECTED_TYPE2, found=[list(p) for p in sorted(scan.type2)])
    rep.add("g2.scan dual", "type-1 exactness agrees with the dual complex for every generator",
            all(scan.dual_agrees.values()), checked=len(scan.dual_agrees))
    return rep


def _blades(k):
    from .algebra import blades

    return blades(N, k)


def g2_suite(samples=100, seed=0):
    t = g2_build_tables()
    rep = SuiteReport("g2", seed, samples)
    dims = t.dec.dims()
    want = {0: [1], 1: [7], 2: [7, 14], 3: [1, 7, 27], 4: [1, 7, 27], 5: [7, 14], 6: [7], 7: [1]}
    rep.add("g2.dims", "component dimensions (1),(7),(7,14),(1,7,27),(1,7,27),(7,14),(7),(1)",
            dims == want, dims={str(k): v for k, v in dims.items()})
    rep.add("g2.phi", "phi ^ *phi = 7 vol and |phi|^2 = 7",
            wedge(t.phi, t.psi) == 7 * Form(N, N, {tuple(range(1, N + 1)): 1})
            and inner_product(t.phi, t.phi) == 7)
    rep.add("g2.e5_1", "e5_1 = w14567 + w12367 + w12345",
            t.e(5, 1) == Form(N, 5, {(1, 4, 5, 6, 7): 1, (1, 2, 3, 6, 7): 1, (1, 2, 3, 4, 5): 1}))
    for r in g2_verify_relations():
        rep.add("g2.relation", r.name, r.holds, lhs_dim=r.lhs_dim, rhs_dim=r.rhs_dim)
    cls = g2_classify_prime_subspaces()
    rep.add("g2.primes", "invariant prime subspaces: " + ", ".join(EXPECTED_PRIMES),
            cls["matches"] and cls["witnesses_ok"], found=cls["certified"],
            entries=[e.to_dict() for e in cls["entries"]])
    g2_verify_complexes(samples, seed, rep)
    return rep
