"""The Spin(7) world on R^8: the Cayley 4-form, its invariant pieces and checks."""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .algebra import Form, Rational, hodge_star, inner_product, shift, wedge
from .g2 import phi_form
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
from .linalg import BasisSolver, Subspace, greedy_basis, rank_of, span
from .operators import eigenspace, t_operator
from .primeness import type1_stages, type2_stages
from .report import SuiteReport
from .serialize import form_to_json, rational_str

N = 8

OMEGA_TERMS = {
    (1, 2, 3, 4): 1, (1, 2, 5, 6): 1, (1, 2, 7, 8): 1, (1, 3, 5, 7): 1,
    (1, 3, 6, 8): -1, (1, 4, 5, 8): -1, (1, 4, 6, 7): -1, (2, 3, 5, 8): -1,
    (2, 3, 6, 7): -1, (2, 4, 5, 7): -1, (2, 4, 6, 8): 1, (3, 4, 5, 6): 1,
    (3, 4, 7, 8): 1, (5, 6, 7, 8): 1,
}

ALPHA_TERMS = [
    {"12": 1, "34": 1, "56": 1, "78": 1},
    {"13": 1, "24": -1, "57": 1, "68": -1},
    {"14": 1, "23": 1, "58": -1, "67": -1},
    {"15": 1, "26": -1, "37": -1, "48": 1},
    {"16": 1, "25": 1, "38": 1, "47": 1},
    {"17": 1, "28": -1, "35": 1, "46": -1},
    {"18": 1, "27": 1, "36": -1, "45": -1},
]

BETA_TERMS = [
    {"2467": 1, "2458": 1, "2368": 1, "2357": -1, "1358": -1, "1367": -1, "1457": -1, "1468": 1},
    {"3467": 1, "3458": 1, "2378": 1, "2356": 1, "1258": 1, "1267": 1, "1456": 1, "1478": 1},
    {"3457": 1, "3468": -1, "2478": 1, "2456": 1, "1257": 1, "1268": -1, "1356": -1, "1378": -1},
    {"2345": 1, "4567": -1, "3568": -1, "2578": 1, "1238": -1, "1247": -1, "1346": 1, "1678": 1},
    {"4568": 1, "3567": -1, "2678": 1, "2346": 1, "1237": -1, "1248": 1, "1345": -1, "1578": -1},
    {"4578": 1, "3678": 1, "2567": 1, "2347": 1, "1236": 1, "1245": 1, "1348": 1, "1568": 1},
    {"3578": 1, "4678": -1, "2568": 1, "2348": 1, "1235": 1, "1246": -1, "1347": -1, "1567": -1},
]

LAMBDA_PLUS = ((4, 1), (4, 7), (4, 27))

EXPECTED_PRIMES = sorted(
    ["L2_7", "L2_21", "L3_8", "L4_35", "L6_7"]
    + ["+".join(f"L{k}_{l}" for k, l in c) for r in (1, 2, 3) for c in combinations(LAMBDA_PLUS, r)]
)
EXPECTED_TYPE1 = sorted(["L2_21", "L3_8", "L4_1+L4_7+L4_27", "L4_35", "L4_27", "L6_7"])
EXPECTED_TYPE2 = sorted([
    ("L2_7", "L3_48"),
    ("L2_21", "L3_8"),
    ("L3_8", "L4_27+L4_35"),
    ("L4_1+L4_7", "L5_48"),
])


def _from_digits(n, terms):
    return Form(n, len(next(iter(terms))), {tuple(int(c) for c in b): v for b, v in terms.items()})


def omega_form():
    return Form(N, 4, OMEGA_TERMS)


def seven_dim_embedding(a):
    """i(a) = w1 ^ a' + (*_7 a)' for a 3-form a on R^7, primes shifting indices by one."""
    return wedge(covectors(N)[1], shift(a, N, 1)) + shift(hodge_star(a), N, 1)


@dataclass
class Spin7Tables:
    omega: Form
    dec: Decomposition
    alpha: list
    beta: list
    five8: list
    three8: list

    def __getitem__(self, key):
        return self.dec[key]

    @property
    def plus(self):
        return self.dec.sum(LAMBDA_PLUS)


@lru_cache(maxsize=1)
def spin7_build_tables():
    omega = omega_form()
    w = covectors(N)
    t = t_operator(omega, 2)
    phi = phi_form()
    a37 = [hodge_star(wedge(phi, Form(7, 1, {(i,): 1}))) for i in range(1, 8)]
    five8 = [wedge(w[i], omega) for i in range(1, N + 1)]
    three8 = [hodge_star(f) for f in five8]
    star4 = t_operator(Form.scalar(N, 1), 4)
    c = {
        (0, 1): Subspace.full(N, 0),
        (1, 8): Subspace.full(N, 1),
        (2, 7): eigenspace(t, 3),
        (2, 21): eigenspace(t, -1),
        (3, 8): span(three8),
        (4, 1): span([omega]),
        (4, 7): span([seven_dim_embedding(a) for a in a37]),
        (4, 35): eigenspace(star4, -1),
        (5, 8): span(five8),
        (7, 8): Subspace.full(N, 7),
        (8, 1): Subspace.full(N, 8),
    }
    plus = eigenspace(star4, 1)
    c[(4, 27)] = (c[(4, 1)] + c[(4, 7)]).complement() & plus
    c[(3, 48)] = c[(3, 8)].complement()
    c[(5, 48)] = c[(5, 8)].complement()
    c[(6, 7)] = star_span(c[(2, 7)])
    c[(6, 21)] = star_span(c[(2, 21)])
    dec = Decomposition(N, c)
    dec.check()
    for (k, l), s in dec.components.items():
        if star_span(s) != dec[(N - k, l)]:
            raise ConsistencyError(f"star does not carry L{k}_{l} onto L{N - k}_{l}")
    alpha = [_from_digits(N, a) for a in ALPHA_TERMS]
    beta = [_from_digits(N, b) for b in BETA_TERMS]
    return Spin7Tables(omega, dec, alpha, beta, five8, three8)


def t_omega_spectrum(t=None):
    """Eigenvalue -> multiplicity of beta -> *(Omega ^ beta) on 2-forms, plus its trace."""
    omega = (t or spin7_build_tables()).omega
    m = t_operator(omega, 2)
    spectrum = {}
    for value in (-1, 3):
        d = eigenspace(m, value).dim
        if d:
            spectrum[value] = d
    if sum(spectrum.values()) != m.domain.dim:
        raise ConsistencyError("T_Omega is not diagonalised by -1 and 3")
    return {"multiplicities": spectrum, "trace": m.trace()}


def spin7_relations(t=None):
    t = t or spin7_build_tables()
    d = t.dec
    full = {k: Subspace.full(N, k).labelled(f"L{k}") for k in range(N + 1)}
    minus = d[(4, 35)].labelled("L-")
    plus = t.plus.labelled("L+")
    return [
        check_relation("L2_7.L1 = L3", d[(2, 7)], full[3]),
        check_relation("L2_21.L1 = L3", d[(2, 21)], full[3]),
        check_relation("L3_8.L1 = (L4_27)^perp", d[(3, 8)], d.sum([(4, 1), (4, 7), (4, 35)])),
        check_relation("L3_48.L1 = (L4_1)^perp", d[(3, 48)], d.sum([(4, 7), (4, 27), (4, 35)])),
        check_relation("L4_7.L1 = L5", d[(4, 7)], full[5]),
        check_relation("L+.L1 = L5", plus, full[5]),
        check_relation("L-.L1 = L5", minus, full[5]),
        check_relation("L4_27.L1 = L5_48", d[(4, 27)], d[(5, 48)]),
        check_relation("L5_8.L1 = L6", d[(5, 8)], full[6]),
        check_relation("L5_48.L1 = L6", d[(5, 48)], full[6]),
    ]


def spin7_verify_relations():
    return spin7_relations()


def spin7_classify_prime_subspaces():
    t = spin7_build_tables()
    entries = classify_primes(t.dec, range(2, N - 1))
    found = prime_set(entries)
    return {
        "entries": entries,
        "certified": found,
        "expected": EXPECTED_PRIMES,
        "matches": found == EXPECTED_PRIMES,
        "witnesses_ok": all(e.witness_ok for e in entries if e.witness),
    }


def spin7_complexes(t=None):
    """The displayed complexes plus the adjoint one, as (name, kind, stages, expected stage names)."""
    t = t or spin7_build_tables()
    d = t.dec
    low = ["L0", "L1", "L2", "L3"]
    return [
        ("L+", "type1", type1_stages(t.plus), low + ["L4_35"]),
        ("L-", "type1", type1_stages(d[(4, 35)]), low + ["L4_1+L4_7+L4_27"]),
        ("L3_8", "type1", type1_stages(d[(3, 8)]), ["L0", "L1", "L2", "L3_48", "L4_27"]),
        ("L4_27", "type1", type1_stages(d[(4, 27)]), low + ["L4_1+L4_7+L4_35", "L5_8"]),
        ("L6_7", "type1", type1_stages(d[(6, 7)]), low + ["L4", "L5", "L6_21"]),
        ("(L2_7, L3_48)", "type2", type2_stages(d[(2, 7)], d[(3, 48)]), ["L2_7", "L3_8", "L4_1"]),
        ("(L2_21, L3_8)", "type2", type2_stages(d[(2, 21)], d[(3, 8)]), ["L2_21", "L3_48", "L4_27"]),
        ("(L3_8, L4_27+L4_35)", "type2", type2_stages(d[(3, 8)], d.sum([(4, 27), (4, 35)])),
         ["L3_8", "L4_1+L4_7"]),
        ("(L4_1+L4_7, L5_48)", "type2", type2_stages(d.sum([(4, 1), (4, 7)]), d[(5, 48)]),
         ["L4_1+L4_7", "L5_8"]),
        ("L2_21", "type1", type1_stages(d[(2, 21)]), ["L0", "L1", "L2_7"]),
    ]


def p1_blade_identities(t=None):
    """For each blade w^I, I inside {2..8}: the projection of w1 ^ (w^I - *w^I) onto L5_8.

    Returns rows (I, k, sign, holds, in_stated_case) where the identity is
    p1 = sign/7 w^k ^ Omega, k being the unique index with
    <w^k ^ Omega, w^{1I}> = sign.  The stated case is sign = +1.
    """
    t = t or spin7_build_tables()
    w = covectors(N)
    p1 = t[(5, 8)].project
    rows = []
    for idx in combinations(range(2, N + 1), 4):
        b = Form(N, 4, {idx: 1})
        got = p1(wedge(w[1], b - hodge_star(b)))
        top = Form(N, 5, {(1,) + idx: 1})
        hits = [(k, inner_product(t.five8[k - 1], top)) for k in range(1, N + 1)]
        hits = [(k, s) for k, s in hits if s]
        if len(hits) != 1:
            rows.append((idx, None, 0, False, False))
            continue
        k, s = hits[0]
        stated = s == 1 or inner_product(t.five8[k - 1], wedge(w[1], hodge_star(b))) == -1
        rows.append((idx, k, int(s), got == Rational(s, 7) * t.five8[k - 1], stated))
    return rows


def _restricted_rank(source_forms, target):
    w1 = covectors(N)[1]
    return span([target.project(wedge(w1, f)) for f in source_forms], n=N, k=target.k).dim


def p2_matrix(t=None):
    """The projection w1 ^ L3_48 -> L4_27 written out in two pairs of bases.

    ``rref``: the canonical reduced row-echelon bases of both spaces.
    ``alpha_adapted``: L3_48 spanned by the projections of w^i ^ alpha_j,
    L4_27 by the projections of alpha_i ^ alpha_j (i <= j), each taken
    greedily in lexicographic order of the index pair.
    """
    t = t or spin7_build_tables()
    w = covectors(N)
    d48, d27 = t[(3, 48)], t[(4, 27)]
    adapted_dom = [(f"p48(w{i} ^ alpha{j})", d48.project(wedge(w[i], t.alpha[j - 1])))
                   for i in range(1, N + 1) for j in range(1, 8)]
    adapted_cod = [(f"p27(alpha{i} ^ alpha{j})", d27.project(wedge(t.alpha[i - 1], t.alpha[j - 1])))
                   for i in range(1, 8) for j in range(i, 8)]
    out = {}
    for name, dom, cod in [
        ("rref", [(f"rref{i}", f) for i, f in enumerate(d48.basis())],
         [(f"rref{i}", f) for i, f in enumerate(d27.basis())]),
        ("alpha_adapted", _pick(adapted_dom), _pick(adapted_cod)),
    ]:
        solve = BasisSolver([f for _, f in cod])
        cols = [solve(d27.project(wedge(w[1], f))) for _, f in dom]
        dense = [[cols[j][i] for j in range(len(cols))] for i in range(len(cod))]
        sparse_cols = [{i: x for i, x in enumerate(c) if x} for c in cols]
        out[name] = {
            "rows": len(cod),
            "cols": len(dom),
            "rank": rank_of(sparse_cols),
            "domain_basis": [{"name": nm, "form": form_to_json(f)} for nm, f in dom],
            "codomain_basis": [{"name": nm, "form": form_to_json(f)} for nm, f in cod],
            "matrix": [[rational_str(x) for x in row] for row in dense],
        }
    return out


def _pick(named):
    chosen = {id(f) for f in greedy_basis([f for _, f in named])}
    return [(nm, f) for nm, f in named if id(f) in chosen]


def proof_constants(t=None):
    """(description, computed, expected) triples for the Spin(7) complex exactness identities."""
    t = t or spin7_build_tables()
    d = t.dec
    w = covectors(N)
    p3 = d[(3, 8)].project
    p4 = d[(4, 1)].project
    p5 = d.sum([(4, 1), (4, 7)]).project
    p6 = d[(5, 8)].project
    half = Rational(1, 2)
    out = []
    for i in range(1, 8):
        out.append((f"p3(w1 ^ alpha{i}) = -3/7 *(Omega ^ w{i + 1})",
                    p3(wedge(w[1], t.alpha[i - 1])),
                    Rational(-3, 7) * hodge_star(wedge(t.omega, w[i + 1]))))
    out.append(("p4(w1 ^ *(Omega ^ w1)) = 1/2 Omega",
                p4(wedge(w[1], hodge_star(wedge(t.omega, w[1])))), half * t.omega))
    for i in range(1, 8):
        out.append((f"p5(w1 ^ *(Omega ^ w{i + 1})) = 1/2 beta{i}",
                    p5(wedge(w[1], hodge_star(wedge(t.omega, w[i + 1])))), half * t.beta[i - 1]))
    for i in range(1, 8):
        out.append((f"p6(w1 ^ beta{i}) = 4/7 Omega ^ w{i + 1}",
                    p6(wedge(w[1], t.beta[i - 1])), Rational(4, 7) * wedge(t.omega, w[i + 1])))
    return out


def p6_literal_index(t=None):
    """The shifted reading p6(w1 ^ beta_{i+1}) = 4/7 Omega ^ w^{i+1}, i = 1..6."""
    t = t or spin7_build_tables()
    w = covectors(N)
    p6 = t[(5, 8)].project
    return [(i, p6(wedge(w[1], t.beta[i])) == Rational(4, 7) * wedge(t.omega, w[i + 1])) for i in range(1, 7)]


def spin7_verify_complexes(samples=100, seed=0, report=None):
    t = spin7_build_tables()
    d = t.dec
    w = covectors(N)
    rep = report or SuiteReport("spin7", seed, samples)

    for name, kind, stages, expected in spin7_complexes(t):
        cert = certify_named(kind, stages, N, samples, seed, name)
        names = stage_names(d, stages)
        rep.add(
            f"spin7.complex {name}",
            f"{kind} complex {' -> '.join(expected)} is exact at w1 and {samples} random covectors",
            cert.all_exact and names == expected and cert.reference.euler_characteristic == 0,
            stages=names,
            certificate=cert.to_dict(),
        )

    rows = p1_blade_identities(t)
    stated = [r for r in rows if r[4]]
    rep.add("spin7.p1 identity", "p1(w1 ^ (w^I - *w^I)) = 1/7 w^k ^ Omega whenever <w^k ^ Omega, w^1I> = 1",
            stated and all(r[3] for r in stated), blades=len(stated))
    rep.add("spin7.p1 sign", "the remaining blades give -1/7 w^k ^ Omega",
            all(r[3] and r[2] == -1 for r in rows if not r[4]), blades=len(rows) - len(stated))
    minus_rank = _restricted_rank(d[(4, 35)].basis(), d[(5, 8)])
    rep.add("spin7.p1 surjective", "p1 maps w1.L- onto L5_8 (rank 8)", minus_rank == 8, rank=minus_rank)

    mats = p2_matrix(t)
    rep.add("spin7.p2 rank", "p2: w1.L3_48 -> L4_27 has rank 27 in both bases",
            all(m["rank"] == 27 and m["rows"] == 27 and m["cols"] == 48 for m in mats.values()),
            ranks={k: m["rank"] for k, m in mats.items()})
    rep.artifacts["p2_matrix.json"] = mats

    for desc, got, want in proof_constants(t):
        rep.add("spin7.constant", desc, got == want, computed=form_to_json(got))
    rep.add("spin7.beta", "beta_1..beta_7 lie in L4_7 and span it",
            span(t.beta) == d[(4, 7)])
    rep.add("spin7.alpha", "alpha_1..alpha_7 lie in L2_7 and span it",
            span(t.alpha) == d[(2, 7)])

    inter = span([wedge(w[1], f) for f in d[(2, 21)].basis()]) & d[(3, 8)]
    rep.add("spin7.p7 injective", "w1.L2_21 meets L3_8 only in 0", inter.dim == 0, dim=inter.dim)

    scan = scan_complete_prime(d, range(2, N))
    rep.add("spin7.scan type1", "type-1 generators among invariant sums: " + ", ".join(EXPECTED_TYPE1),
            sorted(scan.type1) == EXPECTED_TYPE1, found=sorted(scan.type1))
    rep.add("spin7.scan type2", "type-2 pairs among invariant sums: " + ", ".join(map(str, EXPECTED_TYPE2)),
            sorted(scan.type2) == EXPECTED_TYPE2, found=[list(p) for p in sorted(scan.type2)])
    rep.add("spin7.scan dual", "type-1 exactness agrees with the dual complex for every generator",
            all(scan.dual_agrees.values()), checked=len(scan.dual_agrees))
    return rep


def spin7_suite(samples=100, seed=0):
    t = spin7_build_tables()
    rep = SuiteReport("spin7", seed, samples)
    dims = t.dec.dims()
    want = {0: [1], 1: [8], 2: [7, 21], 3: [8, 48], 4: [1, 7, 27, 35], 5: [8, 48], 6: [7, 21], 7: [8], 8: [1]}
    rep.add("spin7.dims", "component dimensions (7,21),(8,48),(1,7,27,35),(8,48),(7,21) in degrees 2..6",
            dims == want, dims={str(k): v for k, v in dims.items()})
    spectrum = t_omega_spectrum(t)
    rep.add("spin7.t_omega", "T_Omega = *(Omega ^ .) has eigenvalue 3 on L2_7, -1 on L2_21 and trace 0",
            spectrum["multiplicities"] == {3: 7, -1: 21} and spectrum["trace"] == 0,
            multiplicities={str(k): v for k, v in sorted(spectrum["multiplicities"].items())},
            trace=rational_str(spectrum["trace"]))
    rep.add("spin7.omega", "*Omega = Omega and |Omega|^2 = 14",
            hodge_star(t.omega) == t.omega and inner_product(t.omega, t.omega) == 14)
    for r in spin7_verify_relations():
        rep.add("spin7.relation", r.name, r.holds, lhs_dim=r.lhs_dim, rhs_dim=r.rhs_dim)
    cls = spin7_classify_prime_subspaces()
    rep.add("spin7.primes", "invariant prime subspaces: " + ", ".join(EXPECTED_PRIMES),
            cls["matches"] and cls["witnesses_ok"], found=cls["certified"],
            entries=[e.to_dict() for e in cls["entries"]])
    spin7_verify_complexes(samples, seed, rep)
    return rep
