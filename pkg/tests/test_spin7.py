import json

import pytest

from holoprime.algebra import Form, Rational, hodge_star, inner_product, wedge
from holoprime.holonomy import covectors, scan_complete_prime, stage_names
from holoprime.linalg import span
from holoprime.operators import eigenspace, t_operator
from holoprime.primeness import NOT_PRIME, certify_complex
from holoprime.serialize import dumps
from holoprime.spin7 import (
    EXPECTED_PRIMES,
    EXPECTED_TYPE1,
    EXPECTED_TYPE2,
    p1_blade_identities,
    p2_matrix,
    p6_literal_index,
    proof_constants,
    seven_dim_embedding,
    spin7_build_tables,
    spin7_classify_prime_subspaces,
    spin7_complexes,
    spin7_relations,
    t_omega_spectrum,
)
from holoprime.g2 import phi_form
from conftest import load_fixture
from oracles import derivation, stabilizer, terms_of


@pytest.fixture(scope="module")
def tables():
    return spin7_build_tables()


def test_omega_is_self_dual_and_built_from_phi(tables):
    assert hodge_star(tables.omega) == tables.omega
    assert inner_product(tables.omega, tables.omega) == 14
    assert seven_dim_embedding(phi_form()) == tables.omega


def test_decomposition_dimensions(tables):
    dims = tables.dec.dims()
    assert [dims[k] for k in range(2, 7)] == [[7, 21], [8, 48], [1, 7, 27, 35], [8, 48], [7, 21]]


def test_components_are_invariant_under_stabilizer(tables):
    algebra = stabilizer(tables.omega)
    assert len(algebra) == 21
    for (k, l), s in tables.dec.components.items():
        if k in (0, 1, 7, 8):
            continue
        basis = s.basis()
        for a in algebra:
            for f in basis:
                assert Form(8, k, derivation(a, terms_of(f))) in s, f"L{k}_{l} is not invariant"


def test_t_omega_eigenvalues(tables):
    spectrum = t_omega_spectrum(tables)
    # 3 on the 7-dimensional piece, -1 on the 21-dimensional piece
    assert spectrum["multiplicities"] == {3: 7, -1: 21}
    assert spectrum["trace"] == 0
    t = t_operator(tables.omega, 2)
    assert eigenspace(t, 3) == tables[(2, 7)]
    assert eigenspace(t, -1) == tables[(2, 21)]
    for a in tables.alpha:
        assert hodge_star(wedge(tables.omega, a)) == 3 * a


def test_alpha_and_beta_bases(tables):
    assert span(tables.alpha) == tables[(2, 7)]
    assert span(tables.beta) == tables[(4, 7)]
    assert all(b in tables[(4, 7)] for b in tables.beta)


def test_relations_hold(tables):
    rels = spin7_relations(tables)
    assert len(rels) == 10
    for r in rels:
        assert r.holds, r.name


def test_prime_classification():
    cls = spin7_classify_prime_subspaces()
    assert cls["certified"] == EXPECTED_PRIMES
    assert len(EXPECTED_PRIMES) == 12
    excluded = [e for e in cls["entries"] if e.status == NOT_PRIME]
    assert excluded and all(e.witness_ok for e in excluded)


def test_displayed_complexes_exact(tables):
    complexes = spin7_complexes(tables)
    assert len(complexes) == 10
    for name, kind, stages, expected in complexes:
        cert = certify_complex(kind, stages, 8, 100, 0)
        assert cert.all_exact, name
        assert stage_names(tables.dec, stages) == expected
        assert cert.reference.euler_characteristic == 0


def test_proof_constants(tables):
    for desc, got, want in proof_constants(tables):
        assert got == want, desc


def test_p6_shifted_index_fails(tables):
    # the identity pairs beta_i with w^{i+1}; pairing beta_{i+1} with w^{i+1} fails
    assert not any(ok for _, ok in p6_literal_index(tables))


def test_p1_identity_and_sign_cases(tables):
    rows = p1_blade_identities(tables)
    assert len(rows) == 35
    assert all(r[3] for r in rows)
    stated = [r for r in rows if r[4]]
    assert len(stated) == 26 and all(r[2] == 1 for r in stated)
    assert all(r[2] == -1 for r in rows if not r[4])


def test_p1_example(tables):
    w = covectors(8)
    b = Form(8, 4, {(2, 3, 4, 5): 1})
    got = tables[(5, 8)].project(wedge(w[1], b - hodge_star(b)))
    k = next(r[1] for r in p1_blade_identities(tables) if r[0] == (2, 3, 4, 5))
    sign = next(r[2] for r in p1_blade_identities(tables) if r[0] == (2, 3, 4, 5))
    assert got == Rational(sign, 7) * tables.five8[k - 1]


def test_p2_rank_in_both_bases(tables):
    mats = p2_matrix(tables)
    for m in mats.values():
        assert (m["rows"], m["cols"], m["rank"]) == (27, 48, 27)
    assert json.loads(dumps(mats)) == load_fixture("p2_matrix.json")


def test_w1_lambda2_21_meets_lambda3_8_trivially(tables):
    w1 = covectors(8)[1]
    inter = span([wedge(w1, f) for f in tables[(2, 21)].basis()]) & tables[(3, 8)]
    assert inter.dim == 0


def test_exhaustiveness_scan(tables):
    scan = scan_complete_prime(tables.dec, range(2, 8))
    assert sorted(scan.type1) == EXPECTED_TYPE1
    assert sorted(scan.type2) == EXPECTED_TYPE2
    assert all(scan.dual_agrees.values())


def test_suite_passes_and_matches_golden(spin7_report):
    assert spin7_report.passed, [c.claim for c in spin7_report.failures()]
    assert json.loads(dumps(spin7_report.to_dict())) == load_fixture("spin7_report.json")
