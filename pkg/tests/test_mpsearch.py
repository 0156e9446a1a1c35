import copy
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holoprime.algebra import Form, wedge
from holoprime.linalg import Subspace, span
from holoprime.mpsearch import (
    ReplayError,
    _attach,
    anti_self_dual_r4,
    extend_multi,
    extend_one,
    extension_side_condition,
    l_lambda,
    mp_lower_bound_search,
    mp_suite,
    obstruction_space,
    replay_certificate,
    su_embedding_basis,
    su_embedding_space,
    su_rank_sampling,
)
from holoprime.operators import rank_two_form
from holoprime.primeness import prime_check_invariant, unit_covector
from holoprime.serialize import FormatError
from strategies import covectors


def w(*idx, n=4):
    return Form(n, len(idx), {idx: 1})


def sample_ranks(e, count, seed, bound=5):
    """2-form ranks of random integer elements of e: an independent primeness probe."""
    rng = random.Random(seed)
    basis = e.basis()
    out = []
    for _ in range(count):
        f = sum((b * rng.randint(-bound, bound) for b in basis), Form.zero(e.n, 2))
        if f:
            out.append(rank_two_form(f))
    return out


def test_l_lambda_examples():
    assert l_lambda(Subspace.zero(4, 2), w(1)).dim == 3
    assert l_lambda(anti_self_dual_r4(), w(1)).dim == 6
    with pytest.raises(ValueError):
        l_lambda(Subspace.zero(4, 2), Form.zero(4, 1))


def test_extend_one():
    e = anti_self_dual_r4()
    assert extend_one(e, w(1), w(3, 4)) is None
    step = extend_one(Subspace.zero(4, 2), w(1), w(3, 4))
    assert step.result.dim == 1 and step.result.n == 5
    assert rank_two_form(step.result.basis()[0]) == 2


def test_shared_attachment_form_is_not_prime():
    # lambda_1 ^ e + alpha and lambda_2 ^ e + alpha differ by (w1 - w2) ^ w5
    e = Subspace.zero(4, 2)
    lams, alpha = [w(1), w(2)], w(3, 4)
    naive = _attach(e, lams, [alpha, alpha])
    diff = wedge(Form(5, 1, {(1,): 1, (2,): -1}), Form(5, 1, {(5,): 1}))
    assert diff in naive and rank_two_form(diff) == 1
    with pytest.raises(ValueError):
        extend_multi(e, lams, alpha)
    ok, _ = extension_side_condition(e, lams, [alpha, alpha])
    assert not ok


def test_extend_multi_rejects_full_obstruction():
    e = anti_self_dual_r4()
    assert obstruction_space(e, [w(1), w(2)]).is_full()
    assert extend_multi(e, [w(1), w(2)], [w(1, 3), w(2, 4)]) is None


def test_extend_multi_valid_and_invalid():
    e = Subspace.zero(4, 2)
    # <w1, w2> ^ L1 misses only w34, so s = 2 has room for one attachment form only
    assert obstruction_space(e, [w(1), w(2)]).dim == 5
    assert extend_multi(e, [w(1), w(2)], [w(3, 4), 2 * w(3, 4)]) is None
    with pytest.raises(ValueError):
        extend_multi(e, [w(1), 2 * w(1)], [w(3, 4), w(2, 3)])
    e6 = Subspace.zero(6, 2)
    step = extend_multi(e6, [w(1, n=6), w(2, n=6)], [w(3, 4, n=6), w(5, 6, n=6)])
    assert step.result.dim == 2
    assert prime_check_invariant(step.result, unit_covector(7), False).status != "not_prime"


@given(st.data())
@settings(max_examples=40)
def test_extension_keeps_primeness(data):
    e = anti_self_dual_r4()
    lam = data.draw(covectors(4, 3))
    alpha = Form(4, 2, {b: data.draw(st.integers(-3, 3)) for b in [(1, 2), (1, 3), (2, 4), (3, 4)]})
    step = extend_one(e, lam, alpha)
    if step is None:
        assert alpha in l_lambda(e, lam)
        return
    assert step.result.dim == 4
    assert min(sample_ranks(step.result, 30, data.draw(st.integers(0, 999)))) == 2


def test_su_embedding():
    for m in range(2, 6):
        assert su_embedding_space(m).dim == m * m - 1
        assert len(su_embedding_basis(m)) == m * m - 1
    with pytest.raises(ValueError):
        su_embedding_basis(1)
    assert min(sample_ranks(su_embedding_space(2), 50, 0)) == 2


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_su_rank_sampling_finds_no_low_rank(m):
    assert su_rank_sampling(m, 1000, m) == 0


def test_su_rank_sampling_detects_low_rank():
    # all elements of span(w12, w13) are decomposable
    assert rank_two_form(w(1, 2) + w(1, 3)) == 1


@pytest.mark.parametrize("n", range(4, 11))
def test_mp_bounds_and_replay(n):
    cert = mp_lower_bound_search(n, numeric=False)
    target = (n // 2) ** 2 - 1
    assert cert.dimension >= target
    log = replay_certificate(cert.to_dict())
    assert len(log) == len(cert.trace)


def test_mp_dimensions_frozen():
    got = [mp_lower_bound_search(n, numeric=False).dimension for n in range(4, 11)]
    assert got == [3, 3, 8, 9, 15, 17, 24]


def test_mp_monotone_in_n():
    dims = [mp_lower_bound_search(n, numeric=False).dimension for n in range(4, 9)]
    assert dims == sorted(dims)


def test_randomized_strategy_is_deterministic():
    a = mp_lower_bound_search(6, "randomized", budget=3, seed=4).to_dict()
    b = mp_lower_bound_search(6, "randomized", budget=3, seed=4).to_dict()
    assert a == b
    replay_certificate(a)


def test_numeric_evidence_attached():
    cert = mp_lower_bound_search(5, seed=0)
    assert cert.evidence["numeric"]["status"] == "evidence_only"
    assert not cert.evidence["numeric"]["below_tolerance"]


def test_replay_detects_tampering():
    data = mp_lower_bound_search(7, numeric=False).to_dict()
    bad = copy.deepcopy(data)
    bad["dimension"] += 1
    with pytest.raises(ReplayError):
        replay_certificate(bad)
    bad = copy.deepcopy(data)
    step = next(t for t in bad["trace"] if t["op"] == "extend")
    # a zero attachment form lies in the obstruction space
    step["alphas"][0] = {"n": step["n_from"], "k": 2, "terms": []}
    with pytest.raises(ReplayError):
        replay_certificate(bad)
    bad = copy.deepcopy(data)
    bad["trace"][0]["op"] = "mystery"
    with pytest.raises(ReplayError):
        replay_certificate(bad)
    with pytest.raises(FormatError):
        replay_certificate({"n": 7})


def test_bad_arguments():
    with pytest.raises(ValueError):
        mp_lower_bound_search(3)
    with pytest.raises(ValueError):
        mp_lower_bound_search(5, strategy="exhaustive")
    with pytest.raises(ValueError):
        mp_lower_bound_search(5, budget=0)


def test_mp_suite_passes():
    rep = mp_suite(ns=range(4, 7), draws=100)
    assert rep.passed
