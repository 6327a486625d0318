from fractions import Fraction

import pytest

from ggkit.bailey import (
    ChainParameterError,
    PairFormError,
    _inv_poch,
    combine,
    expected_limit_rhs,
    limit_identity,
    run_chain,
    transform_base_change,
    transform_iterate,
    transform_shift,
    unit_pair,
    verify_pair_relation,
)
from ggkit.series import LaurentSeries


def test_unit_pair_values():
    u = unit_pair(20)
    assert u.beta(0) == LaurentSeries.one(u.trunc)
    for n in range(1, 5):
        assert u.beta(n).is_zero()
    # alpha_1 = -1 - q: grid exponents 0 and 2 on the half-exponent grid
    a1 = u.alpha(1)
    assert a1.coefficient(0) == -1 and a1.coefficient(2) == -1
    assert sum(1 for _ in a1.items()) == 2


def test_unit_pair_relation():
    ok, msg = verify_pair_relation(unit_pair(20), 8)
    assert ok, msg


def test_seed_beta_closed_form():
    seed = transform_iterate(unit_pair(20))
    for n in range(9):
        assert seed.beta(n) == _inv_poch(seed.grid, n, seed.trunc), n
    ok, msg = verify_pair_relation(seed, 8)
    assert ok, msg


def test_iterate_fixes_alpha_at_zero():
    u = unit_pair(10)
    assert transform_iterate(u).alpha(0) == u.alpha(0)


def test_shift_keeps_alpha_zero_and_relation():
    seed = transform_iterate(unit_pair(15))
    shifted = transform_shift(seed, 3)
    assert shifted.alpha(0) == LaurentSeries.one(shifted.trunc)
    for n in range(1, 5):
        assert shifted.beta(n) == seed.beta(n).shift(2 * n).truncated(seed.trunc)
    ok, msg = verify_pair_relation(shifted, 6)
    assert ok, msg


def test_shift_rejects_wrong_alpha_form():
    seed = transform_iterate(unit_pair(15))
    with pytest.raises(PairFormError) as err:
        transform_shift(seed, 5)  # the seed carries parameter 3/2, not 5/2
    assert "n=" in str(err.value)


def test_combine_identity_and_linearity():
    seed = transform_iterate(unit_pair(15))
    same = combine([seed], [1])
    for n in range(5):
        assert same.alpha(n) == seed.alpha(n)
        assert same.beta(n) == seed.beta(n)
    shifted = transform_shift(seed, 3)
    avg = combine([seed, shifted], [Fraction(1, 2), Fraction(1, 2)])
    ok, msg = verify_pair_relation(avg, 6)
    assert ok, msg


def test_combine_rejects_mismatch():
    a = transform_iterate(unit_pair(10))
    b = transform_iterate(unit_pair(12))
    with pytest.raises(ValueError):
        combine([a, b], [1, 1])
    with pytest.raises(ValueError):
        combine([a], [1, 2])


def test_averaged_pair_closed_form():
    # for the shortest chain the averaged pair has beta_n = (1 + q^n)/(2 (q;q)_n)
    chain = run_chain(2, 1, 15)
    avg = chain.stage_by_note("averaged").pair
    g, trunc = avg.grid, avg.trunc
    for n in range(5):
        terms = {0: Fraction(1, 2)}
        terms[g * n] = terms.get(g * n, 0) + Fraction(1, 2)
        want = LaurentSeries.from_terms(terms, trunc) * _inv_poch(g, n, trunc)
        assert avg.beta(n) == want, n


def test_base_change_zero_index():
    chain = run_chain(2, 1, 15)
    final = chain.final
    assert final.grid == 1
    assert final.beta(0) == LaurentSeries.one(final.trunc)
    assert final.alpha(0) == LaurentSeries.one(final.trunc)


def test_base_change_requires_half_grid():
    chain = run_chain(2, 1, 10)
    with pytest.raises(ValueError):
        transform_base_change(chain.final)


def test_final_alpha_closed_form():
    chain = run_chain(3, 1, 30)
    final = chain.final
    k, i = 3, 1
    for n in range(1, 4):
        sign = -1 if n % 2 else 1
        e = (2 * k - 1) * n * n
        off = 2 * (k - i) * n
        want = LaurentSeries.from_terms({e - off: sign, e + off: sign}, final.trunc)
        assert final.alpha(n) == want, n


def test_chain_parameter_errors():
    with pytest.raises(ChainParameterError):
        run_chain(2, 2, 10)
    with pytest.raises(ChainParameterError):
        run_chain(2, 3, 10)
    with pytest.raises(ChainParameterError):
        run_chain(2, 0, 10)


def test_chain_stage_count():
    for k, i in [(2, 1), (3, 1), (3, 2), (4, 2)]:
        chain = run_chain(k, i, 10)
        assert len(chain.stages) == 2 * k - i + 2
        notes = [s.note for s in chain.stages]
        assert notes[0] == "unit" and notes[1] == "seed" and notes[-1] == "final"


@pytest.mark.parametrize("k,i", [(2, 1), (3, 2)])
def test_limit_identity_matches_product(k, i):
    chain = run_chain(k, i, 30)
    lhs, rhs = limit_identity(chain, 30)
    assert lhs == rhs
    assert lhs == expected_limit_rhs(k, i, 30)


def test_limit_identity_truncation_guard():
    chain = run_chain(2, 1, 10)
    with pytest.raises(ValueError):
        limit_identity(chain, 50)


def test_limit_constant_term():
    chain = run_chain(2, 1, 12)
    lhs, rhs = limit_identity(chain, 12)
    assert lhs.coefficient(0) == 1 and rhs.coefficient(0) == 1
