"""Parabolic masks, the rank certificate, induction, and the flag oracle."""

import random

import pytest

from tworb.fields import make_extension
from tworb.linalg import TwistedEndo, mat_eq, mat_mul, mat_sigma
from tworb.orbits import (JordanType, enumerate_orbits, orbit_dimension,
                          standard_representative)
from tworb.parabolic import (BadComposition, GenericityFailure, PorbReport,
                             ShapeMismatch, SupportViolation,
                             adapted_parabolic, blockwise_representative,
                             embed_m_x, flag_fixed_count, induce_orbit,
                             induce_orbit_report, n_x_dim_oracle,
                             rank_criterion, richardson_dual, sample_s_n,
                             standard_parabolic, verify_porb)

RAT = make_extension({"kind": "rational", "tau": 2})
F4 = make_extension({"kind": "finite", "p": 2, "e": 1})
F101 = make_extension({"kind": "finite", "p": 101, "e": 1})


def T(*parts):
    return JordanType(tuple(parts))


def zero_types(comp):
    return [T(*(1,) * s) for s in comp]


def endo(rows, model=RAT):
    return TwistedEndo.from_rows(model, rows)


# -- standard parabolic shapes ------------------------------------------------


def test_standard_parabolic_full_block():
    shape = standard_parabolic((3,))
    assert shape.n_mask == frozenset()
    assert len(shape.m_mask) == 9
    assert shape.dim_F_sM == 18


def test_standard_parabolic_borel_n2():
    shape = standard_parabolic((1, 1))
    assert shape.n_mask == frozenset({(0, 1)})
    assert shape.dim_F_sN == 2


def test_standard_parabolic_21():
    shape = standard_parabolic((2, 1))
    assert shape.dim_F_sN == 4
    assert len(shape.m_mask) + len(shape.n_mask) + len(shape.nbar_mask) == 9
    assert shape.dim_F_sM + shape.dim_F_sN + shape.dim_F_sNbar == 18


def test_standard_parabolic_rejects_bad_composition():
    with pytest.raises(BadComposition):
        standard_parabolic(())
    with pytest.raises(BadComposition):
        standard_parabolic((2, 0))


def test_masks_disjoint_and_exhaustive():
    for comp in [(1, 2), (2, 2), (1, 1, 1), (4,)]:
        shape = standard_parabolic(comp)
        n = shape.n
        everything = {(i, j) for i in range(n) for j in range(n)}
        assert shape.m_mask | shape.n_mask | shape.nbar_mask == everything
        assert not (shape.m_mask & shape.n_mask)
        assert not (shape.m_mask & shape.nbar_mask)
        assert not (shape.n_mask & shape.nbar_mask)


# -- adapted parabolic and u_X -----------------------------------------------


def test_adapted_parabolic_examples():
    assert adapted_parabolic(T(2)).dim_F_uX == 0
    assert adapted_parabolic(T(3, 1)).dim_F_uX == 4
    ad = adapted_parabolic(T(1, 1, 1))
    assert ad.n_mask == frozenset() and ad.dim_F_uX == 0


def test_adapted_parabolic_representative_in_n_mask():
    for parts in [(2,), (2, 1), (3, 1), (2, 2), (4, 2, 1)]:
        t = T(*parts)
        ad = adapted_parabolic(t)
        rep = standard_representative(t, RAT)
        nonzero = {(i, j) for i in range(t.n) for j in range(t.n)
                   if rep.mat[i][j]}
        assert nonzero <= ad.n_mask


def test_adapted_u_mask_inside_n_mask():
    for parts in [(2, 1), (3, 1), (3, 2, 1), (4, 4)]:
        ad = adapted_parabolic(T(*parts))
        assert ad.u_mask <= ad.n_mask


def test_embed_m_x_commutes_with_representative():
    for parts in [(2,), (3, 1), (2, 2, 1)]:
        t = T(*parts)
        ad = adapted_parabolic(t)
        rep = standard_representative(t, RAT)
        rng = random.Random(17)
        blocks = {}
        for j in sorted({j for (_, j, _, _) in ad.groups}):
            size = t.d(j)
            blocks[j] = tuple(
                tuple(RAT.el(rng.randint(-3, 3), rng.randint(-3, 3))
                      for _ in range(size)) for _ in range(size))
        m = embed_m_x(ad, RAT, blocks)
        # m X = X sigma(m) characterizes the twisted centralizer inside M
        assert mat_eq(mat_mul(m, rep.mat),
                      mat_mul(rep.mat, mat_sigma(RAT, m)))
        nonzero = {(i, j) for i in range(t.n) for j in range(t.n)
                   if m[i][j]}
        assert nonzero <= ad.m_mask


def test_n_x_dim_oracle_examples():
    assert n_x_dim_oracle(T(1, 1, 1), RAT) == 0
    ad2 = adapted_parabolic(T(2))
    assert ad2.dim_F_n == 2
    assert n_x_dim_oracle(T(2), RAT) == 2
    ad31 = adapted_parabolic(T(3, 1))
    assert n_x_dim_oracle(T(3, 1), RAT) == ad31.dim_F_n - 4


def test_u_x_dimension_identity_both_models():
    for model in (RAT, F4):
        for n in range(1, 6):
            for t in enumerate_orbits(n):
                ad = adapted_parabolic(t)
                assert ad.dim_F_uX == ad.dim_F_n - n_x_dim_oracle(t, model), t


# -- rank criterion -----------------------------------------------------------


def test_rank_criterion_p_equals_h():
    shape = standard_parabolic((2,))
    x = standard_representative(T(2), RAT)
    y = endo([[0, 0], [0, 0]])
    assert rank_criterion(shape, x, y)


def test_rank_criterion_zero_sample_fails():
    shape = standard_parabolic((1, 1))
    zero = endo([[0, 0], [0, 0]])
    assert not rank_criterion(shape, zero, zero)


def test_rank_criterion_regular_sample_passes():
    shape = standard_parabolic((1, 1))
    zero = endo([[0, 0], [0, 0]])
    y = endo([[0, 1], [0, 0]])
    assert rank_criterion(shape, zero, y)


def test_rank_criterion_support_violation():
    shape = standard_parabolic((1, 1))
    bad_x = endo([[0, 1], [0, 0]])  # supported on s_N, not s_M
    with pytest.raises(SupportViolation):
        rank_criterion(shape, bad_x, endo([[0, 0], [0, 0]]))
    bad_y = endo([[1, 0], [0, 0]])
    with pytest.raises(SupportViolation):
        rank_criterion(shape, endo([[0, 0], [0, 0]]), bad_y)


def test_rank_criterion_scale_invariant():
    shape = standard_parabolic((2, 1))
    x = blockwise_representative(shape, [T(2), T(1)], RAT)
    rng = random.Random(23)
    y = sample_s_n(shape, RAT, rng)
    base = rank_criterion(shape, x, y)
    for u in (2, 3, 7):
        scaled = TwistedEndo(RAT, 3, tuple(
            tuple(RAT.el(u) * v for v in row) for row in y.mat))
        assert rank_criterion(shape, x, scaled) == base


# -- induction ----------------------------------------------------------------


def test_induce_p_equals_h_returns_block_type():
    shape = standard_parabolic((3,))
    assert induce_orbit(shape, [T(2, 1)], RAT) == T(2, 1)


def test_induce_borel_gives_regular():
    shape = standard_parabolic((1, 1, 1))
    assert induce_orbit(shape, zero_types((1, 1, 1)), RAT) == T(3)


def test_induce_richardson_21():
    shape = standard_parabolic((2, 1))
    assert induce_orbit(shape, zero_types((2, 1)), RAT) == T(2, 1)


def test_induce_report_statistics():
    shape = standard_parabolic((1, 1))
    rep = induce_orbit_report(shape, zero_types((1, 1)), RAT, seed=0)
    assert rep.induced_type == T(2)
    assert rep.trials_used >= 1 and rep.rejected == rep.trials_used - 1


def test_induce_shape_mismatch():
    shape = standard_parabolic((2, 1))
    with pytest.raises(ShapeMismatch):
        induce_orbit(shape, [T(2)], RAT)
    with pytest.raises(ShapeMismatch):
        induce_orbit(shape, [T(3), T(1)], RAT)


def test_induce_finite_model_large_q():
    shape = standard_parabolic((1, 1, 1))
    assert induce_orbit(shape, zero_types((1, 1, 1)), F101, seed=4) == T(3)


def _all_compositions(n):
    for bits in range(2 ** (n - 1)):
        comp, run = [], 1
        for i in range(n - 1):
            if bits & (1 << i):
                comp.append(run)
                run = 1
            else:
                run += 1
        comp.append(run)
        yield tuple(comp)


def test_richardson_rule_small_multi_seed():
    for n in range(1, 5):
        for comp in _all_compositions(n):
            shape = standard_parabolic(comp)
            expected = richardson_dual(comp)
            for seed in range(3):
                got = induce_orbit(shape, zero_types(comp), RAT, seed=seed)
                assert got == expected, (comp, seed)


def test_verify_porb_vacuous_and_sampled():
    shape_h = standard_parabolic((2,))
    report = verify_porb(shape_h, [T(2)], RAT, trials=5, seed=1)
    assert report.ok and report.induced_type == T(2)
    assert report.certified_trials == 5 and report.failures == 0

    shape = standard_parabolic((1, 1))
    report = verify_porb(shape, zero_types((1, 1)), RAT, trials=20, seed=2)
    assert report.ok
    assert report.induced_type == T(2)
    assert report.tangent_dim_checks == report.certified_trials


def test_verify_porb_21():
    shape = standard_parabolic((2, 1))
    report = verify_porb(shape, zero_types((2, 1)), RAT, trials=20, seed=3)
    assert report.ok and report.induced_type == T(2, 1)
    assert isinstance(report, PorbReport)
    payload = report.to_json()
    assert payload["induced_type"] == [2, 1]
    assert payload["certified_trials"] == report.certified_trials


def test_genericity_failure_surfaces():
    shape = standard_parabolic((1, 1))
    # with zero trials allowed nothing can certify
    with pytest.raises(GenericityFailure):
        induce_orbit(shape, zero_types((1, 1)), RAT, max_trials=0)


# -- flag point-count oracle --------------------------------------------------


def test_flag_counts_q2():
    # counts over E = F_4: regular types give a single fixed flag, the zero
    # map fixes every flag
    assert flag_fixed_count(standard_representative(T(2), F4)) == 1
    assert flag_fixed_count(standard_representative(T(1, 1), F4)) == 5
    assert flag_fixed_count(standard_representative(T(2, 1), F4)) == 9
    assert flag_fixed_count(standard_representative(T(1, 1, 1), F4)) == 105
    assert flag_fixed_count(standard_representative(T(3), F4)) == 1


def test_flag_count_degree_matches_springer_dim():
    Q = 4
    for n in range(1, 4):
        for t in enumerate_orbits(n):
            count = flag_fixed_count(standard_representative(t, F4))
            dim_e = orbit_dimension(t).springer_dim_F // 2
            assert Q**dim_e <= count < Q ** (dim_e + 1), t
