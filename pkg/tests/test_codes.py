from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_good_weight
from dualbreak.codes import (
    Certificate,
    ConstructionError,
    HypothesisFailure,
    brute_force_distribution,
    build_certificate,
    choose_rho,
    cross_coset_count,
    delta_bounds,
    dual_small_weight_counts,
    egalitarian_check,
    f_rho,
    feasible_interval,
    generator_matrix,
    omega_from_subset,
    q_functional,
    scale_and_build,
    select_subsets,
    solve_eta,
    verify_certificate,
    weight_distribution,
)
from dualbreak.enumerators import brute_force_dual, class_weights, dual_wwe, kravchuk, symmetrized_enumerator
from dualbreak.finite_field import build_field
from dualbreak.orbits import INF, build_frame
from dualbreak.structured import build_A, invert_A
from dualbreak.weights import WeightError, WeightFn

ETA_C_MINUS = [4, 4, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]
ETA_D_MINUS = [3, 2, 3, 2, 1, 1, 2, 0, 1, 1, 2, 0]
ETA_C_PLUS = [0, 0] + [3] * 10
ETA_D_PLUS = [1, 2, 1, 2, 3, 3, 2, 4, 3, 3, 2, 4]


@pytest.fixture(scope="module")
def f5():
    F = build_field(5)
    w = WeightFn(F, [0, 1, 4, 4, 1])
    frame = build_frame(F, w.H)
    W = build_A(frame, w)
    b, Winv = invert_A(frame, w)
    return frame, w, W, b, Winv


def _S(frame):
    return [frame.index(0, 0), frame.index(1, 0)], [frame.index(0, INF), frame.index(0, 0)]


def test_omega(f5):
    frame = f5[0]
    S, Sp = _S(frame)
    r = Fraction(7, 3)
    assert omega_from_subset(frame, S, r) == [1, 1, r, r] + [1] * 8
    assert omega_from_subset(frame, Sp, r) == [r, 1, r, 1] + [1] * 8
    assert omega_from_subset(frame, [], r) == [1] * 12
    with pytest.raises(ValueError):
        omega_from_subset(frame, [12], r)
    with pytest.raises(ValueError):
        omega_from_subset(frame, S, 0)


def test_eta_affine_forms(f5):
    frame, w, W, _, Winv = f5
    S, Sp = _S(frame)
    e = solve_eta(W, S, Winv)
    P, Q = e.scaled(75)
    assert (P, Q) == ([15, 15] + [0] * 10, [-12, -12] + [3] * 10)
    e2 = solve_eta(W, Sp, Winv)
    P2, Q2 = e2.scaled(75)
    assert P2 == [10, 5, 10, 5, 0, 0, 5, -5, 0, 0, 5, -5]
    assert Q2 == [-7, -2, -7, -2, 3, 3, -2, 8, 3, 3, -2, 8]
    for p, q in zip(e.P + e2.P, e.Q + e2.Q):
        assert p + q == 1 / (5 * w.w_breve)
    assert feasible_interval(e, e2) == (Fraction(5, 8), Fraction(5, 4))


def test_select_and_f(f5):
    frame, w, W, b, Winv = f5
    sel = select_subsets(frame, b)
    assert (sel.S, sel.S_prime, sel.case, sel.m) == ((2, 3), (0, 2), "1", (1,))
    f = f_rho(solve_eta(W, sel.S, Winv), solve_eta(W, sel.S_prime, Winv), scale=75)
    assert (f.c2, f.c1, f.c0) == (100, -200, 100)
    assert f(1) == 0 and f.derivative(1) == 0
    assert str(f) == "100*rho^2 - 200*rho + 100"
    assert choose_rho(Fraction(5, 8), Fraction(5, 4), f) == Fraction(5, 8)


def test_choose_rho_skips_double_zero():
    from dualbreak.codes import Quadratic

    f = Quadratic(Fraction(1), Fraction(-2), Fraction(1))  # (rho - 1)^2
    assert choose_rho(Fraction(1), Fraction(3), f) == 3
    assert choose_rho(Fraction(1, 2), Fraction(1), f) == Fraction(1, 2)
    assert choose_rho(Fraction(1), Fraction(1), Quadratic(Fraction(0), Fraction(1), Fraction(0))) == 1
    with pytest.raises(ConstructionError):
        choose_rho(Fraction(2), Fraction(1), f)
    with pytest.raises(ConstructionError):
        choose_rho(Fraction(1), Fraction(2), Quadratic(Fraction(0), Fraction(0), Fraction(0)))


def test_delta_bounds_f5_global(f5):
    Winv = f5[4]
    db = delta_bounds(Winv, 2)
    assert (db.lo, db.hi) == (Fraction(5, 8), Fraction(5, 4))
    assert db.subsets == 66
    assert 0 < db.lo < 1 < db.hi
    with pytest.raises(ValueError):
        delta_bounds(Winv, 12)


def test_delta_bounds_f25(f25_weight):
    frame = build_frame(f25_weight.field, f25_weight.H)
    _, Winv = invert_A(frame, f25_weight)
    db = delta_bounds(Winv, 2)
    assert (db.lo, db.hi) == (Fraction(5, 6), Fraction(25, 24))


def test_scale_and_build(f5):
    frame, w, W, _, Winv = f5
    S, Sp = _S(frame)
    e, e2 = solve_eta(W, S, Winv), solve_eta(W, Sp, Winv)
    assert (sorted(S), sorted(Sp)) == ([2, 3], [0, 2])
    N, a, b, n = scale_and_build(e.evaluate(Fraction(5, 8)), e2.evaluate(Fraction(5, 8)))
    assert (N, a, b, n) == (40, ETA_C_MINUS, ETA_D_MINUS, 18)
    N, a, b, n = scale_and_build(e.evaluate(Fraction(5, 4)), e2.evaluate(Fraction(5, 4)))
    assert (a, b, n) == (ETA_C_PLUS, ETA_D_PLUS, 30)
    assert scale_and_build(e.evaluate(Fraction(5, 8)), e2.evaluate(Fraction(5, 8)), 80)[3] == 36
    with pytest.raises(ConstructionError, match="multiple of"):
        scale_and_build(e.evaluate(Fraction(5, 8)), e2.evaluate(Fraction(5, 8)), 20)
    with pytest.raises(ConstructionError, match="negative"):
        scale_and_build(e.evaluate(Fraction(2)), e2.evaluate(Fraction(2)))


def test_distributions_and_brute_force(f5):
    frame, w, W, _, _ = f5
    for eta, want in ((ETA_C_MINUS, {0: 1, 25: 4, 40: 20}), (ETA_D_MINUS, {0: 1, 25: 4, 40: 20}),
                      (ETA_C_PLUS, {0: 1, 60: 20, 75: 4}), (ETA_D_PLUS, {0: 1, 60: 20, 75: 4})):
        assert weight_distribution(frame, eta, W) == want
        assert brute_force_distribution(frame.field, generator_matrix(frame, eta), w) == want


def test_egalitarian(f5):
    frame, w, W, _, _ = f5
    v = egalitarian_check(w, ETA_C_MINUS, {0: 1, 25: 4, 40: 20})
    assert v.holds and v.total == 900 and v.zeta == 2 and v.efflength == 18
    zero = egalitarian_check(w, [0] * 12, {0: 1})
    assert zero.holds and zero.total == 0


def test_dual_doubleton_counts(f5):
    frame, w, _, _, _ = f5
    counts = [dual_small_weight_counts(frame, e, w).count for e in
              (ETA_C_MINUS, ETA_D_MINUS, ETA_C_PLUS, ETA_D_PLUS)]
    assert counts == [24, 20, 60, 56]
    K = kravchuk(frame)
    se = symmetrized_enumerator(frame, ETA_D_MINUS)
    assert dual_wwe(se, K, 25, class_weights(w), max_degree=2)[2] == 20


def test_dual_counts_against_brute_force_small_codes(f5):
    frame, w, _, _, _ = f5
    rng = random.Random(9)
    for _ in range(25):
        eta = [0] * 12
        for _ in range(rng.randint(2, 6)):
            eta[rng.randrange(12)] += 1
        G = generator_matrix(frame, eta)
        if len({tuple(c) for c in zip(*G)}) < 2:
            continue
        got = dual_small_weight_counts(frame, eta, w)
        assert got.count == brute_force_dual(frame.field, G, w).get(got.weight, 0)


def test_zero_column_term_matches_brute_force(f5):
    frame, w, _, _, _ = f5
    eta = [1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0]
    G = generator_matrix(frame, eta)
    G0 = [G[0] + [0, 0], G[1] + [0, 0]]
    got = dual_small_weight_counts(frame, eta, w, zero_columns=2)
    assert got.count == brute_force_dual(frame.field, G0, w).get(2, 0)


def test_dual_counts_need_hypotheses():
    F = build_field(13)
    w = WeightFn.from_coset_values(F, [1, 1, 2])
    frame = build_frame(F, w.H)
    with pytest.raises(HypothesisFailure):
        dual_small_weight_counts(frame, [1] * frame.tau, w)


def test_cross_coset_count_f25(f25_weight):
    cert = build_certificate(f25_weight, force=True)
    frame = cert.frame
    assert cross_coset_count(frame, cert.eta_C, f25_weight) == (5, 1464)
    assert cross_coset_count(frame, cert.eta_D, f25_weight) == (5, 864)
    with pytest.raises(WeightError):
        F = build_field(7)
        w = WeightFn.from_coset_values(F, [1, 2, 3])
        cross_coset_count(build_frame(F, w.H), [1] * 24, w)


def test_f5_certificate(f5_euclid):
    cert = build_certificate(f5_euclid)
    assert (cert.rho, cert.N, cert.n) == (Fraction(5, 8), 40, 18)
    assert (cert.eta_C, cert.eta_D) == (ETA_C_MINUS, ETA_D_MINUS)
    assert (cert.witness_weight, cert.witness_C, cert.witness_D) == (2, 24, 20)
    assert cert.separates and not cert.forced and cert.case == "1"
    plus = build_certificate(f5_euclid, Fraction(5, 4))
    assert (plus.eta_C, plus.eta_D, plus.n) == (ETA_C_PLUS, ETA_D_PLUS, 30)
    assert verify_certificate(cert).ok and verify_certificate(plus).ok


def test_f25_certificate_needs_force(f25_weight):
    with pytest.raises(HypothesisFailure) as exc:
        build_certificate(f25_weight)
    assert exc.value.verdict.name == "distinct_values"
    cert = build_certificate(f25_weight, force=True)
    assert cert.forced and cert.case == "forced" and cert.n == 62
    assert (cert.witness_weight, cert.witness_C, cert.witness_D) == (5, 1464, 864)
    assert cert.witness_source == "dual enumerator"
    assert any("distinct_values" in note for note in cert.notes)


def test_f9_rejected_and_forced():
    F = build_field(3, 2, [2, 2, 1])
    w = WeightFn.from_coset_values(F, [2, 1])
    with pytest.raises(HypothesisFailure):
        build_certificate(w)
    cert = build_certificate(w, force=True)
    assert not cert.separates
    assert any("does not separate" in note for note in cert.notes)


def test_degenerate_weight_raises_even_when_forced():
    F = build_field(5)
    w = WeightFn.from_coset_values(F, [1, 1, 2, 2])
    with pytest.raises(HypothesisFailure):
        build_certificate(w, force=True)


def test_subset_override(f5_euclid):
    cert = build_certificate(f5_euclid, subsets=((2, 3), (0, 2)))
    assert cert.case == "override" and cert.n == 18


def test_json_round_trip(f5_euclid):
    cert = build_certificate(f5_euclid, full_dual=True)
    text = cert.to_json()
    back = Certificate.from_json(text)
    assert back.to_json() == text
    assert back.dual_wwe_C[2] == 24 and back.dual_wwe_D[2] == 20
    assert verify_certificate(back).ok


def test_verify_catches_tampering(f5_euclid):
    cert = build_certificate(f5_euclid)
    bad = replace(cert, eta_D=[3, 2, 3, 2, 1, 1, 2, 0, 1, 1, 1, 1])
    rep = verify_certificate(bad)
    assert not rep.ok and rep.first_failure()[0] == "primal enumerators equal"
    bad = replace(cert, witness_C=25)
    assert verify_certificate(bad).first_failure()[0] == "witness matches claim"
    bad = replace(cert, n=19)
    assert verify_certificate(bad).first_failure()[0] == "equal length"
    bad = replace(cert, eta_D=[-1] + cert.eta_D[1:])
    assert verify_certificate(bad).first_failure()[0] == "nonnegative"
    swapped = replace(cert, eta_C=cert.eta_D, eta_D=cert.eta_C)
    assert verify_certificate(swapped).ok


def test_verify_skips_brute_force_above_cap(f5_euclid):
    cert = build_certificate(f5_euclid)
    rep = verify_certificate(cert, cap=100)
    assert rep.ok
    assert any(name == "brute-force dual skipped" for name, _, _ in rep.checks)


def test_same_length_random_subsets():
    rng = random.Random(5)
    for _ in range(8):
        w = random_good_weight(rng)
        frame = build_frame(w.field, w.H)
        W = build_A(frame, w)
        _, Winv = invert_A(frame, w)
        for s in (1, 2, 3):
            rho = Fraction(rng.randint(1, 30), rng.randint(1, 30))
            sums = {sum(solve_eta(W, rng.sample(range(frame.tau), s), Winv).evaluate(rho)) for _ in range(6)}
            assert len(sums) == 1
        # row-sum identity and the uniform solution at rho = 1
        e = solve_eta(W, [0, 1], Winv)
        assert all(p + q == 1 / (w.field.q * w.w_breve) for p, q in zip(e.P, e.Q))
        e2 = solve_eta(W, [0, frame.tau - 1], Winv)
        f = f_rho(e, e2)
        assert f(1) == 0 and f.derivative(1) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(0, 5, max_denominator=7), min_size=2, max_size=8), st.integers(1, 50), st.randoms())
def test_q_scaling(eta, N, rnd):
    eta2 = list(eta)
    rnd.shuffle(eta2)
    # perturb while keeping the sum
    d = Fraction(1, 3)
    eta2[0] += d
    eta2[-1] -= d
    lhs = q_functional([N * x for x in eta]) - q_functional([N * x for x in eta2])
    assert lhs == N * N * (q_functional(eta) - q_functional(eta2))


def test_global_bounds_cover_all_pairs(f5):
    Winv = f5[4]
    W = f5[2]
    db = delta_bounds(Winv, 2)
    for S in combinations(range(12), 2):
        lo, hi = solve_eta(W, S, Winv).interval()
        assert lo <= db.lo and (hi is None or db.hi <= hi)
