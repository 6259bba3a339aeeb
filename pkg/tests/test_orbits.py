from __future__ import annotations

import pytest

from dualbreak.finite_field import build_field
from dualbreak.orbits import INF, FrameError, build_frame, hit_counts, parse_line, perp_line

F5_REPS = [(0, 1), (0, 2), (1, 0), (2, 0), (1, 2), (2, 4), (1, 4), (2, 3), (1, 3), (2, 1), (1, 1), (2, 2)]


def _frames():
    for q, F in ((5, build_field(5)), (7, build_field(7)), (9, build_field(3, 2))):
        for t in (d for d in range(1, q) if (q - 1) % d == 0):
            yield build_frame(F, [F.alpha_pow(t * k) for k in range((q - 1) // t)])


@pytest.fixture
def f5_frame():
    return build_frame(build_field(5), [1, 4])


def test_f5_order(f5_frame):
    fr = f5_frame
    assert fr.rep_vectors() == F5_REPS
    assert fr.tau == 12 and fr.t == 2 and fr.orbit_size == 2
    assert fr.lines == (INF, 0, 1, 2, 3, 4)
    assert fr.line_vectors[-1] == (1, 1)
    assert fr.index(1, 0) == 3 and fr.reps[3].vector == (2, 0)


def test_f25_tau():
    F = build_field(5, 2, [2, 4, 1])
    fr = build_frame(F, [F.alpha_pow(2 * k) for k in range(12)])
    assert fr.tau == 52


@pytest.mark.parametrize("frame", list(_frames()), ids=lambda fr: f"q{fr.field.q}t{fr.t}")
def test_partition(frame):
    F = frame.field
    seen = {}
    for r in frame.reps:
        for h in frame.H:
            v = (F.mul(h, r.vector[0]), F.mul(h, r.vector[1]))
            assert v not in seen
            seen[v] = (h, r.index)
    assert len(seen) == F.q * F.q - 1
    for v, (h, i) in seen.items():
        assert frame.locate(v) == (h, i)


@pytest.mark.parametrize("frame", list(_frames()), ids=lambda fr: f"q{fr.field.q}t{fr.t}")
def test_perp(frame):
    for mu in frame.lines:
        nu = perp_line(frame, mu)
        u = frame.line_vectors[frame.block_of(mu)]
        v = frame.line_vectors[frame.block_of(nu)]
        assert frame.dot(u, v) == 0
        assert perp_line(frame, nu) == mu


def test_perp_examples(f5_frame):
    assert perp_line(f5_frame, 0) is INF
    assert perp_line(f5_frame, INF) == 0
    assert perp_line(f5_frame, 1) == 1
    with pytest.raises(FrameError):
        perp_line(f5_frame, 9)


def test_hit_count_examples(f5_frame):
    fr = f5_frame
    l0, l1, a_l0 = fr.index(0, 0), fr.index(0, 1), fr.index(1, 0)
    c = hit_counts(fr, l0, l1)
    assert c[None] == 0 and len(c) == 12 and set(c.values()) == {1}
    c = hit_counts(fr, l0, a_l0)
    assert c[None] == 2
    assert sorted(v for k, v in c.items() if k is not None) == [5, 5]
    with pytest.raises(FrameError):
        hit_counts(fr, 0, 12)


@pytest.mark.parametrize("frame", list(_frames()), ids=lambda fr: f"q{fr.field.q}t{fr.t}")
def test_hit_counts_exhaustive(frame):
    q, t = frame.field.q, frame.t
    for r1 in frame.reps:
        for r2 in frame.reps:
            c = hit_counts(frame, r1.index, r2.index)
            assert sum(c.values()) == frame.tau
            if r1.line != r2.line:
                assert c[None] == 0 and len(c) == frame.tau
            else:
                assert c[None] == t
                hit = {k: v for k, v in c.items() if k is not None}
                assert sorted(hit.values()) == [q] * t
                # the images lie on the line spanned by <1, alpha^(j - i)>
                F = frame.field
                ratio = F.alpha_pow(r2.power - r1.power)
                for k in hit:
                    x0, x1 = frame.reps[k].vector
                    assert x1 == F.mul(x0, ratio)


def test_bad_subgroups():
    F = build_field(7)
    with pytest.raises(FrameError):
        build_frame(F, [1, 2, 3])
    with pytest.raises(FrameError):
        build_frame(F, [2, 4])


def test_dump_and_parse_line(f5_frame):
    lines = f5_frame.dump().splitlines()
    assert lines[0] == "0,inf,0,1" and lines[2] == "0,0,1,0"
    assert parse_line("inf") is INF and parse_line("3") == 3
