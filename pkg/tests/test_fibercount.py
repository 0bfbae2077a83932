"""Fiber forms, fiberwise counting, degenerate fibers, and count formulas."""

import pytest

from charzeta import (FieldError, classify_fiber, count_fiberwise, count_formula,
                      degenerate_fibers, fiber_form, fiberwise_totals, make_field)
from charzeta.varieties import (count_affine_brute, count_biprojective_brute,
                                count_nonaffine_brute)
from conftest import prime_powers_upto


def test_fiber_form_examples():
    f7 = make_field(7)
    # fiber at (1:0) is u^2 = 0
    assert fiber_form("L0", (1, 0), f7) == (0, 0, 1, 0, 0, 0)
    # fiber at (0:1) is -xy = 0
    assert fiber_form("L0", (0, 1), f7) == (0, 0, 0, 6, 0, 0)
    # fiber at (1:1) over F_5 equals (x - y)^2 - u^2 = ((x-y)-u)((x-y)+u)
    f5 = make_field(5)
    assert fiber_form("L0", (1, 1), f5) == (1, 1, 4, 3, 0, 0)


def test_fiber_form_reproduces_surface_polynomial():
    for sid in ("L0", "L1", "L2"):
        for p, n in [(3, 1), (5, 1), (2, 2), (7, 1)]:
            field = make_field(p, n)
            from charzeta import surface
            m = surface(sid)
            for z in list(range(min(field.q, 6))) + [1]:
                w = 1 if z != 1 else 0
                a, b, c, d, e, f = fiber_form(sid, (z, w), field)
                for x, y, u in [(1, 2 % field.q, 1), (0, 1, 1), (1, 1, 0), (2 % field.q, 3 % field.q, 1)]:
                    form_val = 0
                    for coef, mono in zip((a, b, c, d, e, f),
                                          ((x, x), (y, y), (u, u), (x, y), (x, u), (y, u))):
                        form_val = field.add(form_val, field.mul(coef, field.mul(*mono)))
                    direct = m.F.eval_field(field, {"x": x, "y": y, "u": u, "z": z, "w": w})
                    assert form_val == direct


def test_count_fiberwise_examples():
    rec, reports = count_fiberwise("L0", make_field(7))
    assert rec.count == 99
    assert sorted(r.base for r in reports) == [(0, 1), (1, 0), (1, 1), (1, 2), (1, 5), (1, 6)]
    rec, _ = count_fiberwise("L1", make_field(5))
    assert rec.count == 56
    rec, _ = count_fiberwise("L2", make_field(3, 2))
    assert rec.count == 109  # q^2 + 3q + 1 at q = 9


def test_degenerate_fiber_base_points():
    assert degenerate_fibers("L0", make_field(3)) == [(0, 1), (1, 0), (1, 1), (1, 2)]
    # over F_9 the two extra fibers at the square roots of 1/2 appear
    assert len(degenerate_fibers("L0", make_field(3, 2))) == 6
    f9 = make_field(3, 2)
    for _, t in degenerate_fibers("L0", f9):
        if t not in (0, 1, f9.neg(1)):
            # 2 t^2 = 1 marks the fibers at 1/sqrt(2)
            assert f9.mul(f9.int_(2), f9.mul(t, t)) == 1
    # F_4: the two cube roots of unity from T^2 + T + 1 show up for L1
    assert degenerate_fibers("L1", make_field(2, 2)) == [(0, 1), (1, 0), (1, 1), (1, 2), (1, 3)]


def test_degenerate_fiber_case_table():
    # L0: 6 when sqrt(2) exists (odd p), else 4; 3 at p = 2
    assert len(degenerate_fibers("L0", make_field(7))) == 6
    assert len(degenerate_fibers("L0", make_field(3))) == 4
    assert len(degenerate_fibers("L0", make_field(2))) == 3
    assert len(degenerate_fibers("L0", make_field(2, 2))) == 3
    # L1: 8 split / 4 inert / 6 at p = 5 / 5 at p = 2 with cube roots, else 3
    assert len(degenerate_fibers("L1", make_field(11))) == 8
    assert len(degenerate_fibers("L1", make_field(13))) == 4
    assert len(degenerate_fibers("L1", make_field(13, 2))) == 8
    assert len(degenerate_fibers("L1", make_field(5))) == 6
    assert len(degenerate_fibers("L1", make_field(2))) == 3
    assert len(degenerate_fibers("L1", make_field(2, 2))) == 5
    # L2: always 4 (odd) or 3 (p = 2)
    assert len(degenerate_fibers("L2", make_field(7))) == 4
    assert len(degenerate_fibers("L2", make_field(2, 3))) == 3


def test_smooth_fibers_contribute_q_plus_one():
    for sid in ("L0", "L1", "L2"):
        for p, n in [(3, 1), (7, 1), (2, 2), (5, 1)]:
            field = make_field(p, n)
            _, reports = count_fiberwise(sid, field, all_reports=True)
            assert len(reports) == field.q + 1
            for r in reports:
                if not r.degenerate:
                    assert r.count == field.q + 1
                    if field.p != 2:
                        assert r.rank == 3


def test_fiber_sum_equals_total():
    for sid in ("L0", "L1", "L2"):
        for p, n in [(2, 1), (3, 1), (5, 1), (2, 3), (3, 2), (11, 1)]:
            field = make_field(p, n)
            rec, reports = count_fiberwise(sid, field, all_reports=True)
            assert sum(r.count for r in reports) == rec.count


def test_char2_fiber_counts_against_dumb_enumeration():
    # independent oracle: evaluate the fiber form at every P^2 representative
    from charzeta import fiber_form, surface
    from conftest import p2_reps
    for sid in ("L0", "L1", "L2"):
        for n in (1, 2, 3):
            field = make_field(2, n)
            for z, w in [(t, 1) for t in range(field.q)] + [(1, 0)]:
                coeffs = fiber_form(sid, (z, w), field)
                dumb = 0
                for (x, y, u) in p2_reps(field):
                    v = 0
                    for coef, (m1, m2) in zip(coeffs, ((x, x), (y, y), (u, u),
                                                       (x, y), (x, u), (y, u))):
                        v = field.add(v, field.mul(coef, field.mul(m1, m2)))
                    dumb += v == 0
                assert classify_fiber(sid, (z, w), field).count == dumb


def test_scalar_classifier_agrees_with_scan():
    for sid in ("L0", "L1", "L2"):
        for p, n in [(3, 2), (5, 1), (2, 2), (7, 1)]:
            field = make_field(p, n)
            degenerate = {r.base for r in fiberwise_totals(sid, field).degenerate}
            for z in range(field.q):
                rep = classify_fiber(sid, (z, 1), field)
                assert rep.degenerate == (rep.base in degenerate)
            rep = classify_fiber(sid, (1, 0), field)
            assert rep.degenerate == ((1, 0) in degenerate)


def test_count_formula_examples():
    assert count_formula("L0", 3, 2, "biprojective").count == 145
    assert count_formula("L1", 2, 2, "biprojective").count == 33
    assert count_formula("L1", 11, 1, "affine").count == 168
    assert count_formula("L2", 3, 1, "nonaffine").count == 8


def test_count_formula_branches():
    # all four L1 branches
    assert count_formula("L1", 11, 1).count == 121 + 88 + 1      # (5/11) = 1
    assert count_formula("L1", 13, 1).count == 169 + 52 + 1      # inert, n odd
    assert count_formula("L1", 13, 2).count == 169**2 + 4 * 169 + 1 + 4 * 169
    assert count_formula("L1", 5, 3).count == 125**2 + 6 * 125 + 1
    # L0 inert parity term
    assert count_formula("L0", 3, 1).count == 9 + 15 + 1
    assert count_formula("L0", 3, 2).count == 81 + 45 + 1 + 18


def test_count_formula_guards():
    with pytest.raises(FieldError):
        count_formula("L0", 6, 1)
    with pytest.raises(FieldError):
        count_formula("L0", 2, 64)  # 2^64 > 2^63
    with pytest.raises(ValueError):
        count_formula("L0", 5, 1, "projective")


def test_fiberwise_size_guards():
    with pytest.raises(FieldError):
        fiberwise_totals("L0", make_field(2, 10))  # 1024 > 512 in char 2
    with pytest.raises(FieldError):
        count_fiberwise("L0", make_field(5, 6), all_reports=True)  # 15625 > 4096
    with pytest.raises(FieldError):
        fiberwise_totals("L0", make_field(101, 3))  # 101^3 > 1e6


@pytest.mark.parametrize("sid", ["L0", "L1", "L2"])
def test_three_way_agreement_small(sid):
    for p, n in prime_powers_upto(32):
        field = make_field(p, n)
        totals = fiberwise_totals(sid, field)
        assert count_biprojective_brute(sid, field).count == totals.biprojective
        assert count_affine_brute(sid, field).count == totals.affine
        assert count_nonaffine_brute(sid, field).count == totals.nonaffine
        for space in ("biprojective", "affine", "nonaffine"):
            assert count_formula(sid, p, n, space).count == totals.count(space)
