"""Fast point counting through the conic-bundle structure.

Every fiber of the projection to P^1 is a plane conic whose six
coefficients are polynomials in the base point.  In odd characteristic
the whole base is classified at once with vectorised arithmetic (the
fibers of our three surfaces have no xu or yu cross terms, which the
model validates on construction); the handful of degenerate fibers are
then re-examined with the exact scalar classifier.  In characteristic 2
quadratic-form classification is unreliable, so fiber counts fall back to
enumeration of the fiber plane, aggregated through a joint distribution
table of ((x+y)^2, xy); this caps characteristic-2 fiberwise counting at
q <= 512.

The closed-form count path transcribes the per-surface case analysis
(characteristic and quadratic-residue branches, including the parity
terms) without algebraic simplification.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .finfield import Field, FieldError, classify_conic_encs, is_prime, make_field
from .varieties import CountRecord, SurfaceModel, _as_model

MAX_FIBERWISE_Q = 10**6
MAX_FIBERWISE_Q_CHAR2 = 512
MAX_ALL_REPORTS_Q = 4096
MAX_FORMULA_Q = 1 << 63


@dataclass(frozen=True)
class FiberReport:
    base: tuple[int, int]      # canonical (z : w), encodings
    count: int
    degenerate: bool
    rank: int | None = None    # None in characteristic 2 (counted by enumeration)
    split: bool | None = None

    def to_json(self):
        return {"base": list(self.base), "count": self.count,
                "degenerate": self.degenerate, "rank": self.rank,
                "split": self.split}


@dataclass(frozen=True)
class FiberwiseTotals:
    surface: str
    p: int
    n: int
    biprojective: int
    affine: int
    nonaffine: int
    degenerate: tuple[FiberReport, ...]

    def count(self, space: str) -> int:
        return getattr(self, space)


def fiber_form(model, basepoint, field: Field) -> tuple[int, ...]:
    """Coefficients (x^2, y^2, u^2, xy, xu, yu) of F restricted to a fiber."""
    return _as_model(model).fiber_form_encs(basepoint, field)


def _canonical_base(field: Field, z: int, w: int) -> tuple[int, int]:
    if z == 0:
        return (0, 1)
    if w == 0:
        return (1, 0)
    return (1, field.mul(w, field.inv(z)))


def _char2_fiber_is_smooth(coeffs) -> bool:
    # with only an xy cross term the partials are (b*y, b*x, 0); the form
    # is smooth iff b != 0 and the apex (0:0:1) is off the conic (c != 0)
    a, _, c, b, _, _ = coeffs
    return b != 0 and c != 0


def classify_fiber(model, basepoint, field: Field) -> FiberReport:
    """Exact report for a single fiber."""
    model = _as_model(model)
    coeffs = model.fiber_form_encs(basepoint, field)
    base = _canonical_base(field, *(c.enc if hasattr(c, "enc") else int(c) for c in basepoint))
    if field.p != 2:
        cls = classify_conic_encs(field, coeffs)
        return FiberReport(base, cls.point_count, cls.rank < 3, cls.rank, cls.split)
    if field.q > MAX_FIBERWISE_Q_CHAR2:
        raise FieldError(
            f"fiber counting in characteristic 2 limited to q <= {MAX_FIBERWISE_Q_CHAR2}")
    a, a2, c, b, e, f = coeffs
    if a != a2 or e or f:
        raise AssertionError("fiber form outside the supported shape")
    hist, sq1y, yarr = _char2_field_tables(field.p, field.n)
    count = _char2_fiber_count(field, hist, sq1y, yarr, a, b, c)
    return FiberReport(base, count, not _char2_fiber_is_smooth(coeffs))


# ---------------------------------------------------------------------------
# vectorised whole-base scans


def _fiber_abc_arrays(model: SurfaceModel, field: Field):
    """Arrays of the (x^2&y^2, xy, u^2) fiber coefficients over all (z : 1).

    The whole-base scans rely on the fiber forms having equal x^2 and y^2
    coefficients and no xu or yu terms; reject models that break this.
    """
    lists = model.fiber_quad_coeff_lists(field)
    if lists[(2, 0, 0)] != lists[(0, 2, 0)] or any(lists[(1, 0, 1)]) or any(lists[(0, 1, 1)]):
        raise ValueError(f"{model.id}: fiber forms outside the supported shape")
    z = np.arange(field.q, dtype=np.int64)
    a = field.v_poly(list(lists[(2, 0, 0)]), z)
    b = field.v_poly(list(lists[(1, 1, 0)]), z)
    c = field.v_poly(list(lists[(0, 0, 2)]), z)
    return z, a, b, c


def _u0_line_counts_odd(field: Field, a, b):
    """Zeros in P^1 of a*(x^2+y^2) + b*xy for every fiber, odd characteristic."""
    q = field.q
    out = np.empty(q, dtype=np.int64)
    za = a == 0
    zb = b == 0
    out[za & zb] = q + 1
    out[za & ~zb] = 2
    m = ~za
    if np.any(m):
        two_a = field.v_scale(field.int_(2), a[m])
        disc = field.v_sub(field.v_sq(b[m]), field.v_sq(two_a))
        chi = field.v_chi(disc)
        vals = np.where(disc == 0, 1, np.where(chi == 1, 2, 0))
        out[m] = vals
    return out


def _scan_odd(model: SurfaceModel, field: Field) -> FiberwiseTotals:
    q = field.q
    z, a, b, c = _fiber_abc_arrays(model, field)
    half = field.inv(field.int_(2))
    bh = field.v_scale(half, b)
    d = field.v_sub(field.v_sq(a), field.v_sq(bh))  # 2x2 block determinant
    smooth = (c != 0) & (d != 0)
    u0 = _u0_line_counts_odd(field, a, b)

    counts = np.full(q, q + 1, dtype=np.int64)
    reports = []
    for i in np.flatnonzero(~smooth):
        zi = int(z[i])
        rep = classify_fiber(model, (zi, 1), field)
        counts[i] = rep.count
        reports.append(rep)
    rep_inf = classify_fiber(model, (1, 0), field)
    if rep_inf.degenerate:
        reports.append(rep_inf)

    biproj = int(counts.sum()) + rep_inf.count
    nonaffine = int(u0.sum()) + rep_inf.count
    affine = int((counts - u0).sum())
    reports.sort(key=lambda r: r.base)
    return FiberwiseTotals(model.id, field.p, field.n, biproj, affine, nonaffine,
                           tuple(reports))


@functools.lru_cache(maxsize=8)
def _char2_field_tables(p: int, n: int):
    """(hist, sq1y, yarr) for characteristic-2 fiber counting.

    hist[s, r] = #{(x, y) in F_q^2 : (x+y)^2 = s, xy = r} aggregates the
    fiber-plane enumeration; sq1y[y] = (1+y)^2 serves the u = 0 line.
    """
    field = make_field(p, n)
    q = field.q
    x = np.repeat(np.arange(q, dtype=np.int64), q)
    y = np.tile(np.arange(q, dtype=np.int64), q)
    s = field.v_sq(x ^ y)
    r = field.v_mul(x, y)
    hist = np.bincount(s * q + r, minlength=q * q).reshape(q, q)
    yarr = np.arange(q, dtype=np.int64)
    return hist, field.v_sq(1 ^ yarr), yarr


def _char2_fiber_count(field: Field, hist, sq1y, yarr, a: int, b: int, c: int) -> int:
    """Zeros of a*(x^2+y^2) + b*xy + c*u^2 in P^2(F_q), characteristic 2.

    The u = 1 chart is aggregated through the histogram of ((x+y)^2, xy);
    the u = 0 line is evaluated directly on its q + 1 representatives.
    """
    q = field.q
    s_all = np.arange(q, dtype=np.int64)
    if b != 0:
        rhs = field.v_scale(a, s_all) ^ c
        r = field.v_scale(field.inv(b), rhs)
        n_aff = int(hist[s_all, r].sum())
    elif a != 0:
        n_aff = int(hist[field.mul(field.inv(a), c), :].sum())
    else:
        n_aff = q * q if c == 0 else 0
    line_vals = field.v_scale(a, sq1y) ^ field.v_scale(b, yarr)
    n_line = int(np.count_nonzero(line_vals == 0)) + (1 if a == 0 else 0)
    return n_aff + n_line


def _scan_char2(model: SurfaceModel, field: Field) -> FiberwiseTotals:
    q = field.q
    z, a, b, c = _fiber_abc_arrays(model, field)
    hist, sq1y, yarr = _char2_field_tables(field.p, field.n)

    biproj = affine = nonaffine = 0
    reports = []
    coeff_lists = model.fiber_quad_coeff_lists(field)
    for i in range(q):
        ai, bi, ci = int(a[i]), int(b[i]), int(c[i])
        cnt = _char2_fiber_count(field, hist, sq1y, yarr, ai, bi, ci)
        line_vals = field.v_scale(ai, sq1y) ^ field.v_scale(bi, yarr)
        u0 = int(np.count_nonzero(line_vals == 0)) + (1 if ai == 0 else 0)
        biproj += cnt
        affine += cnt - u0
        nonaffine += u0
        if bi == 0 or ci == 0:
            reports.append(FiberReport(_canonical_base(field, int(z[i]), 1), cnt, True))
    # fiber at (1 : 0): top z-coefficients, entirely non-affine
    a_inf = coeff_lists[(2, 0, 0)][-1]
    b_inf = coeff_lists[(1, 1, 0)][-1]
    c_inf = coeff_lists[(0, 0, 2)][-1]
    cnt_inf = _char2_fiber_count(field, hist, sq1y, yarr, a_inf, b_inf, c_inf)
    biproj += cnt_inf
    nonaffine += cnt_inf
    if b_inf == 0 or c_inf == 0:
        reports.append(FiberReport((1, 0), cnt_inf, True))
    reports.sort(key=lambda r: r.base)
    return FiberwiseTotals(model.id, field.p, field.n, biproj, affine, nonaffine,
                           tuple(reports))


@functools.lru_cache(maxsize=256)
def _scan_cached(surface_id: str, p: int, n: int) -> FiberwiseTotals:
    field = make_field(p, n)
    model = _as_model(surface_id)
    if field.p == 2:
        if field.q > MAX_FIBERWISE_Q_CHAR2:
            raise FieldError(
                f"fiberwise counting in characteristic 2 limited to q <= {MAX_FIBERWISE_Q_CHAR2}")
        return _scan_char2(model, field)
    if field.q > MAX_FIBERWISE_Q:
        raise FieldError(f"fiberwise counting limited to q <= {MAX_FIBERWISE_Q}")
    return _scan_odd(model, field)


def fiberwise_totals(model, field: Field) -> FiberwiseTotals:
    return _scan_cached(_as_model(model).id, field.p, field.n)


def count_fiberwise(model, field: Field, space: str = "biprojective",
                    all_reports: bool = False):
    """Count by summing fiber contributions over P^1(F_q).

    Returns (CountRecord, reports).  Reports cover the degenerate fibers;
    with all_reports=True (q <= 4096) every fiber is reported, smooth ones
    as rank-3 fibers of q + 1 points.
    """
    model = _as_model(model)
    totals = fiberwise_totals(model, field)
    record = CountRecord(model.id, field.p, field.n, space, "fiberwise",
                         totals.count(space))
    if not all_reports:
        return record, list(totals.degenerate)
    if field.q > MAX_ALL_REPORTS_Q:
        raise FieldError(f"per-fiber reports limited to q <= {MAX_ALL_REPORTS_Q}")
    reports = []
    for z in range(field.q):
        reports.append(classify_fiber(model, (z, 1), field))
    reports.append(classify_fiber(model, (1, 0), field))
    reports.sort(key=lambda r: r.base)
    return record, reports


def degenerate_fibers(model, field: Field) -> list[tuple[int, int]]:
    """Canonical base points of the fibers that are not smooth conics."""
    totals = fiberwise_totals(_as_model(model), field)
    return sorted(r.base for r in totals.degenerate)


# ---------------------------------------------------------------------------
# closed-form counts


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def count_formula(model, p: int, n: int, space: str = "biprojective") -> CountRecord:
    """Closed-form count, transcribing the per-surface case analysis.

    Branches: L0 splits on p = 2 and the residue of 2 mod p; L1 on p = 2,
    p = 5 and the residue of 5 mod p; L2 is uniform.  The parity terms
    q*(1 + (-1)^n) are kept in their stated form.  The affine count is the
    biprojective count minus the non-affine boundary count.
    """
    surface_id = _as_model(model).id
    if not (isinstance(p, int) and isinstance(n, int) and n >= 1):
        raise ValueError("p and n must be integers with n >= 1")
    if p**n > MAX_FORMULA_Q:
        raise FieldError("formula counts restricted to p^n <= 2^63")
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    q = p**n
    parity = 1 + (-1) ** n

    if space == "affine":
        big = count_formula(surface_id, p, n, "biprojective").count
        small = count_formula(surface_id, p, n, "nonaffine").count
        return CountRecord(surface_id, p, n, "affine", "formula", big - small)

    if space == "nonaffine":
        if surface_id in ("L0", "L2"):
            cnt = 3 * q if p == 2 else 3 * q - 1
        else:
            cnt = 4 * q - 1 if p == 2 else 4 * q - 2
        return CountRecord(surface_id, p, n, "nonaffine", "formula", cnt)

    if space != "biprojective":
        raise ValueError(f"unknown space {space!r}")

    if surface_id == "L0":
        if p == 2:
            cnt = q * q + 3 * q + 1
        elif _legendre(2, p) == 1:
            cnt = q * q + 7 * q + 1
        else:
            cnt = q * q + 5 * q + 1 + q * parity
    elif surface_id == "L1":
        if p == 2:
            cnt = q * q + 2 * q + 1 + q * parity
        elif p == 5:
            cnt = q * q + 6 * q + 1
        elif _legendre(5, p) == 1:
            cnt = q * q + 8 * q + 1
        else:
            cnt = q * q + 4 * q + 1 + 2 * q * parity
    else:
        cnt = q * q + 3 * q + 1
    return CountRecord(surface_id, p, n, "biprojective", "formula", cnt)
