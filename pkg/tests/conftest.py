"""Shared test helpers: independent oracles and instantiated expectations."""

from __future__ import annotations

from charzeta import BiprojectivePoint, is_prime


def prime_powers_upto(limit):
    out = []
    p = 2
    while p <= limit:
        if is_prime(p):
            q = p
            n = 1
            while q <= limit:
                out.append((p, n))
                q *= p
                n += 1
        p += 1
    return sorted(out, key=lambda t: t[0] ** t[1])


def p2_reps(field):
    """Canonical representatives of P^2(F_q) as encoding triples."""
    q = field.q
    reps = [(1, y, u) for y in range(q) for u in range(q)]
    reps += [(0, 1, u) for u in range(q)]
    reps.append((0, 0, 1))
    return reps


def conic_count_brute(field, coeff_encs):
    """Independent oracle: count zeros of a ternary quadratic form in P^2."""
    a, b, c, d, e, f = coeff_encs
    mul, add = field.mul, field.add
    total = 0
    for (x, y, u) in p2_reps(field):
        v = mul(a, mul(x, x))
        v = add(v, mul(b, mul(y, y)))
        v = add(v, mul(c, mul(u, u)))
        v = add(v, mul(d, mul(x, y)))
        v = add(v, mul(e, mul(x, u)))
        v = add(v, mul(f, mul(y, u)))
        total += v == 0
    return total


def expected_singular_points(surface_id, field):
    """The singular-point lists instantiated over F_q, as a canonical set."""
    p = field.p
    minus1 = field.neg(1)
    pts = set()

    def add(xyu, zw):
        pts.add(BiprojectivePoint.from_raw(field, xyu, zw))

    if surface_id in ("L0", "L2"):
        add((1, 0, 0), (1, 0))
        add((0, 1, 0), (1, 0))
        add((1, 1, 0), (1, 1))
        add((1, minus1, 0), (1, minus1))
        if p == 2:
            if surface_id == "L0":
                for x in range(field.q):
                    add((x, 1, field.add(x, 1)), (1, 1))
                    add((x, field.add(x, 1), 1), (1, 1))
                    add((1, x, field.add(x, 1)), (1, 1))
                add((0, 0, 1), (0, 1))
            else:
                for x in range(field.q):
                    add((x, x, 1), (1, 1))
                    add((1, 1, x), (1, 1))
        return pts

    if surface_id == "L1":
        add((1, 0, 0), (1, 0))
        add((0, 1, 0), (1, 0))
        add((1, 0, 0), (0, 1))
        add((0, 1, 0), (0, 1))
        add((1, 1, 0), (1, 1))
        add((1, minus1, 0), (1, minus1))
        if p == 5:
            add((0, 0, 1), (1, 2))
            add((0, 0, 1), (1, field.neg(2)))
        if p == 2:
            for x in range(field.q):
                add((x, field.add(x, 1), 1), (1, 1))
                add((x, 1, field.add(x, 1)), (1, 1))
                add((1, x, field.add(x, 1)), (1, 1))
            for w in range(field.q):  # roots of w^2 + w + 1
                if field.add(field.add(field.mul(w, w), w), 1) == 0:
                    add((0, 0, 1), (1, w))
        return pts

    raise ValueError(surface_id)
