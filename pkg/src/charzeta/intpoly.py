"""Multivariate polynomials with exact integer coefficients.

A minimal representation used for the surface equations: a polynomial is a
mapping from exponent tuples (aligned with a fixed variable list) to
nonzero integer coefficients.  Supports the handful of exact operations
the geometry needs: partial derivatives, setting a variable to one,
grouping by a subset of variables, and evaluation over a finite field
either pointwise or on numpy arrays of encodings.
"""

from __future__ import annotations

import numpy as np


class IntPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = tuple(vars)
        self.terms = {tuple(e): int(c) for e, c in terms.items() if c}

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    def __eq__(self, other):
        return (isinstance(other, IntPoly) and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IntPoly(self.vars, out)

    def __neg__(self):
        return IntPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPoly(self.vars, out)

    def degree(self, var: str) -> int:
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=0)

    def partial(self, var: str) -> "IntPoly":
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                de = list(e)
                de[i] -= 1
                out[tuple(de)] = out.get(tuple(de), 0) + c * e[i]
        return IntPoly(self.vars, out)

    def set_one(self, var: str) -> "IntPoly":
        """Substitute var = 1 and drop it from the variable list."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            e2 = e[:i] + e[i + 1:]
            out[e2] = out.get(e2, 0) + c
        return IntPoly(self.vars[:i] + self.vars[i + 1:], out)

    def group_by(self, subset) -> dict:
        """Split into {exponents over `subset`: IntPoly in the other vars}."""
        subset = tuple(subset)
        idx = [self.vars.index(v) for v in subset]
        rest = [i for i in range(len(self.vars)) if i not in idx]
        rest_vars = tuple(self.vars[i] for i in rest)
        out = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            e2 = tuple(e[i] for i in rest)
            out.setdefault(key, {})
            out[key][e2] = out[key].get(e2, 0) + c
        return {k: IntPoly(rest_vars, t) for k, t in out.items()}

    def eval_int(self, values: dict) -> int:
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, ex in zip(self.vars, e):
                if ex:
                    t *= values[v] ** ex
            total += t
        return total

    def eval_field(self, field, values: dict) -> int:
        """Evaluate at encodings; `values` maps variable name to encoding."""
        total = 0
        for e, c in self.terms.items():
            t = field.int_(c)
            for v, ex in zip(self.vars, e):
                if ex:
                    t = field.mul(t, field.pow_(values[v], ex))
            total = field.add(total, t)
        return total

    def eval_field_arrays(self, field, arrays: dict) -> np.ndarray:
        """Evaluate on numpy arrays of encodings (one array per variable)."""
        shape = next(iter(arrays.values())).shape
        powers = {v: {0: None} for v in self.vars}

        def var_pow(v, ex):
            cache = powers[v]
            if ex not in cache:
                best = max(k for k in cache if k <= ex and k > 0) if any(k > 0 for k in cache) else 0
                cur = cache[best] if best else None
                k = best
                while k < ex:
                    cur = arrays[v] if cur is None else field.v_mul(cur, arrays[v])
                    k += 1
                    cache[k] = cur
            return cache[ex]

        total = np.zeros(shape, dtype=np.int64)
        for e, c in self.terms.items():
            term = None
            for v, ex in zip(self.vars, e):
                if ex:
                    pw = var_pow(v, ex)
                    term = pw if term is None else field.v_mul(term, pw)
            cenc = field.int_(c)
            if term is None:
                term = np.full(shape, cenc, dtype=np.int64)
            else:
                term = field.v_scale(cenc, term)
            total = field.v_add(total, term)
        return total

    def __repr__(self):
        def mono(e, c):
            parts = []
            if abs(c) != 1 or not any(e):
                parts.append(str(abs(c)))
            for v, ex in zip(self.vars, e):
                if ex == 1:
                    parts.append(v)
                elif ex > 1:
                    parts.append(f"{v}^{ex}")
            return "*".join(parts)

        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), reverse=True)
        s = ""
        for e, c in items:
            s += (" - " if c < 0 else (" + " if s else "")) + mono(e, c)
        return s.lstrip(" +")
