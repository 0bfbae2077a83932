"""Exact arithmetic in F_p and F_{p^n}, quadratic characters, and conic classification.

Elements of F_q, q = p^n, are encoded as integers in [0, q): the element
a0 + a1*x + ... + a_{n-1}*x^{n-1} (coefficients in [0, p)) has encoding
a0 + a1*p + ... + a_{n-1}*p^(n-1).  For n = 1 the encoding is the least
residue.  Scalar arithmetic works for any supported q; vectorised
arithmetic on numpy arrays of encodings additionally relies on discrete
log tables and is available for q <= 2**20, which covers every field the
counting kernels enumerate.

The extension modulus is the first irreducible monic polynomial in
ascending order of its coefficient encoding, so field construction is
deterministic and reproducible.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

MAX_EXT_DEGREE = 24
MAX_Q = 1 << 63
MAX_TABLE_Q = 1 << 20

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class FieldError(ValueError):
    """Invalid field construction or an operation outside its domain."""


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin primality test, valid for all m < 2**64."""
    if m < 2:
        return False
    for sp in _MR_WITNESSES:
        if m % sp == 0:
            return m == sp
    d, r = m - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# dense univariate polynomial helpers over F_p (coefficient lists, low first)

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul_mod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    # reduce by the monic modulus
    dm = len(mod) - 1
    for t in range(len(out) - 1, dm - 1, -1):
        c = out[t]
        if c:
            out[t] = 0
            for j in range(dm):
                out[t - dm + j] = (out[t - dm + j] - c * mod[j]) % p
    return _poly_trim(out)


def _poly_pow_x(e, mod, p):
    """x^e mod the monic polynomial `mod`, coefficients over F_p."""
    result, base = [1], [0, 1]
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, mod, p)
        base = _poly_mul_mod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b with b made monic
        inv_lead = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and a:
            c = a[-1] * inv_lead % p
            shift = len(a) - len(b)
            for j, bj in enumerate(b):
                a[shift + j] = (a[shift + j] - c * bj) % p
            _poly_trim(a)
        a, b = b, a
    return a


def _poly_sub_x(a, p):
    """a(x) - x as a trimmed coefficient list."""
    out = list(a) + [0] * max(0, 2 - len(a))
    out[1] = (out[1] - 1) % p
    return _poly_trim(out)


def _is_irreducible(mod, p):
    """Rabin test for a monic polynomial over F_p."""
    n = len(mod) - 1
    if n <= 0:
        return False
    if _poly_sub_x(_poly_pow_x(p**n, mod, p), p):
        return False
    for ell in _prime_factors(n):
        diff = _poly_sub_x(_poly_pow_x(p ** (n // ell), mod, p), p)
        g = _poly_gcd(diff, list(mod), p)
        if len(g) != 1:
            return False
    return True


def first_irreducible(p: int, n: int) -> tuple[int, ...]:
    """First irreducible monic degree-n polynomial over F_p.

    Candidates x^n + c are ordered by the base-p encoding of the lower
    coefficient vector c, so the choice is deterministic.
    """
    for enc in range(p**n):
        coeffs = []
        e = enc
        for _ in range(n):
            coeffs.append(e % p)
            e //= p
        mod = coeffs + [1]
        if _is_irreducible(mod, p):
            return tuple(mod)
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")  # unreachable


# ---------------------------------------------------------------------------


class Field:
    """Descriptor of the finite field F_q with q = p^n (see module docstring).

    Instances are immutable after construction and safe to share across
    workers; the lazily built lookup tables are write-once.
    """

    def __init__(self, p: int, n: int = 1):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if not 1 <= n <= MAX_EXT_DEGREE:
            raise FieldError(f"extension degree {n} outside 1..{MAX_EXT_DEGREE}")
        q = p**n
        if q > MAX_Q:
            raise FieldError(f"field size {p}^{n} exceeds 2^63")
        self.p = p
        self.n = n
        self.q = q
        self.modulus = first_irreducible(p, n) if n > 1 else None
        if self.modulus is not None:
            # x^(n+t) mod modulus for t = 0..n-2, used by multiplication
            red = [[(-c) % p for c in self.modulus[:n]]]
            for _ in range(n - 2):
                prev = red[-1]
                nxt = [0] + prev[:-1]
                top = prev[-1]
                if top:
                    for j in range(n):
                        nxt[j] = (nxt[j] + top * red[0][j]) % p
                red.append(nxt)
            self._red = red
        self._exp = None
        self._log = None
        self._mul_table = None
        self._add_table = None

    # -- identity ------------------------------------------------------

    def __repr__(self):
        return f"Field(p={self.p}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash((self.p, self.n))

    def to_json(self):
        return {"p": self.p, "n": self.n,
                "modulus": list(self.modulus) if self.modulus else None}

    # -- encoding helpers ----------------------------------------------

    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return out

    def encode(self, coeffs) -> int:
        e = 0
        for c in reversed(list(coeffs)):
            e = e * self.p + c % self.p
        return e

    def element(self, value) -> "FieldElement":
        """Coerce an integer (reduced mod p, as a constant) or FieldElement."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        return FieldElement(self, value % self.p)

    def from_encoding(self, enc: int) -> "FieldElement":
        if not 0 <= enc < self.q:
            raise FieldError(f"encoding {enc} outside [0, {self.q})")
        return FieldElement(self, enc)

    def gen(self) -> "FieldElement":
        """The residue of x in F_p[x]/(modulus); only for n > 1."""
        if self.n == 1:
            raise FieldError("prime field has no polynomial generator")
        return FieldElement(self, self.p)

    def elements(self):
        for e in range(self.q):
            yield FieldElement(self, e)

    # -- scalar arithmetic on encodings --------------------------------

    def int_(self, k: int) -> int:
        """Encoding of the integer k (a prime-subfield constant)."""
        return k % self.p

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.encode([x + y for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.encode([-c for c in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        p, n = self.p, self.n
        ca, cb = self.coeffs(a), self.coeffs(b)
        conv = [0] * (2 * n - 1)
        for i, ai in enumerate(ca):
            if ai:
                for j, bj in enumerate(cb):
                    conv[i + j] = (conv[i + j] + ai * bj) % p
        for t in range(2 * n - 2, n - 1, -1):
            c = conv[t]
            if c:
                conv[t] = 0
                row = self._red[t - n]
                for j in range(n):
                    conv[j] = (conv[j] + c * row[j]) % p
        return self.encode(conv[:n])

    def pow_(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.n == 1:
            return pow(a, e, self.p)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow_(a, self.q - 2)

    def quadratic_character(self, a: int) -> int:
        """0 for a = 0, +1 for nonzero squares, -1 otherwise (odd char only)."""
        if self.p == 2:
            raise FieldError("quadratic character is undefined in characteristic 2")
        if a == 0:
            return 0
        r = self.pow_(a, (self.q - 1) // 2)
        if r == 1:
            return 1
        if r == self.neg(1):
            return -1
        raise AssertionError("Euler criterion returned a non-unit")

    def sqrt(self, a: int) -> int | None:
        """A square root of a, or None when a is a nonsquare (odd char)."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow_(a, self.q // 2)
        if self.quadratic_character(a) == -1:
            return None
        if self.q <= MAX_TABLE_Q:
            exp, log = self.exp_log_tables()
            k = int(log[a])
            # k is even because a is a square
            return int(exp[k // 2])
        for r in range(self.q):  # pragma: no cover - large-field fallback
            if self.mul(r, r) == a:
                return r
        return None

    # -- discrete log / lookup tables ----------------------------------

    def _find_generator(self) -> int:
        factors = _prime_factors(self.q - 1)
        checks = [(self.q - 1) // ell for ell in factors]
        for g in range(2, self.q):
            if all(self.pow_(g, e) != 1 for e in checks):
                return g
        raise AssertionError("no generator found")  # unreachable for q > 2

    def _scale_raw(self, c: int, arr: np.ndarray) -> np.ndarray:
        """arr * c elementwise without log tables (used to build them)."""
        p, n = self.p, self.n
        if n == 1:
            return arr * c % p
        cc = self.coeffs(c)
        digits = [(arr // p**i) % p for i in range(n)]
        full = [np.zeros_like(arr) for _ in range(2 * n - 1)]
        for i, ci in enumerate(cc):
            if ci:
                for k in range(n):
                    full[i + k] = (full[i + k] + ci * digits[k]) % p
        for t in range(2 * n - 2, n - 1, -1):
            ft = full[t]
            row = self._red[t - n]
            for j in range(n):
                if row[j]:
                    full[j] = (full[j] + row[j] * ft) % p
        out = np.zeros_like(arr)
        pk = 1
        for j in range(n):
            out += full[j] * pk
            pk *= p
        return out

    def exp_log_tables(self):
        """(exp, log) discrete-log tables for q <= 2**20, built lazily.

        exp[k] is the encoding of g^k for a fixed generator g; log inverts
        exp on nonzero encodings (log[0] is a meaningless sentinel, callers
        must mask zeros first).
        """
        if self._exp is None:
            if self.q > MAX_TABLE_Q:
                raise FieldError(f"field of size {self.q} exceeds the table limit {MAX_TABLE_Q}")
            q = self.q
            if q == 2:  # trivial unit group
                self._exp = np.array([1], dtype=np.int64)
                self._log = np.zeros(2, dtype=np.int64)
                return self._exp, self._log
            g = self._find_generator()
            block = 1 << 12
            small = [1]
            for _ in range(min(block, q - 1) - 1):
                small.append(self.mul(small[-1], g))
            small = np.array(small, dtype=np.int64)
            exp = np.empty(q - 1, dtype=np.int64)
            g_block = self.pow_(g, block)
            cur = 1
            pos = 0
            while pos < q - 1:
                seg = min(block, q - 1 - pos)
                if cur == 1:
                    exp[pos:pos + seg] = small[:seg]
                else:
                    exp[pos:pos + seg] = self._scale_raw(cur, small[:seg])
                cur = self.mul(cur, g_block)
                pos += seg
            log = np.zeros(q, dtype=np.int64)
            log[exp] = np.arange(q - 1, dtype=np.int64)
            self._exp, self._log = exp, log
        return self._exp, self._log

    def mul_table(self) -> np.ndarray:
        """Full q x q multiplication table of encodings (small fields only)."""
        if self._mul_table is None:
            if self.q > 4096:
                raise FieldError("multiplication table limited to q <= 4096")
            exp, log = self.exp_log_tables()
            a = np.arange(self.q, dtype=np.int64)
            aa, bb = np.meshgrid(a, a, indexing="ij")
            self._mul_table = self.v_mul(aa, bb)
        return self._mul_table

    def add_table(self) -> np.ndarray:
        if self._add_table is None:
            if self.q > 4096:
                raise FieldError("addition table limited to q <= 4096")
            a = np.arange(self.q, dtype=np.int64)
            aa, bb = np.meshgrid(a, a, indexing="ij")
            self._add_table = self.v_add(aa, bb)
        return self._add_table

    # -- vectorised arithmetic on int64 arrays of encodings -------------

    def v_add(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        out = np.zeros_like(a + b)
        pk = 1
        for _ in range(self.n):
            out += ((a // pk + b // pk) % p) * pk
            pk *= p
        return out

    def v_neg(self, a):
        if self.n == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy() if isinstance(a, np.ndarray) else a
        p = self.p
        out = np.zeros_like(a)
        pk = 1
        for _ in range(self.n):
            out += ((p - a // pk % p) % p) * pk
            pk *= p
        return out

    def v_sub(self, a, b):
        return self.v_add(a, self.v_neg(b))

    def v_mul(self, a, b):
        if self.n == 1:
            return a * b % self.p
        exp, log = self.exp_log_tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        m = (a != 0) & (b != 0)
        s = log[np.broadcast_to(a, out.shape)[m]] + log[np.broadcast_to(b, out.shape)[m]]
        s[s >= self.q - 1] -= self.q - 1
        out[m] = exp[s]
        return out

    def v_sq(self, a):
        return self.v_mul(a, a)

    def v_scale(self, c: int, a):
        """Multiply an array of encodings by the fixed element c."""
        if c == 0:
            return np.zeros_like(a)
        if c == 1:
            return a.copy()
        if self.n == 1:
            return a * c % self.p
        exp, log = self.exp_log_tables()
        lc = int(log[c])
        out = np.zeros_like(a)
        m = a != 0
        s = log[a[m]] + lc
        s[s >= self.q - 1] -= self.q - 1
        out[m] = exp[s]
        return out

    def v_inv(self, a):
        if np.any(a == 0):
            raise ZeroDivisionError("inversion of zero field element")
        exp, log = self.exp_log_tables()
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def v_chi(self, a):
        """Vectorised quadratic character, values in {-1, 0, 1} (odd char)."""
        if self.p == 2:
            raise FieldError("quadratic character is undefined in characteristic 2")
        _, log = self.exp_log_tables()
        out = np.where(log[a] % 2 == 0, 1, -1).astype(np.int64)
        out[a == 0] = 0
        return out

    def v_poly(self, coeffs: list[int], x):
        """Evaluate sum(coeffs[k] * x^k) by Horner; coeffs are encodings."""
        if not coeffs:
            return np.zeros_like(x)
        acc = np.full_like(x, coeffs[-1])
        for c in reversed(coeffs[:-1]):
            acc = self.v_mul(acc, x)
            if c:
                acc = self.v_add(acc, np.full_like(x, c))
        return acc


class FieldElement:
    """An element of a Field, wrapping its canonical integer encoding."""

    __slots__ = ("field", "enc")

    def __init__(self, field: Field, enc: int):
        self.field = field
        self.enc = enc

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements belong to different fields")
            return other.enc
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.field, self.field.add(self.enc, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.field, self.field.sub(self.enc, o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.field, self.field.mul(self.enc, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.field, self.field.mul(self.enc, self.field.inv(o)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.enc))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_(self.enc, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.enc))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.enc == other % self.field.p
        return isinstance(other, FieldElement) and other.field == self.field and other.enc == self.enc

    def __hash__(self):
        return hash((self.field, self.enc))

    def __bool__(self):
        return self.enc != 0

    def __int__(self):
        return self.enc

    def __repr__(self):
        if self.field.n == 1:
            return f"F{self.field.q}({self.enc})"
        terms = []
        for i, c in enumerate(self.field.coeffs(self.enc)):
            if c:
                terms.append(str(c) if i == 0 else (f"x^{i}" if c == 1 else f"{c}*x^{i}").replace("x^1", "x"))
        return f"F{self.field.q}({' + '.join(terms) or '0'})"


@functools.lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> Field:
    """Construct (and cache) the field F_{p^n}."""
    return Field(p, n)


def quadratic_character(a: FieldElement) -> int:
    """Generalised Legendre symbol of a field element (odd characteristic)."""
    return a.field.quadratic_character(a.enc)


# ---------------------------------------------------------------------------
# ternary conic classification, odd characteristic


@dataclass(frozen=True)
class ConicClass:
    """Isomorphism class of a ternary quadratic form's zero locus in P^2.

    rank 3: smooth conic, q+1 points; rank 2 split: two rational lines,
    2q+1; rank 2 nonsplit: conjugate lines meeting in one rational point,
    1; rank 1: double line, q+1; rank 0: all of P^2, q^2+q+1.
    """

    rank: int
    split: bool | None
    point_count: int


def _conic_point_count(rank: int, split: bool | None, q: int) -> int:
    if rank == 3:
        return q + 1
    if rank == 2:
        return 2 * q + 1 if split else 1
    if rank == 1:
        return q + 1
    return q * q + q + 1


def classify_conic(field: Field, coefficients) -> ConicClass:
    """Classify a*x^2 + b*y^2 + c*u^2 + d*xy + e*xu + f*yu over F_q, q odd.

    Coefficients may be FieldElements or plain integers; integers are
    coerced as prime-subfield constants (reduced mod p).  The rank is that
    of the associated symmetric matrix; a rank-2 form splits into two
    rational lines exactly when minus the product of the two nonzero
    entries of a congruent diagonal form is a square.
    """
    encs = tuple(x.enc if isinstance(x, FieldElement) else field.int_(x)
                 for x in coefficients)
    return classify_conic_encs(field, encs)


def classify_conic_encs(field: Field, coefficient_encodings) -> ConicClass:
    """classify_conic on raw element encodings (no coercion)."""
    if field.p == 2:
        raise FieldError("conic classification requires odd characteristic")
    a, b, c, d, e, f = (int(x) for x in coefficient_encodings)
    h = field.inv(field.int_(2))
    mm = field.mul
    m = [[a, mm(d, h), mm(e, h)],
         [mm(d, h), b, mm(f, h)],
         [mm(e, h), mm(f, h), c]]
    diag = _congruence_diagonalize(field, m)
    nonzero = [x for x in diag if x != 0]
    rank = len(nonzero)
    split = None
    if rank == 2:
        split = field.quadratic_character(field.neg(mm(nonzero[0], nonzero[1]))) == 1
    return ConicClass(rank, split, _conic_point_count(rank, split, field.q))


def _congruence_diagonalize(field: Field, m) -> list[int]:
    """Diagonalise a symmetric 3x3 matrix over F_q (odd char) by congruence."""
    mm, add, neg = field.mul, field.add, field.neg

    def add_row_col(i, j):  # row_i += row_j, col_i += col_j
        for k in range(3):
            m[i][k] = add(m[i][k], m[j][k])
        for k in range(3):
            m[k][i] = add(m[k][i], m[k][j])

    def swap(i, j):
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]

    for step in range(3):
        if m[step][step] == 0:
            pivot = next((k for k in range(step + 1, 3) if m[k][k] != 0), None)
            if pivot is not None:
                swap(step, pivot)
            else:
                pair = next(((i, j) for i in range(step, 3) for j in range(i + 1, 3)
                             if m[i][j] != 0), None)
                if pair is None:
                    break
                add_row_col(pair[0], pair[1])  # makes m[i][i] = 2*m[i][j] != 0
                if pair[0] != step:
                    swap(step, pair[0])
        d = m[step][step]
        dinv = field.inv(d)
        for r in range(step + 1, 3):
            if m[r][step] != 0:
                factor = neg(mm(m[r][step], dinv))
                for k in range(3):
                    m[r][k] = add(m[r][k], mm(factor, m[step][k]))
                for k in range(3):
                    m[k][r] = add(m[k][r], mm(factor, m[k][step]))
    return [m[0][0], m[1][1], m[2][2]]
