"""Univariate polynomials over a table-backed field.

Polynomials are little-endian integer arrays of element codes with no
trailing zeros; the zero polynomial is the empty array.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import ParseError


def trim(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1].copy() if nz.size else np.zeros(0, dtype=np.int64)


def deg(a) -> int:
    return len(trim(a)) - 1


def add(F, a, b) -> np.ndarray:
    n = max(len(a), len(b))
    x = np.zeros(n, dtype=np.int64)
    y = np.zeros(n, dtype=np.int64)
    x[: len(a)] = a
    y[: len(b)] = b
    return trim(F.add[x, y])


def sub(F, a, b) -> np.ndarray:
    n = max(len(a), len(b))
    x = np.zeros(n, dtype=np.int64)
    y = np.zeros(n, dtype=np.int64)
    x[: len(a)] = a
    y[: len(b)] = b
    return trim(F.sub[x, y])


def scale(F, c: int, a) -> np.ndarray:
    return trim(F.mul[c, np.asarray(a, dtype=np.int64)])


def mul(F, a, b) -> np.ndarray:
    a = trim(a)
    b = trim(b)
    if not a.size or not b.size:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, ai in enumerate(a):
        if ai:
            out[i : i + len(b)] = F.add[out[i : i + len(b)], F.mul[ai, b]]
    return trim(out)


def divmod_(F, a, b) -> tuple[np.ndarray, np.ndarray]:
    a = trim(a).copy()
    b = trim(b)
    if not b.size:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    inv_lead = F.inv[b[-1]]
    if len(a) - 1 < db:
        return np.zeros(0, dtype=np.int64), a
    qt = np.zeros(len(a) - db, dtype=np.int64)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            f = F.mul[c, inv_lead]
            qt[k - db] = f
            a[k - db : k + 1] = F.sub[a[k - db : k + 1], F.mul[f, b]]
    return trim(qt), trim(a[:db])


def mod(F, a, b) -> np.ndarray:
    return divmod_(F, a, b)[1]


def monic(F, a) -> np.ndarray:
    a = trim(a)
    if not a.size:
        return a
    return F.mul[F.inv[a[-1]], a]


def gcd(F, a, b) -> np.ndarray:
    a, b = trim(a), trim(b)
    while b.size:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def ext_gcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = np.array([1], dtype=np.int64), np.zeros(0, dtype=np.int64)
    t0, t1 = np.zeros(0, dtype=np.int64), np.array([1], dtype=np.int64)
    while r1.size:
        qt, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, qt, s1))
        t0, t1 = t1, sub(F, t0, mul(F, qt, t1))
    c = F.inv[r0[-1]]
    return scale(F, c, r0), scale(F, c, s0), scale(F, c, t0)


def powmod(F, a, e: int, m) -> np.ndarray:
    result = np.array([1], dtype=np.int64)
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return mod(F, result, m)


def x_pow(n: int) -> np.ndarray:
    out = np.zeros(n + 1, dtype=np.int64)
    out[n] = 1
    return out


def x_n_minus_1(F, n: int) -> np.ndarray:
    out = x_pow(n)
    out[0] = F.neg[1]
    return out


def evaluate(F, a, x: int) -> int:
    acc = 0
    for c in trim(a)[::-1]:
        acc = F.add[F.mul[acc, x], c]
    return int(acc)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F, f) -> bool:
    """Rabin's irreducibility test over F (size F.q)."""
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = x_pow(1)

    def frob_iter(k: int) -> np.ndarray:
        h = x
        for _ in range(k):
            h = powmod(F, h, F.q, f)
        return h

    if not np.array_equal(frob_iter(n), mod(F, x, f)):
        return False
    for ell in _prime_factors(n):
        h = sub(F, frob_iter(n // ell), x)
        if gcd(F, f, h).size != 1:
            return False
    return True


def first_irreducible(F, degree: int) -> np.ndarray:
    """Lexicographically first monic irreducible polynomial of the given degree."""
    for code in range(F.q**degree):
        f = np.zeros(degree + 1, dtype=np.int64)
        c = code
        for i in range(degree):
            f[i] = c % F.q
            c //= F.q
        f[degree] = 1
        if (degree == 1 or f[0]) and is_irreducible(F, f):
            return f
    raise RuntimeError("no irreducible polynomial found")


def to_str(a, var: str = "x") -> str:
    """Render as text, e.g. ``x^3+x+1``; coefficients are element codes."""
    a = trim(a)
    if not a.size:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = int(a[k])
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


_TERM = re.compile(r"^(?:(\d+)\*?)?(?:([a-z])(?:\^(\d+))?)?$")


def parse(text, F=None, var: str = "x") -> np.ndarray:
    """Parse ``"x^3+x+1"`` or a little-endian JSON list ``[1,1,0,1]``.

    With a field given, a leading ``-`` negates a term.
    """
    if isinstance(text, (list, tuple, np.ndarray)):
        return trim(np.asarray(text, dtype=np.int64))
    s = str(text).replace(" ", "")
    if s.startswith("["):
        import json

        return trim(np.asarray(json.loads(s), dtype=np.int64))
    if not s:
        raise ParseError("empty polynomial")
    s = s.replace("-", "+-")
    coeffs: dict[int, int] = {}
    for tok in filter(None, s.split("+")):
        neg = tok.startswith("-")
        tok = tok.lstrip("-")
        m = _TERM.match(tok)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ParseError(f"cannot parse term {tok!r}")
        if m.group(2) is not None and m.group(2) != var:
            raise ParseError(f"unexpected variable {m.group(2)!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        k = 0 if m.group(2) is None else int(m.group(3) or 1)
        if F is not None:
            if c >= F.q:
                raise ParseError(f"coefficient {c} outside field of size {F.q}")
            if neg:
                c = int(F.neg[c])
            coeffs[k] = int(F.add[coeffs.get(k, 0), c])
        else:
            if neg:
                raise ParseError("negative coefficients need a field")
            coeffs[k] = coeffs.get(k, 0) + c
    if not coeffs:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(max(coeffs) + 1, dtype=np.int64)
    for k, c in coeffs.items():
        out[k] = c
    return trim(out)
