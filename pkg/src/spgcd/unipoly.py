"""Dense univariate polynomial arithmetic over the active field.

Polynomials are coefficient vectors, low degree first, no trailing zeros.
Two lanes share one public API:

  * generic lane -- python lists of field elements, any field;
  * fast lane    -- numpy int64 vectors for prime fields with p < 2^31
                    (products of residues fit int64), used automatically.

The fast-lane GCD switches from the classical remainder loop to a block
variant for large degrees: quotients are extracted from a window of the top
2h+1 coefficients (they agree with the true quotients while remainder degrees
stay in the window's upper half) and the accumulated 2x2 transition matrix is
applied to the full vectors with batched multiplications.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import DivisionByZero, InvalidInput, RootDeficit, SingularSystem
from .field import ExtField, Field, PrimeField

_NP_MAX_P = 1 << 30  # two scaled subtractions must stay inside int64
_FFT_MAX_P = 1 << 24  # 8-bit digit split keeps FFT rounding below 1/4
_FFT_MIN_SIZE = 24_000  # MAC count under which np.convolve wins
_BLOCK_H = 512  # Lehmer window half-size
_BLOCK_MIN_DEG = 3 * _BLOCK_H  # classical loop below this degree


def degree(f) -> int:
    return len(f) - 1


def trim(f):
    """Drop trailing zeros (works on lists and 1-d int arrays)."""
    n = len(f)
    while n > 0 and not _nonzero(f[n - 1]):
        n -= 1
    return f[:n]


def _nonzero(c) -> bool:
    if isinstance(c, tuple):
        return any(c)
    return bool(c)


def poly_eval(field: Field, f, x):
    acc = field.zero
    for c in reversed(list(f)):
        acc = field.add(field.mul(acc, x), c)
    return acc


def poly_mul(field: Field, a, b):
    if not len(a) or not len(b):
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if _nonzero(ai):
            for j, bj in enumerate(b):
                out[i + j] = field.add(out[i + j], field.mul(ai, bj))
    return trim(out)


def poly_divmod(field: Field, a, b):
    b = trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lc = field.inv(b[-1])
    q = [field.zero] * max(len(r) - db, 0)
    for k in range(len(r) - db - 1, -1, -1):
        c = field.mul(r[k + db], inv_lc)
        if _nonzero(c):
            q[k] = c
            for j in range(db + 1):
                r[k + j] = field.sub(r[k + j], field.mul(c, b[j]))
    return trim(q), trim(r[:db])


def poly_mulmod(field: Field, a, b, f):
    _, r = poly_divmod(field, poly_mul(field, a, b), f)
    return r


def poly_powmod(field: Field, a, e: int, f):
    result = [field.one]
    base = list(a)
    while e:
        if e & 1:
            result = poly_mulmod(field, result, base, f)
        base = poly_mulmod(field, base, base, f)
        e >>= 1
    return result


def monic(field: Field, f):
    f = trim(f if isinstance(f, list) else list(f))
    if not f:
        return f
    inv = field.inv(f[-1])
    return [field.mul(c, inv) for c in f]


# ---------------------------------------------------------------------------
# fast-lane helpers (numpy int64 over F_p, p < 2^31)
# ---------------------------------------------------------------------------


def _np_trim(a):
    n = len(a)
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _mul_fft(a, b, p):
    """Exact product mod p via real FFT on 8-bit digit planes (p < 2^24).

    A rounding residual above 0.25 would signal precision loss; the digit
    split keeps the true bound orders of magnitude below that, and the
    assertion turns any violation into a hard error rather than bad data.
    """
    n = len(a) + len(b) - 1
    N = 1 << (n - 1).bit_length()
    planes_a = (a & 0xFF, (a >> 8) & 0xFF, a >> 16)
    planes_b = (b & 0xFF, (b >> 8) & 0xFF, b >> 16)
    fa = [np.fft.rfft(x, N) for x in planes_a]
    fb = [np.fft.rfft(x, N) for x in planes_b]
    out = np.zeros(n, dtype=np.int64)
    shift = 1
    for k in range(5):
        acc = None
        for i in range(max(0, k - 2), min(2, k) + 1):
            t = fa[i] * fb[k - i]
            acc = t if acc is None else acc + t
        c = np.fft.irfft(acc, N)[:n]
        r = np.rint(c)
        if np.max(np.abs(c - r)) > 0.25:
            raise ArithmeticError("fft rounding out of tolerance")
        out += (r.astype(np.int64) % p) * shift % p
        shift = shift * 256 % p
    return out % p


def _np_mul(p, a, b):
    """Product of int64 coefficient vectors mod p, overflow-safe."""
    if not len(a) or not len(b):
        return np.zeros(0, dtype=np.int64)
    la, lb = len(a), len(b)
    if p < _FFT_MAX_P and la * lb >= _FFT_MIN_SIZE and la + lb - 1 >= 64:
        try:
            return _mul_fft(a, b, p)
        except ArithmeticError:
            pass
    # np.convolve accumulates up to min(la, lb) products of size < p^2
    cap = (1 << 62) // (p * p) + 1
    short, long_ = (a, b) if la <= lb else (b, a)
    if len(short) <= cap:
        return np.convolve(short, long_) % p
    out = np.zeros(la + lb - 1, dtype=np.int64)
    for k in range(0, len(short), cap):
        piece = short[k : k + cap]
        out[k : k + len(piece) + len(long_) - 1] += np.convolve(piece, long_) % p
        out %= p
    return out


def _np_quotient(p, w0, d0, w1, d1):
    """Full quotient of w0 by w1 (degrees d0 >= d1) as an int64 vector."""
    g = d0 - d1
    inv = pow(int(w1[d1]), p - 2, p)
    if g == 0:
        return np.array([int(w0[d0]) * inv % p], dtype=np.int64)
    if g == 1:
        q1 = int(w0[d0]) * inv % p
        below = int(w1[d1 - 1]) if d1 >= 1 else 0
        c = (int(w0[d0 - 1]) - q1 * below) % p
        return np.array([c * inv % p, q1], dtype=np.int64)
    # wide gap: vectorized long division, one fused pass per quotient coefficient
    top = w0[: d0 + 1].copy()
    div = w1[: d1 + 1]
    q = np.zeros(g + 1, dtype=np.int64)
    for k in range(g, -1, -1):
        c = int(top[k + d1]) % p
        if c:
            c = c * inv % p
            q[k] = c
            seg = top[k : k + d1 + 1]
            seg -= c * div
            seg %= p
    return q


def _np_scan_degree(row, start):
    d = start
    while d >= 0 and row[d] == 0:
        d -= 1
    return d


def _np_euclid_window(p, w0, d0, w1, d1, h):
    """Euclid with transition-matrix recording on a coefficient window.

    Steps run while the divisor's window degree stays >= h, which keeps the
    computed quotients equal to the true ones.  Returns the four matrix rows
    (u_prev, v_prev, u_cur, v_cur) and the number of steps taken.
    """
    W = len(w0) + 2
    P = np.zeros((3, W), dtype=np.int64)
    C = np.zeros((3, W), dtype=np.int64)
    N = np.zeros((3, W), dtype=np.int64)
    P[0, : len(w0)] = w0
    C[0, : len(w1)] = w1
    P[1, 0] = 1
    C[2, 0] = 1
    steps = 0
    while d1 >= h:
        q = _np_quotient(p, P[0], d0, C[0], d1)
        if len(q) == 2:
            q0, q1 = int(q[0]), int(q[1])
            np.multiply(C, q0, out=N)
            np.subtract(P, N, out=N)
            if q1:
                N[:, 1:] -= q1 * C[:, :-1]
            N %= p
        elif len(q) == 1:
            np.multiply(C, int(q[0]), out=N)
            np.subtract(P, N, out=N)
            N %= p
        else:
            width = max(d1 + 1, steps + 1)
            for row in range(3):
                t = _np_mul(p, q, C[row, :width])
                N[row] = P[row]
                N[row, : len(t)] -= t
            N %= p
        P, C, N = C, N, P
        d0, d1 = d1, _np_scan_degree(C[0], d1 - 1)
        steps += 1
    return (P[1], P[2], C[1], C[2]), steps


def _np_classical_gcd(p, r0, r1):
    """Plain remainder loop; returns the last nonzero remainder (not monic)."""
    d0, d1 = len(r0) - 1, len(r1) - 1
    buf0 = np.zeros(max(d0, d1) + 2, dtype=np.int64)
    buf1 = np.zeros(max(d0, d1) + 2, dtype=np.int64)
    buf0[: d0 + 1] = r0
    buf1[: d1 + 1] = r1
    if d0 < d1:
        buf0, buf1, d0, d1 = buf1, buf0, d1, d0
    while d1 >= 0:
        q = _np_quotient(p, buf0, d0, buf1, d1)
        seg = buf0[: d1 + len(q)]
        if len(q) == 2:
            q0, q1 = int(q[0]), int(q[1])
            seg[: d1 + 1] -= q0 * buf1[: d1 + 1]
            seg[1 : d1 + 2] -= q1 * buf1[: d1 + 1]
        elif len(q) == 1:
            seg[: d1 + 1] -= int(q[0]) * buf1[: d1 + 1]
        else:
            seg -= _np_mul(p, q, buf1[: d1 + 1])
        seg %= p
        buf0, buf1 = buf1, buf0
        d0, d1 = d1, _np_scan_degree(buf1[0 : d0 + 1], d0 - 1)
    return buf0[: d0 + 1].copy()


def _np_monic_gcd(p, u, v):
    r0 = _np_trim(np.asarray(u, dtype=np.int64) % p)
    r1 = _np_trim(np.asarray(v, dtype=np.int64) % p)
    if len(r0) < len(r1):
        r0, r1 = r1, r0
    if not len(r1):
        if not len(r0):
            raise InvalidInput("gcd(0, 0) undefined")
        return r0 * pow(int(r0[-1]), p - 2, p) % p
    h = _BLOCK_H
    while len(r1) - 1 >= _BLOCK_MIN_DEG:
        d0, d1 = len(r0) - 1, len(r1) - 1
        tau = d0 - 2 * h
        if d1 <= tau:
            # wide degree gap: one full division, then continue
            q = _np_quotient(p, r0, d0, r1, d1)
            t = _np_mul(p, q, r1)
            nr = r0.copy()
            nr[: len(t)] -= t
            r0, r1 = r1, _np_trim(nr % p)
            continue
        (m00, m01, m10, m11), steps = _np_euclid_window(
            p, r0[tau:], d0 - tau, r1[tau:], d1 - tau, h
        )
        if steps == 0:
            q = _np_quotient(p, r0, d0, r1, d1)
            t = _np_mul(p, q, r1)
            nr = r0.copy()
            nr[: len(t)] -= t
            r0, r1 = r1, _np_trim(nr % p)
            continue
        nr0 = _np_add(p, _np_mul(p, _np_trim(m00), r0), _np_mul(p, _np_trim(m01), r1))
        nr1 = _np_add(p, _np_mul(p, _np_trim(m10), r0), _np_mul(p, _np_trim(m11), r1))
        if len(nr0) >= len(r0):
            raise ArithmeticError("window reduction made no progress")
        r0, r1 = nr0, nr1
        if len(r0) < len(r1):
            r0, r1 = r1, r0
    if len(r1):
        r0 = _np_classical_gcd(p, r0, r1)
    return r0 * pow(int(r0[-1]), p - 2, p) % p


def _np_add(p, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] += b
    return _np_trim(out % p)


# ---------------------------------------------------------------------------
# extension-field fast lane: coefficients as (len, k) int64 matrices; scalar
# multiplication is a linear map over F_p, applied as one matmul per step.
# ---------------------------------------------------------------------------

_ZSTACK_CACHE: dict = {}


def _ext_zstack(field: ExtField):
    """Stack of k multiplication-by-z^i matrices; mul-by-a = tensordot(a, Z)."""
    key = (field.p, field.modulus)
    Z = _ZSTACK_CACHE.get(key)
    if Z is None:
        k = field.k
        Z = np.zeros((k, k, k), dtype=np.int64)
        for i in range(k):
            zi = tuple(1 if j == i else 0 for j in range(k))
            for j in range(k):
                zj = tuple(1 if l == j else 0 for l in range(k))
                Z[i, :, j] = field.mul(zi, zj)
        _ZSTACK_CACHE[key] = Z
    return Z


def _ext_np_monic_gcd(field: ExtField, u, v):
    p, k = field.p, field.k
    Z = _ext_zstack(field)
    r0 = np.array([list(c) for c in u], dtype=np.int64).reshape(-1, k)
    r1 = np.array([list(c) for c in v], dtype=np.int64).reshape(-1, k)

    def ext_trim(m):
        n = len(m)
        while n > 0 and not m[n - 1].any():
            n -= 1
        return m[:n]

    r0, r1 = ext_trim(r0), ext_trim(r1)
    while len(r1):
        d0, d1 = len(r0) - 1, len(r1) - 1
        if d0 < d1:
            r0, r1 = r1, r0
            continue
        qs = field.mul(tuple(int(x) for x in r0[d0]), field.inv(tuple(int(x) for x in r1[d1])))
        M = np.tensordot(np.array(qs, dtype=np.int64), Z, axes=([0], [0])) % p
        prod = r1 @ M.T % p
        r0[d0 - d1 : d0 + 1] = (r0[d0 - d1 : d0 + 1] - prod) % p
        r0 = ext_trim(r0)
        if len(r0) - 1 < d1:
            r0, r1 = r1, r0
    inv = field.inv(tuple(int(x) for x in r0[-1]))
    return [field.mul(tuple(int(x) for x in row), inv) for row in r0]


def _generic_monic_gcd(field: Field, u, v):
    r0, r1 = trim(list(u)), trim(list(v))
    while r1:
        d0, d1 = len(r0) - 1, len(r1) - 1
        if d0 < d1:
            r0, r1 = r1, r0
            continue
        q = field.mul(r0[-1], field.inv(r1[-1]))
        shift = d0 - d1
        for j in range(d1 + 1):
            r0[shift + j] = field.sub(r0[shift + j], field.mul(q, r1[j]))
        r0 = trim(r0)
        if len(r0) - 1 < d1:
            r0, r1 = r1, r0
    return monic(field, r0)


def monic_gcd(field: Field, u, v):
    """Monic generator of the ideal (u, v); classical Euclid, block-accelerated
    on large prime-field inputs.  Not both inputs may be zero."""
    u_has = any(_nonzero(c) for c in u)
    v_has = any(_nonzero(c) for c in v)
    if not u_has and not v_has:
        raise InvalidInput("gcd(0, 0) undefined")
    if not u_has:
        return monic(field, v) if isinstance(v, list) else _np_monic(field, v)
    if not v_has:
        return monic(field, u) if isinstance(u, list) else _np_monic(field, u)
    if isinstance(field, PrimeField) and field.p < _NP_MAX_P:
        g = _np_monic_gcd(field.p, np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64))
        return g if isinstance(u, np.ndarray) or isinstance(v, np.ndarray) else [int(c) for c in g]
    if isinstance(field, ExtField) and (field.p - 1) ** 2 * field.k < (1 << 62) and len(u) + len(v) > 40:
        return _ext_np_monic_gcd(field, list(u), list(v))
    return _generic_monic_gcd(field, u, v)


def _np_monic(field, f):
    f = _np_trim(np.asarray(f, dtype=np.int64) % field.p)
    if not len(f):
        return f
    return f * pow(int(f[-1]), field.p - 2, field.p) % field.p


# ---------------------------------------------------------------------------
# Ben-Or/Tiwari building blocks
# ---------------------------------------------------------------------------


def berlekamp_massey(field: Field, seq):
    """Minimal monic polynomial annihilating the linear recurrence of seq.

    For seq v_i = sum_j c_j m_j^i with distinct nonzero m_j and c_j != 0 the
    result is prod_j (z - m_j).  Returns [one] for the all-zero sequence.
    """
    seq = list(seq)
    C = [field.one]
    B = [field.one]
    L = 0
    m = 1
    b = field.one
    for n, s in enumerate(seq):
        d = s
        for i in range(1, L + 1):
            if i < len(C):
                d = field.add(d, field.mul(C[i], seq[n - i]))
        if not _nonzero(d):
            m += 1
            continue
        coef = field.mul(d, field.inv(b))
        if 2 * L <= n:
            T = list(C)
            if len(C) < len(B) + m:
                C = C + [field.zero] * (len(B) + m - len(C))
            for i, bi in enumerate(B):
                C[i + m] = field.sub(C[i + m], field.mul(coef, bi))
            L = n + 1 - L
            B = T
            b = d
            m = 1
        else:
            if len(C) < len(B) + m:
                C = C + [field.zero] * (len(B) + m - len(C))
            for i, bi in enumerate(B):
                C[i + m] = field.sub(C[i + m], field.mul(coef, bi))
            m += 1
    C = C + [field.zero] * (L + 1 - len(C))
    lam = list(reversed(C[: L + 1]))
    return lam


def _equal_degree_split(field: Field, g, rng: random.Random):
    """Split a product of distinct linear factors into two proper factors."""
    q = field.order
    while True:
        if q % 2 == 1:
            delta = field.rand(rng)
            h = list(poly_powmod(field, [delta, field.one], (q - 1) // 2, g))
            if not h:
                h = [field.zero]
            h[0] = field.sub(h[0], field.one)
            h = trim(h)
        else:
            # char 2: trace map sum of (c x)^(2^i) over i < log2(q)
            c = field.rand_unit(rng)
            term = [field.zero, c]
            acc = list(term)
            for _ in range(q.bit_length() - 2):
                term = poly_mulmod(field, term, term, g)
                n = max(len(acc), len(term))
                acc = [
                    field.add(
                        acc[i] if i < len(acc) else field.zero,
                        term[i] if i < len(term) else field.zero,
                    )
                    for i in range(n)
                ]
            acc = trim(acc)
            h = acc
        if not h:
            continue
        w = monic_gcd(field, h, g)
        if 0 < len(w) - 1 < len(g) - 1:
            return w


def find_roots(field: Field, f, rng: random.Random):
    """All roots of f in the field; f must be squarefree with every root in
    the field, else RootDeficit is raised (a bad evaluation point upstream)."""
    f = monic(field, list(f))
    if not f:
        raise InvalidInput("zero polynomial")
    n = len(f) - 1
    if n == 0:
        return []
    # keep only the part that splits into distinct linear factors
    xq = poly_powmod(field, [field.zero, field.one], field.order, f)
    xq = list(xq) + [field.zero] * max(0, 2 - len(xq))
    xq[1] = field.sub(xq[1], field.one)
    diff = trim(xq)
    g = monic_gcd(field, diff, f) if diff else monic(field, f)
    if len(g) - 1 < n:
        raise RootDeficit(f"only {len(g) - 1} of {n} roots lie in the field")
    roots = []
    stack = [g]
    while stack:
        h = stack.pop()
        d = len(h) - 1
        if d == 0:
            continue
        if d == 1:
            roots.append(field.neg(h[0]))
            continue
        w = _equal_degree_split(field, h, rng)
        other, rem = poly_divmod(field, h, w)
        if rem:
            raise ArithmeticError("split factor does not divide")
        stack.append(w)
        stack.append(monic(field, other))
    if len(roots) != n:
        raise RootDeficit(f"found {len(roots)} of {n} roots")
    return roots


def solve_transposed_vandermonde(field: Field, nodes, values):
    """Solve sum_j c_j m_j^i = v_i for i = 1..t; nodes distinct and nonzero."""
    t = len(nodes)
    if len(values) < t:
        raise InvalidInput("need at least t values")
    if t == 0:
        return []
    if len(set(nodes)) != t or any(not _nonzero(m) for m in nodes):
        raise SingularSystem("nodes must be distinct and nonzero")
    # master polynomial prod (z - m_j)
    P = [field.one]
    for m in nodes:
        nxt = [field.zero] * (len(P) + 1)
        for i, c in enumerate(P):
            nxt[i + 1] = field.add(nxt[i + 1], c)
            nxt[i] = field.sub(nxt[i], field.mul(c, m))
        P = nxt
    out = []
    for m in nodes:
        # Q = P / (z - m) by synthetic division; then c~ = Q(v) / Q(m)
        Q = [field.zero] * t
        acc = P[t]
        for i in range(t - 1, -1, -1):
            Q[i] = acc
            acc = field.add(P[i], field.mul(acc, m))
        denom = poly_eval(field, Q, m)
        if not _nonzero(denom):
            raise SingularSystem("repeated node")
        num = field.zero
        for i in range(t):
            num = field.add(num, field.mul(Q[i], values[i]))
        c_scaled = field.mul(num, field.inv(denom))
        out.append(field.mul(c_scaled, field.inv(m)))
    return out
