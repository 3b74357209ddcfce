"""Prime fields F_p, extensions F_{p^k}, primitive elements, bounded discrete logs.

Elements of F_p are plain ints in [0, p); elements of F_{p^k} are k-tuples of
ints (coefficients of the residue polynomial, low degree first).  Fields are
immutable after construction and all operations are pure.
"""

from __future__ import annotations

import math
import random

from .errors import (
    DivisionByZero,
    FactorizationBudgetExceeded,
    InvalidInput,
    NotAPower,
)

MAX_MODULUS = 1 << 62  # products of two residues must fit double-width integers

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24 with the fixed base set."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random, max_iters: int) -> int | None:
    """One Brent-style rho round; returns a nontrivial factor or None."""
    if n % 2 == 0:
        return 2
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    x = ys = y
    it = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
            it += r
            if it > max_iters:
                return None
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def factorize(n: int, rng: random.Random | None = None, rho_iters: int = 2_000_000) -> dict[int, int]:
    """Prime factorization via trial division to 10^6 then Pollard rho.

    Raises FactorizationBudgetExceeded when a composite cofactor survives the
    rho iteration budget.
    """
    rng = rng or random.Random(0xF0)
    fac: dict[int, int] = {}
    for q in range(2, 1_000_001):
        if q * q > n:
            break
        while n % q == 0:
            fac[q] = fac.get(q, 0) + 1
            n //= q
    if n == 1:
        return fac
    stack = [n]
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            fac[m] = fac.get(m, 0) + 1
            continue
        g = None
        for _ in range(6):
            g = _pollard_rho(m, rng, rho_iters)
            if g is not None:
                break
        if g is None:
            raise FactorizationBudgetExceeded(f"cannot factor {m}")
        stack.append(g)
        stack.append(m // g)
    return fac


class PrimeField:
    """F_p with elements represented as ints in [0, p)."""

    __slots__ = ("p", "k", "order", "zero", "one")

    def __init__(self, p: int):
        if not (2 <= p < MAX_MODULUS):
            raise InvalidInput(f"modulus must lie in [2, 2^62), got {p}")
        if not is_probable_prime(p):
            raise InvalidInput(f"modulus {p} is not prime")
        self.p = p
        self.k = 1
        self.order = p
        self.zero = 0
        self.one = 1 % p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def embed(self, x: int) -> int:
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow_(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def rand(self, rng: random.Random):
        return rng.randrange(self.p)

    def rand_unit(self, rng: random.Random):
        return rng.randrange(1, self.p)


class ExtField:
    """F_{p^k} = F_p[z]/(Phi) with elements as k-tuples of ints.

    Phi is monic of degree k, coefficients low to high; irreducibility is the
    caller's responsibility (find_irreducible verifies its output).
    """

    __slots__ = ("p", "k", "order", "modulus", "zero", "one", "_red")

    def __init__(self, p: int, modulus: tuple):
        if not is_probable_prime(p):
            raise InvalidInput(f"characteristic {p} is not prime")
        k = len(modulus) - 1
        if k < 1 or modulus[-1] % p != 1:
            raise InvalidInput("modulus must be monic of degree >= 1")
        self.p = p
        self.k = k
        self.order = p**k
        self.modulus = tuple(c % p for c in modulus)
        self.zero = (0,) * k
        self.one = ((1 % p),) + (0,) * (k - 1)
        # z^(k+i) mod Phi for i = 0..k-2, as coefficient rows
        red = []
        row = [(-c) % p for c in self.modulus[:k]]
        red.append(tuple(row))
        for _ in range(k - 2):
            top = row[-1]
            row = [0] + row[:-1]
            if top:
                for j in range(k):
                    row[j] = (row[j] + top * red[0][j]) % p
            red.append(tuple(row))
        self._red = red

    def __repr__(self):
        return f"ExtField(p={self.p}, k={self.k})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("F", self.p, self.modulus))

    def embed(self, x: int) -> tuple:
        return (x % self.p,) + (0,) * (self.k - 1)

    def is_base(self, a: tuple) -> bool:
        return all(c == 0 for c in a[1:])

    def to_base(self, a: tuple) -> int:
        if not self.is_base(a):
            raise InvalidInput("element lies outside the prime subfield")
        return a[0]

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        full = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    full[i + j] += ai * bj
        for idx in range(2 * k - 2, k - 1, -1):
            c = full[idx] % p
            if c:
                row = self._red[idx - k]
                for j in range(k):
                    full[j] += c * row[j]
        return tuple(c % p for c in full[:k])

    def inv(self, a):
        if all(c % self.p == 0 for c in a):
            raise DivisionByZero("inverse of zero")
        p = self.p
        # extended Euclid on coefficient lists over F_p
        r0 = list(self.modulus)
        r1 = [c % p for c in a]
        t0, t1 = [0], [1]
        while True:
            while r1 and r1[-1] == 0:
                r1.pop()
            if len(r1) == 1:
                c = pow(r1[0], p - 2, p)
                out = [(x * c) % p for x in t1]
                out += [0] * (self.k - len(out))
                return tuple(out[: self.k])
            d0, d1 = len(r0) - 1, len(r1) - 1
            if d0 < d1:
                r0, r1, t0, t1 = r1, r0, t1, t0
                continue
            q = r0[d0] * pow(r1[d1], p - 2, p) % p
            shift = d0 - d1
            for j in range(d1 + 1):
                r0[shift + j] = (r0[shift + j] - q * r1[j]) % p
            if len(t1) + shift > len(t0):
                t0 = t0 + [0] * (len(t1) + shift - len(t0))
            for j in range(len(t1)):
                t0[shift + j] = (t0[shift + j] - q * t1[j]) % p
            while r0 and r0[-1] == 0:
                r0.pop()
            if not r0:
                raise DivisionByZero("element not invertible (modulus reducible?)")
            if len(r0) - 1 < d1:
                r0, r1, t0, t1 = r1, r0, t1, t0

    def pow_(self, a, e: int):
        if e < 0:
            return self.pow_(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def rand(self, rng: random.Random):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def rand_unit(self, rng: random.Random):
        while True:
            a = self.rand(rng)
            if any(a):
                return a


Field = PrimeField | ExtField


def prod(field: Field, elts) -> object:
    out = field.one
    for e in elts:
        out = field.mul(out, e)
    return out


# ---------------------------------------------------------------------------
# dense univariate helpers over F_p (int lists, low degree first) used by the
# irreducibility machinery; the general-purpose versions live in unipoly.
# ---------------------------------------------------------------------------


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmulmod(a, b, f, p):
    n = len(f) - 1
    full = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                full[i + j] += ai * bj
    full = [c % p for c in full]
    inv_lc = pow(f[-1], p - 2, p)
    for idx in range(len(full) - 1, n - 1, -1):
        c = full[idx] * inv_lc % p
        if c:
            for j in range(n + 1):
                full[idx - n + j] = (full[idx - n + j] - c * f[j]) % p
    return _ptrim(full[:n])


def _ppowmod(a, e: int, f, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    r0, r1 = _ptrim(list(a)), _ptrim(list(b))
    while r1:
        d0, d1 = len(r0) - 1, len(r1) - 1
        if d0 < d1:
            r0, r1 = r1, r0
            continue
        q = r0[-1] * pow(r1[-1], p - 2, p) % p
        shift = d0 - d1
        for j in range(d1 + 1):
            r0[shift + j] = (r0[shift + j] - q * r1[j]) % p
        _ptrim(r0)
        if len(r0) - 1 < d1 or not r0:
            r0, r1 = r1, r0
    return r0


def is_irreducible(f: tuple, p: int) -> bool:
    """Frobenius test: x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1."""
    k = len(f) - 1
    if k == 1:
        return True
    fl = [c % p for c in f]
    x = [0, 1]
    xq = _ppowmod(x, p**k, fl, p)
    diff = _ptrim([(a - b) % p for a, b in zip(xq + [0] * 2, x + [0] * len(xq))])
    if diff:
        return False
    for r in factorize(k):
        xe = _ppowmod(x, p ** (k // r), fl, p)
        m = max(len(xe), 2)
        diff = [(0)] * m
        for i, c in enumerate(xe):
            diff[i] = c
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(diff, fl, p)
        if len(g) != 1:
            return False
    return True


def find_irreducible(p: int, k: int, rng: random.Random) -> tuple:
    """Random monic irreducible of degree k over F_p (Shoup-style search)."""
    if k < 1:
        raise InvalidInput("degree must be >= 1")
    if k == 1:
        return (rng.randrange(p), 1)
    while True:
        cand = tuple(rng.randrange(p) for _ in range(k)) + (1,)
        if is_irreducible(cand, p):
            return cand


def find_primitive_root(field: Field, rng: random.Random | None = None):
    """Element of multiplicative order field.order - 1.

    Prime fields are searched deterministically from 2 upward; extensions use
    random candidates.  Raises FactorizationBudgetExceeded when field.order - 1
    cannot be factored within budget.
    """
    n = field.order - 1
    if n == 1:
        return field.one
    fac = factorize(n, rng)
    exps = [n // r for r in fac]

    def is_primitive(g):
        return all(field.pow_(g, e) != field.one for e in exps)

    if isinstance(field, PrimeField):
        for g in range(2, field.p):
            if is_primitive(g):
                return g
        raise InvalidInput("no primitive root found (modulus not prime?)")
    rng = rng or random.Random(0x9E)
    while True:
        g = field.rand_unit(rng)
        if is_primitive(g):
            return g


def multiplicative_order_exceeds(field: Field, g, bound: int) -> bool:
    """True iff ord(g) > bound; linear scan, intended for small bounds."""
    acc = g
    for _ in range(bound):
        if acc == field.one:
            return False
        acc = field.mul(acc, g)
    return True


def discrete_log_bounded(field: Field, omega, target, bound: int) -> int:
    """Smallest e in [0, bound] with omega^e = target, by baby-step/giant-step.

    Raises NotAPower when no such exponent exists.
    """
    if bound < 0:
        raise InvalidInput("bound must be >= 0")
    if target == field.one:
        return 0
    m = math.isqrt(bound) + 1
    baby = {}
    acc = field.one
    for j in range(m):
        baby.setdefault(acc, j)
        acc = field.mul(acc, omega)
    # acc is now omega^m
    giant = field.inv(acc)
    gamma = target
    for i in range(bound // m + 1):
        j = baby.get(gamma)
        if j is not None:
            e = i * m + j
            if e <= bound:
                return e
        gamma = field.mul(gamma, giant)
    raise NotAPower(f"no exponent <= {bound} matches")
