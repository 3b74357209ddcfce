"""Plain-text polynomial files.

    # optional comment lines
    p 10000019
    n 2
    3 0 1
    1 2 0

Header lines give the prime and the variable count; every following line is
one term, coefficient then the exponent of each variable, in lexicographically
increasing exponent order.  parse() accepts terms in any order but rejects
duplicates and out-of-range coefficients; render() always writes the
canonical order, so parse(render(f)) == f.
"""

from __future__ import annotations

from .errors import InvalidInput
from .field import PrimeField
from .sparse import SparsePoly


def parse(text: str):
    """Returns (PrimeField, SparsePoly)."""
    p = None
    n = None
    terms = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if p is None:
            if parts[0] != "p" or len(parts) != 2:
                raise InvalidInput(f"line {lineno}: expected 'p <prime>'")
            p = int(parts[1])
            continue
        if n is None:
            if parts[0] != "n" or len(parts) != 2:
                raise InvalidInput(f"line {lineno}: expected 'n <nvars>'")
            n = int(parts[1])
            if n < 1:
                raise InvalidInput(f"line {lineno}: nvars must be >= 1")
            continue
        if len(parts) != n + 1:
            raise InvalidInput(f"line {lineno}: expected coefficient and {n} exponents")
        try:
            coeff = int(parts[0])
            exps = tuple(int(x) for x in parts[1:])
        except ValueError as exc:
            raise InvalidInput(f"line {lineno}: {exc}") from exc
        if not 1 <= coeff < p:
            raise InvalidInput(f"line {lineno}: coefficient must lie in [1, p)")
        if any(e < 0 for e in exps):
            raise InvalidInput(f"line {lineno}: exponents must be >= 0")
        if exps in seen:
            raise InvalidInput(f"line {lineno}: duplicate exponent vector {exps}")
        seen.add(exps)
        terms.append((coeff, exps))
    if p is None or n is None:
        raise InvalidInput("missing 'p' or 'n' header line")
    field = PrimeField(p)
    return field, SparsePoly.from_terms(field, n, terms)


def render(field: PrimeField, f: SparsePoly) -> str:
    lines = [f"p {field.p}", f"n {f.nvars}"]
    for c, e in f.terms():
        lines.append(" ".join([str(c)] + [str(x) for x in e]))
    return "\n".join(lines) + "\n"


def read(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def write(path: str, field: PrimeField, f: SparsePoly) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render(field, f))
