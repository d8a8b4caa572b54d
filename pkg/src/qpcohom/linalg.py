"""Exact sparse linear algebra over the rationals or a prime field.

Vectors are plain dicts ``{key: scalar}`` with no zero entries.  Keys only
need to be mutually comparable; the pivot of a row is its smallest key.
"""

from __future__ import annotations

import os
from fractions import Fraction


class PrimeField:
    """Integers modulo a prime, exposing the same tiny interface as ``Fraction``."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, value) -> "Fp":
        if isinstance(value, Fraction):
            return Fp(value.numerator, self.p) / Fp(value.denominator, self.p)
        if isinstance(value, Fp):
            return value
        return Fp(int(value), self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))


class Fp:
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        return other if isinstance(other, Fp) else Fp(int(other), self.p)

    def __add__(self, other):
        return Fp(self.v + self._lift(other).v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.v - self._lift(other).v, self.p)

    def __rsub__(self, other):
        return Fp(self._lift(other).v - self.v, self.p)

    def __mul__(self, other):
        return Fp(self.v * self._lift(other).v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o.v == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return Fp(self.v * pow(o.v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


def rationals(value) -> Fraction:
    return Fraction(value)


def parse_field(spec: str | None):
    """``"q"`` (or None) gives exact rationals, ``"fp:P"`` the prime field of order P."""
    if spec is None:
        spec = os.environ.get("QP_FIELD", "q")
    spec = spec.strip().lower()
    if spec in ("q", "qq", "rational", "rationals"):
        return rationals
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field {spec!r}; use 'q' or 'fp:P'")


# ---------------------------------------------------------------------------
# sparse vector helpers


def axpy(y: dict, a, x: dict) -> dict:
    """In place ``y += a*x``; returns y."""
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)
    return y


def scale(x: dict, a) -> dict:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def add(x: dict, y: dict) -> dict:
    return axpy(dict(x), 1, y)


class Echelon:
    """Incremental row echelon form.

    ``add`` inserts a vector and reports whether it was independent.  With
    ``track=True`` every stored row remembers which inserted vectors it is a
    combination of, so dependent insertions yield kernel vectors.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: dict = {}  # pivot key -> (row with leading 1, combination)
        self.kernel: list[dict] = []
        self._count = 0

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict, combo: dict | None = None):
        vec = dict(vec)
        while True:
            hits = [k for k in vec if k in self.rows]
            if not hits:
                return (vec, combo) if combo is not None else vec
            k = min(hits)
            c = vec[k]
            row, rcombo = self.rows[k]
            axpy(vec, -c, row)
            if combo is not None:
                axpy(combo, -c, rcombo)

    def add(self, vec: dict, tag=None) -> bool:
        """Insert ``vec``; True when it enlarged the span."""
        if tag is None:
            tag = self._count
        self._count += 1
        if self.track:
            red, combo = self.reduce(vec, {tag: 1})
        else:
            red, combo = self.reduce(vec), None
        if not red:
            if self.track:
                self.kernel.append(combo)
            return False
        piv = min(red)
        inv = 1 / red[piv]
        red = {k: v * inv for k, v in red.items()}
        if combo is not None:
            combo = {k: v * inv for k, v in combo.items()}
        self.rows[piv] = (red, combo)
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def pivots(self):
        return set(self.rows)

    def basis(self) -> list[dict]:
        return [r for r, _ in self.rows.values()]


def rank(vectors) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def kernel(columns: list[dict]) -> list[dict]:
    """Basis of ``{lam : sum_i lam[i] * columns[i] = 0}``, as dicts keyed by column index."""
    ech = Echelon(track=True)
    for i, c in enumerate(columns):
        ech.add(c, tag=i)
    return ech.kernel


def span_basis(vectors) -> list[dict]:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.basis()
