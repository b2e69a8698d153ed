"""Unit octonions and octonions with exact integer coefficients.

Signed units are also handled through a compact integer *code*:
``code = index | 8`` for a negative unit and ``code = index`` for a positive
one.  ``MUL_CODES[a, b]`` is then the code of the product, which lets the
same evaluation code run on plain ints and on numpy arrays of codes.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable

import numpy as np

__all__ = [
    "SignedUnit",
    "BigOctonion",
    "Associator",
    "UNITS",
    "MUL_CODES",
    "unit_mul",
    "oct_mul",
    "associator_class",
    "associator_partition",
    "code_mul",
    "negate_code",
]

# Rows are the left factor, columns the right factor.
_TABLE_TEXT = """
e0  e1  e2  e3  e4  e5  e6  e7
e1 -e0  e3 -e2  e5 -e4 -e7  e6
e2 -e3 -e0  e1  e6  e7 -e4 -e5
e3  e2 -e1 -e0  e7 -e6  e5 -e4
e4 -e5 -e6 -e7 -e0  e1  e2  e3
e5  e4 -e7  e6 -e1 -e0 -e3  e2
e6  e7  e4 -e5 -e2  e3 -e0 -e1
e7 -e6  e5  e4 -e3 -e2  e1 -e0
"""

_UNIT_RE = re.compile(r"(-?)e([0-7])")


def _code_of_text(text: str) -> int:
    m = _UNIT_RE.fullmatch(text)
    if m is None:
        raise ValueError(f"not a signed unit: {text!r}")
    return int(m.group(2)) | (8 if m.group(1) else 0)


TABLE: tuple[tuple[int, ...], ...] = tuple(
    tuple(_code_of_text(cell) for cell in line.split())
    for line in _TABLE_TEXT.strip().splitlines()
)


def _build_code_table() -> np.ndarray:
    out = np.empty((16, 16), dtype=np.int64)
    for a, b in product(range(16), repeat=2):
        sign = ((a >> 3) ^ (b >> 3)) << 3
        out[a, b] = TABLE[a & 7][b & 7] ^ sign
    out.setflags(write=False)
    return out


MUL_CODES = _build_code_table()
_MUL_LIST = MUL_CODES.tolist()


def code_mul(a, b):
    """Multiply signed-unit codes; works on ints and on integer arrays."""
    if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
        return _MUL_LIST[a][b]
    return MUL_CODES[a, b]


def negate_code(a):
    return a ^ 8


@dataclass(frozen=True, slots=True)
class SignedUnit:
    """One of ``±e0 ... ±e7``."""

    sign: int
    index: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if not 0 <= self.index <= 7:
            raise ValueError(f"index must be in 0..7, got {self.index!r}")

    @classmethod
    def from_code(cls, code: int) -> SignedUnit:
        code = int(code)
        return cls(-1 if code & 8 else 1, code & 7)

    @classmethod
    def parse(cls, text: str) -> SignedUnit:
        return cls.from_code(_code_of_text(text.strip()))

    @property
    def code(self) -> int:
        return self.index | (8 if self.sign < 0 else 0)

    def __neg__(self) -> SignedUnit:
        return SignedUnit(-self.sign, self.index)

    def __mul__(self, other: SignedUnit) -> SignedUnit:
        if not isinstance(other, SignedUnit):
            return NotImplemented
        return unit_mul(self, other)

    def same_up_to_sign(self, other: SignedUnit) -> bool:
        return self.index == other.index

    def __str__(self) -> str:
        return f"{'-' if self.sign < 0 else ''}e{self.index}"


UNITS: tuple[SignedUnit, ...] = tuple(SignedUnit(1, j) for j in range(8))


def unit_mul(a: SignedUnit, b: SignedUnit) -> SignedUnit:
    return SignedUnit.from_code(_MUL_LIST[a.code][b.code])


@dataclass(frozen=True, slots=True)
class BigOctonion:
    """Octonion with arbitrary-precision integer coefficients.

    ``coeffs[i]`` is the coefficient of ``e_i``.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.coeffs)
        if len(coeffs) != 8:
            raise ValueError(f"an octonion has 8 coefficients, got {len(coeffs)}")
        if not all(isinstance(c, int) for c in coeffs):
            raise TypeError("coefficients must be Python integers")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls) -> BigOctonion:
        return cls((0,) * 8)

    @classmethod
    def unit(cls, index: int, scale: int = 1) -> BigOctonion:
        c = [0] * 8
        c[index] = scale
        return cls(tuple(c))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, SignedUnit]]) -> BigOctonion:
        c = [0] * 8
        for scale, u in terms:
            c[u.index] += scale * u.sign
        return cls(tuple(c))

    @classmethod
    def parse(cls, text: str) -> BigOctonion:
        """Inverse of ``str``: ``-1*e0 + -6*e3`` or ``0``."""
        text = text.strip()
        if text == "0":
            return cls.zero()
        c = [0] * 8
        for part in text.split(" + "):
            m = re.fullmatch(r"(-?\d+)\*e([0-7])", part.strip())
            if m is None:
                raise ValueError(f"bad octonion term {part!r}")
            c[int(m.group(2))] += int(m.group(1))
        return cls(tuple(c))

    def __add__(self, other: BigOctonion) -> BigOctonion:
        return BigOctonion(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: BigOctonion) -> BigOctonion:
        return BigOctonion(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> BigOctonion:
        return BigOctonion(tuple(-a for a in self.coeffs))

    def scale(self, k: int) -> BigOctonion:
        return BigOctonion(tuple(k * a for a in self.coeffs))

    def __mul__(self, other: BigOctonion) -> BigOctonion:
        if not isinstance(other, BigOctonion):
            return NotImplemented
        return oct_mul(self, other)

    def __str__(self) -> str:
        parts = [f"{c}*e{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) if parts else "0"


def oct_mul(a: BigOctonion, b: BigOctonion) -> BigOctonion:
    out = [0] * 8
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        row = TABLE[i]
        for j, bj in enumerate(b.coeffs):
            if not bj:
                continue
            code = row[j]
            term = ai * bj
            out[code & 7] += -term if code & 8 else term
    return BigOctonion(tuple(out))


class Associator(enum.Enum):
    ASSOCIATES = "ASSOCIATES"
    ANTI = "ANTI"


def associator_class(i: int, j: int, k: int) -> Associator:
    """Compare ``e_i(e_j e_k)`` with ``(e_i e_j)e_k`` by direct evaluation."""
    right = _MUL_LIST[i][_MUL_LIST[j][k]]
    left = _MUL_LIST[_MUL_LIST[i][j]][k]
    if left == right:
        return Associator.ASSOCIATES
    if left == right ^ 8:
        return Associator.ANTI
    raise ArithmeticError(f"(e{i},e{j},e{k}) neither associates nor anti-associates")


def associator_partition() -> dict[Associator, list[tuple[int, int, int]]]:
    """All 512 unit triples split by associator class."""
    out: dict[Associator, list[tuple[int, int, int]]] = {a: [] for a in Associator}
    for i, j, k in product(range(8), repeat=3):
        out[associator_class(i, j, k)].append((i, j, k))
    return out
