"""Non-adjacent form and sparse signed sums of powers of two.

A :class:`SparseDyadic` stores ``sum(sign * 2**E)`` as its NAF support: no
two stored exponents are equal or adjacent.  Because the NAF of an integer
is unique, two canonical values are equal exactly when their supports are.
Exponents are Python ints and may be far too large for ``2**E`` to exist.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidDigits

__all__ = [
    "NafDigits",
    "naf_encode",
    "naf_decode",
    "naf_to_text",
    "naf_from_text",
    "is_naf",
    "SparseDyadic",
    "sd_from_terms",
    "sd_equal",
]


_PLUS_ONE = (1).__add__
_FROM_ASCII = (-ord("1")).__add__
_POS_BITS = bytes.maketrans(b"\x00\x01\x02", b"001")
_NEG_BITS = bytes.maketrans(b"\x00\x01\x02", b"100")


class NafDigits(Sequence[int]):
    """NAF digits, least significant first, stored as two bit masks.

    Bit i of ``pos`` (``neg``) is set when digit i is +1 (-1).  Length is the
    canonical one: no zero digits above the most significant nonzero digit.
    """

    __slots__ = ("pos", "neg")

    def __init__(self, pos: int = 0, neg: int = 0) -> None:
        if pos < 0 or neg < 0 or pos & neg:
            raise InvalidDigits("digit masks must be nonnegative and disjoint")
        nonzero = pos | neg
        clash = nonzero & (nonzero >> 1)
        if clash:
            i = (clash & -clash).bit_length() - 1
            raise InvalidDigits(f"adjacent nonzero digits at positions {i} and {i + 1}")
        self.pos = pos
        self.neg = neg

    @classmethod
    def from_digits(cls, digits: Iterable[int]) -> NafDigits:
        digits = tuple(digits)
        if not digits:
            return cls()
        try:
            raw = bytes(map(_PLUS_ONE, digits))
        except (TypeError, ValueError):
            raw = b"\xff"
        if raw.translate(None, b"\x00\x01\x02"):
            bad = next(i for i, d in enumerate(digits) if not isinstance(d, int) or d not in (-1, 0, 1))
            raise InvalidDigits(f"digit {digits[bad]!r} at position {bad} is not in {{-1, 0, 1}}")
        msb_first = raw[::-1]
        return cls(int(msb_first.translate(_POS_BITS), 2), int(msb_first.translate(_NEG_BITS), 2))

    @property
    def value(self) -> int:
        return self.pos - self.neg

    def __len__(self) -> int:
        return (self.pos | self.neg).bit_length()

    def _digits(self) -> tuple[int, ...]:
        width = len(self)
        if not width:
            return ()
        shifted = int("1" * width) + int(bin(self.pos)[2:]) - int(bin(self.neg)[2:] if self.neg else "0")
        return tuple(map(_FROM_ASCII, str(shifted).zfill(width)[::-1].encode()))

    def __getitem__(self, i):
        if isinstance(i, slice):
            return self._digits()[i]
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        return ((self.pos >> i) & 1) - ((self.neg >> i) & 1)

    def __iter__(self):
        return iter(self._digits())

    def __reversed__(self):
        return reversed(self._digits())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NafDigits):
            return self.pos == other.pos and self.neg == other.neg
        if isinstance(other, (tuple, list)):
            return self._digits() == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._digits())

    def __repr__(self) -> str:
        return f"NafDigits({self._digits()!r})"


def naf_encode(a: int) -> NafDigits:
    """NAF of ``a``; ``0`` gives the empty digit sequence."""
    if a < 0:
        d = naf_encode(-a)
        return NafDigits(d.neg, d.pos)
    # Positive and negative digit masks of the NAF, read off a + a/2.
    half = a >> 1
    total = a + half
    c = half ^ total
    return NafDigits(total & c, half & c)


def naf_decode(digits: Sequence[int]) -> int:
    """Integer value of least-significant-first NAF digits (validated)."""
    if not isinstance(digits, NafDigits):
        digits = NafDigits.from_digits(digits)
    return digits.value


def is_naf(digits: Sequence[int]) -> bool:
    try:
        naf_decode(digits)
    except InvalidDigits:
        return False
    return True


_TO_CHAR = {1: "1", 0: "0", -1: "T"}
_FROM_CHAR = {"1": 1, "0": 0, "T": -1}


def naf_to_text(digits: Sequence[int]) -> str:
    """Most-significant-first over ``1``, ``0``, ``T`` (T is -1); zero is ``0``."""
    if not digits:
        return "0"
    return "".join(_TO_CHAR[d] for d in reversed(digits))


def naf_from_text(text: str) -> NafDigits:
    try:
        digits = [_FROM_CHAR[ch] for ch in reversed(text.strip())]
    except KeyError as exc:
        raise InvalidDigits(f"bad NAF character {exc.args[0]!r}") from None
    return NafDigits.from_digits(digits)


def _normalize(terms: Iterable[tuple[int, int]]) -> tuple[dict[int, int], int]:
    """Canonical support of ``sum(c * 2**E)`` plus the number of carries made.

    Walks exponents upward, choosing the NAF digit at each position from the
    value mod 4 and pushing the remainder one position up as a carry.
    """
    acc: dict[int, int] = defaultdict(int)
    for e, c in terms:
        if e < 0:
            raise ValueError(f"exponents must be nonnegative, got {e}")
        acc[e] += c
    keys = sorted(e for e, c in acc.items() if c)
    out: dict[int, int] = {}
    carries = 0
    carry_e, carry = 0, 0
    i = 0
    while i < len(keys) or carry:
        if carry and (i >= len(keys) or carry_e < keys[i]):
            e, cur = carry_e, carry
        else:
            e, cur = keys[i], acc[keys[i]]
            i += 1
            if carry and carry_e == e:
                cur += carry
        if cur & 1:
            d = 1 if (cur + 2 * acc.get(e + 1, 0)) & 3 == 1 else -1
            out[e] = d
            cur -= d
        carry = cur >> 1
        carry_e = e + 1
        if carry:
            carries += 1
    return out, carries


@dataclass(frozen=True)
class SparseDyadic:
    """Canonical signed sum of distinct, non-adjacent powers of two.

    ``exponents`` is strictly descending and ``signs`` holds the matching
    ``±1``.  ``carries`` records normalization work and is not part of the
    value.
    """

    exponents: tuple[int, ...] = ()
    signs: tuple[int, ...] = ()
    carries: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if len(self.exponents) != len(self.signs):
            raise ValueError("exponents and signs differ in length")
        for a, b in zip(self.exponents, self.exponents[1:]):
            if a - b < 2:
                raise ValueError(f"exponents {a} and {b} are not canonical")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def from_map(cls, support: dict[int, int], carries: int = 0) -> SparseDyadic:
        exps = sorted(support, reverse=True)
        return cls(tuple(exps), tuple(support[e] for e in exps), carries)

    @classmethod
    def from_int(cls, a: int) -> SparseDyadic:
        return cls.from_map({i: d for i, d in enumerate(naf_encode(a)) if d})

    @classmethod
    def parse(cls, text: str) -> SparseDyadic:
        text = text.strip()
        if text == "0":
            return cls()
        terms = []
        for tok in text.split():
            if tok[:3] not in ("+2^", "-2^"):
                raise ValueError(f"bad sparse dyadic term {tok!r}")
            terms.append((int(tok[3:]), 1 if tok[0] == "+" else -1))
        return sd_from_terms(terms)

    def as_map(self) -> dict[int, int]:
        return dict(zip(self.exponents, self.signs))

    def to_int(self) -> int:
        """Materialize the integer value (only sensible for modest exponents)."""
        return sum(s << e for e, s in zip(self.exponents, self.signs))

    def naf_digits(self) -> tuple[int, ...]:
        if not self.exponents:
            return ()
        digits = [0] * (self.exponents[0] + 1)
        for e, s in zip(self.exponents, self.signs):
            digits[e] = s
        return tuple(digits)

    def is_zero(self) -> bool:
        return not self.exponents

    def __len__(self) -> int:
        return len(self.exponents)

    def __str__(self) -> str:
        if not self.exponents:
            return "0"
        return " ".join(f"{'+' if s > 0 else '-'}2^{e}" for e, s in zip(self.exponents, self.signs))


def sd_from_terms(terms: Iterable[tuple[int, int]]) -> SparseDyadic:
    """Canonical form of ``sum(sign * 2**E)``; duplicates and neighbours allowed."""
    support, carries = _normalize(terms)
    return SparseDyadic.from_map(support, carries)


def sd_equal(a: SparseDyadic, b: SparseDyadic) -> bool:
    return a == b
