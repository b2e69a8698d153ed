"""Fully bracketed terms over variables ``x<n>`` and units ``e<j>``.

Concrete syntax::

    term := atom | "(" term term ")"
    atom := "x" digits | "e" [0-7]

Every product carries its own brackets; nothing is ever inferred.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Mapping, Sequence, Union

import numpy as np

from .errors import (
    EmptyIndexList,
    NotGround,
    NotOrderly,
    NotVariableTerm,
    TermSyntaxError,
    UnboundVariable,
)
from .octonion import SignedUnit, code_mul

__all__ = [
    "Var",
    "Unit",
    "Pair",
    "Term",
    "Assignment",
    "parse",
    "render",
    "leaves",
    "leaf_count",
    "var_indices",
    "eval_units",
    "eval_assigned",
    "eval_codes",
    "substitute",
    "relabel",
    "is_orderly",
    "precedes",
    "enumerate_orderly",
    "bracketings",
    "catalan",
]


@dataclass(frozen=True, slots=True)
class Var:
    n: int

    def __str__(self) -> str:
        return f"x{self.n}"


@dataclass(frozen=True, slots=True)
class Unit:
    j: int

    def __post_init__(self) -> None:
        if not 0 <= self.j <= 7:
            raise ValueError(f"unit index must be in 0..7, got {self.j}")

    def __str__(self) -> str:
        return f"e{self.j}"


@dataclass(frozen=True, slots=True)
class Pair:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return render(self)


Term = Union[Var, Unit, Pair]
Assignment = Mapping[int, SignedUnit]


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def offset(self, pos: int | None = None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def fail(self, message: str, pos: int | None = None):
        raise TermSyntaxError(message, self.offset(pos))

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def term(self) -> Term:
        self.skip_ws()
        if self.pos >= len(self.text):
            self.fail("unexpected end of input")
        ch = self.text[self.pos]
        if ch == "(":
            self.pos += 1
            left = self.term()
            right = self.term()
            self.skip_ws()
            if self.pos >= len(self.text):
                self.fail("unbalanced bracket: missing ')'")
            if self.text[self.pos] != ")":
                self.fail(f"expected ')', found {self.text[self.pos]!r}")
            self.pos += 1
            return Pair(left, right)
        if ch in "xe":
            start = self.pos
            self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
                self.pos += 1
            digits = self.text[start + 1 : self.pos]
            if not digits:
                self.fail(f"atom {ch!r} needs an index", start)
            if ch == "x":
                return Var(int(digits))
            if len(digits) != 1 or digits > "7":
                self.fail(f"bad unit atom 'e{digits}'", start)
            return Unit(int(digits))
        if ch == ")":
            self.fail("unbalanced bracket: unexpected ')'")
        self.fail(f"unexpected character {ch!r}")

    def parse(self) -> Term:
        t = self.term()
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("trailing input")
        return t


def parse(text: str) -> Term:
    """Parse term text; raises :class:`TermSyntaxError` with a byte offset."""
    return _Parser(text).parse()


def render(t: Term) -> str:
    if isinstance(t, Pair):
        return f"({render(t.left)}{render(t.right)})"
    return str(t)


def leaves(t: Term) -> list[Var | Unit]:
    out: list[Var | Unit] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Pair):
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node)
    return out


def leaf_count(t: Term) -> int:
    if isinstance(t, Pair):
        return leaf_count(t.left) + leaf_count(t.right)
    return 1


def var_indices(t: Term) -> list[int]:
    """Variable indices in left-to-right leaf order."""
    out = []
    for leaf in leaves(t):
        if not isinstance(leaf, Var):
            raise NotVariableTerm(f"{render(t)} contains the unit leaf {leaf}")
        out.append(leaf.n)
    return out


def is_orderly(t: Term) -> bool:
    idx = var_indices(t)
    return all(a < b for a, b in zip(idx, idx[1:]))


def precedes(t: Term, u: Term) -> bool:
    """``t ≺ u``: every variable of ``t`` is below every variable of ``u``."""
    return max(var_indices(t)) < min(var_indices(u))


def eval_codes(t: Term, leaf_codes: Sequence):
    """Evaluate ``t`` positionally: the k-th leaf takes ``leaf_codes[k]``.

    Leaf values may be int codes or equal-shape integer arrays of codes.
    """
    it = iter(leaf_codes)

    def go(node: Term):
        if isinstance(node, Pair):
            left = go(node.left)
            return code_mul(left, go(node.right))
        return next(it)

    return go(t)


def eval_units(t: Term) -> SignedUnit:
    codes = []
    for leaf in leaves(t):
        if isinstance(leaf, Var):
            raise NotGround(f"{render(t)} contains the variable {leaf}")
        codes.append(leaf.j)
    return SignedUnit.from_code(eval_codes(t, codes))


def eval_assigned(t: Term, mu: Assignment) -> SignedUnit:
    codes = []
    for leaf in leaves(t):
        if isinstance(leaf, Var):
            if leaf.n not in mu:
                raise UnboundVariable(leaf.n)
            codes.append(mu[leaf.n].code)
        else:
            codes.append(leaf.j)
    return SignedUnit.from_code(eval_codes(t, codes))


def substitute(t: Term, mapping: Mapping[int, "Term | SignedUnit"]) -> Term:
    """Replace each ``x<n>`` by ``mapping[n]``; positive signed units become leaves."""
    if isinstance(t, Pair):
        return Pair(substitute(t.left, mapping), substitute(t.right, mapping))
    if isinstance(t, Unit):
        return t
    if t.n not in mapping:
        raise UnboundVariable(t.n)
    value = mapping[t.n]
    if isinstance(value, SignedUnit):
        if value.sign < 0:
            raise ValueError(f"cannot place {value} as a term leaf; signs are not syntax")
        return Unit(value.index)
    return value


def relabel(t: Term, indices: Sequence[int]) -> Term:
    """Replace the k-th leaf (whatever it is) by ``Var(indices[k])``."""
    it = iter(indices)

    def go(node: Term) -> Term:
        if isinstance(node, Pair):
            left = go(node.left)
            return Pair(left, go(node.right))
        return Var(next(it))

    return go(t)


@lru_cache(maxsize=None)
def bracketings(n: int) -> tuple[Term, ...]:
    """All bracketings of ``x0 ... x{n-1}`` in canonical order."""
    if n < 1:
        raise EmptyIndexList("a term needs at least one leaf")
    return tuple(_shapes(0, n))


def _shapes(lo: int, hi: int) -> list[Term]:
    if hi - lo == 1:
        return [Var(lo)]
    out: list[Term] = []
    for split in range(lo + 1, hi):
        for left, right in product(_shapes(lo, split), _shapes(split, hi)):
            out.append(Pair(left, right))
    return out


def enumerate_orderly(indices: Sequence[int]) -> list[Term]:
    """Every bracketing of the given increasing variable indices.

    Ordered by left-subtree size ascending, then recursively by the left
    and right subtrees' own order.
    """
    indices = list(indices)
    if not indices:
        raise EmptyIndexList("enumerate_orderly needs at least one index")
    if any(a >= b for a, b in zip(indices, indices[1:])):
        raise NotOrderly(f"indices must be strictly increasing: {indices}")
    return [relabel(shape, indices) for shape in bracketings(len(indices))]


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)


def iter_assignments(n_vars: int) -> Iterator[tuple[int, ...]]:
    """All tuples in ``{0..7}^n_vars`` in lexicographic order."""
    return product(range(8), repeat=n_vars)


def alpha_grid(n_leaves: int) -> list[np.ndarray]:
    """Column arrays of every alpha in ``{0..7}^n_leaves``, lexicographic order."""
    if n_leaves == 0:
        return []
    grid = np.indices((8,) * n_leaves).reshape(n_leaves, -1)
    return [row.astype(np.int64) for row in grid]
