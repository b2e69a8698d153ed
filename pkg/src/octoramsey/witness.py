"""Symbolic evaluation of orderly terms over the sequence ``b_n``.

``b_n = sum_i 2**(2**(8n+1+i)) e_i``.  Substituting ``b_{n_k}`` for each
variable of an orderly term ``t`` and expanding gives, per slot ``j``, a sum
of signed powers ``±2**E_alpha`` with ``E_alpha = sum_k 2**(8 n_k + 1 +
alpha_k)``, one per unit choice ``alpha`` that sends ``t`` to ``±e_j``.
The coefficients are kept as :class:`SparseDyadic` values, so equality is
decided exactly without ever materializing ``2**E_alpha``.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceeded, NotOrderly, PrecedenceViolated
from .naf import SparseDyadic, sd_from_terms
from .octonion import BigOctonion, oct_mul
from .terms import (
    Pair,
    Term,
    alpha_grid,
    bracketings,
    enumerate_orderly,
    eval_codes,
    is_orderly,
    leaf_count,
    precedes,
    render,
    substitute,
    var_indices,
)

__all__ = [
    "DEFAULT_LEAF_CAP",
    "BIGINT_INDEX_CAP",
    "SymbolicOctonion",
    "Verdict",
    "Case",
    "WitnessReport",
    "bad_term",
    "bad_term_symbolic",
    "exponent",
    "symbolic_eval",
    "bigint_eval",
    "compare_terms",
    "claim_check",
    "chains",
    "right_nested_terms",
    "left_nested_terms",
    "theorem_sweep",
    "independent_sweep",
    "bounded_x",
    "in_X",
    "x_witness",
    "fr_prefix",
    "fr_prefix_terms",
    "term_in_X",
]

DEFAULT_LEAF_CAP = 6
BIGINT_INDEX_CAP = 1
# Sums of at most this many int64 powers stay below 2**63.
_INT64_EXP_LIMIT = 60


def exponent(indices: Sequence[int], alpha: Sequence[int]) -> int:
    """``E_alpha = sum_k 2**(8 n_k + 1 + alpha_k)``."""
    return sum(1 << (8 * n + 1 + a) for n, a in zip(indices, alpha))


@dataclass(frozen=True)
class SymbolicOctonion:
    """Eight canonical :class:`SparseDyadic` coefficients, slot ``j`` for ``e_j``."""

    coeffs: tuple[SparseDyadic, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != 8:
            raise ValueError("a symbolic octonion has 8 coefficients")

    @classmethod
    def from_big(cls, x: BigOctonion) -> SymbolicOctonion:
        return cls(tuple(SparseDyadic.from_int(c) for c in x.coeffs))

    def to_big(self) -> BigOctonion:
        return BigOctonion(tuple(c.to_int() for c in self.coeffs))

    def slot_hashes(self) -> tuple[int, ...]:
        return tuple(hash(c) for c in self.coeffs)

    def differing_slots(self, other: SymbolicOctonion) -> list[int]:
        return [j for j in range(8) if self.coeffs[j] != other.coeffs[j]]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def carries(self) -> int:
        return sum(c.carries for c in self.coeffs)

    def lines(self) -> list[str]:
        return [f"e{j}: {c}" for j, c in enumerate(self.coeffs)]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def bad_term(n: int) -> BigOctonion:
    """``b_n`` with materialized integer coefficients; only ``n <= 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > BIGINT_INDEX_CAP:
        raise CapExceeded(f"b_{n} has coefficients up to 2^(2^{8 * n + 8}); cap is n <= {BIGINT_INDEX_CAP}")
    return BigOctonion(tuple(1 << (1 << (8 * n + 1 + i)) for i in range(8)))


def bad_term_symbolic(n: int) -> SymbolicOctonion:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return SymbolicOctonion(
        tuple(SparseDyadic((1 << (8 * n + 1 + i),), (1,)) for i in range(8))
    )


def _exponent_array(indices: Sequence[int]) -> np.ndarray:
    n_leaves = len(indices)
    grid = alpha_grid(n_leaves)
    if 8 * max(indices) + 8 + n_leaves.bit_length() <= _INT64_EXP_LIMIT:
        total = np.zeros(8**n_leaves, dtype=np.int64)
        for n, col in zip(indices, grid):
            weights = np.left_shift(np.int64(1), 8 * n + 1 + np.arange(8, dtype=np.int64))
            total += weights[col]
        return total
    # Beyond int64: Python integers, same lexicographic alpha order.
    return np.array([exponent(indices, a) for a in product(range(8), repeat=n_leaves)], dtype=object)


def _coefficient(exps: np.ndarray, signs: np.ndarray) -> SparseDyadic:
    order = np.argsort(exps, kind="stable")[::-1]
    exps, signs = exps[order], signs[order]
    if exps.dtype != object:
        gaps_ok = exps.size < 2 or bool(np.all(exps[:-1] - exps[1:] >= 2))
        if gaps_ok:
            # Distinct exponents at least 2 apart are already a NAF support.
            return SparseDyadic(tuple(exps.tolist()), tuple(signs.tolist()))
    return sd_from_terms(zip(exps.tolist(), signs.tolist()))


def _check_orderly(t: Term, leaf_cap: int) -> list[int]:
    if not is_orderly(t):
        raise NotOrderly(f"{render(t)} is not orderly")
    n = leaf_count(t)
    if n > leaf_cap:
        raise CapExceeded(f"{render(t)} has {n} leaves; cap is {leaf_cap}")
    return var_indices(t)


def symbolic_eval(t: Term, leaf_cap: int = DEFAULT_LEAF_CAP) -> SymbolicOctonion:
    """Exact value of ``t`` under ``x_n -> b_n``, coefficients in NAF form."""
    _check_orderly(t, leaf_cap)
    return _symbolic_eval(t)


@lru_cache(maxsize=64)
def _symbolic_eval(t: Term) -> SymbolicOctonion:
    indices = var_indices(t)
    codes = np.asarray(eval_codes(t, alpha_grid(len(indices))))
    exps = _exponent_array(indices)
    slots = codes & 7
    signs = np.where(codes & 8, -1, 1)
    return SymbolicOctonion(
        tuple(_coefficient(exps[slots == j], signs[slots == j]) for j in range(8))
    )


@lru_cache(maxsize=None)
def _slot_hashes(t: Term) -> tuple[int, ...]:
    return _symbolic_eval(t).slot_hashes()


def bigint_eval(t: Term) -> BigOctonion:
    """Direct evaluation with materialized ``b_0``, ``b_1`` (the oracle path)."""
    if not is_orderly(t):
        raise NotOrderly(f"{render(t)} is not orderly")
    indices = var_indices(t)
    if max(indices) > BIGINT_INDEX_CAP:
        raise CapExceeded(f"bigint_eval supports indices <= {BIGINT_INDEX_CAP}")

    def go(node: Term) -> BigOctonion:
        if isinstance(node, Pair):
            return oct_mul(go(node.left), go(node.right))
        return bad_term(node.n)

    return go(t)


class Verdict(enum.Enum):
    DISTINCT = "DISTINCT"
    EQUAL = "EQUAL"


class Case(enum.Enum):
    SAME_STRING = "SAME_STRING"
    DIFFERENT_VARS = "DIFFERENT_VARS"


_EXPECTED_SLOT = {Case.SAME_STRING: 4, Case.DIFFERENT_VARS: 0}


@dataclass(frozen=True)
class WitnessReport:
    left: Term
    right: Term
    verdict: Verdict
    case: Case
    slot: int | None
    differing_slots: tuple[int, ...]

    @property
    def expected_slot(self) -> int:
        return _EXPECTED_SLOT[self.case]

    def line(self) -> str:
        head = f"CLAIM {render(self.left)} VS {render(self.right)} -> {self.verdict.value}"
        if self.verdict is Verdict.DISTINCT:
            return f"{head} slot=e{self.slot} case={self.case.value}"
        return f"{head} case={self.case.value}"

    def as_dict(self) -> dict:
        return {
            "left": render(self.left),
            "right": render(self.right),
            "verdict": self.verdict.value,
            "slot": self.slot,
            "case": self.case.value,
            "differing_slots": list(self.differing_slots),
        }


def compare_terms(t: Term, u: Term, leaf_cap: int = DEFAULT_LEAF_CAP) -> WitnessReport:
    """Compare ``t^mu`` and ``u^mu`` exactly.

    Per-slot hashes settle every differing slot soundly (equal values hash
    equally); only when all hashes agree are the full values compared.
    """
    _check_orderly(t, leaf_cap)
    _check_orderly(u, leaf_cap)
    case = Case.SAME_STRING if var_indices(t) == var_indices(u) else Case.DIFFERENT_VARS
    ht, hu = _slot_hashes(t), _slot_hashes(u)
    differing = [j for j in range(8) if ht[j] != hu[j]]
    if not differing:
        differing = _symbolic_eval(t).differing_slots(_symbolic_eval(u))
    if not differing:
        return WitnessReport(t, u, Verdict.EQUAL, case, None, ())
    expected = _EXPECTED_SLOT[case]
    slot = expected if expected in differing else differing[0]
    return WitnessReport(t, u, Verdict.DISTINCT, case, slot, tuple(differing))


def _check_chain(ts: Sequence[Term]) -> None:
    for t in ts:
        if not is_orderly(t):
            raise NotOrderly(f"{render(t)} is not orderly")
    for a, b in zip(ts, ts[1:]):
        if not precedes(a, b):
            raise PrecedenceViolated(f"{render(a)} does not precede {render(b)}")


def claim_check(t1: Term, t2: Term, t3: Term, leaf_cap: int = DEFAULT_LEAF_CAP) -> WitnessReport:
    """Compare ``(t1(t2t3))`` against ``((t1t2)t3)`` under ``x_n -> b_n``."""
    _check_chain((t1, t2, t3))
    n = leaf_count(t1) + leaf_count(t2) + leaf_count(t3)
    if n > leaf_cap:
        raise CapExceeded(f"{n} leaves exceed the cap {leaf_cap}")
    return compare_terms(Pair(t1, Pair(t2, t3)), Pair(Pair(t1, t2), t3), leaf_cap)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def chains(leaf_cap: int, index_bound: int) -> Iterator[tuple[Term, Term, Term]]:
    """Every ``t1 ≺ t2 ≺ t3`` over indices ``< index_bound`` with at most ``leaf_cap`` leaves.

    Order: total leaves, then index set, then split sizes, then the
    canonical bracketing order of each part.
    """
    for total in range(3, leaf_cap + 1):
        for idx in combinations(range(index_bound), total):
            for a, b, _ in _compositions(total, 3):
                for t1 in enumerate_orderly(idx[:a]):
                    for t2 in enumerate_orderly(idx[a : a + b]):
                        for t3 in enumerate_orderly(idx[a + b :]):
                            yield t1, t2, t3


def _terms_with_leaves(total: int, index_bound: int) -> Iterator[Term]:
    for idx in combinations(range(index_bound), total):
        yield from enumerate_orderly(idx)


def right_nested_terms(leaf_cap: int, index_bound: int) -> Iterator[Term]:
    """All ``(s1(s2s3))`` with ``s1 ≺ s2 ≺ s3`` inside the bounds."""
    for s1, s2, s3 in chains(leaf_cap, index_bound):
        yield Pair(s1, Pair(s2, s3))


def left_nested_terms(leaf_cap: int, index_bound: int) -> Iterator[Term]:
    for s1, s2, s3 in chains(leaf_cap, index_bound):
        yield Pair(Pair(s1, s2), s3)


def _threads() -> int:
    raw = os.environ.get("OCTORAMSEY_THREADS")
    if raw:
        return max(1, int(raw))
    return min(4, os.cpu_count() or 1)


def _warm(terms: list[Term], threads: int | None = None) -> None:
    threads = _threads() if threads is None else threads
    if threads <= 1:
        for t in terms:
            _slot_hashes(t)
        return
    with ThreadPoolExecutor(threads) as pool:
        list(pool.map(_slot_hashes, terms))


def theorem_sweep(leaf_cap: int, index_bound: int, threads: int | None = None) -> list[WitnessReport]:
    """``claim_check`` on every chain inside the bounds, in canonical order."""
    if leaf_cap < 1 or index_bound < 1:
        raise ValueError("leaf cap and index bound must be positive")
    triples = list(chains(leaf_cap, index_bound))
    pairs = [(Pair(a, Pair(b, c)), Pair(Pair(a, b), c)) for a, b, c in triples]
    _warm([t for pair in pairs for t in pair], threads)
    return [compare_terms(t, u, leaf_cap) for t, u in pairs]


def independent_sweep(leaf_cap: int, index_bound: int) -> list[WitnessReport]:
    """Every ``(t1(t2t3))`` against every ``((s1s2)s3)`` from separate chains.

    Pairs that are the same term are skipped: a term trivially equals itself.
    """
    rights = list(right_nested_terms(leaf_cap, index_bound))
    lefts = list(left_nested_terms(leaf_cap, index_bound))
    _warm(rights + lefts)
    return [compare_terms(t, u, leaf_cap) for t in rights for u in lefts if t != u]


@dataclass(frozen=True)
class BoundedX:
    index_bound: int
    leaf_cap: int
    by_hash: dict[int, tuple[Term, ...]]

    def __len__(self) -> int:
        return sum(len(v) for v in self.by_hash.values())


@lru_cache(maxsize=8)
def bounded_x(index_bound: int, leaf_cap: int) -> BoundedX:
    """Values of all ``(s1(s2s3))`` inside the bounds, indexed by value hash."""
    if index_bound < 1 or leaf_cap < 1:
        raise ValueError("bounds must be positive")
    terms = list(right_nested_terms(leaf_cap, index_bound))
    _warm(terms)
    table: dict[int, list[Term]] = {}
    for t in terms:
        table.setdefault(hash(_slot_hashes(t)), []).append(t)
    return BoundedX(index_bound, leaf_cap, {k: tuple(v) for k, v in table.items()})


def x_witness(v: SymbolicOctonion, index_bound: int, leaf_cap: int) -> Term | None:
    """A term ``(s1(s2s3))`` inside the bounds whose value is ``v``, if any."""
    table = bounded_x(index_bound, leaf_cap)
    for t in table.by_hash.get(hash(v.slot_hashes()), ()):
        if _symbolic_eval(t) == v:
            return t
    return None


def in_X(v: SymbolicOctonion, index_bound: int, leaf_cap: int) -> bool:
    """Membership in X restricted to indices ``< index_bound`` and ``leaf_cap`` leaves.

    Only meaningful relative to the bounds: the full X is infinite.
    """
    return x_witness(v, index_bound, leaf_cap) is not None


def fr_prefix_terms(ts: Sequence[Term], depth: int) -> list[Term]:
    """Variable-level terms for every bracketed product of a subsequence of ``ts``.

    At most ``depth`` members of ``ts`` take part in one product.  Ordered by
    subsequence length, then subsequence, then bracketing.
    """
    ts = list(ts)
    _check_chain(ts)
    if depth < 1:
        raise ValueError("depth must be positive")
    out = []
    for size in range(1, min(depth, len(ts)) + 1):
        for sub in combinations(range(len(ts)), size):
            for shape in bracketings(size):
                out.append(substitute(shape, {k: ts[i] for k, i in enumerate(sub)}))
    return out


def fr_prefix(ts: Sequence[Term], depth: int, leaf_cap: int = DEFAULT_LEAF_CAP) -> list[SymbolicOctonion]:
    """Values of :func:`fr_prefix_terms` under ``x_n -> b_n``."""
    return [symbolic_eval(t, leaf_cap) for t in fr_prefix_terms(ts, depth)]


def term_in_X(t: Term, index_bound: int, leaf_cap: int) -> bool:
    """``in_X`` for the value of ``t`` without keeping the value around."""
    table = bounded_x(index_bound, leaf_cap)
    key = hash(_slot_hashes(t))
    for cand in table.by_hash.get(key, ()):
        if _symbolic_eval(cand) == _symbolic_eval(t):
            return True
    return False

