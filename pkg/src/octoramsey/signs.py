"""Sign bookkeeping for bracketed unit products.

Every bracketing of a string of units equals the right-associated product
of the same string up to a sign.  :func:`right_assoc_normalize` reaches the
value by that reassociation alone, which makes it an independent route to
the value computed by :func:`~octoramsey.terms.eval_units`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EqualTerms, NotGround, NotOrderly, NotSameSkeleton
from .octonion import SignedUnit, code_mul
from .terms import (
    Pair,
    Term,
    Var,
    alpha_grid,
    eval_codes,
    is_orderly,
    leaf_count,
    leaves,
    render,
    var_indices,
)

__all__ = [
    "LambdaSets",
    "right_assoc_normalize",
    "right_assoc_sign",
    "right_assoc_value",
    "lambda_sets",
    "distinguish",
]


def right_assoc_value(codes: Sequence):
    """Value of ``(c0(c1(...(c_{n-2}c_{n-1})...)))`` on int or array codes."""
    acc = codes[-1]
    for c in reversed(codes[:-1]):
        acc = code_mul(c, acc)
    return acc


def _assoc_sign(x, y, z):
    """+1 where ``(xy)z == x(yz)``, -1 where they are negatives."""
    left = code_mul(code_mul(x, y), z)
    right = code_mul(x, code_mul(y, z))
    if isinstance(left, np.ndarray):
        return np.where(left == right, 1, -1)
    return 1 if left == right else -1


def _join_sign(first: list, second: list):
    """Sign s with ``RA(first) * RA(second) == s * RA(first + second)``.

    Writing ``RA(first) = (a s')`` the product reassociates as
    ``((a s') S) ~ (a (s' S))`` and ``(s' S)`` is handled recursively.
    """
    if len(first) == 1:
        return 1
    head, rest = first[0], first[1:]
    swap = _assoc_sign(head, right_assoc_value(rest), right_assoc_value(second))
    return swap * _join_sign(rest, second)


def right_assoc_sign(t: Term, codes: Sequence):
    """Sign s with ``t == s * RA(leaves)``, leaves valued positionally by ``codes``."""
    pos = 0

    def go(node: Term):
        nonlocal pos
        if not isinstance(node, Pair):
            pos += 1
            return 1, [codes[pos - 1]]
        s1, l1 = go(node.left)
        s2, l2 = go(node.right)
        return s1 * s2 * _join_sign(l1, l2), l1 + l2

    sign, _ = go(t)
    return sign


def normalize_codes(t: Term, codes: Sequence):
    """Value of ``t`` (as codes) obtained by right-associative normalization."""
    sign = right_assoc_sign(t, codes)
    value = right_assoc_value(list(codes))
    if isinstance(sign, np.ndarray):
        return np.where(sign < 0, value ^ 8, value)
    return value ^ 8 if sign < 0 else value


def right_assoc_normalize(t: Term) -> SignedUnit:
    codes = []
    for leaf in leaves(t):
        if isinstance(leaf, Var):
            raise NotGround(f"{render(t)} contains the variable {leaf}")
        codes.append(leaf.j)
    return SignedUnit.from_code(normalize_codes(t, codes))


@dataclass(frozen=True)
class LambdaSets:
    """For each slot j, the alphas sending the term to ``±e_j`` and that sign."""

    n_leaves: int
    buckets: tuple[dict[tuple[int, ...], int], ...]

    def keyset(self, j: int) -> frozenset[tuple[int, ...]]:
        return frozenset(self.buckets[j])

    def lines(self) -> list[str]:
        out = []
        for j, bucket in enumerate(self.buckets):
            for alpha, sign in bucket.items():
                out.append(f"e{j} {','.join(map(str, alpha))} {'+' if sign > 0 else '-'}")
        return sorted(out)

    def serialize(self) -> str:
        return "".join(line + "\n" for line in self.lines())


def evaluate_all_alphas(t: Term) -> np.ndarray:
    """Codes of ``t`` under every alpha in ``{0..7}^N`` (lexicographic order)."""
    return np.asarray(eval_codes(t, alpha_grid(leaf_count(t))))


def lambda_sets(t: Term) -> LambdaSets:
    if not is_orderly(t):
        raise NotOrderly(f"{render(t)} is not orderly")
    n = leaf_count(t)
    codes = evaluate_all_alphas(t)
    grid = np.stack(alpha_grid(n), axis=1).tolist()
    buckets: tuple[dict, ...] = tuple({} for _ in range(8))
    for alpha, code in zip(grid, codes.tolist()):
        buckets[code & 7][tuple(alpha)] = -1 if code & 8 else 1
    return LambdaSets(n, buckets)


def distinguish(t: Term, u: Term) -> dict[int, SignedUnit]:
    """Assignment into units separating two bracketings of one variable string.

    The result sends one of ``t``, ``u`` to ``e4`` and the other to ``-e4``.
    """
    if not (is_orderly(t) and is_orderly(u)):
        raise NotOrderly("both terms must be orderly")
    if var_indices(t) != var_indices(u):
        raise NotSameSkeleton(f"{render(t)} and {render(u)} have different variable strings")
    if t == u:
        raise EqualTerms(f"{render(t)} given twice")
    mu = {n: SignedUnit(1, 0) for n in var_indices(t)}
    _separate(t, u, mu)
    return mu


def _separate(t: Term, u: Term, mu: dict[int, SignedUnit]) -> None:
    # Both are pairs: a single leaf has only one bracketing.
    assert isinstance(t, Pair) and isinstance(u, Pair)
    if t.left != u.left:
        n_t, n_u = leaf_count(t.left), leaf_count(u.left)
        if n_t == n_u:
            _separate(t.left, u.left, mu)
            return
        # One left part is a proper prefix of the other; pick the first
        # variable only the longer left part holds.
        idx = var_indices(t)
        k = min(n_t, n_u)
        mu[idx[0]] = SignedUnit(1, 5)
        mu[idx[k]] = SignedUnit(1, 6)
        mu[idx[-1]] = SignedUnit(1, 7)
        return
    _separate(t.right, u.right, mu)
