"""Finite loops as Cayley tables: validation, Moufang checks, M(G, 2).

Elements are the indices ``0 .. n-1``; ``table[a][b]`` is the index of
``a * b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np

from .errors import (
    BracketingDisagreement,
    MalformedTable,
    NotAGroup,
    NotMG2Shaped,
    NotMoufang,
)
from .octonion import MUL_CODES

__all__ = [
    "LoopTable",
    "LoopReport",
    "PeriodicSequence",
    "ReductionWitness",
    "GroupReduction",
    "validate_loop",
    "is_moufang",
    "is_associative",
    "moufang_variants",
    "cyclic",
    "symmetric3",
    "octo16",
    "builtin",
    "m_g2",
    "element_order",
    "ramsey_reduce",
    "mg2_reduce_to_group",
    "parse_table",
    "format_table",
]


@dataclass(frozen=True, eq=False)
class LoopTable:
    order: int
    identity: int
    table: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.order < 1:
            raise MalformedTable("a loop needs at least one element")
        table = np.asarray(self.table)
        if table.ndim != 2 or table.shape != (self.order, self.order):
            raise MalformedTable(f"table shape {table.shape} does not match order {self.order}")
        if not np.issubdtype(table.dtype, np.integer):
            raise MalformedTable("table entries must be integers")
        if table.min() < 0 or table.max() >= self.order:
            raise MalformedTable("table entry out of range")
        if not 0 <= self.identity < self.order:
            raise MalformedTable(f"identity index {self.identity} out of range")
        if self.names is not None and len(self.names) != self.order:
            raise MalformedTable(f"{len(self.names)} names for {self.order} elements")
        table = table.astype(np.int64)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def name(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def index(self, name: str) -> int:
        if self.names and name in self.names:
            return self.names.index(name)
        try:
            a = int(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None
        if not 0 <= a < self.order:
            raise KeyError(f"element index {a} out of range")
        return a

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LoopTable):
            return NotImplemented
        return (
            self.order == other.order
            and self.identity == other.identity
            and bool(np.array_equal(self.table, other.table))
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class LoopReport:
    order: int
    moufang: bool
    associative: bool

    def line(self) -> str:
        return (
            f"valid {'moufang' if self.moufang else 'non-moufang'} "
            f"{'associative' if self.associative else 'nonassociative'} order={self.order}"
        )


def validate_loop(loop: LoopTable) -> LoopReport:
    """Check Latin square and identity; raise :class:`MalformedTable` otherwise."""
    t = loop.table
    n = loop.order
    full = np.arange(n)
    for a in range(n):
        if not np.array_equal(np.sort(t[a]), full):
            raise MalformedTable(f"row {loop.name(a)} repeats an entry")
        if not np.array_equal(np.sort(t[:, a]), full):
            raise MalformedTable(f"column {loop.name(a)} repeats an entry")
    e = loop.identity
    if not (np.array_equal(t[e], full) and np.array_equal(t[:, e], full)):
        raise MalformedTable(f"{loop.name(e)} is not a two-sided identity")
    return LoopReport(n, is_moufang(loop), is_associative(loop))


def _triples(n: int):
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    return x, y, z


def is_associative(loop: LoopTable) -> bool:
    t = loop.table
    x, y, z = _triples(loop.order)
    return bool(np.array_equal(t[t[x, y], z], t[x, t[y, z]]))


def moufang_variants(loop: LoopTable) -> dict[str, bool]:
    """The four classical Moufang identities, each checked over all triples."""
    t = loop.table
    x, y, z = _triples(loop.order)
    return {
        "z(x(zy))=((zx)z)y": bool(np.array_equal(t[z, t[x, t[z, y]]], t[t[t[z, x], z], y])),
        "x(z(yz))=((xz)y)z": bool(np.array_equal(t[x, t[z, t[y, z]]], t[t[t[x, z], y], z])),
        "(zx)(yz)=(z(xy))z": bool(np.array_equal(t[t[z, x], t[y, z]], t[t[z, t[x, y]], z])),
        "(zx)(yz)=z((xy)z)": bool(np.array_equal(t[t[z, x], t[y, z]], t[z, t[t[x, y], z]])),
    }


def is_moufang(loop: LoopTable) -> bool:
    """``z(x(zy)) = ((zx)z)y`` for all x, y, z."""
    t = loop.table
    x, y, z = _triples(loop.order)
    return bool(np.array_equal(t[z, t[x, t[z, y]]], t[t[t[z, x], z], y]))


def cyclic(n: int) -> LoopTable:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    a = np.arange(n)
    return LoopTable(n, 0, (a[:, None] + a[None, :]) % n, tuple(str(i) for i in range(n)))


def symmetric3() -> LoopTable:
    """S3 with permutations in lexicographic order; ``(p*q)(i) = p(q(i))``."""
    perms = list(permutations(range(3)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    names = tuple("".join(map(str, p)) for p in perms)
    return LoopTable(6, 0, np.array(table), names)


def octo16() -> LoopTable:
    """The signed unit octonions ``±e_j``; index ``j`` is ``e_j``, ``j + 8`` is ``-e_j``."""
    names = tuple(f"e{j}" for j in range(8)) + tuple(f"-e{j}" for j in range(8))
    return LoopTable(16, 0, np.array(MUL_CODES), names)


def builtin(name: str) -> LoopTable:
    """``z<n>``, ``s3``, ``octo16`` or ``mg2:<name>``."""
    name = name.strip().lower()
    if name.startswith("mg2:"):
        return m_g2(builtin(name[4:]))
    if name == "s3":
        return symmetric3()
    if name == "octo16":
        return octo16()
    if name.startswith("z") and name[1:].isdigit():
        return cyclic(int(name[1:]))
    raise ValueError(f"unknown built-in loop {name!r}")


def _inverses(group: LoopTable) -> np.ndarray:
    t = group.table
    inv = np.empty(group.order, dtype=np.int64)
    for g in range(group.order):
        (hits,) = np.nonzero(t[g] == group.identity)
        inv[g] = hits[0]
    return inv


def m_g2(group: LoopTable) -> LoopTable:
    """Double a group G to ``G ∪ Gu``; ``g`` sits at index i, ``g·u`` at ``i + n``.

    ``(gu)h = (g h^-1)u``, ``g(hu) = (hg)u``, ``(gu)(hu) = h^-1 g``.
    """
    validate_loop(group)
    if not is_associative(group):
        raise NotAGroup("M(G, 2) needs an associative G")
    n = group.order
    t = group.table
    inv = _inverses(group)
    g = np.arange(n)[:, None]
    h = np.arange(n)[None, :]
    out = np.empty((2 * n, 2 * n), dtype=np.int64)
    out[:n, :n] = t
    out[n:, :n] = t[g, inv[h]] + n
    out[:n, n:] = t[h, g] + n
    out[n:, n:] = t[inv[h], g]
    base = [group.name(i) for i in range(n)]
    names = tuple(base) + tuple(f"{b}·u" for b in base)
    return LoopTable(2 * n, group.identity, out, names)


def _bracketing_values(loop: LoopTable, g: int, m: int) -> list[set[int]]:
    """``vals[k]``: the values of every bracketing of ``g^k`` for ``k <= m``."""
    vals: list[set[int]] = [set(), {g}]
    for k in range(2, m + 1):
        vals.append({loop.mul(a, b) for i in range(1, k) for a in vals[i] for b in vals[k - i]})
    return vals


def element_order(loop: LoopTable, g: int) -> int:
    """Least k with the left-nested power ``g^k`` equal to the identity."""
    if not is_moufang(loop):
        raise NotMoufang("element orders are only used on Moufang loops")
    power, k = g, 1
    while power != loop.identity:
        power = loop.mul(power, g)
        k += 1
        if k > loop.order:
            raise ArithmeticError(f"{loop.name(g)} has no finite order within the loop size")
    for m, vals in enumerate(_bracketing_values(loop, g, k)):
        if m and len(vals) != 1:
            raise BracketingDisagreement(
                f"bracketings of {loop.name(g)}^{m} give {sorted(loop.name(v) for v in vals)}"
            )
    return k


@dataclass(frozen=True)
class PeriodicSequence:
    """``prefix`` followed by ``cycle`` repeated forever."""

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("cycle must be nonempty")

    def __getitem__(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def positions_of(self, g: int, count: int) -> list[int]:
        """First ``count`` positions holding ``g`` (``g`` must occur in the cycle)."""
        if g not in self.cycle:
            raise ValueError("element does not recur")
        out, i = [], 0
        while len(out) < count:
            if self[i] == g:
                out.append(i)
            i += 1
        return out


@dataclass(frozen=True)
class ReductionWitness:
    """Consecutive blocks of ``order`` occurrences of ``element``; each multiplies to the identity."""

    element: int
    order: int
    blocks: tuple[tuple[int, ...], ...]
    products: tuple[int, ...]


def _left_product(loop: LoopTable, items: Sequence[int]) -> int:
    acc = items[0]
    for x in items[1:]:
        acc = loop.mul(acc, x)
    return acc


def ramsey_reduce(loop: LoopTable, seq: PeriodicSequence, n_blocks: int = 3) -> ReductionWitness:
    """Finite certificate of a reduction of ``seq`` made of the identity alone."""
    if not is_moufang(loop):
        raise NotMoufang("ramsey_reduce needs a Moufang loop")
    g = min(seq.cycle)
    k = element_order(loop, g)
    pos = seq.positions_of(g, k * n_blocks)
    blocks = tuple(tuple(pos[i : i + k]) for i in range(0, len(pos), k))
    products = tuple(_left_product(loop, [seq[p] for p in b]) for b in blocks)
    return ReductionWitness(g, k, blocks, products)


@dataclass(frozen=True)
class GroupReduction:
    """``kind`` is ``subsequence`` or ``pairing``; block values all lie in G."""

    kind: str
    blocks: tuple[tuple[int, ...], ...]
    products: tuple[int, ...]


def _group_half(loop: LoopTable) -> LoopTable:
    if loop.order % 2:
        raise NotMG2Shaped("M(G, 2) has even order")
    n = loop.order // 2
    if loop.identity >= n:
        raise NotMG2Shaped("identity must lie in the group half")
    sub = loop.table[:n, :n]
    if sub.max() >= n:
        raise NotMG2Shaped("the first half is not closed")
    names = loop.names[:n] if loop.names else None
    try:
        group = LoopTable(n, loop.identity, sub, names)
        rebuilt = m_g2(group)
    except (MalformedTable, NotAGroup) as exc:
        raise NotMG2Shaped(str(exc)) from None
    if rebuilt != loop:
        raise NotMG2Shaped("table does not follow the M(G, 2) rules")
    return group


def mg2_reduce_to_group(loop: LoopTable, seq: PeriodicSequence, n_blocks: int = 3) -> GroupReduction:
    """A reduction of ``seq`` whose terms all lie in G.

    A group element in the cycle gives a subsequence; otherwise the tail is
    all of ``Gu`` and consecutive pairs ``(gu)(hu) = h^-1 g`` land in G.
    """
    n = _group_half(loop).order
    in_group = [c for c in seq.cycle if c < n]
    if in_group:
        pos = seq.positions_of(min(in_group), n_blocks)
        blocks = tuple((p,) for p in pos)
        return GroupReduction("subsequence", blocks, tuple(seq[p] for p in pos))
    start = len(seq.prefix)
    blocks = tuple((start + 2 * i, start + 2 * i + 1) for i in range(n_blocks))
    products = tuple(loop.mul(seq[a], seq[b]) for a, b in blocks)
    return GroupReduction("pairing", blocks, products)


def parse_table(text: str) -> LoopTable:
    """Read ``n``, the identity index, n rows, and an optional ``# names:`` line."""
    names = None
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("names:"):
                names = tuple(body[len("names:"):].split())
            continue
        rows.append(line.split())
    if len(rows) < 2:
        raise MalformedTable("missing order or identity line")
    try:
        n = int(rows[0][0])
        identity = int(rows[1][0])
        body = [[int(x) for x in r] for r in rows[2:]]
    except (ValueError, IndexError):
        raise MalformedTable("non-integer entry") from None
    if len(rows[0]) != 1 or len(rows[1]) != 1:
        raise MalformedTable("order and identity lines hold one integer each")
    if len(body) != n or any(len(r) != n for r in body):
        raise MalformedTable(f"expected {n} rows of {n} entries")
    return LoopTable(n, identity, np.array(body, dtype=np.int64).reshape(n, n), names)


def format_table(loop: LoopTable) -> str:
    width = len(str(loop.order - 1))
    lines = [str(loop.order), str(loop.identity)]
    lines += [" ".join(str(int(v)).rjust(width) for v in row) for row in loop.table]
    if loop.names:
        lines.append("# names: " + " ".join(loop.names))
    return "\n".join(lines) + "\n"
