"""Acceptance criteria, each timed against its stated budget.

Every check is exact.  Each test records one PASS/FAIL line, printed in the
terminal summary.
"""

import time
from itertools import combinations

import numpy as np
import pytest

from octoramsey.loops import (
    PeriodicSequence,
    cyclic,
    is_associative,
    is_moufang,
    m_g2,
    octo16,
    ramsey_reduce,
    symmetric3,
    validate_loop,
)
from octoramsey.naf import NafDigits, naf_decode, naf_encode, sd_from_terms
from octoramsey.octonion import SignedUnit, unit_mul
from octoramsey.signs import distinguish, evaluate_all_alphas, normalize_codes
from octoramsey.terms import alpha_grid, bracketings, enumerate_orderly, eval_assigned, eval_codes
from octoramsey.witness import (
    Case,
    Verdict,
    _exponent_array,
    bigint_eval,
    chains,
    fr_prefix,
    in_X,
    symbolic_eval,
    theorem_sweep,
)

pytestmark = pytest.mark.acceptance

INDEX_BOUND = 7  # indices 0..6
LEAF_CAP = 5

# Unit products as signed 1-based indices, typed in independently of the library.
TABLE = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, -1, 4, -3, 6, -5, -8, 7],
    [3, -4, -1, 2, 7, 8, -5, -6],
    [4, 3, -2, -1, 8, -7, 6, -5],
    [5, -6, -7, -8, -1, 2, 3, 4],
    [6, 5, -8, 7, -2, -1, -4, 3],
    [7, 8, 5, -6, -3, 4, -1, -2],
    [8, -7, 6, 5, -4, -3, 2, -1],
]


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def finish(record, name, ok, timer, budget):
    within = timer.seconds < budget
    record(name, ok and within, timer.seconds)
    assert ok, name
    assert within, f"{name}: {timer.seconds:.1f}s exceeds {budget}s"


def test_1_table_fidelity(record_criterion):
    with Timer() as t:
        fidelity = all(
            unit_mul(SignedUnit(1, i), SignedUnit(1, j)) == SignedUnit(1 if v > 0 else -1, abs(v) - 1)
            for i, row in enumerate(TABLE)
            for j, v in enumerate(row)
        )
        pairs = [(i, j) for i in range(1, 8) for j in range(1, 8) if i != j]
        anti = len(pairs) == 42 and all(
            unit_mul(SignedUnit(1, i), SignedUnit(1, j)) == -unit_mul(SignedUnit(1, j), SignedUnit(1, i))
            for i, j in pairs
        )
        squares = all(unit_mul(SignedUnit(1, i), SignedUnit(1, i)) == SignedUnit(-1, 0) for i in range(1, 8))
    finish(record_criterion, "1 table fidelity", fidelity and anti and squares, t, 1)


def test_2_bracketing_sweep(record_criterion):
    ok = True
    evaluations = 0
    with Timer() as t:
        for n in range(1, 7):
            grid = alpha_grid(n)
            ref = None
            for shape in bracketings(n):
                direct = np.asarray(eval_codes(shape, grid))
                ok &= bool(np.array_equal(np.asarray(normalize_codes(shape, grid)), direct))
                if ref is None:
                    ref = direct & 7
                ok &= bool(np.array_equal(direct & 7, ref))
                evaluations += direct.size
    assert evaluations == sum(8**n * len(bracketings(n)) for n in range(1, 7))
    finish(record_criterion, "2 bracketing sweep", ok, t, 60)


def test_3_separation_sweep(record_criterion):
    ok = True
    with Timer() as t:
        for n in range(2, 6):
            shapes = enumerate_orderly(range(n))
            values = {s: evaluate_all_alphas(s) for s in shapes}
            for a, b in combinations(shapes, 2):
                for u, v in ((a, b), (b, a)):
                    mu = distinguish(u, v)
                    x, y = eval_assigned(u, mu), eval_assigned(v, mu)
                    ok &= {x, y} == {SignedUnit(1, 4), SignedUnit(-1, 4)}
                # Brute force over all 8^N unit assignments.
                ok &= bool(np.any(values[a] == (values[b] ^ 8)))
    finish(record_criterion, "3 separation sweep", ok, t, 60)


def test_4_naf(record_criterion):
    with Timer() as t:
        ok = all(naf_decode(naf_encode(a)) == a for a in range(-10**6, 10**6 + 1))
        # Every mask pair without adjacent or shared bits is a valid width-12 string.
        nonadjacent = [m for m in range(1 << 12) if not m & (m >> 1)]
        values = set()
        count = 0
        for m in nonadjacent:
            sub = m
            while True:
                values.add(NafDigits(sub, m ^ sub).value)
                count += 1
                if not sub:
                    break
                sub = (sub - 1) & m
        ok &= len(values) == count
    finish(record_criterion, "4 NAF round trip and uniqueness", ok, t, 10)


def test_5_observation(record_criterion):
    ok = True
    with Timer() as t:
        for n in range(1, LEAF_CAP + 1):
            for idx in combinations(range(INDEX_BOUND), n):
                exps = np.sort(np.asarray(_exponent_array(idx), dtype=np.int64))
                ok &= bool(np.all(np.diff(exps) >= 2))
                for term in enumerate_orderly(idx):
                    codes = np.asarray(eval_codes(term, alpha_grid(n)))
                    raw = np.asarray(_exponent_array(idx))
                    slots, signs = codes & 7, np.where(codes & 8, -1, 1)
                    value = symbolic_eval(term)
                    for j in range(8):
                        sel = slots == j
                        sd = sd_from_terms(zip(raw[sel].tolist(), signs[sel].tolist()))
                        ok &= sd.carries == 0 and sd == value.coeffs[j]
    finish(record_criterion, "5 exponent observation", ok, t, 60)


def test_6_main_theorem(record_criterion):
    with Timer() as t:
        reports = theorem_sweep(LEAF_CAP, INDEX_BOUND)
    ok = bool(reports) and all(
        r.verdict is Verdict.DISTINCT and r.slot == (4 if r.case is Case.SAME_STRING else 0) for r in reports
    )
    finish(record_criterion, "6 main theorem sweep", ok, t, 300)


def test_7_oracle(record_criterion):
    with Timer() as t:
        terms = [term for n in (1, 2) for idx in combinations(range(2), n) for term in enumerate_orderly(idx)]
        ok = len(terms) == 3 and all(symbolic_eval(term).to_big() == bigint_eval(term) for term in terms)
    finish(record_criterion, "7 symbolic vs big-integer oracle", ok, t, 60)


def test_8_non_ramsey_witness(record_criterion):
    ok = True
    n_chains = 0
    with Timer() as t:
        for chain in chains(LEAF_CAP, INDEX_BOUND):
            flags = [in_X(v, INDEX_BOUND, LEAF_CAP) for v in fr_prefix(chain, 3)]
            ok &= any(flags) and not all(flags)
            n_chains += 1
    finish(record_criterion, "8 non-Ramsey witness", ok and n_chains > 0, t, 300)


def _block_products(loop, seq, witness):
    out = []
    for block in witness.blocks:
        acc = seq[block[0]]
        for p in block[1:]:
            acc = int(loop.table[acc, seq[p]])
        out.append(acc)
    return out


def test_9_moufang_suite(record_criterion):
    rng = np.random.default_rng(2)
    with Timer() as t:
        groups = [cyclic(n) for n in range(2, 7)] + [symmetric3()]
        ok = True
        for g in groups:
            m = m_g2(g)
            abelian = bool(np.array_equal(g.table, g.table.T))
            ok &= is_moufang(m) and is_associative(m) == abelian
        s3 = validate_loop(m_g2(symmetric3()))
        ok &= s3.order == 12 and s3.moufang and not s3.associative
        o = validate_loop(octo16())
        ok &= o.order == 16 and o.moufang and not o.associative
        for loop in (m_g2(symmetric3()), octo16()):
            for _ in range(50):
                seq = PeriodicSequence(
                    rng.integers(loop.order, size=int(rng.integers(4))).tolist(),
                    rng.integers(loop.order, size=int(rng.integers(1, 6))).tolist(),
                )
                w = ramsey_reduce(loop, seq)
                ok &= all(p == loop.identity for p in _block_products(loop, seq, w))
    finish(record_criterion, "9 Moufang suite", ok, t, 10)
