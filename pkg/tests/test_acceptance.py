"""Exit criteria. Each test is one criterion; a PASS/FAIL line per criterion
is printed in the terminal summary (see conftest.py)."""
import itertools
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from barkernest.analysis import envelope_sac_oracle, fast_xcorr, metrics, sac, scc, xcorr
from barkernest.core import BARKER_TABLE, BinarySequence, barker, generate_ccc, nest_signs
from barkernest.extend import (
    NestingPlan,
    barker_extend,
    cdos_extend,
    count_feasible,
    is_feasible,
    min_multiplier,
    plan_length,
    power_of_two_at_least,
)
from barkernest.formats import dumps_json, dumps_text, loads_json, loads_text
from barkernest.verify import are_uncorrelated, is_complementary

pytestmark = pytest.mark.acceptance

EQ_FAMILIES = [(m, N) for m in (1, 2, 3) for N in (0, 1, 2)]
ORACLE_FAMILIES = [(m, N) for m in (1, 2) for N in (0, 1, 2)]
POW2 = (2, 4, 8, 16, 32, 64, 128)


def families(fams):
    return [generate_ccc(m, N) for m, N in fams]


def random_plan(rng, lo=2, hi=20):
    n = rng.choice([k for k in range(lo, hi + 1) if is_feasible(k)])
    lengths = list(plan_length(n).lengths)
    rng.shuffle(lengths)
    ids = [(L, rng.choice([v for (l, v) in BARKER_TABLE if l == L])) for L in lengths]
    return NestingPlan.from_factors(ids)


def nullity_draws(seed=2024, count=100):
    rng = random.Random(seed)
    code = generate_ccc(2, 1)
    out = []
    for _ in range(count):
        i, j = rng.sample(range(len(code)), 2)
        out.append((barker_extend(code[i], random_plan(rng)), barker_extend(code[j], random_plan(rng))))
    return out


def all_small_plans(limit=32):
    keys = sorted(BARKER_TABLE)
    for depth in range(1, 6):
        for ids in itertools.product(keys, repeat=depth):
            if np.prod([k[0] for k in ids]) <= limit:
                yield NestingPlan.from_factors(ids)


def test_criterion_01_sac_impulse():
    t0 = time.perf_counter()
    for code in families(EQ_FAMILIES):
        M, L = code.M, code.length
        for s in code:
            p = sac(s)
            expected = np.zeros(2 * L - 1, dtype=np.int64)
            expected[L - 1] = M * L
            assert np.array_equal(p.values, expected)
            assert is_complementary(s)
    assert time.perf_counter() - t0 < 10


def test_criterion_02_scc_zero():
    t0 = time.perf_counter()
    for code in families(EQ_FAMILIES):
        for a, b in itertools.combinations(code, 2):
            assert scc(a, b).is_zero()
            assert scc(b, a).is_zero()
            assert are_uncorrelated(a, b)
    assert time.perf_counter() - t0 < 10


def test_criterion_03_extension_nullity():
    for a, b in nullity_draws():
        assert scc(a, b).is_zero()
        assert are_uncorrelated(a, b)
    s = generate_ccc(2, 1)[0]
    a = barker_extend(s, BinarySequence([1, 1]))
    b = barker_extend(s, BinarySequence([1, -1]))
    v = are_uncorrelated(a, b)
    assert not v.ok
    assert scc(a, b).at(v.lag) == v.value != 0


def test_criterion_04_cdos_half():
    for code in families([(1, 1), (2, 1)]):
        for q in range(1, 7):
            assert metrics(sac(cdos_extend(code[0], q))).smr == Fraction(1, 2)


def test_criterion_05_barker_smr():
    base = generate_ccc(1, 1)[0]

    def smr(env):
        return metrics(sac(barker_extend(base, env))).smr

    assert smr(barker(13).signs) == Fraction(1, 13)
    assert smr(nest_signs([barker(13), barker(13)])) == Fraction(1, 13)
    assert smr(plan_length(169)) == Fraction(1, 13)
    assert smr(plan_length(7)) == Fraction(1, 7)
    assert smr(plan_length(11)) == Fraction(1, 11)
    assert smr(plan_length(20)) == Fraction(1, 4)
    # independent: every nesting of {4, 5} by explicit autocorrelation
    best = None
    for order in itertools.permutations((4, 5)):
        for vs in itertools.product(*[[v for (l, v) in BARKER_TABLE if l == n] for n in order]):
            env = nest_signs([barker(n, v) for n, v in zip(order, vs)]).tolist()
            peak = max(abs(sum(env[i] * env[i + k] for i in range(20 - k))) for k in range(1, 20))
            best = Fraction(peak, 20) if best is None else min(best, Fraction(peak, 20))
    assert best == Fraction(1, 4)


def test_criterion_06_fig2_envelope():
    t0 = time.perf_counter()
    base = generate_ccc(1, 1)[0]
    n_quartered = 0
    for n in range(2, 129):
        if not is_feasible(n):
            continue
        plan = plan_length(n)
        smr = metrics(sac(barker_extend(base, plan))).smr
        assert smr <= Fraction(1, 2)
        if n % 4 == 0 and 2 not in plan.lengths:
            assert smr < Fraction(1, 2)
            n_quartered += 1
    assert n_quartered > 0
    assert time.perf_counter() - t0 < 30


def test_criterion_07_length_count():
    assert count_feasible(1, 128) == 73
    assert sum(1 for n in range(1, 129) if n > 1 and n & (n - 1) == 0) == 7


def test_criterion_08_beacon_planning():
    for gain, n, p2, saving in [(10, 10, 16, Fraction(375, 1000)), (6, 6, 8, Fraction(1, 4))]:
        assert min_multiplier(gain) == n
        assert power_of_two_at_least(gain) == p2
        assert Fraction(p2 - n, p2) == saving


def test_criterion_09_fig5_points():
    base = generate_ccc(1, 1)[0]
    c4 = metrics(sac(cdos_extend(base, 2)))
    b4 = metrics(sac(barker_extend(base, plan_length(4))))
    assert (c4.signed_sum_ratio, c4.abs_sum_ratio) == (-1, 2)
    assert (b4.signed_sum_ratio, b4.abs_sum_ratio) == (0, 1)
    for q, n in enumerate(POW2, 1):
        c = metrics(sac(cdos_extend(base, q)))
        b = metrics(sac(barker_extend(base, plan_length(n))))
        assert b.abs_sum_ratio <= c.abs_sum_ratio


def test_criterion_10_oracle_equivalence():
    t0 = time.perf_counter()
    plans = list(all_small_plans())
    for code in families(ORACLE_FAMILIES):
        for s in code:
            for plan in plans:
                got = sac(barker_extend(s, plan))
                assert got == envelope_sac_oracle(plan.envelope, code.m, s.length)
    rng = np.random.default_rng(12345)
    for _ in range(1000):
        la, lb = (int(2 ** rng.uniform(0, 15)) for _ in range(2))
        a = rng.choice([-1, 1], size=la)
        b = rng.choice([-1, 1], size=lb)
        fast = fast_xcorr(a, b)
        if la * lb <= 1 << 24:
            assert fast == xcorr(a, b)
        else:
            for k in rng.integers(-(lb - 1), la, size=32).tolist():
                lo, hi = max(0, -k), min(lb, la - k)
                assert fast.at(k) == int(np.dot(a[lo + k : hi + k], b[lo:hi]))
    a = rng.choice([-1, 1], size=2**15)
    b = rng.choice([-1, 1], size=2**15)
    assert fast_xcorr(a, b) == xcorr(a, b)
    assert time.perf_counter() - t0 < 60


def round_trip_artifacts():
    for code in families(EQ_FAMILIES):
        yield from code
    for a, b in nullity_draws():
        yield a
        yield b
    for code in families([(1, 1), (2, 1)]):
        for q in range(1, 7):
            yield cdos_extend(code[0], q)
    base = generate_ccc(1, 1)[0]
    for n in [n for n in range(2, 129) if is_feasible(n)] + [169]:
        yield barker_extend(base, plan_length(n))
    for code in families(ORACLE_FAMILIES):
        for s in code:
            for plan in list(all_small_plans())[::11]:
                yield barker_extend(s, plan)


def test_criterion_11_round_trip():
    count = 0
    for s in round_trip_artifacts():
        j = dumps_json(s)
        back = loads_json(j)
        assert back.chips_equal(s)
        assert back == s
        assert dumps_json(back) == j
        t = dumps_text(s)
        assert loads_text(t).chips_equal(s)
        count += 1
    assert count > 300
