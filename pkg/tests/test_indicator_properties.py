"""
지표 성질 테스트

- R_1-JIF == 2-JIF (분자/분모 그대로)
- 2M-JIF >= 2-JIF, 동률이면 maturity time 2
- 2M-JIF / maturity time 이 모든 창을 훑는 단순 oracle 과 일치 (소형 인스턴스 전수 + 무작위)
- 창 값은 창 안 연도별 비율의 [min, max] 안에 있음
- 피인용 수를 λ 배 하면 값도 λ 배, maturity time 은 그대로
"""
import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.indicators import (
    decompose_unmeasured_impact,
    impact_maturity_time,
    n_jif,
    rolling_jif,
    rolling_series,
    two_jif,
    two_m_jif,
)
from core.journal_record import validate_record

SEED = 20111231


def make_record(citations, items):
    return validate_record({
        'id': 'J',
        'category': 'C',
        'census_year': 2011,
        'citations': list(citations),
        'citable_items': list(items),
    })


def random_record(rng: random.Random, max_count: int = 20):
    horizon = rng.randint(2, 6)
    return make_record(
        [rng.randint(0, max_count) for _ in range(horizon)],
        [rng.randint(0, max_count) for _ in range(horizon)],
    )


def oracle(citations, items):
    """모든 2년 창 비율을 만들어 놓고 최대를 찾는 단순 구현: (분자, 분모, maturity) 또는 None"""
    windows = []
    for j in range(1, len(citations)):
        num = citations[j - 1] + citations[j]
        den = items[j - 1] + items[j]
        windows.append((j, num, den))
    defined = [(j, num, den) for j, num, den in windows if den > 0]
    if not defined:
        return None
    best = max(Fraction(num, den) for _, num, den in defined)
    for j, num, den in defined:
        if Fraction(num, den) == best:
            return num, den, j + 1


@st.composite
def records(draw, max_count=50, min_items=0):
    horizon = draw(st.integers(min_value=2, max_value=8))
    counts = st.integers(min_value=0, max_value=max_count)
    return make_record(
        draw(st.lists(counts, min_size=horizon, max_size=horizon)),
        draw(st.lists(st.integers(min_value=min_items, max_value=max_count), min_size=horizon, max_size=horizon)),
    )


class TestWindowIdentity:

    def test_r1_equals_two_jif_randomized(self):
        rng = random.Random(SEED)
        for _ in range(1000):
            record = random_record(rng)
            r1, base = rolling_jif(record, 1), two_jif(record)
            assert (r1.numerator, r1.denominator) == (base.numerator, base.denominator)
            assert r1.value == base.value

    @given(records())
    def test_r1_equals_two_jif(self, record):
        assert rolling_jif(record, 1) == two_jif(record)


class TestDominance:

    def test_dominance_randomized(self):
        rng = random.Random(SEED + 1)
        checked = 0
        while checked < 1000:
            record = random_record(rng)
            base, peak = two_jif(record), two_m_jif(record)
            if not (base.defined and peak.defined):
                continue
            checked += 1
            assert peak.ratio >= base.ratio
            assert (peak.ratio == base.ratio) == (impact_maturity_time(record) == 2)

    @given(records())
    def test_dominance(self, record):
        base, peak = two_jif(record), two_m_jif(record)
        if base.defined and peak.defined:
            assert peak.ratio >= base.ratio


class TestOracleEquivalence:

    @staticmethod
    def _check(citations, items):
        record = make_record(citations, items)
        expected = oracle(citations, items)
        peak = two_m_jif(record)
        if expected is None:
            assert not peak.defined
            assert impact_maturity_time(record) is None
        else:
            num, den, maturity = expected
            assert peak.ratio == Fraction(num, den)
            assert impact_maturity_time(record) == maturity

    def test_exhaustive_small_instances(self):
        cases = 0
        # Y=2: 카운트 0..9 전수
        for c in itertools.product(range(10), repeat=2):
            for a in itertools.product(range(10), repeat=2):
                self._check(c, a)
                cases += 1
        # Y=3: 피인용 0..3, 항목 0..2 전수
        for c in itertools.product(range(4), repeat=3):
            for a in itertools.product(range(3), repeat=3):
                self._check(c, a)
                cases += 1
        assert cases >= 10000

    def test_random_instances(self):
        rng = random.Random(SEED + 2)
        for _ in range(10000):
            horizon = rng.randint(2, 6)
            c = [rng.randint(0, 20) for _ in range(horizon)]
            a = [rng.randint(0, 20) for _ in range(horizon)]
            self._check(c, a)


class TestMediantBounds:

    @given(records(min_items=1))
    def test_windows_within_yearly_rates(self, record):
        rates = [Fraction(c, a) for c, a in zip(record.citations, record.citable_items)]
        for n in range(1, record.horizon + 1):
            value = n_jif(record, n).ratio
            assert min(rates[:n]) <= value <= max(rates[:n])
        for j, window in enumerate(rolling_series(record), start=1):
            assert min(rates[j - 1:j + 1]) <= window.ratio <= max(rates[j - 1:j + 1])


class TestHomogeneity:

    @given(records(), st.integers(min_value=1, max_value=9))
    def test_scaling_citations(self, record, factor):
        scaled = make_record([c * factor for c in record.citations], record.citable_items)
        for original, multiplied in zip(rolling_series(record), rolling_series(scaled)):
            if original.defined:
                assert multiplied.ratio == original.ratio * factor
        assert impact_maturity_time(scaled) == impact_maturity_time(record)
        if two_m_jif(record).defined:
            assert two_m_jif(scaled).ratio == two_m_jif(record).ratio * factor


class TestDecompositionIdentity:

    @settings(max_examples=300)
    @given(
        st.integers(min_value=2, max_value=8).flatmap(
            lambda y: st.lists(st.integers(min_value=0, max_value=10000), min_size=y, max_size=y)
        ),
        st.integers(min_value=1, max_value=500),
    )
    def test_two_jif_plus_unmeasured(self, citations, items):
        record = make_record(citations, [items] * len(citations))
        result = decompose_unmeasured_impact(record)
        assert result.two_jif + result.unmeasured == pytest.approx(two_m_jif(record).value, rel=1e-12, abs=1e-12)
        assert result.unmeasured >= 0
