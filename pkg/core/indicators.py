"""
저널 영향력 지표 계산

고정 창(n-JIF), 2년 rolling 창(R_j-JIF), 최대 rolling 창(2M-JIF),
impact maturity time, 그리고 2-JIF가 측정하지 못한 영향력 분해를 계산합니다.

최대값과 동률 판정은 Fraction(정수 교차곱)으로만 수행하고, float 값은 출력용입니다.
동률이면 가장 작은 j (가장 최근 창)가 이깁니다.
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple, Union

from core.errors import ConfigError, NonConstantItems, UndefinedIndicator, WindowOutOfRange
from core.journal_record import IndicatorValue, JournalRecord

# rolling 창의 폭 (년). 폭을 일반화하는 것은 아직 공개 API가 아님
ROLLING_WIDTH = 2


@dataclass(frozen=True)
class IndicatorReport:
    """저널 한 개의 지표 계산 결과 (지표 표의 한 행)"""

    journal_id: str
    category: str
    rolling: Tuple[IndicatorValue, ...]
    two_m_jif: IndicatorValue
    maturity_time: Optional[int]
    fixed: Dict[int, IndicatorValue] = field(default_factory=dict)

    @property
    def horizon(self) -> int:
        return len(self.rolling) + 1

    @property
    def gain(self) -> Optional[float]:
        """2-JIF 대비 2M-JIF 상승률 (%)"""
        return _gain(self.rolling[0], self.two_m_jif)

    def to_dict(self) -> Dict[str, Any]:
        """JSON 직렬화를 위한 딕셔너리 변환"""
        return {
            'journal': self.journal_id,
            'category': self.category,
            'rolling': [v.to_dict() for v in self.rolling],
            'two_m_jif': self.two_m_jif.to_dict(),
            'maturity_time': self.maturity_time,
            'fixed': {str(n): v.to_dict() for n, v in sorted(self.fixed.items())},
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'IndicatorReport':
        return cls(
            journal_id=data['journal'],
            category=data['category'],
            rolling=tuple(IndicatorValue.from_dict(v) for v in data['rolling']),
            two_m_jif=IndicatorValue.from_dict(data['two_m_jif']),
            maturity_time=data.get('maturity_time'),
            fixed={int(n): IndicatorValue.from_dict(v) for n, v in data.get('fixed', {}).items()},
        )


class UnmeasuredImpact(NamedTuple):
    """2M-JIF = two_jif + unmeasured (항목 수가 매년 같을 때)"""

    two_jif: float
    unmeasured: float
    maximizing_lag: int


class ProfileRow(NamedTuple):
    """citation age 분포의 한 행 (그림용 데이터)"""

    age: int
    citations: int
    items: int
    rate: Optional[float]


# ============================================================================
# 고정 창
# ============================================================================
def n_jif(record: JournalRecord, n: int) -> IndicatorValue:
    """
    n년 impact factor: 직전 n년 출판 항목의 피인용 합 / 항목 합

    Raises:
        WindowOutOfRange: n < 1 또는 n > Y
    """
    if n < 1 or n > record.horizon:
        raise WindowOutOfRange(
            f"window n={n} outside 1..{record.horizon}", journal_id=record.id
        )
    return IndicatorValue(
        numerator=sum(record.citations[:n]),
        denominator=sum(record.citable_items[:n]),
    )


def two_jif(record: JournalRecord) -> IndicatorValue:
    return n_jif(record, 2)


def three_jif(record: JournalRecord) -> IndicatorValue:
    """3년 target 창 (census 1년)"""
    return n_jif(record, 3)


def five_jif(record: JournalRecord) -> IndicatorValue:
    return n_jif(record, 5)


def total_cites_jif(record: JournalRecord) -> IndicatorValue:
    """전체 이력(complete citation window) 기준"""
    return n_jif(record, record.horizon)


# ============================================================================
# rolling 창
# ============================================================================
def rolling_jif(record: JournalRecord, j: int) -> IndicatorValue:
    """
    R_j-JIF: (t-j), (t-j-1) 년도 2년 창의 비율

    Raises:
        WindowOutOfRange: j < 1 또는 j > Y-1
    """
    last = record.horizon - ROLLING_WIDTH + 1
    if j < 1 or j > last:
        raise WindowOutOfRange(f"rolling lag j={j} outside 1..{last}", journal_id=record.id)
    window = slice(j - 1, j - 1 + ROLLING_WIDTH)
    return IndicatorValue(
        numerator=sum(record.citations[window]),
        denominator=sum(record.citable_items[window]),
    )


def rolling_series(record: JournalRecord) -> Tuple[IndicatorValue, ...]:
    """R_1 .. R_h"""
    return tuple(rolling_jif(record, j) for j in range(1, record.horizon - ROLLING_WIDTH + 2))


def _argmax_window(windows: Iterable[IndicatorValue]) -> Optional[Tuple[int, IndicatorValue]]:
    """정의된 창 중 최대 비율의 (j, 값). 동률이면 먼저 나온 j 유지"""
    best: Optional[Tuple[int, IndicatorValue]] = None
    best_ratio: Optional[Fraction] = None
    for j, window in enumerate(windows, start=1):
        ratio = window.ratio
        if ratio is None:
            continue
        if best_ratio is None or ratio > best_ratio:
            best, best_ratio = (j, window), ratio
    return best


def two_m_jif(record: JournalRecord) -> IndicatorValue:
    """
    2년 최대 impact factor: 정의된 rolling 창 중 최대값

    분모 0인 창은 후보에서 제외하며, 모든 창이 분모 0이면 UNDEFINED(0/0)를 반환합니다.
    반환값은 최대를 달성한 창의 분자/분모를 그대로 가집니다.
    """
    best = _argmax_window(rolling_series(record))
    if best is None:
        return IndicatorValue(numerator=0, denominator=0)
    return best[1]


def impact_maturity_time(record: JournalRecord) -> Optional[int]:
    """최대 rolling 창이 R_j 이면 j+1, 2M-JIF가 UNDEFINED면 None"""
    best = _argmax_window(rolling_series(record))
    if best is None:
        return None
    return best[0] + 1


def _gain(base: IndicatorValue, peak: IndicatorValue) -> Optional[float]:
    if not base.defined or not peak.defined or base.numerator == 0:
        return None
    return float((peak.ratio - base.ratio) / base.ratio * 100)


def relative_gain(record: JournalRecord) -> Optional[float]:
    """2-JIF 대비 2M-JIF 상승률 (%). 2-JIF 가 0 이거나 정의되지 않으면 None"""
    return _gain(two_jif(record), two_m_jif(record))


def decompose_unmeasured_impact(record: JournalRecord) -> UnmeasuredImpact:
    """
    매년 같은 수의 항목을 출판하는 저널에 대해
    2M-JIF = 2-JIF + (최대 창 피인용 - 최근 2년 피인용) / (2 * N_Art) 로 분해합니다.

    Raises:
        NonConstantItems: 연도별 항목 수가 다를 때
        UndefinedIndicator: 항목 수가 0이라 2M-JIF 가 정의되지 않을 때
    """
    items = record.citable_items
    if any(a != items[0] for a in items):
        raise NonConstantItems(
            "decomposition requires the same citable item count every year", journal_id=record.id
        )
    if items[0] == 0:
        raise UndefinedIndicator("citable item count is zero; 2M-JIF is undefined", journal_id=record.id)

    best = _argmax_window(rolling_series(record))
    lag, peak = best
    base = two_jif(record)
    extra = Fraction(peak.numerator - base.numerator, ROLLING_WIDTH * items[0])
    return UnmeasuredImpact(two_jif=base.value, unmeasured=float(extra), maximizing_lag=lag)


def citation_age_profile(record: JournalRecord) -> List[ProfileRow]:
    """age(j) 별 (피인용, 항목, 항목당 피인용) 목록. 항목 0인 해의 rate 는 None"""
    rows = []
    for age, (cites, items) in enumerate(zip(record.citations, record.citable_items), start=1):
        rate = cites / items if items else None
        rows.append(ProfileRow(age=age, citations=cites, items=items, rate=rate))
    return rows


# ============================================================================
# 보고서
# ============================================================================
def default_windows(horizon: int) -> List[int]:
    """IndicatorReport.fixed 에 항상 포함되는 창: 2, 3(Y>=3), 5(Y>=5), Y"""
    windows = {2, horizon}
    if horizon >= 3:
        windows.add(3)
    if horizon >= 5:
        windows.add(5)
    return sorted(windows)


def report(record: JournalRecord, extra_windows: Iterable[int] = ()) -> IndicatorReport:
    """
    한 저널의 전체 지표 계산

    Args:
        record: 대상 저널
        extra_windows: fixed 에 추가로 계산할 n 값들

    Raises:
        WindowOutOfRange: extra_windows 에 1..Y 밖의 값이 있을 때
    """
    rolling = rolling_series(record)
    best = _argmax_window(rolling)
    if best is None:
        peak, maturity = IndicatorValue(numerator=0, denominator=0), None
    else:
        peak, maturity = best[1], best[0] + 1

    windows = sorted(set(default_windows(record.horizon)) | set(extra_windows))
    fixed = {n: n_jif(record, n) for n in windows}

    return IndicatorReport(
        journal_id=record.id,
        category=record.category,
        rolling=rolling,
        two_m_jif=peak,
        maturity_time=maturity,
        fixed=fixed,
    )


# ============================================================================
# 지표 이름 카탈로그 (--indicators)
# ============================================================================
TWO_M_JIF = "2M-JIF"
TOTAL_JIF = "TOTAL-JIF"
GAIN = "gain"
_ROLLING_NAME = re.compile(r"^R_(\d+)$")
_FIXED_NAME = re.compile(r"^(\d+)-JIF$")


def rolling_names(horizon: int) -> List[str]:
    return [f"R_{j}" for j in range(1, horizon - ROLLING_WIDTH + 2)]


def default_indicator_names(horizon: int, with_five_jif: bool = True) -> List[str]:
    """R_1..R_h, 2M-JIF, 그리고 Y >= 5 이면 5-JIF"""
    names = rolling_names(horizon) + [TWO_M_JIF]
    if with_five_jif and horizon >= 5:
        names.append("5-JIF")
    return names


def fixed_window(name: str, horizon: int) -> Optional[int]:
    """'<n>-JIF' / 'TOTAL-JIF' 이면 n, 아니면 None"""
    if name == TOTAL_JIF:
        return horizon
    match = _FIXED_NAME.match(name)
    return int(match.group(1)) if match else None


def check_indicator_name(name: str, horizon: int) -> None:
    """
    지표 이름이 이 horizon 에서 계산 가능한지 확인

    Raises:
        ConfigError: 알 수 없는 이름
        WindowOutOfRange: 창 범위 밖
    """
    if name in (TWO_M_JIF, GAIN, TOTAL_JIF):
        return
    match = _ROLLING_NAME.match(name)
    if match:
        j = int(match.group(1))
        if not 1 <= j <= horizon - ROLLING_WIDTH + 1:
            raise WindowOutOfRange(f"{name}: rolling lag outside 1..{horizon - ROLLING_WIDTH + 1}")
        return
    n = fixed_window(name, horizon)
    if n is None:
        raise ConfigError(
            f"unknown indicator {name!r} (expected R_<j>, <n>-JIF, {TWO_M_JIF}, {TOTAL_JIF} or {GAIN})"
        )
    if not 1 <= n <= horizon:
        raise WindowOutOfRange(f"{name}: window outside 1..{horizon}")


def indicator_value(rep: IndicatorReport, name: str) -> Union[IndicatorValue, float, None]:
    """보고서에서 이름으로 지표 값 조회 (gain 은 float 또는 None)"""
    if name == TWO_M_JIF:
        return rep.two_m_jif
    if name == GAIN:
        return rep.gain
    match = _ROLLING_NAME.match(name)
    if match:
        return rep.rolling[int(match.group(1)) - 1]
    n = fixed_window(name, rep.horizon)
    if n is None or n not in rep.fixed:
        raise ConfigError(f"indicator {name!r} was not computed for journal {rep.journal_id!r}")
    return rep.fixed[n]


def indicator_float(rep: IndicatorReport, name: str) -> Optional[float]:
    value = indicator_value(rep, name)
    if isinstance(value, IndicatorValue):
        return value.value
    return value
