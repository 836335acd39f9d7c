"""
저널 간 통계

상관행렬(Pearson / Spearman), impact maturity time 집계, 카테고리별 요약
(median / mean / sd), 그리고 그룹 내/그룹 간 분산 분해를 계산합니다.

UNDEFINED 값은 조용히 버리지 않습니다. 상관은 쌍별(pairwise), 요약과 분산 분해는
그룹 내 목록별(listwise)로 제외하고, 제외 건수를 결과에 함께 담습니다.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import rankdata

from core.errors import (
    AllUndefined,
    EmptyGroup,
    InsufficientData,
    MisalignedVectors,
    SingleGroup,
    ZeroVariance,
)
from core.indicators import IndicatorReport
from core.utils.formatting import PERCENT_PLACES, round_half_away

PEARSON = "pearson"
SPEARMAN = "spearman"
CORRELATION_METHODS = (PEARSON, SPEARMAN)

SAMPLE = "sample"
POPULATION = "population"
SD_CONVENTIONS = (SAMPLE, POPULATION)

# 상관 계산에 필요한 최소 공동 정의 표본 수
MIN_CORRELATION_N = 3

# 전체(pooled) 블록의 이름
TOTAL_LABEL = "Total"


@dataclass(frozen=True)
class IndicatorVector:
    """저널 id 목록에 정렬된 한 지표의 값 (UNDEFINED 는 None)"""

    indicator_name: str
    journal_ids: Tuple[str, ...]
    values: Tuple[Optional[float], ...]

    def __post_init__(self):
        object.__setattr__(self, 'journal_ids', tuple(self.journal_ids))
        object.__setattr__(self, 'values', tuple(self.values))
        if len(self.journal_ids) != len(self.values):
            raise MisalignedVectors(
                f"{self.indicator_name}: {len(self.journal_ids)} ids but {len(self.values)} values"
            )

    @property
    def defined_mask(self) -> Tuple[bool, ...]:
        return tuple(v is not None and not math.isnan(v) for v in self.values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class CorrelationMatrix:
    """대칭 상관행렬 (대각 1)"""

    indicator_names: Tuple[str, ...]
    matrix: Tuple[Tuple[float, ...], ...]
    method: str
    journals: int

    def __getitem__(self, key: Tuple[int, int]) -> float:
        i, j = key
        return self.matrix[i][j]


@dataclass(frozen=True)
class GroupSummary:
    category: str
    indicator_name: str
    count: int
    median: float
    mean: float
    sd: float
    excluded: int = 0
    sd_convention: str = SAMPLE


@dataclass(frozen=True)
class VarianceDecomposition:
    """
    모집단 분모(N) 기준 분해: total = within + between

    ratio 는 within 이 0 이고 between 이 양수이면 inf, 둘 다 0 이면 None 입니다.
    """

    indicator_name: str
    grand_mean: float
    within_group_variance: float
    between_group_variance: float
    total_variance: float
    reduction: float
    ratio: Optional[float]
    journals: int
    groups: int
    excluded: int = 0

    @property
    def ratio_infinite(self) -> bool:
        return self.ratio is not None and math.isinf(self.ratio)


@dataclass(frozen=True)
class MaturityTally:
    """카테고리별로 최대 rolling 창이 R_j 인 저널 수"""

    category: str
    counts: Dict[int, int]
    percentages: Dict[int, float]
    undefined: int = 0

    @property
    def journals(self) -> int:
        return sum(self.counts.values())


# ============================================================================
# 상관
# ============================================================================
def _paired(x: IndicatorVector, y: IndicatorVector) -> Tuple[np.ndarray, np.ndarray]:
    if x.journal_ids != y.journal_ids:
        raise MisalignedVectors(
            f"{x.indicator_name} and {y.indicator_name} are aligned to different journal lists"
        )
    pairs = [
        (a, b) for a, b, ma, mb in zip(x.values, y.values, x.defined_mask, y.defined_mask) if ma and mb
    ]
    if len(pairs) < MIN_CORRELATION_N:
        raise InsufficientData(
            f"{x.indicator_name} vs {y.indicator_name}: {len(pairs)} jointly defined values, "
            f"need at least {MIN_CORRELATION_N}"
        )
    arr = np.asarray(pairs, dtype=float)
    return arr[:, 0], arr[:, 1]


def correlation(x: IndicatorVector, y: IndicatorVector, method: str = PEARSON) -> float:
    """
    두 지표의 상관계수 (공동 정의 항목만 사용)

    Spearman 은 평균 순위(동률 평균)로 변환한 뒤 Pearson 을 계산합니다.

    Raises:
        InsufficientData: 공동 정의 항목 3개 미만
        ZeroVariance: 어느 한 쪽의 분산이 0
    """
    if method not in CORRELATION_METHODS:
        raise ValueError(f"unknown correlation method: {method}")
    xs, ys = _paired(x, y)
    if method == SPEARMAN:
        xs, ys = rankdata(xs), rankdata(ys)
    if np.ptp(xs) == 0 or np.ptp(ys) == 0:
        name = x.indicator_name if np.ptp(xs) == 0 else y.indicator_name
        raise ZeroVariance(f"{name} has zero variance over the jointly defined journals")
    r = float(np.corrcoef(xs, ys)[0, 1])
    return max(-1.0, min(1.0, r))


def correlation_matrix(vectors: Sequence[IndicatorVector], method: str = PEARSON) -> CorrelationMatrix:
    """
    지표 목록의 대칭 상관행렬 (입력 순서 유지, 대각 1.0)

    Raises:
        InsufficientData: 지표가 2개 미만
    """
    if len(vectors) < 2:
        raise InsufficientData(f"need at least 2 indicators, got {len(vectors)}")
    k = len(vectors)
    rows = [[1.0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            r = correlation(vectors[i], vectors[j], method)
            rows[i][j] = rows[j][i] = r
    journals = sum(all(masks) for masks in zip(*(v.defined_mask for v in vectors)))
    return CorrelationMatrix(
        indicator_names=tuple(v.indicator_name for v in vectors),
        matrix=tuple(tuple(row) for row in rows),
        method=method,
        journals=journals,
    )


# ============================================================================
# maturity time 집계
# ============================================================================
def _tally(category: str, reports: Sequence[IndicatorReport], lags: int) -> MaturityTally:
    counts = {j: 0 for j in range(1, lags + 1)}
    undefined = 0
    for rep in reports:
        if rep.maturity_time is None:
            undefined += 1
            continue
        counts[rep.maturity_time - 1] += 1
    return MaturityTally(
        category=category, counts=counts, percentages=_percentages(counts), undefined=undefined
    )


def _percentages(counts: Mapping[int, int]) -> Dict[int, float]:
    """칸마다 따로 소수 첫째 자리로 반올림한 백분율 (합계는 100.0 ± 0.1 범위)"""
    total = sum(counts.values())
    if total == 0:
        return {j: 0.0 for j in counts}
    return {j: float(round_half_away(Fraction(100 * c, total), PERCENT_PLACES)) for j, c in counts.items()}


def maturity_tally(
    reports: Sequence[IndicatorReport],
    grouping: Mapping[str, str],
    include_total: bool = False,
) -> List[MaturityTally]:
    """
    카테고리별 최대 rolling 창 위치 집계 (사전순, 선택적으로 Total 추가)

    maturity time 이 정의되지 않은 저널은 undefined 로 따로 셉니다.
    모든 저널이 제외된 카테고리도 0 으로 채워서 보고합니다.
    """
    lags = max((len(r.rolling) for r in reports), default=1)
    by_category: Dict[str, List[IndicatorReport]] = {}
    for category in sorted(set(grouping.values())):
        by_category[category] = []
    for rep in reports:
        by_category.setdefault(grouping[rep.journal_id], []).append(rep)

    tallies = [_tally(cat, by_category[cat], lags) for cat in sorted(by_category)]
    if include_total:
        tallies.append(_tally(TOTAL_LABEL, list(reports), lags))
    return tallies


# ============================================================================
# 요약 통계
# ============================================================================
def _split_defined(vector: IndicatorVector, grouping: Mapping[str, str]) -> Tuple[Dict[str, List[float]], Dict[str, int]]:
    values: Dict[str, List[float]] = {}
    excluded: Dict[str, int] = {}
    for jid, value, ok in zip(vector.journal_ids, vector.values, vector.defined_mask):
        category = grouping[jid]
        values.setdefault(category, [])
        excluded.setdefault(category, 0)
        if ok:
            values[category].append(float(value))
        else:
            excluded[category] += 1
    return values, excluded


def _describe(category: str, name: str, values: Sequence[float], excluded: int, sd: str) -> GroupSummary:
    if sd not in SD_CONVENTIONS:
        raise ValueError(f"unknown sd convention: {sd}")
    if not values:
        raise EmptyGroup(f"{category}: no defined {name} values")
    arr = np.asarray(values, dtype=float)
    ddof = 1 if sd == SAMPLE else 0
    spread = float(np.std(arr, ddof=ddof)) if arr.size > ddof else 0.0
    return GroupSummary(
        category=category,
        indicator_name=name,
        count=int(arr.size),
        median=float(np.median(arr)),
        mean=float(np.mean(arr)),
        sd=spread,
        excluded=excluded,
        sd_convention=sd,
    )


def group_summary(vector: IndicatorVector, grouping: Mapping[str, str], sd: str = SAMPLE) -> List[GroupSummary]:
    """
    카테고리별 median / mean / sd (카테고리 사전순)

    Raises:
        EmptyGroup: 정의된 값이 하나도 없는 카테고리가 있을 때
    """
    values, excluded = _split_defined(vector, grouping)
    return [
        _describe(category, vector.indicator_name, values[category], excluded[category], sd)
        for category in sorted(values)
    ]


def aggregate_summary(vector: IndicatorVector, sd: str = SAMPLE) -> GroupSummary:
    """전체 저널을 하나로 묶은 median / mean / sd"""
    defined = [float(v) for v, ok in zip(vector.values, vector.defined_mask) if ok]
    return _describe(TOTAL_LABEL, vector.indicator_name, defined, len(vector) - len(defined), sd)


# ============================================================================
# 분산 분해
# ============================================================================
def variance_decomposition(vector: IndicatorVector, grouping: Mapping[str, str]) -> VarianceDecomposition:
    """
    그룹 내 / 그룹 간 분산 분해 (모집단 분모 N)

    between = Σ n_g (m_g - m)^2 / N,  within = Σ_g Σ_x (x - m_g)^2 / N,
    total = within + between, reduction = within - between, ratio = between / within

    Raises:
        AllUndefined: 정의된 값이 없을 때
        SingleGroup: 정의된 값이 있는 그룹이 2개 미만일 때
    """
    values, excluded = _split_defined(vector, grouping)
    groups = {cat: np.asarray(vals, dtype=float) for cat, vals in values.items() if vals}
    if not groups:
        raise AllUndefined(f"{vector.indicator_name}: no defined values")
    if len(groups) < 2:
        raise SingleGroup(f"{vector.indicator_name}: variance decomposition needs at least 2 groups")

    pooled = np.concatenate([groups[cat] for cat in sorted(groups)])
    n_total = pooled.size
    grand_mean = float(np.mean(pooled))
    between = 0.0
    within = 0.0
    for cat in sorted(groups):
        arr = groups[cat]
        group_mean = float(np.mean(arr))
        between += arr.size * (group_mean - grand_mean) ** 2
        within += float(np.sum((arr - group_mean) ** 2))
    between /= n_total
    within /= n_total

    if within > 0:
        ratio: Optional[float] = between / within
    elif between > 0:
        ratio = math.inf
    else:
        ratio = None

    return VarianceDecomposition(
        indicator_name=vector.indicator_name,
        grand_mean=grand_mean,
        within_group_variance=within,
        between_group_variance=between,
        total_variance=within + between,
        reduction=within - between,
        ratio=ratio,
        journals=int(n_total),
        groups=len(groups),
        excluded=sum(excluded.values()),
    )
