"""
고정 소수점 출력 포맷

표시용 반올림은 round-half-away-from-zero 입니다 (파이썬 round()의 banker's rounding 아님).
IndicatorValue 는 정확한 유리수에서 바로 반올림하고, float 는 repr 기준 10진수로 반올림합니다.
내부 계산값은 항상 full precision 을 유지합니다.
"""
import math
from decimal import ROUND_HALF_UP, Context, Decimal
from fractions import Fraction
from typing import Optional, Union

from core.journal_record import IndicatorValue

# NA 표기 (csv/tsv)
NA = "NA"

INDICATOR_PLACES = 3
CORRELATION_PLACES = 2
PERCENT_PLACES = 1

_CONTEXT = Context(prec=60)

Number = Union[int, float, Fraction, IndicatorValue, None]


def _to_decimal(value: Union[int, float, Fraction]) -> Decimal:
    if isinstance(value, Fraction):
        return _CONTEXT.divide(Decimal(value.numerator), Decimal(value.denominator))
    if isinstance(value, float):
        # 최단 repr 기준: 1.0005 같은 값이 이진 오차로 내림되지 않도록
        return Decimal(repr(value))
    return Decimal(value)


def round_half_away(value: Union[int, float, Fraction], places: int) -> Decimal:
    """0에서 먼 쪽으로 반올림한 Decimal"""
    quantum = Decimal(1).scaleb(-places)
    # Decimal 의 ROUND_HALF_UP 은 부호와 무관하게 0에서 멀어지는 방향
    return _to_decimal(value).quantize(quantum, rounding=ROUND_HALF_UP, context=_CONTEXT)


def format_fixed(value: Number, places: int = INDICATOR_PLACES, na: str = NA) -> str:
    """
    숫자를 고정 소수점 문자열로 변환

    Args:
        value: IndicatorValue / Fraction / float / int / None
        places: 소수 자릿수
        na: UNDEFINED 표기

    Returns:
        "1.057", "NA", "inf" 등
    """
    if isinstance(value, IndicatorValue):
        value = value.ratio
    if value is None:
        return na
    if isinstance(value, float):
        if math.isnan(value):
            return na
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
    text = str(round_half_away(value, places))
    # -0.000 방지
    if text.startswith("-") and Decimal(text) == 0:
        text = text[1:]
    return text

