"""
JournalRecord 데이터 모델

한 저널의 census 연도 피인용 수와 citable item 수를 담는 핵심 데이터 객체입니다.
indicators / stats / ingest 모듈이 모두 이 객체를 공유합니다.

인덱스 규칙: citations[j-1] 은 census 연도 t 에 (t-j) 년도 출판 항목이 받은 피인용 수,
citable_items[j-1] 은 (t-j) 년도의 citable item 수입니다. (j = 1..Y)
모든 타입은 생성 후 변경되지 않습니다.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple
import json

from core.errors import (
    DuplicateJournal,
    EmptyCategory,
    EmptyId,
    HorizonMismatch,
    LengthMismatch,
    MissingCategory,
    MissingField,
    MixedCensusYears,
    NegativeCount,
    RecordError,
    ShortHistory,
)

# 최소 target 연도 수 (2년 창 하나를 만들 수 있어야 함)
MIN_HORIZON = 2

REQUIRED_FIELDS = ("id", "category", "census_year", "citations", "citable_items")


@dataclass(frozen=True)
class IndicatorValue:
    """피인용 합 / 항목 합 비율. 분모가 0이면 UNDEFINED (value is None)"""

    numerator: int
    denominator: int

    @property
    def defined(self) -> bool:
        return self.denominator != 0

    @property
    def value(self) -> Optional[float]:
        """비율의 float 값 (UNDEFINED면 None)"""
        if self.denominator == 0:
            return None
        return self.numerator / self.denominator

    @property
    def ratio(self) -> Optional[Fraction]:
        """정확한 유리수 값. 최대값/동률 판정은 반드시 이 값으로 한다"""
        if self.denominator == 0:
            return None
        return Fraction(self.numerator, self.denominator)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'value': self.value,
            'numerator': self.numerator,
            'denominator': self.denominator,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'IndicatorValue':
        return cls(numerator=int(data['numerator']), denominator=int(data['denominator']))


@dataclass(frozen=True)
class JournalRecord:
    """한 저널의 census 연도 집계"""

    id: str
    category: str
    census_year: int
    citations: Tuple[int, ...]
    citable_items: Tuple[int, ...]

    def __post_init__(self):
        # list로 넘어와도 불변 tuple로 고정
        object.__setattr__(self, 'citations', tuple(self.citations))
        object.__setattr__(self, 'citable_items', tuple(self.citable_items))
        _check_record(self.id, self.category, self.citations, self.citable_items)

    @property
    def horizon(self) -> int:
        """Y: target 연도 수"""
        return len(self.citations)

    def target_year(self, age: int) -> int:
        """age(=j)년 전 출판 연도"""
        return self.census_year - age

    def to_dict(self) -> Dict[str, Any]:
        """JSON 직렬화를 위한 딕셔너리 변환"""
        return {
            'id': self.id,
            'category': self.category,
            'census_year': self.census_year,
            'citations': list(self.citations),
            'citable_items': list(self.citable_items),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'JournalRecord':
        return validate_record(data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    @classmethod
    def from_json(cls, json_str: str) -> 'JournalRecord':
        return cls.from_dict(json.loads(json_str))


def _check_record(journal_id: str, category: str, citations: Tuple[int, ...], items: Tuple[int, ...]):
    """JournalRecord 불변식 검사 (위반 시 RecordError 하위 예외)"""
    if not isinstance(journal_id, str) or not journal_id.strip():
        raise EmptyId("journal id must be a non-empty string")
    if not isinstance(category, str) or not category.strip():
        raise EmptyCategory("category must be a non-empty string", journal_id=journal_id)
    if len(citations) != len(items):
        raise LengthMismatch(
            f"citations has {len(citations)} entries but citable_items has {len(items)}",
            journal_id=journal_id,
        )
    if len(citations) < MIN_HORIZON:
        raise ShortHistory(
            f"at least {MIN_HORIZON} target years are required, got {len(citations)}",
            journal_id=journal_id,
        )
    for name, counts in (("citations", citations), ("citable_items", items)):
        for age, count in enumerate(counts, start=1):
            if count < 0:
                raise NegativeCount(f"{name}[{age}] = {count} is negative", journal_id=journal_id)


def _as_count(value: Any, name: str, journal_id: Optional[str]) -> int:
    """정수 카운트로 변환 (bool, 소수점 있는 값은 거부)"""
    if isinstance(value, bool):
        raise RecordError(f"{name} must be an integer, got {value!r}", journal_id=journal_id)
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise RecordError(f"{name} must be an integer, got {value!r}", journal_id=journal_id)


def validate_record(raw: Any) -> JournalRecord:
    """
    후보 레코드를 검증하여 JournalRecord로 변환합니다.

    Args:
        raw: JournalRecord 또는 id/category/census_year/citations/citable_items 키를 가진 매핑

    Returns:
        불변식을 만족하는 JournalRecord (이미 유효한 레코드는 동일한 값으로 반환)

    Raises:
        NegativeCount, LengthMismatch, ShortHistory, EmptyId, EmptyCategory, MissingField
    """
    if isinstance(raw, JournalRecord):
        data: Mapping[str, Any] = raw.to_dict()
    else:
        data = raw

    missing = [name for name in REQUIRED_FIELDS if name not in data]
    if missing:
        raise MissingField(f"missing field(s): {', '.join(missing)}", journal_id=data.get('id'))

    journal_id = data['id']
    if not isinstance(journal_id, str) or not journal_id.strip():
        raise EmptyId("journal id must be a non-empty string")
    journal_id = journal_id.strip()
    category = data['category'].strip() if isinstance(data['category'], str) else data['category']

    citations = tuple(_as_count(v, f"citations[{i}]", journal_id) for i, v in enumerate(data['citations'], 1))
    items = tuple(_as_count(v, f"citable_items[{i}]", journal_id) for i, v in enumerate(data['citable_items'], 1))

    return JournalRecord(
        id=journal_id,
        category=category,
        census_year=_as_count(data['census_year'], "census_year", journal_id),
        citations=citations,
        citable_items=items,
    )


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    같은 census 연도와 horizon을 공유하는 JournalRecord 묶음

    레코드가 하나도 없는 데이터셋은 census_year / horizon 이 None 일 수 있습니다.
    동등성 비교는 저널 순서와 무관합니다 (저널 id → 레코드 매핑으로 비교).
    """

    census_year: Optional[int]
    records: Tuple[JournalRecord, ...]
    horizon: Optional[int]
    declared_categories: Optional[Tuple[str, ...]] = field(default=None)

    def __post_init__(self):
        seen = set()
        for record in self.records:
            if record.id in seen:
                raise DuplicateJournal("journal id appears more than once", journal_id=record.id)
            seen.add(record.id)
            if record.census_year != self.census_year:
                raise MixedCensusYears(
                    f"census year {record.census_year} differs from dataset census year {self.census_year}",
                    journal_id=record.id,
                )
            if record.horizon != self.horizon:
                raise HorizonMismatch(
                    f"horizon {record.horizon} differs from dataset horizon {self.horizon}",
                    journal_id=record.id,
                )
        if self.records and (self.horizon is None or self.horizon < MIN_HORIZON):
            raise HorizonMismatch(f"dataset horizon must be >= {MIN_HORIZON}, got {self.horizon}")

        if self.declared_categories is not None:
            present = {r.category for r in self.records}
            for record in self.records:
                if record.category not in self.declared_categories:
                    raise MissingCategory(
                        f"category {record.category!r} is not declared", journal_id=record.id
                    )
            for category in self.declared_categories:
                if category not in present:
                    raise MissingCategory(f"declared category {category!r} has no journals")

    @classmethod
    def from_records(
        cls,
        records: Iterable[JournalRecord],
        declared_categories: Optional[Iterable[str]] = None,
    ) -> 'Dataset':
        """레코드 목록으로부터 census 연도 / horizon 을 유도하여 Dataset 생성"""
        records = tuple(records)
        census_year = records[0].census_year if records else None
        horizon = records[0].horizon if records else None
        declared = tuple(declared_categories) if declared_categories is not None else None
        return cls(census_year=census_year, records=records, horizon=horizon, declared_categories=declared)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.census_year == other.census_year
            and self.horizon == other.horizon
            and self.by_id() == other.by_id()
        )

    __hash__ = None

    def by_id(self) -> Dict[str, JournalRecord]:
        return {r.id: r for r in self.records}

    @property
    def categories(self) -> List[str]:
        """카테고리 목록 (사전순)"""
        return sorted({r.category for r in self.records})

    def grouping(self) -> Dict[str, str]:
        """저널 id → 카테고리 매핑"""
        return {r.id: r.category for r in self.records}
