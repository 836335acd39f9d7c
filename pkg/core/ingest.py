"""
데이터셋 입력 / 직렬화

구분자 텍스트(CSV) 파일을 읽어 검증된 Dataset 을 만듭니다. 두 가지 스키마를 지원합니다.

- long_csv: journal,category,census_year,target_year,citations,citable_items (저널×target 연도마다 한 행)
- wide_csv: journal,category,census_year,cit_1..cit_Y,art_1..art_Y (접미사 k = census 연도 k년 전)

인코딩은 UTF-8, 구분자는 쉼표, 헤더 필수입니다. 거부되는 입력은 모두 행 번호 또는 저널 id 를
담은 예외로 보고됩니다. 네트워크 접근은 하지 않습니다 (로컬 파일 전용).
"""
import csv
import io
import json
import re
from dataclasses import dataclass
from typing import IO, Any, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from core.errors import (
    DuplicateCell,
    GapInYears,
    JifkitError,
    MixedCensusYears,
    NegativeCount,
    ParseError,
    RecordError,
    SchemaError,
)
from core.indicators import IndicatorReport
from core.journal_record import Dataset, JournalRecord, validate_record

LONG_CSV = "long_csv"
WIDE_CSV = "wide_csv"
DATASET_FORMATS = (LONG_CSV, WIDE_CSV)

# CLI --schema 값 → 내부 포맷명
SCHEMA_ALIASES = {"long": LONG_CSV, "wide": WIDE_CSV, LONG_CSV: LONG_CSV, WIDE_CSV: WIDE_CSV}

LONG_COLUMNS = ("journal", "category", "census_year", "target_year", "citations", "citable_items")
WIDE_KEY_COLUMNS = ("journal", "category", "census_year")
_WIDE_COUNT_COLUMN = re.compile(r"^(cit|art)_(\d+)$")
_INTEGER_CELL = re.compile(r"-?[0-9]+")

Source = Union[bytes, str, IO[bytes]]


@dataclass(frozen=True)
class RawRow:
    """long_csv 한 행 (wide 열의 long-form 표현)"""

    journal_id: str
    category: str
    census_year: int
    target_year: int
    citations: int
    citable_items: int
    line: int = 0

    @property
    def age(self) -> int:
        return self.census_year - self.target_year


class ReportDocument(NamedTuple):
    """write_report(json) 출력을 다시 읽은 결과"""

    census_year: Optional[int]
    horizon: Optional[int]
    reports: List[IndicatorReport]


# ============================================================================
# 공통 CSV 읽기
# ============================================================================
def _read_text(source: Source) -> str:
    if isinstance(source, str):
        return source
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    try:
        return bytes(data).decode("utf-8-sig")
    except UnicodeDecodeError as e:
        line = bytes(data)[: e.start].count(b"\n") + 1
        raise ParseError(f"input is not valid UTF-8: {e.reason}", line=line) from e


def _rows(text: str) -> Iterator[Tuple[int, List[str]]]:
    """(행 번호, 필드 목록). 완전히 빈 행은 건너뜀"""
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=",", quotechar='"', strict=True)
    while True:
        try:
            row = next(reader)
        except StopIteration:
            return
        except csv.Error as e:
            raise ParseError(f"malformed CSV: {e}", line=reader.line_num) from e
        if not row or all(not cell.strip() for cell in row):
            continue
        yield reader.line_num, [cell.strip() for cell in row]


def _header(rows: Iterator[Tuple[int, List[str]]]) -> List[str]:
    try:
        line, header = next(rows)
    except StopIteration:
        raise SchemaError("missing header row", line=1)
    seen = set()
    for col, name in enumerate(header, start=1):
        if name in seen:
            raise SchemaError(f"duplicate header column {name!r}", line=line, column=col)
        seen.add(name)
    return header


def _cells(header: Sequence[str], line: int, row: Sequence[str]) -> Dict[str, Tuple[int, str]]:
    """열 이름 → (열 번호, 값)"""
    if len(row) != len(header):
        raise ParseError(
            f"expected {len(header)} fields, got {len(row)}",
            line=line,
            column=min(len(row), len(header)) + 1,
        )
    return {name: (col, value) for col, (name, value) in enumerate(zip(header, row), start=1)}


def _integer(cells: Dict[str, Tuple[int, str]], name: str, line: int, journal_id: Optional[str] = None) -> int:
    col, text = cells[name]
    # ASCII 숫자만 (int() 가 받는 "1_000", "+5", 전각 숫자는 거부)
    if not _INTEGER_CELL.fullmatch(text):
        raise ParseError(
            f"expected an integer, got {text!r}", line=line, column=col, column_name=name, journal_id=journal_id
        )
    return int(text)


def _count(cells: Dict[str, Tuple[int, str]], name: str, line: int, journal_id: str) -> int:
    value = _integer(cells, name, line, journal_id)
    if value < 0:
        col, _ = cells[name]
        raise NegativeCount(
            f"count {value} is negative", line=line, column=col, column_name=name, journal_id=journal_id
        )
    return value


def _text(cells: Dict[str, Tuple[int, str]], name: str) -> str:
    return cells[name][1]


def _located(err: JifkitError, line: int) -> JifkitError:
    if err.line is None:
        err.line = line
    return err


# ============================================================================
# long_csv
# ============================================================================
def _parse_long(rows: Iterator[Tuple[int, List[str]]], header: List[str]) -> Dataset:
    missing = [c for c in LONG_COLUMNS if c not in header]
    unknown = [c for c in header if c not in LONG_COLUMNS]
    if missing or unknown:
        raise SchemaError(
            f"long_csv header mismatch (missing: {missing or '-'}, unknown: {unknown or '-'})", line=1
        )

    census_year: Optional[int] = None
    census_line = 0
    cells_by_journal: Dict[str, Dict[int, RawRow]] = {}
    category_by_journal: Dict[str, Tuple[str, int]] = {}

    for line, row in rows:
        cells = _cells(header, line, row)
        journal_id = _text(cells, "journal")
        raw = RawRow(
            journal_id=journal_id,
            category=_text(cells, "category"),
            census_year=_integer(cells, "census_year", line, journal_id),
            target_year=_integer(cells, "target_year", line, journal_id),
            citations=_count(cells, "citations", line, journal_id),
            citable_items=_count(cells, "citable_items", line, journal_id),
            line=line,
        )
        if not journal_id:
            raise ParseError("empty journal id", line=line, column=cells["journal"][0], column_name="journal")

        if census_year is None:
            census_year, census_line = raw.census_year, line
        elif raw.census_year != census_year:
            raise MixedCensusYears(
                f"census year {raw.census_year} differs from {census_year} (line {census_line})",
                line=line,
                journal_id=journal_id,
            )
        if raw.target_year >= raw.census_year:
            col, _ = cells["target_year"]
            raise ParseError(
                f"target year {raw.target_year} must precede census year {raw.census_year}",
                line=line, column=col, column_name="target_year", journal_id=journal_id,
            )

        known = category_by_journal.setdefault(journal_id, (raw.category, line))
        if known[0] != raw.category:
            raise ParseError(
                f"category {raw.category!r} conflicts with {known[0]!r} (line {known[1]})",
                line=line, journal_id=journal_id,
            )

        journal_rows = cells_by_journal.setdefault(journal_id, {})
        if raw.target_year in journal_rows:
            raise DuplicateCell(
                f"target year {raw.target_year} repeats (first at line {journal_rows[raw.target_year].line})",
                line=line, journal_id=journal_id,
            )
        journal_rows[raw.target_year] = raw

    records = []
    # 행 순서와 무관하게 같은 Dataset 이 나오도록 저널 id 순으로 조립
    for journal_id in sorted(cells_by_journal):
        by_year = cells_by_journal[journal_id]
        by_age = {raw.age: raw for raw in by_year.values()}
        horizon = max(by_age)
        gaps = [census_year - age for age in range(1, horizon + 1) if age not in by_age]
        if gaps:
            raise GapInYears(
                f"missing target year(s) {', '.join(map(str, sorted(gaps)))}", journal_id=journal_id
            )
        ordered = [by_age[age] for age in range(1, horizon + 1)]
        try:
            records.append(validate_record({
                'id': journal_id,
                'category': category_by_journal[journal_id][0],
                'census_year': census_year,
                'citations': [r.citations for r in ordered],
                'citable_items': [r.citable_items for r in ordered],
            }))
        except RecordError as e:
            raise _located(e, ordered[0].line)

    return Dataset.from_records(records)


# ============================================================================
# wide_csv
# ============================================================================
def _wide_horizon(header: List[str]) -> int:
    missing = [c for c in WIDE_KEY_COLUMNS if c not in header]
    if missing:
        raise SchemaError(f"wide_csv header is missing {missing}", line=1)
    suffixes: Dict[str, set] = {"cit": set(), "art": set()}
    for col, name in enumerate(header, start=1):
        if name in WIDE_KEY_COLUMNS:
            continue
        match = _WIDE_COUNT_COLUMN.match(name)
        if not match:
            raise SchemaError(f"unknown header column {name!r}", line=1, column=col)
        suffixes[match.group(1)].add(int(match.group(2)))
    horizon = max(suffixes["cit"] | suffixes["art"], default=0)
    expected = set(range(1, horizon + 1))
    for prefix, found in suffixes.items():
        if found != expected:
            absent = sorted(expected - found)
            raise SchemaError(
                f"wide_csv needs {prefix}_1..{prefix}_{horizon}; missing {absent or sorted(found)}", line=1
            )
    if horizon < 2:
        raise SchemaError(f"wide_csv needs at least 2 target years, header has {horizon}", line=1)
    return horizon


def _parse_wide(rows: Iterator[Tuple[int, List[str]]], header: List[str]) -> Dataset:
    horizon = _wide_horizon(header)
    census_year: Optional[int] = None
    census_line = 0
    first_line: Dict[str, int] = {}
    records: List[JournalRecord] = []

    for line, row in rows:
        cells = _cells(header, line, row)
        journal_id = _text(cells, "journal")
        year = _integer(cells, "census_year", line, journal_id)
        if census_year is None:
            census_year, census_line = year, line
        elif year != census_year:
            raise MixedCensusYears(
                f"census year {year} differs from {census_year} (line {census_line})",
                line=line, journal_id=journal_id,
            )
        if journal_id in first_line:
            raise DuplicateCell(
                f"journal repeats (first at line {first_line[journal_id]})", line=line, journal_id=journal_id
            )
        first_line[journal_id] = line
        try:
            records.append(validate_record({
                'id': journal_id,
                'category': _text(cells, "category"),
                'census_year': year,
                'citations': [_count(cells, f"cit_{k}", line, journal_id) for k in range(1, horizon + 1)],
                'citable_items': [_count(cells, f"art_{k}", line, journal_id) for k in range(1, horizon + 1)],
            }))
        except RecordError as e:
            raise _located(e, line)

    if not records:
        return Dataset(census_year=None, records=(), horizon=horizon)
    return Dataset.from_records(records)


def parse_dataset(source: Source, format: str = LONG_CSV) -> Dataset:
    """
    구분자 텍스트를 읽어 검증된 Dataset 생성

    Args:
        source: bytes / 문자열 / 바이너리 스트림
        format: long_csv 또는 wide_csv (long / wide 별칭 허용)

    Returns:
        Dataset (헤더만 있는 파일은 레코드 0개)

    Raises:
        ParseError, DuplicateCell, GapInYears, MixedCensusYears, SchemaError,
        NegativeCount 등 RecordError (행 번호 포함)
    """
    fmt = SCHEMA_ALIASES.get(format)
    if fmt is None:
        raise SchemaError(f"unknown dataset format {format!r}")
    rows = _rows(_read_text(source))
    header = _header(rows)
    if fmt == LONG_CSV:
        return _parse_long(rows, header)
    return _parse_wide(rows, header)


def serialize_dataset(dataset: Dataset, format: str = LONG_CSV) -> bytes:
    """Dataset 을 long_csv / wide_csv 로 직렬화 (저널은 데이터셋 순서)"""
    fmt = SCHEMA_ALIASES.get(format)
    if fmt is None:
        raise SchemaError(f"unknown dataset format {format!r}")
    buffer = io.StringIO(newline="")
    writer = csv.writer(buffer, lineterminator="\n")
    if fmt == LONG_CSV:
        writer.writerow(LONG_COLUMNS)
        for record in dataset:
            for age, (cites, items) in enumerate(zip(record.citations, record.citable_items), start=1):
                writer.writerow([
                    record.id, record.category, record.census_year, record.target_year(age), cites, items,
                ])
    else:
        horizon = dataset.horizon or 2
        writer.writerow(
            list(WIDE_KEY_COLUMNS)
            + [f"cit_{k}" for k in range(1, horizon + 1)]
            + [f"art_{k}" for k in range(1, horizon + 1)]
        )
        for record in dataset:
            writer.writerow([record.id, record.category, record.census_year, *record.citations, *record.citable_items])
    return buffer.getvalue().encode("utf-8")


def parse_reports_json(source: Source) -> ReportDocument:
    """write_report(reports, 'json') 출력을 IndicatorReport 목록으로 복원"""
    text = _read_text(source)
    try:
        data: Dict[str, Any] = json.loads(text)
        return ReportDocument(
            census_year=data.get("census_year"),
            horizon=data.get("horizon"),
            reports=[IndicatorReport.from_dict(item) for item in data["journals"]],
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise ParseError(f"not an indicator report document: {e}") from e
