"""
보고서 직렬화 (csv / tsv / json)

계산 결과를 결정적인 바이트열로 변환합니다.
- 저널은 입력 순서, 카테고리는 사전순 (Total 은 마지막)
- csv/tsv: 지표 3자리, 상관 2자리, 백분율 1자리 고정 소수점, UNDEFINED 는 NA
- json: 반올림하지 않은 값, UNDEFINED 는 null
"""
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from core.errors import EmptyPayload, IoError
from core.indicators import IndicatorReport, ProfileRow, indicator_value
from core.stats import CorrelationMatrix, GroupSummary, MaturityTally, VarianceDecomposition
from core.utils.formatting import CORRELATION_PLACES, INDICATOR_PLACES, PERCENT_PLACES, format_fixed

CSV = "csv"
TSV = "tsv"
JSON = "json"
OUTPUT_FORMATS = (CSV, TSV, JSON)

DIVISOR_NOTE = "population (N)"


@dataclass(frozen=True)
class ComputePayload:
    """compute 결과 (저널별 지표 표)"""

    census_year: Optional[int]
    horizon: Optional[int]
    reports: Sequence[IndicatorReport]
    columns: Sequence[str] = ()


@dataclass(frozen=True)
class CorrelationBlock:
    """카테고리 (또는 Total) 하나의 상관행렬. 계산 불가면 matrix 는 None"""

    group: str
    journals: int
    indicator_names: Tuple[str, ...]
    matrix: Optional[CorrelationMatrix]
    note: str = ""


@dataclass(frozen=True)
class SummaryPayload:
    """summarize 결과 (요약 표 + maturity 집계 표)"""

    summaries: Sequence[GroupSummary]
    tallies: Sequence[MaturityTally]
    sd_convention: str = "sample"


@dataclass(frozen=True)
class ProfileEntry:
    """한 저널의 citation age 분포"""

    journal_id: str
    category: str
    census_year: int
    rows: Sequence[ProfileRow] = field(default_factory=tuple)


Payload = Union[
    ComputePayload,
    Sequence[IndicatorReport],
    Sequence[CorrelationBlock],
    SummaryPayload,
    Sequence[GroupSummary],
    Sequence[MaturityTally],
    Sequence[VarianceDecomposition],
    Sequence[ProfileEntry],
]


@dataclass
class _Table:
    columns: List[str]
    rows: List[List[str]] = field(default_factory=list)
    preamble: List[str] = field(default_factory=list)


# ============================================================================
# 표 / JSON 구성
# ============================================================================
def _compute(payload: ComputePayload) -> Tuple[List[_Table], Dict[str, Any]]:
    columns = list(payload.columns)
    table = _Table(columns=["journal", "category", *columns, "maturity_time"])
    for rep in payload.reports:
        cells = [format_fixed(indicator_value(rep, name), INDICATOR_PLACES) for name in columns]
        maturity = str(rep.maturity_time) if rep.maturity_time is not None else "NA"
        table.rows.append([rep.journal_id, rep.category, *cells, maturity])
    doc = {
        'census_year': payload.census_year,
        'horizon': payload.horizon,
        'journals': [rep.to_dict() for rep in payload.reports],
    }
    return [table], doc


def _correlations(blocks: Sequence[CorrelationBlock]) -> Tuple[List[_Table], Dict[str, Any]]:
    names = list(blocks[0].indicator_names)
    table = _Table(columns=["group", "journals", "indicator", *names])
    json_blocks = []
    for block in blocks:
        for i, row_name in enumerate(names):
            cells = []
            for j in range(len(names)):
                if j < i:
                    cells.append("")
                elif j == i:
                    cells.append(format_fixed(1.0, CORRELATION_PLACES))
                elif block.matrix is None:
                    cells.append("NA")
                else:
                    cells.append(format_fixed(block.matrix[i, j], CORRELATION_PLACES))
            table.rows.append([block.group, str(block.journals), row_name, *cells])
        json_blocks.append({
            'group': block.group,
            'journals': block.journals,
            'matrix': [list(r) for r in block.matrix.matrix] if block.matrix is not None else None,
            'note': block.note or None,
        })
    method = next((b.matrix.method for b in blocks if b.matrix is not None), None)
    return [table], {'method': method, 'indicators': names, 'blocks': json_blocks}


def _summaries(summaries: Sequence[GroupSummary]) -> Tuple[_Table, List[Dict[str, Any]]]:
    table = _Table(columns=["category", "indicator", "count", "excluded", "median", "mean", "sd"])
    docs = []
    for s in summaries:
        table.rows.append([
            s.category, s.indicator_name, str(s.count), str(s.excluded),
            format_fixed(s.median), format_fixed(s.mean), format_fixed(s.sd),
        ])
        docs.append({
            'category': s.category, 'indicator': s.indicator_name, 'count': s.count,
            'excluded': s.excluded, 'median': s.median, 'mean': s.mean, 'sd': s.sd,
        })
    return table, docs


def _tallies(tallies: Sequence[MaturityTally]) -> Tuple[_Table, List[Dict[str, Any]]]:
    table = _Table(columns=["category", "journals", "undefined", "lag", "maturity_time", "count", "percent"])
    docs = []
    for t in tallies:
        for lag in sorted(t.counts):
            table.rows.append([
                t.category, str(t.journals), str(t.undefined), f"R_{lag}", str(lag + 1),
                str(t.counts[lag]), format_fixed(t.percentages[lag], PERCENT_PLACES),
            ])
        docs.append({
            'category': t.category, 'journals': t.journals, 'undefined': t.undefined,
            'counts': {str(lag): c for lag, c in sorted(t.counts.items())},
            'percentages': {str(lag): p for lag, p in sorted(t.percentages.items())},
        })
    return table, docs


def _summary_payload(payload: SummaryPayload) -> Tuple[List[_Table], Dict[str, Any]]:
    tables: List[_Table] = []
    doc: Dict[str, Any] = {'sd': payload.sd_convention}
    if payload.summaries:
        table, doc['summaries'] = _summaries(payload.summaries)
        tables.append(table)
    if payload.tallies:
        table, doc['tallies'] = _tallies(payload.tallies)
        tables.append(table)
    return tables, doc


def _ratio_cell(ratio: Optional[float]) -> str:
    if ratio is None:
        return "NA"
    return format_fixed(ratio, INDICATOR_PLACES)


def _variance(decomps: Sequence[VarianceDecomposition]) -> Tuple[List[_Table], Dict[str, Any]]:
    table = _Table(
        columns=["indicator", "journals", "groups", "excluded", "grand_mean",
                 "within", "between", "total", "reduction", "ratio"],
        preamble=[f"# divisor: {DIVISOR_NOTE}"],
    )
    docs = []
    for d in decomps:
        table.rows.append([
            d.indicator_name, str(d.journals), str(d.groups), str(d.excluded),
            format_fixed(d.grand_mean), format_fixed(d.within_group_variance),
            format_fixed(d.between_group_variance), format_fixed(d.total_variance),
            format_fixed(d.reduction), _ratio_cell(d.ratio),
        ])
        docs.append({
            'indicator': d.indicator_name, 'journals': d.journals, 'groups': d.groups,
            'excluded': d.excluded, 'grand_mean': d.grand_mean,
            'within': d.within_group_variance, 'between': d.between_group_variance,
            'total': d.total_variance, 'reduction': d.reduction,
            'ratio': None if d.ratio is None or math.isinf(d.ratio) else d.ratio,
            'ratio_infinite': d.ratio_infinite,
        })
    return [table], {'divisor': 'population', 'decompositions': docs}


def _profiles(entries: Sequence[ProfileEntry]) -> Tuple[List[_Table], Dict[str, Any]]:
    table = _Table(columns=["journal", "category", "age", "target_year", "citations", "citable_items", "rate"])
    docs = []
    for entry in entries:
        rows = []
        for row in entry.rows:
            target_year = entry.census_year - row.age
            table.rows.append([
                entry.journal_id, entry.category, str(row.age), str(target_year),
                str(row.citations), str(row.items), format_fixed(row.rate),
            ])
            rows.append({
                'age': row.age, 'target_year': target_year, 'citations': row.citations,
                'citable_items': row.items, 'rate': row.rate,
            })
        docs.append({'journal': entry.journal_id, 'category': entry.category, 'rows': rows})
    return [table], {'journals': docs}


def _build(payload: Payload) -> Tuple[List[_Table], Dict[str, Any]]:
    if isinstance(payload, ComputePayload):
        if not payload.reports:
            raise EmptyPayload("no indicator reports to write")
        return _compute(payload)
    if isinstance(payload, SummaryPayload):
        if not payload.summaries and not payload.tallies:
            raise EmptyPayload("no summaries to write")
        return _summary_payload(payload)

    items = list(payload)
    if not items:
        raise EmptyPayload("nothing to write")
    first = items[0]
    if isinstance(first, IndicatorReport):
        horizon = first.horizon
        columns = [f"R_{j}" for j in range(1, horizon)] + ["2M-JIF"] + (["5-JIF"] if 5 in first.fixed else [])
        return _compute(ComputePayload(census_year=None, horizon=horizon, reports=items, columns=columns))
    if isinstance(first, CorrelationBlock):
        return _correlations(items)
    if isinstance(first, GroupSummary):
        return _summary_payload(SummaryPayload(summaries=items, tallies=(), sd_convention=first.sd_convention))
    if isinstance(first, MaturityTally):
        return _summary_payload(SummaryPayload(summaries=(), tallies=items))
    if isinstance(first, VarianceDecomposition):
        return _variance(items)
    if isinstance(first, ProfileEntry):
        return _profiles(items)
    raise TypeError(f"unsupported report payload: {type(first).__name__}")


# ============================================================================
# 공개 API
# ============================================================================
def write_report(payload: Payload, format: str = CSV) -> bytes:
    """
    계산 결과를 csv / tsv / json 바이트열로 직렬화

    Args:
        payload: ComputePayload / IndicatorReport 목록 / CorrelationBlock 목록 /
                 SummaryPayload / VarianceDecomposition 목록 / ProfileEntry 목록
        format: csv, tsv, json

    Raises:
        EmptyPayload: 빈 payload (빈 파일을 만들지 않음)
    """
    if format not in OUTPUT_FORMATS:
        raise ValueError(f"unknown output format: {format}")
    tables, doc = _build(payload)

    if format == JSON:
        return (json.dumps(doc, ensure_ascii=False, indent=2, allow_nan=False) + "\n").encode("utf-8")

    buffer = io.StringIO(newline="")
    writer = csv.writer(buffer, delimiter="\t" if format == TSV else ",", lineterminator="\n")
    for index, table in enumerate(tables):
        if index:
            writer.writerow([])
        for line in table.preamble:
            buffer.write(line + "\n")
        writer.writerow(table.columns)
        writer.writerows(table.rows)
    return buffer.getvalue().encode("utf-8")


def write_output(data: bytes, path: Optional[Union[str, Path]], stream=None) -> None:
    """
    직렬화된 보고서를 파일 또는 스트림(기본 stdout)으로 출력

    Raises:
        IoError: 파일 쓰기 실패
    """
    if path:
        target = Path(path)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_bytes(data)
        except OSError as e:
            raise IoError(f"cannot write {target}: {e.strerror or e}") from e
        return
    if stream is None:
        stream = sys.stdout.buffer
    try:
        stream.write(data)
        stream.flush()
    except OSError as e:
        raise IoError(f"cannot write report: {e}") from e
