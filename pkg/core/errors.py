"""
jifkit 예외 계층

모든 예외는 JifkitError를 상속하며, 가능한 경우 위치 정보(행/열/저널)를 함께 담습니다.
CLI는 JifkitError 하나만 잡아서 진단 메시지와 종료 코드를 결정합니다.
"""
from typing import Optional


class JifkitError(Exception):
    """jifkit 공통 예외 (위치 정보 포함)"""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        column_name: Optional[str] = None,
        journal_id: Optional[str] = None,
    ):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.column_name = column_name
        self.journal_id = journal_id
        # 입력 파일 경로 (orchestrator 가 채움)
        self.source: Optional[str] = None

    @property
    def location(self) -> str:
        """'line 7, column 4 (cit_2)' 형태의 위치 문자열 (없으면 빈 문자열)"""
        parts = []
        if self.line is not None:
            parts.append(f"line {self.line}")
        if self.column is not None:
            col = f"column {self.column}"
            if self.column_name:
                col += f" ({self.column_name})"
            parts.append(col)
        if self.journal_id is not None:
            parts.append(f"journal {self.journal_id!r}")
        return ", ".join(parts)

    def __str__(self) -> str:
        loc = self.location
        text = f"{loc}: {self.message}" if loc else self.message
        return f"{self.source}: {text}" if self.source else text


# ----------------------------------------------------------------------------
# model
# ----------------------------------------------------------------------------
class RecordError(JifkitError):
    """JournalRecord 불변식 위반"""


class NegativeCount(RecordError):
    pass


class LengthMismatch(RecordError):
    pass


class ShortHistory(RecordError):
    pass


class EmptyId(RecordError):
    pass


class EmptyCategory(RecordError):
    pass


class MissingField(RecordError):
    pass


class DatasetError(JifkitError):
    """Dataset 불변식 위반"""


class HorizonMismatch(DatasetError):
    pass


class MixedCensusYears(DatasetError):
    pass


class DuplicateJournal(DatasetError):
    pass


class MissingCategory(DatasetError):
    pass


# ----------------------------------------------------------------------------
# indicators
# ----------------------------------------------------------------------------
class IndicatorError(JifkitError):
    """지표 계산 사전조건 위반"""


class WindowOutOfRange(IndicatorError):
    pass


class NonConstantItems(IndicatorError):
    pass


class UndefinedIndicator(IndicatorError):
    pass


# ----------------------------------------------------------------------------
# stats
# ----------------------------------------------------------------------------
class StatsError(JifkitError):
    """통계 계산 사전조건 위반"""


class InsufficientData(StatsError):
    pass


class ZeroVariance(StatsError):
    pass


class EmptyGroup(StatsError):
    pass


class SingleGroup(StatsError):
    pass


class AllUndefined(StatsError):
    pass


class MisalignedVectors(StatsError):
    pass


# ----------------------------------------------------------------------------
# ingest / report
# ----------------------------------------------------------------------------
class IngestError(JifkitError):
    """입력 파일 파싱 실패"""


class ParseError(IngestError):
    pass


class DuplicateCell(IngestError):
    pass


class GapInYears(IngestError):
    pass


class SchemaError(IngestError):
    pass


class ReportError(JifkitError):
    """출력 직렬화 실패"""


class EmptyPayload(ReportError):
    pass


class IoError(ReportError):
    pass


class ConfigError(JifkitError):
    """실행 설정 오류 (입력 파일 없음, 알 수 없는 지표명 등)"""
