"""
Analysis Orchestrator

분석 명령 하나를 조율하는 메인 컨트롤러입니다.
입력(ingest) → 지표 계산(indicators) → 통계(stats) → 보고서(report_writer) 순서로 실행합니다.

핵심 기능:
- 명령별 기본 지표 선택과 --indicators 검증
- 결함 격리: 카테고리 하나의 상관/요약이 계산 불가하면 경고 후 NA 로 남기고 계속
- 중단 오류(JifkitError)는 로그에 남기고 AnalysisResult.errors 에 기록 (종료 코드 1)
- 출력은 전부 버퍼에 모은 뒤 한 번에 기록 (결정적 순서)
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

from config.analysis_config import AnalysisConfig
from core.errors import ConfigError, EmptyPayload, JifkitError, StatsError
from core.indicators import (
    TWO_M_JIF,
    IndicatorReport,
    check_indicator_name,
    citation_age_profile,
    default_indicator_names,
    fixed_window,
    indicator_float,
    report,
    rolling_names,
)
from core.ingest import parse_dataset
from core.journal_record import Dataset
from core.pipeline_logger import PipelineLogger
from core.report_writer import (
    ComputePayload,
    CorrelationBlock,
    ProfileEntry,
    SummaryPayload,
    write_output,
    write_report,
)
from core.stats import (
    TOTAL_LABEL,
    IndicatorVector,
    aggregate_summary,
    correlation_matrix,
    group_summary,
    maturity_tally,
    variance_decomposition,
)

COMMANDS = ("compute", "correlate", "summarize", "variance", "profile")


@dataclass
class AnalysisResult:
    """명령 실행 결과"""
    command: str
    journals: int = 0
    output: bytes = b""
    warnings: List[str] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)

    @property
    def exit_status(self) -> int:
        """오류 진단이 하나도 없을 때만 0"""
        return 1 if self.errors else 0

    def to_dict(self):
        return {
            'command': self.command,
            'journals': self.journals,
            'warnings': self.warnings,
            'errors': self.errors,
        }


class AnalysisOrchestrator:
    """분석 명령을 조율하는 메인 컨트롤러"""

    def __init__(self, config: AnalysisConfig, logger: Optional[PipelineLogger] = None, stream=None):
        """
        Args:
            config: 분석 설정
            logger: 로거 (없으면 파일 출력 없는 기본 로거 생성)
            stream: output_path 가 비어 있을 때 보고서를 쓸 바이너리 스트림 (기본 stdout)
        """
        self.config = config
        self.logger = logger or PipelineLogger(log_level=config.log_level, file_output=False)
        self.stream = stream
        self._command = "analysis"
        self._handlers: Dict[str, Callable[[Dataset, AnalysisResult], bytes]] = {
            'compute': self.compute,
            'correlate': self.correlate,
            'summarize': self.summarize,
            'variance': self.variance,
            'profile': self.profile,
        }

    def run(self, command: str) -> AnalysisResult:
        """
        명령 실행: 설정 검증 → 데이터셋 로드 → 계산 → 출력

        Returns:
            AnalysisResult (errors 가 비어 있으면 성공)
        """
        result = AnalysisResult(command=command)
        self._command = command
        source = self.config.input_path
        self.logger.log_command_start(command, source)
        try:
            handler = self._handlers.get(command)
            if handler is None:
                raise ConfigError(f"unknown command {command!r} (expected one of {', '.join(COMMANDS)})")
            self.config.validate()
            dataset = self.load_dataset()
            result.journals = len(dataset)
            result.output = handler(dataset, result)
            write_output(result.output, self.config.target_path, stream=self.stream)
        except JifkitError as e:
            result.errors.append(str(e))
            self.logger.log_error(command, e)
            return result

        self.logger.log_command_complete(command, source, result.journals)
        return result

    # ========================================================================
    # 공통 단계
    # ========================================================================
    def load_dataset(self) -> Dataset:
        """입력 파일을 읽어 Dataset 생성 (예외 메시지에 파일 경로를 붙임)"""
        path = Path(self.config.input_path)
        try:
            data = path.read_bytes()
        except OSError as e:
            raise ConfigError(f"cannot read input file {path}: {e.strerror or e}") from e
        try:
            dataset = parse_dataset(data, self.config.schema)
        except JifkitError as e:
            e.source = str(path)
            raise
        self.logger.debug(
            f"loaded {len(dataset)} journals from {path} (census {dataset.census_year}, horizon {dataset.horizon})"
        )
        if not len(dataset):
            error = EmptyPayload("dataset has no journals")
            error.source = str(path)
            raise error
        return dataset

    def resolve_indicators(self, defaults: List[str], horizon: int) -> List[str]:
        """--indicators 가 있으면 그것을, 없으면 명령 기본값을 horizon 기준으로 검증"""
        names = list(self.config.indicators) or list(defaults)
        if not names:
            raise ConfigError("no indicators selected")
        for name in names:
            check_indicator_name(name, horizon)
        return names

    def build_reports(self, dataset: Dataset, names: List[str]) -> List[IndicatorReport]:
        """저널별 IndicatorReport (입력 순서)"""
        extra = sorted({n for n in (fixed_window(name, dataset.horizon) for name in names) if n is not None})
        reports = []
        for record in dataset:
            rep = report(record, extra_windows=extra)
            if rep.maturity_time is None:
                self.logger.log_journal_skip(self._command, record.id, f"{TWO_M_JIF} undefined (no citable items)")
            reports.append(rep)
        return reports

    @staticmethod
    def vector(reports: List[IndicatorReport], name: str) -> IndicatorVector:
        return IndicatorVector(
            indicator_name=name,
            journal_ids=tuple(r.journal_id for r in reports),
            values=tuple(indicator_float(r, name) for r in reports),
        )

    def _render(self, payload) -> bytes:
        return write_report(payload, self.config.output_format)

    # ========================================================================
    # 명령
    # ========================================================================
    def compute(self, dataset: Dataset, result: AnalysisResult) -> bytes:
        """저널별 R_1..R_h, 2M-JIF, 5-JIF(Y>=5), maturity time"""
        names = self.resolve_indicators(default_indicator_names(dataset.horizon), dataset.horizon)
        reports = self.build_reports(dataset, names)
        return self._render(ComputePayload(
            census_year=dataset.census_year,
            horizon=dataset.horizon,
            reports=reports,
            columns=names,
        ))

    def correlate(self, dataset: Dataset, result: AnalysisResult) -> bytes:
        """카테고리별 상관행렬 + 전체(Total) 블록"""
        defaults = rolling_names(dataset.horizon) + [TWO_M_JIF]
        names = self.resolve_indicators(defaults, dataset.horizon)
        if len(names) < 2:
            raise ConfigError(f"correlate needs at least two indicators, got {len(names)}")
        reports = self.build_reports(dataset, names)
        grouping = dataset.grouping()

        groups = [(cat, [r for r in reports if grouping[r.journal_id] == cat]) for cat in dataset.categories]
        groups.append((TOTAL_LABEL, reports))

        blocks = []
        for group, members in groups:
            vectors = [self.vector(members, name) for name in names]
            try:
                matrix = correlation_matrix(vectors, self.config.method)
                blocks.append(CorrelationBlock(group, len(members), tuple(names), matrix))
            except StatsError as e:
                message = f"correlation for {group} not computed: {e}"
                result.warnings.append(message)
                self.logger.log_journal_skip("correlate", group, str(e))
                blocks.append(CorrelationBlock(group, len(members), tuple(names), None, note=str(e)))
        return self._render(blocks)

    def summarize(self, dataset: Dataset, result: AnalysisResult) -> bytes:
        """카테고리별 median / mean / sd 와 maturity time 집계"""
        names = self.resolve_indicators(default_indicator_names(dataset.horizon), dataset.horizon)
        reports = self.build_reports(dataset, names)
        grouping = dataset.grouping()
        categories = dataset.categories
        pooled = len(categories) > 1

        summaries = []
        for category in categories:
            members = [r for r in reports if grouping[r.journal_id] == category]
            for name in names:
                try:
                    summaries.extend(group_summary(self.vector(members, name), grouping, self.config.sd))
                except StatsError as e:
                    result.warnings.append(f"{category} {name}: {e}")
                    self.logger.log_journal_skip("summarize", category, str(e))
        if pooled:
            for name in names:
                try:
                    summaries.append(aggregate_summary(self.vector(reports, name), self.config.sd))
                except StatsError as e:
                    result.warnings.append(f"{TOTAL_LABEL} {name}: {e}")
                    self.logger.log_journal_skip("summarize", TOTAL_LABEL, str(e))

        tallies = maturity_tally(reports, grouping, include_total=pooled)
        return self._render(SummaryPayload(summaries=summaries, tallies=tallies, sd_convention=self.config.sd))

    def variance(self, dataset: Dataset, result: AnalysisResult) -> bytes:
        """지표별 그룹 내/그룹 간 분산 분해"""
        names = self.resolve_indicators(default_indicator_names(dataset.horizon), dataset.horizon)
        reports = self.build_reports(dataset, names)
        grouping = dataset.grouping()
        decomps = [variance_decomposition(self.vector(reports, name), grouping) for name in names]
        for d in decomps:
            if d.excluded:
                self.logger.info(f"{d.indicator_name}: {d.excluded} undefined values excluded")
        return self._render(decomps)

    def profile(self, dataset: Dataset, result: AnalysisResult) -> bytes:
        """저널별 citation age 분포 (--journal 로 필터)"""
        wanted = self.config.journal
        records = [r for r in dataset if not wanted or r.id == wanted]
        if not records:
            raise ConfigError(f"no journal matches {wanted!r}")
        entries = [
            ProfileEntry(
                journal_id=r.id,
                category=r.category,
                census_year=r.census_year,
                rows=tuple(citation_age_profile(r)),
            )
            for r in records
        ]
        return self._render(entries)
