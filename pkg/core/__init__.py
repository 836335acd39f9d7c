# Core Package
from core.analysis_orchestrator import AnalysisOrchestrator, AnalysisResult
from core.journal_record import Dataset, IndicatorValue, JournalRecord
from core.pipeline_logger import PipelineLogger

__all__ = [
    'AnalysisOrchestrator',
    'AnalysisResult',
    'Dataset',
    'IndicatorValue',
    'JournalRecord',
    'PipelineLogger',
]
