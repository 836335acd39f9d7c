"""
PipelineLogger 로깅 모듈

분석 명령 실행 중 발생하는 이벤트를 기록합니다.
콘솔(stderr)과 파일 출력을 동시에 지원하며, 로그 파일 로테이션을 제공합니다.
stdout 은 보고서 출력 전용이므로 로그는 절대 stdout 으로 나가지 않습니다.
"""
import logging
import os
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional


# 로그 파일 기본 설정
DEFAULT_LOG_DIR = Path("logs")
DEFAULT_LOG_FILENAME = "jifkit.log"
DEFAULT_MAX_BYTES = 10 * 1024 * 1024  # 10MB
DEFAULT_BACKUP_COUNT = 5

NO_COLOR_ENV = "JIFKIT_NO_COLOR"

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class _ColorFormatter(logging.Formatter):
    """콘솔용: 레벨 이름에 ANSI 색상"""

    COLORS = {
        logging.DEBUG: "\033[36m",
        logging.INFO: "\033[32m",
        logging.WARNING: "\033[33m",
        logging.ERROR: "\033[31m",
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:
        text = super().format(record)
        color = self.COLORS.get(record.levelno)
        if not color:
            return text
        label = f"[{record.levelname}]"
        return text.replace(label, f"{color}{label}{self.RESET}", 1)


class PipelineLogger:
    """분석 명령 전용 로거 클래스"""

    def __init__(
        self,
        log_level: str = "WARNING",
        log_dir: Optional[Path] = None,
        log_filename: str = DEFAULT_LOG_FILENAME,
        max_bytes: int = DEFAULT_MAX_BYTES,
        backup_count: int = DEFAULT_BACKUP_COUNT,
        console_output: bool = True,
        file_output: bool = True,
        color: Optional[bool] = None,
        stream=None,
    ):
        """
        PipelineLogger 초기화

        Args:
            log_level: 콘솔 로그 레벨 (DEBUG, INFO, WARNING, ERROR)
            log_dir: 로그 파일 저장 디렉토리
            log_filename: 상세 로그 파일명 (기본값이면 jifkit_YYYYMMDD.log)
            max_bytes: 로그 파일 최대 크기 (기본 10MB)
            backup_count: 백업 파일 개수
            console_output: 콘솔(stderr) 출력 여부
            file_output: 파일 출력 여부
            color: ANSI 색상 사용 여부 (None 이면 JIFKIT_NO_COLOR 와 tty 여부로 결정)
            stream: 콘솔 스트림 (기본 sys.stderr)
        """
        self.log_level = self._validate_log_level(log_level)
        self.log_dir = Path(log_dir) if log_dir else DEFAULT_LOG_DIR

        # 1. Summary Log (jifkit.log)
        self.summary_log_filename = DEFAULT_LOG_FILENAME

        # 2. Detail Log (jifkit_YYYYMMDD.log)
        if log_filename == DEFAULT_LOG_FILENAME:
            date_str = datetime.now().strftime("%Y%m%d")
            self.detail_log_filename = f"jifkit_{date_str}.log"
        else:
            self.detail_log_filename = log_filename

        self.max_bytes = max_bytes
        self.backup_count = backup_count
        self.console_output = console_output
        self.file_output = file_output
        self.stream = stream if stream is not None else sys.stderr
        self.color = self._resolve_color(color)

        self._logger = self._setup_logger()

    def _validate_log_level(self, level: str) -> str:
        """로그 레벨 유효성 검증 (잘못된 값은 WARNING)"""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR"}
        level_upper = (level or "").upper()
        return level_upper if level_upper in valid_levels else "WARNING"

    def _get_log_level_int(self) -> int:
        return getattr(logging, self.log_level, logging.WARNING)

    def _resolve_color(self, color: Optional[bool]) -> bool:
        if os.environ.get(NO_COLOR_ENV):
            return False
        if color is not None:
            return color
        isatty = getattr(self.stream, "isatty", None)
        return bool(isatty and isatty())

    def _setup_logger(self) -> logging.Logger:
        """로거 설정 및 핸들러 추가"""
        # 인스턴스마다 고유한 로거 (테스트 시 핸들러 충돌 방지)
        logger = logging.getLogger(f"jifkit_{id(self)}")
        logger.setLevel(logging.DEBUG)
        logger.propagate = False

        formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT)

        if self.file_output:
            # summary 는 INFO, detail 은 항상 DEBUG
            self._add_file_handler(logger, formatter, self.summary_log_filename, logging.INFO)
            self._add_file_handler(logger, formatter, self.detail_log_filename, logging.DEBUG)

        if self.console_output:
            self._setup_console_handler(logger)

        return logger

    def _add_file_handler(self, logger: logging.Logger, formatter: logging.Formatter, filename: str, level: int):
        self.log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            filename=self.log_dir / filename,
            maxBytes=self.max_bytes,
            backupCount=self.backup_count,
            encoding='utf-8'
        )
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    def _setup_console_handler(self, logger: logging.Logger):
        console_handler = logging.StreamHandler(self.stream)
        console_handler.setLevel(self._get_log_level_int())
        formatter_cls = _ColorFormatter if self.color else logging.Formatter
        console_handler.setFormatter(formatter_cls(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(console_handler)

    @property
    def log_file_path(self) -> Path:
        """현재 상세 로그 파일 경로"""
        return self.log_dir / self.detail_log_filename

    def debug(self, message: str):
        self._logger.debug(message)

    def info(self, message: str):
        self._logger.info(message)

    def warning(self, message: str):
        self._logger.warning(message)

    def error(self, message: str, exc_info: bool = True):
        """
        ERROR 레벨 로그

        Args:
            message: 에러 메시지
            exc_info: 예외 컨텍스트가 있으면 스택 트레이스 포함 (기본 True)
        """
        self._logger.error(message, exc_info=exc_info and sys.exc_info()[0] is not None)

    def exception(self, message: str):
        self._logger.exception(message)

    def log_command_start(self, command: str, source: str):
        self.info(f"[START] {command}: {source}")

    def log_command_complete(self, command: str, source: str, journals: int):
        self.info(f"[COMPLETE] {command}: {source} ({journals} journals)")

    def log_journal_skip(self, command: str, journal_id: str, reason: str):
        """UNDEFINED 로 제외되거나 계산 불가한 저널/그룹"""
        self.warning(f"[SKIP] {command}: {journal_id} - {reason}")

    def log_error(self, command: str, error: Exception):
        """중단 오류: 콘솔에는 한 줄, 스택 트레이스는 DEBUG (상세 로그 파일)"""
        self.error(f"{command}: {type(error).__name__}: {error}", exc_info=False)
        if error.__traceback__ is not None:
            self._logger.debug("traceback", exc_info=(type(error), error, error.__traceback__))

    def close(self):
        """로거 핸들러 정리"""
        for handler in self._logger.handlers[:]:
            handler.close()
            self._logger.removeHandler(handler)


def get_logger(
    log_level: str = "WARNING",
    log_dir: Optional[Path] = None,
    console_output: bool = True,
    file_output: bool = True,
) -> PipelineLogger:
    """PipelineLogger 인스턴스 생성 헬퍼 함수"""
    return PipelineLogger(
        log_level=log_level,
        log_dir=log_dir,
        console_output=console_output,
        file_output=file_output,
    )
