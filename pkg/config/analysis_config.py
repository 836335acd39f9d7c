"""
AnalysisConfig 설정 관리 모듈

분석 명령 실행에 필요한 설정(입력, 스키마, 출력 형식, 지표 선택 등)을 관리합니다.
JSON 파일에서 로드하고, 잘못된 값은 기본값으로 대체합니다.
CLI 플래그로 명시한 값은 파일 값보다 우선합니다.
"""
import json
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Set

from core.errors import ConfigError
from core.indicators import GAIN, TOTAL_JIF, TWO_M_JIF

VALID_SCHEMAS: Set[str] = {"long", "wide"}
VALID_FORMATS: Set[str] = {"csv", "tsv", "json"}
VALID_METHODS: Set[str] = {"pearson", "spearman"}
VALID_SD: Set[str] = {"sample", "population"}
VALID_GROUP_BY: Set[str] = {"category"}
VALID_LOG_LEVELS: Set[str] = {"DEBUG", "INFO", "WARNING", "ERROR"}

DEFAULT_CONFIG_FILENAME = "analysis_config.json"


def get_base_path() -> Path:
    """프로젝트 루트 (config 패키지의 상위 디렉토리)"""
    return Path(__file__).parent.parent


def get_config_path(filename: str = DEFAULT_CONFIG_FILENAME) -> Path:
    """기본 설정 파일 경로"""
    return get_base_path() / "config" / filename


@dataclass
class AnalysisConfig:
    """분석 설정 데이터클래스"""

    input_path: str = ""
    schema: str = "long"
    output_format: str = "csv"
    output_path: str = ""
    indicators: List[str] = field(default_factory=list)
    group_by: str = "category"
    method: str = "pearson"
    sd: str = "sample"
    journal: str = ""
    log_level: str = "WARNING"
    log_dir: str = "logs"
    no_color: bool = False

    def __post_init__(self):
        self._validate_and_fix()

    def _validate_and_fix(self):
        """잘못된 값을 기본값으로 대체"""
        if self.schema not in VALID_SCHEMAS:
            self.schema = "long"
        if self.output_format not in VALID_FORMATS:
            self.output_format = "csv"
        if self.method not in VALID_METHODS:
            self.method = "pearson"
        if self.sd not in VALID_SD:
            self.sd = "sample"
        if self.group_by not in VALID_GROUP_BY:
            self.group_by = "category"

        if not isinstance(self.log_level, str) or self.log_level.upper() not in VALID_LOG_LEVELS:
            self.log_level = "WARNING"
        else:
            self.log_level = self.log_level.upper()

        # 쉼표 문자열도 허용 ("R_1,2M-JIF")
        if isinstance(self.indicators, str):
            self.indicators = [n.strip() for n in self.indicators.split(",") if n.strip()]
        elif not isinstance(self.indicators, list):
            self.indicators = []

        if not isinstance(self.no_color, bool):
            self.no_color = False
        for name in ("input_path", "output_path", "journal", "log_dir"):
            if not isinstance(getattr(self, name), str):
                setattr(self, name, "")
        if not self.log_dir:
            self.log_dir = "logs"

    def validate(self) -> None:
        """
        조용히 고칠 수 없는 조건 확인

        Raises:
            ConfigError: 입력 파일이 없거나 지표 이름을 알 수 없을 때
        """
        if not self.input_path:
            raise ConfigError("no input file given (use --input PATH)")
        path = Path(self.input_path)
        if not path.is_file():
            raise ConfigError(f"input file not found: {path}")
        for name in self.indicators:
            if not _known_indicator(name):
                raise ConfigError(
                    f"unknown indicator {name!r} (expected R_<j>, <n>-JIF, {TWO_M_JIF}, {TOTAL_JIF} or {GAIN})"
                )

    def merged(self, overrides: Dict[str, Any]) -> 'AnalysisConfig':
        """None 이 아닌 override 값을 덮어쓴 새 설정"""
        data = self.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None and k in data})
        return AnalysisConfig.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        """JSON 직렬화를 위한 딕셔너리 변환"""
        return {
            'input_path': self.input_path,
            'schema': self.schema,
            'output_format': self.output_format,
            'output_path': self.output_path,
            'indicators': list(self.indicators),
            'group_by': self.group_by,
            'method': self.method,
            'sd': self.sd,
            'journal': self.journal,
            'log_level': self.log_level,
            'log_dir': self.log_dir,
            'no_color': self.no_color,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AnalysisConfig':
        """딕셔너리에서 복원 (모르는 키는 무시)"""
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=indent)

    @classmethod
    def from_json(cls, json_str: str) -> 'AnalysisConfig':
        """JSON 문자열에서 복원 (파싱 실패 시 기본 설정)"""
        try:
            data = json.loads(json_str)
        except json.JSONDecodeError:
            return cls()
        if not isinstance(data, dict):
            return cls()
        return cls.from_dict(data)

    def save(self, file_path: Path) -> None:
        file_path = Path(file_path)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, 'w', encoding='utf-8') as f:
            f.write(self.to_json())

    @classmethod
    def load(cls, file_path: Path) -> 'AnalysisConfig':
        """JSON 파일에서 설정 로드 (파일 없거나 손상되면 기본값)"""
        file_path = Path(file_path)
        if not file_path.exists():
            return cls()
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                return cls.from_json(f.read())
        except (OSError, UnicodeDecodeError):
            return cls()

    @property
    def target_path(self) -> Optional[Path]:
        """출력 파일 경로 (None 이면 stdout)"""
        if not self.output_path or self.output_path == "-":
            return None
        return Path(self.output_path)


def _known_indicator(name: str) -> bool:
    # 범위(1..Y) 검사는 데이터셋을 읽은 뒤 orchestrator 에서 수행
    if name in (TWO_M_JIF, TOTAL_JIF, GAIN):
        return True
    if name.startswith("R_"):
        return name[2:].isdigit()
    if name.endswith("-JIF"):
        return name[:-4].isdigit()
    return False


if __name__ == "__main__":  # pragma: no cover
    sys.stdout.write(AnalysisConfig().to_json() + "\n")
