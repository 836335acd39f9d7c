#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
jifkit - 저널 impact factor 지표 도구 (CLI 진입점)

사용법:
    python main.py compute   --input journals.csv --schema wide
    python main.py correlate --input journals.csv --schema wide --method spearman
    python main.py summarize --input journals.csv --schema wide --sd population
    python main.py variance  --input journals.csv --schema wide --format json
    python main.py profile   --input journals.csv --schema wide --journal "AIAA J"

보고서는 stdout(또는 --output 파일)으로, 진단 메시지는 stderr 로 출력됩니다.
종료 코드: 0 성공, 1 오류, 2 잘못된 인자, 130 사용자 중단
"""
import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

# 프로젝트 루트를 sys.path에 추가 (절대 import 지원)
_project_root = os.path.dirname(os.path.abspath(__file__))
if _project_root not in sys.path:
    sys.path.insert(0, _project_root)

from config.analysis_config import AnalysisConfig
from core.analysis_orchestrator import COMMANDS, AnalysisOrchestrator
from core.pipeline_logger import PipelineLogger
from core.version import __version__, get_full_version

COMMAND_HELP = {
    'compute': '저널별 R_1..R_h, 2M-JIF, 5-JIF, impact maturity time',
    'correlate': '카테고리별 지표 상관행렬 + Total',
    'summarize': '카테고리별 median/mean/sd 와 maturity time 집계',
    'variance': '그룹 내/그룹 간 분산 분해',
    'profile': '저널별 citation age 분포 (그림용 데이터)',
}


def _common_options() -> argparse.ArgumentParser:
    """모든 하위 명령이 공유하는 옵션 (기본값 None = 설정 파일 값 사용)"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--input', dest='input_path', metavar='PATH', help='입력 CSV 파일')
    common.add_argument('--schema', choices=['long', 'wide'], help='입력 스키마 (기본값: long)')
    common.add_argument('--format', dest='output_format', choices=['csv', 'tsv', 'json'],
                        help='출력 형식 (기본값: csv)')
    common.add_argument('--output', dest='output_path', metavar='PATH', help='출력 파일 (기본값: stdout)')
    common.add_argument('--indicators', metavar='LIST',
                        help='쉼표로 구분한 지표 목록 (예: R_1,R_2,2M-JIF,5-JIF,TOTAL-JIF,gain)')
    common.add_argument('--group-by', dest='group_by', choices=['category'], help='그룹 키 (category)')
    common.add_argument('--method', choices=['pearson', 'spearman'], help='상관 계수 (correlate)')
    common.add_argument('--sd', choices=['sample', 'population'], help='표준편차 분모 (summarize)')
    common.add_argument('--journal', metavar='ID', help='저널 id 필터 (profile)')
    common.add_argument('--log-level', dest='log_level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='콘솔 로그 레벨 (기본값: WARNING)')
    common.add_argument('--log-dir', dest='log_dir', metavar='DIR', help='로그 파일 디렉토리 (기본값: logs)')
    common.add_argument('--no-color', dest='no_color', action='store_true', default=None,
                        help='진단 메시지 색상 끄기 (JIFKIT_NO_COLOR 와 동일)')
    common.add_argument('--config', metavar='PATH', help='설정 파일 경로 (JSON)')
    return common


def create_parser() -> argparse.ArgumentParser:
    """CLI 인자 파서 생성"""
    parser = argparse.ArgumentParser(
        prog='jifkit',
        description=f'jifkit v{__version__} - 저널 impact factor 지표 계산 도구',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
예시:
  %(prog)s compute --input journals.csv --schema wide
  %(prog)s correlate --input journals.csv --schema wide --indicators R_1,R_4,2M-JIF
  %(prog)s summarize --input journals.csv --schema wide --format tsv
  %(prog)s variance --input data.csv --format json --output variance.json
  %(prog)s profile --input journals.csv --schema wide --journal "AIAA J"
        """
    )
    parser.add_argument(
        '-v', '--version',
        action='version',
        version=get_full_version(),
        help='버전 정보 출력'
    )

    common = _common_options()
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common], help=COMMAND_HELP[command],
                              description=COMMAND_HELP[command])
    return parser


def build_config(args: argparse.Namespace) -> AnalysisConfig:
    """설정 파일(--config) 위에 명시한 CLI 플래그를 덮어씀"""
    config = AnalysisConfig.load(Path(args.config)) if args.config else AnalysisConfig()
    overrides = {
        'input_path': args.input_path,
        'schema': args.schema,
        'output_format': args.output_format,
        'output_path': args.output_path,
        'indicators': args.indicators,
        'group_by': args.group_by,
        'method': args.method,
        'sd': args.sd,
        'journal': args.journal,
        'log_level': args.log_level,
        'log_dir': args.log_dir,
        'no_color': args.no_color,
    }
    return config.merged(overrides)


def run_command(command: str, config: AnalysisConfig, stream=None) -> int:
    """명령 하나 실행 후 종료 코드 반환"""
    logger = PipelineLogger(
        log_level=config.log_level,
        log_dir=Path(config.log_dir),
        color=False if config.no_color else None,
    )
    try:
        orchestrator = AnalysisOrchestrator(config, logger, stream=stream)
        result = orchestrator.run(command)
        return result.exit_status
    finally:
        logger.close()


# ============================================================================
# 메인 진입점
# ============================================================================
def main(argv: Optional[List[str]] = None, stream=None) -> int:
    # 환경 변수 로드 (JIFKIT_NO_COLOR 등)
    load_dotenv(override=True)

    parser = create_parser()
    args = parser.parse_args(argv)

    try:
        return run_command(args.command, build_config(args), stream=stream)
    except KeyboardInterrupt:
        sys.stderr.write("\ninterrupted\n")
        return 130


if __name__ == '__main__':
    sys.exit(main())
