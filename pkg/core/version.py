"""
jifkit 버전 정보

버전 관리 규칙: Semantic Versioning (https://semver.org/lang/ko/)
- MAJOR: 호환되지 않는 API 변경
- MINOR: 하위 호환성 있는 기능 추가
- PATCH: 하위 호환성 있는 버그 수정
"""

__version__ = "0.4.2"
RELEASE_DATE = "2026-10-16"

VERSION_INFO = (0, 4, 1)
__app_name__ = "jifkit - journal impact indicator toolkit"


def get_version() -> str:
    return __version__


def get_version_info() -> tuple:
    """버전 튜플 반환 (major, minor, patch)"""
    try:
        return tuple(int(p) for p in __version__.split('.')[:3])
    except ValueError:
        return VERSION_INFO


def get_full_version() -> str:
    """전체 버전 정보 문자열 반환"""
    return f"{__app_name__} v{__version__} ({RELEASE_DATE})"
