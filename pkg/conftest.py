"""
Pytest Configuration

프로젝트 루트를 sys.path에 추가하여 절대 import를 지원합니다.
24개 저널 표본 (census 2011, horizon 5) 공용 fixture 도 여기서 제공합니다.
"""
import sys
import os
from pathlib import Path

import pytest

# 프로젝트 루트를 sys.path에 추가
_project_root = os.path.dirname(os.path.abspath(__file__))
if _project_root not in sys.path:
    sys.path.insert(0, _project_root)

from core.ingest import WIDE_CSV, parse_dataset  # noqa: E402

JOURNALS24_PATH = Path(_project_root) / "tests" / "data" / "journals24_wide.csv"

# 저널별 (R_1, R_2, R_3, R_4, 2M-JIF, 5-JIF, maturity time), 소수 셋째 자리
EXPECTED_ROWS = {
    "AIAA J": ("1.057", "1.411", "1.458", "1.327", "1.458", "1.277", 4),
    "AM NAT": ("4.725", "5.445", "5.651", "5.750", "5.750", "5.280", 5),
    "ANN NY ACAD SCI": ("3.155", "3.370", "3.372", "2.507", "3.372", "2.997", 4),
    "ASTRON ASTROPHYS": ("4.587", "4.285", "3.762", "3.437", "4.587", "3.979", 2),
    "ASTROPHYS J": ("6.024", "5.976", "4.803", "3.987", "6.024", "5.102", 2),
    "BIOL PHILOS": ("1.203", "0.895", "1.380", "1.714", "1.714", "1.360", 5),
    "BIOMETRIKA": ("1.913", "2.724", "3.141", "3.078", "3.141", "2.575", 4),
    "BRIT J PHILOS SCI": ("1.097", "1.587", "1.516", "1.383", "1.587", "1.364", 3),
    "ECOLOGY": ("4.849", "6.437", "6.864", "6.868", "6.868", "6.007", 5),
    "ECONOMETRICA": ("2.976", "4.324", "5.653", "6.721", "6.721", "4.700", 5),
    "EXP HEMATOL": ("2.905", "3.497", "3.293", "2.975", "3.497", "3.088", 3),
    "FASEB J": ("5.712", "6.664", "6.875", "6.699", "6.875", "6.340", 4),
    "HIST SCI": ("0.667", "0.818", "0.774", "0.667", "0.818", "0.699", 3),
    "IEEE T AERO ELEC SYS": ("1.095", "1.492", "1.862", "2.288", "2.288", "1.680", 5),
    "J ECONOMETRICS": ("1.349", "2.308", "2.896", "3.297", "3.297", "2.496", 5),
    "J GUID CONTROL DYNAM": ("0.941", "1.238", "1.370", "1.253", "1.370", "1.159", 4),
    "LIFE SCI": ("2.527", "2.880", "2.855", "2.736", "2.880", "2.732", 3),
    "P NATL ACAD SCI USA": ("9.681", "11.133", "11.167", "10.920", "11.167", "10.472", 4),
    "P ROY SOC A-MATH PHY": ("1.971", "1.813", "2.086", "2.066", "2.086", "1.987", 4),
    "PHYS REV D": ("4.558", "4.229", "3.838", "3.384", "4.558", "4.027", 2),
    "PLOS ONE": ("4.092", "5.401", "5.756", "5.710", "5.756", "4.537", 4),
    "STRUCT EQU MODELING": ("4.710", "4.770", "6.881", "11.965", "11.965", "7.195", 5),
    "TRENDS ECOL EVOL": ("15.748", "17.459", "16.547", "18.335", "18.335", "16.981", 5),
    "VACCINE": ("3.766", "4.163", "3.753", "3.403", "4.163", "3.700", 3),
}


@pytest.fixture(scope="session")
def journals24_path() -> Path:
    return JOURNALS24_PATH


@pytest.fixture(scope="session")
def journals24_bytes() -> bytes:
    return JOURNALS24_PATH.read_bytes()


@pytest.fixture(scope="session")
def journals24(journals24_bytes):
    """24개 저널 표본 Dataset (wide_csv)"""
    return parse_dataset(journals24_bytes, WIDE_CSV)


@pytest.fixture(scope="session")
def expected_rows():
    return EXPECTED_ROWS
