"""
CLI 통합 테스트 (main.main 을 직접 호출)

stdout 은 BytesIO 로 받고, 진단 메시지(stderr)는 capsys 로 확인합니다.
"""
import io
import json

import pytest

import main
from core.analysis_orchestrator import COMMANDS
from core.ingest import LONG_COLUMNS

LONG_HEADER = ",".join(LONG_COLUMNS) + "\n"


@pytest.fixture
def run(tmp_path, monkeypatch):
    """(종료 코드, stdout 바이트) 를 돌려주는 CLI 실행기"""
    monkeypatch.setenv("JIFKIT_NO_COLOR", "1")
    log_dir = tmp_path / "logs"

    def _run(*argv):
        stream = io.BytesIO()
        code = main.main([*argv, "--log-dir", str(log_dir)], stream=stream)
        return code, stream.getvalue()

    return _run


@pytest.fixture
def journals24_args(journals24_path):
    return ["--input", str(journals24_path), "--schema", "wide"]


def write_long(tmp_path, name, rows):
    path = tmp_path / name
    path.write_text(LONG_HEADER + "".join(r + "\n" for r in rows), encoding="utf-8")
    return path


class TestCompute:

    def test_expected_rows_output(self, run, journals24_args):
        code, out = run("compute", *journals24_args)
        assert code == 0
        lines = out.decode("utf-8").splitlines()
        assert lines[0] == "journal,category,R_1,R_2,R_3,R_4,2M-JIF,5-JIF,maturity_time"
        assert lines[1] == "AIAA J,EA,1.057,1.411,1.458,1.327,1.458,1.277,4"
        assert len(lines) == 25

    def test_selected_indicators(self, run, journals24_args):
        code, out = run("compute", *journals24_args, "--indicators", "3-JIF,gain")
        assert code == 0
        lines = out.decode().splitlines()
        assert lines[0] == "journal,category,3-JIF,gain,maturity_time"
        assert lines[1] == "AIAA J,EA,1.238,37.886,4"

    def test_json_format(self, run, journals24_args):
        code, out = run("compute", *journals24_args, "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["horizon"] == 5
        assert [j["journal"] for j in doc["journals"]][:2] == ["AIAA J", "AM NAT"]

    def test_output_file(self, run, journals24_args, tmp_path):
        target = tmp_path / "reports" / "report.tsv"
        code, out = run("compute", *journals24_args, "--format", "tsv", "--output", str(target))
        assert code == 0
        assert out == b""
        assert target.read_text(encoding="utf-8").splitlines()[1].startswith("AIAA J\tEA\t1.057")

    def test_zero_denominator_journal_is_na(self, run, tmp_path, capsys):
        path = write_long(tmp_path, "zero.csv", [
            "A,X,2011,2010,4,2", "A,X,2011,2009,6,3",
            "B,X,2011,2010,5,0", "B,X,2011,2009,1,0",
        ])
        code, out = run("compute", "--input", str(path))
        assert code == 0
        assert out.decode().splitlines()[2] == "B,X,NA,NA,NA"
        assert "[SKIP] compute: B" in capsys.readouterr().err


class TestCorrelate:

    def test_default_blocks(self, run, journals24_args):
        code, out = run("correlate", *journals24_args)
        assert code == 0
        lines = out.decode().splitlines()
        assert lines[0] == "group,journals,indicator,R_1,R_2,R_3,R_4,2M-JIF"
        total = [line for line in lines if line.startswith("Total,24,")]
        assert len(total) == 5
        assert total[0].split(",")[-1] == "0.92"

    def test_same_indicator_twice(self, run, journals24_args):
        code, out = run("correlate", *journals24_args, "--indicators", "R_1,R_1")
        assert code == 0
        assert "Total,24,R_1,1.00,1.00" in out.decode().splitlines()

    def test_all_pairs_strongly_correlated(self, run, journals24_args):
        code, out = run("correlate", *journals24_args, "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["method"] == "pearson"
        total = doc["blocks"][-1]
        assert total["group"] == "Total"
        assert all(r > 0.8 for row in total["matrix"] for r in row)

    def test_spearman(self, run, journals24_args):
        code, out = run("correlate", *journals24_args, "--method", "spearman", "--format", "json")
        assert code == 0
        total = json.loads(out)["blocks"][-1]
        assert [total["matrix"][i][i] for i in range(5)] == [1.0] * 5
        assert all(-1.0 <= r <= 1.0 for row in total["matrix"] for r in row)

    def test_single_indicator_is_an_error(self, run, journals24_args):
        code, out = run("correlate", *journals24_args, "--indicators", "R_1")
        assert code == 1
        assert out == b""


class TestSummarize:

    def test_pooled_tally(self, run, journals24_args):
        code, out = run("summarize", *journals24_args)
        assert code == 0
        lines = out.decode().splitlines()
        total = [line for line in lines if line.startswith("Total,24,0,")]
        assert total == [
            "Total,24,0,R_1,2,3,12.5",
            "Total,24,0,R_2,3,5,20.8",
            "Total,24,0,R_3,4,8,33.3",
            "Total,24,0,R_4,5,8,33.3",
        ]
        assert "" in lines

    def test_single_category_has_no_total(self, run, tmp_path):
        path = write_long(tmp_path, "one.csv", [
            "A,X,2011,2010,4,2", "A,X,2011,2009,6,3",
            "B,X,2011,2010,5,1", "B,X,2011,2009,1,1",
        ])
        code, out = run("summarize", "--input", str(path), "--indicators", "R_1")
        assert code == 0
        assert "Total" not in out.decode()


class TestVariance:

    def test_journals24(self, run, journals24_args):
        code, out = run("variance", *journals24_args, "--indicators", "R_1,2M-JIF")
        assert code == 0
        lines = out.decode().splitlines()
        assert lines[0] == "# divisor: population (N)"
        assert lines[2].startswith("R_1,24,8,0,3.804,5.413,5.143,")
        assert lines[3].startswith("2M-JIF,24,8,0,5.012,8.084,7.534,")

    def test_single_category_fails(self, run, tmp_path, capsys):
        path = write_long(tmp_path, "one.csv", [
            "A,X,2011,2010,4,2", "A,X,2011,2009,6,3",
            "B,X,2011,2010,5,1", "B,X,2011,2009,1,1",
        ])
        code, out = run("variance", "--input", str(path))
        assert code == 1
        assert out == b""
        assert "SingleGroup" in capsys.readouterr().err


class TestProfile:

    def test_journal_filter(self, run, journals24_args):
        code, out = run("profile", *journals24_args, "--journal", "AIAA J")
        assert code == 0
        lines = out.decode().splitlines()
        assert lines[0] == "journal,category,age,target_year,citations,citable_items,rate"
        assert lines[1] == "AIAA J,EA,1,2010,239,275,0.869"
        assert len(lines) == 6

    def test_unknown_journal(self, run, journals24_args, capsys):
        code, out = run("profile", *journals24_args, "--journal", "NO SUCH JOURNAL")
        assert code == 1
        assert out == b""
        assert "NO SUCH JOURNAL" in capsys.readouterr().err


class TestErrors:

    def test_missing_input_file(self, run, tmp_path, capsys):
        missing = tmp_path / "missing.csv"
        code, out = run("compute", "--input", str(missing))
        assert code == 1
        assert out == b""
        err = capsys.readouterr().err
        assert "[ERROR] compute: ConfigError" in err
        assert str(missing) in err

    def test_malformed_input_reports_path_and_line(self, run, tmp_path, capsys):
        path = write_long(tmp_path, "bad.csv", ["A,X,2011,2010,-1,1", "A,X,2011,2009,1,1"])
        code, _ = run("compute", "--input", str(path))
        assert code == 1
        err = capsys.readouterr().err
        assert f"{path}: line 2" in err
        assert "NegativeCount" in err

    def test_header_only_input(self, run, tmp_path, capsys):
        path = tmp_path / "empty.csv"
        path.write_text(LONG_HEADER, encoding="utf-8")
        code, out = run("compute", "--input", str(path))
        assert code == 1
        assert out == b""
        assert "EmptyPayload" in capsys.readouterr().err

    @pytest.mark.parametrize("indicator", ["IF", "R_9", "7-JIF"])
    def test_bad_indicator(self, run, journals24_args, indicator):
        code, out = run("compute", *journals24_args, "--indicators", indicator)
        assert code == 1
        assert out == b""

    def test_bad_argument_value(self, run, journals24_args):
        with pytest.raises(SystemExit) as exc:
            run("compute", *journals24_args, "--format", "xml")
        assert exc.value.code == 2

    def test_missing_command(self):
        with pytest.raises(SystemExit) as exc:
            main.main([])
        assert exc.value.code == 2


class TestDeterminism:

    @pytest.mark.parametrize("command", COMMANDS)
    @pytest.mark.parametrize("fmt", ["csv", "json"])
    def test_byte_identical_runs(self, run, journals24_args, command, fmt):
        first = run(command, *journals24_args, "--format", fmt)
        second = run(command, *journals24_args, "--format", fmt)
        assert first[0] == 0
        assert first == second
        assert first[1]


class TestLogging:

    def test_log_files_written(self, run, journals24_args, tmp_path):
        run("compute", *journals24_args)
        summary = tmp_path / "logs" / "jifkit.log"
        assert summary.exists()
        text = summary.read_text(encoding="utf-8")
        assert "[START] compute" in text
        assert "[COMPLETE] compute" in text
        assert "(24 journals)" in text

    def test_nothing_on_stderr_by_default(self, run, journals24_args, capsys):
        run("compute", *journals24_args)
        assert capsys.readouterr().err == ""
