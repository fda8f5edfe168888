import io
import json
import subprocess
import sys

import pytest

from uavchannel.cli import EXIT_DOMAIN, EXIT_IO, EXIT_OK, EXIT_USAGE, UsageError, main, parse_args, run


def run_capture(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(parse_args(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_latency():
    spec = parse_args(["latency", "--ts", "10,100,1000,10000,100000", "--rate", "1.54e6", "--hops", "3"])
    assert spec.subcommand == "latency"
    assert spec.options == {"ts": [10, 100, 1000, 10000, 100000], "rate": [1.54e6], "hops": 3}
    assert spec.output_target is None and spec.output_format == "csv"


def test_parse_adapt():
    spec = parse_args(["adapt", "--target", "2.0", "--rate-mbps", "6", "--model", "model.json"])
    assert spec.options["target"] == 2.0 and spec.options["rate_mbps"] == 6.0
    assert spec.options["model"] == "model.json"


def test_scientific_integers():
    assert parse_args(["latency", "--ts", "1e5"]).options["ts"] == [100000]


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["util-ber", "--ber", "1.5"], "--ber"),
        (["latency", "--ts", "10,abc"], "--ts"),
        (["latency", "--ts", "10.5"], "--ts"),
        (["latency", "--rate", "-1"], "--rate"),
        (["latency", "--bogus", "1"], "--bogus"),
        (["adapt", "--offset", "-3"], "--offset"),
        (["reproduce-all"], "--outdir"),
        (["nosuch"], "nosuch"),
    ],
)
def test_usage_errors_name_flag(argv, flag):
    with pytest.raises(UsageError, match=flag):
        parse_args(argv)


def test_main_usage_exit_code(capsys):
    assert main(["util-ber", "--ber", "1.5"]) == EXIT_USAGE
    assert "--ber" in capsys.readouterr().err


def test_bare_subcommands_reproduce_appendices():
    code, out, _ = run_capture(["latency"])
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "1540000.0,100000,194.8051948051948"
    code, out, _ = run_capture(["util-ts"])
    assert len(out.splitlines()) == 16 and "5,100000,32.467532467532465" in out
    code, out, _ = run_capture(["util-rate"])
    assert len(out.splitlines()) == 8
    code, out, _ = run_capture(["util-ber"])
    assert out.splitlines()[1] == "0.0,0.1111111111111111"


def test_json_output():
    code, out, _ = run_capture(["util-ber", "--format", "json"])
    doc = json.loads(out)
    assert doc["columns"] == ["ber", "utilization_pct"] and len(doc["rows"]) == 6


def test_train_then_adapt(tmp_path):
    model = tmp_path / "model.json"
    trace = tmp_path / "trace.csv"
    assert run_capture(["train", "--out", str(model)])[0] == EXIT_OK
    assert json.loads(model.read_text())["training_meta"]["sample_count"] == 297
    code, out, err = run_capture(["adapt", "--model", str(model), "--out", str(trace)])
    assert code == EXIT_OK and out == "" and err == ""
    lines = trace.read_text().splitlines()
    assert lines[0] == "step,ts_bits,latency_ms,threshold_event"
    assert sum(line.endswith(",1") for line in lines[1:]) == 3
    # in-memory training gives the same bytes
    assert run_capture(["adapt"])[1] == trace.read_text()


def test_real_time_same_bytes():
    plain = run_capture(["adapt"])
    code, out, err = run_capture(["adapt", "--real-time", "--pace", "0"])
    assert code == EXIT_OK and out == plain[1]
    assert err.count("threshold reached") == 3


def test_missing_model_is_io_error(tmp_path):
    code, out, err = run_capture(["adapt", "--model", str(tmp_path / "absent.json")])
    assert code == EXIT_IO and out == "" and len(err.strip().splitlines()) == 1


def test_bad_model_schema_is_io_error(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"coef_latency": 1.0}))
    assert run_capture(["adapt", "--model", str(path)])[0] == EXIT_IO


def test_domain_error_exit(tmp_path):
    # rate absent from the slope table
    assert run_capture(["adapt", "--rate-mbps", "7"])[0] == EXIT_DOMAIN
    assert run_capture(["adapt", "--increase", "500"])[0] == EXIT_DOMAIN
    assert run_capture(["adapt", "--max-steps", "2"])[0] == EXIT_DOMAIN


def test_reproduce_all_files(tmp_path):
    assert run_capture(["reproduce-all", "--outdir", str(tmp_path / "out")])[0] == EXIT_OK
    names = sorted(p.name for p in (tmp_path / "out").iterdir())
    assert names == ["fig3.csv", "fig4.csv", "fig5.csv", "fig6.csv", "fig7.csv", "fig8.csv", "model.json"]
    fig7 = (tmp_path / "out" / "fig7.csv").read_text().splitlines()
    fig8 = (tmp_path / "out" / "fig8.csv").read_text().splitlines()
    assert fig7[0] == "step,latency_ms" and fig8[0] == "step,ts_bits"
    assert fig8[1] == "0,3741"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "uavchannel", "util-rate", "--rate", "10e6"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout == "data_rate_bps,utilization_pct\n10000000.0,5.0\n"
