import io
import json
import subprocess
import sys

import numpy as np
import pytest

from wimax_interleaver.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_table_qpsk():
    code, out, err = call("table", "--mod", "qpsk", "--ncpbs", "96", "--rows", "5", "--cols", "5")
    assert code == 0
    assert out.splitlines() == [
        "QPSK ncpbs=96 d=16",
        " 0 16 32 48 64",
        " 1 17 33 49 65",
        " 2 18 34 50 66",
        " 3 19 35 51 67",
        " 4 20 36 52 68",
    ]
    assert err == ""


def test_table_csv_case_insensitive():
    code, out, _ = call("table", "--mod", "16QAM", "--ncpbs", "192", "--rows", "2", "--cols", "5",
                        "--format", "csv")
    assert code == 0
    assert out == "modulation=16qam,ncpbs=192,d=16\n0,16,32,48,64\n17,1,49,33,81\n"


def test_table_too_many_rows():
    code, out, err = call("table", "--mod", "qpsk", "--ncpbs", "96", "--rows", "20")
    assert code == 2 and out == ""
    assert "rows=20" in err


def test_invalid_depth_exit_code():
    code, out, err = call("deinterleave", "--mod", "16qam", "--ncpbs", "200")
    assert code == 2
    assert out == ""
    assert "ncpbs=200" in err and "divisible by d=16" in err


def test_columns_not_multiple_of_s():
    code, _, err = call("table", "--mod", "16qam", "--ncpbs", "208")
    assert code == 2
    assert "s=2" in err


@pytest.mark.parametrize("argv", [
    ["table", "--mod", "bpsk", "--ncpbs", "96"],
    ["table", "--mod", "qpsk", "--ncpbs", "96", "--d", "8"],
    ["bogus"],
    [],
])
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_verify_single_and_all():
    code, out, _ = call("verify", "--mod", "64qam", "--ncpbs", "576")
    assert code == 0
    assert out == "64-QAM ncpbs=576 d=16 checked=576 mismatches=0 PASS\n"

    code, out, err = call("verify", "--all", "--max-ncpbs", "96", "--d", "12")
    assert code == 0
    lines = out.splitlines()
    keys = [(int(l.split()[1].split("=")[1]), l.split()[0]) for l in lines]
    order = {"QPSK": 0, "16-QAM": 1, "64-QAM": 2}
    assert keys == sorted(keys, key=lambda k: (k[0], order[k[1]]))
    assert len(lines) == 8 + 4 + 2
    assert "0 failed" in err


def test_verify_needs_params():
    assert call("verify")[0] == 2


def test_verify_mismatch_exit_code(monkeypatch):
    from wimax_interleaver import analysis
    from wimax_interleaver.permutation import AddressSequence, Direction

    def broken(params):
        values = list(range(params.ncpbs))[::-1]
        return AddressSequence(params, Direction.DEINTERLEAVE, tuple(values))

    monkeypatch.setattr(analysis, "generate_all", broken)
    code, out, err = call("verify", "--mod", "qpsk", "--ncpbs", "96")
    assert code == 1
    assert out.rstrip().endswith("FAIL")
    assert "oracle=" in err


def test_sweep():
    code, out, _ = call("sweep", "--max-ncpbs", "96")
    assert code == 0
    assert out == "QPSK: 16 32 48 64 80 96\n16-QAM: 32 64 96\n64-QAM: 48 96\n"
    code, out, _ = call("sweep", "--max-ncpbs", "15")
    assert out == "QPSK:\n16-QAM:\n64-QAM:\n"
    assert call("sweep", "--max-ncpbs", "96", "--verify")[0] == 0


def test_disperse():
    code, out, _ = call("disperse", "--mod", "16qam", "--ncpbs", "192", "--start", "12", "--len", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["positions"] == [1, 17, 33, 49]
    assert doc["max_run"] == 1 and doc["min_gap"] == 16
    assert call("disperse", "--mod", "qpsk", "--ncpbs", "96", "--len", "97")[0] == 2


def test_file_round_trip_ascii(tmp_path):
    rng = np.random.default_rng(1)
    lines = ["".join(map(str, rng.integers(0, 2, 192))) for _ in range(4)]
    src = tmp_path / "in.txt"
    src.write_text("\n".join(lines) + "\n")
    flags = ["--mod", "64qam", "--ncpbs", "192", "--d", "16"]
    code, _, _ = call("interleave", *flags, "-i", str(src), "-o", str(tmp_path / "mid.txt"))
    assert code == 0
    assert (tmp_path / "mid.txt").read_bytes() != src.read_bytes()
    code, _, _ = call("deinterleave", *flags, "-i", str(tmp_path / "mid.txt"), "-o", str(tmp_path / "out.txt"))
    assert code == 0
    assert (tmp_path / "out.txt").read_bytes() == src.read_bytes()


def test_partial_and_pad(tmp_path):
    src = tmp_path / "in.txt"
    src.write_text("1" * 100)
    out = tmp_path / "out.txt"
    code, _, err = call("deinterleave", "--mod", "qpsk", "--ncpbs", "96", "-i", str(src), "-o", str(out))
    assert code == 3
    assert "frame 1" in err
    code, _, err = call("deinterleave", "--mod", "qpsk", "--ncpbs", "96", "-i", str(src), "-o", str(out),
                        "--partial", "pad")
    assert code == 0
    assert "92" in err
    assert len(out.read_text().split()) == 2


def test_missing_input_is_io_error(tmp_path):
    code, _, err = call("interleave", "--mod", "qpsk", "--ncpbs", "96", "-i", str(tmp_path / "nope"))
    assert code == 3
    assert "nope" in err


def test_bad_ascii_is_io_error(tmp_path):
    src = tmp_path / "in.txt"
    src.write_text("01x")
    code, _, err = call("interleave", "--mod", "qpsk", "--ncpbs", "96", "-i", str(src), "-o", str(tmp_path / "o"))
    assert code == 3
    assert "invalid character" in err


def cli(*argv, data):
    return subprocess.run(
        [sys.executable, "-m", "wimax_interleaver", *argv], input=data, capture_output=True, check=False
    )


@pytest.mark.parametrize("io_format", ["ascii", "raw"])
def test_pipe_composability(io_format):
    rng = np.random.default_rng(9)
    bits = rng.integers(0, 2, 576 * 3).astype(np.uint8)
    if io_format == "raw":
        data = np.packbits(bits).tobytes()
    else:
        data = b"".join((bits[i:i + 576] + ord("0")).tobytes() + b"\n" for i in range(0, bits.size, 576))
    flags = ["--mod", "64qam", "--ncpbs", "576", "--io-format", io_format]
    mid = cli("interleave", *flags, data=data)
    assert mid.returncode == 0 and mid.stderr == b""
    back = cli("deinterleave", *flags, data=mid.stdout)
    assert back.returncode == 0
    assert back.stdout == data


def test_stdout_carries_only_payload():
    res = cli("interleave", "--mod", "qpsk", "--ncpbs", "96", "--partial", "pad", data=b"1" * 10)
    assert res.returncode == 0
    assert set(res.stdout) <= set(b"01\n")
    assert b"padded" in res.stderr
