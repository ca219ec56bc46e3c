import json

import pytest

from hedgehog.certificate import Certificate
from hedgehog.certifier import certify, random_cubic, sample_cubics
from hedgehog.cli import main
from hedgehog.parse import parse_cubic

F_TEXT = "x1*x2*x4 - x1*x5^2 + x2*x3^2 + x3*x5*x6 + x4*x6^2"


@pytest.fixture(scope="module")
def reference_cert():
    return certify(F_TEXT)


def test_certify_reference(reference_cert):
    assert reference_cert.verdict == "HEDGEHOG_CERTIFIED"
    assert reference_cert.all_passed()
    assert reference_cert.condition1["hf"] == [1, 6, 6, 1]
    assert reference_cert.condition2["beta0"] == {"2": 15, "3": 0, "4": 0}
    assert reference_cert.condition2["beta1"] == {"3": 35, "4": 0, "5": 0}
    assert reference_cert.hedgehog["homI_dims"]["-1"] == 12
    assert reference_cert.hedgehog["kerOmega"]["dim"] == 6
    assert reference_cert.fractal["fiber_ranks"]["1"] == {"dim": 182, "rank": 13}


def test_certify_monomial_cubic_fails_condition1():
    cert = certify("x1^3")
    assert cert.verdict == "FAILED(condition1)"
    assert cert.condition1["pass"] is False
    assert not cert.condition2  # short-circuited


def test_certify_zero_is_degenerate():
    cert = certify("0")
    assert cert.verdict == "DEGENERATE_INPUT"


def test_certificate_json_round_trip(reference_cert):
    text = reference_cert.to_json()
    again = Certificate.from_json(text)
    assert again.to_dict() == reference_cert.to_dict()
    assert again.to_json() == text


def test_certify_deterministic_json():
    a = certify(F_TEXT).to_json()
    b = certify(parse_cubic(F_TEXT)).to_json()
    assert a == b


def test_sample_deterministic():
    r1 = sample_cubics(seed=1, count=1, coeff_range=(-2, 2))
    r2 = sample_cubics(seed=1, count=1, coeff_range=(-2, 2))
    assert r1.to_dict() == r2.to_dict()
    assert len(r1.results) == 1


def test_sample_degenerate_range():
    rep = sample_cubics(seed=4, count=2, coeff_range=(0, 0))
    assert [r.verdict for r in rep.results] == ["DEGENERATE_INPUT"] * 2


def test_sample_includes_paper_example():
    rep = sample_cubics(seed=3, count=1, include_paper_example=True)
    assert rep.results[0].cubic == F_TEXT
    assert rep.results[0].verdict == "HEDGEHOG_CERTIFIED"


def test_random_cubic_seeded():
    import random

    a = random_cubic(random.Random(9), -3, 3)
    b = random_cubic(random.Random(9), -3, 3)
    assert a == b


def test_cli_certify_exit_codes(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["certify", "--cubic", F_TEXT, "--json", str(out)]) == 0
    assert "HEDGEHOG_CERTIFIED" in capsys.readouterr().out
    data = json.loads(out.read_text())
    assert data["verdict"] == "HEDGEHOG_CERTIFIED"
    assert main(["certify", "--cubic", "x1^3"]) == 1
    capsys.readouterr()
    assert main(["certify", "--cubic", "x1**3"]) == 2
    capsys.readouterr()
    assert main(["certify", "--cubic", "x1 + x2^3"]) == 2
    capsys.readouterr()


def test_cli_certify_at_file(tmp_path, capsys):
    src = tmp_path / "cubic.txt"
    src.write_text(F_TEXT + "\n")
    assert main(["certify", "--cubic", f"@{src}"]) == 0
    capsys.readouterr()


def test_cli_certify_json_bytes_stable(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    main(["certify", "--cubic", F_TEXT, "--json", str(out1)])
    main(["certify", "--cubic", F_TEXT, "--json", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_perp(capsys):
    assert main(["perp", "--cubic", F_TEXT, "--degree", "2"]) == 0
    out = capsys.readouterr().out
    assert "dim (perp)_2 = 15" in out
    assert out.count("a") > 15  # fifteen quadrics printed


def test_cli_betti(capsys):
    assert main(["betti", "--cubic", F_TEXT]) == 0
    out = capsys.readouterr().out
    assert "{2: 15, 3: 0, 4: 0}" in out
    assert "{3: 35, 4: 0, 5: 0}" in out


def test_cli_tangent(capsys):
    assert main(["tangent", "--cubic", F_TEXT]) == 0
    out = capsys.readouterr().out
    assert "-1: 12" in out
    assert "-1: 6" in out


def test_cli_obstruction(capsys):
    assert main(["obstruction", "--cubic", F_TEXT]) == 0
    out = capsys.readouterr().out
    assert "ker Omega dimension: 6" in out


def test_cli_fractal(capsys):
    assert main(["fractal", "--cubic", F_TEXT, "--t-samples", "0,1"]) == 0
    out = capsys.readouterr().out
    assert "gamma identity: verified" in out


def test_cli_sample_outputs(tmp_path, capsys):
    csv_path = tmp_path / "survey.csv"
    fig_path = tmp_path / "survey.png"
    json_path = tmp_path / "survey.json"
    code = main(["sample", "--seed", "1", "--count", "1",
                 "--coeff-range", "0..0",
                 "--csv", str(csv_path), "--figure", str(fig_path),
                 "--json", str(json_path)])
    assert code == 0
    capsys.readouterr()
    header = csv_path.read_text().splitlines()[0]
    assert header.startswith("index,cubic,verdict")
    assert fig_path.stat().st_size > 0
    assert fig_path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    data = json.loads(json_path.read_text())
    assert data["seed"] == 1 and len(data["results"]) == 1


def test_cli_bad_coeff_range(capsys):
    assert main(["sample", "--seed", "1", "--count", "1",
                 "--coeff-range", "oops"]) == 2
    capsys.readouterr()


def test_certify_structured_cubic_fails_condition2():
    # passes the apolarity shape but its perp needs five extra cubic
    # generators, so the resolution-shape stage rejects it
    cert = certify("x1^2*x2 + x3^2*x4 + x5^2*x6")
    assert cert.verdict == "FAILED(condition2)"
    assert cert.condition1["pass"] is True
    assert cert.condition2["beta0"] == {"2": 15, "3": 5, "4": 0}
    assert cert.condition2["pass"] is False
    assert not cert.condition3


def test_verdict_iff_all_passed(reference_cert):
    assert reference_cert.all_passed() == (
        reference_cert.verdict == "HEDGEHOG_CERTIFIED")
    failing = certify("x1^3")
    assert not failing.all_passed()
    assert failing.verdict != "HEDGEHOG_CERTIFIED"
