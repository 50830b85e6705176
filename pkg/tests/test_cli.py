import json
from fractions import Fraction

import pytest

from rayleigh_forge.cli import main

F = Fraction

K4_GRAPH = """\
graph 4
0 1 1
0 2 2
0 3 3
1 2 4
1 3 5
2 3 6
"""

TRI_GRAPH = """\
graph 3
0 1 a1
1 2 a2
2 0 g
"""

TRI2_GRAPH = """\
graph 3
0 1 b1
1 2 b2
2 0 g
"""

U32_BASES = """\
elements: 1,2,3
1,2
1,3
2,3
"""

POS_WEIGHTS = """\
elements: x,y
- : 1
x : 2
y : 3
x,y : 4
"""

CORR_WEIGHTS = """\
elements: x,y
- : 1
x,y : 1
"""

CORR3_WEIGHTS = """\
elements: x,y,z
- : 1
x,y : 1
z : 1
"""

K4_CERT = "1 : 2,5 | 3,4\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return {
        "k4": write("k4.graph", K4_GRAPH),
        "tri": write("tri.graph", TRI_GRAPH),
        "tri2": write("tri2.graph", TRI2_GRAPH),
        "u32": write("u32.bases", U32_BASES),
        "pos": write("pos.weights", POS_WEIGHTS),
        "corr": write("corr.weights", CORR_WEIGHTS),
        "corr3": write("corr3.weights", CORR3_WEIGHTS),
        "cert": write("k4.cert", K4_CERT),
        "dir": tmp_path,
    }


def run(argv):
    return main([str(a) for a in argv])


def run_json(files, argv, capsys):
    out = files["dir"] / "report.json"
    code = run(argv + ["--json", str(out)])
    capsys.readouterr()
    return code, json.loads(out.read_text())


class TestMatroidInfo:
    def test_k4_counts(self, files, capsys):
        assert run(["matroid", "info", files["k4"], "--fixed", "1"]) == 0
        out = capsys.readouterr().out
        assert "independent-set counts: 1, 6, 15, 16" in out
        assert "flats by rank: 1, 6, 7, 1" in out
        assert "h-vector: 1, 3, 6, 6" in out
        assert "bases by fixed-intersection size: 8, 8" in out

    def test_json_report_fields(self, files, capsys):
        code, report = run_json(files, ["matroid", "info", files["u32"]], capsys)
        assert code == 0
        assert report["schema"] == 1
        assert report["tool"] == "rayleigh-forge"
        assert report["exit_code"] == 0
        assert report["command"][0] == "matroid"
        assert list(report["inputs"]) == [files["u32"]]
        assert len(report["inputs"][files["u32"]]) == 64  # sha256 hex
        assert report["results"]["independent"] == [1, 3, 3]
        assert report["results"]["charpoly_magnitudes"] == [1, 3, 2]


class TestRayleighCheck:
    def test_coeff_verifies_bases(self, files):
        assert run(["rayleigh", "check", files["u32"]]) == 0

    def test_sample_refutes_correlated_weights(self, files, capsys):
        code, report = run_json(
            files, ["rayleigh", "check", files["corr"], "--strategy", "sample"], capsys
        )
        assert code == 1
        assert report["results"]["summary"] == "refuted"
        verdict = report["results"]["verdicts"]["x,y"]
        assert verdict["status"] == "refuted"
        assert "witness" in verdict and "value" in verdict

    def test_inconclusive_exit(self, files):
        code = run(["rayleigh", "check", files["corr"], "--strategy", "coeff"])
        assert code == 2

    def test_certificate_route(self, files):
        code = run(
            [
                "rayleigh",
                "check",
                files["k4"],
                "--model",
                "independent",
                "--strategy",
                "cert",
                "--pair",
                "1,6",
                "--certificate",
                files["cert"],
            ]
        )
        assert code == 0

    def test_cert_requires_pair(self, files, capsys):
        code = run(
            [
                "rayleigh",
                "check",
                files["k4"],
                "--strategy",
                "cert",
                "--certificate",
                files["cert"],
            ]
        )
        assert code == 3

    def test_model_synonyms(self, files):
        assert run(["rayleigh", "check", files["k4"], "--model", "indep",
                    "--strategy", "coeff", "--pair", "1,2"]) == 0

    def test_model_on_weight_file_rejected(self, files):
        assert run(["rayleigh", "check", files["pos"], "--model", "bases"]) == 3

    def test_potts_model_needs_q(self, files):
        assert run(["rayleigh", "check", files["k4"], "--model", "potts"]) == 3


class TestPottsBuild:
    def test_symbolic(self, files, capsys):
        code, report = run_json(files, ["potts", "build", files["u32"], "--symbolic"], capsys)
        assert code == 0
        terms = report["results"]["terms"]
        assert len(terms) == 8
        empty = next(t for t in terms if t["support"] == [])
        assert empty["coeff"] == {"min_exponent": 0, "coeffs": ["1"]}

    def test_evaluated(self, files, capsys):
        code, report = run_json(files, ["potts", "build", files["u32"], "--q", "1/2"], capsys)
        assert code == 0
        full = next(t for t in report["results"]["terms"] if len(t["support"]) == 3)
        assert full["coeff"] == "4"

    def test_q_and_symbolic_conflict(self, files):
        assert run(["potts", "build", files["u32"], "--q", "1/2", "--symbolic"]) == 3


class TestTwoSum:
    def test_bases_composition(self, files, capsys):
        code, report = run_json(
            files, ["twosum", files["tri"], files["tri2"], "--glue", "g"], capsys
        )
        assert code == 0
        terms = report["results"]["terms"]
        assert len(terms) == 4  # the four spanning trees of a square
        assert all(len(t["support"]) == 3 for t in terms)

    def test_potts_needs_valid_q(self, files):
        assert run(["twosum", files["tri"], files["tri2"], "--glue", "g",
                    "--model", "potts", "--q", "1"]) == 3

    def test_bad_glue(self, files):
        assert run(["twosum", files["tri"], files["tri2"], "--glue", "a1"]) == 3


class TestDelta:
    def test_matroid_bases_pass(self, files):
        assert run(["delta", "check", files["u32"]]) == 0

    def test_gap_support_fails(self, files, capsys):
        code, report = run_json(files, ["delta", "check", files["corr"]], capsys)
        assert code == 1
        assert report["results"]["convex"] is False


class TestSeq:
    def test_ladder_pass(self, files):
        assert run(["seq", "check", "--values", "1,3,3,1", "--m", "3"]) == 0

    def test_ladder_fail(self):
        assert run(["seq", "check", "--values", "1,1,4", "--conditions", "a2"]) == 1

    def test_a4_without_m_is_usage_error(self):
        assert run(["seq", "check", "--values", "1,2,1", "--conditions", "a4"]) == 3

    def test_unknown_condition(self):
        assert run(["seq", "check", "--values", "1,2,1", "--conditions", "a9"]) == 3

    def test_window_family_ladder(self):
        # the normalized comparison holds at the window edge but the
        # polynomial is not real-rooted, so the full ladder exits 1
        base = ["seq", "check", "--values", "1,12,60,80,60,12,1", "--m", "6"]
        assert run(base + ["--conditions", "a0,a2,a4"]) == 0
        assert run(base) == 1


class TestMason:
    def test_k4(self, files, capsys):
        code, report = run_json(files, ["mason", files["k4"]], capsys)
        assert code == 0
        res = report["results"]
        assert res["independent"] == [1, 6, 15, 16]
        assert res["conjectured_ok"] is True
        assert res["conditions"]["i5"] is False
        assert res["h_lym_nonincreasing"] is True


class TestProbe:
    def test_margin_nonnegative_is_inconclusive(self, files):
        code = run(["probe", "margin", files["u32"], "--pair", "1,2", "--samples", "5"])
        assert code == 2

    def test_qc_uniform_exact(self, files, capsys):
        code, report = run_json(files, ["probe", "qc", files["u32"]], capsys)
        assert code == 0
        assert report["results"]["exact"] is True
        assert report["results"]["passed"] == "1"

    def test_qc_bisection_inexact(self, files, capsys):
        code, report = run_json(
            files,
            ["probe", "qc", files["tri"], "--resolution", "3", "--budget", "16"],
            capsys,
        )
        assert code == 2
        assert report["results"]["exact"] is False


class TestCorpus:
    def test_single_item(self, files, capsys):
        code, report = run_json(files, ["corpus", "--only", "golden-invariant"], capsys)
        assert code == 0
        assert report["results"]["items"][0]["name"] == "golden-invariant-counts"

    def test_filter_without_match(self, files):
        assert run(["corpus", "--only", "zz-no-such-item"]) == 3

    def test_extra_weight_file(self, files, capsys):
        code, report = run_json(
            files, ["corpus", files["pos"], "--only", "support-necessary"], capsys
        )
        assert code == 0


class TestUsageErrors:
    def test_missing_file(self, files):
        assert run(["matroid", "info", str(files["dir"] / "nope.graph")]) == 3

    def test_unknown_subcommand(self, capsys):
        assert run(["frobnicate"]) == 3

    def test_no_args(self, capsys):
        assert run([]) == 3

    def test_corrupted_weight_file(self, files, tmp_path):
        bad = tmp_path / "bad.weights"
        bad.write_text("elements: a\na : 1.5\n")
        assert run(["rayleigh", "check", str(bad)]) == 3


class TestDeterminism:
    def test_same_invocation_same_report(self, files, capsys):
        _, first = run_json(files, ["rayleigh", "check", files["u32"],
                                    "--strategy", "sample", "--samples", "20"], capsys)
        _, second = run_json(files, ["rayleigh", "check", files["u32"],
                                     "--strategy", "sample", "--samples", "20"], capsys)
        for rep in (first, second):
            rep.pop("elapsed_seconds")
        assert first == second

    def test_seed_changes_samples(self, files, capsys):
        _, a = run_json(files, ["rayleigh", "check", files["corr3"], "--strategy",
                                "sample", "--pair", "x,y", "--seed", "1"], capsys)
        _, b = run_json(files, ["rayleigh", "check", files["corr3"], "--strategy",
                                "sample", "--pair", "x,y", "--seed", "2"], capsys)
        wa = a["results"]["verdicts"]["x,y"]["witness"]
        wb = b["results"]["verdicts"]["x,y"]["witness"]
        assert wa != wb

    def test_threads_do_not_change_verdicts(self, files, capsys):
        _, seq = run_json(files, ["rayleigh", "check", files["k4"], "--strategy",
                                  "sample", "--samples", "10"], capsys)
        _, par = run_json(files, ["rayleigh", "check", files["k4"], "--strategy",
                                  "sample", "--samples", "10", "--threads", "4"], capsys)
        assert seq["results"]["verdicts"] == par["results"]["verdicts"]
