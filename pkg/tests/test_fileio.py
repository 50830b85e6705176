from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rayleigh_forge.fileio import (
    InputFormatError,
    coeff_payload,
    detect_format,
    format_weight_file,
    laurent_payload,
    parse_bases_file,
    parse_certificate_file,
    parse_graph_file,
    parse_point,
    parse_weight_file,
    poly_payload,
)
from rayleigh_forge.polynomials import GroundSet, SubsetPoly, rayleigh_diff
from rayleigh_forge.scalars import LaurentQ

F = Fraction

WEIGHTS = """\
# weight file
elements: a,b,c

- : 1
a : 1/2
a,b,c : 3
"""

GRAPH = """\
graph 3
0 1 e1
1 2 e2
2 0 e3
"""

BASES = """\
elements: 1,2,3
1,2
2,3
"""

CERT = "1 : 2,5 | 3,4\n1/2 : 1 | 2\n"


class TestWeightFiles:
    def test_parse(self):
        z = parse_weight_file(WEIGHTS)
        assert z.ground.labels == ("a", "b", "c")
        assert z.coeff(0) == 1
        assert z.coeff(z.ground.bit("a")) == F(1, 2)
        assert z.coeff(z.ground.full) == 3

    def test_roundtrip(self):
        z = parse_weight_file(WEIGHTS)
        assert parse_weight_file(format_weight_file(z)) == z

    @pytest.mark.parametrize(
        "bad",
        [
            "",
            "a,b\n- : 1",  # missing header keyword
            "elements: a,a\n- : 1",  # duplicate label
            "elements: a\n- : 1\n- : 2",  # subset listed twice
            "elements: a\nb : 1",  # unknown label
            "elements: a\na,a : 1",  # repeated label in subset
            "elements: a\na : 1 : 2",  # too many colons
            "elements: a\na : 1.5",  # not a rational
        ],
    )
    def test_rejects(self, bad):
        with pytest.raises(InputFormatError):
            parse_weight_file(bad)

    @given(
        st.dictionaries(
            st.integers(0, 15),
            st.fractions(),
            min_size=1,
            max_size=10,
        )
    )
    @settings(max_examples=50, deadline=None)
    def test_roundtrip_random(self, terms):
        g = GroundSet(("1", "2", "3", "4"))
        z = SubsetPoly(g, {w: F(c) for w, c in terms.items()})
        assert parse_weight_file(format_weight_file(z)) == z


class TestGraphFiles:
    def test_parse(self):
        g = parse_graph_file(GRAPH)
        assert g.n == 3
        assert g.edges == ((0, 1, "e1"), (1, 2, "e2"), (2, 0, "e3"))

    @pytest.mark.parametrize(
        "bad",
        [
            "",
            "graph x\n0 1 e",
            "graph 2\n0 1",  # missing label
            "graph 2\n0 a e",  # bad vertex
            "graph 2\n0 0 e",  # self-loop rejected by Graph
            "graph 2\n0 2 e",  # vertex out of range
        ],
    )
    def test_rejects(self, bad):
        with pytest.raises(InputFormatError):
            parse_graph_file(bad)


class TestBasesFiles:
    def test_parse(self):
        system = parse_bases_file(BASES)
        assert system.ground.labels == ("1", "2", "3")
        assert system.members == (3, 6)

    def test_rejects_empty_list(self):
        with pytest.raises(InputFormatError):
            parse_bases_file("elements: 1,2\n")


class TestCertificateFiles:
    def test_parse(self):
        cert = parse_certificate_file(CERT)
        assert len(cert.terms) == 2
        lam, a, b = cert.terms[0]
        assert lam == 1 and a == frozenset(("2", "5")) and b == frozenset(("3", "4"))

    @pytest.mark.parametrize(
        "bad",
        [
            "",
            "1 : 2,5",  # missing the | separator
            "x : 1 | 2",  # bad multiplier
            "-1 : 1 | 2",  # nonpositive multiplier
            "1 : 2 | 2",  # zero square
        ],
    )
    def test_rejects(self, bad):
        with pytest.raises(InputFormatError):
            parse_certificate_file(bad)


class TestDetect:
    def test_each_format(self):
        assert detect_format(GRAPH) == "graph"
        assert detect_format(WEIGHTS) == "weights"
        assert detect_format(BASES) == "bases"

    def test_colon_heuristic(self):
        # a bases file has no colons after the header; a weight file does
        assert detect_format("elements: a\na\n") == "bases"
        assert detect_format("elements: a\na : 2\n") == "weights"

    def test_unknown(self):
        with pytest.raises(InputFormatError):
            detect_format("whatever\n")
        with pytest.raises(InputFormatError):
            detect_format("# only comments\n")


class TestPayloads:
    def test_coeff_payload(self):
        assert coeff_payload(F(3, 2)) == "3/2"
        assert coeff_payload(LaurentQ(-1, (F(1), F(2)))) == {
            "min_exponent": -1,
            "coeffs": ["1", "2"],
        }
        with pytest.raises(TypeError):
            coeff_payload(1.5)

    def test_laurent_payload_normalized(self):
        assert laurent_payload(LaurentQ(0, (F(0), F(1)))) == {
            "min_exponent": 1,
            "coeffs": ["1"],
        }

    def test_poly_payload_subset(self):
        g = GroundSet(("a", "b"))
        z = SubsetPoly(g, {0: F(1), 3: F(2)})
        payload = poly_payload(z)
        assert payload == [
            {"support": [], "squared": [], "coeff": "1"},
            {"support": ["a", "b"], "squared": [], "coeff": "2"},
        ]

    def test_poly_payload_quad(self):
        g = GroundSet(("a", "b", "c"))
        z = SubsetPoly(g, {1: F(1), 2: F(1), 4: F(1)})
        quad = rayleigh_diff(z, "a", "b")
        payload = poly_payload(quad)
        assert all(set(entry) == {"support", "squared", "coeff"} for entry in payload)


class TestPoints:
    def test_parse_point(self):
        assert parse_point("a=1,b=3/2") == {"a": F(1), "b": F(3, 2)}

    @pytest.mark.parametrize("bad", ["a", "a=1,a=2", "=1", "a=x"])
    def test_rejects(self, bad):
        with pytest.raises(InputFormatError):
            parse_point(bad)
