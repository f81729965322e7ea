"""
Tests for render.py - DOT, SVG and PDF output.
"""

import tempfile
from pathlib import Path

import pytest

from farey.carks import Cark, M, P
from farey.congruence import CongruenceSpec, congruence_graph
from farey.graphs import from_permutation_pair, fold_subgroup_graph
from farey.render import (
    CarkRenderer,
    RenderStyle,
    cark_pdf,
    cark_svg,
    to_dot,
)
from farey.words import parse_word


MODULAR_ARC_DOT = (
    "// farey modular graph, schemaVersion 1\n"
    "digraph modular {\n"
    '  node [label=""];\n'
    "  v0 [shape=circle, width=0.18];\n"
    "  v1 [shape=point, width=0.12];\n"
    '  v0 -> v1 [label="0", penwidth=2];\n'
    "}\n"
)

GOLDEN_DIR = Path(__file__).parent / "golden"

HYPERBOLIC_CORE_DOT = (GOLDEN_DIR / "lslls_core.dot").read_text()


class TestToDot:
    """Tests for to_dot()."""

    def test_modular_arc(self):
        assert to_dot(from_permutation_pair([0], [0])) == MODULAR_ARC_DOT

    def test_core_with_stubs(self):
        g = fold_subgroup_graph([parse_word("LSLLS")])
        assert to_dot(g) == HYPERBOLIC_CORE_DOT

    def test_gamma0_2(self):
        g = congruence_graph(CongruenceSpec("Gamma0", 2))
        assert to_dot(g) == (GOLDEN_DIR / "gamma0_2.dot").read_text()

    def test_deterministic(self):
        g = from_permutation_pair([1, 0, 2], [1, 2, 0])
        assert to_dot(g) == to_dot(g)


class TestRenderStyle:
    """Tests for RenderStyle."""

    def test_defaults(self):
        style = RenderStyle()
        assert style.size == 320.0
        assert style.show_label is True

    def test_spine_radius_leaves_room(self):
        style = RenderStyle()
        assert style.spine_radius + style.branch_length + style.margin == style.size / 2

    def test_spine_radius_floor(self):
        style = RenderStyle(size=20.0)
        assert style.spine_radius == style.branch_length + style.vertex_radius


class TestCarkSvg:
    """Tests for cark_svg()."""

    @pytest.mark.parametrize("spine", [(P, M), (P, P, M), (P, M, P, M)])
    def test_one_circle_per_vertex(self, spine):
        c = Cark(spine)
        svg = cark_svg(c)
        assert svg.count("<circle") == 2 * len(c)

    def test_branches_dashed(self):
        assert "stroke-dasharray" in cark_svg(Cark((P, P, M)))

    def test_label(self):
        assert "PM^2" in cark_svg(Cark((P, M, P, M)))

    def test_no_label(self):
        svg = cark_svg(Cark((P, P, M)), RenderStyle(show_label=False))
        assert "PPM" not in svg

    def test_svg_version(self):
        assert 'version="1.0"' in cark_svg(Cark((P, M)))

    def test_deterministic(self):
        c = Cark((P, P, M, M))
        assert cark_svg(c) == cark_svg(c)

    def test_size(self):
        d = CarkRenderer(RenderStyle(size=200.0)).drawing(Cark((P, M)))
        assert (d.width, d.height) == (200.0, 200.0)


class TestCarkPdf:
    """Tests for cark_pdf()."""

    def test_writes_pdf(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "cark.pdf"
            result = cark_pdf(Cark((P, M)), out)
            assert result == out
            assert out.read_bytes().startswith(b"%PDF")

    def test_pdf_deterministic(self, tmp_path):
        renderer = CarkRenderer()
        a = renderer.to_pdf(Cark((P, P, M)), tmp_path / "a.pdf")
        b = renderer.to_pdf(Cark((P, P, M)), tmp_path / "b.pdf")
        assert a.read_bytes() == b.read_bytes()
