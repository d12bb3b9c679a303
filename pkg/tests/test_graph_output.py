"""Tests for the edge-list output format."""

import io
import math

import pytest

from graph.errors import PointSetParseError
from services.delaunay_service import delaunay_triangulate
from services.graph_output_service import GraphOutput, load_graph_output
from services.solver_service import GraphAlgorithm, SolverConfig, greedy_mstme


def test_tree_output_reloads_identically(plus_points):
    output = GraphOutput.from_tree(greedy_mstme(plus_points, SolverConfig(lam=1.0)))
    buffer = io.StringIO()
    output.write(buffer)

    lines = buffer.getvalue().splitlines()
    assert lines[0] == "# algorithm greedy_mstme"
    assert lines[2] == "# n 5"
    assert lines[6:] == ["0 1 1", "0 4 1.4142135623730951", "1 2 1", "1 3 1"]
    assert load_graph_output(io.StringIO(buffer.getvalue())) == output


def test_triangulation_output(unit_square):
    output = GraphOutput.from_triangulation(unit_square, delaunay_triangulate(unit_square), lam=0.5)
    assert output.algorithm is GraphAlgorithm.DELAUNAY
    assert output.n == 4
    assert len(output.edges) == 5
    assert output.total_weight == pytest.approx(4 + math.sqrt(2))
    # Two corners have degree 3 and two have degree 2.
    assert output.entropy == 1.0
    assert output.objective == pytest.approx(4 + math.sqrt(2) - 0.5)


def test_load_rejects_malformed_edges():
    text = "# algorithm kruskal\n# lambda 0\n# n 2\n# total_weight 1\n# entropy 0\n# objective 1\n0 1\n"
    with pytest.raises(PointSetParseError, match="line 7"):
        load_graph_output(io.StringIO(text))


def test_load_requires_header():
    with pytest.raises(PointSetParseError, match="missing header"):
        load_graph_output(io.StringIO("0 1 1.0\n"))
