"""Node addressing, span coordinates and graph construction."""

import itertools

import pytest

from hammocknet import (
    Edge,
    GridNode,
    HammockSpec,
    LatticeError,
    Terminal,
    UnsupportedNodeError,
    as_node,
    build_edge_list,
    edge_list_csv,
    flat_index,
    node_code,
    node_from_flat,
    parse_node,
    span_coords,
)

from _util import interior_pairs


class TestHammockSpec:
    def test_validation(self):
        with pytest.raises(LatticeError):
            HammockSpec(0, 3)
        with pytest.raises(LatticeError):
            HammockSpec(3, 0)
        with pytest.raises(LatticeError):
            HammockSpec(2, 2, r=-1.0)
        with pytest.raises(LatticeError):
            HammockSpec(2, 2, s=0.0)
        with pytest.raises(LatticeError):
            HammockSpec(2, 2, r=float("inf"))

    def test_ratio_and_counts(self):
        spec = HammockSpec(3, 4, r=2.0, s=0.5)
        assert spec.ratio == 4.0
        assert spec.interior_count == 12
        assert spec.node_count == 14

    def test_json_round_trip(self):
        spec = HammockSpec(9, 17, r=2.5, s=0.75)
        assert HammockSpec.from_json(spec.to_json()) == spec
        assert spec.as_dict() == {"M": 9, "N": 17, "r": 2.5, "s": 0.75}


class TestNodes:
    def test_parse(self):
        assert parse_node("3,2") == GridNode(3, 2)
        assert parse_node(" O ") is Terminal.BOTTOM
        assert parse_node("op") is Terminal.TOP
        with pytest.raises(LatticeError):
            parse_node("3;2")
        with pytest.raises(LatticeError):
            parse_node("a,b")

    def test_as_node_and_code(self):
        assert as_node((4, 1)) == GridNode(4, 1)
        assert node_code((4, 1)) == "4,1"
        assert node_code(Terminal.BOTTOM) == "O"
        assert node_code("OP") == "OP"


class TestSpanCoords:
    def test_reference_frame(self):
        # 9x17 with nodes (3,3) and (11,6): spans 6/10, offsets 4/4
        spec = HammockSpec(9, 17)
        coords = span_coords(spec, (3, 3), (11, 6))
        assert (coords.span_left, coords.span_right) == (6, 10)
        assert (coords.p_offset, coords.q_offset) == (4, 4)
        assert (coords.y_in, coords.y_out) == (3, 6)
        assert not coords.swapped
        assert (coords.x_in, coords.x_out) == (3, 11)

    def test_same_node(self):
        spec = HammockSpec(2, 3)
        coords = span_coords(spec, (1, 1), (1, 1))
        assert coords.p_offset == coords.q_offset == 0
        assert coords.x_in == coords.x_out == 1
        assert coords.y_in == coords.y_out == 1

    def test_swap_convention(self):
        spec = HammockSpec(3, 4)
        coords = span_coords(spec, (4, 2), (1, 1))
        assert coords.swapped
        assert (coords.x_in, coords.y_in) == (1, 1)
        assert (coords.x_out, coords.y_out) == (4, 2)
        # same column, later row first: still normalised
        coords = span_coords(spec, (2, 3), (2, 1))
        assert coords.swapped and coords.y_in == 1

    def test_round_trip_exhaustive(self):
        for rows, cols in itertools.product(range(1, 9), range(1, 9)):
            spec = HammockSpec(rows, cols)
            for a, b in interior_pairs(spec, distinct=False):
                coords = span_coords(spec, a, b)
                assert coords.cols == cols
                assert -coords.span_left <= -coords.p_offset
                assert -coords.p_offset <= coords.q_offset <= coords.span_right
                lo, hi = (b, a) if coords.swapped else (a, b)
                assert (coords.x_in, coords.y_in) == (lo.x, lo.y)
                assert (coords.x_out, coords.y_out) == (hi.x, hi.y)

    def test_out_of_bounds_names_coordinate(self):
        spec = HammockSpec(3, 4)
        with pytest.raises(LatticeError, match="x=5"):
            span_coords(spec, (5, 1), (1, 1))
        with pytest.raises(LatticeError, match="y=9"):
            span_coords(spec, (1, 9), (1, 1))


class TestFlatIndex:
    def test_examples(self):
        spec = HammockSpec(3, 4)
        assert flat_index(spec, (1, 1)) == 1
        assert flat_index(spec, (4, 3)) == 12
        assert flat_index(spec, (2, 2)) == 6

    def test_bijection(self):
        for rows, cols in itertools.product(range(1, 9), range(1, 9)):
            spec = HammockSpec(rows, cols)
            seen = {flat_index(spec, node) for node in spec.interior_nodes()}
            assert seen == set(range(1, rows * cols + 1))
            for index in range(1, rows * cols + 1):
                assert flat_index(spec, node_from_flat(spec, index)) == index

    def test_terminal_rejected(self):
        spec = HammockSpec(2, 2)
        with pytest.raises(UnsupportedNodeError):
            flat_index(spec, Terminal.BOTTOM)


def _degree(spec, node):
    return sum(1 for e in build_edge_list(spec) if node in (e.a, e.b))


class TestEdgeList:
    def test_smallest(self):
        spec = HammockSpec(1, 1, s=2.0)
        edges = build_edge_list(spec)
        assert len(edges) == 2
        assert all(e.ohms == 2.0 for e in edges)
        assert {e.a for e in edges} | {e.b for e in edges} == {
            GridNode(1, 1), Terminal.BOTTOM, Terminal.TOP}

    @pytest.mark.parametrize("rows,cols,count", [(3, 4, 25), (9, 8, 143)])
    def test_counting(self, rows, cols, count):
        spec = HammockSpec(rows, cols)
        edges = build_edge_list(spec)
        assert len(edges) == count
        assert len(edges) == rows * (cols - 1) + cols * (rows - 1) + 2 * cols
        assert len({frozenset((e.a, e.b)) for e in edges}) == len(edges)

    def test_degrees_and_connectivity(self):
        for rows, cols in [(1, 1), (1, 5), (4, 1), (3, 4), (5, 5)]:
            spec = HammockSpec(rows, cols)
            edges = build_edge_list(spec)
            assert _degree(spec, Terminal.BOTTOM) == cols
            assert _degree(spec, Terminal.TOP) == cols
            for node in spec.interior_nodes():
                expected = ((node.x > 1) + (node.x < cols) + (node.y > 1)
                            + (node.y < rows) + (node.y == 1) + (node.y == rows))
                assert _degree(spec, node) == expected
            # BFS connectivity
            adjacency = {}
            for e in edges:
                adjacency.setdefault(e.a, set()).add(e.b)
                adjacency.setdefault(e.b, set()).add(e.a)
            seen = {Terminal.BOTTOM}
            frontier = [Terminal.BOTTOM]
            while frontier:
                seen.update(nxt := set().union(*(adjacency[n] for n in frontier)) - seen)
                frontier = list(nxt)
            assert len(seen) == spec.node_count

    def test_resistances(self):
        spec = HammockSpec(2, 3, r=7.0, s=0.25)
        for e in build_edge_list(spec):
            if isinstance(e.a, Terminal) or isinstance(e.b, Terminal):
                assert e.ohms == 0.25
            elif e.a.y == e.b.y:
                assert e.ohms == 7.0
            else:
                assert e.ohms == 0.25

    def test_csv_export(self):
        spec = HammockSpec(1, 2, s=2.0)
        text = edge_list_csv(spec)
        lines = text.strip().splitlines()
        assert lines[0] == "node_a,node_b,resistance"
        assert len(lines) == 1 + len(build_edge_list(spec))
        assert any(line.startswith("O,") for line in lines[1:])
        assert any(",OP," in line for line in lines[1:])

    def test_edge_type(self):
        edge = build_edge_list(HammockSpec(1, 1))[0]
        assert isinstance(edge, Edge)
