import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jkss import figures
from jkss.diagram import (
    CrossingSign,
    DiagramEdge,
    DiagramError,
    DiagramSyntaxError,
    DiagramValidationError,
    TwistedDiagram,
    braid_closure,
    components,
    connected_sum,
    is_virtual,
    mirror,
    parse_diagram,
    random_diagram,
    render_diagram,
    validate,
    writhe,
)

KINK = "crossing 1 +\nedge 1.0 1.0\nedge 1.1 1.1\n"

diagram_args = st.tuples(st.integers(1, 8), st.integers(0, 6), st.integers(0, 2**32 - 1))


def kink(bars=0):
    return TwistedDiagram(
        {1: CrossingSign.POSITIVE}, [DiagramEdge(1, 0, 1, 0, bars), DiagramEdge(1, 1, 1, 1)]
    )


class TestValidate:
    def test_empty_is_valid(self):
        assert validate(TwistedDiagram()) == []

    def test_dropped_edge_names_both_ends(self):
        d = figures.load("fig5")
        gone = d.edges[0]
        problems = validate(d.replace(edges=d.edges[1:]))
        assert sorted(problems) == sorted([
            f"port {gone.source}.out{gone.source_index} has no edge",
            f"port {gone.target}.in{gone.target_index} has no edge",
        ])

    def test_doubled_port(self):
        d = kink().replace(edges=[DiagramEdge(1, 0, 1, 0), DiagramEdge(1, 1, 1, 0)])
        assert "port 1.in0 has 2 edges" in validate(d)

    @pytest.mark.parametrize("name", sorted(figures.NAMES))
    def test_bundled_figures_valid(self, name):
        assert validate(figures.load(name)) == []

    def test_edge_count(self):
        d = figures.load("fig5")
        assert len(d.edges) == 2 * len(d)


class TestBasics:
    def test_writhe(self):
        assert writhe(TwistedDiagram()) == 0
        d = braid_closure([1, 2, -1])
        assert writhe(d) == 1

    def test_is_virtual_parity(self):
        assert is_virtual(kink())
        assert not is_virtual(kink(1))
        assert is_virtual(kink(2))
        assert not is_virtual(kink(2), strict=True)

    def test_mirror_of_kink(self):
        d = TwistedDiagram({1: 1}, [DiagramEdge(1, 0, 1, 1), DiagramEdge(1, 1, 1, 0, 1)])
        m = mirror(d)
        assert set(m.edges) == {DiagramEdge(1, 1, 1, 0), DiagramEdge(1, 0, 1, 1, 1)}
        assert m.crossings == d.crossings

    @settings(max_examples=40, deadline=None)
    @given(diagram_args)
    def test_mirror_involution_keeps_writhe(self, args):
        d = random_diagram(*args)
        assert mirror(mirror(d)) == d
        assert writhe(mirror(d)) == writhe(d)

    def test_components(self):
        assert len(components(kink())) == 1
        assert len(components(figures.load("hopf"))) == 2
        assert len(components(figures.load("trefoil"))) == 1

    def test_braid_closure_free_strands(self):
        d = braid_closure([], strands=3)
        assert len(d) == 0 and d.free_loops == (0, 0, 0)
        with pytest.raises(ValueError):
            braid_closure([0])


class TestConnectedSum:
    def test_two_figure5_copies(self):
        d = figures.load("fig5")
        s = connected_sum(d, d.edges[0], d, d.edges[0].ref)
        assert len(s) == 4 and validate(s) == []
        assert len(components(s)) == len(components(d)) * 2 - 1

    def test_needs_edges(self):
        empty = TwistedDiagram(free_loops=[0])
        with pytest.raises(DiagramError):
            connected_sum(empty, (1, 0), empty, (1, 0))

    def test_rejects_barred_edge(self):
        with pytest.raises(DiagramError):
            connected_sum(kink(1), (1, 0), kink(), (1, 0))


class TestText:
    def test_kink(self):
        d = parse_diagram(KINK)
        assert d == kink()
        assert render_diagram(d) == KINK

    def test_comments_and_blank_lines(self):
        d = parse_diagram("# a kink\n\n" + KINK + "  # trailing\n")
        assert d == kink()

    def test_bars_and_loops(self):
        text = "crossing 1 -\nedge 1.0 1.0 bars=3\nedge 1.1 1.1\nloop bars=1\nloop\n"
        d = parse_diagram(text)
        assert d.sign(1) is CrossingSign.NEGATIVE
        assert d.out_edge(1, 0).bars == 3
        assert d.free_loops == (0, 1)

    def test_undeclared_crossing_is_semantic(self):
        with pytest.raises(DiagramValidationError) as info:
            parse_diagram("crossing 1 +\nedge 1.0 2.0\nedge 1.1 1.1\n")
        assert any("undeclared crossing 2" in v for v in info.value.violations)

    @pytest.mark.parametrize(
        "text, line",
        [
            ("crossing 1 *\n", 1),
            ("crossing 1 +\nedge 1.0\n", 2),
            ("crossing 1 +\nedge 1.x 1.0\n", 2),
            ("crossing 1 +\nedge 1.0 1.0 bars=-1\nedge 1.1 1.1\n", 2),
            ("crossing 1 +\nedge 1.0 1.0\nedge 1.1 1.1\nvertex 3\n", 4),
        ],
    )
    def test_syntax_errors_carry_line(self, text, line):
        with pytest.raises(DiagramSyntaxError) as info:
            parse_diagram(text)
        assert info.value.line == line

    def test_figure7_encoding(self):
        d = figures.load("fig7")
        assert len(d) == 2 and sum(e.bars for e in d.edges) == 2

    @settings(max_examples=60, deadline=None)
    @given(diagram_args)
    def test_round_trip(self, args):
        d = random_diagram(*args)
        assert parse_diagram(render_diagram(d)) == d


class TestRandom:
    def test_empty(self):
        assert random_diagram(0, 0, seed=1) == TwistedDiagram()

    def test_deterministic(self):
        assert random_diagram(7, 4, seed=99) == random_diagram(7, 4, seed=99)

    def test_bars_need_an_edge(self):
        with pytest.raises(ValueError):
            random_diagram(0, 2, seed=1)

    def test_thousand_samples_valid(self):
        for seed in range(1000):
            d = random_diagram(seed % 9, seed % 7 if seed % 9 else 0, seed)
            assert validate(d) == []
            assert sum(e.bars for e in d.edges) == (seed % 7 if seed % 9 else 0)
