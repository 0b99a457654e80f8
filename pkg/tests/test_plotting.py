from schemekit import corpus
from schemekit.plotting import render_figures


def test_render_figures(tmp_path):
    paths = render_figures(corpus.get("cyc(13,4)"), tmp_path / "out", k=3)
    assert [p.name for p in paths] == ["color_matrix.png", "valencies.png", "saturation_graph.png"]
    for p in paths:
        assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_render_without_k(tmp_path):
    paths = render_figures(corpus.get("Q8"), tmp_path)
    assert {p.name for p in paths} == {"color_matrix.png", "valencies.png"}
