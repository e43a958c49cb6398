import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperview.expand import CLIQUE, clique_expansion, extra_node_expansion
from hyperview.hypergraph import build_hypergraph
from hyperview.layout import LayoutParams, LayoutState, force_atlas2, transfer_coordinates
from hyperview.render import (
    EDGE_GREY,
    RasterImage,
    RenderStyle,
    canvas_coordinates,
    clarity,
    clarity_gain,
    disc_offsets,
    draw_disc,
    draw_line,
    entropy,
    line_pixels,
    render_view,
    thick_line_pixels,
)


def _incremental_line(x0, y0, x1, y1):
    """Scalar Bresenham with an integer error term; ties round away from the start."""
    if (x1, y1) < (x0, y0):
        x0, y0, x1, y1 = x1, y1, x0, y0
    dx, dy = abs(x1 - x0), abs(y1 - y0)
    sx = 1 if x1 >= x0 else -1
    sy = 1 if y1 >= y0 else -1
    steep = dy > dx
    major, minor = (dy, dx) if steep else (dx, dy)
    out = []
    err = major  # 2 * minor * i + major - 2 * major * offset, kept below 2 * major
    offset = 0
    for i in range(major + 1):
        out.append((x0 + sx * offset, y0 + sy * i) if steep else (x0 + sx * i, y0 + sy * offset))
        err += 2 * minor
        if err >= 2 * major:
            err -= 2 * major
            offset += 1
    return out


coords = st.integers(-40, 40)


@settings(max_examples=300, deadline=None)
@given(coords, coords, coords, coords)
def test_line_matches_incremental_oracle(x0, y0, x1, y1):
    xs, ys = line_pixels(x0, y0, x1, y1)
    got = list(zip(xs.tolist(), ys.tolist()))
    assert got == _incremental_line(x0, y0, x1, y1)
    assert got[0] in ((x0, y0), (x1, y1)) and {(x0, y0), (x1, y1)} <= set(got)
    assert len(got) == max(abs(x1 - x0), abs(y1 - y0)) + 1
    # 8-connected and symmetric in its endpoints
    for (ax, ay), (bx, by) in zip(got, got[1:]):
        assert max(abs(ax - bx), abs(ay - by)) == 1
    rx, ry = line_pixels(x1, y1, x0, y0)
    assert set(zip(rx.tolist(), ry.tolist())) == set(got)


def test_line_examples():
    assert list(zip(*line_pixels(0, 0, 4, 2))) == [(0, 0), (1, 1), (2, 1), (3, 2), (4, 2)]
    assert list(zip(*line_pixels(2, 2, 2, 2))) == [(2, 2)]
    assert list(zip(*line_pixels(0, 3, 0, 0))) == [(0, 0), (0, 1), (0, 2), (0, 3)]


def test_thick_line_stacks_copies():
    xs, ys = thick_line_pixels(0, 0, 10, 0, 3)
    assert sorted(set(ys.tolist())) == [-1, 0, 1]
    xs, ys = thick_line_pixels(0, 0, 0, 10, 2)
    assert sorted(set(xs.tolist())) == [0, 1]
    assert len(thick_line_pixels(0, 0, 5, 5, 1)[0]) == 6


@pytest.mark.parametrize("r, count", [(0, 1), (1, 5), (2, 13), (3, 29), (6, 113)])
def test_disc_pixel_counts(r, count):
    dx, dy = disc_offsets(r)
    # oracle: count lattice points by scanning rows
    assert sum(2 * math.isqrt(r * r - y * y) + 1 for y in range(-r, r + 1)) == count
    assert len(dx) == count
    assert np.all(dx * dx + dy * dy <= r * r)


def test_drawing_clips_to_canvas():
    img = RasterImage.blank(10, 10)
    draw_line(img, (-5, 5), (20, 5), (255, 0, 0))
    draw_disc(img, (0, 0), 3, (0, 255, 0))
    assert np.count_nonzero(img.pixels[5, :, 0] == 255) == 10
    assert tuple(img.pixels[0, 0]) == (0, 255, 0)


# -- metrics -----------------------------------------------------------------------


def test_entropy_values():
    assert entropy(0.5) == 1.0
    assert entropy(0.0) == 0.0 and entropy(1.0) == 0.0
    assert entropy(0.25) == pytest.approx(0.8112781244591328)
    with pytest.raises(ValueError):
        entropy(1.5)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 1.0))
def test_entropy_symmetric_and_bounded(c):
    assert entropy(c) == pytest.approx(entropy(1.0 - c), abs=1e-12)
    assert 0.0 <= entropy(c) <= 1.0


def test_clarity_blank_and_drawn():
    img = RasterImage.blank(20, 10)
    assert clarity(img) == 1.0
    draw_disc(img, (5, 5), 1, (1, 0, 0))  # barely lit still counts as drawn
    assert clarity(img) == 1 - 5 / 200
    full = RasterImage(np.full((4, 4, 3), 9, dtype=np.uint8))
    assert clarity(full) == 0.0


def test_drawing_never_increases_clarity():
    rng = np.random.default_rng(0)
    img = RasterImage.blank(64, 64)
    last = clarity(img)
    for _ in range(40):
        p, q = rng.integers(-10, 74, size=(2, 2))
        draw_line(img, p, q, (200, 10, 10), int(rng.integers(1, 4)))
        now = clarity(img)
        assert now <= last
        last = now


def test_clarity_gain():
    a, b = RasterImage.blank(10, 10), RasterImage.blank(10, 10)
    draw_line(b, (0, 0), (9, 0), (5, 5, 5))
    assert clarity_gain(a, b) == pytest.approx(1.0 / 0.9)
    full = RasterImage(np.full((10, 10, 3), 3, dtype=np.uint8))
    assert clarity_gain(a, full) is None
    with pytest.raises(ValueError):
        clarity_gain(RasterImage.blank(5, 5), a)


# -- views -----------------------------------------------------------------------


def test_canvas_mapping_keeps_aspect_and_flips_y():
    style = RenderStyle(width=101, height=101, margin=0.0)
    pix = canvas_coordinates(np.array([[0.0, 0.0], [2.0, 1.0]]), style)
    assert pix.tolist() == [[0, 75], [100, 25]]
    with pytest.warns(UserWarning, match="coincide"):
        pix = canvas_coordinates(np.zeros((3, 2)), style)
    assert pix.tolist() == [[50, 50]] * 3


def test_style_validation_and_stroke():
    with pytest.raises(ValueError):
        RenderStyle(palette=((0, 0, 0),))
    with pytest.raises(ValueError):
        RenderStyle(width=0)
    s = RenderStyle()
    assert [s.stroke(w) for w in (1, 2, 3, 7, 100)] == [1, 1, 2, 3, 4]


@pytest.fixture
def small_views():
    h = build_hypergraph(
        [("p", {"a", "b", "c", "d"}), ("q", {"d", "e", "f"}), ("r", {"f", "g"}), ("s", {"a", "b"})], "o"
    )
    c, e = clique_expansion(h), extra_node_expansion(h)
    lay = force_atlas2(c, LayoutParams(iterations=100))
    return c, e, lay, transfer_coordinates(lay, c, e)


def test_render_is_deterministic_and_round_trips(small_views):
    c, e, lay, moved = small_views
    style = RenderStyle(width=120, height=90)
    a, b = render_view(e, moved, style), render_view(e, moved, style)
    assert a.to_ppm() == b.to_ppm()
    back = RasterImage.from_ppm(a.to_ppm())
    assert np.array_equal(back.pixels, a.pixels)
    assert a.to_ppm().startswith(b"P6\n120 90\n255\n")
    with pytest.raises(ValueError):
        RasterImage.from_ppm(b"P3\n1 1\n255\n000")


def test_render_colours(small_views):
    c, _, lay, _ = small_views
    style = RenderStyle(width=200, height=200, node_radius=2)
    img = render_view(c, lay, style)
    colours = {tuple(p) for p in img.pixels.reshape(-1, 3).tolist()}
    clusters = set(lay.clusters.tolist())
    assert {style.palette[k % len(style.palette)] for k in clusters} <= colours
    if len(clusters) > 1:
        assert EDGE_GREY in colours
    assert colours <= {(0, 0, 0), EDGE_GREY} | set(style.palette)


def test_real_nodes_drawn_over_hubs(small_views):
    _, e, _, moved = small_views
    style = RenderStyle(width=150, height=150, node_radius=4, extra_node_radius=4)
    img = render_view(e, moved, style)
    pix = canvas_coordinates(moved.aligned(e.labels)[0], style)
    for i in e.real_indices():
        x, y = pix[i]
        assert tuple(img.pixels[y, x]) == style.palette[moved.clusters[i] % len(style.palette)]


def test_png_matches_ppm(tmp_path, small_views):
    pil = pytest.importorskip("PIL.Image")
    c, _, lay, _ = small_views
    img = render_view(c, lay, RenderStyle(width=50, height=40))
    img.save_png(tmp_path / "x.png")
    assert np.array_equal(np.asarray(pil.open(tmp_path / "x.png").convert("RGB")), img.pixels)


def test_layout_must_cover_view(small_views):
    c, e, lay, _ = small_views
    with pytest.raises(KeyError):
        render_view(e, lay)  # hubs have no position in the clique layout
    empty = LayoutState((), np.zeros((0, 2)), [], CLIQUE)
    h = build_hypergraph([])
    assert clarity(render_view(clique_expansion(h), empty, RenderStyle(width=8, height=8))) == 1.0
