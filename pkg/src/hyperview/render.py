"""Integer rasterisation of positioned views and the black-pixel metrics."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._validation import check_graph, check_unit_interval
from .expand import EXTRA, ExpandedGraph
from .layout.state import LayoutState

# tab20, with the light/dark pairs interleaved so neighbouring ids contrast
DEFAULT_PALETTE = (
    (31, 119, 180), (255, 127, 14), (44, 160, 44), (214, 39, 40), (148, 103, 189),
    (140, 86, 75), (227, 119, 194), (127, 127, 127), (188, 189, 34), (23, 190, 207),
    (174, 199, 232), (255, 187, 120), (152, 223, 138), (255, 152, 150), (197, 176, 213),
    (196, 156, 148), (247, 182, 210), (199, 199, 199), (219, 219, 141), (158, 218, 229),
)
EDGE_GREY = (96, 96, 96)


@dataclass(frozen=True)
class RenderStyle:
    width: int = 2000
    height: int = 2000
    node_radius: int = 6
    extra_node_radius: int = 3
    edge_width: int = 1
    max_edge_width: int = 4
    margin: float = 0.05
    palette: tuple = DEFAULT_PALETTE

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("canvas dimensions must be positive")
        if self.node_radius < 0 or self.extra_node_radius < 0:
            raise ValueError("node radii must be >= 0")
        if not 1 <= self.edge_width <= self.max_edge_width:
            raise ValueError("need 1 <= edge_width <= max_edge_width")
        if not 0 <= self.margin < 0.5:
            raise ValueError("margin must lie in [0, 0.5)")
        if not self.palette or any(tuple(c) == (0, 0, 0) for c in self.palette):
            raise ValueError("palette must be nonempty and contain no black")
        object.__setattr__(self, "palette", tuple(tuple(int(v) for v in c) for c in self.palette))

    def stroke(self, weight: float) -> int:
        """Line width for an edge of this weight: edge_width * floor(log2(1 + w)), clamped."""
        scaled = self.edge_width * int(math.floor(math.log2(1.0 + weight)))
        return min(self.max_edge_width, max(self.edge_width, scaled))


@dataclass(eq=False)
class RasterImage:
    pixels: np.ndarray  # (height, width, 3) uint8
    style: Optional[RenderStyle] = field(default=None, repr=False)

    @classmethod
    def blank(cls, width, height, style=None):
        if width < 1 or height < 1:
            raise ValueError("image dimensions must be positive")
        return cls(np.zeros((height, width, 3), dtype=np.uint8), style)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def to_ppm(self) -> bytes:
        header = f"P6\n{self.width} {self.height}\n255\n".encode("ascii")
        return header + np.ascontiguousarray(self.pixels, dtype=np.uint8).tobytes()

    def save_ppm(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_ppm())

    def save_png(self, path) -> None:
        from PIL import Image

        Image.fromarray(self.pixels, "RGB").save(path)

    @classmethod
    def from_ppm(cls, data: bytes) -> "RasterImage":
        parts = data.split(maxsplit=4)
        if len(parts) < 5 or parts[0] != b"P6" or parts[3] != b"255":
            raise ValueError("not an 8-bit binary PPM")
        w, h = int(parts[1]), int(parts[2])
        body = parts[4]
        if len(body) != w * h * 3:
            raise ValueError("PPM pixel data has the wrong length")
        return cls(np.frombuffer(body, dtype=np.uint8).reshape(h, w, 3).copy())


# -- primitives ----------------------------------------------------------------


def line_pixels(x0: int, y0: int, x1: int, y1: int) -> tuple[np.ndarray, np.ndarray]:
    """Bresenham pixels from (x0, y0) to (x1, y1), endpoints included.

    Uses the closed form of the midpoint rule: along the major axis step i,
    the minor offset is ``floor((2*i*minor + major) / (2*major))``.  Endpoints
    are put in a canonical order first so both directions give one line.
    """
    if (x1, y1) < (x0, y0):
        x0, y0, x1, y1 = x1, y1, x0, y0
    dx, dy = x1 - x0, y1 - y0
    adx, ady = abs(dx), abs(dy)
    sx = 1 if dx >= 0 else -1
    sy = 1 if dy >= 0 else -1
    if adx >= ady:
        i = np.arange(adx + 1, dtype=np.int64)
        off = (2 * i * ady + adx) // (2 * adx) if adx else np.zeros_like(i)
        return x0 + sx * i, y0 + sy * off
    i = np.arange(ady + 1, dtype=np.int64)
    off = (2 * i * adx + ady) // (2 * ady)
    return x0 + sx * off, y0 + sy * i


def thick_line_pixels(x0, y0, x1, y1, width=1):
    """Stack copies of the thin line across the minor axis."""
    xs, ys = line_pixels(x0, y0, x1, y1)
    if width <= 1:
        return xs, ys
    shifts = np.arange(-((width - 1) // 2), width // 2 + 1, dtype=np.int64)
    if abs(x1 - x0) >= abs(y1 - y0):
        return np.tile(xs, len(shifts)), (ys[None, :] + shifts[:, None]).ravel()
    return (xs[None, :] + shifts[:, None]).ravel(), np.tile(ys, len(shifts))


def disc_offsets(radius: int) -> tuple[np.ndarray, np.ndarray]:
    """Integer offsets with dx^2 + dy^2 <= r^2."""
    r = int(radius)
    d = np.arange(-r, r + 1, dtype=np.int64)
    dx, dy = np.meshgrid(d, d)
    keep = dx * dx + dy * dy <= r * r
    return dx[keep], dy[keep]


def _plot(img: np.ndarray, xs, ys, color) -> None:
    h, w = img.shape[:2]
    inside = (xs >= 0) & (xs < w) & (ys >= 0) & (ys < h)
    img[ys[inside], xs[inside]] = color


def draw_line(image: RasterImage, p0, p1, color, width=1) -> None:
    xs, ys = thick_line_pixels(int(p0[0]), int(p0[1]), int(p1[0]), int(p1[1]), width)
    _plot(image.pixels, xs, ys, color)


def draw_disc(image: RasterImage, center, radius, color) -> None:
    dx, dy = disc_offsets(radius)
    _plot(image.pixels, dx + int(center[0]), dy + int(center[1]), color)


# -- views -----------------------------------------------------------------------


def canvas_coordinates(positions: np.ndarray, style: RenderStyle) -> np.ndarray:
    """Fit positions into the canvas minus margins, aspect preserved, y up.

    Returns integer pixel coordinates.  A zero-extent layout lands on the
    canvas centre.
    """
    positions = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
    cx, cy = (style.width - 1) / 2.0, (style.height - 1) / 2.0
    if len(positions) == 0:
        return np.zeros((0, 2), dtype=np.int64)
    lo = positions.min(axis=0)
    hi = positions.max(axis=0)
    extent = hi - lo
    pad = style.margin * min(style.width, style.height)
    avail = np.array([style.width - 1 - 2 * pad, style.height - 1 - 2 * pad])
    scales = [avail[d] / extent[d] for d in range(2) if extent[d] > 0]
    if not scales:
        if len(positions) > 1:
            warnings.warn("all nodes coincide; rendering them at the canvas centre", stacklevel=3)
        scale = 0.0
    else:
        scale = min(scales)
    mid = (lo + hi) / 2.0
    x = cx + (positions[:, 0] - mid[0]) * scale
    y = cy - (positions[:, 1] - mid[1]) * scale
    return np.stack([np.floor(x + 0.5), np.floor(y + 0.5)], axis=1).astype(np.int64)


def render_view(g: ExpandedGraph, layout: LayoutState, style: Optional[RenderStyle] = None) -> RasterImage:
    """Draw edges, then nodes as discs coloured by cluster, on a black canvas."""
    check_graph(g)
    style = style or RenderStyle()
    img = RasterImage.blank(style.width, style.height, style)
    if g.n_nodes == 0:
        return img
    pos, clusters = layout.aligned(g.labels)
    pix = canvas_coordinates(pos, style)
    palette = style.palette

    for a, b, w in g.edges:
        ca, cb = clusters[a], clusters[b]
        color = palette[ca % len(palette)] if ca == cb else EDGE_GREY
        draw_line(img, pix[a], pix[b], color, style.stroke(w))

    # hubs first so real nodes stay on top
    kinds = [nd.kind == EXTRA for nd in g.nodes]
    for want_extra in (True, False):
        radius = style.extra_node_radius if want_extra else style.node_radius
        dx, dy = disc_offsets(radius)
        for i, is_extra in enumerate(kinds):
            if is_extra == want_extra:
                _plot(img.pixels, dx + pix[i, 0], dy + pix[i, 1], palette[clusters[i] % len(palette)])
    return img


# -- metrics ---------------------------------------------------------------------


def clarity(img: RasterImage) -> float:
    """Share of pixels that are exactly (0, 0, 0)."""
    px = img.pixels
    black = np.count_nonzero(~px.any(axis=2))
    return black / (px.shape[0] * px.shape[1])


def clarity_gain(extra_img: RasterImage, clique_img: RasterImage) -> Optional[float]:
    """Extra-node clarity over clique clarity; None when the clique image has no black pixel."""
    if extra_img.pixels.shape != clique_img.pixels.shape:
        raise ValueError("images must have the same dimensions")
    if extra_img.style is not None and clique_img.style is not None and extra_img.style != clique_img.style:
        raise ValueError("both views must be rendered with the same style")
    denom = clarity(clique_img)
    if denom == 0:
        return None
    return clarity(extra_img) / denom


def entropy(c: float) -> float:
    """Binary entropy in bits, with H(0) = H(1) = 0."""
    c = check_unit_interval(c, "clarity")
    if c in (0.0, 1.0):
        return 0.0
    return -(c * math.log2(c) + (1.0 - c) * math.log2(1.0 - c))
