"""Orbit evaluation and rasterization.

Limit-set images plot the endpoint of every maximal-length orbit as a single
pixel; tessellation images paint the image disc of every orbit at every depth.
Words stream straight from an enumerator into the pixel buffer, so rendering
inherits the enumerators' constant word storage, and identical jobs produce
byte-identical buffers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np

from .enumeration import (
    EnumerationMode,
    EnumeratorConfig,
    StorageMeter,
    default_index_range,
    enumerate_index,
    enumerate_lexicographic,
    index_span_for_length,
)
from .groups import CancellationRules, GeneratorSet, Word
from .moebius import (
    Circle,
    FixedPointKind,
    PoleOnCircleError,
    fixed_points,
    image_of_circle,
    inversion_image_of_circle,
    is_infinite,
)

RGB = tuple[int, int, int]

GENERATOR_COLORS: tuple[RGB, ...] = (
    (200, 40, 40),
    (40, 110, 200),
    (40, 160, 70),
    (220, 150, 30),
    (140, 60, 180),
    (0, 160, 160),
    (200, 80, 140),
    (120, 120, 40),
)


class RenderKind(Enum):
    LIMIT_SET = "limitset"
    TESSELLATION = "tessellation"


class PaletteMode(Enum):
    BY_DEPTH = "depth"
    BY_GENERATOR = "generator"


@dataclass(frozen=True)
class Palette:
    """Depth gradient between two stops, or a fixed cycle keyed by lead generator."""

    mode: PaletteMode = PaletteMode.BY_DEPTH
    dark: RGB = (30, 40, 90)
    light: RGB = (205, 225, 250)

    def color(self, depth: int, max_depth: int, lead: int) -> RGB:
        if self.mode is PaletteMode.BY_GENERATOR:
            return GENERATOR_COLORS[lead % len(GENERATOR_COLORS)]
        t = 0.0 if max_depth <= 1 else (depth - 1) / (max_depth - 1)
        return tuple(int(round(a + (b - a) * t)) for a, b in zip(self.dark, self.light))


@dataclass(frozen=True)
class Viewport:
    """Square window of the plane: center and half-extent along the short axis."""

    center: complex = 0j
    half_extent: float = 2.0

    def __post_init__(self):
        if not self.half_extent > 0:
            raise ValueError("viewport half-extent must be positive")


@dataclass(frozen=True)
class RenderJob:
    group: GeneratorSet
    rules: CancellationRules
    enumerator: EnumeratorConfig
    kind: RenderKind
    viewport: Viewport = Viewport()
    width: int = 800
    height: int = 800
    palette: Palette = Palette()
    seed: complex | None = None
    fill_discs: bool = True
    background: RGB = (255, 255, 255)

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("resolution must be positive")


@dataclass
class RenderStats:
    words: int = 0
    skipped_by_cancellation: int = 0
    dropped_at_infinity: int = 0
    points_plotted: int = 0
    discs_drawn: int = 0
    pole_skips: int = 0

    def merge(self, other: RenderStats) -> None:
        self.words += other.words
        self.skipped_by_cancellation += other.skipped_by_cancellation
        self.dropped_at_infinity += other.dropped_at_infinity
        self.points_plotted += other.points_plotted
        self.discs_drawn += other.discs_drawn
        self.pole_skips += other.pole_skips

    def as_text(self) -> str:
        return "\n".join(
            (
                f"words={self.words}",
                f"skipped_by_cancellation={self.skipped_by_cancellation}",
                f"dropped_at_infinity={self.dropped_at_infinity}",
                f"points_plotted={self.points_plotted}",
                f"discs_drawn={self.discs_drawn}",
                f"pole_skips={self.pole_skips}",
            )
        )


class ImageBuffer:
    """RGB raster with a painted mask (the mask drives partitioned merging)."""

    def __init__(self, width: int, height: int, background: RGB = (255, 255, 255)):
        self.width = width
        self.height = height
        self.pixels = np.empty((height, width, 3), dtype=np.uint8)
        self.pixels[:, :] = background
        self.painted = np.zeros((height, width), dtype=bool)

    def set_pixel(self, px: int, py: int, color: RGB) -> bool:
        if 0 <= px < self.width and 0 <= py < self.height:
            self.pixels[py, px] = color
            self.painted[py, px] = True
            return True
        return False

    def _disc_mask(self, pcx: float, pcy: float, pr: float, band: float | None):
        x0 = max(0, int(math.floor(pcx - pr - 1)))
        x1 = min(self.width - 1, int(math.ceil(pcx + pr + 1)))
        y0 = max(0, int(math.floor(pcy - pr - 1)))
        y1 = min(self.height - 1, int(math.ceil(pcy + pr + 1)))
        if x0 > x1 or y0 > y1:
            return None, None, None
        ys, xs = np.ogrid[y0 : y1 + 1, x0 : x1 + 1]
        r2 = (xs - pcx) ** 2 + (ys - pcy) ** 2
        if band is None:
            mask = r2 <= pr * pr
        else:
            mask = (r2 <= (pr + band) ** 2) & (r2 >= max(pr - band, 0.0) ** 2)
        return mask, (y0, y1), (x0, x1)

    def fill_disc(self, pcx: float, pcy: float, pr: float, color: RGB) -> None:
        mask, yy, xx = self._disc_mask(pcx, pcy, pr, None)
        if mask is None:
            return
        self.pixels[yy[0] : yy[1] + 1, xx[0] : xx[1] + 1][mask] = color
        self.painted[yy[0] : yy[1] + 1, xx[0] : xx[1] + 1][mask] = True

    def stroke_disc(self, pcx: float, pcy: float, pr: float, color: RGB) -> None:
        mask, yy, xx = self._disc_mask(pcx, pcy, pr, 0.6)
        if mask is None:
            return
        self.pixels[yy[0] : yy[1] + 1, xx[0] : xx[1] + 1][mask] = color
        self.painted[yy[0] : yy[1] + 1, xx[0] : xx[1] + 1][mask] = True

    def paint_over(self, later: ImageBuffer) -> None:
        """Overlay a later partition's painted pixels onto this buffer."""
        self.pixels[later.painted] = later.pixels[later.painted]
        self.painted |= later.painted

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ImageBuffer)
            and self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )


class RenderResult(NamedTuple):
    image: ImageBuffer
    stats: RenderStats


def seed_point(gs: GeneratorSet) -> complex:
    """Finite fixed point of the first eligible generator; origin as fallback.

    Inversion circles are fixed pointwise, so the boundary point
    center + radius serves. Conformal generators contribute their first finite
    fixed point; a set fixing only infinity (pure translations) yields 0.
    """
    for g in gs:
        if g.is_inversion:
            return g.transform.center + g.transform.radius
        fp = fixed_points(g.transform)
        if fp.kind is FixedPointKind.ALL_POINTS:
            return 0j
        finite = fp.finite_points
        if finite:
            return finite[0]
    return 0j


def evaluate_orbit_endpoint(word: Word, gs: GeneratorSet, z0):
    """Apply the word's generators right to left to z0 and return the endpoint.

    Any step reaching the point at infinity returns the INFINITY sentinel so
    the caller can drop the orbit.
    """
    z = z0
    for s in reversed(word):
        z = gs.apply(s, z)
        if is_infinite(z):
            return z
    return z


def _step_circle(gs: GeneratorSet, index: int, circle: Circle) -> Circle:
    g = gs.generators[index]
    if g.is_inversion:
        return inversion_image_of_circle(g.transform, circle)
    return image_of_circle(g.transform, circle)


def evaluate_orbit_discs(word: Word, gs: GeneratorSet, base_circles: list[Circle] | tuple[Circle, ...]):
    """Yield (depth, circle) after each right-to-left step of the word.

    Depth 1 is the base circle of the first symbol read; each later symbol maps
    the running circle onward. A pole-on-circle degenerates the image to a
    line, which ends this word's chain (rendering continues with other words).
    """
    if not word:
        return
    circle = base_circles[word[-1]]
    yield (1, circle)
    depth = 1
    for s in word[-2::-1]:
        depth += 1
        circle = _step_circle(gs, s, circle)
        yield (depth, circle)


def _limit_set_pass(job: RenderJob, span, buf: ImageBuffer, on_point) -> RenderStats:
    gs, cfg = job.group, job.enumerator
    d = cfg.max_depth
    z0 = job.seed if job.seed is not None else seed_point(gs)
    vp, w, h = job.viewport, job.width, job.height
    scale = min(w, h) / (2.0 * vp.half_extent)
    stats = RenderStats()
    meter = StorageMeter()

    def sink(word: Word) -> None:
        if len(word) != d:
            return
        stats.words += 1
        z = evaluate_orbit_endpoint(word, gs, z0)
        if is_infinite(z):
            stats.dropped_at_infinity += 1
            return
        px = int(round((z.real - vp.center.real) * scale + (w - 1) / 2.0))
        py = int(round((h - 1) / 2.0 - (z.imag - vp.center.imag) * scale))
        if buf.set_pixel(px, py, job.palette.color(d, d, word[0])):
            stats.points_plotted += 1
            if on_point is not None:
                on_point(word, z)

    if cfg.mode is EnumerationMode.LEXICOGRAPHIC:
        enumerate_lexicographic(gs, job.rules, d, sink, leaves_only=True, meter=meter)
    else:
        enumerate_index(gs, job.rules, replace(cfg, index_range=span), sink, meter=meter)
    stats.skipped_by_cancellation = meter.skipped
    return stats


def _tessellation_pass(job: RenderJob, span, buf: ImageBuffer) -> RenderStats:
    gs, cfg = job.group, job.enumerator
    d = cfg.max_depth
    base_circles = [g.base_circle() for g in gs]
    vp, w, h = job.viewport, job.width, job.height
    scale = min(w, h) / (2.0 * vp.half_extent)
    stats = RenderStats()
    meter = StorageMeter()
    paint = buf.fill_disc if job.fill_discs else buf.stroke_disc

    def sink(word: Word) -> None:
        stats.words += 1
        circle = base_circles[word[-1]]
        try:
            for s in word[-2::-1]:
                circle = _step_circle(gs, s, circle)
        except PoleOnCircleError:
            stats.pole_skips += 1
            return
        pcx = (circle.center.real - vp.center.real) * scale + (w - 1) / 2.0
        pcy = (h - 1) / 2.0 - (circle.center.imag - vp.center.imag) * scale
        paint(pcx, pcy, circle.radius * scale, job.palette.color(len(word), d, word[0]))
        stats.discs_drawn += 1

    if cfg.mode is EnumerationMode.LEXICOGRAPHIC:
        enumerate_lexicographic(gs, job.rules, d, sink, leaves_only=False, meter=meter)
    else:
        enumerate_index(gs, job.rules, replace(cfg, index_range=span), sink, meter=meter)
    stats.skipped_by_cancellation = meter.skipped
    return stats


def _job_range(job: RenderJob) -> tuple[int, int] | None:
    """Integer range for index modes; None in lexicographic mode."""
    cfg = job.enumerator
    if cfg.mode is EnumerationMode.LEXICOGRAPHIC:
        return None
    if cfg.index_range is not None:
        return cfg.index_range
    if cfg.mode is EnumerationMode.ORDINAL and job.kind is RenderKind.LIMIT_SET:
        # Jump straight to the block of maximal-length words.
        return index_span_for_length(cfg.base, cfg.max_depth, cfg.mode)
    return default_index_range(cfg)


def render(job: RenderJob, *, workers: int = 1, on_point: Callable[[Word, complex], None] | None = None) -> RenderResult:
    """Run the job and return the image with its stats.

    ``workers`` > 1 partitions the index range into contiguous chunks rendered
    into private buffers, merged in ascending range order (deterministic and
    identical to the single-worker result). The optional ``on_point`` callback
    receives every plotted limit-set point before rasterization.
    """
    span = _job_range(job)
    if workers < 1:
        raise ValueError("workers must be at least 1")
    if span is None and workers > 1:
        raise ValueError("the lexicographic tree cannot be partitioned; use an index mode")

    def run_span(sub) -> RenderResult:
        buf = ImageBuffer(job.width, job.height, job.background)
        if job.kind is RenderKind.LIMIT_SET:
            st = _limit_set_pass(job, sub, buf, on_point)
        else:
            st = _tessellation_pass(job, sub, buf)
        return RenderResult(buf, st)

    if workers == 1 or span is None:
        return run_span(span)

    start, end = span
    step = max(1, math.ceil((end - start) / workers))
    spans = []
    lo = start
    while lo < end:
        hi = min(end, lo + step)
        spans.append((lo, hi))
        lo = hi
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run_span, spans))
    image, stats = parts[0]
    for part in parts[1:]:
        image.paint_over(part.image)
        stats.merge(part.stats)
    return RenderResult(image, stats)


def write_image(buf: ImageBuffer, path) -> None:
    """Binary PPM (P6), maxval 255, row-major RGB."""
    header = f"P6\n{buf.width} {buf.height}\n255\n".encode("ascii")
    try:
        with open(path, "wb") as f:
            f.write(header)
            f.write(buf.tobytes())
    except OSError as exc:
        raise OSError(f"cannot write image to {path}: {exc}") from exc


def read_image(path) -> ImageBuffer:
    """Read back a P6 file written by write_image."""
    with open(path, "rb") as f:
        data = f.read()
    fields: list[bytes] = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        begin = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        fields.append(data[begin:pos])
    pos += 1  # single whitespace after maxval
    magic, width, height, maxval = fields
    if magic != b"P6" or maxval != b"255":
        raise ValueError(f"{path} is not a maxval-255 P6 file")
    w, h = int(width), int(height)
    buf = ImageBuffer(w, h)
    buf.pixels = np.frombuffer(data[pos : pos + w * h * 3], dtype=np.uint8).reshape(h, w, 3).copy()
    return buf
