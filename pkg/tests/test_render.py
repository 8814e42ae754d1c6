import math

import numpy as np
import pytest

from kleinian.enumeration import EnumerationMode, EnumeratorConfig
from kleinian.groups import Generator, GeneratorSet, abstract_group, pair_rules, word_map
from kleinian.moebius import INFINITY, Circle, MoebiusMap, is_infinite
from kleinian.render import (
    ImageBuffer,
    Palette,
    PaletteMode,
    RenderJob,
    RenderKind,
    Viewport,
    evaluate_orbit_discs,
    evaluate_orbit_endpoint,
    read_image,
    render,
    seed_point,
    write_image,
)


def make_job(group, rules, depth, mode, kind, size=160, viewport=Viewport(0j, 2.6), **kw):
    cfg = EnumeratorConfig(len(group), depth, mode)
    return RenderJob(group, rules, cfg, kind, viewport, size, size, **kw)


class TestSeedPoint:
    def test_reciprocal_generator(self):
        gs = GeneratorSet((Generator("a", MoebiusMap(0, 1, 1, 0)),), (0,))
        assert seed_point(gs) in (1 + 0j, -1 + 0j)

    def test_inversion_circle_boundary(self):
        gs = GeneratorSet((Generator("a", Circle(0j, 1.0)),), (0,))
        assert seed_point(gs) == 1 + 0j

    def test_translation_only_falls_back_to_origin(self):
        gs = GeneratorSet((Generator("a", MoebiusMap(1, 1, 0, 1)),), (0,))
        assert seed_point(gs) == 0j


class TestOrbitEndpoint:
    def test_empty_word_returns_seed(self, tangent4):
        gs, _ = tangent4
        assert evaluate_orbit_endpoint((), gs, 0.5 + 0.5j) == 0.5 + 0.5j

    def test_single_translation(self):
        gs = GeneratorSet((Generator("a", MoebiusMap(1, 1, 0, 1)),), (0,))
        assert evaluate_orbit_endpoint((0,), gs, 0j) == 1 + 0j

    def test_right_to_left_reading(self):
        # digits (1, 0): index 0 applies first (1/z), then index 1 (z+1)
        gs = GeneratorSet(
            (Generator("a", MoebiusMap(0, 1, 1, 0)), Generator("b", MoebiusMap(1, 1, 0, 1))),
            (0, 1),
        )
        assert evaluate_orbit_endpoint((1, 0), gs, 1 + 0j) == 2 + 0j

    def test_matches_composed_map(self, schottky2):
        gs, rules = schottky2
        import random

        rng = random.Random(31)
        z0 = seed_point(gs)
        for _ in range(50):
            word = []
            while len(word) < 5:
                s = rng.randrange(4)
                if not word or (word[-1], s) not in rules.forbidden:
                    word.append(s)
            word = tuple(word)
            stepped = evaluate_orbit_endpoint(word, gs, z0)
            composed = word_map(word, gs)(z0)
            if not (is_infinite(stepped) or is_infinite(composed)):
                assert abs(stepped - composed) <= 1e-9 * max(1.0, abs(composed))

    def test_infinity_is_signalled(self):
        gs = GeneratorSet((Generator("a", MoebiusMap(0, 1, 1, 0)),), (0,))
        assert evaluate_orbit_endpoint((0,), gs, 0j) is INFINITY


class TestOrbitDiscs:
    def test_length_one_is_the_base_circle(self, tangent4):
        gs, _ = tangent4
        base = [g.base_circle() for g in gs]
        discs = list(evaluate_orbit_discs((2,), gs, base))
        assert discs == [(1, base[2])]

    def test_depth_two_disc_nested_in_inverting_circle(self, tangent4):
        # word (0, 1): circle b inverted in circle a lands inside circle a
        gs, _ = tangent4
        base = [g.base_circle() for g in gs]
        discs = dict(evaluate_orbit_discs((0, 1), gs, base))
        inner, outer = discs[2], base[0]
        assert abs(inner.center - outer.center) + inner.radius <= outer.radius + 1e-9

    def test_radii_non_increasing_after_depth_one(self, tangent4):
        gs, rules = tangent4
        base = [g.base_circle() for g in gs]
        from kleinian.enumeration import enumerate_lexicographic

        def check(word):
            radii = [c.radius for _, c in evaluate_orbit_discs(word, gs, base)]
            for earlier, later in zip(radii[1:], radii[2:]):
                assert later <= earlier + 1e-12

        enumerate_lexicographic(gs, rules, 5, check, leaves_only=True)


class TestImageBuffer:
    def test_write_one_white_pixel(self, tmp_path):
        buf = ImageBuffer(1, 1, background=(255, 255, 255))
        path = tmp_path / "one.ppm"
        write_image(buf, path)
        assert path.read_bytes() == b"P6\n1 1\n255\n\xff\xff\xff"

    def test_row_major_left_pixel_first(self, tmp_path):
        buf = ImageBuffer(2, 1, background=(0, 0, 0))
        buf.set_pixel(0, 0, (255, 0, 0))
        path = tmp_path / "two.ppm"
        write_image(buf, path)
        assert path.read_bytes().endswith(b"\xff\x00\x00\x00\x00\x00")

    def test_round_trip(self, tmp_path):
        buf = ImageBuffer(5, 3, background=(10, 20, 30))
        buf.fill_disc(2.0, 1.0, 1.2, (200, 100, 50))
        path = tmp_path / "rt.ppm"
        write_image(buf, path)
        assert read_image(path) == buf

    def test_out_of_bounds_clipped(self):
        buf = ImageBuffer(4, 4)
        assert not buf.set_pixel(-1, 0, (0, 0, 0))
        assert not buf.set_pixel(0, 4, (0, 0, 0))
        buf.fill_disc(100.0, 100.0, 3.0, (0, 0, 0))  # fully off-screen: no-op
        assert not buf.painted.any()


class TestRender:
    def test_same_job_twice_is_byte_identical(self, tangent4):
        gs, rules = tangent4
        job = make_job(gs, rules, 4, EnumerationMode.ORDINAL, RenderKind.LIMIT_SET)
        first, _ = render(job)
        second, _ = render(job)
        assert first.tobytes() == second.tobytes()

    def test_lexicographic_and_ordinal_render_identically(self, tangent4):
        gs, rules = tangent4
        lex, _ = render(make_job(gs, rules, 5, EnumerationMode.LEXICOGRAPHIC, RenderKind.LIMIT_SET))
        ordinal, _ = render(make_job(gs, rules, 5, EnumerationMode.ORDINAL, RenderKind.LIMIT_SET))
        assert lex.tobytes() == ordinal.tobytes()

    def test_depth_one_tessellation_is_the_base_circles(self, tangent4):
        gs, rules = tangent4
        job = make_job(gs, rules, 1, EnumerationMode.ORDINAL, RenderKind.TESSELLATION)
        image, stats = render(job)
        assert stats.discs_drawn == 4
        expected = ImageBuffer(job.width, job.height, job.background)
        scale = min(job.width, job.height) / (2 * job.viewport.half_extent)
        for k, g in enumerate(gs):
            c = g.base_circle()
            pcx = c.center.real * scale + (job.width - 1) / 2
            pcy = (job.height - 1) / 2 - c.center.imag * scale
            expected.fill_disc(pcx, pcy, c.radius * scale, job.palette.color(1, 1, k))
        assert image == expected

    def test_disc_count_matches_closed_form(self, tangent4):
        gs, rules = tangent4
        job = make_job(gs, rules, 4, EnumerationMode.ORDINAL, RenderKind.TESSELLATION)
        _, stats = render(job)
        assert stats.pole_skips == 0
        assert stats.discs_drawn == 4 + 12 + 36 + 108

    def test_partitioned_render_matches_single_worker(self, tangent4):
        gs, rules = tangent4
        job = make_job(gs, rules, 5, EnumerationMode.ORDINAL, RenderKind.TESSELLATION)
        alone = render(job)
        split = render(job, workers=3)
        assert alone.image.tobytes() == split.image.tobytes()
        assert alone.stats.discs_drawn == split.stats.discs_drawn

    def test_lexicographic_cannot_be_partitioned(self, tangent4):
        gs, rules = tangent4
        job = make_job(gs, rules, 3, EnumerationMode.LEXICOGRAPHIC, RenderKind.LIMIT_SET)
        with pytest.raises(ValueError):
            render(job, workers=2)

    def test_generator_palette_uses_lead_symbol(self, tangent4):
        gs, rules = tangent4
        job = make_job(
            gs, rules, 3, EnumerationMode.ORDINAL, RenderKind.LIMIT_SET,
            palette=Palette(PaletteMode.BY_GENERATOR),
        )
        image, stats = render(job)
        assert stats.points_plotted > 0
        colors = {tuple(px) for px in image.pixels[image.painted]}
        assert len(colors) == 4

    def test_limit_set_invariance_sampling(self, tangent4):
        # group images of plotted points stay close to the plotted set
        gs, rules = tangent4
        depth = 5
        points = {}
        for length in range(1, depth + 2):
            cfg = EnumeratorConfig(4, length, EnumerationMode.ORDINAL)
            job = RenderJob(gs, rules, cfg, RenderKind.LIMIT_SET, Viewport(0j, 2.6), 400, 400)
            collected = []
            render(job, on_point=lambda w, z: collected.append(z))
            points[length] = collected
        cloud = np.array([z for pts in points.values() for z in pts])
        scale = 400 / (2 * 2.6)
        tolerance = 2.0 / scale
        sample = points[depth][:: max(1, len(points[depth]) // 200)][:200]
        for p in sample:
            for g in gs:
                image = g.apply(p)
                assert np.min(np.abs(cloud - image)) <= tolerance
