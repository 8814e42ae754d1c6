import math

import pytest

from kleinian.config import ConfigError, builtin_presets, parse_group_config, resolve_group
from kleinian.groups import CayleyTable, PresentationRules, is_reduced, pair_rules

SCHOTTKY_TEXT = """
[generator a]
kind = moebius
a = 3 0
b = 8 0
c = 1 0
d = 3 0
inverse = A

[generator A]
kind = moebius
a = 3 0
b = -8 0
c = -1 0
d = 3 0
inverse = a

[rules]
variant = pairs
"""

INVERSION_TEXT = """
[generator a]
kind = inversion
center = 1.41421356237 0
radius = 1

[generator b]
kind = inversion
center = 0 1.41421356237
radius = 1
"""

CAYLEY_TEXT = """
[generator a]
kind = inversion
center = 2 0
radius = 1

[generator b]
kind = inversion
center = -2 0
radius = 1

[rules]
variant = cayley

[cayley]
a = I b
b = a I
"""


class TestParsing:
    def test_moebius_pair(self):
        gs, rules = parse_group_config(SCHOTTKY_TEXT)
        assert gs.labels == ("a", "A")
        assert gs.inverse_index == (1, 0)
        assert isinstance(rules, PresentationRules)
        assert rules.forbidden == frozenset({(0, 1), (1, 0)})

    def test_inversions_default_to_self_pairing(self):
        gs, rules = parse_group_config(INVERSION_TEXT)
        assert gs.inverse_index == (0, 1)
        assert rules.forbidden == frozenset({(0, 0), (1, 1)})

    def test_cayley_rows(self):
        gs, rules = parse_group_config(CAYLEY_TEXT)
        assert isinstance(rules, CayleyTable)
        assert not is_reduced((0, 0), rules)
        assert is_reduced((0, 1), rules)

    def test_bad_complex_reported_with_context(self):
        text = SCHOTTKY_TEXT.replace("a = 3 0", "a = three 0", 1)
        with pytest.raises(ConfigError, match="generator a"):
            parse_group_config(text)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ConfigError, match="kind"):
            parse_group_config("[generator a]\nkind = rotation\n")

    def test_unknown_inverse_label_rejected(self):
        text = SCHOTTKY_TEXT.replace("inverse = A", "inverse = Z", 1)
        with pytest.raises(ConfigError, match="unknown label"):
            parse_group_config(text)

    def test_false_inverse_claim_rejected(self):
        text = SCHOTTKY_TEXT.replace("b = -8 0", "b = -7 0", 1)
        with pytest.raises(ConfigError, match="identity"):
            parse_group_config(text)

    def test_missing_generators_rejected(self):
        with pytest.raises(ConfigError, match="generator"):
            parse_group_config("[rules]\nvariant = pairs\n")

    def test_degenerate_coefficients_rejected(self):
        text = "[generator a]\nkind = moebius\na = 1 0\nb = 2 0\nc = 2 0\nd = 4 0\n"
        with pytest.raises(ConfigError):
            parse_group_config(text)


class TestPresets:
    def test_both_presets_build(self):
        presets = builtin_presets()
        assert set(presets) == {"tangent4", "schottky2"}
        for preset in presets.values():
            gs, rules = preset.build()
            assert len(gs) == 4
            assert preset.viewport.half_extent > 0

    def test_tangent4_circles_orthogonal_to_unit_circle(self):
        gs, _ = builtin_presets()["tangent4"].build()
        for g in gs:
            c = g.transform
            assert math.isclose(abs(c.center) ** 2, c.radius**2 + 1, rel_tol=1e-12)

    def test_resolve_unknown_name(self):
        with pytest.raises(ConfigError, match="unknown preset"):
            resolve_group("does-not-exist")

    def test_resolve_file(self, tmp_path):
        path = tmp_path / "group.cfg"
        path.write_text(INVERSION_TEXT)
        gs, rules, viewport = resolve_group(str(path))
        assert len(gs) == 2
        assert viewport is None
