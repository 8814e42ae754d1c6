"""Group definitions: builtin presets and the line-oriented config file format.

A group file is INI-style: one ``[generator <label>]`` section per generator in
index order, an optional ``[rules]`` section selecting the variant, and an
optional ``[cayley]`` section with one row per line. Complex values are written
as two floats, "re im" (a comma also works). Example::

    [generator a]
    kind = inversion
    center = 1.41421356 0
    radius = 1

    [generator b]
    kind = moebius
    a = 1 0
    b = 0 0
    c = 0.5 0
    d = 1 0
    inverse = B

    [rules]
    variant = pairs
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass
from typing import Callable

from .groups import (
    CancellationRules,
    CayleyTable,
    Generator,
    GeneratorSet,
    PresentationRules,
    make_schottky_group,
    make_tangent_inversion_group,
    pair_rules,
)
from .moebius import Circle, MoebiusMap
from .render import Viewport


class ConfigError(ValueError):
    """Group definition cannot be turned into a valid generator set."""


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    viewport: Viewport
    build: Callable[[], tuple[GeneratorSet, CancellationRules]]


def _tangent4() -> tuple[GeneratorSet, CancellationRules]:
    s2 = math.sqrt(2.0)
    circles = [Circle(complex(s2, 0), 1.0), Circle(complex(0, s2), 1.0),
               Circle(complex(-s2, 0), 1.0), Circle(complex(0, -s2), 1.0)]
    gs = make_tangent_inversion_group(circles)
    return gs, pair_rules(gs)


def _schottky2() -> tuple[GeneratorSet, CancellationRules]:
    gs = make_schottky_group(
        Circle(-2 + 0j, 1.0), Circle(2 + 0j, 1.0),
        Circle(-2j, 1.0), Circle(2j, 1.0),
    )
    return gs, pair_rules(gs)


def builtin_presets() -> dict[str, Preset]:
    return {
        "tangent4": Preset(
            "tangent4",
            "four mutually tangent inversion circles orthogonal to the unit circle "
            "(centers at (+-sqrt2, 0) and (0, +-sqrt2), radius 1); the limit set is the unit circle",
            Viewport(0j, 2.6),
            _tangent4,
        ),
        "schottky2": Preset(
            "schottky2",
            "two-generator Schottky pairing of disjoint unit circles at -2/+2 and -2i/+2i; "
            "the limit set is a dust of points",
            Viewport(0j, 3.2),
            _schottky2,
        ),
    }


def _parse_complex(text: str, where: str) -> complex:
    parts = text.replace(",", " ").split()
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"{where}: expected a complex value as 're im', got {text!r}")


def _parse_float(text: str, where: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{where}: expected a number, got {text!r}") from None


def parse_group_config(text: str, source: str = "<config>") -> tuple[GeneratorSet, CancellationRules]:
    parser = configparser.ConfigParser(delimiters=("=",), interpolation=None)
    parser.optionxform = str  # Cayley row labels are case sensitive
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from exc

    gen_sections = [s for s in parser.sections() if s.startswith("generator")]
    if not gen_sections:
        raise ConfigError(f"{source}: no [generator <label>] sections found")

    labels: list[str] = []
    generators: list[Generator] = []
    inverse_labels: list[str] = []
    for section in gen_sections:
        parts = section.split(None, 1)
        if len(parts) != 2 or not parts[1].strip():
            raise ConfigError(f"{source}: section [{section}] needs a label, e.g. [generator a]")
        label = parts[1].strip()
        where = f"{source} [{section}]"
        sec = parser[section]
        kind = sec.get("kind", "").strip().lower()
        if kind == "inversion":
            circle = Circle(_parse_complex(sec.get("center", ""), where), _parse_float(sec.get("radius", ""), where))
            generators.append(Generator(label, circle))
            inverse_labels.append(sec.get("inverse", label).strip())
        elif kind == "moebius":
            coeffs = [_parse_complex(sec.get(k, ""), f"{where} key {k}") for k in ("a", "b", "c", "d")]
            try:
                generators.append(Generator(label, MoebiusMap(*coeffs)))
            except ValueError as exc:
                raise ConfigError(f"{where}: {exc}") from exc
            inverse_labels.append(sec.get("inverse", label).strip())
        else:
            raise ConfigError(f"{where}: kind must be 'moebius' or 'inversion', got {kind!r}")
        labels.append(label)

    if len(set(labels)) != len(labels):
        raise ConfigError(f"{source}: duplicate generator labels")

    inverse_index = []
    for label, inv in zip(labels, inverse_labels):
        if inv not in labels:
            raise ConfigError(f"{source}: generator {label!r} pairs with unknown label {inv!r}")
        inverse_index.append(labels.index(inv))
    try:
        gs = GeneratorSet(tuple(generators), tuple(inverse_index))
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    _check_inverse_pairing(gs, source)

    variant = parser.get("rules", "variant", fallback="pairs").strip().lower()
    if variant == "pairs":
        return gs, pair_rules(gs)
    if variant == "cayley":
        return gs, _parse_cayley(parser, gs, source)
    raise ConfigError(f"{source}: rules variant must be 'pairs' or 'cayley', got {variant!r}")


def _check_inverse_pairing(gs: GeneratorSet, source: str) -> None:
    """Verify the declared pairing numerically so the rules stay truthful."""
    probes = (0.31 + 0.17j, -0.83 + 0.52j, 1.21 - 0.64j)
    for i, j in enumerate(gs.inverse_index):
        for z in probes:
            w = gs.apply(j, gs.apply(i, z))
            if isinstance(w, complex) and abs(w - z) <= 1e-6 * (1 + abs(z)):
                continue
            raise ConfigError(
                f"{source}: generators {gs.labels[i]!r} and {gs.labels[j]!r} are declared "
                f"mutually inverse but do not compose to the identity"
            )


def _parse_cayley(parser: configparser.ConfigParser, gs: GeneratorSet, source: str) -> CayleyTable:
    if not parser.has_section("cayley"):
        raise ConfigError(f"{source}: rules variant 'cayley' needs a [cayley] section")
    if any(len(lbl) != 1 for lbl in gs.labels):
        raise ConfigError(f"{source}: cayley rows need single-character generator labels")
    n = len(gs)
    rows: dict[tuple[int, ...], tuple[tuple[int, ...] | None, ...]] = {}
    for row_label, value in parser["cayley"].items():
        where = f"{source} [cayley] row {row_label!r}"
        try:
            key = tuple(gs.index_of(ch) for ch in row_label)
        except KeyError as exc:
            raise ConfigError(f"{where}: {exc}") from exc
        entries = value.split()
        if len(entries) != n:
            raise ConfigError(f"{where}: expected {n} entries, got {len(entries)}")
        cells = []
        for entry in entries:
            if entry == "I" or entry == "1":
                cells.append(None)
            else:
                try:
                    cells.append(tuple(gs.index_of(ch) for ch in entry))
                except KeyError as exc:
                    raise ConfigError(f"{where}: {exc}") from exc
        rows[key] = tuple(cells)
    return CayleyTable(n, rows)


def load_group_file(path) -> tuple[GeneratorSet, CancellationRules]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise ConfigError(f"cannot read group file {path}: {exc}") from exc
    return parse_group_config(text, source=str(path))


def resolve_group(spec: str) -> tuple[GeneratorSet, CancellationRules, Viewport | None]:
    """Look up a preset by name, or load a group file by path."""
    presets = builtin_presets()
    if spec in presets:
        preset = presets[spec]
        gs, rules = preset.build()
        return gs, rules, preset.viewport
    from pathlib import Path

    if Path(spec).exists():
        gs, rules = load_group_file(spec)
        return gs, rules, None
    raise ConfigError(f"unknown preset or missing group file: {spec!r} (presets: {', '.join(sorted(presets))})")
