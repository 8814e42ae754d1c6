"""Tessellations and limit sets of Kleinian groups via streaming word enumeration."""

from .moebius import (
    INFINITY,
    Circle,
    DegenerateMapError,
    FixedPointKind,
    FixedPoints,
    MapClass,
    MoebiusMap,
    NoIsometricCircleError,
    PoleOnCircleError,
    classify,
    fixed_points,
    image_of_circle,
    inversion_image_of_circle,
    is_infinite,
    isometric_circle,
)
from .groups import (
    CayleyTable,
    Generator,
    GeneratorSet,
    InvalidConfigurationError,
    PresentationRules,
    TableIncompleteError,
    Word,
    abstract_group,
    cayley_step,
    is_reduced,
    make_schottky_group,
    make_tangent_inversion_group,
    pair_rules,
    reduce_word,
    simple_cayley_table,
)
from .enumeration import (
    CountReport,
    DomainError,
    EnumerationMode,
    EnumeratorConfig,
    RangeError,
    StorageMeter,
    counts,
    digits_required,
    enumerate_index,
    enumerate_lexicographic,
    index_span_for_length,
    pad_variants,
    to_base,
    to_bijective_base,
)
from .render import (
    ImageBuffer,
    Palette,
    PaletteMode,
    RenderJob,
    RenderKind,
    RenderResult,
    RenderStats,
    Viewport,
    evaluate_orbit_discs,
    evaluate_orbit_endpoint,
    read_image,
    render,
    seed_point,
    write_image,
)

__version__ = "0.1.0"
