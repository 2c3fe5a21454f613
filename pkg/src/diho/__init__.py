"""Directed homology algebras of finite precubical sets, in exact arithmetic."""
from .dihomology import (
    DimensionMatrix,
    HomologyPresentation,
    QuotientMode,
    class_equal,
    ha0,
    ha1,
    multiply_classes,
    restricted_ha1,
)
from .precubical import PathWord, PrecubicalSet, enumerate_paths, is_acyclic, validate

__version__ = "0.1.0"
