"""Realization of sequent derivations by explicit proof terms."""

from .families import Annotation, AnnotationError, BoxFamily, annotate_boxes, compute_families
from .pipeline import NotProved, matching_sequent_system, realize_iel
from .realizer import RealizationError, RealizationResult, realize

__all__ = [
    "Annotation", "AnnotationError", "BoxFamily", "NotProved", "RealizationError",
    "RealizationResult", "annotate_boxes", "compute_families", "matching_sequent_system",
    "realize", "realize_iel",
]
