"""Pushforward spectra for periodic unicritical polynomials z^D + c."""

from ._core import (
    PfsError,
    center_count,
    centers,
    certify_units,
    cycles,
    equidist,
    gleason,
    poonen,
    run_cli,
    survey,
)

__all__ = [
    "PfsError",
    "center_count",
    "centers",
    "certify_units",
    "cycles",
    "equidist",
    "gleason",
    "poonen",
    "run_cli",
    "survey",
]
