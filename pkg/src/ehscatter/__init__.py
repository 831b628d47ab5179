"""Scattering phases of the radial confluent Heun equation on Eguchi-Hanson space."""
from .model import CaseTag, ModeParams, WkbCase, classify_case

__version__ = "0.1.0"

__all__ = ["ModeParams", "CaseTag", "WkbCase", "classify_case", "__version__"]
