"""Moving frames, pedal/orthotomic/evolute constructions and singularity
classification for spacelike frontals on the hyperbolic plane."""

__version__ = "0.1.0"

from .jets import Jet
from .minkowski import CausalClass, MVec3, inner, wedge
from .expr import ParametricCurve, parse
from .frontal import LegendrePair

__all__ = [
    "__version__",
    "Jet",
    "MVec3",
    "CausalClass",
    "inner",
    "wedge",
    "ParametricCurve",
    "parse",
    "LegendrePair",
]
