"""Exact and numerical checks for Hilbert modular forms over real quadratic fields."""

__version__ = "0.1.0"

from .errors import HMFError  # noqa: E402
from .ideals import FracIdeal, narrow_class_group  # noqa: E402
from .numfield import Field, FieldElement, create_field  # noqa: E402

__all__ = ["Field", "FieldElement", "FracIdeal", "HMFError", "create_field",
           "narrow_class_group", "__version__"]
