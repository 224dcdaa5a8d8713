"""Arithmetic of definite quaternion orders over real quadratic fields."""
__version__ = "0.1.0"
