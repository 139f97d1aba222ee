"""Complex Gamma function by independent, mutually checking routes."""

__version__ = "0.1.0"
