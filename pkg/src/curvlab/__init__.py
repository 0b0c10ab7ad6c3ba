"""Frame-based curvature engine for almost contact metric model spaces."""

__version__ = "0.1.0"
