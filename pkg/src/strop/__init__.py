"""strop: exact string-topology operations workbench."""

__version__ = "0.1.0"
