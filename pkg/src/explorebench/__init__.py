"""Online graph exploration testbed: explorers, robustification, learned predictions."""

__version__ = "0.1.0"
