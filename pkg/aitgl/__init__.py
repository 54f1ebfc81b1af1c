"""aitgl - finite-scale workbench for resource-bounded complexity, leafless-set
trimming, online path labelling and the string-painting game."""

__version__ = "1.0.0"
